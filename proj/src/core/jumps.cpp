#include "jumps.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace vortigen::jumps {

std::string_view relation_name(Relation r) {
  return r == Relation::kContactEq ? "contact" : "char";
}

namespace {

void require_entropy_function(const GasModel& m) {
  if (m.convention != EntropyConvention::kEntropyFunction) {
    throw Error(ErrorCode::kConventionMismatch,
                "jump relations need the entropy function s = p/rho^gamma");
  }
}

// d/deta at eta = 0 of the quadratic through (d[k], f[k]).
double derivative_at_zero(const std::array<double, 3>& d,
                          const std::array<double, 3>& f) {
  double sum = 0.0;
  for (int a = 0; a < 3; ++a) {
    double wa = 0.0;
    for (int b = 0; b < 3; ++b) {
      if (b == a) continue;
      double term = 1.0 / (d[a] - d[b]);
      for (int c = 0; c < 3; ++c) {
        if (c != a && c != b) term *= (0.0 - d[c]) / (d[a] - d[c]);
      }
      wa += term;
    }
    sum += wa * f[a];
  }
  return sum;
}

double relative_error(double lhs, double rhs) {
  double scale = std::max(std::abs(lhs), std::abs(rhs));
  if (scale <= 1e-12) return 0.0;
  return std::abs(lhs - rhs) / std::max(scale, 1e-300);
}

bool side_ok(double side, double lhs, double rhs, double tol) {
  return side <= tol * std::max(std::abs(lhs), std::abs(rhs)) + 1e-12;
}

}  // namespace

FieldSet synthesize_contact_field(const PrimitiveState& base,
                                  double delta_s_slope,
                                  const StructuredGrid2D& grid,
                                  const GasModel& m, double y_surface) {
  require_entropy_function(m);
  m.validate();
  grid.validate();
  if (base.u[1] != 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "contact synthesis needs a horizontal base velocity");
  }
  const double s0 = entropy(base.rho, base.p, m);
  FieldSet fs;
  fs.grid = grid;
  fs.rho.resize(grid.size());
  fs.u.assign(grid.size(), base.u[0]);
  fs.v.assign(grid.size(), 0.0);
  fs.p.assign(grid.size(), base.p);
  for (int j = 0; j < grid.ny; ++j) {
    double s = s0 + delta_s_slope * std::max(0.0, grid.y(j) - y_surface);
    if (!(s > 0.0)) {
      throw Error(ErrorCode::kNonPhysicalState,
                  "entropy function reaches " + std::to_string(s));
    }
    double rho = std::pow(base.p / s, 1.0 / m.gamma);
    for (int i = 0; i < grid.nx; ++i) fs.rho[grid.index(i, j)] = rho;
  }
  fs.validate();
  return fs;
}

double measure_jump(std::span<const double> field, const StructuredGrid2D& grid,
                    Vec2 normal, Vec2 point) {
  if (field.size() != grid.size()) {
    throw Error(ErrorCode::kShapeMismatch, "field does not conform to grid");
  }
  double len = std::hypot(normal[0], normal[1]);
  if (!(len > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "zero surface normal");
  }
  normal = {normal[0] / len, normal[1] / len};

  std::array<double, 3> dist;
  bool x_aligned = std::abs(normal[0]) > 1.0 - 1e-14;
  bool y_aligned = std::abs(normal[1]) > 1.0 - 1e-14;
  double gi = (point[0] - grid.x0) / grid.hx;
  double gj = (point[1] - grid.y0) / grid.hy;
  bool on_node = std::abs(gi - std::round(gi)) < 1e-9 &&
                 std::abs(gj - std::round(gj)) < 1e-9;
  if ((x_aligned || y_aligned) && on_node) {
    double h = x_aligned ? grid.hx : grid.hy;
    dist = {0.0, h, 2.0 * h};
  } else {
    // Start clear of every cell the surface cuts.
    double diag = std::hypot(grid.hx, grid.hy);
    dist = {1.5 * diag, 2.5 * diag, 3.5 * diag};
  }
  double side_deriv[2];
  for (int side = 0; side < 2; ++side) {
    double sign = side == 0 ? 1.0 : -1.0;
    std::array<double, 3> d, f;
    for (int k = 0; k < 3; ++k) {
      double px = point[0] + sign * dist[k] * normal[0];
      double py = point[1] + sign * dist[k] * normal[1];
      if (!grid.contains(px, py)) {
        throw Error(ErrorCode::kTooCloseToBoundary,
                    "jump stencil leaves the grid at (" + std::to_string(px) +
                        ", " + std::to_string(py) + ")");
      }
      d[k] = sign * dist[k];
      f[k] = bilinear(field, grid, px, py);
    }
    side_deriv[side] = derivative_at_zero(d, f);
  }
  return side_deriv[0] - side_deriv[1];
}

WeakDiscontinuity measure_contact(const FieldSet& fs, const GasModel& m,
                                  Vec2 normal, Vec2 point) {
  require_entropy_function(m);
  const auto& g = fs.grid;
  std::vector<double> a(g.size()), s(g.size());
  for (std::size_t n = 0; n < g.size(); ++n) {
    a[n] = sound_speed(fs.rho[n], fs.p[n], m);
    s[n] = entropy(fs.rho[n], fs.p[n], m);
  }
  WeakDiscontinuity wd;
  wd.surface = SurfaceKind::kTrajectory;
  double len = std::hypot(normal[0], normal[1]);
  wd.normal = {normal[0] / len, normal[1] / len};
  wd.du = measure_jump(fs.u, g, wd.normal, point);
  wd.dv = measure_jump(fs.v, g, wd.normal, point);
  wd.da = measure_jump(a, g, wd.normal, point);
  wd.ds = measure_jump(s, g, wd.normal, point);
  wd.dp = measure_jump(fs.p, g, wd.normal, point);
  wd.grid_h = std::max(g.hx, g.hy);
  wd.state = PrimitiveState{bilinear(fs.rho, g, point[0], point[1]),
                            {bilinear(fs.u, g, point[0], point[1]),
                             bilinear(fs.v, g, point[0], point[1])},
                            bilinear(fs.p, g, point[0], point[1])};
  return wd;
}

JumpCheckReport contact_jump_check(const WeakDiscontinuity& wd,
                                   const PrimitiveState& state,
                                   const GasModel& m, double tol) {
  if (wd.surface != SurfaceKind::kTrajectory) {
    throw Error(ErrorCode::kWrongSurfaceKind,
                "contact relation applies across trajectories");
  }
  require_entropy_function(m);
  DerivedState d = derive_state(state, m);
  JumpCheckReport r;
  r.relation = Relation::kContactEq;
  r.lhs = wd.da;
  r.rhs = wd.ds * d.a / (2.0 * m.gamma * d.s);
  r.rel_error = relative_error(r.lhs, r.rhs);
  // Velocity and pressure derivatives must stay continuous.
  r.side_value = std::max({std::abs(wd.du), std::abs(wd.dv),
                           std::abs(wd.dp) / (state.rho * d.a)});
  r.side_conditions_ok = side_ok(r.side_value, r.lhs, r.rhs, tol);
  r.passed = r.rel_error <= tol && r.side_conditions_ok;
  r.grid_h = wd.grid_h;
  return r;
}

JumpCheckReport char_jump_check(const WeakDiscontinuity& wd, const GasModel& m,
                                double tol) {
  if (wd.surface == SurfaceKind::kTrajectory) {
    throw Error(ErrorCode::kWrongSurfaceKind,
                "characteristic relation applies across C+ or C-");
  }
  m.validate();
  const double sign =
      wd.surface == SurfaceKind::kCharacteristicPlus ? 1.0 : -1.0;
  JumpCheckReport r;
  r.relation = Relation::kCharEq;
  r.lhs = wd.du;
  r.rhs = sign * wd.da * 2.0 / (m.gamma - 1.0);
  r.rel_error = relative_error(r.lhs, r.rhs);
  // The entropy derivative must stay continuous.
  if (wd.state) {
    GasModel ef = m;
    ef.convention = EntropyConvention::kEntropyFunction;
    DerivedState d = derive_state(*wd.state, ef);
    r.side_value = std::abs(wd.ds) * d.a / (2.0 * m.gamma * d.s);
  } else {
    r.side_value = std::abs(wd.ds);
  }
  r.side_conditions_ok = side_ok(r.side_value, r.lhs, r.rhs, tol);
  r.passed = r.rel_error <= tol && r.side_conditions_ok;
  r.grid_h = wd.grid_h;
  return r;
}

ExpansionField synthesize_centered_expansion(SurfaceKind family, double u_ahead,
                                             double a_ahead, double s_value,
                                             double u_tail,
                                             const StructuredGrid2D& xt_grid,
                                             const GasModel& m) {
  xt_grid.validate();
  m.validate();
  if (family == SurfaceKind::kTrajectory) {
    throw Error(ErrorCode::kWrongSurfaceKind, "fans are C+ or C-");
  }
  if (!(xt_grid.y0 > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "fan grid must start at t > 0");
  }
  if (!(a_ahead > 0.0) || !(s_value > 0.0)) {
    throw Error(ErrorCode::kNonPhysicalState, "a and s must be positive");
  }
  const double k = 2.0 / (m.gamma - 1.0);
  const bool plus = family == SurfaceKind::kCharacteristicPlus;
  // Invariant carried across the fan from the uniform side.
  const double J = plus ? u_ahead - k * a_ahead : u_ahead + k * a_ahead;
  const double a_tail = plus ? (u_tail - J) / k : (J - u_tail) / k;
  if (!(a_tail > 0.0)) {
    throw Error(ErrorCode::kNonPhysicalState, "fan tail reaches vacuum");
  }
  if (plus ? !(u_tail < u_ahead) : !(u_tail > u_ahead)) {
    throw Error(ErrorCode::kInvalidArgument, "tail state is not an expansion");
  }
  ExpansionField f;
  f.grid = xt_grid;
  f.family = family;
  f.head_speed = plus ? u_ahead + a_ahead : u_ahead - a_ahead;
  const double tail_speed = plus ? u_tail + a_tail : u_tail - a_tail;
  f.u.resize(xt_grid.size());
  f.a.resize(xt_grid.size());
  f.s.assign(xt_grid.size(), s_value);
  for (int j = 0; j < xt_grid.ny; ++j) {
    double t = xt_grid.y(j);
    for (int i = 0; i < xt_grid.nx; ++i) {
      double xi = xt_grid.x(i) / t;
      double u, a;
      if (plus) {
        if (xi >= f.head_speed) {
          u = u_ahead; a = a_ahead;
        } else if (xi <= tail_speed) {
          u = u_tail; a = a_tail;
        } else {
          a = (xi - J) / (1.0 + k);
          u = J + k * a;
        }
      } else {
        if (xi <= f.head_speed) {
          u = u_ahead; a = a_ahead;
        } else if (xi >= tail_speed) {
          u = u_tail; a = a_tail;
        } else {
          a = (J - xi) / (1.0 + k);
          u = xi + a;
        }
      }
      f.u[xt_grid.index(i, j)] = u;
      f.a[xt_grid.index(i, j)] = a;
    }
  }
  return f;
}

WeakDiscontinuity measure_head(const ExpansionField& f, const GasModel& m,
                               double t) {
  const auto& g = f.grid;
  Vec2 point{f.head_speed * t, t};
  // Normal to dx/dt = head_speed in the (x, t) plane.
  double len = std::hypot(1.0, f.head_speed);
  Vec2 normal{1.0 / len, -f.head_speed / len};
  std::vector<double> p(g.size());
  const double gm1 = m.gamma - 1.0;
  for (std::size_t n = 0; n < g.size(); ++n) {
    double rho = std::pow(f.a[n] * f.a[n] / (m.gamma * f.s[n]), 1.0 / gm1);
    p[n] = f.s[n] * std::pow(rho, m.gamma);
  }
  WeakDiscontinuity wd;
  wd.surface = f.family;
  wd.normal = normal;
  wd.du = measure_jump(f.u, g, normal, point);
  wd.da = measure_jump(f.a, g, normal, point);
  wd.ds = measure_jump(f.s, g, normal, point);
  wd.dp = measure_jump(p, g, normal, point);
  wd.grid_h = std::max(g.hx, g.hy);
  double a = bilinear(f.a, g, point[0], point[1]);
  double s = bilinear(f.s, g, point[0], point[1]);
  double rho = std::pow(a * a / (m.gamma * s), 1.0 / gm1);
  wd.state = PrimitiveState{rho, {bilinear(f.u, g, point[0], point[1]), 0.0},
                            s * std::pow(rho, m.gamma)};
  return wd;
}

double consistency_determinant(const PrimitiveState& q, double slope,
                               const GasModel& m) {
  DerivedState d = derive_state(q, m);
  const double rho = q.rho;
  const double u = q.u[0];
  // dp/ds at fixed rho for the model's entropy convention.
  const double p_s = m.convention == EntropyConvention::kEntropyFunction
                         ? std::pow(rho, m.gamma)
                         : q.p / m.cv();
  const double w = slope - u;
  // lambda I - B, B the flux Jacobian in (rho, u, s); diagonal kept as w.
  const double M[3][3] = {{w, -rho, 0.0},
                          {-d.a * d.a / rho, w, -p_s / rho},
                          {0.0, 0.0, w}};
  return M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
         M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
         M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
}

}  // namespace vortigen::jumps

#include "fields.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace vortigen {

void StructuredGrid2D::validate() const {
  if (nx < 3 || ny < 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "grid needs at least 3x3 nodes, got " + std::to_string(nx) +
                    "x" + std::to_string(ny));
  }
  if (!(hx > 0.0) || !(hy > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "grid spacing must be positive");
  }
}

bool StructuredGrid2D::contains(double px, double py) const {
  double tx = 1e-12 * std::max(1.0, x1() - x0);
  double ty = 1e-12 * std::max(1.0, y1() - y0);
  return px >= x0 - tx && px <= x1() + tx && py >= y0 - ty && py <= y1() + ty;
}

const std::vector<double>& Snapshot::get(FieldName name) const {
  switch (name) {
    case FieldName::kRho: return rho;
    case FieldName::kU: return u;
    case FieldName::kV: return v;
    case FieldName::kP: return p;
  }
  return rho;
}

const std::vector<double>& FieldSet::get(FieldName name) const {
  switch (name) {
    case FieldName::kRho: return rho;
    case FieldName::kU: return u;
    case FieldName::kV: return v;
    case FieldName::kP: return p;
  }
  return rho;
}

namespace {

void check_shape(std::span<const double> f, const StructuredGrid2D& grid,
                 const char* what) {
  if (f.size() != grid.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                std::string(what) + " has " + std::to_string(f.size()) +
                    " values, grid has " + std::to_string(grid.size()));
  }
}

void check_state_arrays(const StructuredGrid2D& grid,
                        const std::vector<double>& rho,
                        const std::vector<double>& u,
                        const std::vector<double>& v,
                        const std::vector<double>& p) {
  check_shape(rho, grid, "rho");
  check_shape(u, grid, "u");
  check_shape(v, grid, "v");
  check_shape(p, grid, "p");
  for (std::size_t n = 0; n < grid.size(); ++n) {
    if (!(rho[n] > 0.0) || !(p[n] > 0.0)) {
      throw Error(ErrorCode::kNonPhysicalState,
                  "node " + std::to_string(n) + ": rho=" +
                      std::to_string(rho[n]) + " p=" + std::to_string(p[n]));
    }
  }
}

// d/dx along one grid line, second order everywhere.
inline double diff_line(const double* f, std::ptrdiff_t stride, int i, int n,
                        double h) {
  if (i == 0) {
    return (-3.0 * f[0] + 4.0 * f[stride] - f[2 * stride]) / (2.0 * h);
  }
  if (i == n - 1) {
    const double* e = f + static_cast<std::ptrdiff_t>(n - 1) * stride;
    return (3.0 * e[0] - 4.0 * e[-stride] + e[-2 * stride]) / (2.0 * h);
  }
  const double* c = f + static_cast<std::ptrdiff_t>(i) * stride;
  return (c[stride] - c[-stride]) / (2.0 * h);
}

}  // namespace

void FieldSet::validate() const {
  grid.validate();
  check_state_arrays(grid, rho, u, v, p);
  for (std::size_t k = 0; k < snapshots.size(); ++k) {
    const Snapshot& s = snapshots[k];
    check_state_arrays(grid, s.rho, s.u, s.v, s.p);
    if (k > 0 && !(s.t > snapshots[k - 1].t)) {
      throw Error(ErrorCode::kParseError,
                  "snapshot times must be strictly increasing");
    }
  }
  if (!snapshots.empty() && current >= snapshots.size()) {
    throw Error(ErrorCode::kInvalidArgument, "current snapshot out of range");
  }
  if (!active.empty() && active.size() != grid.size()) {
    throw Error(ErrorCode::kShapeMismatch, "mask does not conform to grid");
  }
}

Trajectory make_trajectory(std::vector<Vec2> points) {
  Trajectory t;
  t.points = std::move(points);
  t.arclength.resize(t.points.size(), 0.0);
  for (std::size_t i = 1; i < t.points.size(); ++i) {
    double dx = t.points[i][0] - t.points[i - 1][0];
    double dy = t.points[i][1] - t.points[i - 1][1];
    t.arclength[i] = t.arclength[i - 1] + std::hypot(dx, dy);
  }
  return t;
}

VectorField gradient(std::span<const double> f, const StructuredGrid2D& grid) {
  grid.validate();
  check_shape(f, grid, "field");
  VectorField g;
  g.x.resize(grid.size());
  g.y.resize(grid.size());
  for (int j = 0; j < grid.ny; ++j) {
    const double* row = f.data() + grid.index(0, j);
    for (int i = 0; i < grid.nx; ++i) {
      g.x[grid.index(i, j)] = diff_line(row, 1, i, grid.nx, grid.hx);
    }
  }
  for (int i = 0; i < grid.nx; ++i) {
    const double* col = f.data() + i;
    for (int j = 0; j < grid.ny; ++j) {
      g.y[grid.index(i, j)] = diff_line(col, grid.nx, j, grid.ny, grid.hy);
    }
  }
  return g;
}

std::vector<double> curl2d(std::span<const double> u, std::span<const double> v,
                           const StructuredGrid2D& grid) {
  check_shape(u, grid, "u");
  check_shape(v, grid, "v");
  VectorField gu = gradient(u, grid);
  VectorField gv = gradient(v, grid);
  std::vector<double> w(grid.size());
  for (std::size_t n = 0; n < w.size(); ++n) w[n] = gv.x[n] - gu.y[n];
  return w;
}

std::vector<double> divergence(std::span<const double> fx,
                               std::span<const double> fy,
                               const StructuredGrid2D& grid) {
  check_shape(fx, grid, "fx");
  check_shape(fy, grid, "fy");
  VectorField gx = gradient(fx, grid);
  VectorField gy = gradient(fy, grid);
  std::vector<double> d(grid.size());
  for (std::size_t n = 0; n < d.size(); ++n) d[n] = gx.x[n] + gy.y[n];
  return d;
}

std::vector<double> time_derivative(const FieldSet& fs, FieldName name,
                                    std::size_t k) {
  const auto& snaps = fs.snapshots;
  const std::size_t n = snaps.size();
  if (n < 2) {
    throw Error(ErrorCode::kInsufficientSnapshots,
                "time derivative needs at least 2 snapshots, have " +
                    std::to_string(n));
  }
  if (k >= n) {
    throw Error(ErrorCode::kInvalidArgument,
                "time index " + std::to_string(k) + " out of range");
  }
  // Three-point weights on a possibly nonuniform time axis.
  std::size_t i0, i1, i2;
  double w0, w1, w2;
  if (n == 2) {
    double dt = snaps[1].t - snaps[0].t;
    const auto& a = snaps[0].get(name);
    const auto& b = snaps[1].get(name);
    std::vector<double> d(a.size());
    for (std::size_t m = 0; m < d.size(); ++m) d[m] = (b[m] - a[m]) / dt;
    return d;
  }
  if (k == 0) {
    i0 = 0; i1 = 1; i2 = 2;
    double h1 = snaps[1].t - snaps[0].t, h2 = snaps[2].t - snaps[1].t;
    w0 = -(2.0 * h1 + h2) / (h1 * (h1 + h2));
    w1 = (h1 + h2) / (h1 * h2);
    w2 = -h1 / (h2 * (h1 + h2));
  } else if (k == n - 1) {
    i0 = n - 3; i1 = n - 2; i2 = n - 1;
    double h1 = snaps[n - 2].t - snaps[n - 3].t;
    double h2 = snaps[n - 1].t - snaps[n - 2].t;
    w0 = h2 / (h1 * (h1 + h2));
    w1 = -(h1 + h2) / (h1 * h2);
    w2 = (h1 + 2.0 * h2) / (h2 * (h1 + h2));
  } else {
    i0 = k - 1; i1 = k; i2 = k + 1;
    double h1 = snaps[k].t - snaps[k - 1].t, h2 = snaps[k + 1].t - snaps[k].t;
    w0 = -h2 / (h1 * (h1 + h2));
    w1 = (h2 - h1) / (h1 * h2);
    w2 = h1 / (h2 * (h1 + h2));
  }
  const auto& a = snaps[i0].get(name);
  const auto& b = snaps[i1].get(name);
  const auto& c = snaps[i2].get(name);
  std::vector<double> d(a.size());
  for (std::size_t m = 0; m < d.size(); ++m) {
    d[m] = w0 * a[m] + w1 * b[m] + w2 * c[m];
  }
  return d;
}

double bilinear(std::span<const double> f, const StructuredGrid2D& grid,
                double px, double py) {
  double gx = (px - grid.x0) / grid.hx;
  double gy = (py - grid.y0) / grid.hy;
  int i = std::clamp(static_cast<int>(std::floor(gx)), 0, grid.nx - 2);
  int j = std::clamp(static_cast<int>(std::floor(gy)), 0, grid.ny - 2);
  double fx = gx - i;
  double fy = gy - j;
  double f00 = f[grid.index(i, j)];
  double f10 = f[grid.index(i + 1, j)];
  double f01 = f[grid.index(i, j + 1)];
  double f11 = f[grid.index(i + 1, j + 1)];
  return (1.0 - fy) * ((1.0 - fx) * f00 + fx * f10) +
         fy * ((1.0 - fx) * f01 + fx * f11);
}

namespace {

struct UnitVelocity {
  const FieldSet& fs;
  double stagnation;

  // Returns false at stagnation.
  bool operator()(const Vec2& p, Vec2& dir) const {
    double u = bilinear(fs.u, fs.grid, p[0], p[1]);
    double v = bilinear(fs.v, fs.grid, p[0], p[1]);
    double mag = std::hypot(u, v);
    if (!(mag > stagnation)) return false;
    dir = {u / mag, v / mag};
    return true;
  }
};

bool cell_active(const FieldSet& fs, const Vec2& p) {
  if (fs.active.empty()) return true;
  const auto& g = fs.grid;
  int i = std::clamp(static_cast<int>(std::floor((p[0] - g.x0) / g.hx)), 0,
                     g.nx - 2);
  int j = std::clamp(static_cast<int>(std::floor((p[1] - g.y0) / g.hy)), 0,
                     g.ny - 2);
  return fs.is_active(g.index(i, j)) && fs.is_active(g.index(i + 1, j)) &&
         fs.is_active(g.index(i, j + 1)) &&
         fs.is_active(g.index(i + 1, j + 1));
}

// One classical RK4 step of dx/dxi = U/|U|. Returns false if any stage
// stagnates.
bool rk4_step(const UnitVelocity& field, const Vec2& p, double h, Vec2& out) {
  Vec2 k1, k2, k3, k4;
  if (!field(p, k1)) return false;
  if (!field({p[0] + 0.5 * h * k1[0], p[1] + 0.5 * h * k1[1]}, k2)) return false;
  if (!field({p[0] + 0.5 * h * k2[0], p[1] + 0.5 * h * k2[1]}, k3)) return false;
  if (!field({p[0] + h * k3[0], p[1] + h * k3[1]}, k4)) return false;
  out = {p[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
         p[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
  return true;
}

}  // namespace

Trajectory trace_streamline(const FieldSet& fs, Vec2 seed,
                            const StreamlineOptions& opts) {
  const auto& g = fs.grid;
  g.validate();
  if (!g.contains(seed[0], seed[1]) || !cell_active(fs, seed)) {
    throw Error(ErrorCode::kSeedOutsideDomain,
                "seed (" + std::to_string(seed[0]) + ", " +
                    std::to_string(seed[1]) + ") is outside the fluid domain");
  }
  double umax = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n) {
    umax = std::max(umax, std::hypot(fs.u[n], fs.v[n]));
  }
  UnitVelocity field{fs, opts.stagnation_rel * umax};
  Vec2 dir;
  if (umax == 0.0 || !field(seed, dir)) {
    throw Error(ErrorCode::kStagnationAtSeed, "velocity vanishes at seed");
  }
  double h = opts.step > 0.0 ? opts.step : 0.25 * std::min(g.hx, g.hy);

  Trajectory traj;
  traj.points.push_back(seed);
  traj.arclength.push_back(0.0);
  double xi = 0.0;
  while (xi < opts.max_len) {
    double step = std::min(h, opts.max_len - xi);
    // Guard against a sliver step caused by rounding.
    if (step <= 1e-12 * h) break;
    const Vec2 p = traj.points.back();
    Vec2 next;
    if (!rk4_step(field, p, step, next)) break;
    bool inside = g.contains(next[0], next[1]) && cell_active(fs, next);
    if (!inside) {
      // Shorten the final step so the trajectory ends on the boundary.
      double lo = 0.0, hi = step;
      Vec2 best = p;
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        Vec2 trial;
        if (rk4_step(field, p, mid, trial) && g.contains(trial[0], trial[1]) &&
            cell_active(fs, trial)) {
          lo = mid;
          best = trial;
        } else {
          hi = mid;
        }
      }
      if (lo > 1e-9 * h) {
        traj.points.push_back(best);
        traj.arclength.push_back(xi + lo);
      }
      break;
    }
    xi += step;
    traj.points.push_back(next);
    traj.arclength.push_back(xi);
  }
  return traj;
}

AccompanyingFrame frame_along(const Trajectory& traj) {
  const std::size_t n = traj.points.size();
  if (n < 2 || traj.arclength.size() != n) {
    throw Error(ErrorCode::kDegenerateTrajectory,
                "frame needs at least 2 trajectory samples");
  }
  AccompanyingFrame fr;
  fr.tangent.resize(n);
  fr.normal.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t a = i == 0 ? 0 : i - 1;
    std::size_t b = i + 1 == n ? n - 1 : i + 1;
    double dx = traj.points[b][0] - traj.points[a][0];
    double dy = traj.points[b][1] - traj.points[a][1];
    double len = std::hypot(dx, dy);
    if (!(len > 0.0)) {
      throw Error(ErrorCode::kDegenerateTrajectory,
                  "coincident trajectory samples at " + std::to_string(i));
    }
    fr.tangent[i] = {dx / len, dy / len};
    fr.normal[i] = {-fr.tangent[i][1], fr.tangent[i][0]};
  }
  return fr;
}

double directional_derivative(const VectorField& grad,
                              const StructuredGrid2D& grid, Vec2 point,
                              Vec2 direction) {
  if (!grid.contains(point[0], point[1])) {
    throw Error(ErrorCode::kPointOutsideDomain,
                "(" + std::to_string(point[0]) + ", " +
                    std::to_string(point[1]) + ")");
  }
  double gx = bilinear(grad.x, grid, point[0], point[1]);
  double gy = bilinear(grad.y, grid, point[0], point[1]);
  return gx * direction[0] + gy * direction[1];
}

double directional_derivative(std::span<const double> f,
                              const StructuredGrid2D& grid, Vec2 point,
                              Vec2 direction) {
  return directional_derivative(gradient(f, grid), grid, point, direction);
}

}  // namespace vortigen

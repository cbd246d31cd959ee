#include "evoform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "errors.hpp"

namespace vortigen {

std::string_view term_name(Term t) {
  switch (t) {
    case Term::kNonstationarity: return "nonstationarity";
    case Term::kVortical: return "vortical";
    case Term::kForce: return "force";
    case Term::kH0Gradient: return "h0_gradient";
    case Term::kHeatfluxDivergence: return "heatflux_divergence";
    case Term::kConductionProduction: return "conduction_production";
    case Term::kViscousProduction: return "viscous_production";
  }
  return "unknown";
}

std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::kHyperbolic: return "Hyperbolic";
    case Regime::kElliptic: return "Elliptic";
    case Regime::kSonic: return "Sonic";
  }
  return "unknown";
}

void ForceModel::validate(const StructuredGrid2D& grid) const {
  switch (kind) {
    case Kind::kNone: return;
    case Kind::kPotential:
      if (phi.size() != grid.size()) {
        throw Error(ErrorCode::kShapeMismatch, "force potential vs grid");
      }
      return;
    case Kind::kTabulated:
      if (fx.size() != grid.size() || fy.size() != grid.size()) {
        throw Error(ErrorCode::kShapeMismatch, "tabulated force vs grid");
      }
      return;
  }
}

VectorField ForceModel::field(const StructuredGrid2D& grid) const {
  validate(grid);
  switch (kind) {
    case Kind::kNone:
      return {std::vector<double>(grid.size(), 0.0),
              std::vector<double>(grid.size(), 0.0)};
    case Kind::kPotential: {
      VectorField g = gradient(phi, grid);
      for (auto& c : g.x) c = -c;
      for (auto& c : g.y) c = -c;
      return g;
    }
    case Kind::kTabulated:
      return {fx, fy};
  }
  return {};
}

namespace {

struct NodalThermo {
  std::vector<double> T;
  std::vector<double> h0;
};

NodalThermo nodal_thermo(const FieldSet& fs, const GasModel& m) {
  NodalThermo nt;
  nt.T.resize(fs.grid.size());
  nt.h0.resize(fs.grid.size());
  for (std::size_t n = 0; n < fs.grid.size(); ++n) {
    DerivedState d = derive_state({fs.rho[n], {fs.u[n], fs.v[n]}, fs.p[n]}, m);
    nt.T[n] = d.T;
    nt.h0[n] = d.h0;
  }
  return nt;
}

}  // namespace

NormalCoefficient crocco_normal_coefficient(const FieldSet& fs,
                                            const Trajectory& traj,
                                            const AccompanyingFrame& frame,
                                            const ForceModel& forces,
                                            const GasModel& m, CroccoSign sign,
                                            bool include_nonstationary) {
  const auto& g = fs.grid;
  if (include_nonstationary && !fs.has_time_series()) {
    throw Error(ErrorCode::kMissingSnapshots,
                "nonstationary term requested without a time series");
  }
  const std::size_t n = traj.points.size();
  if (frame.normal.size() != n) {
    throw Error(ErrorCode::kShapeMismatch, "frame does not match trajectory");
  }
  NodalThermo nt = nodal_thermo(fs, m);
  VectorField grad_h0 = gradient(nt.h0, g);
  std::vector<double> w = curl2d(fs.u, fs.v, g);
  // U x rot U with rot U = w e_z.
  std::vector<double> lamb_x(g.size()), lamb_y(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    lamb_x[k] = fs.v[k] * w[k];
    lamb_y[k] = -fs.u[k] * w[k];
  }
  VectorField F = forces.field(g);
  std::vector<double> ut, vt;
  if (include_nonstationary) {
    ut = time_derivative(fs, FieldName::kU, fs.current);
    vt = time_derivative(fs, FieldName::kV, fs.current);
  }
  const double vort_sign = sign == CroccoSign::kPaperLiteral ? 1.0 : -1.0;

  NormalCoefficient out;
  out.total.resize(n);
  out.nonstationarity.assign(n, 0.0);
  out.vortical.resize(n);
  out.force.resize(n);
  out.h0_gradient.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = traj.points[i];
    const Vec2& nu = frame.normal[i];
    double T = bilinear(nt.T, g, p[0], p[1]);
    out.h0_gradient[i] = directional_derivative(grad_h0, g, p, nu) / T;
    double lamb = bilinear(lamb_x, g, p[0], p[1]) * nu[0] +
                  bilinear(lamb_y, g, p[0], p[1]) * nu[1];
    out.vortical[i] = vort_sign * lamb / T;
    double fn = bilinear(F.x, g, p[0], p[1]) * nu[0] +
                bilinear(F.y, g, p[0], p[1]) * nu[1];
    out.force[i] = -fn / T;
    if (include_nonstationary) {
      double an = bilinear(ut, g, p[0], p[1]) * nu[0] +
                  bilinear(vt, g, p[0], p[1]) * nu[1];
      out.nonstationarity[i] = an / T;
    }
    out.total[i] = out.h0_gradient[i] + out.vortical[i] + out.force[i] +
                   out.nonstationarity[i];
  }
  return out;
}

std::vector<double> ideal_A1(std::size_t samples) {
  return std::vector<double>(samples, 0.0);
}

ViscousA1 viscous_A1(const FieldSet& fs, const TransportModel& tm,
                     const GasModel& m, A1Variant variant) {
  const auto& g = fs.grid;
  if (g.nx < 5 || g.ny < 5) {
    throw Error(ErrorCode::kInvalidArgument,
                "viscous terms need at least 5x5 nodes");
  }
  if (tm.mu < 0.0 || tm.k < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "mu and k must be nonnegative");
  }
  NodalThermo nt = nodal_thermo(fs, m);
  VectorField gT = gradient(nt.T, g);
  VectorField gu = gradient(fs.u, g);
  VectorField gv = gradient(fs.v, g);

  // -q/T = k grad T / T
  std::vector<double> fx(g.size()), fy(g.size());
  for (std::size_t n = 0; n < g.size(); ++n) {
    fx[n] = tm.k * gT.x[n] / nt.T[n];
    fy[n] = tm.k * gT.y[n] / nt.T[n];
  }
  std::vector<double> div = divergence(fx, fy, g);

  ViscousA1 a;
  a.heatflux_divergence.resize(g.size());
  a.conduction_production.resize(g.size());
  a.viscous_production.resize(g.size());
  a.total.resize(g.size());
  for (std::size_t n = 0; n < g.size(); ++n) {
    double rho = fs.rho[n];
    double T = nt.T[n];
    double gradT2 = gT.x[n] * gT.x[n] + gT.y[n] * gT.y[n];
    // tau:grad u = mu [(u_y + v_x)^2 + 4/3 (u_x^2 - u_x v_y + v_y^2)],
    // written as a sum of squares so it cannot go negative in rounding.
    double ux = gu.x[n], uy = gu.y[n], vx = gv.x[n], vy = gv.y[n];
    double shear = uy + vx;
    double c = ux - 0.5 * vy;
    double dissipation =
        tm.mu * (shear * shear + (4.0 / 3.0) * (c * c + 0.75 * vy * vy));

    a.heatflux_divergence[n] = div[n] / rho;
    if (variant == A1Variant::kPaperLiteral) {
      a.conduction_production[n] = tm.k * gradT2 / (rho * T);
      a.viscous_production[n] = dissipation / rho;
    } else {
      a.conduction_production[n] = tm.k * gradT2 / (rho * T * T);
      a.viscous_production[n] = dissipation / (rho * T);
    }
    a.total[n] = a.heatflux_divergence[n] + a.conduction_production[n] +
                 a.viscous_production[n];
  }
  return a;
}

FormCoefficients assemble_form(NormalCoefficient anu, const Trajectory& traj,
                               const FieldSet& fs,
                               std::optional<ViscousA1> a1_grid,
                               CroccoSign sign) {
  FormCoefficients fc;
  fc.crocco_sign = sign;
  fc.anu = std::move(anu);
  if (a1_grid) {
    fc.A1.resize(traj.points.size());
    for (std::size_t i = 0; i < traj.points.size(); ++i) {
      fc.A1[i] = bilinear(a1_grid->total, fs.grid, traj.points[i][0],
                          traj.points[i][1]);
    }
  } else {
    fc.A1 = ideal_A1(traj.points.size());
  }
  fc.a1_grid = std::move(a1_grid);
  return fc;
}

std::vector<double> derivative_along(std::span<const double> xi,
                                     std::span<const double> f) {
  const std::size_t n = xi.size();
  if (n < 2 || f.size() != n) {
    throw Error(ErrorCode::kDegenerateTrajectory,
                "derivative along a trajectory needs at least 2 samples");
  }
  std::vector<double> d(n);
  if (n == 2) {
    d[0] = d[1] = (f[1] - f[0]) / (xi[1] - xi[0]);
    return d;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t k = std::clamp<std::size_t>(i, 1, n - 2);
    double h1 = xi[k] - xi[k - 1];
    double h2 = xi[k + 1] - xi[k];
    double w0, w1, w2;
    if (i == 0) {
      w0 = -(2.0 * h1 + h2) / (h1 * (h1 + h2));
      w1 = (h1 + h2) / (h1 * h2);
      w2 = -h1 / (h2 * (h1 + h2));
    } else if (i == n - 1) {
      w0 = h2 / (h1 * (h1 + h2));
      w1 = -(h1 + h2) / (h1 * h2);
      w2 = (h1 + 2.0 * h2) / (h2 * (h1 + h2));
    } else {
      w0 = -h2 / (h1 * (h1 + h2));
      w1 = (h2 - h1) / (h1 * h2);
      w2 = h1 / (h2 * (h1 + h2));
    }
    d[i] = w0 * f[k - 1] + w1 * f[k] + w2 * f[k + 1];
  }
  return d;
}

double Commutator::max_abs() const {
  double m = 0.0;
  for (double k : K) m = std::max(m, std::abs(k));
  return m;
}

Commutator commutator(const FormCoefficients& fc, const Trajectory& traj,
                      const AccompanyingFrame& frame, const FieldSet& fs) {
  const std::size_t n = traj.points.size();
  if (fc.anu.total.size() != n || fc.A1.size() != n ||
      frame.normal.size() != n) {
    throw Error(ErrorCode::kShapeMismatch,
                "coefficients do not match the trajectory");
  }
  Commutator c;
  c.xi1 = traj.arclength;
  auto along = [&](const std::vector<double>& f) {
    return derivative_along(traj.arclength, f);
  };
  c.attribution[static_cast<std::size_t>(Term::kNonstationarity)] =
      along(fc.anu.nonstationarity);
  c.attribution[static_cast<std::size_t>(Term::kVortical)] =
      along(fc.anu.vortical);
  c.attribution[static_cast<std::size_t>(Term::kForce)] = along(fc.anu.force);
  c.attribution[static_cast<std::size_t>(Term::kH0Gradient)] =
      along(fc.anu.h0_gradient);

  auto across = [&](const std::vector<double>& field) {
    std::vector<double> out(n, 0.0);
    VectorField gr = gradient(field, fs.grid);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = -directional_derivative(gr, fs.grid, traj.points[i],
                                       frame.normal[i]);
    }
    return out;
  };
  if (fc.a1_grid) {
    c.attribution[static_cast<std::size_t>(Term::kHeatfluxDivergence)] =
        across(fc.a1_grid->heatflux_divergence);
    c.attribution[static_cast<std::size_t>(Term::kConductionProduction)] =
        across(fc.a1_grid->conduction_production);
    c.attribution[static_cast<std::size_t>(Term::kViscousProduction)] =
        across(fc.a1_grid->viscous_production);
  } else {
    for (Term t : {Term::kHeatfluxDivergence, Term::kConductionProduction,
                   Term::kViscousProduction}) {
      c.attribution[static_cast<std::size_t>(t)].assign(n, 0.0);
    }
  }

  // K = dA_nu/dxi1 - dA_1/dxi_nu, evaluated on the totals.
  std::vector<double> dAnu = along(fc.anu.total);
  std::vector<double> dA1(n, 0.0);
  if (fc.a1_grid) {
    std::vector<double> m = across(fc.a1_grid->total);
    for (std::size_t i = 0; i < n; ++i) dA1[i] = -m[i];
  }
  c.K.resize(n);
  for (std::size_t i = 0; i < n; ++i) c.K[i] = dAnu[i] - dA1[i];
  return c;
}

bool mask_simply_connected(const StructuredGrid2D& grid,
                           std::span<const std::uint8_t> active) {
  if (active.empty()) return true;
  if (active.size() != grid.size()) {
    throw Error(ErrorCode::kShapeMismatch, "mask does not conform to grid");
  }
  // Flood the solid nodes from the outer boundary (8-connected); any solid
  // node left unreached is an enclosed body, i.e. a hole in the fluid.
  std::vector<std::uint8_t> seen(grid.size(), 0);
  std::queue<std::pair<int, int>> q;
  auto push = [&](int i, int j) {
    std::size_t k = grid.index(i, j);
    if (!active[k] && !seen[k]) {
      seen[k] = 1;
      q.emplace(i, j);
    }
  };
  for (int i = 0; i < grid.nx; ++i) {
    push(i, 0);
    push(i, grid.ny - 1);
  }
  for (int j = 0; j < grid.ny; ++j) {
    push(0, j);
    push(grid.nx - 1, j);
  }
  while (!q.empty()) {
    auto [i, j] = q.front();
    q.pop();
    for (int dj = -1; dj <= 1; ++dj) {
      for (int di = -1; di <= 1; ++di) {
        int a = i + di, b = j + dj;
        if (a >= 0 && a < grid.nx && b >= 0 && b < grid.ny) push(a, b);
      }
    }
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!active[k] && !seen[k]) return false;
  }
  return true;
}

namespace {

double max_abs(std::span<const double> f) {
  double m = 0.0;
  for (double x : f) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

LagrangeReport lagrange_criterion(const FieldSet& fs, const ForceModel& forces,
                                  bool has_time_series,
                                  const LagrangeOptions& opts) {
  LagrangeReport r;
  const auto& g = fs.grid;
  if (has_time_series && fs.snapshots.size() >= 2) {
    double umax = 0.0, amax = 0.0;
    for (std::size_t n = 0; n < g.size(); ++n) {
      umax = std::max(umax, std::hypot(fs.u[n], fs.v[n]));
      amax = std::max(amax, std::sqrt(fs.p[n] / fs.rho[n]));
    }
    const double vel_scale = std::max(umax, amax);
    const double scales[4] = {max_abs(fs.rho), vel_scale, vel_scale,
                              max_abs(fs.p)};
    const FieldName names[4] = {FieldName::kRho, FieldName::kU, FieldName::kV,
                                FieldName::kP};
    for (int f = 0; f < 4 && r.stationary; ++f) {
      for (std::size_t k = 1; k < fs.snapshots.size(); ++k) {
        const auto& a = fs.snapshots[k - 1].get(names[f]);
        const auto& b = fs.snapshots[k].get(names[f]);
        double change = 0.0;
        for (std::size_t n = 0; n < a.size(); ++n) {
          change = std::max(change, std::abs(b[n] - a[n]));
        }
        if (change > opts.stationary_rel * scales[f]) {
          r.stationary = false;
          break;
        }
      }
    }
  }
  if (forces.kind == ForceModel::Kind::kTabulated) {
    forces.validate(g);
    std::vector<double> c = curl2d(forces.fx, forces.fy, g);
    double fmax = 0.0;
    for (std::size_t n = 0; n < g.size(); ++n) {
      fmax = std::max(fmax, std::hypot(forces.fx[n], forces.fy[n]));
    }
    double L = std::min(g.x1() - g.x0, g.y1() - g.y0);
    r.potential = max_abs(c) * L <= opts.curl_rel * fmax;
  }
  r.simply_connected = mask_simply_connected(g, fs.active);
  r.predicts_equilibrium = r.stationary && r.potential && r.simply_connected;
  return r;
}

Regime classify_regime(double speed, double a) {
  if (std::abs(speed - a) <= 1e-12 * a) return Regime::kSonic;
  return speed > a ? Regime::kHyperbolic : Regime::kElliptic;
}

Regime classify_regime(const PrimitiveState& q, const GasModel& m) {
  DerivedState d = derive_state(q, m);
  return classify_regime(std::hypot(q.u[0], q.u[1]), d.a);
}

EquilibriumVerdict equilibrium_classifier(std::span<const Commutator> cs,
                                          double tol) {
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  }
  EquilibriumVerdict v;
  for (const Commutator& c : cs) {
    v.intensity = std::max(v.intensity, c.max_abs());
    for (std::size_t t = 0; t < kTermCount; ++t) {
      const auto& comp = c.attribution[t];
      for (std::size_t i = 1; i < comp.size(); ++i) {
        v.weights[t] += 0.5 * (std::abs(comp[i]) + std::abs(comp[i - 1])) *
                        (c.xi1[i] - c.xi1[i - 1]);
      }
    }
  }
  v.locally_equilibrium = v.intensity <= tol;
  if (!v.locally_equilibrium) {
    std::size_t best = 0;
    for (std::size_t t = 1; t < kTermCount; ++t) {
      if (v.weights[t] > v.weights[best]) best = t;
    }
    v.dominant = kAllTerms[best];
  }
  return v;
}

EquilibriumVerdict equilibrium_classifier(const Commutator& c, double tol) {
  return equilibrium_classifier(std::span<const Commutator>(&c, 1), tol);
}

namespace {

// max over nodes and both axes of |k-th forward difference| / h^k.
double divided_difference_max(std::span<const double> f,
                              const StructuredGrid2D& g, int k) {
  static constexpr double kBinom[5][5] = {{1, 0, 0, 0, 0},
                                          {-1, 1, 0, 0, 0},
                                          {1, -2, 1, 0, 0},
                                          {-1, 3, -3, 1, 0},
                                          {1, -4, 6, -4, 1}};
  double best = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i + k < g.nx; ++i) {
      double s = 0.0;
      for (int m = 0; m <= k; ++m) s += kBinom[k][m] * f[g.index(i + m, j)];
      best = std::max(best, std::abs(s) / std::pow(g.hx, k));
    }
  }
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j + k < g.ny; ++j) {
      double s = 0.0;
      for (int m = 0; m <= k; ++m) s += kBinom[k][m] * f[g.index(i, j + m)];
      best = std::max(best, std::abs(s) / std::pow(g.hy, k));
    }
  }
  return best;
}

struct TruncationInputs {
  double h, umax, tmin, h0max;
  double d1u, d3u, d4u, d3h0, d4h0;
};

TruncationInputs truncation_inputs(const FieldSet& fs, const GasModel& m) {
  const auto& g = fs.grid;
  NodalThermo nt = nodal_thermo(fs, m);
  TruncationInputs in{};
  in.h = std::max(g.hx, g.hy);
  in.tmin = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < g.size(); ++n) {
    in.umax = std::max(in.umax, std::hypot(fs.u[n], fs.v[n]));
    in.tmin = std::min(in.tmin, nt.T[n]);
    in.h0max = std::max(in.h0max, std::abs(nt.h0[n]));
  }
  const int kmax = std::min(4, std::min(g.nx, g.ny) - 1);
  auto dd = [&](std::span<const double> f, int k) {
    return k <= kmax ? divided_difference_max(f, g, k) : 0.0;
  };
  in.d1u = std::max(dd(fs.u, 1), dd(fs.v, 1));
  in.d3u = std::max(dd(fs.u, 3), dd(fs.v, 3));
  in.d4u = std::max(dd(fs.u, 4), dd(fs.v, 4));
  in.d3h0 = dd(nt.h0, 3);
  in.d4h0 = dd(nt.h0, 4);
  return in;
}

}  // namespace

double commutator_truncation_estimate(const FieldSet& fs, const GasModel& m) {
  TruncationInputs in = truncation_inputs(fs, m);
  double trunc = in.h * in.h / 6.0 *
                 (in.umax * in.d4u + in.d1u * in.d3u + in.d4h0) / in.tmin;
  double rounding = 1e-13 * in.h0max / (in.h * in.h * in.tmin);
  return trunc + rounding;
}

double normal_coefficient_truncation_estimate(const FieldSet& fs,
                                              const GasModel& m) {
  TruncationInputs in = truncation_inputs(fs, m);
  double trunc = in.h * in.h / 6.0 * (in.umax * in.d3u + in.d3h0) / in.tmin;
  double rounding = 1e-13 * in.h0max / (in.h * in.tmin);
  return trunc + rounding;
}

}  // namespace vortigen

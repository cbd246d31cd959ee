#include "thermo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace vortigen {

void GasModel::validate() const {
  if (!(gamma > 1.0) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::kInvalidArgument,
                "gamma must exceed 1, got " + std::to_string(gamma));
  }
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw Error(ErrorCode::kInvalidArgument,
                "R must be positive, got " + std::to_string(R));
  }
}

namespace {

void check_physical(double rho, double p) {
  if (!(rho > 0.0) || !(p > 0.0) || !std::isfinite(rho) || !std::isfinite(p)) {
    throw Error(ErrorCode::kNonPhysicalState,
                "rho=" + std::to_string(rho) + " p=" + std::to_string(p));
  }
}

}  // namespace

double temperature(double rho, double p, const GasModel& m) {
  check_physical(rho, p);
  return p / (rho * m.R);
}

double sound_speed(double rho, double p, const GasModel& m) {
  check_physical(rho, p);
  return std::sqrt(m.gamma * p / rho);
}

double entropy(double rho, double p, const GasModel& m) {
  check_physical(rho, p);
  double fn = p / std::pow(rho, m.gamma);
  if (m.convention == EntropyConvention::kEntropyFunction) return fn;
  return m.cv() * std::log(fn) + m.s_ref;
}

double pressure_from_entropy(double rho, double s, const GasModel& m) {
  if (!(rho > 0.0)) {
    throw Error(ErrorCode::kNonPhysicalState, "rho=" + std::to_string(rho));
  }
  if (m.convention == EntropyConvention::kEntropyFunction) {
    if (!(s > 0.0)) {
      throw Error(ErrorCode::kNonPhysicalState,
                  "entropy function must be positive");
    }
    return s * std::pow(rho, m.gamma);
  }
  return std::exp((s - m.s_ref) / m.cv()) * std::pow(rho, m.gamma);
}

DerivedState derive_state(const PrimitiveState& q, const GasModel& m) {
  m.validate();
  check_physical(q.rho, q.p);
  DerivedState d;
  d.T = q.p / (q.rho * m.R);
  d.a = std::sqrt(m.gamma * q.p / q.rho);
  d.s = entropy(q.rho, q.p, m);
  d.e = m.cv() * d.T;
  d.h = d.e + q.p / q.rho;
  d.h0 = d.h + 0.5 * (q.u[0] * q.u[0] + q.u[1] * q.u[1]);
  return d;
}

double gibbs_residual(std::span<const PrimitiveState> path, const GasModel& m) {
  if (m.convention != EntropyConvention::kSpecific) {
    throw Error(ErrorCode::kConventionMismatch,
                "the Gibbs relation is stated for specific entropy");
  }
  if (path.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "path needs at least 2 states");
  }
  double worst = 0.0;
  DerivedState prev = derive_state(path[0], m);
  for (std::size_t i = 1; i < path.size(); ++i) {
    DerivedState cur = derive_state(path[i], m);
    double T_mid = 0.5 * (prev.T + cur.T);
    double p_mid = 0.5 * (path[i - 1].p + path[i].p);
    double dV = 1.0 / path[i].rho - 1.0 / path[i - 1].rho;
    double r = T_mid * (cur.s - prev.s) - (cur.e - prev.e) - p_mid * dV;
    worst = std::max(worst, std::abs(r));
    prev = cur;
  }
  return worst;
}

}  // namespace vortigen

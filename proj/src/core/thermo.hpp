#ifndef VORTIGEN_THERMO_HPP_
#define VORTIGEN_THERMO_HPP_

#include <array>
#include <span>

namespace vortigen {

enum class EntropyConvention {
  kEntropyFunction,  // s = p / rho^gamma
  kSpecific,         // s = c_v ln(p / rho^gamma) + s_ref, J/(kg K)
};

// Calorically perfect gas. c_v and c_p are always derived from gamma and R.
struct GasModel {
  double gamma = 1.4;
  double R = 287.0;
  EntropyConvention convention = EntropyConvention::kEntropyFunction;
  double s_ref = 0.0;

  double cv() const { return R / (gamma - 1.0); }
  double cp() const { return gamma * R / (gamma - 1.0); }

  // Throws InvalidArgument unless gamma > 1 and R > 0.
  void validate() const;
};

struct PrimitiveState {
  double rho = 1.0;
  std::array<double, 2> u{0.0, 0.0};
  double p = 1.0;
};

struct DerivedState {
  double T = 0.0;   // temperature
  double a = 0.0;   // sound speed
  double s = 0.0;   // entropy, per the model's convention
  double e = 0.0;   // internal energy per unit mass
  double h = 0.0;   // enthalpy per unit mass
  double h0 = 0.0;  // total enthalpy
};

DerivedState derive_state(const PrimitiveState& q, const GasModel& m);

double temperature(double rho, double p, const GasModel& m);
double sound_speed(double rho, double p, const GasModel& m);
double entropy(double rho, double p, const GasModel& m);

// Inverse of entropy() at fixed density.
double pressure_from_entropy(double rho, double s, const GasModel& m);

// Discrete Gibbs relation residual along an ordered thermodynamic path:
// max over consecutive pairs of |Tbar ds - de - pbar dV| with V = 1/rho and
// midpoint averages. Requires the Specific convention.
double gibbs_residual(std::span<const PrimitiveState> path, const GasModel& m);

}  // namespace vortigen

#endif  // VORTIGEN_THERMO_HPP_

#ifndef VORTIGEN_EVOFORM_HPP_
#define VORTIGEN_EVOFORM_HPP_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fields.hpp"
#include "thermo.hpp"

namespace vortigen {

// Sign of the U x rot U term in the normal coefficient. kConsistent (minus)
// agrees with the momentum equation; kPaperLiteral keeps the plus sign.
enum class CroccoSign { kPaperLiteral, kConsistent };

// kPaperLiteral: (1/rho) d_i(-q_i/T) - q_i dT/dx_i / (rho T) + tau:grad u / rho
// kStandardProduction: same divergence term, production terms k|grad T|^2/(rho T^2)
// and tau:grad u/(rho T).
enum class A1Variant { kPaperLiteral, kStandardProduction };

struct ForceModel {
  enum class Kind { kNone, kPotential, kTabulated };
  Kind kind = Kind::kNone;
  std::vector<double> phi;     // kPotential, J/kg; F = -grad phi
  std::vector<double> fx, fy;  // kTabulated, N/kg

  void validate(const StructuredGrid2D& grid) const;
  VectorField field(const StructuredGrid2D& grid) const;
};

// Fourier conduction, Newtonian stress with the Stokes hypothesis.
struct TransportModel {
  double mu = 0.0;
  double k = 0.0;
};

// Attribution component names, in report/CSV column order.
enum class Term {
  kNonstationarity,
  kVortical,
  kForce,
  kH0Gradient,
  kHeatfluxDivergence,
  kConductionProduction,
  kViscousProduction,
};
inline constexpr std::size_t kTermCount = 7;
std::string_view term_name(Term t);
inline constexpr std::array<Term, kTermCount> kAllTerms = {
    Term::kNonstationarity,      Term::kVortical,
    Term::kForce,                Term::kH0Gradient,
    Term::kHeatfluxDivergence,   Term::kConductionProduction,
    Term::kViscousProduction};

// A_nu samples along one trajectory together with its additive pieces.
struct NormalCoefficient {
  std::vector<double> total;
  std::vector<double> nonstationarity;
  std::vector<double> vortical;
  std::vector<double> force;
  std::vector<double> h0_gradient;
};

NormalCoefficient crocco_normal_coefficient(const FieldSet& fs,
                                            const Trajectory& traj,
                                            const AccompanyingFrame& frame,
                                            const ForceModel& forces,
                                            const GasModel& m, CroccoSign sign,
                                            bool include_nonstationary);

// A_1 on the grid, split into its three additive pieces.
struct ViscousA1 {
  std::vector<double> heatflux_divergence;
  std::vector<double> conduction_production;
  std::vector<double> viscous_production;
  std::vector<double> total;
};

ViscousA1 viscous_A1(const FieldSet& fs, const TransportModel& tm,
                     const GasModel& m, A1Variant variant);

// Inviscid, non-conducting gas: A_1 vanishes along every trajectory.
std::vector<double> ideal_A1(std::size_t samples);

struct FormCoefficients {
  CroccoSign crocco_sign = CroccoSign::kConsistent;
  NormalCoefficient anu;
  std::vector<double> A1;           // samples along the trajectory
  std::optional<ViscousA1> a1_grid;  // absent for inviscid runs
};

FormCoefficients assemble_form(NormalCoefficient anu, const Trajectory& traj,
                               const FieldSet& fs,
                               std::optional<ViscousA1> a1_grid,
                               CroccoSign sign);

struct Commutator {
  std::vector<double> xi1;
  std::vector<double> K;
  std::array<std::vector<double>, kTermCount> attribution;

  const std::vector<double>& component(Term t) const {
    return attribution[static_cast<std::size_t>(t)];
  }
  double max_abs() const;
};

// d/dxi along samples with nonuniform spacing; second order where three
// samples are available.
std::vector<double> derivative_along(std::span<const double> xi,
                                     std::span<const double> f);

Commutator commutator(const FormCoefficients& fc, const Trajectory& traj,
                      const AccompanyingFrame& frame, const FieldSet& fs);

struct LagrangeReport {
  bool stationary = true;
  bool potential = true;
  bool simply_connected = true;
  bool predicts_equilibrium = true;
};

struct LagrangeOptions {
  double stationary_rel = 1e-9;
  double curl_rel = 1e-8;
};

LagrangeReport lagrange_criterion(const FieldSet& fs, const ForceModel& forces,
                                  bool has_time_series,
                                  const LagrangeOptions& opts = {});

// True when the inactive nodes of the mask enclose no hole.
bool mask_simply_connected(const StructuredGrid2D& grid,
                           std::span<const std::uint8_t> active);

enum class Regime { kHyperbolic, kElliptic, kSonic };
std::string_view regime_name(Regime r);

Regime classify_regime(double speed, double a);
Regime classify_regime(const PrimitiveState& q, const GasModel& m);

struct EquilibriumVerdict {
  bool locally_equilibrium = true;
  std::optional<Term> dominant;
  double intensity = 0.0;  // max |K|
  std::array<double, kTermCount> weights{};  // integral of |component| d xi1
};

EquilibriumVerdict equilibrium_classifier(std::span<const Commutator> cs,
                                          double tol);
EquilibriumVerdict equilibrium_classifier(const Commutator& c, double tol);

// Leading truncation estimate of K on this grid (velocity and total-enthalpy
// fourth/third differences), plus a rounding floor.
double commutator_truncation_estimate(const FieldSet& fs, const GasModel& m);

// Leading truncation estimate of A_nu.
double normal_coefficient_truncation_estimate(const FieldSet& fs,
                                              const GasModel& m);

inline double default_equilibrium_tolerance(const FieldSet& fs,
                                            const GasModel& m) {
  return 10.0 * commutator_truncation_estimate(fs, m);
}

}  // namespace vortigen

#endif  // VORTIGEN_EVOFORM_HPP_

#ifndef VORTIGEN_MOC_HPP_
#define VORTIGEN_MOC_HPP_

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "thermo.hpp"

namespace vortigen::moc {

// Entropy is always the entropy function s = p / rho^gamma in this module.
struct CharNode {
  double x = 0.0;
  double t = 0.0;
  double u = 0.0;
  double a = 1.0;
  double s = 1.0;
};

enum class Family { kPlus, kMinus, kZero };
std::string_view family_name(Family f);

// Parent indices into the previous level. The C0 foot lies between nodes
// c0 and c0 + 1 of that level, c0_weight along the way in node index.
struct NodeLinks {
  int cplus = -1;
  int cminus = -1;
  int c0 = -1;
  double c0_weight = 0.0;
};

struct EnvelopeEvent {
  double t_star = 0.0;
  double x_star = 0.0;
  Family family = Family::kPlus;
};

// Level k + 1 node i is the intersection of the C+ characteristic from level
// k node i with the C- characteristic from level k node i + 1, so each level
// is one node shorter than the one below it.
struct CharNet {
  double gamma = 1.4;
  std::vector<std::vector<CharNode>> levels;
  std::vector<std::vector<NodeLinks>> links;
  std::optional<EnvelopeEvent> envelope;

  std::size_t node_count() const;
};

struct Slopes {
  double plus, minus, zero;
};

Slopes char_slopes(const CharNode& n);

struct RiemannInvariants {
  double plus, minus;
};

RiemannInvariants riemann_invariants(const CharNode& n, double gamma);

// |du +- 2/(gamma-1) da -+ abar/(gamma (gamma-1) sbar) ds| with midpoint
// averages; the discrete form of du +- dp/(rho a) = 0 under p = s rho^gamma.
double compat_residual(const CharNode& from, const CharNode& to, Family family,
                       double gamma);

CharNode node_from_primitive(double x, double rho, double u, double p,
                             double gamma);

struct AdvanceOptions {
  int max_iterations = 20;
  double tolerance = 1e-12;
  bool stop_at_envelope = true;
};

// Grid-of-characteristics predictor-corrector. Stops at t_end (levels whose
// latest node would pass t_end are dropped) or after the level in which the
// first envelope is detected.
CharNet advance_net(std::span<const CharNode> initial, double t_end,
                    const GasModel& m, const AdvanceOptions& opts = {});

// C0: max |s_P - s(foot)| with s(foot) from a cubic reconstruction of the
// previous level (the solver itself carries a quadratic one).
// C+/C-: max compat_residual over the links of that family; in isentropic
// runs this is max |dJ+-| along the chains.
double pseudostructure_residual(const CharNet& net, Family family);

// max - min of J+ (kPlus) or J- (kMinus) over every node of the net.
double invariant_spread(const CharNet& net, Family family);

struct JacobianSeries {
  double x0 = 0.0;
  std::vector<double> t;
  std::vector<double> J;
};

// dx/dx0 along each characteristic of the family, by differencing against
// the neighbouring characteristic launched to its right.
std::vector<JacobianSeries> jacobian_trace(const CharNet& net, Family family);

// Numeric path: earliest sign change of the Jacobian over both acoustic
// families, refined by linear interpolation.
std::optional<EnvelopeEvent> detect_envelope(const CharNet& net);

// Analytic path for simple-wave data: t* = -1 / min lambda'(x0) over both
// acoustic families, with lambda' from differences of the initial profile.
std::optional<EnvelopeEvent> predict_envelope(std::span<const CharNode> initial);

}  // namespace vortigen::moc

#endif  // VORTIGEN_MOC_HPP_

#include "moc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "errors.hpp"

namespace vortigen::moc {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::kPlus: return "C+";
    case Family::kMinus: return "C-";
    case Family::kZero: return "C0";
  }
  return "?";
}

std::size_t CharNet::node_count() const {
  std::size_t n = 0;
  for (const auto& l : levels) n += l.size();
  return n;
}

Slopes char_slopes(const CharNode& n) { return {n.u + n.a, n.u - n.a, n.u}; }

RiemannInvariants riemann_invariants(const CharNode& n, double gamma) {
  double k = 2.0 / (gamma - 1.0);
  return {n.u + k * n.a, n.u - k * n.a};
}

double compat_residual(const CharNode& from, const CharNode& to, Family family,
                       double gamma) {
  double k = 2.0 / (gamma - 1.0);
  double a_mid = 0.5 * (from.a + to.a);
  double s_mid = 0.5 * (from.s + to.s);
  double c = a_mid / (gamma * (gamma - 1.0) * s_mid);
  double du = to.u - from.u, da = to.a - from.a, ds = to.s - from.s;
  switch (family) {
    case Family::kPlus: return std::abs(du + k * da - c * ds);
    case Family::kMinus: return std::abs(du - k * da + c * ds);
    case Family::kZero: return std::abs(ds);
  }
  return 0.0;
}

CharNode node_from_primitive(double x, double rho, double u, double p,
                             double gamma) {
  if (!(rho > 0.0) || !(p > 0.0)) {
    throw Error(ErrorCode::kNonPhysicalState,
                "rho=" + std::to_string(rho) + " p=" + std::to_string(p));
  }
  return {x, 0.0, u, std::sqrt(gamma * p / rho), p / std::pow(rho, gamma)};
}

namespace {

// Lagrange interpolation through the level nodes first .. first + count - 1,
// parametrised by node index.
struct LevelCurve {
  const std::vector<CharNode>& level;
  int first;
  int count;

  double eval(double sigma, double CharNode::*field) const {
    double sum = 0.0;
    for (int a = 0; a < count; ++a) {
      double w = 1.0;
      for (int b = 0; b < count; ++b) {
        if (b != a) w *= (sigma - (first + b)) / double(a - b);
      }
      sum += w * level[first + a].*field;
    }
    return sum;
  }
};

LevelCurve stencil(const std::vector<CharNode>& level, int left, int points,
                   double prefer_left) {
  const int n = static_cast<int>(level.size());
  points = std::min(points, n);
  // Centre the stencil on [left, left + 1], leaning towards the foot.
  int first = left - (points - 2 + (prefer_left < 0.5 ? 1 : 0)) / 2;
  first = std::clamp(first, 0, n - points);
  return {level, first, points};
}

// Backward C0 from (x_p, t_p) with velocity u_p meets the level curve at
// sigma in [left, left + 1]. Illinois false position on the bracket.
double c0_foot(const LevelCurve& curve, int left, double x_p, double t_p,
               double u_p) {
  auto g = [&](double sigma) {
    double x = curve.eval(sigma, &CharNode::x);
    double t = curve.eval(sigma, &CharNode::t);
    double u = curve.eval(sigma, &CharNode::u);
    return x_p - x - 0.5 * (u_p + u) * (t_p - t);
  };
  double lo = left, hi = left + 1.0;
  double glo = g(lo), ghi = g(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if ((glo > 0.0) == (ghi > 0.0)) {
    // Not bracketed: only possible with a degenerate level; take the chord.
    return std::abs(glo) < std::abs(ghi) ? lo : hi;
  }
  int side = 0;
  double sigma = lo;
  for (int it = 0; it < 200; ++it) {
    sigma = (lo * ghi - hi * glo) / (ghi - glo);
    double gs = g(sigma);
    if (gs == 0.0 || hi - lo < 1e-15) break;
    if ((gs > 0.0) == (glo > 0.0)) {
      lo = sigma;
      glo = gs;
      if (side == -1) ghi *= 0.5;
      side = -1;
    } else {
      hi = sigma;
      ghi = gs;
      if (side == 1) glo *= 0.5;
      side = 1;
    }
    if (std::abs(gs) < 1e-16 * (std::abs(x_p) + 1.0)) break;
  }
  return sigma;
}

struct Placement {
  double x, t;
};

Placement intersect(const CharNode& L, const CharNode& R, double lp,
                    double lm) {
  double t = (R.x - L.x + lp * L.t - lm * R.t) / (lp - lm);
  return {L.x + lp * (t - L.t), t};
}

std::pair<CharNode, NodeLinks> compute_node(const std::vector<CharNode>& prev,
                                            int i, double gamma,
                                            const AdvanceOptions& opts) {
  const CharNode& L = prev[i];
  const CharNode& R = prev[i + 1];
  const double k = 2.0 / (gamma - 1.0);

  CharNode P;
  {
    double lp = L.u + L.a, lm = R.u - R.a;
    if (!(lp > lm)) {
      throw Error(ErrorCode::kNonConvergence, "characteristics do not cross");
    }
    Placement pl = intersect(L, R, lp, lm);
    P.x = pl.x;
    P.t = pl.t;
    P.u = 0.5 * (L.u + R.u);
    P.a = 0.5 * (L.a + R.a);
    P.s = 0.5 * (L.s + R.s);
  }
  // Quadratic reconstruction of the level for the C0 foot; the stencil side
  // is fixed from the predictor so the iteration map stays smooth.
  double sigma0 = c0_foot(LevelCurve{prev, i, 2}, i, P.x, P.t, P.u);
  LevelCurve curve = stencil(prev, i, 3, sigma0 - i);

  const double dx_scale = std::abs(R.x - L.x);
  const double dt_scale = dx_scale / std::max(L.a, R.a);
  double sigma = sigma0;
  bool converged = false;
  for (int it = 0; it < opts.max_iterations; ++it) {
    sigma = c0_foot(curve, i, P.x, P.t, P.u);
    double s_new = curve.eval(sigma, &CharNode::s);
    if (!(s_new > 0.0)) {
      throw Error(ErrorCode::kNonConvergence, "entropy interpolated to <= 0");
    }
    double cp = 0.5 * (L.a + P.a) / (gamma * (gamma - 1.0) * 0.5 * (L.s + s_new));
    double cm = 0.5 * (R.a + P.a) / (gamma * (gamma - 1.0) * 0.5 * (R.s + s_new));
    double A = L.u + k * L.a + cp * (s_new - L.s);
    double B = R.u - k * R.a - cm * (s_new - R.s);
    double u_new = 0.5 * (A + B);
    double a_new = (A - B) / (2.0 * k);
    if (!(a_new > 0.0)) {
      throw Error(ErrorCode::kNonConvergence, "sound speed went nonpositive");
    }
    double lp = 0.5 * (L.u + L.a + u_new + a_new);
    double lm = 0.5 * (R.u - R.a + u_new - a_new);
    if (!(lp > lm)) {
      throw Error(ErrorCode::kNonConvergence, "characteristics do not cross");
    }
    Placement pl = intersect(L, R, lp, lm);
    const double tol = opts.tolerance;
    bool done = std::abs(pl.x - P.x) <= tol * (std::abs(pl.x) + dx_scale) &&
                std::abs(pl.t - P.t) <= tol * (std::abs(pl.t) + dt_scale) &&
                std::abs(u_new - P.u) <= tol * (std::abs(u_new) + a_new) &&
                std::abs(a_new - P.a) <= tol * a_new &&
                std::abs(s_new - P.s) <= tol * s_new;
    P = {pl.x, pl.t, u_new, a_new, s_new};
    if (done) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw Error(ErrorCode::kNonConvergence,
                "corrector did not converge in " +
                    std::to_string(opts.max_iterations) + " iterations");
  }
  NodeLinks links{i, i + 1, i, sigma - i};
  return {P, links};
}

// Position of node m on a characteristic chain, or nullptr if the chain has
// no node on level m.
const CharNode* chain_node(const CharNet& net, Family fam, int chain, int m) {
  if (m < 0 || m >= static_cast<int>(net.levels.size())) return nullptr;
  int idx = fam == Family::kPlus ? chain : chain - m;
  const auto& level = net.levels[m];
  if (idx < 0 || idx >= static_cast<int>(level.size())) return nullptr;
  return &level[idx];
}

int chain_length(const CharNet& net, Family fam, int chain) {
  // Level m holds N - m nodes.
  const int levels = static_cast<int>(net.levels.size());
  const int N = static_cast<int>(net.levels[0].size());
  if (chain < 0 || chain >= N) return 0;
  return fam == Family::kPlus ? std::min(levels, N - chain)
                              : std::min(levels, chain + 1);
}

// x of a chain at time t by linear interpolation; extrapolates at most one
// segment past the last node.
bool chain_x_at(const CharNet& net, Family fam, int chain, int length,
                double t, double& x) {
  if (length < 2) return false;
  int lo = 0, hi = length - 1;
  const CharNode* last = chain_node(net, fam, chain, hi);
  if (t > last->t) {
    const CharNode* before = chain_node(net, fam, chain, hi - 1);
    if (t - last->t > last->t - before->t) return false;
    x = last->x + (last->x - before->x) / (last->t - before->t) * (t - last->t);
    return true;
  }
  if (t < chain_node(net, fam, chain, 0)->t) return false;
  while (hi - lo > 1) {
    int mid = (lo + hi) / 2;
    if (chain_node(net, fam, chain, mid)->t <= t) lo = mid; else hi = mid;
  }
  const CharNode* a = chain_node(net, fam, chain, lo);
  const CharNode* b = chain_node(net, fam, chain, hi);
  double w = (t - a->t) / (b->t - a->t);
  x = a->x + w * (b->x - a->x);
  return true;
}

bool jacobian_sample(const CharNet& net, Family fam, int chain, int m,
                     int neighbour_length, double& t, double& J) {
  const CharNode* n = chain_node(net, fam, chain, m);
  if (!n) return false;
  double x_nb;
  if (!chain_x_at(net, fam, chain + 1, neighbour_length, n->t, x_nb)) {
    return false;
  }
  double dx0 = net.levels[0][chain + 1].x - net.levels[0][chain].x;
  t = n->t;
  J = (x_nb - n->x) / dx0;
  return true;
}

double chain_x_interp(const CharNet& net, Family fam, int chain, double t) {
  double x = 0.0;
  int len = chain_length(net, fam, chain);
  if (chain_x_at(net, fam, chain, len, t, x)) return x;
  return chain_node(net, fam, chain, len - 1)->x;
}

struct Sample {
  bool valid = false;
  double t = 0.0, J = 1.0;
};

std::optional<EnvelopeEvent> crossing(const CharNet& net, Family fam,
                                      int chain, const Sample& before,
                                      double t, double J) {
  if (!before.valid || !(before.J > 0.0) || J > 0.0) return std::nullopt;
  double ts = before.t + (t - before.t) * before.J / (before.J - J);
  return EnvelopeEvent{ts, chain_x_interp(net, fam, chain, ts), fam};
}

}  // namespace

CharNet advance_net(std::span<const CharNode> initial, double t_end,
                    const GasModel& m, const AdvanceOptions& opts) {
  m.validate();
  if (initial.size() < 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "advance_net needs at least 3 initial nodes");
  }
  for (std::size_t i = 0; i < initial.size(); ++i) {
    const CharNode& n = initial[i];
    if (!(n.a > 0.0) || !(n.s > 0.0)) {
      throw Error(ErrorCode::kNonPhysicalState,
                  "initial node " + std::to_string(i) + " has a<=0 or s<=0");
    }
    if (n.t != 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "initial nodes must have t = 0");
    }
    if (i > 0 && !(n.x > initial[i - 1].x)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "initial nodes must be strictly increasing in x");
    }
  }
  CharNet net;
  net.gamma = m.gamma;
  net.levels.emplace_back(initial.begin(), initial.end());
  net.links.emplace_back(initial.size());

  const int N = static_cast<int>(initial.size());
  std::vector<Sample> last_plus(N), last_minus(N);
  for (int c = 0; c + 1 < N; ++c) {
    last_plus[c] = {true, 0.0, 1.0};
    last_minus[c] = {true, 0.0, 1.0};
  }

  while (net.levels.back().size() >= 2) {
    const auto& prev = net.levels.back();
    const int n_new = static_cast<int>(prev.size()) - 1;
    std::vector<CharNode> level(n_new);
    std::vector<NodeLinks> links(n_new);
    double t_max = 0.0;
    for (int i = 0; i < n_new; ++i) {
      auto [node, link] = compute_node(prev, i, m.gamma, opts);
      level[i] = node;
      links[i] = link;
      t_max = std::max(t_max, node.t);
    }
    if (t_max > t_end) break;
    net.levels.push_back(std::move(level));
    net.links.push_back(std::move(links));

    const int k = static_cast<int>(net.levels.size()) - 1;
    std::optional<EnvelopeEvent> first;
    auto keep_first = [&](std::optional<EnvelopeEvent> ev) {
      if (ev && (!first || ev->t_star < first->t_star)) first = ev;
    };
    for (int i = 0; i < n_new; ++i) {
      for (Family fam : {Family::kPlus, Family::kMinus}) {
        int chain = fam == Family::kPlus ? i : i + k;
        if (chain + 1 >= N) continue;
        int nb_len = chain_length(net, fam, chain + 1);
        double t, J;
        if (!jacobian_sample(net, fam, chain, k, nb_len, t, J)) continue;
        Sample& last = fam == Family::kPlus ? last_plus[chain]
                                            : last_minus[chain];
        keep_first(crossing(net, fam, chain, last, t, J));
        last = {true, t, J};
      }
    }
    if (first) {
      net.envelope = first;
      if (opts.stop_at_envelope) break;
    }
  }
  return net;
}

double pseudostructure_residual(const CharNet& net, Family family) {
  double worst = 0.0;
  for (std::size_t k = 1; k < net.levels.size(); ++k) {
    const auto& prev = net.levels[k - 1];
    const auto& level = net.levels[k];
    const auto& links = net.links[k];
    for (std::size_t i = 0; i < level.size(); ++i) {
      const CharNode& P = level[i];
      const NodeLinks& ln = links[i];
      switch (family) {
        case Family::kPlus:
          worst = std::max(worst, compat_residual(prev[ln.cplus], P,
                                                  Family::kPlus, net.gamma));
          break;
        case Family::kMinus:
          worst = std::max(worst, compat_residual(prev[ln.cminus], P,
                                                  Family::kMinus, net.gamma));
          break;
        case Family::kZero: {
          if (prev.size() < 4) break;
          LevelCurve curve = stencil(prev, ln.c0, 4, ln.c0_weight);
          double sigma = c0_foot(curve, ln.c0, P.x, P.t, P.u);
          double s_ref = curve.eval(sigma, &CharNode::s);
          worst = std::max(worst, std::abs(P.s - s_ref));
          break;
        }
      }
    }
  }
  return worst;
}

double invariant_spread(const CharNet& net, Family family) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& level : net.levels) {
    for (const CharNode& n : level) {
      RiemannInvariants J = riemann_invariants(n, net.gamma);
      double v = family == Family::kPlus ? J.plus : J.minus;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  return hi - lo;
}

std::vector<JacobianSeries> jacobian_trace(const CharNet& net, Family family) {
  if (family == Family::kZero) {
    throw Error(ErrorCode::kInvalidArgument,
                "jacobian traces are defined for C+ and C-");
  }
  std::vector<JacobianSeries> out;
  if (net.levels.empty()) return out;
  const int N = static_cast<int>(net.levels[0].size());
  if (N < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "need at least 2 characteristics in the family");
  }
  for (int c = 0; c + 1 < N; ++c) {
    JacobianSeries js;
    js.x0 = net.levels[0][c].x;
    int len = chain_length(net, family, c);
    int nb_len = chain_length(net, family, c + 1);
    for (int m = 0; m < len; ++m) {
      double t, J;
      if (jacobian_sample(net, family, c, m, nb_len, t, J)) {
        js.t.push_back(t);
        js.J.push_back(J);
      }
    }
    out.push_back(std::move(js));
  }
  return out;
}

std::optional<EnvelopeEvent> detect_envelope(const CharNet& net) {
  std::optional<EnvelopeEvent> first;
  if (net.levels.empty()) return first;
  const int N = static_cast<int>(net.levels[0].size());
  for (Family fam : {Family::kPlus, Family::kMinus}) {
    for (int c = 0; c + 1 < N; ++c) {
      int len = chain_length(net, fam, c);
      int nb_len = chain_length(net, fam, c + 1);
      Sample last;
      for (int m = 0; m < len; ++m) {
        double t, J;
        if (!jacobian_sample(net, fam, c, m, nb_len, t, J)) continue;
        auto ev = crossing(net, fam, c, last, t, J);
        if (ev) {
          if (!first || ev->t_star < first->t_star) first = ev;
          break;
        }
        last = {true, t, J};
      }
    }
  }
  return first;
}

std::optional<EnvelopeEvent> predict_envelope(
    std::span<const CharNode> initial) {
  const std::size_t n = initial.size();
  if (n < 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "envelope prediction needs at least 3 nodes");
  }
  std::optional<EnvelopeEvent> best;
  for (Family fam : {Family::kPlus, Family::kMinus}) {
    auto lambda = [&](std::size_t i) {
      const Slopes s = char_slopes(initial[i]);
      return fam == Family::kPlus ? s.plus : s.minus;
    };
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t c = std::clamp<std::size_t>(i, 1, n - 2);
      double h1 = initial[c].x - initial[c - 1].x;
      double h2 = initial[c + 1].x - initial[c].x;
      double f0 = lambda(c - 1), f1 = lambda(c), f2 = lambda(c + 1);
      double d;
      if (i == 0) {
        d = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * f0 +
            (h1 + h2) / (h1 * h2) * f1 - h1 / (h2 * (h1 + h2)) * f2;
      } else if (i == n - 1) {
        d = h2 / (h1 * (h1 + h2)) * f0 - (h1 + h2) / (h1 * h2) * f1 +
            (h1 + 2.0 * h2) / (h2 * (h1 + h2)) * f2;
      } else {
        d = -h2 / (h1 * (h1 + h2)) * f0 + (h2 - h1) / (h1 * h2) * f1 +
            h1 / (h2 * (h1 + h2)) * f2;
      }
      if (d < 0.0) {
        double ts = -1.0 / d;
        if (!best || ts < best->t_star) {
          best = EnvelopeEvent{ts, initial[i].x + lambda(i) * ts, fam};
        }
      }
    }
  }
  return best;
}

}  // namespace vortigen::moc

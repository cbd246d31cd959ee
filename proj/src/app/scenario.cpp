#include "scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <set>

#include "errors.hpp"

namespace vortigen::app {

namespace {

Error bad_config(const std::string& what) {
  return Error(ErrorCode::kInvalidArgument, "config: " + what);
}

double number(const io::Json& j, const char* key) {
  if (!j.contains(key)) throw bad_config(std::string("missing '") + key + "'");
  if (!j[key].is_number()) {
    throw bad_config(std::string("'") + key + "' must be a number");
  }
  return j[key].get<double>();
}

std::string text(const io::Json& j, const char* key) {
  if (!j[key].is_string()) {
    throw bad_config(std::string("'") + key + "' must be a string");
  }
  return j[key].get<std::string>();
}

Vec2 pair(const io::Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw bad_config(what + " must be [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

void only_keys(const io::Json& j, const std::set<std::string>& allowed,
               const std::string& where) {
  if (!j.is_object()) throw bad_config(where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw bad_config("unknown key '" + it.key() + "' in " + where);
    }
  }
}

void require_file(const std::optional<fs::path>& p, const char* what) {
  if (p && !fs::is_regular_file(*p)) {
    throw Error(ErrorCode::kIoError,
                std::string(what) + " not found: " + p->string());
  }
}

io::Json lagrange_json(const LagrangeReport& l) {
  return {{"stationary", l.stationary},
          {"potential", l.potential},
          {"simply_connected", l.simply_connected},
          {"predicts_equilibrium", l.predicts_equilibrium}};
}

io::Json nullable(const std::optional<double>& v) {
  return v ? io::Json(*v) : io::Json(nullptr);
}

std::string trajectory_csv(const FormCoefficients& fc, const Commutator& c) {
  std::string out = "xi1,A1,Anu,K";
  for (Term t : kAllTerms) out += "," + std::string(term_name(t));
  out += "\n";
  for (std::size_t i = 0; i < c.xi1.size(); ++i) {
    out += io::format_double(c.xi1[i]) + "," + io::format_double(fc.A1[i]) +
           "," + io::format_double(fc.anu.total[i]) + "," +
           io::format_double(c.K[i]);
    for (const auto& comp : c.attribution) {
      out += "," + io::format_double(comp[i]);
    }
    out += "\n";
  }
  return out;
}

std::string path_csv(const Trajectory& traj, const AccompanyingFrame& fr) {
  std::string out = "xi1,x,y,tx,ty,nx,ny\n";
  for (std::size_t i = 0; i < traj.points.size(); ++i) {
    out += io::format_double(traj.arclength[i]) + "," +
           io::format_double(traj.points[i][0]) + "," +
           io::format_double(traj.points[i][1]) + "," +
           io::format_double(fr.tangent[i][0]) + "," +
           io::format_double(fr.tangent[i][1]) + "," +
           io::format_double(fr.normal[i][0]) + "," +
           io::format_double(fr.normal[i][1]) + "\n";
  }
  return out;
}

ForceModel load_forces(const ScenarioConfig& cfg, const StructuredGrid2D& g) {
  ForceModel f;
  f.kind = cfg.force_kind;
  if (f.kind == ForceModel::Kind::kNone) return f;
  const bool potential = f.kind == ForceModel::Kind::kPotential;
  io::GridTable t = io::load_grid_table(
      *cfg.force_file, potential ? std::vector<std::string>{"phi"}
                                 : std::vector<std::string>{"fx", "fy"});
  if (t.grid.nx != g.nx || t.grid.ny != g.ny ||
      std::abs(t.grid.x0 - g.x0) > 1e-9 * g.hx ||
      std::abs(t.grid.y0 - g.y0) > 1e-9 * g.hy ||
      std::abs(t.grid.hx - g.hx) > 1e-9 * g.hx ||
      std::abs(t.grid.hy - g.hy) > 1e-9 * g.hy) {
    throw Error(ErrorCode::kShapeMismatch,
                "force grid differs from the field grid");
  }
  if (potential) {
    f.phi = std::move(t.columns[0]);
  } else {
    f.fx = std::move(t.columns[0]);
    f.fy = std::move(t.columns[1]);
  }
  f.validate(g);
  return f;
}

void apply_obstacles(FieldSet& f, const std::vector<Box>& boxes) {
  if (boxes.empty()) return;
  const auto& g = f.grid;
  f.active.assign(g.size(), 1);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      for (const Box& b : boxes) {
        if (g.x(i) >= b.x0 && g.x(i) <= b.x1 && g.y(j) >= b.y0 &&
            g.y(j) <= b.y1) {
          f.active[g.index(i, j)] = 0;
        }
      }
    }
  }
}

void run_fields(const ScenarioConfig& cfg, const fs::path& out, RunReport& r) {
  FieldSet f = io::load_fields(*cfg.fields, cfg.manifest);
  apply_obstacles(f, cfg.obstacles);
  const GasModel& m = cfg.gas;
  const auto& g = f.grid;
  ForceModel forces = load_forces(cfg, g);

  std::optional<ViscousA1> a1_grid;
  if (cfg.transport && (cfg.transport->mu > 0.0 || cfg.transport->k > 0.0)) {
    a1_grid = viscous_A1(f, *cfg.transport, m, cfg.a1_variant);
  }

  StreamlineOptions so;
  so.step = cfg.step;
  so.max_len = cfg.max_len > 0.0
                   ? cfg.max_len
                   : 2.0 * std::hypot(g.x1() - g.x0, g.y1() - g.y0);
  std::vector<Vec2> seeds = cfg.seeds;
  if (seeds.empty()) {
    seeds.push_back({0.5 * (g.x0 + g.x1()), 0.5 * (g.y0 + g.y1())});
  }

  std::vector<Commutator> cs;
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    Trajectory traj = trace_streamline(f, seeds[k], so);
    AccompanyingFrame frame = frame_along(traj);
    NormalCoefficient anu =
        crocco_normal_coefficient(f, traj, frame, forces, m, cfg.crocco_sign,
                                  cfg.include_nonstationary);
    FormCoefficients fc =
        assemble_form(std::move(anu), traj, f, a1_grid, cfg.crocco_sign);
    Commutator c = commutator(fc, traj, frame, f);
    io::write_atomic(out / ("trajectory_" + std::to_string(k) + ".csv"),
                     trajectory_csv(fc, c));
    io::write_atomic(out / ("path_" + std::to_string(k) + ".csv"),
                     path_csv(traj, frame));
    cs.push_back(std::move(c));
  }

  const double tol = cfg.equilibrium_tol
                         ? *cfg.equilibrium_tol
                         : default_equilibrium_tolerance(f, m);
  EquilibriumVerdict v = equilibrium_classifier(cs, tol);
  r.trajectories = cs.size();
  r.max_K = v.intensity;
  r.tolerance = tol;
  r.classification = classify(v.intensity, tol);
  r.dominant = v.locally_equilibrium ? std::nullopt : v.dominant;
  r.weights = v.weights;
  r.lagrange = lagrange_criterion(f, forces, f.has_time_series());

  RegimeCounts rc;
  for (std::size_t n = 0; n < g.size(); ++n) {
    if (!f.is_active(n)) continue;
    PrimitiveState q{f.rho[n], {f.u[n], f.v[n]}, f.p[n]};
    switch (classify_regime(q, m)) {
      case Regime::kHyperbolic: ++rc.hyperbolic; break;
      case Regime::kElliptic: ++rc.elliptic; break;
      case Regime::kSonic: ++rc.sonic; break;
    }
  }
  r.regimes = rc;

  for (const JumpProbe& probe : cfg.jump_probes) {
    jumps::WeakDiscontinuity wd =
        jumps::measure_contact(f, m, probe.normal, probe.point);
    r.jump_checks.push_back(
        jumps::contact_jump_check(wd, *wd.state, m, cfg.jump_rel_error));
  }
}

PseudostructureSummary summarize(const moc::CharNet& net, double tol) {
  PseudostructureSummary s;
  s.c0 = moc::pseudostructure_residual(net, moc::Family::kZero);
  s.cplus = moc::pseudostructure_residual(net, moc::Family::kPlus);
  s.cminus = moc::pseudostructure_residual(net, moc::Family::kMinus);
  s.spread_plus = moc::invariant_spread(net, moc::Family::kPlus);
  s.spread_minus = moc::invariant_spread(net, moc::Family::kMinus);
  s.tolerance = tol;
  s.identical_relation_holds = std::max({s.c0, s.cplus, s.cminus}) <= tol;
  return s;
}

io::Json pseudostructure_json(const PseudostructureSummary& s) {
  return {{"c0_residual", s.c0},
          {"cplus_residual", s.cplus},
          {"cminus_residual", s.cminus},
          {"jplus_spread", s.spread_plus},
          {"jminus_spread", s.spread_minus},
          {"tolerance", s.tolerance},
          {"identical_relation_holds", s.identical_relation_holds}};
}

void run_net(const ScenarioConfig& cfg, const fs::path& out, RunReport& r) {
  auto nodes = io::load_initial_data(*cfg.initial_data, cfg.gas.gamma);
  moc::AdvanceOptions opts;
  opts.tolerance = cfg.corrector;
  moc::CharNet net = moc::advance_net(nodes, cfg.t_end, cfg.gas, opts);
  io::write_atomic(out / "net.csv", io::net_csv(net));
  r.net_nodes = net.node_count();
  r.envelope = net.envelope;
  r.predicted_envelope = moc::predict_envelope(nodes);
  r.pseudostructure = summarize(net, cfg.pseudostructure_tol);
}

io::Json envelope_file(const std::optional<moc::EnvelopeEvent>& detected,
                       const std::optional<moc::EnvelopeEvent>& predicted,
                       double t_end) {
  io::Json j;
  j["t_end"] = t_end;
  j["detected"] = detected ? to_json(*detected) : io::Json(nullptr);
  j["predicted"] = predicted ? to_json(*predicted) : io::Json(nullptr);
  return j;
}

fs::path prepare_dir(const fs::path& requested) {
  fs::path out = resolve_output_dir(requested);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) {
    throw Error(ErrorCode::kIoError, "cannot create " + out.string());
  }
  return out;
}

void flatten(const io::Json& j, const std::string& prefix, std::string& out) {
  if (j.is_object() && !j.empty()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(),
              out);
    }
  } else if (j.is_array() && !j.empty()) {
    for (std::size_t k = 0; k < j.size(); ++k) {
      flatten(j[k], prefix + "[" + std::to_string(k) + "]", out);
    }
  } else {
    std::string v;
    if (j.is_number_float()) {
      v = io::format_double(j.get<double>());
    } else if (j.is_string()) {
      v = j.get<std::string>();
    } else {
      v = j.dump();
    }
    out += prefix + ": " + v + "\n";
  }
}

}  // namespace

void ScenarioConfig::validate() const {
  gas.validate();
  if (!fields && !initial_data) {
    throw bad_config("needs 'fields' or 'initial_data'");
  }
  if (manifest && !fields) throw bad_config("'manifest' needs 'fields'");
  require_file(fields, "fields");
  require_file(manifest, "manifest");
  require_file(initial_data, "initial data");
  if (force_kind != ForceModel::Kind::kNone) {
    if (!force_file) throw bad_config("forces need a 'file'");
    require_file(force_file, "force file");
  }
  if (equilibrium_tol && !(*equilibrium_tol > 0.0)) {
    throw bad_config("tolerances.equilibrium must be > 0");
  }
  if (!(jump_rel_error > 0.0) || !(corrector > 0.0) ||
      !(pseudostructure_tol > 0.0)) {
    throw bad_config("tolerances must be > 0");
  }
  if (transport && (transport->mu < 0.0 || transport->k < 0.0)) {
    throw bad_config("transport coefficients must be >= 0");
  }
  if (initial_data && !(t_end > 0.0)) {
    throw bad_config("'t_end' must be > 0 with initial data");
  }
  for (const Box& b : obstacles) {
    if (!(b.x1 > b.x0) || !(b.y1 > b.y0)) {
      throw bad_config("obstacle boxes need x1 > x0 and y1 > y0");
    }
  }
}

ScenarioConfig parse_config(const io::Json& j, const fs::path& base_dir) {
  only_keys(j,
            {"id", "gas", "forces", "transport", "crocco_sign", "a1_variant",
             "include_nonstationary", "tolerances", "seeds", "step", "max_len",
             "obstacles", "jump_probes", "fields", "manifest", "initial_data",
             "t_end", "output_dir"},
            "config");
  ScenarioConfig c;
  auto path = [&](const char* key) {
    return base_dir / fs::path(text(j, key));
  };
  if (j.contains("id")) c.id = text(j, "id");
  if (j.contains("gas")) {
    const auto& g = j["gas"];
    only_keys(g, {"gamma", "R", "entropy_convention", "s_ref"}, "gas");
    if (g.contains("gamma")) c.gas.gamma = number(g, "gamma");
    if (g.contains("R")) c.gas.R = number(g, "R");
    if (g.contains("s_ref")) c.gas.s_ref = number(g, "s_ref");
    if (g.contains("entropy_convention")) {
      std::string conv = text(g, "entropy_convention");
      if (conv == "entropy_function") {
        c.gas.convention = EntropyConvention::kEntropyFunction;
      } else if (conv == "specific") {
        c.gas.convention = EntropyConvention::kSpecific;
      } else {
        throw bad_config("entropy_convention must be entropy_function|specific");
      }
    }
  }
  if (j.contains("forces")) {
    const auto& f = j["forces"];
    only_keys(f, {"kind", "file"}, "forces");
    std::string kind = f.contains("kind") ? text(f, "kind") : "none";
    if (kind == "none") {
      c.force_kind = ForceModel::Kind::kNone;
    } else if (kind == "potential") {
      c.force_kind = ForceModel::Kind::kPotential;
    } else if (kind == "tabulated") {
      c.force_kind = ForceModel::Kind::kTabulated;
    } else {
      throw bad_config("forces.kind must be none|potential|tabulated");
    }
    if (f.contains("file")) c.force_file = base_dir / fs::path(text(f, "file"));
  }
  if (j.contains("transport") && !j["transport"].is_null()) {
    const auto& t = j["transport"];
    only_keys(t, {"mu", "k"}, "transport");
    TransportModel tm;
    if (t.contains("mu")) tm.mu = number(t, "mu");
    if (t.contains("k")) tm.k = number(t, "k");
    c.transport = tm;
  }
  if (j.contains("crocco_sign")) {
    std::string s = text(j, "crocco_sign");
    if (s == "consistent") {
      c.crocco_sign = CroccoSign::kConsistent;
    } else if (s == "paper") {
      c.crocco_sign = CroccoSign::kPaperLiteral;
    } else {
      throw bad_config("crocco_sign must be consistent|paper");
    }
  }
  if (j.contains("a1_variant")) {
    std::string s = text(j, "a1_variant");
    if (s == "paper") {
      c.a1_variant = A1Variant::kPaperLiteral;
    } else if (s == "standard") {
      c.a1_variant = A1Variant::kStandardProduction;
    } else {
      throw bad_config("a1_variant must be paper|standard");
    }
  }
  if (j.contains("include_nonstationary")) {
    if (!j["include_nonstationary"].is_boolean()) {
      throw bad_config("include_nonstationary must be true|false");
    }
    c.include_nonstationary = j["include_nonstationary"].get<bool>();
  }
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    only_keys(t, {"equilibrium", "jump_rel_error", "corrector", "pseudostructure"},
              "tolerances");
    if (t.contains("equilibrium")) c.equilibrium_tol = number(t, "equilibrium");
    if (t.contains("jump_rel_error")) c.jump_rel_error = number(t, "jump_rel_error");
    if (t.contains("corrector")) c.corrector = number(t, "corrector");
    if (t.contains("pseudostructure")) {
      c.pseudostructure_tol = number(t, "pseudostructure");
    }
  }
  if (j.contains("seeds")) {
    if (!j["seeds"].is_array()) throw bad_config("seeds must be a list");
    for (const auto& s : j["seeds"]) c.seeds.push_back(pair(s, "seed"));
  }
  if (j.contains("step")) c.step = number(j, "step");
  if (j.contains("max_len")) c.max_len = number(j, "max_len");
  if (j.contains("obstacles")) {
    if (!j["obstacles"].is_array()) throw bad_config("obstacles must be a list");
    for (const auto& b : j["obstacles"]) {
      if (!b.is_array() || b.size() != 4) {
        throw bad_config("obstacle must be [x0, y0, x1, y1]");
      }
      Box box;
      for (const auto& v : b) {
        if (!v.is_number()) throw bad_config("obstacle must be numeric");
      }
      box.x0 = b[0].get<double>();
      box.y0 = b[1].get<double>();
      box.x1 = b[2].get<double>();
      box.y1 = b[3].get<double>();
      c.obstacles.push_back(box);
    }
  }
  if (j.contains("jump_probes")) {
    if (!j["jump_probes"].is_array()) {
      throw bad_config("jump_probes must be a list");
    }
    for (const auto& p : j["jump_probes"]) {
      only_keys(p, {"point", "normal"}, "jump probe");
      if (!p.contains("point") || !p.contains("normal")) {
        throw bad_config("jump probe needs point and normal");
      }
      c.jump_probes.push_back({pair(p["point"], "probe point"),
                               pair(p["normal"], "probe normal")});
    }
  }
  if (j.contains("fields")) c.fields = path("fields");
  if (j.contains("manifest")) c.manifest = path("manifest");
  if (j.contains("initial_data")) c.initial_data = path("initial_data");
  if (j.contains("t_end")) c.t_end = number(j, "t_end");
  if (j.contains("output_dir")) c.output_dir = path("output_dir");
  return c;
}

ScenarioConfig load_config(const fs::path& path) {
  io::Json j;
  try {
    j = io::Json::parse(io::read_text(path));
  } catch (const io::Json::parse_error& e) {
    throw Error(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
  return parse_config(j, path.parent_path());
}

fs::path resolve_output_dir(const fs::path& requested) {
  const char* env = std::getenv("VORTIGEN_OUT");
  if (env && *env) return fs::path(env);
  return requested;
}

std::string classify(double max_K, double tol) {
  return max_K <= tol ? "LocallyEquilibrium" : "Nonequilibrium";
}

io::Json to_json(const moc::EnvelopeEvent& e) {
  return {{"t_star", e.t_star},
          {"x_star", e.x_star},
          {"family", std::string(moc::family_name(e.family))}};
}

io::Json to_json(const jumps::JumpCheckReport& r) {
  return {{"relation", std::string(jumps::relation_name(r.relation))},
          {"lhs", r.lhs},
          {"rhs", r.rhs},
          {"rel_error", r.rel_error},
          {"side_value", r.side_value},
          {"side_conditions_ok", r.side_conditions_ok},
          {"passed", r.passed},
          {"grid_h", r.grid_h}};
}

io::Json to_json(const RunReport& r) {
  io::Json j;
  j["id"] = r.id;
  j["classification"] = r.classification;
  j["max_K"] = nullable(r.max_K);
  j["tolerance"] = nullable(r.tolerance);
  j["dominant"] = r.dominant ? io::Json(std::string(term_name(*r.dominant)))
                             : io::Json(nullptr);
  if (r.max_K) {
    io::Json w = io::Json::object();
    for (Term t : kAllTerms) {
      w[std::string(term_name(t))] = r.weights[static_cast<std::size_t>(t)];
    }
    j["attribution_weights"] = w;
  } else {
    j["attribution_weights"] = nullptr;
  }
  j["lagrange"] = r.lagrange ? lagrange_json(*r.lagrange) : io::Json(nullptr);
  if (r.regimes) {
    j["regimes"] = {{"hyperbolic", r.regimes->hyperbolic},
                    {"elliptic", r.regimes->elliptic},
                    {"sonic", r.regimes->sonic}};
  } else {
    j["regimes"] = nullptr;
  }
  j["trajectories"] = r.trajectories;
  j["net_nodes"] = r.net_nodes;
  j["envelope"] = r.envelope ? to_json(*r.envelope) : io::Json(nullptr);
  j["predicted_envelope"] =
      r.predicted_envelope ? to_json(*r.predicted_envelope) : io::Json(nullptr);
  j["pseudostructure"] = r.pseudostructure
                             ? pseudostructure_json(*r.pseudostructure)
                             : io::Json(nullptr);
  // The identical relation on the pseudostructure against the unclosed form
  // elsewhere.
  io::Json tr;
  tr["identical_on_pseudostructure"] =
      r.pseudostructure ? io::Json(r.pseudostructure->identical_relation_holds)
                        : io::Json(nullptr);
  tr["nonidentical_off_pseudostructure"] =
      r.max_K ? io::Json(r.classification == "Nonequilibrium")
              : io::Json(nullptr);
  j["transition"] = tr;
  io::Json checks = io::Json::array();
  for (const auto& c : r.jump_checks) checks.push_back(to_json(c));
  j["jump_checks"] = checks;
  return j;
}

RunReport run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  fs::path out = prepare_dir(cfg.output_dir);
  RunReport r;
  r.id = cfg.id;
  if (cfg.fields) run_fields(cfg, out, r);
  if (cfg.initial_data) run_net(cfg, out, r);
  r.wall_time = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  io::write_atomic(out / "report.json", io::dump_json(to_json(r)));
  io::write_atomic(out / "timing.json",
                   io::dump_json(io::Json{{"wall_time", r.wall_time}}));
  return r;
}

void solve_moc(const fs::path& init, double gamma, double t_end,
               const fs::path& out_dir) {
  if (!(t_end > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "t_end must be > 0");
  }
  GasModel m;
  m.gamma = gamma;
  m.validate();
  auto nodes = io::load_initial_data(init, gamma);
  moc::AdvanceOptions opts;
  opts.stop_at_envelope = false;
  moc::CharNet net = moc::advance_net(nodes, t_end, m, opts);
  fs::path out = prepare_dir(out_dir);
  io::write_atomic(out / "net.csv", io::net_csv(net));
  io::write_atomic(
      out / "envelope.json",
      io::dump_json(envelope_file(moc::detect_envelope(net),
                                  moc::predict_envelope(nodes), t_end)));
  io::write_atomic(out / "residuals.json",
                   io::dump_json(pseudostructure_json(summarize(net, 1e-6))));
}

void detect_shock(const fs::path& init, double gamma,
                  std::optional<double> t_end, const fs::path& out_dir) {
  GasModel m;
  m.gamma = gamma;
  m.validate();
  auto nodes = io::load_initial_data(init, gamma);
  auto predicted = moc::predict_envelope(nodes);
  double horizon;
  if (t_end) {
    if (!(*t_end > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "t_end must be > 0");
    }
    horizon = *t_end;
  } else if (predicted) {
    horizon = 1.5 * predicted->t_star;
  } else {
    // No compression anywhere: follow the data for ten crossing times.
    double speed = 0.0;
    for (const auto& n : nodes) speed = std::max(speed, std::abs(n.u) + n.a);
    horizon = nodes.size() >= 2
                  ? 10.0 * (nodes.back().x - nodes.front().x) / speed
                  : 1.0;
  }
  moc::CharNet net = moc::advance_net(nodes, horizon, m);
  fs::path out = prepare_dir(out_dir);
  io::write_atomic(out / "envelope.json",
                   io::dump_json(envelope_file(net.envelope, predicted, horizon)));
}

std::vector<jumps::JumpCheckReport> verify_jumps(jumps::Relation relation,
                                                 double gamma, int refine,
                                                 const fs::path& out_dir) {
  if (refine < 1 || refine > 6) {
    throw Error(ErrorCode::kInvalidArgument, "refine must be in 1..6");
  }
  GasModel m;
  m.gamma = gamma;
  m.validate();
  std::vector<jumps::JumpCheckReport> reports;
  const double h0 = 1.0 / 200.0;
  for (int level = 0; level < refine; ++level) {
    const double h = h0 / std::pow(2.0, level);
    if (relation == jumps::Relation::kContactEq) {
      // Horizontal stream over [0,1]^2 whose entropy gradient switches on
      // above y = 1/2.
      const int n = static_cast<int>(std::lround(1.0 / h)) + 1;
      StructuredGrid2D g{n, n, 0.0, 0.0, h, h};
      PrimitiveState base{1.0, {1.0, 0.0}, 1.0};
      FieldSet f = jumps::synthesize_contact_field(base, 1.0, g, m, 0.5);
      auto wd = jumps::measure_contact(f, m, {0.0, 1.0}, {0.5, 0.5});
      reports.push_back(jumps::contact_jump_check(wd, *wd.state, m));
    } else {
      // Centred C+ fan into gas at rest with a = 1, head checked at t = 1.
      const double head = 1.0;
      const int nx = static_cast<int>(std::lround(1.0 / h)) + 1;
      const int nt = nx;
      StructuredGrid2D g{nx, nt, head - 0.5, 0.5, h, h};
      auto fan = jumps::synthesize_centered_expansion(
          jumps::SurfaceKind::kCharacteristicPlus, 0.0, 1.0, 1.0 / gamma,
          -0.3, g, m);
      auto wd = jumps::measure_head(fan, m, 1.0);
      reports.push_back(jumps::char_jump_check(wd, m));
    }
  }
  fs::path out = prepare_dir(out_dir);
  io::Json list = io::Json::array();
  for (const auto& r : reports) {
    io::Json j = to_json(r);
    j["gamma"] = gamma;
    list.push_back(j);
  }
  io::write_atomic(out / "jumps.json", io::dump_json(list));
  return reports;
}

RunReport diagnose(const fs::path& fields,
                   const std::optional<fs::path>& manifest,
                   const fs::path& config, const std::optional<fs::path>& out) {
  ScenarioConfig cfg = load_config(config);
  cfg.fields = fields;
  if (manifest) cfg.manifest = *manifest;
  if (out) cfg.output_dir = *out;
  // Field diagnostics only; a 1-D block in the config is ignored here.
  cfg.initial_data.reset();
  return run_scenario(cfg);
}

std::string format_report(const fs::path& run_dir) {
  fs::path file = run_dir / "report.json";
  io::Json j;
  try {
    j = io::Json::parse(io::read_text(file));
  } catch (const io::Json::parse_error& e) {
    throw Error(ErrorCode::kParseError, file.string() + ": " + e.what());
  }
  std::string out;
  flatten(j, "", out);
  fs::path timing = run_dir / "timing.json";
  if (fs::is_regular_file(timing)) {
    try {
      flatten(io::Json::parse(io::read_text(timing)), "", out);
    } catch (const io::Json::parse_error&) {
    }
  }
  return out;
}

}  // namespace vortigen::app

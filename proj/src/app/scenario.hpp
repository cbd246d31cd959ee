#ifndef VORTIGEN_SCENARIO_HPP_
#define VORTIGEN_SCENARIO_HPP_

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "evoform.hpp"
#include "io.hpp"
#include "jumps.hpp"
#include "moc.hpp"
#include "thermo.hpp"

namespace vortigen::app {

namespace fs = std::filesystem;

// Axis-aligned solid region; grid nodes inside it are masked out.
struct Box {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
};

// A surface to run the contact relation across.
struct JumpProbe {
  Vec2 point{0.0, 0.0};
  Vec2 normal{0.0, 1.0};
};

struct ScenarioConfig {
  std::string id = "scenario";
  GasModel gas;
  ForceModel::Kind force_kind = ForceModel::Kind::kNone;
  std::optional<fs::path> force_file;
  std::optional<TransportModel> transport;
  CroccoSign crocco_sign = CroccoSign::kConsistent;
  A1Variant a1_variant = A1Variant::kPaperLiteral;
  bool include_nonstationary = false;

  std::optional<double> equilibrium_tol;  // default: 10x truncation estimate
  double jump_rel_error = 1e-2;
  double corrector = 1e-12;
  double pseudostructure_tol = 1e-6;

  std::vector<Vec2> seeds;  // empty: domain centre
  double step = 0.0;
  double max_len = 0.0;     // <= 0: twice the domain diagonal
  std::vector<Box> obstacles;
  std::vector<JumpProbe> jump_probes;

  std::optional<fs::path> fields;
  std::optional<fs::path> manifest;
  std::optional<fs::path> initial_data;
  double t_end = 0.0;
  fs::path output_dir = "out";

  void validate() const;
};

// Relative paths are resolved against base_dir.
ScenarioConfig parse_config(const io::Json& j, const fs::path& base_dir);
ScenarioConfig load_config(const fs::path& path);

// VORTIGEN_OUT, when set, wins over the requested directory.
fs::path resolve_output_dir(const fs::path& requested);

struct RegimeCounts {
  std::size_t hyperbolic = 0, elliptic = 0, sonic = 0;
};

struct PseudostructureSummary {
  double c0 = 0.0;
  double cplus = 0.0;
  double cminus = 0.0;
  double spread_plus = 0.0;
  double spread_minus = 0.0;
  double tolerance = 0.0;
  bool identical_relation_holds = false;
};

struct RunReport {
  std::string id;
  std::optional<LagrangeReport> lagrange;
  std::optional<double> max_K;
  std::optional<double> tolerance;
  std::string classification = "NotEvaluated";
  std::optional<Term> dominant;
  std::array<double, kTermCount> weights{};
  std::optional<RegimeCounts> regimes;
  std::size_t trajectories = 0;
  std::size_t net_nodes = 0;
  std::optional<moc::EnvelopeEvent> envelope;
  std::optional<moc::EnvelopeEvent> predicted_envelope;
  std::optional<PseudostructureSummary> pseudostructure;
  std::vector<jumps::JumpCheckReport> jump_checks;
  double wall_time = 0.0;  // seconds; kept out of report.json
};

// "LocallyEquilibrium" when max_K <= tol, else "Nonequilibrium".
std::string classify(double max_K, double tol);

io::Json to_json(const RunReport& r);

// Runs the pipeline and writes report.json, timing.json and the CSVs into
// the resolved output directory.
RunReport run_scenario(const ScenarioConfig& cfg);

io::Json to_json(const jumps::JumpCheckReport& r);
io::Json to_json(const moc::EnvelopeEvent& e);

// Subcommand drivers. Each writes into resolve_output_dir(out).
void solve_moc(const fs::path& init, double gamma, double t_end,
               const fs::path& out);
void detect_shock(const fs::path& init, double gamma,
                  std::optional<double> t_end, const fs::path& out);
std::vector<jumps::JumpCheckReport> verify_jumps(jumps::Relation relation,
                                                 double gamma, int refine,
                                                 const fs::path& out);
RunReport diagnose(const fs::path& fields,
                   const std::optional<fs::path>& manifest,
                   const fs::path& config, const std::optional<fs::path>& out);
// Human-readable rendering of run_dir/report.json.
std::string format_report(const fs::path& run_dir);

}  // namespace vortigen::app

#endif  // VORTIGEN_SCENARIO_HPP_

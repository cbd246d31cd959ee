// Command-line front end over the vortigen C API.
#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "vortigen/vortigen.h"

namespace {

int report_failure(vortigen_status s) {
  std::fprintf(stderr, "error: %s\n", vortigen_last_error());
  return vortigen_exit_code(s);
}

const char* opt(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

int print_report(vortigen_report* r) {
  std::printf("classification: %s\n", vortigen_report_classification(r));
  vortigen_report_free(r);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vortigen: evolutionary-form diagnostics for compressible gas"};
  app.require_subcommand(1);

  std::string init, out = "out", fields, manifest, config, relation, run_dir;
  double gamma = 1.4, t_end = 0.0;
  int refine = 3;
  std::vector<std::string> configs;
  int jobs = 1;

  auto* solve = app.add_subcommand("solve-moc", "Advance a characteristics net");
  solve->add_option("--init", init, "CSV with columns x,rho,u,p")->required();
  solve->add_option("--gamma", gamma, "Ratio of specific heats");
  solve->add_option("--t-end", t_end, "Final time")->required();
  solve->add_option("--out", out, "Output directory");

  auto* diag = app.add_subcommand("diagnose", "Commutator diagnostics of a field");
  diag->add_option("--fields", fields, "CSV with columns x,y,rho,u,v,p")
      ->required();
  diag->add_option("--manifest", manifest, "Snapshot manifest JSON");
  diag->add_option("--config", config, "Scenario config JSON")->required();
  diag->add_option("--out", out, "Output directory");

  auto* jumps = app.add_subcommand("verify-jumps",
                                   "Check derivative-jump relations on synthetic fields");
  jumps->add_option("--relation", relation, "contact or char")
      ->required()
      ->check(CLI::IsMember({"contact", "char"}));
  jumps->add_option("--gamma", gamma, "Ratio of specific heats");
  jumps->add_option("--refine", refine, "Number of grid levels")
      ->check(CLI::Range(1, 6));
  jumps->add_option("--out", out, "Output directory");

  auto* shock = app.add_subcommand("detect-shock", "Find the first envelope");
  shock->add_option("--init", init, "CSV with columns x,rho,u,p")->required();
  shock->add_option("--gamma", gamma, "Ratio of specific heats");
  shock->add_option("--t-end", t_end, "Horizon (default from the prediction)");
  shock->add_option("--out", out, "Output directory");

  auto* report = app.add_subcommand("report", "Print a run report");
  report->add_option("--run", run_dir, "Run directory")->required();

  auto* run = app.add_subcommand("run", "Run scenario configs");
  run->add_option("--config", configs, "Scenario config JSON")
      ->required()
      ->expected(1, -1);
  run->add_option("--jobs", jobs, "Scenarios run in parallel")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    const CLI::App* shown = &app;
    for (const auto* sub : app.get_subcommands()) shown = sub;
    std::cerr << shown->help();
    return 2;
  }

  vortigen_status s = VORTIGEN_OK;
  if (*solve) {
    s = vortigen_solve_moc(init.c_str(), gamma, t_end, out.c_str());
  } else if (*diag) {
    vortigen_report* r = nullptr;
    s = vortigen_diagnose(fields.c_str(), opt(manifest), config.c_str(),
                          out.c_str(), &r);
    if (s == VORTIGEN_OK) return print_report(r);
  } else if (*jumps) {
    std::vector<vortigen_jump_report> rs(refine);
    int rel = relation == "contact" ? VORTIGEN_RELATION_CONTACT
                                    : VORTIGEN_RELATION_CHAR;
    s = vortigen_verify_jumps(rel, gamma, refine, out.c_str(), rs.data());
    if (s == VORTIGEN_OK) {
      std::printf("grid_h,lhs,rhs,rel_error,passed\n");
      for (const auto& r : rs) {
        std::printf("%.6g,%.10g,%.10g,%.3e,%s\n", r.grid_h, r.lhs, r.rhs,
                    r.rel_error, r.passed ? "yes" : "no");
      }
    }
  } else if (*shock) {
    s = vortigen_detect_shock(init.c_str(), gamma, t_end, out.c_str());
  } else if (*report) {
    char* text = nullptr;
    s = vortigen_format_report(run_dir.c_str(), &text);
    if (s == VORTIGEN_OK) {
      std::fputs(text, stdout);
      vortigen_string_free(text);
    }
  } else if (*run) {
    std::vector<int> codes(configs.size(), 0);
    std::vector<std::string> messages(configs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t k = next++; k < configs.size(); k = next++) {
        vortigen_report* r = nullptr;
        vortigen_status st = vortigen_run_scenario(configs[k].c_str(), nullptr, &r);
        if (st == VORTIGEN_OK) {
          messages[k] = configs[k] + ": " + vortigen_report_classification(r);
          vortigen_report_free(r);
        } else {
          messages[k] = configs[k] + ": error: " + vortigen_last_error();
          codes[k] = vortigen_exit_code(st);
        }
      }
    };
    std::vector<std::thread> pool;
    int n = std::min<int>(jobs, static_cast<int>(configs.size()));
    for (int k = 1; k < n; ++k) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    int code = 0;
    for (std::size_t k = 0; k < configs.size(); ++k) {
      std::fprintf(codes[k] ? stderr : stdout, "%s\n", messages[k].c_str());
      code = std::max(code, codes[k]);
    }
    return code;
  }
  return s == VORTIGEN_OK ? 0 : report_failure(s);
}

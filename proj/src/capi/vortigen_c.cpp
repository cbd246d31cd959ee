#include "vortigen/vortigen.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "errors.hpp"
#include "evoform.hpp"
#include "io.hpp"
#include "jumps.hpp"
#include "moc.hpp"
#include "scenario.hpp"

struct vortigen_fields {
  vortigen::FieldSet fs;
};

struct vortigen_net {
  vortigen::moc::CharNet net;
};

struct vortigen_report {
  vortigen::app::RunReport report;
  std::string json;
};

namespace {

thread_local std::string g_last_error;

vortigen_status fail(vortigen_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Runs body and maps any exception onto a status code.
template <typename F>
vortigen_status guarded(F&& body) {
  try {
    body();
    return VORTIGEN_OK;
  } catch (const vortigen::Error& e) {
    return fail(static_cast<vortigen_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(VORTIGEN_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(VORTIGEN_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(VORTIGEN_INTERNAL_ERROR, "unknown failure");
  }
}

vortigen::GasModel to_model(const vortigen_gas* g) {
  if (!g) {
    throw vortigen::Error(vortigen::ErrorCode::kInvalidArgument,
                          "gas model is NULL");
  }
  vortigen::GasModel m;
  m.gamma = g->gamma;
  m.R = g->R;
  if (g->convention == VORTIGEN_ENTROPY_FUNCTION) {
    m.convention = vortigen::EntropyConvention::kEntropyFunction;
  } else if (g->convention == VORTIGEN_ENTROPY_SPECIFIC) {
    m.convention = vortigen::EntropyConvention::kSpecific;
  } else {
    throw vortigen::Error(vortigen::ErrorCode::kInvalidArgument,
                          "unknown entropy convention");
  }
  m.s_ref = g->s_ref;
  m.validate();
  return m;
}

void need(const void* p, const char* what) {
  if (!p) {
    throw vortigen::Error(vortigen::ErrorCode::kInvalidArgument,
                          std::string(what) + " is NULL");
  }
}

vortigen_jump_report to_c(const vortigen::jumps::JumpCheckReport& r) {
  vortigen_jump_report c;
  c.relation = r.relation == vortigen::jumps::Relation::kContactEq
                   ? VORTIGEN_RELATION_CONTACT
                   : VORTIGEN_RELATION_CHAR;
  c.lhs = r.lhs;
  c.rhs = r.rhs;
  c.rel_error = r.rel_error;
  c.side_value = r.side_value;
  c.side_conditions_ok = r.side_conditions_ok ? 1 : 0;
  c.passed = r.passed ? 1 : 0;
  c.grid_h = r.grid_h;
  return c;
}

vortigen::moc::Family to_family(int f) {
  switch (f) {
    case VORTIGEN_FAMILY_PLUS: return vortigen::moc::Family::kPlus;
    case VORTIGEN_FAMILY_MINUS: return vortigen::moc::Family::kMinus;
    case VORTIGEN_FAMILY_ZERO: return vortigen::moc::Family::kZero;
  }
  throw vortigen::Error(vortigen::ErrorCode::kInvalidArgument,
                        "unknown characteristic family");
}

int from_family(vortigen::moc::Family f) {
  switch (f) {
    case vortigen::moc::Family::kPlus: return VORTIGEN_FAMILY_PLUS;
    case vortigen::moc::Family::kMinus: return VORTIGEN_FAMILY_MINUS;
    case vortigen::moc::Family::kZero: return VORTIGEN_FAMILY_ZERO;
  }
  return VORTIGEN_FAMILY_PLUS;
}

vortigen_report* make_report(vortigen::app::RunReport r) {
  auto* out = new vortigen_report{std::move(r), {}};
  out->json = vortigen::io::dump_json(vortigen::app::to_json(out->report));
  return out;
}

}  // namespace

extern "C" {

const char* vortigen_version(void) { return "0.1.0"; }

const char* vortigen_last_error(void) { return g_last_error.c_str(); }

const char* vortigen_status_name(vortigen_status status) {
  if (status == VORTIGEN_OK) return "Ok";
  if (status == VORTIGEN_INTERNAL_ERROR) return "InternalError";
  if (status >= VORTIGEN_INVALID_ARGUMENT && status <= VORTIGEN_IO_ERROR) {
    return vortigen::error_name(static_cast<vortigen::ErrorCode>(status));
  }
  return "Unknown";
}

int vortigen_exit_code(vortigen_status status) {
  if (status == VORTIGEN_OK) return 0;
  if (status == VORTIGEN_INTERNAL_ERROR) return 3;
  if (status >= VORTIGEN_INVALID_ARGUMENT && status <= VORTIGEN_IO_ERROR) {
    return vortigen::exit_class(static_cast<vortigen::ErrorCode>(status));
  }
  return 2;
}

vortigen_gas vortigen_gas_default(void) {
  return vortigen_gas{1.4, 287.0, VORTIGEN_ENTROPY_FUNCTION, 0.0};
}

vortigen_status vortigen_derive_state(const vortigen_gas* gas, double rho,
                                      double u, double v, double p,
                                      vortigen_derived* out) {
  return guarded([&] {
    need(out, "out");
    auto d = vortigen::derive_state({rho, {u, v}, p}, to_model(gas));
    *out = vortigen_derived{d.T, d.a, d.s, d.e, d.h, d.h0};
  });
}

vortigen_status vortigen_fields_create(int nx, int ny, double x0, double y0,
                                       double hx, double hy, const double* rho,
                                       const double* u, const double* v,
                                       const double* p, vortigen_fields** out) {
  return guarded([&] {
    need(out, "out");
    need(rho, "rho");
    need(u, "u");
    need(v, "v");
    need(p, "p");
    *out = nullptr;
    vortigen::StructuredGrid2D g{nx, ny, x0, y0, hx, hy};
    g.validate();
    const std::size_t n = g.size();
    auto f = std::make_unique<vortigen_fields>();
    f->fs.grid = g;
    f->fs.rho.assign(rho, rho + n);
    f->fs.u.assign(u, u + n);
    f->fs.v.assign(v, v + n);
    f->fs.p.assign(p, p + n);
    f->fs.validate();
    *out = f.release();
  });
}

vortigen_status vortigen_fields_load(const char* csv_path,
                                     const char* manifest_path,
                                     vortigen_fields** out) {
  return guarded([&] {
    need(out, "out");
    need(csv_path, "csv_path");
    *out = nullptr;
    std::optional<std::filesystem::path> manifest;
    if (manifest_path) manifest = manifest_path;
    auto f = std::make_unique<vortigen_fields>();
    f->fs = vortigen::io::load_fields(csv_path, manifest);
    *out = f.release();
  });
}

void vortigen_fields_free(vortigen_fields* f) { delete f; }

vortigen_status vortigen_fields_grid(const vortigen_fields* f, int* nx,
                                     int* ny, double* x0, double* y0,
                                     double* hx, double* hy) {
  return guarded([&] {
    need(f, "fields");
    const auto& g = f->fs.grid;
    if (nx) *nx = g.nx;
    if (ny) *ny = g.ny;
    if (x0) *x0 = g.x0;
    if (y0) *y0 = g.y0;
    if (hx) *hx = g.hx;
    if (hy) *hy = g.hy;
  });
}

size_t vortigen_fields_snapshot_count(const vortigen_fields* f) {
  return f ? f->fs.snapshots.size() : 0;
}

vortigen_status vortigen_fields_commutator_max(const vortigen_fields* f,
                                               const vortigen_gas* gas,
                                               double x, double y,
                                               int crocco_sign,
                                               int include_nonstationary,
                                               double* max_k) {
  return guarded([&] {
    need(f, "fields");
    need(max_k, "max_k");
    auto m = to_model(gas);
    if (crocco_sign != VORTIGEN_CROCCO_CONSISTENT &&
        crocco_sign != VORTIGEN_CROCCO_PAPER_LITERAL) {
      throw vortigen::Error(vortigen::ErrorCode::kInvalidArgument,
                            "unknown crocco sign");
    }
    auto sign = crocco_sign == VORTIGEN_CROCCO_CONSISTENT
                    ? vortigen::CroccoSign::kConsistent
                    : vortigen::CroccoSign::kPaperLiteral;
    const auto& g = f->fs.grid;
    vortigen::StreamlineOptions so;
    so.max_len = 2.0 * std::hypot(g.x1() - g.x0, g.y1() - g.y0);
    auto traj = vortigen::trace_streamline(f->fs, {x, y}, so);
    auto frame = vortigen::frame_along(traj);
    vortigen::ForceModel none;
    auto anu = vortigen::crocco_normal_coefficient(
        f->fs, traj, frame, none, m, sign, include_nonstationary != 0);
    auto fc = vortigen::assemble_form(std::move(anu), traj, f->fs,
                                      std::nullopt, sign);
    *max_k = vortigen::commutator(fc, traj, frame, f->fs).max_abs();
  });
}

vortigen_status vortigen_fields_equilibrium_tolerance(const vortigen_fields* f,
                                                      const vortigen_gas* gas,
                                                      double* tol) {
  return guarded([&] {
    need(f, "fields");
    need(tol, "tol");
    *tol = vortigen::default_equilibrium_tolerance(f->fs, to_model(gas));
  });
}

vortigen_status vortigen_fields_contact_check(const vortigen_fields* f,
                                              const vortigen_gas* gas,
                                              double px, double py, double nx,
                                              double ny, double tol,
                                              vortigen_jump_report* out) {
  return guarded([&] {
    need(f, "fields");
    need(out, "out");
    auto m = to_model(gas);
    auto wd = vortigen::jumps::measure_contact(f->fs, m, {nx, ny}, {px, py});
    *out = to_c(vortigen::jumps::contact_jump_check(wd, *wd.state, m, tol));
  });
}

vortigen_status vortigen_net_solve(const double* x, const double* rho,
                                   const double* u, const double* p, size_t n,
                                   double gamma, double t_end,
                                   int stop_at_envelope, vortigen_net** out) {
  return guarded([&] {
    need(out, "out");
    need(x, "x");
    need(rho, "rho");
    need(u, "u");
    need(p, "p");
    *out = nullptr;
    vortigen::GasModel m;
    m.gamma = gamma;
    m.validate();
    std::vector<vortigen::moc::CharNode> nodes;
    nodes.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      if (!(rho[i] > 0.0) || !(p[i] > 0.0)) {
        throw vortigen::Error(vortigen::ErrorCode::kNonPhysicalState,
                              "rho and p must be positive");
      }
      nodes.push_back(
          vortigen::moc::node_from_primitive(x[i], rho[i], u[i], p[i], gamma));
    }
    vortigen::moc::AdvanceOptions opts;
    opts.stop_at_envelope = stop_at_envelope != 0;
    auto net = std::make_unique<vortigen_net>();
    net->net = vortigen::moc::advance_net(nodes, t_end, m, opts);
    *out = net.release();
  });
}

void vortigen_net_free(vortigen_net* net) { delete net; }

size_t vortigen_net_level_count(const vortigen_net* net) {
  return net ? net->net.levels.size() : 0;
}

size_t vortigen_net_node_count(const vortigen_net* net) {
  return net ? net->net.node_count() : 0;
}

vortigen_status vortigen_net_node(const vortigen_net* net, size_t level,
                                  size_t index, double out[5]) {
  return guarded([&] {
    need(net, "net");
    need(out, "out");
    const auto& levels = net->net.levels;
    if (level >= levels.size() || index >= levels[level].size()) {
      throw vortigen::Error(vortigen::ErrorCode::kInvalidArgument,
                            "node index out of range");
    }
    const auto& nd = levels[level][index];
    out[0] = nd.x;
    out[1] = nd.t;
    out[2] = nd.u;
    out[3] = nd.a;
    out[4] = nd.s;
  });
}

vortigen_status vortigen_net_envelope(const vortigen_net* net, int* found,
                                      vortigen_envelope* out) {
  return guarded([&] {
    need(net, "net");
    need(found, "found");
    *found = net->net.envelope ? 1 : 0;
    if (net->net.envelope && out) {
      const auto& e = *net->net.envelope;
      *out = vortigen_envelope{e.t_star, e.x_star, from_family(e.family)};
    }
  });
}

vortigen_status vortigen_net_residual(const vortigen_net* net, int family,
                                      double* out) {
  return guarded([&] {
    need(net, "net");
    need(out, "out");
    *out = vortigen::moc::pseudostructure_residual(net->net, to_family(family));
  });
}

vortigen_status vortigen_run_scenario(const char* config_path,
                                      const char* out_dir,
                                      vortigen_report** out) {
  return guarded([&] {
    need(config_path, "config_path");
    if (out) *out = nullptr;
    auto cfg = vortigen::app::load_config(config_path);
    if (out_dir) cfg.output_dir = out_dir;
    auto r = vortigen::app::run_scenario(cfg);
    if (out) *out = make_report(std::move(r));
  });
}

vortigen_status vortigen_diagnose(const char* fields_path,
                                  const char* manifest_path,
                                  const char* config_path, const char* out_dir,
                                  vortigen_report** out) {
  return guarded([&] {
    need(fields_path, "fields_path");
    need(config_path, "config_path");
    if (out) *out = nullptr;
    std::optional<std::filesystem::path> manifest, dir;
    if (manifest_path) manifest = manifest_path;
    if (out_dir) dir = out_dir;
    auto r = vortigen::app::diagnose(fields_path, manifest, config_path, dir);
    if (out) *out = make_report(std::move(r));
  });
}

void vortigen_report_free(vortigen_report* r) { delete r; }

const char* vortigen_report_json(const vortigen_report* r) {
  return r ? r->json.c_str() : "";
}

const char* vortigen_report_classification(const vortigen_report* r) {
  return r ? r->report.classification.c_str() : "";
}

vortigen_status vortigen_solve_moc(const char* init_path, double gamma,
                                   double t_end, const char* out_dir) {
  return guarded([&] {
    need(init_path, "init_path");
    need(out_dir, "out_dir");
    vortigen::app::solve_moc(init_path, gamma, t_end, out_dir);
  });
}

vortigen_status vortigen_detect_shock(const char* init_path, double gamma,
                                      double t_end, const char* out_dir) {
  return guarded([&] {
    need(init_path, "init_path");
    need(out_dir, "out_dir");
    std::optional<double> horizon;
    if (t_end > 0.0) horizon = t_end;
    vortigen::app::detect_shock(init_path, gamma, horizon, out_dir);
  });
}

vortigen_status vortigen_verify_jumps(int relation, double gamma, int refine,
                                      const char* out_dir,
                                      vortigen_jump_report* reports) {
  return guarded([&] {
    need(out_dir, "out_dir");
    vortigen::jumps::Relation rel;
    if (relation == VORTIGEN_RELATION_CONTACT) {
      rel = vortigen::jumps::Relation::kContactEq;
    } else if (relation == VORTIGEN_RELATION_CHAR) {
      rel = vortigen::jumps::Relation::kCharEq;
    } else {
      throw vortigen::Error(vortigen::ErrorCode::kInvalidArgument,
                            "unknown relation");
    }
    auto rs = vortigen::app::verify_jumps(rel, gamma, refine, out_dir);
    if (reports) {
      for (std::size_t k = 0; k < rs.size(); ++k) reports[k] = to_c(rs[k]);
    }
  });
}

vortigen_status vortigen_format_report(const char* run_dir, char** text) {
  return guarded([&] {
    need(run_dir, "run_dir");
    need(text, "text");
    *text = nullptr;
    std::string s = vortigen::app::format_report(run_dir);
    char* buf = static_cast<char*>(std::malloc(s.size() + 1));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, s.c_str(), s.size() + 1);
    *text = buf;
  });
}

void vortigen_string_free(char* s) { std::free(s); }

}  // extern "C"

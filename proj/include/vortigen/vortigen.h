/* Compressible-gas diagnostics: evolutionary-form coefficients and their
 * commutator along trajectories, a 1-D method-of-characteristics solver with
 * envelope (shock onset) detection, and derivative-jump checks.
 *
 * Every call returns a vortigen_status. On failure, vortigen_last_error()
 * holds a message for the calling thread until its next failing call.
 * Objects returned through out-pointers are owned by the caller and released
 * with the matching *_free function.
 */
#ifndef VORTIGEN_VORTIGEN_H_
#define VORTIGEN_VORTIGEN_H_

#include <stddef.h>

#if defined(_WIN32)
#ifdef VORTIGEN_BUILDING
#define VORTIGEN_API __declspec(dllexport)
#else
#define VORTIGEN_API __declspec(dllimport)
#endif
#else
#define VORTIGEN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vortigen_status {
  VORTIGEN_OK = 0,
  VORTIGEN_INVALID_ARGUMENT = 1,
  VORTIGEN_NON_PHYSICAL_STATE,
  VORTIGEN_CONVENTION_MISMATCH,
  VORTIGEN_SHAPE_MISMATCH,
  VORTIGEN_INSUFFICIENT_SNAPSHOTS,
  VORTIGEN_MISSING_SNAPSHOTS,
  VORTIGEN_STAGNATION_AT_SEED,
  VORTIGEN_SEED_OUTSIDE_DOMAIN,
  VORTIGEN_POINT_OUTSIDE_DOMAIN,
  VORTIGEN_DEGENERATE_TRAJECTORY,
  VORTIGEN_NON_CONVERGENCE,
  VORTIGEN_TOO_CLOSE_TO_BOUNDARY,
  VORTIGEN_WRONG_SURFACE_KIND,
  VORTIGEN_PARSE_ERROR,
  VORTIGEN_GRID_INFERENCE_ERROR,
  VORTIGEN_IO_ERROR,
  VORTIGEN_INTERNAL_ERROR = 99
} vortigen_status;

typedef enum vortigen_entropy_convention {
  VORTIGEN_ENTROPY_FUNCTION = 0, /* s = p / rho^gamma */
  VORTIGEN_ENTROPY_SPECIFIC = 1  /* s = c_v ln(p / rho^gamma) + s_ref */
} vortigen_entropy_convention;

typedef enum vortigen_crocco_sign {
  VORTIGEN_CROCCO_CONSISTENT = 0,
  VORTIGEN_CROCCO_PAPER_LITERAL = 1
} vortigen_crocco_sign;

typedef enum vortigen_family {
  VORTIGEN_FAMILY_PLUS = 0,
  VORTIGEN_FAMILY_MINUS = 1,
  VORTIGEN_FAMILY_ZERO = 2
} vortigen_family;

typedef enum vortigen_relation {
  VORTIGEN_RELATION_CONTACT = 0,
  VORTIGEN_RELATION_CHAR = 1
} vortigen_relation;

typedef struct vortigen_gas {
  double gamma;
  double R;
  int convention; /* vortigen_entropy_convention */
  double s_ref;
} vortigen_gas;

typedef struct vortigen_derived {
  double T, a, s, e, h, h0;
} vortigen_derived;

typedef struct vortigen_envelope {
  double t_star;
  double x_star;
  int family; /* vortigen_family */
} vortigen_envelope;

typedef struct vortigen_jump_report {
  int relation; /* vortigen_relation */
  double lhs;
  double rhs;
  double rel_error;
  double side_value;
  int side_conditions_ok;
  int passed;
  double grid_h;
} vortigen_jump_report;

typedef struct vortigen_fields vortigen_fields;
typedef struct vortigen_net vortigen_net;
typedef struct vortigen_report vortigen_report;

VORTIGEN_API const char* vortigen_version(void);
VORTIGEN_API const char* vortigen_last_error(void);
VORTIGEN_API const char* vortigen_status_name(vortigen_status status);
/* 0 for VORTIGEN_OK, 3 for numerical failures, 2 otherwise. */
VORTIGEN_API int vortigen_exit_code(vortigen_status status);

/* gamma 1.4, R 287, entropy-function convention. */
VORTIGEN_API vortigen_gas vortigen_gas_default(void);

VORTIGEN_API vortigen_status vortigen_derive_state(const vortigen_gas* gas,
                                                   double rho, double u,
                                                   double v, double p,
                                                   vortigen_derived* out);

/* ---- sampled 2-D fields ---- */

/* Arrays have nx*ny entries, node (i, j) at index j*nx + i. */
VORTIGEN_API vortigen_status vortigen_fields_create(
    int nx, int ny, double x0, double y0, double hx, double hy,
    const double* rho, const double* u, const double* v, const double* p,
    vortigen_fields** out);
/* manifest may be NULL. */
VORTIGEN_API vortigen_status vortigen_fields_load(const char* csv_path,
                                                  const char* manifest_path,
                                                  vortigen_fields** out);
VORTIGEN_API void vortigen_fields_free(vortigen_fields* f);
VORTIGEN_API vortigen_status vortigen_fields_grid(const vortigen_fields* f,
                                                  int* nx, int* ny, double* x0,
                                                  double* y0, double* hx,
                                                  double* hy);
VORTIGEN_API size_t vortigen_fields_snapshot_count(const vortigen_fields* f);

/* Traces the streamline from (x, y), builds the form coefficients for an
 * inviscid gas without body force and returns max |K| along it. */
VORTIGEN_API vortigen_status vortigen_fields_commutator_max(
    const vortigen_fields* f, const vortigen_gas* gas, double x, double y,
    int crocco_sign, int include_nonstationary, double* max_k);

/* Default equilibrium tolerance for this grid and state. */
VORTIGEN_API vortigen_status vortigen_fields_equilibrium_tolerance(
    const vortigen_fields* f, const vortigen_gas* gas, double* tol);

/* Contact relation across the surface through (px, py) with normal
 * (nx, ny). */
VORTIGEN_API vortigen_status vortigen_fields_contact_check(
    const vortigen_fields* f, const vortigen_gas* gas, double px, double py,
    double nx, double ny, double tol, vortigen_jump_report* out);

/* ---- characteristics solver ---- */

VORTIGEN_API vortigen_status vortigen_net_solve(const double* x,
                                                const double* rho,
                                                const double* u,
                                                const double* p, size_t n,
                                                double gamma, double t_end,
                                                int stop_at_envelope,
                                                vortigen_net** out);
VORTIGEN_API void vortigen_net_free(vortigen_net* net);
VORTIGEN_API size_t vortigen_net_level_count(const vortigen_net* net);
VORTIGEN_API size_t vortigen_net_node_count(const vortigen_net* net);
/* Copies node `index` of `level`: x, t, u, a, s. */
VORTIGEN_API vortigen_status vortigen_net_node(const vortigen_net* net,
                                               size_t level, size_t index,
                                               double out[5]);
/* *found is 0 when the solver saw no envelope. */
VORTIGEN_API vortigen_status vortigen_net_envelope(const vortigen_net* net,
                                                   int* found,
                                                   vortigen_envelope* out);
VORTIGEN_API vortigen_status vortigen_net_residual(const vortigen_net* net,
                                                   int family, double* out);

/* ---- scenario runs and command drivers ---- */

/* out_dir may be NULL to keep the configured directory. VORTIGEN_OUT in the
 * environment overrides both. */
VORTIGEN_API vortigen_status vortigen_run_scenario(const char* config_path,
                                                   const char* out_dir,
                                                   vortigen_report** out);
VORTIGEN_API vortigen_status vortigen_diagnose(const char* fields_path,
                                               const char* manifest_path,
                                               const char* config_path,
                                               const char* out_dir,
                                               vortigen_report** out);
VORTIGEN_API void vortigen_report_free(vortigen_report* r);
/* JSON text of the report; valid until the report is freed. */
VORTIGEN_API const char* vortigen_report_json(const vortigen_report* r);
VORTIGEN_API const char* vortigen_report_classification(
    const vortigen_report* r);

VORTIGEN_API vortigen_status vortigen_solve_moc(const char* init_path,
                                                double gamma, double t_end,
                                                const char* out_dir);
/* t_end <= 0 picks a horizon from the predicted envelope time. */
VORTIGEN_API vortigen_status vortigen_detect_shock(const char* init_path,
                                                   double gamma, double t_end,
                                                   const char* out_dir);
/* Writes `refine` reports to out_dir/jumps.json; `reports` may be NULL or
 * hold at least `refine` entries. */
VORTIGEN_API vortigen_status vortigen_verify_jumps(
    int relation, double gamma, int refine, const char* out_dir,
    vortigen_jump_report* reports);

/* Text rendering of run_dir/report.json. The caller releases it with
 * vortigen_string_free. */
VORTIGEN_API vortigen_status vortigen_format_report(const char* run_dir,
                                                    char** text);
VORTIGEN_API void vortigen_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* VORTIGEN_VORTIGEN_H_ */

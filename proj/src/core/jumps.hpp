#ifndef VORTIGEN_JUMPS_HPP_
#define VORTIGEN_JUMPS_HPP_

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fields.hpp"
#include "thermo.hpp"

namespace vortigen::jumps {

enum class SurfaceKind { kTrajectory, kCharacteristicPlus, kCharacteristicMinus };

// Jumps are (plus side) - (minus side), the plus side being the one the unit
// normal points into.
struct WeakDiscontinuity {
  SurfaceKind surface = SurfaceKind::kTrajectory;
  Vec2 normal{0.0, 1.0};
  double du = 0.0;  // normal-derivative jump of the first velocity component
  double dv = 0.0;  // ... of the second velocity component (2-D fields)
  double da = 0.0;
  double ds = 0.0;
  double dp = 0.0;
  double grid_h = 0.0;
  std::optional<PrimitiveState> state;  // flow state on the surface
};

enum class Relation { kContactEq, kCharEq };
std::string_view relation_name(Relation r);

struct JumpCheckReport {
  Relation relation = Relation::kContactEq;
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_error = 0.0;
  bool side_conditions_ok = true;
  double side_value = 0.0;  // largest side-condition jump, in units of lhs
  bool passed = false;
  double grid_h = 0.0;
};

// Steady horizontal stream with constant p and u, entropy function
// s(y) = s0 + delta * max(0, y - y_surface). Only the entropy-function
// convention is accepted.
FieldSet synthesize_contact_field(const PrimitiveState& base,
                                  double delta_s_slope,
                                  const StructuredGrid2D& grid,
                                  const GasModel& m, double y_surface);

// Jump of the normal derivative of `field` across a surface through `point`
// with unit normal `normal`. Three samples per side; grid-aligned surfaces
// through a node use node values (second order), oblique ones are sampled by
// bilinear interpolation clear of the cut cells (first order).
double measure_jump(std::span<const double> field, const StructuredGrid2D& grid,
                    Vec2 normal, Vec2 point);

// Measures du, dv, da, ds, dp of a 2-D field across a trajectory.
WeakDiscontinuity measure_contact(const FieldSet& fs, const GasModel& m,
                                  Vec2 normal, Vec2 point);

JumpCheckReport contact_jump_check(const WeakDiscontinuity& wd,
                                   const PrimitiveState& state,
                                   const GasModel& m, double tol = 1e-2);

JumpCheckReport char_jump_check(const WeakDiscontinuity& wd, const GasModel& m,
                                double tol = 1e-2);

// Exact centred simple wave on an (x, t) grid (grid.y is time). A C+ fan
// spreads into a uniform state (u_ahead, a_ahead) on its right; a C- fan into
// one on its left. u_tail is the velocity behind the fan.
struct ExpansionField {
  StructuredGrid2D grid;
  std::vector<double> u, a, s;
  double head_speed = 0.0;
  SurfaceKind family = SurfaceKind::kCharacteristicPlus;
};

ExpansionField synthesize_centered_expansion(SurfaceKind family, double u_ahead,
                                             double a_ahead, double s_value,
                                             double u_tail,
                                             const StructuredGrid2D& xt_grid,
                                             const GasModel& m);

// Measures the jumps across the head characteristic at time t.
WeakDiscontinuity measure_head(const ExpansionField& f, const GasModel& m,
                               double t);

// det(lambda I - B) for the 1-D Euler system in (rho, u, s) with p = p(rho, s);
// equals (lambda - u)((lambda - u)^2 - a^2).
double consistency_determinant(const PrimitiveState& q, double slope,
                               const GasModel& m);

}  // namespace vortigen::jumps

#endif  // VORTIGEN_JUMPS_HPP_

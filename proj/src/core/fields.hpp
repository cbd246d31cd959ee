#ifndef VORTIGEN_FIELDS_HPP_
#define VORTIGEN_FIELDS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace vortigen {

using Vec2 = std::array<double, 2>;

// Node-centred uniform grid. Node (i, j) sits at (x0 + i*hx, y0 + j*hy) and
// is stored at linear index j*nx + i.
struct StructuredGrid2D {
  int nx = 3;
  int ny = 3;
  double x0 = 0.0;
  double y0 = 0.0;
  double hx = 1.0;
  double hy = 1.0;

  void validate() const;
  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * nx + i;
  }
  double x(int i) const { return x0 + i * hx; }
  double y(int j) const { return y0 + j * hy; }
  double x1() const { return x0 + (nx - 1) * hx; }
  double y1() const { return y0 + (ny - 1) * hy; }
  bool contains(double px, double py) const;
};

struct VectorField {
  std::vector<double> x;
  std::vector<double> y;
};

enum class FieldName { kRho, kU, kV, kP };

struct Snapshot {
  double t = 0.0;
  std::vector<double> rho, u, v, p;

  const std::vector<double>& get(FieldName name) const;
};

// Sampled flow state. The primary arrays hold the evaluation state; the
// optional snapshot series (strictly increasing t) supplies time derivatives
// at snapshot index `current`. `active` is an optional domain mask (nonzero =
// fluid node); empty means the whole rectangle is fluid.
struct FieldSet {
  StructuredGrid2D grid;
  std::vector<double> rho, u, v, p;
  std::vector<Snapshot> snapshots;
  std::size_t current = 0;
  std::vector<std::uint8_t> active;

  void validate() const;
  const std::vector<double>& get(FieldName name) const;
  bool has_time_series() const { return snapshots.size() >= 2; }
  bool is_active(std::size_t node) const {
    return active.empty() || active[node] != 0;
  }
};

struct Trajectory {
  std::vector<Vec2> points;
  std::vector<double> arclength;  // cumulative, starts at 0
};

// Builds a trajectory from ordered points using chord arclength.
Trajectory make_trajectory(std::vector<Vec2> points);

// Unit tangent and left normal at every trajectory sample.
struct AccompanyingFrame {
  std::vector<Vec2> tangent;
  std::vector<Vec2> normal;
};

// Second-order central differences in the interior, second-order one-sided
// differences on the boundary.
VectorField gradient(std::span<const double> f, const StructuredGrid2D& grid);

// dv/dx - du/dy.
std::vector<double> curl2d(std::span<const double> u, std::span<const double> v,
                           const StructuredGrid2D& grid);

std::vector<double> divergence(std::span<const double> fx,
                               std::span<const double> fy,
                               const StructuredGrid2D& grid);

std::vector<double> time_derivative(const FieldSet& fs, FieldName name,
                                    std::size_t time_index);

double bilinear(std::span<const double> f, const StructuredGrid2D& grid,
                double px, double py);

struct StreamlineOptions {
  double step = 0.0;             // <= 0 selects min(hx, hy) / 4
  double max_len = 1.0;
  double stagnation_rel = 1e-10;  // relative to max |U| over the grid
};

Trajectory trace_streamline(const FieldSet& fs, Vec2 seed,
                            const StreamlineOptions& opts);

AccompanyingFrame frame_along(const Trajectory& traj);

double directional_derivative(std::span<const double> f,
                              const StructuredGrid2D& grid, Vec2 point,
                              Vec2 direction);

// Same, reusing a precomputed gradient.
double directional_derivative(const VectorField& grad,
                              const StructuredGrid2D& grid, Vec2 point,
                              Vec2 direction);

}  // namespace vortigen

#endif  // VORTIGEN_FIELDS_HPP_

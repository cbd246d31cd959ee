#include <doctest.h>

#include <cmath>

#include "errors.hpp"
#include "support/expect.hpp"
#include "fields.hpp"
#include "support/fieldgen.hpp"

using namespace vortigen;

namespace {

std::vector<double> sample_scalar(const StructuredGrid2D& g,
                                  double (*fn)(double, double)) {
  std::vector<double> f(g.size());
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) f[g.index(i, j)] = fn(g.x(i), g.y(j));
  return f;
}

}  // namespace

TEST_CASE("grid indexing and validation") {
  StructuredGrid2D g{4, 3, 1.0, 2.0, 0.5, 0.25};
  CHECK(g.size() == 12);
  CHECK(g.index(3, 2) == 11);
  CHECK(g.x1() == doctest::Approx(2.5));
  CHECK(g.y1() == doctest::Approx(2.5));
  CHECK(g.contains(2.5, 2.0));
  CHECK_FALSE(g.contains(2.6, 2.0));
  CHECK(code_of([] { StructuredGrid2D{2, 5, 0, 0, 1, 1}.validate(); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(code_of([] { StructuredGrid2D{3, 3, 0, 0, 0, 1}.validate(); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("gradient is exact for quadratics, boundaries included") {
  StructuredGrid2D g{7, 5, -1.0, 0.5, 0.3, 0.2};
  auto f = sample_scalar(g, [](double x, double y) {
    return 1.0 + 2.0 * x - 3.0 * y + x * x - 0.5 * x * y + 4.0 * y * y;
  });
  VectorField gr = gradient(f, g);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      double x = g.x(i), y = g.y(j);
      CHECK(gr.x[g.index(i, j)] == doctest::Approx(2.0 + 2.0 * x - 0.5 * y));
      CHECK(gr.y[g.index(i, j)] == doctest::Approx(-3.0 - 0.5 * x + 8.0 * y));
    }
  }
}

TEST_CASE("curl and divergence of linear fields") {
  StructuredGrid2D g = testgen::square(0.0, 0.0, 1.0, 6);
  auto fs = testgen::sample(g, [](double x, double y) {
    return PrimitiveState{1.0, {-y + 2.0 * x, x + 3.0 * y}, 1.0};
  });
  auto w = curl2d(fs.u, fs.v, g);
  auto d = divergence(fs.u, fs.v, g);
  for (std::size_t n = 0; n < g.size(); ++n) {
    CHECK(w[n] == doctest::Approx(2.0));
    CHECK(d[n] == doctest::Approx(5.0));
  }
  std::vector<double> short_field(g.size() - 1);
  CHECK(code_of([&] { curl2d(short_field, fs.v, g); }) ==
        ErrorCode::kShapeMismatch);
}

TEST_CASE("bilinear reproduces bilinear functions and clamps") {
  StructuredGrid2D g{5, 4, 0.0, 0.0, 0.25, 0.5};
  auto f = sample_scalar(g, [](double x, double y) {
    return 1.0 + x - 2.0 * y + 3.0 * x * y;
  });
  CHECK(bilinear(f, g, 0.33, 0.71) ==
        doctest::Approx(1.0 + 0.33 - 1.42 + 3.0 * 0.33 * 0.71));
  CHECK(bilinear(f, g, 1.0, 1.5) == doctest::Approx(1.0 + 1.0 - 3.0 + 4.5));
}

TEST_CASE("time derivative on a nonuniform time axis") {
  StructuredGrid2D g = testgen::square(0.0, 0.0, 1.0, 3);
  FieldSet fs = testgen::sample(g, [](double, double) {
    return PrimitiveState{};
  });
  const double ts[] = {0.0, 0.1, 0.35, 0.4};
  for (double t : ts) {
    Snapshot s;
    s.t = t;
    s.rho.assign(g.size(), 1.0);
    s.u.assign(g.size(), 2.0 * t + 5.0 * t * t);
    s.v.assign(g.size(), 0.0);
    s.p.assign(g.size(), 1.0);
    fs.snapshots.push_back(s);
  }
  for (std::size_t k = 0; k < 4; ++k) {
    auto d = time_derivative(fs, FieldName::kU, k);
    CHECK(d[4] == doctest::Approx(2.0 + 10.0 * ts[k]).epsilon(1e-12));
  }
  fs.snapshots.resize(1);
  CHECK(code_of([&] { time_derivative(fs, FieldName::kU, 0); }) ==
        ErrorCode::kInsufficientSnapshots);
}

TEST_CASE("snapshot times must increase") {
  StructuredGrid2D g = testgen::square(0.0, 0.0, 1.0, 3);
  FieldSet fs = testgen::sample(g, [](double, double) { return PrimitiveState{}; });
  Snapshot a;
  a.rho = fs.rho; a.u = fs.u; a.v = fs.v; a.p = fs.p;
  a.t = 1.0;
  Snapshot b = a;
  b.t = 0.5;
  fs.snapshots = {a, b};
  CHECK(code_of([&] { fs.validate(); }) == ErrorCode::kParseError);
}

TEST_CASE("streamline of a uniform oblique stream is straight") {
  StructuredGrid2D g = testgen::square(0.0, 0.0, 1.0, 21);
  auto fs = testgen::sample(g, [](double, double) {
    return PrimitiveState{1.0, {3.0, 4.0}, 1.0};
  });
  StreamlineOptions so;
  so.max_len = 10.0;
  Trajectory t = trace_streamline(fs, {0.1, 0.1}, so);
  REQUIRE(t.points.size() > 10);
  for (const auto& p : t.points) {
    CHECK((p[1] - 0.1) * 3.0 == doctest::Approx((p[0] - 0.1) * 4.0));
  }
  // Stops on the top edge.
  CHECK(t.points.back()[1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(t.arclength.back() == doctest::Approx(0.9 * 5.0 / 4.0).epsilon(1e-9));
  AccompanyingFrame fr = frame_along(t);
  CHECK(fr.tangent[3][0] == doctest::Approx(0.6));
  CHECK(fr.normal[3][0] == doctest::Approx(-0.8));
  CHECK(fr.normal[3][1] == doctest::Approx(0.6));
}

TEST_CASE("streamline length cap is honoured") {
  StructuredGrid2D g = testgen::square(0.0, 0.0, 1.0, 11);
  auto fs = testgen::sample(g, [](double, double) {
    return PrimitiveState{1.0, {1.0, 0.0}, 1.0};
  });
  StreamlineOptions so;
  so.max_len = 0.33;
  Trajectory t = trace_streamline(fs, {0.0, 0.5}, so);
  CHECK(t.arclength.back() == doctest::Approx(0.33));
  CHECK(t.points.back()[0] == doctest::Approx(0.33));
}

TEST_CASE("rigid rotation streamline stays on its circle") {
  StructuredGrid2D g = testgen::square(-1.0, -1.0, 2.0, 81);
  auto fs = testgen::sample(g, [](double x, double y) {
    return PrimitiveState{1.0, {-y, x}, 1.0};
  });
  StreamlineOptions so;
  so.max_len = 2.0 * M_PI * 0.5;
  Trajectory t = trace_streamline(fs, {0.5, 0.0}, so);
  for (const auto& p : t.points) {
    CHECK(std::hypot(p[0], p[1]) == doctest::Approx(0.5).epsilon(1e-4));
  }
}

TEST_CASE("streamline errors") {
  StructuredGrid2D g = testgen::square(0.0, 0.0, 1.0, 5);
  auto still = testgen::sample(g, [](double, double) { return PrimitiveState{}; });
  StreamlineOptions so;
  CHECK(code_of([&] { trace_streamline(still, {0.5, 0.5}, so); }) ==
        ErrorCode::kStagnationAtSeed);
  auto flow = testgen::sample(g, [](double, double) {
    return PrimitiveState{1.0, {1.0, 0.0}, 1.0};
  });
  CHECK(code_of([&] { trace_streamline(flow, {1.5, 0.5}, so); }) ==
        ErrorCode::kSeedOutsideDomain);
  flow.active.assign(g.size(), 1);
  flow.active[g.index(2, 2)] = 0;
  CHECK(code_of([&] { trace_streamline(flow, {0.5, 0.5}, so); }) ==
        ErrorCode::kSeedOutsideDomain);
}

TEST_CASE("streamline stops at a masked obstacle") {
  StructuredGrid2D g = testgen::square(0.0, 0.0, 1.0, 11);
  auto fs = testgen::sample(g, [](double, double) {
    return PrimitiveState{1.0, {1.0, 0.0}, 1.0};
  });
  fs.active.assign(g.size(), 1);
  for (int j = 4; j <= 6; ++j) fs.active[g.index(7, j)] = 0;
  StreamlineOptions so;
  so.max_len = 5.0;
  Trajectory t = trace_streamline(fs, {0.05, 0.5}, so);
  CHECK(t.points.back()[0] == doctest::Approx(0.6).epsilon(1e-6));
}

TEST_CASE("directional derivative") {
  StructuredGrid2D g = testgen::square(0.0, 0.0, 1.0, 9);
  auto f = sample_scalar(g, [](double x, double y) { return 2.0 * x + y; });
  CHECK(directional_derivative(f, g, {0.3, 0.3}, {0.6, 0.8}) ==
        doctest::Approx(2.0));
  CHECK(code_of([&] { directional_derivative(f, g, {1.3, 0.3}, {1.0, 0.0}); }) ==
        ErrorCode::kPointOutsideDomain);
}

TEST_CASE("frame needs two distinct samples") {
  Trajectory t = make_trajectory({{0.0, 0.0}});
  CHECK(code_of([&] { frame_along(t); }) == ErrorCode::kDegenerateTrajectory);
  Trajectory same = make_trajectory({{0.0, 0.0}, {0.0, 0.0}});
  CHECK(code_of([&] { frame_along(same); }) == ErrorCode::kDegenerateTrajectory);
}

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hosdt/eval.hpp"
#include "hosdt/init.hpp"
#include "hosdt/studies.hpp"
#include "oracles.hpp"

using namespace hosdt;

namespace {

ScalarField line(std::vector<double> v) {
  const std::size_t n = v.size();
  return ScalarField(Lattice({n}, {1.0}), std::move(v));
}

}  // namespace

TEST_CASE("analytic sphere examples") {
  const Lattice lat({11, 11, 11}, {1.0, 1.0, 1.0});
  const std::vector<double> c{5, 5, 5};
  const ScalarField f = analytic_sphere(lat, c, 2.0);
  CHECK(f.at(Index{5, 5, 5}) == -2.0);
  CHECK(f.at(Index{7, 5, 5}) == 0.0);
  CHECK(f.at(Index{5, 9, 5}) == 2.0);
  // Physical coordinates follow the spacing.
  const ScalarField g = analytic_sphere(Lattice({5}, {0.5}), std::vector<double>{0.0}, 1.0);
  CHECK(g.values == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
}

TEST_CASE("binarize examples") {
  const BinaryGrid b = binarize(line({-0.1, 0.1, 0.0}));
  CHECK(b.labels == std::vector<std::uint8_t>{1, 0, 0});
}

TEST_CASE("error norms") {
  const ScalarField ref = line({0.0, 0.5, 100.0});
  CHECK(error_norms(ref, ref, 1.0).l1 == 0.0);
  CHECK(error_norms(ref, ref, 1.0).linf == 0.0);
  const ScalarField off = line({0.3, 0.8, 100.3});
  const ErrorNorms n = error_norms(off, ref, 200.0);
  CHECK(n.l1 == doctest::Approx(0.3));
  CHECK(n.linf == doctest::Approx(0.3));
  const ErrorNorms m = error_norms(line({0.1, 0.8, 0.0}), ref, 1.0);
  CHECK(m.l1 == doctest::Approx(0.2));
  CHECK(m.linf == doctest::Approx(0.3));
  CHECK_THROWS_WITH_AS(error_norms(ref, ref, -1.0), "empty band", Error);
  CHECK_THROWS_WITH_AS(error_norms(line({1, 2}), line({5, 6}), 1.0), "empty band", Error);
}

TEST_CASE("error norms: linf bounds the mean") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(20), b(20);
    for (int i = 0; i < 20; ++i) { a[i] = u(rng); b[i] = u(rng); }
    const ErrorNorms n = error_norms(line(a), line(b), 3.0);
    CHECK(n.l1 >= 0.0);
    CHECK(n.linf >= n.l1);
  }
}

TEST_CASE("minimize l1 shift examples") {
  const ScalarField ref = line({0, 0, 0});
  const ShiftedField a = minimize_l1_shift(line({1, 1, 1}), ref, 1.0);
  CHECK(a.shift == 1.0);
  CHECK(error_norms(a.field, ref, 1.0).l1 == 0.0);
  const ScalarField ref2 = line({0, 0});
  const ShiftedField b = minimize_l1_shift(line({0, 10}), ref2, 1.0);
  CHECK(b.shift == 0.0);
  CHECK(error_norms(b.field, ref2, 1.0).l1 == 5.0);
}

TEST_CASE("minimize l1 shift never increases l1") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 30;
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) { a[i] = u(rng) + 0.7; b[i] = u(rng); }
    const ScalarField comp = line(a), ref = line(b);
    const double before = error_norms(comp, ref, 2.0).l1;
    const double after = error_norms(minimize_l1_shift(comp, ref, 2.0).field, ref, 2.0).l1;
    CHECK(after <= before + 1e-12);
  }
}

TEST_CASE("order estimate") {
  CHECK(order_estimate(1.0, 0.25) == 2.0);
  CHECK(order_estimate(1.73, 0.26) == doctest::Approx(2.734).epsilon(1e-3));
  CHECK(order_estimate(0.4, 0.4) == 0.0);
  CHECK_THROWS_WITH_AS(order_estimate(1.0, 0.0), "exact solution", Error);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(1e-3, 10);
  for (int i = 0; i < 100; ++i) {
    const double a = u(rng), b = u(rng), c = u(rng);
    CHECK(order_estimate(a, b) + order_estimate(b, c) == doctest::Approx(order_estimate(a, c)));
  }
}

TEST_CASE("order-m noise") {
  const double h = 0.1;
  const Lattice lat = cubic_lattice(2.0, h);
  const ScalarField phi = analytic_sphere(lat, std::vector<double>(3, 1.0), 0.5);
  const ScalarField n0 = add_order_m_noise(phi, 0, h);
  CHECK(n0.values[0] == phi.values[0]);
  double amp = 0;
  for (std::size_t i = 0; i < phi.values.size(); ++i) amp = std::max(amp, std::abs(n0.values[i] - phi.values[i]));
  CHECK(amp <= 1.0);
  CHECK(amp > 0.95);
  // On a zero field the output is the perturbation itself.
  const ScalarField zero(lat);
  for (int m = 0; m < 3; ++m) {
    const ScalarField a = add_order_m_noise(zero, m, h);
    const ScalarField b = add_order_m_noise(zero, m + 1, h);
    for (std::size_t i = 0; i < zero.values.size(); ++i) {
      REQUIRE(b.values[i] == doctest::Approx(h * a.values[i]).epsilon(1e-12).scale(1e-300));
    }
  }
  CHECK_THROWS_WITH_AS(add_order_m_noise(line({1, 2}), 1, h), "noise model is 3-D", Error);
}

TEST_CASE("recovery check") {
  const BinaryGrid image(Lattice({5}, {1.0}), {0, 1, 1, 0, 0});
  ScalarField f = averaged_init(image);
  CHECK(recovery_check(f, image));
  ScalarField neg = f;
  for (double& v : neg.values) v = -v;
  CHECK_FALSE(recovery_check(neg, image));
  CHECK(recovery_check(neg, complement(image)));
  f.values[3] = -f.values[3];
  CHECK_FALSE(recovery_check(f, image));
}

TEST_CASE("sphere binarization is recovered by the solver") {
  for (double h : {8.0, 4.0}) {
    for (int order : {1, 5}) {
      const SphereCase sc = solve_sphere({.extent = 100, .radius = 25, .h = h},
                                         SolverConfig{.order = order, .narrowband_width = 15.0});
      CHECK(recovery_check(sc.solved.field, sc.image));
    }
  }
}

TEST_CASE("eikonal residual") {
  // A planar distance field is differentiated exactly by central differences.
  const Lattice lat({20, 20, 20}, {0.5, 0.5, 0.5});
  ScalarField plane(lat);
  for (std::size_t i = 0; i < lat.size(); ++i) plane.values[i] = 0.5 * static_cast<double>(lat.unravel(i)[0]) - 4.8;
  const ResidualStats p = eikonal_residual_stats(plane, 3.0, 1.0);
  CHECK(p.count > 0);
  CHECK(p.median < 1e-12);

  const Lattice cube = cubic_lattice(100.0, 1.0);
  const ScalarField sphere = analytic_sphere(cube, std::vector<double>(3, 50.0), 25.0);
  const ResidualStats s = eikonal_residual_stats(sphere, 15.0, 2.0);
  CHECK(s.median < 1e-3);
  CHECK(s.p95 >= s.median);

  ScalarField doubled = sphere;
  for (double& v : doubled.values) v *= 2;
  CHECK(eikonal_residual_stats(doubled, 30.0, 2.0).median == doctest::Approx(1.0).epsilon(1e-3));

  CHECK_THROWS_WITH_AS(eikonal_residual_stats(plane, 1e-9, 1.0), "empty residual set", Error);
}

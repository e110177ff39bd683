#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace ldeconf;
using testutil::rel_err;

TEST_CASE("count_zeros on a quadratic") {
  Domain disc = Domain::disc();
  AnalyticFunction g = AnalyticFunction::polynomial({-0.25, 0.0, 1.0}, disc);  // z^2 - 1/4
  CHECK(count_zeros(g, 0.6).count == 2);
  CHECK(count_zeros(g, 0.3).count == 0);
  CHECK(count_zeros(g, 0.51).count == 2);
}

TEST_CASE("count_zeros on the zero-free half-plane solution") {
  presets::HalfPlanePower sys = presets::make_petal51(1.5);
  for (double r : {0.5, 0.9, 0.99})
    CHECK(count_zeros(sys.counted_base[0], r).count == 0);
}

TEST_CASE("count_zeros matches the lattice for the pair sum") {
  double alpha = 1.5;
  presets::HalfPlanePower sys = presets::make_petal51(alpha);
  std::vector<double> mods = presets::petal51_zero_moduli(alpha, 0.995);
  for (double r : {0.55, 0.7, 0.8, 0.9, 0.95}) {
    CountResult res = count_zeros(sys.counted_cross[0], r);
    int want = static_cast<int>(std::count_if(mods.begin(), mods.end(),
                                              [&](double m) { return m < res.radius_used; }));
    CHECK(res.count == want);
  }
}

TEST_CASE("integrated counting from a synthetic lattice") {
  // Zeros at moduli 0.3 (simple) and 0.55 (double).
  auto counter = [](double r) { return (r > 0.3 ? 1 : 0) + (r > 0.55 ? 2 : 0); };
  std::vector<double> grid = {0.1, 0.2, 0.35, 0.5, 0.7, 0.9};
  CountingFunction cf = integrated_counting(counter, grid, true);
  REQUIRE(cf.jumps().size() == 2);
  CHECK(std::abs(cf.jumps()[0].radius - 0.3) < 1e-6);
  CHECK(cf.jumps()[0].multiplicity == 1);
  CHECK(std::abs(cf.jumps()[1].radius - 0.55) < 1e-6);
  CHECK(cf.jumps()[1].multiplicity == 2);
  CHECK(rel_err(cf.N_at(0.9), std::log(0.9 / 0.3) + 2.0 * std::log(0.9 / 0.55)) < 1e-5);
  CHECK(cf.N_at(0.25) == 0.0);
  // Monotonicity of the records.
  for (size_t i = 0; i + 1 < cf.records().size(); ++i) {
    CHECK(cf.records()[i].n <= cf.records()[i + 1].n);
    CHECK(cf.records()[i].N <= cf.records()[i + 1].N + 1e-12);
  }
}

TEST_CASE("zero-free functions have vanishing N") {
  auto counter = [](double) { return 0; };
  std::vector<double> grid = {0.2, 0.5, 0.8};
  CountingFunction cf = integrated_counting(counter, grid, true);
  CHECK(cf.jumps().empty());
  for (const auto& rec : cf.records()) CHECK(rec.N == 0.0);
}

TEST_CASE("integral of N/(1-t) against a hand value") {
  // One simple zero at rho: N(t) = log(t/rho) for t > rho.
  auto counter = [](double r) { return r > 0.5 ? 1 : 0; };
  std::vector<double> grid = []() {
    std::vector<double> g;
    for (int i = 0; i <= 60; ++i) g.push_back(0.05 + 0.9 * i / 60.0);
    return g;
  }();
  CountingFunction cf = integrated_counting(counter, grid, true);
  // Reference by fine numerical quadrature of the exact N.
  double want = 0.0;
  int n = 200000;
  for (int i = 0; i < n; ++i) {
    double t = 0.5 + (0.9 - 0.5) * (i + 0.5) / n;
    want += std::log(t / 0.5) / (1.0 - t) * (0.4 / n);
  }
  CHECK(rel_err(cf.integral_N_over_one_minus_t(0.9), want) < 2e-3);
}

TEST_CASE("proximity means") {
  double e = std::exp(1.0);
  CHECK(rel_err(proximity_mean([e](cplx) { return cplx(e, 0.0); }, 0.5), 1.0) < 1e-10);
  CHECK(proximity_mean([](cplx) { return cplx(0.3, 0.1); }, 0.5) == 0.0);
  // Mean of log|c| for |c| > 1 is log|c| regardless of r.
  CHECK(rel_err(proximity_mean([](cplx) { return cplx(0.0, 7.0); }, 0.9), std::log(7.0)) < 1e-10);
}

TEST_CASE("reciprocal proximity of the inner-function probe stays flat at alpha = 1") {
  // g = exp(-(1+z)/(1-z)); log+ |1/g| = Re((1+z)/(1-z)) averages to 1.
  auto recip = [](cplx z) { return std::exp((1.0 + z) / (1.0 - z)); };
  for (double r : {0.5, 0.7, 0.9}) CHECK(rel_err(proximity_mean(recip, r), 1.0) < 1e-6);
}

TEST_CASE("Jensen consistency ties counting to the circle mean of log|g|") {
  Domain disc = Domain::disc();
  // g = (z - 0.2)(z + 0.4) e^z
  AnalyticFunction g(disc, [](cplx z, int order) {
    Jet zv = Jet::variable(z, order);
    return (zv - cplx(0.2)) * (zv + cplx(0.4)) * exp(zv);
  });
  double r = 0.7;
  int n = 1 << 15;
  double mean = 0.0;
  for (int i = 0; i < n; ++i) {
    cplx z = std::polar(r, 2.0 * kPi * i / n);
    mean += std::log(std::abs(g.value(z)));
  }
  mean /= n;
  double want_N = std::log(r / 0.2) + std::log(r / 0.4);
  CHECK(std::abs((mean - std::log(std::abs(g.value(0.0)))) - want_N) < 1e-3 * want_N);
  // And the argument-principle route agrees with the two enclosed zeros.
  CHECK(count_zeros(g, r).count == 2);
}

TEST_CASE("disc integrals") {
  CHECK(disc_integral([](cplx) { return 0.0; }, 0.8) == 0.0);
  CHECK(rel_err(disc_integral([](cplx) { return 1.0; }, 0.8), kPi * 0.64) < 5e-3);
}

TEST_CASE("coefficient integral of the unit coefficient through the identity") {
  Domain dom = Domain::image(ConformalMap::identity());
  LinearOde ode(2, {AnalyticFunction::constant(1.0, dom)}, dom);
  double got = coefficient_integral(ode, ConformalMap::identity(), 0, 0.7);
  CHECK(rel_err(got, kPi * 0.49) < 5e-3);
}

TEST_CASE("both routes of the coefficient integral agree") {
  QuadratureOptions q;
  q.rel_tol = 0.002;
  SECTION("half-plane mobius with the power-exponential coefficient") {
    ConformalMap T = ConformalMap::cayley();
    Domain dom = Domain::image(T);
    LinearOde ode(2, {AnalyticFunction::example51_coefficient(1.5, 0.0, dom)}, dom);
    for (double r : {0.5, 0.7}) {
      double disc_side = coefficient_integral(ode, T, 0, r, q);
      double image_side = coefficient_integral_image(ode, T, 0, r, q);
      CHECK(std::abs(disc_side - image_side) < 0.01 * std::abs(disc_side));
    }
  }
  SECTION("sector with a polynomial coefficient") {
    ConformalMap T = ConformalMap::sector(1.3, 0.2);
    Domain dom = Domain::image(T);
    LinearOde ode(3, {AnalyticFunction::constant(cplx(0.4, 0.1), dom),
                      AnalyticFunction::polynomial({0.2, cplx(0.0, 0.05)}, dom)},
                  dom);
    for (int j : {0, 1}) {
      double disc_side = coefficient_integral(ode, T, j, 0.6, q);
      double image_side = coefficient_integral_image(ode, T, j, 0.6, q);
      CHECK(std::abs(disc_side - image_side) < 0.01 * std::abs(disc_side));
    }
  }
}

TEST_CASE("growth exponent fits") {
  std::vector<std::pair<double, double>> s;
  for (int i = 0; i < 20; ++i) {
    double r = 0.5 + 0.49 * i / 19.0;
    s.push_back({r, std::pow(1.0 - r, -2.0)});
  }
  CHECK(std::abs(growth_exponent_fit(s) - 2.0) < 1e-12);
  for (auto& p : s) p.second = 3.7;
  CHECK(std::abs(growth_exponent_fit(s)) < 1e-12);
  // Bounded oscillation around a power law stays near the true slope.
  for (size_t i = 0; i < s.size(); ++i) {
    double r = s[i].first;
    s[i].second = std::pow(1.0 - r, -0.5) * (2.0 + std::sin(1.0 / (1.0 - r)));
  }
  CHECK(std::abs(growth_exponent_fit(s) - 0.5) < 0.15);
  // Bad inputs.
  s[3].second = -1.0;
  CHECK_THROWS_AS(growth_exponent_fit(s), std::invalid_argument);
  std::vector<std::pair<double, double>> few = {{0.5, 1.0}, {0.6, 1.0}};
  CHECK_THROWS_AS(growth_exponent_fit(few), std::invalid_argument);
}

TEST_CASE("exponential-sum directions") {
  SECTION("real pair gives the vertical normals") {
    std::vector<cplx> roots = {1.0, -1.0};
    std::vector<double> th = exp_sum_directions(roots);
    REQUIRE(th.size() == 2);
    CHECK(std::abs(th[0] + kPi / 2) < 1e-12);
    CHECK(std::abs(th[1] - kPi / 2) < 1e-12);
  }
  SECTION("fourth roots of unity give the diagonal normals") {
    std::vector<cplx> roots = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
    std::vector<double> th = exp_sum_directions(roots);
    REQUIRE(th.size() == 4);
    double want[] = {-3 * kPi / 4, -kPi / 4, kPi / 4, 3 * kPi / 4};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(th[static_cast<size_t>(i)] - want[i]) < 1e-12);
  }
  SECTION("collinear roots collapse to a segment") {
    std::vector<cplx> roots = {0.0, 1.0, 2.0};
    std::vector<double> th = exp_sum_directions(roots);
    REQUIRE(th.size() == 2);
    CHECK(std::abs(th[0] + kPi / 2) < 1e-12);
    CHECK(std::abs(th[1] - kPi / 2) < 1e-12);
  }
  SECTION("interior points do not change the directions") {
    std::vector<cplx> square = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
    std::vector<cplx> padded = square;
    padded.push_back(cplx(0.1, 0.1));
    padded.push_back(0.0);
    CHECK(exp_sum_directions(square) == exp_sum_directions(padded));
  }
  SECTION("degenerate input") {
    std::vector<cplx> same = {cplx(1.0, 0.5), cplx(1.0, 0.5)};
    CHECK_THROWS_AS(exp_sum_directions(same), std::invalid_argument);
  }
}

TEST_CASE("sector pair zeros match the explicit half-lattices") {
  presets::ExpSumSector sys = presets::make_expsum52(1.5);
  std::vector<double> mods =
      presets::exp_pair_zero_moduli(sys.roots[0], sys.roots[2], sys.map, 0.97);
  REQUIRE(mods.size() > 4);
  for (double r : {0.7, 0.85, 0.93}) {
    CountResult res = count_zeros(sys.counted_cross[0], r);
    int want = static_cast<int>(
        std::count_if(mods.begin(), mods.end(), [&](double m) { return m < res.radius_used; }));
    CHECK(res.count == want);
  }
}

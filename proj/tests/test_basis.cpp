#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace ldeconf;
using testutil::rel_err;

namespace {

const std::array<std::array<cplx, 2>, 2> kExpIcs = {
    {{cplx(1.0), cplx(0.0, 1.0)}, {cplx(1.0), cplx(0.0, -1.0)}}};  // e^{iz}, e^{-iz}

}  // namespace

TEST_CASE("wronskian pins") {
  Domain disc = Domain::disc();
  AnalyticFunction e1 = AnalyticFunction::exponential(cplx(0, 1), disc);
  AnalyticFunction e2 = AnalyticFunction::exponential(cplx(0, -1), disc);
  for (cplx z : fixtures::sample_points(31, 8, 0.8)) {
    std::array<AnalyticFunction, 2> pair = {e1, e2};
    CHECK(rel_err(wronskian(pair, z), cplx(0.0, -2.0)) < 1e-12);
    std::array<AnalyticFunction, 2> repeated = {e1, e1};
    CHECK(std::abs(wronskian(repeated, z)) < 1e-12);
  }
  // Products e^{2iz}, 1, e^{-2iz}: determinant 2 (-2i)^3 = 16i.
  AnalyticFunction p0 = e1 * e1, p1 = e1 * e2, p2 = e2 * e2;
  std::array<AnalyticFunction, 3> prods = {p0, p1, p2};
  CHECK(rel_err(wronskian(prods, 0.37), cplx(0.0, 16.0)) < 1e-11);
}

TEST_CASE("power products solve the expected third-order equation") {
  // For f'' + a f = 0 the three squares solve f''' + 4 a f' + 2 a' f = 0.
  Domain disc = Domain::disc();
  for (const AnalyticFunction& a :
       {AnalyticFunction::constant(1.0, disc), AnalyticFunction::polynomial({0.0, 1.0}, disc)}) {
    PowerBasis pb = power_basis(a, 3, kExpIcs);
    AnalyticFunction want_b1 = 4.0 * a;
    AnalyticFunction want_b0 = 2.0 * a.derivative();
    for (cplx z : fixtures::sample_points(32, 15, 0.6)) {
      CHECK(rel_err(pb.ode.coeff(1).value(z), want_b1.value(z)) < 1e-9);
      cplx w0 = want_b0.value(z);
      if (std::abs(w0) > 1e-12)
        CHECK(rel_err(pb.ode.coeff(0).value(z), w0) < 1e-9);
      else
        CHECK(std::abs(pb.ode.coeff(0).value(z)) < 1e-9);
    }
    // Residual check with a generic pair (the circular ICs make the middle
    // product identically 1, whose relative residual is noise over noise).
    std::array<std::array<cplx, 2>, 2> generic = {
        {{cplx(1.0), cplx(0.3, 0.2)}, {cplx(0.0, -0.2), cplx(1.0)}}};
    PowerBasis pg = power_basis(a, 3, generic);
    for (const SolutionEvaluator& s : pg.solutions)
      for (cplx z : fixtures::sample_points(33, 6, 0.5))
        CHECK(std::abs(residual(pg.ode, s, z)) < 1e-9);
  }
}

TEST_CASE("power products solve the expected fourth-order equation") {
  // f'''' + 10 a f'' + 10 a' f' + (3 a'' + 9 a^2) f = 0.
  Domain disc = Domain::disc();
  for (const AnalyticFunction& a :
       {AnalyticFunction::constant(1.0, disc), AnalyticFunction::polynomial({0.0, 1.0}, disc)}) {
    PowerBasis pb = power_basis(a, 4, kExpIcs);
    AnalyticFunction want_b2 = 10.0 * a;
    AnalyticFunction want_b1 = 10.0 * a.derivative();
    AnalyticFunction want_b0 = 3.0 * a.derivative(2) + 9.0 * (a * a);
    for (cplx z : fixtures::sample_points(34, 15, 0.6)) {
      CHECK(rel_err(pb.ode.coeff(2).value(z), want_b2.value(z)) < 1e-9);
      cplx w1 = want_b1.value(z);
      if (std::abs(w1) > 1e-12)
        CHECK(rel_err(pb.ode.coeff(1).value(z), w1) < 1e-9);
      else
        CHECK(std::abs(pb.ode.coeff(1).value(z)) < 1e-9);
      CHECK(rel_err(pb.ode.coeff(0).value(z), want_b0.value(z)) < 1e-9);
    }
  }
}

TEST_CASE("top coefficient is the cubic binomial multiple of a") {
  Domain disc = Domain::disc();
  SECTION("k=5 with constant coefficient") {
    PowerBasis pb = power_basis(AnalyticFunction::constant(1.0, disc), 5, kExpIcs);
    CHECK(rel_err(pb.ode.coeff(3).value(0.2), 20.0) < 1e-9);  // (4*5*6)/6
  }
  SECTION("k in 3..6 pointwise against ((k-1)k(k+1)/6) a") {
    AnalyticFunction a = AnalyticFunction::polynomial({cplx(0.4, 0.2), cplx(-0.3, 0.1)}, disc);
    for (int k : {3, 4, 5, 6}) {
      PowerBasis pb = power_basis(a, k, kExpIcs);
      double factor = (k - 1.0) * k * (k + 1.0) / 6.0;
      for (cplx z : fixtures::sample_points(35, 10, 0.5))
        CHECK(rel_err(pb.ode.coeff(k - 2).value(z), factor * a.value(z)) < 1e-9);
    }
  }
}

TEST_CASE("dependent initial conditions are rejected") {
  Domain disc = Domain::disc();
  std::array<std::array<cplx, 2>, 2> dep = {{{cplx(1.0), cplx(2.0)}, {cplx(2.0), cplx(4.0)}}};
  CHECK_THROWS_AS(power_basis(AnalyticFunction::constant(1.0, disc), 3, dep),
                  std::invalid_argument);
}

TEST_CASE("product wronskian closed form") {
  Domain disc = Domain::disc();
  SECTION("scale and power constants") {
    AnalyticFunction a = AnalyticFunction::constant(1.0, disc);
    WronskianIdentity id2 = power_wronskian_identity(a, 2, 0.3);
    CHECK(id2.scale_c == 1);
    CHECK(id2.power_s == 1);
    WronskianIdentity id4 = power_wronskian_identity(a, 4, 0.3);
    CHECK(id4.scale_c == 12);  // 2^2 * 3
    CHECK(id4.power_s == 6);
  }
  SECTION("identity holds numerically for k in 2..6") {
    AnalyticFunction a = AnalyticFunction::constant(1.0, disc);
    for (int k : {2, 3, 4, 5, 6}) {
      WronskianIdentity id = power_wronskian_identity(a, k, cplx(0.25, -0.15));
      CHECK(rel_err(id.lhs, id.rhs) < 1e-8);
    }
  }
  SECTION("product wronskian is constant in z") {
    AnalyticFunction a = AnalyticFunction::polynomial({0.5, cplx(0, 0.3)}, disc);
    std::vector<cplx> values;
    for (cplx z : fixtures::sample_points(36, 20, 0.5))
      values.push_back(power_wronskian_identity(a, 4, z).lhs);
    cplx mean = 0.0;
    for (cplx v : values) mean += v;
    mean /= static_cast<double>(values.size());
    for (cplx v : values) CHECK(std::abs(v - mean) < 1e-8 * std::abs(mean));
  }
}

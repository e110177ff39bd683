#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace ldeconf;
using testutil::rel_err;

TEST_CASE("map specs round trip through json") {
  std::vector<ConformalMap> maps = {
      ConformalMap::mobius(1.0, cplx(0.2, -0.3), cplx(-0.1, 0.0), 1.0),
      ConformalMap::stolz_petal(0.5, std::polar(1.0, 0.3)),
      ConformalMap::horodisc(cplx(0.2, 0.6)),
      ConformalMap::sector(1.5, 0.0),
      ConformalMap::strip(0.8, -0.4),
  };
  for (const ConformalMap& T : maps) {
    ordered_json j = to_json(T);
    ConformalMap back = map_from_json(j);
    CHECK(back == T);
  }
}

TEST_CASE("json field names are stable") {
  ordered_json j = to_json(ConformalMap::sector(1.5, 0.0));
  CHECK(j["kind"] == "sector");
  CHECK(j["alpha"] == 1.5);
  CHECK(j["phi"] == 0.0);
  ConformalMap parsed = map_from_json(ordered_json::parse(R"({"kind":"sector","alpha":1.5,"phi":0.0})"));
  CHECK(parsed == ConformalMap::sector(1.5, 0.0));
}

TEST_CASE("bad maps are rejected with diagnostics") {
  CHECK_THROWS_AS(map_from_json(ordered_json::parse(R"({"kind":"saddle"})")), std::invalid_argument);
  CHECK_THROWS_AS(map_from_json(ordered_json::parse(R"({"alpha":1.0})")), std::invalid_argument);
  CHECK_THROWS_AS(map_from_json(ordered_json::parse(R"({"kind":"sector","alpha":2.5,"phi":0})")),
                  std::invalid_argument);
}

TEST_CASE("odes round trip through their descriptors") {
  ordered_json j = ordered_json::parse(R"({
    "order": 3,
    "coeffs": [
      {"family": "polynomial", "coeffs": [[0.1, 0.0], [0.0, 0.2]]},
      {"family": "constant", "value": [0.5, -0.25]}
    ],
    "domain": "disc"
  })");
  LinearOde ode = ode_from_json(j);
  CHECK(ode.order() == 3);
  CHECK(rel_err(ode.coeff(0).value(cplx(0.5, 0.0)), cplx(0.1, 0.1)) < 1e-14);
  CHECK(rel_err(ode.coeff(1).value(cplx(0.3, 0.3)), cplx(0.5, -0.25)) < 1e-14);
}

TEST_CASE("the example51 descriptor builds the half-plane coefficient") {
  ordered_json j = ordered_json::parse(R"({
    "order": 2,
    "coeffs": [{"family": "example51", "alpha": 1.5}],
    "domain": {"image": {"kind": "mobius", "a": [1,0], "b": [1,0], "c": [-1,0], "d": [1,0]}}
  })");
  LinearOde ode = ode_from_json(j);
  double alpha = 1.5;
  cplx w(2.0, 1.0);
  cplx want = (1.0 - alpha * alpha) / (4.0 * w * w) - alpha * alpha * std::pow(w, cplx(2 * alpha - 2.0));
  CHECK(rel_err(ode.coeff(0).value(w), want) < 1e-12);
}

TEST_CASE("unknown families are rejected") {
  ordered_json j = ordered_json::parse(R"({"order":2,"coeffs":[{"family":"mystery"}],"domain":"disc"})");
  CHECK_THROWS_AS(ode_from_json(j), std::invalid_argument);
}

TEST_CASE("reports serialize to json with rows and fits") {
  OscillationReport rep = presets::run_expsum52(1.5, 0.8, 6);
  ordered_json j = to_json(rep);
  CHECK(j["order"] == 3);
  CHECK(j["rows"].size() == 6);
  CHECK(j["rows"][0].contains("I"));
  CHECK(j["rows"][0].contains("cor_N_sum"));
  CHECK(j["fitted_exponents"].contains("I"));
  CHECK(j["base_counts"].size() == 3);
  CHECK(j["cross_counts"].size() == 2);
}

TEST_CASE("analytic function jets are order-consistent") {
  // Lower-order jets are prefixes of higher-order jets at the same point.
  Domain disc = Domain::disc();
  auto g = testutil::rng(61);
  std::vector<AnalyticFunction> fns = {
      AnalyticFunction::polynomial({0.3, cplx(0, 1), 0.2}, disc),
      AnalyticFunction::rational({1.0, 0.5}, {1.0, -0.4}, disc),
      AnalyticFunction::exponential(cplx(0.3, -0.2), disc),
      AnalyticFunction::example51_coefficient(1.5, cplx(-2.0, 0.0), disc),
  };
  for (const AnalyticFunction& f : fns) {
    for (int rep = 0; rep < 5; ++rep) {
      cplx z = testutil::random_in_disc(g, 0.7);
      Jet lo = f.jet_at(z, 3);
      Jet hi = f.jet_at(z, 7);
      for (int m = 0; m <= 3; ++m) {
        double scale = std::max(std::abs(hi.coeff(m)), 1e-12);
        CHECK(std::abs(lo.coeff(m) - hi.coeff(m)) / scale < 1e-12);
      }
    }
  }
}

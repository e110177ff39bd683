#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace ldeconf;
using testutil::rel_err;

TEST_CASE("k=2 with zero coefficient and a mobius gives zero") {
  Domain rhp = Domain::image(ConformalMap::cayley());
  LinearOde ode(2, {AnalyticFunction::constant(0.0, rhp)}, rhp);
  LinearOde moved = transform_ode(ode, ConformalMap::cayley());
  for (cplx z : fixtures::sample_points(11, 20, 0.9))
    CHECK(std::abs(moved.coeff(0).value(z)) < 1e-12);
}

TEST_CASE("k=2 reduction to (a o T)(T')^2 + S_T/2 across the catalog") {
  auto maps = {ConformalMap::cayley(), ConformalMap::sector(1.5, 0.4),
               ConformalMap::strip(0.8, 0.0), ConformalMap::stolz_petal(0.5, 1.0),
               ConformalMap::horodisc(cplx(0.3, 0.2))};
  for (const ConformalMap& T : maps) {
    Domain dom = Domain::image(T);
    AnalyticFunction a =
        AnalyticFunction::polynomial({cplx(0.3, 0.1), cplx(-0.2, 0.0), cplx(0.05, 0.02)}, dom);
    LinearOde ode(2, {a}, dom);
    LinearOde moved = transform_ode(ode, T);
    for (cplx z : fixtures::sample_points(12, 25, 0.9)) {
      cplx tp = T.derivative(z);
      cplx want = a.value(T.eval(z)) * tp * tp + 0.5 * T.schwarzian(z);
      CHECK(rel_err(moved.coeff(0).value(z), want) < 1e-10);
    }
  }
}

TEST_CASE("half-plane power-exponential coefficient lands on its closed disc form") {
  double alpha = 1.5;
  ConformalMap T = ConformalMap::cayley();
  Domain rhp = Domain::image(T);
  LinearOde ode(2, {AnalyticFunction::example51_coefficient(alpha, 0.0, rhp)}, rhp);
  LinearOde moved = transform_ode(ode, T);
  for (cplx z : fixtures::sample_points(13, 50, 0.9)) {
    cplx one_m = 1.0 - z, one_p = 1.0 + z;
    cplx want = (1.0 - alpha * alpha) / ((1.0 - z * z) * (1.0 - z * z)) -
                4.0 * alpha * alpha * std::pow(one_p, cplx(2.0 * alpha - 2.0)) /
                    std::pow(one_m, cplx(2.0 * alpha + 2.0));
    CHECK(rel_err(moved.coeff(0).value(z), want) < 1e-9);
  }
}

TEST_CASE("top-slot relation matches its expanded form") {
  // (a_{k-2} o T)(T')^2 = b_{k-2} + C(k,2) h''/h + [k(k-1)(k-2)/2](T''/T')(h'/h)
  //                       + C(k,3) T'''/T' + 3 C(k,4) (T''/T')^2.
  int k = 4;
  ConformalMap T = ConformalMap::sector(1.2, 0.0);
  Domain dom = Domain::image(T);
  std::vector<AnalyticFunction> coeffs = {
      AnalyticFunction::polynomial({cplx(0.1, 0.0), cplx(0.2, 0.1)}, dom),
      AnalyticFunction::constant(cplx(0.0, 0.3), dom),
      AnalyticFunction::polynomial({cplx(-0.4, 0.0), cplx(0.0, 0.1)}, dom)};
  LinearOde ode(k, coeffs, dom);
  LinearOde moved = transform_ode(ode, T);
  for (cplx z : fixtures::sample_points(14, 20, 0.85)) {
    Jet jT = T.jet(z, k + 3);
    Jet tp = jT.derivative(1);
    Jet h = pow(tp, cplx(0.5 * (1.0 - k)));
    cplx hpp_h = (h.derivative(2) / h).value();
    cplx hp_h = (h.derivative(1) / h).value();
    cplx tpp_tp = (jT.derivative(2) / tp).value();
    cplx tppp_tp = (jT.derivative(3) / tp).value();
    cplx lhs = coeffs[static_cast<size_t>(k - 2)].value(jT.value()) * tp.value() * tp.value();
    cplx want_b = lhs - binomial(k, 2) * hpp_h - 0.5 * k * (k - 1.0) * (k - 2.0) * tpp_tp * hp_h -
                  binomial(k, 3) * tppp_tp - 3.0 * binomial(k, 4) * tpp_tp * tpp_tp;
    CHECK(rel_err(moved.coeff(k - 2).value(z), want_b) < 1e-9);
  }
}

TEST_CASE("pushforward through the identity returns the function") {
  Domain dom = Domain::image(ConformalMap::identity());
  AnalyticFunction f = AnalyticFunction::exponential(cplx(0.3, 0.8), dom);
  for (int k : {2, 3}) {
    SolutionEvaluator g = pushforward_solution(f, ConformalMap::identity(), k);
    for (cplx z : fixtures::sample_points(15, 20, 0.9)) {
      CHECK(rel_err(g.value(z), f.value(z)) < 1e-12);
    }
  }
}

TEST_CASE("pushforward of the half-plane pair matches the closed disc form") {
  double alpha = 1.5;
  ConformalMap T = ConformalMap::cayley();
  Domain rhp = Domain::image(T);
  for (int which : {1, 2}) {
    AnalyticFunction f = AnalyticFunction::example51_solution(which, alpha, 0.0, rhp);
    SolutionEvaluator g = pushforward_solution(f, T, 2);
    double sigma = which == 1 ? 1.0 : -1.0;
    for (cplx z : fixtures::sample_points(16, 30, 0.8)) {
      cplx u = (1.0 + z) / (1.0 - z);
      cplx want = std::sqrt(0.5) * std::pow(1.0 - z, cplx(0.5 * (1.0 + alpha))) *
                  std::pow(1.0 + z, cplx(0.5 * (1.0 - alpha))) *
                  std::exp(sigma * std::pow(u, cplx(alpha)));
      CHECK(rel_err(g.value(z), want) < 1e-10);
    }
  }
}

TEST_CASE("residual pins") {
  Domain disc = Domain::disc();
  LinearOde ode(2, {AnalyticFunction::constant(1.0, disc)}, disc);  // g'' + g = 0
  AnalyticFunction cosf(disc, [](cplx z, int order) {
    Jet zv = Jet::variable(z, order);
    Jet e1 = exp(cplx(0.0, 1.0) * zv), e2 = exp(cplx(0.0, -1.0) * zv);
    return 0.5 * (e1 + e2);
  });
  for (cplx z : fixtures::sample_points(17, 10, 0.9))
    CHECK(std::abs(residual(ode, cosf, z)) < 1e-10);

  // Perturb by z^2/2: the leading derivative gains a unit bump at 0.
  AnalyticFunction bad(disc, [](cplx z, int order) {
    Jet zv = Jet::variable(z, order);
    Jet e1 = exp(cplx(0.0, 1.0) * zv), e2 = exp(cplx(0.0, -1.0) * zv);
    return 0.5 * (e1 + e2) + 0.5 * zv * zv;
  });
  CHECK(std::abs(residual(ode, bad, 0.0)) > 0.3);
}

TEST_CASE("transformed equation annihilates the pushed-forward base") {
  std::vector<cplx> pts = fixtures::sample_points(18, 12, 0.9);
  for (const fixtures::MapCase& mc : fixtures::criterion_maps()) {
    Domain dom = Domain::image(mc.map);
    cplx z0 = mc.map.eval(0.0);
    for (int k : {2, 3, 4, 5}) {
      fixtures::TestSystem constant = fixtures::constant_system(k, dom);
      fixtures::TestSystem powerexp = fixtures::example51_system(k, 1.5, mc.offset, dom, z0);
      for (const fixtures::TestSystem* sys : {&constant, &powerexp}) {
        LinearOde moved = transform_ode(sys->ode, mc.map);
        for (size_t j : {size_t(0), sys->base.size() - 1}) {
          SolutionEvaluator g = pushforward_solution(sys->base[j], mc.map, k);
          for (cplx z : pts) CHECK(std::abs(residual(moved, g, z)) < 1e-8);
        }
      }
    }
  }
}

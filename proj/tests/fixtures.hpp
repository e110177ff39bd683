#pragma once

#include "test_util.hpp"

namespace fixtures {

using namespace ldeconf;

struct TestSystem {
  LinearOde ode;                       // equation on the image domain
  std::vector<AnalyticFunction> base;  // solution base on the image domain
};

// f^(k) - f = 0: coefficients (a_0,...,a_{k-2}) = (-1, 0, ..., 0), basis
// e^{w_j z} over the k-th roots of unity (distinct, nonzero, zero sum).
inline TestSystem constant_system(int k, const Domain& dom) {
  std::vector<AnalyticFunction> coeffs;
  coeffs.push_back(AnalyticFunction::constant(-1.0, dom));
  for (int j = 1; j <= k - 2; ++j) coeffs.push_back(AnalyticFunction::constant(0.0, dom));
  std::vector<AnalyticFunction> base;
  for (int j = 0; j < k; ++j)
    base.push_back(AnalyticFunction::exponential(std::polar(1.0, 2.0 * kPi * j / k), dom));
  return TestSystem{LinearOde(k, std::move(coeffs), dom), std::move(base)};
}

// The half-plane power-exponential family: for k = 2 the equation
// f'' + a f = 0 itself with its zero-free closed-form pair; for k > 2 the
// order-k equation solved by the k power products of that pair.
inline TestSystem example51_system(int k, double alpha, cplx offset, const Domain& dom, cplx z0) {
  AnalyticFunction a = AnalyticFunction::example51_coefficient(alpha, offset, dom);
  AnalyticFunction f1 = AnalyticFunction::example51_solution(1, alpha, offset, dom);
  AnalyticFunction f2 = AnalyticFunction::example51_solution(2, alpha, offset, dom);
  if (k == 2) return TestSystem{LinearOde(2, {a}, dom), {f1, f2}};
  PowerBasis pb = power_product_system(f1, f2, k, z0);
  std::vector<AnalyticFunction> base(pb.solutions.begin(), pb.solutions.end());
  return TestSystem{std::move(pb.ode), std::move(base)};
}

struct MapCase {
  ConformalMap map;
  cplx offset;  // shift for the power-exponential family on this image
};

inline std::vector<MapCase> criterion_maps() {
  return {
      MapCase{ConformalMap::cayley(), 0.0},
      MapCase{ConformalMap::sector(1.5, 0.0), 0.0},
      MapCase{ConformalMap::strip(1.0, 0.0), cplx(0.0, -2.0)},
      MapCase{ConformalMap::stolz_petal(0.5, 1.0), cplx(-2.0, 0.0)},
  };
}

inline std::vector<cplx> sample_points(unsigned seed, int count, double radius) {
  auto g = testutil::rng(seed);
  std::vector<cplx> pts;
  pts.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) pts.push_back(testutil::random_in_disc(g, radius));
  return pts;
}

}  // namespace fixtures

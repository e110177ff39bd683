#pragma once

#include <span>
#include <vector>

#include "analytic.hpp"

namespace ldeconf {

// g^(k) + b_{k-2} g^(k-2) + ... + b_1 g' + b_0 g = 0 in normalized form:
// there is never a g^(k-1) term, so an order-k equation carries k-1
// coefficient functions, all living on the equation's domain.
class LinearOde {
 public:
  LinearOde(int order, std::vector<AnalyticFunction> coeffs, Domain domain)
      : order_(order), coeffs_(std::move(coeffs)), domain_(std::move(domain)) {
    if (order_ < 2) throw std::invalid_argument("LinearOde: order must be >= 2");
    if (static_cast<int>(coeffs_.size()) != order_ - 1)
      throw std::invalid_argument("LinearOde: expected order - 1 coefficient functions");
    for (const AnalyticFunction& c : coeffs_)
      if (!(c.domain() == domain_))
        throw std::invalid_argument("LinearOde: coefficient domain differs from the equation domain");
  }

  int order() const { return order_; }
  const AnalyticFunction& coeff(int j) const { return coeffs_.at(static_cast<size_t>(j)); }
  const std::vector<AnalyticFunction>& coeffs() const { return coeffs_; }
  const Domain& domain() const { return domain_; }

 private:
  int order_;
  std::vector<AnalyticFunction> coeffs_;
  Domain domain_;
};

// g^(k)(z) + sum_j b_j(z) g^(j)(z), divided by max_j |b_j g^(j)| + |g^(k)|
// whenever that scale is positive.
inline cplx residual(const LinearOde& ode, const AnalyticFunction& g, cplx z) {
  int k = ode.order();
  Jet jg = g.jet_at(z, k);
  cplx num = jg.derivative_value(k);
  double scale = std::abs(num);
  double max_term = 0.0;
  for (int j = 0; j <= k - 2; ++j) {
    cplx term = ode.coeff(j).value(z) * jg.derivative_value(j);
    num += term;
    max_term = std::max(max_term, std::abs(term));
  }
  double den = max_term + scale;
  return den > 0.0 ? num / den : num;
}

}  // namespace ldeconf

#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "domain.hpp"
#include "jet.hpp"

namespace ldeconf {

// Handle to an analytic function: produces a jet of any requested order at
// any point of its domain.  Values are immutable and queries are pure, so
// handles may be shared across threads freely.
class AnalyticFunction {
 public:
  using JetFn = std::function<Jet(cplx, int)>;

  AnalyticFunction(Domain domain, JetFn fn) : domain_(std::move(domain)), fn_(std::move(fn)) {}

  const Domain& domain() const { return domain_; }

  Jet jet_at(cplx z, int order) const {
    if (order < 0) throw std::invalid_argument("jet_at: negative order");
    return fn_(z, order);
  }

  cplx value(cplx z) const { return fn_(z, 0).value(); }
  cplx operator()(cplx z) const { return value(z); }

  cplx derivative_value(cplx z, int m) const { return fn_(z, m).derivative_value(m); }

  AnalyticFunction derivative(int m = 1) const {
    JetFn base = fn_;
    return AnalyticFunction(domain_, [base, m](cplx z, int order) {
      return base(z, order + m).derivative(m);
    });
  }

  static AnalyticFunction constant(cplx value, Domain domain) {
    return AnalyticFunction(std::move(domain),
                            [value](cplx z, int order) { return Jet::constant(value, z, order); });
  }

  // p(z) = sum_m coeffs[m] z^m.
  static AnalyticFunction polynomial(std::vector<cplx> coeffs, Domain domain) {
    if (coeffs.empty()) coeffs.push_back(0.0);
    return AnalyticFunction(std::move(domain), [coeffs](cplx z, int order) {
      Jet zv = Jet::variable(z, order);
      Jet acc = Jet::constant(coeffs.back(), z, order);
      for (size_t m = coeffs.size() - 1; m-- > 0;) acc = acc * zv + coeffs[m];
      return acc;
    });
  }

  static AnalyticFunction rational(std::vector<cplx> num, std::vector<cplx> den, Domain domain) {
    AnalyticFunction p = polynomial(std::move(num), domain);
    AnalyticFunction q = polynomial(std::move(den), domain);
    return AnalyticFunction(std::move(domain), [p, q](cplx z, int order) {
      return p.jet_at(z, order) / q.jet_at(z, order);
    });
  }

  // exp(rate z).
  static AnalyticFunction exponential(cplx rate, Domain domain) {
    return AnalyticFunction(std::move(domain), [rate](cplx z, int order) {
      return exp(rate * Jet::variable(z, order));
    });
  }

  // a(w) = (1 - alpha^2) / (4 (w - offset)^2) - alpha^2 (w - offset)^{2 alpha - 2}.
  // The domain must keep w - offset away from the branch cut (-inf, 0].
  static AnalyticFunction example51_coefficient(double alpha, cplx offset, Domain domain) {
    return AnalyticFunction(std::move(domain), [alpha, offset](cplx w, int order) {
      Jet v = Jet::variable(w, order) - offset;
      Jet lead = (0.25 * (1.0 - alpha * alpha)) / (v * v);
      Jet tail = (alpha * alpha) * pow(v, cplx(2.0 * alpha - 2.0));
      return lead - tail;
    });
  }

  // f(w) = (w - offset)^{(1 - alpha)/2} exp(sigma (w - offset)^alpha), sigma = +1 or -1:
  // the zero-free pair solving f'' + a f = 0 for the coefficient above.
  static AnalyticFunction example51_solution(int which, double alpha, cplx offset, Domain domain) {
    if (which != 1 && which != 2)
      throw std::invalid_argument("example51_solution: which must be 1 or 2");
    double sigma = which == 1 ? 1.0 : -1.0;
    return AnalyticFunction(std::move(domain), [alpha, offset, sigma](cplx w, int order) {
      Jet v = Jet::variable(w, order) - offset;
      return pow(v, cplx(0.5 * (1.0 - alpha))) * exp(sigma * pow(v, cplx(alpha)));
    });
  }

  friend AnalyticFunction operator+(const AnalyticFunction& f, const AnalyticFunction& g) {
    return AnalyticFunction(f.domain_, [f, g](cplx z, int order) {
      return f.jet_at(z, order) + g.jet_at(z, order);
    });
  }
  friend AnalyticFunction operator-(const AnalyticFunction& f, const AnalyticFunction& g) {
    return AnalyticFunction(f.domain_, [f, g](cplx z, int order) {
      return f.jet_at(z, order) - g.jet_at(z, order);
    });
  }
  friend AnalyticFunction operator*(const AnalyticFunction& f, const AnalyticFunction& g) {
    return AnalyticFunction(f.domain_, [f, g](cplx z, int order) {
      return f.jet_at(z, order) * g.jet_at(z, order);
    });
  }
  friend AnalyticFunction operator*(cplx s, const AnalyticFunction& f) {
    return AnalyticFunction(f.domain_, [f, s](cplx z, int order) { return s * f.jet_at(z, order); });
  }
  friend AnalyticFunction operator*(const AnalyticFunction& f, cplx s) { return s * f; }
  friend AnalyticFunction operator+(const AnalyticFunction& f, cplx s) {
    return AnalyticFunction(f.domain_, [f, s](cplx z, int order) { return f.jet_at(z, order) + s; });
  }

 private:
  Domain domain_;
  JetFn fn_;
};

// An analytic function that solves a differential equation, together with
// the data that pinned it down: the base point and the derivative values
// g(z0), ..., g^(k-1)(z0) prescribed there.
class SolutionEvaluator : public AnalyticFunction {
 public:
  SolutionEvaluator(AnalyticFunction fn, cplx base_point, std::vector<cplx> initial_values)
      : AnalyticFunction(std::move(fn)),
        base_point_(base_point),
        initial_values_(std::move(initial_values)) {}

  cplx base_point() const { return base_point_; }
  const std::vector<cplx>& initial_values() const { return initial_values_; }

 private:
  cplx base_point_;
  std::vector<cplx> initial_values_;
};

}  // namespace ldeconf

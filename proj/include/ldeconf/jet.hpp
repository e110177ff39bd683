#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "core.hpp"

namespace ldeconf {

// Truncated Taylor expansion of an analytic function about a fixed center.
// coeff(m) stores f^(m)(center)/m!.  Binary operations require identical
// centers (compared exactly) and truncate to the shorter operand, so the
// reachable order propagates through any expression automatically.
class Jet {
 public:
  Jet(cplx center, std::vector<cplx> coeffs) : center_(center), coef_(std::move(coeffs)) {
    if (coef_.empty()) throw std::invalid_argument("Jet: needs at least the constant term");
    for (cplx c : coef_)
      if (!is_finite(c)) throw std::invalid_argument("Jet: non-finite coefficient");
  }

  static Jet constant(cplx value, cplx center, int order) {
    std::vector<cplx> c(static_cast<size_t>(order) + 1, cplx(0.0));
    c[0] = value;
    return Jet(center, std::move(c));
  }

  // Expansion of the identity map z at `center`.
  static Jet variable(cplx center, int order) {
    std::vector<cplx> c(static_cast<size_t>(order) + 1, cplx(0.0));
    c[0] = center;
    if (order >= 1) c[1] = 1.0;
    return Jet(center, std::move(c));
  }

  int order() const { return static_cast<int>(coef_.size()) - 1; }
  cplx center() const { return center_; }
  cplx value() const { return coef_[0]; }
  cplx coeff(int m) const { return coef_[static_cast<size_t>(m)]; }
  std::span<const cplx> coeffs() const { return coef_; }

  // f^(m)(center) = m! coeff(m).
  cplx derivative_value(int m) const {
    if (m > order()) throw std::invalid_argument("Jet: derivative order exceeds jet order");
    double f = 1.0;
    for (int t = 2; t <= m; ++t) f *= t;
    return coef_[static_cast<size_t>(m)] * f;
  }

  Jet truncated(int new_order) const {
    if (new_order >= order()) return *this;
    if (new_order < 0) throw std::invalid_argument("Jet: negative truncation order");
    return Jet(center_, std::vector<cplx>(coef_.begin(), coef_.begin() + new_order + 1));
  }

  // Jet of the m-th derivative; the order drops by m.
  Jet derivative(int m = 1) const {
    if (m < 0) throw std::invalid_argument("Jet: negative derivative order");
    if (m > order()) throw std::invalid_argument("Jet: derivative order exceeds jet order");
    if (m == 0) return *this;
    std::vector<cplx> c(coef_.size() - static_cast<size_t>(m));
    for (size_t j = 0; j < c.size(); ++j) {
      double f = 1.0;
      for (int t = 1; t <= m; ++t) f *= static_cast<double>(j + static_cast<size_t>(t));
      c[j] = coef_[j + static_cast<size_t>(m)] * f;
    }
    return Jet(center_, std::move(c));
  }

  // Horner evaluation at z; meaningful inside the disc of convergence.
  cplx eval(cplx z) const {
    cplx h = z - center_;
    cplx acc = coef_.back();
    for (size_t j = coef_.size() - 1; j-- > 0;) acc = acc * h + coef_[j];
    return acc;
  }

  // Expansion about a nearby point, truncated to new_order.  This is the
  // explicit re-centering step; it is never performed implicitly.
  Jet recentered(cplx new_center, int new_order) const {
    cplx d = new_center - center_;
    int n = order();
    int m_out = std::min(new_order, n);
    std::vector<cplx> out(static_cast<size_t>(m_out) + 1, cplx(0.0));
    // c'_m = sum_{j>=m} c_j C(j, m) d^(j-m), accumulated Horner-style per m.
    for (int m = 0; m <= m_out; ++m) {
      cplx acc = coef_[static_cast<size_t>(n)] * binomial_at(n, m);
      for (int j = n - 1; j >= m; --j) acc = acc * d + coef_[static_cast<size_t>(j)] * binomial_at(j, m);
      out[static_cast<size_t>(m)] = acc;
    }
    return Jet(new_center, std::move(out));
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    require_same_center(a, b);
    int n = std::min(a.order(), b.order());
    std::vector<cplx> c(static_cast<size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) c[static_cast<size_t>(m)] = a.coeff(m) + b.coeff(m);
    return Jet(a.center_, std::move(c));
  }

  friend Jet operator-(const Jet& a, const Jet& b) {
    require_same_center(a, b);
    int n = std::min(a.order(), b.order());
    std::vector<cplx> c(static_cast<size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) c[static_cast<size_t>(m)] = a.coeff(m) - b.coeff(m);
    return Jet(a.center_, std::move(c));
  }

  // Cauchy product truncated at min(order_a, order_b).
  friend Jet operator*(const Jet& a, const Jet& b) {
    require_same_center(a, b);
    int n = std::min(a.order(), b.order());
    std::vector<cplx> c(static_cast<size_t>(n) + 1, cplx(0.0));
    for (int m = 0; m <= n; ++m) {
      cplx s = 0.0;
      for (int p = std::max(0, m - b.order()); p <= std::min(m, a.order()); ++p)
        s += a.coeff(p) * b.coeff(m - p);
      c[static_cast<size_t>(m)] = s;
    }
    return Jet(a.center_, std::move(c));
  }

  // Series quotient; requires b(center) != 0.
  friend Jet operator/(const Jet& a, const Jet& b) {
    require_same_center(a, b);
    if (b.value() == cplx(0.0))
      throw std::invalid_argument("Jet division: divisor has vanishing constant term");
    int n = std::min(a.order(), b.order());
    std::vector<cplx> q(static_cast<size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) {
      cplx s = a.coeff(m);
      for (int p = 1; p <= m; ++p) s -= b.coeff(p) * q[static_cast<size_t>(m - p)];
      q[static_cast<size_t>(m)] = s / b.value();
    }
    return Jet(a.center_, std::move(q));
  }

  friend Jet operator-(const Jet& a) {
    std::vector<cplx> c(a.coef_);
    for (cplx& v : c) v = -v;
    return Jet(a.center_, std::move(c));
  }

  friend Jet operator+(const Jet& a, cplx s) {
    std::vector<cplx> c(a.coef_);
    c[0] += s;
    return Jet(a.center_, std::move(c));
  }
  friend Jet operator+(cplx s, const Jet& a) { return a + s; }
  friend Jet operator-(const Jet& a, cplx s) { return a + (-s); }
  friend Jet operator-(cplx s, const Jet& a) { return (-a) + s; }
  friend Jet operator*(const Jet& a, cplx s) {
    std::vector<cplx> c(a.coef_);
    for (cplx& v : c) v *= s;
    return Jet(a.center_, std::move(c));
  }
  friend Jet operator*(cplx s, const Jet& a) { return a * s; }
  friend Jet operator/(const Jet& a, cplx s) { return a * (cplx(1.0) / s); }
  friend Jet operator/(cplx s, const Jet& a) { return Jet::constant(s, a.center_, a.order()) / a; }

 private:
  static void require_same_center(const Jet& a, const Jet& b) {
    if (a.center_ != b.center_) throw std::invalid_argument("Jet: center mismatch");
  }
  static double binomial_at(int n, int k) {
    double r = 1.0;
    for (int t = 1; t <= k; ++t) r = r * (n - k + t) / t;
    return r;
  }

  cplx center_;
  std::vector<cplx> coef_;
};

// a^p for non-negative integer p by repeated multiplication (branch-free).
inline Jet int_pow(const Jet& a, int p) {
  if (p < 0) throw std::invalid_argument("int_pow: negative exponent");
  Jet acc = Jet::constant(1.0, a.center(), a.order());
  Jet base = a;
  int e = p;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

inline Jet exp(const Jet& x) {
  int n = x.order();
  std::vector<cplx> e(static_cast<size_t>(n) + 1);
  e[0] = std::exp(x.value());
  for (int m = 1; m <= n; ++m) {
    cplx s = 0.0;
    for (int p = 1; p <= m; ++p) s += static_cast<double>(p) * x.coeff(p) * e[static_cast<size_t>(m - p)];
    e[static_cast<size_t>(m)] = s / static_cast<double>(m);
  }
  return Jet(x.center(), std::move(e));
}

// Logarithm with a caller-chosen constant term (some branch of log a(center)).
inline Jet log_with_value(const Jet& a, cplx log0) {
  if (a.value() == cplx(0.0))
    throw std::invalid_argument("Jet log: vanishing constant term");
  int n = a.order();
  std::vector<cplx> l(static_cast<size_t>(n) + 1);
  l[0] = log0;
  for (int m = 1; m <= n; ++m) {
    cplx s = a.coeff(m);
    for (int p = 1; p < m; ++p)
      s -= (static_cast<double>(p) / static_cast<double>(m)) * l[static_cast<size_t>(p)] * a.coeff(m - p);
    l[static_cast<size_t>(m)] = s / a.value();
  }
  return Jet(a.center(), std::move(l));
}

inline Jet log(const Jet& a) { return log_with_value(a, std::log(a.value())); }

// a^beta = exp(beta log a).  The constant term uses the principal branch
// unless branch_ref names the wanted value of a(center)^beta, in which case
// the matching branch of the logarithm is selected (and checked).
inline Jet pow(const Jet& a, cplx beta, std::optional<cplx> branch_ref = std::nullopt) {
  if (a.value() == cplx(0.0))
    throw std::invalid_argument("Jet pow: vanishing constant term");
  cplx log0 = std::log(a.value());
  if (branch_ref) {
    const cplx two_pi_i(0.0, 2.0 * kPi);
    int best_s = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int s = -64; s <= 64; ++s) {
      cplx cand = std::exp(beta * (log0 + two_pi_i * static_cast<double>(s)));
      double d = std::abs(cand - *branch_ref);
      if (d < best) {
        best = d;
        best_s = s;
      }
    }
    double scale = std::max(std::abs(*branch_ref), 1e-300);
    if (best / scale > 1e-8)
      throw BranchError("Jet pow: branch_ref is not a branch value of a(center)^beta");
    log0 += two_pi_i * static_cast<double>(best_s);
  }
  return exp(beta * log_with_value(a, log0));
}

// Jet of outer(inner(.)) about inner's center; requires inner(center) to
// equal outer's center exactly.  Order is the shorter of the two.
inline Jet compose(const Jet& outer, const Jet& inner) {
  if (inner.value() != outer.center())
    throw std::invalid_argument("Jet compose: inner constant term differs from outer center");
  int n = std::min(outer.order(), inner.order());
  Jet u = (inner - inner.value()).truncated(n);  // vanishing constant term
  Jet acc = Jet::constant(outer.coeff(outer.order()), inner.center(), n);
  for (int m = outer.order() - 1; m >= 0; --m) acc = acc * u + outer.coeff(m);
  return acc;
}

}  // namespace ldeconf

#pragma once

#include <array>

#include "taylor.hpp"

namespace ldeconf {

namespace detail {

// Gaussian elimination over truncated series, pivoting on |constant term|.
inline std::vector<Jet> solve_jet_system(std::vector<std::vector<Jet>> A, std::vector<Jet> rhs) {
  const size_t n = A.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    double best = std::abs(A[col][col].value());
    for (size_t r = col + 1; r < n; ++r) {
      double v = std::abs(A[r][col].value());
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (!(best > 0.0)) throw std::runtime_error("solve_jet_system: singular leading coefficient");
    std::swap(A[col], A[piv]);
    std::swap(rhs[col], rhs[piv]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      Jet factor = A[r][col] / A[col][col];
      for (size_t c = col; c < n; ++c) A[r][c] = A[r][c] - factor * A[col][c];
      rhs[r] = rhs[r] - factor * rhs[col];
    }
  }
  std::vector<Jet> x;
  x.reserve(n);
  for (size_t i = 0; i < n; ++i) x.push_back(rhs[i] / A[i][i]);
  return x;
}

inline Jet jet_determinant(std::vector<std::vector<Jet>> A) {
  const size_t n = A.size();
  if (n == 0) throw std::invalid_argument("jet_determinant: empty matrix");
  Jet det = Jet::constant(1.0, A[0][0].center(), A[0][0].order());
  double sign = 1.0;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    double best = std::abs(A[col][col].value());
    for (size_t r = col + 1; r < n; ++r) {
      double v = std::abs(A[r][col].value());
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (!(best > 0.0)) return Jet::constant(0.0, A[0][0].center(), 0);
    if (piv != col) {
      std::swap(A[col], A[piv]);
      sign = -sign;
    }
    for (size_t r = col + 1; r < n; ++r) {
      Jet factor = A[r][col] / A[col][col];
      for (size_t c = col; c < n; ++c) A[r][c] = A[r][c] - factor * A[col][c];
    }
    det = det * A[col][col];
  }
  return sign * det;
}

}  // namespace detail

// Determinant of [g_i^(j)(z)], j = 0..n-1, for n evaluators.
template <class Range>
cplx wronskian(const Range& evaluators, cplx z) {
  std::vector<std::vector<cplx>> m;
  size_t n = 0;
  for (const auto& g : evaluators) {
    (void)g;
    ++n;
  }
  if (n == 0) throw std::invalid_argument("wronskian: empty family");
  m.reserve(n);
  for (const auto& g : evaluators) {
    Jet jg = g.jet_at(z, static_cast<int>(n) - 1);
    std::vector<cplx> col;
    col.reserve(n);
    for (size_t j = 0; j < n; ++j) col.push_back(jg.derivative_value(static_cast<int>(j)));
    m.push_back(std::move(col));
  }
  // m[i][j] = g_i^(j); LU with partial pivoting.
  cplx det = 1.0;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    double best = std::abs(m[col][col]);
    for (size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > best) {
        best = std::abs(m[r][col]);
        piv = r;
      }
    if (!(best > 0.0)) return 0.0;
    if (piv != col) {
      std::swap(m[col], m[piv]);
      det = -det;
    }
    for (size_t r = col + 1; r < n; ++r) {
      cplx f = m[r][col] / m[col][col];
      for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
    det *= m[col][col];
  }
  return det;
}

struct PowerBasis {
  LinearOde ode;                             // order k; coefficients recovered pointwise
  std::vector<SolutionEvaluator> solutions;  // f1^{k-1-m} f2^m, m = 0..k-1
};

namespace detail {

// Coefficients a_0..a_{k-2} of the order-k equation solved by all k power
// products, obtained pointwise from the first k-1 products; the last product
// is kept as a consistency check on the same linear relations.
struct PowerCoeffState {
  AnalyticFunction f1, f2;
  int k;
  double check_tol;

  std::vector<Jet> at(cplx z, int order) const {
    const int need = order + k;
    Jet j1 = f1.jet_at(z, need);
    Jet j2 = f2.jet_at(z, need);
    std::vector<Jet> products;
    products.reserve(static_cast<size_t>(k));
    for (int m = 0; m <= k - 1; ++m) products.push_back(int_pow(j1, k - 1 - m) * int_pow(j2, m));

    std::vector<std::vector<Jet>> A;
    std::vector<Jet> rhs;
    for (int m = 0; m <= k - 2; ++m) {
      std::vector<Jet> row;
      row.reserve(static_cast<size_t>(k) - 1);
      for (int j = 0; j <= k - 2; ++j) row.push_back(products[static_cast<size_t>(m)].derivative(j));
      A.push_back(std::move(row));
      rhs.push_back(-products[static_cast<size_t>(m)].derivative(k));
    }
    std::vector<Jet> a = solve_jet_system(std::move(A), std::move(rhs));

    // Unused k-th relation as a consistency check at the point itself.
    const Jet& last = products[static_cast<size_t>(k - 1)];
    cplx res = last.derivative_value(k);
    double scale = std::abs(res);
    for (int j = 0; j <= k - 2; ++j) {
      cplx term = a[static_cast<size_t>(j)].value() * last.derivative_value(j);
      res += term;
      scale = std::max(scale, std::abs(term));
    }
    if (scale > 0.0 && std::abs(res) / scale > check_tol)
      throw std::runtime_error("power basis: spare product relation violated (numerical breakdown)");

    for (Jet& aj : a) aj = aj.truncated(order);
    return a;
  }
};

}  // namespace detail

// The order-k equation solved by the k products f1^{k-1-m} f2^m of two
// independent solutions of f'' + a f = 0, plus those products as evaluators.
inline PowerBasis power_product_system(const AnalyticFunction& f1, const AnalyticFunction& f2,
                                       int k, cplx z0, double check_tol = 1e-7) {
  if (k < 2) throw std::invalid_argument("power_product_system: k must be >= 2");
  Domain dom = f1.domain();
  auto state = std::make_shared<detail::PowerCoeffState>(detail::PowerCoeffState{f1, f2, k, check_tol});
  std::vector<AnalyticFunction> coeffs;
  coeffs.reserve(static_cast<size_t>(k) - 1);
  for (int j = 0; j <= k - 2; ++j)
    coeffs.emplace_back(dom, [state, j](cplx z, int order) {
      return state->at(z, order)[static_cast<size_t>(j)];
    });
  LinearOde ode(k, std::move(coeffs), dom);

  std::vector<SolutionEvaluator> sols;
  sols.reserve(static_cast<size_t>(k));
  for (int m = 0; m <= k - 1; ++m) {
    AnalyticFunction prod(dom, [f1, f2, k, m](cplx z, int order) {
      return int_pow(f1.jet_at(z, order), k - 1 - m) * int_pow(f2.jet_at(z, order), m);
    });
    Jet at0 = prod.jet_at(z0, k - 1);
    std::vector<cplx> init;
    init.reserve(static_cast<size_t>(k));
    for (int j = 0; j <= k - 1; ++j) init.push_back(at0.derivative_value(j));
    sols.emplace_back(std::move(prod), z0, std::move(init));
  }
  return PowerBasis{std::move(ode), std::move(sols)};
}

// Same, but f1 and f2 are produced by the series solver from two
// independent initial-condition pairs (value, derivative) at z0.
inline PowerBasis power_basis(const AnalyticFunction& a, int k,
                              const std::array<std::array<cplx, 2>, 2>& ics, cplx z0 = 0.0,
                              TaylorOptions opts = {}) {
  cplx w = ics[0][0] * ics[1][1] - ics[0][1] * ics[1][0];
  double scale = std::max({std::abs(ics[0][0] * ics[1][1]), std::abs(ics[0][1] * ics[1][0]), 1.0});
  if (std::abs(w) <= 1e-12 * scale)
    throw std::invalid_argument("power_basis: initial conditions are linearly dependent");
  LinearOde second_order(2, {a}, a.domain());
  SolutionEvaluator f1 = taylor_solve(second_order, z0, {ics[0][0], ics[0][1]}, {}, opts);
  SolutionEvaluator f2 = taylor_solve(second_order, z0, {ics[1][0], ics[1][1]}, {}, opts);
  return power_product_system(f1, f2, k, z0);
}

struct WronskianIdentity {
  cplx lhs;            // W of the k power products at z
  cplx rhs;            // c_k W(f1, f2)^{s_k}
  long long scale_c;   // c_k = prod_{j=2}^{k-1} j^{k-j}
  long long power_s;   // s_k = k(k-1)/2
};

// W(f1^{k-1}, ..., f2^{k-1}) against its closed form c_k W(f1,f2)^{s_k};
// both sides are returned for comparison, c_k in exact integer arithmetic.
inline WronskianIdentity power_wronskian_identity(
    const AnalyticFunction& a, int k, cplx z,
    const std::array<std::array<cplx, 2>, 2>& ics = {{{cplx(1.0), cplx(0.0)}, {cplx(0.0), cplx(1.0)}}},
    cplx z0 = 0.0, TaylorOptions opts = {}) {
  if (k < 2) throw std::invalid_argument("power_wronskian_identity: k must be >= 2");
  LinearOde second_order(2, {a}, a.domain());
  SolutionEvaluator f1 = taylor_solve(second_order, z0, {ics[0][0], ics[0][1]}, {}, opts);
  SolutionEvaluator f2 = taylor_solve(second_order, z0, {ics[1][0], ics[1][1]}, {}, opts);
  PowerBasis pb = power_product_system(f1, f2, k, z0);

  long long ck = 1;
  for (int j = 2; j <= k - 1; ++j)
    for (int t = 0; t < k - j; ++t) ck *= j;
  long long sk = static_cast<long long>(k) * (k - 1) / 2;

  cplx lhs = wronskian(pb.solutions, z);
  std::array<AnalyticFunction, 2> pair = {f1, f2};
  cplx w12 = wronskian(pair, z);
  cplx w_pow = 1.0;
  for (long long t = 0; t < sk; ++t) w_pow *= w12;
  cplx rhs = static_cast<double>(ck) * w_pow;
  return WronskianIdentity{lhs, rhs, ck, sk};
}

}  // namespace ldeconf

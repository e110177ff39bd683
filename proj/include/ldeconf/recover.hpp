#pragma once

#include "basis.hpp"

namespace ldeconf {

// Recover the coefficients b_0(z)..b_{k-2}(z) of the normalized equation
// from any k independent solutions g_1..g_k, via the quotients
// y_i = g_i / g_k and the minors W_j of the derivative matrix
// (rows: derivative orders 1..k with order j omitted; columns: y_1..y_{k-1}):
//
//   b_j = sum_{i=0}^{k-j} (-1)^{2k-i} [i != k] C(k-i, k-i-j)
//         (W_{k-i}/W_k) ((W_k^{1/k})^{(k-i-j)} / W_k^{1/k}),
//
// with the k-th root taken on the principal branch at z.
template <class Range>
std::vector<cplx> recover_coefficients(const Range& solutions, cplx z) {
  std::vector<const AnalyticFunction*> g;
  for (const auto& s : solutions) g.push_back(&s);
  const int k = static_cast<int>(g.size());
  if (k < 2) throw std::invalid_argument("recover_coefficients: needs at least two solutions");

  const int order = 2 * k + 2;
  std::vector<Jet> jets;
  jets.reserve(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) jets.push_back(g[static_cast<size_t>(i)]->jet_at(z, order));

  // The recovered coefficients do not depend on the labeling of the base, so
  // divide by the solution largest at z; this keeps the quotients tame when
  // some base member nearly vanishes there.
  size_t piv = 0;
  for (size_t i = 1; i < jets.size(); ++i)
    if (std::abs(jets[i].value()) > std::abs(jets[piv].value())) piv = i;
  std::swap(jets[piv], jets.back());

  const Jet& gk = jets.back();
  if (std::abs(gk.value()) == 0.0)
    throw std::runtime_error("recover_coefficients: the base vanishes at this point; choose another point");

  std::vector<Jet> y;
  y.reserve(static_cast<size_t>(k) - 1);
  for (int i = 0; i < k - 1; ++i) y.push_back(jets[static_cast<size_t>(i)] / gk);

  // W_j, j = 1..k, as truncated series.
  std::vector<Jet> w;
  w.reserve(static_cast<size_t>(k));
  for (int j = 1; j <= k; ++j) {
    std::vector<std::vector<Jet>> m;
    m.reserve(static_cast<size_t>(k) - 1);
    for (int row = 1; row <= k; ++row) {
      if (row == j) continue;
      std::vector<Jet> r;
      r.reserve(static_cast<size_t>(k) - 1);
      for (int i = 0; i < k - 1; ++i) r.push_back(y[static_cast<size_t>(i)].derivative(row));
      m.push_back(std::move(r));
    }
    // Transpose convention is immaterial for the determinant.
    w.push_back(detail::jet_determinant(std::move(m)));
  }

  const Jet& wk = w[static_cast<size_t>(k - 1)];
  if (std::abs(wk.value()) == 0.0)
    throw std::runtime_error("recover_coefficients: W_k vanishes (dependent family or degenerate point)");

  Jet root = pow(wk, cplx(1.0 / k));
  std::vector<cplx> root_ratio(static_cast<size_t>(k) + 1);
  for (int m = 0; m <= k; ++m)
    root_ratio[static_cast<size_t>(m)] = (root.derivative(m) / root).value();

  std::vector<cplx> b(static_cast<size_t>(k) - 1, cplx(0.0));
  for (int j = 0; j <= k - 2; ++j) {
    cplx acc = 0.0;
    for (int i = 0; i <= k - j; ++i) {
      if (i == k) continue;
      double sign = ((2 * k - i) % 2 == 0) ? 1.0 : -1.0;
      cplx ratio = (w[static_cast<size_t>(k - i - 1)] / wk).value();
      acc += sign * binomial(k - i, k - i - j) * ratio * root_ratio[static_cast<size_t>(k - i - j)];
    }
    b[static_cast<size_t>(j)] = acc;
  }
  return b;
}

}  // namespace ldeconf

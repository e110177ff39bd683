#pragma once

#include <mutex>

#include "bell.hpp"
#include "lde.hpp"

namespace ldeconf {

// Argument of T' at z, continued from the principal value at 0 along the
// segment [0, z].  Refines until the unwrapped endpoint stabilizes and no
// sample-to-sample jump exceeds the tracking threshold.
inline double continued_derivative_arg(const ConformalMap& T, cplx z) {
  double prev_end = std::numeric_limits<double>::quiet_NaN();
  for (int n = 32; n <= (1 << 15); n *= 2) {
    double u = std::arg(T.derivative(0.0));
    double last = u;
    bool smooth = true;
    cplx prev_tp = T.derivative(0.0);
    for (int i = 1; i <= n; ++i) {
      cplx t = z * (static_cast<double>(i) / n);
      cplx tp = T.derivative(t);
      double raw = std::arg(tp);
      double k = std::round((last - raw) / (2.0 * kPi));
      double cur = raw + 2.0 * kPi * k;
      if (std::abs(cur - last) > kPi / 3.0 || std::abs(tp / prev_tp - 1.0) > 0.1) smooth = false;
      last = cur;
      prev_tp = tp;
    }
    if (smooth && std::isfinite(prev_end) && std::abs(last - prev_end) < 1e-9) return last;
    prev_end = last;
  }
  throw BranchError("continued_derivative_arg: branch of T' could not be tracked along the path");
}

// Value of (T')^exponent at z on the branch anchored principal at 0.
inline cplx continued_derivative_power(const ConformalMap& T, cplx z, double exponent) {
  cplx tp = T.derivative(z);
  cplx logv(std::log(std::abs(tp)), continued_derivative_arg(T, z));
  return std::exp(exponent * logv);
}

namespace detail {

// Shared state for the coefficients of a transformed equation.  All the
// pulled-back coefficients at one point come out of a single pass, so a
// one-slot cache keyed on (z, order) removes the k-1-fold recomputation.
struct TransformState {
  LinearOde source;
  ConformalMap map;

  mutable std::mutex mu;
  mutable bool cached = false;
  mutable cplx cached_z{};
  mutable int cached_order = -1;
  mutable std::vector<Jet> cached_jets;

  TransformState(LinearOde ode, ConformalMap T) : source(std::move(ode)), map(std::move(T)) {}

  std::vector<Jet> at(cplx z, int order) const {
    {
      std::lock_guard<std::mutex> lock(mu);
      if (cached && cached_z == z && cached_order == order) return cached_jets;
    }
    std::vector<Jet> jets = compute(z, order);
    {
      std::lock_guard<std::mutex> lock(mu);
      cached = true;
      cached_z = z;
      cached_order = order;
      cached_jets = jets;
    }
    return jets;
  }

  // Solve the triangular coefficient relations downward from the top.  The
  // relation for slot l reads
  //
  //   (a_l o T)(T')^{k-l} = sum_{j=l}^{k-1} b_j [ sum_{i=l}^{j} C(j,i)
  //                           B_{i,l}(T',...,T^{(i-l+1)}) / (T')^l * h^{(j-i)}/h ]
  //                       + sum_{i=l}^{k-1} C(k,i) B_{i,l}(...) / (T')^l * h^{(k-i)}/h
  //                       + B_{k,l}(...) / (T')^l
  //
  // with h = (T')^{(1-k)/2} and unit weight on b_l, while slot 0 closes with
  //   (a_0 o T)(T')^k = h^(k)/h + b_{k-2} h^(k-2)/h + ... + b_1 h'/h + b_0.
  // The top coefficient b_{k-1} cancels identically and is never formed.
  // Only the ratios h^(m)/h enter, so the branch of h is immaterial here.
  std::vector<Jet> compute(cplx z, int order) const {
    const int k = source.order();
    const int N = order + k + 2;
    Jet jT = map.jet(z, N + 1);
    std::vector<Jet> td(static_cast<size_t>(k) + 2, jT);  // td[m] = jet of T^(m)
    for (int m = 1; m <= k + 1; ++m) td[static_cast<size_t>(m)] = jT.derivative(m);

    Jet h = pow(td[1], cplx(0.5 * (1.0 - k)));
    std::vector<Jet> hr;  // hr[m] = h^(m)/h
    hr.reserve(static_cast<size_t>(k) + 1);
    for (int m = 0; m <= k; ++m) hr.push_back(h.derivative(m) / h);

    auto bell_ratio = [&](int i, int l) -> Jet {
      std::vector<Jet> args(td.begin() + 1, td.begin() + 1 + (i - l + 1));
      return bell_polynomial<Jet>(i, l, args) / int_pow(td[1], l);
    };

    cplx w = jT.value();
    Jet zero = Jet::constant(0.0, z, N);
    std::vector<Jet> b(static_cast<size_t>(k), zero);  // b[k-1] stays zero

    for (int l = k - 2; l >= 1; --l) {
      Jet lhs = compose(source.coeff(l).jet_at(w, N + 1), jT) * int_pow(td[1], k - l);
      Jet known = zero;
      for (int j = l + 1; j <= k - 2; ++j) {
        Jet bracket = zero;
        for (int i = l; i <= j; ++i)
          bracket = bracket + binomial(j, i) * (bell_ratio(i, l) * hr[static_cast<size_t>(j - i)]);
        known = known + b[static_cast<size_t>(j)] * bracket;
      }
      Jet tail = bell_ratio(k, l);
      for (int i = l; i <= k - 1; ++i)
        tail = tail + binomial(k, i) * (bell_ratio(i, l) * hr[static_cast<size_t>(k - i)]);
      b[static_cast<size_t>(l)] = lhs - known - tail;
    }

    Jet lhs0 = compose(source.coeff(0).jet_at(w, N + 1), jT) * int_pow(td[1], k);
    Jet acc = hr[static_cast<size_t>(k)];
    for (int j = 1; j <= k - 2; ++j) acc = acc + b[static_cast<size_t>(j)] * hr[static_cast<size_t>(j)];
    b[0] = lhs0 - acc;

    std::vector<Jet> out;
    out.reserve(static_cast<size_t>(k) - 1);
    for (int j = 0; j <= k - 2; ++j) out.push_back(b[static_cast<size_t>(j)].truncated(order));
    return out;
  }
};

}  // namespace detail

// Pull an equation on T(disc) back to the disc: returns the equation whose
// solutions are (f o T) (T')^{(1-k)/2} for solutions f of the input.
inline LinearOde transform_ode(const LinearOde& ode, const ConformalMap& T) {
  auto state = std::make_shared<detail::TransformState>(ode, T);
  int k = ode.order();
  std::vector<AnalyticFunction> bs;
  bs.reserve(static_cast<size_t>(k) - 1);
  for (int j = 0; j <= k - 2; ++j) {
    bs.emplace_back(Domain::disc(), [state, j](cplx z, int order) {
      return state->at(z, order)[static_cast<size_t>(j)];
    });
  }
  return LinearOde(k, std::move(bs), Domain::disc());
}

// g = (f o T) (T')^{(1-k)/2} as an evaluator on the disc.  For odd k the
// factor is an exact integer power; for even k the square-root branch is
// anchored principal at 0 and continued along [0, z] per query.
inline SolutionEvaluator pushforward_solution(const AnalyticFunction& f, const ConformalMap& T,
                                              int k) {
  if (k < 2) throw std::invalid_argument("pushforward_solution: k must be >= 2");
  const bool integer_power = (k % 2 == 1);
  const double exponent = 0.5 * (1.0 - k);
  AnalyticFunction::JetFn fn = [f, T, k, integer_power, exponent](cplx z, int order) {
    Jet jT = T.jet(z, order + 1);
    Jet comp = compose(f.jet_at(jT.value(), order), jT.truncated(order));
    Jet tp = jT.derivative(1);
    Jet h = integer_power ? Jet::constant(1.0, z, order) / int_pow(tp, (k - 1) / 2)
                          : pow(tp, cplx(exponent), continued_derivative_power(T, z, exponent));
    return comp * h;
  };
  AnalyticFunction g(Domain::disc(), fn);
  Jet start = g.jet_at(0.0, k - 1);
  std::vector<cplx> init;
  init.reserve(static_cast<size_t>(k));
  for (int m = 0; m <= k - 1; ++m) init.push_back(start.derivative_value(m));
  return SolutionEvaluator(std::move(g), 0.0, std::move(init));
}

}  // namespace ldeconf

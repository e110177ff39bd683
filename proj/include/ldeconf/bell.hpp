#pragma once

#include <span>
#include <type_traits>
#include <vector>

#include "core.hpp"

namespace ldeconf {
namespace detail {

// Visit every index vector (j_1,...,j_L), L = i-n+1, of non-negative
// integers with j_1 + 2 j_2 + ... + L j_L = i and j_1 + ... + j_L = n.
// The last index varies outermost.
template <class F>
void for_each_partition_index(int i, int n, F&& visit) {
  const int len = i - n + 1;
  std::vector<int> idx(static_cast<size_t>(len), 0);
  auto rec = [&](auto&& self, int m, int rem_i, int rem_n) -> void {
    if (m == 1) {
      if (rem_i == rem_n && rem_n >= 0) {
        idx[0] = rem_n;
        visit(static_cast<const std::vector<int>&>(idx));
      }
      return;
    }
    int top = std::min(rem_n, rem_i / m);
    for (int j = top; j >= 0; --j) {
      idx[static_cast<size_t>(m - 1)] = j;
      self(self, m - 1, rem_i - m * j, rem_n - j);
    }
    idx[static_cast<size_t>(m - 1)] = 0;
  };
  rec(rec, len, i, n);
}

// i! / (prod_m j_m! (m!)^{j_m}); an integer (it counts set partitions with
// j_m blocks of size m), exact for i <= 20.
inline long long partition_coefficient(int i, const std::vector<int>& idx) {
  long long den = 1;
  for (size_t m = 0; m < idx.size(); ++m) {
    int j = idx[m];
    den *= factorial_ll(j);
    long long fm = factorial_ll(static_cast<int>(m) + 1);
    for (int t = 0; t < j; ++t) den *= fm;
  }
  return factorial_ll(i) / den;
}

template <class T>
T scaled(const T& v, long long c) {
  if constexpr (std::is_integral_v<T>)
    return v * static_cast<T>(c);
  else
    return v * static_cast<double>(c);
}

template <class T>
void validate_bell_args(int i, int n, std::span<const T> z) {
  if (n < 0 || i < n) throw std::invalid_argument("bell_polynomial: requires i >= n >= 0");
  if (i > kMaxExactFactorial)
    throw std::invalid_argument("bell_polynomial: i exceeds the exact-coefficient range (20)");
  if (static_cast<int>(z.size()) != i - n + 1)
    throw std::invalid_argument("bell_polynomial: expected i - n + 1 arguments");
}

}  // namespace detail

// Partial exponential Bell polynomial B_{i,n}(z_1,...,z_{i-n+1}) as the
// explicit sum over admissible index vectors.  Works over complex numbers,
// integers, and jets (anything with +, * and scaling by a double).
template <class T>
T bell_polynomial(int i, int n, std::span<const T> z) {
  detail::validate_bell_args(i, n, z);
  if (n == 0) {
    if constexpr (std::is_constructible_v<T, int>)
      return i == 0 ? T(1) : T(0);
    else
      throw std::invalid_argument("bell_polynomial: n = 0 needs a scalar argument type");
  }
  bool have = false;
  T acc = z[0];  // placeholder; overwritten before use
  detail::for_each_partition_index(i, n, [&](const std::vector<int>& idx) {
    bool started = false;
    T term = z[0];
    for (size_t m = 0; m < idx.size(); ++m) {
      for (int t = 0; t < idx[m]; ++t) {
        if (!started) {
          term = z[m];
          started = true;
        } else {
          term = term * z[m];
        }
      }
    }
    term = detail::scaled(term, detail::partition_coefficient(i, idx));
    if (!have) {
      acc = term;
      have = true;
    } else {
      acc = acc + term;
    }
  });
  if (!have) throw std::logic_error("bell_polynomial: no admissible index vector");
  return acc;
}

template <class T>
T bell_polynomial(int i, int n, const std::vector<T>& z) {
  return bell_polynomial<T>(i, n, std::span<const T>(z));
}

// Independent route: B_{i,n} = sum_m C(i-1, m-1) z_m B_{i-m, n-1}.
template <class T>
T bell_polynomial_recurrence(int i, int n, std::span<const T> z) {
  detail::validate_bell_args(i, n, z);
  auto zero = [&]() -> T {
    if constexpr (std::is_integral_v<T>)
      return T(0);
    else
      return z[0] * 0.0;
  };
  auto one = [&]() -> T {
    if constexpr (std::is_integral_v<T>)
      return T(1);
    else
      return z[0] * 0.0 + 1.0;
  };
  if (n == 0) return i == 0 ? one() : zero();
  const int width = i - n;  // reachable entries satisfy ii - nn <= width
  std::vector<std::vector<T>> table(static_cast<size_t>(n) + 1,
                                    std::vector<T>(static_cast<size_t>(width) + 1, zero()));
  table[0][0] = one();  // B_{0,0}
  for (int nn = 1; nn <= n; ++nn) {
    for (int d = 0; d <= width; ++d) {
      int ii = nn + d;
      T acc = zero();
      int top = std::min(ii - nn + 1, static_cast<int>(z.size()));
      for (int m = 1; m <= top; ++m) {
        int pd = ii - m - (nn - 1);
        if (pd < 0 || pd > width) continue;
        T part = table[static_cast<size_t>(nn - 1)][static_cast<size_t>(pd)];
        acc = acc + detail::scaled(z[static_cast<size_t>(m - 1)] * part, binomial_ll(ii - 1, m - 1));
      }
      table[static_cast<size_t>(nn)][static_cast<size_t>(d)] = acc;
    }
  }
  return table[static_cast<size_t>(n)][static_cast<size_t>(width)];
}

template <class T>
T bell_polynomial_recurrence(int i, int n, const std::vector<T>& z) {
  return bell_polynomial_recurrence<T>(i, n, std::span<const T>(z));
}

}  // namespace ldeconf

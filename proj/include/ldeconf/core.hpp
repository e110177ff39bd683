#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace ldeconf {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Exact factorials; 20! is the largest that fits in signed 64 bits.
inline constexpr int kMaxExactFactorial = 20;
inline constexpr long long kFactorial[kMaxExactFactorial + 1] = {
    1LL,
    1LL,
    2LL,
    6LL,
    24LL,
    120LL,
    720LL,
    5040LL,
    40320LL,
    362880LL,
    3628800LL,
    39916800LL,
    479001600LL,
    6227020800LL,
    87178291200LL,
    1307674368000LL,
    20922789888000LL,
    355687428096000LL,
    6402373705728000LL,
    121645100408832000LL,
    2432902008176640000LL};

inline long long factorial_ll(int n) {
  if (n < 0 || n > kMaxExactFactorial)
    throw std::invalid_argument("factorial_ll: argument outside exact range [0, 20]");
  return kFactorial[n];
}

// Exact binomial coefficient; valid while the result fits in long long.
inline long long binomial_ll(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  long long r = 1;
  for (int t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

inline double binomial(int n, int k) { return static_cast<double>(binomial_ll(n, k)); }

// (q+1)(q+2)...(q+m), i.e. (q+m)!/q! as a double.
inline double rising_product(int q, int m) {
  double r = 1.0;
  for (int t = 1; t <= m; ++t) r *= static_cast<double>(q + t);
  return r;
}

inline bool is_finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// Continuation stopped because the admissible step shrank below the floor.
class StepUnderflowError : public std::runtime_error {
 public:
  StepUnderflowError(cplx last_center, double last_radius)
      : std::runtime_error("analytic continuation stalled; last reachable center (" +
                           std::to_string(last_center.real()) + ", " +
                           std::to_string(last_center.imag()) + "), |center| = " +
                           std::to_string(last_radius)),
        last_center_(last_center),
        last_radius_(last_radius) {}
  cplx last_center() const { return last_center_; }
  double last_radius() const { return last_radius_; }

 private:
  cplx last_center_;
  double last_radius_;
};

// Contour count failed to settle near an integer after radius perturbations.
class WindingError : public std::runtime_error {
 public:
  WindingError(double radius, double value)
      : std::runtime_error("zero count did not resolve to an integer at radius " +
                           std::to_string(radius) + " (value " + std::to_string(value) + ")"),
        radius_(radius),
        value_(value) {}
  double radius() const { return radius_; }
  double value() const { return value_; }

 private:
  double radius_;
  double value_;
};

// Quadrature refinement hit its cap without meeting the stopping rule.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(double previous, double last)
      : std::runtime_error("quadrature refinement did not converge (last two values " +
                           std::to_string(previous) + ", " + std::to_string(last) + ")"),
        previous_(previous),
        last_(last) {}
  double previous() const { return previous_; }
  double last() const { return last_; }

 private:
  double previous_;
  double last_;
};

// A branch of a fractional power could not be continued consistently.
class BranchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ldeconf

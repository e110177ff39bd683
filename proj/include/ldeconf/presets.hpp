#pragma once

#include "recover.hpp"
#include "report.hpp"

namespace ldeconf {
namespace presets {

// ---------------------------------------------------------------------------
// petal51: the half-plane power-exponential system pulled back through the
// Cayley map.  a(w) = (1-alpha^2)/(4w^2) - alpha^2 w^{2 alpha - 2} on the
// right half-plane with the zero-free pair f_j = w^{(1-alpha)/2} e^{+-w^alpha};
// the pair sum oscillates on a lattice accumulating at z = 1.
// ---------------------------------------------------------------------------

struct HalfPlanePower {
  double alpha;
  ConformalMap map;                       // disc onto the right half-plane
  LinearOde ode;                          // order 2 on the image
  std::vector<AnalyticFunction> base;     // f_1, f_2
  std::vector<CountedFunction> counted_base;   // f_j o T  (zero-free)
  std::vector<CountedFunction> counted_cross;  // (f_1 + f_2) o T
};

inline HalfPlanePower make_petal51(double alpha) {
  ConformalMap T = ConformalMap::cayley();
  Domain omega = Domain::image(T);
  LinearOde ode(2, {AnalyticFunction::example51_coefficient(alpha, 0.0, omega)}, omega);
  std::vector<AnalyticFunction> base = {
      AnalyticFunction::example51_solution(1, alpha, 0.0, omega),
      AnalyticFunction::example51_solution(2, alpha, 0.0, omega)};

  auto w_of = [](cplx z) { return (1.0 + z) / (1.0 - z); };
  auto tp_of = [](cplx z) { return 2.0 / ((1.0 - z) * (1.0 - z)); };

  std::vector<CountedFunction> cb;
  for (double sigma : {1.0, -1.0}) {
    cb.push_back(CountedFunction{
        [alpha, sigma, w_of](cplx z) {
          cplx w = w_of(z);
          return std::pow(w, cplx(0.5 * (1.0 - alpha))) * std::exp(sigma * std::pow(w, cplx(alpha)));
        },
        [alpha, sigma, w_of, tp_of](cplx z) {
          cplx w = w_of(z);
          return (0.5 * (1.0 - alpha) / w + sigma * alpha * std::pow(w, cplx(alpha - 1.0))) *
                 tp_of(z);
        },
        true});
  }
  std::vector<CountedFunction> cc = {CountedFunction{
      [alpha, w_of](cplx z) {
        cplx w = w_of(z);
        cplx wa = std::pow(w, cplx(alpha));
        return std::pow(w, cplx(0.5 * (1.0 - alpha))) * (std::exp(wa) + std::exp(-wa));
      },
      [alpha, w_of, tp_of](cplx z) {
        cplx w = w_of(z);
        cplx wa = std::pow(w, cplx(alpha));
        return (0.5 * (1.0 - alpha) / w + alpha * std::pow(w, cplx(alpha - 1.0)) * safe_tanh(wa)) *
               tp_of(z);
      },
      true}};

  return HalfPlanePower{alpha, T, std::move(ode), std::move(base), std::move(cb), std::move(cc)};
}

// Moduli |z_n| (sorted, with multiplicity) of the zeros of (f_1 + f_2) o T:
// the points with ((1+z)/(1-z))^alpha = (2n+1) pi i / 2, n in Z.
inline std::vector<double> petal51_zero_moduli(double alpha, double rmax) {
  std::vector<double> mods;
  // |u| = ((2n+1) pi/2)^{1/alpha} > 1 already at n = 0 for alpha in (1, 2],
  // and |z| is increasing in |u| beyond 1, so the moduli are increasing in n.
  for (int n = 0;; ++n) {
    double mag = (2.0 * n + 1.0) * kPi / 2.0;
    cplx u = std::pow(cplx(0.0, mag), cplx(1.0 / alpha));
    cplx z = (u - 1.0) / (u + 1.0);
    double m = std::abs(z);
    if (m >= rmax) break;
    // conjugate index -(n+1) gives the mirror zero with the same modulus
    mods.push_back(m);
    mods.push_back(m);
  }
  std::sort(mods.begin(), mods.end());
  return mods;
}

inline double petal51_coefficient_integral(double alpha, double r, const QuadratureOptions& q) {
  double p = 0.5;  // 1/(k - j) with k = 2, j = 0
  return disc_integral(
      [alpha, p](cplx z) {
        cplx w = (1.0 + z) / (1.0 - z);
        cplx a = (1.0 - alpha * alpha) / (4.0 * w * w) -
                 alpha * alpha * std::pow(w, cplx(2.0 * alpha - 2.0));
        double tp = std::abs(2.0 / ((1.0 - z) * (1.0 - z)));
        return std::pow(std::abs(a), p) * tp;
      },
      r, q);
}

inline OscillationReport run_petal51(double alpha, double rmax, int grid_count,
                                     ReportOptions opt = {}) {
  HalfPlanePower sys = make_petal51(alpha);
  RadialGrid grid = RadialGrid::log_spaced(0.5, rmax, grid_count, 0.5);
  auto integrand = [alpha](int, double r) {
    return petal51_coefficient_integral(alpha, r, QuadratureOptions{});
  };
  return oscillation_report_core(sys.counted_base, sys.counted_cross, integrand, 2, grid, opt);
}

// Least-squares slope of log v against log(1/(1-r)) on a log-spaced window.
inline double fit_on_window(const std::function<double(double)>& value, double lo, double hi,
                            int count) {
  std::vector<std::pair<double, double>> s;
  double q0 = std::log(1.0 - lo), q1 = std::log(1.0 - hi);
  for (int i = 0; i < count; ++i) {
    double r = 1.0 - std::exp(q0 + (q1 - q0) * i / (count - 1));
    double v = value(r);
    if (v > 0.0) s.push_back({r, v});
  }
  return growth_exponent_fit(s);
}

struct GrowthAsymptotics {
  double n_exponent;    // of the pair-sum zero count n(r)
  double N_exponent;    // of N(s(r)), s(r) = 1 - b (1 - r)
  double I_exponent;    // of the coefficient growth integral
  double rhs_exponent;  // of the full counting side incl. the log^2 term
};

// Growth exponents of the example evaluated on an asymptotic window deep in
// the disc.  The counts run on the closed-form zero lattice (certified equal
// to the contour counter at moderate radii by the test suite); the integral
// uses rim-refined quadrature nodes.
inline GrowthAsymptotics petal51_asymptotics(double alpha, double lo = 0.985,
                                             double hi = 0.9995, int samples = 8) {
  const double b = 0.5;
  std::vector<double> mods = petal51_zero_moduli(alpha, 1.0 - 0.5 * b * (1.0 - hi));
  auto counter = [&mods](double t) {
    return static_cast<int>(std::lower_bound(mods.begin(), mods.end(), t) - mods.begin());
  };
  std::vector<double> tgrid;
  double s_hi = 1.0 - b * (1.0 - hi);
  for (int i = 0; i < 48; ++i) {
    double q0 = std::log(1.0 - 0.2), q1 = std::log(1.0 - s_hi);
    tgrid.push_back(1.0 - std::exp(q0 + (q1 - q0) * i / 47.0));
  }
  CountingFunction cf = integrated_counting(counter, tgrid, true, 1e-6, 0);

  QuadratureOptions q;
  q.radial = 384;
  q.angular = 512;
  q.angular_gamma = 3.0;
  q.radial_rim_refine = true;

  GrowthAsymptotics out{};
  out.n_exponent =
      fit_on_window([&](double r) { return static_cast<double>(cf.n_at(r)); }, lo, hi, samples);
  out.N_exponent =
      fit_on_window([&](double r) { return cf.N_at(1.0 - b * (1.0 - r)); }, lo, hi, samples);
  out.I_exponent = fit_on_window(
      [&](double r) { return petal51_coefficient_integral(alpha, r, q); }, lo, hi, samples);
  out.rhs_exponent = fit_on_window(
      [&](double r) {
        double le = std::log(std::exp(1.0) / (1.0 - r));
        return cf.integral_N_over_one_minus_t(1.0 - b * (1.0 - r)) + le * le;
      },
      lo, hi, samples);
  return out;
}

// ---------------------------------------------------------------------------
// expsum52: a constant-coefficient third-order equation with distinct nonzero
// characteristic roots summing to zero, pushed into a sector.  Solutions are
// zero-free exponentials; two-term combinations oscillate along the rays
// normal to the convex hull of the conjugated roots.
// ---------------------------------------------------------------------------

struct ExpSumSector {
  double sector_alpha;
  std::vector<cplx> roots;
  ConformalMap map;
  LinearOde ode;  // order 3, constant coefficients, on the image
  std::vector<AnalyticFunction> base;
  std::vector<CountedFunction> counted_base;
  std::vector<CountedFunction> counted_cross;  // f_1 + f_3, f_2 + f_3
};

// Overflow-safe counted function for (e^{r1 w} + e^{r2 w}) o T.
inline CountedFunction exp_pair_counted(cplx r1, cplx r2, const ConformalMap& T) {
  return CountedFunction{
      [r1, r2, T](cplx z) {
        cplx w = T.eval(z);
        return std::exp(r1 * w) + std::exp(r2 * w);
      },
      [r1, r2, T](cplx z) {
        cplx w = T.eval(z);
        cplx d = (r2 - r1) * w;
        cplx ratio;  // (r1 + r2 e^d)/(1 + e^d), with the large mode factored out
        if (d.real() <= 0.0) {
          cplx q = std::exp(d);
          ratio = (r1 + r2 * q) / (1.0 + q);
        } else {
          cplx q = std::exp(-d);
          ratio = (r1 * q + r2) / (q + 1.0);
        }
        return ratio * T.derivative(z);
      }};
}

inline ExpSumSector make_expsum52(double sector_alpha = 1.5) {
  std::vector<cplx> roots = {cplx(1.0, 0.0), cplx(-0.5, 0.3), cplx(-0.5, -0.3)};
  cplx e2 = roots[0] * roots[1] + roots[0] * roots[2] + roots[1] * roots[2];
  cplx e3 = roots[0] * roots[1] * roots[2];
  ConformalMap T = ConformalMap::sector(sector_alpha, 0.0);
  Domain omega = Domain::image(T);
  LinearOde ode(3,
                {AnalyticFunction::constant(-e3, omega), AnalyticFunction::constant(e2, omega)},
                omega);
  std::vector<AnalyticFunction> base;
  std::vector<CountedFunction> cb;
  for (cplx r : roots) {
    base.push_back(AnalyticFunction::exponential(r, omega));
    cb.push_back(CountedFunction{[r, T](cplx z) { return std::exp(r * T.eval(z)); },
                                 [r, T](cplx z) { return r * T.derivative(z); }});
  }
  std::vector<CountedFunction> cc = {exp_pair_counted(roots[0], roots[2], T),
                                     exp_pair_counted(roots[1], roots[2], T)};
  return ExpSumSector{sector_alpha, std::move(roots), T, std::move(ode), std::move(base),
                      std::move(cb), std::move(cc)};
}

// Moduli of the preimages of the zeros of e^{r1 w} + e^{r2 w} inside
// T(D(0, rmax)): w_m = i pi (2m+1) / (r2 - r1), m in Z.
inline std::vector<double> exp_pair_zero_moduli(cplx r1, cplx r2, const ConformalMap& T,
                                                double rmax) {
  std::vector<double> mods;
  auto probe = [&](int m) -> double {
    cplx w = cplx(0.0, kPi * (2.0 * m + 1.0)) / (r2 - r1);
    if (!T.contains(w)) return -1.0;
    double r = std::abs(T.inverse(w));
    return r < rmax ? r : -1.0;
  };
  for (int dir : {0, 1}) {
    int misses = 0;
    for (int i = 0; misses < 8; ++i) {
      int m = dir == 0 ? i : -1 - i;
      double r = probe(m);
      if (r >= 0.0) {
        mods.push_back(r);
        misses = 0;
      } else {
        ++misses;
      }
    }
  }
  std::sort(mods.begin(), mods.end());
  return mods;
}

inline OscillationReport run_expsum52(double sector_alpha, double rmax, int grid_count,
                                      ReportOptions opt = {}) {
  ExpSumSector sys = make_expsum52(sector_alpha);
  RadialGrid grid = RadialGrid::log_spaced(0.5, rmax, grid_count, 0.5);
  cplx a0 = sys.ode.coeff(0).value(sys.map.eval(0.0));
  cplx a1 = sys.ode.coeff(1).value(sys.map.eval(0.0));
  ConformalMap T = sys.map;
  auto integrand = [a0, a1, T](int j, double r) {
    double p = 1.0 / (3 - j);
    double mag = j == 0 ? std::abs(a0) : std::abs(a1);
    QuadratureOptions q;
    return disc_integral(
        [p, mag, &T](cplx z) { return std::pow(mag, p) * std::abs(T.derivative(z)); }, r, q);
  };
  return oscillation_report_core(sys.counted_base, sys.counted_cross, integrand, 3, grid, opt);
}

// Deep-window exponents for the sector example: the coefficient integral
// (one slot suffices, the rim profile |T'| is shared) and N(r) of the
// two-term combination f_1 + f_3, counted on its explicit half-lattices.
inline GrowthAsymptotics expsum52_asymptotics(double sector_alpha, double lo = 0.985,
                                              double hi = 0.9995, int samples = 8) {
  ExpSumSector sys = make_expsum52(sector_alpha);
  double deep = 1.0 - 0.25 * (1.0 - hi);
  std::vector<double> tgrid;
  for (int i = 0; i < 40; ++i) {
    double q0 = std::log(1.0 - 0.3), q1 = std::log(1.0 - deep);
    tgrid.push_back(1.0 - std::exp(q0 + (q1 - q0) * i / 39.0));
  }
  // Both pair combinations enter the counting side.
  std::vector<CountingFunction> cfs;
  for (int j : {0, 1}) {
    std::vector<double> mods =
        exp_pair_zero_moduli(sys.roots[static_cast<size_t>(j)], sys.roots[2], sys.map, deep);
    auto counter = [&mods](double t) {
      return static_cast<int>(std::lower_bound(mods.begin(), mods.end(), t) - mods.begin());
    };
    cfs.push_back(integrated_counting(counter, tgrid, true, 1e-6, 0));
  }

  QuadratureOptions q;
  q.radial = 384;
  q.angular = 512;
  q.angular_gamma = 3.0;
  q.radial_rim_refine = true;

  GrowthAsymptotics out{};
  out.n_exponent = fit_on_window(
      [&](double r) { return static_cast<double>(cfs[0].n_at(r)); }, lo, hi, samples);
  out.N_exponent = fit_on_window([&](double r) { return cfs[0].N_at(r); }, lo, hi, samples);
  out.I_exponent = fit_on_window(
      [&](double r) { return coefficient_integral(sys.ode, sys.map, 0, r, q); }, lo, hi, samples);
  out.rhs_exponent = fit_on_window(
      [&](double r) {
        double le = std::log(std::exp(1.0) / (1.0 - r));
        double s = 1.0 - 0.5 * (1.0 - r);
        return cfs[0].integral_N_over_one_minus_t(s) + cfs[1].integral_N_over_one_minus_t(s) +
               le * le;
      },
      lo, hi, samples);
  return out;
}

}  // namespace presets
}  // namespace ldeconf

#pragma once

#include <atomic>
#include <functional>
#include <future>
#include <iomanip>
#include <ostream>
#include <thread>

#include "lde.hpp"
#include "transform.hpp"

namespace ldeconf {

namespace detail {

// Run f(0..n-1), fanning out over a few threads; results are written by
// index, so the outcome does not depend on scheduling.
template <class F>
void parallel_for(int n, int threads, F&& f) {
  if (threads <= 0) {
    unsigned hc = std::thread::hardware_concurrency();
    threads = hc == 0 ? 1 : static_cast<int>(std::min(hc, 8u));
  }
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::future<void>> workers;
  workers.reserve(static_cast<size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    workers.push_back(std::async(std::launch::async, [&]() {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= n) return;
        f(i);
      }
    }));
  }
  for (auto& w : workers) w.get();
}

}  // namespace detail

// tanh with a guard against overflow of exp for large real parts.
inline cplx safe_tanh(cplx x) {
  if (x.real() > 20.0) return 1.0 - 2.0 * std::exp(-2.0 * x);
  if (x.real() < -20.0) return -1.0 + 2.0 * std::exp(2.0 * x);
  return std::tanh(x);
}

// A function presented to the zero counter: its value (for checks at tame
// points) and its logarithmic derivative g'/g (the contour integrand, which
// stays finite where g itself would overflow).  conjugate_symmetric marks
// g(conj z) == conj(g(z)); the counter then works the upper half-contour
// only and doubles the real part.
struct CountedFunction {
  std::function<cplx(cplx)> value;
  std::function<cplx(cplx)> log_deriv;
  bool conjugate_symmetric = false;
};

inline CountedFunction counted_function_of(const AnalyticFunction& g) {
  return CountedFunction{
      [g](cplx z) { return g.value(z); },
      [g](cplx z) {
        Jet j = g.jet_at(z, 1);
        return j.derivative_value(1) / j.value();
      },
      false};
}

struct CountOptions {
  double integer_tol = 0.01;  // pre-round distance allowed from an integer
  int max_perturb = 5;
  double tol = 0.004;         // absolute budget for the contour integral
  int init_panels = 64;
  int max_depth = 26;
  long max_evals = 4000000;
};

struct CountResult {
  int count = 0;
  double radius_used = 0.0;
};

namespace detail {

struct ContourGiveUp {};  // node hit a zero / overflow; retry with nudged radius

class WindingIntegrator {
 public:
  WindingIntegrator(const std::function<cplx(cplx)>& log_deriv, double r, const CountOptions& opt)
      : g_(log_deriv), r_(r), opt_(opt) {}

  // (1/2 pi) integral of z g'(z)/g(z) dtheta, adaptive Simpson panels.  For
  // conjugate-symmetric g the lower half-contour mirrors the upper one.
  cplx integrate(bool conjugate_symmetric) {
    double span = conjugate_symmetric ? kPi : 2.0 * kPi;
    cplx total = 0.0;
    int panels = std::max(2, opt_.init_panels / (conjugate_symmetric ? 2 : 1));
    double h = span / panels;
    cplx f_prev = sample(0.0);
    cplx f_wrap = conjugate_symmetric ? sample(span) : f_prev;
    for (int p = 0; p < panels; ++p) {
      double a = p * h;
      double b = a + h;
      double m = 0.5 * (a + b);
      cplx fb = (p + 1 == panels) ? f_wrap : sample(b);
      cplx fm = sample(m);
      total += panel(a, f_prev, m, fm, b, fb, simpson(f_prev, fm, fb, b - a), 0);
      f_prev = fb;
    }
    if (conjugate_symmetric) total += std::conj(total);
    return total / (2.0 * kPi);
  }

 private:
  static cplx simpson(cplx fa, cplx fm, cplx fb, double h) {
    return (fa + 4.0 * fm + fb) * (h / 6.0);
  }

  cplx sample(double theta) {
    if (++evals_ > opt_.max_evals) throw ContourGiveUp{};
    cplx z = std::polar(r_, theta);
    cplx q = z * g_(z);
    if (!is_finite(q)) throw ContourGiveUp{};
    return q;
  }

  cplx panel(double a, cplx fa, double m, cplx fm, double b, cplx fb, cplx coarse, int depth) {
    double m1 = 0.5 * (a + m), m2 = 0.5 * (m + b);
    cplx f1 = sample(m1), f2 = sample(m2);
    cplx left = simpson(fa, f1, fm, m - a);
    cplx right = simpson(fm, f2, fb, b - m);
    cplx fine = left + right;
    double err = std::abs(fine - coarse);
    if (err <= 15.0 * opt_.tol * (b - a) / (2.0 * kPi) || depth >= opt_.max_depth)
      return fine + (fine - coarse) / 15.0;
    return panel(a, fa, m1, f1, m, fm, left, depth + 1) +
           panel(m, fm, m2, f2, b, fb, right, depth + 1);
  }

  const std::function<cplx(cplx)>& g_;
  double r_;
  const CountOptions& opt_;
  long evals_ = 0;
};

}  // namespace detail

// Number of zeros of g in |z| < r by the argument principle.  If the contour
// value does not land near an integer (a zero close to the circle), the
// radius is nudged by multiples of 1e-4 (1 - r) and the count is retried.
inline CountResult count_zeros(const CountedFunction& g, double r, const CountOptions& opt = {}) {
  static constexpr double kOffsets[] = {0.0, 1.0, -1.0, 2.0, -2.0, 3.0, -3.0};
  double last_value = std::numeric_limits<double>::quiet_NaN();
  int attempts = std::min(opt.max_perturb + 1, static_cast<int>(std::size(kOffsets)));
  for (int a = 0; a < attempts; ++a) {
    double ru = r + kOffsets[a] * 1e-4 * (1.0 - r);
    try {
      detail::WindingIntegrator wi(g.log_deriv, ru, opt);
      cplx s = wi.integrate(g.conjugate_symmetric);
      double n = std::round(s.real());
      if (std::abs(s.real() - n) < opt.integer_tol && std::abs(s.imag()) < opt.integer_tol &&
          n >= 0.0)
        return CountResult{static_cast<int>(n), ru};
      last_value = s.real();
    } catch (const detail::ContourGiveUp&) {
      // fall through to the next nudge
    }
  }
  throw WindingError(r, last_value);
}

inline CountResult count_zeros(const AnalyticFunction& g, double r, const CountOptions& opt = {}) {
  return count_zeros(counted_function_of(g), r, opt);
}

// n(r) samples on a grid with jump radii localized by bisection, and the
// integrated count N(r) = n(0) log r + sum_i m_i log(r / rho_i).
class CountingFunction {
 public:
  struct Record {
    double r;
    int n;
    double N;
  };
  struct Jump {
    double radius;
    int multiplicity;
  };

  CountingFunction() = default;
  CountingFunction(std::vector<Record> records, std::vector<Jump> jumps, int n_origin)
      : records_(std::move(records)), jumps_(std::move(jumps)), n_origin_(n_origin) {
    prefix_count_.reserve(jumps_.size() + 1);
    prefix_log_.reserve(jumps_.size() + 1);
    prefix_count_.push_back(0);
    prefix_log_.push_back(0.0);
    for (const Jump& j : jumps_) {
      prefix_count_.push_back(prefix_count_.back() + j.multiplicity);
      prefix_log_.push_back(prefix_log_.back() + j.multiplicity * std::log(j.radius));
    }
  }

  const std::vector<Record>& records() const { return records_; }
  const std::vector<Jump>& jumps() const { return jumps_; }
  int n_origin() const { return n_origin_; }

  int n_at(double t) const { return n_origin_ + prefix_count_[enclosed(t)]; }

  double N_at(double t) const {
    if (!(t > 0.0)) return 0.0;
    size_t i = enclosed(t);
    double acc = n_origin_ > 0 ? n_origin_ * std::log(t) : 0.0;
    return acc + prefix_count_[i] * std::log(t) - prefix_log_[i];
  }

  // integral over (0, upper] of N(t)/(1-t) dt, integrating the piecewise
  // linear interpolant of N on the sample-and-jump grid exactly.
  double integral_N_over_one_minus_t(double upper) const {
    std::vector<double> knots;
    knots.push_back(0.0);
    for (const Jump& j : jumps_)
      if (j.radius < upper) knots.push_back(j.radius);
    for (const Record& rec : records_)
      if (rec.r < upper) knots.push_back(rec.r);
    knots.push_back(upper);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    double acc = 0.0;
    for (size_t i = 0; i + 1 < knots.size(); ++i) {
      double t0 = knots[i], t1 = knots[i + 1];
      if (t1 <= t0) continue;
      double n0v = N_at(t0), n1v = N_at(t1);
      double slope = (n1v - n0v) / (t1 - t0);
      double a = n0v - slope * t0;
      // integral of (a + slope t)/(1-t) dt = -slope t - (a + slope) log(1-t)
      auto prim = [&](double t) { return -slope * t - (a + slope) * std::log1p(-t); };
      acc += prim(t1) - prim(t0);
    }
    return acc;
  }

 private:
  // Index of the first jump with radius > t.
  size_t enclosed(double t) const {
    size_t lo = 0, hi = jumps_.size();
    while (lo < hi) {
      size_t mid = (lo + hi) / 2;
      if (jumps_[mid].radius <= t)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  }

  std::vector<Record> records_;
  std::vector<Jump> jumps_;
  int n_origin_ = 0;
  std::vector<int> prefix_count_;
  std::vector<double> prefix_log_;
};

// Sample n on the given radii and localize every count change to within
// locate_tol by bisection.  The counter may nudge its radius internally;
// only the integer counts drive the bisection.
inline CountingFunction integrated_counting(const std::function<int(double)>& counter,
                                            std::span<const double> grid, bool g0_nonzero,
                                            double locate_tol = 1e-6, int threads = 1) {
  if (grid.empty()) throw std::invalid_argument("integrated_counting: empty grid");
  std::vector<double> radii(grid.begin(), grid.end());
  std::sort(radii.begin(), radii.end());

  int n0 = g0_nonzero ? 0 : counter(std::min(1e-7, radii.front() * 0.5));

  std::vector<int> counts(radii.size());
  detail::parallel_for(static_cast<int>(radii.size()), threads,
                       [&](int i) { counts[static_cast<size_t>(i)] = counter(radii[static_cast<size_t>(i)]); });

  struct Bracket {
    double lo, hi;
    int nlo, nhi;
  };
  std::vector<Bracket> work;
  double start = std::max(locate_tol, 1e-9);
  if (counts.front() != n0) work.push_back({start, radii.front(), n0, counts.front()});
  for (size_t i = 0; i + 1 < radii.size(); ++i)
    if (counts[i + 1] != counts[i]) work.push_back({radii[i], radii[i + 1], counts[i], counts[i + 1]});

  std::vector<std::vector<CountingFunction::Jump>> found(work.size());
  detail::parallel_for(static_cast<int>(work.size()), threads, [&](int wi) {
    std::vector<CountingFunction::Jump> local;
    auto rec = [&](auto&& self, double lo, int nlo, double hi, int nhi) -> void {
      if (nhi == nlo) return;
      if (hi - lo < locate_tol) {
        local.push_back({0.5 * (lo + hi), nhi - nlo});
        return;
      }
      double mid = 0.5 * (lo + hi);
      int nm = counter(mid);
      self(self, lo, nlo, mid, nm);
      self(self, mid, nm, hi, nhi);
    };
    const Bracket& b = work[static_cast<size_t>(wi)];
    rec(rec, b.lo, b.nlo, b.hi, b.nhi);
    found[static_cast<size_t>(wi)] = std::move(local);
  });

  std::vector<CountingFunction::Jump> jumps;
  for (auto& f : found) jumps.insert(jumps.end(), f.begin(), f.end());
  std::sort(jumps.begin(), jumps.end(),
            [](const auto& a, const auto& b) { return a.radius < b.radius; });

  CountingFunction cf({}, jumps, n0);
  std::vector<CountingFunction::Record> records;
  records.reserve(radii.size());
  for (size_t i = 0; i < radii.size(); ++i)
    records.push_back({radii[i], counts[i], cf.N_at(radii[i])});
  return CountingFunction(std::move(records), std::move(jumps), n0);
}

// (1/2 pi) integral of log+ |g(r e^{i theta})| d theta by the trapezoid rule
// with node doubling until the value settles to 1e-4 relative.
inline double proximity_mean(const std::function<cplx(cplx)>& value, double r, int min_nodes = 256) {
  if (min_nodes < 2) min_nodes = 2;
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (int n = std::max(256, min_nodes); n <= (1 << 21); n *= 2) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      cplx z = std::polar(r, 2.0 * kPi * i / n);
      double a = std::abs(value(z));
      if (a > 1.0) acc += std::log(a);
    }
    double cur = acc / n;
    if (std::isfinite(prev) && std::abs(cur - prev) <= 1e-4 * std::max(std::abs(cur), 1e-9))
      return cur;
    prev = cur;
  }
  throw QuadratureError(prev, prev);
}

inline double proximity_m(const AnalyticFunction& g, double r, int min_nodes = 256) {
  return proximity_mean([g](cplx z) { return g.value(z); }, r, min_nodes);
}

// Same mean, but fed log|g| directly; for functions whose modulus overflows
// while the logarithm stays representable.
inline double proximity_mean_from_log(const std::function<double(cplx)>& log_abs, double r,
                                      int min_nodes = 256) {
  if (min_nodes < 2) min_nodes = 2;
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (int n = std::max(256, min_nodes); n <= (1 << 21); n *= 2) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      double la = log_abs(std::polar(r, 2.0 * kPi * i / n));
      if (la > 0.0) acc += la;
    }
    double cur = acc / n;
    if (std::isfinite(prev) && std::abs(cur - prev) <= 1e-4 * std::max(std::abs(cur), 1e-9))
      return cur;
    prev = cur;
  }
  throw QuadratureError(prev, prev);
}

struct QuadratureOptions {
  int radial = 128;
  int angular = 512;
  double rel_tol = 0.005;
  int max_doublings = 6;
  // Node placement within the tensor rule.  angular_gamma > 1 clusters angle
  // nodes toward theta = 0 (power law); radial_rim_refine packs radial cells
  // toward rho = r geometrically.  Both default to the uniform layout; they
  // matter for integrands that blow up near a boundary point.
  double angular_gamma = 1.0;
  bool radial_rim_refine = false;
};

// integral over the disc D(0, r) of f dm by a polar tensor rule (midpoint in
// radius, trapezoid in angle), refined by doubling both directions.
inline double disc_integral(const std::function<double(cplx)>& f, double r,
                            const QuadratureOptions& opt = {}) {
  double prev = std::numeric_limits<double>::quiet_NaN();
  int nr = opt.radial, na = opt.angular;
  for (int pass = 0; pass <= opt.max_doublings; ++pass, nr *= 2, na *= 2) {
    std::vector<double> redge(static_cast<size_t>(nr) + 1);
    if (opt.radial_rim_refine) {
      double d = std::max(1.0 - r, 1e-9);
      double q = std::log1p(r / d);  // rho = r - d (e^u - 1), u in [0, q]
      for (int i = 0; i <= nr; ++i)
        redge[static_cast<size_t>(nr - i)] = r - d * std::expm1(q * i / nr);
      redge[0] = 0.0;
      redge[static_cast<size_t>(nr)] = r;
    } else {
      for (int i = 0; i <= nr; ++i) redge[static_cast<size_t>(i)] = r * i / nr;
    }
    std::vector<double> aedge(static_cast<size_t>(na) + 1);
    for (int j = 0; j <= na; ++j) {
      double t = 2.0 * j / na - 1.0;  // [-1, 1]
      aedge[static_cast<size_t>(j)] =
          kPi * (t < 0 ? -std::pow(-t, opt.angular_gamma) : std::pow(t, opt.angular_gamma));
    }
    double acc = 0.0;
    std::vector<double> ring(static_cast<size_t>(na) + 1);
    for (int i = 0; i < nr; ++i) {
      double rho = 0.5 * (redge[static_cast<size_t>(i)] + redge[static_cast<size_t>(i + 1)]);
      double w = redge[static_cast<size_t>(i + 1)] - redge[static_cast<size_t>(i)];
      for (int j = 0; j <= na; ++j) ring[static_cast<size_t>(j)] = f(std::polar(rho, aedge[static_cast<size_t>(j)]));
      double s = 0.0;
      for (int j = 0; j < na; ++j)
        s += 0.5 * (ring[static_cast<size_t>(j)] + ring[static_cast<size_t>(j + 1)]) *
             (aedge[static_cast<size_t>(j + 1)] - aedge[static_cast<size_t>(j)]);
      acc += s * rho * w;
    }
    double cur = acc;
    if (std::isfinite(prev)) {
      if (cur == 0.0 && prev == 0.0) return 0.0;
      if (std::abs(cur - prev) <= opt.rel_tol * std::abs(cur)) return cur;
    }
    prev = cur;
  }
  throw QuadratureError(prev, prev);
}

// integral over D(0, r) of |a_j(T(z)) T'(z)^{k-j}|^{1/(k-j)} dm(z), the
// disc-side form of the coefficient growth integral over T(D(0, r)).
inline double coefficient_integral(const LinearOde& ode, const ConformalMap& T, int j, double r,
                                   const QuadratureOptions& opt = {}) {
  int k = ode.order();
  if (j < 0 || j > k - 2) throw std::invalid_argument("coefficient_integral: bad index");
  double p = 1.0 / (k - j);
  const AnalyticFunction& aj = ode.coeff(j);
  return disc_integral(
      [&](cplx z) {
        cplx w = T.eval(z);
        return std::pow(std::abs(aj.value(w)), p) * std::abs(T.derivative(z));
      },
      r, opt);
}

// Same integral for an equation already living on the disc.
inline double coefficient_integral_disc(const LinearOde& disc_ode, int j, double r,
                                        const QuadratureOptions& opt = {}) {
  int k = disc_ode.order();
  if (j < 0 || j > k - 2) throw std::invalid_argument("coefficient_integral_disc: bad index");
  double p = 1.0 / (k - j);
  const AnalyticFunction& bj = disc_ode.coeff(j);
  return disc_integral([&](cplx z) { return std::pow(std::abs(bj.value(z)), p); }, r, opt);
}

// Independent route through the image side: parameterize T(D(0,r)) by the
// disc, weight by the area Jacobian |T'|^2, and divide by the closed-form
// |T'(T^{-1}(w))|.  Cross-checks the change of variable above.
inline double coefficient_integral_image(const LinearOde& ode, const ConformalMap& T, int j,
                                         double r, const QuadratureOptions& opt = {}) {
  int k = ode.order();
  if (j < 0 || j > k - 2) throw std::invalid_argument("coefficient_integral_image: bad index");
  double p = 1.0 / (k - j);
  const AnalyticFunction& aj = ode.coeff(j);
  return disc_integral(
      [&](cplx z) {
        cplx w = T.eval(z);
        double jac = std::norm(T.derivative(z));
        return std::pow(std::abs(aj.value(w)), p) * jac / T.deriv_at_image(w);
      },
      r, opt);
}

// Least-squares slope of log v against log(1/(1-r)); v ~ (1-r)^{-slope}.
inline double growth_exponent_fit(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 5)
    throw std::invalid_argument("growth_exponent_fit: needs at least 5 samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [r, v] : samples) {
    if (!(r >= 0.5 && r < 1.0))
      throw std::invalid_argument("growth_exponent_fit: radii must lie in [0.5, 1)");
    if (!(v > 0.0)) throw std::invalid_argument("growth_exponent_fit: values must be positive");
    double x = std::log(1.0 / (1.0 - r));
    double y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = static_cast<double>(samples.size());
  double denom = n * sxx - sx * sx;
  if (!(std::abs(denom) > 0.0))
    throw std::invalid_argument("growth_exponent_fit: degenerate abscissae");
  return (n * sxy - sx * sy) / denom;
}

inline double growth_exponent_fit(const std::vector<std::pair<double, double>>& samples) {
  return growth_exponent_fit(std::span<const std::pair<double, double>>(samples));
}

// Outer-normal directions of the convex hull of the conjugated exponent
// set: the angles along which an exponential sum's zero rays can run.
inline std::vector<double> exp_sum_directions(std::span<const cplx> roots) {
  if (roots.size() < 2) throw std::invalid_argument("exp_sum_directions: needs at least 2 roots");
  double scale = 0.0;
  for (cplx r : roots) scale = std::max(scale, std::abs(r));

  std::vector<cplx> pts;
  pts.reserve(roots.size());
  for (cplx r : roots) pts.push_back(std::conj(r));
  std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 2) throw std::invalid_argument("exp_sum_directions: all roots equal");

  double eps = 1e-12 * std::max(scale, 1.0) * std::max(scale, 1.0);
  auto cross = [](cplx o, cplx a, cplx b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
  };

  // Andrew monotone chain, strict turns only (collinear points dropped).
  std::vector<cplx> lower, upper;
  for (cplx p : pts) {
    while (lower.size() >= 2 && cross(lower[lower.size() - 2], lower.back(), p) <= eps)
      lower.pop_back();
    lower.push_back(p);
  }
  for (size_t i = pts.size(); i-- > 0;) {
    cplx p = pts[i];
    while (upper.size() >= 2 && cross(upper[upper.size() - 2], upper.back(), p) <= eps)
      upper.pop_back();
    upper.push_back(p);
  }

  auto normalize = [](double a) {
    while (a <= -kPi) a += 2.0 * kPi;
    while (a > kPi) a -= 2.0 * kPi;
    return a;
  };

  std::vector<double> angles;
  if (lower.size() < 3 && upper.size() < 3) {
    // Degenerate hull: a segment; both perpendicular directions.
    cplx d = pts.back() - pts.front();
    double base = std::atan2(d.imag(), d.real());
    angles.push_back(normalize(base + 0.5 * kPi));
    angles.push_back(normalize(base - 0.5 * kPi));
  } else {
    std::vector<cplx> hull(lower.begin(), lower.end() - 1);
    hull.insert(hull.end(), upper.begin(), upper.end() - 1);
    // hull is counter-clockwise; outer normal of edge d is (d_y, -d_x)... for
    // clockwise. Monotone chain as written (lower first) yields CCW order.
    for (size_t i = 0; i < hull.size(); ++i) {
      cplx d = hull[(i + 1) % hull.size()] - hull[i];
      angles.push_back(normalize(std::atan2(-d.real(), d.imag())));
    }
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

inline std::vector<double> exp_sum_directions(const std::vector<cplx>& roots) {
  return exp_sum_directions(std::span<const cplx>(roots));
}

}  // namespace ldeconf

#pragma once

#include <cstdio>

#include "oscillation.hpp"

namespace ldeconf {

// Report radii together with the shrink map s(r) = 1 - b (1 - r).
struct RadialGrid {
  std::vector<double> radii;
  double shrink_b = 0.5;

  double s(double r) const { return 1.0 - shrink_b * (1.0 - r); }

  void validate() const {
    if (!(shrink_b > 0.0 && shrink_b < 1.0))
      throw std::invalid_argument("RadialGrid: shrink parameter must lie in (0, 1)");
    if (radii.empty()) throw std::invalid_argument("RadialGrid: empty grid");
    double prev = 0.0;
    for (double r : radii) {
      if (!(r > prev && r < 1.0))
        throw std::invalid_argument("RadialGrid: radii must be increasing inside (0, 1)");
      prev = r;
    }
  }

  // count radii with 1 - r log-spaced between rmin and rmax.
  static RadialGrid log_spaced(double rmin, double rmax, int count, double b) {
    if (count < 2 || !(rmin > 0.0 && rmin < rmax && rmax < 1.0))
      throw std::invalid_argument("RadialGrid: bad log_spaced parameters");
    RadialGrid g;
    g.shrink_b = b;
    double q0 = std::log(1.0 - rmin), q1 = std::log(1.0 - rmax);
    for (int i = 0; i < count; ++i)
      g.radii.push_back(1.0 - std::exp(q0 + (q1 - q0) * i / (count - 1)));
    g.validate();
    return g;
  }

  static RadialGrid linear(double rmin, double rmax, int count, double b) {
    if (count < 2 || !(rmin > 0.0 && rmin < rmax && rmax < 1.0))
      throw std::invalid_argument("RadialGrid: bad linear parameters");
    RadialGrid g;
    g.shrink_b = b;
    for (int i = 0; i < count; ++i) g.radii.push_back(rmin + (rmax - rmin) * i / (count - 1));
    g.validate();
    return g;
  }
};

struct OscillationRow {
  double r = 0.0;
  double s_r = 0.0;
  std::vector<double> I;  // coefficient growth integrals, j = 0..k-2
  double rhs_N_sum = 0.0;
  double rhs_cross_sum = 0.0;
  double log2_term = 0.0;
  double ratio = 0.0;
  double cor_N_sum = 0.0;     // pointwise N(s(r)) over the base
  double cor_cross_sum = 0.0; // pointwise N(s(r)) over the pair sums
  double log_term = 0.0;
};

struct OscillationReport {
  int order = 0;
  RadialGrid grid;
  std::vector<OscillationRow> rows;
  std::vector<CountingFunction> base_counts;   // zeros of g_j
  std::vector<CountingFunction> cross_counts;  // zeros of g_j + g_k
  std::vector<double> exponent_I;              // fitted per coefficient
  double exponent_rhs = 0.0;
  double exponent_ratio_max = 0.0;             // max_r ratio / min_r ratio over the fit window
  double fit_rmin = 0.5;

  // Fit window helper: rows with r >= fit_rmin and a positive column value.
  std::vector<std::pair<double, double>> fit_samples(
      const std::function<double(const OscillationRow&)>& col) const {
    std::vector<std::pair<double, double>> s;
    for (const OscillationRow& row : rows)
      if (row.r >= fit_rmin && col(row) > 0.0) s.push_back({row.r, col(row)});
    return s;
  }

  void to_csv(std::ostream& os) const {
    size_t ncols = rows.empty() ? 0 : rows.front().I.size();
    os << "r,s_r";
    for (size_t j = 0; j < ncols; ++j) os << ",I_" << j;
    os << ",rhs_N_sum,rhs_cross_sum,log2_term,ratio\n";
    char buf[64];
    auto put = [&](double v, bool lead_comma = true) {
      std::snprintf(buf, sizeof buf, "%.12e", v);
      if (lead_comma) os << ',';
      os << buf;
    };
    for (const OscillationRow& row : rows) {
      put(row.r, false);
      put(row.s_r);
      for (double v : row.I) put(v);
      put(row.rhs_N_sum);
      put(row.rhs_cross_sum);
      put(row.log2_term);
      put(row.ratio);
      os << '\n';
    }
  }
};

struct ReportOptions {
  QuadratureOptions quad{};
  CountOptions count{};
  int counting_radii = 40;
  double counting_rmin = 0.15;
  double locate_tol = 1e-6;
  double fit_rmin = 0.5;
  int threads = 0;  // 0: hardware
};

// Core assembly from disc-side counted functions whose zeros are those of
// g_j (the pulled-back base) and g_j + g_k, plus the coefficient integrand
// context.  Row work and zero localization fan out over threads; rows are
// assembled by radius index, so output is deterministic.
inline OscillationReport oscillation_report_core(
    const std::vector<CountedFunction>& base_cf, const std::vector<CountedFunction>& cross_cf,
    const std::function<double(int, double)>& coeff_integral_rj, int order, const RadialGrid& grid,
    const ReportOptions& opt = {}) {
  grid.validate();
  OscillationReport rep;
  rep.order = order;
  rep.grid = grid;
  rep.fit_rmin = opt.fit_rmin;

  const double t_hi = grid.s(grid.radii.back());
  std::vector<double> tgrid;
  {
    double q0 = std::log(1.0 - opt.counting_rmin), q1 = std::log(1.0 - t_hi);
    for (int i = 0; i < opt.counting_radii; ++i)
      tgrid.push_back(1.0 - std::exp(q0 + (q1 - q0) * i / (opt.counting_radii - 1)));
  }

  auto count_family = [&](const CountedFunction& cf) {
    if (std::abs(cf.value(0.0)) == 0.0)
      throw std::runtime_error("oscillation report: counted function vanishes at the origin");
    auto counter = [&cf, &opt](double t) { return count_zeros(cf, t, opt.count).count; };
    return integrated_counting(counter, tgrid, true, opt.locate_tol, opt.threads);
  };

  for (const CountedFunction& cf : base_cf) rep.base_counts.push_back(count_family(cf));
  for (const CountedFunction& cf : cross_cf) rep.cross_counts.push_back(count_family(cf));

  const int rows = static_cast<int>(grid.radii.size());
  const int cols = order - 1;
  rep.rows.assign(static_cast<size_t>(rows), OscillationRow{});

  std::vector<double> integrals(static_cast<size_t>(rows * cols), 0.0);
  detail::parallel_for(rows * cols, opt.threads, [&](int idx) {
    int i = idx / cols, j = idx % cols;
    integrals[static_cast<size_t>(idx)] = coeff_integral_rj(j, grid.radii[static_cast<size_t>(i)]);
  });

  for (int i = 0; i < rows; ++i) {
    OscillationRow& row = rep.rows[static_cast<size_t>(i)];
    row.r = grid.radii[static_cast<size_t>(i)];
    row.s_r = grid.s(row.r);
    row.I.resize(static_cast<size_t>(cols));
    for (int j = 0; j < cols; ++j) row.I[static_cast<size_t>(j)] = integrals[static_cast<size_t>(i * cols + j)];

    for (const CountingFunction& cf : rep.base_counts) {
      row.rhs_N_sum += cf.integral_N_over_one_minus_t(row.s_r);
      row.cor_N_sum += cf.N_at(row.s_r);
    }
    for (const CountingFunction& cf : rep.cross_counts) {
      row.rhs_cross_sum += cf.integral_N_over_one_minus_t(row.s_r);
      row.cor_cross_sum += cf.N_at(row.s_r);
    }
    double le = std::log(std::exp(1.0) / (1.0 - row.r));
    row.log2_term = le * le;
    row.log_term = le;
    double rhs_total = row.rhs_N_sum + row.rhs_cross_sum + row.log2_term;
    double lhs = 0.0;
    for (double v : row.I) lhs = std::max(lhs, v);
    row.ratio = rhs_total > 0.0 ? lhs / rhs_total : 0.0;
  }

  rep.exponent_I.assign(static_cast<size_t>(cols), std::numeric_limits<double>::quiet_NaN());
  for (int j = 0; j < cols; ++j) {
    auto s = rep.fit_samples([j](const OscillationRow& row) { return row.I[static_cast<size_t>(j)]; });
    if (s.size() >= 5) rep.exponent_I[static_cast<size_t>(j)] = growth_exponent_fit(s);
  }
  {
    auto s = rep.fit_samples([](const OscillationRow& row) {
      return row.rhs_N_sum + row.rhs_cross_sum + row.log2_term;
    });
    rep.exponent_rhs = s.size() >= 5 ? growth_exponent_fit(s) : std::numeric_limits<double>::quiet_NaN();
  }
  {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const OscillationRow& row : rep.rows) {
      if (row.r < rep.fit_rmin || !(row.ratio > 0.0)) continue;
      lo = std::min(lo, row.ratio);
      hi = std::max(hi, row.ratio);
    }
    rep.exponent_ratio_max = (lo > 0.0 && std::isfinite(lo)) ? hi / lo : std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

// The standard entry point: a solution base f_1..f_k on T(disc), the map,
// and the equation the base solves.  Zeros of g_j = (f_j o T) h agree with
// zeros of f_j o T because h is zero-free, so the counted functions are the
// plain compositions and need no branch tracking.
inline OscillationReport oscillation_report(const std::vector<AnalyticFunction>& base,
                                            const ConformalMap& T, const LinearOde& ode,
                                            const RadialGrid& grid, const ReportOptions& opt = {}) {
  const int k = ode.order();
  if (static_cast<int>(base.size()) != k)
    throw std::invalid_argument("oscillation_report: base size must equal the equation order");

  auto composed = [&T](const AnalyticFunction& f) -> CountedFunction {
    return CountedFunction{[f, T](cplx z) { return f.value(T.eval(z)); },
                           [f, T](cplx z) {
                             cplx w = T.eval(z);
                             Jet j = f.jet_at(w, 1);
                             return j.derivative_value(1) / j.value() * T.derivative(z);
                           }};
  };
  auto composed_sum = [&T](const AnalyticFunction& f, const AnalyticFunction& g) -> CountedFunction {
    return CountedFunction{[f, g, T](cplx z) {
                             cplx w = T.eval(z);
                             return f.value(w) + g.value(w);
                           },
                           [f, g, T](cplx z) {
                             cplx w = T.eval(z);
                             Jet a = f.jet_at(w, 1);
                             Jet b = g.jet_at(w, 1);
                             return (a.derivative_value(1) + b.derivative_value(1)) /
                                    (a.value() + b.value()) * T.derivative(z);
                           }};
  };

  std::vector<CountedFunction> base_cf, cross_cf;
  for (const AnalyticFunction& f : base) base_cf.push_back(composed(f));
  for (int j = 0; j + 1 < k; ++j)
    cross_cf.push_back(composed_sum(base[static_cast<size_t>(j)], base.back()));

  auto coeff_rj = [&ode, &T, &opt](int j, double r) {
    return coefficient_integral(ode, T, j, r, opt.quad);
  };
  return oscillation_report_core(base_cf, cross_cf, coeff_rj, k, grid, opt);
}

}  // namespace ldeconf

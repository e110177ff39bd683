#pragma once

#include <mutex>

#include "lde.hpp"

namespace ldeconf {

struct TaylorOptions {
  double safety = 0.5;   // fraction of the boundary clearance used per step
  int jet_order = 30;    // series order carried at each center
  double tail_tol = 1e-12;  // truncation tail budget relative to the local scale
  double min_step = 1e-12;
  int max_steps = 20000;
};

namespace detail {

// One local series of the solution together with its disc of trust.
struct SolutionDisc {
  cplx center;
  double radius;
  Jet jet;
};

class ContinuationTrack {
 public:
  ContinuationTrack(LinearOde ode, cplx base, std::vector<cplx> initial, TaylorOptions opts)
      : ode_(std::move(ode)), base_(base), opts_(opts) {
    int k = ode_.order();
    if (static_cast<int>(initial.size()) != k)
      throw std::invalid_argument("taylor_solve: expected k initial derivative values");
    std::vector<cplx> taylor(initial.size());
    double f = 1.0;
    for (size_t m = 0; m < initial.size(); ++m) {
      if (m > 0) f *= static_cast<double>(m);
      taylor[m] = initial[m] / f;
    }
    discs_.push_back(make_disc(base, taylor));
  }

  // March along the polyline base -> path[0] -> path[1] -> ...
  void extend_along(std::span<const cplx> waypoints) {
    std::lock_guard<std::mutex> lock(mu_);
    for (cplx target : waypoints) extend_to_locked(target);
  }

  // Low orders come from the stored series directly; higher derivatives are
  // rebuilt by running the recurrence at the query point itself, which keeps
  // them at recurrence precision instead of re-centering precision.
  Jet jet_at(cplx z, int order) const {
    std::lock_guard<std::mutex> lock(mu_);
    const SolutionDisc* best = covering_disc_locked(z);
    if (best == nullptr) {
      const_cast<ContinuationTrack*>(this)->reach_locked(z);
      best = covering_disc_locked(z);
      if (best == nullptr) throw StepUnderflowError(z, std::abs(z));
    }
    const int k = ode_.order();
    if (order < k) return best->jet.recentered(z, order);
    Jet lead = best->jet.recentered(z, k - 1);
    std::vector<cplx> leading(lead.coeffs().begin(), lead.coeffs().end());
    return series_at(z, leading, order);
  }

 private:
  const SolutionDisc* covering_disc_locked(cplx z) const {
    const SolutionDisc* best = nullptr;
    double best_ratio = 1.0;
    for (const SolutionDisc& d : discs_) {
      double ratio = std::abs(z - d.center) / d.radius;
      if (ratio <= best_ratio) {
        best_ratio = ratio;
        best = &d;
      }
    }
    return best;
  }

  void reach_locked(cplx z) {
    // Continue from the nearest stored center.
    double best = std::numeric_limits<double>::infinity();
    size_t idx = 0;
    for (size_t i = 0; i < discs_.size(); ++i) {
      double d = std::abs(z - discs_[i].center);
      if (d < best) {
        best = d;
        idx = i;
      }
    }
    march(discs_[idx], z);
  }

  void extend_to_locked(cplx target) {
    const SolutionDisc* cover = covering_disc_locked(target);
    if (cover != nullptr && std::abs(target - cover->center) <= 0.5 * cover->radius) return;
    reach_locked(target);
  }

  void march(SolutionDisc from, cplx target) {
    SolutionDisc cur = from;
    int steps = 0;
    while (std::abs(target - cur.center) > 0.75 * cur.radius) {
      if (++steps > opts_.max_steps) throw StepUnderflowError(cur.center, std::abs(cur.center));
      double step = std::min(0.75 * cur.radius, std::abs(target - cur.center));
      if (step < opts_.min_step) throw StepUnderflowError(cur.center, std::abs(cur.center));
      cplx dir = (target - cur.center) / std::abs(target - cur.center);
      cplx next = cur.center + step * dir;
      Jet shifted = cur.jet.recentered(next, ode_.order() - 1);
      std::vector<cplx> taylor(shifted.coeffs().begin(), shifted.coeffs().end());
      cur = make_disc(next, taylor);
      discs_.push_back(cur);
    }
  }

  // Radius within which the truncated series resolves the solution: the
  // largest h with |c_m| h^m below tail_tol times the local scale, probed on
  // the top three coefficients.  Fast-growing solutions shrink the step well
  // below the coefficient clearance this way.
  double numerical_radius(const Jet& jet) const {
    const int n = jet.order();
    double scale = std::max({std::abs(jet.coeff(0)), std::abs(jet.coeff(std::min(1, n))),
                             std::abs(jet.coeff(std::min(2, n)))});
    if (scale == 0.0)
      for (int m = 0; m <= n; ++m) scale = std::max(scale, std::abs(jet.coeff(m)));
    if (scale == 0.0) return std::numeric_limits<double>::infinity();  // zero solution
    double h = std::numeric_limits<double>::infinity();
    for (int m = n; m >= n - 2 && m > 0; --m) {
      double cm = std::abs(jet.coeff(m));
      if (cm > 0.0)
        h = std::min(h, std::pow(opts_.tail_tol * scale / cm, 1.0 / static_cast<double>(m)));
    }
    return h;
  }

  // Series of the solution at `center` from its k leading Taylor
  // coefficients, by the convolution recurrence the equation imposes:
  //   c_{m+k} (m+k)!/m! = - sum_j sum_p b_j[p] c_{m-p+j} (m-p+j)!/(m-p)!.
  Jet series_at(cplx center, const std::vector<cplx>& leading, int N) const {
    const int k = ode_.order();
    std::vector<Jet> bj;
    bj.reserve(static_cast<size_t>(k) - 1);
    for (int j = 0; j <= k - 2; ++j) bj.push_back(ode_.coeff(j).jet_at(center, std::max(N - k, 0)));

    std::vector<cplx> c(static_cast<size_t>(N) + 1, cplx(0.0));
    for (int m = 0; m < k && m <= N; ++m) c[static_cast<size_t>(m)] = leading[static_cast<size_t>(m)];
    for (int m = 0; m + k <= N; ++m) {
      cplx s = 0.0;
      for (int j = 0; j <= k - 2; ++j) {
        const Jet& B = bj[static_cast<size_t>(j)];
        cplx conv = 0.0;
        int top = std::min(m, B.order());
        for (int p = 0; p <= top; ++p) {
          int q = m - p;
          conv += B.coeff(p) * (c[static_cast<size_t>(q + j)] * rising_product(q, j));
        }
        s += conv;
      }
      c[static_cast<size_t>(m + k)] = -s / rising_product(m, k);
    }
    return Jet(center, std::move(c));
  }

  SolutionDisc make_disc(cplx center, const std::vector<cplx>& leading) const {
    double clearance = ode_.domain().boundary_clearance(center);
    if (!(clearance > 0.0)) throw StepUnderflowError(center, std::abs(center));
    Jet jet = series_at(center, leading, opts_.jet_order);
    double radius = std::min(opts_.safety * clearance, numerical_radius(jet));
    return SolutionDisc{center, radius, std::move(jet)};
  }

  LinearOde ode_;
  cplx base_;
  TaylorOptions opts_;
  mutable std::mutex mu_;
  std::vector<SolutionDisc> discs_;
};

}  // namespace detail

// Series solution of the equation with the given derivative values at z0,
// continued along the polyline z0 -> path[0] -> ... .  The evaluator answers
// jet queries inside any stored step disc and extends itself along a straight
// run from the nearest stored center when asked outside.
inline SolutionEvaluator taylor_solve(const LinearOde& ode, cplx z0, std::vector<cplx> initial,
                                      std::vector<cplx> path = {}, TaylorOptions opts = {}) {
  auto track = std::make_shared<detail::ContinuationTrack>(ode, z0, initial, opts);
  if (!path.empty()) track->extend_along(path);
  AnalyticFunction fn(ode.domain(),
                      [track](cplx z, int order) { return track->jet_at(z, order); });
  return SolutionEvaluator(std::move(fn), z0, std::move(initial));
}

}  // namespace ldeconf

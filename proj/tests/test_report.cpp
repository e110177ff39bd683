#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "fixtures.hpp"

using namespace ldeconf;
using testutil::rel_err;

TEST_CASE("radial grid validation") {
  CHECK_THROWS_AS(RadialGrid::log_spaced(0.9, 0.5, 10, 0.5), std::invalid_argument);
  RadialGrid bad;
  bad.radii = {0.5, 0.4};
  bad.shrink_b = 0.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.radii = {0.5, 0.6};
  bad.shrink_b = 1.2;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  RadialGrid g = RadialGrid::log_spaced(0.5, 0.9, 8, 0.25);
  CHECK(g.radii.size() == 8);
  CHECK(rel_err(g.s(0.9), 1.0 - 0.25 * 0.1) < 1e-14);
}

TEST_CASE("zero-free constant system reduces the bound to the log term") {
  // Second-order system with constant coefficient through the identity map:
  // both base functions and their sum are zero-free, so the counting side is
  // exactly the squared logarithm.
  Domain dom = Domain::image(ConformalMap::identity());
  fixtures::TestSystem sys = fixtures::constant_system(2, dom);
  RadialGrid grid = RadialGrid::linear(0.5, 0.9, 9, 0.5);
  ReportOptions opt;
  opt.counting_radii = 12;
  OscillationReport rep = oscillation_report(sys.base, ConformalMap::identity(), sys.ode, grid, opt);

  REQUIRE(rep.rows.size() == 9);
  for (const OscillationRow& row : rep.rows) {
    CHECK(row.rhs_N_sum == 0.0);
    CHECK(row.rhs_cross_sum == 0.0);
    double le = std::log(std::exp(1.0) / (1.0 - row.r));
    CHECK(rel_err(row.log2_term, le * le) < 1e-14);
    CHECK(row.ratio > 0.0);
    CHECK(row.ratio < 1.0);  // area grows like pi r^2, the bound like log^2
    CHECK(row.cor_N_sum == 0.0);
    CHECK(row.cor_cross_sum == 0.0);
  }
  // e^{z} and e^{-z}: the cross function e^z + e^{-z} is zero-free in the disc
  // (its zeros sit at Re z = 0, Im z = (2m+1) pi/2, all outside |z| < 1).
  for (const CountingFunction& cf : rep.cross_counts)
    for (const auto& rec : cf.records()) CHECK(rec.n == 0);
}

TEST_CASE("report rows are monotone where the data is monotone") {
  OscillationReport rep = presets::run_petal51(1.5, 0.9, 8);
  for (size_t i = 0; i + 1 < rep.rows.size(); ++i) {
    CHECK(rep.rows[i].I[0] <= rep.rows[i + 1].I[0] * (1.0 + 5e-3));
    CHECK(rep.rows[i].rhs_cross_sum <= rep.rows[i + 1].rhs_cross_sum + 1e-12);
  }
  // The pair sum oscillates: its count records must be nondecreasing.
  REQUIRE(rep.cross_counts.size() == 1);
  const auto& recs = rep.cross_counts[0].records();
  CHECK(recs.back().n > 0);
  for (size_t i = 0; i + 1 < recs.size(); ++i) CHECK(recs[i].n <= recs[i + 1].n);
}

TEST_CASE("csv serialization is stable and well formed") {
  OscillationReport rep = presets::run_petal51(1.5, 0.85, 6);
  std::ostringstream a, b;
  rep.to_csv(a);
  rep.to_csv(b);
  std::string sa = a.str();
  CHECK(sa == b.str());
  CHECK(sa.rfind("r,s_r,I_0,rhs_N_sum,rhs_cross_sum,log2_term,ratio\n", 0) == 0);
  // One line per radius plus the header.
  size_t lines = static_cast<size_t>(std::count(sa.begin(), sa.end(), '\n'));
  CHECK(lines == rep.rows.size() + 1);
}

TEST_CASE("coefficient growth never outruns the counting side") {
  // Fitted exponent of each coefficient integral stays within 0.1 of the
  // exponent of the full counting side, on both shipped examples.
  presets::GrowthAsymptotics petal = presets::petal51_asymptotics(1.5);
  CHECK(petal.I_exponent <= petal.rhs_exponent + 0.1);
  presets::GrowthAsymptotics sums = presets::expsum52_asymptotics(1.5);
  CHECK(sums.I_exponent <= sums.rhs_exponent + 0.1);
}

TEST_CASE("run twice gives identical reports") {
  OscillationReport r1 = presets::run_expsum52(1.5, 0.85, 6);
  OscillationReport r2 = presets::run_expsum52(1.5, 0.85, 6);
  REQUIRE(r1.rows.size() == r2.rows.size());
  for (size_t i = 0; i < r1.rows.size(); ++i) {
    CHECK(r1.rows[i].I == r2.rows[i].I);
    CHECK(r1.rows[i].rhs_cross_sum == r2.rows[i].rhs_cross_sum);
    CHECK(r1.rows[i].ratio == r2.rows[i].ratio);
  }
}

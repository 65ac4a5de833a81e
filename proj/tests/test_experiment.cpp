#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "linerecon/errors.hpp"
#include "linerecon/experiment.hpp"
#include "linerecon/rng.hpp"
#include "linerecon/serialization.hpp"

using namespace linerecon;

TEST_CASE("sweep_probability modes") {
  CHECK(sweep_probability(GridMode::kAbsolute, 100, 0.25) == 0.25);
  CHECK(sweep_probability(GridMode::kCOverN, 100, 42.0) == doctest::Approx(0.42));
  const double sharp = sweep_probability(GridMode::kSharpWindow, 100, 0.0);
  CHECK(sharp == doctest::Approx((std::log(100) + std::log(std::log(100))) / 100));
  CHECK(sweep_probability(GridMode::kSharpWindow, 100, -1000.0) == 0.0);
}

TEST_CASE("sweep emits one row per grid point in order") {
  SweepConfig cfg;
  cfg.ns = {24};
  cfg.mode = GridMode::kSharpWindow;
  for (int c = -6; c <= 6; ++c) cfg.grid.push_back(c);
  cfg.trials = 3;
  cfg.master_seed = 5;
  cfg.engine.cycle_cap = 4;
  const auto rows = run_sweep(cfg);
  REQUIRE(rows.size() == 13);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].n == 24);
    CHECK(rows[i].c == doctest::Approx(-6.0 + static_cast<double>(i)));
    CHECK(rows[i].trials == 3);
    CHECK(rows[i].frac_full >= 0.0);
    CHECK(rows[i].frac_full <= 1.0);
    CHECK(rows[i].mean_frac_certified >= 0.0);
    CHECK(rows[i].mean_frac_certified <= 1.0);
    CHECK(rows[i].frac_struct_fail >= 0.0);
    CHECK(rows[i].frac_struct_fail <= 1.0);
  }
}

TEST_CASE("sweep CSV is byte-identical across runs") {
  SweepConfig cfg;
  cfg.ns = {16};
  cfg.mode = GridMode::kCOverN;
  cfg.grid = {2.0, 6.0, 10.0};
  cfg.trials = 4;
  cfg.master_seed = 12;
  cfg.engine.cycle_cap = 3;
  const std::string a = sweep_csv(run_sweep(cfg));
  const std::string b = sweep_csv(run_sweep(cfg));
  CHECK(a == b);
  CHECK(a.rfind("#schema=1\n", 0) == 0);
  CHECK(a.find("n,p,c,trials,frac_full,mean_frac_certified,"
               "median_frac_certified,frac_struct_fail,mean_tau_struct,"
               "mean_tau_engine,agreement_rate,seconds") != std::string::npos);
  CHECK(std::count(a.begin(), a.end(), '\n') == 5);
  // threads must not change the bytes
  cfg.threads = 4;
  CHECK(sweep_csv(run_sweep(cfg)) == a);
}

TEST_CASE("sweep with taus fills the tau columns") {
  SweepConfig cfg;
  cfg.ns = {12};
  cfg.mode = GridMode::kCOverN;
  cfg.grid = {6.0};
  cfg.trials = 2;
  cfg.master_seed = 3;
  cfg.engine.cycle_cap = 3;
  cfg.with_taus = true;
  const auto rows = run_sweep(cfg);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].mean_tau_struct > 0);
  CHECK(rows[0].mean_tau_engine >= rows[0].mean_tau_struct);
  CHECK(rows[0].agreement_rate >= 0.0);

  cfg.with_taus = false;
  const auto bare = run_sweep(cfg);
  CHECK(std::isnan(bare[0].mean_tau_struct));
  CHECK(std::isnan(bare[0].agreement_rate));
}

TEST_CASE("estimate_noncycle_fraction") {
  const PointSet tri = make_point_set({0, 1, 3});
  CHECK(estimate_noncycle_fraction(tri, 3, 500, 1) == 0.0);

  const PointSet prog = gen_progression(1000);
  const double frac = estimate_noncycle_fraction(prog, 3, 4000, 2);
  CHECK(frac > 0.0);  // collinear coincidences are common in 1..n

  const PointSet gen = gen_generic(1000, 3);
  CHECK(estimate_noncycle_fraction(gen, 4, 2000, 4) <= 0.01);

  CHECK_THROWS_AS(estimate_noncycle_fraction(tri, 2, 10, 0), ValidationError);
  CHECK_THROWS_AS(estimate_noncycle_fraction(tri, 9, 10, 0), ValidationError);
  CHECK_THROWS_AS(estimate_noncycle_fraction(tri, 3, 0, 0), ValidationError);
}

TEST_CASE("estimator is deterministic per seed") {
  const PointSet prog = gen_progression(200);
  CHECK(estimate_noncycle_fraction(prog, 3, 1000, 7) ==
        estimate_noncycle_fraction(prog, 3, 1000, 7));
}

TEST_CASE("svg plot") {
  SweepRow row;
  row.n = 10;
  row.p = 0.5;
  row.frac_full = 0.5;
  row.mean_frac_certified = 0.75;
  const std::string one = render_svg_plot({row});
  CHECK(one.find("<svg") == 0);
  CHECK(one.find("</svg>") != std::string::npos);

  CHECK_THROWS_AS(render_svg_plot({}), ValidationError);

  SweepRow other = row;
  other.n = 11;
  CHECK_THROWS_AS(render_svg_plot({row, other}), ValidationError);

  std::vector<SweepRow> rows;
  for (int i = 0; i < 13; ++i) {
    SweepRow r;
    r.n = 10;
    r.p = 0.1 + 0.05 * i;
    r.frac_full = i / 13.0;
    r.mean_frac_certified = 0.5 + i / 26.0;
    rows.push_back(r);
  }
  const std::string multi = render_svg_plot(rows);
  CHECK(std::count(multi.begin(), multi.end(), '\n') > 10);
  CHECK(multi.find("polyline") != std::string::npos);

  const std::string path = "/tmp/linerecon_test_plot.svg";
  emit_svg_plot(rows, path);
  std::ifstream in(path);
  CHECK(in.good());
  std::remove(path.c_str());
}

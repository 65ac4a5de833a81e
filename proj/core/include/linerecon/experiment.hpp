#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "linerecon/engine.hpp"
#include "linerecon/process_sim.hpp"

namespace linerecon {

enum class GridMode { kAbsolute, kCOverN, kSharpWindow };

struct SweepConfig {
  std::vector<int> ns;
  GridMode mode = GridMode::kSharpWindow;
  std::vector<double> grid;  // p values, or c with p = c/n, or the sharp c
  int trials = 1;
  SourceKind source = SourceKind::kGeneric;
  EngineParams engine;
  std::uint64_t master_seed = 0;
  int threads = 1;
  bool with_taus = false;   // schedule replays per trial (slow at scale)
  bool wall_times = false;  // real seconds break byte-reproducibility
};

struct SweepRow {
  int n = 0;
  double p = 0;
  double c = 0;  // nan in absolute mode
  int trials = 0;
  double frac_full = 0;
  double mean_frac_certified = 0;
  double median_frac_certified = 0;
  double frac_struct_fail = 0;
  double mean_tau_struct = 0;   // nan without --with-taus
  double mean_tau_engine = 0;   // nan without --with-taus
  double agreement_rate = 0;    // nan without --with-taus
  double seconds = 0;
};

double sweep_probability(GridMode mode, int n, double grid_value);

std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

/// Fixed schema: one `#schema=1` comment line, a header, one row per grid
/// point, in grid order.
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Monte Carlo estimate of the fraction of ordered k-tuples of distinct
/// points that are not cycle-reconstructible (sign vector not unique).
double estimate_noncycle_fraction(const PointSet& V, int k, long long samples,
                                  std::uint64_t seed);

/// Standalone line chart of p against the fully-reconstructed fraction and
/// the mean certified fraction. Rows must be non-empty and share one n.
void emit_svg_plot(const std::vector<SweepRow>& rows, const std::string& path);
std::string render_svg_plot(const std::vector<SweepRow>& rows);

}  // namespace linerecon

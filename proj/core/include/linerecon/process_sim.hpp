#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linerecon/engine.hpp"
#include "linerecon/oracle.hpp"
#include "linerecon/point_set.hpp"

namespace linerecon {

/// Hitting times are 1-based counts of revealed distances.
struct TrialRecord {
  int n = 0;
  std::uint64_t seed = 0;
  long long tau_isolated_free = -1;
  long long tau_mindeg2 = -1;
  long long tau_struct = -1;
  long long tau_engine = -1;
  std::optional<long long> tau_oracle;
  long long secure_pairs = 0;
  int degree_one_at_struct = 0;
};

struct TrialParams {
  // The online engine replays from the first reveal so tau_engine means
  // "first reveal after which the pipeline certifies all of V".
  EngineParams engine{/*cycle_cap=*/0, /*seed_edge_budget=*/0};
  bool oracle = false;
  int oracle_cap = kDefaultOracleCap;
};

/// True iff some degree-one vertex is undecidable; a deterministic witness
/// of non-reconstructibility for n >= 3.
bool degree_one_necessity_check(const PointSet& V, const DistanceGraph& G);

TrialRecord run_trial_with_schedule(const PointSet& V,
                                    const RevealSchedule& schedule,
                                    std::uint64_t seed,
                                    const TrialParams& params = {});

/// Draws the schedule from the seed, replays it through degree tracking, the
/// structural condition, the online engine, and (optionally) the oracle.
TrialRecord run_trial(const PointSet& V, std::uint64_t seed,
                      const TrialParams& params = {});

enum class SourceKind { kGeneric, kProgression, kExplicit, kProduct };

struct TrialConfig {
  SourceKind source = SourceKind::kGeneric;
  int n = 0;
  int k = 0;  // product construction
  int ell = 0;
  std::optional<PointSet> explicit_set;
  std::uint64_t master_seed = 0;
  int trials = 1;
  TrialParams params;
  int threads = 1;
};

struct TrialSummary {
  int trials = 0;
  double mean_tau_isolated_free = 0;
  double mean_tau_mindeg2 = 0;
  double mean_tau_struct = 0;
  double mean_tau_engine = 0;
  double median_tau_struct = 0;
  double median_tau_engine = 0;
  double engine_struct_agreement = 0;  // fraction with tau_engine == tau_struct
  double oracle_struct_agreement = -1; // -1 when the oracle was off
};

struct MonteCarloResult {
  std::vector<TrialRecord> records;  // in trial-index order
  TrialSummary summary;
};

/// Per-index derived seeds; the generic source draws a fresh point set per
/// trial, the other sources reuse one set with fresh schedules.
MonteCarloResult monte_carlo(const TrialConfig& cfg);

/// The point set a config names (for non-generic sources; generic sources
/// get per-trial sets inside monte_carlo).
PointSet config_point_set(const TrialConfig& cfg, std::uint64_t trial_index);

TrialSummary summarize(const std::vector<TrialRecord>& records);

}  // namespace linerecon

#include "linerecon/process_sim.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "linerecon/errors.hpp"
#include "linerecon/rng.hpp"

namespace linerecon {

bool degree_one_necessity_check(const PointSet& V, const DistanceGraph& G) {
  return !undecidable_points(G, V).empty();
}

TrialRecord run_trial_with_schedule(const PointSet& V,
                                    const RevealSchedule& schedule,
                                    std::uint64_t seed,
                                    const TrialParams& params) {
  const int n = V.size();
  if (n < 3) throw ValidationError("run_trial requires n >= 3");
  if (schedule.n != n) throw ValidationError("schedule/point-set size mismatch");

  TrialRecord rec;
  rec.n = n;
  rec.seed = seed;
  rec.secure_pairs = count_secure_pairs(V);

  EngineState engine(n, params.engine);
  std::vector<int> degree(n, 0);
  std::vector<int> only_neighbor(n, -1);
  std::vector<char> undecidable(n, 0);
  int isolated = n;
  int deg_one = 0;
  int undec = 0;

  long long t = 0;
  for (const auto& [u, v] : schedule.order) {
    ++t;
    engine.reveal(u, v, abs_coord(V.coord(u) - V.coord(v)));
    for (const auto& [x, o] : {std::pair(u, v), std::pair(v, u)}) {
      ++degree[x];
      if (degree[x] == 1) {
        --isolated;
        ++deg_one;
        only_neighbor[x] = o;
        undecidable[x] = !is_secure(x, o, V);
        if (undecidable[x]) ++undec;
      } else if (degree[x] == 2) {
        --deg_one;
        if (undecidable[x]) {
          undecidable[x] = 0;
          --undec;
        }
      }
    }
    if (rec.tau_isolated_free < 0 && isolated == 0) rec.tau_isolated_free = t;
    const bool structural = isolated == 0 && undec == 0;
    if (rec.tau_struct < 0 && structural) {
      rec.tau_struct = t;
      rec.degree_one_at_struct = deg_one;
    }
    if (rec.tau_mindeg2 < 0 && isolated == 0 && deg_one == 0) {
      rec.tau_mindeg2 = t;
    }
    // Certified-full implies reconstructible implies the structural
    // condition, so the cluster fixed point only needs computing at
    // structural times.
    if (rec.tau_engine < 0 && structural && engine.certified_full()) {
      rec.tau_engine = t;
    }
    if (rec.tau_isolated_free >= 0 && rec.tau_struct >= 0 &&
        rec.tau_mindeg2 >= 0 && rec.tau_engine >= 0) {
      break;
    }
  }
  if (rec.tau_engine < 0) {
    throw std::logic_error("engine did not certify the complete graph");
  }

  if (params.oracle) {
    rec.tau_oracle = hitting_time_exact(V, schedule, params.oracle_cap);
  }

  if (!(rec.tau_isolated_free <= rec.tau_struct &&
        rec.tau_struct <= rec.tau_mindeg2)) {
    throw std::logic_error("hitting-time ordering violated");
  }
  if (rec.tau_oracle &&
      !(rec.tau_struct <= *rec.tau_oracle && *rec.tau_oracle <= rec.tau_engine)) {
    throw std::logic_error("oracle hitting time outside [struct, engine]");
  }
  return rec;
}

TrialRecord run_trial(const PointSet& V, std::uint64_t seed,
                      const TrialParams& params) {
  return run_trial_with_schedule(V, random_schedule(V.size(), seed), seed,
                                 params);
}

PointSet config_point_set(const TrialConfig& cfg, std::uint64_t trial_index) {
  switch (cfg.source) {
    case SourceKind::kGeneric:
      return gen_generic(cfg.n, derive_seed(cfg.master_seed, "points", trial_index));
    case SourceKind::kProgression:
      return gen_progression(cfg.n);
    case SourceKind::kProduct:
      return gen_product_construction(cfg.k, cfg.ell).first;
    case SourceKind::kExplicit:
      if (!cfg.explicit_set) throw ValidationError("explicit source needs a point set");
      return *cfg.explicit_set;
  }
  throw ValidationError("unknown source");
}

TrialSummary summarize(const std::vector<TrialRecord>& records) {
  TrialSummary s;
  s.trials = static_cast<int>(records.size());
  if (records.empty()) return s;
  std::vector<long long> struct_taus;
  std::vector<long long> engine_taus;
  int engine_agree = 0;
  int oracle_agree = 0;
  bool any_oracle = false;
  for (const TrialRecord& r : records) {
    s.mean_tau_isolated_free += static_cast<double>(r.tau_isolated_free);
    s.mean_tau_mindeg2 += static_cast<double>(r.tau_mindeg2);
    s.mean_tau_struct += static_cast<double>(r.tau_struct);
    s.mean_tau_engine += static_cast<double>(r.tau_engine);
    struct_taus.push_back(r.tau_struct);
    engine_taus.push_back(r.tau_engine);
    if (r.tau_engine == r.tau_struct) ++engine_agree;
    if (r.tau_oracle) {
      any_oracle = true;
      if (*r.tau_oracle == r.tau_struct) ++oracle_agree;
    }
  }
  const double n = static_cast<double>(records.size());
  s.mean_tau_isolated_free /= n;
  s.mean_tau_mindeg2 /= n;
  s.mean_tau_struct /= n;
  s.mean_tau_engine /= n;
  auto median = [](std::vector<long long>& v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? static_cast<double>(v[m])
                        : (static_cast<double>(v[m - 1]) + v[m]) / 2.0;
  };
  s.median_tau_struct = median(struct_taus);
  s.median_tau_engine = median(engine_taus);
  s.engine_struct_agreement = engine_agree / n;
  s.oracle_struct_agreement = any_oracle ? oracle_agree / n : -1.0;
  return s;
}

MonteCarloResult monte_carlo(const TrialConfig& cfg) {
  if (cfg.trials < 1) throw ValidationError("trial count must be >= 1");
  MonteCarloResult out;
  out.records.resize(cfg.trials);

  const PointSet shared = cfg.source == SourceKind::kGeneric
                              ? gen_progression(1)  // placeholder, unused
                              : config_point_set(cfg, 0);

  auto run_one = [&](int i) {
    const std::uint64_t trial_seed = derive_seed(cfg.master_seed, "trial", i);
    if (cfg.source == SourceKind::kGeneric) {
      out.records[i] = run_trial(config_point_set(cfg, i), trial_seed, cfg.params);
    } else {
      out.records[i] = run_trial(shared, trial_seed, cfg.params);
    }
  };

  const int threads = std::max(1, cfg.threads);
  if (threads == 1 || cfg.trials == 1) {
    for (int i = 0; i < cfg.trials; ++i) run_one(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(threads);
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (;;) {
            const int i = next.fetch_add(1);
            if (i >= cfg.trials) break;
            run_one(i);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  out.summary = summarize(out.records);
  return out;
}

}  // namespace linerecon

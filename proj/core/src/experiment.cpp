#include "linerecon/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include "linerecon/errors.hpp"
#include "linerecon/oracle.hpp"
#include "linerecon/rng.hpp"

namespace linerecon {

double sweep_probability(GridMode mode, int n, double grid_value) {
  double p = 0;
  switch (mode) {
    case GridMode::kAbsolute:
      p = grid_value;
      break;
    case GridMode::kCOverN:
      p = grid_value / n;
      break;
    case GridMode::kSharpWindow:
      p = (std::log(n) + std::log(std::log(n)) + grid_value) / n;
      break;
  }
  return std::clamp(p, 0.0, 1.0);
}

namespace {

struct TrialOutcome {
  bool full = false;
  double frac_certified = 0;
  bool struct_fail = false;
  long long tau_struct = -1;
  long long tau_engine = -1;
};

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2.0;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  if (cfg.ns.empty() || cfg.grid.empty()) {
    throw ValidationError("sweep grids must be non-empty");
  }
  if (cfg.trials < 1) throw ValidationError("trials must be >= 1");
  const double nan = std::nan("");
  std::vector<SweepRow> rows;
  std::uint64_t cell = 0;
  for (int n : cfg.ns) {
    for (double g : cfg.grid) {
      const double p = sweep_probability(cfg.mode, n, g);
      const auto start = std::chrono::steady_clock::now();
      std::vector<TrialOutcome> outcomes(cfg.trials);

      auto run_one = [&](int i) {
        const std::uint64_t stream_index = cell * 1'000'000ULL + i;
        TrialConfig tc;
        tc.source = cfg.source;
        tc.n = n;
        tc.master_seed = cfg.master_seed;
        PointSet V = cfg.source == SourceKind::kGeneric
                         ? gen_generic(n, derive_seed(cfg.master_seed, "points",
                                                      stream_index))
                         : config_point_set(tc, stream_index);
        const auto pairs =
            sample_gnp(n, p, derive_seed(cfg.master_seed, "gnp", stream_index));
        const DistanceGraph G = observe_distances(V, pairs);
        TrialOutcome& o = outcomes[i];
        const ReconReport rep = reconstruct(G, cfg.engine);
        o.full = rep.full;
        o.frac_certified = static_cast<double>(rep.largest) / n;
        o.struct_fail = !structural_condition(G, V);
        if (cfg.with_taus) {
          TrialParams tp;
          tp.engine = cfg.engine;
          tp.engine.seed_edge_budget = 0;
          const TrialRecord rec = run_trial(
              V, derive_seed(cfg.master_seed, "tau", stream_index), tp);
          o.tau_struct = rec.tau_struct;
          o.tau_engine = rec.tau_engine;
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

      SweepRow row;
      row.n = n;
      row.p = p;
      row.c = cfg.mode == GridMode::kAbsolute ? nan : g;
      row.trials = cfg.trials;
      std::vector<double> fracs;
      int full = 0;
      int fail = 0;
      int agree = 0;
      double tau_s = 0;
      double tau_e = 0;
      for (const TrialOutcome& o : outcomes) {
        full += o.full;
        fail += o.struct_fail;
        fracs.push_back(o.frac_certified);
        row.mean_frac_certified += o.frac_certified;
        if (cfg.with_taus) {
          tau_s += static_cast<double>(o.tau_struct);
          tau_e += static_cast<double>(o.tau_engine);
          agree += o.tau_struct == o.tau_engine;
        }
      }
      row.frac_full = static_cast<double>(full) / cfg.trials;
      row.frac_struct_fail = static_cast<double>(fail) / cfg.trials;
      row.mean_frac_certified /= cfg.trials;
      row.median_frac_certified = median_of(fracs);
      row.mean_tau_struct = cfg.with_taus ? tau_s / cfg.trials : nan;
      row.mean_tau_engine = cfg.with_taus ? tau_e / cfg.trials : nan;
      row.agreement_rate =
          cfg.with_taus ? static_cast<double>(agree) / cfg.trials : nan;
      const auto elapsed = std::chrono::steady_clock::now() - start;
      row.seconds =
          cfg.wall_times
              ? std::chrono::duration_cast<std::chrono::duration<double>>(elapsed)
                    .count()
              : 0.0;
      rows.push_back(row);
      ++cell;
    }
  }
  return rows;
}

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

}  // namespace

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "#schema=1\n";
  out +=
      "n,p,c,trials,frac_full,mean_frac_certified,median_frac_certified,"
      "frac_struct_fail,mean_tau_struct,mean_tau_engine,agreement_rate,"
      "seconds\n";
  for (const SweepRow& r : rows) {
    out += std::to_string(r.n) + "," + fmt(r.p) + "," + fmt(r.c) + "," +
           std::to_string(r.trials) + "," + fmt(r.frac_full) + "," +
           fmt(r.mean_frac_certified) + "," + fmt(r.median_frac_certified) +
           "," + fmt(r.frac_struct_fail) + "," + fmt(r.mean_tau_struct) + "," +
           fmt(r.mean_tau_engine) + "," + fmt(r.agreement_rate) + "," +
           fmt(r.seconds) + "\n";
  }
  return out;
}

double estimate_noncycle_fraction(const PointSet& V, int k, long long samples,
                                  std::uint64_t seed) {
  const int n = V.size();
  const int max_k = static_cast<int>(std::floor(0.9 * std::log(n))) + 1;
  if (k < 3 || k > max_k) {
    throw ValidationError("k must satisfy 3 <= k <= floor(0.9 ln n) + 1");
  }
  if (samples < 1) throw ValidationError("samples must be >= 1");
  SplitMix64 rng = derive_stream(seed, "tuples");
  long long failures = 0;
  std::vector<int> tuple(k);
  for (long long s = 0; s < samples; ++s) {
    for (int i = 0; i < k;) {
      const int cand = static_cast<int>(rng.below(n));
      bool dup = false;
      for (int j = 0; j < i; ++j) {
        if (tuple[j] == cand) {
          dup = true;
          break;
        }
      }
      if (!dup) tuple[i++] = cand;
    }
    std::vector<Coordinate> consecutive;
    consecutive.reserve(k - 1);
    for (int i = 0; i + 1 < k; ++i) {
      consecutive.push_back(abs_coord(V.coord(tuple[i + 1]) - V.coord(tuple[i])));
    }
    const Coordinate closing = abs_coord(V.coord(tuple[0]) - V.coord(tuple[k - 1]));
    if (cycle_sign_solutions(consecutive, closing).size() != 1) ++failures;
  }
  return static_cast<double>(failures) / static_cast<double>(samples);
}

std::string render_svg_plot(const std::vector<SweepRow>& rows) {
  if (rows.empty()) throw ValidationError("no rows to plot");
  const int n = rows[0].n;
  for (const SweepRow& r : rows) {
    if (r.n != n) throw ValidationError("plot rows must share one n");
  }
  const double w = 800, h = 500, ml = 70, mr = 20, mt = 40, mb = 50;
  double pmin = rows[0].p, pmax = rows[0].p;
  for (const SweepRow& r : rows) {
    pmin = std::min(pmin, r.p);
    pmax = std::max(pmax, r.p);
  }
  if (pmax == pmin) pmax = pmin + 1e-12;
  const auto x = [&](double p) {
    return ml + (p - pmin) / (pmax - pmin) * (w - ml - mr);
  };
  const auto y = [&](double f) { return h - mb - f * (h - mt - mb); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
         "height=\"500\" viewBox=\"0 0 800 500\">\n";
  svg += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
  svg += "<text x=\"400\" y=\"22\" text-anchor=\"middle\" font-size=\"16\">"
         "reconstruction vs reveal probability (n=" + std::to_string(n) +
         ")</text>\n";
  // axes
  svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(h - mb) + "\" x2=\"" +
         fmt(w - mr) + "\" y2=\"" + fmt(h - mb) +
         "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(mt) + "\" x2=\"" + fmt(ml) +
         "\" y2=\"" + fmt(h - mb) + "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double f = i / 5.0;
    svg += "<text x=\"" + fmt(ml - 8) + "\" y=\"" + fmt(y(f) + 4) +
           "\" text-anchor=\"end\" font-size=\"11\">" + fmt(f) + "</text>\n";
    const double p = pmin + f * (pmax - pmin);
    svg += "<text x=\"" + fmt(x(p)) + "\" y=\"" + fmt(h - mb + 18) +
           "\" text-anchor=\"middle\" font-size=\"11\">" + fmt(p) +
           "</text>\n";
  }
  svg += "<text x=\"400\" y=\"" + fmt(h - 12) +
         "\" text-anchor=\"middle\" font-size=\"13\">p</text>\n";

  const auto polyline = [&](const char* color, auto getter) {
    std::string pts;
    for (const SweepRow& r : rows) {
      pts += fmt(x(r.p)) + "," + fmt(y(getter(r))) + " ";
    }
    return std::string("<polyline fill=\"none\" stroke=\"") + color +
           "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
  };
  svg += polyline("#1f77b4", [](const SweepRow& r) { return r.frac_full; });
  svg += polyline("#d62728",
                  [](const SweepRow& r) { return r.mean_frac_certified; });
  svg += "<text x=\"" + fmt(w - mr - 240) + "\" y=\"" + fmt(mt + 8) +
         "\" font-size=\"12\" fill=\"#1f77b4\">fraction fully "
         "reconstructed</text>\n";
  svg += "<text x=\"" + fmt(w - mr - 240) + "\" y=\"" + fmt(mt + 26) +
         "\" font-size=\"12\" fill=\"#d62728\">mean certified "
         "fraction</text>\n";
  svg += "</svg>\n";
  return svg;
}

void emit_svg_plot(const std::vector<SweepRow>& rows, const std::string& path) {
  const std::string svg = render_svg_plot(rows);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << svg;
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace linerecon

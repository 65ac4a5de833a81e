// Command-line surface for the reconstruction toolkit: generators, single
// reconstructions, hitting-time campaigns, threshold sweeps, the
// non-cycle-reconstructible tuple estimator, and the adversarial
// construction check.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "linerecon/errors.hpp"
#include "linerecon/experiment.hpp"
#include "linerecon/oracle.hpp"
#include "linerecon/process_sim.hpp"
#include "linerecon/serialization.hpp"

namespace {

using namespace linerecon;

std::string resolve_out(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* dir = std::getenv("LINERECON_OUT_DIR");
  if (dir == nullptr || *dir == '\0') return path;
  std::string d = dir;
  if (d.back() != '/') d += '/';
  return d + path;
}

PointSet load_points(const std::string& path) {
  const std::string text = read_file(path);
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
    return point_set_from_json(text);
  }
  return point_set_from_text(text);
}

DistanceGraph load_graph(const std::string& path) {
  const std::string text = read_file(path);
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
    return graph_from_json(text);
  }
  return graph_from_text(text);
}

std::vector<double> parse_grid(const std::string& spec) {
  // "lo..hi[:step]" or a comma-separated list.
  std::vector<double> grid;
  const auto dots = spec.find("..");
  if (dots != std::string::npos) {
    const double lo = std::stod(spec.substr(0, dots));
    std::string rest = spec.substr(dots + 2);
    double step = 1.0;
    const auto colon = rest.find(':');
    if (colon != std::string::npos) {
      step = std::stod(rest.substr(colon + 1));
      rest = rest.substr(0, colon);
    }
    const double hi = std::stod(rest);
    if (step <= 0) throw ValidationError("--grid step must be positive");
    for (double v = lo; v <= hi + 1e-12; v += step) grid.push_back(v);
    return grid;
  }
  std::size_t pos = 0;
  while (pos < spec.size()) {
    auto comma = spec.find(',', pos);
    if (comma == std::string::npos) comma = spec.size();
    grid.push_back(std::stod(spec.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return grid;
}

SourceKind parse_source(const std::string& s) {
  if (s == "generic") return SourceKind::kGeneric;
  if (s == "progression") return SourceKind::kProgression;
  if (s == "product") return SourceKind::kProduct;
  if (s == "explicit") return SourceKind::kExplicit;
  throw ValidationError("--source must be generic|progression|product|explicit");
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
  } else {
    write_file(resolve_out(path), content);
  }
}

int run(int argc, char** argv) {
  CLI::App app{"point-set reconstruction from randomly revealed distances"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "emit a point set");
  std::string gen_source = "generic";
  int gen_n = 0, gen_k = 0, gen_l = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out, gen_pairs_out;
  bool gen_json = false;
  gen->add_option("--source", gen_source, "generic|progression|product");
  gen->add_option("--n", gen_n, "number of points");
  gen->add_option("--k", gen_k, "product construction clique size");
  gen->add_option("--l", gen_l, "product construction clique count");
  gen->add_option("--seed", gen_seed, "seed (generic source)");
  gen->add_option("--out", gen_out, "output path (default stdout)");
  gen->add_option("--pairs-out", gen_pairs_out,
                  "also write the construction's edge graph (product only)");
  gen->add_flag("--json", gen_json, "emit JSON instead of text");

  // reconstruct
  auto* rec = app.add_subcommand("reconstruct", "run the engine on a graph");
  std::string rec_points, rec_edges, rec_json_out;
  EngineParams rec_params;
  rec->add_option("--points", rec_points, "point-set file")->required();
  rec->add_option("--edges", rec_edges, "edge-list file")->required();
  rec->add_option("--cycle-cap", rec_params.cycle_cap,
                  "cycle length cap (0 = 0.9 ln n)");
  rec->add_option("--walk-budget", rec_params.walk_budget,
                  "cycle enumeration step budget");
  rec->add_option("--json-out", rec_json_out, "write the full report JSON");

  // hitting
  auto* hit = app.add_subcommand("hitting", "hitting-time trial campaign");
  std::string hit_source = "generic", hit_points;
  TrialConfig hit_cfg;
  std::string hit_csv, hit_jsonl, hit_summary;
  hit->add_option("--source", hit_source, "generic|progression|product|explicit");
  hit->add_option("--points", hit_points, "explicit point-set file");
  hit->add_option("--n", hit_cfg.n, "number of points");
  hit->add_option("--k", hit_cfg.k, "product k");
  hit->add_option("--l", hit_cfg.ell, "product l");
  hit->add_option("--seed", hit_cfg.master_seed, "master seed");
  hit->add_option("--trials", hit_cfg.trials, "trial count");
  hit->add_flag("--oracle", hit_cfg.params.oracle, "exact oracle hitting times");
  hit->add_option("--cap", hit_cfg.params.oracle_cap, "oracle component cap");
  hit->add_option("--cycle-cap", hit_cfg.params.engine.cycle_cap,
                  "engine cycle cap (0 = 0.9 ln n)");
  hit->add_option("--edge-budget", hit_cfg.params.engine.seed_edge_budget,
                  "online seed-phase edge budget (default 0: run from the "
                  "first reveal)");
  hit->add_option("--threads", hit_cfg.threads, "worker threads");
  hit->add_option("--csv", hit_csv, "trial records CSV path");
  hit->add_option("--jsonl", hit_jsonl, "trial records JSONL path");
  hit->add_option("--summary", hit_summary, "summary JSON path");

  // oracle
  auto* orc = app.add_subcommand("oracle", "exact embedding oracle");
  std::string orc_points, orc_edges, orc_out;
  int orc_cap = kDefaultOracleCap;
  orc->add_option("--points", orc_points, "point-set file")->required();
  orc->add_option("--edges", orc_edges, "edge-list file")->required();
  orc->add_option("--cap", orc_cap, "component size cap");
  orc->add_option("--out", orc_out, "result JSON path (default stdout)");

  // adversarial
  auto* adv = app.add_subcommand(
      "adversarial", "largest reconstructible set of the k-connected "
                     "clique-path construction");
  int adv_k = 0, adv_l = 0, adv_cap = kDefaultOracleCap;
  adv->add_option("--k", adv_k, "clique size")->required();
  adv->add_option("--l", adv_l, "clique count")->required();
  adv->add_option("--cap", adv_cap, "oracle component cap");

  // sweep
  auto* swp = app.add_subcommand("sweep", "threshold sweep over p");
  SweepConfig sweep_cfg;
  std::string swp_ns = "1000", swp_grid, swp_mode = "sharp",
              swp_source = "generic", swp_out, swp_svg;
  swp->add_option("--n", swp_ns, "n values, comma separated");
  swp->add_option("--c-grid,--grid", swp_grid, "grid: lo..hi[:step] or list")
      ->required();
  swp->add_option("--mode", swp_mode, "sharp|cn|absolute");
  swp->add_option("--trials", sweep_cfg.trials, "trials per grid point");
  swp->add_option("--seed", sweep_cfg.master_seed, "master seed");
  swp->add_option("--source", swp_source, "generic|progression");
  swp->add_option("--cycle-cap", sweep_cfg.engine.cycle_cap,
                  "engine cycle cap (0 = 0.9 ln n)");
  swp->add_option("--walk-budget", sweep_cfg.engine.walk_budget,
                  "cycle enumeration step budget");
  swp->add_option("--threads", sweep_cfg.threads, "worker threads");
  swp->add_flag("--with-taus", sweep_cfg.with_taus,
                "replay schedules for tau columns (slow)");
  swp->add_flag("--wall-times", sweep_cfg.wall_times,
                "real seconds column (breaks byte reproducibility)");
  swp->add_option("--out", swp_out, "CSV path (default stdout)");
  swp->add_option("--svg", swp_svg, "also emit an SVG chart");

  // noncycle
  auto* non = app.add_subcommand(
      "noncycle", "estimate the non-cycle-reconstructible tuple fraction");
  int non_n = 0, non_k = 0;
  long long non_samples = 10000;
  std::uint64_t non_seed = 0;
  std::string non_points;
  non->add_option("--n", non_n, "generic set size");
  non->add_option("--points", non_points, "explicit point-set file");
  non->add_option("--k", non_k, "tuple length")->required();
  non->add_option("--samples", non_samples, "sample count");
  non->add_option("--seed", non_seed, "seed");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    if (gen_source == "product") {
      if (gen_k < 1 || gen_l < 1) {
        throw ValidationError("--k and --l are required for --source product");
      }
      auto [V, pairs] = gen_product_construction(gen_k, gen_l);
      emit(gen_out, gen_json ? point_set_to_json(V) : point_set_to_text(V));
      if (!gen_pairs_out.empty()) {
        emit(gen_pairs_out, graph_to_text(observe_distances(V, pairs)));
      }
      return 0;
    }
    if (gen_n < 1) throw ValidationError("--n must be >= 1");
    const PointSet V = gen_source == "generic" ? gen_generic(gen_n, gen_seed)
                                               : gen_progression(gen_n);
    emit(gen_out, gen_json ? point_set_to_json(V) : point_set_to_text(V));
    return 0;
  }

  if (rec->parsed()) {
    const PointSet V = load_points(rec_points);
    const DistanceGraph G = load_graph(rec_edges);
    if (G.size() != V.size()) {
      throw ValidationError("--points and --edges disagree on n");
    }
    const ReconReport report = reconstruct(G, rec_params);
    std::cout << "largest=" << report.largest << " full="
              << (report.full ? "true" : "false")
              << " clusters=" << report.clusters.size()
              << " deduced=" << report.deduced_edges << "\n";
    if (!rec_json_out.empty()) emit(rec_json_out, report_to_json(report));
    return 0;
  }

  if (hit->parsed()) {
    hit_cfg.source = parse_source(hit_source);
    if (!hit_points.empty()) {
      hit_cfg.source = SourceKind::kExplicit;
      hit_cfg.explicit_set = load_points(hit_points);
      hit_cfg.n = hit_cfg.explicit_set->size();
    }
    const MonteCarloResult result = monte_carlo(hit_cfg);
    if (!hit_csv.empty()) emit(hit_csv, trials_to_csv(result.records));
    if (!hit_jsonl.empty()) emit(hit_jsonl, trials_to_jsonl(result.records));
    const std::string summary = summary_to_json(result.summary);
    if (hit_summary.empty()) {
      std::cout << summary << "\n";
    } else {
      emit(hit_summary, summary);
    }
    return 0;
  }

  if (orc->parsed()) {
    const PointSet V = load_points(orc_points);
    const DistanceGraph G = load_graph(orc_edges);
    if (G.size() != V.size()) {
      throw ValidationError("--points and --edges disagree on n");
    }
    emit(orc_out, oracle_result_to_json(oracle_result(G, orc_cap)));
    if (!orc_out.empty()) {
      std::cout << "wrote " << resolve_out(orc_out) << "\n";
    }
    return 0;
  }

  if (adv->parsed()) {
    auto [V, pairs] = gen_product_construction(adv_k, adv_l);
    const DistanceGraph G = observe_distances(V, pairs);
    const auto largest = largest_reconstructible_set(G, adv_cap);
    std::cout << "largest reconstructible size " << largest.size() << "\n";
    std::cout << "members:";
    for (int v : largest) std::cout << " " << v;
    std::cout << "\n";
    return 0;
  }

  if (swp->parsed()) {
    for (double v : parse_grid(swp_ns)) sweep_cfg.ns.push_back(static_cast<int>(v));
    sweep_cfg.grid = parse_grid(swp_grid);
    if (swp_mode == "sharp") {
      sweep_cfg.mode = GridMode::kSharpWindow;
    } else if (swp_mode == "cn") {
      sweep_cfg.mode = GridMode::kCOverN;
    } else if (swp_mode == "absolute") {
      sweep_cfg.mode = GridMode::kAbsolute;
    } else {
      throw ValidationError("--mode must be sharp|cn|absolute");
    }
    sweep_cfg.source = parse_source(swp_source);
    const auto rows = run_sweep(sweep_cfg);
    emit(swp_out, sweep_csv(rows));
    if (!swp_svg.empty()) emit_svg_plot(rows, resolve_out(swp_svg));
    return 0;
  }

  if (non->parsed()) {
    PointSet V = non_points.empty() ? gen_generic(non_n, non_seed)
                                    : load_points(non_points);
    const double frac = estimate_noncycle_fraction(V, non_k, non_samples,
                                                   derive_seed(non_seed, "est", 0));
    std::cout << "non_cycle_reconstructible_fraction=" << frac << "\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

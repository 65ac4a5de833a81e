#pragma once

#include <string>
#include <vector>

#include "linerecon/distance_graph.hpp"
#include "linerecon/engine.hpp"
#include "linerecon/oracle.hpp"
#include "linerecon/point_set.hpp"
#include "linerecon/process_sim.hpp"

namespace linerecon {

// Point sets: one `<label> <coordinate>` line per point, and a JSON array of
// decimal strings indexed by label. Both round-trip exactly.
std::string point_set_to_text(const PointSet& V);
PointSet point_set_from_text(const std::string& text);
std::string point_set_to_json(const PointSet& V);
PointSet point_set_from_json(const std::string& json);

// Graphs: `n=<count>` header then `u v d` lines; JSON keeps provenance.
std::string graph_to_text(const DistanceGraph& G);
DistanceGraph graph_from_text(const std::string& text);
std::string graph_to_json(const DistanceGraph& G);
DistanceGraph graph_from_json(const std::string& json);

std::string schedule_to_json(const RevealSchedule& s);
RevealSchedule schedule_from_json(const std::string& json);

std::string report_to_json(const ReconReport& report);

std::string oracle_result_to_json(const OracleResult& result);

inline constexpr const char* kTrialCsvHeader =
    "n,seed,tau_isolated_free,tau_mindeg2,tau_struct,tau_engine,tau_oracle,"
    "secure_pairs,degree_one_at_struct";

std::string trials_to_csv(const std::vector<TrialRecord>& records);
std::string trials_to_jsonl(const std::vector<TrialRecord>& records);
std::string summary_to_json(const TrialSummary& summary);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace linerecon

#include "linerecon/serialization.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "linerecon/errors.hpp"

namespace linerecon {

using nlohmann::json;

std::string point_set_to_text(const PointSet& V) {
  std::string out;
  for (int i = 0; i < V.size(); ++i) {
    out += std::to_string(i) + " " + coord_str(V.coord(i)) + "\n";
  }
  return out;
}

PointSet point_set_from_text(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::pair<int, Coordinate>> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int label;
    std::string coord;
    if (!(ls >> label >> coord)) {
      throw IoError("malformed point line: " + line);
    }
    entries.emplace_back(label, coord_from_string(coord));
  }
  if (entries.empty()) throw IoError("empty point set");
  std::vector<Coordinate> coords(entries.size());
  std::vector<char> seen(entries.size(), 0);
  for (auto& [label, c] : entries) {
    if (label < 0 || label >= static_cast<int>(entries.size()) || seen[label]) {
      throw IoError("labels must be a permutation of 0..n-1");
    }
    seen[label] = 1;
    coords[label] = std::move(c);
  }
  return PointSet(std::move(coords));
}

std::string point_set_to_json(const PointSet& V) {
  json arr = json::array();
  for (int i = 0; i < V.size(); ++i) arr.push_back(coord_str(V.coord(i)));
  return arr.dump();
}

PointSet point_set_from_json(const std::string& text) {
  const json arr = json::parse(text);
  if (!arr.is_array() || arr.empty()) throw IoError("expected non-empty array");
  std::vector<Coordinate> coords;
  for (const auto& v : arr) {
    coords.push_back(coord_from_string(v.get<std::string>()));
  }
  return PointSet(std::move(coords));
}

std::string graph_to_text(const DistanceGraph& G) {
  std::string out = "n=" + std::to_string(G.size()) + "\n";
  for (const Edge& e : G.edges()) {
    out += std::to_string(e.u) + " " + std::to_string(e.v) + " " +
           coord_str(e.distance) + "\n";
  }
  return out;
}

DistanceGraph graph_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("n=", 0) != 0) throw IoError("expected n=<count> header");
    n = std::stoi(line.substr(2));
    break;
  }
  if (n < 1) throw IoError("missing or invalid n=<count> header");
  DistanceGraph G(n);
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int u, v;
    std::string d;
    if (!(ls >> u >> v >> d)) throw IoError("malformed edge line: " + line);
    G.add_edge(u, v, coord_from_string(d), Provenance::kRevealed);
  }
  return G;
}

std::string graph_to_json(const DistanceGraph& G) {
  json j;
  j["n"] = G.size();
  json edges = json::array();
  for (const Edge& e : G.edges()) {
    edges.push_back({{"u", e.u},
                     {"v", e.v},
                     {"d", coord_str(e.distance)},
                     {"provenance", e.provenance == Provenance::kRevealed
                                        ? "revealed"
                                        : "deduced"}});
  }
  j["edges"] = std::move(edges);
  return j.dump();
}

DistanceGraph graph_from_json(const std::string& text) {
  const json j = json::parse(text);
  DistanceGraph G(j.at("n").get<int>());
  for (const auto& e : j.at("edges")) {
    G.add_edge(e.at("u").get<int>(), e.at("v").get<int>(),
               coord_from_string(e.at("d").get<std::string>()),
               e.at("provenance").get<std::string>() == "deduced"
                   ? Provenance::kDeduced
                   : Provenance::kRevealed);
  }
  return G;
}

std::string schedule_to_json(const RevealSchedule& s) {
  json j;
  j["n"] = s.n;
  json order = json::array();
  for (const auto& [u, v] : s.order) order.push_back({u, v});
  j["order"] = std::move(order);
  return j.dump();
}

RevealSchedule schedule_from_json(const std::string& text) {
  const json j = json::parse(text);
  RevealSchedule s;
  s.n = j.at("n").get<int>();
  for (const auto& pr : j.at("order")) {
    s.order.emplace_back(pr.at(0).get<int>(), pr.at(1).get<int>());
  }
  return s;
}

namespace {

json cluster_to_json(const Cluster& c) {
  json positions = json::object();
  for (int i = 0; i < c.size(); ++i) {
    positions[std::to_string(c.members[i])] = coord_str(c.positions[i]);
  }
  return positions;
}

}  // namespace

std::string report_to_json(const ReconReport& report) {
  json j;
  j["largest"] = report.largest;
  j["full"] = report.full;
  j["deduced_edges"] = report.deduced_edges;
  json clusters = json::array();
  for (const Cluster& c : report.clusters) clusters.push_back(cluster_to_json(c));
  j["clusters"] = std::move(clusters);
  return j.dump(2);
}

std::string oracle_result_to_json(const OracleResult& result) {
  json j;
  json comps = json::array();
  for (const auto& comp : result.components) {
    json jc;
    jc["members"] = comp.members;
    json classes = json::array();
    for (const auto& cls : comp.classes) {
      json positions = json::object();
      for (std::size_t i = 0; i < cls.members.size(); ++i) {
        positions[std::to_string(cls.members[i])] = coord_str(cls.positions[i]);
      }
      classes.push_back(std::move(positions));
    }
    jc["classes"] = std::move(classes);
    comps.push_back(std::move(jc));
  }
  j["components"] = std::move(comps);
  json ded = json::array();
  for (const auto& [u, v] : result.deducible) ded.push_back({u, v});
  j["deducible_pairs"] = std::move(ded);
  j["largest_reconstructible_set"] = result.largest;
  return j.dump(2);
}

std::string trials_to_csv(const std::vector<TrialRecord>& records) {
  std::string out = std::string(kTrialCsvHeader) + "\n";
  for (const TrialRecord& r : records) {
    out += std::to_string(r.n) + "," + std::to_string(r.seed) + "," +
           std::to_string(r.tau_isolated_free) + "," +
           std::to_string(r.tau_mindeg2) + "," + std::to_string(r.tau_struct) +
           "," + std::to_string(r.tau_engine) + ",";
    out += r.tau_oracle ? std::to_string(*r.tau_oracle) : std::string();
    out += "," + std::to_string(r.secure_pairs) + "," +
           std::to_string(r.degree_one_at_struct) + "\n";
  }
  return out;
}

std::string trials_to_jsonl(const std::vector<TrialRecord>& records) {
  std::string out;
  for (const TrialRecord& r : records) {
    json j;
    j["n"] = r.n;
    j["seed"] = r.seed;
    j["tau_isolated_free"] = r.tau_isolated_free;
    j["tau_mindeg2"] = r.tau_mindeg2;
    j["tau_struct"] = r.tau_struct;
    j["tau_engine"] = r.tau_engine;
    if (r.tau_oracle) j["tau_oracle"] = *r.tau_oracle;
    j["secure_pairs"] = r.secure_pairs;
    j["degree_one_at_struct"] = r.degree_one_at_struct;
    out += j.dump() + "\n";
  }
  return out;
}

std::string summary_to_json(const TrialSummary& s) {
  json j;
  j["trials"] = s.trials;
  j["mean_tau_isolated_free"] = s.mean_tau_isolated_free;
  j["mean_tau_mindeg2"] = s.mean_tau_mindeg2;
  j["mean_tau_struct"] = s.mean_tau_struct;
  j["mean_tau_engine"] = s.mean_tau_engine;
  j["median_tau_struct"] = s.median_tau_struct;
  j["median_tau_engine"] = s.median_tau_engine;
  j["engine_struct_agreement"] = s.engine_struct_agreement;
  if (s.oracle_struct_agreement >= 0) {
    j["oracle_struct_agreement"] = s.oracle_struct_agreement;
  }
  return j.dump(2);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace linerecon

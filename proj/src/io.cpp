#include "ust/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ust {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open " + path + " for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FileError("cannot open " + path + " for writing");
  return out;
}

// strips comments, skips blank lines
bool next_record(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto end = line.find_last_not_of(" \t\r");
    if (end == std::string::npos) continue;
    line.erase(end + 1);
    return true;
  }
  return false;
}

}  // namespace

PhysicalGraph read_graph(std::istream& in) {
  std::string line;
  if (!next_record(in, line)) throw ParseError("empty graph document");
  std::istringstream header(line);
  std::string keyword;
  std::uint64_t node_count = 0;
  if (!(header >> keyword >> node_count) || keyword != "nodes")
    throw ParseError("expected 'nodes N' header, got '" + line + "'");

  std::vector<Edge> edges;
  while (next_record(in, line)) {
    std::istringstream row(line);
    Edge e;
    if (!(row >> e.u >> e.v >> e.weight))
      throw ParseError("bad edge record '" + line + "'");
    std::string extra;
    if (row >> extra) throw ParseError("trailing tokens in '" + line + "'");
    edges.push_back(e);
  }
  return build_graph(static_cast<NodeId>(node_count), edges);
}

PhysicalGraph read_graph_file(const std::string& path) {
  auto in = open_input(path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const PhysicalGraph& g) {
  out << "nodes " << g.node_count() << "\n";
  for (const Edge& e : g.edges())
    out << e.u << " " << e.v << " " << format_double(e.weight) << "\n";
}

void write_graph_file(const std::string& path, const PhysicalGraph& g) {
  auto out = open_output(path);
  write_graph(out, g);
}

std::vector<LabeledMeasure> read_measures(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("measures document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("measures") || !doc["measures"].is_array())
    throw ParseError("measures document needs a top-level 'measures' array");

  std::vector<LabeledMeasure> out;
  for (const auto& m : doc["measures"]) {
    LabeledMeasure lm;
    lm.label = m.value("label", std::string{});
    if (!m.contains("entries") || !m["entries"].is_array())
      throw ParseError("measure is missing its 'entries' array");
    std::vector<MassEntry> entries;
    for (const auto& e : m["entries"]) {
      if (!e.contains("node") || !e.contains("mass"))
        throw ParseError("entry needs 'node' and 'mass'");
      if (!e["node"].is_number_unsigned())
        throw ParseError("'node' must be a nonnegative integer");
      entries.push_back({e["node"].get<NodeId>(), e["mass"].get<double>()});
    }
    lm.measure = new_measure(std::move(entries));
    out.push_back(std::move(lm));
  }
  return out;
}

std::vector<LabeledMeasure> read_measures_file(const std::string& path) {
  auto in = open_input(path);
  return read_measures(in);
}

void write_measures(std::ostream& out, const std::vector<LabeledMeasure>& ms) {
  nlohmann::json doc;
  doc["measures"] = nlohmann::json::array();
  for (const LabeledMeasure& lm : ms) {
    nlohmann::json m;
    if (!lm.label.empty()) m["label"] = lm.label;
    m["entries"] = nlohmann::json::array();
    for (const MassEntry& e : lm.measure.entries())
      m["entries"].push_back({{"node", e.node}, {"mass", e.mass}});
    doc["measures"].push_back(std::move(m));
  }
  out << doc.dump(2) << "\n";
}

PointCloud read_points(std::istream& in) {
  std::vector<std::vector<double>> points;
  std::string line;
  while (next_record(in, line)) {
    std::istringstream row(line);
    std::vector<double> p;
    double x;
    while (row >> x) p.push_back(x);
    if (p.empty()) throw ParseError("empty point record");
    points.push_back(std::move(p));
  }
  return make_point_cloud(std::move(points));
}

PointCloud read_points_file(const std::string& path) {
  auto in = open_input(path);
  return read_points(in);
}

std::vector<double> read_omega_file(const std::string& path, EdgeId edge_count) {
  auto in = open_input(path);
  std::vector<double> omega;
  std::string line;
  while (next_record(in, line)) {
    std::istringstream row(line);
    double w;
    if (!(row >> w)) throw ParseError("bad omega record '" + line + "'");
    omega.push_back(w);
  }
  if (omega.size() != edge_count)
    throw ParseError("omega file has " + std::to_string(omega.size()) +
                     " values for " + std::to_string(edge_count) + " edges");
  return omega;
}

void write_csv_matrix(std::ostream& out, const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ",";
      out << format_double(m.at(i, j));
    }
    out << "\n";
  }
}

void write_csv_matrix_file(const std::string& path, const Matrix& m) {
  auto out = open_output(path);
  write_csv_matrix(out, m);
}

}  // namespace ust

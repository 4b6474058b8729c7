#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ust/builders.hpp"
#include "ust/graph.hpp"
#include "ust/matrix.hpp"
#include "ust/measure.hpp"

namespace ust {

// 17 significant digits: round-trip exact for doubles.
std::string format_double(double x);

// Graph text format:
//   # optional comments
//   nodes N
//   u v w        (one edge per line)
PhysicalGraph read_graph(std::istream& in);
PhysicalGraph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const PhysicalGraph& g);
void write_graph_file(const std::string& path, const PhysicalGraph& g);

struct LabeledMeasure {
  std::string label;
  DiscreteMeasure measure;
};

// Measures document (JSON):
//   {"measures": [{"label": "...", "entries": [{"node": 0, "mass": 1.0}]}]}
std::vector<LabeledMeasure> read_measures(std::istream& in);
std::vector<LabeledMeasure> read_measures_file(const std::string& path);
void write_measures(std::ostream& out, const std::vector<LabeledMeasure>& ms);

// Point cloud: one point per line, whitespace-separated coordinates.
PointCloud read_points(std::istream& in);
PointCloud read_points_file(const std::string& path);

// Per-edge omega values: one nonnegative value per line, edge-id order.
std::vector<double> read_omega_file(const std::string& path, EdgeId edge_count);

void write_csv_matrix(std::ostream& out, const Matrix& m);
void write_csv_matrix_file(const std::string& path, const Matrix& m);

}  // namespace ust

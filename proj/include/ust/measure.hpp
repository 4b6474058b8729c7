#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ust/errors.hpp"
#include "ust/graph.hpp"

namespace ust {

struct MassEntry {
  NodeId node = 0;
  double mass = 0.0;
};

// Nonnegative finitely supported measure on graph nodes, kept canonical:
// entries sorted by node id, duplicates merged, zero masses pruned.
class DiscreteMeasure {
public:
  DiscreteMeasure() = default;

  const std::vector<MassEntry>& entries() const { return entries_; }
  double total_mass() const { return total_; }
  bool empty() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }

  NodeId max_node() const { return entries_.empty() ? 0 : entries_.back().node; }

private:
  friend DiscreteMeasure new_measure(std::vector<MassEntry> entries);

  std::vector<MassEntry> entries_;
  double total_ = 0.0;
};

// Canonicalizes: merges duplicate nodes by summation, drops zero masses.
// Throws NegativeMass.
DiscreteMeasure new_measure(std::vector<MassEntry> entries);

DiscreteMeasure add(const DiscreteMeasure& a, const DiscreteMeasure& b);

// Throws NegativeScale for c < 0.
DiscreteMeasure scale(const DiscreteMeasure& a, double c);

inline DiscreteMeasure dirac(NodeId node, double mass = 1.0) {
  return new_measure({{node, mass}});
}

}  // namespace ust

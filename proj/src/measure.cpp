#include "ust/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ust {

DiscreteMeasure new_measure(std::vector<MassEntry> entries) {
  for (const MassEntry& e : entries) {
    if (e.mass < 0.0 || !std::isfinite(e.mass))
      throw NegativeMass("node " + std::to_string(e.node) + " carries mass " +
                         std::to_string(e.mass));
  }
  std::sort(entries.begin(), entries.end(),
            [](const MassEntry& a, const MassEntry& b) { return a.node < b.node; });

  DiscreteMeasure m;
  m.entries_.reserve(entries.size());
  for (const MassEntry& e : entries) {
    if (!m.entries_.empty() && m.entries_.back().node == e.node)
      m.entries_.back().mass += e.mass;
    else
      m.entries_.push_back(e);
  }
  std::erase_if(m.entries_, [](const MassEntry& e) { return e.mass == 0.0; });

  m.total_ = 0.0;
  for (const MassEntry& e : m.entries_) m.total_ += e.mass;
  return m;
}

DiscreteMeasure add(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  std::vector<MassEntry> merged;
  merged.reserve(a.entries().size() + b.entries().size());
  merged.insert(merged.end(), a.entries().begin(), a.entries().end());
  merged.insert(merged.end(), b.entries().begin(), b.entries().end());
  return new_measure(std::move(merged));
}

DiscreteMeasure scale(const DiscreteMeasure& a, double c) {
  if (c < 0.0 || !std::isfinite(c))
    throw NegativeScale("scale factor " + std::to_string(c));
  std::vector<MassEntry> scaled = a.entries();
  for (MassEntry& e : scaled) e.mass *= c;
  return new_measure(std::move(scaled));
}

}  // namespace ust

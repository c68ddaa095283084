#include "qpd/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace qpd {

std::int64_t PersistenceDiagram::size() const {
    std::int64_t n = 0;
    for (const auto& p : points) n += p.mult;
    return n;
}

std::int64_t PersistenceDiagram::essential_count() const {
    std::int64_t n = 0;
    for (const auto& p : points)
        if (p.essential()) n += p.mult;
    return n;
}

void PersistenceDiagram::canonicalize() {
    std::map<std::pair<double, double>, std::int64_t> merged;
    for (const auto& p : points) merged[{p.birth, p.death}] += p.mult;
    points.clear();
    for (const auto& [key, mult] : merged) points.push_back({key.first, key.second, mult});
}

std::vector<DiagramPoint> PersistenceDiagram::expanded() const {
    std::vector<DiagramPoint> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (const auto& p : points)
        for (std::int64_t i = 0; i < p.mult; ++i) out.push_back({p.birth, p.death, 1});
    return out;
}

PersistenceDiagram merge_close(const PersistenceDiagram& d, double quantum) {
    PersistenceDiagram out = d;
    out.canonicalize();
    if (quantum <= 0 || out.points.empty()) return out;
    // Points arrive sorted; fold each into the previous one when both coordinates are within quantum.
    std::vector<DiagramPoint> folded;
    for (const auto& p : out.points) {
        if (!folded.empty()) {
            auto& last = folded.back();
            bool same_death = (last.death == kInf && p.death == kInf) ||
                              std::fabs(last.death - p.death) <= quantum;
            if (std::fabs(last.birth - p.birth) <= quantum && same_death) {
                last.mult += p.mult;
                continue;
            }
        }
        folded.push_back(p);
    }
    out.points = std::move(folded);
    return out;
}

PersistenceDiagram drop_short(const PersistenceDiagram& d, double min_persistence) {
    PersistenceDiagram out{d.dim, {}};
    for (const auto& p : d.points)
        if (p.persistence() >= min_persistence) out.points.push_back(p);
    return out;
}

PersistenceDiagram scaled(const PersistenceDiagram& d, double factor) {
    PersistenceDiagram out{d.dim, {}};
    for (const auto& p : d.points) out.points.push_back({p.birth * factor, p.death * factor, p.mult});
    return out;
}

}  // namespace qpd

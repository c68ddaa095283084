#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace qpd {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct DiagramPoint {
    double birth = 0.0;
    double death = kInf;
    std::int64_t mult = 1;

    bool essential() const { return death == kInf; }
    double persistence() const { return death - birth; }
};

struct PersistenceDiagram {
    int dim = 0;
    std::vector<DiagramPoint> points;

    std::int64_t size() const; // with multiplicity
    std::int64_t essential_count() const;
    // Sort by (birth, death) and merge equal points.
    void canonicalize();
    // Expand multiplicities into unit points.
    std::vector<DiagramPoint> expanded() const;
};

// Merge points whose coordinates agree after rounding to `quantum` (0 = exact).
PersistenceDiagram merge_close(const PersistenceDiagram& d, double quantum);

PersistenceDiagram drop_short(const PersistenceDiagram& d, double min_persistence);

PersistenceDiagram scaled(const PersistenceDiagram& d, double factor);

}  // namespace qpd

#pragma once

#include <cstdint>
#include <vector>

#include "qpd/diagram.hpp"
#include "qpd/numtheory.hpp"

namespace qpd {

struct CirclePointSet {
    double omega = 0.0; // reduced to [0,1)
    std::int64_t T = 0;
    std::vector<double> points;           // ascending flat coordinates
    std::vector<std::int64_t> time_index; // points[i] == [time_index[i] * omega]
};

CirclePointSet point_set(double omega, std::int64_t T);

// Quotient metric on R/Z.
double circle_distance(double x, double y);

// Length of the arc travelled counterclockwise from x to y.
double forward_arc(double x, double y);

// Arcs between cyclically adjacent points, in point order.
std::vector<double> adjacent_arcs(const CirclePointSet& ps);

inline constexpr double kGapMergeQuantum = 1e-12;

PersistenceDiagram dgm0_exact(double omega, std::int64_t T);
PersistenceDiagram dgm0_exact(const GapStructure& g);

double lambda_death(double omega, std::int64_t T);
double lambda_death(const CirclePointSet& ps);

PersistenceDiagram dgm1_exact(double omega, std::int64_t T);

}  // namespace qpd

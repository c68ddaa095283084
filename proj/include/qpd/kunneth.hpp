#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qpd/diagram.hpp"

namespace qpd {

struct Interval {
    double birth = 0.0;
    double death = kInf;
};

struct Bar {
    Interval interval;
    std::int64_t mult = 1;
};

struct ScaledBarcode {
    int dim = 0;
    std::vector<Bar> bars;
    double radius = 1.0;
};

// Barcodes of one factor keyed by homology dimension; missing dims are empty.
using FactorBarcodes = std::map<int, ScaledBarcode>;

Interval chordal_scale(Interval flat, double radius);

// Half-open [a,b) ∩ [c,d); nullopt when empty.
std::optional<Interval> intersect(Interval x, Interval y);

ScaledBarcode scale_diagram(const PersistenceDiagram& flat, double radius);

// All nonempty intersections over dimension splits summing to ell.
std::vector<Bar> product_barcode(const std::vector<FactorBarcodes>& factors, int ell);

PersistenceDiagram bars_to_diagram(const std::vector<Bar>& bars, int dim, double min_persistence = 1e-12);

struct GridFactor {
    double radius = 1.0;
    double omega = 0.0; // cycles per step
};

struct GridSpec {
    std::vector<GridFactor> factors;
    std::int64_t T = 1;
};

struct GridOptions {
    // Add circle homology above dimension 1 from the exact Rips oracle on each factor.
    bool higher_circle_dims = false;
    double oracle_budget = 5e7;
};

FactorBarcodes circle_factor_barcodes(const GridFactor& f, std::int64_t T, int max_dim, const GridOptions& opts = {});

std::vector<PersistenceDiagram> grid_diagrams(const GridSpec& spec, int max_dim, const GridOptions& opts = {});

}  // namespace qpd

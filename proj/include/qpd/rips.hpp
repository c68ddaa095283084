#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qpd/circle_pd.hpp"
#include "qpd/diagram.hpp"

namespace qpd {

struct FiniteMetricSpace {
    std::size_t n = 0;
    std::vector<double> dist; // row-major n*n

    double operator()(std::size_t i, std::size_t j) const { return dist[i * n + j]; }
    // Symmetry and zero diagonal; optionally the triangle inequality.
    bool valid(bool check_triangle = false, double tol = 1e-12) const;
};

FiniteMetricSpace make_space(std::size_t n, std::vector<double> dist);

FiniteMetricSpace metric_from_circle(const CirclePointSet& ps);

enum class CloudMetric {
    euclidean,         // d_2 on C^m
    max_factor_chordal // max over coordinates of |z_j - w_j|
};

// Rows of `points` are the points.
FiniteMetricSpace metric_from_cloud(const Eigen::MatrixXcd& points, CloudMetric metric);

struct RipsOptions {
    int max_dim = 1;
    // Filtration cut; negative means the enclosing radius (no finite death is lost).
    double threshold = -1.0;
    double max_simplices = 5e7;
};

// Number of simplices of dimension <= max_dim + 1 on n vertices.
double rips_simplex_count(std::size_t n, int max_dim);

std::vector<PersistenceDiagram> rips_persistence(const FiniteMetricSpace& space, const RipsOptions& opts = {});

struct Simplex {
    std::vector<std::uint32_t> vertices; // ascending
    double value = 0.0;
};

// Explicit Rips filtration: sorted by (value, dimension, lexicographic vertices).
struct FilteredComplex {
    std::vector<Simplex> simplices;
};

FilteredComplex rips_complex(const FiniteMetricSpace& space, int max_simplex_dim);

// Plain column reduction of the boundary matrix; small inputs only.
std::vector<PersistenceDiagram> boundary_reduction_persistence(const FilteredComplex& complex, int max_dim);

}  // namespace qpd

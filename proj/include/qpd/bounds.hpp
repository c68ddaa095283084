#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qpd/diagram.hpp"
#include "qpd/kunneth.hpp"

namespace qpd {

// +inf when the essential-point counts differ.
double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b);

// Trajectory on a product of circles: flat coordinates per factor plus radii.
struct TorusSample {
    Eigen::MatrixXd flat; // rows are points, columns factors, entries in [0,1)
    std::vector<double> radii;
};

TorusSample torus_from_points(const Eigen::MatrixXcd& points);
TorusSample grid_as_sample(const GridSpec& grid);

// Exact Hausdorff distance under the max of per-factor chordal distances.
double hausdorff_bound(const TorusSample& trajectory, const GridSpec& grid);

// max over a of min over b.
double directed_hausdorff(const TorusSample& from, const TorusSample& to);
double hausdorff(const TorusSample& a, const TorusSample& b);

struct ErrorRectangle {
    double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
    DiagramPoint source;
    bool admissible = false;
    double ratio = 0.0; // (b - 2λ) / (a + 2λ)
    double lambda_gh = 0.0;
    double cond_k = 1.0;
};

ErrorRectangle error_rectangle(const DiagramPoint& p, double lambda_gh, double cond_k);
// Finite points only; one rectangle per distinct point.
std::vector<ErrorRectangle> error_rectangles(const PersistenceDiagram& grid_dgm, double lambda_gh, double cond_k);

bool contains(const ErrorRectangle& r, double birth, double death);

}  // namespace qpd

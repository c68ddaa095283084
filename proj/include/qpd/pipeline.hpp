#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpd/bounds.hpp"
#include "qpd/io.hpp"
#include "qpd/kunneth.hpp"
#include "qpd/numtheory.hpp"
#include "qpd/sliding_window.hpp"

namespace qpd {

struct AnalysisConfig {
    std::optional<std::string> input_path; // CSV samples
    std::optional<ExponentialSum> synth;   // analytic signal, sampled before analysis
    std::string source_label;
    double sample_step = 0.1;
    std::size_t n_samples = 1 << 14;
    std::size_t n_peaks = 2;
    bool real_signal = false;        // conjugate-symmetric spectrum: keep positive peaks
    bool exact_frequencies = false;  // synth only: skip spectral estimation
    std::optional<int> d;
    std::optional<double> tau;
    std::int64_t T = 2000;
    std::int64_t T_prime = 500;
    int dims = 2;
    bool higher_circle_dims = false;
    bool oracle = false;
    std::int64_t oracle_T = 300;
    std::int64_t oracle_T_prime = 75;
    double budget = 5e7;
    bool timings = false;
};

struct CircleResult {
    double omega = 0.0;
    double radius = 0.0;
    GapStructure gaps;
    PersistenceDiagram dgm0, dgm1;
};

struct OracleResult {
    std::int64_t T = 0;
    std::int64_t T_prime = 0;
    double lambda_gh = 0.0;
    std::vector<PersistenceDiagram> diagrams;
    std::vector<PersistenceDiagram> grid;
    std::vector<double> bottleneck; // per dim, grid vs oracle
    std::vector<std::vector<ErrorRectangle>> rectangles;
    // Grid points with persistence above 4λ, paired by persistence rank with oracle points.
    struct Containment {
        int dim;
        ErrorRectangle rectangle;
        std::optional<DiagramPoint> oracle_point;
        bool inside = false;
    };
    std::vector<Containment> containment;
    double seconds = 0.0;
};

struct AnalysisResult {
    AnalysisConfig config;
    std::size_t n_samples = 0;
    ExponentialSum signal; // recovered (or exact) terms
    int d = 1;
    double tau = 0.0;
    SWMatrix sw;
    std::vector<CircleResult> circles;
    std::vector<PersistenceDiagram> grid;
    double lambda_gh = 0.0;
    std::vector<std::vector<ErrorRectangle>> rectangles; // index = dim, dim 0 left empty
    std::optional<OracleResult> oracle;
    double seconds_3g = 0.0;
};

// Spectrum, circles, Künneth, Hausdorff bound and rectangles; the oracle when requested.
AnalysisResult run_analysis(const AnalysisConfig& cfg);

std::vector<OracleResult::Containment> rank_containment(const std::vector<PersistenceDiagram>& grid,
                                                       const std::vector<PersistenceDiagram>& oracle,
                                                       double lambda_gh, double cond_k);

// Rectangles for diagram dims 1.. of a grid.
std::vector<std::vector<ErrorRectangle>> grid_rectangles(const std::vector<PersistenceDiagram>& grid, double lambda_gh,
                                                         double cond_k);

json to_json(const AnalysisResult& r);

ExponentialSum preset_signal(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace qpd

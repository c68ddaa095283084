#pragma once

#include <cstdint>
#include <vector>

#include "qpd/sliding_window.hpp"

namespace qpd {

struct SpectrumBin {
    double frequency = 0.0; // cycles per unit time, negative above Nyquist
    double magnitude = 0.0;
    double phase = 0.0;
};

struct Spectrum {
    std::vector<SpectrumBin> bins; // natural DFT order
    std::vector<cplx> values;      // forward transform scaled by 1/N
    std::vector<cplx> samples;     // kept for coefficient readout
    double sample_step = 1.0;
    std::size_t length = 0;

    double resolution() const { return 1.0 / (static_cast<double>(length) * sample_step); }
};

Spectrum dft(const std::vector<cplx>& samples, double sample_step);

struct PeakOptions {
    double rel_threshold = 0.05;
    // Keep only peaks at positive frequency (real signals).
    bool positive_only = false;
    // Polish each frequency by maximising |fourier_coefficient| near the peak.
    bool refine = false;
};

// Peaks ordered by descending magnitude.
std::vector<ExpTerm> estimate_frequencies(const Spectrum& spec, std::size_t n_peaks, const PeakOptions& opts = {});

// Trapezoid rule for (1/λ) ∫_0^λ f(t) e^{-2πi ω t} dt over the record.
cplx fourier_coefficient(const std::vector<cplx>& samples, double sample_step, double omega);

struct TruncateOptions {
    double magnitude_floor = 1e-6; // relative to the largest |c|
    double match_tol = 1e-6;       // frequency tolerance for lattice matching
};

// Keep terms whose frequency is <k, basis> with max |k_i| <= K.
ExponentialSum truncate_series(const std::vector<ExpTerm>& terms, const std::vector<double>& basis, int K = 1,
                               const TruncateOptions& opts = {});

}  // namespace qpd

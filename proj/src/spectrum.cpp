#include "qpd/spectrum.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <mutex>

#include "qpd/error.hpp"

namespace qpd {

namespace {

// FFTW's planner is not reentrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

Spectrum dft(const std::vector<cplx>& samples, double sample_step) {
    if (samples.size() < 2) throw Error(ErrorKind::validation, "DFT needs at least two samples");
    if (!(sample_step > 0)) throw Error(ErrorKind::validation, "sample step must be positive");
    const std::size_t n = samples.size();
    std::vector<cplx> in = samples, out(n);
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
                                reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }

    Spectrum s;
    s.samples = samples;
    s.sample_step = sample_step;
    s.length = n;
    s.values.resize(n);
    s.bins.resize(n);
    const double df = s.resolution();
    for (std::size_t k = 0; k < n; ++k) {
        s.values[k] = out[k] / static_cast<double>(n);
        auto signed_k = static_cast<double>(k);
        if (k > (n - 1) / 2) signed_k -= static_cast<double>(n);
        s.bins[k] = {signed_k * df, std::abs(s.values[k]), std::arg(s.values[k])};
    }
    return s;
}

cplx fourier_coefficient(const std::vector<cplx>& samples, double sample_step, double omega) {
    const std::size_t n = samples.size();
    if (n < 2) return samples.empty() ? cplx(0.0) : samples[0];
    const double lambda = static_cast<double>(n - 1) * sample_step;
    auto phasor = [&](std::size_t k) {
        double cycles = omega * static_cast<double>(k) * sample_step;
        return std::polar(1.0, -2.0 * std::numbers::pi * (cycles - std::floor(cycles)));
    };
    // Rotate a unit phasor, resynchronizing every 64 samples to bound drift.
    const cplx turn = phasor(1) * std::conj(phasor(0));
    cplx acc = 0.0, z = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (k % 64 == 0) z = phasor(k);
        double w = (k == 0 || k + 1 == n) ? 0.5 : 1.0;
        acc += w * samples[k] * z;
        z *= turn;
    }
    return acc * (sample_step / lambda);
}

namespace {

// Golden-section search for the maximum of |coefficient| on [lo, hi].
double polish(const std::vector<cplx>& samples, double step, double lo, double hi) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    auto f = [&](double w) { return std::abs(fourier_coefficient(samples, step, w)); };
    double a = lo, b = hi;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 80 && b - a > 1e-9 * (hi - lo); ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

std::vector<ExpTerm> estimate_frequencies(const Spectrum& spec, std::size_t n_peaks, const PeakOptions& opts) {
    if (n_peaks < 1) throw Error(ErrorKind::validation, "n_peaks must be at least 1");
    const std::size_t n = spec.bins.size();
    double top = 0.0;
    for (const auto& b : spec.bins) top = std::max(top, b.magnitude);

    struct Peak {
        std::size_t bin;
        double magnitude;
    };
    std::vector<Peak> peaks;
    if (top > 0 && n >= 3) {
        const double floor = opts.rel_threshold * top;
        for (std::size_t k = 0; k < n; ++k) {
            double m = spec.bins[k].magnitude;
            double left = spec.bins[(k + n - 1) % n].magnitude, right = spec.bins[(k + 1) % n].magnitude;
            if (m < floor || m <= 0 || m < left || m <= right) continue;
            if (opts.positive_only && spec.bins[k].frequency <= 0) continue;
            peaks.push_back({k, m});
        }
    }
    std::stable_sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) { return a.magnitude > b.magnitude; });
    if (peaks.size() < n_peaks) {
        std::vector<FoundPeak> found;
        for (const auto& p : peaks) found.push_back({spec.bins[p.bin].frequency, p.magnitude});
        throw TooFewPeaks(n_peaks, std::move(found));
    }
    peaks.resize(n_peaks);

    const double df = spec.resolution();
    std::vector<ExpTerm> out;
    for (const auto& p : peaks) {
        double left = spec.bins[(p.bin + n - 1) % n].magnitude, right = spec.bins[(p.bin + 1) % n].magnitude;
        double denom = left - 2.0 * p.magnitude + right;
        double offset = denom != 0.0 ? 0.5 * (left - right) / denom : 0.0;
        offset = std::clamp(offset, -0.5, 0.5);
        double freq = spec.bins[p.bin].frequency + offset * df;
        if (opts.refine) freq = polish(spec.samples, spec.sample_step, freq - 0.5 * df, freq + 0.5 * df);
        out.push_back({fourier_coefficient(spec.samples, spec.sample_step, freq), freq});
    }
    return out;
}

ExponentialSum truncate_series(const std::vector<ExpTerm>& terms, const std::vector<double>& basis, int K,
                               const TruncateOptions& opts) {
    if (K < 1) throw Error(ErrorKind::validation, "K must be at least 1");
    double top = 0.0;
    for (const auto& t : terms) top = std::max(top, std::abs(t.coeff));
    auto on_lattice = [&](double f) {
        std::vector<int> k(basis.size(), -K);
        while (true) {
            double g = 0.0;
            for (std::size_t i = 0; i < basis.size(); ++i) g += k[i] * basis[i];
            if (std::fabs(g - f) <= opts.match_tol) return true;
            std::size_t i = 0;
            while (i < k.size() && k[i] == K) k[i++] = -K;
            if (i == k.size()) return false;
            ++k[i];
        }
    };
    ExponentialSum out;
    for (const auto& t : terms) {
        if (std::abs(t.coeff) < opts.magnitude_floor * top) continue;
        if (on_lattice(t.freq)) out.terms.push_back(t);
    }
    return out;
}

}  // namespace qpd

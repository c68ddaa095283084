#include "qpd/sliding_window.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qpd/error.hpp"

namespace qpd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx phase(double cycles) { return std::polar(1.0, kTwoPi * cycles); }

void check_params(const SWParams& p) {
    if (p.d < 1) throw Error(ErrorKind::validation, "embedding dimension d must be at least 1");
    if (!(p.tau > 0) || !std::isfinite(p.tau)) throw Error(ErrorKind::validation, "tau must be positive");
    if (!(p.step > 0) || !std::isfinite(p.step)) throw Error(ErrorKind::validation, "step must be positive");
    if (p.T < 0) throw Error(ErrorKind::validation, "T must be non-negative");
}

}  // namespace

cplx ExponentialSum::operator()(double t) const {
    cplx s = 0.0;
    for (const auto& term : terms) s += term.coeff * phase(term.freq * t);
    if (symmetric)
        for (const auto& term : terms) s += term.coeff * phase(-term.freq * t);
    return s;
}

std::vector<ExpTerm> ExponentialSum::expanded() const {
    std::vector<ExpTerm> out = terms;
    if (symmetric)
        for (const auto& term : terms) out.push_back({term.coeff, -term.freq});
    return out;
}

void ExponentialSum::validate() const {
    if (terms.empty()) throw Error(ErrorKind::validation, "exponential sum has no terms");
    auto all = expanded();
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (all[i].coeff == cplx(0.0) || !std::isfinite(all[i].freq))
            throw Error(ErrorKind::validation, "terms need nonzero coefficients and finite frequencies");
        for (std::size_t j = 0; j < i; ++j)
            if (all[i].freq == all[j].freq) throw Error(ErrorKind::validation, "term frequencies must be distinct");
    }
}

Eigen::MatrixXcd embed(const ExponentialSum& f, const SWParams& p) {
    check_params(p);
    Eigen::MatrixXcd cloud(p.T + 1, p.d + 1);
    for (std::int64_t t = 0; t <= p.T; ++t)
        for (int m = 0; m <= p.d; ++m) cloud(t, m) = f(static_cast<double>(t) * p.step + m * p.tau);
    return cloud;
}

Eigen::MatrixXcd embed(const SampledSignal& f, const SWParams& p, bool interpolate) {
    check_params(p);
    if (!(f.step > 0)) throw Error(ErrorKind::validation, "sample spacing must be positive");
    const double stride = p.step / f.step;
    const double lag = p.tau / f.step;
    if (!interpolate) {
        auto integral = [](double x) { return std::fabs(x - std::round(x)) <= 1e-9 * std::max(1.0, std::fabs(x)); };
        if (!integral(lag) || !integral(stride))
            throw Error(ErrorKind::validation, "tau and step must be integer multiples of the sample spacing (or enable interpolation)");
    }
    const auto last_index = static_cast<double>(f.samples.size()) - 1.0;
    const double span = p.d * lag;
    const double last_t = std::floor((last_index - span) / stride + 1e-9);
    if (last_index < 0 || static_cast<double>(p.T) > last_t)
        throw WindowOutOfRange(p.T, static_cast<std::int64_t>(std::max(-1.0, last_t)));

    Eigen::MatrixXcd cloud(p.T + 1, p.d + 1);
    for (std::int64_t t = 0; t <= p.T; ++t) {
        for (int m = 0; m <= p.d; ++m) {
            double x = static_cast<double>(t) * stride + m * lag;
            if (!interpolate) {
                cloud(t, m) = f.samples[static_cast<std::size_t>(std::llround(x))];
                continue;
            }
            auto i0 = static_cast<std::size_t>(std::floor(x));
            double frac = x - static_cast<double>(i0);
            cplx a = f.samples[i0];
            cplx b = i0 + 1 < f.samples.size() ? f.samples[i0 + 1] : a;
            cloud(t, m) = a + frac * (b - a);
        }
    }
    return cloud;
}

SWMatrix sw_matrix(const ExponentialSum& f, const SWParams& p) {
    check_params(p);
    f.validate();
    const auto cols = f.expanded();
    const auto M = static_cast<Eigen::Index>(cols.size());
    SWMatrix out;
    out.A.resize(p.d + 1, M);
    const double norm = 1.0 / std::sqrt(static_cast<double>(p.d + 1));
    for (int m = 0; m <= p.d; ++m)
        for (Eigen::Index j = 0; j < M; ++j) out.A(m, j) = norm * phase(cols[static_cast<std::size_t>(j)].freq * m * p.tau);
    const bool wide = p.d + 1 < M;
    if (wide)
        out.warnings.push_back("embedding dimension d+1 is below the number of exponential terms; A is not injective and the lower bound uses the nonzero singular values only");

    // The smaller Gram matrix carries the min(d+1, M) singular values.
    const Eigen::MatrixXcd gram = wide ? Eigen::MatrixXcd(out.A * out.A.adjoint()) : Eigen::MatrixXcd(out.A.adjoint() * out.A);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = eig.eigenvalues();
    const double top = std::max(ev.maxCoeff(), 0.0);
    // Eigenvalues at rounding level of the largest one are zero singular values.
    auto sigma = [&](double lam) { return lam <= 1e-13 * top ? 0.0 : std::sqrt(lam); };
    out.sigma_min = sigma(ev.minCoeff());
    out.sigma_max = std::sqrt(top);
    if (out.sigma_min < 1e-12)
        throw Error(ErrorKind::rank_deficient, "sliding-window matrix is rank deficient (sigma_min ~ 0); condition number undefined");
    out.cond_k = std::max(1.0 / out.sigma_min, out.sigma_max * std::sqrt(static_cast<double>(M)));
    return out;
}

Eigen::MatrixXcd trajectory(const ExponentialSum& f, int d, std::int64_t T) {
    if (T < 0) throw Error(ErrorKind::validation, "T must be non-negative");
    if (d < 1) throw Error(ErrorKind::validation, "embedding dimension d must be at least 1");
    const double scale = std::sqrt(static_cast<double>(d + 1));
    const auto M = static_cast<Eigen::Index>(f.terms.size());
    Eigen::MatrixXcd v(T + 1, M);
    for (std::int64_t t = 0; t <= T; ++t)
        for (Eigen::Index j = 0; j < M; ++j) {
            const auto& term = f.terms[static_cast<std::size_t>(j)];
            long double x = static_cast<long double>(t) * term.freq;
            v(t, j) = scale * term.coeff * phase(static_cast<double>(x - std::floor(x)));
        }
    return v;
}

Eigen::MatrixXd flat_coordinates(const ExponentialSum& f, std::int64_t T) {
    const auto M = static_cast<Eigen::Index>(f.terms.size());
    Eigen::MatrixXd x(T + 1, M);
    for (std::int64_t t = 0; t <= T; ++t)
        for (Eigen::Index j = 0; j < M; ++j) {
            long double y = static_cast<long double>(t) * f.terms[static_cast<std::size_t>(j)].freq;
            double c = static_cast<double>(y - std::floor(y));
            x(t, j) = c >= 1.0 ? 0.0 : c;
        }
    return x;
}

double default_tau(const ExponentialSum& f) {
    if (f.terms.size() < 2)
        throw Error(ErrorKind::validation, "default tau needs at least two frequencies; pass tau explicitly");
    double lo = f.terms[0].freq, hi = lo;
    for (const auto& t : f.terms) {
        lo = std::min(lo, t.freq);
        hi = std::max(hi, t.freq);
    }
    if (hi - lo <= 0) throw Error(ErrorKind::validation, "default tau needs distinct frequencies");
    return 1.0 / (2.0 * (hi - lo));
}

}  // namespace qpd

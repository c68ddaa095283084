#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qpd {

using i128 = __int128;

std::string to_string(i128 v);

struct Convergent {
    i128 p = 0;
    i128 q = 0;
};

enum class CfStop {
    max_terms,      // ran out of requested terms
    converged,      // p_k/q_k reproduces x within tolerance
    coefficient_cap // next coefficient too large; x treated as rational
};

struct ContinuedFraction {
    double value = 0.0;
    std::vector<std::int64_t> coeffs;    // a_1, a_2, ...
    std::vector<Convergent> convergents; // slot i+1 holds index i, from i = -1
    std::vector<long double> errors;     // slot i+1 holds D_i = q_i x - p_i
    CfStop stop = CfStop::max_terms;

    int terms() const { return static_cast<int>(coeffs.size()); }
    std::int64_t a(int k) const { return coeffs.at(static_cast<std::size_t>(k - 1)); }
    const Convergent& convergent(int i) const { return convergents.at(static_cast<std::size_t>(i + 1)); }
    long double error(int i) const { return errors.at(static_cast<std::size_t>(i + 1)); }
    // True when the expansion ended because x looked rational.
    bool terminated_rationally() const { return stop != CfStop::max_terms; }
};

inline constexpr double kCoefficientCap = 1e12;

double default_cf_tolerance(double x);

ContinuedFraction cfe(double x, int max_terms = 64, double tol = -1.0);

// Recurrence pairs for i = -1..upto; throws on 128-bit overflow.
std::vector<Convergent> convergents(const std::vector<std::int64_t>& coeffs, int upto);
std::vector<Convergent> convergents(const ContinuedFraction& cf, int upto);

struct GapStructure {
    std::int64_t T = 0;
    int k = 0;
    std::int64_t r = 0;
    std::int64_t s = 0;
    std::int64_t q_k = 0;
    std::int64_t q_prev = 0;
    std::int64_t q_next = 0;
    std::int64_t a_next = 0;
    double omega = 0.0; // reduced to [0,1)
    double delta_a = 0.0;
    double delta_b = 0.0;
    double delta_c = 0.0;
    std::int64_t n_a = 0;
    std::int64_t n_b = 0;
    std::int64_t n_c = 0;

    // (length, count) with zero counts dropped, ascending length.
    std::vector<std::pair<double, std::int64_t>> gaps() const;
    double max_gap() const;
};

GapStructure three_gap(double omega, std::int64_t T);

double reduce_mod1(double x);

}  // namespace qpd

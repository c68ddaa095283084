#include "qpd/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qpd/error.hpp"

namespace qpd {

namespace {

using f128 = __float128;

f128 abs128(f128 x) { return x < 0 ? -x : x; }

i128 checked_mul_add(std::int64_t a, i128 x, i128 y) {
    i128 prod;
    i128 sum;
    if (__builtin_mul_overflow(static_cast<i128>(a), x, &prod) ||
        __builtin_add_overflow(prod, y, &sum))
        throw Error(ErrorKind::overflow, "continued fraction convergent overflows 128-bit integers");
    return sum;
}

std::int64_t narrow(i128 v, const char* what) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw Error(ErrorKind::overflow, std::string(what) + " does not fit in 64 bits");
    return static_cast<std::int64_t>(v);
}

// q x - p evaluated with ~113 bits so deep convergents keep their accuracy.
f128 signed_error(const Convergent& c, double x) {
    return static_cast<f128>(c.q) * static_cast<f128>(x) - static_cast<f128>(c.p);
}

}  // namespace

std::string to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    std::string s;
    while (v != 0) {
        int digit = static_cast<int>(v % 10);
        s.push_back(static_cast<char>('0' + (neg ? -digit : digit)));
        v /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

double default_cf_tolerance(double x) { return 1e-12 * std::max(1.0, std::fabs(x)); }

double reduce_mod1(double x) {
    double r = x - std::floor(x);
    return r >= 1.0 ? 0.0 : r;
}

std::vector<Convergent> convergents(const std::vector<std::int64_t>& coeffs, int upto) {
    if (upto < -1 || upto > static_cast<int>(coeffs.size()))
        throw Error(ErrorKind::validation, "convergent index beyond the available coefficients");
    std::vector<Convergent> out;
    out.reserve(static_cast<std::size_t>(upto + 2));
    out.push_back({0, 1});
    if (upto >= 0) out.push_back({1, 0});
    for (int k = 1; k <= upto; ++k) {
        const auto& c1 = out[out.size() - 1];
        const auto& c2 = out[out.size() - 2];
        std::int64_t a = coeffs[static_cast<std::size_t>(k - 1)];
        out.push_back({checked_mul_add(a, c1.p, c2.p), checked_mul_add(a, c1.q, c2.q)});
    }
    return out;
}

std::vector<Convergent> convergents(const ContinuedFraction& cf, int upto) {
    return convergents(cf.coeffs, upto);
}

ContinuedFraction cfe(double x, int max_terms, double tol) {
    if (!std::isfinite(x)) throw Error(ErrorKind::domain, "continued fraction of a non-finite value");
    if (max_terms < 1) throw Error(ErrorKind::validation, "max_terms must be at least 1");
    if (tol <= 0) tol = default_cf_tolerance(x);
    double fl = std::floor(x);
    if (std::fabs(fl) > 9.0e18) throw Error(ErrorKind::domain, "integer part exceeds 64 bits");

    ContinuedFraction cf;
    cf.value = x;
    cf.convergents = {{0, 1}, {1, 0}};
    std::vector<f128> err = {signed_error(cf.convergents[0], x), signed_error(cf.convergents[1], x)};

    auto push = [&](std::int64_t a) {
        const Convergent& c1 = cf.convergents[cf.convergents.size() - 1];
        const Convergent& c2 = cf.convergents[cf.convergents.size() - 2];
        Convergent next{checked_mul_add(a, c1.p, c2.p), checked_mul_add(a, c1.q, c2.q)};
        cf.coeffs.push_back(a);
        cf.convergents.push_back(next);
        err.push_back(signed_error(next, x));
    };

    push(static_cast<std::int64_t>(fl));
    cf.stop = CfStop::max_terms;
    const f128 tol128 = tol;
    while (true) {
        const f128 d = err.back();
        const f128 q = static_cast<f128>(cf.convergents.back().q);
        if (abs128(d) < tol128 * q) {
            cf.stop = CfStop::converged;
            break;
        }
        if (cf.terms() >= max_terms) break;
        // complete quotient x_{k+1} = -D_{k-1} / D_k
        f128 complete = -err[err.size() - 2] / d;
        if (complete >= static_cast<f128>(kCoefficientCap) + 1) {
            cf.stop = CfStop::coefficient_cap;
            break;
        }
        auto a = static_cast<std::int64_t>(complete);
        if (a < 1) a = 1;
        push(a);
    }
    cf.errors.reserve(err.size());
    for (f128 e : err) cf.errors.push_back(static_cast<long double>(e));
    return cf;
}

std::vector<std::pair<double, std::int64_t>> GapStructure::gaps() const {
    std::vector<std::pair<double, std::int64_t>> out;
    if (n_a > 0) out.emplace_back(delta_a, n_a);
    if (n_b > 0) out.emplace_back(delta_b, n_b);
    if (n_c > 0) out.emplace_back(delta_c, n_c);
    std::sort(out.begin(), out.end());
    return out;
}

double GapStructure::max_gap() const {
    double m = 0.0;
    for (const auto& [len, count] : gaps()) m = std::max(m, len);
    return m;
}

GapStructure three_gap(double omega, std::int64_t T) {
    if (!std::isfinite(omega)) throw Error(ErrorKind::domain, "omega must be finite");
    if (T < 1) throw Error(ErrorKind::validation, "T must be at least 1");
    const double w = reduce_mod1(omega);
    if (w == 0.0) throw InsufficientIrrationality(0, 1, T);

    const ContinuedFraction cf = cfe(w, 64);
    const int m = cf.terms();
    if (cf.terminated_rationally()) {
        const Convergent& last = cf.convergent(m);
        if (static_cast<i128>(T) >= last.q)
            throw InsufficientIrrationality(narrow(last.p, "numerator"), narrow(last.q, "denominator"), T);
    }

    const i128 t = T;
    int k = -1;
    for (int j = 1; j + 1 <= m; ++j) {
        const i128 qj = cf.convergent(j).q;
        if (qj + cf.convergent(j - 1).q <= t && t < qj + cf.convergent(j + 1).q) {
            k = j;
            break;
        }
    }
    if (k < 0)
        throw Error(ErrorKind::domain, "continued fraction expansion too short for T=" + std::to_string(T));

    GapStructure g;
    g.T = T;
    g.k = k;
    g.omega = w;
    g.q_k = narrow(cf.convergent(k).q, "q_k");
    g.q_prev = narrow(cf.convergent(k - 1).q, "q_{k-1}");
    g.q_next = narrow(cf.convergent(k + 1).q, "q_{k+1}");
    g.a_next = cf.a(k + 1);
    g.r = (T - g.q_prev) / g.q_k;
    g.s = (T - g.q_prev) % g.q_k;

    const f128 dk = abs128(signed_error(cf.convergent(k), w));
    const f128 dk1 = abs128(signed_error(cf.convergent(k + 1), w));
    const f128 da = dk;
    const f128 db = dk1 + static_cast<f128>(g.a_next - g.r) * dk;
    g.delta_a = static_cast<double>(da);
    g.delta_b = static_cast<double>(db);
    g.delta_c = static_cast<double>(da + db);
    g.n_a = T + 1 - g.q_k;
    g.n_b = g.s + 1;
    g.n_c = g.q_k - g.s - 1;
    return g;
}

}  // namespace qpd

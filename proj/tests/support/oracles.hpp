#pragma once

// Independent brute-force references used by the unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "qpd/diagram.hpp"
#include "qpd/kunneth.hpp"
#include "qpd/numtheory.hpp"
#include "qpd/rips.hpp"

namespace oracle {

using cplx = std::complex<double>;

// Sorted adjacent circular gaps of {t*omega mod 1}, in long double.
inline std::vector<double> brute_gaps(double omega, std::int64_t T) {
    std::vector<long double> pts;
    for (std::int64_t t = 0; t <= T; ++t) {
        long double x = static_cast<long double>(t) * omega;
        pts.push_back(x - std::floor(x));
    }
    std::sort(pts.begin(), pts.end());
    std::vector<double> g;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) g.push_back(static_cast<double>(pts[i + 1] - pts[i]));
    g.push_back(static_cast<double>(1.0L - pts.back() + pts.front()));
    std::sort(g.begin(), g.end());
    return g;
}

inline std::vector<double> expand_gaps(const qpd::GapStructure& gs) {
    std::vector<double> out;
    out.insert(out.end(), static_cast<std::size_t>(gs.n_a), gs.delta_a);
    out.insert(out.end(), static_cast<std::size_t>(gs.n_b), gs.delta_b);
    out.insert(out.end(), static_cast<std::size_t>(gs.n_c), gs.delta_c);
    std::sort(out.begin(), out.end());
    return out;
}

inline double circle_dist(double x, double y) {
    double d = std::fabs(x - y);
    return std::min(d, 1.0 - d);
}

// Ambient points of a torus grid: coordinate j is radius_j * exp(2 pi i t_j omega_j).
inline Eigen::MatrixXcd grid_cloud(const qpd::GridSpec& g) {
    const auto n = static_cast<std::size_t>(g.T + 1);
    std::size_t total = 1;
    for (std::size_t j = 0; j < g.factors.size(); ++j) total *= n;
    Eigen::MatrixXcd out(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(g.factors.size()));
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        for (std::size_t j = 0; j < g.factors.size(); ++j) {
            const auto t = static_cast<double>(rest % n);
            rest /= n;
            out(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(j)) =
                std::polar(g.factors[j].radius, 2 * std::numbers::pi * t * g.factors[j].omega);
        }
    }
    return out;
}

// Hausdorff distance under max-over-coordinates modulus, by double loops.
inline double brute_hausdorff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    auto directed = [](const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
        double worst = 0;
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            double best = INFINITY;
            for (Eigen::Index j = 0; j < y.rows(); ++j) best = std::min(best, (x.row(i) - y.row(j)).cwiseAbs().maxCoeff());
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

// GF(2) linear algebra on bit vectors.
using Bits = std::vector<std::uint64_t>;

inline int gf2_rank(std::vector<Bits> rows) {
    int rank = 0;
    const std::size_t words = rows.empty() ? 0 : rows[0].size();
    for (std::size_t bit = 0; bit < words * 64 && rank < static_cast<int>(rows.size()); ++bit) {
        const std::size_t w = bit / 64;
        const std::uint64_t m = std::uint64_t{1} << (bit % 64);
        std::size_t piv = static_cast<std::size_t>(rank);
        while (piv < rows.size() && !(rows[piv][w] & m)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[static_cast<std::size_t>(rank)]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != static_cast<std::size_t>(rank) && (rows[r][w] & m))
                for (std::size_t k = 0; k < words; ++k) rows[r][k] ^= rows[static_cast<std::size_t>(rank)][k];
        ++rank;
    }
    return rank;
}

// Basis of the kernel of the map sending generator i to images[i].
inline std::vector<Bits> gf2_kernel(const std::vector<Bits>& images, std::size_t n_gens) {
    const std::size_t gw = (n_gens + 63) / 64;
    std::vector<std::pair<Bits, Bits>> rows;
    for (std::size_t i = 0; i < images.size(); ++i) {
        Bits tag(gw, 0);
        tag[i / 64] |= std::uint64_t{1} << (i % 64);
        rows.push_back({images[i], tag});
    }
    std::vector<Bits> kernel;
    const std::size_t iw = images.empty() ? 0 : images[0].size();
    std::vector<bool> used(rows.size(), false);
    for (std::size_t bit = 0; bit < iw * 64; ++bit) {
        const std::size_t w = bit / 64;
        const std::uint64_t m = std::uint64_t{1} << (bit % 64);
        std::size_t piv = 0;
        while (piv < rows.size() && (used[piv] || !(rows[piv].first[w] & m))) ++piv;
        if (piv == rows.size()) continue;
        used[piv] = true;
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != piv && (rows[r].first[w] & m)) {
                for (std::size_t k = 0; k < iw; ++k) rows[r].first[k] ^= rows[piv].first[k];
                for (std::size_t k = 0; k < gw; ++k) rows[r].second[k] ^= rows[piv].second[k];
            }
    }
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (!used[r]) kernel.push_back(rows[r].second);
    return kernel;
}

// Rips diagrams from persistent Betti numbers by inclusion-exclusion over critical values.
inline std::vector<qpd::PersistenceDiagram> betti_diagrams(const qpd::FiniteMetricSpace& X, int max_dim) {
    const std::size_t n = X.n;
    std::vector<std::vector<std::vector<int>>> simplices(static_cast<std::size_t>(max_dim) + 2);
    std::vector<std::vector<double>> values(simplices.size());
    for (std::size_t k = 0; k < simplices.size(); ++k) {
        std::vector<int> pick(k + 1);
        std::vector<bool> mask(n, false);
        if (k + 1 > n) continue;
        std::fill(mask.begin(), mask.begin() + static_cast<long>(k + 1), true);
        do {
            std::vector<int> s;
            for (std::size_t i = 0; i < n; ++i)
                if (mask[i]) s.push_back(static_cast<int>(i));
            double v = 0;
            for (std::size_t a = 0; a < s.size(); ++a)
                for (std::size_t b = a + 1; b < s.size(); ++b) v = std::max(v, X(static_cast<std::size_t>(s[a]), static_cast<std::size_t>(s[b])));
            simplices[k].push_back(s);
            values[k].push_back(v);
        } while (std::prev_permutation(mask.begin(), mask.end()));
    }
    std::set<double> crit_set{0.0};
    for (const auto& vs : values) crit_set.insert(vs.begin(), vs.end());
    const std::vector<double> crit(crit_set.begin(), crit_set.end());
    const int m = static_cast<int>(crit.size()) - 1;

    auto boundary = [&](std::size_t k, std::size_t idx) {
        // image of simplex idx of dimension k in the (k-1)-chains
        const auto& faces = simplices[k - 1];
        Bits b((faces.size() + 63) / 64, 0);
        const auto& s = simplices[k][idx];
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            std::vector<int> f;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (i != drop) f.push_back(s[i]);
            // faces are generated in lexicographic order
            auto pos = std::lower_bound(faces.begin(), faces.end(), f) - faces.begin();
            b[static_cast<std::size_t>(pos) / 64] |= std::uint64_t{1} << (static_cast<std::size_t>(pos) % 64);
        }
        return b;
    };

    // beta[k](i, j): rank of H_k(K_{crit_i}) -> H_k(K_{crit_j}).
    auto beta = [&](std::size_t k, double a, double b) {
        std::vector<std::size_t> in_a;
        for (std::size_t i = 0; i < simplices[k].size(); ++i)
            if (values[k][i] <= a) in_a.push_back(i);
        const std::size_t words = (simplices[k].size() + 63) / 64;
        std::vector<Bits> cycles;
        if (k == 0) {
            for (auto i : in_a) {
                Bits v(words, 0);
                v[i / 64] |= std::uint64_t{1} << (i % 64);
                cycles.push_back(v);
            }
        } else {
            std::vector<Bits> imgs;
            for (auto i : in_a) imgs.push_back(boundary(k, i));
            for (const auto& tag : gf2_kernel(imgs, in_a.size())) {
                Bits v(words, 0);
                for (std::size_t t = 0; t < in_a.size(); ++t)
                    if (tag[t / 64] >> (t % 64) & 1) v[in_a[t] / 64] |= std::uint64_t{1} << (in_a[t] % 64);
                cycles.push_back(v);
            }
        }
        std::vector<Bits> bounds;
        for (std::size_t i = 0; i < simplices[k + 1].size(); ++i)
            if (values[k + 1][i] <= b) bounds.push_back(boundary(k + 1, i));
        if (bounds.empty() && cycles.empty()) return 0;
        std::vector<Bits> both = bounds;
        both.insert(both.end(), cycles.begin(), cycles.end());
        for (auto& v : both) v.resize(words, 0);
        for (auto& v : bounds) v.resize(words, 0);
        return gf2_rank(both) - gf2_rank(bounds);
    };

    std::vector<qpd::PersistenceDiagram> out;
    for (int k = 0; k <= max_dim; ++k) {
        qpd::PersistenceDiagram d{k, {}};
        const auto kk = static_cast<std::size_t>(k);
        std::map<std::pair<int, int>, int> memo;
        auto B = [&](int i, int j) {
            if (i < 0) return 0;
            auto key = std::make_pair(i, j);
            auto it = memo.find(key);
            if (it != memo.end()) return it->second;
            return memo[key] = beta(kk, crit[static_cast<std::size_t>(i)], crit[static_cast<std::size_t>(j)]);
        };
        for (int i = 0; i <= m; ++i) {
            for (int j = i + 1; j <= m; ++j) {
                int mu = B(i, j - 1) - B(i, j) - B(i - 1, j - 1) + B(i - 1, j);
                if (mu > 0) d.points.push_back({crit[static_cast<std::size_t>(i)], crit[static_cast<std::size_t>(j)], mu});
            }
            int ess = B(i, m) - B(i - 1, m);
            if (ess > 0) d.points.push_back({crit[static_cast<std::size_t>(i)], qpd::kInf, ess});
        }
        d.canonicalize();
        out.push_back(d);
    }
    return out;
}

inline qpd::FiniteMetricSpace random_planar_space(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x(n), y(n), dist(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = u(rng);
        y[i] = u(rng);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) dist[i * n + j] = std::hypot(x[i] - x[j], y[i] - y[j]);
    return qpd::make_space(n, dist);
}

// Irrational-looking rotation numbers away from short rationals.
inline double random_omega(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    while (true) {
        double w = u(rng);
        bool near_rational = false;
        for (int q = 1; q <= 400 && !near_rational; ++q) {
            double p = std::round(w * q);
            near_rational = std::fabs(w * q - p) < 1e-9;
        }
        if (!near_rational && w > 1e-6) return w;
    }
}

inline qpd::PersistenceDiagram random_diagram(std::mt19937_64& rng, int n, int dim = 1) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    qpd::PersistenceDiagram d{dim, {}};
    for (int i = 0; i < n; ++i) {
        double b = u(rng);
        d.points.push_back({b, b + 0.01 + u(rng), 1});
    }
    return d;
}

}  // namespace oracle

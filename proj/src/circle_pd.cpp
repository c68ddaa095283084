#include "qpd/circle_pd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "qpd/error.hpp"

namespace qpd {

CirclePointSet point_set(double omega, std::int64_t T) {
    if (!std::isfinite(omega)) throw Error(ErrorKind::domain, "omega must be finite");
    if (T < 1) throw Error(ErrorKind::validation, "T must be at least 1");
    CirclePointSet ps;
    ps.omega = reduce_mod1(omega);
    ps.T = T;
    const auto n = static_cast<std::size_t>(T + 1);
    std::vector<double> coord(n);
    const long double w = ps.omega;
    for (std::size_t t = 0; t < n; ++t) {
        long double x = static_cast<long double>(t) * w;
        double c = static_cast<double>(x - std::floor(x));
        coord[t] = c >= 1.0 ? 0.0 : c;
    }
    std::vector<std::int64_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
        return std::tie(coord[static_cast<std::size_t>(a)], a) < std::tie(coord[static_cast<std::size_t>(b)], b);
    });
    ps.points.reserve(n);
    for (auto t : order) ps.points.push_back(coord[static_cast<std::size_t>(t)]);
    ps.time_index = std::move(order);
    for (std::size_t i = 1; i < n; ++i) {
        if (ps.points[i] == ps.points[i - 1]) {
            ContinuedFraction cf = cfe(ps.omega, 64);
            const Convergent& c = cf.convergent(cf.terms());
            throw InsufficientIrrationality(static_cast<std::int64_t>(c.p), static_cast<std::int64_t>(c.q), T);
        }
    }
    return ps;
}

double circle_distance(double x, double y) {
    double d = std::fabs(x - y);
    return std::min(d, 1.0 - d);
}

double forward_arc(double x, double y) { return y >= x ? y - x : 1.0 - (x - y); }

std::vector<double> adjacent_arcs(const CirclePointSet& ps) {
    const std::size_t n = ps.points.size();
    std::vector<double> arcs(n);
    for (std::size_t i = 0; i < n; ++i) arcs[i] = forward_arc(ps.points[i], ps.points[(i + 1) % n]);
    return arcs;
}

PersistenceDiagram dgm0_exact(const GapStructure& g) {
    auto gaps = g.gaps();
    // Fold numerically equal lengths (e.g. delta_a == delta_b at the r = a_{k+1} edge).
    std::vector<std::pair<double, std::int64_t>> merged;
    for (const auto& gap : gaps) {
        if (!merged.empty() && std::fabs(merged.back().first - gap.first) <= kGapMergeQuantum)
            merged.back().second += gap.second;
        else
            merged.push_back(gap);
    }
    merged.back().second -= 1;

    PersistenceDiagram d{0, {}};
    for (const auto& [len, count] : merged)
        if (count > 0) d.points.push_back({0.0, len, count});
    d.points.push_back({0.0, kInf, 1});
    return d;
}

PersistenceDiagram dgm0_exact(double omega, std::int64_t T) { return dgm0_exact(three_gap(omega, T)); }

double lambda_death(const CirclePointSet& ps) {
    const auto& p = ps.points;
    const std::size_t n = p.size();
    if (n < 3) return kInf;
    constexpr double lo = 1.0 / 3.0 - 1e-12;
    auto at = [&](std::size_t i, std::size_t off) { return p[(i + off) % n]; };
    // Offsets 1..n-1 from i have strictly increasing forward arcs.
    auto first_offset = [&](std::size_t i, auto pred) {
        std::size_t a = 1, b = n;
        while (a < b) {
            std::size_t mid = a + (b - a) / 2;
            if (pred(forward_arc(p[i], at(i, mid))))
                b = mid;
            else
                a = mid + 1;
        }
        return a;
    };

    // (arc, i, offset) merged across all i in ascending arc order.
    using Cand = std::tuple<double, std::size_t, std::size_t>;
    std::priority_queue<Cand, std::vector<Cand>, std::greater<>> heap;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t off = first_offset(i, [&](double a) { return a >= lo; });
        if (off < n) {
            double a = forward_arc(p[i], at(i, off));
            if (a < 0.5) heap.emplace(a, i, off);
        }
    }
    while (!heap.empty()) {
        auto [a, i, off] = heap.top();
        heap.pop();
        const std::size_t j = (i + off) % n;
        // The witness farthest along from j with arc(j,z) <= a minimises arc(z,i).
        std::size_t zoff = first_offset(j, [&](double u) { return u > a; });
        if (zoff > 1) {
            double z = at(j, zoff - 1);
            if (forward_arc(z, p[i]) <= a) {
                if (a < 1.0 / 3.0 - 1e-9) throw std::logic_error("lambda below 1/3");
                return a;
            }
        }
        if (off + 1 < n) {
            double next = forward_arc(p[i], at(i, off + 1));
            if (next < 0.5) heap.emplace(next, i, off + 1);
        }
    }
    return kInf;
}

double lambda_death(double omega, std::int64_t T) {
    if (T < 2) return kInf;
    return lambda_death(point_set(omega, T));
}

PersistenceDiagram dgm1_exact(double omega, std::int64_t T) {
    PersistenceDiagram d{1, {}};
    if (T < 2) return d;
    const GapStructure g = three_gap(omega, T);
    const double birth = g.max_gap();
    if (birth >= 0.5) return d;
    const double death = lambda_death(point_set(omega, T));
    if (birth < death) d.points.push_back({birth, death, 1});
    return d;
}

}  // namespace qpd

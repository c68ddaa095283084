#include "qpd/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <queue>
#include <thread>

#include "qpd/circle_pd.hpp"
#include "qpd/error.hpp"
#include "qpd/parallel.hpp"

namespace qpd {

namespace {

// Hopcroft-Karp over a bipartite graph with equal sides.
class Matcher {
public:
    explicit Matcher(std::size_t n) : n_(n), adj_(n) {}
    void add(std::size_t l, std::size_t r) { adj_[l].push_back(r); }

    std::size_t max_matching() {
        match_l_.assign(n_, kFree);
        match_r_.assign(n_, kFree);
        std::size_t size = 0;
        while (bfs())
            for (std::size_t l = 0; l < n_; ++l)
                if (match_l_[l] == kFree && dfs(l)) ++size;
        return size;
    }

private:
    static constexpr std::size_t kFree = ~std::size_t{0};

    bool bfs() {
        dist_.assign(n_, kFree);
        std::queue<std::size_t> q;
        for (std::size_t l = 0; l < n_; ++l)
            if (match_l_[l] == kFree) {
                dist_[l] = 0;
                q.push(l);
            }
        bool found = false;
        while (!q.empty()) {
            std::size_t l = q.front();
            q.pop();
            for (std::size_t r : adj_[l]) {
                std::size_t next = match_r_[r];
                if (next == kFree)
                    found = true;
                else if (dist_[next] == kFree) {
                    dist_[next] = dist_[l] + 1;
                    q.push(next);
                }
            }
        }
        return found;
    }

    bool dfs(std::size_t l) {
        for (std::size_t r : adj_[l]) {
            std::size_t next = match_r_[r];
            if (next == kFree || (dist_[next] == dist_[l] + 1 && dfs(next))) {
                match_l_[l] = r;
                match_r_[r] = l;
                return true;
            }
        }
        dist_[l] = kFree;
        return false;
    }

    std::size_t n_;
    std::vector<std::vector<std::size_t>> adj_;
    std::vector<std::size_t> match_l_, match_r_, dist_;
};

double linf(const DiagramPoint& p, const DiagramPoint& q) {
    return std::max(std::fabs(p.birth - q.birth), std::fabs(p.death - q.death));
}

bool perfect_matching_within(const std::vector<DiagramPoint>& a, const std::vector<DiagramPoint>& b, double eps) {
    // Left: a, then diagonal copies of b. Right: b, then diagonal copies of a.
    const std::size_t na = a.size(), nb = b.size();
    Matcher m(na + nb);
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < nb; ++j)
            if (linf(a[i], b[j]) <= eps) m.add(i, j);
        if (a[i].persistence() / 2 <= eps) m.add(i, nb + i);
    }
    for (std::size_t j = 0; j < nb; ++j) {
        if (b[j].persistence() / 2 <= eps) m.add(na + j, j);
        for (std::size_t i = 0; i < na; ++i) m.add(na + j, nb + i);
    }
    return m.max_matching() == na + nb;
}

}  // namespace

double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b) {
    std::vector<DiagramPoint> fa, fb;
    std::vector<double> ea, eb;
    for (const auto& p : a.expanded()) (p.essential() ? ea.push_back(p.birth) : fa.push_back(p));
    for (const auto& p : b.expanded()) (p.essential() ? eb.push_back(p.birth) : fb.push_back(p));
    if (ea.size() != eb.size()) return kInf;
    std::sort(ea.begin(), ea.end());
    std::sort(eb.begin(), eb.end());
    double essential = 0.0;
    for (std::size_t i = 0; i < ea.size(); ++i) essential = std::max(essential, std::fabs(ea[i] - eb[i]));
    if (fa.empty() && fb.empty()) return essential;

    std::vector<double> cand = {0.0};
    for (const auto& p : fa) cand.push_back(p.persistence() / 2);
    for (const auto& q : fb) cand.push_back(q.persistence() / 2);
    for (const auto& p : fa)
        for (const auto& q : fb) cand.push_back(linf(p, q));
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::size_t lo = 0, hi = cand.size() - 1;
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (perfect_matching_within(fa, fb, cand[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return std::max(essential, cand[lo]);
}

TorusSample torus_from_points(const Eigen::MatrixXcd& points) {
    TorusSample s;
    s.flat.resize(points.rows(), points.cols());
    for (Eigen::Index j = 0; j < points.cols(); ++j) {
        double r = 0.0;
        for (Eigen::Index i = 0; i < points.rows(); ++i) {
            r += std::abs(points(i, j));
            s.flat(i, j) = reduce_mod1(std::arg(points(i, j)) / (2.0 * std::numbers::pi));
        }
        s.radii.push_back(points.rows() > 0 ? r / static_cast<double>(points.rows()) : 0.0);
    }
    return s;
}

TorusSample grid_as_sample(const GridSpec& grid) {
    const std::size_t m = grid.factors.size();
    std::vector<std::vector<double>> axes;
    std::size_t total = 1;
    for (const auto& f : grid.factors) {
        axes.push_back(point_set(f.omega, grid.T).points);
        total *= axes.back().size();
    }
    TorusSample s;
    s.flat.resize(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t rest = i;
        for (std::size_t j = 0; j < m; ++j) {
            s.flat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = axes[j][rest % axes[j].size()];
            rest /= axes[j].size();
        }
    }
    for (const auto& f : grid.factors) s.radii.push_back(f.radius);
    return s;
}

namespace {

double chord(double r, double x, double y) { return 2.0 * r * std::sin(std::numbers::pi * circle_distance(x, y)); }

// Nearest coordinate on a sorted circle sample, as a flat distance.
double nearest_on_circle(const std::vector<double>& sorted, double x) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
    double best = 1.0;
    if (it != sorted.end()) best = std::min(best, circle_distance(*it, x));
    if (it != sorted.begin()) best = std::min(best, circle_distance(*(it - 1), x));
    best = std::min(best, circle_distance(sorted.front(), x));
    best = std::min(best, circle_distance(sorted.back(), x));
    return best;
}

void check_radii(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::validation, "factor counts differ");
    for (std::size_t j = 0; j < a.size(); ++j)
        if (std::fabs(a[j] - b[j]) > 1e-9 * std::max(1.0, std::fabs(b[j])))
            throw Error(ErrorKind::validation, "trajectory and grid radii differ");
}

// Points of `to` sorted by their first flat coordinate.
struct SortedCloud {
    std::vector<double> key;
    Eigen::MatrixXd rows;

    explicit SortedCloud(const Eigen::MatrixXd& flat) {
        std::vector<Eigen::Index> order(static_cast<std::size_t>(flat.rows()));
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<Eigen::Index>(i);
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return flat(a, 0) < flat(b, 0); });
        rows.resize(flat.rows(), flat.cols());
        for (std::size_t i = 0; i < order.size(); ++i) {
            rows.row(static_cast<Eigen::Index>(i)) = flat.row(order[i]);
            key.push_back(flat(order[i], 0));
        }
    }
};

// min over the cloud of the max-chord distance to x, abandoning once it drops to `good_enough`.
double nearest_in_cloud(const SortedCloud& cloud, const std::vector<double>& radii, const double* x, double good_enough) {
    const std::size_t n = cloud.key.size();
    const std::size_t m = radii.size();
    const auto start = static_cast<std::size_t>(std::lower_bound(cloud.key.begin(), cloud.key.end(), x[0]) - cloud.key.begin());
    double best = kInf;
    auto dist = [&](std::size_t i) {
        double d = 0.0;
        for (std::size_t j = 0; j < m && d < best; ++j)
            d = std::max(d, chord(radii[j], cloud.rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), x[j]));
        return d;
    };
    // Walk both ways around the circle of the first factor; stop a direction once its chord alone exceeds best.
    bool up = true, down = true;
    for (std::size_t step = 0; step < n && (up || down); ++step) {
        if (up) {
            std::size_t i = (start + step) % n;
            if (chord(radii[0], cloud.key[i], x[0]) >= best)
                up = false;
            else
                best = std::min(best, dist(i));
        }
        if (down && step + 1 <= n) {
            std::size_t i = (start + n - 1 - step) % n;
            if (chord(radii[0], cloud.key[i], x[0]) >= best)
                down = false;
            else
                best = std::min(best, dist(i));
        }
        if (best <= good_enough) return best;
        if (2 * step + 2 >= n) break;
    }
    return best;
}

void atomic_max(std::atomic<double>& target, double v) {
    double cur = target.load();
    while (v > cur && !target.compare_exchange_weak(cur, v)) {
    }
}

template <class PointAt>
double directed_to_cloud(std::size_t count, std::size_t m, PointAt point_at, const SortedCloud& cloud,
                         const std::vector<double>& radii, double floor = 0.0) {
    std::atomic<double> result{floor};
    const std::size_t workers = std::min<std::size_t>(thread_count(), std::max<std::size_t>(1, count / 4096));
    auto work = [&](std::size_t w) {
        std::vector<double> x(m);
        for (std::size_t i = w; i < count; i += workers) {
            point_at(i, x.data());
            double h = result.load(std::memory_order_relaxed);
            double d = nearest_in_cloud(cloud, radii, x.data(), h);
            if (d > h) atomic_max(result, d);
        }
    };
    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    return result.load();
}

// Coverage of a product grid by max-metric balls around trajectory points, via an N-dimensional difference array.
class GridCover {
public:
    GridCover(const std::vector<std::vector<double>>& axes, const Eigen::MatrixXd& points, const std::vector<double>& radii)
        : axes_(axes), points_(points), radii_(radii) {
        std::size_t total = 1;
        for (const auto& ax : axes_) {
            strides_.push_back(total);
            total *= ax.size();
        }
        counts_.resize(total);
    }

    std::size_t count_uncovered(double r) {
        fill(r);
        return static_cast<std::size_t>(std::count(counts_.begin(), counts_.end(), 0));
    }

    std::vector<std::size_t> uncovered(double r) {
        fill(r);
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < counts_.size(); ++i)
            if (counts_[i] == 0) out.push_back(i);
        return out;
    }

private:
    struct Span {
        std::size_t lo, hi; // half-open index range on one axis
    };

    // Indices of axis values within flat distance w of x, as one or two linear spans.
    void spans(std::size_t j, double x, double w, std::vector<Span>& out) const {
        const auto& ax = axes_[j];
        const std::size_t n = ax.size();
        out.clear();
        if (w >= 0.5) {
            out.push_back({0, n});
            return;
        }
        auto lower = [&](double v) { return static_cast<std::size_t>(std::lower_bound(ax.begin(), ax.end(), v) - ax.begin()); };
        auto upper = [&](double v) { return static_cast<std::size_t>(std::upper_bound(ax.begin(), ax.end(), v) - ax.begin()); };
        const double a = x - w, b = x + w;
        if (a < 0) {
            out.push_back({0, upper(b)});
            out.push_back({lower(a + 1.0), n});
        } else if (b >= 1.0) {
            out.push_back({lower(a), n});
            out.push_back({0, upper(b - 1.0)});
        } else {
            out.push_back({lower(a), upper(b)});
        }
        std::erase_if(out, [](const Span& s) { return s.lo >= s.hi; });
    }

    void fill(double r) {
        const std::size_t m = axes_.size();
        std::fill(counts_.begin(), counts_.end(), 0);
        std::vector<double> w(m);
        for (std::size_t j = 0; j < m; ++j) {
            const double q = r / (2.0 * radii_[j]);
            w[j] = q >= 1.0 ? 0.5 : std::asin(q) / std::numbers::pi;
        }
        std::vector<std::vector<Span>> per_axis(m);
        std::vector<std::size_t> pick(m);
        for (Eigen::Index i = 0; i < points_.rows(); ++i) {
            bool empty = false;
            for (std::size_t j = 0; j < m && !empty; ++j) {
                spans(j, points_(i, static_cast<Eigen::Index>(j)), w[j], per_axis[j]);
                empty = per_axis[j].empty();
            }
            if (empty) continue;
            // every combination of spans is a box; add its corners with alternating signs
            std::fill(pick.begin(), pick.end(), 0);
            while (true) {
                for (std::size_t corner = 0; corner < (std::size_t{1} << m); ++corner) {
                    std::size_t idx = 0;
                    int sign = 1;
                    bool inside = true;
                    for (std::size_t j = 0; j < m && inside; ++j) {
                        const Span& s = per_axis[j][pick[j]];
                        std::size_t c = s.lo;
                        if (corner >> j & 1) {
                            c = s.hi;
                            sign = -sign;
                            inside = c < axes_[j].size();
                        }
                        idx += c * strides_[j];
                    }
                    if (inside) counts_[idx] += sign;
                }
                std::size_t j = 0;
                while (j < m && ++pick[j] == per_axis[j].size()) pick[j++] = 0;
                if (j == m) break;
            }
        }
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t n = axes_[j].size(), stride = strides_[j], block = stride * n;
            for (std::size_t base = 0; base < counts_.size(); base += block)
                for (std::size_t i = base + stride; i < base + block; ++i) counts_[i] += counts_[i - stride];
        }
    }

    const std::vector<std::vector<double>>& axes_;
    const Eigen::MatrixXd& points_;
    const std::vector<double>& radii_;
    std::vector<std::size_t> strides_;
    std::vector<std::int32_t> counts_;
};

}  // namespace

double directed_hausdorff(const TorusSample& from, const TorusSample& to) {
    check_radii(from.radii, to.radii);
    if (from.flat.rows() == 0 || to.flat.rows() == 0) throw Error(ErrorKind::validation, "Hausdorff distance of an empty set");
    const auto m = static_cast<std::size_t>(from.flat.cols());
    SortedCloud cloud(to.flat);
    auto at = [&](std::size_t i, double* x) {
        for (std::size_t j = 0; j < m; ++j) x[j] = from.flat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    };
    return directed_to_cloud(static_cast<std::size_t>(from.flat.rows()), m, at, cloud, to.radii);
}

double hausdorff(const TorusSample& a, const TorusSample& b) {
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double hausdorff_bound(const TorusSample& trajectory, const GridSpec& grid) {
    std::vector<double> radii;
    std::vector<std::vector<double>> axes;
    for (const auto& f : grid.factors) {
        radii.push_back(f.radius);
        axes.push_back(point_set(f.omega, grid.T).points);
    }
    check_radii(trajectory.radii, radii);
    const auto m = axes.size();
    if (trajectory.flat.rows() == 0) throw Error(ErrorKind::validation, "Hausdorff distance of an empty set");

    // Trajectory to grid: the product structure decouples per factor.
    double forward = 0.0;
    for (Eigen::Index i = 0; i < trajectory.flat.rows(); ++i) {
        double d = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            double flat = nearest_on_circle(axes[j], trajectory.flat(i, static_cast<Eigen::Index>(j)));
            d = std::max(d, 2.0 * radii[j] * std::sin(std::numbers::pi * flat));
        }
        forward = std::max(forward, d);
    }

    GridCover cover(axes, trajectory.flat, radii);
    const double top = 2.0 * *std::max_element(radii.begin(), radii.end());
    // Grid points not covered at radius r have nearest-trajectory distance above r (up to rounding).
    // Bisect until few remain, then measure those exactly.
    constexpr double kShrink = 1.0 - 1e-9;
    double lo = forward, hi = top;
    if (cover.uncovered(lo * kShrink).empty()) return forward;
    for (int it = 0; it < 100 && hi - lo > 1e-4 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const auto left = cover.count_uncovered(mid);
        if (left == 0) {
            hi = mid;
        } else {
            lo = mid;
            if (left <= 2048) break;
        }
    }
    const auto candidates = cover.uncovered(lo * kShrink);
    SortedCloud cloud(trajectory.flat);
    auto at = [&](std::size_t c, double* x) {
        std::size_t i = candidates[c];
        for (std::size_t j = 0; j < m; ++j) {
            x[j] = axes[j][i % axes[j].size()];
            i /= axes[j].size();
        }
    };
    return directed_to_cloud(candidates.size(), m, at, cloud, radii, forward);
}

ErrorRectangle error_rectangle(const DiagramPoint& p, double lambda_gh, double cond_k) {
    if (lambda_gh < 0) throw Error(ErrorKind::validation, "lambda must be non-negative");
    if (cond_k < 1) throw Error(ErrorKind::validation, "condition number must be at least 1");
    const double two_l = 2.0 * lambda_gh, k = cond_k;
    ErrorRectangle r;
    r.source = p;
    r.lambda_gh = lambda_gh;
    r.cond_k = cond_k;
    r.x0 = std::max(0.0, (p.birth - two_l) / k);
    r.x1 = k * (p.birth + two_l);
    r.y0 = std::max(0.0, (p.death - two_l) / k);
    r.y1 = k * (p.death + two_l);
    r.ratio = (p.death - two_l) / (p.birth + two_l);
    r.admissible = r.ratio > std::max(k * k, 1.0);
    return r;
}

std::vector<ErrorRectangle> error_rectangles(const PersistenceDiagram& grid_dgm, double lambda_gh, double cond_k) {
    std::vector<ErrorRectangle> out;
    for (const auto& p : grid_dgm.points)
        if (!p.essential()) out.push_back(error_rectangle(p, lambda_gh, cond_k));
    return out;
}

bool contains(const ErrorRectangle& r, double birth, double death) {
    return birth >= r.x0 && birth <= r.x1 && death >= r.y0 && death <= r.y1;
}

}  // namespace qpd

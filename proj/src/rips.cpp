#include "qpd/rips.hpp"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <string>

#include "qpd/error.hpp"

namespace qpd {

bool FiniteMetricSpace::valid(bool check_triangle, double tol) const {
    if (dist.size() != n * n) return false;
    for (std::size_t i = 0; i < n; ++i) {
        if ((*this)(i, i) != 0.0) return false;
        for (std::size_t j = 0; j < n; ++j) {
            double d = (*this)(i, j);
            if (!(d >= 0.0) || d != (*this)(j, i)) return false;
        }
    }
    if (check_triangle)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    if ((*this)(i, k) > (*this)(i, j) + (*this)(j, k) + tol) return false;
    return true;
}

FiniteMetricSpace make_space(std::size_t n, std::vector<double> dist) {
    FiniteMetricSpace s{n, std::move(dist)};
    if (!s.valid()) throw Error(ErrorKind::validation, "distance matrix must be square, symmetric, non-negative with zero diagonal");
    return s;
}

FiniteMetricSpace metric_from_circle(const CirclePointSet& ps) {
    const std::size_t n = ps.points.size();
    FiniteMetricSpace s{n, std::vector<double>(n * n, 0.0)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            s.dist[i * n + j] = s.dist[j * n + i] = circle_distance(ps.points[i], ps.points[j]);
    return s;
}

FiniteMetricSpace metric_from_cloud(const Eigen::MatrixXcd& points, CloudMetric metric) {
    const auto n = static_cast<std::size_t>(points.rows());
    const Eigen::Index m = points.cols();
    FiniteMetricSpace s{n, std::vector<double>(n * n, 0.0)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = 0.0;
            for (Eigen::Index c = 0; c < m; ++c) {
                double e = std::abs(points(static_cast<Eigen::Index>(i), c) - points(static_cast<Eigen::Index>(j), c));
                d = metric == CloudMetric::euclidean ? d + e * e : std::max(d, e);
            }
            if (metric == CloudMetric::euclidean) d = std::sqrt(d);
            s.dist[i * n + j] = s.dist[j * n + i] = d;
        }
    }
    return s;
}

double rips_simplex_count(std::size_t n, int max_dim) {
    double total = 0.0;
    double c = 1.0; // C(n, k)
    for (int k = 1; k <= max_dim + 2; ++k) {
        c = c * static_cast<double>(n - static_cast<std::size_t>(k) + 1) / k;
        if (c <= 0) break;
        total += c;
    }
    return total;
}

namespace {

using index_t = std::uint64_t;

class Binomial {
public:
    Binomial(std::size_t n, int k) : k_(k + 1), table_((n + 1) * static_cast<std::size_t>(k_ + 1), 0) {
        for (std::size_t i = 0; i <= n; ++i) {
            at(i, 0) = 1;
            for (int j = 1; j <= std::min<int>(k_, static_cast<int>(i)); ++j)
                at(i, j) = (j == static_cast<int>(i)) ? 1 : at(i - 1, j - 1) + at(i - 1, j);
        }
    }
    index_t operator()(std::size_t v, int k) const {
        return k < 0 || k > k_ ? 0 : table_[v * static_cast<std::size_t>(k_ + 1) + static_cast<std::size_t>(k)];
    }

private:
    index_t& at(std::size_t v, int k) { return table_[v * static_cast<std::size_t>(k_ + 1) + static_cast<std::size_t>(k)]; }
    int k_;
    std::vector<index_t> table_;
};

struct Entry {
    double diam;
    index_t index;
};

// Heap order: the top is the earliest simplex in the filtration
// (smallest diameter, then largest index).
struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
        return a.diam > b.diam || (a.diam == b.diam && a.index < b.index);
    }
};

using Column = std::priority_queue<Entry, std::vector<Entry>, Later>;

constexpr index_t kNone = ~index_t{0};

Entry pop_pivot(Column& col) {
    if (col.empty()) return {0.0, kNone};
    Entry pivot = col.top();
    col.pop();
    while (!col.empty() && col.top().index == pivot.index) {
        col.pop();
        if (col.empty()) return {0.0, kNone};
        pivot = col.top();
        col.pop();
    }
    return pivot;
}

Entry get_pivot(Column& col) {
    Entry p = pop_pivot(col);
    if (p.index != kNone) col.push(p);
    return p;
}

class CohomologyReducer {
public:
    CohomologyReducer(const FiniteMetricSpace& s, int max_dim, double threshold)
        : s_(s), n_(s.n), max_dim_(max_dim), threshold_(threshold), binom_(s.n, max_dim + 2) {}

    std::vector<PersistenceDiagram> run() {
        std::vector<PersistenceDiagram> out;
        for (int d = 0; d <= max_dim_; ++d) out.push_back({d, {}});
        std::vector<Entry> columns;
        compute_dim0(out[0], columns);
        for (int dim = 1; dim <= max_dim_; ++dim) {
            pivots_.clear();
            reduce(dim, columns, out[static_cast<std::size_t>(dim)]);
            if (dim < max_dim_) columns = assemble(dim + 1);
        }
        for (auto& d : out) d.canonicalize();
        return out;
    }

private:
    void vertices_of(index_t idx, int dim, std::vector<std::uint32_t>& verts) const {
        verts.resize(static_cast<std::size_t>(dim + 1));
        std::size_t top = n_;
        for (int k = dim + 1; k >= 1; --k) {
            // largest v < top with C(v, k) <= idx
            std::size_t lo = static_cast<std::size_t>(k - 1), hi = top - 1;
            while (lo < hi) {
                std::size_t mid = hi - (hi - lo) / 2;
                if (binom_(mid, k) <= idx)
                    lo = mid;
                else
                    hi = mid - 1;
            }
            verts[static_cast<std::size_t>(k - 1)] = static_cast<std::uint32_t>(lo);
            idx -= binom_(lo, k);
            top = lo;
        }
    }

    double diameter(const std::vector<std::uint32_t>& verts) const {
        double d = 0.0;
        for (std::size_t a = 0; a < verts.size(); ++a)
            for (std::size_t b = a + 1; b < verts.size(); ++b) d = std::max(d, s_(verts[a], verts[b]));
        return d;
    }

    void compute_dim0(PersistenceDiagram& dgm, std::vector<Entry>& columns) {
        std::vector<Entry> edges;
        for (std::size_t j = 1; j < n_; ++j)
            for (std::size_t i = 0; i < j; ++i) {
                double d = s_(i, j);
                if (d <= threshold_) edges.push_back({d, binom_(j, 2) + i});
            }
        std::sort(edges.begin(), edges.end(), [](const Entry& a, const Entry& b) { return Later{}(b, a); });
        std::vector<std::size_t> parent(n_);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        std::vector<std::uint32_t> v;
        for (const auto& e : edges) {
            vertices_of(e.index, 1, v);
            std::size_t a = find(v[0]), b = find(v[1]);
            if (a != b) {
                parent[std::max(a, b)] = std::min(a, b);
                if (e.diam > 0) dgm.points.push_back({0.0, e.diam, 1});
            } else {
                columns.push_back(e);
            }
        }
        for (std::size_t i = 0; i < n_; ++i)
            if (find(i) == i) dgm.points.push_back({0.0, kInf, 1});
        std::reverse(columns.begin(), columns.end());
    }

    // Cofaces of a dim-simplex in decreasing index order, within the threshold.
    template <class Visit>
    void for_each_coface(const Entry& simplex, int dim, Visit&& visit) {
        vertices_of(simplex.index, dim, scratch_);
        index_t below = simplex.index, above = 0;
        long v = static_cast<long>(n_) - 1;
        int k = dim + 1;
        std::size_t pos = scratch_.size();
        while (v >= k) {
            while (pos > 0 && static_cast<long>(scratch_[pos - 1]) == v) {
                below -= binom_(static_cast<std::size_t>(v), k);
                above += binom_(static_cast<std::size_t>(v), k + 1);
                --pos;
                --v;
                --k;
            }
            if (v < k || v < 0) break;
            double d = simplex.diam;
            for (auto u : scratch_) d = std::max(d, s_(static_cast<std::size_t>(v), u));
            index_t coface = above + binom_(static_cast<std::size_t>(v), k + 1) + below;
            --v;
            if (d <= threshold_ && !visit(Entry{d, coface})) return;
        }
    }

    void push_coboundary(const Entry& simplex, int dim, Column& col) {
        for_each_coface(simplex, dim, [&](const Entry& c) {
            col.push(c);
            return true;
        });
    }

    // Returns the pivot; an unreduced column whose earliest coface is a fresh
    // same-diameter pivot is paired immediately without materialising it.
    Entry init_column(const Entry& simplex, int dim, Column& col) {
        bool check_emergent = true;
        Entry emergent{0.0, kNone};
        cofaces_.clear();
        for_each_coface(simplex, dim, [&](const Entry& c) {
            cofaces_.push_back(c);
            if (check_emergent && c.diam == simplex.diam) {
                if (!pivots_.contains(c.index)) {
                    emergent = c;
                    return false;
                }
                check_emergent = false;
            }
            return true;
        });
        if (emergent.index != kNone) return emergent;
        for (const auto& c : cofaces_) col.push(c);
        return get_pivot(col);
    }

    void reduce(int dim, const std::vector<Entry>& columns, PersistenceDiagram& dgm) {
        reduction_.assign(columns.size(), {});
        for (std::size_t ci = 0; ci < columns.size(); ++ci) {
            const Entry& simplex = columns[ci];
            Column coboundary;
            Column record;
            Entry pivot = init_column(simplex, dim, coboundary);
            while (true) {
                if (pivot.index == kNone) {
                    dgm.points.push_back({simplex.diam, kInf, 1});
                    break;
                }
                auto it = pivots_.find(pivot.index);
                if (it == pivots_.end()) {
                    if (pivot.diam > simplex.diam) dgm.points.push_back({simplex.diam, pivot.diam, 1});
                    pivots_.emplace(pivot.index, static_cast<std::uint32_t>(ci));
                    auto& stored = reduction_[ci];
                    for (Entry e = pop_pivot(record); e.index != kNone; e = pop_pivot(record)) stored.push_back(e);
                    break;
                }
                const std::size_t owner = it->second;
                record.push(columns[owner]);
                push_coboundary(columns[owner], dim, coboundary);
                for (const auto& e : reduction_[owner]) {
                    record.push(e);
                    push_coboundary(e, dim, coboundary);
                }
                pivot = get_pivot(coboundary);
            }
        }
    }

    std::vector<Entry> assemble(int dim) {
        std::vector<Entry> cols;
        std::vector<std::uint32_t> c(static_cast<std::size_t>(dim + 1));
        std::iota(c.begin(), c.end(), 0u);
        if (n_ < c.size()) return cols;
        index_t idx = 0;
        while (true) {
            double d = diameter(c);
            if (d <= threshold_ && !pivots_.contains(idx)) cols.push_back({d, idx});
            // colex successor: the index grows by one
            std::size_t i = 0;
            while (i < c.size() && c[i] + 1 == (i + 1 < c.size() ? c[i + 1] : n_)) ++i;
            if (i == c.size()) break;
            ++c[i];
            for (std::size_t j = 0; j < i; ++j) c[j] = static_cast<std::uint32_t>(j);
            ++idx;
        }
        std::sort(cols.begin(), cols.end(), Later{});
        return cols;
    }

    const FiniteMetricSpace& s_;
    std::size_t n_;
    int max_dim_;
    double threshold_;
    Binomial binom_;
    absl::flat_hash_map<index_t, std::uint32_t> pivots_;
    std::vector<std::vector<Entry>> reduction_;
    std::vector<std::uint32_t> scratch_;
    std::vector<Entry> cofaces_;
};

double enclosing_radius(const FiniteMetricSpace& s) {
    double r = kInf;
    for (std::size_t i = 0; i < s.n; ++i) {
        double m = 0.0;
        for (std::size_t j = 0; j < s.n; ++j) m = std::max(m, s(i, j));
        r = std::min(r, m);
    }
    return r;
}

}  // namespace

std::vector<PersistenceDiagram> rips_persistence(const FiniteMetricSpace& space, const RipsOptions& opts) {
    if (opts.max_dim < 0) throw Error(ErrorKind::validation, "max_dim must be non-negative");
    if (space.dist.size() != space.n * space.n) throw Error(ErrorKind::validation, "distance matrix size mismatch");
    const double count = rips_simplex_count(space.n, opts.max_dim);
    if (count > opts.max_simplices) throw BudgetExceeded(count, opts.max_simplices);
    if (space.n == 0) {
        std::vector<PersistenceDiagram> out;
        for (int d = 0; d <= opts.max_dim; ++d) out.push_back({d, {}});
        return out;
    }
    const double thr = opts.threshold < 0 ? enclosing_radius(space) : opts.threshold;
    return CohomologyReducer(space, opts.max_dim, thr).run();
}

FilteredComplex rips_complex(const FiniteMetricSpace& space, int max_simplex_dim) {
    FilteredComplex fc;
    std::vector<std::uint32_t> current;
    auto extend = [&](auto&& self, std::uint32_t start, double value) -> void {
        for (std::uint32_t v = start; v < space.n; ++v) {
            double d = value;
            for (auto u : current) d = std::max(d, space(u, v));
            current.push_back(v);
            fc.simplices.push_back({current, d});
            if (static_cast<int>(current.size()) <= max_simplex_dim) self(self, v + 1, d);
            current.pop_back();
        }
    };
    extend(extend, 0, 0.0);
    std::sort(fc.simplices.begin(), fc.simplices.end(), [](const Simplex& a, const Simplex& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
        return a.vertices < b.vertices;
    });
    return fc;
}

std::vector<PersistenceDiagram> boundary_reduction_persistence(const FilteredComplex& complex, int max_dim) {
    const std::size_t m = complex.simplices.size();
    std::map<std::vector<std::uint32_t>, std::size_t> position;
    for (std::size_t i = 0; i < m; ++i) position[complex.simplices[i].vertices] = i;

    // Columns hold face positions in descending order so front() is the low entry.
    std::vector<std::vector<std::size_t>> cols(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& verts = complex.simplices[i].vertices;
        if (verts.size() < 2) continue;
        for (std::size_t drop = 0; drop < verts.size(); ++drop) {
            std::vector<std::uint32_t> face;
            for (std::size_t j = 0; j < verts.size(); ++j)
                if (j != drop) face.push_back(verts[j]);
            cols[i].push_back(position.at(face));
        }
        std::sort(cols[i].rbegin(), cols[i].rend());
    }

    constexpr std::size_t none = ~std::size_t{0};
    std::vector<std::size_t> owner_of_low(m, none);
    std::vector<bool> paired(m, false);
    std::vector<PersistenceDiagram> out;
    for (int d = 0; d <= max_dim; ++d) out.push_back({d, {}});
    for (std::size_t j = 0; j < m; ++j) {
        auto& col = cols[j];
        while (!col.empty() && owner_of_low[col.front()] != none) {
            const auto& other = cols[owner_of_low[col.front()]];
            std::vector<std::size_t> sum;
            std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                          std::back_inserter(sum), std::greater<>());
            col = std::move(sum);
        }
        if (!col.empty()) {
            std::size_t low = col.front();
            owner_of_low[low] = j;
            paired[low] = paired[j] = true;
            int dim = static_cast<int>(complex.simplices[low].vertices.size()) - 1;
            double birth = complex.simplices[low].value, death = complex.simplices[j].value;
            if (dim <= max_dim && death > birth) out[static_cast<std::size_t>(dim)].points.push_back({birth, death, 1});
        }
    }
    for (std::size_t j = 0; j < m; ++j) {
        int dim = static_cast<int>(complex.simplices[j].vertices.size()) - 1;
        if (!paired[j] && cols[j].empty() && dim <= max_dim)
            out[static_cast<std::size_t>(dim)].points.push_back({complex.simplices[j].value, kInf, 1});
    }
    for (auto& d : out) d.canonicalize();
    return out;
}

}  // namespace qpd

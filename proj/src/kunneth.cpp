#include "qpd/kunneth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "qpd/circle_pd.hpp"
#include "qpd/error.hpp"
#include "qpd/rips.hpp"

namespace qpd {

Interval chordal_scale(Interval flat, double radius) {
    auto map = [&](double x) {
        if (x == kInf) return kInf;
        if (!(x >= 0.0 && x <= 0.5)) throw Error(ErrorKind::domain, "flat endpoint outside [0, 1/2]");
        return 2.0 * radius * std::sin(std::numbers::pi * x);
    };
    if (!(radius > 0)) throw Error(ErrorKind::domain, "radius must be positive");
    return {map(flat.birth), map(flat.death)};
}

std::optional<Interval> intersect(Interval x, Interval y) {
    Interval r{std::max(x.birth, y.birth), std::min(x.death, y.death)};
    if (r.birth < r.death) return r;
    return std::nullopt;
}

ScaledBarcode scale_diagram(const PersistenceDiagram& flat, double radius) {
    ScaledBarcode b{flat.dim, {}, radius};
    for (const auto& p : flat.points) b.bars.push_back({chordal_scale({p.birth, p.death}, radius), p.mult});
    return b;
}

namespace {

void compose(const std::vector<FactorBarcodes>& factors, std::size_t f, int remaining, Interval acc,
             std::int64_t mult, std::vector<Bar>& out) {
    if (f == factors.size()) {
        if (remaining == 0) out.push_back({acc, mult});
        return;
    }
    for (const auto& [dim, barcode] : factors[f]) {
        if (dim > remaining) break;
        if (f + 1 == factors.size() && dim != remaining) continue;
        for (const auto& bar : barcode.bars) {
            auto cut = intersect(acc, bar.interval);
            if (cut) compose(factors, f + 1, remaining - dim, *cut, mult * bar.mult, out);
        }
    }
}

}  // namespace

std::vector<Bar> product_barcode(const std::vector<FactorBarcodes>& factors, int ell) {
    std::vector<Bar> out;
    if (factors.empty() || ell < 0) return out;
    compose(factors, 0, ell, Interval{0.0, kInf}, 1, out);
    std::sort(out.begin(), out.end(), [](const Bar& a, const Bar& b) {
        return std::tie(a.interval.birth, a.interval.death) < std::tie(b.interval.birth, b.interval.death);
    });
    return out;
}

PersistenceDiagram bars_to_diagram(const std::vector<Bar>& bars, int dim, double min_persistence) {
    PersistenceDiagram d{dim, {}};
    for (const auto& b : bars)
        if (b.interval.death - b.interval.birth >= min_persistence)
            d.points.push_back({b.interval.birth, b.interval.death, b.mult});
    d.canonicalize();
    return d;
}

FactorBarcodes circle_factor_barcodes(const GridFactor& f, std::int64_t T, int max_dim, const GridOptions& opts) {
    FactorBarcodes out;
    out[0] = scale_diagram(dgm0_exact(f.omega, T), f.radius);
    if (max_dim >= 1) out[1] = scale_diagram(dgm1_exact(f.omega, T), f.radius);
    if (opts.higher_circle_dims && max_dim >= 2) {
        RipsOptions ro;
        ro.max_dim = max_dim;
        ro.max_simplices = opts.oracle_budget;
        auto dgms = rips_persistence(metric_from_circle(point_set(f.omega, T)), ro);
        for (int d = 2; d <= max_dim; ++d)
            if (!dgms[static_cast<std::size_t>(d)].points.empty())
                out[d] = scale_diagram(dgms[static_cast<std::size_t>(d)], f.radius);
    }
    return out;
}

std::vector<PersistenceDiagram> grid_diagrams(const GridSpec& spec, int max_dim, const GridOptions& opts) {
    if (spec.factors.empty()) throw Error(ErrorKind::validation, "grid needs at least one factor");
    if (spec.T < 1) throw Error(ErrorKind::validation, "grid T must be at least 1");
    if (max_dim < 0 || max_dim > static_cast<int>(spec.factors.size()))
        throw Error(ErrorKind::validation, "max_dim must lie in [0, number of factors]");
    std::vector<FactorBarcodes> factors;
    for (const auto& f : spec.factors) factors.push_back(circle_factor_barcodes(f, spec.T, max_dim, opts));
    std::vector<PersistenceDiagram> out;
    for (int ell = 0; ell <= max_dim; ++ell) out.push_back(bars_to_diagram(product_barcode(factors, ell), ell));
    return out;
}

}  // namespace qpd

#include "qpd/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include "qpd/circle_pd.hpp"
#include "qpd/error.hpp"
#include "qpd/rips.hpp"
#include "qpd/spectrum.hpp"

namespace qpd {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void validate(const AnalysisConfig& c) {
    if (c.input_path.has_value() == c.synth.has_value())
        throw Error(ErrorKind::validation, "give exactly one of an input CSV or a synthetic signal");
    if (c.exact_frequencies && !c.synth) throw Error(ErrorKind::validation, "exact frequencies need a synthetic signal");
    if (!(c.sample_step > 0)) throw Error(ErrorKind::validation, "sample step must be positive");
    if (c.n_peaks < 1) throw Error(ErrorKind::validation, "n_peaks must be at least 1");
    if (c.T_prime < 1 || c.T < c.T_prime) throw Error(ErrorKind::validation, "need 1 <= T' <= T");
    if (c.dims < 0 || static_cast<std::size_t>(c.dims) > c.n_peaks)
        throw Error(ErrorKind::validation, "dims must lie in [0, n_peaks]");
    if (c.oracle && (c.oracle_T < 1 || c.oracle_T_prime < 1))
        throw Error(ErrorKind::validation, "oracle T and T' must be positive");
}

std::vector<DiagramPoint> by_persistence(const PersistenceDiagram& d) {
    auto pts = d.expanded();
    std::stable_sort(pts.begin(), pts.end(),
                     [](const DiagramPoint& a, const DiagramPoint& b) { return a.persistence() > b.persistence(); });
    return pts;
}

ExponentialSum recover_signal(const AnalysisConfig& cfg, std::size_t& n_samples) {
    if (cfg.exact_frequencies) {
        n_samples = 0;
        return *cfg.synth;
    }
    std::vector<cplx> samples;
    if (cfg.input_path) {
        samples = read_samples_csv(*cfg.input_path);
    } else {
        samples.resize(cfg.n_samples);
        for (std::size_t k = 0; k < cfg.n_samples; ++k) samples[k] = (*cfg.synth)(static_cast<double>(k) * cfg.sample_step);
    }
    n_samples = samples.size();
    const Spectrum spec = dft(samples, cfg.sample_step);
    PeakOptions po;
    po.positive_only = cfg.real_signal;
    po.refine = true;
    auto terms = estimate_frequencies(spec, cfg.n_peaks, po);
    std::vector<double> basis;
    for (const auto& t : terms) basis.push_back(t.freq);
    ExponentialSum f = truncate_series(terms, basis, 1);
    f.symmetric = cfg.real_signal;
    return f;
}

GridSpec grid_for(const ExponentialSum& f, int d, std::int64_t T) {
    GridSpec g;
    g.T = T;
    const double scale = std::sqrt(static_cast<double>(d + 1));
    for (const auto& t : f.terms) g.factors.push_back({scale * std::abs(t.coeff), reduce_mod1(t.freq)});
    return g;
}

TorusSample trajectory_sample(const ExponentialSum& f, int d, std::int64_t T) {
    TorusSample s{flat_coordinates(f, T), {}};
    const double scale = std::sqrt(static_cast<double>(d + 1));
    for (const auto& t : f.terms) s.radii.push_back(scale * std::abs(t.coeff));
    return s;
}

}  // namespace

std::vector<std::vector<ErrorRectangle>> grid_rectangles(const std::vector<PersistenceDiagram>& grid, double lambda_gh,
                                                         double cond_k) {
    std::vector<std::vector<ErrorRectangle>> out(grid.size());
    for (std::size_t d = 1; d < grid.size(); ++d) out[d] = error_rectangles(grid[d], lambda_gh, cond_k);
    return out;
}

std::vector<OracleResult::Containment> rank_containment(const std::vector<PersistenceDiagram>& grid,
                                                       const std::vector<PersistenceDiagram>& oracle,
                                                       double lambda_gh, double cond_k) {
    std::vector<OracleResult::Containment> out;
    for (std::size_t d = 1; d < grid.size() && d < oracle.size(); ++d) {
        auto g = by_persistence(grid[d]);
        auto o = by_persistence(oracle[d]);
        for (std::size_t i = 0; i < g.size() && g[i].persistence() > 4 * lambda_gh; ++i) {
            OracleResult::Containment c{static_cast<int>(d), error_rectangle(g[i], lambda_gh, cond_k), std::nullopt, false};
            if (i < o.size()) {
                c.oracle_point = o[i];
                c.inside = contains(c.rectangle, o[i].birth, o[i].death);
            }
            out.push_back(c);
        }
    }
    return out;
}

AnalysisResult run_analysis(const AnalysisConfig& cfg) {
    validate(cfg);
    AnalysisResult r;
    r.config = cfg;
    const auto t0 = Clock::now();

    r.signal = recover_signal(cfg, r.n_samples);
    r.signal.validate();
    const std::size_t columns = r.signal.expanded().size();
    r.d = cfg.d.value_or(std::max<int>(1, static_cast<int>(columns) - 1));
    r.tau = cfg.tau.value_or(default_tau(r.signal));
    SWParams p;
    p.d = r.d;
    p.tau = r.tau;
    p.T = cfg.T;
    r.sw = sw_matrix(r.signal, p);

    const GridSpec grid = grid_for(r.signal, r.d, cfg.T_prime);
    for (const auto& f : grid.factors) {
        CircleResult c;
        c.omega = f.omega;
        c.radius = f.radius;
        c.gaps = three_gap(f.omega, cfg.T_prime);
        c.dgm0 = dgm0_exact(c.gaps);
        c.dgm1 = dgm1_exact(f.omega, cfg.T_prime);
        r.circles.push_back(std::move(c));
    }
    GridOptions go;
    go.higher_circle_dims = cfg.higher_circle_dims;
    go.oracle_budget = cfg.budget;
    r.grid = grid_diagrams(grid, cfg.dims, go);
    r.lambda_gh = hausdorff_bound(trajectory_sample(r.signal, r.d, cfg.T), grid);
    r.rectangles = grid_rectangles(r.grid, r.lambda_gh, r.sw.cond_k);
    r.seconds_3g = seconds_since(t0);

    if (cfg.oracle) {
        const auto t1 = Clock::now();
        OracleResult o;
        o.T = cfg.oracle_T;
        o.T_prime = std::min(cfg.oracle_T_prime, cfg.oracle_T);
        SWParams op = p;
        op.T = o.T;
        RipsOptions ro;
        ro.max_dim = cfg.dims;
        ro.max_simplices = cfg.budget;
        o.diagrams = rips_persistence(metric_from_cloud(embed(r.signal, op), CloudMetric::euclidean), ro);
        const GridSpec og = grid_for(r.signal, r.d, o.T_prime);
        o.grid = grid_diagrams(og, cfg.dims, go);
        o.lambda_gh = hausdorff_bound(trajectory_sample(r.signal, r.d, o.T), og);
        o.rectangles = grid_rectangles(o.grid, o.lambda_gh, r.sw.cond_k);
        for (int dim = 0; dim <= cfg.dims; ++dim)
            o.bottleneck.push_back(bottleneck(o.grid[static_cast<std::size_t>(dim)], o.diagrams[static_cast<std::size_t>(dim)]));
        o.containment = rank_containment(o.grid, o.diagrams, o.lambda_gh, r.sw.cond_k);
        o.seconds = seconds_since(t1);
        r.oracle = std::move(o);
    }
    return r;
}

namespace {

json diagrams_json(const std::vector<PersistenceDiagram>& ds) {
    json a = json::array();
    for (const auto& d : ds) a.push_back(to_json(d));
    return a;
}

json rectangles_json(const std::vector<std::vector<ErrorRectangle>>& rs) {
    json a = json::array();
    for (std::size_t d = 0; d < rs.size(); ++d)
        for (const auto& r : rs[d]) a.push_back(to_json(r, static_cast<int>(d)));
    return a;
}

json point_json(const DiagramPoint& p) { return {{"birth", number(p.birth)}, {"death", number(p.death)}}; }

}  // namespace

json to_json(const AnalysisResult& r) {
    const auto& c = r.config;
    json config = {{"source", c.source_label},
                   {"sample_step", number(c.sample_step)},
                   {"n_peaks", c.n_peaks},
                   {"real_signal", c.real_signal},
                   {"exact_frequencies", c.exact_frequencies},
                   {"T", c.T},
                   {"T_prime", c.T_prime},
                   {"dims", c.dims},
                   {"higher_circle_dims", c.higher_circle_dims}};
    json freqs = json::array();
    for (const auto& t : r.signal.terms)
        freqs.push_back({{"freq", number(t.freq)},
                         {"re", number(t.coeff.real())},
                         {"im", number(t.coeff.imag())},
                         {"magnitude", number(std::abs(t.coeff))}});
    json circles = json::array();
    for (const auto& ci : r.circles)
        circles.push_back({{"omega", number(ci.omega)},
                           {"radius", number(ci.radius)},
                           {"gap_structure", to_json(ci.gaps)},
                           {"dgm0", to_json(ci.dgm0)},
                           {"dgm1", to_json(ci.dgm1)}});
    json out = {{"config", config},
                {"n_samples", r.n_samples},
                {"frequencies", freqs},
                {"symmetric", r.signal.symmetric},
                {"embedding",
                 {{"d", r.d},
                  {"tau", number(r.tau)},
                  {"sigma_min", number(r.sw.sigma_min)},
                  {"sigma_max", number(r.sw.sigma_max)},
                  {"cond_k", number(r.sw.cond_k)},
                  {"warnings", r.sw.warnings}}},
                {"circles", circles},
                {"grid", diagrams_json(r.grid)},
                {"lambda_gh", number(r.lambda_gh)},
                {"lambda_gh_kind", "hausdorff distance: upper bound on the Gromov-Hausdorff distance, so rectangles are conservative"},
                {"rectangles", rectangles_json(r.rectangles)}};
    if (r.oracle) {
        const auto& o = *r.oracle;
        json bn = json::array();
        for (double b : o.bottleneck) bn.push_back(number(b));
        json cont = json::array();
        for (const auto& h : o.containment)
            cont.push_back({{"dim", h.dim},
                            {"rectangle", to_json(h.rectangle, h.dim)},
                            {"oracle_point", h.oracle_point ? point_json(*h.oracle_point) : json(nullptr)},
                            {"inside", h.inside}});
        out["oracle"] = {{"T", o.T},
                         {"T_prime", o.T_prime},
                         {"lambda_gh", number(o.lambda_gh)},
                         {"diagrams", diagrams_json(o.diagrams)},
                         {"grid", diagrams_json(o.grid)},
                         {"bottleneck", bn},
                         {"rectangles", rectangles_json(o.rectangles)},
                         {"containment", cont}};
        if (c.timings) out["oracle"]["seconds"] = number(o.seconds);
    }
    if (c.timings) out["seconds_3g"] = number(r.seconds_3g);
    return out;
}

std::vector<std::string> preset_names() { return {"two-tone", "two-tone-real"}; }

ExponentialSum preset_signal(const std::string& name) {
    const double w1 = std::sqrt(3.0) / (2.0 * std::numbers::pi), w2 = std::sqrt(5.0) / (2.0 * std::numbers::pi);
    ExponentialSum f;
    if (name == "two-tone") {
        const double c = 1.0 / std::sqrt(2.0);
        f.terms = {{c, w1}, {c, w2}};
    } else if (name == "two-tone-real") {
        f.terms = {{0.5, w1}, {0.5, w2}};
        f.symmetric = true;
    } else {
        throw Error(ErrorKind::validation, "unknown preset '" + name + "'");
    }
    return f;
}

}  // namespace qpd

#include "qpd/cli.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"

#include "qpd/circle_pd.hpp"
#include "qpd/error.hpp"
#include "qpd/io.hpp"
#include "qpd/pipeline.hpp"
#include "qpd/rips.hpp"

namespace qpd::cli {

namespace {

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-")
        out << text;
    else
        write_text_file(path, text);
}

json threegap_report(double omega, std::int64_t T) {
    const GapStructure g = three_gap(omega, T);
    return {{"omega", number(g.omega)},
            {"gap_structure", to_json(g)},
            {"dgm0", to_json(dgm0_exact(g))},
            {"dgm1", to_json(dgm1_exact(g.omega, T))}};
}

std::string analysis_csv(const AnalysisResult& r) {
    std::ostringstream s;
    auto cell = [](double v) { return number(v).is_string() ? std::string("inf") : number(v).dump(); };
    s << "kind,dim,birth,death,mult,x0,x1,y0,y1,admissible\n";
    for (const auto& d : r.grid)
        for (const auto& p : d.points)
            s << "point," << d.dim << ',' << cell(p.birth) << ',' << cell(p.death) << ',' << p.mult << ",,,,,\n";
    for (std::size_t dim = 0; dim < r.rectangles.size(); ++dim)
        for (const auto& q : r.rectangles[dim])
            s << "rectangle," << dim << ',' << cell(q.source.birth) << ',' << cell(q.source.death) << ','
              << q.source.mult << ',' << cell(q.x0) << ',' << cell(q.x1) << ',' << cell(q.y0) << ',' << cell(q.y1)
              << ',' << (q.admissible ? 1 : 0) << '\n';
    return s.str();
}

std::vector<ErrorRectangle> flatten(const std::vector<std::vector<ErrorRectangle>>& rs) {
    std::vector<ErrorRectangle> out;
    for (const auto& v : rs) out.insert(out.end(), v.begin(), v.end());
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quasiperiodic persistence: three-gap diagrams, Kunneth grids and Rips comparisons"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");
    std::string output;

    // threegap
    double tg_omega = 0;
    std::int64_t tg_T = 0;
    bool tg_radians = false;
    auto* tg = app.add_subcommand("threegap", "Gap structure and circle diagrams of {t*omega mod 1 : t=0..T}");
    tg->add_option("--omega", tg_omega, "Rotation number (cycles; see --radians)")->required();
    tg->add_option("--T", tg_T, "Last time index")->required()->check(CLI::PositiveNumber);
    tg->add_flag("--radians", tg_radians, "Divide omega by 2*pi first");
    tg->add_option("-o,--output", output, "Output file (default stdout)");

    // analyze
    AnalysisConfig cfg;
    std::string an_input, an_synth, an_preset, an_format = "json", an_plot;
    int an_d = 0;
    double an_tau = 0;
    std::size_t an_peaks = 2;
    auto* an = app.add_subcommand("analyze", "Full pipeline: spectrum, circles, grid diagrams, bounds");
    auto* in_opt = an->add_option("--input", an_input, "CSV samples (re,im or one real column)");
    auto* synth_opt = an->add_option("--synth", an_synth, "Signal spec JSON file");
    auto* preset_opt = an->add_option("--preset", an_preset, "Built-in signal")->check(CLI::IsMember(preset_names()));
    in_opt->excludes(synth_opt)->excludes(preset_opt);
    synth_opt->excludes(preset_opt);
    an->add_option("--step", cfg.sample_step, "Sample spacing")->capture_default_str();
    an->add_option("--samples", cfg.n_samples, "Samples drawn from a synthetic signal")->capture_default_str();
    an->add_option("--peaks", an_peaks, "Number of spectral peaks (independent frequencies)")->capture_default_str();
    an->add_flag("--real", cfg.real_signal, "Real-valued signal: use positive-frequency peaks, symmetric terms");
    an->add_flag("--exact", cfg.exact_frequencies, "Use the synthetic terms directly, skipping estimation");
    auto* d_opt = an->add_option("--d", an_d, "Embedding dimension")->check(CLI::PositiveNumber);
    auto* tau_opt = an->add_option("--tau", an_tau, "Time delay")->check(CLI::PositiveNumber);
    an->add_option("--T", cfg.T, "Trajectory length")->capture_default_str();
    an->add_option("--Tprime", cfg.T_prime, "Grid resolution")->capture_default_str();
    an->add_option("--dims", cfg.dims, "Highest homology dimension")->capture_default_str();
    an->add_flag("--higher-circle-dims", cfg.higher_circle_dims, "Include circle homology above dimension 1");
    an->add_option("--format", an_format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    an->add_option("--plot", an_plot, "Write an SVG of grid diagrams and admissible rectangles");
    an->add_flag("--oracle", cfg.oracle, "Also run the exact Rips oracle at reduced scale");
    an->add_option("--oracle-T", cfg.oracle_T, "Oracle trajectory length")->capture_default_str();
    an->add_option("--oracle-Tprime", cfg.oracle_T_prime, "Oracle comparison grid resolution")->capture_default_str();
    an->add_option("--budget", cfg.budget, "Simplex budget for exact computations")->capture_default_str();
    an->add_flag("--timings", cfg.timings, "Report wall-clock timings (output no longer byte-stable)");
    an->add_option("-o,--output", output, "Output file (default stdout)");

    // synth
    std::string sy_spec, sy_preset;
    double sy_step = 0.1;
    std::size_t sy_samples = 1 << 14;
    auto* sy = app.add_subcommand("synth", "Sample a signal to CSV");
    auto* sy_spec_opt = sy->add_option("--spec", sy_spec, "Signal spec JSON file");
    auto* sy_preset_opt = sy->add_option("--preset", sy_preset, "Built-in signal")->check(CLI::IsMember(preset_names()));
    sy_spec_opt->excludes(sy_preset_opt);
    sy->add_option("--step", sy_step, "Sample spacing")->capture_default_str();
    sy->add_option("--samples", sy_samples, "Number of samples")->capture_default_str();
    sy->add_option("-o,--output", output, "Output file (default stdout)");

    // rips
    std::string rp_points, rp_metric = "euclidean";
    double rp_omega = 0;
    std::int64_t rp_T = 0;
    bool rp_radians = false;
    RipsOptions ro;
    auto* rp = app.add_subcommand("rips", "Exact Rips persistence of a point cloud or circle sample");
    auto* pts_opt = rp->add_option("--points", rp_points, "CSV of real coordinates, one point per line");
    auto* om_opt = rp->add_option("--omega", rp_omega, "Circle sample rotation number");
    pts_opt->excludes(om_opt);
    rp->add_option("--T", rp_T, "Circle sample last time index")->needs(om_opt);
    rp->add_flag("--radians", rp_radians, "Divide omega by 2*pi first");
    rp->add_option("--metric", rp_metric, "Point-cloud metric")->check(CLI::IsMember({"euclidean", "max"}));
    rp->add_option("--max-dim", ro.max_dim, "Highest homology dimension")->capture_default_str();
    rp->add_option("--budget", ro.max_simplices, "Simplex budget")->capture_default_str();
    rp->add_option("-o,--output", output, "Output file (default stdout)");

    // bottleneck
    std::string bn_a, bn_b;
    auto* bn = app.add_subcommand("bottleneck", "Bottleneck distance between diagram files");
    bn->add_option("a", bn_a, "First diagram JSON")->required();
    bn->add_option("b", bn_b, "Second diagram JSON")->required();

    // plot
    std::string pl_dgm, pl_rects;
    auto* pl = app.add_subcommand("plot", "Render diagrams and admissible rectangles as SVG");
    pl->add_option("diagram", pl_dgm, "Diagram JSON")->required();
    pl->add_option("--rects", pl_rects, "Rectangle JSON");
    pl->add_option("-o,--output", output, "SVG file")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    }

    try {
        if (tg->parsed()) {
            const double w = tg_radians ? tg_omega / (2.0 * std::numbers::pi) : tg_omega;
            emit(dump(threegap_report(w, tg_T)), output, out);
        } else if (an->parsed()) {
            if (!an_input.empty()) {
                cfg.input_path = an_input;
                cfg.source_label = "csv";
            } else if (!an_synth.empty()) {
                cfg.synth = exponential_sum_from_json(read_json_file(an_synth));
                cfg.source_label = "synth";
            } else if (!an_preset.empty()) {
                cfg.synth = preset_signal(an_preset);
                cfg.source_label = "preset:" + an_preset;
            } else {
                throw Error(ErrorKind::validation, "analyze needs --input, --synth or --preset");
            }
            cfg.n_peaks = an_peaks;
            if (*d_opt) cfg.d = an_d;
            if (*tau_opt) cfg.tau = an_tau;
            const AnalysisResult r = run_analysis(cfg);
            if (!an_plot.empty()) write_text_file(an_plot, svg_plot(r.grid, flatten(r.rectangles)));
            emit(an_format == "csv" ? analysis_csv(r) : dump(to_json(r)), output, out);
        } else if (sy->parsed()) {
            ExponentialSum f;
            if (!sy_spec.empty())
                f = exponential_sum_from_json(read_json_file(sy_spec));
            else if (!sy_preset.empty())
                f = preset_signal(sy_preset);
            else
                throw Error(ErrorKind::validation, "synth needs --spec or --preset");
            if (!(sy_step > 0)) throw Error(ErrorKind::validation, "step must be positive");
            std::vector<cplx> samples(sy_samples);
            for (std::size_t k = 0; k < sy_samples; ++k) samples[k] = f(static_cast<double>(k) * sy_step);
            emit(samples_to_csv(samples), output, out);
        } else if (rp->parsed()) {
            FiniteMetricSpace space;
            if (!rp_points.empty()) {
                const auto rows = read_points_csv(rp_points);
                Eigen::MatrixXcd cloud(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
                for (std::size_t i = 0; i < rows.size(); ++i)
                    for (std::size_t j = 0; j < rows[i].size(); ++j)
                        cloud(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
                space = metric_from_cloud(cloud, rp_metric == "max" ? CloudMetric::max_factor_chordal : CloudMetric::euclidean);
            } else if (*om_opt) {
                if (rp_T < 1) throw Error(ErrorKind::validation, "--T must be at least 1");
                const double w = rp_radians ? rp_omega / (2.0 * std::numbers::pi) : rp_omega;
                space = metric_from_circle(point_set(w, rp_T));
            } else {
                throw Error(ErrorKind::validation, "rips needs --points or --omega/--T");
            }
            json ds = json::array();
            for (const auto& d : rips_persistence(space, ro)) ds.push_back(to_json(d));
            emit(dump({{"diagrams", ds}}), output, out);
        } else if (bn->parsed()) {
            const auto a = diagrams_from_json(read_json_file(bn_a));
            const auto b = diagrams_from_json(read_json_file(bn_b));
            if (a.size() == 1 && b.size() == 1) {
                if (a[0].dim != b[0].dim) throw Error(ErrorKind::validation, "diagrams have different dimensions");
                out << number(bottleneck(a[0], b[0])).dump() << "\n";
            } else {
                std::map<int, const PersistenceDiagram*> by_dim;
                for (const auto& d : b) by_dim[d.dim] = &d;
                json res = json::array();
                for (const auto& d : a) {
                    auto it = by_dim.find(d.dim);
                    const PersistenceDiagram empty{d.dim, {}};
                    res.push_back({{"dim", d.dim}, {"bottleneck", number(bottleneck(d, it == by_dim.end() ? empty : *it->second))}});
                }
                out << dump(res);
            }
        } else if (pl->parsed()) {
            const auto ds = diagrams_from_json(read_json_file(pl_dgm));
            std::vector<ErrorRectangle> rects;
            if (!pl_rects.empty()) rects = rectangles_from_json(read_json_file(pl_rects));
            write_text_file(output, svg_plot(ds, rects));
        }
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        switch (e.kind()) {
        case ErrorKind::ingestion: return kIngestion;
        case ErrorKind::budget: return kBudget;
        default: return kValidation;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kOk;
}

}  // namespace qpd::cli

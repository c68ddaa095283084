#include "qpd/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qpd/error.hpp"

namespace qpd {

json number(double v) {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    if (std::isnan(v)) return nullptr;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;
}

double parse_number(const json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf" || s == "+inf") return kInf;
        if (s == "-inf") return -kInf;
    }
    throw Error(ErrorKind::ingestion, "expected a number or \"inf\", got " + v.dump());
}

json to_json(const PersistenceDiagram& d) {
    json pts = json::array();
    for (const auto& p : d.points)
        pts.push_back({{"birth", number(p.birth)}, {"death", number(p.death)}, {"mult", p.mult}});
    return {{"dim", d.dim}, {"points", pts}};
}

PersistenceDiagram diagram_from_json(const json& j) {
    try {
        PersistenceDiagram d;
        d.dim = j.at("dim").get<int>();
        for (const auto& p : j.at("points")) {
            DiagramPoint q;
            q.birth = parse_number(p.at("birth"));
            q.death = parse_number(p.at("death"));
            q.mult = p.contains("mult") ? p.at("mult").get<std::int64_t>() : 1;
            if (q.mult < 1 || !(q.birth < q.death))
                throw Error(ErrorKind::ingestion, "diagram point needs birth < death and mult >= 1");
            d.points.push_back(q);
        }
        return d;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ingestion, std::string("malformed diagram JSON: ") + e.what());
    }
}

std::vector<PersistenceDiagram> diagrams_from_json(const json& j) {
    std::vector<PersistenceDiagram> out;
    if (j.is_array()) {
        for (const auto& d : j) out.push_back(diagram_from_json(d));
    } else if (j.is_object() && j.contains("diagrams")) {
        return diagrams_from_json(j.at("diagrams"));
    } else if (j.is_object() && j.contains("grid")) {
        return diagrams_from_json(j.at("grid"));
    } else {
        out.push_back(diagram_from_json(j));
    }
    return out;
}

json to_json(const GapStructure& g) {
    json gaps = json::array();
    for (const auto& [len, count] : g.gaps()) gaps.push_back({{"length", number(len)}, {"count", count}});
    return {{"omega", number(g.omega)}, {"T", g.T},           {"k", g.k},
            {"r", g.r},                 {"s", g.s},           {"q_k", g.q_k},
            {"a_next", g.a_next},       {"delta_a", number(g.delta_a)}, {"delta_b", number(g.delta_b)},
            {"delta_c", number(g.delta_c)}, {"n_a", g.n_a},   {"n_b", g.n_b},
            {"n_c", g.n_c},             {"gaps", gaps}};
}

json to_json(const ErrorRectangle& r, int dim) {
    return {{"dim", dim},
            {"birth", number(r.source.birth)},
            {"death", number(r.source.death)},
            {"mult", r.source.mult},
            {"x0", number(r.x0)},
            {"x1", number(r.x1)},
            {"y0", number(r.y0)},
            {"y1", number(r.y1)},
            {"ratio", number(r.ratio)},
            {"admissible", r.admissible},
            {"lambda_gh", number(r.lambda_gh)},
            {"cond_k", number(r.cond_k)}};
}

ErrorRectangle rectangle_from_json(const json& j) {
    try {
        ErrorRectangle r;
        r.x0 = parse_number(j.at("x0"));
        r.x1 = parse_number(j.at("x1"));
        r.y0 = parse_number(j.at("y0"));
        r.y1 = parse_number(j.at("y1"));
        r.admissible = j.value("admissible", false);
        if (j.contains("birth")) r.source.birth = parse_number(j.at("birth"));
        if (j.contains("death")) r.source.death = parse_number(j.at("death"));
        if (j.contains("ratio")) r.ratio = parse_number(j.at("ratio"));
        if (j.contains("lambda_gh")) r.lambda_gh = parse_number(j.at("lambda_gh"));
        if (j.contains("cond_k")) r.cond_k = parse_number(j.at("cond_k"));
        return r;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ingestion, std::string("malformed rectangle JSON: ") + e.what());
    }
}

std::vector<ErrorRectangle> rectangles_from_json(const json& j) {
    const json& arr = j.is_object() && j.contains("rectangles") ? j.at("rectangles") : j;
    if (!arr.is_array()) throw Error(ErrorKind::ingestion, "expected an array of rectangles");
    std::vector<ErrorRectangle> out;
    for (const auto& r : arr) out.push_back(rectangle_from_json(r));
    return out;
}

json to_json(const ExponentialSum& f) {
    json terms = json::array();
    for (const auto& t : f.terms)
        terms.push_back({{"re", number(t.coeff.real())}, {"im", number(t.coeff.imag())}, {"freq", number(t.freq)}});
    return {{"terms", terms}, {"symmetric", f.symmetric}};
}

ExponentialSum exponential_sum_from_json(const json& j) {
    try {
        ExponentialSum f;
        f.symmetric = j.value("symmetric", false);
        const std::string unit = j.value("frequency_unit", std::string("cycles"));
        if (unit != "cycles" && unit != "radians")
            throw Error(ErrorKind::ingestion, "frequency_unit must be \"cycles\" or \"radians\"");
        const double scale = unit == "radians" ? 1.0 / (2.0 * 3.14159265358979323846) : 1.0;
        for (const auto& t : j.at("terms")) {
            double re = t.value("re", 0.0), im = t.value("im", 0.0);
            f.terms.push_back({{re, im}, t.at("freq").get<double>() * scale});
        }
        f.validate();
        return f;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ingestion, std::string("malformed signal spec: ") + e.what());
    } catch (const Error& e) {
        throw Error(ErrorKind::ingestion, e.what());
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ingestion, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ingestion, path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::ingestion, "cannot write " + path);
    out << text;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    std::istringstream is(line);
    while (std::getline(is, cur, ',')) {
        auto b = cur.find_first_not_of(" \t\r");
        auto e = cur.find_last_not_of(" \t\r");
        fields.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
    }
    return fields;
}

bool parse_double(const std::string& s, double& v) {
    if (s.empty()) return false;
    char* end = nullptr;
    v = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && std::isfinite(v);
}

template <class Row>
void for_each_row(const std::string& path, Row&& row) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ingestion, "cannot open " + path);
    std::string line;
    std::size_t lineno = 0;
    bool seen_data = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto fields = split_fields(line);
        std::vector<double> vals;
        bool ok = true;
        for (const auto& f : fields) {
            double v;
            if (!parse_double(f, v)) {
                ok = false;
                break;
            }
            vals.push_back(v);
        }
        if (!ok) {
            if (!seen_data) {
                seen_data = true; // header
                continue;
            }
            throw Error(ErrorKind::ingestion, path + ":" + std::to_string(lineno) + ": non-numeric field");
        }
        seen_data = true;
        row(vals, lineno);
    }
}

}  // namespace

std::vector<cplx> read_samples_csv(const std::string& path) {
    std::vector<cplx> out;
    for_each_row(path, [&](const std::vector<double>& v, std::size_t lineno) {
        if (v.size() == 1)
            out.emplace_back(v[0], 0.0);
        else if (v.size() == 2)
            out.emplace_back(v[0], v[1]);
        else
            throw Error(ErrorKind::ingestion, path + ":" + std::to_string(lineno) + ": expected 1 or 2 columns");
    });
    if (out.size() < 2) throw Error(ErrorKind::ingestion, path + ": need at least two samples");
    return out;
}

std::string samples_to_csv(const std::vector<cplx>& samples) {
    std::string s = "re,im\n";
    char buf[80];
    for (const auto& z : samples) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", z.real(), z.imag());
        s += buf;
    }
    return s;
}

std::vector<std::vector<double>> read_points_csv(const std::string& path) {
    std::vector<std::vector<double>> rows;
    for_each_row(path, [&](const std::vector<double>& v, std::size_t lineno) {
        if (!rows.empty() && v.size() != rows.front().size())
            throw Error(ErrorKind::ingestion, path + ":" + std::to_string(lineno) + ": ragged row");
        rows.push_back(v);
    });
    if (rows.empty()) throw Error(ErrorKind::ingestion, path + ": no points");
    return rows;
}

}  // namespace qpd

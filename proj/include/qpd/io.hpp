#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "qpd/bounds.hpp"
#include "qpd/diagram.hpp"
#include "qpd/numtheory.hpp"
#include "qpd/sliding_window.hpp"

namespace qpd {

using json = nlohmann::json;

// Finite values rounded to 9 significant digits; +inf as "inf".
json number(double v);
double parse_number(const json& v);

json to_json(const PersistenceDiagram& d);
PersistenceDiagram diagram_from_json(const json& j);
// Accepts a diagram, an array of diagrams, or an object with "diagrams".
std::vector<PersistenceDiagram> diagrams_from_json(const json& j);

json to_json(const GapStructure& g);
json to_json(const ErrorRectangle& r, int dim);
ErrorRectangle rectangle_from_json(const json& j);
// Accepts an array of rectangles or an object with "rectangles".
std::vector<ErrorRectangle> rectangles_from_json(const json& j);

json to_json(const ExponentialSum& f);
ExponentialSum exponential_sum_from_json(const json& j);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// One sample per line: "re,im" or a single real column; optional header.
std::vector<cplx> read_samples_csv(const std::string& path);
std::string samples_to_csv(const std::vector<cplx>& samples);

// Real coordinates per line; returns rows as points.
std::vector<std::vector<double>> read_points_csv(const std::string& path);

std::string svg_plot(const std::vector<PersistenceDiagram>& diagrams, const std::vector<ErrorRectangle>& rects);

}  // namespace qpd

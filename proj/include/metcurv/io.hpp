#pragma once

// JSON and CSV exchange formats. Requires nlohmann/json (json.hpp on the include path).

#include <cmath>
#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "curve_curvature.hpp"
#include "embedding_curvature.hpp"
#include "errors.hpp"
#include "gh_space.hpp"
#include "metric_core.hpp"

namespace metcurv {

using json = nlohmann::json;

// FiniteMetricSpace: {"labels": [...], "dist": [[...], ...]}

inline json to_json(const FiniteMetricSpace& X)
{
    json rows = json::array();
    for (std::size_t i = 0; i < X.size(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < X.size(); ++j) r.push_back(X(i, j));
        rows.push_back(std::move(r));
    }
    return {{"labels", X.labels()}, {"dist", std::move(rows)}};
}

/// Validates all metric axioms; a violation names the offending labels.
inline FiniteMetricSpace metric_space_from_json(const json& j, Tolerance tol = {})
{
    if (!j.is_object() || !j.contains("dist")) throw ParseError("metric space JSON needs a \"dist\" matrix", 0);
    const auto& rows = j.at("dist");
    if (!rows.is_array()) throw ParseError("\"dist\" must be an array of rows", 0);
    const std::size_t n = rows.size();
    std::vector<double> d;
    d.reserve(n * n);
    for (const auto& r : rows) {
        if (!r.is_array() || r.size() != n) throw ParseError("\"dist\" must be a square matrix", 0);
        for (const auto& v : r) {
            if (!v.is_number()) throw ParseError("\"dist\" entries must be numbers", 0);
            d.push_back(v.get<double>());
        }
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        for (const auto& l : j.at("labels")) labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
        if (labels.size() != n) throw ParseError("\"labels\" length does not match \"dist\"", 0);
    } else {
        labels = FiniteMetricSpace::default_labels(n);
    }
    return FiniteMetricSpace(std::move(labels), std::move(d), tol);
}

inline FiniteMetricSpace read_metric_space(std::istream& in, Tolerance tol = {})
{
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
    }
    return metric_space_from_json(j, tol);
}

// CurvatureSolution: {"roots": [{"kappa", "case", "residual", "admissible", "tangential"}], "scan": [min, max, n]}

inline json to_json(const CurvatureSolution& s)
{
    json roots = json::array();
    for (const auto& r : s.roots)
        roots.push_back({{"kappa", r.kappa},
                         {"case", to_string(r.kind)},
                         {"residual", r.residual},
                         {"admissible", r.admissible},
                         {"tangential", r.tangential}});
    json out{{"roots", std::move(roots)}, {"scan", {s.scan_min, s.scan_max, s.scan_resolution}}};
    if (!s.warnings.empty()) out["warnings"] = s.warnings;
    return out;
}

inline json to_json(const ApproxGraph& g)
{
    json edges = json::array();
    for (const auto& [a, b] : g.edges) edges.push_back({a, b});
    const std::size_t n = g.vertices.size();
    json metric = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < n; ++j) r.push_back(g.metric(i, j));
        metric.push_back(std::move(r));
    }
    return {{"vertices", g.vertices}, {"edges", std::move(edges)}, {"graph_metric", std::move(metric)},
            {"max_gap", g.max_gap},   {"dominates", g.dominates},   {"certified", g.certified},
            {"warnings", g.warnings}};
}

/// Curve input: either a bare list of vertices [[x, y(, z)], ...] or {"vertices": [...], "chords": [[...]]}.
/// "chords" overrides the Euclidean distances between vertices; vertices may then be omitted.
inline PolylineCurve<double> curve_from_json(const json& j)
{
    const json* verts = nullptr;
    const json* chords = nullptr;
    if (j.is_array()) verts = &j;
    else if (j.is_object()) {
        if (j.contains("vertices")) verts = &j.at("vertices");
        if (j.contains("chords")) chords = &j.at("chords");
    }
    if (!verts && !chords) throw ParseError("curve JSON needs \"vertices\" or \"chords\"", 0);
    std::vector<PolylineCurve<double>::Point> pts;
    if (verts) {
        for (const auto& v : *verts) {
            if (!v.is_array() || v.size() < 2 || v.size() > 3) throw ParseError("curve vertex must have 2 or 3 coordinates", 0);
            pts.push_back({v[0].get<double>(), v[1].get<double>(), v.size() == 3 ? v[2].get<double>() : 0.0});
        }
    }
    if (!chords) return PolylineCurve<double>(std::move(pts));
    const std::size_t n = chords->size();
    std::vector<double> c;
    c.reserve(n * n);
    for (const auto& r : *chords) {
        if (!r.is_array() || r.size() != n) throw ParseError("\"chords\" must be a square matrix", 0);
        for (const auto& v : r) c.push_back(v.get<double>());
    }
    return PolylineCurve<double>(std::move(pts), std::move(c), n);
}

/// Writes a double so that reading it back yields the same value, with '.' as decimal point.
inline std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return json(v).dump();
}

} // namespace metcurv

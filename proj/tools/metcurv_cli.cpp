// metcurv: command-line front end.
//
//   metcurv sample sphere --n 2000 --seed 1 --out sphere.json
//   metcurv curvature sphere.json --method robinson --scales 0.4,0.2,0.1,0.05 --out map.csv
//   metcurv curvature --quadruple 1,1,1,2,2,2
//   metcurv curve circle.json --method both --out curve.csv
//   metcurv gh compare a.json b.json --exact
//   metcurv gh graph sample.json --eps 0.3 --delta 0.01 --out graph.json
//   metcurv circumsphere points.json
//
// Exit codes: 0 success, 2 invalid input, 3 instance too large for an exhaustive search.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "metcurv/io.hpp"
#include "metcurv/metcurv.hpp"

using namespace metcurv;

namespace {

constexpr int exit_validation = 2;
constexpr int exit_capacity = 3;

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path, 0);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": invalid JSON: " + e.what(), 0);
    }
}

/// Output stream: the file named by `path`, or stdout when empty or "-".
class Output
{
public:
    explicit Output(const std::string& path)
    {
        if (!path.empty() && path != "-") {
            file_.open(path);
            if (!file_) throw ArgumentError("cannot write " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

SurfaceSpec spec_from_json(const json& s)
{
    const auto type = s.at("type").get<std::string>();
    if (type == "sphere") return SphereSpec{s.value("R", 1.0)};
    if (type == "torus") return TorusSpec{s.value("R", 2.0), s.value("r", 1.0)};
    if (type == "plane") return PlaneSpec{s.value("w", 1.0), s.value("h", 1.0)};
    if (type == "cylinder") return CylinderSpec{s.value("R", 1.0), s.value("h", 2.0)};
    throw ParseError("unknown surface type '" + type + "'", 0);
}

json spec_to_json(const SurfaceSpec& spec)
{
    return std::visit(
        [](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SphereSpec>) return {{"type", "sphere"}, {"R", s.R}};
            else if constexpr (std::is_same_v<T, TorusSpec>) return {{"type", "torus"}, {"R", s.R}, {"r", s.r}};
            else if constexpr (std::is_same_v<T, PlaneSpec>) return {{"type", "plane"}, {"w", s.w}, {"h", s.h}};
            else return {{"type", "cylinder"}, {"R", s.R}, {"h", s.h}};
        },
        spec);
}

/// Mesh file (.off/.obj), analytic sample JSON (with "surface" and "params") or metric-space JSON.
SurfaceSample load_sample(const std::string& path)
{
    std::string ext = std::filesystem::path(path).extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".off" || ext == ".obj") return load_mesh(path);
    const json j = read_json_file(path);
    if (j.contains("surface") && j.contains("params")) {
        std::vector<SurfacePoint> pts;
        for (const auto& p : j.at("params")) pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        return SurfaceSample::from_analytic(make_surface(spec_from_json(j.at("surface"))), std::move(pts));
    }
    return SurfaceSample::from_metric(metric_space_from_json(j));
}

std::vector<double> parse_list(const std::string& s)
{
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ArgumentError("not a number: '" + tok + "'");
        }
    }
    return out;
}

/// Runs job(i) for i in [0, n) on `threads` workers; job results are written by index, so output order
/// does not depend on scheduling.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& job)
{
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < n;) job(i);
    };
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
}

/// 2 pi minus the sum of face angles at each vertex of a mesh (zero on flat interior vertices).
std::vector<double> angle_deficits(const SurfaceSample& s)
{
    std::vector<double> sum(s.size(), 0.0);
    const auto& v = s.vertices();
    for (const auto& f : s.faces())
        for (std::size_t k = 0; k < 3; ++k) {
            const auto a = f[k], b = f[(k + 1) % 3], c = f[(k + 2) % 3];
            sum[a] += detail::angle_between(v[b] - v[a], v[c] - v[a]);
        }
    for (auto& x : sum) x = 2.0 * std::numbers::pi - x;
    return sum;
}

// ---------------------------------------------------------------------------------------------------------------

struct SampleArgs
{
    std::string surface = "sphere";
    double R = 1.0, r = 1.0, w = 1.0, h = 2.0;
    bool R_set = false;
    std::size_t n = 500;
    std::uint64_t seed = 1;
    bool dist = false;
    std::string out;
};

int run_sample(const SampleArgs& a)
{
    SurfaceSpec spec;
    if (a.surface == "sphere") spec = SphereSpec{a.R};
    else if (a.surface == "torus") spec = TorusSpec{a.R_set ? a.R : 2.0, a.r};
    else if (a.surface == "plane") spec = PlaneSpec{a.w, a.h};
    else if (a.surface == "cylinder") spec = CylinderSpec{a.R, a.h};
    else throw ArgumentError("unknown surface '" + a.surface + "'");
    const auto s = sample_analytic(spec, a.n, a.seed);
    json params = json::array(), points = json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
        params.push_back({s.params()[i].u, s.params()[i].v});
        const auto p = s.vertices()[i];
        points.push_back({p.x, p.y, p.z});
    }
    json j{{"surface", spec_to_json(spec)}, {"params", std::move(params)}, {"points", std::move(points)}};
    if (a.dist) {
        const auto X = s.to_metric_space();
        const auto m = to_json(X);
        j["labels"] = m["labels"];
        j["dist"] = m["dist"];
    }
    Output out(a.out);
    out.os() << j.dump() << '\n';
    return 0;
}

struct CurvatureArgs
{
    std::string input;
    std::string method = "wald-exact";
    std::string scales = "0.4,0.2,0.1,0.05";
    std::string vertices;
    std::size_t max_vertices = 0;
    std::size_t quads = 64;
    bool general = false;
    double kappa = 0.0;
    std::size_t triangles = 500;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string out;
    std::string quadruple;
};

int run_quadruple(const CurvatureArgs& a)
{
    const auto d = parse_list(a.quadruple);
    if (d.size() != 6) throw ArgumentError("--quadruple needs six distances d12,d13,d14,d23,d24,d34");
    const MetricQuadruple q(d[0], d[1], d[2], d[3], d[4], d[5]);
    SolverOptions opt;
    opt.keep_inadmissible = true;
    const auto sol = solve_embedding_curvature(q, opt);
    json j = to_json(sol);
    j["D"] = flat_residual(q);
    const auto c = classify_quadruple(q, 1e-12 * q.diameter());
    j["sd_quad"] = c.is_sd_quad;
    j["linear"] = c.is_linear;
    Output out(a.out);
    out.os() << j.dump(2) << '\n';
    return 0;
}

int run_curvature(const CurvatureArgs& a)
{
    if (!a.quadruple.empty()) return run_quadruple(a);
    if (a.input.empty()) throw ArgumentError("curvature: an input sample or --quadruple is required");
    const auto sample = load_sample(a.input);
    const auto scales = parse_list(a.scales);
    if (scales.empty()) throw ArgumentError("--scales must list at least one scale");

    if (a.method == "rinow-check") {
        RinowOptions ro;
        ro.seed = a.seed;
        ro.max_side = scales.front();
        const auto rep = rinow_region_check(sample, a.kappa, a.triangles, 1e-9, ro);
        Output out(a.out);
        out.os() << "kappa,fraction_leq,fraction_geq,tested,skipped\n"
                 << format_double(a.kappa) << ',' << format_double(rep.fraction_leq) << ','
                 << format_double(rep.fraction_geq) << ',' << rep.tested << ',' << rep.skipped << '\n';
        return 0;
    }
    if (a.method != "wald-exact" && a.method != "robinson")
        throw ArgumentError("--method must be wald-exact, robinson or rinow-check");

    std::vector<std::size_t> ids;
    if (!a.vertices.empty()) {
        for (double v : parse_list(a.vertices)) {
            if (v < 0 || v != std::floor(v) || v >= static_cast<double>(sample.size()))
                throw ArgumentError("vertex id out of range");
            ids.push_back(static_cast<std::size_t>(v));
        }
    } else {
        const std::size_t n = a.max_vertices ? std::min(a.max_vertices, sample.size()) : sample.size();
        for (std::size_t i = 0; i < n; ++i) ids.push_back(i);
    }
    const bool robinson = a.method == "robinson";
    const bool mesh = sample.kind() == SurfaceSample::Kind::mesh;
    const auto deficits = mesh ? angle_deficits(sample) : std::vector<double>{};

    std::vector<std::string> rows(ids.size());
    parallel_for(ids.size(), a.threads, [&](std::size_t k) {
        const std::size_t p = ids[k];
        std::ostringstream row;
        row << p;
        std::string flags = sample.approximate() ? "approximate" : "";
        std::string error;
        auto add_flag = [&](const std::string& f) { flags += (flags.empty() ? "" : ";") + f; };
        try {
            if (robinson) {
                GaussEstimateOptions go;
                go.quads_per_scale = a.quads;
                go.seed = a.seed;
                const auto t = gauss_estimate(sample, p, scales, go);
                for (const auto& r : t.rows) {
                    row << ',' << format_double(r.median_K) << ',' << format_double(r.iqr) << ','
                        << format_double(r.max_error_bound) << ',' << r.n_quads;
                    if (!r.warnings.empty()) add_flag("sparse");
                }
                if (!t.bound_shrinks) add_flag("bound-not-shrinking");
            } else {
                WaldOptions wo;
                wo.quads_per_scale = a.quads;
                wo.sd_only = !a.general;
                wo.seed = a.seed;
                for (const auto& e : wald_curvature_at_point(sample, p, scales, wo)) {
                    row << ',' << format_double(e.kappa) << ',' << format_double(e.dispersion) << ','
                        << e.quadruple_count;
                    if (e.skipped) add_flag("skipped");
                    else if (!e.warnings.empty()) add_flag("warning");
                }
            }
        } catch (const Error& e) {
            error = e.what();
            row.str("");
            row << p;
            for (std::size_t i = 0; i < scales.size() * (robinson ? 4 : 3); ++i) row << ',';
        }
        if (mesh) {
            row << ',' << format_double(deficits[p]);
            if (std::abs(deficits[p]) > 1e-9) add_flag("cone");
        }
        std::replace(error.begin(), error.end(), ',', ';');
        row << ',' << flags << ',' << error;
        rows[k] = row.str();
    });

    Output out(a.out);
    auto& os = out.os();
    os << "id";
    for (double s : scales) {
        const auto tag = format_double(s);
        if (robinson) os << ",K@" << tag << ",iqr@" << tag << ",error_bound@" << tag << ",n@" << tag;
        else os << ",kappa@" << tag << ",dispersion@" << tag << ",n@" << tag;
    }
    if (mesh) os << ",angle_deficit";
    os << ",flags,error\n";
    for (const auto& r : rows) os << r << '\n';
    return 0;
}

struct CurveArgs
{
    std::string input;
    std::string method = "both";
    std::string windows;
    std::string out;
};

int run_curve(const CurveArgs& a)
{
    const auto curve = curve_from_json(read_json_file(a.input));
    if (a.method != "menger" && a.method != "haantjes" && a.method != "both")
        throw ArgumentError("--method must be menger, haantjes or both");
    std::vector<double> windows = parse_list(a.windows);
    if (windows.empty()) {
        std::vector<double> seg;
        for (std::size_t i = 1; i < curve.size(); ++i) seg.push_back(curve.arclen()[i] - curve.arclen()[i - 1]);
        const double h = detail::median(seg);
        windows = {8 * h, 4 * h, 2 * h};
    }
    const bool menger = a.method != "haantjes", haantjes = a.method != "menger";
    Output out(a.out);
    auto& os = out.os();
    os << "id";
    if (menger) os << ",menger";
    if (haantjes) os << ",haantjes";
    if (menger && haantjes) os << ",gap,consistent";
    os << ",error\n";
    for (std::size_t p = 0; p < curve.size(); ++p) {
        os << p;
        try {
            if (menger && haantjes) {
                const auto r = curvature_consistency(curve, p, windows);
                os << ',' << format_double(r.alt.value) << ',' << format_double(r.haantjes.value) << ','
                   << format_double(r.gap) << ',' << (r.consistent ? 1 : 0) << ",\n";
            } else if (menger) {
                os << ',' << format_double(alt_curvature(curve, p, windows).value) << ",\n";
            } else {
                os << ',' << format_double(haantjes_curvature(curve, p, windows).value) << ",\n";
            }
        } catch (const Error& e) {
            std::string msg = e.what();
            std::replace(msg.begin(), msg.end(), ',', ';');
            os << std::string(menger && haantjes ? 4 : 1, ',') << ',' << msg << '\n';
        }
    }
    return 0;
}

struct GhArgs
{
    std::string a, b;
    bool exact = false, bounds = false;
    double eps = 0.0, delta = 0.0;
    std::string out;
};

int run_gh_compare(const GhArgs& g)
{
    const auto X = metric_space_from_json(read_json_file(g.a));
    const auto Y = metric_space_from_json(read_json_file(g.b));
    json j;
    const bool want_bounds = g.bounds || !g.exact;
    if (want_bounds) {
        const auto b = gh_bounds(X, Y);
        j["lower"] = b.lower;
        j["upper"] = b.upper;
    }
    if (g.exact) j["gh_distance"] = gh_distance_exact(X, Y).distance;
    const auto lip = X.size() <= 10 ? std::optional(lipschitz_distance(X, Y)) : std::nullopt;
    if (lip) j["lipschitz_distance"] = lip->is_infinite() ? json("infinite") : json(lip->value);
    Output out(g.out);
    out.os() << j.dump(2) << '\n';
    return 0;
}

int run_gh_graph(const GhArgs& g)
{
    const auto X = load_sample(g.a).to_metric_space();
    const auto graph = build_graph_approximation(X, g.eps, g.delta);
    for (const auto& w : graph.warnings) std::cerr << "warning: " << w << '\n';
    Output out(g.out);
    out.os() << to_json(graph).dump() << '\n';
    return 0;
}

int run_circumsphere(const std::string& path, double tol)
{
    const auto X = metric_space_from_json(read_json_file(path));
    std::vector<double> d;
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = i + 1; j < X.size(); ++j) d.push_back(X(i, j));
    json j;
    if (X.size() == 4) {
        const MetricQuadruple q(std::array<double, 6>{d[0], d[1], d[2], d[3], d[4], d[5]});
        j["delta"] = delta_det(q);
        j["cayley_menger"] = cayley_menger_det(q);
        j["circumradius"] = circumradius(q);
    } else if (X.size() == 5) {
        j["delta"] = delta_det(d, 5);
        j["cospherical"] = cospherical_test(d, tol);
    } else {
        throw ArgumentError("circumsphere: expected 4 or 5 points");
    }
    std::cout << j.dump(2) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Metric curvature of surfaces, curves and finite metric spaces from distances alone"};
    app.require_subcommand(1);

    SampleArgs sa;
    auto* sample = app.add_subcommand("sample", "Quasi-uniform sample of an analytic surface");
    sample->add_option("surface", sa.surface, "sphere | torus | plane | cylinder")->required();
    sample->add_option("--n", sa.n, "number of points")->check(CLI::Range(4, 1 << 24));
    sample->add_option("--seed", sa.seed);
    auto* Ropt = sample->add_option("--R", sa.R, "sphere/cylinder radius, torus major radius");
    sample->add_option("--r", sa.r, "torus tube radius");
    sample->add_option("--width", sa.w, "plane width");
    sample->add_option("--height", sa.h, "plane/cylinder height");
    sample->add_flag("--dist", sa.dist, "also write the full distance matrix");
    sample->add_option("--out", sa.out);

    CurvatureArgs ca;
    auto* curv = app.add_subcommand("curvature", "Per-vertex curvature of a sample, or the roots of one quadruple");
    curv->add_option("input", ca.input, "mesh (.off/.obj), analytic sample or metric-space JSON");
    curv->add_option("--method", ca.method, "wald-exact | robinson | rinow-check");
    curv->add_option("--scales", ca.scales, "decreasing comma-separated scales");
    curv->add_option("--vertices", ca.vertices, "comma-separated vertex ids (default: all)");
    curv->add_option("--max-vertices", ca.max_vertices, "only the first N vertices");
    curv->add_option("--quads", ca.quads, "quadruples per scale");
    curv->add_flag("--general", ca.general, "wald-exact: use general quadruples instead of sd-quads");
    curv->add_option("--kappa", ca.kappa, "rinow-check: model curvature");
    curv->add_option("--triangles", ca.triangles, "rinow-check: triangles to test");
    curv->add_option("--quadruple", ca.quadruple, "d12,d13,d14,d23,d24,d34: print the embedding curvatures");
    curv->add_option("--seed", ca.seed);
    curv->add_option("--threads", ca.threads)->check(CLI::Range(1u, 1024u));
    curv->add_option("--out", ca.out);

    CurveArgs cu;
    auto* curve = app.add_subcommand("curve", "Menger and Haantjes curvature along a sampled curve");
    curve->add_option("input", cu.input, "curve JSON")->required();
    curve->add_option("--method", cu.method, "menger | haantjes | both");
    curve->add_option("--windows", cu.windows, "decreasing half-widths (default 8h,4h,2h)");
    curve->add_option("--out", cu.out);

    GhArgs ga;
    auto* gh = app.add_subcommand("gh", "Gromov-Hausdorff tools");
    gh->require_subcommand(1);
    auto* cmp = gh->add_subcommand("compare", "Distances between two metric spaces");
    cmp->add_option("a", ga.a)->required();
    cmp->add_option("b", ga.b)->required();
    auto* ex = cmp->add_flag("--exact", ga.exact, "exact GH distance (small spaces)");
    cmp->add_flag("--bounds", ga.bounds, "lower/upper bounds")->excludes(ex);
    cmp->add_option("--out", ga.out);
    auto* graph = gh->add_subcommand("graph", "Net-graph approximation of a sampled length space");
    graph->add_option("sample", ga.a)->required();
    graph->add_option("--eps", ga.eps)->required();
    graph->add_option("--delta", ga.delta)->required();
    graph->add_option("--out", ga.out);

    std::string cs_path;
    double cs_tol = 1e-9;
    auto* cs = app.add_subcommand("circumsphere", "Circumradius of 4 points or cosphericity of 5");
    cs->add_option("input", cs_path, "metric-space JSON with 4 or 5 points")->required();
    cs->add_option("--tol", cs_tol);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_validation;
    }

    try {
        sa.R_set = Ropt->count() > 0;
        if (*sample) return run_sample(sa);
        if (*curv) return run_curvature(ca);
        if (*curve) return run_curve(cu);
        if (*cmp) return run_gh_compare(ga);
        if (*graph) return run_gh_graph(ga);
        if (*cs) return run_circumsphere(cs_path, cs_tol);
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_capacity;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const json::exception& e) {
        std::cerr << "error: malformed input: " << e.what() << '\n';
        return exit_validation;
    }
    return 0;
}

#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polycurv/cantor.hpp"
#include "polycurv/csv.hpp"
#include "polycurv/curvature.hpp"
#include "polycurv/div_measures.hpp"
#include "polycurv/gauss_sphere.hpp"
#include "polycurv/lantern.hpp"
#include "polycurv/off_io.hpp"
#include "polycurv/polyline.hpp"
#include "polycurv/proptest.hpp"
#include "polycurv/smoothing.hpp"

namespace polycurv::cli {

struct RunMeta {
    std::string experiment;
    std::vector<std::pair<std::string, std::string>> params;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, bool>> verdicts;
};

struct OutputOptions {
    std::string path;          // empty: stdout
    std::string format = "csv";
};

namespace detail_cli {

inline nlohmann::ordered_json cell_to_json(const std::string& cell) {
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end && *end == '\0' && end != cell.c_str()) return v;
    return cell;
}

inline std::string render(const RunMeta& meta, const Table& table, const std::string& format) {
    if (format == "json") {
        nlohmann::ordered_json j;
        j["experiment"] = meta.experiment;
        nlohmann::ordered_json params = nlohmann::ordered_json::object();
        for (const auto& [k, v] : meta.params) params[k] = v;
        j["params"] = params;
        j["seed"] = meta.seed;
        j["columns"] = table.columns;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& r : table.rows) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (const auto& c : r) row.push_back(cell_to_json(c));
            rows.push_back(row);
        }
        j["rows"] = rows;
        nlohmann::ordered_json verdicts = nlohmann::ordered_json::object();
        for (const auto& [k, v] : meta.verdicts) verdicts[k] = v;
        j["verdicts"] = verdicts;
        return j.dump(2) + "\n";
    }
    return table.to_csv();
}

/// Writes the report; returns 2 when a mathematical verdict failed, else 0.
inline int emit(const RunMeta& meta, const Table& table, const OutputOptions& out) {
    const std::string payload = render(meta, table, out.format);
    if (out.path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream f(out.path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open for writing: " + out.path);
        f << payload;
        if (!f) throw std::runtime_error("write failed: " + out.path);
    }
    for (const auto& [name, ok] : meta.verdicts)
        if (!ok) {
            std::cerr << "assertion failed: " << name << "\n";
            return 2;
        }
    return 0;
}

inline void add_output_options(CLI::App* cmd, OutputOptions& out) {
    cmd->add_option("-o,--output", out.path, "output file (default stdout)");
    cmd->add_option("--format", out.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

inline int default_jobs() {
    if (const char* env = std::getenv("POLYCURV_JOBS")) {
        const int j = std::atoi(env);
        if (j >= 1) return j;
    }
    return 1;
}

inline GraphSurface graph_from_off(const TriangulatedSurface3D& s) {
    std::vector<Vec2> pts(s.points3.size());
    std::vector<double> heights(s.points3.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        pts[i] = {s.points3[i].x, s.points3[i].y};
        heights[i] = s.points3[i].z;
    }
    return GraphSurface(Triangulation2D(std::move(pts), s.triangles), std::move(heights));
}

inline Table energy_table(const EnergyReport& rep) {
    Table t({"area", "e_h", "e_h_tilde", "e_k", "e_k_tilde", "total"});
    t.add_row({rep.area, rep.e_h, rep.e_h_tilde, rep.e_k, rep.e_k_tilde, rep.total()});
    return t;
}

}  // namespace detail_cli

// ---------------------------------------------------------------------------
// subcommand runners

inline int run_curve(const std::string& input, int cantor_level, bool closed,
                     const OutputOptions& out) {
    CurveCurvatureReport rep;
    RunMeta meta{"curve", {}, 0, {}};
    if (cantor_level >= 0) {
        const CantorApproximation ca = cantor_polygonal(cantor_level);
        rep = curve_report(ca.polygonal);
        meta.params.emplace_back("cantor_level", std::to_string(cantor_level));
    } else {
        rep = curve_report(PolygonalCurve(read_curve_csv(input), closed));
        meta.params.emplace_back("input", input);
        meta.params.emplace_back("closed", closed ? "true" : "false");
    }
    Table t({"length", "tc", "tc_star", "max_turning"});
    t.add_row({rep.length, rep.tc, rep.tc_star, rep.max_turning});
    return detail_cli::emit(meta, t, out);
}

inline int run_mesh_energy(const std::string& input, bool graph, const std::string& edges_out,
                           const std::string& vertices_out, const OutputOptions& out) {
    const TriangulatedSurface3D s = load_off(input);
    if (graph) {
        for (std::size_t t = 0; t < s.triangles.size(); ++t) {
            const auto& tr = s.triangles[t];
            const Vec2 a{s.points3[tr[0]].x, s.points3[tr[0]].y};
            const Vec2 b{s.points3[tr[1]].x, s.points3[tr[1]].y};
            const Vec2 c{s.points3[tr[2]].x, s.points3[tr[2]].y};
            if ((b - a).cross(c - a) <= 0.0)
                throw invalid_argument_error("--graph: triangle projection not injective/CCW");
        }
    }
    if (!edges_out.empty()) {
        Table t({"edge_id", "length", "theta", "sullivan"});
        for (const auto& r : edge_curvature_records(s))
            t.add_row({static_cast<double>(r.edge_id), r.length, r.theta, r.sullivan});
        std::ofstream f(edges_out);
        f << t.to_csv();
    }
    if (!vertices_out.empty()) {
        Table t({"vertex_id", "angle_sum", "defect", "class"});
        for (const auto& r : vertex_curvature_records(s))
            t.add_row_mixed({std::to_string(r.vertex_id), detail::fmt17(r.angle_sum),
                             detail::fmt17(r.defect), to_string(r.cls)});
        std::ofstream f(vertices_out);
        f << t.to_csv();
    }
    RunMeta meta{"mesh-energy", {{"input", input}}, 0, {}};
    return detail_cli::emit(meta, detail_cli::energy_table(energy_report(s)), out);
}

inline int run_envelope(const std::string& input, const OutputOptions& out) {
    const auto [raw, thetas] = read_normals_csv(input);
    std::vector<UnitVector3> normals;
    for (const Vec3& n : raw) normals.emplace_back(n);
    const SphericalPolygon poly = geodesic_envelope(normals);
    const double area = spherical_polygon_area(poly);
    double theta_sum = 0.0;
    for (double th : thetas) theta_sum += th;
    const double bound = 2.0 * kPi * theta_sum;
    const bool have_bound = !thetas.empty();
    const bool ok = !have_bound || area <= bound;
    Table t({"k", "area", "theta_sum", "bound", "ok"});
    t.add_row({static_cast<double>(poly.vertices.size()), area, theta_sum, bound,
               ok ? 1.0 : 0.0});
    RunMeta meta{"envelope", {{"input", input}}, 0, {{"envelope_bound", ok}}};
    return detail_cli::emit(meta, t, out);
}

inline int run_edge_measures(const std::string& input, const std::string& edges_out,
                             const OutputOptions& out) {
    const GraphSurface g = detail_cli::graph_from_off(load_off(input));
    if (!edges_out.empty()) {
        Table t({"edge_id", "length2d", "length3d", "theta", "mass"});
        for (const auto& r : edge_measures(g))
            t.add_row({static_cast<double>(r.edge_id), r.length2d, r.length3d, r.theta, r.mass});
        std::ofstream f(edges_out);
        f << t.to_csv();
    }
    const TotalMassReport rep = total_mass_report(g);
    Table t({"total_mass", "e_h", "rel_err"});
    t.add_row({rep.mass, rep.e_h, rep.rel_err});
    RunMeta meta{"edge-measures",
                 {{"input", input}},
                 0,
                 {{"total_mass_equals_e_h", rep.rel_err <= 1e-9}}};
    return detail_cli::emit(meta, t, out);
}

inline int run_lantern(const LanternParams& p, const OutputOptions& out) {
    RunMeta meta{"lantern",
                 {{"m", std::to_string(p.m)},
                  {"n", std::to_string(p.n)},
                  {"radius", detail::fmt17(p.radius)},
                  {"height", detail::fmt17(p.height)}},
                 0,
                 {}};
    return detail_cli::emit(meta, detail_cli::energy_table(energy_report(build_lantern(p))), out);
}

struct SweepPoint {
    int n = 0;
    int m = 0;
};

inline std::vector<SweepPoint> sweep_points(const std::string& mode,
                                            const std::vector<int>& n_list) {
    std::vector<SweepPoint> pts;
    for (int n : n_list) {
        SweepPoint pt;
        if (mode == "m=n") {
            pt = {n, n};
        } else if (mode == "m=n^2") {
            pt = {n, n * n};
        } else if (mode == "n=m^2") {
            pt = {n * n, n};
        } else if (mode == "n=m^4") {
            pt = {n * n * n * n, n};
        } else {
            throw invalid_argument_error("unknown sweep mode: " + mode);
        }
        pts.push_back(pt);
    }
    return pts;
}

inline int run_lantern_sweep(const std::string& mode, const std::vector<int>& n_list,
                             double radius, double height, int jobs, const OutputOptions& out) {
    const std::vector<SweepPoint> pts = sweep_points(mode, n_list);
    struct Row {
        double n, m, area, f1, f2, e_k, defect_max;
    };
    std::vector<Row> rows(pts.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= pts.size()) return;
            const LanternParams p{radius, height, pts[i].m, pts[i].n};
            const LanternConsistencyReport c = lantern_mean_curvature_consistency(p);
            rows[i] = {static_cast<double>(pts[i].n), static_cast<double>(pts[i].m),
                       closed_form_area(p), c.f1, c.f2, c.e_k, c.max_abs_defect};
        }
    };
    std::vector<std::thread> pool;
    const int nthreads = std::max(1, jobs);
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    Table t({"n", "m", "area", "f1", "f2", "e_k", "defect_max"});
    for (const Row& r : rows) t.add_row({r.n, r.m, r.area, r.f1, r.f2, r.e_k, r.defect_max});
    RunMeta meta{"lantern-sweep",
                 {{"mode", mode},
                  {"radius", detail::fmt17(radius)},
                  {"height", detail::fmt17(height)}},
                 0,
                 {}};
    return detail_cli::emit(meta, t, out);
}

inline int run_lantern_vertex(int m, int n, const OutputOptions& out) {
    const LanternVertexDiagnostics d = lantern_vertex_diagnostics(LanternParams{1.0, 1.0, m, n});
    Table t({"d1", "d2", "envelope_area", "total_envelope"});
    t.add_row({d.d1, d.d2, d.envelope_area, d.total_envelope});
    RunMeta meta{"lantern-vertex", {{"m", std::to_string(m)}, {"n", std::to_string(n)}}, 0, {}};
    return detail_cli::emit(meta, t, out);
}

inline int run_prism(const PrismParams& p, const OutputOptions& out) {
    const PrismReport rep = prism_report(p);
    const double pi_h = kPi * p.height;
    Table t({"n", "slices", "lateral_area", "e_h_tilde_half", "pi_h", "max_abs_defect",
             "max_envelope_area"});
    t.add_row({static_cast<double>(p.n), static_cast<double>(p.slices), rep.lateral_area,
               rep.e_h_tilde_half, pi_h, rep.max_abs_defect, rep.max_envelope_area});
    RunMeta meta{"prism",
                 {{"n", std::to_string(p.n)}, {"slices", std::to_string(p.slices)}},
                 0,
                 {{"mean_curvature_exact",
                   std::abs(rep.e_h_tilde_half - pi_h) <= 1e-12 * pi_h},
                  {"defects_zero", rep.max_abs_defect <= 1e-12},
                  {"envelopes_zero", rep.max_envelope_area <= 1e-12}}};
    return detail_cli::emit(meta, t, out);
}

namespace detail_cli {
inline void dump_matrix(const GridField& g, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    for (int j = 0; j < g.n; ++j) {
        for (int i = 0; i < g.n; ++i) f << detail::fmt17(g.at(i, j)) << (i + 1 < g.n ? "," : "");
        f << '\n';
    }
}
}  // namespace detail_cli

inline int run_smooth_check(const std::string& shape, int grid_n, double eps_mult,
                            const std::string& densities_out, const OutputOptions& out) {
    std::function<double(Vec2)> field;
    if (shape == "pyramid") {
        field = [](Vec2 p) { return pyramid_value(p); };
    } else if (shape == "roof") {
        field = [](Vec2 p) { return roof_value(p); };
    } else if (shape == "paraboloid") {
        field = [](Vec2 p) { return paraboloid_value(p); };
    } else if (shape == "lantern-patch") {
        const LanternPatch patch = make_lantern_patch(LanternParams{1.0, 1.0, 8, 16});
        field = [patch](Vec2 p) { return patch.value(p); };
    } else {
        throw invalid_argument_error("unknown shape: " + shape);
    }
    const GridField base = GridField::sample(grid_n, field);
    Table t({"eps", "A", "F1", "F2", "slice_lhs", "slice_rhs"});
    for (double mult : {4.0 * eps_mult, 2.0 * eps_mult, eps_mult}) {
        const GridField u = mollify(base, MollifierSpec(mult * base.dx()));
        const GridEnergyReport rep = grid_energy_report(u);
        const SlicingReport sl = slicing_tc_check(u);
        t.add_row({mult * base.dx(), rep.area, rep.f1, rep.f2, sl.lhs, sl.rhs});
        if (!densities_out.empty() && mult == eps_mult) {
            detail_cli::dump_matrix(rep.xi0, densities_out + "_xi0.csv");
            detail_cli::dump_matrix(rep.xi1, densities_out + "_xi1.csv");
            detail_cli::dump_matrix(rep.xi2, densities_out + "_xi2.csv");
        }
    }
    RunMeta meta{"smooth-check",
                 {{"shape", shape},
                  {"grid", std::to_string(grid_n)},
                  {"eps_mult", detail::fmt17(eps_mult)}},
                 0,
                 {}};
    return detail_cli::emit(meta, t, out);
}

inline int run_proptest(const std::string& suite, int trials, std::uint64_t seed,
                        const OutputOptions& out) {
    PropertyResult res;
    if (suite == "envelope")
        res = proptest_envelope(trials, seed);
    else if (suite == "measures")
        res = proptest_measures(trials, seed);
    else if (suite == "curves")
        res = proptest_curves(trials, seed);
    else
        throw invalid_argument_error("unknown suite: " + suite);
    std::cerr << "suite=" << res.suite << " seed=" << res.seed << " trials=" << res.trials
              << " failures=" << res.failures << "\n";
    if (!res.detail.empty()) std::cerr << res.detail << "\n";
    Table t({"suite", "trials", "failures", "seed"});
    t.add_row_mixed({res.suite, std::to_string(res.trials), std::to_string(res.failures),
                     std::to_string(res.seed)});
    RunMeta meta{"proptest",
                 {{"suite", suite}, {"trials", std::to_string(trials)}},
                 seed,
                 {{"suite_clean", res.ok()}}};
    return detail_cli::emit(meta, t, out);
}

// ---------------------------------------------------------------------------

inline int dispatch(std::vector<std::string> args) {
    CLI::App app{"discrete curvature energies of polygonal curves and polyhedral surfaces"};
    app.require_subcommand(1);

    // curve
    auto* curve = app.add_subcommand("curve", "polygonal curve report");
    std::string curve_input;
    int cantor_level = -1;
    bool closed = false;
    OutputOptions curve_out;
    curve->add_option("--input", curve_input, "vertex CSV with header x,y");
    curve->add_option("--cantor-level", cantor_level, "Cantor-Vitali polygonal level");
    curve->add_flag("--closed", closed, "treat the curve as closed");
    detail_cli::add_output_options(curve, curve_out);

    // mesh-energy
    auto* mesh = app.add_subcommand("mesh-energy", "energy report of an OFF surface");
    std::string mesh_input, mesh_edges_out, mesh_vertices_out;
    bool mesh_graph = false;
    OutputOptions mesh_out;
    mesh->add_option("--input", mesh_input, "OFF file")->required();
    mesh->add_flag("--graph", mesh_graph, "assert the surface is a graph over (x,y)");
    mesh->add_option("--edges-out", mesh_edges_out, "per-edge dump CSV");
    mesh->add_option("--vertices-out", mesh_vertices_out, "per-vertex dump CSV");
    detail_cli::add_output_options(mesh, mesh_out);

    // envelope
    auto* env = app.add_subcommand("envelope", "geodesic envelope of unit normals");
    std::string env_input;
    OutputOptions env_out;
    env->add_option("--input", env_input, "normals CSV (nx,ny,nz[,theta])")->required();
    detail_cli::add_output_options(env, env_out);

    // edge-measures
    auto* meas = app.add_subcommand("edge-measures", "divergence-measure masses of a graph OFF");
    std::string meas_input, meas_edges_out;
    bool meas_graph = false;
    OutputOptions meas_out;
    meas->add_option("--input", meas_input, "OFF file of a graph surface")->required();
    meas->add_flag("--graph", meas_graph, "input is a graph over (x,y)");
    meas->add_option("--edges-out", meas_edges_out, "per-edge dump CSV");
    detail_cli::add_output_options(meas, meas_out);

    // lantern
    auto* lan = app.add_subcommand("lantern", "Schwarz-Peano lantern energy report");
    LanternParams lan_params;
    OutputOptions lan_out;
    lan->add_option("--m", lan_params.m, "vertices per ring / 2")->required();
    lan->add_option("--n", lan_params.n, "strips")->required();
    lan->add_option("--radius", lan_params.radius, "cylinder radius");
    lan->add_option("--height", lan_params.height, "cylinder height");
    detail_cli::add_output_options(lan, lan_out);

    // lantern-sweep
    auto* sweep = app.add_subcommand("lantern-sweep", "lantern limits along a parameter mode");
    std::string sweep_mode;
    std::string sweep_nlist;
    double sweep_radius = 1.0, sweep_height = 1.0;
    int sweep_jobs = detail_cli::default_jobs();
    OutputOptions sweep_out;
    sweep->add_option("--mode", sweep_mode, "m=n | m=n^2 | n=m^2 | n=m^4")->required();
    sweep->add_option("--n-list", sweep_nlist, "comma-separated n values")->required();
    sweep->add_option("--radius", sweep_radius, "cylinder radius");
    sweep->add_option("--height", sweep_height, "cylinder height");
    sweep->add_option("--jobs", sweep_jobs, "parallel sweep evaluations");
    detail_cli::add_output_options(sweep, sweep_out);

    // lantern-vertex
    auto* lv = app.add_subcommand("lantern-vertex", "Gauss-sphere diagnostics at a vertex");
    int lv_m = 8, lv_n = 8;
    OutputOptions lv_out;
    lv->add_option("--m", lv_m, "vertices per ring / 2")->required();
    lv->add_option("--n", lv_n, "strips")->required();
    detail_cli::add_output_options(lv, lv_out);

    // prism
    auto* prism = app.add_subcommand("prism", "inscribed prism exactness report");
    PrismParams prism_params;
    OutputOptions prism_out;
    prism->add_option("--n", prism_params.n, "polygon sides")->required();
    prism->add_option("--slices", prism_params.slices, "triangulation rows per face");
    prism->add_option("--radius", prism_params.radius, "cylinder radius");
    prism->add_option("--height", prism_params.height, "cylinder height");
    detail_cli::add_output_options(prism, prism_out);

    // smooth-check
    auto* smooth = app.add_subcommand("smooth-check", "mollified energies of a fixture shape");
    std::string smooth_shape, smooth_densities;
    int smooth_grid = 257;
    double smooth_eps = 8.0;
    OutputOptions smooth_out;
    smooth->add_option("--shape", smooth_shape, "pyramid | roof | lantern-patch | paraboloid")
        ->required();
    smooth->add_option("--grid", smooth_grid, "grid resolution N");
    smooth->add_option("--eps-mult", smooth_eps, "radius in grid spacings");
    smooth->add_option("--densities-out", smooth_densities,
                       "prefix for xi0/xi1/xi2 CSV matrix dumps");
    detail_cli::add_output_options(smooth, smooth_out);

    // proptest
    auto* prop = app.add_subcommand("proptest", "seeded randomized property suites");
    std::string prop_suite;
    int prop_trials = 100;
    std::uint64_t prop_seed = 0;
    OutputOptions prop_out;
    prop->add_option("--suite", prop_suite, "envelope | measures | curves")->required();
    prop->add_option("--trials", prop_trials, "number of trials");
    prop->add_option("--seed", prop_seed, "RNG seed");
    detail_cli::add_output_options(prop, prop_out);

    std::vector<char*> argv;
    std::string prog = "polycurv";
    argv.push_back(prog.data());
    for (auto& a : args) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    const auto t0 = std::chrono::steady_clock::now();
    int rc = 1;
    try {
        if (curve->parsed()) {
            if (cantor_level < 0 && curve_input.empty())
                throw invalid_argument_error("curve: need --input or --cantor-level");
            rc = run_curve(curve_input, cantor_level, closed, curve_out);
        } else if (mesh->parsed()) {
            rc = run_mesh_energy(mesh_input, mesh_graph, mesh_edges_out, mesh_vertices_out,
                                 mesh_out);
        } else if (env->parsed()) {
            rc = run_envelope(env_input, env_out);
        } else if (meas->parsed()) {
            rc = run_edge_measures(meas_input, meas_edges_out, meas_out);
        } else if (lan->parsed()) {
            rc = run_lantern(lan_params, lan_out);
        } else if (sweep->parsed()) {
            std::vector<int> ns;
            std::stringstream ss(sweep_nlist);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) ns.push_back(std::stoi(item));
            if (ns.empty()) throw invalid_argument_error("empty --n-list");
            rc = run_lantern_sweep(sweep_mode, ns, sweep_radius, sweep_height, sweep_jobs,
                                   sweep_out);
        } else if (lv->parsed()) {
            rc = run_lantern_vertex(lv_m, lv_n, lv_out);
        } else if (prism->parsed()) {
            rc = run_prism(prism_params, prism_out);
        } else if (smooth->parsed()) {
            rc = run_smooth_check(smooth_shape, smooth_grid, smooth_eps, smooth_densities,
                                  smooth_out);
        } else if (prop->parsed()) {
            rc = run_proptest(prop_suite, prop_trials, prop_seed, prop_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    const auto t1 = std::chrono::steady_clock::now();
    std::cerr << "# wall_time_s="
              << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() / 1000.0
              << "\n";
    return rc;
}

}  // namespace polycurv::cli

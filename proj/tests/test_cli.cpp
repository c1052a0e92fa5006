#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "polycurv/cli.hpp"

using namespace polycurv;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path tmp(const std::string& name) { return fs::temp_directory_path() / name; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("curve subcommand") {
    SUBCASE("csv input with closed flag") {
        const auto in = tmp("polycurv_square.csv");
        std::ofstream f(in);
        f << "x,y\n0,0\n1,0\n1,1\n0,1\n";
        f.close();
        const auto out = tmp("polycurv_curve_out.csv");
        const int rc = cli::dispatch(
            {"curve", "--input", in.string(), "--closed", "-o", out.string()});
        CHECK(rc == 0);
        const std::string text = slurp(out);
        CHECK(text.find("length,tc,tc_star,max_turning") == 0);
        std::istringstream rows(text.substr(text.find('\n') + 1));
        double len, tc;
        char comma;
        rows >> len >> comma >> tc;
        CHECK(len == doctest::Approx(4.0));
        CHECK(tc == doctest::Approx(2 * kPi));
        fs::remove(in);
        fs::remove(out);
    }
    SUBCASE("cantor level 6 report") {
        const auto out = tmp("polycurv_cantor.csv");
        const int rc = cli::dispatch({"curve", "--cantor-level", "6", "-o", out.string()});
        CHECK(rc == 0);
        const std::string text = slurp(out);
        const auto pos = text.rfind(',');
        const double max_turning = std::stod(text.substr(pos + 1));
        CHECK(max_turning == doctest::Approx(0.0078114).epsilon(1e-4));
        fs::remove(out);
    }
    SUBCASE("missing input is a usage error") {
        CHECK(cli::dispatch({"curve"}) == 1);
    }
}

TEST_CASE("mesh-energy subcommand") {
    SUBCASE("missing file exits 1") {
        CHECK(cli::dispatch({"mesh-energy", "--input", "/nonexistent/missing.off"}) == 1);
    }
    SUBCASE("lantern off round trip with dumps") {
        const auto off = tmp("polycurv_l44.off");
        save_off(build_lantern(LanternParams{1.0, 1.0, 4, 4}), off.string());
        const auto out = tmp("polycurv_energy.csv");
        const auto edges = tmp("polycurv_edges.csv");
        const auto verts = tmp("polycurv_verts.csv");
        const int rc = cli::dispatch({"mesh-energy", "--input", off.string(), "-o", out.string(),
                                      "--edges-out", edges.string(), "--vertices-out",
                                      verts.string()});
        CHECK(rc == 0);
        CHECK(slurp(out).find("area,e_h,e_h_tilde,e_k,e_k_tilde,total") == 0);
        CHECK(slurp(edges).find("edge_id,length,theta,sullivan") == 0);
        const std::string vtext = slurp(verts);
        CHECK(vtext.find("vertex_id,angle_sum,defect,class") == 0);
        CHECK(vtext.find("parabolic") != std::string::npos);
        for (const auto& p : {off, out, edges, verts}) fs::remove(p);
    }
}

TEST_CASE("unknown subcommand is a usage error") {
    CHECK(cli::dispatch({"frobnicate"}) == 1);
    CHECK(cli::dispatch({"lantern-sweep", "--mode", "m=n", "--n-list", "abc"}) == 1);
}

TEST_CASE("lantern-sweep determinism and parallel equivalence") {
    const auto out1 = tmp("polycurv_sweep1.csv");
    const auto out2 = tmp("polycurv_sweep2.csv");
    const auto out4 = tmp("polycurv_sweep4.csv");
    const std::vector<std::string> base{"lantern-sweep", "--mode", "n=m^2",
                                        "--n-list",      "4,6,8",  "-o"};
    auto run = [&](const fs::path& out, int jobs) {
        auto args = base;
        args.push_back(out.string());
        args.push_back("--jobs");
        args.push_back(std::to_string(jobs));
        return cli::dispatch(args);
    };
    CHECK(run(out1, 1) == 0);
    CHECK(run(out2, 1) == 0);
    CHECK(run(out4, 4) == 0);
    const std::string t1 = slurp(out1);
    CHECK(t1 == slurp(out2));  // same inputs: byte-identical
    CHECK(t1 == slurp(out4));  // parallel evaluation: identical content
    CHECK(t1.find("n,m,area,f1,f2,e_k,defect_max") == 0);
    for (const auto& p : {out1, out2, out4}) fs::remove(p);
}

TEST_CASE("area column converges to 2 pi in mode m=n^2") {
    const auto out = tmp("polycurv_sweep_area.csv");
    CHECK(cli::dispatch({"lantern-sweep", "--mode", "m=n^2", "--n-list", "10,20,40", "-o",
                         out.string()}) == 0);
    std::istringstream in(slurp(out));
    std::string line;
    std::getline(in, line);  // header
    double prev_err = 1e9;
    while (std::getline(in, line)) {
        std::stringstream row(line);
        std::string cell;
        std::getline(row, cell, ',');  // n
        std::getline(row, cell, ',');  // m
        std::getline(row, cell, ',');  // area
        const double err = std::abs(std::stod(cell) - 2 * kPi);
        CHECK(err < prev_err);
        prev_err = err;
    }
    CHECK(prev_err < 1e-5);
    fs::remove(out);
}

TEST_CASE("json and csv carry identical numbers") {
    const auto csv_out = tmp("polycurv_lv.csv");
    const auto json_out = tmp("polycurv_lv.json");
    CHECK(cli::dispatch({"lantern-vertex", "--m", "8", "--n", "8", "-o", csv_out.string()}) == 0);
    CHECK(cli::dispatch({"lantern-vertex", "--m", "8", "--n", "8", "-o", json_out.string(),
                         "--format", "json"}) == 0);
    // csv row
    std::istringstream in(slurp(csv_out));
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    std::vector<double> csv_vals;
    std::stringstream rs(row);
    std::string cell;
    while (std::getline(rs, cell, ',')) csv_vals.push_back(std::stod(cell));
    // json row
    const auto j = nlohmann::json::parse(slurp(json_out));
    const auto jrow = j["rows"][0];
    REQUIRE(jrow.size() == csv_vals.size());
    for (std::size_t i = 0; i < csv_vals.size(); ++i)
        CHECK(jrow[i].get<double>() == csv_vals[i]);
    fs::remove(csv_out);
    fs::remove(json_out);
}

TEST_CASE("prism subcommand asserts exactness") {
    const auto out = tmp("polycurv_prism.csv");
    CHECK(cli::dispatch({"prism", "--n", "12", "--slices", "2", "-o", out.string()}) == 0);
    fs::remove(out);
}

TEST_CASE("envelope subcommand") {
    const auto in = tmp("polycurv_normals.csv");
    {
        // an upper-hemisphere star with tile angles summing to 2 pi
        std::ofstream f(in);
        f << "nx,ny,nz,theta\n";
        for (int i = 0; i < 3; ++i) {
            const double a = 2 * kPi * i / 3;
            const Vec3 n = Vec3{0.4 * std::cos(a), 0.4 * std::sin(a), 1.0}.normalized();
            f << detail::fmt17(n.x) << ',' << detail::fmt17(n.y) << ',' << detail::fmt17(n.z)
              << ',' << detail::fmt17(2 * kPi / 3) << "\n";
        }
    }
    const auto out = tmp("polycurv_env.csv");
    CHECK(cli::dispatch({"envelope", "--input", in.string(), "-o", out.string()}) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("k,area,theta_sum,bound,ok") == 0);
    std::istringstream rows(text.substr(text.find('\n') + 1));
    std::string cell;
    std::getline(rows, cell, ',');
    CHECK(std::stod(cell) == 3.0);
    std::getline(rows, cell, ',');
    CHECK(std::stod(cell) > 0.0);
    std::getline(rows, cell, ',');
    CHECK(std::stod(cell) == doctest::Approx(2 * kPi).epsilon(1e-12));
    fs::remove(in);
    fs::remove(out);
}

TEST_CASE("edge-measures subcommand") {
    const auto g = pyramid_graph_surface();
    const auto off = tmp("polycurv_pyr.off");
    save_off(g.lift(), off.string());
    const auto out = tmp("polycurv_meas.csv");
    const int rc = cli::dispatch(
        {"edge-measures", "--input", off.string(), "--graph", "-o", out.string()});
    CHECK(rc == 0);
    const std::string text = slurp(out);
    CHECK(text.find("total_mass,e_h,rel_err") == 0);
    const auto last = text.rfind(',');
    CHECK(std::stod(text.substr(last + 1)) <= 1e-9);
    fs::remove(off);
    fs::remove(out);
}

TEST_CASE("proptest subcommand") {
    CHECK(cli::dispatch({"proptest", "--suite", "curves", "--trials", "50", "--seed", "3"}) == 0);
    CHECK(cli::dispatch({"proptest", "--suite", "envelope", "--trials", "50"}) == 0);
    CHECK(cli::dispatch({"proptest", "--suite", "measures", "--trials", "5"}) == 0);
    CHECK(cli::dispatch({"proptest", "--suite", "nope"}) == 1);
}

TEST_CASE("smooth-check subcommand") {
    const auto out = tmp("polycurv_smooth.csv");
    const auto dens = tmp("polycurv_dens").string();
    CHECK(cli::dispatch({"smooth-check", "--shape", "roof", "--grid", "65", "--eps-mult", "4",
                         "-o", out.string(), "--densities-out", dens}) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("eps,A,F1,F2,slice_lhs,slice_rhs") == 0);
    int lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    CHECK(lines == 4);  // header + three radii
    for (const char* suffix : {"_xi0.csv", "_xi1.csv", "_xi2.csv"}) {
        const fs::path p = dens + suffix;
        CHECK(fs::exists(p));
        fs::remove(p);
    }
    fs::remove(out);
}

TEST_CASE("failed mathematical assertion exits 2") {
    // an envelope whose declared tile angles cannot carry its area
    const auto in = tmp("polycurv_badbound.csv");
    {
        std::ofstream f(in);
        f << "nx,ny,nz,theta\n";
        for (int i = 0; i < 3; ++i) {
            const double a = 2 * kPi * i / 3;
            const Vec3 n = Vec3{0.5 * std::cos(a), 0.5 * std::sin(a), 1.0}.normalized();
            f << detail::fmt17(n.x) << ',' << detail::fmt17(n.y) << ',' << detail::fmt17(n.z)
              << ",1e-9\n";
        }
    }
    CHECK(cli::dispatch({"envelope", "--input", in.string()}) == 2);
    fs::remove(in);
}

}  // TEST_SUITE

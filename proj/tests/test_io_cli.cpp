#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pswkb/pswkb.hpp"

using namespace pswkb;
using Catch::Approx;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("pswkb_test_" + std::to_string(std::rand()) + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
};

int run_cli(const std::string& args) {
    const std::string cmd = std::string(PSWKB_CLI_PATH) + " " + args + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("deterministic float formatting") {
    CHECK(format_double(8.5) == "8.5");
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
    // round trip through the parser is exact
    for (double v : {1.2345678901234567e-12, -3.9999999999999996, 17.0, 8.5e300}) {
        const std::string s = format_double(v);
        double back = 0.0;
        std::sscanf(s.c_str(), "%lf", &back);
        CHECK(back == v);
    }
}

TEST_CASE("field file header round trip") {
    TempDir tmp;
    const auto path = (tmp.path / "field.csv").string();
    Grid1D g(-2.0, 3.0, 17);
    json h;
    h["schema"] = 1;
    h["grid_x"] = grid_to_json(g);
    write_field_csv(path, h, {{1.0, 2.0}, {3.0, 0.25}});
    FieldFile f = read_field_csv(path);
    Grid1D back = grid_from_json(f.header["grid_x"]);
    CHECK(back.same_as(g));
    REQUIRE(f.rows.size() == 2);
    CHECK(f.rows[1][1] == 0.25);
}

TEST_CASE("cli: oscillator energy table") {
    TempDir tmp;
    const auto out = (tmp.path / "energies.csv").string();
    REQUIRE(run_cli("energies --potential harmonic --n 8 --out " + out) == 0);
    FieldFile f = read_field_csv(out);
    REQUIRE(f.rows.size() == 9);
    CHECK(f.rows[0][0] == 0.0);
    CHECK(f.rows[0][1] == Approx(0.5).margin(1e-10));
    CHECK(f.rows[8][0] == 8.0);
    CHECK(f.rows[8][1] == Approx(8.5).margin(1e-9));
    // printed representation of the closed-form values
    const std::string text = slurp(out);
    CHECK(text.find("8,8.5") != std::string::npos);
    CHECK(text.find("0,0.5") != std::string::npos);
}

TEST_CASE("cli: exact wave matches the library oracle") {
    TempDir tmp;
    const auto out = (tmp.path / "wave.csv").string();
    REQUIRE(run_cli("wave --potential harmonic --n 8 --source exact --grid -6:6:121 --out " +
                    out) == 0);
    FieldFile f = read_field_csv(out);
    REQUIRE(f.rows.size() == 121);
    Grid1D g(-6.0, 6.0, 121);
    for (std::size_t i = 0; i < g.size(); i += 10) {
        CHECK(f.rows[i][0] == Approx(g.node(i)).margin(1e-12));
        CHECK(f.rows[i][1] == Approx(hermite_wave(8, g.node(i), PhysParams{})).margin(1e-12));
        CHECK(f.rows[i][2] == 0.0);
    }
}

TEST_CASE("cli: deterministic output across repeated runs") {
    TempDir tmp;
    const auto a = (tmp.path / "a.csv").string();
    const auto b = (tmp.path / "b.csv").string();
    const std::string args = "wigner --potential harmonic --n 2 --source exact "
                             "--grid -4:4:33,-4:4:33 --out ";
    REQUIRE(run_cli(args + a) == 0);
    REQUIRE(run_cli(args + b) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).size() > 1000);
}

TEST_CASE("cli: PT exact wigner reports the delta ridge in the header") {
    TempDir tmp;
    const auto out = (tmp.path / "pt.csv").string();
    REQUIRE(run_cli("wigner --potential poeschl_teller --k 6 --source exact "
                    "--grid -1:1:5,-8:-4:17 --out " +
                    out) == 0);
    FieldFile f = read_field_csv(out);
    CHECK(f.header["delta_coefficient"].get<double>() == Approx(35.0 / 37.0).epsilon(1e-12));
    CHECK(f.header["delta_location"].get<double>() == Approx(-6.0));

    const auto out2 = (tmp.path / "pt_ka.csv").string();
    REQUIRE(run_cli("wigner --potential poeschl_teller --k 1 --source exact "
                    "--grid -1:1:5,-3:-1:9 --out " +
                    out2) == 0);
    FieldFile f2 = read_field_csv(out2);
    CHECK(f2.header["delta_coefficient"].get<double>() == 0.0);
}

TEST_CASE("cli: residual report for the exact oscillator field") {
    TempDir tmp;
    const auto out = (tmp.path / "residual.json").string();
    REQUIRE(run_cli("residual --potential harmonic --n 8 --source exact "
                    "--grid -8:8:257,-8:8:257 --out " +
                    out) == 0);
    std::ifstream is(out);
    json j = json::parse(is);
    CHECK(j["r_eigen"].get<double>() < 1e-6);
    CHECK(j["r_bracket"].get<double>() < 1e-7);
    CHECK(j["energy"].get<double>() == Approx(8.5));
}

TEST_CASE("cli: exit codes and error tokens") {
    TempDir tmp;
    // config error: PT requires k
    CHECK(run_cli("wave --potential poeschl_teller --source exact --out " +
                  (tmp.path / "x.csv").string()) == 2);
    // config error: unknown potential kind
    CHECK(run_cli("energies --potential coulomb --n 1 --out " + (tmp.path / "y.csv").string()) ==
          2);
    // numerical failure: quantisation impossible for the scattering potential
    CHECK(run_cli("energies --potential poeschl_teller --k 2 --n 1 --out " +
                  (tmp.path / "z.csv").string()) == 3);
    // coverage error: WKB wave requested on a fully decayed window
    CHECK(run_cli("wave --potential harmonic --n 8 --source wkb --grid 100:110:33 --out " +
                  (tmp.path / "w.csv").string()) == 2);
    // order guard
    CHECK(run_cli("wave --potential harmonic --n 8 --source wkb --order 5 --out " +
                  (tmp.path / "v.csv").string()) == 2);
}

TEST_CASE("cli: component fields add up") {
    TempDir tmp;
    const auto full = (tmp.path / "full.csv").string();
    const auto noint = (tmp.path / "noint.csv").string();
    const auto inter = (tmp.path / "inter.csv").string();
    const std::string base = "wigner --potential harmonic --n 8 --source wkb "
                             "--grid -6:6:25,-6:6:25 ";
    REQUIRE(run_cli(base + "--component full --out " + full) == 0);
    REQUIRE(run_cli(base + "--component no-interference --out " + noint) == 0);
    REQUIRE(run_cli(base + "--component interference --out " + inter) == 0);
    FieldFile ff = read_field_csv(full), fn = read_field_csv(noint), fi = read_field_csv(inter);
    REQUIRE(ff.rows.size() == fn.rows.size());
    REQUIRE(ff.rows.size() == fi.rows.size());
    double worst = 0.0, peak = 0.0;
    for (std::size_t r = 0; r < ff.rows.size(); ++r) {
        worst = std::max(worst, std::abs(fn.rows[r][2] + fi.rows[r][2] - ff.rows[r][2]));
        peak = std::max(peak, std::abs(ff.rows[r][2]));
    }
    CHECK(worst <= 1e-10 * peak);
}

#include "qpwh/cliutil.hpp"
#include "qpwh/errors.hpp"
#include "qpwh/portrait.hpp"
#include "qpwh/radlow.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

using namespace qpwh;

namespace {

namespace fs = std::filesystem;

std::string read_all(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch_dir()
{
    fs::path d = fs::temp_directory_path() / "qpwh_cli_test";
    fs::create_directories(d);
    return d;
}

// Runs the CLI with stdout captured to a file; returns the exit status.
int run_cli(const std::string& args, std::string* out = nullptr)
{
    fs::path log = scratch_dir() / "stdout.txt";
    std::string cmd = std::string("\"") + QPWH_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
    int status = std::system(cmd.c_str());
    if (out)
        *out = read_all(log);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string format_complex(cplx v)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", v.real(), v.imag());
    return buf;
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("angle parsing")
    {
        CHECK(parse_angle("pi/4") == doctest::Approx(pi / 4.0));
        CHECK(parse_angle("-3pi/4") == doctest::Approx(-3.0 * pi / 4.0));
        CHECK(parse_angle("3*pi/4") == doctest::Approx(3.0 * pi / 4.0));
        CHECK(parse_angle("2pi") == doctest::Approx(2.0 * pi));
        CHECK(parse_angle("PI") == doctest::Approx(pi));
        CHECK(parse_angle("0.7853981633974483") == 0.7853981633974483);
        CHECK_THROWS(parse_angle("pi/0"));
        CHECK_THROWS(parse_angle("quarter"));
    }

    TEST_CASE("point, window and resolution parsing")
    {
        ContourSpec c1 = ContourSpec::defaults(Plane::alpha1), c2 = ContourSpec::defaults(Plane::alpha2);
        CHECK(parse_point("1.5,-2", c1, c2) == cplx(1.5, -2.0));
        CHECK(parse_point("-0.25", c1, c2) == cplx(-0.25, 0.0));
        CHECK(parse_point("A1:10", c1, c2) == contour_point(c1, 10.0));
        CHECK(parse_point("A2:-5", c1, c2) == contour_point(c2, -5.0));
        CHECK_THROWS(parse_point("1,2,3", c1, c2));
        CHECK_THROWS(parse_point("A3:1", c1, c2));
        CHECK(parse_complex("0,1000") == cplx(0.0, 1000.0));
        CHECK_THROWS(parse_complex("1"));
        Window w = parse_window("-4,4,-1,2");
        CHECK(w.re_min == -4.0);
        CHECK(w.im_max == 2.0);
        CHECK_THROWS(parse_window("1,1,0,1"));
        CHECK(parse_resolution("400") == std::pair<int, int>{400, 400});
        CHECK(parse_resolution("640x480") == std::pair<int, int>{640, 480});
        CHECK_THROWS(parse_resolution("1"));
        CHECK_THROWS(parse_resolution("axb"));
    }

    TEST_CASE("config text and run config")
    {
        auto kv = parse_config_text("# comment\nk = 2.5\n\ncontour_a = 0.0012,0.0006  # trailing\ntail_policy=truncate\n");
        CHECK(kv.size() == 3);
        CHECK(kv.at("k") == "2.5");
        CHECK(kv.at("contour_a") == "0.0012,0.0006");
        CHECK_THROWS(parse_config_text("just words\n"));

        RunConfig rc;
        rc.apply(kv);
        CHECK(rc.k == 2.5);
        CHECK(rc.contour1.a == cplx(0.0012, 0.0006));
        CHECK(rc.contour2.a == cplx(0.0012, 0.0006));
        CHECK(rc.quadrature.tail_policy == TailPolicy::truncate);
        rc.apply({{"abs_tol", "1e-9"}, {"max_subdivisions", "80"}, {"eps", "0.1"}, {"eps_shift", "1e-8"}});
        CHECK(rc.quadrature.abs_tol == 1e-9);
        CHECK(rc.quadrature.max_subdivisions == 80);
        CHECK(rc.eps == 0.1);
        CHECK(rc.eps_shift == 1e-8);
        CHECK_THROWS(rc.apply({{"colour", "red"}}));

        fs::path f = scratch_dir() / "run.cfg";
        std::ofstream(f) << "k = 1\nrel_tol = 1e-7\n";
        auto loaded = load_config_file(f.string());
        CHECK(loaded.at("rel_tol") == "1e-7");
        CHECK_THROWS(load_config_file((scratch_dir() / "missing.cfg").string()));
    }

    TEST_CASE("startup validation accepts defaults and rejects a mirrored indentation")
    {
        RunConfig good;
        ValidationReport rep = validate_run_config(good);
        CHECK(rep.sign_min >= -1e-10);
        CHECK(rep.loci_margin > 0.25);
        RunConfig bad;
        bad.contour1.a = bad.contour2.a = -cplx(0.0012, 0.0006);
        CHECK_THROWS_AS(validate_run_config(bad), ContourError);
    }

    TEST_CASE("factor subcommand matches library calls")
    {
        FactorEngine e(3.0, ContourSpec::defaults(Plane::alpha1), ContourSpec::defaults(Plane::alpha2));
        std::string out;
        REQUIRE(run_cli("factor --label pp --alpha1 A1:10 --alpha2 0.5,0.8", &out) == 0);
        SpectralPoint p{contour_point(e.contour1(), 10.0), cplx(0.5, 0.8)};
        FactorValue v = e.continue_factor(FactorLabel::PP, p);
        CHECK(out == format_complex(v.value) + " route=" + to_string(v.route) + "\n");

        REQUIRE(run_cli("factor --label mm --alpha1=-1.5,0 --alpha2=-1.5,0", &out) == 0);
        v = e.continue_factor(FactorLabel::MM, {-1.5, -1.5});
        CHECK(out == format_complex(v.value) + " route=" + to_string(v.route) + "\n");
    }

    TEST_CASE("diffcoef subcommand matches library calls")
    {
        fs::path csv = scratch_dir() / "arc.csv";
        REQUIRE(run_cli("diffcoef --theta0 pi/4 --phi0=-3pi/4 --phi pi --n-theta 7 --out " + csv.string()) == 0);
        FactorEngine e(3.0, ContourSpec::defaults(Plane::alpha1), ContourSpec::defaults(Plane::alpha2));
        RadlowModel m(e, make_incidence(pi / 4.0, -3.0 * pi / 4.0, 3.0));
        std::ostringstream os;
        write_csv(m.arc_sweep(pi, 7), os);
        CHECK(read_all(csv) == os.str());

        fs::path dir = scratch_dir() / "arcs";
        fs::remove_all(dir);
        REQUIRE(run_cli("diffcoef --theta0 pi/4 --phi0=-3pi/4 --phi 0 --phi pi/2 --n-theta 3 --out " + dir.string()) == 0);
        CHECK(fs::exists(dir / "arc_0.csv"));
        CHECK(fs::exists(dir / "arc_1.csv"));
    }

    TEST_CASE("portrait subcommand matches library calls")
    {
        fs::path ppm = scratch_dir() / "p.ppm";
        REQUIRE(run_cli("portrait --function kappa --window=-4,4,-4,4 --res 24x16 --out " + ppm.string()) == 0);
        FunctionParams fp;
        PortraitSpec s;
        s.window = {-4.0, 4.0, -4.0, 4.0};
        s.width = 24;
        s.height = 16;
        CHECK(read_all(ppm) == encode_ppm(render(s, make_function("kappa", fp))));
    }

    TEST_CASE("bad arguments fail with a message")
    {
        std::string out;
        CHECK(run_cli("factor --label zz --alpha1 0,0 --alpha2 0,0", &out) != 0);
        CHECK(run_cli("portrait --function nope --out " + (scratch_dir() / "x.ppm").string(), &out) != 0);
        CHECK(out.find("error") != std::string::npos);
        CHECK(run_cli("factor --label pp --alpha1 0,0 --alpha2 0.5,0.5 --contour-a=-0.0012,-0.0006", &out) != 0);
        fs::remove_all(scratch_dir());
    }
}

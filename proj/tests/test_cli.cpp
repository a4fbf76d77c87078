#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "revolve/cli.hpp"

using namespace revolve::cli;
using json = nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = main_entry(args, out, err);
    return {code, out.str(), err.str()};
}

const std::vector<std::string> example{"volume", "--curve", "x/pi + sin(x)", "--interval", "0", "2*pi"};

std::vector<std::string> with(std::vector<std::string> base, std::initializer_list<std::string> extra) {
    base.insert(base.end(), extra);
    return base;
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("example volume as json") {
        const auto r = run_cli(with(example, {"--json"}));
        REQUIRE(r.code == exit_ok);
        const auto j = json::parse(r.out);
        for (const char* key : {"value", "method", "sign_factor", "error_estimate", "partition", "cross_checks",
                                "warnings", "converged"})
            CHECK(j.contains(key));
        CHECK(j["value"].get<double>() == doctest::Approx(122.161822085156954943).epsilon(1e-12));
        CHECK(j["method"] == "theorem2");
        CHECK(j["partition"]["breakpoints"].size() == 4);
        CHECK(j["cross_checks"].size() == 4);
    }

    TEST_CASE("json output is byte-identical across runs") {
        const auto a = run_cli(with(example, {"--json"}));
        const auto b = run_cli(with(example, {"--json"}));
        CHECK(a.out == b.out);
    }

    TEST_CASE("text output") {
        const auto r = run_cli(example);
        CHECK(r.code == exit_ok);
        CHECK(r.out.find("122.161822085") != std::string::npos);
    }

    TEST_CASE("hypothesis violations exit with 2") {
        const auto r = run_cli({"volume", "--curve", "1 + sin(x)", "--interval", "0", "3*pi/2"});
        CHECK(r.code == exit_hypothesis);
        CHECK_FALSE(r.err.empty());
        const auto v = run_cli({"verify", "--curve", "1 + sin(x)", "--interval", "0", "3*pi/2", "--json"});
        CHECK(v.code == exit_hypothesis);
        const auto j = json::parse(v.out);
        CHECK(j["satisfied"] == false);
        CHECK(j["violations"][0]["rule"] == "multiple-intersection");
    }

    TEST_CASE("verify succeeds on the example") {
        const auto r = run_cli({"verify", "--curve", "x/pi + sin(x)", "--interval", "0", "2*pi", "--json"});
        CHECK(r.code == exit_ok);
        CHECK(json::parse(r.out)["satisfied"] == true);
    }

    TEST_CASE("partition report") {
        const auto r = run_cli({"partition", "--curve", "x/pi + sin(x)", "--interval", "0", "2*pi", "--json"});
        REQUIRE(r.code == exit_ok);
        const auto j = json::parse(r.out);
        CHECK(j["interior_count"] == 2);
        CHECK(j["lemma1"]["even"] == true);
    }

    TEST_CASE("usage errors exit with 1") {
        CHECK(run_cli({"volume", "--curve", "x", "--interval", "0", "1", "--frobnicate"}).code == exit_usage);
        CHECK(run_cli({"volume", "--curve", "x", "--interval", "2", "1"}).code == exit_usage);
        CHECK(run_cli({"volume", "--curve", "x", "--interval", "0", "oops"}).code == exit_usage);
        CHECK(run_cli({"volume", "--curve", "x + +", "--interval", "0", "1"}).code == exit_usage);
        CHECK(run_cli({"volume", "--curve", "x", "--interval", "0", "1", "--axis", "z"}).code == exit_usage);
        CHECK(run_cli({"volume", "--curve", "x", "--interval", "0", "1", "--method", "theorem3"}).code == exit_usage);
        CHECK(run_cli({"volume", "--interval", "0", "1"}).code == exit_usage);
        CHECK(run_cli({}).code == exit_usage);
    }

    TEST_CASE("numeric failures exit with 3") {
        CHECK(run_cli({"volume", "--curve", "arccos(x - 1)", "--interval", "0", "3", "--method", "shell"}).code ==
              exit_numeric);
    }

    TEST_CASE("parameters") {
        const auto r = run_cli({"volume", "--curve", "y - eps*sin(y)", "--var", "y", "--param", "eps=0.5",
                                "--interval", "0", "2*pi", "--axis", "x", "--json"});
        REQUIRE(r.code == exit_ok);
        CHECK(json::parse(r.out)["value"].get<double>() == doctest::Approx(240.018367288494449).epsilon(1e-12));
        CHECK(run_cli({"volume", "--curve", "y - eps*sin(y)", "--var", "y", "--interval", "0", "1"}).code ==
              exit_usage);
    }

    TEST_CASE("role follows the variable name") {
        const auto about_y = run_cli({"volume", "--curve", "y - eps*sin(y)", "--var", "y", "--param", "eps=0.5",
                                      "--interval", "0", "2*pi", "--axis", "y", "--json"});
        REQUIRE(about_y.code == exit_ok);
        const auto j = json::parse(about_y.out);
        CHECK(j["method"] == "disk");
        CHECK(j["value"].get<double>() == doctest::Approx(281.964185993124223).epsilon(1e-12));
        const auto forced = run_cli({"volume", "--curve", "y - eps*sin(y)", "--var", "y", "--param", "eps=0.5",
                                     "--interval", "0", "2*pi", "--axis", "y", "--role", "y-of-x", "--json"});
        REQUIRE(forced.code == exit_ok);
        CHECK(json::parse(forced.out)["method"] == "theorem2");
    }

    TEST_CASE("csv samples") {
        const auto path = std::filesystem::temp_directory_path() / "revolve_cli_test.csv";
        const auto r = run_cli(with(example, {"--csv", path.string(), "--samples", "64"}));
        REQUIRE(r.code == exit_ok);
        std::ifstream in(path);
        int rows = 0;
        for (std::string line; std::getline(in, line);) ++rows;
        CHECK(rows == 65);
        std::filesystem::remove(path);
    }

    TEST_CASE("kepler subcommand") {
        const auto r = run_cli({"kepler", "--eps", "0.5", "--invert", "1", "--json"});
        REQUIRE(r.code == exit_ok);
        const auto j = json::parse(r.out);
        CHECK(j.dump().find("1.4987011335") != std::string::npos);
        CHECK(run_cli({"kepler", "--eps", "1.5"}).code == exit_usage);
    }

    TEST_CASE("tolerance from the environment") {
        ::setenv("REVOLVE_DEFAULT_TOL", "1e-6", 1);
        RunConfig env_cfg;
        std::ostringstream out, err;
        CHECK_FALSE(parse_args(example, env_cfg, out, err).has_value());
        CHECK(env_cfg.tol.rel_tol == 1e-6);
        RunConfig flag_cfg;
        CHECK_FALSE(parse_args(with(example, {"--rel-tol", "1e-9"}), flag_cfg, out, err).has_value());
        CHECK(flag_cfg.tol.rel_tol == 1e-9);
        ::setenv("REVOLVE_DEFAULT_TOL", "bogus", 1);
        CHECK(run_cli(example).code == exit_usage);
        ::unsetenv("REVOLVE_DEFAULT_TOL");
    }
}

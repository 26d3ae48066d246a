#include "doctest.h"

#include <cmath>
#include <sstream>

#include "conespec/config.hpp"
#include "conespec/errors.hpp"
#include "json.hpp"

using namespace conespec;
using nlohmann::json;

namespace {

const double pi = 3.14159265358979323846;

const char* bessel = R"({
  "space": {"factors": [{"link_dim": 1, "exponent": {"num": 1, "den": 1}}]},
  "complex": {"kind": "de_rham", "W": "min", "B": "D"},
  "modes": {"explicit": [{"mu": [0.0], "multidegree": [0], "key": "m0"}], "form_types": ["E"]},
  "solver": {"n_eigen": 4}
})";

const char* flat = R"({
  "space": {"factors": [{"link_dim": 2, "exponent": 1, "torus_lengths": [1.0, 1.0]}]},
  "modes": {"explicit": [{"mu": [0.0], "multidegree": [1], "key": "flat"}], "form_types": ["E"]},
  "solver": {"n_eigen": 5}
})";

const char* witten = R"({
  "space": {"factors": [{"link_dim": 2, "exponent": 1, "torus_lengths": [1.0, 1.0]}]},
  "modes": {"explicit": [{"mu": [0.0], "multidegree": [1], "key": "line"}], "form_types": ["E"]},
  "witten": {"h": {"kind": "power_law", "c": 1}, "epsilons": [1.0, 2.0], "K": -1},
  "solver": {"n_eigen": 3}
})";

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(text);
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cells.push_back(c);
        rows.push_back(cells);
    }
    return rows;
}

json dolbeault(const std::string& basis) {
    return json::parse(R"({"space": {"factors": [{"link_dim": 1, "exponent": 1}]},
                           "complex": {"kind": "dolbeault"}, "cohomology": )" + basis + "}");
}

std::string supertrace_of(const std::string& pieces) {
    RunConfig cfg = parse_config(R"({"space": {"factors": [{"link_dim": 1, "exponent": 1}]},
                                     "supertrace": {"pieces": )" + pieces + "}}");
    auto r = cmd_supertrace(cfg);
    REQUIRE(r.exit_code == 0);
    return json::parse(r.text).at("character").get<std::string>();
}

const std::string todd = R"({"todd": {"nu": {"lattice": {"shift": 0, "step": 1}}}})";
const std::string todd_inv = R"({"todd": {"nu": {"lattice": {"shift": 0, "step": 1}}}, "invert": true})";
const std::string chi_minus = R"({"todd": {"nu": {"lattice": {"step": 1}}},
    "canonical": {"nu": {"lattice": {"step": 1}}, "complex": {"kind": "dolbeault", "twist_shift": 1}}, "y": -1})";

}  // namespace

TEST_CASE("config round trip") {
    for (const char* text : {bessel, flat, witten}) {
        RunConfig a = parse_config(text);
        RunConfig b = parse_config(dump_config(a));
        CHECK(a == b);
        CHECK(dump_config(a) == dump_config(b));
    }
    RunConfig c = parse_config(dolbeault(R"({"nu": {"lattice": {"shift": {"num": 1, "den": 2}, "step": 1}},
                                             "window": {"lo": -3, "hi": 3}})").dump());
    CHECK(c == parse_config(dump_config(c)));
    REQUIRE(c.cohomology);
    CHECK(c.cohomology->nu.lattice->shift == make_rational(1, 2));
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse_config("{"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"modes": {}})"), ConfigError);
    json j = json::parse(bessel);
    j["colour"] = 1;
    CHECK_THROWS_AS(parse_config(j.dump()), ConfigError);
    j = json::parse(bessel);
    j["space"]["factors"][0]["exponent"] = json{{"num", 1}, {"den", 0}};
    CHECK_THROWS_AS(parse_config(j.dump()), ConfigError);
    j = json::parse(bessel);
    j["space"]["factors"][0]["exponent"] = 0.5;
    CHECK_THROWS_AS(parse_config(j.dump()), ConfigError);
    j = json::parse(bessel);
    j["modes"]["form_types"] = {"Q"};
    CHECK_THROWS_AS(parse_config(j.dump()), ConfigError);
    j = json::parse(witten);
    j["witten"]["epsilons"] = {2.0, 1.0};
    CHECK(run_command("spectrum", parse_config(j.dump()), 1).exit_code == 2);
    CHECK(run_command("frobnicate", parse_config(bessel), 1).exit_code == 2);
}

TEST_CASE("spectrum tables") {
    auto r = cmd_spectrum(parse_config(bessel));
    REQUIRE(r.exit_code == 0);
    CHECK(r.text.rfind("mode_key,form_type,index,lambda_sq,residual\n", 0) == 0);
    auto rows = csv_rows(r.text);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0][0] == "m0");
    CHECK(rows[0][1] == "E");
    CHECK(std::sqrt(std::stod(rows[0][3])) == doctest::Approx(2.404826).epsilon(1e-6));

    rows = csv_rows(cmd_spectrum(parse_config(flat)).text);
    REQUIRE(rows.size() == 5);
    for (int k = 0; k < 5; ++k) CHECK(std::abs(std::stod(rows[k][3]) - std::pow(k * pi, 2)) < 1e-6 * (1 + k * k * 10));

    rows = csv_rows(cmd_spectrum(parse_config(witten)).text);
    REQUIRE(rows.size() == 6);
    for (int i = 0; i < 6; ++i) {
        double eps = i < 3 ? 1.0 : 2.0;
        CHECK(rows[i][0] == (i < 3 ? "line;eps=1" : "line;eps=2"));
        CHECK(std::abs(std::stod(rows[i][3]) - 4 * eps * (i % 3)) < 1e-6);
    }

    json j = json::parse(bessel);
    j["output"] = {{"format", "json"}};
    json out = json::parse(cmd_spectrum(parse_config(j.dump())).text);
    CHECK(out.at("spectra").size() == 1);
}

TEST_CASE("cohomology listings") {
    auto disc = json::parse(cmd_cohomology(parse_config(dolbeault(R"({"nu": {"lattice": {"step": 1}}})").dump())).text);
    CHECK(disc["basis"]["admissible_nu"]["kind"] == "all_ge");
    CHECK(disc["basis"]["admissible_nu"]["bound"] == "0");

    json cusp = dolbeault(R"({"nu": {"lattice": {"step": {"num": 1, "den": 2}}}, "lambda_per_nu": 2})");
    cusp["complex"]["W"] = "max";
    auto c = json::parse(cmd_cohomology(parse_config(cusp.dump())).text);
    CHECK(c["basis"]["admissible_nu"]["bound"] == "-1/2");

    RunConfig t4 = parse_config(R"({"space": {"factors": [{"link_dim": 4, "exponent": 1, "torus_lengths": [1,1,1,1]}]},
                                    "modes": {"torus": {"degree_lo": 0, "degree_hi": 4, "mu_cutoff": 0}}})");
    auto d = json::parse(cmd_cohomology(t4).text);
    REQUIRE(d["degrees"].size() == 5);
    CHECK(d["degrees"][1]["rank"] == 4);
}

TEST_CASE("supertrace strings") {
    CHECK(supertrace_of("[" + todd + "]") == "1/(1 − λ)");
    CHECK(supertrace_of("[" + todd + "," + todd_inv + "]") == "1");
    CHECK(supertrace_of("[" + chi_minus + "]") == "1");
    const std::string spin =
        R"({"todd": {"nu": {"lattice": {"shift": {"num": 1, "den": 2}}}, "complex": {"kind": "dolbeault", "twist_shift": {"num": 1, "den": 2}}}})";
    std::string spin_inv = spin;
    spin_inv.insert(spin_inv.size() - 1, R"(, "invert": true)");
    CHECK(supertrace_of("[" + spin + "]") == "λ^{1/2}/(1 − λ)");
    CHECK(supertrace_of("[" + spin + "," + spin_inv + "]") == "0");
}

TEST_CASE("verify exit codes and determinism") {
    RunConfig cfg = parse_config(R"({"space": {"factors": [{"link_dim": 1, "exponent": 1}]},
        "verify": {"which": "liouville", "fixtures": [{"B": 1, "mu": 1.0}], "n": 5}})");
    auto r = cmd_verify(cfg);
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.text)["pass"] == true);
    CHECK(cmd_verify(cfg, 2).text == r.text);

    json bad = json::parse(R"({"space": {"factors": [{"link_dim": 1, "exponent": 1}]}, "verify": {"which": "everything"}})");
    CHECK_THROWS_AS(parse_config(bad.dump()), ConfigError);

    RunConfig sp = parse_config(flat);
    CHECK(cmd_spectrum(sp, 1).text == cmd_spectrum(sp, 3).text);
}

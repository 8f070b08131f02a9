// SPDX-License-Identifier: Apache-2.0
//
// Serialization round-trips and end-to-end CLI behavior (exit codes,
// determinism, format switches). CLI tests shell out to the built binary.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "gausspulse/gausspulse.hpp"

using namespace gausspulse;
using Catch::Matchers::WithinAbs;

namespace {
const PulseParams ref(1.0, 1.0);

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    REQUIRE(is.good());
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

#ifdef GAUSSPULSE_CLI_PATH
int run_cli(const std::string& args) {
    const std::string cmd = std::string(GAUSSPULSE_CLI_PATH) + " " + args + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}
#endif
} // namespace

TEST_CASE("filter JSON round-trip preserves the frequency response exactly") {
    for (auto build : {build_H1, build_H2, build_H3, build_H4}) {
        const auto f = build(ref, 8);
        const auto j = filter_to_json(f, ref);
        const auto g = filter_from_json(nlohmann::json::parse(j.dump()));
        for (int k = 0; k < 64; ++k) {
            const double th = 2.0 * std::numbers::pi * k / 64.0;
            CHECK(std::abs(freq_response(f, th) - freq_response(g, th)) <= 1e-14);
        }
    }
}

TEST_CASE("JSON schema carries the provenance meta block") {
    const auto j = filter_to_json(build_H2(ref, 2), ref);
    CHECK(j["meta"]["beta"] == 1.0);
    CHECK(j["meta"]["lambda"] == 1.0);
    CHECK_THAT(j["meta"]["q"].get<double>(), WithinAbs(ref.q, 0.0));
    CHECK_THAT(j["meta"]["Q0"].get<double>(), WithinAbs(ref.Q0, 0.0));
    CHECK(j["meta"]["tool_version"] == tool_version);
    CHECK(j["data"].is_array());
}

TEST_CASE("signal serialization: real data only") {
    const SampledSignal s(0.0, 0.5, {1.0, 2.0, 3.0});
    const auto j = signal_to_json(s, ref);
    CHECK(j["data"].size() == 3);
    CHECK(j["data"][1]["x"] == 0.5);
    const SampledSignal bad(0.0, 1.0, {std::complex<double>(0.0, 1.0)});
    CHECK_THROWS_AS(signal_to_json(bad, ref), std::invalid_argument);
    const auto csv = signal_to_csv(s);
    CHECK(csv.rfind("x,value\n", 0) == 0);
}

TEST_CASE("coefficient serialization") {
    const auto c = coefficients_a(ref, 3);
    const auto j = coefficients_to_json(c, ref);
    CHECK(j["data"].size() == 4);
    CHECK(j["data"][0]["coefficient"] == 1.0);
    const auto csv = coefficients_to_csv(c);
    CHECK(csv.rfind("n,coefficient\n", 0) == 0);
}

TEST_CASE("report serialization omits runtime and is repeatable") {
    const auto r1 = run_suite(Suite::identities, ref, 9);
    const auto r2 = run_suite(Suite::identities, ref, 9);
    const auto j1 = reports_to_json(r1, ref).dump();
    const auto j2 = reports_to_json(r2, ref).dump();
    CHECK(j1 == j2);
    CHECK(j1.find("runtime") == std::string::npos);
}

#ifdef GAUSSPULSE_CLI_PATH

TEST_CASE("cli: pulse value at the origin is the delta peak") {
    const std::string out = "/tmp/gp_pulse_test.json";
    REQUIRE(run_cli("pulse --which phi_int --beta 1 --lambda 1 --grid-start 0 "
                    "--grid-step 0.5 --grid-count 3 -o " + out) == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j["data"][0]["x"] == 0.0);
    CHECK(j["data"][0]["value"] == 1.0);
    CHECK(j["meta"]["pulse"] == "phi_int");
}

TEST_CASE("cli: s0 and phi_int outputs differ below the regression threshold") {
    const std::string o1 = "/tmp/gp_s0.json", o2 = "/tmp/gp_pint.json";
    REQUIRE(run_cli("pulse --which s0 -o " + o1) == 0);
    REQUIRE(run_cli("pulse --which phi_int -o " + o2) == 0);
    const auto j1 = nlohmann::json::parse(slurp(o1));
    const auto j2 = nlohmann::json::parse(slurp(o2));
    REQUIRE(j1["data"].size() == j2["data"].size());
    double worst = 0.0;
    for (std::size_t i = 0; i < j1["data"].size(); ++i)
        worst = std::max(worst, std::abs(j1["data"][i]["value"].get<double>() -
                                         j2["data"][i]["value"].get<double>()));
    CHECK(worst < 1e-13);
}

TEST_CASE("cli: empty grid is a usage error") {
    CHECK(run_cli("pulse --which phi --grid-count 0") == 2);
}

TEST_CASE("cli: unsupported lambda*beta region rejected for pulse") {
    CHECK(run_cli("pulse --which phi --beta 1 --lambda 0.05") == 2);
    CHECK(run_cli("pulse --which phi --beta 8 --lambda 1") == 2);
}

TEST_CASE("cli: filter export H2 order 2 emits the pole pair") {
    const std::string out = "/tmp/gp_h2.json";
    REQUIRE(run_cli("filter --which H2 --order 2 -o " + out) == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    const auto poles = j["data"][0]["poles"].get<std::vector<double>>();
    REQUIRE(poles.size() == 2);
    CHECK_THAT(poles[0], WithinAbs(-0.77880, 1e-5));
    CHECK_THAT(poles[1], WithinAbs(-0.47237, 1e-5));
}

TEST_CASE("cli: coefficients order 0 emits exactly [1.0]") {
    const std::string out = "/tmp/gp_c0.json";
    REQUIRE(run_cli("filter --which coefficients --order 0 -o " + out) == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    REQUIRE(j["data"].size() == 1);
    CHECK(j["data"][0]["coefficient"] == 1.0);
}

TEST_CASE("cli: verify all passes and is byte-deterministic") {
    const std::string o1 = "/tmp/gp_v1.json", o2 = "/tmp/gp_v2.json";
    REQUIRE(run_cli("verify --suite all --beta 1 --lambda 1 --seed 3 -o " + o1) == 0);
    REQUIRE(run_cli("verify --suite all --beta 1 --lambda 1 --seed 3 -o " + o2) == 0);
    CHECK(slurp(o1) == slurp(o2));
    const auto j = nlohmann::json::parse(slurp(o1));
    CHECK(j["data"].size() >= 12);
}

TEST_CASE("cli: identities suite is scoped") {
    const std::string out = "/tmp/gp_ident.json";
    REQUIRE(run_cli("verify --suite identities -o " + out) == 0);
    for (const auto& row : nlohmann::json::parse(slurp(out))["data"])
        CHECK(row["check"].get<std::string>().rfind("identities/", 0) == 0);
}

TEST_CASE("cli: corrupted q injection is rejected with exit 2") {
    CHECK(run_cli("verify --suite identities --test-inject-q 1.5") == 2);
}

TEST_CASE("cli: reconstruction demo passes the bound") {
    const std::string out = "/tmp/gp_rec.json";
    REQUIRE(run_cli("reconstruct --f phi -o " + out) == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j["passed"] == true);
    const double err = j["error_sup"].get<double>();
    CHECK(err * err <= j["bound"].get<double>());
}

TEST_CASE("cli: zero input reconstructs to zero") {
    const std::string out = "/tmp/gp_rec0.json";
    REQUIRE(run_cli("reconstruct --f zero --grid-count 65 -o " + out) == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j["error_sup"] == 0.0);
    for (const auto& row : j["g_tilde"])
        CHECK(row["value"] == 0.0);
}

TEST_CASE("cli: offset flag exercises the offset path") {
    const std::string out = "/tmp/gp_reco.json";
    REQUIRE(run_cli("reconstruct --f mixture --component 1.0,0.5,1.2 --offset 0.3 -o " + out) == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j["meta"]["offset"] == 0.3);
    CHECK(j["passed"] == true);
    // half-sample offset hits the singular denominator: numeric failure
    CHECK(run_cli("reconstruct --f phi --offset 0.5") == 3);
}

TEST_CASE("cli: csv output format") {
    const std::string out = "/tmp/gp_pulse.csv";
    REQUIRE(run_cli("pulse --which phi --format csv --grid-count 5 -o " + out) == 0);
    CHECK(slurp(out).rfind("x,value\n", 0) == 0);
}

TEST_CASE("cli: bad flags give usage errors") {
    CHECK(run_cli("pulse --which not_a_pulse") == 2);
    CHECK(run_cli("transmogrify") == 2);
    CHECK(run_cli("filter --which H2 --order -3") == 2);
}

#endif // GAUSSPULSE_CLI_PATH

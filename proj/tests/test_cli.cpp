#include <doctest.h>

#include <sstream>

#include "tritangle/cli.hpp"
#include "tritangle/errors.hpp"

using namespace tritangle;
namespace cli = tritangle::cli;
using doctest::Approx;

#ifndef TRITANGLE_TEST_DATA
#error "TRITANGLE_TEST_DATA must point at tests/data"
#endif

namespace {

std::string data(const char* name) { return std::string(TRITANGLE_TEST_DATA) + "/" + name; }

PureState3 load(const char* name) {
    std::ostringstream warn;
    return cli::load_state_file(data(name), warn);
}

}  // namespace

TEST_CASE("state files round trip losslessly") {
    for (std::uint64_t n = 0; n < 20; ++n) {
        const PureState3 psi = haar_random(71, n);
        const std::string text = cli::state_to_json(psi).dump();
        std::ostringstream warn;
        const PureState3 back = cli::parse_state(cli::json::parse(text), warn);
        CHECK(max_abs_diff(psi, back) == 0.0);
        CHECK(warn.str().empty());
    }
}

TEST_CASE("state file validation") {
    CHECK(max_abs_diff(load("ghz.json"), named_state(NamedState::ghz)) < 1e-15);
    std::ostringstream warn;
    const PureState3 p = cli::load_state_file(data("slightly_off.json"), warn);
    CHECK(p.norm() == Approx(1.0));
    CHECK(warn.str().find("renormalized") != std::string::npos);
    CHECK_THROWS_AS(load("bad_norm.json"), InputError);
    CHECK_THROWS_AS(load("bad_ordering.json"), InputError);
    CHECK_THROWS_AS(load("malformed.json"), InputError);
    CHECK_THROWS_AS(load("missing.json"), InputError);
    std::ostringstream sink;
    CHECK_THROWS_AS(cli::parse_state(cli::json::parse(R"({"ordering":"q1q2q3-big-endian","amplitudes":[[1,0]]})"), sink),
                    InputError);
    CHECK_THROWS_AS(cli::parse_state(cli::json::parse("[1, 2]"), sink), InputError);
}

TEST_CASE("round12") {
    CHECK(cli::round12(1.0 / 3.0) == 0.333333333333);
    CHECK(cli::round12(0.0) == 0.0);
    CHECK(cli::round12(2.0 / 3.0 * 1e-20) == 6.66666666667e-21);
}

TEST_CASE("measures command") {
    const auto g = cli::cmd_measures(load("ghz.json"));
    CHECK(g.exit_code == cli::kExitPass);
    const auto& gm = g.output["measures"];
    CHECK(gm["tau"].get<double>() == Approx(1.0));
    for (const char* k : {"c12", "c23", "c31"}) CHECK(gm[k].get<double>() == 0.0);
    for (const char* k : {"tau12", "tau23", "tau31"}) CHECK(gm[k].get<double>() == Approx(1.0));
    CHECK(gm["ghz_class"].get<bool>());

    const auto wout = cli::cmd_measures(load("w.json")).output;
    const auto& wm = wout["measures"];
    CHECK(std::abs(wm["tau"].get<double>()) < 1e-11);
    for (const char* k : {"c12", "c23", "c31", "tau12", "tau23", "tau31"})
        CHECK(wm[k].get<double>() == Approx(2.0 / 3.0).epsilon(1e-9));

    const auto pout = cli::cmd_measures(load("product.json")).output;
    const auto& pm = pout["measures"];
    for (const char* k : {"c12", "c23", "c31", "c1_23", "c2_31", "c3_12", "tau", "tau12", "tau23", "tau31"})
        CHECK(pm[k].get<double>() == 0.0);
    CHECK_FALSE(pm["ghz_class"].get<bool>());
}

TEST_CASE("canonical command") {
    const auto g = cli::cmd_canonical(load("ghz.json")).output;
    CHECK(g["lambda"][0].get<double>() == Approx(0.70710678).epsilon(1e-8));
    CHECK(g["lambda"][4].get<double>() == Approx(0.70710678).epsilon(1e-8));
    CHECK(g["residual"].get<double>() <= 1e-9);
    CHECK(g["locals"].size() == 3);
    CHECK(cli::cmd_canonical(load("product.json")).output["lambda"][0].get<double>() == Approx(1.0));
    for (std::uint64_t n = 0; n < 10; ++n)
        CHECK(cli::cmd_canonical(haar_random(72, n)).output["residual"].get<double>() <= 1e-9);
}

TEST_CASE("teleport command") {
    const auto g = cli::cmd_teleport(load("ghz.json"), 1, 0, 7).output;
    CHECK(g["f"].get<double>() == Approx(1.0));
    CHECK(g["F"].get<double>() == Approx(1.0));
    CHECK(g["main_relation_residual"].get<double>() <= 1e-6);
    CHECK(g["mc"].is_null());

    const auto w = cli::cmd_teleport(load("w.json"), 2, 1000, 7).output;
    CHECK(w["f"].get<double>() == Approx(5.0 / 6.0));
    CHECK(w["F"].get<double>() == Approx(8.0 / 9.0));
    CHECK(w["tau_partner"].get<double>() == Approx(2.0 / 3.0));
    CHECK(w["pair"] == cli::json::array({3, 1}));
    CHECK(w["mc"]["samples"].get<std::size_t>() == 1000);

    const auto p = cli::cmd_teleport(load("product.json"), 3, 0, 7).output;
    CHECK(p["f"].get<double>() == Approx(0.5));
    CHECK(p["F"].get<double>() == Approx(2.0 / 3.0));

    CHECK_THROWS_AS(cli::cmd_teleport(load("w.json"), 4, 0, 7), InputError);
    CHECK_THROWS_AS(cli::cmd_teleport(load("w.json"), 1, 50, 7), InputError);
}

TEST_CASE("verify command") {
    cli::VerifyOptions opts;
    opts.states = 20;
    const auto r = cli::cmd_verify(opts);
    CHECK(r.exit_code == cli::kExitPass);
    CHECK(r.output["pass"].get<bool>());
    CHECK(r.output["states_tested"].get<std::size_t>() == 20);
    for (auto name : cli::kVerifyChecks) CHECK(r.output["max_residuals"].contains(std::string(name)));

    opts.states = 1;
    CHECK(cli::cmd_verify(opts).output.dump() == cli::cmd_verify(opts).output.dump());

    opts.tol = 1e-18;
    const auto bad = cli::cmd_verify(opts);
    CHECK(bad.exit_code == cli::kExitVerifyFailed);
    CHECK_FALSE(bad.output["pass"].get<bool>());
    REQUIRE(bad.output["failures"].size() > 0);
    std::ostringstream warn;
    const PureState3 offending = cli::parse_state(bad.output["failures"][0]["state"], warn);
    CHECK(max_abs_diff(offending, haar_random(opts.seed, 0)) == 0.0);

    cli::VerifyOptions mc;
    mc.states = 3;
    mc.mc = true;
    mc.mc_samples = 5000;
    const auto m = cli::cmd_verify(mc);
    CHECK(m.output["pass"].get<bool>());
    CHECK(m.output["max_residuals"]["mc-consistency"].get<double>() > 0.0);

    cli::VerifyOptions none;
    none.states = 0;
    CHECK_THROWS_AS(cli::cmd_verify(none), InputError);
}

TEST_CASE("guarded maps exceptions to exit codes") {
    auto input = cli::guarded("x", []() -> cli::CommandResult { throw InputError("bad"); });
    CHECK(input.exit_code == cli::kExitInputError);
    CHECK(input.output["error"]["message"] == "bad");
    auto numeric = cli::guarded("x", []() -> cli::CommandResult { throw NumericalError("nan"); });
    CHECK(numeric.exit_code == cli::kExitNumericalError);
    auto contract = cli::guarded("x", []() -> cli::CommandResult { throw ContractError("c"); });
    CHECK(contract.exit_code == cli::kExitNumericalError);
    auto ok = cli::guarded("x", [] { return cli::CommandResult{cli::json::object(), cli::kExitPass}; });
    CHECK(ok.exit_code == cli::kExitPass);
}

// tritangle command-line tool. JSON on stdout, diagnostics on stderr.
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tritangle/cli.hpp"

namespace cli = tritangle::cli;

namespace {

int emit(const cli::CommandResult& r) {
    std::cout << r.output.dump(2) << '\n';
    if (r.output.contains("error")) std::cerr << "error: " << r.output["error"]["message"].get<std::string>() << '\n';
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Three-qubit entanglement measures and measurement-assisted teleportation"};
    app.require_subcommand(1);

    std::string file;
    auto* measures = app.add_subcommand("measures", "Concurrences, 3-tangle and partial tangles of a state file");
    measures->add_option("file", file, "State file (JSON)")->required();

    auto* canonical = app.add_subcommand("canonical", "Five-term canonical form and local unitaries");
    canonical->add_option("file", file, "State file (JSON)")->required();

    int focus = 1;
    std::size_t mc_samples = 0;
    std::uint64_t seed = 7;
    auto* teleport = app.add_subcommand("teleport", "Optimal measurement and teleportation fidelity");
    teleport->add_option("file", file, "State file (JSON)")->required();
    teleport->add_option("--focus", focus, "Qubit measured first (1, 2 or 3)")->required();
    teleport->add_option("--mc-samples", mc_samples, "Monte-Carlo samples (0 = skip, otherwise >= 100)");
    teleport->add_option("--seed", seed, "Monte-Carlo seed");

    cli::VerifyOptions vopts;
    auto* verify = app.add_subcommand("verify", "Check every identity on Haar-random states");
    verify->add_option("--states", vopts.states, "Number of states");
    verify->add_option("--seed", vopts.seed, "Sampling seed");
    verify->add_option("--tol", vopts.tol, "Tolerance for exact identities");
    verify->add_option("--opt-tol", vopts.opt_tol, "Tolerance for optimizer-dependent residuals");
    verify->add_flag("--mc", vopts.mc, "Also run the Monte-Carlo consistency check");
    verify->add_option("--mc-samples", vopts.mc_samples, "Monte-Carlo samples per state");

    std::string name;
    std::optional<std::uint64_t> haar_seed;
    std::uint64_t haar_index = 0;
    auto* state = app.add_subcommand("state", "Write a state file for a named or Haar-random state");
    auto* name_opt = state->add_option("--name", name, "ghz, w or product");
    auto* haar_opt = state->add_option("--haar", haar_seed, "Haar-random state with this seed");
    state->add_option("--index", haar_index, "Index within the Haar seed");
    name_opt->excludes(haar_opt);
    state->require_option(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << cli::error_json("parse", cli::kExitInputError, e.what()).dump(2) << '\n';
        std::cerr << "error: " << e.what() << '\n';
        return cli::kExitInputError;
    }

    if (*measures) {
        return emit(cli::guarded("measures", [&] { return cli::cmd_measures(cli::load_state_file(file, std::cerr)); }));
    }
    if (*canonical) {
        return emit(
            cli::guarded("canonical", [&] { return cli::cmd_canonical(cli::load_state_file(file, std::cerr)); }));
    }
    if (*teleport) {
        return emit(cli::guarded("teleport", [&] {
            return cli::cmd_teleport(cli::load_state_file(file, std::cerr), focus, mc_samples, seed);
        }));
    }
    if (*verify) {
        return emit(cli::guarded("verify", [&] { return cli::cmd_verify(vopts); }));
    }
    return emit(cli::guarded("state", [&] {
        const auto psi = haar_seed ? tritangle::haar_random(*haar_seed, haar_index)
                                   : tritangle::named_state(tritangle::parse_named_state(name));
        return cli::CommandResult{cli::state_to_json(psi), cli::kExitPass};
    }));
}

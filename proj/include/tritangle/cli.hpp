#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tritangle/measures.hpp"
#include "tritangle/states.hpp"
#include "tritangle/teleport.hpp"

namespace tritangle::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int {
    kExitPass = 0,
    kExitVerifyFailed = 1,
    kExitInputError = 2,
    kExitNumericalError = 3,
};

inline constexpr std::string_view kOrdering = "q1q2q3-big-endian";

/// Round to 12 significant digits for report output.
double round12(double x);

/// StateFile document -> state. A norm within 1e-6 of one is renormalized
/// (with a warning when it is off by more than 1e-12); anything else is an
/// InputError.
PureState3 parse_state(const json& doc, std::ostream& warnings);
PureState3 load_state_file(const std::string& path, std::ostream& warnings);

/// StateFile document; amplitudes keep all 17 significant digits.
json state_to_json(const PureState3& psi);

json measures_to_json(const MeasureSet& m);
json matrix_to_json(const Matrix& m);

struct CommandResult {
    json output;
    int exit_code = kExitPass;
};

CommandResult cmd_measures(const PureState3& psi);
CommandResult cmd_canonical(const PureState3& psi);
CommandResult cmd_teleport(const PureState3& psi, Qubit focus, std::size_t mc_samples, std::uint64_t seed);

struct VerifyOptions {
    std::size_t states = 100;
    std::uint64_t seed = 7;
    double tol = 1e-8;       // exact identities
    double opt_tol = 1e-5;   // residuals that go through the optimizer
    bool mc = false;
    std::size_t mc_samples = 20000;
    std::size_t mc_states = 10;
    double mc_sigmas = 4.0;
};

/// Names of the residuals reported by cmd_verify, in output order.
inline constexpr std::string_view kVerifyChecks[] = {
    "ckw", "tau-invariance", "sum-identity", "closed-form-tau", "closed-form-f", "main-relation", "mc-consistency",
};

CommandResult cmd_verify(const VerifyOptions& opts);

/// Error object printed on stdout when a command cannot complete.
json error_json(std::string_view command, int exit_code, std::string_view message);

/// Runs `body`, mapping library exceptions to exit codes and error JSON.
CommandResult guarded(std::string_view command, const std::function<CommandResult()>& body);

}  // namespace tritangle::cli

#include "tritangle/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "tritangle/errors.hpp"

namespace tritangle::cli {

namespace {

constexpr double kLoadNormTol = 1e-6;
constexpr std::size_t kMaxReportedFailures = 10;

json cplx_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

json rounded_cplx(const cplx& z) { return json::array({round12(z.real()), round12(z.imag())}); }

struct Failure {
    std::size_t index;
    std::string check;
    double residual;
    double tolerance;
    PureState3 state;
};

class VerifyAccumulator {
public:
    explicit VerifyAccumulator(const VerifyOptions& opts) : opts_(opts) {
        for (auto name : kVerifyChecks) max_[std::string(name)] = 0.0;
    }

    void record(std::string_view check, double residual, double tolerance, std::size_t index, const PureState3& psi) {
        auto& m = max_[std::string(check)];
        m = std::max(m, residual);
        if (!(residual <= tolerance)) {
            pass_ = false;
            if (failures_.size() < kMaxReportedFailures) {
                failures_.push_back({index, std::string(check), residual, tolerance, psi});
            }
        }
    }

    json report(std::size_t tested) const {
        json maxima = json::object();
        for (auto name : kVerifyChecks) maxima[std::string(name)] = round12(max_.at(std::string(name)));
        json fails = json::array();
        for (const auto& f : failures_) {
            fails.push_back({{"index", f.index},
                             {"check", f.check},
                             {"residual", f.residual},
                             {"tolerance", f.tolerance},
                             {"state", state_to_json(f.state)}});
        }
        return {{"command", "verify"},
                {"states_tested", tested},
                {"seed", opts_.seed},
                {"tolerances",
                 {{"identity", opts_.tol}, {"optimizer", opts_.opt_tol}, {"mc_sigmas", opts_.mc_sigmas}}},
                {"mc", opts_.mc},
                {"max_residuals", maxima},
                {"failures", fails},
                {"pass", pass_}};
    }

    bool pass() const { return pass_; }

private:
    const VerifyOptions& opts_;
    std::map<std::string, double> max_;
    std::vector<Failure> failures_;
    bool pass_ = true;
};

}  // namespace

double round12(double x) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

PureState3 parse_state(const json& doc, std::ostream& warnings) {
    if (!doc.is_object()) throw InputError("state file must be a JSON object");
    if (!doc.contains("ordering") || !doc["ordering"].is_string() || doc["ordering"].get<std::string>() != kOrdering) {
        throw InputError("state file needs \"ordering\": \"" + std::string(kOrdering) + "\"");
    }
    if (!doc.contains("amplitudes") || !doc["amplitudes"].is_array() || doc["amplitudes"].size() != 8) {
        throw InputError("state file needs \"amplitudes\": a list of 8 [re, im] pairs");
    }
    PureState3::Amplitudes amps{};
    for (std::size_t k = 0; k < 8; ++k) {
        const json& pair = doc["amplitudes"][k];
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
            throw InputError("amplitude " + std::to_string(k) + " is not an [re, im] pair of numbers");
        }
        amps[k] = {pair[0].get<double>(), pair[1].get<double>()};
        if (!std::isfinite(amps[k].real()) || !std::isfinite(amps[k].imag())) {
            throw InputError("amplitude " + std::to_string(k) + " is not finite");
        }
    }
    double n2 = 0.0;
    for (const auto& z : amps) n2 += std::norm(z);
    const double n = std::sqrt(n2);
    if (std::abs(n - 1.0) > kLoadNormTol) {
        throw InputError("state norm " + std::to_string(n) + " differs from 1 by more than 1e-6");
    }
    if (std::abs(n - 1.0) <= 1e-12) return PureState3(amps);
    warnings << "warning: state norm " << n << " renormalized on load\n";
    return PureState3::normalized(amps);
}

PureState3 load_state_file(const std::string& path, std::ostream& warnings) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open state file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("state file '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_state(doc, warnings);
}

json state_to_json(const PureState3& psi) {
    json amps = json::array();
    for (const auto& z : psi.amps()) amps.push_back(cplx_to_json(z));
    return {{"ordering", kOrdering}, {"amplitudes", amps}};
}

json measures_to_json(const MeasureSet& m) {
    return {{"c12", round12(m.c12)},     {"c23", round12(m.c23)},     {"c31", round12(m.c31)},
            {"c1_23", round12(m.c1_23)}, {"c2_31", round12(m.c2_31)}, {"c3_12", round12(m.c3_12)},
            {"tau", round12(m.tau)},     {"tau12", round12(m.tau12)}, {"tau23", round12(m.tau23)},
            {"tau31", round12(m.tau31)}, {"ghz_class", m.ghz_class}};
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rounded_cplx(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

CommandResult cmd_measures(const PureState3& psi) {
    return {{{"command", "measures"}, {"measures", measures_to_json(compute_measures(psi))}}, kExitPass};
}

CommandResult cmd_canonical(const PureState3& psi) {
    const Canonicalization canon = to_canonical(psi);
    json lambda = json::array();
    for (double l : canon.coeffs.lambda) lambda.push_back(round12(l));
    json locals = json::array();
    for (const auto& u : canon.locals) locals.push_back(matrix_to_json(u));
    return {{{"command", "canonical"},
             {"lambda", lambda},
             {"theta", round12(canon.coeffs.theta)},
             {"locals", locals},
             {"residual", round12(canon.residual(psi))}},
            kExitPass};
}

CommandResult cmd_teleport(const PureState3& psi, Qubit focus, std::size_t mc_samples, std::uint64_t seed) {
    if (focus < 1 || focus > 3) throw InputError("--focus must be 1, 2 or 3");
    if (mc_samples > 0 && mc_samples < 100) throw InputError("--mc-samples must be at least 100");
    const TeleportReport rep = teleport_report(psi, focus, mc_samples, seed);
    const auto pair = remaining_pair(focus);
    json mc = nullptr;
    if (rep.samples > 0) {
        mc = {{"samples", rep.samples},
              {"seed", seed},
              {"estimate", round12(rep.mc_estimate)},
              {"stderr", round12(rep.mc_stderr)}};
    }
    return {{{"command", "teleport"},
             {"focus", focus},
             {"pair", {pair[0], pair[1]}},
             {"f", round12(rep.f)},
             {"F", round12(rep.F)},
             {"setting", {{"t", round12(rep.setting.t)}, {"a", round12(rep.setting.a)}, {"b", round12(rep.setting.b)}}},
             {"tau_partner", round12(rep.tau_partner)},
             {"main_relation_residual", round12(std::abs(rep.tau_partner - (2.0 * rep.f - 1.0)))},
             {"mc", mc}},
            kExitPass};
}

CommandResult cmd_verify(const VerifyOptions& opts) {
    if (opts.states < 1) throw InputError("--states must be at least 1");
    if (!(opts.tol >= 0.0) || !(opts.opt_tol >= 0.0)) throw InputError("tolerances must be nonnegative");
    if (opts.mc && opts.mc_samples < 100) throw InputError("--mc-samples must be at least 100");

    VerifyAccumulator acc(opts);
    for (std::size_t n = 0; n < opts.states; ++n) {
        const PureState3 psi = haar_random(opts.seed, n);

        const IdentityReport ids = verify_identities(psi, opts.tol);
        acc.record("ckw", std::max(0.0, -ids.ckw_margin), opts.tol, n, psi);
        acc.record("tau-invariance", ids.tau_invariance, opts.tol, n, psi);
        acc.record("sum-identity", std::max(ids.sum_identity, ids.pair_identity), opts.tol, n, psi);

        const MeasureSet m = compute_measures(psi);
        const Canonicalization canon = to_canonical(psi);
        const PartialTangles closed = partial_tangle_closed_form(canon.coeffs);
        const double tau_gap = std::max({std::abs(closed.tau12 - m.tau12), std::abs(closed.tau23 - m.tau23),
                                         std::abs(closed.tau31 - m.tau31)});
        acc.record("closed-form-tau", tau_gap, opts.tol, n, psi);

        const auto relation = main_relation_residual(psi);
        const auto f_closed = f_closed_form(canon.coeffs);
        double f_gap = 0.0, rel = 0.0;
        for (std::size_t k = 0; k < 3; ++k) {
            f_gap = std::max(f_gap, std::abs(relation[k].f - f_closed[k]));
            rel = std::max({rel, relation[k].residual_f, relation[k].residual_F});
        }
        acc.record("closed-form-f", f_gap, opts.opt_tol, n, psi);
        acc.record("main-relation", rel, opts.opt_tol, n, psi);

        if (opts.mc && n < opts.mc_states) {
            const Qubit focus = static_cast<Qubit>(n % 3) + 1;
            const auto& r = relation[focus - 1];
            const TeleportReport best = optimize_measurement(psi, focus);
            const McResult mc = mc_average_fidelity(psi, focus, best.setting, opts.mc_samples, opts.seed + n);
            const double z = std::abs(mc.estimate - r.F) / std::max(mc.standard_error, 1e-12);
            acc.record("mc-consistency", z, opts.mc_sigmas, n, psi);
        }
    }
    return {acc.report(opts.states), acc.pass() ? kExitPass : kExitVerifyFailed};
}

json error_json(std::string_view command, int exit_code, std::string_view message) {
    return {{"command", command}, {"error", {{"exit_code", exit_code}, {"message", message}}}};
}

CommandResult guarded(std::string_view command, const std::function<CommandResult()>& body) {
    try {
        return body();
    } catch (const InputError& e) {
        return {error_json(command, kExitInputError, e.what()), kExitInputError};
    } catch (const json::exception& e) {
        return {error_json(command, kExitInputError, e.what()), kExitInputError};
    } catch (const ContractError& e) {
        return {error_json(command, kExitNumericalError, e.what()), kExitNumericalError};
    } catch (const NumericalError& e) {
        return {error_json(command, kExitNumericalError, e.what()), kExitNumericalError};
    } catch (const SizeError& e) {
        return {error_json(command, kExitNumericalError, e.what()), kExitNumericalError};
    }
}

}  // namespace tritangle::cli

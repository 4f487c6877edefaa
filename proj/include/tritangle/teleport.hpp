#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "tritangle/density.hpp"
#include "tritangle/states.hpp"

namespace tritangle {

/// One-qubit orthogonal measurement in the basis {U†|0>, U†|1>}, with U in
/// SU(2) given by three angles:
///   U = [[cos t·e^{ia}, sin t·e^{ib}], [−sin t·e^{−ib}, cos t·e^{−ia}]]
struct MeasurementSetting {
    double t = 0.0;
    double a = 0.0;
    double b = 0.0;

    Matrix matrix() const;

    static MeasurementSetting identity() { return {}; }
    /// The Hadamard basis (equal to H up to a global phase).
    static MeasurementSetting hadamard();
};

/// Remaining pair after measuring `focus`, in cyclic order: focus 1 leaves
/// (2, 3), focus 2 leaves (3, 1), focus 3 leaves (1, 2). The first qubit of
/// the pair takes part in the Bell measurement, the second receives the state.
std::array<Qubit, 2> remaining_pair(Qubit focus);

inline constexpr double kDegenerateProbability = 1e-14;

struct OutcomeRecord {
    int t = 0;
    double probability = 0.0;
    /// Empty when probability < 1e-14.
    std::optional<TwoQubitPure> post_state;

    bool degenerate() const noexcept { return !post_state.has_value(); }
};

std::array<OutcomeRecord, 2> measure_focus(const PureState3& psi, Qubit focus, const MeasurementSetting& setting);

/// Fully entangled fraction of a pure two-qubit state: 1/2 + √(αβ).
double fef_pure(const TwoQubitPure& phi);

/// Fully entangled fraction of a two-qubit density matrix, from the largest
/// eigenvalue of Re(ρ) written in the magic basis.
double fef_mixed(const DensityMatrix& rho);

/// Concurrence of a pure two-qubit state, 2√(αβ).
double concurrence_pure(const TwoQubitPure& phi);

/// (2f + 1)/3; InputError unless f is in [1/4, 1].
double fidelity_from_fef(double f);

/// Σ_t p_t · f(post-state_t). Degenerate branches contribute 0.
double split_fidelity_objective(const PureState3& psi, Qubit focus, const MeasurementSetting& setting);

struct TeleportReport {
    Qubit focus = 1;
    double f = 0.5;
    double F = 2.0 / 3.0;
    MeasurementSetting setting;
    /// τ of the pair left after measuring `focus`.
    double tau_partner = 0.0;
    double mc_estimate = 0.0;
    double mc_stderr = 0.0;
    std::size_t samples = 0;  // 0 when no Monte-Carlo run was requested
};

/// Maximizes split_fidelity_objective over U(2): coarse 24³ grid, then
/// coordinate-wise golden-section refinement from the best grid point and
/// four pseudo-random restarts.
TeleportReport optimize_measurement(const PureState3& psi, Qubit focus);

/// (f1, f2, f3) for a state in five-term canonical form.
std::array<double, 3> f_closed_form(const CanonicalCoeffs& c);

struct MainRelation {
    Qubit focus = 1;
    double tau_pair = 0.0;   // τ_ij of the pair left after measuring focus
    double f = 0.0;          // optimized f_focus
    double F = 0.0;
    double residual_f = 0.0; // |τ_ij − (2f − 1)|
    double residual_F = 0.0; // |τ_ij − (3F − 2)|
};

std::array<MainRelation, 3> main_relation_residual(const PureState3& psi);

using Qubit1 = std::array<cplx, 2>;

struct ProtocolBranch {
    std::array<int, 3> bits{};  // focus outcome, Bell x-bit, Bell z-bit
    double probability = 0.0;
    Qubit1 output{};
};

/// Every classical branch of the three-party protocol with its probability
/// and the corrected output qubit. Branches with zero weight are dropped;
/// probabilities sum to 1.
std::vector<ProtocolBranch> protocol_branches(const PureState3& psi, Qubit focus, const MeasurementSetting& setting,
                                              const Qubit1& input);

struct ProtocolRun {
    Qubit1 output{};
    std::array<int, 3> bits{};
};

/// One run of the protocol; `draw` in [0, 1) selects the classical branch.
ProtocolRun simulate_protocol(const PureState3& psi, Qubit focus, const MeasurementSetting& setting,
                              const Qubit1& input, double draw);

struct McResult {
    double estimate = 0.0;
    double standard_error = 0.0;
};

/// Average teleportation fidelity over Haar-random inputs. Classical branches
/// are summed exactly; only the input is sampled. InputError if samples < 100.
McResult mc_average_fidelity(const PureState3& psi, Qubit focus, const MeasurementSetting& setting,
                             std::size_t samples, std::uint64_t seed);

/// optimize_measurement plus, when samples > 0, a Monte-Carlo run with the
/// optimal setting.
TeleportReport teleport_report(const PureState3& psi, Qubit focus, std::size_t samples, std::uint64_t seed);

}  // namespace tritangle

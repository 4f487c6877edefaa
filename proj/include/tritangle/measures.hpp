#pragma once

#include <array>

#include "tritangle/density.hpp"
#include "tritangle/states.hpp"

namespace tritangle {

/// Wootters concurrence of a two-qubit density matrix:
/// max(0, √μ1 − √μ2 − √μ3 − √μ4) over the eigenvalues of ρ·ρ̃.
double concurrence_mixed(const DensityMatrix& rho);

/// C_{i(jk)} = 2·√det(ρ_i)
double concurrence_bipartition(const PureState3& psi, Qubit focus);

/// C_ij: Wootters concurrence of the pair after tracing out the third qubit.
double pair_concurrence(const PureState3& psi, Qubit i, Qubit j);

/// τ = C²_{i(jk)} − C²_ij − C²_ik for the given focus i.
double three_tangle(const PureState3& psi, Qubit focus);

/// τ_ij = √(C²_{i(jk)} − C²_ik). The pair is unordered: τ_ij and τ_ji are
/// evaluated through the same cyclic representative (12, 23 or 31).
double partial_tangle(const PureState3& psi, Qubit i, Qubit j);

struct PartialTangles {
    double tau12 = 0.0;
    double tau23 = 0.0;
    double tau31 = 0.0;
};

/// Partial tangles of a state given by its five-term canonical coefficients.
PartialTangles partial_tangle_closed_form(const CanonicalCoeffs& c);

/// A τ > this is classified as GHZ class.
inline constexpr double kGhzClassThreshold = 1e-8;

struct MeasureSet {
    double c12 = 0.0, c23 = 0.0, c31 = 0.0;
    double c1_23 = 0.0, c2_31 = 0.0, c3_12 = 0.0;
    double tau = 0.0;
    double tau12 = 0.0, tau23 = 0.0, tau31 = 0.0;
    bool ghz_class = false;
};

MeasureSet compute_measures(const PureState3& psi);

/// Largest |difference| between two measure sets over all real fields.
double max_measure_diff(const MeasureSet& a, const MeasureSet& b);

/// Residuals of the exact identities between concurrences and tangles.
struct IdentityReport {
    /// min over foci of C²_{i(jk)} − C²_ij − C²_ik (monogamy; must be >= -tol)
    double ckw_margin = 0.0;
    /// max |τ_a − τ_b| over pairs of foci
    double tau_invariance = 0.0;
    /// |τ12² + τ23² + τ31² − 3τ − C²12 − C²23 − C²31|
    double sum_identity = 0.0;
    /// max over pairs |τ_ij² − τ − C²_ij|
    double pair_identity = 0.0;
    /// max over pairs (C_ij − τ_ij); positive means τ_ij < C_ij
    double tangle_below_concurrence = 0.0;
    /// τ below 1e-10: then τ_ij must equal C_ij
    bool w_class_branch = false;
    double w_class_residual = 0.0;

    bool ckw_ok = false;
    bool tau_invariance_ok = false;
    bool sum_identity_ok = false;
    bool pair_identity_ok = false;
    bool tangle_bound_ok = false;
    bool w_class_ok = false;

    bool pass() const noexcept {
        return ckw_ok && tau_invariance_ok && sum_identity_ok && pair_identity_ok && tangle_bound_ok && w_class_ok;
    }
    double max_residual() const noexcept;
};

IdentityReport verify_identities(const PureState3& psi, double tol = 1e-8);

}  // namespace tritangle

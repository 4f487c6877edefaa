#include "tritangle/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tritangle/errors.hpp"

namespace tritangle {

namespace {

// Radicands and eigenvalues in [-kClampLimit, 0) are round-off; below that
// the analytic nonnegativity is broken and we refuse to continue.
constexpr double kClampLimit = 1e-6;
constexpr double kRhoClamp = 1e-14;

double clamp_nonneg(double x, const char* what) {
    if (x >= 0.0) return x;
    if (x >= -kClampLimit) return 0.0;
    throw NumericalError(std::string(what) + " is negative beyond round-off: " + std::to_string(x));
}

// σy ⊗ σy; real with entries in {0, ±1}.
Matrix spin_flip() {
    return {{0.0, 0.0, 0.0, -1.0}, {0.0, 0.0, 1.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {-1.0, 0.0, 0.0, 0.0}};
}

void require_qubit(Qubit q) {
    if (q < 1 || q > 3) throw InputError("qubit index must be 1, 2 or 3");
}

Qubit third_qubit(Qubit i, Qubit j) { return 6 - i - j; }

// 0 for {1,2}, 1 for {2,3}, 2 for {3,1}.
int pair_slot(Qubit i, Qubit j) {
    require_qubit(i);
    require_qubit(j);
    if (i == j) throw InputError("pair needs two distinct qubits");
    return third_qubit(i, j) == 3 ? 0 : third_qubit(i, j) == 1 ? 1 : 2;
}

// Leading qubit of the cyclic representative of a pair slot: 12 -> 1, 23 -> 2, 31 -> 3.
Qubit cyclic_head(int slot) { return slot + 1; }

struct Concurrences {
    std::array<double, 3> bip_sq{};  // C²_{i(jk)}, index i - 1, unclamped
    std::array<double, 3> pair{};    // C_12, C_23, C_31

    double pair_sq(Qubit i, Qubit j) const {
        const double c = pair[pair_slot(i, j)];
        return c * c;
    }
    double tau_raw(Qubit focus) const {
        const Qubit j = focus % 3 + 1;
        const Qubit k = j % 3 + 1;
        return bip_sq[focus - 1] - pair_sq(focus, j) - pair_sq(focus, k);
    }
    // Radicand of τ_ij for the cyclic representative starting at `head`.
    double partial_radicand(Qubit head) const {
        const Qubit other = head % 3 + 1;
        return bip_sq[head - 1] - pair_sq(head, third_qubit(head, other));
    }
};

double bipartition_sq_raw(const PureState3& psi, Qubit focus) {
    require_qubit(focus);
    const Qubit keep[1] = {focus};
    const DensityMatrix rho = reduced_density(psi, keep);
    return 4.0 * det2(rho.matrix()).real();
}

Concurrences all_concurrences(const PureState3& psi) {
    Concurrences c;
    for (Qubit q = 1; q <= 3; ++q) c.bip_sq[q - 1] = bipartition_sq_raw(psi, q);
    c.pair = {pair_concurrence(psi, 1, 2), pair_concurrence(psi, 2, 3), pair_concurrence(psi, 3, 1)};
    return c;
}

}  // namespace

double concurrence_mixed(const DensityMatrix& rho) {
    if (rho.dim() != 4) throw ContractError("concurrence_mixed needs a two-qubit density matrix");
    const HermEig eig = herm_eigh(rho.matrix());

    // Ensemble vectors w_k = √e_k·v_k. The square roots of the eigenvalues of
    // ρρ̃ are the singular values of the symmetric matrix w_m^T (σy⊗σy) w_n,
    // taken directly so small ones are not lost to squaring. Eigenvalues at
    // round-off level are dropped; they would leak √(1e-16) ~ 1e-8 into w.
    Matrix w(4, 4);
    for (std::size_t k = 0; k < 4; ++k) {
        if (eig.values[k] < kRhoClamp) continue;
        const double r = std::sqrt(eig.values[k]);
        for (std::size_t i = 0; i < 4; ++i) w(i, k) = r * eig.vectors(i, k);
    }
    const auto s = singular_values(w.transpose() * spin_flip() * w);
    const double c = s[0] - s[1] - s[2] - s[3];
    return std::clamp(c, 0.0, 1.0);
}

double concurrence_bipartition(const PureState3& psi, Qubit focus) {
    const double d = clamp_nonneg(bipartition_sq_raw(psi, focus) / 4.0, "det of one-qubit reduced state");
    return std::min(1.0, 2.0 * std::sqrt(d));
}

double pair_concurrence(const PureState3& psi, Qubit i, Qubit j) {
    pair_slot(i, j);
    const Qubit keep[2] = {std::min(i, j), std::max(i, j)};
    return concurrence_mixed(reduced_density(psi, keep));
}

double three_tangle(const PureState3& psi, Qubit focus) {
    require_qubit(focus);
    const Concurrences c = all_concurrences(psi);
    return std::min(1.0, clamp_nonneg(c.tau_raw(focus), "3-tangle"));
}

double partial_tangle(const PureState3& psi, Qubit i, Qubit j) {
    const int slot = pair_slot(i, j);
    const Concurrences c = all_concurrences(psi);
    const double r = clamp_nonneg(c.partial_radicand(cyclic_head(slot)), "partial tangle radicand");
    return std::min(1.0, std::sqrt(r));
}

PartialTangles partial_tangle_closed_form(const CanonicalCoeffs& c) {
    c.validate();
    const auto& l = c.lambda;
    double r23 = l[0] * l[0] * l[4] * l[4] + l[1] * l[1] * l[4] * l[4] + l[2] * l[2] * l[3] * l[3] -
                 2.0 * l[1] * l[2] * l[3] * l[4] * std::cos(c.theta);
    if (r23 < -1e-12) throw InputError("closed-form τ23 radicand negative");
    r23 = std::max(r23, 0.0);
    return {2.0 * l[0] * std::sqrt(l[3] * l[3] + l[4] * l[4]), 2.0 * std::sqrt(r23),
            2.0 * l[0] * std::sqrt(l[2] * l[2] + l[4] * l[4])};
}

MeasureSet compute_measures(const PureState3& psi) {
    const Concurrences c = all_concurrences(psi);
    MeasureSet m;
    m.c12 = c.pair[0];
    m.c23 = c.pair[1];
    m.c31 = c.pair[2];
    auto bip = [&](Qubit q) {
        return std::min(1.0, 2.0 * std::sqrt(clamp_nonneg(c.bip_sq[q - 1] / 4.0, "det of one-qubit reduced state")));
    };
    m.c1_23 = bip(1);
    m.c2_31 = bip(2);
    m.c3_12 = bip(3);
    m.tau = std::min(1.0, clamp_nonneg(c.tau_raw(1), "3-tangle"));
    auto tangle = [&](Qubit head) {
        return std::min(1.0, std::sqrt(clamp_nonneg(c.partial_radicand(head), "partial tangle radicand")));
    };
    m.tau12 = tangle(1);
    m.tau23 = tangle(2);
    m.tau31 = tangle(3);
    m.ghz_class = m.tau > kGhzClassThreshold;
    return m;
}

double max_measure_diff(const MeasureSet& a, const MeasureSet& b) {
    const double d[] = {a.c12 - b.c12,     a.c23 - b.c23,     a.c31 - b.c31,     a.c1_23 - b.c1_23,
                        a.c2_31 - b.c2_31, a.c3_12 - b.c3_12, a.tau - b.tau,     a.tau12 - b.tau12,
                        a.tau23 - b.tau23, a.tau31 - b.tau31};
    double m = 0.0;
    for (double x : d) m = std::max(m, std::abs(x));
    return m;
}

double IdentityReport::max_residual() const noexcept {
    return std::max({-std::min(ckw_margin, 0.0), tau_invariance, sum_identity, pair_identity,
                     std::max(tangle_below_concurrence, 0.0), w_class_residual});
}

IdentityReport verify_identities(const PureState3& psi, double tol) {
    const Concurrences c = all_concurrences(psi);
    const MeasureSet m = compute_measures(psi);
    IdentityReport r;

    const std::array<double, 3> taus{c.tau_raw(1), c.tau_raw(2), c.tau_raw(3)};
    r.ckw_margin = *std::min_element(taus.begin(), taus.end());
    r.tau_invariance = std::max({std::abs(taus[0] - taus[1]), std::abs(taus[1] - taus[2]), std::abs(taus[2] - taus[0])});

    const std::array<double, 3> tangles{m.tau12, m.tau23, m.tau31};
    const std::array<double, 3> pairs{m.c12, m.c23, m.c31};
    double sum_t = 0.0, sum_c = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        sum_t += tangles[k] * tangles[k];
        sum_c += pairs[k] * pairs[k];
        r.pair_identity = std::max(r.pair_identity, std::abs(tangles[k] * tangles[k] - m.tau - pairs[k] * pairs[k]));
        r.tangle_below_concurrence = std::max(r.tangle_below_concurrence, pairs[k] - tangles[k]);
    }
    r.sum_identity = std::abs(sum_t - 3.0 * m.tau - sum_c);

    r.w_class_branch = m.tau < 1e-10;
    if (r.w_class_branch) {
        for (std::size_t k = 0; k < 3; ++k) r.w_class_residual = std::max(r.w_class_residual, std::abs(tangles[k] - pairs[k]));
    }

    r.ckw_ok = r.ckw_margin >= -tol;
    r.tau_invariance_ok = r.tau_invariance <= tol;
    r.sum_identity_ok = r.sum_identity <= tol;
    r.pair_identity_ok = r.pair_identity <= tol;
    r.tangle_bound_ok = r.tangle_below_concurrence <= tol;
    r.w_class_ok = !r.w_class_branch || r.w_class_residual < 1e-5;
    return r;
}

}  // namespace tritangle

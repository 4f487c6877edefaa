#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>

#include "tritangle/density.hpp"
#include "tritangle/matrix.hpp"
#include "tritangle/rng.hpp"

namespace tritangle {

/// Qubit index, 1-based: qubit 1 is the most significant bit of the basis
/// index (|q1 q2 q3> -> 4·q1 + 2·q2 + q3).
using Qubit = int;

inline constexpr double kNormTol = 1e-10;

/// Normalized three-qubit pure state.
class PureState3 {
public:
    using Amplitudes = std::array<cplx, 8>;

    /// Throws InputError unless sum |a_k|^2 = 1 within 1e-10.
    explicit PureState3(const Amplitudes& amps);
    PureState3();  // |000>

    /// Scales `amps` to unit norm; InputError on a zero or non-finite vector.
    static PureState3 normalized(Amplitudes amps);

    const Amplitudes& amps() const noexcept { return amps_; }
    const cplx& operator[](std::size_t i) const noexcept { return amps_[i]; }
    double norm() const noexcept;

    /// |psi><psi| as an 8x8 matrix.
    Matrix projector() const;

private:
    Amplitudes amps_;
};

double max_abs_diff(const PureState3& a, const PureState3& b);

/// Normalized two-qubit pure state; amplitude index 2·qa + qb.
class TwoQubitPure {
public:
    explicit TwoQubitPure(const std::array<cplx, 4>& amps);

    const std::array<cplx, 4>& amps() const noexcept { return amps_; }
    /// Amplitudes arranged as a 2x2 matrix M(qa, qb).
    Matrix amplitude_matrix() const;
    /// Schmidt weights (alpha, beta), alpha >= beta >= 0, alpha + beta = 1.
    std::pair<double, double> schmidt() const;

private:
    std::array<cplx, 4> amps_;
};

enum class NamedState { ghz, w, product };

/// "GHZ", "W" or "product" (case-insensitive).
NamedState parse_named_state(std::string_view name);
PureState3 named_state(NamedState which);

/// Eight standard complex Gaussians, normalized. `index` selects an
/// independent sample under the same seed.
PureState3 haar_random(std::uint64_t seed, std::uint64_t index = 0);

/// Haar-distributed 2x2 unitary.
Matrix haar_unitary2(std::uint64_t seed, std::uint64_t index = 0);

/// Uniform one-qubit pure state on the Bloch sphere.
std::array<cplx, 2> haar_qubit(std::uint64_t seed, std::uint64_t index = 0);
/// Same distribution, drawn from an existing stream.
std::array<cplx, 2> haar_qubit(CounterRng& rng);

/// perm[q - 1] is the position qubit q moves to; {1, 2, 3} is the identity.
using Permutation = std::array<Qubit, 3>;
PureState3 permute_qubits(const PureState3& psi, const Permutation& perm);

/// (u1 ⊗ u2 ⊗ u3)|psi>
PureState3 apply_local(const PureState3& psi, const Matrix& u1, const Matrix& u2, const Matrix& u3);

/// Coefficients of λ0|000> + λ1 e^{iθ}|100> + λ2|101> + λ3|110> + λ4|111>.
struct CanonicalCoeffs {
    std::array<double, 5> lambda{1.0, 0.0, 0.0, 0.0, 0.0};
    double theta = 0.0;

    /// InputError unless λj >= 0, sum λj^2 = 1 within 1e-10, θ in [0, π].
    void validate() const;
};

/// Random valid coefficients: |Gaussian| λ's normalized, θ uniform in [0, π].
CanonicalCoeffs random_canonical(std::uint64_t seed, std::uint64_t index = 0);

PureState3 from_canonical(const CanonicalCoeffs& c);

struct Canonicalization {
    CanonicalCoeffs coeffs;
    /// (locals[0] ⊗ locals[1] ⊗ locals[2])|psi> = from_canonical(coeffs)
    std::array<Matrix, 3> locals;

    /// max componentwise deviation of the identity above for `psi`.
    double residual(const PureState3& psi) const;
};

Canonicalization to_canonical(const PureState3& psi);

/// Reduced state on the qubits in `keep` (nonempty proper subset of {1,2,3}).
DensityMatrix reduced_density(const PureState3& psi, std::span<const Qubit> keep);
DensityMatrix reduced_density(const PureState3& psi, std::initializer_list<Qubit> keep);

}  // namespace tritangle

#include "tritangle/states.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "tritangle/errors.hpp"
#include "tritangle/rng.hpp"

namespace tritangle {

namespace {

constexpr double kPi = std::numbers::pi;
// |det T1| below this counts as a degenerate (linear) quadratic.
constexpr double kQuadraticDegenerate = 1e-13;
// Amplitudes below this carry no usable phase.
constexpr double kPhaseZero = 1e-12;

// Summed in ascending order, so the result does not depend on how the
// entries are arranged.
double sum_sq(std::span<const cplx> v) {
    std::array<double, kMaxDim> sq{};
    const std::size_t n = std::min(v.size(), kMaxDim);
    for (std::size_t k = 0; k < n; ++k) sq[k] = std::norm(v[k]);
    std::sort(sq.begin(), sq.begin() + static_cast<std::ptrdiff_t>(n));
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += sq[k];
    return s;
}

std::array<cplx, 2> gaussian_pair(CounterRng& rng) {
    const auto [a, b] = rng.normal_pair();
    const auto [c, d] = rng.normal_pair();
    return {cplx(a, b), cplx(c, d)};
}

cplx unit_phase(double angle) { return std::polar(1.0, angle); }

// Slice T_a(b, c) = psi[4a + 2b + c].
Matrix slice(const PureState3& psi, int a) {
    return {{psi[4 * a + 0], psi[4 * a + 1]}, {psi[4 * a + 2], psi[4 * a + 3]}};
}

// Row 0 of the qubit-1 rotation is proportional to (1, x).
Matrix rotation_from_root(cplx x) {
    const double n = std::sqrt(1.0 + std::norm(x));
    return {{1.0 / n, x / n}, {-std::conj(x) / n, 1.0 / n}};
}

std::vector<Matrix> qubit1_candidates(const Matrix& t0, const Matrix& t1) {
    const cplx a = det2(t1);
    const cplx b = t0(0, 0) * t1(1, 1) + t1(0, 0) * t0(1, 1) - t0(0, 1) * t1(1, 0) - t1(0, 1) * t0(1, 0);
    const cplx c = det2(t0);
    const Matrix swap{{0.0, 1.0}, {1.0, 0.0}};

    std::vector<Matrix> out;
    if (std::abs(a) > kQuadraticDegenerate) {
        cplx disc = std::sqrt(b * b - 4.0 * a * c);
        if ((std::conj(b) * disc).real() < 0.0) disc = -disc;
        const cplx q = -0.5 * (b + disc);
        if (std::abs(q) == 0.0) {
            out.push_back(rotation_from_root(0.0));
        } else {
            out.push_back(rotation_from_root(q / a));
            out.push_back(rotation_from_root(c / q));
        }
        // A double root (zero 3-tangle) is only √ε-accurate from the formula
        // above; the vertex -b/2a is exact there.
        out.push_back(rotation_from_root(-b / (2.0 * a)));
    } else if (std::abs(b) > kQuadraticDegenerate) {
        out.push_back(rotation_from_root(-c / b));
        out.push_back(swap);
    } else {
        if (std::abs(c) <= kQuadraticDegenerate) out.push_back(Matrix::identity(2));
        out.push_back(swap);
    }
    return out;
}

struct Attempt {
    Canonicalization canon;
    Matrix rotation;
    double dropped = 0.0;               // norm discarded to reach the five-term form
    std::array<double, 3> tail{};       // |q|, |r|, |s|
};

// Canonical form reached with a given qubit-1 rotation. `forced_zero` = 1, 2
// or 3 treats q, r or s as vanishing so the λ1 phase can be absorbed.
Attempt canonicalize_with(const Matrix& t0, const Matrix& t1, const Matrix& w, int forced_zero = 0) {
    const Matrix s0 = w(0, 0) * t0 + w(0, 1) * t1;
    const Matrix s1 = w(1, 0) * t0 + w(1, 1) * t1;
    const Svd2 svd0 = svd2(s0);
    // A rotated first slice that vanishes leaves the frame free; diagonalize
    // the second slice instead.
    const Svd2 frame = svd0.s[0] < kPhaseZero ? svd2(s1) : svd0;
    const Matrix r0 = frame.u.adjoint() * s0 * frame.v;
    const Matrix r1 = frame.u.adjoint() * s1 * frame.v;

    const cplx a0 = r0(0, 0);
    const cplx p = r1(0, 0), q = r1(0, 1), r = r1(1, 0), s = r1(1, 1);
    const bool p0 = std::abs(p) < kPhaseZero;
    const bool q0 = std::abs(q) < kPhaseZero || forced_zero == 1;
    const bool r0z = std::abs(r) < kPhaseZero || forced_zero == 2;
    const bool s0z = std::abs(s) < kPhaseZero || forced_zero == 3;

    // Term phases: 000 -> α0, 100 -> α1, 101 -> α1+γ1, 110 -> α1+β1,
    // 111 -> α1+β1+γ1. Only arg p + arg s - arg q - arg r is invariant.
    const double alpha0 = -std::arg(a0);
    double alpha1 = 0.0, beta1 = 0.0, gamma1 = 0.0, theta = 0.0;
    if (p0 || (!q0 && !r0z && !s0z)) {
        alpha1 = std::arg(s) - std::arg(q) - std::arg(r);
        gamma1 = -std::arg(q) - alpha1;
        beta1 = -std::arg(r) - alpha1;
        if (!p0) theta = std::arg(p) + alpha1;
    } else {
        alpha1 = -std::arg(p);
        if (q0) {
            beta1 = -std::arg(r) - alpha1;
            gamma1 = -std::arg(s) - alpha1 - beta1;
        } else if (r0z) {
            gamma1 = -std::arg(q) - alpha1;
            beta1 = -std::arg(s) - alpha1 - gamma1;
        } else {
            gamma1 = -std::arg(q) - alpha1;
            beta1 = -std::arg(r) - alpha1;
        }
    }
    theta = std::fmod(theta, 2.0 * kPi);
    if (theta < 0.0) theta += 2.0 * kPi;

    Attempt out;
    out.rotation = w;
    out.dropped = std::sqrt(std::norm(r0(0, 1)) + std::norm(r0(1, 0)) + std::norm(r0(1, 1)));
    out.tail = {std::abs(q), std::abs(r), std::abs(s)};

    std::array<double, 5> lambda{std::abs(a0), std::abs(p), std::abs(q), std::abs(r), std::abs(s)};
    double n = 0.0;
    for (double l : lambda) n += l * l;
    n = std::sqrt(n);
    for (double& l : lambda) l /= n;
    out.canon.coeffs.lambda = lambda;
    out.canon.coeffs.theta = theta;

    const std::array<cplx, 2> d1{unit_phase(alpha0), unit_phase(alpha1)};
    const std::array<cplx, 2> d2{1.0, unit_phase(beta1)};
    const std::array<cplx, 2> d3{1.0, unit_phase(gamma1)};
    out.canon.locals = {Matrix::diagonal(d1) * w, Matrix::diagonal(d2) * frame.u.adjoint(),
                        Matrix::diagonal(d3) * frame.v.transpose()};
    return out;
}

}  // namespace

PureState3::PureState3(const Amplitudes& amps) : amps_(amps) {
    for (const auto& z : amps_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw InputError("state has non-finite amplitude");
    }
    const double n = std::sqrt(sum_sq(amps_));
    if (std::abs(n - 1.0) > kNormTol) throw InputError("state not normalized (norm " + std::to_string(n) + ")");
}

PureState3::PureState3() : amps_{} { amps_[0] = 1.0; }

PureState3 PureState3::normalized(Amplitudes amps) {
    const double n = std::sqrt(sum_sq(amps));
    if (!std::isfinite(n) || n == 0.0) throw InputError("cannot normalize a zero or non-finite vector");
    for (auto& z : amps) z /= n;
    return PureState3(amps);
}

double PureState3::norm() const noexcept { return std::sqrt(sum_sq(amps_)); }

Matrix PureState3::projector() const { return Matrix::projector(amps_); }

double max_abs_diff(const PureState3& a, const PureState3& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < 8; ++k) d = std::max(d, std::abs(a[k] - b[k]));
    return d;
}

TwoQubitPure::TwoQubitPure(const std::array<cplx, 4>& amps) : amps_(amps) {
    const double n = std::sqrt(sum_sq(amps_));
    if (!std::isfinite(n) || std::abs(n - 1.0) > kNormTol) {
        throw InputError("two-qubit state not normalized (norm " + std::to_string(n) + ")");
    }
}

Matrix TwoQubitPure::amplitude_matrix() const { return {{amps_[0], amps_[1]}, {amps_[2], amps_[3]}}; }

std::pair<double, double> TwoQubitPure::schmidt() const {
    const Svd2 svd = svd2(amplitude_matrix());
    const double a = svd.s[0] * svd.s[0];
    const double b = svd.s[1] * svd.s[1];
    const double total = a + b;
    return {a / total, b / total};
}

NamedState parse_named_state(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (lower == "ghz") return NamedState::ghz;
    if (lower == "w") return NamedState::w;
    if (lower == "product") return NamedState::product;
    throw InputError("unknown named state '" + std::string(name) + "' (expected GHZ, W or product)");
}

PureState3 named_state(NamedState which) {
    PureState3::Amplitudes a{};
    switch (which) {
        case NamedState::ghz:
            a[0] = a[7] = 1.0 / std::sqrt(2.0);
            break;
        case NamedState::w:
            a[1] = a[2] = a[4] = 1.0 / std::sqrt(3.0);
            break;
        case NamedState::product:
            a[0] = 1.0;
            break;
    }
    return PureState3(a);
}

PureState3 haar_random(std::uint64_t seed, std::uint64_t index) {
    CounterRng rng(seed, index, rng_stream::kHaarState);
    PureState3::Amplitudes a;
    for (std::size_t k = 0; k < 8; k += 2) {
        const auto g = gaussian_pair(rng);
        a[k] = g[0];
        a[k + 1] = g[1];
    }
    return PureState3::normalized(a);
}

Matrix haar_unitary2(std::uint64_t seed, std::uint64_t index) {
    CounterRng rng(seed, index, rng_stream::kLocalUnitary);
    const auto g0 = gaussian_pair(rng);
    const auto g1 = gaussian_pair(rng);
    // Gram-Schmidt on Gaussian columns is Haar when R has a positive diagonal.
    const double n0 = std::sqrt(std::norm(g0[0]) + std::norm(g0[1]));
    const cplx c0[2] = {g0[0] / n0, g0[1] / n0};
    const cplx overlap = std::conj(c0[0]) * g1[0] + std::conj(c0[1]) * g1[1];
    cplx c1[2] = {g1[0] - overlap * c0[0], g1[1] - overlap * c0[1]};
    const double n1 = std::sqrt(std::norm(c1[0]) + std::norm(c1[1]));
    c1[0] /= n1;
    c1[1] /= n1;
    return {{c0[0], c1[0]}, {c0[1], c1[1]}};
}

std::array<cplx, 2> haar_qubit(std::uint64_t seed, std::uint64_t index) {
    CounterRng rng(seed, index, rng_stream::kHaarQubit);
    return haar_qubit(rng);
}

std::array<cplx, 2> haar_qubit(CounterRng& rng) {
    auto g = gaussian_pair(rng);
    const double n = std::sqrt(std::norm(g[0]) + std::norm(g[1]));
    return {g[0] / n, g[1] / n};
}

PureState3 permute_qubits(const PureState3& psi, const Permutation& perm) {
    std::array<bool, 3> seen{};
    for (Qubit q : perm) {
        if (q < 1 || q > 3 || seen[q - 1]) throw InputError("invalid qubit permutation");
        seen[q - 1] = true;
    }
    PureState3::Amplitudes out{};
    for (unsigned i = 0; i < 8; ++i) {
        unsigned j = 0;
        for (int q = 1; q <= 3; ++q) {
            const unsigned bit = (i >> (3 - q)) & 1u;
            j |= bit << (3 - perm[q - 1]);
        }
        out[j] = psi[i];
    }
    return PureState3(out);
}

PureState3 apply_local(const PureState3& psi, const Matrix& u1, const Matrix& u2, const Matrix& u3) {
    const Matrix u = kron(kron(u1, u2), u3);
    PureState3::Amplitudes out{};
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) out[i] += u(i, j) * psi[j];
    return PureState3::normalized(out);
}

void CanonicalCoeffs::validate() const {
    double s = 0.0;
    for (double l : lambda) {
        if (!std::isfinite(l) || l < 0.0) throw InputError("canonical coefficient λ must be finite and nonnegative");
        s += l * l;
    }
    if (std::abs(s - 1.0) > kNormTol) throw InputError("canonical coefficients are not normalized");
    if (!std::isfinite(theta) || theta < 0.0 || theta > kPi) throw InputError("canonical phase θ outside [0, π]");
}

CanonicalCoeffs random_canonical(std::uint64_t seed, std::uint64_t index) {
    CounterRng rng(seed, index, rng_stream::kCanonicalCoeffs);
    CanonicalCoeffs c;
    double n = 0.0;
    for (std::size_t k = 0; k < 5; k += 2) {
        const auto [a, b] = rng.normal_pair();
        c.lambda[k] = std::abs(a);
        if (k + 1 < 5) c.lambda[k + 1] = std::abs(b);
    }
    for (double l : c.lambda) n += l * l;
    n = std::sqrt(n);
    for (double& l : c.lambda) l /= n;
    c.theta = kPi * rng.uniform();
    return c;
}

PureState3 from_canonical(const CanonicalCoeffs& c) {
    c.validate();
    PureState3::Amplitudes a{};
    a[0] = c.lambda[0];
    a[4] = c.lambda[1] * unit_phase(c.theta);
    a[5] = c.lambda[2];
    a[6] = c.lambda[3];
    a[7] = c.lambda[4];
    return PureState3::normalized(a);
}

double Canonicalization::residual(const PureState3& psi) const {
    return max_abs_diff(apply_local(psi, locals[0], locals[1], locals[2]), from_canonical(coeffs));
}

Canonicalization to_canonical(const PureState3& psi) {
    const Matrix t0 = slice(psi, 0);
    const Matrix t1 = slice(psi, 1);

    std::vector<Attempt> attempts;
    for (const Matrix& w : qubit1_candidates(t0, t1)) attempts.push_back(canonicalize_with(t0, t1, w));

    // Only rotations that actually make the first slice singular qualify.
    double min_dropped = attempts.front().dropped;
    for (const auto& a : attempts) min_dropped = std::min(min_dropped, a.dropped);
    const double dropped_limit = std::max(1e-11, 4.0 * min_dropped);
    std::erase_if(attempts, [&](const Attempt& a) { return a.dropped > dropped_limit; });

    // Tolerance on θ landing just past π (or just below 2π) from round-off.
    constexpr double kThetaSlack = 1e-12;
    const Attempt* best = nullptr;
    for (auto& a : attempts) {
        double& th = a.canon.coeffs.theta;
        if (th > 2.0 * kPi - kThetaSlack) th = 0.0;
        if (th > kPi + kThetaSlack) continue;
        th = std::min(th, kPi);
        if (!best) {
            best = &a;
            continue;
        }
        const double dl = a.canon.coeffs.lambda[0] - best->canon.coeffs.lambda[0];
        if (dl > 1e-12 || (std::abs(dl) <= 1e-12 && th < best->canon.coeffs.theta)) best = &a;
    }
    if (best) return best->canon;

    // No rotation puts θ in [0, π]. That happens only when one of the |101>,
    // |110>, |111> terms is negligible and the phase becomes removable.
    std::optional<Attempt> forced;
    double forced_amp = 0.0;
    for (const auto& a : attempts) {
        const auto it = std::min_element(a.tail.begin(), a.tail.end());
        if (!forced || *it < forced_amp) {
            forced_amp = *it;
            forced = canonicalize_with(t0, t1, a.rotation, static_cast<int>(it - a.tail.begin()) + 1);
        }
    }
    if (!forced || forced_amp > 1e-6) {
        throw NumericalError("to_canonical: no representative with θ in [0, π]");
    }
    return forced->canon;
}

DensityMatrix reduced_density(const PureState3& psi, std::span<const Qubit> keep) {
    if (keep.empty() || keep.size() > 2) throw InputError("keep must be a nonempty proper subset of {1,2,3}");
    std::array<bool, 3> seen{};
    for (Qubit q : keep) {
        if (q < 1 || q > 3 || seen[q - 1]) throw InputError("keep must be a nonempty proper subset of {1,2,3}");
        seen[q - 1] = true;
    }
    return DensityMatrix(partial_trace(psi.projector(), keep, 3));
}

DensityMatrix reduced_density(const PureState3& psi, std::initializer_list<Qubit> keep) {
    return reduced_density(psi, std::span<const Qubit>(keep.begin(), keep.size()));
}

}  // namespace tritangle

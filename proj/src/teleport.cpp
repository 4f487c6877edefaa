#include "tritangle/teleport.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tritangle/errors.hpp"
#include "tritangle/measures.hpp"
#include "tritangle/rng.hpp"

namespace tritangle {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kGridPoints = 24;
constexpr int kRestarts = 4;
constexpr double kStepTol = 1e-10;
constexpr std::uint64_t kRestartSeed = 0x5eed7e1e9027ULL;

void require_focus(Qubit focus) {
    if (focus < 1 || focus > 3) throw InputError("focus qubit must be 1, 2 or 3");
}

// psi with the focus qubit moved to position 1 and its pair to 2, 3.
PureState3 focus_first(const PureState3& psi, Qubit focus) {
    const auto pair = remaining_pair(focus);
    Permutation perm{};
    perm[focus - 1] = 1;
    perm[pair[0] - 1] = 2;
    perm[pair[1] - 1] = 3;
    return permute_qubits(psi, perm);
}

// det(x·T0 + y·T1) = x²·c0 + x·y·mixed + y²·c1 for the focus-qubit slices.
struct SliceDeterminants {
    cplx c0, mixed, c1;

    explicit SliceDeterminants(const PureState3& moved) {
        const cplx* s0 = &moved.amps()[0];
        const cplx* s1 = &moved.amps()[4];
        c0 = s0[0] * s0[3] - s0[1] * s0[2];
        c1 = s1[0] * s1[3] - s1[1] * s1[2];
        mixed = s0[0] * s1[3] + s1[0] * s0[3] - s0[1] * s1[2] - s1[1] * s0[2];
    }

    double det_abs(cplx x, cplx y) const { return std::abs(x * x * c0 + x * y * mixed + y * y * c1); }

    // Σ_t p_t (1 + C_t)/2 = 1/2 + Σ_t |det M_t| with M_t the unnormalized post-state.
    double objective(const std::array<double, 3>& angles) const {
        const double ct = std::cos(angles[0]), st = std::sin(angles[0]);
        const cplx u00 = ct * std::polar(1.0, angles[1]);
        const cplx u01 = st * std::polar(1.0, angles[2]);
        const cplx u10 = -st * std::polar(1.0, -angles[2]);
        const cplx u11 = ct * std::polar(1.0, -angles[1]);
        return 0.5 + det_abs(u00, u01) + det_abs(u10, u11);
    }
};

template <class F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = f(c), fd = f(d);
    while (hi - lo > tol) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    return fc > fd ? std::pair{c, fc} : std::pair{d, fd};
}

struct Candidate {
    std::array<double, 3> x{};
    double value = 0.0;
};

Candidate refine(const SliceDeterminants& g, Candidate start, double bracket) {
    Candidate cur = start;
    double h = bracket;
    for (int sweep = 0; sweep < 400 && h > kStepTol; ++sweep) {
        const double before = cur.value;
        for (std::size_t d = 0; d < 3; ++d) {
            auto along = [&](double v) {
                auto x = cur.x;
                x[d] = v;
                return g.objective(x);
            };
            const auto [xd, fd] = golden_max(along, cur.x[d] - h, cur.x[d] + h, kStepTol);
            if (fd > cur.value) {
                cur.x[d] = xd;
                cur.value = fd;
            }
        }
        if (cur.value - before <= 1e-15) h *= 0.25;
    }
    return cur;
}

double wrap_angle(double x) {
    x = std::fmod(x, 2.0 * kPi);
    return x < 0.0 ? x + 2.0 * kPi : x;
}

// Post-measurement states rotated into their Schmidt frames, ready for the
// Bell-measurement stage.
struct SchmidtBranch {
    int t = 0;
    double probability = 0.0;
    Matrix frame_state;  // u† M v, diagonal up to round-off
};

std::vector<SchmidtBranch> schmidt_branches(const PureState3& psi, Qubit focus, const MeasurementSetting& setting) {
    std::vector<SchmidtBranch> out;
    for (const auto& rec : measure_focus(psi, focus, setting)) {
        if (rec.degenerate()) continue;
        const Matrix m = rec.post_state->amplitude_matrix();
        const Svd2 svd = svd2(m);
        out.push_back({rec.t, rec.probability, svd.u.adjoint() * m * svd.v});
    }
    return out;
}

// Bell basis index m = 2·x + z: Φ+ (0), Φ− (1), Ψ+ (2), Ψ− (3).
cplx bell_amplitude(int m, int a, int j) {
    const double r = 1.0 / std::sqrt(2.0);
    const int x = m >> 1, z = m & 1;
    if ((a ^ j) != x) return 0.0;
    return (a == 1 && z == 1) ? -r : r;
}

// Correction for outcome m: I, Z, X, X·Z.
Qubit1 correct(int m, const Qubit1& v) {
    Qubit1 out = v;
    if (m & 1) out[1] = -out[1];
    if (m & 2) std::swap(out[0], out[1]);
    return out;
}

std::vector<ProtocolBranch> run_branches(const std::vector<SchmidtBranch>& schmidt, const Qubit1& input) {
    std::vector<ProtocolBranch> out;
    double total = 0.0;
    for (const auto& sb : schmidt) {
        for (int m = 0; m < 4; ++m) {
            Qubit1 k{};
            for (int a = 0; a < 2; ++a)
                for (int j = 0; j < 2; ++j) {
                    const cplx w = std::conj(bell_amplitude(m, a, j)) * input[a];
                    if (w == cplx{}) continue;
                    k[0] += w * sb.frame_state(j, 0);
                    k[1] += w * sb.frame_state(j, 1);
                }
            const double weight = std::norm(k[0]) + std::norm(k[1]);
            if (weight < 1e-30) continue;
            const double n = std::sqrt(weight);
            Qubit1 corrected = correct(m, {k[0] / n, k[1] / n});
            out.push_back({{sb.t, m >> 1, m & 1}, sb.probability * weight, corrected});
            total += sb.probability * weight;
        }
    }
    for (auto& b : out) b.probability /= total;
    return out;
}

Qubit1 checked_input(const Qubit1& input) {
    const double n = std::sqrt(std::norm(input[0]) + std::norm(input[1]));
    if (!std::isfinite(n) || std::abs(n - 1.0) > kNormTol) throw InputError("input qubit must be normalized");
    return input;
}

}  // namespace

Matrix MeasurementSetting::matrix() const {
    const double ct = std::cos(t), st = std::sin(t);
    return {{ct * std::polar(1.0, a), st * std::polar(1.0, b)}, {-st * std::polar(1.0, -b), ct * std::polar(1.0, -a)}};
}

MeasurementSetting MeasurementSetting::hadamard() { return {kPi / 4.0, kPi / 2.0, kPi / 2.0}; }

std::array<Qubit, 2> remaining_pair(Qubit focus) {
    require_focus(focus);
    const Qubit j = focus % 3 + 1;
    return {j, j % 3 + 1};
}

std::array<OutcomeRecord, 2> measure_focus(const PureState3& psi, Qubit focus, const MeasurementSetting& setting) {
    const PureState3 moved = focus_first(psi, focus);
    const Matrix u = setting.matrix();
    std::array<OutcomeRecord, 2> out;
    for (int t = 0; t < 2; ++t) {
        // (<t|U ⊗ I)|psi> = Σ_q U(t, q)·slice_q
        std::array<cplx, 4> m{};
        for (int q = 0; q < 2; ++q)
            for (int r = 0; r < 4; ++r) m[r] += u(t, q) * moved[4 * q + r];
        double p = 0.0;
        for (const auto& z : m) p += std::norm(z);
        out[t].t = t;
        out[t].probability = p;
        if (p >= kDegenerateProbability) {
            const double n = std::sqrt(p);
            for (auto& z : m) z /= n;
            out[t].post_state = TwoQubitPure(m);
        }
    }
    return out;
}

double fef_pure(const TwoQubitPure& phi) {
    const auto [alpha, beta] = phi.schmidt();
    return 0.5 + std::sqrt(alpha * beta);
}

double concurrence_pure(const TwoQubitPure& phi) {
    const auto [alpha, beta] = phi.schmidt();
    return 2.0 * std::sqrt(alpha * beta);
}

double fef_mixed(const DensityMatrix& rho) {
    if (rho.dim() != 4) throw ContractError("fef_mixed needs a two-qubit density matrix");
    const double r = 1.0 / std::sqrt(2.0);
    const cplx i(0.0, 1.0);
    // Columns: Φ+, iΦ−, iΨ+, Ψ−. Maximally entangled states are the real
    // unit combinations of these, up to a global phase.
    const Matrix magic{{r, i * r, 0.0, 0.0}, {0.0, 0.0, i * r, r}, {0.0, 0.0, i * r, -r}, {r, -i * r, 0.0, 0.0}};
    const Matrix in_magic = magic.adjoint() * rho.matrix() * magic;
    Matrix real_part(4, 4);
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) real_part(a, b) = 0.5 * (in_magic(a, b).real() + in_magic(b, a).real());
    return herm_eigvals(real_part).front();
}

double fidelity_from_fef(double f) {
    if (!std::isfinite(f) || f < 0.25 - 1e-12 || f > 1.0 + 1e-12) {
        throw InputError("fully entangled fraction must lie in [1/4, 1], got " + std::to_string(f));
    }
    return (2.0 * f + 1.0) / 3.0;
}

double split_fidelity_objective(const PureState3& psi, Qubit focus, const MeasurementSetting& setting) {
    double s = 0.0;
    for (const auto& rec : measure_focus(psi, focus, setting)) {
        if (!rec.degenerate()) s += rec.probability * fef_pure(*rec.post_state);
    }
    return s;
}

TeleportReport optimize_measurement(const PureState3& psi, Qubit focus) {
    require_focus(focus);
    const SliceDeterminants g(focus_first(psi, focus));

    const double t_step = (kPi / 2.0) / kGridPoints;
    const double phase_step = 2.0 * kPi / kGridPoints;
    Candidate grid_best{{0.0, 0.0, 0.0}, -1.0};
    for (int i = 0; i < kGridPoints; ++i)
        for (int j = 0; j < kGridPoints; ++j)
            for (int k = 0; k < kGridPoints; ++k) {
                const std::array<double, 3> x{(i + 0.5) * t_step, j * phase_step, k * phase_step};
                const double v = g.objective(x);
                if (v > grid_best.value) grid_best = {x, v};
            }

    Candidate best = refine(g, grid_best, phase_step);
    for (int r = 0; r < kRestarts; ++r) {
        CounterRng rng(kRestartSeed, static_cast<std::uint64_t>(r), rng_stream::kOptimizerRestart);
        Candidate start;
        start.x = {rng.uniform() * kPi / 2.0, rng.uniform() * 2.0 * kPi, rng.uniform() * 2.0 * kPi};
        start.value = g.objective(start.x);
        const Candidate c = refine(g, start, phase_step);
        if (c.value > best.value) best = c;
    }

    TeleportReport rep;
    rep.focus = focus;
    rep.setting = {wrap_angle(best.x[0]), wrap_angle(best.x[1]), wrap_angle(best.x[2])};
    rep.f = split_fidelity_objective(psi, focus, rep.setting);
    rep.F = fidelity_from_fef(rep.f);
    const auto pair = remaining_pair(focus);
    rep.tau_partner = partial_tangle(psi, pair[0], pair[1]);
    return rep;
}

std::array<double, 3> f_closed_form(const CanonicalCoeffs& c) {
    c.validate();
    const auto& l = c.lambda;
    double r1 = l[0] * l[0] * l[4] * l[4] + l[1] * l[1] * l[4] * l[4] + l[2] * l[2] * l[3] * l[3] -
                2.0 * l[1] * l[2] * l[3] * l[4] * std::cos(c.theta);
    if (r1 < -1e-12) throw InputError("closed-form f1 radicand negative");
    r1 = std::max(r1, 0.0);
    return {0.5 + std::sqrt(r1), 0.5 + l[0] * std::sqrt(l[2] * l[2] + l[4] * l[4]),
            0.5 + l[0] * std::sqrt(l[3] * l[3] + l[4] * l[4])};
}

std::array<MainRelation, 3> main_relation_residual(const PureState3& psi) {
    const MeasureSet m = compute_measures(psi);
    const std::array<double, 3> partner{m.tau23, m.tau31, m.tau12};
    std::array<MainRelation, 3> out;
    for (Qubit k = 1; k <= 3; ++k) {
        const TeleportReport rep = optimize_measurement(psi, k);
        auto& r = out[k - 1];
        r.focus = k;
        r.tau_pair = partner[k - 1];
        r.f = rep.f;
        r.F = rep.F;
        r.residual_f = std::abs(r.tau_pair - (2.0 * rep.f - 1.0));
        r.residual_F = std::abs(r.tau_pair - (3.0 * rep.F - 2.0));
    }
    return out;
}

std::vector<ProtocolBranch> protocol_branches(const PureState3& psi, Qubit focus, const MeasurementSetting& setting,
                                              const Qubit1& input) {
    return run_branches(schmidt_branches(psi, focus, setting), checked_input(input));
}

ProtocolRun simulate_protocol(const PureState3& psi, Qubit focus, const MeasurementSetting& setting,
                              const Qubit1& input, double draw) {
    if (!(draw >= 0.0 && draw < 1.0)) throw InputError("draw must lie in [0, 1)");
    const auto branches = protocol_branches(psi, focus, setting, input);
    double acc = 0.0;
    for (const auto& b : branches) {
        acc += b.probability;
        if (draw < acc) return {b.output, b.bits};
    }
    return {branches.back().output, branches.back().bits};
}

McResult mc_average_fidelity(const PureState3& psi, Qubit focus, const MeasurementSetting& setting,
                             std::size_t samples, std::uint64_t seed) {
    if (samples < 100) throw InputError("Monte-Carlo needs at least 100 samples");
    // For Bell outcome m the corrected, unnormalized output is A_m·ξ, and that
    // branch has weight p_t·|A_m ξ|^2, so it adds p_t·|ξ† A_m ξ|^2 to the
    // branch-averaged fidelity.
    struct Branch {
        double p;
        std::array<cplx, 4> a;  // row-major 2x2
    };
    std::vector<Branch> maps;
    for (const auto& sb : schmidt_branches(psi, focus, setting)) {
        for (int m = 0; m < 4; ++m) {
            std::array<cplx, 4> a{};
            for (int c = 0; c < 2; ++c)
                for (int in = 0; in < 2; ++in)
                    for (int j = 0; j < 2; ++j) a[2 * c + in] += std::conj(bell_amplitude(m, in, j)) * sb.frame_state(j, c);
            if (m & 1) a[2] = -a[2], a[3] = -a[3];
            if (m & 2) std::swap(a[0], a[2]), std::swap(a[1], a[3]);
            maps.push_back({sb.probability, a});
        }
    }

    // Inputs come from one stream in sample order, so (seed, samples) fixes the result.
    CounterRng rng(seed, 0, rng_stream::kMonteCarloInput);
    double mean = 0.0, m2 = 0.0;
    for (std::size_t n = 0; n < samples; ++n) {
        const Qubit1 xi = haar_qubit(rng);
        double fid = 0.0, total = 0.0;
        for (const auto& b : maps) {
            const cplx o0 = b.a[0] * xi[0] + b.a[1] * xi[1];
            const cplx o1 = b.a[2] * xi[0] + b.a[3] * xi[1];
            fid += b.p * std::norm(std::conj(xi[0]) * o0 + std::conj(xi[1]) * o1);
            total += b.p * (std::norm(o0) + std::norm(o1));
        }
        fid /= total;
        const double delta = fid - mean;
        mean += delta / static_cast<double>(n + 1);
        m2 += delta * (fid - mean);
    }
    const double var = m2 / static_cast<double>(samples - 1);
    return {mean, std::sqrt(var / static_cast<double>(samples))};
}

TeleportReport teleport_report(const PureState3& psi, Qubit focus, std::size_t samples, std::uint64_t seed) {
    TeleportReport rep = optimize_measurement(psi, focus);
    if (samples > 0) {
        const McResult mc = mc_average_fidelity(psi, focus, rep.setting, samples, seed);
        rep.mc_estimate = mc.estimate;
        rep.mc_stderr = mc.standard_error;
        rep.samples = samples;
    }
    return rep;
}

}  // namespace tritangle

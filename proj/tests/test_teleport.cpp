#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "tritangle/errors.hpp"
#include "tritangle/measures.hpp"
#include "tritangle/teleport.hpp"

using namespace tritangle;
using doctest::Approx;

namespace {

const PureState3 kGhz = named_state(NamedState::ghz);
const PureState3 kW = named_state(NamedState::w);
const PureState3 kProduct = named_state(NamedState::product);
const double kR = 1.0 / std::sqrt(2.0);

double overlap2(const Qubit1& a, const Qubit1& b) { return std::norm(std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1]); }

CanonicalCoeffs flat_coeffs() {
    const double f = 1.0 / std::sqrt(5.0);
    return {{f, f, f, f, f}, std::numbers::pi / 2};
}

}  // namespace

TEST_CASE("remaining pair is cyclic") {
    CHECK(remaining_pair(1) == std::array<Qubit, 2>{2, 3});
    CHECK(remaining_pair(2) == std::array<Qubit, 2>{3, 1});
    CHECK(remaining_pair(3) == std::array<Qubit, 2>{1, 2});
    CHECK_THROWS_AS(remaining_pair(4), InputError);
}

TEST_CASE("measurement settings are unitary") {
    for (const auto& s : {MeasurementSetting::identity(), MeasurementSetting::hadamard(), MeasurementSetting{0.3, 1.1, -2.0}}) {
        const Matrix u = s.matrix();
        CHECK((u.adjoint() * u - Matrix::identity(2)).max_abs() < 1e-15);
    }
    // Hadamard setting equals H up to a global phase.
    const Matrix u = MeasurementSetting::hadamard().matrix();
    const Matrix h = hadamard();
    const cplx phase = u(0, 0) / h(0, 0);
    CHECK(std::abs(std::abs(phase) - 1.0) < 1e-15);
    CHECK((u - h * phase).max_abs() < 1e-15);
}

TEST_CASE("measure_focus examples") {
    const auto had = measure_focus(kGhz, 1, MeasurementSetting::hadamard());
    CHECK(had[0].probability == Approx(0.5));
    CHECK(had[1].probability == Approx(0.5));
    REQUIRE_FALSE(had[0].degenerate());
    const auto a = had[0].post_state->amps();
    // (|00> + |11>)/√2 up to a global phase
    const cplx g = a[0] / kR;
    CHECK(std::abs(std::abs(g) - 1.0) < 1e-14);
    CHECK(std::abs(a[3] - g * kR) < 1e-14);
    CHECK(std::abs(a[1]) < 1e-14);
    CHECK(std::abs(a[2]) < 1e-14);

    const auto id = measure_focus(kGhz, 1, MeasurementSetting::identity());
    CHECK(id[0].probability == Approx(0.5));
    CHECK(std::abs(std::abs(id[0].post_state->amps()[0]) - 1.0) < 1e-14);

    const auto prod = measure_focus(kProduct, 1, MeasurementSetting::identity());
    CHECK(prod[0].probability == Approx(1.0));
    CHECK(std::abs(std::abs(prod[0].post_state->amps()[0]) - 1.0) < 1e-15);
    CHECK(prod[1].degenerate());
    CHECK(prod[1].probability < kDegenerateProbability);
}

TEST_CASE("measure_focus probabilities sum to one") {
    for (std::uint64_t n = 0; n < 100; ++n) {
        const PureState3 psi = haar_random(61, n);
        const MeasurementSetting s{0.1 * static_cast<double>(n), 0.37 * n, -0.21 * n};
        for (Qubit k : {1, 2, 3}) {
            const auto r = measure_focus(psi, k, s);
            CHECK(r[0].probability + r[1].probability == Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("fef_pure examples") {
    CHECK(fef_pure(TwoQubitPure({kR, 0.0, 0.0, kR})) == Approx(1.0));
    CHECK(fef_pure(TwoQubitPure({1.0, 0.0, 0.0, 0.0})) == Approx(0.5));
    CHECK(fef_pure(TwoQubitPure({std::sqrt(0.8), 0.0, 0.0, std::sqrt(0.2)})) == Approx(0.9));
}

TEST_CASE("fef_mixed examples") {
    const cplx phi[] = {kR, 0.0, 0.0, kR};
    CHECK(fef_mixed(DensityMatrix::from_pure(phi)) == Approx(1.0).epsilon(1e-12));
    CHECK(fef_mixed(DensityMatrix(Matrix::identity(4) * cplx(0.25))) == Approx(0.25).epsilon(1e-12));
    const cplx a8[] = {std::sqrt(0.8), 0.0, 0.0, std::sqrt(0.2)};
    CHECK(fef_mixed(DensityMatrix::from_pure(a8)) == Approx(0.9).epsilon(1e-12));
    const cplx q[] = {1.0, 0.0};
    CHECK_THROWS_AS(fef_mixed(DensityMatrix::from_pure(q)), ContractError);
}

TEST_CASE("two-qubit layer: mixed and pure fully entangled fraction agree") {
    for (std::uint64_t n = 0; n < 200; ++n) {
        const PureState3 src = haar_random(62, n);
        std::array<cplx, 4> amps{};
        double nn = 0.0;
        for (int k = 0; k < 4; ++k) nn += std::norm(amps[k] = src[k]);
        for (auto& z : amps) z /= std::sqrt(nn);
        const TwoQubitPure phi(amps);
        const double fp = fef_pure(phi);
        CHECK(std::abs(fef_mixed(DensityMatrix::from_pure(amps)) - fp) <= 1e-10);
        CHECK(std::abs(concurrence_pure(phi) - (2.0 * fp - 1.0)) <= 1e-10);
        CHECK(std::abs(fp - oracle::fef_pure(amps)) <= 1e-12);
        CHECK(std::abs(concurrence_mixed(DensityMatrix::from_pure(amps)) - concurrence_pure(phi)) <= 1e-8);
    }
}

TEST_CASE("fef_mixed matches a brute-force search on mixed states") {
    for (std::uint64_t n = 0; n < 6; ++n) {
        const PureState3 psi = haar_random(63, n);
        const DensityMatrix rho = reduced_density(psi, {2, 3});
        oracle::Mat4 e;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) e(r, c) = rho(r, c);
        CHECK(std::abs(fef_mixed(rho) - oracle::fef_brute(e)) < 1e-7);
    }
}

TEST_CASE("fidelity_from_fef") {
    CHECK(fidelity_from_fef(1.0) == Approx(1.0));
    CHECK(fidelity_from_fef(0.5) == Approx(2.0 / 3.0));
    CHECK(fidelity_from_fef(5.0 / 6.0) == Approx(8.0 / 9.0));
    CHECK_THROWS_AS(fidelity_from_fef(0.2), InputError);
    CHECK_THROWS_AS(fidelity_from_fef(1.1), InputError);
}

TEST_CASE("split_fidelity_objective examples") {
    CHECK(split_fidelity_objective(kGhz, 1, MeasurementSetting::hadamard()) == Approx(1.0));
    CHECK(split_fidelity_objective(kGhz, 1, MeasurementSetting::identity()) == Approx(0.5));
    for (const auto& s : {MeasurementSetting::identity(), MeasurementSetting::hadamard(), MeasurementSetting{0.7, 0.2, 2.9}})
        CHECK(split_fidelity_objective(kProduct, 1, s) == Approx(0.5));
}

TEST_CASE("optimize_measurement landmarks") {
    for (Qubit k : {1, 2, 3}) {
        const TeleportReport g = optimize_measurement(kGhz, k);
        CHECK(g.f == Approx(1.0).epsilon(1e-9));
        CHECK(g.F == Approx(1.0).epsilon(1e-9));
        const TeleportReport w = optimize_measurement(kW, k);
        CHECK(w.f == Approx(5.0 / 6.0).epsilon(1e-9));
        CHECK(w.F == Approx(8.0 / 9.0).epsilon(1e-9));
        CHECK(w.tau_partner == Approx(2.0 / 3.0).epsilon(1e-9));
        const TeleportReport p = optimize_measurement(kProduct, k);
        CHECK(p.f == Approx(0.5));
        CHECK(p.F == Approx(2.0 / 3.0));
    }
}

TEST_CASE("f_closed_form examples") {
    const double h = 1.0 / std::sqrt(2.0);
    const auto g = f_closed_form({{h, 0, 0, 0, h}, 0.0});
    for (double f : g) CHECK(f == Approx(1.0));
    const auto e = f_closed_form(flat_coeffs());
    CHECK(e[0] == Approx(0.5 + std::sqrt(3.0) / 5.0).epsilon(1e-12));
    CHECK(e[1] == Approx(0.5 + std::sqrt(2.0) / 5.0).epsilon(1e-12));
    CHECK(e[2] == Approx(0.5 + std::sqrt(2.0) / 5.0).epsilon(1e-12));
    const PureState3 psi = from_canonical(flat_coeffs());
    for (Qubit k : {1, 2, 3}) CHECK(std::abs(optimize_measurement(psi, k).f - e[k - 1]) <= 1e-6);
    for (double f : f_closed_form({{1, 0, 0, 0, 0}, 0.0})) CHECK(f == 0.5);
}

TEST_CASE("optimizer matches the closed form on random canonical states") {
    for (std::uint64_t n = 0; n < 100; ++n) {
        const CanonicalCoeffs c = random_canonical(64, n);
        const auto closed = f_closed_form(c);
        const PureState3 psi = from_canonical(c);
        for (Qubit k : {1, 2, 3}) CHECK(std::abs(optimize_measurement(psi, k).f - closed[k - 1]) <= 1e-6);
    }
}

TEST_CASE("optimizer dominates arbitrary settings and respects the classical bound") {
    for (std::uint64_t n = 0; n < 30; ++n) {
        const PureState3 psi = haar_random(65, n);
        for (Qubit k : {1, 2, 3}) {
            const TeleportReport r = optimize_measurement(psi, k);
            CHECK(r.f >= 0.5 - 1e-9);
            CHECK(r.F >= 2.0 / 3.0 - 1e-9);
            CHECK(std::abs(split_fidelity_objective(psi, k, r.setting) - r.f) < 1e-12);
            for (int s = 0; s < 20; ++s) {
                const MeasurementSetting u{0.31 * s, 0.77 * s + n, 1.3 * s - k};
                CHECK(split_fidelity_objective(psi, k, u) <= r.f + 1e-9);
            }
        }
    }
}

TEST_CASE("main relation on landmarks and Haar states") {
    for (const auto& psi : {kGhz, kW}) {
        for (const auto& r : main_relation_residual(psi)) {
            CHECK(r.residual_f <= 1e-6);
            CHECK(r.residual_F <= 1e-6);
        }
    }
    for (std::uint64_t n = 0; n < 50; ++n) {
        const PureState3 psi = haar_random(66, n);
        const MeasureSet m = compute_measures(psi);
        const auto rel = main_relation_residual(psi);
        CHECK(rel[0].tau_pair == Approx(m.tau23).epsilon(1e-12));
        CHECK(rel[1].tau_pair == Approx(m.tau31).epsilon(1e-12));
        CHECK(rel[2].tau_pair == Approx(m.tau12).epsilon(1e-12));
        for (const auto& r : rel) {
            CHECK(r.residual_f <= 1e-5);
            CHECK(r.residual_F <= 1e-5);
        }
    }
}

TEST_CASE("protocol: GHZ with the Hadamard setting teleports perfectly") {
    const Qubit1 plus{kR, kR};
    for (Qubit k : {1, 2, 3}) {
        const auto branches = protocol_branches(kGhz, k, MeasurementSetting::hadamard(), plus);
        double total = 0.0;
        for (const auto& b : branches) {
            total += b.probability;
            CHECK(overlap2(plus, b.output) == Approx(1.0).epsilon(1e-12));
        }
        CHECK(total == Approx(1.0));
        CHECK(branches.size() == 8);
    }
    for (double draw : {0.0, 0.3, 0.6, 0.99}) {
        const ProtocolRun r = simulate_protocol(kGhz, 1, MeasurementSetting::hadamard(), plus, draw);
        CHECK(overlap2(plus, r.output) == Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("protocol: product resource reproduces basis states") {
    const Qubit1 zero{1.0, 0.0};
    for (const auto& b : protocol_branches(kProduct, 1, MeasurementSetting::identity(), zero))
        CHECK(overlap2(zero, b.output) == Approx(1.0).epsilon(1e-12));
    const ProtocolRun r = simulate_protocol(kProduct, 1, MeasurementSetting::identity(), zero, 0.5);
    CHECK(overlap2(zero, r.output) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("protocol: GHZ measured in the computational basis transmits only populations") {
    const Qubit1 plus{kR, kR};
    double avg = 0.0;
    for (const auto& b : protocol_branches(kGhz, 1, MeasurementSetting::identity(), plus))
        avg += b.probability * overlap2(plus, b.output);
    CHECK(avg == Approx(0.5).epsilon(1e-12));
}

TEST_CASE("protocol rejects bad inputs") {
    CHECK_THROWS_AS(protocol_branches(kGhz, 1, MeasurementSetting::identity(), {1.0, 1.0}), InputError);
    CHECK_THROWS_AS(simulate_protocol(kGhz, 1, MeasurementSetting::identity(), {1.0, 0.0}, 1.0), InputError);
    CHECK_THROWS_AS(mc_average_fidelity(kGhz, 1, MeasurementSetting::hadamard(), 99, 1), InputError);
}

TEST_CASE("Monte-Carlo fidelity examples") {
    const McResult g = mc_average_fidelity(kGhz, 1, MeasurementSetting::hadamard(), 100000, 7);
    CHECK(std::abs(g.estimate - 1.0) <= 3.0 * g.standard_error + 1e-12);
    CHECK(g.standard_error < 1e-10);

    const TeleportReport p = optimize_measurement(kProduct, 1);
    const McResult pm = mc_average_fidelity(kProduct, 1, p.setting, 100000, 8);
    CHECK(std::abs(pm.estimate - 2.0 / 3.0) <= 3.0 * pm.standard_error);

    const PureState3 flat = from_canonical(flat_coeffs());
    const TeleportReport fr = optimize_measurement(flat, 1);
    const McResult fm = mc_average_fidelity(flat, 1, fr.setting, 100000, 9);
    const double expect = (2.0 * (0.5 + std::sqrt(3.0) / 5.0) + 1.0) / 3.0;
    CHECK(std::abs(fm.estimate - expect) <= 3.0 * fm.standard_error);

    // the same seed gives the same estimate
    const McResult again = mc_average_fidelity(flat, 1, fr.setting, 100000, 9);
    CHECK(again.estimate == fm.estimate);
}

TEST_CASE("Monte-Carlo fidelity tracks the optimum on random states") {
    for (std::uint64_t n = 0; n < 5; ++n) {
        const PureState3 psi = haar_random(67, n);
        const Qubit k = static_cast<Qubit>(n % 3) + 1;
        const TeleportReport r = teleport_report(psi, k, 20000, 100 + n);
        CHECK(r.samples == 20000);
        CHECK(std::abs(r.mc_estimate - r.F) <= 4.0 * r.mc_stderr);
    }
}

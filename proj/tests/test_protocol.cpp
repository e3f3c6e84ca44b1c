#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "rsp/errors.hpp"
#include "rsp/protocol.hpp"
#include "rsp/ree.hpp"

namespace {

using namespace rsp::protocol;
using rsp::ErrorKind;
using rsp::linalg::Complex;
using rsp::linalg::ComplexMatrix;
using rsp::linalg::max_abs;

constexpr double kPi = std::numbers::pi;
const double kEquatorialF = 0.5 + 1.0 / (2.0 * std::sqrt(2.0));

template <class F>
void expect_kind(F &&f, ErrorKind kind) {
    try {
        f();
        ADD_FAILURE() << "expected " << rsp::to_string(kind);
    } catch (const rsp::Error &e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
    }
}

// Amplitudes of (|0>_a phi1 - |1>_a phi0)/sqrt2 written out term by term, index = a A B C.
std::array<Complex, 16> resource_by_hand(double alpha) {
    const double beta = std::sqrt((1.0 - alpha * alpha) / 2.0);
    const double r = 1.0 / std::sqrt(2.0);
    std::array<Complex, 16> v{};
    v[0b0111] = r * alpha;
    v[0b0001] = r * beta;
    v[0b0010] = r * beta;
    v[0b1000] = -r * alpha;
    v[0b1101] = -r * beta;
    v[0b1110] = -r * beta;
    return v;
}

// rho_aB(a b, a' b') = sum_{A, C} psi(a A b C) conj(psi(a' A b' C)).
ComplexMatrix rho_ab_by_enumeration(const std::array<Complex, 16> &psi) {
    ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int a2 = 0; a2 < 2; ++a2)
                for (int b2 = 0; b2 < 2; ++b2)
                    for (int big_a = 0; big_a < 2; ++big_a)
                        for (int c = 0; c < 2; ++c) {
                            const int i = a << 3 | big_a << 2 | b << 1 | c;
                            const int j = a2 << 3 | big_a << 2 | b2 << 1 | c;
                            rho(a * 2 + b, a2 * 2 + b2) += psi[i] * std::conj(psi[j]);
                        }
    return rho;
}

std::vector<ProtocolSpec> grid_specs() {
    std::vector<ProtocolSpec> specs;
    for (int k = 0; k < 32; ++k) {
        specs.push_back(ProtocolSpec::equatorial(k * 2.0 * kPi / 32));
        specs.push_back(ProtocolSpec::polar(k * kPi / 32));
    }
    for (int k = 0; k <= 10; ++k) {
        for (double theta : {0.0, 0.4, 1.3, kPi}) specs.push_back(ProtocolSpec::general_alpha(theta, k / 10.0));
    }
    return specs;
}

TEST(ProtocolSpec, AngleAndAlphaRangesAreClosed) {
    EXPECT_NO_THROW(ProtocolSpec::equatorial(2.0 * kPi));
    EXPECT_NO_THROW(ProtocolSpec::polar(kPi));
    EXPECT_NO_THROW(ProtocolSpec::general_alpha(0.0, 1.0));
    expect_kind([] { ProtocolSpec::equatorial(-0.1); }, ErrorKind::AngleOutOfRange);
    expect_kind([] { ProtocolSpec::polar(3.5); }, ErrorKind::AngleOutOfRange);
    expect_kind([] { ProtocolSpec::equatorial(std::nan("")); }, ErrorKind::AngleOutOfRange);
    EXPECT_THROW(ProtocolSpec::general_alpha(0.0, 1.1), rsp::Error);
}

TEST(ProtocolSpec, ModeNamesRoundTrip) {
    for (auto m : {Mode::Equatorial, Mode::Polar, Mode::GeneralAlpha}) EXPECT_EQ(parse_mode(to_string(m)), m);
    EXPECT_THROW(parse_mode("azimuthal"), rsp::Error);
    EXPECT_NEAR(ProtocolSpec::polar(0.2).alpha(), std::sqrt(2.0 / 3.0), 1e-15);
}

TEST(CloneStates, OrthonormalForEveryAlpha) {
    for (const auto &spec : grid_specs()) {
        auto [phi0, phi1] = clone_states(spec);
        EXPECT_NEAR(std::abs(phi0.inner(phi1)), 0.0, 1e-15);
        EXPECT_EQ(phi0.labels(), (rsp::quantum::Labels{kAlice, kBob, kCharlie}));
    }
}

TEST(CloneStates, EquatorialAmplitudes) {
    auto [phi0, phi1] = clone_states(ProtocolSpec::equatorial(0.3));
    EXPECT_NEAR(phi0.amplitude("000").real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(phi0.amplitude("101").real(), 0.5, 1e-15);
    EXPECT_NEAR(phi0.amplitude("110").real(), 0.5, 1e-15);
    EXPECT_NEAR(phi1.amplitude("111").real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(phi1.amplitude("001").real(), 0.5, 1e-15);
}

TEST(ResourceState, MatchesTermByTermExpansion) {
    for (double alpha : {1.0 / std::sqrt(2.0), std::sqrt(2.0 / 3.0), 0.0, 1.0, 0.37}) {
        const auto spec = alpha == 1.0 / std::sqrt(2.0) ? ProtocolSpec::equatorial(0.0) : ProtocolSpec::general_alpha(0.0, alpha);
        const auto psi = resource_state(spec);
        const auto hand = resource_by_hand(alpha);
        for (int i = 0; i < 16; ++i) EXPECT_NEAR(std::abs(psi.amplitudes()(i) - hand[i]), 0.0, 1e-15) << i;
    }
}

TEST(ResourceState, RejectsNonOrthogonalInputs) {
    auto [phi0, phi1] = clone_states(ProtocolSpec::polar(0.0));
    expect_kind([&] { resource_state(phi0, phi0); }, ErrorKind::InputsNotOrthonormal);
}

TEST(CutMarginal, MatchesBruteForceEnumeration) {
    for (double alpha : {1.0 / std::sqrt(2.0), std::sqrt(2.0 / 3.0), 0.2, 0.9}) {
        const auto rho = cut_marginal(resource_state(ProtocolSpec::general_alpha(0.0, alpha)), kBob);
        EXPECT_LT(max_abs(rho.matrix() - rho_ab_by_enumeration(resource_by_hand(alpha))), 1e-15);
    }
}

TEST(CutMarginal, SpectraHaveClosedForms) {
    const auto eq = rsp::linalg::herm_eig(cut_marginal(resource_state(ProtocolSpec::equatorial(0.0)), kBob).matrix());
    const double r2 = std::sqrt(2.0);
    EXPECT_NEAR(eq.eigenvalues(0), 3.0 / 8.0 - r2 / 4.0, 1e-12);
    EXPECT_NEAR(eq.eigenvalues(1), 0.125, 1e-12);
    EXPECT_NEAR(eq.eigenvalues(2), 0.125, 1e-12);
    EXPECT_NEAR(eq.eigenvalues(3), 3.0 / 8.0 + r2 / 4.0, 1e-12);
    const auto po = rsp::linalg::herm_eig(cut_marginal(resource_state(ProtocolSpec::polar(0.0)), kBob).matrix());
    EXPECT_NEAR(po.eigenvalues(3), 0.75, 1e-12);
    EXPECT_NEAR(po.eigenvalues(0), 1.0 / 12.0, 1e-12);
}

TEST(CutMarginal, BAndCCutsAgreeAndRejectOtherReceivers) {
    const auto psi = resource_state(ProtocolSpec::polar(0.0));
    EXPECT_LT(max_abs(cut_marginal(psi, kBob).matrix() - cut_marginal(psi, kCharlie).matrix()), 1e-15);
    expect_kind([&] { cut_marginal(psi, kAlice); }, ErrorKind::UnknownLabel);
}

TEST(CutMarginal, ConcurrenceOracles) {
    EXPECT_NEAR(rsp::ree::concurrence(cut_marginal(resource_state(ProtocolSpec::polar(0.0)), kBob)), 0.5, 1e-9);
    const double eq = rsp::ree::concurrence(cut_marginal(resource_state(ProtocolSpec::equatorial(0.0)), kBob));
    EXPECT_NEAR(eq, 0.4571067811865, 1e-9);
}

TEST(AliceBasis, EquatorialBasisIsOrthonormalAndInverts) {
    // |0> = (|phi> + e^{i phi}|phi_perp>)/sqrt2, |1> = (e^{-i phi}|phi> - |phi_perp>)/sqrt2.
    for (double phi : {0.0, 0.7, 2.9, 5.5}) {
        const auto b = alice_basis(ProtocolSpec::equatorial(phi));
        const Complex e = std::polar(1.0, phi);
        const Eigen::Vector2cd zero = (b[0] + e * b[1]) / std::sqrt(2.0);
        const Eigen::Vector2cd one = (std::conj(e) * b[0] - b[1]) / std::sqrt(2.0);
        EXPECT_LT((zero - Eigen::Vector2cd(1, 0)).cwiseAbs().maxCoeff(), 1e-15);
        EXPECT_LT((one - Eigen::Vector2cd(0, 1)).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(Correction, EquatorialZCubedFixesPhi0AndNegatesPhi1) {
    const auto spec = ProtocolSpec::equatorial(0.0);
    auto [phi0, phi1] = clone_states(spec);
    const auto z = correction(spec);
    EXPECT_EQ(z.gate_name, "Z");
    EXPECT_LT((z.apply(phi0).amplitudes() - phi0.amplitudes()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((z.apply(phi1).amplitudes() + phi1.amplitudes()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Correction, MinusIYCubedMapsPhi0ToPhi1AndPhi1ToMinusPhi0) {
    for (double alpha : {std::sqrt(2.0 / 3.0), 0.0, 0.5, 1.0}) {
        const auto spec = ProtocolSpec::general_alpha(0.0, alpha);
        auto [cap0, cap1] = clone_states(spec);
        const auto y = correction(spec);
        EXPECT_EQ(y.gate_name, "-iY");
        EXPECT_LT((y.apply(cap0).amplitudes() - cap1.amplitudes()).cwiseAbs().maxCoeff(), 1e-15);
        EXPECT_LT((y.apply(cap1).amplitudes() + cap0.amplitudes()).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(RunProtocol, OutcomeOneBranchIsCorrectedBackToTarget) {
    for (const auto &spec : grid_specs()) {
        const auto outcomes = run_protocol(spec);
        EXPECT_EQ(basis_index_for_outcome(0), 1u);
        EXPECT_EQ(basis_index_for_outcome(1), 0u);
        EXPECT_NEAR(outcomes[0].probability + outcomes[1].probability, 1.0, 1e-12);
        EXPECT_NEAR(outcomes[0].probability, 0.5, 1e-12);
        const auto xi = one_parameter_tripartite(spec);
        for (const auto &o : outcomes) {
            EXPECT_NEAR(rsp::quantum::overlap_magnitude(o.corrected_state, xi), 1.0, 1e-12);
            EXPECT_NEAR(o.fidelity_B, o.fidelity_C, 1e-12);
        }
    }
}

TEST(RunProtocol, EquatorialFidelityAndMarginalClosedForm) {
    for (int k = 0; k < 32; ++k) {
        const double phi = k * 2.0 * kPi / 32;
        for (const auto &o : run_protocol(ProtocolSpec::equatorial(phi))) {
            EXPECT_NEAR(o.fidelity_B, kEquatorialF, 1e-12);
            const Complex off = std::polar(1.0 / (2.0 * std::sqrt(2.0)), -phi);
            EXPECT_NEAR(std::abs(o.rho_B.matrix()(0, 1) - off), 0.0, 1e-12);
            EXPECT_NEAR(o.rho_B.matrix()(0, 0).real(), 0.5, 1e-12);
        }
    }
}

TEST(RunProtocol, PolarFidelityIsFiveSixthsEverywhere) {
    for (int k = 0; k < 32; ++k) {
        for (const auto &o : run_protocol(ProtocolSpec::polar(k * kPi / 32))) EXPECT_NEAR(o.fidelity_B, 5.0 / 6.0, 1e-12);
    }
}

TEST(RunProtocol, CovariantFamiliesSitAtTheirOptimalClonerCeiling) {
    // Universal (polar) cloning is capped at 5/6; phase-covariant (equatorial) at 1/2 + 1/(2 sqrt 2).
    for (const auto &spec : grid_specs()) {
        if (spec.mode() == Mode::GeneralAlpha) continue;
        const double ceiling = spec.mode() == Mode::Polar ? max_protocol_fidelity() : kEquatorialF;
        for (const auto &o : run_protocol(spec)) EXPECT_LE(o.fidelity_B, ceiling + 1e-12);
    }
}

TEST(PoleFidelity, MatchesThetaZeroSimulation) {
    for (int k = 0; k < 16; ++k) {
        const double alpha = k / 15.0;
        EXPECT_NEAR(pole_fidelity(alpha), (1.0 + alpha * alpha) / 2.0, 1e-15);
        EXPECT_NEAR(run_protocol(ProtocolSpec::general_alpha(0.0, alpha))[0].fidelity_B, pole_fidelity(alpha), 1e-12);
    }
}

TEST(PoleFidelity, DivergesFromSimulationOffThePole) {
    const double alpha = 1.0;
    const double beta = 0.0;
    const double f = run_protocol(ProtocolSpec::general_alpha(kPi / 4.0, alpha))[0].fidelity_B;
    EXPECT_NEAR(f, (1.0 + 2.0 * alpha * beta) / 2.0, 1e-12);
    EXPECT_GT(pole_fidelity(alpha) - f, 0.4);
}

TEST(Tradeoff, AnchorsAndDomain) {
    EXPECT_NEAR(tradeoff_er(0.5), 0.0, 1e-15);
    EXPECT_NEAR(tradeoff_er(1.0), 1.0, 1e-15);
    EXPECT_NEAR(tradeoff_er(5.0 / 6.0), 0.4425, 1e-3);
    expect_kind([] { tradeoff_er(0.49); }, ErrorKind::DomainError);
    expect_kind([] { tradeoff_er(1.01); }, ErrorKind::DomainError);
    EXPECT_TRUE(beyond_protocol_reach(0.9));
    EXPECT_FALSE(beyond_protocol_reach(5.0 / 6.0));
}

TEST(Tradeoff, MonotoneNondecreasing) {
    double prev = tradeoff_er(0.5);
    for (int k = 1; k < 500; ++k) {
        const double v = tradeoff_er(0.5 + 0.5 * k / 499.0);
        EXPECT_GE(v, prev);
        prev = v;
    }
}

}  // namespace

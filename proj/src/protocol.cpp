#include "rsp/protocol.hpp"

#include <cmath>
#include <numbers>

#include "rsp/errors.hpp"

namespace rsp::protocol {

using linalg::Complex;
using linalg::ComplexVector;
using quantum::Labels;

namespace {

constexpr double kAngleSlack = 1e-12;
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

const Labels &clone_labels() {
    static const Labels labels{kAlice, kBob, kCharlie};
    return labels;
}

void require_range(double value, double lo, double hi, const char *what) {
    if (!std::isfinite(value) || value < lo - kAngleSlack || value > hi + kAngleSlack) {
        throw Error(ErrorKind::AngleOutOfRange, std::string(what) + " = " + std::to_string(value) +
                                                    " outside [" + std::to_string(lo) + ", " +
                                                    std::to_string(hi) + "]");
    }
}

// sum of c * |bits> on (A, B, C)
StateVector clone_state(std::initializer_list<std::pair<double, const char *>> terms) {
    ComplexVector amps = ComplexVector::Zero(8);
    for (const auto &[c, bits] : terms) {
        amps(std::stoi(bits, nullptr, 2)) += c;
    }
    return StateVector(clone_labels(), std::move(amps));
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

std::string_view to_string(Mode mode) {
    switch (mode) {
        case Mode::Equatorial: return "equatorial";
        case Mode::Polar: return "polar";
        case Mode::GeneralAlpha: return "general-alpha";
    }
    return "unknown";
}

Mode parse_mode(std::string_view text) {
    if (text == "equatorial") return Mode::Equatorial;
    if (text == "polar") return Mode::Polar;
    if (text == "general-alpha") return Mode::GeneralAlpha;
    throw Error(ErrorKind::DomainError, "unknown mode '" + std::string(text) + "'");
}

double polar_alpha() { return std::sqrt(2.0 / 3.0); }

ProtocolSpec ProtocolSpec::equatorial(double phi) {
    require_range(phi, 0.0, kTwoPi, "phi");
    return ProtocolSpec(Mode::Equatorial, phi, 0.0);
}

ProtocolSpec ProtocolSpec::polar(double theta) {
    require_range(theta, 0.0, std::numbers::pi, "theta");
    return ProtocolSpec(Mode::Polar, theta, polar_alpha());
}

ProtocolSpec ProtocolSpec::general_alpha(double theta, double alpha) {
    require_range(theta, 0.0, std::numbers::pi, "theta");
    if (!std::isfinite(alpha) || alpha < 0.0 || alpha > 1.0) {
        throw Error(ErrorKind::DomainError, "alpha = " + std::to_string(alpha) + " outside [0, 1]");
    }
    return ProtocolSpec(Mode::GeneralAlpha, theta, alpha);
}

double ProtocolSpec::beta() const {
    if (mode_ == Mode::Equatorial) {
        return 0.0;
    }
    return std::sqrt(std::max(0.0, (1.0 - alpha_ * alpha_) / 2.0));
}

StateVector equatorial_target(double phi) {
    require_range(phi, 0.0, kTwoPi, "phi");
    ComplexVector amps(2);
    amps << kInvSqrt2, std::polar(kInvSqrt2, phi);
    return StateVector({"q"}, std::move(amps));
}

StateVector polar_target(double theta) {
    require_range(theta, 0.0, std::numbers::pi, "theta");
    ComplexVector amps(2);
    amps << std::cos(theta), std::sin(theta);
    return StateVector({"q"}, std::move(amps));
}

StateVector target(const ProtocolSpec &spec) {
    return spec.mode() == Mode::Equatorial ? equatorial_target(spec.angle()) : polar_target(spec.angle());
}

CloneStates clone_states(const ProtocolSpec &spec) {
    if (spec.mode() == Mode::Equatorial) {
        const double r = kInvSqrt2;
        return {clone_state({{r, "000"}, {0.5, "101"}, {0.5, "110"}}),
                clone_state({{r, "111"}, {0.5, "001"}, {0.5, "010"}})};
    }
    const double a = spec.alpha();
    const double b = spec.beta();
    return {clone_state({{a, "000"}, {b, "101"}, {b, "110"}}),
            clone_state({{a, "111"}, {b, "001"}, {b, "010"}})};
}

StateVector resource_state(const StateVector &phi0, const StateVector &phi1) {
    constexpr double tol = 1e-12;
    if (phi0.labels() != phi1.labels() || std::abs(phi0.inner(phi1)) > tol) {
        throw Error(ErrorKind::InputsNotOrthonormal, "clone states must be orthonormal on one register");
    }
    Labels labels{kAncilla};
    labels.insert(labels.end(), phi0.labels().begin(), phi0.labels().end());
    const Eigen::Index half = static_cast<Eigen::Index>(phi0.dim());
    ComplexVector amps(2 * half);
    amps.head(half) = phi1.amplitudes() * kInvSqrt2;
    amps.tail(half) = -phi0.amplitudes() * kInvSqrt2;
    return StateVector(std::move(labels), std::move(amps));
}

StateVector resource_state(const ProtocolSpec &spec) {
    auto [phi0, phi1] = clone_states(spec);
    return resource_state(phi0, phi1);
}

Basis2 alice_basis(const ProtocolSpec &spec) {
    const double t = spec.angle();
    if (spec.mode() == Mode::Equatorial) {
        const double r = kInvSqrt2;
        return Basis2(Eigen::Vector2cd(r, std::polar(r, t)), Eigen::Vector2cd(std::polar(r, -t), -r));
    }
    return Basis2(Eigen::Vector2cd(std::cos(t), std::sin(t)), Eigen::Vector2cd(std::sin(t), -std::cos(t)));
}

StateVector LocalCorrection::apply(const StateVector &s) const {
    StateVector out = s;
    for (const auto &label : labels) {
        out = quantum::apply_single_qubit(gate, label, out);
    }
    return out;
}

LocalCorrection correction(const ProtocolSpec &spec) {
    if (spec.mode() == Mode::Equatorial) {
        return {"Z", linalg::gates::pauli_z(), {kAlice, kBob, kCharlie}};
    }
    return {"-iY", linalg::gates::minus_i_pauli_y(), {kAlice, kBob, kCharlie}};
}

std::size_t basis_index_for_outcome(int bit) { return bit == 0 ? 1 : 0; }

ProtocolOutcome resolve_outcome(const ProtocolSpec &spec, int bit, double probability,
                                const StateVector &branch_state) {
    StateVector corrected = bit == 0 ? branch_state : correction(spec).apply(branch_state);
    auto rho = quantum::density_of(corrected);
    auto rho_b = quantum::partial_trace(rho, {kBob});
    auto rho_c = quantum::partial_trace(rho, {kCharlie});
    const StateVector goal = target(spec);
    double f_b = quantum::fidelity_with_pure(rho_b, goal);
    double f_c = quantum::fidelity_with_pure(rho_c, goal);
    return ProtocolOutcome{bit, probability, branch_state, std::move(corrected), std::move(rho_b),
                           std::move(rho_c), f_b, f_c};
}

std::array<ProtocolOutcome, 2> run_protocol(const ProtocolSpec &spec) {
    const StateVector resource = resource_state(spec);
    const auto resolution = quantum::measure_in_basis(resource, kAncilla, alice_basis(spec));
    auto outcome = [&](int bit) {
        const auto &branch = resolution.branches[basis_index_for_outcome(bit)];
        if (!branch.post_state) {
            throw Error(ErrorKind::InvalidState, "protocol branch has zero probability");
        }
        return resolve_outcome(spec, bit, branch.probability, *branch.post_state);
    };
    return {outcome(0), outcome(1)};
}

double pole_fidelity(double alpha) {
    if (!std::isfinite(alpha) || alpha < 0.0 || alpha > 1.0) {
        throw Error(ErrorKind::DomainError, "alpha = " + std::to_string(alpha) + " outside [0, 1]");
    }
    return (1.0 + alpha * alpha) / 2.0;
}

double tradeoff_er(double fidelity) {
    constexpr double slack = 1e-12;
    if (!std::isfinite(fidelity) || fidelity < 0.5 - slack || fidelity > 1.0 + slack) {
        throw Error(ErrorKind::DomainError,
                    "fidelity " + std::to_string(fidelity) + " outside [1/2, 1]");
    }
    const double f = std::clamp(fidelity, 0.5, 1.0);
    return xlog2x((3.0 * f - 1.0) / 2.0) + xlog2x((1.0 - f) / 2.0) - f * std::log2(f / 2.0);
}

double max_protocol_fidelity() { return 5.0 / 6.0; }

bool beyond_protocol_reach(double fidelity) { return fidelity > max_protocol_fidelity() + 1e-12; }

DensityMatrix cut_marginal(const StateVector &resource, std::string_view receiver) {
    if (receiver != kBob && receiver != kCharlie) {
        throw Error(ErrorKind::UnknownLabel, "cut receiver must be B or C, got '" + std::string(receiver) + "'");
    }
    const std::array<Label, 2> keep{kAncilla, Label(receiver)};
    return quantum::partial_trace(quantum::density_of(resource), keep);
}

StateVector one_parameter_tripartite(const ProtocolSpec &spec) {
    auto [phi0, phi1] = clone_states(spec);
    const double t = spec.angle();
    ComplexVector amps;
    if (spec.mode() == Mode::Equatorial) {
        amps = (phi0.amplitudes() + std::polar(1.0, t) * phi1.amplitudes()) * kInvSqrt2;
    } else {
        amps = std::cos(t) * phi0.amplitudes() + std::sin(t) * phi1.amplitudes();
    }
    return StateVector::normalized(phi0.labels(), std::move(amps));
}

}  // namespace rsp::protocol

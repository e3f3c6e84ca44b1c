#pragma once

#include <array>
#include <string>
#include <string_view>

#include "rsp/quantum.hpp"

namespace rsp::protocol {

using quantum::Basis2;
using quantum::DensityMatrix;
using quantum::Label;
using quantum::StateVector;

enum class Mode { Equatorial, Polar, GeneralAlpha };

std::string_view to_string(Mode mode);
/// Accepts "equatorial", "polar", "general-alpha". Throws DomainError.
Mode parse_mode(std::string_view text);

/// Register labels: Alice's measured qubit and the three clone qubits.
inline const Label kAncilla = "a";
inline const Label kAlice = "A";
inline const Label kBob = "B";
inline const Label kCharlie = "C";

/// Clone-state amplitude that gives the phase-covariant 1 -> 2 polar cloner.
double polar_alpha();

/// Which target family, the angle Alice knows, and the clone-family amplitude alpha.
/// beta = sqrt((1 - alpha^2) / 2) so that alpha^2 + 2 beta^2 = 1.
class ProtocolSpec {
  public:
    /// phi in [0, 2 pi].
    static ProtocolSpec equatorial(double phi);
    /// theta in [0, pi], alpha = polar_alpha().
    static ProtocolSpec polar(double theta);
    /// theta in [0, pi], alpha in [0, 1].
    static ProtocolSpec general_alpha(double theta, double alpha);

    Mode mode() const { return mode_; }
    /// phi for the equatorial family, theta otherwise.
    double angle() const { return angle_; }
    /// Unused (0) for the equatorial family.
    double alpha() const { return alpha_; }
    double beta() const;

    bool operator==(const ProtocolSpec &) const = default;

  private:
    ProtocolSpec(Mode mode, double angle, double alpha) : mode_(mode), angle_(angle), alpha_(alpha) {}
    Mode mode_;
    double angle_;
    double alpha_;
};

StateVector equatorial_target(double phi);
StateVector polar_target(double theta);
/// Target state the receivers should end up approximating.
StateVector target(const ProtocolSpec &spec);

struct CloneStates {
    StateVector phi0;
    StateVector phi1;
};

/// Tripartite states on (A, B, C).
CloneStates clone_states(const ProtocolSpec &spec);

/// (|0>_a |phi1> - |1>_a |phi0>) / sqrt 2 on (a, A, B, C). Throws InputsNotOrthonormal.
StateVector resource_state(const StateVector &phi0, const StateVector &phi1);
StateVector resource_state(const ProtocolSpec &spec);

/// first = the target itself, second = its orthogonal complement.
///   equatorial: (|0> + e^{i phi}|1>)/sqrt2 and (e^{-i phi}|0> - |1>)/sqrt2
///   polar/general: cos t|0> + sin t|1> and sin t|0> - cos t|1>
Basis2 alice_basis(const ProtocolSpec &spec);

/// Identical single-qubit gate applied on each of A, B, C.
struct LocalCorrection {
    std::string gate_name;
    Eigen::Matrix2cd gate;
    std::array<Label, 3> labels;

    StateVector apply(const StateVector &s) const;
};

LocalCorrection correction(const ProtocolSpec &spec);

/// Outcome bit 0 is the |phi-perp> branch (no correction), bit 1 the |phi> branch.
struct ProtocolOutcome {
    int outcome_bit;
    double probability;
    StateVector branch_state;     // before correction
    StateVector corrected_state;  // after correction (== branch_state for bit 0)
    DensityMatrix rho_B;
    DensityMatrix rho_C;
    double fidelity_B;
    double fidelity_C;
};

/// Index of the Alice-basis vector that realises protocol outcome `bit`.
std::size_t basis_index_for_outcome(int bit);

/// Builds the outcome record for one branch of Alice's measurement.
ProtocolOutcome resolve_outcome(const ProtocolSpec &spec, int bit, double probability,
                                const StateVector &branch_state);

std::array<ProtocolOutcome, 2> run_protocol(const ProtocolSpec &spec);

/// (1 + alpha^2) / 2. Throws DomainError outside [0, 1].
double pole_fidelity(double alpha);

/// Entanglement/fidelity trade-off curve in bits, with 0 log 0 = 0. Throws DomainError
/// outside [1/2, 1].
double tradeoff_er(double fidelity);

/// Highest fidelity the polar protocol attains (5/6); the curve beyond it is outside reach.
double max_protocol_fidelity();
bool beyond_protocol_reach(double fidelity);

/// Reduced state on (a, receiver) of the four-qubit resource. receiver is "B" or "C".
DensityMatrix cut_marginal(const StateVector &resource, std::string_view receiver);

/// The tripartite state shared after a successful run.
StateVector one_parameter_tripartite(const ProtocolSpec &spec);

}  // namespace rsp::protocol

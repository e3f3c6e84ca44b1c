#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rsp/protocol.hpp"
#include "rsp/random.hpp"

namespace rsp::locc {

using protocol::ProtocolSpec;
using quantum::DensityMatrix;
using quantum::Label;
using quantum::StateVector;

enum class Topology {
    Standard,      // Alice {a, A}, Bob {B}, Charlie {C}
    SameLocation,  // Alice {a}, Bob {A, B, C}
};

std::string_view to_string(Topology topology);
Topology parse_topology(std::string_view text);

enum class Phase { AwaitingSetup, Measured, AwaitingBit, Corrected, Done };
std::string_view to_string(Phase phase);

class Party {
  public:
    Party(std::string name, std::vector<Label> held_labels);

    const std::string &name() const { return name_; }
    const std::vector<Label> &held_labels() const { return held_; }
    Phase phase() const { return phase_; }
    bool holds(std::string_view label) const;

    /// Moves to the next phase; throws InvalidTranscript on any skip or regression.
    void advance(Phase next);

  private:
    std::string name_;
    std::vector<Label> held_;
    Phase phase_ = Phase::AwaitingSetup;
};

/// Parties of a topology, Alice first.
std::vector<Party> parties_for(Topology topology);

struct SetupEvent {
    ProtocolSpec spec;
    Topology topology;
    std::uint64_t seed;
};
struct MeasurementSampled {
    int outcome_bit;
    double probability;
};
struct Broadcast {
    int bit;
};
struct CorrectionApplied {
    std::string party;
    std::string gate;
    Label label;
};
struct FinalReport {
    double fidelity_B;
    double fidelity_C;
};

using Event = std::variant<SetupEvent, MeasurementSampled, Broadcast, CorrectionApplied, FinalReport>;

inline constexpr std::string_view kTranscriptHeader = "rsp-transcript v1";

struct Transcript {
    std::vector<Event> events;

    /// Line-delimited, comma-separated, shortest round-trip floats.
    std::string serialize() const;
    /// Throws InvalidTranscript on malformed input or ordering violations.
    static Transcript parse(std::string_view text);
    /// FNV-1a over the serialized form.
    std::uint64_t hash() const;
    std::optional<FinalReport> final_report() const;
};

/// Exactly one broadcast, carrying one bit, before every correction. Throws InvalidTranscript.
void validate(const Transcript &t);

/// Seeded two-outcome draw by inverse CDF on the named generator.
class OutcomeSampler {
  public:
    explicit OutcomeSampler(std::uint64_t seed);
    /// 0 with probability p0, else 1.
    int draw(double p0);

  private:
    random::Engine engine_;
};

struct SessionResult {
    Transcript transcript;
    StateVector final_state;  // on (A, B, C)
    DensityMatrix rho_B;
    DensityMatrix rho_C;
    std::vector<Party> parties;
};

SessionResult run_session(const ProtocolSpec &spec, Topology topology, std::uint64_t seed);

/// Re-executes a recorded session. The seeded draw must reproduce the recorded outcome and
/// the regenerated transcript must match the input line for line; throws InvalidTranscript.
SessionResult replay(const Transcript &t);

struct AuditReport {
    double deviation_B;
    double deviation_C;
    /// Largest deviation of any receiving party's pre-broadcast state from its pre-measurement state.
    double deviation_parties;
};

/// Throws AuditFailure when the outcome-weighted pre-broadcast marginal of a receiver
/// differs from I/2 (or a receiving party's state from its pre-measurement state) by > 1e-10.
AuditReport no_signaling_audit(const ProtocolSpec &spec, Topology topology);

/// Bits broadcast over the public channel.
int classical_cost(const Transcript &t);

}  // namespace rsp::locc

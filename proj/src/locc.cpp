#include "rsp/locc.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "rsp/errors.hpp"
#include "rsp/io.hpp"

namespace rsp::locc {

namespace {

constexpr double kAuditTol = 1e-10;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void bad_transcript(const std::string &why) { throw Error(ErrorKind::InvalidTranscript, why); }

std::uint64_t parse_u64(std::string_view text) {
    std::uint64_t value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size()) {
        bad_transcript("not an unsigned integer: '" + std::string(text) + "'");
    }
    return value;
}

int parse_bit(std::string_view text) {
    if (text == "0") return 0;
    if (text == "1") return 1;
    bad_transcript("not a bit: '" + std::string(text) + "'");
}

double parse_real(std::string_view text) {
    try {
        return io::parse_double(text);
    } catch (const Error &e) {
        bad_transcript(e.what());
    }
}

ProtocolSpec make_spec(protocol::Mode mode, double angle, double alpha) {
    switch (mode) {
        case protocol::Mode::Equatorial: return ProtocolSpec::equatorial(angle);
        case protocol::Mode::Polar: return ProtocolSpec::polar(angle);
        case protocol::Mode::GeneralAlpha: return ProtocolSpec::general_alpha(angle, alpha);
    }
    bad_transcript("unknown mode");
}

const std::vector<Label> &receivers() {
    static const std::vector<Label> labels{protocol::kBob, protocol::kCharlie};
    return labels;
}

void advance_all(std::vector<Party> &parties, Phase next) {
    for (auto &p : parties) {
        p.advance(next);
    }
}

// Shared engine for fresh runs and replays. `recorded` is the outcome a replayed
// transcript claims; the seeded draw must reproduce it.
SessionResult execute(const ProtocolSpec &spec, Topology topology, std::uint64_t seed,
                      std::optional<int> recorded) {
    Transcript transcript;
    auto &events = transcript.events;
    std::vector<Party> parties = parties_for(topology);
    events.emplace_back(SetupEvent{spec, topology, seed});

    // Alice measures qubit a; the joint register collapses onto one branch.
    const auto resolution =
        quantum::measure_in_basis(protocol::resource_state(spec), protocol::kAncilla, protocol::alice_basis(spec));
    const double p0 = resolution.branches[protocol::basis_index_for_outcome(0)].probability;
    OutcomeSampler sampler(seed);
    const int bit = sampler.draw(p0);
    if (recorded && *recorded != bit) {
        bad_transcript("recorded outcome " + std::to_string(*recorded) + " disagrees with seed " +
                       std::to_string(seed) + ", which draws " + std::to_string(bit));
    }
    const auto &branch = resolution.branches[protocol::basis_index_for_outcome(bit)];
    events.emplace_back(MeasurementSampled{bit, branch.probability});
    advance_all(parties, Phase::Measured);
    advance_all(parties, Phase::AwaitingBit);

    events.emplace_back(Broadcast{bit});
    StateVector state = *branch.post_state;
    if (bit == 1) {
        const auto fix = protocol::correction(spec);
        for (const auto &party : parties) {
            for (const auto &label : fix.labels) {
                if (party.holds(label)) {
                    state = quantum::apply_single_qubit(fix.gate, label, state);
                    events.emplace_back(CorrectionApplied{party.name(), fix.gate_name, label});
                }
            }
        }
    }
    advance_all(parties, Phase::Corrected);

    auto rho = quantum::density_of(state);
    auto rho_b = quantum::partial_trace(rho, {protocol::kBob});
    auto rho_c = quantum::partial_trace(rho, {protocol::kCharlie});
    const auto goal = protocol::target(spec);
    events.emplace_back(
        FinalReport{quantum::fidelity_with_pure(rho_b, goal), quantum::fidelity_with_pure(rho_c, goal)});
    advance_all(parties, Phase::Done);
    validate(transcript);
    return SessionResult{std::move(transcript), std::move(state), std::move(rho_b), std::move(rho_c),
                         std::move(parties)};
}

}  // namespace

std::string_view to_string(Topology topology) {
    return topology == Topology::Standard ? "standard" : "same-location";
}

Topology parse_topology(std::string_view text) {
    if (text == "standard") return Topology::Standard;
    if (text == "same-location") return Topology::SameLocation;
    throw Error(ErrorKind::DomainError, "unknown topology '" + std::string(text) + "'");
}

std::string_view to_string(Phase phase) {
    switch (phase) {
        case Phase::AwaitingSetup: return "AwaitingSetup";
        case Phase::Measured: return "Measured";
        case Phase::AwaitingBit: return "AwaitingBit";
        case Phase::Corrected: return "Corrected";
        case Phase::Done: return "Done";
    }
    return "Unknown";
}

Party::Party(std::string name, std::vector<Label> held_labels) : name_(std::move(name)), held_(std::move(held_labels)) {}

bool Party::holds(std::string_view label) const { return std::find(held_.begin(), held_.end(), label) != held_.end(); }

void Party::advance(Phase next) {
    if (static_cast<int>(next) != static_cast<int>(phase_) + 1) {
        bad_transcript(name_ + " cannot move from " + std::string(to_string(phase_)) + " to " +
                       std::string(to_string(next)));
    }
    phase_ = next;
}

std::vector<Party> parties_for(Topology topology) {
    using namespace protocol;
    if (topology == Topology::Standard) {
        return {Party("Alice", {kAncilla, kAlice}), Party("Bob", {kBob}), Party("Charlie", {kCharlie})};
    }
    return {Party("Alice", {kAncilla}), Party("Bob", {kAlice, kBob, kCharlie})};
}

std::string Transcript::serialize() const {
    std::string out(kTranscriptHeader);
    out += '\n';
    for (const auto &event : events) {
        out += std::visit(
            overloaded{
                [](const SetupEvent &e) {
                    return "setup," + std::string(protocol::to_string(e.spec.mode())) + "," +
                           io::format_double(e.spec.angle()) + "," + io::format_double(e.spec.alpha()) + "," +
                           std::string(to_string(e.topology)) + "," + std::to_string(e.seed);
                },
                [](const MeasurementSampled &e) {
                    return "measurement," + std::to_string(e.outcome_bit) + "," + io::format_double(e.probability);
                },
                [](const Broadcast &e) { return "broadcast," + std::to_string(e.bit); },
                [](const CorrectionApplied &e) { return "correction," + e.party + "," + e.gate + "," + e.label; },
                [](const FinalReport &e) {
                    return "final," + io::format_double(e.fidelity_B) + "," + io::format_double(e.fidelity_C);
                },
            },
            event);
        out += '\n';
    }
    return out;
}

Transcript Transcript::parse(std::string_view text) {
    auto lines = io::split(text, '\n');
    while (!lines.empty() && io::trim(lines.back()).empty()) {
        lines.pop_back();
    }
    if (lines.empty() || io::trim(lines[0]) != kTranscriptHeader) {
        bad_transcript("missing '" + std::string(kTranscriptHeader) + "' header");
    }
    Transcript t;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto f = io::split(io::trim(lines[i]), ',');
        const std::string_view kind = f[0];
        auto expect = [&](std::size_t n) {
            if (f.size() != n) {
                bad_transcript("line " + std::to_string(i + 1) + ": '" + std::string(kind) + "' needs " +
                               std::to_string(n - 1) + " fields");
            }
        };
        if (kind == "setup") {
            expect(6);
            protocol::Mode mode;
            Topology topology;
            try {
                mode = protocol::parse_mode(f[1]);
                topology = parse_topology(f[4]);
            } catch (const Error &e) {
                bad_transcript(e.what());
            }
            t.events.emplace_back(SetupEvent{make_spec(mode, parse_real(f[2]), parse_real(f[3])), topology,
                                             parse_u64(f[5])});
        } else if (kind == "measurement") {
            expect(3);
            t.events.emplace_back(MeasurementSampled{parse_bit(f[1]), parse_real(f[2])});
        } else if (kind == "broadcast") {
            expect(2);
            t.events.emplace_back(Broadcast{parse_bit(f[1])});
        } else if (kind == "correction") {
            expect(4);
            t.events.emplace_back(CorrectionApplied{std::string(f[1]), std::string(f[2]), std::string(f[3])});
        } else if (kind == "final") {
            expect(3);
            t.events.emplace_back(FinalReport{parse_real(f[1]), parse_real(f[2])});
        } else {
            bad_transcript("line " + std::to_string(i + 1) + ": unknown event '" + std::string(kind) + "'");
        }
    }
    if (t.events.empty() || !std::holds_alternative<SetupEvent>(t.events.front())) {
        bad_transcript("transcript must start with a setup event");
    }
    return t;
}

std::uint64_t Transcript::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : serialize()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::optional<FinalReport> Transcript::final_report() const {
    for (const auto &e : events) {
        if (const auto *r = std::get_if<FinalReport>(&e)) {
            return *r;
        }
    }
    return std::nullopt;
}

void validate(const Transcript &t) {
    int broadcasts = 0;
    for (const auto &e : t.events) {
        if (std::holds_alternative<Broadcast>(e)) {
            ++broadcasts;
        } else if (std::holds_alternative<CorrectionApplied>(e) && broadcasts == 0) {
            bad_transcript("correction applied before the broadcast");
        }
    }
    const bool completed = t.final_report().has_value();
    if (broadcasts > 1 || (completed && broadcasts != 1)) {
        bad_transcript("a completed session broadcasts exactly one bit, found " + std::to_string(broadcasts));
    }
}

OutcomeSampler::OutcomeSampler(std::uint64_t seed) : engine_(seed) {}

int OutcomeSampler::draw(double p0) { return random::uniform01(engine_) < p0 ? 0 : 1; }

SessionResult run_session(const ProtocolSpec &spec, Topology topology, std::uint64_t seed) {
    return execute(spec, topology, seed, std::nullopt);
}

SessionResult replay(const Transcript &t) {
    validate(t);
    const auto &setup = std::get<SetupEvent>(t.events.front());
    std::optional<int> recorded;
    for (const auto &e : t.events) {
        if (const auto *m = std::get_if<MeasurementSampled>(&e)) {
            recorded = m->outcome_bit;
        }
    }
    if (!recorded) {
        bad_transcript("transcript stops before the measurement; nothing to replay");
    }
    SessionResult result = execute(setup.spec, setup.topology, setup.seed, recorded);
    if (result.transcript.serialize() != t.serialize()) {
        bad_transcript("replay diverged from the recorded transcript");
    }
    return result;
}

AuditReport no_signaling_audit(const ProtocolSpec &spec, Topology topology) {
    const auto outcomes = protocol::run_protocol(spec);
    const auto before = quantum::density_of(protocol::resource_state(spec));
    const Eigen::Matrix2cd half_identity = Eigen::Matrix2cd::Identity() / 2.0;

    auto mixture = [&](std::span<const Label> keep) {
        linalg::ComplexMatrix acc;
        for (const auto &o : outcomes) {
            auto m = quantum::partial_trace(quantum::density_of(o.branch_state), keep).matrix();
            acc = acc.size() == 0 ? linalg::ComplexMatrix(o.probability * m) : linalg::ComplexMatrix(acc + o.probability * m);
        }
        return acc;
    };
    auto fail = [](const std::string &who, const linalg::ComplexMatrix &m) {
        std::ostringstream s;
        s << who << " pre-broadcast mixture deviates:\n" << m;
        throw Error(ErrorKind::AuditFailure, s.str());
    };

    AuditReport report{0.0, 0.0, 0.0};
    for (const auto &label : receivers()) {
        const std::array<Label, 1> keep{label};
        auto m = mixture(keep);
        double dev = linalg::max_abs(m - half_identity);
        (label == protocol::kBob ? report.deviation_B : report.deviation_C) = dev;
        if (dev > kAuditTol) {
            fail("receiver " + label, m);
        }
    }
    for (const auto &party : parties_for(topology)) {
        if (party.holds(protocol::kAncilla)) {
            continue;
        }
        auto m = mixture(party.held_labels());
        auto reference = quantum::partial_trace(before, party.held_labels()).matrix();
        double dev = linalg::max_abs(m - reference);
        report.deviation_parties = std::max(report.deviation_parties, dev);
        if (dev > kAuditTol) {
            fail(party.name(), m);
        }
    }
    return report;
}

int classical_cost(const Transcript &t) {
    return static_cast<int>(std::count_if(t.events.begin(), t.events.end(),
                                          [](const Event &e) { return std::holds_alternative<Broadcast>(e); }));
}

}  // namespace rsp::locc

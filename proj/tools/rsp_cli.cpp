// rsp: command-line front end for the remote-state-preparation toolkit.
//
// Exit codes: 0 ok, 1 acceptance failure, 2 usage, 3 I/O, 4 input validation.

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "rsp/acceptance.hpp"
#include "rsp/errors.hpp"
#include "rsp/io.hpp"
#include "rsp/locc.hpp"
#include "rsp/protocol.hpp"
#include "rsp/ree.hpp"
#include "rsp/tradeoff.hpp"

namespace {

using rsp::Error;
using rsp::ErrorKind;
using rsp::io::format_double;
using rsp::protocol::ProtocolSpec;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitInvalidInput = 4;

struct ProtocolFlags {
    std::string mode = "equatorial";
    std::optional<double> phi;
    std::optional<double> theta;
    std::optional<double> alpha;

    void attach(CLI::App &cmd) {
        cmd.add_option("--mode", mode, "equatorial | polar | general-alpha")
            ->check(CLI::IsMember({"equatorial", "polar", "general-alpha"}));
        cmd.add_option("--phi", phi, "equatorial angle in radians, [0, 2pi]");
        cmd.add_option("--theta", theta, "polar angle in radians, [0, pi]");
        cmd.add_option("--alpha", alpha, "clone-state amplitude in [0, 1]; selects the general-alpha family");
    }

    // Usage errors surface as CLI::ValidationError (exit 2); range errors as rsp::Error (exit 4).
    ProtocolSpec build() const {
        const auto m = rsp::protocol::parse_mode(mode);
        if (m == rsp::protocol::Mode::Equatorial) {
            if (!phi || theta || alpha) {
                throw CLI::ValidationError("--mode equatorial takes --phi only");
            }
            return ProtocolSpec::equatorial(*phi);
        }
        if (!theta || phi) {
            throw CLI::ValidationError("--mode " + mode + " takes --theta [--alpha]");
        }
        if (alpha) {
            return ProtocolSpec::general_alpha(*theta, *alpha);
        }
        if (m == rsp::protocol::Mode::GeneralAlpha) {
            throw CLI::ValidationError("--mode general-alpha requires --alpha");
        }
        return ProtocolSpec::polar(*theta);
    }
};

std::uint64_t default_seed() {
    if (const char *env = std::getenv("RSP_SEED")) {
        std::uint64_t seed = 0;
        std::string_view text(env);
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            throw CLI::ValidationError("RSP_SEED must be an unsigned integer, got '" + std::string(env) + "'");
        }
        return seed;
    }
    return 0;
}

int cmd_run(const ProtocolFlags &flags) {
    const auto spec = flags.build();
    const auto outcomes = rsp::protocol::run_protocol(spec);
    std::cout << "mode=" << rsp::protocol::to_string(spec.mode()) << " angle=" << format_double(spec.angle());
    if (spec.mode() != rsp::protocol::Mode::Equatorial) {
        std::cout << " alpha=" << format_double(spec.alpha());
    }
    std::cout << '\n';
    for (const auto &o : outcomes) {
        std::cout << "outcome=" << o.outcome_bit << " probability=" << format_double(o.probability)
                  << " fidelity_B=" << format_double(o.fidelity_B) << " fidelity_C=" << format_double(o.fidelity_C)
                  << '\n';
    }
    if (spec.mode() == rsp::protocol::Mode::GeneralAlpha) {
        const double pole = rsp::protocol::pole_fidelity(spec.alpha());
        const double worst = std::max(std::abs(outcomes[0].fidelity_B - pole), std::abs(outcomes[1].fidelity_B - pole));
        std::cout << "pole_fidelity=" << format_double(pole) << " simulated_fidelity=" << format_double(outcomes[0].fidelity_B)
                  << " pole_formula_match=" << (worst <= 1e-10 ? "yes" : "no") << '\n';
        if (worst > 1e-10) {
            std::cout << "note: pole formula (1+alpha^2)/2 holds at theta=0 only; simulated fidelity differs by "
                      << format_double(worst) << '\n';
        }
    }
    return kExitOk;
}

int cmd_tradeoff(int steps, const std::string &out_path) {
    const auto rows = rsp::report::tradeoff_table(steps);
    const auto cuts = rsp::report::summarize_cuts();
    const std::string note = rsp::report::discrepancy_note(cuts);
    rsp::io::write_file(out_path, rsp::report::write_tradeoff_csv(rows, note));
    std::cout << "wrote " << rows.size() << " rows to " << out_path << '\n' << note;
    return kExitOk;
}

int cmd_ere(const std::string &in_path, std::optional<std::string> sigma_path) {
    const auto text = rsp::io::read_file(in_path);
    auto matrix = rsp::io::read_matrix(text);
    if (matrix.rows() != 4) {
        throw Error(ErrorKind::DimensionMismatch,
                    "expected a two-qubit (4x4) density matrix, got dimension " + std::to_string(matrix.rows()));
    }
    const rsp::quantum::DensityMatrix rho({"L", "R"}, matrix);
    const auto result = rsp::ree::ree_frank_wolfe(rho);
    const double eof = rsp::ree::eof(rho);
    std::cout << "value_bits=" << format_double(result.value_bits) << '\n'
              << "gap_bits=" << format_double(result.gap_bits) << '\n'
              << "iterations=" << result.iterations << '\n'
              << "converged=" << (result.converged ? "true" : "false") << '\n'
              << "eof_bits=" << format_double(eof) << '\n';
    const auto cuts = rsp::report::summarize_cuts();
    std::cout << rsp::report::discrepancy_note(result.value_bits, result.gap_bits, eof, cuts);
    const std::string out = sigma_path.value_or(in_path + ".sigma");
    rsp::io::write_file(out, rsp::io::write_matrix(result.sigma.matrix()));
    std::cout << "sigma_path=" << out << '\n';
    return kExitOk;
}

void print_session(const rsp::locc::Transcript &t) {
    const auto report = t.final_report();
    std::cout << "classical_cost=" << rsp::locc::classical_cost(t) << '\n';
    if (report) {
        std::cout << "fidelity_B=" << format_double(report->fidelity_B) << '\n'
                  << "fidelity_C=" << format_double(report->fidelity_C) << '\n';
    }
    std::cout << "hash=" << std::hex << t.hash() << std::dec << '\n';
}

int cmd_locc(const ProtocolFlags &flags, std::optional<std::uint64_t> seed, const std::string &topology,
             std::optional<std::string> out_path, std::optional<std::string> replay_path) {
    if (replay_path) {
        const auto original = rsp::locc::Transcript::parse(rsp::io::read_file(*replay_path));
        const auto session = rsp::locc::replay(original);
        print_session(session.transcript);
        std::cout << "replay=identical\n";
        return kExitOk;
    }
    const auto spec = flags.build();
    const auto session =
        rsp::locc::run_session(spec, rsp::locc::parse_topology(topology), seed ? *seed : default_seed());
    const std::string text = session.transcript.serialize();
    if (out_path) {
        rsp::io::write_file(*out_path, text);
        std::cout << "transcript_path=" << *out_path << '\n';
    } else {
        std::cout << text;
    }
    print_session(session.transcript);
    return kExitOk;
}

int cmd_verify(bool json, const std::string &mutate, std::optional<int> only) {
    const auto mutation = rsp::acceptance::parse_mutation(mutate);
    if (!mutation) {
        throw CLI::ValidationError("unknown mutation '" + mutate + "'");
    }
    std::vector<rsp::acceptance::CriterionResult> results;
    if (only) {
        results.push_back(rsp::acceptance::run_criterion(*only, *mutation));
    } else {
        results = rsp::acceptance::run_all(*mutation);
    }
    bool all_passed = true;
    nlohmann::json records = nlohmann::json::array();
    for (const auto &r : results) {
        all_passed = all_passed && r.passed;
        if (json) {
            records.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
        } else {
            std::cout << rsp::acceptance::format_line(r) << '\n';
        }
    }
    if (json) {
        std::cout << records.dump(2) << '\n';
    } else {
        std::cout << (all_passed ? "all criteria passed" : "acceptance FAILED") << '\n';
    }
    return all_passed ? kExitOk : kExitVerifyFailure;
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::IoError:
            return kExitIo;
        default:
            return kExitInvalidInput;
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Remote preparation of approximate clone states: simulation, REE bounds, LOCC sessions"};
    app.require_subcommand(1);

    ProtocolFlags run_flags;
    auto *run = app.add_subcommand("run", "simulate both measurement outcomes of one protocol instance");
    run_flags.attach(*run);

    int alpha_steps = 11;
    std::string tradeoff_out = "tradeoff.csv";
    auto *tradeoff = app.add_subcommand("tradeoff", "sweep alpha and write the trade-off CSV");
    tradeoff->add_option("--alpha-steps", alpha_steps, "evenly spaced alpha values in [0, 1]")
        ->check(CLI::Range(2, 100000));
    tradeoff->add_option("--out", tradeoff_out, "CSV output path");

    std::string ere_in;
    std::optional<std::string> ere_sigma;
    auto *ere = app.add_subcommand("ere", "relative entropy of entanglement of a two-qubit MatrixFile");
    ere->add_option("in_path", ere_in, "MatrixFile holding a 4x4 density matrix")->required();
    ere->add_option("--sigma-out", ere_sigma, "closest separable state output (default <in_path>.sigma)");

    ProtocolFlags locc_flags;
    std::optional<std::uint64_t> locc_seed;
    std::string locc_topology = "standard";
    std::optional<std::string> locc_out;
    std::optional<std::string> locc_replay;
    auto *locc = app.add_subcommand("locc", "run or replay a sampled LOCC session");
    locc_flags.attach(*locc);
    locc->add_option("--seed", locc_seed, "outcome sampler seed (default $RSP_SEED, else 0)");
    locc->add_option("--topology", locc_topology, "standard | same-location")
        ->check(CLI::IsMember({"standard", "same-location"}));
    locc->add_option("--out", locc_out, "transcript output path (default stdout)");
    locc->add_option("--replay", locc_replay, "replay a transcript file and confirm it reproduces");

    bool verify_json = false;
    std::string verify_mutate = "none";
    std::optional<int> verify_only;
    auto *verify = app.add_subcommand("verify", "run the acceptance suite");
    verify->add_flag("--json", verify_json, "emit one JSON record per criterion");
    verify->add_option("--mutate", verify_mutate,
                       "corrupt a reference constant: equatorial-fidelity | polar-fidelity | tradeoff-anchor");
    verify->add_option("--criterion", verify_only, "run a single criterion")
        ->check(CLI::Range(1, rsp::acceptance::kCriterionCount));

    try {
        app.parse(argc, argv);
        if (*run) return cmd_run(run_flags);
        if (*tradeoff) return cmd_tradeoff(alpha_steps, tradeoff_out);
        if (*ere) return cmd_ere(ere_in, ere_sigma);
        if (*locc) return cmd_locc(locc_flags, locc_seed, locc_topology, locc_out, locc_replay);
        if (*verify) return cmd_verify(verify_json, verify_mutate, verify_only);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    }
    return kExitUsage;
}

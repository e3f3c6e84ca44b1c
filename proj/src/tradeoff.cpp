#include "rsp/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rsp/errors.hpp"
#include "rsp/io.hpp"
#include "rsp/protocol.hpp"

namespace rsp::report {

std::vector<double> tradeoff_alphas(int steps) {
    if (steps < 2) {
        throw Error(ErrorKind::DomainError, "alpha_steps must be at least 2");
    }
    std::vector<double> alphas;
    for (int k = 0; k < steps; ++k) {
        alphas.push_back(static_cast<double>(k) / (steps - 1));
    }
    const double polar = protocol::polar_alpha();
    if (std::none_of(alphas.begin(), alphas.end(), [&](double a) { return std::abs(a - polar) < 1e-12; })) {
        alphas.push_back(polar);
    }
    std::sort(alphas.begin(), alphas.end());
    return alphas;
}

TradeoffRow tradeoff_row(double alpha, const ree::EreOptions &opts) {
    const auto spec = protocol::ProtocolSpec::general_alpha(0.0, alpha);
    const auto outcomes = protocol::run_protocol(spec);
    const auto cut = protocol::cut_marginal(protocol::resource_state(spec), protocol::kBob);
    const auto ree = ree::ree_frank_wolfe(cut, opts);
    const double f_pole = protocol::pole_fidelity(alpha);
    return TradeoffRow{alpha,
                       spec.beta(),
                       f_pole,
                       outcomes[0].fidelity_B,
                       protocol::tradeoff_er(f_pole),
                       ree.value_bits,
                       ree.gap_bits,
                       ree::concurrence(cut),
                       ree::eof(cut)};
}

std::vector<TradeoffRow> tradeoff_table(int steps, const ree::EreOptions &opts) {
    std::vector<TradeoffRow> rows;
    for (double alpha : tradeoff_alphas(steps)) {
        rows.push_back(tradeoff_row(alpha, opts));
    }
    return rows;
}

std::string write_tradeoff_csv(const std::vector<TradeoffRow> &rows, std::string_view note) {
    std::string out(kTradeoffHeader);
    out += '\n';
    for (const auto &r : rows) {
        const double fields[] = {r.alpha, r.beta, r.f_pole, r.f_sim_theta0, r.er_eq10,
                                 r.er_numeric_ab, r.gap, r.concurrence_ab, r.eof_ab};
        for (std::size_t i = 0; i < std::size(fields); ++i) {
            if (i > 0) {
                out += ',';
            }
            out += io::format_double(fields[i]);
        }
        out += '\n';
    }
    out += note;
    return out;
}

std::vector<TradeoffRow> parse_tradeoff_csv(std::string_view text) {
    std::vector<TradeoffRow> rows;
    bool header_seen = false;
    std::size_t line_no = 0;
    for (auto line : io::split(text, '\n')) {
        ++line_no;
        line = io::trim(line);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (!header_seen) {
            if (line != kTradeoffHeader) {
                throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": unexpected CSV header");
            }
            header_seen = true;
            continue;
        }
        auto f = io::split(line, ',');
        if (f.size() != 9) {
            throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected 9 fields");
        }
        double v[9];
        for (std::size_t i = 0; i < 9; ++i) {
            v[i] = io::parse_double(f[i]);
        }
        rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8]});
    }
    if (!header_seen) {
        throw Error(ErrorKind::ParseError, "missing CSV header");
    }
    return rows;
}

CutSummary summarize_cuts(const ree::EreOptions &opts) {
    auto eq = protocol::cut_marginal(protocol::resource_state(protocol::ProtocolSpec::equatorial(0.0)), protocol::kBob);
    auto po = protocol::cut_marginal(protocol::resource_state(protocol::ProtocolSpec::polar(0.0)), protocol::kBob);
    auto eq_ree = ree::ree_frank_wolfe(eq, opts);
    auto po_ree = ree::ree_frank_wolfe(po, opts);
    return CutSummary{eq_ree.value_bits, eq_ree.gap_bits, ree::eof(eq),
                      po_ree.value_bits, po_ree.gap_bits, ree::eof(po)};
}

namespace {

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << std::fixed << v;
    return s.str();
}

void cut_lines(std::ostringstream &out, const CutSummary &cuts) {
    out << "# equatorial rho_aB: REE " << fmt(cuts.equatorial_ree) << " bits (gap " << fmt(cuts.equatorial_gap)
        << "), EoF upper bound " << fmt(cuts.equatorial_eof) << " bits; reported " << kReportedEquatorialEr
        << "\n";
    out << "# polar rho_aB: REE " << fmt(cuts.polar_ree) << " bits (gap " << fmt(cuts.polar_gap)
        << "), EoF upper bound " << fmt(cuts.polar_eof) << " bits; reported " << kReportedPolarEr << "\n";
    out << "# trade-off curve at F = 5/6: " << fmt(protocol::tradeoff_er(5.0 / 6.0)) << " bits\n";
    out << "# REE <= EoF for two qubits, so neither reported constant is the REE of the two-qubit\n"
        << "# marginal rho_aB; the intended cut is ambiguous and no value here is treated as ground truth.\n";
}

}  // namespace

std::string discrepancy_note(const CutSummary &cuts) {
    std::ostringstream out;
    out << "# reported-value discrepancy: published E_r for the a:B cut is " << kReportedEquatorialEr
        << " (equatorial) and " << kReportedPolarEr << " (polar)\n";
    cut_lines(out, cuts);
    return out.str();
}

std::string discrepancy_note(double ree_bits, double gap_bits, double eof_bits, const CutSummary &cuts) {
    std::ostringstream out;
    out << "# reported-value discrepancy: published E_r for the a:B cut is " << kReportedEquatorialEr
        << " (equatorial) and " << kReportedPolarEr << " (polar)\n";
    out << "# this state: REE " << fmt(ree_bits) << " bits (gap " << fmt(gap_bits) << "), EoF upper bound "
        << fmt(eof_bits) << " bits\n";
    cut_lines(out, cuts);
    return out.str();
}

}  // namespace rsp::report

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rsp/ree.hpp"

namespace rsp::report {

/// Published E_r values for the a:B cut of the resource state. They are reported
/// next to every computed number and never used as pass/fail targets.
inline constexpr double kReportedEquatorialEr = 0.6095;
inline constexpr double kReportedPolarEr = 0.4425;

inline constexpr std::string_view kTradeoffHeader =
    "alpha,beta,F_pole,F_sim_theta0,Er_eq10,Er_numeric_aB,gap,concurrence_aB,eof_aB";

struct TradeoffRow {
    double alpha;
    double beta;
    double f_pole;
    double f_sim_theta0;
    double er_eq10;
    double er_numeric_ab;
    double gap;
    double concurrence_ab;
    double eof_ab;

    bool operator==(const TradeoffRow &) const = default;
};

/// `steps` evenly spaced alphas on [0, 1] plus the polar cloner's alpha, ascending.
/// Throws DomainError for steps < 2.
std::vector<double> tradeoff_alphas(int steps);

TradeoffRow tradeoff_row(double alpha, const ree::EreOptions &opts = {});
std::vector<TradeoffRow> tradeoff_table(int steps, const ree::EreOptions &opts = {});

/// Header, rows, then '#'-prefixed discrepancy lines.
std::string write_tradeoff_csv(const std::vector<TradeoffRow> &rows, std::string_view note);
/// Skips '#' lines; throws ParseError on a wrong header or malformed row.
std::vector<TradeoffRow> parse_tradeoff_csv(std::string_view text);

/// Numeric REE/EoF of the equatorial and polar a:B marginals.
struct CutSummary {
    double equatorial_ree;
    double equatorial_gap;
    double equatorial_eof;
    double polar_ree;
    double polar_gap;
    double polar_eof;
};
CutSummary summarize_cuts(const ree::EreOptions &opts = {});

/// Multi-line note comparing the published E_r constants with computed REE and EoF
/// values. Every line starts with "# ".
std::string discrepancy_note(const CutSummary &cuts);
/// Same note for a single user-supplied state, followed by the two reference cuts.
std::string discrepancy_note(double ree_bits, double gap_bits, double eof_bits, const CutSummary &cuts);

}  // namespace rsp::report

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rsp::acceptance {

struct CriterionResult {
    int id;
    std::string title;
    bool passed;
    std::string detail;
    double seconds;
};

/// Corrupts one reference constant so the suite's failure path can be exercised.
enum class Mutation {
    None,
    EquatorialFidelity,  // 1/(2 sqrt 2) -> 1/(2 sqrt 3)
    PolarFidelity,       // 5/6 -> 4/5
    TradeoffAnchor,      // 0.4425 -> 0.45
};

/// Accepts "none", "equatorial-fidelity", "polar-fidelity", "tradeoff-anchor".
std::optional<Mutation> parse_mutation(std::string_view text);

inline constexpr int kCriterionCount = 10;

/// Runs criterion `id` (1-based).
CriterionResult run_criterion(int id, Mutation mutation = Mutation::None);
std::vector<CriterionResult> run_all(Mutation mutation = Mutation::None);

/// "[PASS] 3  Polar fidelity (0.01 s): detail"
std::string format_line(const CriterionResult &r);

}  // namespace rsp::acceptance

#pragma once

// LP building blocks shared by the arbitrage, pricing and redundancy modules.

#include <optional>
#include <vector>

#include "ftap/lp.hpp"
#include "ftap/model.hpp"

namespace ftap::detail {

struct StrategyVars {
    std::vector<std::vector<std::size_t>> dynamic;  // node -> asset -> variable
    std::vector<std::size_t> buy;
    std::vector<std::size_t> sell;
};

/// Free dynamic positions on every internal node plus nonnegative option
/// legs (legs omitted when `with_options` is false).
StrategyVars add_strategy_variables(lp::ProblemBuilder& b, const MarketModel& m,
                                    const TreeLayout& lay, bool with_options = true);

/// Terms of the terminal gain at `leaf` as a linear form in the strategy.
lp::ProblemBuilder::Terms gain_terms(const MarketModel& m, const TreeLayout& lay,
                                     const StrategyVars& v, LeafIndex leaf);

/// Dynamic stock-trading part only.
lp::ProblemBuilder::Terms trading_terms(const MarketModel& m, const TreeLayout& lay,
                                        const StrategyVars& v, LeafIndex leaf);

Strategy read_strategy(const MarketModel& m, const TreeLayout& lay, const StrategyVars& v,
                       const Vector& x);

/// One nonnegative weight per support leaf.
struct MeasureVars {
    std::vector<LeafIndex> leaves;
    std::vector<std::size_t> weight;
};

MeasureVars add_measure_variables(lp::ProblemBuilder& b, const std::vector<LeafIndex>& supp,
                                  const Rational& cost_per_leaf = Rational(0));

/// Total mass one and the one-step martingale identity at every internal
/// node for every asset.
void add_martingale_rows(lp::ProblemBuilder& b, const MarketModel& m, const TreeLayout& lay,
                         const MeasureVars& q);

/// Quote consistency: E[g] = bid on zero-spread options, otherwise
/// bid + slack <= E[g] <= ask - slack (slack term omitted when absent).
void add_quote_rows(lp::ProblemBuilder& b, const MarketModel& m, const MeasureVars& q,
                    std::optional<std::size_t> slack);

Vector read_weights(const MarketModel& m, const MeasureVars& q, const Vector& x);

MarketModel without_option(const MarketModel& m, std::size_t i);

}  // namespace ftap::detail

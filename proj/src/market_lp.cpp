#include "market_lp.hpp"

namespace ftap::detail {

using lp::Bound;
using lp::Relation;
using Terms = lp::ProblemBuilder::Terms;

StrategyVars add_strategy_variables(lp::ProblemBuilder& b, const MarketModel& m,
                                    const TreeLayout& lay, bool with_options) {
    StrategyVars v;
    v.dynamic.resize(m.tree.nodes.size());
    for (NodeId node : lay.internal) {
        for (std::size_t j = 0; j < m.asset_count(); ++j) {
            v.dynamic[node].push_back(b.add_variable(0, Bound::free()));
        }
    }
    if (with_options) {
        for (std::size_t i = 0; i < m.option_count(); ++i) {
            v.buy.push_back(b.add_variable(0, Bound::nonnegative()));
            v.sell.push_back(b.add_variable(0, Bound::nonnegative()));
        }
    }
    return v;
}

Terms trading_terms(const MarketModel& m, const TreeLayout& lay, const StrategyVars& v,
                    LeafIndex leaf) {
    Terms terms;
    const auto& path = lay.paths[leaf];
    for (std::size_t step = 0; step + 1 < path.size(); ++step) {
        const Node& from = m.tree.nodes[path[step]];
        const Node& to = m.tree.nodes[path[step + 1]];
        for (std::size_t j = 0; j < m.asset_count(); ++j) {
            Rational increment = to.prices[j] - from.prices[j];
            if (!increment.is_zero()) terms.emplace_back(v.dynamic[from.id][j], std::move(increment));
        }
    }
    return terms;
}

Terms gain_terms(const MarketModel& m, const TreeLayout& lay, const StrategyVars& v,
                 LeafIndex leaf) {
    Terms terms = trading_terms(m, lay, v, leaf);
    for (std::size_t i = 0; i < v.buy.size(); ++i) {
        const auto& opt = m.options[i];
        terms.emplace_back(v.buy[i], opt.payoff[leaf] - opt.ask);
        terms.emplace_back(v.sell[i], opt.bid - opt.payoff[leaf]);
    }
    return terms;
}

Strategy read_strategy(const MarketModel& m, const TreeLayout& lay, const StrategyVars& v,
                       const Vector& x) {
    Strategy s = Strategy::zero(m);
    for (NodeId node : lay.internal) {
        for (std::size_t j = 0; j < m.asset_count(); ++j) s.dynamic[node][j] = x[v.dynamic[node][j]];
    }
    for (std::size_t i = 0; i < v.buy.size(); ++i) {
        s.buy[i] = x[v.buy[i]];
        s.sell[i] = x[v.sell[i]];
    }
    return s;
}

MeasureVars add_measure_variables(lp::ProblemBuilder& b, const std::vector<LeafIndex>& supp,
                                  const Rational& cost_per_leaf) {
    MeasureVars q;
    q.leaves = supp;
    for (std::size_t k = 0; k < supp.size(); ++k) {
        q.weight.push_back(b.add_variable(cost_per_leaf, Bound::nonnegative()));
    }
    return q;
}

void add_martingale_rows(lp::ProblemBuilder& b, const MarketModel& m, const TreeLayout& lay,
                         const MeasureVars& q) {
    Terms mass;
    for (std::size_t k = 0; k < q.leaves.size(); ++k) mass.emplace_back(q.weight[k], 1);
    b.add_row(std::move(mass), Relation::Equal, 1);

    for (NodeId node : lay.internal) {
        const Node& at = m.tree.nodes[node];
        const auto depth = static_cast<std::size_t>(at.time);
        for (std::size_t j = 0; j < m.asset_count(); ++j) {
            Terms row;
            for (std::size_t k = 0; k < q.leaves.size(); ++k) {
                const auto& path = lay.paths[q.leaves[k]];
                if (path[depth] != node) continue;
                Rational step = m.tree.nodes[path[depth + 1]].prices[j] - at.prices[j];
                if (!step.is_zero()) row.emplace_back(q.weight[k], std::move(step));
            }
            if (!row.empty()) b.add_row(std::move(row), Relation::Equal, 0);
        }
    }
}

void add_quote_rows(lp::ProblemBuilder& b, const MarketModel& m, const MeasureVars& q,
                    std::optional<std::size_t> slack) {
    for (const auto& opt : m.options) {
        Terms value;
        for (std::size_t k = 0; k < q.leaves.size(); ++k) {
            const Rational& g = opt.payoff[q.leaves[k]];
            if (!g.is_zero()) value.emplace_back(q.weight[k], g);
        }
        if (!opt.has_spread()) {
            b.add_row(std::move(value), Relation::Equal, opt.bid);
            continue;
        }
        Terms lower = value;
        Terms upper = std::move(value);
        if (slack) {
            lower.emplace_back(*slack, -1);
            upper.emplace_back(*slack, 1);
        }
        b.add_row(std::move(lower), Relation::GreaterEqual, opt.bid);
        b.add_row(std::move(upper), Relation::LessEqual, opt.ask);
    }
}

Vector read_weights(const MarketModel& m, const MeasureVars& q, const Vector& x) {
    Vector w(m.leaf_count());
    for (std::size_t k = 0; k < q.leaves.size(); ++k) w[q.leaves[k]] = x[q.weight[k]];
    return w;
}

MarketModel without_option(const MarketModel& m, std::size_t i) {
    MarketModel out = m;
    out.options.erase(out.options.begin() + static_cast<std::ptrdiff_t>(i));
    return out;
}

}  // namespace ftap::detail

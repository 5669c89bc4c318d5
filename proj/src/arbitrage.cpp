#include "ftap/arbitrage.hpp"

#include <algorithm>

#include "ftap/errors.hpp"
#include "ftap/lp.hpp"
#include "market_lp.hpp"

namespace ftap {

using lp::Bound;
using lp::Relation;

MartingaleMeasure make_measure(const MarketModel& m, Vector weights) {
    MartingaleMeasure q;
    q.optionValues.reserve(m.option_count());
    for (const auto& opt : m.options) q.optionValues.push_back(dot(weights, opt.payoff));
    q.weights = std::move(weights);
    return q;
}

bool replay_measure(const MarketModel& m, const MartingaleMeasure& q, Consistency level) {
    if (q.weights.size() != m.leaf_count() || q.optionValues.size() != m.option_count()) return false;
    const auto supp = support(m);
    std::vector<bool> charged(m.leaf_count(), false);
    for (auto leaf : supp) charged[leaf] = true;
    for (LeafIndex leaf = 0; leaf < m.leaf_count(); ++leaf) {
        const int s = q.weights[leaf].sign();
        if (s < 0 || (s > 0 && !charged[leaf])) return false;
        if (level == Consistency::StrictlyConsistent && charged[leaf] && s == 0) return false;
    }
    if (sum(q.weights) != Rational(1)) return false;

    const TreeLayout lay = layout(m.tree);
    for (NodeId node : lay.internal) {
        const Node& at = m.tree.nodes[node];
        const auto depth = static_cast<std::size_t>(at.time);
        for (std::size_t j = 0; j < m.asset_count(); ++j) {
            mpq_class drift;
            for (LeafIndex leaf = 0; leaf < m.leaf_count(); ++leaf) {
                const auto& path = lay.paths[leaf];
                if (path[depth] != node) continue;
                drift += q.weights[leaf].raw() *
                         (m.tree.nodes[path[depth + 1]].prices[j].raw() - at.prices[j].raw());
            }
            if (sgn(drift) != 0) return false;
        }
    }
    for (std::size_t i = 0; i < m.option_count(); ++i) {
        const auto& opt = m.options[i];
        const Rational& value = q.optionValues[i];
        if (value != dot(q.weights, opt.payoff)) return false;
        if (level == Consistency::Martingale) continue;
        if (value < opt.bid || value > opt.ask) return false;
        if (level == Consistency::StrictlyConsistent && opt.has_spread() &&
            (value == opt.bid || value == opt.ask)) {
            return false;
        }
    }
    return true;
}

bool replay_arbitrage(const MarketModel& m, const ArbitrageCertificate& c) {
    Vector gains;
    try {
        gains = terminal_gain(m, c.strategy);
    } catch (const StructuralError&) {
        return false;
    }
    if (gains != c.gains) return false;
    for (std::size_t i = 0; i < c.strategy.buy.size(); ++i) {
        if (c.strategy.buy[i].sign() < 0 || c.strategy.sell[i].sign() < 0) return false;
    }
    const auto supp = support(m);
    if (std::find(supp.begin(), supp.end(), c.strictLeaf) == supp.end()) return false;
    for (auto leaf : supp) {
        if (gains[leaf].sign() < 0) return false;
    }
    return gains[c.strictLeaf].sign() > 0;
}

NaVerdict check_na(const MarketModel& m) {
    require_valid(m);
    const TreeLayout lay = layout(m.tree);
    const auto supp = support(m);

    lp::ProblemBuilder b(lp::Sense::Maximize);
    const auto vars = detail::add_strategy_variables(b, m, lay);
    lp::ProblemBuilder::Terms total;
    for (auto leaf : supp) {
        const std::size_t surplus = b.add_variable(1, Bound::nonnegative());
        auto row = detail::gain_terms(m, lay, vars, leaf);
        row.emplace_back(surplus, -1);
        b.add_row(std::move(row), Relation::Equal, 0);
        total.emplace_back(surplus, 1);
    }
    b.add_row(std::move(total), Relation::LessEqual, 1);

    const auto outcome = lp::solve(b.build());
    if (outcome.status != lp::Status::Optimal) {
        throw SoundnessError("no-arbitrage LP is feasible and bounded but solver reported otherwise");
    }
    if (outcome.objectiveValue.is_zero()) return {};

    ArbitrageCertificate cert;
    cert.strategy = detail::read_strategy(m, lay, vars, outcome.primal).canonical();
    cert.gains = terminal_gain(m, cert.strategy);
    const auto strict = std::find_if(supp.begin(), supp.end(),
                                     [&](LeafIndex leaf) { return cert.gains[leaf].sign() > 0; });
    if (strict == supp.end()) throw SoundnessError("arbitrage optimum has no strictly positive leaf");
    cert.strictLeaf = *strict;
    return {false, std::move(cert)};
}

bool replay_witness(const MarketModel& m, const RobustnessWitness& w) {
    if (w.shrunkBids.size() != m.option_count() || w.shrunkAsks.size() != m.option_count()) return false;
    if (w.slack.sign() <= 0) return false;
    if (!replay_measure(m, w.interiorMeasure, Consistency::StrictlyConsistent)) return false;
    for (std::size_t i = 0; i < m.option_count(); ++i) {
        const auto& opt = m.options[i];
        const Rational& lo = w.shrunkBids[i];
        const Rational& hi = w.shrunkAsks[i];
        if (opt.has_spread()) {
            if (!(opt.bid < lo && lo <= hi && hi < opt.ask)) return false;
        } else if (lo != opt.bid || hi != opt.bid) {
            return false;
        }
        const Rational& value = w.interiorMeasure.optionValues[i];
        if (value < lo || value > hi) return false;
    }
    return true;
}

namespace {

struct SlackProblem {
    lp::Problem problem;
    detail::MeasureVars q;
    std::size_t slack = 0;
};

SlackProblem slack_problem(const MarketModel& m, const TreeLayout& lay) {
    SlackProblem sp;
    lp::ProblemBuilder b(lp::Sense::Maximize);
    sp.q = detail::add_measure_variables(b, support(m));
    sp.slack = b.add_variable(1, Bound::free());
    detail::add_martingale_rows(b, m, lay, sp.q);
    for (std::size_t k = 0; k < sp.q.leaves.size(); ++k) {
        b.add_row({{sp.q.weight[k], 1}, {sp.slack, -1}}, Relation::GreaterEqual, 0);
    }
    detail::add_quote_rows(b, m, sp.q, sp.slack);
    sp.problem = b.build();
    return sp;
}

}  // namespace

NarVerdict check_nar(const MarketModel& m) {
    require_valid(m);
    const TreeLayout lay = layout(m.tree);
    const auto sp = slack_problem(m, lay);
    const auto outcome = lp::solve(sp.problem);

    NarVerdict verdict;
    if (outcome.status == lp::Status::Infeasible) {
        verdict.blocking =
            "no martingale measure on the support reproduces the zero-spread quotes; "
            "the slack program is infeasible";
        return verdict;
    }
    if (outcome.status != lp::Status::Optimal) {
        throw SoundnessError("slack LP is bounded but solver reported unbounded");
    }
    const Rational slack = outcome.primal[sp.slack];
    verdict.bestSlack = slack;
    if (slack.sign() <= 0) {
        verdict.blocking = "maximal slack is " + slack.str() +
                           ": no martingale measure charges every support leaf while pricing "
                           "every spread option strictly inside its quotes";
        return verdict;
    }
    RobustnessWitness w;
    w.slack = slack;
    w.interiorMeasure = make_measure(m, detail::read_weights(m, sp.q, outcome.primal));
    const Rational half = slack / Rational(2);
    for (const auto& opt : m.options) {
        if (opt.has_spread()) {
            w.shrunkBids.push_back(opt.bid + half);
            w.shrunkAsks.push_back(opt.ask - half);
        } else {
            w.shrunkBids.push_back(opt.bid);
            w.shrunkAsks.push_back(opt.ask);
        }
    }
    verdict.holds = true;
    verdict.witness = std::move(w);
    return verdict;
}

MartingaleMeasure dominating_measure(const MarketModel& m, std::size_t generator) {
    require_valid(m);
    if (generator >= m.measures.generators.size()) {
        throw DomainError("generator index " + std::to_string(generator) + " out of range");
    }
    auto verdict = check_nar(m);
    if (!verdict.holds) throw PreconditionError("robust no-arbitrage fails: " + verdict.blocking);
    MartingaleMeasure q = std::move(verdict.witness->interiorMeasure);
    const auto& prior = m.measures.generators[generator].weights;
    for (LeafIndex leaf = 0; leaf < m.leaf_count(); ++leaf) {
        if (prior[leaf].sign() > 0 && q.weights[leaf].sign() <= 0) {
            throw SoundnessError("interior measure misses a charged leaf");
        }
    }
    return q;
}

std::optional<MartingaleMeasure> scenario_pricing_measure(const MarketModel& m, LeafIndex leaf) {
    require_valid(m);
    const auto supp = support(m);
    const auto pos = std::find(supp.begin(), supp.end(), leaf);
    if (pos == supp.end()) {
        throw DomainError("leaf " + std::to_string(leaf) + " is outside the support");
    }
    const TreeLayout lay = layout(m.tree);
    lp::ProblemBuilder b(lp::Sense::Maximize);
    const auto q = detail::add_measure_variables(b, supp);
    detail::add_martingale_rows(b, m, lay, q);
    detail::add_quote_rows(b, m, q, std::nullopt);
    auto p = b.build();
    p.objective[q.weight[static_cast<std::size_t>(pos - supp.begin())]] = 1;

    const auto outcome = lp::solve(p);
    if (outcome.status != lp::Status::Optimal || outcome.objectiveValue.sign() <= 0) {
        return std::nullopt;
    }
    return make_measure(m, detail::read_weights(m, q, outcome.primal));
}

}  // namespace ftap

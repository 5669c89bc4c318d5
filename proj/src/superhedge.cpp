#include "ftap/superhedge.hpp"

#include "ftap/lp.hpp"
#include "market_lp.hpp"

namespace ftap {

using lp::Bound;
using lp::Relation;

namespace {

void require_claim(const MarketModel& m, const Claim& f) {
    if (f.payoff.size() != m.leaf_count()) {
        throw StructuralError("claim has " + std::to_string(f.payoff.size()) + " entries, expected " +
                              std::to_string(m.leaf_count()));
    }
}

// Solves the pricing program without checking robust no-arbitrage. Throws
// RobustArbitrageError carrying the improving ray when unbounded below.
HedgeResult superhedge_lp(const MarketModel& m, const Claim& f) {
    const TreeLayout lay = layout(m.tree);
    lp::ProblemBuilder b(lp::Sense::Minimize);
    const std::size_t capital = b.add_variable(1, Bound::free());
    const auto vars = detail::add_strategy_variables(b, m, lay);
    for (auto leaf : support(m)) {
        auto row = detail::gain_terms(m, lay, vars, leaf);
        row.emplace_back(capital, 1);
        b.add_row(std::move(row), Relation::GreaterEqual, f.payoff[leaf]);
    }
    const auto outcome = lp::solve(b.build());
    switch (outcome.status) {
        case lp::Status::Optimal:
            return {outcome.objectiveValue,
                    detail::read_strategy(m, lay, vars, outcome.primal).canonical()};
        case lp::Status::Unbounded:
            throw RobustArbitrageError(
                "super-hedging price is -infinity: the market admits a robust arbitrage",
                detail::read_strategy(m, lay, vars, outcome.ray));
        case lp::Status::Infeasible:
            break;
    }
    return {std::nullopt, std::nullopt};
}

void require_nar(const MarketModel& m) {
    const auto verdict = check_nar(m);
    if (!verdict.holds) {
        throw RobustArbitrageError("robust no-arbitrage fails: " + verdict.blocking, std::nullopt);
    }
}

}  // namespace

HedgeResult superhedge_price(const MarketModel& m, const Claim& f) {
    require_valid(m);
    require_claim(m, f);
    auto result = superhedge_lp(m, f);
    require_nar(m);
    return result;
}

bool replay_superhedge(const MarketModel& m, const Claim& f, const Rational& price,
                       const Strategy& s) {
    if (f.payoff.size() != m.leaf_count()) return false;
    for (std::size_t i = 0; i < s.buy.size(); ++i) {
        if (s.buy[i].sign() < 0 || s.sell[i].sign() < 0) return false;
    }
    Vector gains;
    try {
        gains = terminal_gain(m, s);
    } catch (const StructuralError&) {
        return false;
    }
    for (auto leaf : support(m)) {
        if (price + gains[leaf] < f.payoff[leaf]) return false;
    }
    return true;
}

DualResult dual_price(const MarketModel& m, const Claim& f) {
    require_valid(m);
    require_claim(m, f);
    const TreeLayout lay = layout(m.tree);
    lp::ProblemBuilder b(lp::Sense::Maximize);
    const auto q = detail::add_measure_variables(b, support(m));
    detail::add_martingale_rows(b, m, lay, q);
    detail::add_quote_rows(b, m, q, std::nullopt);
    auto p = b.build();
    for (std::size_t k = 0; k < q.leaves.size(); ++k) p.objective[q.weight[k]] = f.payoff[q.leaves[k]];

    const auto outcome = lp::solve(p);
    if (outcome.status == lp::Status::Infeasible) {
        throw PreconditionError(
            "no quote-consistent martingale measure exists on the support, so no-arbitrage fails");
    }
    if (outcome.status != lp::Status::Optimal) {
        throw SoundnessError("dual pricing LP over a compact set reported unbounded");
    }
    return {outcome.objectiveValue, make_measure(m, detail::read_weights(m, q, outcome.primal))};
}

PricingReport duality_report(const MarketModel& m, const Claim& f) {
    const auto primal = superhedge_price(m, f);
    auto dual = dual_price(m, f);
    PricingReport report;
    report.primalValue = primal.price;
    report.strategy = primal.strategy;
    report.dualValue = dual.value;
    report.dualMeasure = std::move(dual.measure);
    if (!primal.price) throw SoundnessError("finite dual value but infinite super-hedging price");
    report.gap = *primal.price - dual.value;
    if (!report.gap.is_zero()) {
        throw SoundnessError("duality gap " + report.gap.str() + " between primal " +
                             primal.price->str() + " and dual " + dual.value.str());
    }
    if (!replay_superhedge(m, f, *primal.price, *primal.strategy)) {
        throw SoundnessError("optimal strategy fails to super-replicate");
    }
    return report;
}

MartingaleMeasure strict_dual_approx(const MarketModel& m, const Claim& f, const Rational& eps) {
    if (eps.sign() <= 0) throw DomainError("eps must be positive, got " + eps.str());
    require_valid(m);
    require_claim(m, f);
    const auto verdict = check_nar(m);
    if (!verdict.holds) {
        throw RobustArbitrageError("robust no-arbitrage fails: " + verdict.blocking, std::nullopt);
    }
    auto best = dual_price(m, f);
    if (replay_measure(m, best.measure, Consistency::StrictlyConsistent)) return best.measure;

    const auto& interior = verdict.witness->interiorMeasure;
    const Rational interior_value = dot(interior.weights, f.payoff);
    const Rational cap = min(Rational(1, 2), eps / (Rational(1) + abs(best.value - interior_value)));
    unsigned k = 1;
    while (dyadic(k) > cap) ++k;
    const Rational lambda = dyadic(k);

    Vector mixed(m.leaf_count());
    for (LeafIndex leaf = 0; leaf < m.leaf_count(); ++leaf) {
        mixed[leaf] = (Rational(1) - lambda) * best.measure.weights[leaf] + lambda * interior.weights[leaf];
    }
    return make_measure(m, std::move(mixed));
}

std::pair<Rational, Rational> price_bounds_excluding(const MarketModel& m, std::size_t i) {
    require_valid(m);
    if (i >= m.option_count()) throw DomainError("option index " + std::to_string(i) + " out of range");
    const MarketModel reduced = detail::without_option(m, i);
    const auto verdict = check_nar(reduced);
    if (!verdict.holds) {
        throw PreconditionError("market without option " + m.options[i].name +
                                " fails robust no-arbitrage: " + verdict.blocking);
    }
    Claim up{m.options[i].payoff};
    Claim down{up.payoff};
    for (auto& v : down.payoff) v = -v;
    const auto upper = superhedge_lp(reduced, up);
    const auto lower = superhedge_lp(reduced, down);
    return {-*lower.price, *upper.price};
}

}  // namespace ftap

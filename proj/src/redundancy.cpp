#include "ftap/redundancy.hpp"

#include "ftap/errors.hpp"
#include "ftap/lp.hpp"
#include "market_lp.hpp"

namespace ftap {

using lp::Bound;
using lp::Relation;

namespace {

std::size_t other_option(std::size_t k, std::size_t i) { return k < i ? k : k + 1; }

}  // namespace

bool replay_replication(const MarketModel& m, std::size_t i, const ReplicationCertificate& c) {
    if (i >= m.option_count() || c.staticSigned.size() + 1 != m.option_count()) return false;
    Strategy trading = Strategy::zero(m);
    if (c.dynamic.size() != trading.dynamic.size()) return false;
    trading.dynamic = c.dynamic;
    Vector gains;
    try {
        gains = terminal_gain(m, trading);
    } catch (const StructuralError&) {
        return false;
    }
    for (auto leaf : support(m)) {
        Rational value = c.initialCapital + gains[leaf];
        for (std::size_t k = 0; k < c.staticSigned.size(); ++k) {
            value += c.staticSigned[k] * m.options[other_option(k, i)].payoff[leaf];
        }
        if (value != m.options[i].payoff[leaf]) return false;
    }
    return true;
}

RedundancyVerdict check_nonredundant(const MarketModel& m, std::size_t i) {
    require_valid(m);
    if (i >= m.option_count()) throw DomainError("option index " + std::to_string(i) + " out of range");
    const TreeLayout lay = layout(m.tree);

    lp::ProblemBuilder b(lp::Sense::Minimize);
    const std::size_t capital = b.add_variable(0, Bound::free());
    const auto vars = detail::add_strategy_variables(b, m, lay, false);
    std::vector<std::size_t> positions;
    for (std::size_t k = 0; k + 1 < m.option_count(); ++k) {
        positions.push_back(b.add_variable(0, Bound::free()));
    }
    for (auto leaf : support(m)) {
        auto row = detail::trading_terms(m, lay, vars, leaf);
        row.emplace_back(capital, 1);
        for (std::size_t k = 0; k < positions.size(); ++k) {
            const Rational& g = m.options[other_option(k, i)].payoff[leaf];
            if (!g.is_zero()) row.emplace_back(positions[k], g);
        }
        b.add_row(std::move(row), Relation::Equal, m.options[i].payoff[leaf]);
    }
    const auto outcome = lp::solve(b.build());
    if (outcome.status == lp::Status::Infeasible) return {};
    if (outcome.status != lp::Status::Optimal) throw SoundnessError("zero-objective LP reported unbounded");

    ReplicationCertificate cert;
    cert.initialCapital = outcome.primal[capital];
    cert.dynamic = detail::read_strategy(m, lay, vars, outcome.primal).dynamic;
    for (auto p : positions) cert.staticSigned.push_back(outcome.primal[p]);
    return {false, std::move(cert)};
}

SpreadRedundancy all_spread_options_nonredundant(const MarketModel& m) {
    require_valid(m);
    SpreadRedundancy out;
    for (std::size_t i = 0; i < m.option_count(); ++i) {
        if (!m.options[i].has_spread()) continue;
        auto verdict = check_nonredundant(m, i);
        out.allNonRedundant = out.allNonRedundant && verdict.nonRedundant;
        out.verdicts.emplace_back(i, std::move(verdict));
    }
    return out;
}

SharperFtapResult sharper_ftap(const MarketModel& m) {
    const auto redundancy = all_spread_options_nonredundant(m);
    if (!redundancy.allNonRedundant) {
        std::string names;
        for (const auto& [i, verdict] : redundancy.verdicts) {
            if (verdict.nonRedundant) continue;
            names += (names.empty() ? "" : ", ") + m.options[i].name;
        }
        throw PreconditionError("redundant spread options: " + names);
    }
    SharperFtapResult out;
    out.na = check_na(m);
    if (!out.na.holds) return out;
    auto nar = check_nar(m);
    if (!nar.holds) {
        throw SoundnessError("no-arbitrage holds with non-redundant spread options but robust "
                             "no-arbitrage fails: " + nar.blocking);
    }
    for (std::size_t g = 0; g < m.measures.generators.size(); ++g) {
        out.dominating.push_back(dominating_measure(m, g));
    }
    out.witness = std::move(nar.witness);
    return out;
}

}  // namespace ftap

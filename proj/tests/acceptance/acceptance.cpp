// Acceptance suite: one PASS/FAIL line per criterion, each against a wall
// clock limit. Exits non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "ftap/arbitrage.hpp"
#include "ftap/cli.hpp"
#include "ftap/errors.hpp"
#include "ftap/lp.hpp"
#include "ftap/oracle.hpp"
#include "ftap/redundancy.hpp"
#include "ftap/superhedge.hpp"
#include "random_lp.hpp"
#include "random_market.hpp"

using namespace ftap;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& what) {
        if (!condition && ok) {
            ok = false;
            detail = what;
        }
    }
};

struct Criterion {
    int number;
    double limitSeconds;
    std::function<Verdict()> body;
};

std::string fixture(const std::string& name) { return std::string(FTAP_FIXTURE_DIR) + "/" + name; }

int cli_exit(std::vector<std::string> args) {
    std::ostringstream out, err;
    return cli::run(args, out, err);
}

std::string str(std::size_t n) { return std::to_string(n); }

Verdict counterexample_m2() {
    Verdict v;
    const auto m = fixtures::m2();
    v.require(check_na(m).holds, "check_na(M2) should hold");
    v.require(!check_nar(m).holds, "check_nar(M2) should fail");
    v.require(cli_exit({"check-na", fixture("m2.json"), "--verify"}) == cli::kHolds, "check-na m2.json exit");
    v.require(cli_exit({"check-nar", fixture("m2.json"), "--verify"}) == cli::kFails, "check-nar m2.json exit");
    if (v.ok) v.detail = "NA holds, NA^r fails";
    return v;
}

Verdict counterexample_m3() {
    Verdict v;
    const auto m = fixtures::m3();
    v.require(check_nar(m).holds, "check_nar(M3) should hold");
    const auto r = check_nonredundant(m, 1);
    v.require(!r.nonRedundant && r.certificate, "option g2 should be redundant");
    if (r.certificate) v.require(replay_replication(m, 1, *r.certificate), "replication certificate replays");
    v.require(cli_exit({"check-nar", fixture("m3.json"), "--verify"}) == cli::kHolds, "check-nar m3.json exit");
    v.require(cli_exit({"redundancy", fixture("m3.json"), "--verify"}) == cli::kFails, "redundancy m3.json exit");
    if (v.ok) v.detail = "NA^r holds, g2 replicated by g1";
    return v;
}

Verdict strong_duality() {
    Verdict v;
    testing::Rng rng(1001);
    testing::MarketShape shape;  // 4 periods, 3 assets, 5 options, 24 leaves
    std::size_t checked = 0;
    while (checked < 500) {
        const auto m = testing::random_market(rng, shape);
        if (!check_nar(m).holds) {
            v.require(false, "generated market lacks NA^r");
            break;
        }
        const auto f = testing::random_claim(rng, m);
        const auto r = duality_report(m, f);
        v.require(*r.primalValue == *r.dualValue, "primal != dual on market " + str(checked));
        v.require(replay_superhedge(m, f, *r.primalValue, *r.strategy), "strategy fails to super-replicate");
        ++checked;
    }
    if (v.ok) v.detail = str(checked) + " markets, primal = dual exactly";
    return v;
}

Verdict oracle_equivalence() {
    Verdict v;
    testing::Rng rng(1002);
    testing::MarketShape shape;
    shape.maxLeaves = 8;
    shape.interiorQuotes = false;
    shape.driftProbability = 0.1;
    shape.fullSupportProbability = 0.8;
    std::size_t markets = 0, priced = 0, robust = 0;
    for (; priced < 200 && markets < 2000; ++markets) {
        const auto m = testing::random_market(rng, shape);
        const auto vs = oracle::enumerate_consistent_measures(m).vertices;
        const auto f = testing::random_claim(rng, m);
        if (vs.empty()) {
            bool refused = false;
            try {
                dual_price(m, f);
            } catch (const PreconditionError&) {
                refused = true;
            }
            v.require(refused, "dual_price found a measure the oracle did not");
        } else {
            Rational best = dot(vs.front(), f.payoff);
            for (const auto& q : vs) best = max(best, dot(q, f.payoff));
            v.require(dual_price(m, f).value == best, "dual_price != best vertex on market " + str(markets));
            ++priced;
        }
        const bool nar = check_nar(m).holds;
        v.require(nar == oracle::definitional_nar_scan(m, 20).holds, "check_nar != scan on market " + str(markets));
        robust += nar;
    }
    v.require(priced >= 200, "only " + str(priced) + " markets with a consistent measure");
    if (v.ok) {
        v.detail = str(markets) + " markets (" + str(priced) + " priced, " + str(robust) + " with NA^r)";
    }
    return v;
}

Verdict nonredundant_na_implies_nar() {
    Verdict v;
    testing::Rng rng(1003);
    testing::MarketShape shape;
    shape.interiorQuotes = false;
    shape.driftProbability = 0.2;
    shape.fullSupportProbability = 0.7;
    shape.maxLeaves = 16;
    shape.maxBranches = 4;
    std::size_t eligible = 0, with_na = 0, attempts = 0;
    while (eligible < 1000 && attempts < 20000) {
        ++attempts;
        const auto m = testing::random_market(rng, shape);
        if (!all_spread_options_nonredundant(m).allNonRedundant) continue;
        ++eligible;
        if (!check_na(m).holds) continue;
        ++with_na;
        v.require(check_nar(m).holds, "NA holds but NA^r fails on eligible market " + str(eligible));
    }
    v.require(eligible >= 1000, "only " + str(eligible) + " eligible markets generated");
    if (v.ok) v.detail = str(eligible) + " eligible markets, " + str(with_na) + " with NA, 0 counterexamples";
    return v;
}

Verdict dominating_measures() {
    Verdict v;
    const std::vector<std::pair<std::string, MarketModel>> markets = {
        {"M1", fixtures::m1()},
        {"M2", fixtures::m2()},
        {"M3", fixtures::m3()},
        {"M4", fixtures::m4()},
        {"single leaf", fixtures::single_leaf()},
        {"two period", fixtures::two_period()},
        {"M1 + spread call", fixtures::m1_with("call", {1, 0}, Rational(1, 4), Rational(1, 2))},
    };
    std::size_t fixtures_used = 0, generators = 0;
    for (const auto& [name, m] : markets) {
        if (!check_nar(m).holds) continue;
        ++fixtures_used;
        for (std::size_t g = 0; g < m.measures.generators.size(); ++g) {
            const auto q = dominating_measure(m, g);
            v.require(replay_measure(m, q, Consistency::StrictlyConsistent), name + ": measure not strictly consistent");
            const auto& p = m.measures.generators[g].weights;
            for (std::size_t leaf = 0; leaf < p.size(); ++leaf) {
                if (p[leaf].sign() > 0) v.require(q.weights[leaf].sign() > 0, name + ": generator not dominated");
            }
            ++generators;
        }
    }
    if (v.ok) v.detail = str(generators) + " generators across " + str(fixtures_used) + " NA^r fixtures";
    return v;
}

Verdict coherence() {
    Verdict v;
    testing::Rng rng(1007);
    testing::MarketShape shape;
    shape.maxLeaves = 16;
    auto price = [](const MarketModel& m, const Vector& f) { return *superhedge_price(m, Claim{f}).price; };
    std::size_t pairs = 0;
    for (; pairs < 220; ++pairs) {
        const auto m = testing::random_market(rng, shape);
        const auto f = testing::random_claim(rng, m).payoff;
        const auto g = testing::random_claim(rng, m).payoff;
        const Rational c = testing::small_rational(rng, -5, 5);
        const Rational lambda = testing::small_rational(rng, 0, 4);
        const Rational pf = price(m, f);
        Vector shifted = f, stretched = f, sum = f, negated = f;
        for (std::size_t k = 0; k < f.size(); ++k) {
            shifted[k] += c;
            stretched[k] *= lambda;
            sum[k] += g[k];
            negated[k] = -f[k];
        }
        v.require(price(m, shifted) == pf + c, "translation");
        v.require(price(m, stretched) == lambda * pf, "positive homogeneity");
        v.require(price(m, sum) <= pf + price(m, g), "subadditivity");
        v.require(-price(m, negated) <= pf, "-pi(-f) <= pi(f)");
    }
    if (v.ok) v.detail = str(pairs) + " (market, claim) pairs, all four properties exact";
    return v;
}

Verdict extension() {
    Verdict v;
    testing::Rng rng(1009);
    testing::MarketShape shape;
    shape.maxLeaves = 12;
    shape.maxAssets = 1;
    shape.maxBranches = 4;
    shape.maxOptions = 2;
    std::size_t inside = 0, outside = 0, attempts = 0;
    while (inside < 120 && attempts < 2000) {
        ++attempts;
        auto m = testing::random_market(rng, shape);
        m.options.push_back({"extra", testing::random_payoff(rng, m), 0, 0});
        const std::size_t i = m.options.size() - 1;
        const auto [lo, hi] = price_bounds_excluding(m, i);
        if (lo < hi) {
            m.options[i].bid = lo + (hi - lo) / 4;
            m.options[i].ask = hi - (hi - lo) / 3;
            v.require(check_nar(m).holds, "NA^r lost inside the bounds");
            ++inside;
        }
        const Rational gap = testing::small_rational(rng, 1, 2);
        m.options[i].bid = hi + gap;
        m.options[i].ask = hi + gap + 1;
        v.require(!check_na(m).holds, "no arbitrage above the upper bound");
        m.options[i].bid = lo - gap - 1;
        m.options[i].ask = lo - gap;
        v.require(!check_na(m).holds, "no arbitrage below the lower bound");
        ++outside;
    }
    v.require(inside >= 100, "only " + str(inside) + " extensions with room inside the bounds");
    if (v.ok) v.detail = str(inside) + " inside extensions keep NA^r, " + str(outside) + " outside pairs arbitraged";
    return v;
}

Verdict lp_soundness() {
    Verdict v;
    const auto before = lp::audit_counters();
    v.require(before.failures == 0, str(before.failures) + " certificates failed during criteria 1-8");
    testing::Rng rng(1013);
    std::size_t verified = 0;
    for (; verified < 1200; ++verified) {
        const auto p = testing::degenerate_lp(rng);
        v.require(lp::verify_certificate(p, lp::solve(p)), "fuzzed LP " + str(verified) + " failed to verify");
    }
    const auto after = lp::audit_counters();
    v.require(after.failures == 0, "audit recorded failures");
    if (v.ok) {
        v.detail = str(after.solves) + " audited solves, 0 failures; " + str(verified) + " fuzzed degenerate LPs";
    }
    return v;
}

}  // namespace

int main() {
    lp::set_audit(true);
    const std::vector<Criterion> criteria = {
        {1, 1, counterexample_m2},  {2, 1, counterexample_m3},   {3, 120, strong_duality},
        {4, 120, oracle_equivalence}, {5, 120, nonredundant_na_implies_nar}, {6, 10, dominating_measures},
        {7, 60, coherence},         {8, 60, extension},          {9, 120, lp_soundness},
    };
    bool all = true;
    for (const auto& c : criteria) {
        const auto start = Clock::now();
        Verdict v;
        try {
            v = c.body();
        } catch (const std::exception& e) {
            v.ok = false;
            v.detail = std::string("exception: ") + e.what();
        }
        const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
        if (v.ok && seconds > c.limitSeconds) {
            v.ok = false;
            v.detail = "over time limit: " + v.detail;
        }
        all = all && v.ok;
        std::printf("criterion %d: %s  %.3fs / %.0fs  %s\n", c.number, v.ok ? "PASS" : "FAIL", seconds,
                    c.limitSeconds, v.detail.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}

#pragma once

// Hand-built reference markets used across the unit and acceptance suites.
//
//  M1  binomial, S0 = 1, S1 in {2, 1/2}, priors point masses on each leaf
//  M2  no stock; g1 = g2 = (0, 1); g1 at 1/2 flat, g2 quoted [1/4, 1/2]
//  M3  no stock; g1 = g2 = (1, 2), both quoted [1/2, 3]
//  M4  trinomial, S0 = 1, S1 in {2, 1, 0}; |S1 - 1| = (1, 0, 1) at 1/2 flat;
//      one full-support prior

#include <string>
#include <vector>

#include "ftap/model.hpp"

namespace ftap::fixtures {

inline Rational q(long long n, long long d = 1) { return Rational(n, d); }

/// One-period tree with one asset: root price s0, leaf prices `up`.
inline ScenarioTree one_period(const Rational& s0, const Vector& leaves) {
    ScenarioTree t;
    t.periods = 1;
    t.assets = 1;
    t.nodes.push_back({0, 0, std::nullopt, {s0}});
    for (std::size_t k = 0; k < leaves.size(); ++k) {
        t.nodes.push_back({k + 1, 1, NodeId{0}, {leaves[k]}});
        t.leafOrder.push_back(k + 1);
    }
    return t;
}

inline MeasureFamily point_masses(std::size_t leaves) {
    MeasureFamily f;
    for (std::size_t k = 0; k < leaves; ++k) {
        Vector w(leaves);
        w[k] = 1;
        f.generators.push_back({"delta" + std::to_string(k + 1), w});
    }
    return f;
}

inline MarketModel m1() {
    MarketModel m;
    m.tree = one_period(1, {2, q(1, 2)});
    m.measures = point_masses(2);
    return m;
}

inline MarketModel m1_with(const std::string& name, Vector payoff, Rational bid, Rational ask) {
    MarketModel m = m1();
    m.options.push_back({name, std::move(payoff), std::move(bid), std::move(ask)});
    return m;
}

inline MarketModel m2() {
    MarketModel m;
    m.tree = one_period(0, {0, 0});
    m.options.push_back({"g1", {0, 1}, q(1, 2), q(1, 2)});
    m.options.push_back({"g2", {0, 1}, q(1, 4), q(1, 2)});
    m.measures = point_masses(2);
    return m;
}

inline MarketModel m3() {
    MarketModel m;
    m.tree = one_period(0, {0, 0});
    m.options.push_back({"g1", {1, 2}, q(1, 2), 3});
    m.options.push_back({"g2", {1, 2}, q(1, 2), 3});
    m.measures = point_masses(2);
    return m;
}

inline MarketModel m4() {
    MarketModel m;
    m.tree = one_period(1, {2, 1, 0});
    m.options.push_back({"straddle", {1, 0, 1}, q(1, 2), q(1, 2)});
    m.measures.generators.push_back({"uniform", {q(1, 3), q(1, 3), q(1, 3)}});
    return m;
}

inline MarketModel single_leaf() {
    MarketModel m;
    m.tree = one_period(5, {5});
    m.measures.generators.push_back({"sure", {1}});
    return m;
}

/// Two-period binomial tree with two generators, used where a multi-period
/// path matters. S: 4 -> {6, 3} -> {8, 5} / {4, 2}.
inline MarketModel two_period() {
    MarketModel m;
    auto& t = m.tree;
    t.periods = 2;
    t.assets = 1;
    t.nodes = {
        {0, 0, std::nullopt, {4}},
        {1, 1, NodeId{0}, {6}},
        {2, 1, NodeId{0}, {3}},
        {3, 2, NodeId{1}, {8}},
        {4, 2, NodeId{1}, {5}},
        {5, 2, NodeId{2}, {4}},
        {6, 2, NodeId{2}, {2}},
    };
    t.leafOrder = {3, 4, 5, 6};
    m.measures.generators.push_back({"left", {q(1, 2), q(1, 2), 0, 0}});
    m.measures.generators.push_back({"right", {0, 0, q(1, 2), q(1, 2)}});
    return m;
}

}  // namespace ftap::fixtures

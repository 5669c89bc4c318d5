#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ftap/rational.hpp"

namespace ftap {

using NodeId = std::size_t;
using LeafIndex = std::size_t;

struct Node {
    NodeId id = 0;
    int time = 0;
    std::optional<NodeId> parent;
    Vector prices;  // one entry per asset

    friend bool operator==(const Node&, const Node&) = default;
};

/// Finite event tree. Leaves are the nodes at time `periods`; `leafOrder`
/// fixes the index every leaf-indexed vector in the model uses.
struct ScenarioTree {
    std::vector<Node> nodes;
    int periods = 1;
    std::size_t assets = 1;
    std::vector<NodeId> leafOrder;

    std::size_t leaf_count() const { return leafOrder.size(); }

    friend bool operator==(const ScenarioTree&, const ScenarioTree&) = default;
};

struct OptionQuote {
    std::string name;
    Vector payoff;  // per leaf
    Rational bid;
    Rational ask;

    bool has_spread() const { return bid < ask; }

    friend bool operator==(const OptionQuote&, const OptionQuote&) = default;
};

struct Generator {
    std::string name;
    Vector weights;  // probability vector on leaves

    friend bool operator==(const Generator&, const Generator&) = default;
};

/// The family of priors is the convex hull of the generators.
struct MeasureFamily {
    std::vector<Generator> generators;

    friend bool operator==(const MeasureFamily&, const MeasureFamily&) = default;
};

struct MarketModel {
    ScenarioTree tree;
    std::vector<OptionQuote> options;
    MeasureFamily measures;

    std::size_t leaf_count() const { return tree.leaf_count(); }
    std::size_t option_count() const { return options.size(); }
    std::size_t asset_count() const { return tree.assets; }

    friend bool operator==(const MarketModel&, const MarketModel&) = default;
};

struct Claim {
    Vector payoff;  // per leaf

    friend bool operator==(const Claim&, const Claim&) = default;
};

/// Semi-static strategy. `dynamic[node]` is the asset position carried from
/// a non-leaf node to its children and is empty on leaves. Static option
/// positions are split into nonnegative legs: bought at ask, sold at bid.
struct Strategy {
    std::vector<Vector> dynamic;
    Vector buy;
    Vector sell;

    static Strategy zero(const MarketModel& m);

    /// buy - sell
    Vector net() const;
    /// Same net exposure with min(buy, sell) = 0 per option.
    Strategy canonical() const;

    friend bool operator==(const Strategy&, const Strategy&) = default;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate_market(const MarketModel& m);

/// Throws StructuralError listing every violation.
void require_valid(const MarketModel& m);

/// Leaves charged by at least one generator, ascending. Its complement is
/// the largest polar set.
std::vector<LeafIndex> support(const MarketModel& m);

/// Per-leaf terminal wealth of a zero-cost semi-static strategy.
Vector terminal_gain(const MarketModel& m, const Strategy& s);

/// Derived navigation data for a validated tree.
struct TreeLayout {
    std::vector<std::vector<NodeId>> children;
    std::vector<NodeId> internal;                // non-leaf nodes, ascending id
    std::vector<std::optional<LeafIndex>> leafOf;  // node -> leaf index
    std::vector<std::vector<NodeId>> paths;      // leaf -> root..leaf
    NodeId root = 0;

    bool is_leaf(NodeId n) const { return leafOf[n].has_value(); }
};

TreeLayout layout(const ScenarioTree& tree);

}  // namespace ftap

#include "ftap/model.hpp"

#include <algorithm>
#include <sstream>

#include "ftap/errors.hpp"

namespace ftap {

Strategy Strategy::zero(const MarketModel& m) {
    Strategy s;
    s.dynamic.resize(m.tree.nodes.size());
    for (const auto& node : m.tree.nodes) {
        if (node.time < m.tree.periods) s.dynamic[node.id] = Vector(m.asset_count());
    }
    s.buy = Vector(m.option_count());
    s.sell = Vector(m.option_count());
    return s;
}

Vector Strategy::net() const {
    Vector out(buy.size());
    for (std::size_t i = 0; i < buy.size(); ++i) out[i] = buy[i] - sell[i];
    return out;
}

Strategy Strategy::canonical() const {
    Strategy s = *this;
    for (std::size_t i = 0; i < buy.size(); ++i) {
        const Rational overlap = min(buy[i], sell[i]);
        s.buy[i] -= overlap;
        s.sell[i] -= overlap;
    }
    return s;
}

namespace {

std::string describe(const std::string& where, const std::string& what) {
    return where + ": " + what;
}

}  // namespace

ValidationReport validate_market(const MarketModel& m) {
    ValidationReport report;
    auto fail = [&](std::string msg) { report.violations.push_back(std::move(msg)); };
    const auto& tree = m.tree;

    if (tree.periods < 1) fail("tree: number of periods must be at least 1");
    if (tree.assets < 1) fail("tree: number of assets must be at least 1");
    if (tree.nodes.empty()) {
        fail("tree: no nodes");
        return report;
    }

    const std::size_t n = tree.nodes.size();
    std::size_t roots = 0;
    std::vector<std::size_t> child_count(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        const Node& node = tree.nodes[k];
        const std::string where = "node " + std::to_string(k);
        if (node.id != k) {
            fail(describe(where, "node ids must be dense 0..n-1 in order (found id " +
                                     std::to_string(node.id) + ")"));
        }
        if (node.prices.size() != tree.assets) {
            fail(describe(where, "expected " + std::to_string(tree.assets) + " prices, found " +
                                     std::to_string(node.prices.size())));
        }
        if (node.time < 0 || node.time > tree.periods) {
            fail(describe(where, "time " + std::to_string(node.time) + " outside [0, " +
                                     std::to_string(tree.periods) + "]"));
            continue;
        }
        if (!node.parent) {
            ++roots;
            if (node.time != 0) {
                fail(describe(where, "has no parent but time is not 0"));
            }
            continue;
        }
        if (*node.parent >= n) {
            fail(describe(where, "parent " + std::to_string(*node.parent) + " does not exist"));
            continue;
        }
        const Node& parent = tree.nodes[*node.parent];
        if (parent.time != node.time - 1) {
            fail(describe(where, "parent must sit at time " + std::to_string(node.time - 1)));
        }
        ++child_count[*node.parent];
    }
    if (roots != 1) {
        fail("tree: expected exactly one root, found " + std::to_string(roots));
    }
    std::vector<NodeId> terminal;
    for (std::size_t k = 0; k < n; ++k) {
        const Node& node = tree.nodes[k];
        if (node.time == tree.periods) {
            terminal.push_back(k);
        } else if (node.time >= 0 && node.time < tree.periods && child_count[k] == 0) {
            fail(describe("node " + std::to_string(k), "non-terminal node has no children"));
        }
    }

    std::vector<NodeId> order = tree.leafOrder;
    std::sort(order.begin(), order.end());
    if (order != terminal) {
        fail("leafOrder: must list every node at time T exactly once");
    }

    const std::size_t leaves = tree.leafOrder.size();
    for (std::size_t i = 0; i < m.options.size(); ++i) {
        const auto& opt = m.options[i];
        const std::string where = "option " + std::to_string(i) + " (" + opt.name + ")";
        if (opt.payoff.size() != leaves) {
            fail(describe(where, "payoff has " + std::to_string(opt.payoff.size()) +
                                     " entries, expected " + std::to_string(leaves)));
        }
        if (opt.bid > opt.ask) {
            fail(describe(where, "bid exceeds ask (" + opt.bid.str() + " > " + opt.ask.str() + ")"));
        }
    }

    if (m.measures.generators.empty()) fail("measures: at least one generator is required");
    for (std::size_t g = 0; g < m.measures.generators.size(); ++g) {
        const auto& gen = m.measures.generators[g];
        const std::string where = "generator " + std::to_string(g) + " (" + gen.name + ")";
        if (gen.weights.size() != leaves) {
            fail(describe(where, "has " + std::to_string(gen.weights.size()) +
                                     " weights, expected " + std::to_string(leaves)));
        }
        bool negative = false;
        for (const auto& w : gen.weights) negative = negative || w.sign() < 0;
        if (negative) fail(describe(where, "negative weight"));
        const Rational total = sum(gen.weights);
        if (total != Rational(1)) {
            fail(describe(where, "measure sums to " + total.str() + " != 1"));
        }
    }
    return report;
}

void require_valid(const MarketModel& m) {
    auto report = validate_market(m);
    if (report.ok()) return;
    std::ostringstream os;
    os << "invalid market:";
    for (const auto& v : report.violations) os << "\n  " << v;
    throw StructuralError(os.str(), std::move(report.violations));
}

std::vector<LeafIndex> support(const MarketModel& m) {
    std::vector<LeafIndex> out;
    for (LeafIndex leaf = 0; leaf < m.leaf_count(); ++leaf) {
        for (const auto& gen : m.measures.generators) {
            if (leaf < gen.weights.size() && gen.weights[leaf].sign() > 0) {
                out.push_back(leaf);
                break;
            }
        }
    }
    return out;
}

TreeLayout layout(const ScenarioTree& tree) {
    TreeLayout out;
    const std::size_t n = tree.nodes.size();
    out.children.resize(n);
    out.leafOf.resize(n);
    for (const auto& node : tree.nodes) {
        if (node.parent) {
            out.children[*node.parent].push_back(node.id);
        } else {
            out.root = node.id;
        }
        if (node.time < tree.periods) out.internal.push_back(node.id);
    }
    out.paths.resize(tree.leafOrder.size());
    for (LeafIndex leaf = 0; leaf < tree.leafOrder.size(); ++leaf) {
        NodeId at = tree.leafOrder[leaf];
        out.leafOf[at] = leaf;
        auto& path = out.paths[leaf];
        path.push_back(at);
        while (tree.nodes[at].parent) {
            at = *tree.nodes[at].parent;
            path.push_back(at);
        }
        std::reverse(path.begin(), path.end());
    }
    return out;
}

Vector terminal_gain(const MarketModel& m, const Strategy& s) {
    const auto& tree = m.tree;
    if (s.dynamic.size() != tree.nodes.size() || s.buy.size() != m.option_count() ||
        s.sell.size() != m.option_count()) {
        throw StructuralError("strategy dimensions do not match market");
    }
    const TreeLayout lay = layout(tree);
    for (NodeId node : lay.internal) {
        if (s.dynamic[node].size() != tree.assets) {
            throw StructuralError("strategy: node " + std::to_string(node) + " needs " +
                                  std::to_string(tree.assets) + " positions");
        }
    }
    Vector gain(m.leaf_count());
    for (LeafIndex leaf = 0; leaf < m.leaf_count(); ++leaf) {
        mpq_class acc;
        const auto& path = lay.paths[leaf];
        for (std::size_t step = 0; step + 1 < path.size(); ++step) {
            const Node& from = tree.nodes[path[step]];
            const Node& to = tree.nodes[path[step + 1]];
            for (std::size_t j = 0; j < tree.assets; ++j) {
                acc += s.dynamic[from.id][j].raw() * (to.prices[j].raw() - from.prices[j].raw());
            }
        }
        for (std::size_t i = 0; i < m.option_count(); ++i) {
            const auto& opt = m.options[i];
            acc += s.buy[i].raw() * (opt.payoff[leaf].raw() - opt.ask.raw());
            acc -= s.sell[i].raw() * (opt.payoff[leaf].raw() - opt.bid.raw());
        }
        gain[leaf] = Rational(std::move(acc));
    }
    return gain;
}

}  // namespace ftap

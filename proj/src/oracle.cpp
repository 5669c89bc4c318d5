#include "ftap/oracle.hpp"

#include <algorithm>
#include <set>

#include "ftap/arbitrage.hpp"

namespace ftap::oracle {

namespace {

// Row a.x (=, >=) rhs over all leaves.
struct Constraint {
    std::vector<mpq_class> a;
    mpq_class rhs;
};

// Unique solution of the square-or-taller system, if the rows have full
// column rank and are consistent.
std::optional<std::vector<mpq_class>> solve_unique(std::vector<Constraint> rows, std::size_t n) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && sgn(rows[pivot].a[col]) == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[pivot], rows[rank]);
        const mpq_class p = rows[rank].a[col];
        for (auto& v : rows[rank].a) v /= p;
        rows[rank].rhs /= p;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || sgn(rows[r].a[col]) == 0) continue;
            const mpq_class f = rows[r].a[col];
            for (std::size_t c = 0; c < n; ++c) rows[r].a[c] -= f * rows[rank].a[c];
            rows[r].rhs -= f * rows[rank].rhs;
        }
        ++rank;
    }
    if (rank < n) return std::nullopt;
    for (std::size_t r = rank; r < rows.size(); ++r) {
        if (sgn(rows[r].rhs) != 0) return std::nullopt;
    }
    std::vector<mpq_class> x(n);
    for (std::size_t r = 0; r < n; ++r) x[r] = rows[r].rhs;  // RREF with full rank is the identity
    return x;
}

std::size_t rank_of(std::vector<Constraint> rows, std::size_t n) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && sgn(rows[pivot].a[col]) == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[pivot], rows[rank]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (sgn(rows[r].a[col]) == 0) continue;
            const mpq_class f = rows[r].a[col] / rows[rank].a[col];
            for (std::size_t c = 0; c < n; ++c) rows[r].a[c] -= f * rows[rank].a[c];
        }
        ++rank;
    }
    return rank;
}

mpq_class evaluate(const Constraint& c, const std::vector<mpq_class>& x) {
    mpq_class acc;
    for (std::size_t j = 0; j < x.size(); ++j) acc += c.a[j] * x[j];
    return acc;
}

}  // namespace

VertexSet enumerate_consistent_measures(const MarketModel& m) {
    require_valid(m);
    const std::size_t n = m.leaf_count();
    if (n > kMaxLeaves) {
        throw OracleRefusal("vertex enumeration refused: " + std::to_string(n) + " leaves exceeds " +
                            std::to_string(kMaxLeaves));
    }
    std::vector<bool> charged(n, false);
    for (auto leaf : support(m)) charged[leaf] = true;

    std::vector<Constraint> equalities;
    std::vector<Constraint> inequalities;  // a.x >= rhs
    auto blank = [&] { return Constraint{std::vector<mpq_class>(n), 0}; };

    Constraint mass = blank();
    for (auto& v : mass.a) v = 1;
    mass.rhs = 1;
    equalities.push_back(mass);

    // Martingale identities, read straight off the parent pointers.
    const auto& nodes = m.tree.nodes;
    for (const auto& node : nodes) {
        if (node.time == m.tree.periods) continue;
        for (std::size_t j = 0; j < m.asset_count(); ++j) {
            Constraint row = blank();
            for (std::size_t leaf = 0; leaf < n; ++leaf) {
                NodeId at = m.tree.leafOrder[leaf];
                while (nodes[at].time > node.time + 1) at = *nodes[at].parent;
                if (nodes[at].parent != node.id) continue;
                row.a[leaf] = nodes[at].prices[j].raw() - node.prices[j].raw();
            }
            equalities.push_back(std::move(row));
        }
    }
    for (std::size_t leaf = 0; leaf < n; ++leaf) {
        Constraint row = blank();
        row.a[leaf] = 1;
        (charged[leaf] ? inequalities : equalities).push_back(std::move(row));
    }
    for (const auto& opt : m.options) {
        Constraint row = blank();
        for (std::size_t leaf = 0; leaf < n; ++leaf) row.a[leaf] = opt.payoff[leaf].raw();
        row.rhs = opt.bid.raw();
        if (!opt.has_spread()) {
            equalities.push_back(std::move(row));
            continue;
        }
        Constraint upper = blank();
        for (std::size_t leaf = 0; leaf < n; ++leaf) upper.a[leaf] = -row.a[leaf];
        upper.rhs = -opt.ask.raw();
        inequalities.push_back(std::move(row));
        inequalities.push_back(std::move(upper));
    }

    const std::size_t eq_rank = rank_of(equalities, n);
    std::set<Vector> found;
    const std::size_t pick = n - std::min(n, eq_rank);
    if (pick <= inequalities.size()) {
        // Walk every pick-subset of the inequalities in lexicographic order.
        std::vector<std::size_t> chosen(pick);
        for (std::size_t k = 0; k < pick; ++k) chosen[k] = k;
        for (;;) {
            auto system = equalities;
            for (auto idx : chosen) system.push_back(inequalities[idx]);
            if (auto x = solve_unique(std::move(system), n)) {
                bool feasible = true;
                for (const auto& c : equalities) feasible = feasible && evaluate(c, *x) == c.rhs;
                for (const auto& c : inequalities) feasible = feasible && evaluate(c, *x) >= c.rhs;
                if (feasible) {
                    Vector v;
                    for (auto& xi : *x) v.emplace_back(xi);
                    found.insert(std::move(v));
                }
            }
            std::size_t k = pick;
            while (k > 0 && chosen[k - 1] == inequalities.size() - pick + k - 1) --k;
            if (k == 0) break;
            ++chosen[k - 1];
            for (std::size_t r = k; r < pick; ++r) chosen[r] = chosen[r - 1] + 1;
        }
    }
    return {std::vector<Vector>(found.begin(), found.end())};
}

ScanResult definitional_nar_scan(const MarketModel& m, unsigned depth) {
    require_valid(m);
    for (unsigned k = 1; k <= depth; ++k) {
        MarketModel shrunk = m;
        const Rational scale = dyadic(k + 1);
        for (auto& opt : shrunk.options) {
            if (!opt.has_spread()) continue;
            const Rational eps = (opt.ask - opt.bid) * scale;
            opt.bid += eps;
            opt.ask -= eps;
        }
        if (check_na(shrunk).holds) return {true, k};
    }
    return {false, depth};
}

}  // namespace ftap::oracle

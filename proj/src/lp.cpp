#include "ftap/lp.hpp"

#include <atomic>
#include <string>

#include "ftap/errors.hpp"

namespace ftap::lp {

namespace {

std::atomic<bool> g_audit{false};
std::atomic<std::uint64_t> g_solves{0};
std::atomic<std::uint64_t> g_failures{0};

// How an original variable is expressed through nonnegative columns.
struct Column {
    enum class Kind { Shifted, Mirrored, Split } kind;
    std::size_t col = 0;
    std::size_t col2 = 0;  // Split only
    mpq_class offset;      // x = offset + col (Shifted), offset - col (Mirrored)
};

// Standard form  min c.x  s.t.  A x = b, x >= 0, b >= 0, with an identity
// of artificial columns appended to the tableau.
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t structural)
        : rows_(rows), structural_(structural), width_(structural + rows + 1),
          cells_(rows, std::vector<mpq_class>(width_)), cost_(width_), basis_(rows) {
        for (std::size_t i = 0; i < rows; ++i) {
            cells_[i][structural + i] = 1;
            basis_[i] = structural + i;
        }
    }

    mpq_class& at(std::size_t i, std::size_t j) { return cells_[i][j]; }
    mpq_class& rhs(std::size_t i) { return cells_[i][width_ - 1]; }
    std::size_t artificial(std::size_t i) const { return structural_ + i; }
    bool is_artificial(std::size_t col) const { return col >= structural_ && col < width_ - 1; }
    std::size_t basic(std::size_t i) const { return basis_[i]; }
    const mpq_class& reduced(std::size_t j) const { return cost_[j]; }
    // Current objective value.
    mpq_class value() const { return -cost_[width_ - 1]; }

    void set_phase_one() {
        for (auto& c : cost_) c = 0;
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < structural_; ++j) cost_[j] -= cells_[i][j];
            cost_[width_ - 1] -= cells_[i][width_ - 1];
        }
    }

    void set_costs(const std::vector<mpq_class>& c) {
        for (std::size_t j = 0; j < width_; ++j) cost_[j] = j < structural_ ? c[j] : mpq_class(0);
        for (std::size_t i = 0; i < rows_; ++i) {
            const std::size_t b = basis_[i];
            if (b >= structural_ || sgn(c[b]) == 0) continue;
            const mpq_class f = c[b];
            for (std::size_t j = 0; j < width_; ++j) {
                if (sgn(cells_[i][j]) != 0) cost_[j] -= f * cells_[i][j];
            }
        }
    }

    void pivot(std::size_t r, std::size_t q) {
        auto& prow = cells_[r];
        const mpq_class p = prow[q];
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j < width_; ++j) {
            if (sgn(prow[j]) != 0) {
                prow[j] /= p;
                nz.push_back(j);
            }
        }
        auto eliminate = [&](std::vector<mpq_class>& row) {
            if (sgn(row[q]) == 0) return;
            const mpq_class f = row[q];
            for (std::size_t j : nz) row[j] -= f * prow[j];
        };
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i != r) eliminate(cells_[i]);
        }
        eliminate(cost_);
        basis_[r] = q;
    }

    enum class Exit { Optimal, Unbounded };

    // Bland's rule over structural columns. On Unbounded, `entering` is the
    // column with no positive entry.
    Exit run(std::size_t& entering) {
        for (;;) {
            std::size_t q = structural_;
            for (std::size_t j = 0; j < structural_; ++j) {
                if (sgn(cost_[j]) < 0) {
                    q = j;
                    break;
                }
            }
            if (q == structural_) return Exit::Optimal;
            std::size_t r = rows_;
            mpq_class best;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (sgn(cells_[i][q]) <= 0) continue;
                mpq_class ratio = cells_[i][width_ - 1] / cells_[i][q];
                if (r == rows_ || ratio < best || (ratio == best && basis_[i] < basis_[r])) {
                    r = i;
                    best = std::move(ratio);
                }
            }
            if (r == rows_) {
                entering = q;
                return Exit::Unbounded;
            }
            pivot(r, q);
        }
    }

    // Pivot basic artificials out wherever a structural column allows it.
    void expel_artificials() {
        for (std::size_t i = 0; i < rows_; ++i) {
            if (!is_artificial(basis_[i])) continue;
            for (std::size_t j = 0; j < structural_; ++j) {
                if (sgn(cells_[i][j]) != 0) {
                    pivot(i, j);
                    break;
                }
            }
        }
    }

    std::vector<mpq_class> point() const {
        std::vector<mpq_class> x(structural_);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (basis_[i] < structural_) x[basis_[i]] = cells_[i][width_ - 1];
        }
        return x;
    }

    std::vector<mpq_class> direction(std::size_t q) const {
        std::vector<mpq_class> d(structural_);
        d[q] = 1;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (basis_[i] < structural_) d[basis_[i]] = -cells_[i][q];
        }
        return d;
    }

private:
    std::size_t rows_;
    std::size_t structural_;
    std::size_t width_;
    std::vector<std::vector<mpq_class>> cells_;
    std::vector<mpq_class> cost_;
    std::vector<std::size_t> basis_;
};

Outcome solve_unchecked(const Problem& p) {
    const std::size_t n = p.variables();
    const std::size_t m = p.rows();
    const bool maximize = p.sense == Sense::Maximize;

    std::vector<Column> columns(n);
    std::vector<std::size_t> capped;  // variables needing an upper-bound row
    std::size_t cols = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const auto& b = p.bounds[j];
        if (b.lower) {
            columns[j] = {Column::Kind::Shifted, cols++, 0, b.lower->raw()};
            if (b.upper) capped.push_back(j);
        } else if (b.upper) {
            columns[j] = {Column::Kind::Mirrored, cols++, 0, b.upper->raw()};
        } else {
            columns[j] = {Column::Kind::Split, cols, cols + 1, 0};
            cols += 2;
        }
    }
    const std::size_t rows = m + capped.size();
    std::vector<Relation> rel(rows, Relation::LessEqual);
    for (std::size_t i = 0; i < m; ++i) rel[i] = p.relations[i];
    std::size_t slacks = 0;
    for (auto r : rel) slacks += r == Relation::Equal ? 0 : 1;
    const std::size_t structural = cols + slacks;

    std::vector<std::vector<mpq_class>> a(rows, std::vector<mpq_class>(structural));
    std::vector<mpq_class> b(rows);
    std::vector<mpq_class> cost(structural);
    mpq_class constant;

    for (std::size_t i = 0; i < m; ++i) {
        b[i] = p.rhs[i].raw();
        for (std::size_t j = 0; j < n; ++j) {
            const mpq_class& coef = p.matrix[i][j].raw();
            if (sgn(coef) == 0) continue;
            const Column& c = columns[j];
            switch (c.kind) {
                case Column::Kind::Shifted:
                    a[i][c.col] += coef;
                    b[i] -= coef * c.offset;
                    break;
                case Column::Kind::Mirrored:
                    a[i][c.col] -= coef;
                    b[i] -= coef * c.offset;
                    break;
                case Column::Kind::Split:
                    a[i][c.col] += coef;
                    a[i][c.col2] -= coef;
                    break;
            }
        }
    }
    for (std::size_t k = 0; k < capped.size(); ++k) {
        const std::size_t j = capped[k];
        a[m + k][columns[j].col] = 1;
        b[m + k] = p.bounds[j].upper->raw() - p.bounds[j].lower->raw();
    }
    for (std::size_t j = 0; j < n; ++j) {
        const mpq_class c = maximize ? mpq_class(-p.objective[j].raw()) : p.objective[j].raw();
        const Column& col = columns[j];
        switch (col.kind) {
            case Column::Kind::Shifted:
                cost[col.col] += c;
                constant += c * col.offset;
                break;
            case Column::Kind::Mirrored:
                cost[col.col] -= c;
                constant += c * col.offset;
                break;
            case Column::Kind::Split:
                cost[col.col] += c;
                cost[col.col2] -= c;
                break;
        }
    }
    {
        std::size_t s = cols;
        for (std::size_t i = 0; i < rows; ++i) {
            if (rel[i] == Relation::LessEqual) a[i][s++] = 1;
            if (rel[i] == Relation::GreaterEqual) a[i][s++] = -1;
        }
    }
    std::vector<int> flip(rows, 1);
    for (std::size_t i = 0; i < rows; ++i) {
        if (sgn(b[i]) < 0) {
            flip[i] = -1;
            b[i] = -b[i];
            for (auto& v : a[i]) v = -v;
        }
    }

    Tableau tab(rows, structural);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < structural; ++j) tab.at(i, j) = a[i][j];
        tab.rhs(i) = b[i];
    }

    auto to_original = [&](const std::vector<mpq_class>& x, bool homogeneous) {
        Vector out(n);
        for (std::size_t j = 0; j < n; ++j) {
            const Column& c = columns[j];
            const mpq_class base = homogeneous ? mpq_class(0) : c.offset;
            switch (c.kind) {
                case Column::Kind::Shifted: out[j] = Rational(mpq_class(base + x[c.col])); break;
                case Column::Kind::Mirrored: out[j] = Rational(mpq_class(base - x[c.col])); break;
                case Column::Kind::Split: out[j] = Rational(mpq_class(x[c.col] - x[c.col2])); break;
            }
        }
        return out;
    };

    Outcome out;
    std::size_t entering = 0;
    tab.set_phase_one();
    tab.run(entering);  // phase one is bounded below by zero
    if (sgn(tab.value()) > 0) {
        out.status = Status::Infeasible;
        out.farkas.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            mpq_class y = 1 - tab.reduced(tab.artificial(i));
            if (flip[i] < 0) y = -y;
            out.farkas[i] = Rational(std::move(y));
        }
        return out;
    }
    tab.expel_artificials();
    tab.set_costs(cost);
    if (tab.run(entering) == Tableau::Exit::Unbounded) {
        out.status = Status::Unbounded;
        out.primal = to_original(tab.point(), false);
        out.ray = to_original(tab.direction(entering), true);
        return out;
    }
    out.status = Status::Optimal;
    out.primal = to_original(tab.point(), false);
    out.dual.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        mpq_class y = -tab.reduced(tab.artificial(i));
        if (flip[i] < 0) y = -y;
        if (maximize) y = -y;
        out.dual[i] = Rational(std::move(y));
    }
    mpq_class value = tab.value() + constant;
    out.objectiveValue = Rational(maximize ? mpq_class(-value) : value);
    return out;
}

bool satisfies(const mpq_class& lhs, Relation rel, const mpq_class& rhs) {
    switch (rel) {
        case Relation::LessEqual: return lhs <= rhs;
        case Relation::Equal: return lhs == rhs;
        case Relation::GreaterEqual: return lhs >= rhs;
    }
    return false;
}

mpq_class row_dot(const Vector& row, const Vector& x) {
    mpq_class acc;
    for (std::size_t j = 0; j < row.size(); ++j) acc += row[j].raw() * x[j].raw();
    return acc;
}

bool primal_feasible(const Problem& p, const Vector& x) {
    if (x.size() != p.variables()) return false;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (p.bounds[j].lower && x[j] < *p.bounds[j].lower) return false;
        if (p.bounds[j].upper && x[j] > *p.bounds[j].upper) return false;
    }
    for (std::size_t i = 0; i < p.rows(); ++i) {
        if (!satisfies(row_dot(p.matrix[i], x), p.relations[i], p.rhs[i].raw())) return false;
    }
    return true;
}

// Row multipliers y with y >= 0 on >= rows and y <= 0 on <= rows.
bool multiplier_signs_ok(const Problem& p, const Vector& y) {
    for (std::size_t i = 0; i < p.rows(); ++i) {
        if (p.relations[i] == Relation::GreaterEqual && y[i].sign() < 0) return false;
        if (p.relations[i] == Relation::LessEqual && y[i].sign() > 0) return false;
    }
    return true;
}

std::vector<mpq_class> transpose_times(const Problem& p, const Vector& y) {
    std::vector<mpq_class> out(p.variables());
    for (std::size_t i = 0; i < p.rows(); ++i) {
        if (y[i].is_zero()) continue;
        for (std::size_t j = 0; j < p.variables(); ++j) out[j] += p.matrix[i][j].raw() * y[i].raw();
    }
    return out;
}

bool verify_optimal(const Problem& p, const Outcome& o) {
    if (!primal_feasible(p, o.primal) || o.dual.size() != p.rows()) return false;
    const bool maximize = p.sense == Sense::Maximize;
    // Work in minimization form: c' = s*c, y' = s*y.
    const int s = maximize ? -1 : 1;
    Vector y(o.dual.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = maximize ? -o.dual[i] : o.dual[i];
    if (!multiplier_signs_ok(p, y)) return false;
    const auto aty = transpose_times(p, y);
    mpq_class dual_value;
    for (std::size_t i = 0; i < p.rows(); ++i) dual_value += p.rhs[i].raw() * y[i].raw();
    mpq_class primal_value;
    for (std::size_t j = 0; j < p.variables(); ++j) {
        const mpq_class c = s * p.objective[j].raw();
        primal_value += c * o.primal[j].raw();
        const mpq_class d = c - aty[j];
        const auto& bound = p.bounds[j];
        if (sgn(d) > 0) {
            if (!bound.lower || o.primal[j] != *bound.lower) return false;
            dual_value += d * bound.lower->raw();
        } else if (sgn(d) < 0) {
            if (!bound.upper || o.primal[j] != *bound.upper) return false;
            dual_value += d * bound.upper->raw();
        }
    }
    for (std::size_t i = 0; i < p.rows(); ++i) {
        if (!y[i].is_zero() && row_dot(p.matrix[i], o.primal) != p.rhs[i].raw()) return false;
    }
    if (primal_value != dual_value) return false;
    return o.objectiveValue.raw() == s * primal_value;
}

bool verify_infeasible(const Problem& p, const Outcome& o) {
    if (o.farkas.size() != p.rows() || !multiplier_signs_ok(p, o.farkas)) return false;
    const auto a = transpose_times(p, o.farkas);
    mpq_class sup;
    for (std::size_t j = 0; j < p.variables(); ++j) {
        if (sgn(a[j]) > 0) {
            if (!p.bounds[j].upper) return false;
            sup += a[j] * p.bounds[j].upper->raw();
        } else if (sgn(a[j]) < 0) {
            if (!p.bounds[j].lower) return false;
            sup += a[j] * p.bounds[j].lower->raw();
        }
    }
    mpq_class by;
    for (std::size_t i = 0; i < p.rows(); ++i) by += p.rhs[i].raw() * o.farkas[i].raw();
    return sup < by;
}

bool verify_unbounded(const Problem& p, const Outcome& o) {
    if (!primal_feasible(p, o.primal) || o.ray.size() != p.variables()) return false;
    for (std::size_t j = 0; j < p.variables(); ++j) {
        if (o.ray[j].sign() > 0 && p.bounds[j].upper) return false;
        if (o.ray[j].sign() < 0 && p.bounds[j].lower) return false;
    }
    for (std::size_t i = 0; i < p.rows(); ++i) {
        if (!satisfies(row_dot(p.matrix[i], o.ray), p.relations[i], 0)) return false;
    }
    const mpq_class slope = row_dot(p.objective, o.ray);
    return p.sense == Sense::Minimize ? sgn(slope) < 0 : sgn(slope) > 0;
}

}  // namespace

std::size_t ProblemBuilder::add_variable(Rational cost, Bound bound) {
    problem_.objective.push_back(std::move(cost));
    problem_.bounds.push_back(std::move(bound));
    return problem_.objective.size() - 1;
}

void ProblemBuilder::add_row(Terms terms, Relation rel, Rational rhs) {
    rows_.push_back(std::move(terms));
    problem_.relations.push_back(rel);
    problem_.rhs.push_back(std::move(rhs));
}

Problem ProblemBuilder::build() const {
    Problem p = problem_;
    const std::size_t n = p.objective.size();
    p.matrix.assign(rows_.size(), Vector(n));
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        for (const auto& [j, coef] : rows_[i]) {
            if (j >= n) throw StructuralError("row " + std::to_string(i) + " references unknown variable");
            p.matrix[i][j] += coef;
        }
    }
    return p;
}

void validate(const Problem& p) {
    const std::size_t n = p.variables();
    if (p.bounds.size() != n) throw StructuralError("lp: bounds length differs from objective length");
    if (p.matrix.size() != p.rows() || p.relations.size() != p.rows()) {
        throw StructuralError("lp: matrix, rhs and relations disagree on the row count");
    }
    for (std::size_t i = 0; i < p.matrix.size(); ++i) {
        if (p.matrix[i].size() != n) throw StructuralError("lp: row " + std::to_string(i) + " has wrong length");
    }
    for (std::size_t j = 0; j < n; ++j) {
        const auto& b = p.bounds[j];
        if (b.lower && b.upper && *b.lower > *b.upper) {
            throw StructuralError("lp: variable " + std::to_string(j) + " has lower bound above upper bound");
        }
    }
}

Outcome solve(const Problem& p) {
    validate(p);
    Outcome out = solve_unchecked(p);
    if (g_audit.load(std::memory_order_relaxed)) {
        g_solves.fetch_add(1, std::memory_order_relaxed);
        if (!verify_certificate(p, out)) g_failures.fetch_add(1, std::memory_order_relaxed);
    }
    return out;
}

bool verify_certificate(const Problem& p, const Outcome& o) {
    try {
        validate(p);
    } catch (const StructuralError&) {
        return false;
    }
    switch (o.status) {
        case Status::Optimal: return verify_optimal(p, o);
        case Status::Infeasible: return verify_infeasible(p, o);
        case Status::Unbounded: return verify_unbounded(p, o);
    }
    return false;
}

void set_audit(bool enabled) { g_audit.store(enabled); }

AuditCounters audit_counters() { return {g_solves.load(), g_failures.load()}; }

}  // namespace ftap::lp

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ftap/rational.hpp"

namespace ftap::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Sense { Minimize, Maximize };
enum class Status { Optimal, Infeasible, Unbounded };

/// Missing lower/upper means -inf/+inf.
struct Bound {
    std::optional<Rational> lower;
    std::optional<Rational> upper;

    static Bound free() { return {}; }
    static Bound nonnegative() { return {Rational(0), std::nullopt}; }
    static Bound between(Rational lo, Rational hi) { return {std::move(lo), std::move(hi)}; }
};

/// Linear program in mixed natural form:
///   optimize  objective . x
///   s.t.      matrix[i] . x  (relations[i])  rhs[i]
///             bounds[j].lower <= x[j] <= bounds[j].upper
struct Problem {
    Sense sense = Sense::Minimize;
    Vector objective;
    std::vector<Vector> matrix;
    Vector rhs;
    std::vector<Relation> relations;
    std::vector<Bound> bounds;

    std::size_t variables() const { return objective.size(); }
    std::size_t rows() const { return rhs.size(); }
};

/// Certificates use one sign convention for row multipliers y:
///  - optimal: y is a dual solution. For minimization y >= 0 on >= rows and
///    y <= 0 on <= rows (flipped for maximization); the reduced costs
///    c - A^T y are nonnegative where x sits at its lower bound and
///    nonpositive where it sits at its upper bound, and
///    b.y + sum(bound terms) equals the objective exactly.
///  - infeasible (farkas): y >= 0 on >= rows, y <= 0 on <= rows, and
///    sup over the bound box of (A^T y).x is strictly below b.y.
///  - unbounded: primal holds a feasible point and ray a recession direction
///    that strictly improves the objective.
struct Outcome {
    Status status = Status::Infeasible;
    Vector primal;
    Vector dual;
    Rational objectiveValue;
    Vector farkas;
    Vector ray;
};

/// Sparse-row builder producing a dense Problem.
class ProblemBuilder {
public:
    using Terms = std::vector<std::pair<std::size_t, Rational>>;

    explicit ProblemBuilder(Sense sense) { problem_.sense = sense; }

    std::size_t add_variable(Rational cost, Bound bound);
    void add_row(Terms terms, Relation rel, Rational rhs);
    Problem build() const;

private:
    Problem problem_;
    std::vector<Terms> rows_;
};

/// Throws StructuralError on inconsistent dimensions or crossed bounds.
void validate(const Problem& p);

/// Two-phase dense tableau simplex with Bland's rule.
Outcome solve(const Problem& p);

/// Independent exact replay of a certificate against the problem.
bool verify_certificate(const Problem& p, const Outcome& o);

/// When enabled, every solve() is followed by verify_certificate() and the
/// result tallied. Counters are process-wide.
struct AuditCounters {
    std::uint64_t solves = 0;
    std::uint64_t failures = 0;
};
void set_audit(bool enabled);
AuditCounters audit_counters();

}  // namespace ftap::lp

#include "random_lp.hpp"

namespace ftap::testing {

lp::Problem degenerate_lp(Rng& rng) {
    const auto n = static_cast<std::size_t>(uniform(rng, 1, 6));
    const auto m = static_cast<std::size_t>(uniform(rng, 0, 7));
    lp::ProblemBuilder b(coin(rng, 0.5) ? lp::Sense::Minimize : lp::Sense::Maximize);
    for (std::size_t j = 0; j < n; ++j) {
        lp::Bound bound;
        switch (uniform(rng, 0, 4)) {
            case 0: bound = lp::Bound::free(); break;
            case 1: bound = lp::Bound::nonnegative(); break;
            case 2: bound = {std::nullopt, Rational(uniform(rng, -2, 2))}; break;
            case 3: {
                const auto lo = uniform(rng, -2, 1);
                bound = lp::Bound::between(lo, lo + uniform(rng, 0, 2));
                break;
            }
            default: bound = {Rational(uniform(rng, -2, 2)), std::nullopt}; break;
        }
        b.add_variable(uniform(rng, -2, 2), bound);
    }
    lp::ProblemBuilder::Terms previous;
    for (std::size_t i = 0; i < m; ++i) {
        lp::ProblemBuilder::Terms row;
        if (!previous.empty() && coin(rng, 0.2)) {
            row = previous;  // duplicated row
        } else {
            for (std::size_t j = 0; j < n; ++j) {
                if (coin(rng, 0.6)) row.emplace_back(j, uniform(rng, -2, 2));
            }
        }
        const auto rel = static_cast<lp::Relation>(uniform(rng, 0, 2));
        const Rational rhs = coin(rng, 0.6) ? Rational(0) : Rational(uniform(rng, -3, 3));
        previous = row;
        b.add_row(std::move(row), rel, rhs);
    }
    return b.build();
}

}  // namespace ftap::testing

#pragma once

#include <optional>
#include <string>
#include <utility>

#include "ftap/arbitrage.hpp"
#include "ftap/errors.hpp"
#include "ftap/model.hpp"

namespace ftap {

/// The market admits a robust arbitrage, so super-hedging prices are not
/// meaningful. Carries the improving direction when the pricing program was
/// unbounded below.
class RobustArbitrageError : public PreconditionError {
public:
    RobustArbitrageError(const std::string& what, std::optional<Strategy> ray)
        : PreconditionError(what), ray_(std::move(ray)) {}
    const std::optional<Strategy>& ray() const { return ray_; }

private:
    std::optional<Strategy> ray_;
};

struct HedgeResult {
    std::optional<Rational> price;  // empty means +infinity
    std::optional<Strategy> strategy;
};

/// Least initial capital from which a semi-static strategy dominates the
/// claim on the support, with a canonical optimal strategy.
HedgeResult superhedge_price(const MarketModel& m, const Claim& f);

/// price + terminal_gain >= f on every support leaf, exactly.
bool replay_superhedge(const MarketModel& m, const Claim& f, const Rational& price,
                       const Strategy& s);

struct DualResult {
    Rational value;
    MartingaleMeasure measure;
};

/// Max of E^Q[f] over quote-consistent martingale measures on the support.
/// Throws PreconditionError when no such measure exists.
DualResult dual_price(const MarketModel& m, const Claim& f);

struct PricingReport {
    std::optional<Rational> primalValue;
    std::optional<Strategy> strategy;
    std::optional<Rational> dualValue;
    std::optional<MartingaleMeasure> dualMeasure;
    Rational gap;
};

/// Both sides of the pricing duality; throws SoundnessError on a nonzero gap.
PricingReport duality_report(const MarketModel& m, const Claim& f);

/// A measure strictly inside the consistent set whose value on f is within
/// eps of the dual optimum. Mixes the dual optimizer with the robustness
/// witness using the largest weight 2^-k <= min(1/2, eps / (1 + |gap|)).
MartingaleMeasure strict_dual_approx(const MarketModel& m, const Claim& f, const Rational& eps);

/// (-pi(-g_i), pi(g_i)) with both prices taken in the market without option i.
std::pair<Rational, Rational> price_bounds_excluding(const MarketModel& m, std::size_t i);

}  // namespace ftap

#pragma once

#include <optional>
#include <string>

#include "ftap/model.hpp"

namespace ftap {

/// A pricing measure on the leaves together with its option values.
struct MartingaleMeasure {
    Vector weights;
    Vector optionValues;  // E^Q[g^i]

    friend bool operator==(const MartingaleMeasure&, const MartingaleMeasure&) = default;
};

MartingaleMeasure make_measure(const MarketModel& m, Vector weights);

enum class Consistency {
    Martingale,          // probability on the support, martingale identities
    QuoteConsistent,     // ... and bid <= E[g] <= ask
    StrictlyConsistent,  // ... positive on every support leaf, strict on spread options
};

/// Exact replay of every invariant at the requested level, including that
/// optionValues were computed from the weights.
bool replay_measure(const MarketModel& m, const MartingaleMeasure& q, Consistency level);

struct ArbitrageCertificate {
    Strategy strategy;
    Vector gains;
    LeafIndex strictLeaf = 0;
};

bool replay_arbitrage(const MarketModel& m, const ArbitrageCertificate& c);

struct NaVerdict {
    bool holds = true;
    std::optional<ArbitrageCertificate> certificate;
};

/// Quasi-sure no-arbitrage. On failure the certificate's gains are
/// nonnegative on the support and positive at strictLeaf.
NaVerdict check_na(const MarketModel& m);

struct RobustnessWitness {
    Vector shrunkBids;
    Vector shrunkAsks;
    MartingaleMeasure interiorMeasure;
    Rational slack;
};

bool replay_witness(const MarketModel& m, const RobustnessWitness& w);

struct NarVerdict {
    bool holds = false;
    std::optional<RobustnessWitness> witness;
    std::optional<Rational> bestSlack;  // empty when no consistent measure exists
    std::string blocking;
};

/// Robust no-arbitrage, decided by maximizing the common slack between the
/// smallest support weight and the distance of option values to their quotes.
NarVerdict check_nar(const MarketModel& m);

/// A consistent martingale measure charging every leaf the given generator
/// charges, strictly inside the quotes of spread options. Returns the
/// max-min-weight measure, which dominates every generator at once.
/// Throws PreconditionError when robust no-arbitrage fails.
MartingaleMeasure dominating_measure(const MarketModel& m, std::size_t generator);

/// Quote-consistent martingale measure of maximal weight on `leaf`, or none
/// when every such measure ignores it.
std::optional<MartingaleMeasure> scenario_pricing_measure(const MarketModel& m, LeafIndex leaf);

}  // namespace ftap

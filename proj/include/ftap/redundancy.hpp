#pragma once

#include <optional>
#include <vector>

#include "ftap/arbitrage.hpp"
#include "ftap/model.hpp"

namespace ftap {

/// x + H.dS + sum_{j != i} h_j g_j = g_i on the support. `staticSigned`
/// skips option i: entry k belongs to option k < i ? k : k + 1.
struct ReplicationCertificate {
    Rational initialCapital;
    std::vector<Vector> dynamic;
    Vector staticSigned;
};

bool replay_replication(const MarketModel& m, std::size_t i, const ReplicationCertificate& c);

struct RedundancyVerdict {
    bool nonRedundant = true;
    std::optional<ReplicationCertificate> certificate;
};

/// Whether option i is perfectly replicable from cash, dynamic trading and
/// the other options' payoffs. Quotes play no role.
RedundancyVerdict check_nonredundant(const MarketModel& m, std::size_t i);

struct SpreadRedundancy {
    bool allNonRedundant = true;
    std::vector<std::pair<std::size_t, RedundancyVerdict>> verdicts;  // spread options only
};

SpreadRedundancy all_spread_options_nonredundant(const MarketModel& m);

struct SharperFtapResult {
    NaVerdict na;
    std::optional<RobustnessWitness> witness;
    std::vector<MartingaleMeasure> dominating;  // one per generator
};

/// Plain no-arbitrage check for markets whose spread options are all
/// non-redundant; when it holds, robust no-arbitrage must hold too and the
/// dominating measures are returned. Throws PreconditionError naming the
/// redundant spread options otherwise.
SharperFtapResult sharper_ftap(const MarketModel& m);

}  // namespace ftap

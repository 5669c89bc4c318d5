#pragma once

// Exponential-time cross-checks for small markets. Test-suite use only.

#include <stdexcept>
#include <vector>

#include "ftap/model.hpp"

namespace ftap::oracle {

inline constexpr std::size_t kMaxLeaves = 10;

class OracleRefusal : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Extreme points of the set of quote-consistent martingale measures
/// vanishing off the support. Sorted and duplicate-free.
struct VertexSet {
    std::vector<Vector> vertices;
};

/// Basis enumeration with exact Gaussian elimination. Refuses markets with
/// more than kMaxLeaves leaves.
VertexSet enumerate_consistent_measures(const MarketModel& m);

struct ScanResult {
    bool holds = false;
    unsigned level = 0;  // first k that passed, or depth when none did
};

/// For k = 1..depth shrink every spread to (bid + e_k, ask - e_k) with
/// e_k = (ask - bid) / 2^(k+1) and test plain no-arbitrage.
ScanResult definitional_nar_scan(const MarketModel& m, unsigned depth);

}  // namespace ftap::oracle

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ftap/arbitrage.hpp"
#include "ftap/errors.hpp"
#include "ftap/model.hpp"
#include "ftap/redundancy.hpp"

namespace ftap::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct ParseIssue {
    std::string path;  // JSON pointer, "" for whole-market violations
    std::string message;
};

class ParseError : public StructuralError {
public:
    explicit ParseError(std::vector<ParseIssue> issues);
    const std::vector<ParseIssue>& issues() const { return issues_; }

private:
    std::vector<ParseIssue> issues_;
};

/// Exact parse of a market file. Collects every located error, then runs
/// validate_market; throws ParseError if anything is wrong.
MarketModel parse_market(std::string_view bytes);

/// Canonical market file; parse_market(print_market(m)) == m.
std::string print_market(const MarketModel& m, bool pretty = false);

/// Claim file: {"schemaVersion": 1, "name": ..., "payoff": [...]}.
Claim parse_claim(std::string_view bytes, const MarketModel& m);
std::string print_claim(const Claim& c, const std::string& name = "claim");

Json to_json(const Rational& r);
Json to_json(const Vector& v);
Json strategy_json(const MarketModel& m, const Strategy& s);
Json measure_json(const MarketModel& m, const MartingaleMeasure& q);
Json certificate_json(const MarketModel& m, const ArbitrageCertificate& c);
Json witness_json(const MarketModel& m, const RobustnessWitness& w);
Json replication_json(const MarketModel& m, std::size_t i, const ReplicationCertificate& c);

}  // namespace ftap::io

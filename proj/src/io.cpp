#include "ftap/io.hpp"

#include <algorithm>
#include <set>

namespace ftap::io {

namespace {

std::string summarize(const std::vector<ParseIssue>& issues) {
    std::string out = "invalid input:";
    for (const auto& issue : issues) {
        out += "\n  " + (issue.path.empty() ? std::string("(market)") : issue.path) + ": " + issue.message;
    }
    return out;
}

std::vector<std::string> flatten(const std::vector<ParseIssue>& issues) {
    std::vector<std::string> out;
    for (const auto& issue : issues) out.push_back(issue.path + ": " + issue.message);
    return out;
}

// Accumulates located errors while walking a document.
class Reader {
public:
    explicit Reader(bool strict) : strict_(strict) {}

    std::vector<ParseIssue> issues;

    void fail(const std::string& path, std::string message) {
        issues.push_back({path, std::move(message)});
    }

    const Json* field(const Json& obj, const std::string& path, const char* key, bool required = true) {
        auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) fail(path, std::string("missing field \"") + key + "\"");
            return nullptr;
        }
        return &*it;
    }

    void allow_only(const Json& obj, const std::string& path, std::initializer_list<const char*> keys) {
        if (!strict_) return;
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; })) {
                fail(path + "/" + it.key(), "unknown field");
            }
        }
    }

    bool object(const Json* j, const std::string& path) {
        if (j && !j->is_object()) {
            fail(path, "expected an object");
            return false;
        }
        return j != nullptr;
    }

    bool array(const Json* j, const std::string& path) {
        if (j && !j->is_array()) {
            fail(path, "expected an array");
            return false;
        }
        return j != nullptr;
    }

    Rational rational(const Json& j, const std::string& path) {
        if (j.is_number_integer()) return Rational(j.get<long long>());
        if (!j.is_string()) {
            fail(path, "expected a rational string");
            return {};
        }
        try {
            return Rational::parse(j.get<std::string>());
        } catch (const std::exception& e) {
            fail(path, e.what());
            return {};
        }
    }

    Vector rationals(const Json* j, const std::string& path) {
        Vector out;
        if (!array(j, path)) return out;
        for (std::size_t k = 0; k < j->size(); ++k) out.push_back(rational((*j)[k], path + "/" + std::to_string(k)));
        return out;
    }

    std::optional<long long> integer(const Json* j, const std::string& path) {
        if (!j) return std::nullopt;
        if (!j->is_number_integer()) {
            fail(path, "expected an integer");
            return std::nullopt;
        }
        return j->get<long long>();
    }

    std::string text(const Json* j, const std::string& path) {
        if (!j) return {};
        if (!j->is_string()) {
            fail(path, "expected a string");
            return {};
        }
        return j->get<std::string>();
    }

private:
    bool strict_;
};

Json parse_document(std::string_view bytes) {
    try {
        return Json::parse(bytes.begin(), bytes.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError({{"", std::string("malformed JSON: ") + e.what()}});
    }
}

// Returns whether unknown fields should be rejected.
bool read_version(Reader& r, const Json& doc) {
    const auto version = r.integer(r.field(doc, "", "schemaVersion"), "/schemaVersion");
    if (!version) return true;
    if (*version < kSchemaVersion) {
        r.fail("/schemaVersion", "unsupported schemaVersion " + std::to_string(*version));
    }
    return *version == kSchemaVersion;
}

}  // namespace

ParseError::ParseError(std::vector<ParseIssue> issues)
    : StructuralError(summarize(issues), flatten(issues)), issues_(std::move(issues)) {}

MarketModel parse_market(std::string_view bytes) {
    const Json doc = parse_document(bytes);
    if (!doc.is_object()) throw ParseError(std::vector<ParseIssue>{{"", "market file must be a JSON object"}});
    Reader probe(false);
    const bool strict = read_version(probe, doc);
    Reader r(strict);
    r.issues = std::move(probe.issues);
    r.allow_only(doc, "", {"schemaVersion", "tree", "options", "measures", "leafOrder"});

    MarketModel m;
    const Json* tree = r.field(doc, "", "tree");
    if (r.object(tree, "/tree")) {
        r.allow_only(*tree, "/tree", {"nodes"});
        const Json* nodes = r.field(*tree, "/tree", "nodes");
        if (r.array(nodes, "/tree/nodes")) {
            for (std::size_t k = 0; k < nodes->size(); ++k) {
                const std::string path = "/tree/nodes/" + std::to_string(k);
                const Json& jn = (*nodes)[k];
                if (!r.object(&jn, path)) continue;
                r.allow_only(jn, path, {"id", "time", "parent", "prices"});
                Node node;
                if (auto id = r.integer(r.field(jn, path, "id"), path + "/id")) {
                    if (*id < 0) r.fail(path + "/id", "must be nonnegative");
                    node.id = static_cast<NodeId>(std::max(0LL, *id));
                }
                if (auto t = r.integer(r.field(jn, path, "time"), path + "/time")) node.time = static_cast<int>(*t);
                if (const Json* parent = r.field(jn, path, "parent")) {
                    if (!parent->is_null()) {
                        if (auto p = r.integer(parent, path + "/parent")) {
                            if (*p < 0) {
                                r.fail(path + "/parent", "must be nonnegative or null");
                            } else {
                                node.parent = static_cast<NodeId>(*p);
                            }
                        }
                    }
                }
                node.prices = r.rationals(r.field(jn, path, "prices"), path + "/prices");
                m.tree.nodes.push_back(std::move(node));
            }
        }
    }
    m.tree.periods = 0;
    for (const auto& node : m.tree.nodes) m.tree.periods = std::max(m.tree.periods, node.time);
    for (const auto& node : m.tree.nodes) {
        if (!node.parent) {
            m.tree.assets = node.prices.size();
            break;
        }
    }

    if (const Json* order = r.field(doc, "", "leafOrder"); r.array(order, "/leafOrder")) {
        for (std::size_t k = 0; k < order->size(); ++k) {
            const std::string path = "/leafOrder/" + std::to_string(k);
            if (auto id = r.integer(&(*order)[k], path)) {
                if (*id < 0) {
                    r.fail(path, "must be nonnegative");
                } else {
                    m.tree.leafOrder.push_back(static_cast<NodeId>(*id));
                }
            }
        }
    }

    if (const Json* options = r.field(doc, "", "options", false); r.array(options, "/options")) {
        for (std::size_t k = 0; k < options->size(); ++k) {
            const std::string path = "/options/" + std::to_string(k);
            const Json& jo = (*options)[k];
            if (!r.object(&jo, path)) continue;
            r.allow_only(jo, path, {"name", "payoff", "bid", "ask"});
            OptionQuote opt;
            opt.name = r.text(r.field(jo, path, "name"), path + "/name");
            opt.payoff = r.rationals(r.field(jo, path, "payoff"), path + "/payoff");
            if (const Json* bid = r.field(jo, path, "bid")) opt.bid = r.rational(*bid, path + "/bid");
            if (const Json* ask = r.field(jo, path, "ask")) opt.ask = r.rational(*ask, path + "/ask");
            m.options.push_back(std::move(opt));
        }
    }

    if (const Json* measures = r.field(doc, "", "measures"); r.array(measures, "/measures")) {
        for (std::size_t k = 0; k < measures->size(); ++k) {
            const std::string path = "/measures/" + std::to_string(k);
            const Json& jm = (*measures)[k];
            if (!r.object(&jm, path)) continue;
            r.allow_only(jm, path, {"name", "weights"});
            Generator gen;
            gen.name = r.text(r.field(jm, path, "name"), path + "/name");
            gen.weights = r.rationals(r.field(jm, path, "weights"), path + "/weights");
            m.measures.generators.push_back(std::move(gen));
        }
    }

    std::set<std::string> names;
    for (std::size_t k = 0; k < m.options.size(); ++k) {
        if (!names.insert(m.options[k].name).second) r.fail("/options/" + std::to_string(k) + "/name", "duplicate option name");
    }
    names.clear();
    for (std::size_t k = 0; k < m.measures.generators.size(); ++k) {
        if (!names.insert(m.measures.generators[k].name).second) {
            r.fail("/measures/" + std::to_string(k) + "/name", "duplicate measure name");
        }
    }

    if (r.issues.empty()) {
        for (auto& v : validate_market(m).violations) r.fail("", std::move(v));
    }
    if (!r.issues.empty()) throw ParseError(std::move(r.issues));
    return m;
}

Json to_json(const Rational& r) { return r.str(); }

Json to_json(const Vector& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(x.str());
    return out;
}

std::string print_market(const MarketModel& m, bool pretty) {
    Json doc;
    doc["schemaVersion"] = kSchemaVersion;
    Json nodes = Json::array();
    for (const auto& node : m.tree.nodes) {
        Json jn;
        jn["id"] = node.id;
        jn["time"] = node.time;
        jn["parent"] = node.parent ? Json(*node.parent) : Json(nullptr);
        jn["prices"] = to_json(node.prices);
        nodes.push_back(std::move(jn));
    }
    doc["tree"]["nodes"] = std::move(nodes);
    Json options = Json::array();
    for (const auto& opt : m.options) {
        options.push_back({{"name", opt.name}, {"payoff", to_json(opt.payoff)}, {"bid", opt.bid.str()},
                           {"ask", opt.ask.str()}});
    }
    doc["options"] = std::move(options);
    Json measures = Json::array();
    for (const auto& gen : m.measures.generators) {
        measures.push_back({{"name", gen.name}, {"weights", to_json(gen.weights)}});
    }
    doc["measures"] = std::move(measures);
    doc["leafOrder"] = m.tree.leafOrder;
    return doc.dump(pretty ? 2 : -1);
}

Claim parse_claim(std::string_view bytes, const MarketModel& m) {
    const Json doc = parse_document(bytes);
    if (!doc.is_object()) throw ParseError(std::vector<ParseIssue>{{"", "claim file must be a JSON object"}});
    Reader probe(false);
    const bool strict = read_version(probe, doc);
    Reader r(strict);
    r.issues = std::move(probe.issues);
    r.allow_only(doc, "", {"schemaVersion", "name", "payoff"});
    r.text(r.field(doc, "", "name", false), "/name");
    Claim c{r.rationals(r.field(doc, "", "payoff"), "/payoff")};
    if (r.issues.empty() && c.payoff.size() != m.leaf_count()) {
        r.fail("/payoff", "has " + std::to_string(c.payoff.size()) + " entries, expected " +
                              std::to_string(m.leaf_count()));
    }
    if (!r.issues.empty()) throw ParseError(std::move(r.issues));
    return c;
}

std::string print_claim(const Claim& c, const std::string& name) {
    Json doc;
    doc["schemaVersion"] = kSchemaVersion;
    doc["name"] = name;
    doc["payoff"] = to_json(c.payoff);
    return doc.dump();
}

Json strategy_json(const MarketModel& m, const Strategy& s) {
    Json dynamic = Json::array();
    for (const auto& node : m.tree.nodes) {
        if (node.time == m.tree.periods) continue;
        dynamic.push_back({{"node", node.id}, {"position", to_json(s.dynamic[node.id])}});
    }
    Json statics = Json::array();
    const Vector net = s.net();
    for (std::size_t i = 0; i < m.option_count(); ++i) {
        statics.push_back({{"option", m.options[i].name},
                           {"buy", s.buy[i].str()},
                           {"sell", s.sell[i].str()},
                           {"net", net[i].str()}});
    }
    return {{"dynamic", std::move(dynamic)}, {"static", std::move(statics)}};
}

Json measure_json(const MarketModel& m, const MartingaleMeasure& q) {
    Json values = Json::array();
    for (std::size_t i = 0; i < m.option_count(); ++i) {
        values.push_back({{"option", m.options[i].name}, {"value", q.optionValues[i].str()}});
    }
    return {{"weights", to_json(q.weights)}, {"optionValues", std::move(values)}};
}

Json certificate_json(const MarketModel& m, const ArbitrageCertificate& c) {
    return {{"strategy", strategy_json(m, c.strategy)},
            {"gains", to_json(c.gains)},
            {"strictLeaf", c.strictLeaf},
            {"strictLeafNode", m.tree.leafOrder[c.strictLeaf]}};
}

Json witness_json(const MarketModel& m, const RobustnessWitness& w) {
    Json quotes = Json::array();
    for (std::size_t i = 0; i < m.option_count(); ++i) {
        quotes.push_back({{"option", m.options[i].name},
                          {"bid", w.shrunkBids[i].str()},
                          {"ask", w.shrunkAsks[i].str()}});
    }
    return {{"slack", w.slack.str()},
            {"shrunkQuotes", std::move(quotes)},
            {"interiorMeasure", measure_json(m, w.interiorMeasure)}};
}

Json replication_json(const MarketModel& m, std::size_t i, const ReplicationCertificate& c) {
    Json dynamic = Json::array();
    for (const auto& node : m.tree.nodes) {
        if (node.time == m.tree.periods) continue;
        dynamic.push_back({{"node", node.id}, {"position", to_json(c.dynamic[node.id])}});
    }
    Json statics = Json::array();
    for (std::size_t k = 0; k < c.staticSigned.size(); ++k) {
        const std::size_t j = k < i ? k : k + 1;
        statics.push_back({{"option", m.options[j].name}, {"position", c.staticSigned[k].str()}});
    }
    return {{"initialCapital", c.initialCapital.str()},
            {"dynamic", std::move(dynamic)},
            {"static", std::move(statics)}};
}

}  // namespace ftap::io

#include "ftap/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ftap/arbitrage.hpp"
#include "ftap/io.hpp"
#include "ftap/redundancy.hpp"
#include "ftap/superhedge.hpp"

namespace ftap::cli {

namespace {

using io::Json;

struct Options {
    std::string market;
    std::string claim;
    std::string option;
    std::string generator;
    std::string eps;
    bool pretty = false;
    bool verify = false;
};

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Replay failure under --verify.
class ReplayError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Outcome {
    int code = kHolds;
    Json report;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read file \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json new_report(const std::string& command, const std::string& verdict) {
    Json r;
    r["command"] = command;
    r["verdict"] = verdict;
    r["values"] = Json::object();
    r["certificates"] = Json::object();
    r["diagnostics"] = Json::array();
    return r;
}

void require_replay(bool verify, bool ok, const std::string& what) {
    if (verify && !ok) throw ReplayError("certificate replay failed: " + what);
}

std::size_t option_index(const MarketModel& m, const std::string& name) {
    for (std::size_t i = 0; i < m.option_count(); ++i) {
        if (m.options[i].name == name) return i;
    }
    throw InputError("no option named \"" + name + "\"");
}

std::size_t generator_index(const MarketModel& m, const std::string& name) {
    for (std::size_t g = 0; g < m.measures.generators.size(); ++g) {
        if (m.measures.generators[g].name == name) return g;
    }
    throw InputError("no measure named \"" + name + "\"");
}

Outcome cmd_check_na(const MarketModel& m, const Options& o) {
    const auto verdict = check_na(m);
    if (verdict.holds) {
        Outcome out{kHolds, new_report("check-na", "NA holds")};
        Json supp = Json::array();
        for (auto leaf : support(m)) supp.push_back(leaf);
        out.report["values"]["support"] = std::move(supp);
        return out;
    }
    require_replay(o.verify, replay_arbitrage(m, *verdict.certificate), "arbitrage strategy");
    Outcome out{kFails, new_report("check-na", "NA fails")};
    out.report["certificates"]["arbitrage"] = io::certificate_json(m, *verdict.certificate);
    return out;
}

Outcome cmd_check_nar(const MarketModel& m, const Options& o) {
    const auto verdict = check_nar(m);
    if (verdict.holds) {
        require_replay(o.verify, replay_witness(m, *verdict.witness), "robustness witness");
        Outcome out{kHolds, new_report("check-nar", "NA^r holds")};
        out.report["values"]["slack"] = verdict.witness->slack.str();
        out.report["certificates"]["witness"] = io::witness_json(m, *verdict.witness);
        return out;
    }
    Outcome out{kFails, new_report("check-nar", "NA^r fails")};
    out.report["values"]["slack"] = verdict.bestSlack ? Json(verdict.bestSlack->str()) : Json(nullptr);
    out.report["diagnostics"].push_back(verdict.blocking);
    return out;
}

Outcome robust_arbitrage(const std::string& command, const MarketModel& m,
                         const RobustArbitrageError& e) {
    Outcome out{kFails, new_report(command, "robust arbitrage")};
    out.report["diagnostics"].push_back(e.what());
    if (e.ray()) out.report["certificates"]["ray"] = io::strategy_json(m, *e.ray());
    return out;
}

Outcome cmd_superhedge(const MarketModel& m, const Options& o) {
    const Claim f = io::parse_claim(slurp(o.claim), m);
    try {
        const auto result = superhedge_price(m, f);
        Outcome out{kHolds, new_report("superhedge", "price computed")};
        if (!result.price) {
            out.report["values"]["price"] = "+inf";
            return out;
        }
        require_replay(o.verify, replay_superhedge(m, f, *result.price, *result.strategy),
                       "super-hedging strategy");
        out.report["values"]["price"] = result.price->str();
        out.report["certificates"]["strategy"] = io::strategy_json(m, *result.strategy);
        return out;
    } catch (const RobustArbitrageError& e) {
        return robust_arbitrage("superhedge", m, e);
    }
}

Outcome cmd_dual(const MarketModel& m, const Options& o) {
    const Claim f = io::parse_claim(slurp(o.claim), m);
    const auto result = dual_price(m, f);
    require_replay(o.verify,
                   replay_measure(m, result.measure, Consistency::QuoteConsistent) &&
                       dot(result.measure.weights, f.payoff) == result.value,
                   "dual measure");
    Outcome out{kHolds, new_report("dual", "value computed")};
    out.report["values"]["value"] = result.value.str();
    out.report["certificates"]["measure"] = io::measure_json(m, result.measure);
    return out;
}

Outcome cmd_bounds(const MarketModel& m, const Options& o) {
    const std::size_t i = option_index(m, o.option);
    const auto [lower, upper] = price_bounds_excluding(m, i);
    Outcome out{kHolds, new_report("bounds", "bounds computed")};
    out.report["values"]["option"] = m.options[i].name;
    out.report["values"]["lower"] = lower.str();
    out.report["values"]["upper"] = upper.str();
    out.report["values"]["bid"] = m.options[i].bid.str();
    out.report["values"]["ask"] = m.options[i].ask.str();
    return out;
}

Outcome cmd_redundancy(const MarketModel& m, const Options& o) {
    bool spread_ok = true;
    Json verdicts = Json::array();
    for (std::size_t i = 0; i < m.option_count(); ++i) {
        const auto verdict = check_nonredundant(m, i);
        Json entry{{"option", m.options[i].name},
                   {"spread", m.options[i].has_spread()},
                   {"nonRedundant", verdict.nonRedundant}};
        if (!verdict.nonRedundant) {
            require_replay(o.verify, replay_replication(m, i, *verdict.certificate),
                           "replication of " + m.options[i].name);
            entry["replication"] = io::replication_json(m, i, *verdict.certificate);
            spread_ok = spread_ok && !m.options[i].has_spread();
        }
        verdicts.push_back(std::move(entry));
    }
    Outcome out{spread_ok ? kHolds : kFails,
                new_report("redundancy", spread_ok ? "spread options non-redundant"
                                                   : "redundant spread options")};
    out.report["values"]["allSpreadOptionsNonRedundant"] = spread_ok;
    out.report["certificates"]["options"] = std::move(verdicts);
    return out;
}

Outcome cmd_sharper_ftap(const MarketModel& m, const Options& o) {
    SharperFtapResult result;
    try {
        result = sharper_ftap(m);
    } catch (const PreconditionError& e) {
        Outcome out{kFails, new_report("sharper-ftap", "precondition fails")};
        out.report["diagnostics"].push_back(e.what());
        return out;
    }
    if (!result.na.holds) {
        require_replay(o.verify, replay_arbitrage(m, *result.na.certificate), "arbitrage strategy");
        Outcome out{kFails, new_report("sharper-ftap", "NA fails")};
        out.report["certificates"]["arbitrage"] = io::certificate_json(m, *result.na.certificate);
        return out;
    }
    require_replay(o.verify, replay_witness(m, *result.witness), "robustness witness");
    Outcome out{kHolds, new_report("sharper-ftap", "NA holds and NA^r confirmed")};
    out.report["certificates"]["witness"] = io::witness_json(m, *result.witness);
    Json dominating = Json::array();
    for (std::size_t g = 0; g < result.dominating.size(); ++g) {
        require_replay(o.verify,
                       replay_measure(m, result.dominating[g], Consistency::StrictlyConsistent),
                       "dominating measure");
        dominating.push_back({{"generator", m.measures.generators[g].name},
                              {"measure", io::measure_json(m, result.dominating[g])}});
    }
    out.report["certificates"]["dominating"] = std::move(dominating);
    return out;
}

Outcome cmd_dominate(const MarketModel& m, const Options& o) {
    const std::size_t g = generator_index(m, o.generator);
    try {
        const auto q = dominating_measure(m, g);
        bool dominates = true;
        const auto& prior = m.measures.generators[g].weights;
        for (LeafIndex leaf = 0; leaf < m.leaf_count(); ++leaf) {
            dominates = dominates && (prior[leaf].sign() == 0 || q.weights[leaf].sign() > 0);
        }
        require_replay(o.verify, dominates && replay_measure(m, q, Consistency::StrictlyConsistent),
                       "dominating measure");
        Outcome out{kHolds, new_report("dominate", "dominating measure found")};
        out.report["values"]["generator"] = m.measures.generators[g].name;
        out.report["certificates"]["measure"] = io::measure_json(m, q);
        return out;
    } catch (const PreconditionError& e) {
        Outcome out{kFails, new_report("dominate", "NA^r fails")};
        out.report["diagnostics"].push_back(e.what());
        return out;
    }
}

Outcome cmd_strict_dual(const MarketModel& m, const Options& o) {
    const Claim f = io::parse_claim(slurp(o.claim), m);
    Rational eps;
    try {
        eps = Rational::parse(o.eps);
    } catch (const std::exception& e) {
        throw InputError(std::string("--eps: ") + e.what());
    }
    try {
        const auto q = strict_dual_approx(m, f, eps);
        const auto best = dual_price(m, f);
        const Rational value = dot(q.weights, f.payoff);
        require_replay(o.verify,
                       replay_measure(m, q, Consistency::StrictlyConsistent) && value >= best.value - eps,
                       "strict dual measure");
        Outcome out{kHolds, new_report("strict-dual", "interior measure found")};
        out.report["values"]["value"] = value.str();
        out.report["values"]["dualValue"] = best.value.str();
        out.report["values"]["eps"] = eps.str();
        out.report["certificates"]["measure"] = io::measure_json(m, q);
        return out;
    } catch (const RobustArbitrageError& e) {
        return robust_arbitrage("strict-dual", m, e);
    }
}

Json error_json(const std::string& kind, int code, const std::string& message,
                const std::vector<std::string>& details = {}) {
    Json e;
    e["error"] = kind;
    e["exitCode"] = code;
    e["message"] = message;
    e["details"] = details;
    return e;
}

void summary(std::ostream& err, const Terminal& terminal, int code, const std::string& verdict) {
    if (!terminal.color) return;
    const char* tint = code == kHolds ? "\x1b[32m" : (code == kFails ? "\x1b[33m" : "\x1b[31m");
    err << tint << verdict << "\x1b[0m\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, Terminal terminal) {
    CLI::App app{"Arbitrage checks and super-hedging prices for finite markets with bid-ask quoted options",
                 "ftap"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_flag("--pretty", o.pretty, "Indent the JSON report");
    app.add_flag("--verify", o.verify, "Replay every certificate before printing");

    using Handler = std::function<Outcome(const MarketModel&, const Options&)>;
    std::vector<std::pair<CLI::App*, Handler>> commands;
    auto command = [&](const char* name, const char* help, Handler h) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("market", o.market, "Market file")->required();
        commands.emplace_back(sub, std::move(h));
        return sub;
    };
    command("check-na", "Decide quasi-sure no-arbitrage", cmd_check_na);
    command("check-nar", "Decide robust no-arbitrage", cmd_check_nar);
    command("superhedge", "Super-hedging price and optimal semi-static strategy", cmd_superhedge)
        ->add_option("--claim", o.claim, "Claim file")->required();
    command("dual", "Maximal expectation over consistent martingale measures", cmd_dual)
        ->add_option("--claim", o.claim, "Claim file")->required();
    command("bounds", "Price bounds for an option using the rest of the market", cmd_bounds)
        ->add_option("--option", o.option, "Option name")->required();
    command("redundancy", "Replicability of each option", cmd_redundancy);
    command("sharper-ftap", "No-arbitrage check for markets with non-redundant spread options",
            cmd_sharper_ftap);
    command("dominate", "Consistent measure dominating a prior", cmd_dominate)
        ->add_option("--generator", o.generator, "Measure name")->required();
    auto* strict = command("strict-dual", "Interior measure within eps of the dual optimum", cmd_strict_dual);
    strict->add_option("--claim", o.claim, "Claim file")->required();
    strict->add_option("--eps", o.eps, "Positive rational tolerance")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kHolds;
    } catch (const CLI::ParseError& e) {
        err << error_json("invalid-input", kInvalidInput, e.what()).dump() << "\n";
        return kInvalidInput;
    }

    const int indent = o.pretty ? 2 : -1;
    std::string name;
    try {
        for (const auto& [sub, handler] : commands) {
            if (!sub->parsed()) continue;
            name = sub->get_name();
            const MarketModel m = io::parse_market(slurp(o.market));
            Outcome result = handler(m, o);
            out << result.report.dump(indent) << "\n";
            if (o.pretty) summary(err, terminal, result.code, result.report["verdict"].get<std::string>());
            return result.code;
        }
    } catch (const StructuralError& e) {
        err << error_json("invalid-input", kInvalidInput, e.what(), e.violations()).dump() << "\n";
        return kInvalidInput;
    } catch (const InputError& e) {
        err << error_json("invalid-input", kInvalidInput, e.what()).dump() << "\n";
        return kInvalidInput;
    } catch (const DomainError& e) {
        err << error_json("invalid-input", kInvalidInput, e.what()).dump() << "\n";
        return kInvalidInput;
    } catch (const PreconditionError& e) {
        out << [&] {
            Json r = new_report(name, "precondition fails");
            r["diagnostics"].push_back(e.what());
            return r;
        }().dump(indent) << "\n";
        err << error_json("precondition", kFails, e.what()).dump() << "\n";
        return kFails;
    } catch (const ReplayError& e) {
        err << error_json("soundness", kUnsound, e.what()).dump() << "\n";
        return kUnsound;
    } catch (const SoundnessError& e) {
        err << error_json("soundness", kUnsound, e.what()).dump() << "\n";
        return kUnsound;
    } catch (const std::exception& e) {
        err << error_json("internal", kUnsound, e.what()).dump() << "\n";
        return kUnsound;
    }
    err << error_json("invalid-input", kInvalidInput, "no command given").dump() << "\n";
    return kInvalidInput;
}

}  // namespace ftap::cli

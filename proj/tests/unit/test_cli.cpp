#include <doctest.h>

#include <sstream>

#include "ftap/cli.hpp"
#include "ftap/io.hpp"

using ftap::io::Json;
namespace cli = ftap::cli;

namespace {

std::string fixture(const std::string& name) { return std::string(FTAP_FIXTURE_DIR) + "/" + name; }

struct Run {
    int code;
    std::string out;
    std::string err;

    Json report() const { return Json::parse(out); }
    Json error() const { return Json::parse(err); }
};

Run run(std::vector<std::string> args, cli::Terminal terminal = {}) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err, terminal);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("check-na and check-nar on the counterexample") {
    const auto na = run({"check-na", fixture("m2.json")});
    CHECK(na.code == cli::kHolds);
    CHECK(na.report()["verdict"] == "NA holds");

    const auto nar = run({"check-nar", fixture("m2.json")});
    CHECK(nar.code == cli::kFails);
    const auto report = nar.report();
    CHECK(report["command"] == "check-nar");
    CHECK(report["verdict"] == "NA^r fails");
    CHECK_FALSE(report["diagnostics"].empty());
}

TEST_CASE("check-nar reports a witness when it holds") {
    const auto r = run({"check-nar", fixture("m3.json"), "--verify"});
    CHECK(r.code == cli::kHolds);
    const auto w = r.report()["certificates"]["witness"];
    CHECK(w["interiorMeasure"]["weights"] == Json::array({"1/2", "1/2"}));
}

TEST_CASE("superhedge prints the price and the strategy") {
    const auto r = run({"superhedge", fixture("m1.json"), "--claim", fixture("m1_call.json"), "--verify"});
    CHECK(r.code == cli::kHolds);
    const auto report = r.report();
    CHECK(report["values"]["price"] == "1/3");
    CHECK(report["certificates"]["strategy"]["dynamic"][0]["position"] == Json::array({"2/3"}));
}

TEST_CASE("superhedge refuses a market without robust no-arbitrage") {
    const auto r = run({"superhedge", fixture("m2.json"), "--claim", fixture("m2_digital.json")});
    CHECK(r.code == cli::kFails);
    CHECK(r.report()["verdict"] == "robust arbitrage");
}

TEST_CASE("the remaining subcommands") {
    auto r = run({"dual", fixture("m2.json"), "--claim", fixture("m2_digital.json"), "--verify"});
    CHECK(r.code == cli::kHolds);
    CHECK(r.report()["values"]["value"] == "1/2");

    r = run({"bounds", fixture("m4.json"), "--option", "straddle"});
    CHECK(r.code == cli::kHolds);
    CHECK(r.report()["values"]["lower"] == "0");
    CHECK(r.report()["values"]["upper"] == "1");

    r = run({"redundancy", fixture("m3.json"), "--verify"});
    CHECK(r.code == cli::kFails);
    CHECK(r.report()["values"]["allSpreadOptionsNonRedundant"] == false);

    r = run({"redundancy", fixture("m4.json")});
    CHECK(r.code == cli::kHolds);

    r = run({"sharper-ftap", fixture("m1.json"), "--verify"});
    CHECK(r.code == cli::kHolds);
    CHECK(r.report()["certificates"]["dominating"].size() == 2);

    r = run({"sharper-ftap", fixture("m3.json")});
    CHECK(r.code == cli::kFails);

    r = run({"dominate", fixture("two_period.json"), "--generator", "right", "--verify"});
    CHECK(r.code == cli::kHolds);

    r = run({"strict-dual", fixture("m4.json"), "--claim", fixture("m4_claim.json"), "--eps", "1/8", "--verify"});
    CHECK(r.code == cli::kHolds);
}

TEST_CASE("invalid input exits 4 with a JSON error") {
    auto r = run({"check-na", fixture("nosuchfile.json")});
    CHECK(r.code == cli::kInvalidInput);
    CHECK(r.out.empty());
    CHECK(r.error()["exitCode"] == cli::kInvalidInput);

    CHECK(run({"bounds", fixture("m4.json"), "--option", "nope"}).code == cli::kInvalidInput);
    CHECK(run({"dominate", fixture("m1.json"), "--generator", "nope"}).code == cli::kInvalidInput);
    CHECK(run({"strict-dual", fixture("m4.json"), "--claim", fixture("m4_claim.json"), "--eps", "0"}).code ==
          cli::kInvalidInput);
    CHECK(run({"strict-dual", fixture("m4.json"), "--claim", fixture("m4_claim.json"), "--eps", "x"}).code ==
          cli::kInvalidInput);
    CHECK(run({"superhedge", fixture("m1.json"), "--claim", fixture("m4_claim.json")}).code ==
          cli::kInvalidInput);
    CHECK(run({"superhedge", fixture("m1.json")}).code == cli::kInvalidInput);
    CHECK(run({"frobnicate", fixture("m1.json")}).code == cli::kInvalidInput);
    CHECK(run({}).code == cli::kInvalidInput);
}

TEST_CASE("reports are deterministic and --verify never changes them") {
    const std::vector<std::string> args = {"superhedge", fixture("m4.json"), "--claim", fixture("m4_claim.json")};
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.out == b.out);
    auto verified = args;
    verified.push_back("--verify");
    CHECK(run(verified).out == a.out);

    const auto nar = run({"check-nar", fixture("m2.json")});
    CHECK(run({"check-nar", fixture("m2.json"), "--verify"}).out == nar.out);
}

TEST_CASE("--pretty indents the same report") {
    const auto flat = run({"check-na", fixture("m1.json")});
    const auto pretty = run({"check-na", fixture("m1.json"), "--pretty"});
    CHECK(pretty.out != flat.out);
    CHECK(pretty.report() == flat.report());
    CHECK(pretty.err.empty());

    const auto colored = run({"check-na", fixture("m1.json"), "--pretty"}, {true});
    CHECK(colored.err.find("\x1b[") != std::string::npos);
    CHECK(colored.out == pretty.out);
}

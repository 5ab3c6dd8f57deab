#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <string>
#include <vector>

#include "json.hpp"
#include "maxcurve/cli.hpp"

using json = nlohmann::json;
using maxcurve::cli::CliResult;
using maxcurve::cli::run_cli;

namespace {

json parse_doc(const CliResult& r) {
    REQUIRE_FALSE(r.out.empty());
    return json::parse(r.out);
}

// The per-item wall time is the only nondeterministic field; zero it out
// so documents can be compared structurally.
json masked(json doc) {
    for (auto& item : doc.at("items")) item["ms"] = 0;
    return doc;
}

const json& item_named(const json& doc, const std::string& name) {
    for (const auto& item : doc.at("items"))
        if (item.at("name") == name) return item;
    FAIL("missing item: " + name);
    static json dummy;
    return dummy;
}

bool has_item(const json& doc, const std::string& name) {
    for (const auto& item : doc.at("items"))
        if (item.at("name") == name) return true;
    return false;
}

} // namespace

TEST_CASE("count subcommand emits the full document schema", "[cli]") {
    auto r = run_cli({"count", "--curve", "xn", "--q", "2", "--n", "3"});
    CHECK(r.exitCode == 0);
    CHECK(r.err.empty());
    auto doc = parse_doc(r);
    CHECK(doc.at("command") == "count");
    CHECK(doc.at("pass") == true);
    CHECK(doc.at("params").at("q") == 2);
    CHECK(doc.at("params").at("n") == 3);
    CHECK(doc.at("params").at("curve") == "xn");
    CHECK_FALSE(doc.at("params").contains("threads"));
    CHECK_FALSE(doc.at("params").contains("force"));
    CHECK_FALSE(doc.at("params").contains("log-bound"));
    REQUIRE(doc.at("items").size() == 1);
    const auto& item = doc.at("items")[0];
    CHECK(item.at("name") == "xn-count");
    CHECK(item.at("expected") == 225);
    CHECK(item.at("actual") == 225);
    CHECK(item.at("pass") == true);
    CHECK(item.at("ms").is_number());
}

TEST_CASE("count covers every curve family", "[cli]") {
    struct Row {
        const char* curve;
        int expected;
    };
    for (auto [curve, expected] : {Row{"xn", 3969}, {"ggs", 3969}, {"hermitian", 9},
                                   {"etaz", 1985}, {"rhoz", 1985}}) {
        auto r = run_cli({"count", "--curve", curve, "--q", "2", "--n", "5"});
        INFO(curve);
        CHECK(r.exitCode == 0);
        auto doc = parse_doc(r);
        const auto& item = doc.at("items")[0];
        CHECK(item.at("name") == std::string(curve) + "-count");
        CHECK(item.at("actual") == expected);
        CHECK(item.at("expected") == expected);
    }
    auto sub = run_cli({"count", "--curve", "subcover", "--q", "4", "--n", "5",
                        "--k1", "5", "--k2", "41", "--threads", "4"});
    CHECK(sub.exitCode == 0);
    auto doc = parse_doc(sub);
    CHECK(doc.at("items")[0].at("actual") == 1114113);
    CHECK(doc.at("params").at("k1") == 5);
    CHECK(doc.at("params").at("k2") == 41);
}

TEST_CASE("genus subcommand cross-checks closed forms", "[cli]") {
    auto r = run_cli({"genus", "--q", "3", "--n", "3"});
    REQUIRE(r.exitCode == 0);
    auto doc = parse_doc(r);
    CHECK(item_named(doc, "genus-xn-rh").at("actual") == 99);
    CHECK(item_named(doc, "genus-etaz-rh").at("actual") == 12);
    CHECK(item_named(doc, "genus-rhoz-rh").at("actual") == 24);

    auto sub = run_cli({"genus", "--q", "4", "--n", "5", "--k1", "5", "--k2", "41"});
    REQUIRE(sub.exitCode == 0);
    auto subDoc = parse_doc(sub);
    CHECK(item_named(subDoc, "genus-subcover-rh").at("actual") == 32);
    // k1 without k2 is an incomplete quotient spec.
    CHECK(run_cli({"genus", "--q", "4", "--n", "5", "--k1", "5"}).exitCode == 2);
}

TEST_CASE("spectrum emits the golden CSV", "[cli]") {
    auto r = run_cli({"spectrum", "--q", "4", "--n", "5", "--format", "csv"});
    REQUIRE(r.exitCode == 0);
    const std::string expected =
        "k1,k2,k,delta1,delta2,delta3,genus,in_paper_list\n"
        "5,205,5,1,5,1,2,false\n"
        "1,205,5,5,5,5,6,false\n"
        "5,41,25,1,5,1,32,true\n"
        "1,41,25,5,5,5,156,true\n"
        "5,5,205,1,5,1,302,true\n"
        "1,5,205,5,5,5,1506,true\n"
        "5,1,1025,1,5,1,1532,true\n"
        "1,1,1025,5,5,5,7656,false\n";
    CHECK(r.out == expected);

    auto j = run_cli({"spectrum", "--q", "4", "--n", "5"});
    REQUIRE(j.exitCode == 0);
    auto doc = parse_doc(j);
    CHECK(doc.at("items").size() == 8);
    CHECK(item_named(doc, "subcover-5-41").at("actual") == 32);
    CHECK(doc.at("pass") == true);

    CHECK(run_cli({"spectrum", "--q", "4", "--n", "5", "--format", "xml"}).exitCode == 2);
}

TEST_CASE("autgroup subcommand covers orders, action and orbit", "[cli]") {
    auto r = run_cli({"autgroup", "--q", "2", "--n", "3"});
    REQUIRE(r.exitCode == 0);
    auto doc = parse_doc(r);
    CHECK(item_named(doc, "sl-order").at("actual") == 6);
    CHECK(item_named(doc, "ml-order").at("actual") == 18);
    CHECK(item_named(doc, "lift-count").at("actual") == 54);
    CHECK(item_named(doc, "action-u-twist").at("actual") == 870);
    CHECK(item_named(doc, "orbit-directions").at("actual") == 3);
    CHECK(doc.at("pass") == true);

    auto orders = run_cli({"autgroup", "--q", "5", "--n", "3", "--check", "orders"});
    REQUIRE(orders.exitCode == 0);
    auto ordersDoc = parse_doc(orders);
    CHECK(item_named(ordersDoc, "ml-order").at("actual") == 720);
    CHECK_FALSE(has_item(ordersDoc, "action-preserves"));
}

TEST_CASE("identity subcommand runs each check individually", "[cli]") {
    auto eta = run_cli({"identity", "--q", "3", "--n", "3", "--check", "etacount"});
    REQUIRE(eta.exitCode == 0);
    auto etaDoc = parse_doc(eta);
    CHECK(item_named(etaDoc, "eta-count").at("actual") == 24);
    CHECK(etaDoc.at("items").size() == 1);

    auto p1p2 = run_cli({"identity", "--q", "5", "--n", "5", "--check", "p1p2"});
    REQUIRE(p1p2.exitCode == 0);
    CHECK(item_named(parse_doc(p1p2), "p1p2").at("actual") == 5);

    // phi is runnable for any q explicitly, psi only for q = 2.
    auto phi = run_cli({"identity", "--q", "2", "--n", "3", "--check", "phi"});
    CHECK(phi.exitCode == 0);
    CHECK(run_cli({"identity", "--q", "3", "--n", "3", "--check", "psi"}).exitCode == 2);

    // The combined run includes phi only for q <= 3 and psi only for q = 2.
    auto all4 = run_cli({"identity", "--q", "4", "--n", "3"});
    REQUIRE(all4.exitCode == 0);
    auto all4Doc = parse_doc(all4);
    CHECK_FALSE(has_item(all4Doc, "phi-map"));
    CHECK_FALSE(has_item(all4Doc, "psi-map"));
    CHECK(has_item(all4Doc, "p1p2"));
}

TEST_CASE("verify-all aggregates every module", "[cli]") {
    auto r = run_cli({"verify-all", "--q", "2", "--n", "3"});
    REQUIRE(r.exitCode == 0);
    auto doc = parse_doc(r);
    CHECK(doc.at("pass") == true);
    REQUIRE(doc.at("items").size() == 38);
    for (const auto& item : doc.at("items")) CHECK(item.at("pass") == true);
    CHECK(item_named(doc, "xn-count").at("actual") == 225);
    CHECK(item_named(doc, "split-consistency").at("actual") == 216);
    CHECK(has_item(doc, "phi-map"));
    CHECK(has_item(doc, "psi-map")); // q = 2 only
    CHECK(item_named(doc, "subcover-1-1").at("actual") == 10);

    // q = 3: same layout minus the psi item.
    auto r3 = run_cli({"verify-all", "--q", "3", "--n", "3"});
    REQUIRE(r3.exitCode == 0);
    auto doc3 = parse_doc(r3);
    CHECK(has_item(doc3, "phi-map"));
    CHECK_FALSE(has_item(doc3, "psi-map"));
}

TEST_CASE("usage and parameter errors exit with code 2", "[cli]") {
    CHECK(run_cli({"count", "--curve", "xn", "--q", "2", "--n", "4"}).exitCode == 2);
    CHECK(run_cli({"count", "--curve", "xn", "--q", "6", "--n", "3"}).exitCode == 2);
    CHECK(run_cli({"count", "--curve", "klein", "--q", "2", "--n", "3"}).exitCode == 2);
    CHECK(run_cli({"count", "--curve", "subcover", "--q", "4", "--n", "5", "--k1", "5"})
              .exitCode == 2);
    CHECK(run_cli({"count", "--q", "2", "--n", "3"}).exitCode == 2); // --curve required
    CHECK(run_cli({"bogus"}).exitCode == 2);
    CHECK(run_cli({}).exitCode == 2); // a subcommand is required

    auto err = run_cli({"count", "--curve", "xn", "--q", "2", "--n", "4"});
    CHECK(err.out.empty());
    CHECK(err.err.find("n_is_even") != std::string::npos);
}

TEST_CASE("the resource guard blocks oversized fields unless forced", "[cli]") {
    auto blocked = run_cli({"count", "--curve", "xn", "--q", "3", "--n", "9"});
    CHECK(blocked.exitCode == 2);
    CHECK(blocked.err.find("resource_limit") != std::string::npos);
    // The guard triggers before any field tables are allocated, so this is fast.
    auto helpStillWorks = run_cli({"count", "--help"});
    CHECK(helpStillWorks.exitCode == 0);
    CHECK(helpStillWorks.out.find("--force") != std::string::npos);
}

TEST_CASE("failure injection flips the first expectation and the exit code",
          "[cli]") {
    auto r = run_cli({"count", "--curve", "xn", "--q", "2", "--n", "3",
                      "--inject-failure"});
    CHECK(r.exitCode == 1);
    auto doc = parse_doc(r);
    CHECK(doc.at("pass") == false);
    const auto& item = doc.at("items")[0];
    CHECK(item.at("expected") == 226); // flipped away from the true value
    CHECK(item.at("actual") == 225);
    CHECK(item.at("pass") == false);
}

TEST_CASE("documents are deterministic across thread counts", "[cli]") {
    auto one = run_cli({"verify-all", "--q", "2", "--n", "3", "--threads", "1"});
    auto two = run_cli({"verify-all", "--q", "2", "--n", "3", "--threads", "2"});
    REQUIRE(one.exitCode == 0);
    REQUIRE(two.exitCode == 0);
    CHECK(masked(parse_doc(one)) == masked(parse_doc(two)));
}

TEST_CASE("the log-bound environment override changes strategy, not results",
          "[cli]") {
    auto before = run_cli({"count", "--curve", "xn", "--q", "2", "--n", "3"});
    setenv("MAXCURVE_LOG_BOUND", "2", 1);
    auto after = run_cli({"count", "--curve", "xn", "--q", "2", "--n", "3"});
    unsetenv("MAXCURVE_LOG_BOUND");
    REQUIRE(before.exitCode == 0);
    REQUIRE(after.exitCode == 0);
    CHECK(masked(parse_doc(before)) == masked(parse_doc(after)));
}

TEST_CASE("help output is exit code zero", "[cli]") {
    CHECK(run_cli({"--help"}).exitCode == 0);
    CHECK(run_cli({"spectrum", "--help"}).exitCode == 0);
}

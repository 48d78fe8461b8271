#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "orehom/suites.hpp"

using namespace orehom;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* kMinimal = R"({
  "algebras": {
    "Q": {"basis": ["1"], "unit": ["1"], "structure": [[["1"]]]}
  },
  "morphisms": {"idQ": {"algebra": "Q", "matrix": [["1"]]}},
  "signatures": {"Qt": {"base": "Q", "alpha": "idQ", "delta": null, "kind": "polynomial"}},
  "suites": ["differentials"],
  "suite_config": {"differentials": {"signatures": ["Qt"]}}
})";

}  // namespace

TEST_CASE("minimal scenario parses and runs") {
    Scenario s = parse_scenario(kMinimal);
    CHECK(s.algebras.size() == 1);
    CHECK(s.signatures.size() == 1);
    s.params.trials = 20;
    Report r = run_scenario(s, "test");
    CHECK(report_passed(r));
    REQUIRE(r.suites.size() == 1);
    CHECK(r.suites[0].name == "differentials");
}

TEST_CASE("undefined references are reported with their path") {
    const char* bad = R"({
      "algebras": {"Q": {"basis": ["1"], "unit": ["1"], "structure": [[["1"]]]}},
      "morphisms": {"phi": {"algebra": "NoSuch", "matrix": [["1"]]}}
    })";
    try {
        parse_scenario(bad);
        FAIL("expected ScenarioError");
    } catch (const ScenarioError& e) {
        std::string msg = e.what();
        CHECK(msg.find("/morphisms/phi") != std::string::npos);
        CHECK(msg.find("NoSuch") != std::string::npos);
    }
}

TEST_CASE("syntax errors are reported") {
    CHECK_THROWS_AS(parse_scenario("{ not json"), ScenarioError);
}

TEST_CASE("invalid derivation is rejected at validation") {
    // delta(eps) = 1 over alpha = id violates the Leibniz identity on the
    // pair (eps, eps).
    const char* bad = R"({
      "algebras": {
        "Qeps": {"basis": ["1", "eps"], "unit": ["1", "0"],
                 "structure": [[["1","0"],["0","1"]],[["0","1"],["0","0"]]]}
      },
      "morphisms": {"id": {"algebra": "Qeps", "matrix": [["1","0"],["0","1"]]}},
      "derivations": {"bad": {"algebra": "Qeps", "alpha": "id",
                               "matrix": [["0","1"],["0","0"]]}}
    })";
    try {
        parse_scenario(bad);
        FAIL("expected ScenarioError");
    } catch (const ScenarioError& e) {
        std::string msg = e.what();
        CHECK(msg.find("/derivations/bad") != std::string::npos);
        CHECK(msg.find("Leibniz") != std::string::npos);
        CHECK(msg.find("basis pair") != std::string::npos);
    }
}

TEST_CASE("laurent kind requires invertible alpha") {
    const char* bad = R"({
      "algebras": {
        "QQ": {"basis": ["a","b"], "unit": ["1","1"],
               "structure": [[["1","0"],["0","0"]],[["0","0"],["0","1"]]]}
      },
      "morphisms": {"proj": {"algebra": "QQ", "matrix": [["1","1"],["0","0"]]}},
      "signatures": {"bad": {"base": "QQ", "alpha": "proj", "delta": null, "kind": "laurent"}}
    })";
    CHECK_THROWS_AS(parse_scenario(bad), ScenarioError);
}

TEST_CASE("catalogue scenario parses and its smallest suites run clean") {
    std::string text = read_file(std::string(OREHOM_SOURCE_DIR) + "/scenarios/catalogue.json");
    Scenario s = parse_scenario(text);
    CHECK(s.algebras.size() == 4);
    CHECK(s.signatures.size() == 5);
    CHECK(s.suites.size() == 9);
    s.params.trials = 25;
    Report r = run_scenario(s, "test", {"twist", "retraction"});
    CHECK(report_passed(r));
}

TEST_CASE("scenario round-trip") {
    std::string text = read_file(std::string(OREHOM_SOURCE_DIR) + "/scenarios/catalogue.json");
    Scenario s = parse_scenario(text);
    std::string once = emit_scenario(s);
    std::string twice = emit_scenario(parse_scenario(once));
    CHECK(once == twice);
}

TEST_CASE("reports are deterministic modulo timing") {
    std::string text = read_file(std::string(OREHOM_SOURCE_DIR) + "/scenarios/catalogue.json");
    Scenario s = parse_scenario(text);
    s.params.trials = 30;
    auto strip_timing = [](const Report& r) {
        auto doc = nlohmann::json::parse(emit_report_json(r));
        doc.erase("timing_ms");
        return doc.dump();
    };
    Report a = run_scenario(s, "h", {"ore-axioms", "crossed"});
    Report b = run_scenario(s, "h", {"ore-axioms", "crossed"});
    CHECK(strip_timing(a) == strip_timing(b));

    // a different seed changes the sampled cases but not the verdict
    Scenario s2 = parse_scenario(text);
    s2.params.trials = 30;
    s2.params.seed = 7;
    Report c = run_scenario(s2, "h", {"ore-axioms"});
    CHECK(report_passed(c));
}

TEST_CASE("json report carries the documented fields") {
    Scenario s = parse_scenario(kMinimal);
    s.params.trials = 10;
    Report r = run_scenario(s, "fnv1a64:0000000000000000");
    auto doc = nlohmann::json::parse(emit_report_json(r));
    CHECK(doc.contains("engine"));
    CHECK(doc.contains("scenario_hash"));
    CHECK(doc.contains("seed"));
    CHECK(doc.contains("suites"));
    CHECK(doc.contains("summary"));
    CHECK(doc.contains("timing_ms"));
    CHECK(doc["summary"]["verdict"] == "pass");
    for (const auto& suite : doc["suites"]) {
        CHECK(suite.contains("name"));
        for (const auto& c : suite["cases"]) {
            CHECK(c.contains("key"));
            CHECK(c.contains("pass"));
        }
    }
}

TEST_CASE("rng streams are reproducible per seed") {
    Rng a(1), b(1);
    for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
    Rng c(2);
    CHECK(Rng(2).next() == c.next());
    CHECK(Rng(1).next() != Rng(2).next());
}

#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "orehom/bimodule.hpp"
#include "orehom/topology.hpp"

namespace orehom {

struct ScenarioError : std::runtime_error {
    explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

struct Params {
    long max_degree = 4;
    std::size_t max_k = 6;
    int trials = 200;
    std::uint64_t seed = 1;
    std::vector<Rat> rho_grid = {Rat(1, 2), Rat(1), Rat(2)};
    std::vector<long> k_grid = {0, 1, 2, 3};
    long truncation_degree = 12;
    long support_radius = 8;
    long bimodule_window = 4;
};

struct Scenario {
    Params params;
    std::map<std::string, AlgebraPtr> algebras;
    std::map<std::string, AlgebraMorphism> morphisms;
    std::map<std::string, SigmaDerivation> derivations;
    std::map<std::string, SignaturePtr> signatures;
    std::map<std::string, ModulePtr> modules;
    std::map<std::string, OreModule> ore_modules;
    std::map<std::string, Seminorm> seminorms;
    std::map<std::string, std::shared_ptr<TemperedAction>> actions;
    std::vector<std::string> suites;
    nlohmann::json suite_config;
};

// Parses and validates: every referenced name must resolve, every algebra,
// morphism, derivation and module invariant must hold. Throws ScenarioError
// with the offending JSON path.
Scenario parse_scenario(const std::string& text);

// Canonical pretty form; parse(emit(s)) emits the same text.
std::string emit_scenario(const Scenario& s);

struct CaseResult {
    std::string key;
    bool pass = false;
    std::string detail;
};

struct SuiteResult {
    std::string name;
    std::vector<CaseResult> cases;

    std::size_t passed() const;
    std::size_t failed() const;
};

struct Report {
    std::string engine;
    std::string scenario_hash;
    std::uint64_t seed = 0;
    std::vector<SuiteResult> suites;
    long timing_ms = 0;
};

bool report_passed(const Report& r);
std::string emit_report_json(const Report& r);
std::string emit_report_text(const Report& r);

std::uint64_t fnv1a64(const std::string& data);

}  // namespace orehom

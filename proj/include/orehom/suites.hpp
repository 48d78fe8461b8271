#pragma once

#include "orehom/scenario.hpp"

namespace orehom {

// Runs the scenario's suites (optionally restricted to `only`) and collects
// the report. Case lists are sorted by key so concurrency or map ordering
// never changes the output.
Report run_scenario(const Scenario& s, const std::string& scenario_hash,
                    const std::vector<std::string>& only = {});

}  // namespace orehom

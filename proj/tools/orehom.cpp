#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "orehom/suites.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw orehom::ScenarioError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

char hex_digit(std::uint64_t v) { return "0123456789abcdef"[v & 0xf]; }

std::string hash_string(std::uint64_t h) {
    std::string out = "fnv1a64:";
    for (int shift = 60; shift >= 0; shift -= 4) out.push_back(hex_digit(h >> shift));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"orehom: exact verification engine for skew polynomial rings, their bimodules "
                 "of differential 1-forms, homological dimension bounds and seminorm estimates"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run the suites requested by a scenario");
    std::string scenario_path;
    std::vector<std::string> only_suites;
    std::string format = "text";
    std::string out_path;
    long max_degree = -1, trials = -1;
    long long max_k = -1, seed = -1;
    run->add_option("scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("--suite", only_suites, "restrict to the named suite (repeatable)");
    run->add_option("--max-degree", max_degree, "override params.max_degree");
    run->add_option("--max-k", max_k, "override params.max_k");
    run->add_option("--trials", trials, "override params.trials");
    run->add_option("--seed", seed, "override params.seed");
    run->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    run->add_option("--out", out_path, "write the report to a file instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        std::string text = read_file(scenario_path);
        orehom::Scenario scenario = orehom::parse_scenario(text);
        if (max_degree >= 0) scenario.params.max_degree = max_degree;
        if (max_k >= 0) scenario.params.max_k = static_cast<std::size_t>(max_k);
        if (trials >= 0) scenario.params.trials = static_cast<int>(trials);
        if (seed >= 0) scenario.params.seed = static_cast<std::uint64_t>(seed);

        orehom::Report report =
            orehom::run_scenario(scenario, hash_string(orehom::fnv1a64(text)), only_suites);
        std::string rendered = format == "json" ? orehom::emit_report_json(report)
                                                : orehom::emit_report_text(report);
        if (out_path.empty()) {
            std::cout << rendered;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw orehom::ScenarioError("cannot write '" + out_path + "'");
            out << rendered;
        }
        return orehom::report_passed(report) ? 0 : 1;
    } catch (const orehom::ScenarioError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

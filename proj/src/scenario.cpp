#include "orehom/scenario.hpp"

#include <algorithm>
#include <sstream>

namespace orehom {

using nlohmann::json;

namespace {

[[noreturn]] void fail_at(const std::string& path, const std::string& msg) {
    throw ScenarioError("at " + path + ": " + msg);
}

Rat parse_rat(const json& j, const std::string& path) {
    try {
        if (j.is_string()) return rat_from_string(j.get<std::string>());
        if (j.is_number_integer()) return Rat(j.get<long>());
    } catch (const std::exception& e) {
        fail_at(path, e.what());
    }
    fail_at(path, "expected a rational encoded as \"p/q\" or an integer");
}

Matrix parse_matrix(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail_at(path, "expected a non-empty matrix");
    std::size_t rows = j.size();
    std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) fail_at(path, "ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c)
            m.at(i, c) = parse_rat(j[i][c], path + "[" + std::to_string(i) + "][" + std::to_string(c) + "]");
    }
    return m;
}

Vec parse_vec(const json& j, const std::string& path) {
    if (!j.is_array()) fail_at(path, "expected an array of rationals");
    Vec v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(parse_rat(j[i], path + "[" + std::to_string(i) + "]"));
    return v;
}

template <typename T>
const T& resolve(const std::map<std::string, T>& table, const std::string& name,
                 const std::string& path) {
    auto it = table.find(name);
    if (it == table.end()) fail_at(path, "unknown name '" + name + "'");
    return it->second;
}

json rat_json(const Rat& r) { return rat_to_string(r); }

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rat_json(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json vec_json(const Vec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(rat_json(x));
    return a;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioError(std::string("syntax error: ") + e.what());
    }
    Scenario s;

    if (doc.contains("params")) {
        const json& p = doc["params"];
        if (p.contains("max_degree")) s.params.max_degree = p["max_degree"].get<long>();
        if (p.contains("max_k")) s.params.max_k = p["max_k"].get<std::size_t>();
        if (p.contains("trials")) s.params.trials = p["trials"].get<int>();
        if (p.contains("seed")) s.params.seed = p["seed"].get<std::uint64_t>();
        if (p.contains("truncation_degree"))
            s.params.truncation_degree = p["truncation_degree"].get<long>();
        if (p.contains("support_radius")) s.params.support_radius = p["support_radius"].get<long>();
        if (p.contains("bimodule_window")) s.params.bimodule_window = p["bimodule_window"].get<long>();
        if (p.contains("rho_grid")) {
            s.params.rho_grid.clear();
            for (std::size_t i = 0; i < p["rho_grid"].size(); ++i)
                s.params.rho_grid.push_back(
                    parse_rat(p["rho_grid"][i], "/params/rho_grid[" + std::to_string(i) + "]"));
        }
        if (p.contains("k_grid")) s.params.k_grid = p["k_grid"].get<std::vector<long>>();
    }

    if (doc.contains("algebras"))
        for (const auto& [name, spec] : doc["algebras"].items()) {
            std::string path = "/algebras/" + name;
            FDAlgebra a;
            a.name = name;
            if (!spec.contains("basis")) fail_at(path, "missing basis");
            a.basis_labels = spec["basis"].get<std::vector<std::string>>();
            a.dim = a.basis_labels.size();
            a.unit = parse_vec(spec.at("unit"), path + "/unit");
            if (a.unit.size() != a.dim) fail_at(path + "/unit", "length mismatch");
            const json& st = spec.at("structure");
            if (!st.is_array() || st.size() != a.dim) fail_at(path + "/structure", "shape mismatch");
            a.structure.assign(a.dim * a.dim * a.dim, Rat(0));
            for (std::size_t i = 0; i < a.dim; ++i) {
                if (!st[i].is_array() || st[i].size() != a.dim)
                    fail_at(path + "/structure", "shape mismatch");
                for (std::size_t jj = 0; jj < a.dim; ++jj) {
                    Vec prod = parse_vec(st[i][jj], path + "/structure[" + std::to_string(i) + "][" +
                                                        std::to_string(jj) + "]");
                    if (prod.size() != a.dim) fail_at(path + "/structure", "product length mismatch");
                    for (std::size_t k = 0; k < a.dim; ++k) a.c(i, jj, k) = prod[k];
                }
            }
            auto rep = check_algebra(a);
            if (!rep.ok) fail_at(path, rep.failures.front());
            s.algebras.emplace(name, std::make_shared<FDAlgebra>(std::move(a)));
        }

    if (doc.contains("morphisms"))
        for (const auto& [name, spec] : doc["morphisms"].items()) {
            std::string path = "/morphisms/" + name;
            auto alg = resolve(s.algebras, spec.at("algebra").get<std::string>(), path + "/algebra");
            AlgebraMorphism phi{alg, alg, parse_matrix(spec.at("matrix"), path + "/matrix")};
            auto rep = check_morphism(phi);
            if (!rep.ok) fail_at(path, rep.failures.front());
            s.morphisms.emplace(name, std::move(phi));
        }

    if (doc.contains("derivations"))
        for (const auto& [name, spec] : doc["derivations"].items()) {
            std::string path = "/derivations/" + name;
            auto alg = resolve(s.algebras, spec.at("algebra").get<std::string>(), path + "/algebra");
            auto alpha = resolve(s.morphisms, spec.at("alpha").get<std::string>(), path + "/alpha");
            DerivationFlavor flavor = DerivationFlavor::standard;
            if (spec.contains("flavor")) {
                std::string f = spec["flavor"].get<std::string>();
                if (f == "standard")
                    flavor = DerivationFlavor::standard;
                else if (f == "opposite")
                    flavor = DerivationFlavor::opposite;
                else
                    fail_at(path + "/flavor", "expected 'standard' or 'opposite'");
            }
            SigmaDerivation d{alg, alpha, parse_matrix(spec.at("matrix"), path + "/matrix"), flavor};
            auto rep = check_alpha_derivation(d);
            if (!rep.ok)
                fail_at(path, rep.failures.front() +
                                  " (the Leibniz expansion differs on that basis pair)");
            s.derivations.emplace(name, std::move(d));
        }

    if (doc.contains("signatures"))
        for (const auto& [name, spec] : doc["signatures"].items()) {
            std::string path = "/signatures/" + name;
            auto base = resolve(s.algebras, spec.at("base").get<std::string>(), path + "/base");
            auto alpha = resolve(s.morphisms, spec.at("alpha").get<std::string>(), path + "/alpha");
            std::optional<SigmaDerivation> delta;
            if (spec.contains("delta") && !spec["delta"].is_null())
                delta = resolve(s.derivations, spec["delta"].get<std::string>(), path + "/delta");
            std::string kind_s = spec.at("kind").get<std::string>();
            OreKind kind;
            if (kind_s == "polynomial")
                kind = OreKind::polynomial;
            else if (kind_s == "laurent")
                kind = OreKind::laurent;
            else if (kind_s == "opposite-polynomial")
                kind = OreKind::opposite_polynomial;
            else if (kind_s == "opposite-laurent")
                kind = OreKind::opposite_laurent;
            else
                fail_at(path + "/kind", "unknown kind '" + kind_s + "'");
            if (alpha.source != base) fail_at(path, "alpha is over a different algebra");
            if (delta && delta->algebra != base) fail_at(path, "delta is over a different algebra");
            try {
                s.signatures.emplace(name, make_signature(base, alpha, delta, kind, name));
            } catch (const std::invalid_argument& e) {
                fail_at(path, e.what());
            }
        }

    if (doc.contains("modules"))
        for (const auto& [name, spec] : doc["modules"].items()) {
            std::string path = "/modules/" + name;
            auto alg = resolve(s.algebras, spec.at("algebra").get<std::string>(), path + "/algebra");
            RightModule m;
            if (spec.contains("regular") && spec["regular"].get<bool>()) {
                m = regular_module(alg);
                m.name = name;
            } else {
                m.algebra = alg;
                m.name = name;
                m.dim = spec.at("dim").get<std::size_t>();
                const json& act = spec.at("action");
                if (act.size() != alg->dim) fail_at(path + "/action", "one matrix per basis element");
                for (std::size_t i = 0; i < alg->dim; ++i) {
                    Matrix mi = parse_matrix(act[i], path + "/action[" + std::to_string(i) + "]");
                    if (mi.rows() != m.dim || mi.cols() != m.dim)
                        fail_at(path + "/action", "matrix shape mismatch");
                    m.action.push_back(std::move(mi));
                }
            }
            auto rep = check_right_module(m);
            if (!rep.ok) fail_at(path, rep.failures.front());
            s.modules.emplace(name, std::make_shared<RightModule>(std::move(m)));
        }

    if (doc.contains("ore_modules"))
        for (const auto& [name, spec] : doc["ore_modules"].items()) {
            std::string path = "/ore_modules/" + name;
            auto sig = resolve(s.signatures, spec.at("signature").get<std::string>(), path + "/signature");
            auto base = resolve(s.modules, spec.at("base").get<std::string>(), path + "/base");
            OreModule om{sig, base, parse_matrix(spec.at("t"), path + "/t"), std::nullopt, name};
            if (spec.contains("t_inverse"))
                om.t_inv = parse_matrix(spec["t_inverse"], path + "/t_inverse");
            else if (is_laurent(sig->kind())) {
                auto inv = inverse(om.t_act);
                if (!inv) fail_at(path, "t-action is not invertible for a Laurent signature");
                om.t_inv = std::move(*inv);
            }
            auto rep = check_ore_module(om);
            if (!rep.ok) fail_at(path, rep.failures.front());
            s.ore_modules.emplace(name, std::move(om));
        }

    if (doc.contains("seminorms"))
        for (const auto& [name, spec] : doc["seminorms"].items()) {
            std::string path = "/seminorms/" + name;
            auto alg = resolve(s.algebras, spec.at("algebra").get<std::string>(), path + "/algebra");
            Seminorm sn{alg, parse_vec(spec.at("weights"), path + "/weights"), name,
                        spec.contains("submultiplicative") && spec["submultiplicative"].get<bool>()};
            if (sn.weights.size() != alg->dim) fail_at(path + "/weights", "length mismatch");
            for (const auto& w : sn.weights)
                if (w <= 0) fail_at(path + "/weights", "weights must be positive");
            s.seminorms.emplace(name, std::move(sn));
        }

    if (doc.contains("actions"))
        for (const auto& [name, spec] : doc["actions"].items()) {
            std::string path = "/actions/" + name;
            auto alg = resolve(s.algebras, spec.at("algebra").get<std::string>(), path + "/algebra");
            auto gen = resolve(s.morphisms, spec.at("generator").get<std::string>(), path + "/generator");
            std::vector<Rat> poly;
            for (std::size_t i = 0; i < spec.at("poly").size(); ++i)
                poly.push_back(parse_rat(spec["poly"][i], path + "/poly[" + std::to_string(i) + "]"));
            long range = spec.contains("check_range") ? spec["check_range"].get<long>() : 8;
            try {
                s.actions.emplace(name,
                                  std::make_shared<TemperedAction>(alg, gen, std::move(poly), range));
            } catch (const std::invalid_argument& e) {
                fail_at(path, e.what());
            }
        }

    if (doc.contains("suites")) s.suites = doc["suites"].get<std::vector<std::string>>();
    if (doc.contains("suite_config")) s.suite_config = doc["suite_config"];
    return s;
}

std::string emit_scenario(const Scenario& s) {
    json doc;
    json p;
    p["max_degree"] = s.params.max_degree;
    p["max_k"] = s.params.max_k;
    p["trials"] = s.params.trials;
    p["seed"] = s.params.seed;
    json rho = json::array();
    for (const auto& r : s.params.rho_grid) rho.push_back(rat_json(r));
    p["rho_grid"] = rho;
    p["k_grid"] = s.params.k_grid;
    p["truncation_degree"] = s.params.truncation_degree;
    p["support_radius"] = s.params.support_radius;
    p["bimodule_window"] = s.params.bimodule_window;
    doc["params"] = p;

    json algebras;
    for (const auto& [name, a] : s.algebras) {
        json spec;
        spec["basis"] = a->basis_labels;
        spec["unit"] = vec_json(a->unit);
        json st = json::array();
        for (std::size_t i = 0; i < a->dim; ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < a->dim; ++j) {
                Vec prod(a->dim);
                for (std::size_t k = 0; k < a->dim; ++k) prod[k] = a->c(i, j, k);
                row.push_back(vec_json(prod));
            }
            st.push_back(row);
        }
        spec["structure"] = st;
        algebras[name] = spec;
    }
    doc["algebras"] = algebras;

    auto find_algebra_name = [&](const AlgebraPtr& a) {
        for (const auto& [name, alg] : s.algebras)
            if (alg == a) return name;
        return std::string();
    };
    auto find_morphism_name = [&](const AlgebraMorphism& m) {
        for (const auto& [name, phi] : s.morphisms)
            if (phi.source == m.source && phi.matrix == m.matrix) return name;
        return std::string();
    };
    auto find_derivation_name = [&](const SigmaDerivation& d) {
        for (const auto& [name, dd] : s.derivations)
            if (dd.algebra == d.algebra && dd.matrix == d.matrix && dd.flavor == d.flavor)
                return name;
        return std::string();
    };
    auto find_module_name = [&](const ModulePtr& m) {
        for (const auto& [name, mod] : s.modules)
            if (mod == m) return name;
        return std::string();
    };

    json morphisms;
    for (const auto& [name, phi] : s.morphisms) {
        json spec;
        spec["algebra"] = find_algebra_name(phi.source);
        spec["matrix"] = matrix_json(phi.matrix);
        morphisms[name] = spec;
    }
    if (!s.morphisms.empty()) doc["morphisms"] = morphisms;

    json derivations;
    for (const auto& [name, d] : s.derivations) {
        json spec;
        spec["algebra"] = find_algebra_name(d.algebra);
        spec["alpha"] = find_morphism_name(d.alpha);
        spec["flavor"] = d.flavor == DerivationFlavor::standard ? "standard" : "opposite";
        spec["matrix"] = matrix_json(d.matrix);
        derivations[name] = spec;
    }
    if (!s.derivations.empty()) doc["derivations"] = derivations;

    json signatures;
    for (const auto& [name, sig] : s.signatures) {
        json spec;
        spec["base"] = find_algebra_name(sig->base());
        spec["alpha"] = find_morphism_name(sig->alpha());
        if (sig->delta())
            spec["delta"] = find_derivation_name(*sig->delta());
        else
            spec["delta"] = nullptr;
        switch (sig->kind()) {
            case OreKind::polynomial: spec["kind"] = "polynomial"; break;
            case OreKind::laurent: spec["kind"] = "laurent"; break;
            case OreKind::opposite_polynomial: spec["kind"] = "opposite-polynomial"; break;
            case OreKind::opposite_laurent: spec["kind"] = "opposite-laurent"; break;
        }
        signatures[name] = spec;
    }
    if (!s.signatures.empty()) doc["signatures"] = signatures;

    json modules;
    for (const auto& [name, m] : s.modules) {
        json spec;
        spec["algebra"] = find_algebra_name(m->algebra);
        spec["dim"] = m->dim;
        json act = json::array();
        for (const auto& mat : m->action) act.push_back(matrix_json(mat));
        spec["action"] = act;
        modules[name] = spec;
    }
    if (!s.modules.empty()) doc["modules"] = modules;

    json ore_modules;
    for (const auto& [name, om] : s.ore_modules) {
        json spec;
        for (const auto& [sname, sig] : s.signatures)
            if (sig == om.sig) spec["signature"] = sname;
        spec["base"] = find_module_name(om.base);
        spec["t"] = matrix_json(om.t_act);
        if (om.t_inv) spec["t_inverse"] = matrix_json(*om.t_inv);
        ore_modules[name] = spec;
    }
    if (!s.ore_modules.empty()) doc["ore_modules"] = ore_modules;

    json seminorms;
    for (const auto& [name, sn] : s.seminorms) {
        json spec;
        spec["algebra"] = find_algebra_name(sn.algebra);
        spec["weights"] = vec_json(sn.weights);
        spec["submultiplicative"] = sn.submultiplicative;
        seminorms[name] = spec;
    }
    if (!s.seminorms.empty()) doc["seminorms"] = seminorms;

    json actions;
    for (const auto& [name, act] : s.actions) {
        json spec;
        spec["algebra"] = find_algebra_name(act->algebra);
        spec["generator"] = find_morphism_name(act->alpha1);
        json poly = json::array();
        for (const auto& c : act->poly) poly.push_back(rat_json(c));
        spec["poly"] = poly;
        spec["check_range"] = act->check_range;
        actions[name] = spec;
    }
    if (!s.actions.empty()) doc["actions"] = actions;

    doc["suites"] = s.suites;
    if (!s.suite_config.is_null()) doc["suite_config"] = s.suite_config;
    return doc.dump(2) + "\n";
}

std::size_t SuiteResult::passed() const {
    std::size_t n = 0;
    for (const auto& c : cases)
        if (c.pass) ++n;
    return n;
}

std::size_t SuiteResult::failed() const { return cases.size() - passed(); }

bool report_passed(const Report& r) {
    for (const auto& s : r.suites)
        if (s.failed() > 0) return false;
    return true;
}

std::string emit_report_json(const Report& r) {
    json doc;
    doc["engine"] = r.engine;
    doc["scenario_hash"] = r.scenario_hash;
    doc["seed"] = r.seed;
    json suites = json::array();
    std::size_t total = 0, passed = 0;
    for (const auto& s : r.suites) {
        json js;
        js["name"] = s.name;
        json cases = json::array();
        for (const auto& c : s.cases) {
            json jc;
            jc["key"] = c.key;
            jc["pass"] = c.pass;
            if (!c.detail.empty()) jc["detail"] = c.detail;
            cases.push_back(jc);
        }
        js["cases"] = cases;
        js["passed"] = s.passed();
        js["failed"] = s.failed();
        suites.push_back(js);
        total += s.cases.size();
        passed += s.passed();
    }
    doc["suites"] = suites;
    doc["summary"] = {{"total", total},
                      {"passed", passed},
                      {"failed", total - passed},
                      {"verdict", total == passed ? "pass" : "fail"}};
    doc["timing_ms"] = r.timing_ms;
    return doc.dump(2) + "\n";
}

std::string emit_report_text(const Report& r) {
    std::ostringstream out;
    out << r.engine << "  scenario " << r.scenario_hash << "  seed " << r.seed << "\n";
    std::size_t total = 0, passed = 0;
    for (const auto& s : r.suites) {
        out << "suite " << s.name << ": " << s.passed() << "/" << s.cases.size() << " passed\n";
        for (const auto& c : s.cases)
            if (!c.pass)
                out << "  FAIL " << c.key << (c.detail.empty() ? "" : "  [" + c.detail + "]") << "\n";
        total += s.cases.size();
        passed += s.passed();
    }
    out << (total == passed ? "PASS" : "FAIL") << " (" << passed << "/" << total << " cases, "
        << r.timing_ms << " ms)\n";
    return out.str();
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace orehom

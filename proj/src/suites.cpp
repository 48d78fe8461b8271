#include "orehom/suites.hpp"

#include <algorithm>
#include <chrono>

namespace orehom {

using nlohmann::json;

namespace {

constexpr const char* kEngine = "orehom 0.1.0";

Rng suite_rng(const Scenario& s, const std::string& suite) {
    return Rng(s.params.seed ^ fnv1a64(suite));
}

Vec random_vec(Rng& rng, std::size_t dim) {
    Vec v(dim);
    for (auto& e : v) e = rng.small_rational();
    return v;
}

OrePoly random_poly(Rng& rng, const SignaturePtr& sig, long max_degree) {
    OrePoly p = ore_zero(sig);
    long lo = is_laurent(sig->kind()) ? -max_degree : 0;
    for (long k = lo; k <= max_degree; ++k) {
        if (rng.below(3) == 0) continue;
        p = p + ore_monomial(sig, random_vec(rng, sig->base()->dim), k);
    }
    return p;
}

TensorElement random_tensor(Rng& rng, const SignaturePtr& sig, Twist twist, long max_degree) {
    TensorElement x = tensor_zero(sig, twist);
    long lo = is_laurent(sig->kind()) ? -max_degree : 0;
    for (long j = lo; j <= max_degree; ++j) {
        if (rng.below(2) == 0) continue;
        std::vector<std::pair<OrePoly, OrePoly>> pair{
            {random_poly(rng, sig, max_degree), t_power(sig, j)}};
        x = x + tensor_normalize(sig, twist, pair);
    }
    return x;
}

CrossedElement random_crossed(Rng& rng, const AlgebraPtr& base, long radius) {
    CrossedElement f = crossed_zero(base);
    for (long n = -radius; n <= radius; ++n) {
        if (rng.below(2) == 0) continue;
        f = crossed_add(f, crossed_term(base, random_vec(rng, base->dim), n));
    }
    return f;
}

struct CaseSink {
    std::vector<CaseResult>& cases;
    void add(std::string key, bool pass, std::string detail = "") {
        cases.push_back({std::move(key), pass, std::move(detail)});
    }
    // Aggregated property over many samples: pass iff no failure; detail
    // carries the sample count or the first counterexample index.
    void bulk(std::string key, int total, int first_failure, std::string witness = "") {
        if (first_failure < 0) {
            add(std::move(key), true, std::to_string(total) + " samples");
        } else {
            add(std::move(key), false,
                "failed at sample " + std::to_string(first_failure) +
                    (witness.empty() ? "" : ": " + witness));
        }
    }
};

const json& suite_cfg(const Scenario& s, const std::string& name) {
    static const json empty;
    if (s.suite_config.contains(name)) return s.suite_config.at(name);
    return empty;
}

template <typename T>
const T& named(const std::map<std::string, T>& table, const std::string& name,
               const std::string& ctx) {
    auto it = table.find(name);
    if (it == table.end()) throw ScenarioError("suite config references unknown name '" + name +
                                               "' in " + ctx);
    return it->second;
}

SuiteResult suite_ore_axioms(const Scenario& s) {
    SuiteResult res{"ore-axioms", {}};
    CaseSink sink{res.cases};
    Rng rng = suite_rng(s, res.name);
    const json& cfg = suite_cfg(s, res.name);
    for (const auto& jname : cfg.value("signatures", json::array())) {
        std::string name = jname.get<std::string>();
        const auto& sig = named(s.signatures, name, "ore-axioms");
        int bad_assoc = -1, bad_distl = -1, bad_distr = -1, bad_unit = -1;
        for (int t = 0; t < s.params.trials; ++t) {
            auto f = random_poly(rng, sig, s.params.max_degree);
            auto g = random_poly(rng, sig, s.params.max_degree);
            auto h = random_poly(rng, sig, s.params.max_degree);
            if (bad_assoc < 0 && !(ore_mul(ore_mul(f, g), h) == ore_mul(f, ore_mul(g, h))))
                bad_assoc = t;
            if (bad_distl < 0 && !(ore_mul(f + g, h) == ore_mul(f, h) + ore_mul(g, h)))
                bad_distl = t;
            if (bad_distr < 0 && !(ore_mul(h, f + g) == ore_mul(h, f) + ore_mul(h, g)))
                bad_distr = t;
            if (bad_unit < 0 &&
                !(ore_mul(ore_one(sig), f) == f && ore_mul(f, ore_one(sig)) == f))
                bad_unit = t;
        }
        sink.bulk(name + "/associativity", s.params.trials, bad_assoc);
        sink.bulk(name + "/distributivity-left", s.params.trials, bad_distl);
        sink.bulk(name + "/distributivity-right", s.params.trials, bad_distr);
        sink.bulk(name + "/unit", s.params.trials, bad_unit);
        if (sig->delta_is_zero()) {
            int bad = -1;
            for (int t = 0; t < s.params.trials && bad < 0; ++t) {
                long lo = is_laurent(sig->kind()) ? -s.params.max_degree : 0;
                long i = lo + static_cast<long>(rng.below(s.params.max_degree - lo + 1));
                long j = lo + static_cast<long>(rng.below(s.params.max_degree - lo + 1));
                auto prod = ore_mul(ore_monomial(sig, random_vec(rng, sig->base()->dim), i),
                                    ore_monomial(sig, random_vec(rng, sig->base()->dim), j));
                for (const auto& [k, v] : prod.coeffs)
                    if (k != i + j) bad = t;
            }
            sink.bulk(name + "/degree-grading", s.params.trials, bad);
        }
        if (is_laurent(sig->kind())) {
            bool ok = true;
            for (long m = -4; m <= 4 && ok; ++m)
                for (long n = -4; n <= 4 && ok; ++n)
                    ok = ore_mul(t_power(sig, m), t_power(sig, n)) == t_power(sig, m + n);
            sink.add(name + "/laurent-cancellation", ok, "t^m t^n for -4..4");
        }
    }
    return res;
}

SuiteResult suite_iso3(const Scenario& s) {
    SuiteResult res{"iso3", {}};
    CaseSink sink{res.cases};
    Rng rng = suite_rng(s, res.name);
    const json& cfg = suite_cfg(s, res.name);
    for (const auto& jname : cfg.value("signatures", json::array())) {
        std::string name = jname.get<std::string>();
        const auto& sig = named(s.signatures, name, "iso3");
        if (!sig->alpha_invertible()) {
            sink.add(name + "/invertible", false, "alpha is not invertible");
            continue;
        }
        sink.add(name + "/unital",
                 to_opposite(ore_one(sig)) == ore_one(opposite_signature(sig)));
        int bad_mult = -1, bad_bij = -1;
        for (int t = 0; t < s.params.trials; ++t) {
            auto f = random_poly(rng, sig, s.params.max_degree);
            auto g = random_poly(rng, sig, s.params.max_degree);
            if (bad_mult < 0 &&
                !(to_opposite(ore_mul(f, g)) == ore_mul(to_opposite(f), to_opposite(g))))
                bad_mult = t;
            if (bad_bij < 0 && !(from_opposite(to_opposite(f), sig) == f)) bad_bij = t;
        }
        sink.bulk(name + "/multiplicative", s.params.trials, bad_mult);
        sink.bulk(name + "/bijective-on-slices", s.params.trials, bad_bij);
    }
    return res;
}

SuiteResult suite_differentials(const Scenario& s) {
    SuiteResult res{"differentials", {}};
    CaseSink sink{res.cases};
    Rng rng = suite_rng(s, res.name);
    const json& cfg = suite_cfg(s, res.name);
    const int samples = std::max(100, s.params.trials);
    for (const auto& jname : cfg.value("signatures", json::array())) {
        std::string name = jname.get<std::string>();
        const auto& sig = named(s.signatures, name, "differentials");

        int bad = -1;
        for (int t = 0; t < samples && bad < 0; ++t)
            if (!leibniz_check(random_poly(rng, sig, s.params.max_degree),
                               random_poly(rng, sig, s.params.max_degree))
                     .ok)
                bad = t;
        sink.bulk(name + "/leibniz", samples, bad);

        bool rc = true;
        for (long n = 0; n <= 6 && rc; ++n)
            for (std::size_t r = 0; r < sig->base()->dim && rc; ++r) {
                auto rconst = ore_const(sig, sig->base()->basis_vec(r));
                rc = d_poly(ore_mul(t_power(sig, n), rconst)) ==
                     right_act(d_poly(t_power(sig, n)), rconst);
            }
        sink.add(name + "/right-coefficient", rc, "D(t^n r) = D(t^n) r, n <= 6");

        bool tel = true;
        long lo = is_laurent(sig->kind()) ? -4 : 0;
        for (long n = lo; n <= 6 && tel; ++n) {
            auto lhs = map_j(d_poly(t_power(sig, n)));
            auto rhs = tensor_normalize(
                sig, Twist::none,
                {{ore_one(sig), t_power(sig, n)}, {-t_power(sig, n), ore_one(sig)}});
            tel = lhs == rhs;
        }
        sink.add(name + "/telescoping", tel, "j(D(t^n)) = 1(x)t^n - t^n(x)1");

        if (is_laurent(sig->kind())) {
            bool mixed = true;
            for (long m = -4; m <= 4 && mixed; ++m)
                for (long n = -4; n <= 4 && mixed; ++n)
                    mixed = leibniz_check(t_power(sig, m), t_power(sig, n)).ok;
            sink.add(name + "/laurent-mixed-signs", mixed, "all cases -4..4");
        }

        int bad_mj = -1, bad_rj = -1, bad_ms = -1, bad_tel = -1, bad_nf = -1;
        for (int t = 0; t < samples; ++t) {
            auto w = random_tensor(rng, sig, Twist::alpha, s.params.max_degree);
            if (bad_mj < 0 && !map_m(map_j(w)).is_zero()) bad_mj = t;
            if (bad_rj < 0 && !(retraction_rho(map_j(w)) == w)) bad_rj = t;
            auto a = random_poly(rng, sig, s.params.max_degree);
            if (bad_ms < 0 && !(map_m(section_sigma(a)) == a)) bad_ms = t;
            auto x = random_tensor(rng, sig, Twist::none, s.params.max_degree);
            if (bad_tel < 0 && !(map_j(retraction_rho(x)) + section_sigma(map_m(x)) == x))
                bad_tel = t;
            if (bad_nf < 0) {
                std::vector<std::pair<OrePoly, OrePoly>> pairs;
                for (const auto& [j, f] : x.coeffs) pairs.emplace_back(f, t_power(sig, j));
                if (!(tensor_normalize(sig, Twist::none, pairs) == x)) bad_nf = t;
            }
        }
        sink.bulk(name + "/exactness-m-j", samples, bad_mj);
        sink.bulk(name + "/exactness-rho-j", samples, bad_rj);
        sink.bulk(name + "/exactness-m-sigma", samples, bad_ms);
        sink.bulk(name + "/exactness-j-rho-telescope", samples, bad_tel);
        sink.bulk(name + "/normal-form-idempotent", samples, bad_nf);
    }
    return res;
}

DhValue expected_dh(const json& j) {
    if (j.is_number_integer()) return DhValue{j.get<std::size_t>(), false};
    std::string t = j.get<std::string>();
    const std::string prefix = "at-least-";
    if (t.rfind(prefix, 0) == 0)
        return DhValue{static_cast<std::size_t>(std::stoul(t.substr(prefix.size()))), true};
    throw ScenarioError("bad dimension literal '" + t + "'");
}

SuiteResult suite_bounds(const Scenario& s) {
    SuiteResult res{"bounds", {}};
    CaseSink sink{res.cases};
    const json& cfg = suite_cfg(s, res.name);
    const std::size_t max_k = s.params.max_k;

    for (const auto& b : cfg.value("baselines", json::array())) {
        std::string aname = b.at("algebra").get<std::string>();
        const auto& alg = named(s.algebras, aname, "bounds/baselines");
        if (b.contains("gldim")) {
            DhValue want = expected_dh(b["gldim"]);
            DhValue got = gldim(alg, max_k);
            sink.add("baseline/" + aname + "/gldim", got == want,
                     "got " + dh_to_string(got) + ", want " + dh_to_string(want));
        }
        if (b.contains("bidim")) {
            DhValue want = expected_dh(b["bidim"]);
            DhValue got = bidim(alg, max_k);
            sink.add("baseline/" + aname + "/bidim", got == want,
                     "got " + dh_to_string(got) + ", want " + dh_to_string(want));
        }
    }

    if (cfg.contains("resolution_independence"))
        for (const auto& jname : cfg["resolution_independence"].value("algebras", json::array())) {
            std::string aname = jname.get<std::string>();
            const auto& alg = named(s.algebras, aname, "bounds/resolution_independence");
            std::vector<ModulePtr> mods;
            for (auto& simple : simple_modules(alg))
                mods.push_back(std::make_shared<RightModule>(std::move(simple)));
            mods.push_back(std::make_shared<RightModule>(regular_module(alg)));
            bool ok = true;
            for (const auto& m : mods)
                for (const auto& n : mods)
                    if (!(ext_dims(m, n, max_k, CoverMode::minimal) ==
                          ext_dims(m, n, max_k, CoverMode::full)))
                        ok = false;
            sink.add("resolution-independence/" + aname, ok,
                     "plain vs padded over simples and the regular module");
        }

    for (const auto& u : cfg.value("upper", json::array())) {
        std::string signame = u.at("signature").get<std::string>();
        const auto& sig = named(s.signatures, signame, "bounds/upper");
        DhValue g = gldim(sig->base(), max_k);
        if (g.at_least) {
            sink.add("upper/" + signame, false, "base global dimension is not finite");
            continue;
        }
        for (const auto& jm : u.at("modules")) {
            const auto& m = named(s.ore_modules, jm.get<std::string>(), "bounds/upper");
            bool vanish = true;
            std::string witness;
            std::string dims_seen;
            for (const auto& jn : u.at("tests")) {
                const auto& n = named(s.ore_modules, jn.get<std::string>(), "bounds/upper");
                auto dims = cone_ext(m, n, max_k);
                dims_seen += (dims_seen.empty() ? "" : "; ") + n.name + ": (";
                for (std::size_t k = 0; k < dims.size(); ++k)
                    dims_seen += (k ? "," : "") + std::to_string(dims[k]);
                dims_seen += ")";
                for (std::size_t k = g.value + 2; k < dims.size(); ++k)
                    if (dims[k] != 0) {
                        vanish = false;
                        witness = "Ext^" + std::to_string(k) + "(" + m.name + ", " + n.name +
                                  ") = " + std::to_string(dims[k]);
                    }
            }
            sink.add("upper/" + signame + "/" + m.name + "/vanishing", vanish,
                     vanish ? "ext dims " + dims_seen : witness);
            auto cone = build_cone(m, max_k + 2);
            auto cert = cone_certificate(cone, 4);
            sink.add("upper/" + signame + "/" + m.name + "/certificate", cert.ok,
                     cert.ok ? "d d = 0 and windowed exactness" : cert.failures.front());
        }
    }

    for (const auto& l : cfg.value("lower", json::array())) {
        std::string signame = l.at("signature").get<std::string>();
        const auto& sig = named(s.signatures, signame, "bounds/lower");
        const auto& m = named(s.modules, l.at("module").get<std::string>(), "bounds/lower");
        const auto& n = named(s.ore_modules, l.at("test").get<std::string>(), "bounds/lower");
        std::size_t degree = l.at("degree").get<std::size_t>();
        auto dims = induced_ext(m, n, max_k);
        bool witness = degree < dims.size() && dims[degree] != 0;
        sink.add("lower/" + signame + "/witness", witness,
                 "Ext^" + std::to_string(degree) + "(" + m->name + " (x) A, " + n.name +
                     ") = " + std::to_string(degree < dims.size() ? dims[degree] : 0));
        auto ret = retraction_check(m, sig);
        sink.add("lower/" + signame + "/retraction", ret.ok,
                 ret.ok ? "r o i = id" : ret.failures.front());
    }

    if (cfg.contains("koszul")) {
        const auto& k = cfg["koszul"];
        const auto& m = named(s.ore_modules, k.at("module").get<std::string>(), "bounds/koszul");
        const auto& n = named(s.ore_modules, k.at("test").get<std::string>(), "bounds/koszul");
        auto want = k.at("expect").get<std::vector<std::size_t>>();
        auto got = cone_ext(m, n, want.size() - 1);
        std::string detail = "got (";
        for (std::size_t i = 0; i < got.size(); ++i)
            detail += (i ? "," : "") + std::to_string(got[i]);
        detail += ")";
        sink.add("koszul", got == want, detail);
    }

    if (cfg.contains("bimodule"))
        for (const auto& jname : cfg["bimodule"].value("signatures", json::array())) {
            std::string signame = jname.get<std::string>();
            const auto& sig = named(s.signatures, signame, "bounds/bimodule");
            auto cone = build_bimodule_cone(sig, max_k);
            if (cfg["bimodule"].contains("expected_length")) {
                std::size_t want =
                    cfg["bimodule"]["expected_length"].at(signame).get<std::size_t>();
                sink.add("bimodule/" + signame + "/length", bimodule_cone_length(cone) == want,
                         "length " + std::to_string(bimodule_cone_length(cone)) + ", want " +
                             std::to_string(want));
            }
            auto cert = bimodule_cone_certificate(cone, s.params.bimodule_window);
            sink.add("bimodule/" + signame + "/certificate", cert.ok,
                     cert.ok ? "d d = 0 and exact on truncations <= " +
                                   std::to_string(s.params.bimodule_window)
                             : cert.failures.front());
        }
    return res;
}

SuiteResult suite_twist(const Scenario& s) {
    SuiteResult res{"twist", {}};
    CaseSink sink{res.cases};
    const json& cfg = suite_cfg(s, res.name);
    for (const auto& c : cfg.value("cases", json::array())) {
        const auto& m = named(s.modules, c.at("module").get<std::string>(), "twist");
        const auto& alpha = named(s.morphisms, c.at("alpha").get<std::string>(), "twist");
        auto rep = twist_invariance_check(m, alpha, s.params.max_k);
        std::string detail = rep.ok ? "dh(M) = dh(M_alpha) = " + dh_to_string(dh(m, s.params.max_k))
                                    : rep.failures.front();
        sink.add(m->name + "/" + c.at("alpha").get<std::string>(), rep.ok, detail);
    }
    return res;
}

SuiteResult suite_retraction(const Scenario& s) {
    SuiteResult res{"retraction", {}};
    CaseSink sink{res.cases};
    const json& cfg = suite_cfg(s, res.name);
    for (const auto& c : cfg.value("cases", json::array())) {
        std::string signame = c.at("signature").get<std::string>();
        const auto& sig = named(s.signatures, signame, "retraction");
        const auto& m = named(s.modules, c.at("module").get<std::string>(), "retraction");
        auto rep = retraction_check(m, sig);
        sink.add(signame + "/" + m->name, rep.ok, rep.ok ? "r o i = id" : rep.failures.front());
    }
    return res;
}

SuiteResult suite_subadditivity(const Scenario& s) {
    SuiteResult res{"subadditivity", {}};
    CaseSink sink{res.cases};
    const json& cfg = suite_cfg(s, res.name);
    for (const auto& jname : cfg.value("algebras", json::array())) {
        std::string aname = jname.get<std::string>();
        const auto& alg = named(s.algebras, aname, "subadditivity");

        auto run = [&](const std::string& key, const ShortExactSequence& ses) {
            try {
                auto rep = subadditivity_check(ses, s.params.max_k);
                sink.add(aname + "/" + key, rep.ok,
                         "dh = (" + dh_to_string(rep.sub) + ", " + dh_to_string(rep.middle) +
                             ", " + dh_to_string(rep.quotient) + ")" +
                             (rep.ok ? "" : "; " + rep.failures.front()));
            } catch (const NotExactError& e) {
                sink.add(aname + "/" + key, false, e.what());
            }
        };

        auto reg = std::make_shared<RightModule>(regular_module(alg));
        Matrix rad = radical_basis(*alg);

        std::vector<std::pair<std::string, ModulePtr>> pool;
        auto simples = simple_modules(alg);
        for (std::size_t i = 0; i < simples.size(); ++i)
            pool.emplace_back("S" + std::to_string(i), std::make_shared<RightModule>(simples[i]));
        pool.emplace_back("A", reg);

        if (rad.cols() > 0) {
            auto sub = std::make_shared<RightModule>(submodule(*reg, rad, "radA"));
            auto [quot, proj] = quotient_module(*reg, rad, "A/rad");
            run("radical-sequence", {sub, reg, std::make_shared<RightModule>(quot), rad, proj});
            pool.emplace_back("radA", sub);
        }

        // Cover sequences 0 -> K -> A^k -> S -> 0 for each simple.
        for (std::size_t i = 0; i < simples.size(); ++i) {
            auto sm = std::make_shared<RightModule>(simples[i]);
            auto fc = free_cover(sm, CoverMode::minimal);
            Matrix kb = kernel_basis(fc.surjection);
            if (kb.cols() == 0) continue;
            auto k = std::make_shared<RightModule>(submodule(*fc.cover, kb, "K"));
            run("cover-sequence-S" + std::to_string(i), {k, fc.cover, sm, kb, fc.surjection});
        }

        // Split sequences over all ordered pairs from the pool.
        for (const auto& [xname, x] : pool)
            for (const auto& [yname, y] : pool) {
                auto mid = std::make_shared<RightModule>(direct_sum(*x, *y));
                Matrix inj(mid->dim, x->dim);
                for (std::size_t i = 0; i < x->dim; ++i) inj.at(i, i) = 1;
                Matrix prj(y->dim, mid->dim);
                for (std::size_t i = 0; i < y->dim; ++i) prj.at(i, x->dim + i) = 1;
                run("split-" + xname + "-" + yname, {x, mid, y, inj, prj});
            }
    }
    return res;
}

SuiteResult suite_seminorms(const Scenario& s) {
    SuiteResult res{"seminorms", {}};
    CaseSink sink{res.cases};
    Rng rng = suite_rng(s, res.name);
    const json& cfg = suite_cfg(s, res.name);
    for (const auto& c : cfg.value("cases", json::array())) {
        std::string signame = c.at("signature").get<std::string>();
        const auto& sig = named(s.signatures, signame, "seminorms");
        std::vector<const Seminorm*> norms;
        for (const auto& jn : c.at("norms"))
            norms.push_back(&named(s.seminorms, jn.get<std::string>(), "seminorms"));

        for (const auto* norm : norms) {
            if (norm->submultiplicative) {
                auto audit = audit_submultiplicative(*norm, rng, 50);
                sink.add(signame + "/audit/" + norm->label, audit.ok,
                         audit.ok ? "declared submultiplicative, verified"
                                  : audit.failures.front());
            } else {
                sink.add(signame + "/audit/" + norm->label, true,
                         "not declared submultiplicative; audit skipped");
            }
            Rat ca = localizability_constant(sig->alpha().matrix, *norm);
            std::string detail = "C_alpha = " + rat_to_string(ca);
            if (sig->delta()) {
                Rat cd = localizability_constant(sig->delta()->matrix, *norm);
                detail += ", C_delta = " + rat_to_string(cd);
            }
            sink.add(signame + "/stability-constants/" + norm->label, true, detail);
        }

        const int samples = std::max(100, s.params.trials);
        int bad = -1;
        std::string witness;
        for (int t = 0; t < samples && bad < 0; ++t) {
            auto f = random_poly(rng, sig, s.params.truncation_degree);
            for (const auto* l1 : norms)
                for (const auto* l2 : norms)
                    for (const auto& r1 : s.params.rho_grid)
                        for (const auto& r2 : s.params.rho_grid) {
                            auto rep = verify_holo_estimate(f, *l1, *l2, r1, r2);
                            if (!rep.ok && bad < 0) {
                                bad = t;
                                witness = "lambda = (" + l1->label + "," + l2->label +
                                          "), rho = (" + rat_to_string(r1) + "," +
                                          rat_to_string(r2) + "), lhs = " +
                                          rat_to_string(rep.rows[0].lhs) + " > rhs = " +
                                          rat_to_string(rep.rows[0].rhs);
                            }
                        }
        }
        sink.bulk(signame + "/estimate", samples, bad, witness);
    }
    return res;
}

SuiteResult suite_crossed(const Scenario& s) {
    SuiteResult res{"crossed", {}};
    CaseSink sink{res.cases};
    Rng rng = suite_rng(s, res.name);
    const json& cfg = suite_cfg(s, res.name);

    const auto& act = *named(s.actions, cfg.at("action").get<std::string>(), "crossed");
    std::vector<const Seminorm*> norms;
    for (const auto& jn : cfg.at("seminorms"))
        norms.push_back(&named(s.seminorms, jn.get<std::string>(), "crossed"));
    const auto& base = act.algebra;

    auto unit = crossed_term(base, base->unit, 0);
    int bad_unit = -1, bad_assoc = -1, bad_oassoc = -1, bad_iso = -1, bad_bij = -1;
    for (int t = 0; t < s.params.trials; ++t) {
        auto f = random_crossed(rng, base, 3);
        auto g = random_crossed(rng, base, 3);
        auto h = random_crossed(rng, base, 3);
        if (bad_unit < 0 &&
            !(convolve(f, unit, act) == f && convolve(unit, f, act) == f &&
              convolve_opposite(f, unit, act) == f && convolve_opposite(unit, f, act) == f))
            bad_unit = t;
        if (bad_assoc < 0 &&
            !(convolve(convolve(f, g, act), h, act) == convolve(f, convolve(g, h, act), act)))
            bad_assoc = t;
        if (bad_oassoc < 0 && !(convolve_opposite(convolve_opposite(f, g, act), h, act) ==
                                convolve_opposite(f, convolve_opposite(g, h, act), act)))
            bad_oassoc = t;
        if (bad_iso < 0 && !(iso_i(convolve(f, g, act), act) ==
                             convolve_opposite(iso_i(f, act), iso_i(g, act), act)))
            bad_iso = t;
        if (bad_bij < 0 && !(iso_i_inverse(iso_i(f, act), act) == f)) bad_bij = t;
    }
    sink.bulk("convolution/unit", s.params.trials, bad_unit);
    sink.bulk("convolution/associativity", s.params.trials, bad_assoc);
    sink.bulk("convolution/opposite-associativity", s.params.trials, bad_oassoc);
    sink.bulk("iso/multiplicative", s.params.trials, bad_iso);
    sink.bulk("iso/bijective", s.params.trials, bad_bij);

    // Per-term estimates for 1 <= n <= 8 and the negative branch, then
    // random supports, over the k-grid.
    bool terms_ok = true;
    std::string term_witness;
    for (const auto* l1 : norms)
        for (const auto* l2 : norms)
            for (long k1 : s.params.k_grid)
                for (long k2 : s.params.k_grid)
                    for (long n = 1; n <= 8 && terms_ok; ++n) {
                        auto r = random_vec(rng, base->dim);
                        for (long sgn : {1L, -1L}) {
                            auto rep = verify_crossed_estimate(crossed_term(base, r, sgn * n), *l1,
                                                               *l2, k1, k2);
                            if (!rep.ok && terms_ok) {
                                terms_ok = false;
                                term_witness = "n = " + std::to_string(sgn * n) + ", k = (" +
                                               std::to_string(k1) + "," + std::to_string(k2) + ")";
                            }
                        }
                    }
    sink.add("estimate/terms", terms_ok, terms_ok ? "n in [-8,8] over the k grid" : term_witness);

    int bad_est = -1;
    std::string est_witness;
    const int samples = std::max(100, s.params.trials);
    for (int t = 0; t < samples && bad_est < 0; ++t) {
        auto f = random_crossed(rng, base, s.params.support_radius);
        for (const auto* l1 : norms)
            for (const auto* l2 : norms)
                for (long k1 : s.params.k_grid)
                    for (long k2 : s.params.k_grid) {
                        auto rep = verify_crossed_estimate(f, *l1, *l2, k1, k2);
                        if (!rep.ok && bad_est < 0) {
                            bad_est = t;
                            for (const auto& row : rep.rows)
                                if (!row.pass)
                                    est_witness = row.key + ": " + rat_to_string(row.lhs) + " > " +
                                                  rat_to_string(row.rhs);
                        }
                    }
    }
    sink.bulk("estimate/random", samples, bad_est, est_witness);

    auto rep = check_tempered(act, [&] {
        std::vector<Seminorm> family;
        for (const auto* n : norms) family.push_back(*n);
        return family;
    }());
    sink.add("tempered/pass-case", rep.ok,
             rep.ok ? "growth bounded by |p(n)| on the range" : "declared bound fails");

    if (cfg.contains("tempered_fail")) {
        const auto& bad_act =
            *named(s.actions, cfg["tempered_fail"].get<std::string>(), "crossed");
        std::vector<Seminorm> family;
        for (const auto& jn : cfg.at("fail_seminorms"))
            family.push_back(named(s.seminorms, jn.get<std::string>(), "crossed"));
        auto frep = check_tempered(bad_act, family);
        std::string detail = frep.ok ? "unexpectedly passed"
                             : frep.fit_found
                                 ? "failed; fitted C (|n|+1)^m with C = " +
                                       rat_to_string(frep.fit_constant) + ", m = " +
                                       std::to_string(frep.fit_degree)
                                 : "failed; no monomial of degree <= 4 fits the growth";
        sink.add("tempered/fail-case", !frep.ok, detail);
    }
    return res;
}

}  // namespace

Report run_scenario(const Scenario& s, const std::string& scenario_hash,
                    const std::vector<std::string>& only) {
    auto started = std::chrono::steady_clock::now();
    Report report;
    report.engine = kEngine;
    report.scenario_hash = scenario_hash;
    report.seed = s.params.seed;

    auto wanted = [&](const std::string& name) {
        if (only.empty()) return true;
        return std::find(only.begin(), only.end(), name) != only.end();
    };

    for (const auto& name : s.suites) {
        if (!wanted(name)) continue;
        SuiteResult result;
        if (name == "ore-axioms")
            result = suite_ore_axioms(s);
        else if (name == "iso3")
            result = suite_iso3(s);
        else if (name == "differentials")
            result = suite_differentials(s);
        else if (name == "bounds")
            result = suite_bounds(s);
        else if (name == "twist")
            result = suite_twist(s);
        else if (name == "retraction")
            result = suite_retraction(s);
        else if (name == "subadditivity")
            result = suite_subadditivity(s);
        else if (name == "seminorms")
            result = suite_seminorms(s);
        else if (name == "crossed")
            result = suite_crossed(s);
        else
            throw ScenarioError("unknown suite '" + name + "'");
        std::sort(result.cases.begin(), result.cases.end(),
                  [](const CaseResult& a, const CaseResult& b) { return a.key < b.key; });
        report.suites.push_back(std::move(result));
    }
    std::sort(report.suites.begin(), report.suites.end(),
              [](const SuiteResult& a, const SuiteResult& b) { return a.name < b.name; });
    report.timing_ms = static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                             std::chrono::steady_clock::now() - started)
                                             .count());
    return report;
}

}  // namespace orehom

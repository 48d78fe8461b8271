#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "orehom/topology.hpp"

using namespace orehom;
namespace fx = orehom::fixtures;

namespace {

Seminorm l1_norm(const AlgebraPtr& a, std::vector<Rat> w, const std::string& label, bool sub) {
    return Seminorm{a, std::move(w), label, sub};
}

CrossedElement random_crossed(Rng& rng, const AlgebraPtr& base, long radius) {
    CrossedElement f = crossed_zero(base);
    for (long n = -radius; n <= radius; ++n) {
        if (rng.below(2) == 0) continue;
        Vec v(base->dim);
        for (auto& e : v) e = rng.small_rational();
        f = crossed_add(f, crossed_term(base, v, n));
    }
    return f;
}

OrePoly random_poly(Rng& rng, const SignaturePtr& sig, long max_degree) {
    OrePoly p = ore_zero(sig);
    long lo = is_laurent(sig->kind()) ? -max_degree : 0;
    for (long k = lo; k <= max_degree; ++k) {
        if (rng.below(3) == 0) continue;
        Vec v(sig->base()->dim);
        for (auto& e : v) e = rng.small_rational();
        p = p + ore_monomial(sig, v, k);
    }
    return p;
}

}  // namespace

TEST_CASE("seminorm basics and localizability constants") {
    auto qq = fx::q_times_q();
    auto half = l1_norm(qq, {Rat(1, 2), Rat(1, 2)}, "half", false);

    CHECK(half.eval({Rat(2), Rat(-3)}) == Rat(5, 2));
    CHECK(half.unit_norm() == 1);

    CHECK(localizability_constant(Matrix::identity(2), half) == 1);
    CHECK(localizability_constant(fx::swap_morphism(qq).matrix, half) == 1);

    auto qe = fx::dual_numbers();
    auto w = l1_norm(qe, {Rat(1), Rat(1)}, "w", true);
    CHECK(localizability_constant(fx::scale_eps(qe, Rat(2)).matrix, w) == 2);

    // triangle and homogeneity on random samples
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        Vec x{rng.small_rational(), rng.small_rational()};
        Vec y{rng.small_rational(), rng.small_rational()};
        CHECK(half.eval(vec_add(x, y)) <= half.eval(x) + half.eval(y));
        Rat c = rng.small_rational();
        CHECK(half.eval(vec_scale(c, x)) == rat_abs(c) * half.eval(x));
    }
}

TEST_CASE("submultiplicativity audit") {
    Rng rng(5);
    auto q = fx::rationals();
    CHECK(audit_submultiplicative(l1_norm(q, {Rat(1)}, "q", true), rng, 50).ok);

    auto qe = fx::dual_numbers();
    CHECK(audit_submultiplicative(l1_norm(qe, {Rat(1), Rat(3)}, "qe", true), rng, 50).ok);

    auto qq = fx::q_times_q();
    CHECK(audit_submultiplicative(l1_norm(qq, {Rat(1), Rat(1)}, "ones", true), rng, 50).ok);
    // weights 1/2 are not submultiplicative: u1 u1 = u1
    CHECK(!audit_submultiplicative(l1_norm(qq, {Rat(1, 2), Rat(1, 2)}, "half", false), rng, 10).ok);
}

TEST_CASE("holomorphic estimate") {
    auto qt = fx::sig_q_poly();
    auto l = l1_norm(qt->base(), {Rat(1)}, "l", true);

    // f = t^n: gamma(D(t^n)) = sum rho1^l rho2^{n-l-1} <= (2 max(rho1,rho2,1))^n
    for (long n = 1; n <= 6; ++n)
        for (const Rat& r1 : {Rat(1, 2), Rat(1), Rat(2)})
            for (const Rat& r2 : {Rat(1, 2), Rat(1), Rat(2)}) {
                Rat lhs = tensor_gamma(holo_D(t_power(qt, n)), l, r1, l, r2);
                Rat expect(0);
                for (long k = 0; k < n; ++k) expect += rat_pow(r1, k) * rat_pow(r2, n - k - 1);
                CHECK(lhs == expect);
                CHECK(verify_holo_estimate(t_power(qt, n), l, l, r1, r2).ok);
            }

    // D(1) = 0 passes anything
    CHECK(verify_holo_estimate(ore_one(qt), l, l, Rat(2), Rat(2)).ok);

    // random truncated elements over every catalogue signature
    std::vector<std::vector<Rat>> weights = {
        {Rat(1)},                       // Q
        {Rat(1, 2), Rat(1, 2)},         // QxQ
        {Rat(1, 2), Rat(1), Rat(1, 2)}, // T2
        {Rat(1), Rat(2)},               // Qeps
        {Rat(1, 3), Rat(2, 3)},         // QxQ laurent
    };
    auto sigs = fx::catalogue_signatures();
    for (std::size_t i = 0; i < sigs.size(); ++i) {
        auto l1 = l1_norm(sigs[i]->base(), weights[i], "l1", false);
        Rng rng(7);
        for (int trial = 0; trial < 20; ++trial) {
            auto f = random_poly(rng, sigs[i], 12);
            for (const Rat& r1 : {Rat(1, 2), Rat(1), Rat(2)})
                for (const Rat& r2 : {Rat(1, 2), Rat(1), Rat(2)}) {
                    auto rep = verify_holo_estimate(f, l1, l1, r1, r2);
                    CHECK(rep.ok);
                }
        }
    }
}

TEST_CASE("convolution") {
    auto qq = fx::q_times_q();
    TemperedAction swap(qq, fx::swap_morphism(qq), {Rat(1)}, 8);

    Rng rng(11);
    Vec r{rng.small_rational(), rng.small_rational()};
    Vec s{rng.small_rational(), rng.small_rational()};

    // (r e_m) * (s e_n) = r alpha_m(s) e_{m+n}
    for (long m = -3; m <= 3; ++m)
        for (long n = -3; n <= 3; ++n) {
            auto prod = convolve(crossed_term(qq, r, m), crossed_term(qq, s, n), swap);
            CHECK(prod == crossed_term(qq, qq->mul(r, swap.apply(m, s)), m + n));
            auto oprod =
                convolve_opposite(crossed_term(qq, r, m), crossed_term(qq, s, n), swap);
            CHECK(oprod == crossed_term(qq, qq->mul(swap.apply(-n, r), s), m + n));
        }

    // unit e_0 is two-sided for both products
    auto unit = crossed_term(qq, qq->unit, 0);
    for (int t = 0; t < 20; ++t) {
        auto f = random_crossed(rng, qq, 3);
        CHECK(convolve(f, unit, swap) == f);
        CHECK(convolve(unit, f, swap) == f);
        CHECK(convolve_opposite(f, unit, swap) == f);
        CHECK(convolve_opposite(unit, f, swap) == f);
    }

    // associativity on random triples, both products
    for (int t = 0; t < 25; ++t) {
        auto f = random_crossed(rng, qq, 3);
        auto g = random_crossed(rng, qq, 3);
        auto h = random_crossed(rng, qq, 3);
        CHECK(convolve(convolve(f, g, swap), h, swap) == convolve(f, convolve(g, h, swap), swap));
        CHECK(convolve_opposite(convolve_opposite(f, g, swap), h, swap) ==
              convolve_opposite(f, convolve_opposite(g, h, swap), swap));
    }
}

TEST_CASE("iso_i") {
    auto qq = fx::q_times_q();
    TemperedAction swap(qq, fx::swap_morphism(qq), {Rat(1)}, 8);
    Rng rng(13);

    Vec r{rng.small_rational(), rng.small_rational()};
    CHECK(iso_i(crossed_term(qq, r, 0), swap) == crossed_term(qq, r, 0));
    CHECK(iso_i(crossed_term(qq, r, 3), swap) ==
          crossed_term(qq, swap.apply(-3, r), 3));

    for (int t = 0; t < 30; ++t) {
        auto f = random_crossed(rng, qq, 3);
        auto g = random_crossed(rng, qq, 3);
        // bijective with the stated inverse
        CHECK(iso_i_inverse(iso_i(f, swap), swap) == f);
        // multiplicative into the opposite product
        CHECK(iso_i(convolve(f, g, swap), swap) ==
              convolve_opposite(iso_i(f, swap), iso_i(g, swap), swap));
    }
}

TEST_CASE("crossed_D pinned values") {
    auto qq = fx::q_times_q();
    Rng rng(17);
    Vec r{rng.small_rational_nonzero(), rng.small_rational()};

    CHECK(crossed_D(crossed_term(qq, qq->unit, 0)).is_zero());

    auto d2 = crossed_D(crossed_term(qq, r, 2));
    REQUIRE(d2.coeffs.size() == 2);
    CHECK(d2.coeffs.at(0) == crossed_term(qq, r, 1));
    CHECK(d2.coeffs.at(1) == crossed_term(qq, r, 0));

    auto dm1 = crossed_D(crossed_term(qq, r, -1));
    REQUIRE(dm1.coeffs.size() == 1);
    CHECK(dm1.coeffs.at(-1) == crossed_term(qq, vec_scale(Rat(-1), r), -1));
}

TEST_CASE("crossed estimates") {
    auto qq = fx::q_times_q();
    auto half = l1_norm(qq, {Rat(1, 2), Rat(1, 2)}, "half", false);

    // n = 1: gamma(D(r e_1)) = ||r|| <= ||r|| 2^{2max+1}
    Rng rng(19);
    Vec r{rng.small_rational_nonzero(), rng.small_rational()};
    auto e1 = crossed_term(qq, r, 1);
    CHECK(crossed_gamma(crossed_D(e1), half, 0, half, 0) == half.eval(r));

    for (long k1 = 0; k1 <= 3; ++k1)
        for (long k2 = 0; k2 <= 3; ++k2) {
            // single terms 1 <= n <= 8 and negative branch
            for (long n = 1; n <= 8; ++n) {
                CHECK(verify_crossed_estimate(crossed_term(qq, r, n), half, half, k1, k2).ok);
                CHECK(verify_crossed_estimate(crossed_term(qq, r, -n), half, half, k1, k2).ok);
            }
            // random supports in [-8, 8]
            for (int t = 0; t < 5; ++t) {
                auto f = random_crossed(rng, qq, 8);
                CHECK(verify_crossed_estimate(f, half, half, k1, k2).ok);
            }
        }
}

TEST_CASE("tempered actions") {
    auto qq = fx::q_times_q();
    auto half = l1_norm(qq, {Rat(1, 2), Rat(1, 2)}, "half", false);

    // finite order: constant polynomial works
    TemperedAction swap(qq, fx::swap_morphism(qq), {Rat(1)}, 8);
    CHECK(check_tempered(swap, {half}).ok);

    // identity: p = 1
    TemperedAction ident(qq, identity_morphism(qq), {Rat(1)}, 8);
    CHECK(check_tempered(ident, {half}).ok);

    // eigenvalue 2: no polynomial fits; the report says so
    auto qe = fx::dual_numbers();
    auto w = l1_norm(qe, {Rat(1), Rat(1)}, "w", true);
    TemperedAction doubling(qe, fx::scale_eps(qe, Rat(2)), {Rat(1), Rat(1), Rat(1)}, 8);
    auto rep = check_tempered(doubling, {w});
    CHECK(!rep.ok);
    CHECK(!rep.fit_found);

    // finite order with a wrong constant: fails but fits a constant
    TemperedAction swap_bad(qq, fx::swap_morphism(qq), {Rat(1, 2)}, 8);
    auto rep2 = check_tempered(swap_bad, {half});
    CHECK(!rep2.ok);
    CHECK(rep2.fit_found);
    CHECK(rep2.fit_degree == 0);
    CHECK(rep2.fit_constant == 1);
}

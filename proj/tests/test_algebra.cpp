#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "orehom/algebra.hpp"

using namespace orehom;
namespace fx = orehom::fixtures;

TEST_CASE("check_algebra on the catalogue") {
    CHECK(check_algebra(*fx::rationals()).ok);
    CHECK(check_algebra(*fx::q_times_q()).ok);
    CHECK(check_algebra(*fx::upper_triangular2()).ok);
    CHECK(check_algebra(*fx::dual_numbers()).ok);
    CHECK(check_algebra(*fx::gaussian_field()).ok);

    FDAlgebra broken;
    broken.name = "broken";
    broken.dim = 1;
    broken.basis_labels = {"e"};
    broken.structure = {Rat(1)};
    broken.unit = {Rat(0)};  // e e = e but the declared unit is 0
    CHECK(!check_algebra(broken).ok);
}

TEST_CASE("opposite") {
    auto qq = fx::q_times_q();
    auto op = opposite(*qq);
    CHECK(op.structure == qq->structure);  // commutative

    auto t2 = fx::upper_triangular2();
    auto t2op = opposite(*t2);
    CHECK(check_algebra(t2op).ok);
    // e12 . e11 in the opposite algebra is e11 e12 = e12 in T2.
    Vec prod = t2op.mul(t2->basis_vec(1), t2->basis_vec(0));
    CHECK(prod == t2->basis_vec(1));

    auto opop = opposite(t2op);
    CHECK(opop.structure == t2->structure);
}

TEST_CASE("enveloping") {
    auto q = fx::rationals();
    CHECK(enveloping(*q).dim == 1);

    auto qq = fx::q_times_q();
    auto env = enveloping(*qq);
    CHECK(env.dim == 4);
    CHECK(check_algebra(env).ok);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(env.mul(env.basis_vec(i), env.basis_vec(j)) ==
                  env.mul(env.basis_vec(j), env.basis_vec(i)));

    auto t2 = fx::upper_triangular2();
    auto t2env = enveloping(*t2);
    CHECK(t2env.dim == 9);
    CHECK(check_algebra(t2env).ok);
    // unit of A^e is u (x) u
    Vec expected(9);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) expected[i * 3 + j] = t2->unit[i] * t2->unit[j];
    CHECK(t2env.unit == expected);
}

TEST_CASE("alpha-derivation checks") {
    auto qe = fx::dual_numbers();

    SigmaDerivation zero{qe, identity_morphism(qe), Matrix(2, 2), DerivationFlavor::standard};
    CHECK(check_alpha_derivation(zero).ok);

    // delta(eps) = 1 fails for alpha = id: delta(eps^2) = 0 but the Leibniz
    // expansion gives 2 eps.
    Matrix d(2, 2);
    d.at(0, 1) = 1;
    SigmaDerivation bad{qe, identity_morphism(qe), d, DerivationFlavor::standard};
    CHECK(!check_alpha_derivation(bad).ok);

    // Same matrix is a genuine alpha-derivation for alpha(eps) = -eps.
    CHECK(check_alpha_derivation(fx::eps_derivation(qe)).ok);

    auto qq = fx::q_times_q();
    SigmaDerivation swap_zero{qq, fx::swap_morphism(qq), Matrix(2, 2), DerivationFlavor::standard};
    CHECK(check_alpha_derivation(swap_zero).ok);
}

TEST_CASE("morphism checks") {
    auto qq = fx::q_times_q();
    CHECK(check_morphism(fx::swap_morphism(qq)).ok);
    auto t2 = fx::upper_triangular2();
    CHECK(check_morphism(fx::inner_t2(t2)).ok);
    auto qe = fx::dual_numbers();
    CHECK(check_morphism(fx::neg_eps(qe)).ok);
    CHECK(check_morphism(fx::scale_eps(qe, Rat(2))).ok);

    Matrix nonmult = Matrix::identity(2);
    nonmult.at(1, 1) = 2;  // (0,1) |-> (0,2) is not multiplicative on QxQ
    CHECK(!check_morphism(AlgebraMorphism{qq, qq, nonmult}).ok);
}

TEST_CASE("radical") {
    CHECK(radical_basis(*fx::q_times_q()).cols() == 0);

    auto rad_eps = radical_basis(*fx::dual_numbers());
    REQUIRE(rad_eps.cols() == 1);
    CHECK(rad_eps.at(0, 0) == 0);
    CHECK(rad_eps.at(1, 0) != 0);

    auto rad_t2 = radical_basis(*fx::upper_triangular2());
    REQUIRE(rad_t2.cols() == 1);
    CHECK(rad_t2.at(0, 0) == 0);
    CHECK(rad_t2.at(1, 0) != 0);
    CHECK(rad_t2.at(2, 0) == 0);
}

TEST_CASE("radical is a two-sided ideal") {
    for (const auto& a : {fx::upper_triangular2(), fx::dual_numbers()}) {
        Matrix rad = radical_basis(*a);
        for (std::size_t k = 0; k < rad.cols(); ++k)
            for (std::size_t i = 0; i < a->dim; ++i) {
                CHECK(column_space_contains(rad, a->mul(rad.column(k), a->basis_vec(i))));
                CHECK(column_space_contains(rad, a->mul(a->basis_vec(i), rad.column(k))));
            }
    }
}

TEST_CASE("simple modules") {
    auto qq = fx::q_times_q();
    auto simples_qq = simple_modules(qq);
    REQUIRE(simples_qq.size() == 2);
    for (const auto& s : simples_qq) {
        CHECK(s.dim == 1);
        CHECK(check_right_module(s).ok);
    }

    auto t2 = fx::upper_triangular2();
    auto simples_t2 = simple_modules(t2);
    REQUIRE(simples_t2.size() == 2);
    bool saw_e11 = false, saw_e22 = false;
    for (const auto& s : simples_t2) {
        REQUIRE(s.dim == 1);
        CHECK(check_right_module(s).ok);
        CHECK(s.action[1].at(0, 0) == 0);  // e12 acts as zero
        if (s.action[0].at(0, 0) == 1 && s.action[2].at(0, 0) == 0) saw_e11 = true;
        if (s.action[0].at(0, 0) == 0 && s.action[2].at(0, 0) == 1) saw_e22 = true;
    }
    CHECK(saw_e11);
    CHECK(saw_e22);

    auto qe = fx::dual_numbers();
    auto simples_qe = simple_modules(qe);
    REQUIRE(simples_qe.size() == 1);
    CHECK(simples_qe[0].dim == 1);
    CHECK(simples_qe[0].action[1].at(0, 0) == 0);  // eps acts as zero

    CHECK_THROWS_AS(simple_modules(fx::gaussian_field()), NotSplitError);
}

TEST_CASE("simple modules kill the radical and have no proper submodule") {
    for (const auto& a : {fx::q_times_q(), fx::upper_triangular2(), fx::dual_numbers()}) {
        Matrix rad = radical_basis(*a);
        for (const auto& s : simple_modules(a)) {
            for (std::size_t k = 0; k < rad.cols(); ++k)
                CHECK(s.action_of(rad.column(k)).is_zero());
            CHECK(!has_proper_submodule(s));
        }
    }
}

TEST_CASE("simple modules of a 2x2 matrix block") {
    // Full 2x2 matrix algebra, basis {e11, e12, e21, e22}: one simple of
    // dimension 2.
    FDAlgebra m2;
    m2.name = "M2";
    m2.dim = 4;
    m2.basis_labels = {"e11", "e12", "e21", "e22"};
    m2.structure.assign(64, Rat(0));
    auto idx = [](std::size_t i, std::size_t j) { return i * 2 + j; };
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l)
                    if (j == k) m2.c(idx(i, j), idx(k, l), idx(i, l)) = 1;
    m2.unit = {Rat(1), Rat(0), Rat(0), Rat(1)};
    auto a = std::make_shared<FDAlgebra>(std::move(m2));
    REQUIRE(check_algebra(*a).ok);
    auto simples = simple_modules(a);
    REQUIRE(simples.size() == 1);
    CHECK(simples[0].dim == 2);
    CHECK(check_right_module(simples[0]).ok);
    CHECK(!has_proper_submodule(simples[0]));
}

TEST_CASE("twist_module") {
    auto qq = fx::q_times_q();
    auto swap = fx::swap_morphism(qq);
    auto simples = simple_modules(qq);
    REQUIRE(simples.size() == 2);

    auto t0 = twist_module(simples[0], identity_morphism(qq));
    CHECK(t0.action == simples[0].action);

    auto round = twist_module(twist_module(simples[0], swap), swap);
    CHECK(round.action == simples[0].action);

    auto swapped = twist_module(simples[0], swap);
    CHECK(swapped.action == simples[1].action);

    // twist(twist(M, a), b) = twist(M, a o b)
    auto t2 = fx::upper_triangular2();
    auto inner = fx::inner_t2(t2);
    auto reg = regular_module(t2);
    auto lhs = twist_module(twist_module(reg, inner), inner);
    auto rhs = twist_module(reg, compose(inner, inner));
    CHECK(lhs.action == rhs.action);
}

TEST_CASE("regular module") {
    auto q = fx::rationals();
    CHECK(regular_module(q).dim == 1);

    auto t2 = fx::upper_triangular2();
    auto reg = regular_module(t2);
    CHECK(check_right_module(reg).ok);
    CHECK(reg.action_of(t2->unit) == Matrix::identity(3));
    // right multiplication by e12 sends e11 to e12 and kills e12, e22
    Matrix r12(3, 3);
    r12.at(1, 0) = 1;
    CHECK(reg.action[1] == r12);
}

TEST_CASE("bimodule_as_right_module") {
    auto t2 = fx::upper_triangular2();
    auto env = std::make_shared<FDAlgebra>(enveloping(*t2));
    auto bim = bimodule_as_right_module(t2, env);
    CHECK(check_right_module(bim).ok);
    CHECK(bim.dim == 3);
}

TEST_CASE("rational eigenvalues") {
    Matrix m(2, 2);
    m.at(0, 0) = 2;
    m.at(1, 1) = Rat(1, 3);
    auto ev = rational_eigenvalues(m);
    REQUIRE(ev.size() == 2);
    CHECK(ev[0] == Rat(1, 3));
    CHECK(ev[1] == 2);

    Matrix rot(2, 2);  // x^2 + 1 has no rational roots
    rot.at(0, 1) = -1;
    rot.at(1, 0) = 1;
    CHECK(rational_eigenvalues(rot).empty());
}

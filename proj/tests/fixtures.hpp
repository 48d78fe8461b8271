#pragma once

// Shared catalogue objects for the test suites: the four base algebras, their
// morphisms/derivations and the five Ore signatures.

#include <memory>

#include "orehom/algebra.hpp"
#include "orehom/ore.hpp"

namespace orehom::fixtures {

inline AlgebraPtr rationals() {
    FDAlgebra a;
    a.name = "Q";
    a.dim = 1;
    a.basis_labels = {"1"};
    a.structure = {Rat(1)};
    a.unit = {Rat(1)};
    return std::make_shared<FDAlgebra>(std::move(a));
}

inline AlgebraPtr q_times_q() {
    FDAlgebra a;
    a.name = "QxQ";
    a.dim = 2;
    a.basis_labels = {"u1", "u2"};
    a.structure.assign(8, Rat(0));
    a.c(0, 0, 0) = 1;
    a.c(1, 1, 1) = 1;
    a.unit = {Rat(1), Rat(1)};
    return std::make_shared<FDAlgebra>(std::move(a));
}

// Upper-triangular 2x2 matrices, basis {e11, e12, e22}.
inline AlgebraPtr upper_triangular2() {
    FDAlgebra a;
    a.name = "T2";
    a.dim = 3;
    a.basis_labels = {"e11", "e12", "e22"};
    a.structure.assign(27, Rat(0));
    a.c(0, 0, 0) = 1;  // e11 e11 = e11
    a.c(0, 1, 1) = 1;  // e11 e12 = e12
    a.c(1, 2, 1) = 1;  // e12 e22 = e12
    a.c(2, 2, 2) = 1;  // e22 e22 = e22
    a.unit = {Rat(1), Rat(0), Rat(1)};
    return std::make_shared<FDAlgebra>(std::move(a));
}

// Q[eps]/(eps^2), basis {1, eps}.
inline AlgebraPtr dual_numbers() {
    FDAlgebra a;
    a.name = "Qeps";
    a.dim = 2;
    a.basis_labels = {"1", "eps"};
    a.structure.assign(8, Rat(0));
    a.c(0, 0, 0) = 1;
    a.c(0, 1, 1) = 1;
    a.c(1, 0, 1) = 1;
    a.unit = {Rat(1), Rat(0)};
    return std::make_shared<FDAlgebra>(std::move(a));
}

// Q[i], i^2 = -1: semisimple but not split.
inline AlgebraPtr gaussian_field() {
    FDAlgebra a;
    a.name = "Qi";
    a.dim = 2;
    a.basis_labels = {"1", "i"};
    a.structure.assign(8, Rat(0));
    a.c(0, 0, 0) = 1;
    a.c(0, 1, 1) = 1;
    a.c(1, 0, 1) = 1;
    a.c(1, 1, 0) = -1;
    a.unit = {Rat(1), Rat(0)};
    return std::make_shared<FDAlgebra>(std::move(a));
}

inline AlgebraMorphism swap_morphism(const AlgebraPtr& qq) {
    Matrix m(2, 2);
    m.at(0, 1) = 1;
    m.at(1, 0) = 1;
    return AlgebraMorphism{qq, qq, m};
}

// Conjugation by 1 + e12 on T2.
inline AlgebraMorphism inner_t2(const AlgebraPtr& t2) {
    Matrix m(3, 3);
    m.at(0, 0) = 1;
    m.at(1, 0) = -1;
    m.at(1, 1) = 1;
    m.at(1, 2) = 1;
    m.at(2, 2) = 1;
    return AlgebraMorphism{t2, t2, m};
}

inline AlgebraMorphism neg_eps(const AlgebraPtr& qe) {
    Matrix m = Matrix::identity(2);
    m.at(1, 1) = -1;
    return AlgebraMorphism{qe, qe, m};
}

inline AlgebraMorphism scale_eps(const AlgebraPtr& qe, const Rat& factor) {
    Matrix m = Matrix::identity(2);
    m.at(1, 1) = factor;
    return AlgebraMorphism{qe, qe, m};
}

// eps |-> 1 derivation, an alpha-derivation for alpha(eps) = -eps.
inline SigmaDerivation eps_derivation(const AlgebraPtr& qe) {
    Matrix m(2, 2);
    m.at(0, 1) = 1;
    return SigmaDerivation{qe, neg_eps(qe), m, DerivationFlavor::standard};
}

inline SignaturePtr sig_q_poly() {
    auto q = rationals();
    return make_signature(q, identity_morphism(q), std::nullopt, OreKind::polynomial, "Q[t]");
}

inline SignaturePtr sig_qq_swap() {
    auto qq = q_times_q();
    return make_signature(qq, swap_morphism(qq), std::nullopt, OreKind::polynomial, "QxQ[t;swap]");
}

inline SignaturePtr sig_t2_inner() {
    auto t2 = upper_triangular2();
    return make_signature(t2, inner_t2(t2), std::nullopt, OreKind::polynomial, "T2[t;inner]");
}

inline SignaturePtr sig_qeps() {
    auto qe = dual_numbers();
    return make_signature(qe, neg_eps(qe), eps_derivation(qe), OreKind::polynomial,
                          "Qeps[t;-1,d]");
}

inline SignaturePtr sig_qq_laurent() {
    auto qq = q_times_q();
    return make_signature(qq, swap_morphism(qq), std::nullopt, OreKind::laurent,
                          "QxQ[t,t^-1;swap]");
}

inline std::vector<SignaturePtr> catalogue_signatures() {
    return {sig_q_poly(), sig_qq_swap(), sig_t2_inner(), sig_qeps(), sig_qq_laurent()};
}

}  // namespace orehom::fixtures

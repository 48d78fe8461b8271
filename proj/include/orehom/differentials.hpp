#pragma once

#include <utility>
#include <vector>

#include "orehom/ore.hpp"

namespace orehom {

enum class Twist { none, alpha };

// Normal-form element of A (x)_R A (twist none) or A_alpha (x)_R A (twist
// alpha): sum_j f_j (x) t^j with left factors f_j in A. The normal form
// exists because A is free as a left R-module on the powers of t.
struct TensorElement {
    SignaturePtr sig;
    Twist twist = Twist::none;
    std::map<long, OrePoly> coeffs;

    bool is_zero() const { return coeffs.empty(); }
};

bool operator==(const TensorElement& a, const TensorElement& b);
TensorElement operator+(const TensorElement& a, const TensorElement& b);
TensorElement operator-(const TensorElement& a, const TensorElement& b);
TensorElement operator-(const TensorElement& a);

TensorElement tensor_zero(const SignaturePtr& sig, Twist twist);

// sum_i f_i (x) g_i brought to normal form; right-side coefficients cross the
// tensor through alpha when twist = alpha.
TensorElement tensor_normalize(const SignaturePtr& sig, Twist twist,
                               const std::vector<std::pair<OrePoly, OrePoly>>& pairs);

// D(r t^n) = sum_{k=0}^{n-1} r t^k (x) t^{n-k-1}         (n >= 0)
// D(r t^n) = -sum_{k=1}^{|n|} r t^{-k} (x) t^{n+k-1}     (n < 0, Laurent)
TensorElement d_poly(const OrePoly& f);

TensorElement left_act(const OrePoly& a, const TensorElement& x);
TensorElement right_act(const TensorElement& x, const OrePoly& a);

// j(f (x) g) = f (x) t g - f t (x) g : A_alpha (x) A -> A (x) A.
TensorElement map_j(const TensorElement& x);

// Multiplication map A (x) A -> A.
OrePoly map_m(const TensorElement& x);

// sigma(a) = a (x) 1, a section of map_m.
TensorElement section_sigma(const OrePoly& a);

// rho(f (x) g) = f . D(g), a retraction of map_j.
TensorElement retraction_rho(const TensorElement& x);

CheckReport leibniz_check(const OrePoly& f, const OrePoly& g);

// Element of M (x)_R A (or M_alpha (x)_R A): sum_j m_j (x) t^j.
struct InducedElement {
    SignaturePtr sig;
    ModulePtr base;
    Twist twist = Twist::none;
    std::map<long, Vec> coeffs;

    bool is_zero() const { return coeffs.empty(); }
};

bool operator==(const InducedElement& a, const InducedElement& b);
InducedElement operator+(const InducedElement& a, const InducedElement& b);
InducedElement operator-(const InducedElement& a, const InducedElement& b);

InducedElement induced_zero(const SignaturePtr& sig, const ModulePtr& base, Twist twist);

InducedElement induced_normalize(const SignaturePtr& sig, const ModulePtr& base, Twist twist,
                                 const std::vector<std::pair<Vec, OrePoly>>& pairs);

// j'(m (x) g) = m (x) t g - (m t) (x) g, with m t given by the t-action of an
// Ore module structure on the base.
InducedElement induced_j_prime(const InducedElement& x, const Matrix& t_act);

// Collapse M (x)_R A -> M using the Ore module structure.
Vec induced_mult(const InducedElement& x, const OreModule& m);

}  // namespace orehom

#pragma once

#include <mutex>

#include "orehom/differentials.hpp"
#include "orehom/rng.hpp"

namespace orehom {

// Weighted l^1 coefficient norm on a finite-dimensional algebra.
struct Seminorm {
    AlgebraPtr algebra;
    std::vector<Rat> weights;  // positive, one per basis element
    std::string label;
    bool submultiplicative = false;  // declared; audited, not assumed

    Rat eval(const Vec& v) const;
    Rat unit_norm() const { return eval(algebra->unit); }
};

// Smallest C with ||op(e_i)|| <= C ||e_i|| over the basis; for weighted l^1
// norms this bounds the operator on the whole space.
Rat localizability_constant(const Matrix& op, const Seminorm& s);

// Basis pairs plus random samples; sufficient for weighted l^1 norms.
CheckReport audit_submultiplicative(const Seminorm& s, Rng& rng, int trials);

// Truncated holomorphic Ore elements are finitely supported skew
// polynomials; the norm family is ||f||_{lambda,rho} = sum_k ||a_k|| rho^|k|.
Rat holo_norm(const OrePoly& f, const Seminorm& lambda, const Rat& rho);

inline TensorElement holo_D(const OrePoly& f) { return d_poly(f); }

// Cross-norm value of the normal form sum_j f_j (x) t^j: an upper bound for
// the projective tensor seminorm, evaluated without optimizing over
// representations.
Rat tensor_gamma(const TensorElement& x, const Seminorm& l1, const Rat& rho1, const Seminorm& l2,
                 const Rat& rho2);

struct EstimateRow {
    std::string key;
    Rat lhs, rhs;
    bool pass = false;
};

struct EstimateReport {
    bool ok = true;
    std::vector<EstimateRow> rows;

    void add(std::string key, Rat lhs, Rat rhs) {
        bool pass = lhs <= rhs;
        ok = ok && pass;
        rows.push_back({std::move(key), std::move(lhs), std::move(rhs), pass});
    }
};

// gamma(D f) <= ||f||_{l1, 2 max(rho1, rho2, 1)} for polynomial signatures,
// gamma(D f) <= ||f||_{l1, 2 (rho1 + rho2 + 1)} for Laurent ones.
EstimateReport verify_holo_estimate(const OrePoly& f, const Seminorm& l1, const Seminorm& l2,
                                    const Rat& rho1, const Rat& rho2);

// Finitely supported Z-indexed family of coefficients in R.
struct CrossedElement {
    AlgebraPtr base;
    std::map<long, Vec> coeffs;

    bool is_zero() const { return coeffs.empty(); }
};

bool operator==(const CrossedElement& a, const CrossedElement& b);
CrossedElement crossed_zero(const AlgebraPtr& base);
CrossedElement crossed_term(const AlgebraPtr& base, const Vec& r, long n);
CrossedElement crossed_add(const CrossedElement& a, const CrossedElement& b);
CrossedElement crossed_scale(const Rat& c, const CrossedElement& a);

// Z-action on R generated by an automorphism, with a declared polynomial
// growth bound |p(n)| and the range on which it is checked.
struct TemperedAction {
    AlgebraPtr algebra;
    AlgebraMorphism alpha1;
    std::vector<Rat> poly;  // p(n) = sum poly[i] n^i
    long check_range = 8;

    TemperedAction(AlgebraPtr a, AlgebraMorphism gen, std::vector<Rat> p, long range);
    Matrix power(long n) const;  // alpha_1^n, exact, cached
    Vec apply(long n, const Vec& x) const { return mat_vec(power(n), x); }

private:
    Matrix alpha_inv_;
    mutable std::mutex mutex_;
    mutable std::map<long, Matrix> cache_;
};

Rat poly_abs_eval(const std::vector<Rat>& p, long n);

// (f * g)(x) = sum_y f(y) alpha_y(g(x - y))
CrossedElement convolve(const CrossedElement& f, const CrossedElement& g,
                        const TemperedAction& act);
// (f *' g)(x) = sum_y alpha_{-y}(f(x - y)) g(y)
CrossedElement convolve_opposite(const CrossedElement& f, const CrossedElement& g,
                                 const TemperedAction& act);

// i(f)^{(n)} = alpha_{-n}(f^{(n)}); an isomorphism onto the *' product.
CrossedElement iso_i(const CrossedElement& f, const TemperedAction& act);
CrossedElement iso_i_inverse(const CrossedElement& f, const TemperedAction& act);

// Normal form sum_j F_j (x) e_j of a tensor over the crossed product.
struct CrossedTensor {
    AlgebraPtr base;
    std::map<long, CrossedElement> coeffs;

    bool is_zero() const { return coeffs.empty(); }
};

// D(r e_n) = sum_{k=0}^{n-1} r e_k (x) e_{n-k-1}         (n >= 0)
// D(r e_n) = -sum_{k=1}^{|n|} r e_{-k} (x) e_{n+k-1}     (n < 0)
CrossedTensor crossed_D(const CrossedElement& f);

Rat crossed_norm(const CrossedElement& f, const Seminorm& lambda, long k);
Rat crossed_gamma(const CrossedTensor& x, const Seminorm& l1, long k1, const Seminorm& l2,
                  long k2);

// Per-term bounds gamma(D(r e_n)) <= ||r e_n||_{l1, 2max(k1,k2)+1} (n >= 1)
// and <= 2 ||r e_n||_{l1, 4max(k1,k2)+1} (n < 0), plus the summed bound
// gamma(D f) <= 2 ||f||_{l1, 4max(k1,k2)+1}.
EstimateReport verify_crossed_estimate(const CrossedElement& f, const Seminorm& l1,
                                       const Seminorm& l2, long k1, long k2);

struct TemperedReport {
    bool ok = true;
    std::vector<EstimateRow> rows;  // failures only
    bool fit_found = false;
    Rat fit_constant;
    long fit_degree = 0;
};

// Checks ||alpha_n(r)||_lambda <= |p(n)| ||r||_lambda on basis elements for
// |n| <= check_range; on failure tries to fit C (|n|+1)^m to the data.
TemperedReport check_tempered(const TemperedAction& act, const std::vector<Seminorm>& family);

}  // namespace orehom

#pragma once

#include "orehom/homology.hpp"

namespace orehom {

// R-bimodule presented by coordinates with left and right action matrices.
struct Bimodule {
    AlgebraPtr algebra;
    std::size_t dim = 0;
    std::vector<Matrix> left;   // action of e_i on the left
    std::vector<Matrix> right;  // action of e_i on the right
    std::string name;

    Matrix left_of(const Vec& r) const;
    Matrix right_of(const Vec& r) const;
};

// Projective bimodule resolution of R over R^e: free levels, with a
// split-certified projective kernel as the final term when one appears.
struct BimoduleResolution {
    AlgebraPtr algebra;
    std::vector<Bimodule> modules;
    std::vector<std::size_t> gens;  // free generators per level (0 for the tail)
    std::vector<Matrix> diffs;      // P_{i+1} -> P_i (the tail one is a kernel inclusion)
    Matrix augmentation;            // eps : P_0 -> R
    bool terminated = false;
    bool tail_projective = false;
};

BimoduleResolution bimodule_resolution(const AlgebraPtr& r, std::size_t max_len);

// Element of A (x)_R P (x)_R A in the normal form sum t^i (x) p (x) t^j.
struct BimodElement {
    std::map<std::pair<long, long>, Vec> coeffs;

    bool is_zero() const { return coeffs.empty(); }
};

BimodElement bimod_add(const BimodElement& a, const BimodElement& b);
BimodElement bimod_scale(const Rat& c, const BimodElement& a);
BimodElement bimod_shift(const BimodElement& a, long di, long dj);

// Blockwise application of a coordinate map to the middle factor.
BimodElement bimod_middle(const Matrix& map, const BimodElement& a);

// Left multiplication by a base-algebra element; `twisted` selects the
// A_alpha (x)_R P crossing rule (coefficients cross through alpha^{-1}).
BimodElement bimod_left_const(const SignaturePtr& sig, const Bimodule& p, bool twisted,
                              const Vec& r, const BimodElement& a);
BimodElement bimod_right_const(const SignaturePtr& sig, const Bimodule& p, const Vec& r,
                               const BimodElement& a);

// Collapse A (x) P (x) A -> A (x)_R A through the augmentation.
TensorElement bimod_collapse(const SignaturePtr& sig, const Matrix& eps, Twist twist,
                             const BimodElement& a);

// The complexes A (x) P_i (x) A and A_alpha (x) P_i (x) A together with a
// chain map lifting j(f (x) g) = f (x) tg - ft (x) g; its cone resolves A as
// an A-bimodule one degree longer than the bimodule resolution of R.
struct BimoduleCone {
    SignaturePtr sig;
    BimoduleResolution res;
    // lift[i][p] = image of 1 (x) (basis p of P_i) (x) 1 under w_i.
    std::vector<std::vector<BimodElement>> lift;
};

BimoduleCone build_bimodule_cone(const SignaturePtr& sig, std::size_t max_len);

std::size_t bimodule_cone_length(const BimoduleCone& c);

// d o d = 0 plus exactness of the augmented cone on t-degree truncations
// <= window (cycles up to the window are boundaries from a slightly wider
// window), all by rank arithmetic.
CheckReport bimodule_cone_certificate(const BimoduleCone& c, long window);

}  // namespace orehom

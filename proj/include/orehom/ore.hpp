#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "orehom/algebra.hpp"

namespace orehom {

enum class OreKind { polynomial, laurent, opposite_polynomial, opposite_laurent };

inline bool is_opposite(OreKind k) {
    return k == OreKind::opposite_polynomial || k == OreKind::opposite_laurent;
}
inline bool is_laurent(OreKind k) {
    return k == OreKind::laurent || k == OreKind::opposite_laurent;
}

class OreSignature;
using SignaturePtr = std::shared_ptr<const OreSignature>;

// R[t; alpha, delta] and friends. Plain kinds use left coefficients and the
// relation t a = alpha(a) t + delta(a); opposite kinds use right coefficients
// and a t = t alpha(a) + delta(a) (with delta of opposite flavor).
class OreSignature {
public:
    OreSignature(AlgebraPtr base, AlgebraMorphism alpha, std::optional<SigmaDerivation> delta,
                 OreKind kind, std::string name);

    const AlgebraPtr& base() const { return base_; }
    const AlgebraMorphism& alpha() const { return alpha_; }
    const std::optional<SigmaDerivation>& delta() const { return delta_; }
    OreKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    bool alpha_invertible() const { return alpha_inv_.has_value(); }
    const Matrix& alpha_inverse() const;

    bool delta_is_zero() const;

    // t^n a = sum_k N[n][k](a) t^k (plain kinds), a t^n = sum_k t^k N[n][k](a)
    // (opposite kinds). Keys are the degrees k with nonzero operator.
    std::map<long, Matrix> rewrite_ops(long n) const;

    Matrix alpha_power(long n) const;

private:
    AlgebraPtr base_;
    AlgebraMorphism alpha_;
    std::optional<SigmaDerivation> delta_;
    OreKind kind_;
    std::string name_;
    std::optional<Matrix> alpha_inv_;

    mutable std::mutex mutex_;
    mutable std::vector<std::map<long, Matrix>> ops_;  // index n >= 0
    mutable std::map<long, Matrix> alpha_pow_;
    mutable SignaturePtr opposite_;

    friend SignaturePtr opposite_signature(const SignaturePtr& sig);
};

// Validates the kind invariants (laurent needs delta = 0 and invertible
// alpha; derivation flavor must match the side).
SignaturePtr make_signature(AlgebraPtr base, AlgebraMorphism alpha,
                            std::optional<SigmaDerivation> delta, OreKind kind, std::string name);

SignaturePtr opposite_signature(const SignaturePtr& sig);

// Finitely supported skew (Laurent) polynomial; no zero coefficients stored.
struct OrePoly {
    SignaturePtr sig;
    std::map<long, Vec> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    long degree() const { return coeffs.empty() ? -1 : coeffs.rbegin()->first; }
};

OrePoly ore_zero(const SignaturePtr& sig);
OrePoly ore_const(const SignaturePtr& sig, const Vec& a);
OrePoly ore_one(const SignaturePtr& sig);
OrePoly ore_monomial(const SignaturePtr& sig, const Vec& a, long k);
OrePoly t_power(const SignaturePtr& sig, long k);

bool operator==(const OrePoly& f, const OrePoly& g);
OrePoly operator+(const OrePoly& f, const OrePoly& g);
OrePoly operator-(const OrePoly& f, const OrePoly& g);
OrePoly operator-(const OrePoly& f);
OrePoly scale(const Rat& c, const OrePoly& f);

// Product under the rewriting rule; throws on signature mismatch.
OrePoly ore_mul(const OrePoly& f, const OrePoly& g);

// Image of a plain-kind polynomial under the isomorphism
// A[t; alpha, delta] ~ A_op[t; alpha^-1, -delta alpha^-1].
OrePoly to_opposite(const OrePoly& f);
OrePoly from_opposite(const OrePoly& f, const SignaturePtr& original);

// Finite-dimensional right module over the Ore extension: a module over the
// base plus the action of t. Compatibility (from (m.t).a = m.(t a)):
//   rho(a) T = T rho(alpha(a)) + rho(delta(a)).
struct OreModule {
    SignaturePtr sig;
    ModulePtr base;
    Matrix t_act;
    std::optional<Matrix> t_inv;  // laurent kind only
    std::string name;
};

CheckReport check_ore_module(const OreModule& m);

Vec ore_act(const OreModule& m, const Vec& v, const OrePoly& f);

}  // namespace orehom

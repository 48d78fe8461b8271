#include "orehom/differentials.hpp"

namespace orehom {

namespace {

void tensor_add_term(TensorElement& x, long j, const OrePoly& f) {
    if (f.is_zero()) return;
    auto it = x.coeffs.find(j);
    if (it == x.coeffs.end()) {
        x.coeffs.emplace(j, f);
    } else {
        it->second = it->second + f;
        if (it->second.is_zero()) x.coeffs.erase(it);
    }
}

void check_plain_kind(const SignaturePtr& sig) {
    if (is_opposite(sig->kind()))
        throw std::invalid_argument("tensor elements live over plain-kind signatures");
}

}  // namespace

bool operator==(const TensorElement& a, const TensorElement& b) {
    return a.sig == b.sig && a.twist == b.twist && a.coeffs == b.coeffs;
}

TensorElement operator+(const TensorElement& a, const TensorElement& b) {
    if (a.sig != b.sig || a.twist != b.twist)
        throw std::invalid_argument("tensor add: signature or twist mismatch");
    TensorElement r = a;
    for (const auto& [j, f] : b.coeffs) tensor_add_term(r, j, f);
    return r;
}

TensorElement operator-(const TensorElement& a) {
    TensorElement r{a.sig, a.twist, {}};
    for (const auto& [j, f] : a.coeffs) r.coeffs.emplace(j, -f);
    return r;
}

TensorElement operator-(const TensorElement& a, const TensorElement& b) { return a + (-b); }

TensorElement tensor_zero(const SignaturePtr& sig, Twist twist) {
    check_plain_kind(sig);
    return TensorElement{sig, twist, {}};
}

TensorElement tensor_normalize(const SignaturePtr& sig, Twist twist,
                               const std::vector<std::pair<OrePoly, OrePoly>>& pairs) {
    TensorElement x = tensor_zero(sig, twist);
    for (const auto& [f, g] : pairs) {
        if (f.sig != sig || g.sig != sig)
            throw std::invalid_argument("tensor_normalize: signature mismatch");
        for (const auto& [j, b] : g.coeffs) {
            Vec crossed = twist == Twist::alpha ? sig->alpha().apply(b) : b;
            tensor_add_term(x, j, ore_mul(f, ore_const(sig, crossed)));
        }
    }
    return x;
}

TensorElement d_poly(const OrePoly& f) {
    TensorElement x = tensor_zero(f.sig, Twist::alpha);
    for (const auto& [n, a] : f.coeffs) {
        if (n >= 0) {
            for (long k = 0; k < n; ++k)
                tensor_add_term(x, n - k - 1, ore_monomial(f.sig, a, k));
        } else {
            for (long k = 1; k <= -n; ++k)
                tensor_add_term(x, n + k - 1, ore_monomial(f.sig, vec_scale(Rat(-1), a), -k));
        }
    }
    return x;
}

TensorElement left_act(const OrePoly& a, const TensorElement& x) {
    TensorElement r = tensor_zero(x.sig, x.twist);
    for (const auto& [j, f] : x.coeffs) tensor_add_term(r, j, ore_mul(a, f));
    return r;
}

TensorElement right_act(const TensorElement& x, const OrePoly& a) {
    std::vector<std::pair<OrePoly, OrePoly>> pairs;
    for (const auto& [j, f] : x.coeffs) pairs.emplace_back(f, ore_mul(t_power(x.sig, j), a));
    return tensor_normalize(x.sig, x.twist, pairs);
}

TensorElement map_j(const TensorElement& x) {
    if (x.twist != Twist::alpha) throw std::invalid_argument("map_j expects a twisted element");
    TensorElement r = tensor_zero(x.sig, Twist::none);
    for (const auto& [j, f] : x.coeffs) {
        tensor_add_term(r, j + 1, f);
        tensor_add_term(r, j, -ore_mul(f, t_power(x.sig, 1)));
    }
    return r;
}

OrePoly map_m(const TensorElement& x) {
    if (x.twist != Twist::none) throw std::invalid_argument("map_m expects an untwisted element");
    OrePoly r = ore_zero(x.sig);
    for (const auto& [j, f] : x.coeffs) r = r + ore_mul(f, t_power(x.sig, j));
    return r;
}

TensorElement section_sigma(const OrePoly& a) {
    TensorElement r = tensor_zero(a.sig, Twist::none);
    tensor_add_term(r, 0, a);
    return r;
}

TensorElement retraction_rho(const TensorElement& x) {
    if (x.twist != Twist::none)
        throw std::invalid_argument("retraction_rho expects an untwisted element");
    TensorElement r = tensor_zero(x.sig, Twist::alpha);
    for (const auto& [j, f] : x.coeffs) r = r + left_act(f, d_poly(t_power(x.sig, j)));
    return r;
}

CheckReport leibniz_check(const OrePoly& f, const OrePoly& g) {
    CheckReport rep;
    if (f.sig != g.sig) {
        rep.fail("signature mismatch");
        return rep;
    }
    TensorElement lhs = d_poly(ore_mul(f, g));
    TensorElement rhs = right_act(d_poly(f), g) + left_act(f, d_poly(g));
    if (!(lhs == rhs)) rep.fail("Leibniz identity fails");
    return rep;
}

namespace {

void induced_add_term(InducedElement& x, long j, const Vec& v) {
    if (vec_is_zero(v)) return;
    auto it = x.coeffs.find(j);
    if (it == x.coeffs.end()) {
        x.coeffs.emplace(j, v);
    } else {
        it->second = vec_add(it->second, v);
        if (vec_is_zero(it->second)) x.coeffs.erase(it);
    }
}

}  // namespace

bool operator==(const InducedElement& a, const InducedElement& b) {
    return a.sig == b.sig && a.base == b.base && a.twist == b.twist && a.coeffs == b.coeffs;
}

InducedElement operator+(const InducedElement& a, const InducedElement& b) {
    if (a.sig != b.sig || a.base != b.base || a.twist != b.twist)
        throw std::invalid_argument("induced add: mismatch");
    InducedElement r = a;
    for (const auto& [j, v] : b.coeffs) induced_add_term(r, j, v);
    return r;
}

InducedElement operator-(const InducedElement& a, const InducedElement& b) {
    InducedElement neg{b.sig, b.base, b.twist, {}};
    for (const auto& [j, v] : b.coeffs) neg.coeffs.emplace(j, vec_scale(Rat(-1), v));
    return a + neg;
}

InducedElement induced_zero(const SignaturePtr& sig, const ModulePtr& base, Twist twist) {
    check_plain_kind(sig);
    return InducedElement{sig, base, twist, {}};
}

InducedElement induced_normalize(const SignaturePtr& sig, const ModulePtr& base, Twist twist,
                                 const std::vector<std::pair<Vec, OrePoly>>& pairs) {
    InducedElement x = induced_zero(sig, base, twist);
    for (const auto& [m, g] : pairs) {
        if (g.sig != sig) throw std::invalid_argument("induced_normalize: signature mismatch");
        for (const auto& [j, b] : g.coeffs) {
            Vec crossed = twist == Twist::alpha ? sig->alpha().apply(b) : b;
            induced_add_term(x, j, base->act(m, crossed));
        }
    }
    return x;
}

InducedElement induced_j_prime(const InducedElement& x, const Matrix& t_act) {
    if (x.twist != Twist::alpha)
        throw std::invalid_argument("induced_j_prime expects a twisted element");
    InducedElement r = induced_zero(x.sig, x.base, Twist::none);
    for (const auto& [j, m] : x.coeffs) {
        induced_add_term(r, j + 1, m);
        induced_add_term(r, j, vec_scale(Rat(-1), mat_vec(t_act, m)));
    }
    return r;
}

Vec induced_mult(const InducedElement& x, const OreModule& m) {
    if (x.twist != Twist::none)
        throw std::invalid_argument("induced_mult expects an untwisted element");
    Vec result(m.base->dim);
    for (const auto& [j, v] : x.coeffs) {
        Vec w = v;
        if (j >= 0) {
            for (long s = 0; s < j; ++s) w = mat_vec(m.t_act, w);
        } else {
            if (!m.t_inv) throw std::invalid_argument("negative degree without Laurent module");
            for (long s = 0; s < -j; ++s) w = mat_vec(*m.t_inv, w);
        }
        result = vec_add(result, w);
    }
    return result;
}

}  // namespace orehom

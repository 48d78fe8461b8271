#include "orehom/topology.hpp"

#include <algorithm>

namespace orehom {

Rat Seminorm::eval(const Vec& v) const {
    if (v.size() != weights.size()) throw std::invalid_argument("seminorm: dimension mismatch");
    Rat s(0);
    for (std::size_t i = 0; i < v.size(); ++i) s += rat_abs(v[i]) * weights[i];
    return s;
}

Rat localizability_constant(const Matrix& op, const Seminorm& s) {
    Rat best(0);
    for (std::size_t i = 0; i < s.weights.size(); ++i) {
        Rat c = s.eval(op.column(i)) / s.weights[i];
        if (c > best) best = c;
    }
    return best;
}

CheckReport audit_submultiplicative(const Seminorm& s, Rng& rng, int trials) {
    CheckReport rep;
    const auto& a = *s.algebra;
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t j = 0; j < a.dim; ++j) {
            if (s.eval(a.mul(a.basis_vec(i), a.basis_vec(j))) > s.weights[i] * s.weights[j]) {
                rep.fail("submultiplicativity fails at basis pair (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
                return rep;
            }
        }
    for (int t = 0; t < trials; ++t) {
        Vec x(a.dim), y(a.dim);
        for (auto& e : x) e = rng.small_rational();
        for (auto& e : y) e = rng.small_rational();
        if (s.eval(a.mul(x, y)) > s.eval(x) * s.eval(y)) {
            rep.fail("submultiplicativity fails on a random pair");
            return rep;
        }
    }
    return rep;
}

Rat holo_norm(const OrePoly& f, const Seminorm& lambda, const Rat& rho) {
    Rat s(0);
    for (const auto& [k, a] : f.coeffs) s += lambda.eval(a) * rat_pow(rho, k < 0 ? -k : k);
    return s;
}

Rat tensor_gamma(const TensorElement& x, const Seminorm& l1, const Rat& rho1, const Seminorm& l2,
                 const Rat& rho2) {
    Rat s(0);
    Rat unit = l2.unit_norm();
    for (const auto& [j, f] : x.coeffs)
        s += holo_norm(f, l1, rho1) * unit * rat_pow(rho2, j < 0 ? -j : j);
    return s;
}

EstimateReport verify_holo_estimate(const OrePoly& f, const Seminorm& l1, const Seminorm& l2,
                                    const Rat& rho1, const Rat& rho2) {
    EstimateReport rep;
    Rat lhs = tensor_gamma(holo_D(f), l1, rho1, l2, rho2);
    Rat bound_rho;
    if (is_laurent(f.sig->kind())) {
        bound_rho = Rat(2) * (rho1 + rho2 + 1);
    } else {
        bound_rho = rho1 > rho2 ? rho1 : rho2;
        if (bound_rho < 1) bound_rho = 1;
        bound_rho *= 2;
    }
    rep.add("gamma(Df) vs ||f||", lhs, holo_norm(f, l1, bound_rho));
    return rep;
}

bool operator==(const CrossedElement& a, const CrossedElement& b) {
    return a.base == b.base && a.coeffs == b.coeffs;
}

CrossedElement crossed_zero(const AlgebraPtr& base) { return CrossedElement{base, {}}; }

CrossedElement crossed_term(const AlgebraPtr& base, const Vec& r, long n) {
    CrossedElement e{base, {}};
    if (!vec_is_zero(r)) e.coeffs.emplace(n, r);
    return e;
}

CrossedElement crossed_add(const CrossedElement& a, const CrossedElement& b) {
    CrossedElement r = a;
    for (const auto& [n, v] : b.coeffs) {
        auto it = r.coeffs.find(n);
        if (it == r.coeffs.end()) {
            r.coeffs.emplace(n, v);
        } else {
            it->second = vec_add(it->second, v);
            if (vec_is_zero(it->second)) r.coeffs.erase(it);
        }
    }
    return r;
}

CrossedElement crossed_scale(const Rat& c, const CrossedElement& a) {
    CrossedElement r{a.base, {}};
    if (c == 0) return r;
    for (const auto& [n, v] : a.coeffs) r.coeffs.emplace(n, vec_scale(c, v));
    return r;
}

TemperedAction::TemperedAction(AlgebraPtr a, AlgebraMorphism gen, std::vector<Rat> p, long range)
    : algebra(std::move(a)), alpha1(std::move(gen)), poly(std::move(p)), check_range(range) {
    auto inv = inverse(alpha1.matrix);
    if (!inv) throw std::invalid_argument("tempered action requires an automorphism");
    alpha_inv_ = std::move(*inv);
}

Matrix TemperedAction::power(long n) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;
    Matrix result = Matrix::identity(algebra->dim);
    const Matrix& step = n >= 0 ? alpha1.matrix : alpha_inv_;
    for (long i = 0; i < (n >= 0 ? n : -n); ++i) result = step * result;
    cache_.emplace(n, result);
    return result;
}

Rat poly_abs_eval(const std::vector<Rat>& p, long n) {
    Rat v(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * Rat(n) + *it;
    return rat_abs(v);
}

CrossedElement convolve(const CrossedElement& f, const CrossedElement& g,
                        const TemperedAction& act) {
    if (f.base != g.base || f.base != act.algebra)
        throw std::invalid_argument("convolve: algebra mismatch");
    CrossedElement out = crossed_zero(f.base);
    for (const auto& [y, fy] : f.coeffs)
        for (const auto& [z, gz] : g.coeffs) {
            Vec term = f.base->mul(fy, act.apply(y, gz));
            out = crossed_add(out, crossed_term(f.base, term, y + z));
        }
    return out;
}

CrossedElement convolve_opposite(const CrossedElement& f, const CrossedElement& g,
                                 const TemperedAction& act) {
    if (f.base != g.base || f.base != act.algebra)
        throw std::invalid_argument("convolve: algebra mismatch");
    CrossedElement out = crossed_zero(f.base);
    for (const auto& [z, fz] : f.coeffs)
        for (const auto& [y, gy] : g.coeffs) {
            Vec term = f.base->mul(act.apply(-y, fz), gy);
            out = crossed_add(out, crossed_term(f.base, term, z + y));
        }
    return out;
}

CrossedElement iso_i(const CrossedElement& f, const TemperedAction& act) {
    CrossedElement out = crossed_zero(f.base);
    for (const auto& [n, v] : f.coeffs) out.coeffs.emplace(n, act.apply(-n, v));
    return out;
}

CrossedElement iso_i_inverse(const CrossedElement& f, const TemperedAction& act) {
    CrossedElement out = crossed_zero(f.base);
    for (const auto& [n, v] : f.coeffs) out.coeffs.emplace(n, act.apply(n, v));
    return out;
}

CrossedTensor crossed_D(const CrossedElement& f) {
    CrossedTensor out{f.base, {}};
    auto add = [&](long j, const Vec& r, long k) {
        auto it = out.coeffs.find(j);
        if (it == out.coeffs.end()) it = out.coeffs.emplace(j, crossed_zero(f.base)).first;
        it->second = crossed_add(it->second, crossed_term(f.base, r, k));
        if (it->second.is_zero()) out.coeffs.erase(it);
    };
    for (const auto& [n, r] : f.coeffs) {
        if (n >= 0) {
            for (long k = 0; k < n; ++k) add(n - k - 1, r, k);
        } else {
            for (long k = 1; k <= -n; ++k) add(n + k - 1, vec_scale(Rat(-1), r), -k);
        }
    }
    return out;
}

Rat crossed_norm(const CrossedElement& f, const Seminorm& lambda, long k) {
    Rat s(0);
    for (const auto& [n, v] : f.coeffs)
        s += lambda.eval(v) * rat_pow(Rat((n < 0 ? -n : n) + 1), k);
    return s;
}

Rat crossed_gamma(const CrossedTensor& x, const Seminorm& l1, long k1, const Seminorm& l2,
                  long k2) {
    Rat s(0);
    Rat unit = l2.unit_norm();
    for (const auto& [j, f] : x.coeffs)
        s += crossed_norm(f, l1, k1) * unit * rat_pow(Rat((j < 0 ? -j : j) + 1), k2);
    return s;
}

EstimateReport verify_crossed_estimate(const CrossedElement& f, const Seminorm& l1,
                                       const Seminorm& l2, long k1, long k2) {
    EstimateReport rep;
    long m = std::max(k1, k2);
    for (const auto& [n, r] : f.coeffs) {
        if (n == 0) continue;  // D kills degree zero
        CrossedElement term = crossed_term(f.base, r, n);
        Rat lhs = crossed_gamma(crossed_D(term), l1, k1, l2, k2);
        Rat rhs = n >= 1 ? crossed_norm(term, l1, 2 * m + 1)
                         : Rat(2) * crossed_norm(term, l1, 4 * m + 1);
        rep.add("term n=" + std::to_string(n), lhs, rhs);
    }
    rep.add("total", crossed_gamma(crossed_D(f), l1, k1, l2, k2),
            Rat(2) * crossed_norm(f, l1, 4 * m + 1));
    return rep;
}

TemperedReport check_tempered(const TemperedAction& act, const std::vector<Seminorm>& family) {
    TemperedReport rep;
    const auto& a = *act.algebra;
    for (const auto& lambda : family)
        for (long n = -act.check_range; n <= act.check_range; ++n) {
            Matrix pw = act.power(n);
            for (std::size_t r = 0; r < a.dim; ++r) {
                Rat lhs = lambda.eval(pw.column(r));
                Rat rhs = poly_abs_eval(act.poly, n) * lambda.weights[r];
                if (lhs > rhs) {
                    rep.ok = false;
                    rep.rows.push_back({"lambda=" + lambda.label + " n=" + std::to_string(n) +
                                            " r=" + std::to_string(r),
                                        lhs, rhs, false});
                }
            }
        }
    if (!rep.ok) {
        // Fit C (|n|+1)^m. A monomial of degree m is accepted for a row only
        // when the growth factor at the range boundary stays within
        // ((N+1)/N)^m on both sides; exponential growth fails every m here.
        const long n_max = act.check_range;
        const long m_cap = 4;
        long needed = -1;
        bool all_fit = true;
        for (const auto& lambda : family) {
            for (std::size_t r = 0; r < a.dim && all_fit; ++r) {
                std::map<long, Rat> g;
                for (long n = -n_max; n <= n_max; ++n)
                    g[n] = lambda.eval(act.power(n).column(r)) / lambda.weights[r];
                long row_m = -1;
                for (long m = 0; m <= m_cap; ++m) {
                    Rat grow = rat_pow(Rat(n_max + 1) / Rat(n_max), m);
                    if (g[n_max] <= g[n_max - 1] * grow && g[-n_max] <= g[-(n_max - 1)] * grow) {
                        row_m = m;
                        break;
                    }
                }
                if (row_m < 0)
                    all_fit = false;
                else
                    needed = std::max(needed, row_m);
            }
            if (!all_fit) break;
        }
        if (all_fit && needed >= 0) {
            Rat best(0);
            for (const auto& lambda : family)
                for (long n = -n_max; n <= n_max; ++n)
                    for (std::size_t r = 0; r < a.dim; ++r) {
                        Rat ratio = lambda.eval(act.power(n).column(r)) /
                                    (lambda.weights[r] * rat_pow(Rat((n < 0 ? -n : n) + 1), needed));
                        if (ratio > best) best = ratio;
                    }
            rep.fit_found = true;
            rep.fit_constant = best;
            rep.fit_degree = needed;
        }
    }
    return rep;
}

}  // namespace orehom

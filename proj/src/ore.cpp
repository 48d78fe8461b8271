#include "orehom/ore.hpp"

namespace orehom {

OreSignature::OreSignature(AlgebraPtr base, AlgebraMorphism alpha,
                           std::optional<SigmaDerivation> delta, OreKind kind, std::string name)
    : base_(std::move(base)), alpha_(std::move(alpha)), delta_(std::move(delta)), kind_(kind),
      name_(std::move(name)) {
    auto inv = inverse(alpha_.matrix);
    if (inv) alpha_inv_ = std::move(*inv);
    ops_.push_back({{0, Matrix::identity(base_->dim)}});
}

const Matrix& OreSignature::alpha_inverse() const {
    if (!alpha_inv_) throw std::invalid_argument("signature '" + name_ + "': alpha is not invertible");
    return *alpha_inv_;
}

bool OreSignature::delta_is_zero() const { return !delta_ || delta_->matrix.is_zero(); }

Matrix OreSignature::alpha_power(long n) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = alpha_pow_.find(n);
    if (it != alpha_pow_.end()) return it->second;
    Matrix result = Matrix::identity(base_->dim);
    const Matrix& step = n >= 0 ? alpha_.matrix : alpha_inverse();
    for (long i = 0; i < (n >= 0 ? n : -n); ++i) result = step * result;
    alpha_pow_.emplace(n, result);
    return result;
}

std::map<long, Matrix> OreSignature::rewrite_ops(long n) const {
    if (n < 0) {
        if (!is_laurent(kind_))
            throw std::invalid_argument("negative power outside a Laurent signature");
        // delta = 0 here, so t^n a = alpha^n(a) t^n on either side.
        return {{n, alpha_power(n)}};
    }
    std::lock_guard<std::mutex> lock(mutex_);
    while (static_cast<long>(ops_.size()) <= n) {
        const auto& prev = ops_.back();
        std::map<long, Matrix> next;
        const Matrix& am = alpha_.matrix;
        for (const auto& [k, op] : prev) {
            // plain: N[n][k] = alpha . N[n-1][k-1] + delta . N[n-1][k]
            // opposite: composition order flips.
            Matrix shifted = is_opposite(kind_) ? op * am : am * op;
            auto it = next.find(k + 1);
            if (it == next.end())
                next.emplace(k + 1, std::move(shifted));
            else
                it->second = it->second + shifted;
            if (delta_ && !delta_->matrix.is_zero()) {
                const Matrix& dm = delta_->matrix;
                Matrix dpart = is_opposite(kind_) ? op * dm : dm * op;
                auto jt = next.find(k);
                if (jt == next.end())
                    next.emplace(k, std::move(dpart));
                else
                    jt->second = jt->second + dpart;
            }
        }
        for (auto it = next.begin(); it != next.end();)
            it = it->second.is_zero() ? next.erase(it) : std::next(it);
        ops_.push_back(std::move(next));
    }
    return ops_[static_cast<std::size_t>(n)];
}

SignaturePtr make_signature(AlgebraPtr base, AlgebraMorphism alpha,
                            std::optional<SigmaDerivation> delta, OreKind kind, std::string name) {
    if (delta && delta->matrix.is_zero()) delta.reset();
    if (delta) {
        auto expect =
            is_opposite(kind) ? DerivationFlavor::opposite : DerivationFlavor::standard;
        if (delta->flavor != expect)
            throw std::invalid_argument("signature '" + name + "': derivation flavor does not match kind");
    }
    auto sig = std::make_shared<OreSignature>(std::move(base), std::move(alpha), std::move(delta),
                                              kind, std::move(name));
    if (is_laurent(kind)) {
        if (!sig->delta_is_zero())
            throw std::invalid_argument("signature '" + sig->name() + "': Laurent kind requires delta = 0");
        if (!sig->alpha_invertible())
            throw std::invalid_argument("signature '" + sig->name() +
                                        "': Laurent kind requires invertible alpha");
    }
    return sig;
}

SignaturePtr opposite_signature(const SignaturePtr& sig) {
    if (is_opposite(sig->kind()))
        throw std::invalid_argument("opposite_signature of an opposite signature");
    {
        std::lock_guard<std::mutex> lock(sig->mutex_);
        if (sig->opposite_) return sig->opposite_;
    }
    const Matrix& ainv = sig->alpha_inverse();
    AlgebraMorphism alpha_t{sig->base(), sig->base(), ainv};
    std::optional<SigmaDerivation> delta_t;
    if (!sig->delta_is_zero()) {
        Matrix dt = -(sig->delta()->matrix * ainv);
        delta_t = SigmaDerivation{sig->base(), alpha_t, dt, DerivationFlavor::opposite};
    }
    OreKind k = sig->kind() == OreKind::laurent ? OreKind::opposite_laurent
                                                : OreKind::opposite_polynomial;
    auto op = make_signature(sig->base(), alpha_t, delta_t, k, sig->name() + "^op");
    std::lock_guard<std::mutex> lock(sig->mutex_);
    if (!sig->opposite_) sig->opposite_ = op;
    return sig->opposite_;
}

namespace {

void add_term(OrePoly& p, long k, const Vec& v) {
    if (vec_is_zero(v)) return;
    auto it = p.coeffs.find(k);
    if (it == p.coeffs.end()) {
        p.coeffs.emplace(k, v);
    } else {
        it->second = vec_add(it->second, v);
        if (vec_is_zero(it->second)) p.coeffs.erase(it);
    }
}

void require_degree_ok(const SignaturePtr& sig, long k) {
    if (k < 0 && !is_laurent(sig->kind()))
        throw std::invalid_argument("negative degree in non-Laurent signature '" + sig->name() + "'");
}

}  // namespace

OrePoly ore_zero(const SignaturePtr& sig) { return OrePoly{sig, {}}; }

OrePoly ore_const(const SignaturePtr& sig, const Vec& a) {
    OrePoly p{sig, {}};
    add_term(p, 0, a);
    return p;
}

OrePoly ore_one(const SignaturePtr& sig) { return ore_const(sig, sig->base()->unit); }

OrePoly ore_monomial(const SignaturePtr& sig, const Vec& a, long k) {
    require_degree_ok(sig, k);
    OrePoly p{sig, {}};
    add_term(p, k, a);
    return p;
}

OrePoly t_power(const SignaturePtr& sig, long k) { return ore_monomial(sig, sig->base()->unit, k); }

bool operator==(const OrePoly& f, const OrePoly& g) {
    return f.sig == g.sig && f.coeffs == g.coeffs;
}

OrePoly operator+(const OrePoly& f, const OrePoly& g) {
    if (f.sig != g.sig) throw std::invalid_argument("ore add: signature mismatch");
    OrePoly r = f;
    for (const auto& [k, v] : g.coeffs) add_term(r, k, v);
    return r;
}

OrePoly operator-(const OrePoly& f) { return scale(Rat(-1), f); }

OrePoly operator-(const OrePoly& f, const OrePoly& g) { return f + (-g); }

OrePoly scale(const Rat& c, const OrePoly& f) {
    OrePoly r{f.sig, {}};
    if (c == 0) return r;
    for (const auto& [k, v] : f.coeffs) r.coeffs.emplace(k, vec_scale(c, v));
    return r;
}

OrePoly ore_mul(const OrePoly& f, const OrePoly& g) {
    if (f.sig != g.sig) throw std::invalid_argument("ore_mul: signature mismatch");
    const auto& sig = f.sig;
    const auto& base = *sig->base();
    OrePoly r{sig, {}};
    if (!is_opposite(sig->kind())) {
        for (const auto& [i, a] : f.coeffs) {
            if (i == 0) {
                for (const auto& [j, b] : g.coeffs) add_term(r, j, base.mul(a, b));
                continue;
            }
            auto ops = sig->rewrite_ops(i);
            for (const auto& [j, b] : g.coeffs)
                for (const auto& [k, op] : ops) add_term(r, k + j, base.mul(a, mat_vec(op, b)));
        }
    } else {
        for (const auto& [j, b] : g.coeffs) {
            if (j == 0) {
                for (const auto& [i, a] : f.coeffs) add_term(r, i, base.mul(a, b));
                continue;
            }
            auto ops = sig->rewrite_ops(j);
            for (const auto& [i, a] : f.coeffs)
                for (const auto& [k, op] : ops) add_term(r, i + k, base.mul(mat_vec(op, a), b));
        }
    }
    return r;
}

OrePoly to_opposite(const OrePoly& f) {
    auto op = opposite_signature(f.sig);
    OrePoly r = ore_zero(op);
    for (const auto& [k, a] : f.coeffs) r = r + ore_mul(ore_const(op, a), t_power(op, k));
    return r;
}

OrePoly from_opposite(const OrePoly& f, const SignaturePtr& original) {
    if (f.sig != opposite_signature(original))
        throw std::invalid_argument("from_opposite: signature mismatch");
    OrePoly r = ore_zero(original);
    for (const auto& [k, a] : f.coeffs) r = r + ore_mul(t_power(original, k), ore_const(original, a));
    return r;
}

CheckReport check_ore_module(const OreModule& m) {
    CheckReport rep;
    const auto& sig = *m.sig;
    if (is_opposite(sig.kind())) {
        rep.fail("ore modules are defined over plain-kind signatures");
        return rep;
    }
    if (m.base->algebra != sig.base()) {
        rep.fail("base module is over a different algebra");
        return rep;
    }
    const auto& mod = *m.base;
    for (std::size_t i = 0; i < sig.base()->dim; ++i) {
        Vec e = sig.base()->basis_vec(i);
        Matrix lhs = mod.action_of(e) * m.t_act;
        Matrix rhs = m.t_act * mod.action_of(sig.alpha().apply(e));
        if (sig.delta()) rhs = rhs + mod.action_of(sig.delta()->apply(e));
        if (!(lhs == rhs)) {
            rep.fail("t-action incompatible with the rewriting relation at basis element " +
                     std::to_string(i));
            return rep;
        }
    }
    if (is_laurent(sig.kind())) {
        if (!m.t_inv) {
            rep.fail("Laurent module without inverse t-action");
            return rep;
        }
        if (!(m.t_act * *m.t_inv == Matrix::identity(mod.dim)) ||
            !(*m.t_inv * m.t_act == Matrix::identity(mod.dim)))
            rep.fail("t-action and its inverse do not cancel");
    }
    return rep;
}

Vec ore_act(const OreModule& m, const Vec& v, const OrePoly& f) {
    if (f.sig != m.sig) throw std::invalid_argument("ore_act: signature mismatch");
    Vec result(m.base->dim);
    for (const auto& [k, a] : f.coeffs) {
        Vec w = m.base->act(v, a);
        if (k >= 0) {
            for (long s = 0; s < k; ++s) w = mat_vec(m.t_act, w);
        } else {
            if (!m.t_inv) throw std::invalid_argument("negative degree without Laurent module");
            for (long s = 0; s < -k; ++s) w = mat_vec(*m.t_inv, w);
        }
        result = vec_add(result, w);
    }
    return result;
}

}  // namespace orehom

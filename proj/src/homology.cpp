#include "orehom/homology.hpp"

#include <algorithm>

namespace orehom {

std::string dh_to_string(const DhValue& v) {
    return v.at_least ? "at-least-" + std::to_string(v.value) : std::to_string(v.value);
}

ModulePtr free_module(const AlgebraPtr& a, std::size_t k) {
    RightModule reg = regular_module(a);
    RightModule f;
    f.algebra = a;
    f.dim = k * a->dim;
    f.name = a->name + "^" + std::to_string(k);
    for (std::size_t i = 0; i < a->dim; ++i) {
        Matrix m(f.dim, f.dim);
        for (std::size_t s = 0; s < k; ++s)
            for (std::size_t r = 0; r < a->dim; ++r)
                for (std::size_t c = 0; c < a->dim; ++c)
                    m.at(s * a->dim + r, s * a->dim + c) = reg.action[i].at(r, c);
        f.action.push_back(std::move(m));
    }
    return std::make_shared<RightModule>(std::move(f));
}

namespace {

Vec generator_vector(const AlgebraPtr& a, std::size_t k, std::size_t s) {
    Vec g(k * a->dim);
    for (std::size_t r = 0; r < a->dim; ++r) g[s * a->dim + r] = a->unit[r];
    return g;
}

// Span of v . A inside m, as a column matrix.
Matrix cyclic_span(const RightModule& m, const Vec& v) {
    std::vector<Vec> cols;
    for (std::size_t r = 0; r < m.algebra->dim; ++r) cols.push_back(mat_vec(m.action[r], v));
    Matrix span = Matrix::from_columns(m.dim, cols);
    auto rr = rref(span.transpose());
    std::vector<Vec> basis;
    for (std::size_t kk = 0; kk < rr.pivots.size(); ++kk) basis.push_back(rr.reduced.row(kk));
    return Matrix::from_columns(m.dim, basis);
}

std::vector<Vec> minimal_generators(const RightModule& m) {
    std::vector<Vec> candidates;
    Vec all(m.dim);
    for (auto& e : all) e = 1;
    candidates.push_back(all);
    for (std::size_t i = 0; i < m.dim; ++i) {
        Vec v(m.dim);
        v[i] = 1;
        candidates.push_back(v);
    }
    for (std::size_t i = 0; i + 1 < m.dim; ++i)
        for (std::size_t j = i + 1; j < m.dim; ++j) {
            Vec v(m.dim);
            v[i] = 1;
            v[j] = 1;
            candidates.push_back(v);
        }

    std::vector<Vec> gens;
    Matrix span(m.dim, 0);
    std::size_t covered = 0;
    while (covered < m.dim) {
        std::size_t best_gain = 0;
        std::size_t best_idx = candidates.size();
        Matrix best_span(m.dim, 0);
        for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
            Matrix joint = hstack(span, cyclic_span(m, candidates[ci]));
            std::size_t r = rank(joint);
            if (r - covered > best_gain) {
                best_gain = r - covered;
                best_idx = ci;
                best_span = joint;
                if (r == m.dim) break;
            }
        }
        if (best_idx == candidates.size())
            throw std::logic_error("minimal_generators: candidates do not span the module");
        gens.push_back(candidates[best_idx]);
        span = best_span;
        covered += best_gain;
    }
    return gens;
}

}  // namespace

FreeCover free_cover(const ModulePtr& m, CoverMode mode) {
    if (m->dim == 0) throw std::invalid_argument("free cover of the zero module");
    std::vector<Vec> gens;
    if (mode == CoverMode::full) {
        for (std::size_t i = 0; i < m->dim; ++i) {
            Vec v(m->dim);
            v[i] = 1;
            gens.push_back(v);
        }
    } else {
        gens = minimal_generators(*m);
    }
    const auto& a = m->algebra;
    FreeCover fc;
    fc.generators = gens.size();
    fc.cover = free_module(a, gens.size());
    Matrix surj(m->dim, gens.size() * a->dim);
    for (std::size_t s = 0; s < gens.size(); ++s)
        for (std::size_t r = 0; r < a->dim; ++r)
            surj.set_column(s * a->dim + r, mat_vec(m->action[r], gens[s]));
    fc.surjection = std::move(surj);
    if (rank(fc.surjection) != m->dim) throw std::logic_error("free cover is not surjective");
    return fc;
}

std::vector<Matrix> hom_basis(const RightModule& m, const RightModule& n) {
    const std::size_t vars = n.dim * m.dim;
    const std::size_t adim = m.algebra->dim;
    Matrix system(adim * n.dim * m.dim, vars);
    std::size_t row = 0;
    for (std::size_t r = 0; r < adim; ++r) {
        // F rho_m(e_r) - rho_n(e_r) F = 0
        const Matrix& am = m.action[r];
        const Matrix& an = n.action[r];
        for (std::size_t i = 0; i < n.dim; ++i)
            for (std::size_t j = 0; j < m.dim; ++j) {
                for (std::size_t k = 0; k < m.dim; ++k)
                    if (am.at(k, j) != 0) system.at(row, i * m.dim + k) += am.at(k, j);
                for (std::size_t k = 0; k < n.dim; ++k)
                    if (an.at(i, k) != 0) system.at(row, k * m.dim + j) -= an.at(i, k);
                ++row;
            }
    }
    Matrix ker = kernel_basis(system);
    std::vector<Matrix> basis;
    for (std::size_t c = 0; c < ker.cols(); ++c) {
        Matrix f(n.dim, m.dim);
        for (std::size_t i = 0; i < n.dim; ++i)
            for (std::size_t j = 0; j < m.dim; ++j) f.at(i, j) = ker.at(i * m.dim + j, c);
        basis.push_back(std::move(f));
    }
    return basis;
}

namespace {

// Does the surjection pi : F -> K (F free with t generators) split?
// Sections are sought in Hom_A(K, A)^t.
bool cover_splits(const RightModule& k, const FreeCover& fc) {
    if (k.dim == 0) return true;
    const auto& a = k.algebra;
    RightModule reg = regular_module(a);
    std::vector<Matrix> homs = hom_basis(k, reg);
    if (homs.empty()) return false;
    const std::size_t t = fc.generators;
    const std::size_t h = homs.size();
    // pi o s = id with s assembled from copies: unknowns x_{j,b}.
    Matrix system(k.dim * k.dim, t * h);
    Vec rhs(k.dim * k.dim);
    for (std::size_t j = 0; j < t; ++j)
        for (std::size_t b = 0; b < h; ++b) {
            Matrix pij(k.dim, a->dim);
            for (std::size_t i = 0; i < k.dim; ++i)
                for (std::size_t r = 0; r < a->dim; ++r)
                    pij.at(i, r) = fc.surjection.at(i, j * a->dim + r);
            Matrix comp = pij * homs[b];
            for (std::size_t i = 0; i < k.dim; ++i)
                for (std::size_t c = 0; c < k.dim; ++c)
                    system.at(i * k.dim + c, j * h + b) = comp.at(i, c);
        }
    for (std::size_t i = 0; i < k.dim; ++i) rhs[i * k.dim + i] = 1;
    return solve(system, rhs).has_value();
}

}  // namespace

Resolution resolve(const ModulePtr& m, std::size_t max_len, CoverMode mode,
                   bool allow_projective_tail) {
    if (m->dim == 0) throw std::invalid_argument("resolve: zero module");
    Resolution res;
    res.target = m;
    FreeCover fc = free_cover(m, mode);
    if (allow_projective_tail && mode == CoverMode::minimal && cover_splits(*m, fc)) {
        // The module is projective: it resolves itself.
        res.modules.push_back(m);
        res.gens.push_back(0);
        res.is_free.push_back(false);
        res.augmentation = Matrix::identity(m->dim);
        res.terminated = true;
        return res;
    }
    res.modules.push_back(fc.cover);
    res.gens.push_back(fc.generators);
    res.is_free.push_back(true);
    res.augmentation = fc.surjection;

    Matrix cur_surj = fc.surjection;
    for (std::size_t step = 0; step < max_len; ++step) {
        Matrix kb = kernel_basis(cur_surj);
        if (kb.cols() == 0) {
            res.terminated = true;
            return res;
        }
        auto kmod = std::make_shared<RightModule>(
            submodule(*res.modules.back(), kb, "syz" + std::to_string(step + 1)));
        FreeCover next = free_cover(kmod, mode);
        if (allow_projective_tail && mode == CoverMode::minimal && cover_splits(*kmod, next)) {
            res.modules.push_back(kmod);
            res.gens.push_back(0);
            res.is_free.push_back(false);
            res.diffs.push_back(kb);
            res.terminated = true;
            return res;
        }
        res.modules.push_back(next.cover);
        res.gens.push_back(next.generators);
        res.is_free.push_back(true);
        res.diffs.push_back(kb * next.surjection);
        cur_surj = next.surjection;
    }
    return res;
}

CheckReport verify_resolution(const Resolution& r) {
    CheckReport rep;
    if (rank(r.augmentation) != r.target->dim) rep.fail("augmentation is not surjective");
    if (!r.diffs.empty() && !(r.augmentation * r.diffs[0]).is_zero()) rep.fail("eps o d_0 != 0");
    for (std::size_t i = 0; i + 1 < r.diffs.size(); ++i)
        if (!(r.diffs[i] * r.diffs[i + 1]).is_zero())
            rep.fail("d_" + std::to_string(i) + " o d_" + std::to_string(i + 1) + " != 0");
    // Exactness: ker(previous map) = im(d_i), by rank counting.
    std::size_t ker_dim = r.modules[0]->dim - rank(r.augmentation);
    for (std::size_t i = 0; i < r.diffs.size(); ++i) {
        if (rank(r.diffs[i]) != ker_dim) rep.fail("exactness fails at degree " + std::to_string(i));
        ker_dim = r.modules[i + 1]->dim - rank(r.diffs[i]);
    }
    if (r.terminated && !r.diffs.empty() && !r.is_free.back() && ker_dim != 0)
        rep.fail("projective tail is not embedded exactly");
    return rep;
}

namespace {

// Basis of Hom_A(C_i, N); free modules get the generator-image basis.
struct HomSpace {
    std::vector<Matrix> basis;  // each N.dim x C_i.dim
    bool free = false;
    std::size_t gens = 0;

    std::size_t dim() const { return basis.size(); }
};

HomSpace hom_space(const Resolution& r, std::size_t i, const RightModule& n) {
    HomSpace hs;
    const auto& a = r.target->algebra;
    if (r.is_free[i]) {
        hs.free = true;
        hs.gens = r.gens[i];
        for (std::size_t s = 0; s < hs.gens; ++s)
            for (std::size_t w = 0; w < n.dim; ++w) {
                // gen_s |-> e_w extended A-linearly: (s', r) column is
                // delta_{s s'} e_w . e_r.
                Matrix f(n.dim, r.modules[i]->dim);
                for (std::size_t r2 = 0; r2 < a->dim; ++r2) {
                    Vec col = n.action[r2].column(w);
                    for (std::size_t q = 0; q < n.dim; ++q) f.at(q, s * a->dim + r2) = col[q];
                }
                hs.basis.push_back(std::move(f));
            }
    } else {
        hs.basis = hom_basis(*r.modules[i], n);
    }
    return hs;
}

Vec hom_coordinates(const HomSpace& hs, const Matrix& f, const AlgebraPtr& a,
                    const RightModule& n) {
    if (hs.free) {
        Vec coords(hs.dim());
        for (std::size_t s = 0; s < hs.gens; ++s) {
            Vec img = mat_vec(f, generator_vector(a, hs.gens, s));
            for (std::size_t w = 0; w < n.dim; ++w) coords[s * n.dim + w] = img[w];
        }
        return coords;
    }
    if (hs.basis.empty()) {
        if (!f.is_zero()) throw std::logic_error("nonzero hom in zero space");
        return {};
    }
    std::size_t rows = hs.basis[0].rows() * hs.basis[0].cols();
    Matrix system(rows, hs.basis.size());
    Vec rhs(rows);
    for (std::size_t b = 0; b < hs.basis.size(); ++b)
        for (std::size_t i = 0; i < hs.basis[b].rows(); ++i)
            for (std::size_t j = 0; j < hs.basis[b].cols(); ++j)
                system.at(i * hs.basis[b].cols() + j, b) = hs.basis[b].at(i, j);
    for (std::size_t i = 0; i < f.rows(); ++i)
        for (std::size_t j = 0; j < f.cols(); ++j) rhs[i * f.cols() + j] = f.at(i, j);
    auto x = solve(system, rhs);
    if (!x) throw std::logic_error("hom does not lie in the computed hom space");
    return *x;
}

}  // namespace

std::vector<std::size_t> ext_dims(const Resolution& res, const ModulePtr& n, std::size_t max_k) {
    const auto& a = res.target->algebra;
    const std::size_t levels = std::min(res.modules.size(), max_k + 2);
    std::vector<HomSpace> homs;
    for (std::size_t i = 0; i < levels; ++i) homs.push_back(hom_space(res, i, *n));

    std::vector<std::size_t> dstar_rank(levels, 0);
    for (std::size_t i = 0; i + 1 < levels; ++i) {
        if (homs[i].dim() == 0 || homs[i + 1].dim() == 0) continue;
        Matrix coords(homs[i + 1].dim(), homs[i].dim());
        for (std::size_t b = 0; b < homs[i].dim(); ++b) {
            Matrix pullback = homs[i].basis[b] * res.diffs[i];
            coords.set_column(b, hom_coordinates(homs[i + 1], pullback, a, *n));
        }
        dstar_rank[i] = rank(coords);
    }

    std::vector<std::size_t> dims;
    for (std::size_t k = 0; k <= max_k; ++k) {
        if (k >= res.modules.size()) {
            if (!res.terminated)
                throw std::invalid_argument("ext_dims: resolution too short for requested degree");
            dims.push_back(0);
            continue;
        }
        if (k + 1 >= res.modules.size() && !res.terminated)
            throw std::invalid_argument("ext_dims: resolution too short for requested degree");
        std::size_t ker = homs[k].dim() - (k + 1 < levels ? dstar_rank[k] : 0);
        std::size_t im = k == 0 ? 0 : dstar_rank[k - 1];
        dims.push_back(ker - im);
    }
    return dims;
}

std::vector<std::size_t> ext_dims(const ModulePtr& m, const ModulePtr& n, std::size_t max_k,
                                  CoverMode mode) {
    Resolution res = resolve(m, max_k + 1, mode);
    return ext_dims(res, n, max_k);
}

DhValue dh(const ModulePtr& m, std::size_t max_k) {
    if (m->dim == 0) throw std::invalid_argument("dh of the zero module");
    auto simples = simple_modules(m->algebra);
    Resolution res = resolve(m, max_k + 2);
    std::vector<std::vector<std::size_t>> table;
    for (const auto& s : simples)
        table.push_back(ext_dims(res, std::make_shared<RightModule>(s), max_k + 1));
    // Ext against the direct sum of the simples has no gaps below the
    // projective dimension, so the first all-zero degree pins the value.
    for (std::size_t k = 0; k <= max_k + 1; ++k) {
        bool all_zero = true;
        for (const auto& row : table)
            if (row[k] != 0) all_zero = false;
        if (all_zero) {
            if (k == 0) throw std::logic_error("nonzero module with Hom(m, simples) = 0");
            return DhValue{k - 1, false};
        }
    }
    return DhValue{max_k, true};
}

DhValue gldim(const AlgebraPtr& a, std::size_t max_k) {
    DhValue best{0, false};
    for (const auto& s : simple_modules(a)) {
        DhValue v = dh(std::make_shared<RightModule>(s), max_k);
        if (v.at_least || (!best.at_least && v.value > best.value)) best = v;
        if (best.at_least) break;
    }
    return best;
}

DhValue bidim(const AlgebraPtr& a, std::size_t max_k) {
    auto env = std::make_shared<FDAlgebra>(enveloping(*a));
    auto bim = std::make_shared<RightModule>(bimodule_as_right_module(a, env));
    return dh(bim, max_k);
}

CheckReport twist_invariance_check(const ModulePtr& m, const AlgebraMorphism& alpha,
                                   std::size_t max_k) {
    CheckReport rep;
    if (!inverse(alpha.matrix)) {
        rep.fail("twist_invariance_check requires an automorphism");
        return rep;
    }
    DhValue plain = dh(m, max_k);
    DhValue twisted = dh(std::make_shared<RightModule>(twist_module(*m, alpha)), max_k);
    if (!(plain == twisted))
        rep.fail("dh(M) = " + dh_to_string(plain) + " but dh(M_alpha) = " + dh_to_string(twisted));
    return rep;
}

namespace {

constexpr std::size_t kInf = static_cast<std::size_t>(-1);

std::size_t as_ext(const DhValue& v) { return v.at_least ? kInf : v.value; }
std::size_t ext_plus(std::size_t a, long d) {
    if (a == kInf) return kInf;
    long r = static_cast<long>(a) + d;
    return r < 0 ? 0 : static_cast<std::size_t>(r);
}
std::size_t ext_max(std::size_t a, std::size_t b) {
    if (a == kInf || b == kInf) return kInf;
    return std::max(a, b);
}
bool ext_le(std::size_t a, std::size_t b) { return b == kInf || (a != kInf && a <= b); }

}  // namespace

SubadditivityReport subadditivity_check(const ShortExactSequence& ses, std::size_t max_k) {
    SubadditivityReport rep;
    auto fail = [&](const std::string& msg) { rep.failures.push_back(msg); };

    ModuleMap inj{ses.sub, ses.middle, ses.inject};
    ModuleMap prj{ses.middle, ses.quotient, ses.project};
    if (!check_module_map(inj).ok) fail("injection is not a module map");
    if (!check_module_map(prj).ok) fail("projection is not a module map");
    if (rank(ses.inject) != ses.sub->dim) fail("injection is not injective");
    if (rank(ses.project) != ses.quotient->dim) fail("projection is not surjective");
    if (!(ses.project * ses.inject).is_zero()) fail("composite is not zero");
    if (ses.middle->dim != rank(ses.inject) + rank(ses.project))
        fail("sequence is not exact in the middle");
    if (!rep.failures.empty()) throw NotExactError(rep.failures.front());

    rep.sub = dh(ses.sub, max_k);
    rep.middle = dh(ses.middle, max_k);
    rep.quotient = dh(ses.quotient, max_k);
    std::size_t x1 = as_ext(rep.sub), x = as_ext(rep.middle), x2 = as_ext(rep.quotient);
    if (!ext_le(x, ext_max(x1, x2))) fail("dh(X) <= max(dh(X'), dh(X'')) fails");
    if (!ext_le(x1, ext_max(x, ext_plus(x2, -1)))) fail("dh(X') <= max(dh(X), dh(X'')-1) fails");
    if (!ext_le(x2, ext_max(x, ext_plus(x1, 1)))) fail("dh(X'') <= max(dh(X), dh(X')+1) fails");
    rep.ok = rep.failures.empty();
    return rep;
}

CheckReport retraction_check(const ModulePtr& m, const SignaturePtr& sig) {
    CheckReport rep;
    if (m->algebra != sig->base()) {
        rep.fail("module is not over the signature's base algebra");
        return rep;
    }
    for (std::size_t i = 0; i < m->dim; ++i) {
        Vec b(m->dim);
        b[i] = 1;
        InducedElement x = induced_normalize(sig, m, Twist::none, {{b, ore_one(sig)}});
        Vec back(m->dim);
        auto it = x.coeffs.find(0);
        if (it != x.coeffs.end()) back = it->second;
        if (back != b) {
            rep.fail("r(i(m)) != m at basis vector " + std::to_string(i));
            return rep;
        }
        if (x.coeffs.size() != 1) {
            rep.fail("i(m) is not concentrated in degree zero");
            return rep;
        }
        InducedElement shifted = induced_normalize(sig, m, Twist::none, {{b, t_power(sig, 1)}});
        if (shifted.coeffs.count(0)) {
            rep.fail("degree-shifted element hits degree zero");
            return rep;
        }
    }
    return rep;
}

InducedMap induced_from_matrix(const SignaturePtr& sig, const Matrix& d, std::size_t src_gens,
                               std::size_t dst_gens) {
    const std::size_t n = sig->base()->dim;
    if (d.cols() != src_gens * n || d.rows() != dst_gens * n)
        throw std::invalid_argument("induced_from_matrix: shape mismatch");
    Matrix cols(dst_gens * n, src_gens);
    for (std::size_t s = 0; s < src_gens; ++s)
        cols.set_column(s, mat_vec(d, generator_vector(sig->base(), src_gens, s)));
    InducedMap u{sig, src_gens, dst_gens, {}};
    if (!cols.is_zero()) u.comps.emplace(0, std::move(cols));
    return u;
}

namespace {

// v . w for v in destination coordinates (g generator blocks) and w in R.
Vec block_right_mult(const AlgebraPtr& a, const Vec& v, const Vec& w) {
    const std::size_t n = a->dim;
    const std::size_t g = v.size() / n;
    Vec out(v.size());
    for (std::size_t s = 0; s < g; ++s) {
        Vec blk(n);
        for (std::size_t r = 0; r < n; ++r) blk[r] = v[s * n + r];
        Vec prod = a->mul(blk, w);
        for (std::size_t r = 0; r < n; ++r) out[s * n + r] = prod[r];
    }
    return out;
}

void degvec_add(DegVec& x, long deg, const Vec& v) {
    if (vec_is_zero(v)) return;
    auto it = x.find(deg);
    if (it == x.end()) {
        x.emplace(deg, v);
    } else {
        it->second = vec_add(it->second, v);
        if (vec_is_zero(it->second)) x.erase(it);
    }
}

}  // namespace

DegVec induced_apply(const InducedMap& u, const DegVec& x) {
    const auto& a = u.sig->base();
    const std::size_t n = a->dim;
    DegVec out;
    for (const auto& [deg, vec] : x) {
        for (std::size_t s = 0; s < u.src_gens; ++s)
            for (std::size_t r = 0; r < n; ++r) {
                const Rat& coef = vec[s * n + r];
                if (coef == 0) continue;
                // u(gen_s e_r (x) t^deg) = (u(gen_s (x) 1) . e_r) . t^deg
                for (const auto& [l, mat] : u.comps) {
                    Vec col = mat.column(s);
                    for (const auto& [k, op] : u.sig->rewrite_ops(l)) {
                        Vec moved = block_right_mult(a, col, mat_vec(op, a->basis_vec(r)));
                        degvec_add(out, k + deg, vec_scale(coef, moved));
                    }
                }
            }
    }
    return out;
}

InducedMap induced_compose(const InducedMap& v, const InducedMap& u) {
    if (v.src_gens != u.dst_gens || v.sig != u.sig)
        throw std::invalid_argument("induced_compose: mismatch");
    InducedMap out{u.sig, u.src_gens, v.dst_gens, {}};
    const std::size_t n = u.sig->base()->dim;
    std::map<long, Matrix> comps;
    for (std::size_t s = 0; s < u.src_gens; ++s) {
        DegVec elem;
        for (const auto& [l, mat] : u.comps) degvec_add(elem, l, mat.column(s));
        DegVec img = induced_apply(v, elem);
        for (const auto& [deg, vec] : img) {
            auto it = comps.find(deg);
            if (it == comps.end()) it = comps.emplace(deg, Matrix(v.dst_gens * n, u.src_gens)).first;
            it->second.set_column(s, vec);
        }
    }
    for (auto& [deg, mat] : comps)
        if (!mat.is_zero()) out.comps.emplace(deg, std::move(mat));
    return out;
}

bool induced_is_zero(const InducedMap& u) { return u.comps.empty(); }

Matrix induced_window(const InducedMap& u, long src_lo, long src_hi, long dst_lo, long dst_hi) {
    const std::size_t n = u.sig->base()->dim;
    const std::size_t src_block = u.src_gens * n;
    const std::size_t dst_block = u.dst_gens * n;
    const std::size_t src_degs = static_cast<std::size_t>(src_hi - src_lo + 1);
    const std::size_t dst_degs = static_cast<std::size_t>(dst_hi - dst_lo + 1);
    Matrix w(dst_block * dst_degs, src_block * src_degs);
    for (long a = src_lo; a <= src_hi; ++a)
        for (std::size_t c = 0; c < src_block; ++c) {
            DegVec x;
            Vec v(src_block);
            v[c] = 1;
            x.emplace(a, v);
            DegVec img = induced_apply(u, x);
            std::size_t col = static_cast<std::size_t>(a - src_lo) * src_block + c;
            for (const auto& [deg, vec] : img) {
                if (deg < dst_lo || deg > dst_hi)
                    throw std::invalid_argument("induced_window: image leaves the window");
                for (std::size_t r = 0; r < dst_block; ++r)
                    w.at(static_cast<std::size_t>(deg - dst_lo) * dst_block + r, col) = vec[r];
            }
        }
    return w;
}

namespace {

InducedMap lift_step_zero(const SignaturePtr& sig, const OreModule& m, const Resolution& p,
                          const Resolution& q) {
    const std::size_t n = sig->base()->dim;
    InducedMap u0{sig, q.gens[0], p.gens[0], {}};
    std::map<long, Matrix> comps;
    for (std::size_t s = 0; s < q.gens[0]; ++s) {
        Vec mg = mat_vec(q.augmentation, generator_vector(sig->base(), q.gens[0], s));
        // j'(mg (x) 1) = mg (x) t - (mg . t) (x) 1
        DegVec target;
        degvec_add(target, 1, mg);
        degvec_add(target, 0, vec_scale(Rat(-1), mat_vec(m.t_act, mg)));
        for (const auto& [deg, rhs] : target) {
            auto x = solve(p.augmentation, rhs);
            if (!x) throw LiftFailed("augmentation is not surjective");
            auto it = comps.find(deg);
            if (it == comps.end()) it = comps.emplace(deg, Matrix(p.gens[0] * n, q.gens[0])).first;
            it->second.set_column(s, *x);
        }
    }
    for (auto& [deg, mat] : comps)
        if (!mat.is_zero()) u0.comps.emplace(deg, std::move(mat));
    return u0;
}

}  // namespace

ConeResolution build_cone(const OreModule& m, std::size_t depth) {
    const auto& sig = m.sig;
    if (is_opposite(sig->kind())) throw std::invalid_argument("cone over an opposite signature");
    ConeResolution cone;
    cone.sig = sig;
    cone.target = m;

    auto twisted = std::make_shared<RightModule>(twist_module(*m.base, sig->alpha()));
    cone.p_res = resolve(m.base, depth, CoverMode::minimal, false);
    cone.q_res = resolve(twisted, depth, CoverMode::minimal, false);
    const Resolution& p = cone.p_res;
    const Resolution& q = cone.q_res;
    const std::size_t n = sig->base()->dim;

    cone.lift.push_back(lift_step_zero(sig, m, p, q));
    for (std::size_t i = 1; i < q.modules.size() && i < p.modules.size(); ++i) {
        InducedMap ui{sig, q.gens[i], p.gens[i], {}};
        std::map<long, Matrix> comps;
        for (std::size_t s = 0; s < q.gens[i]; ++s) {
            DegVec elem;
            degvec_add(elem, 0, mat_vec(q.diffs[i - 1], generator_vector(sig->base(), q.gens[i], s)));
            DegVec y = induced_apply(cone.lift[i - 1], elem);
            for (const auto& [deg, rhs] : y) {
                auto x = solve(p.diffs[i - 1], rhs);
                if (!x)
                    throw LiftFailed(
                        "degreewise lifting problem has no solution (this signals a bug: lifts "
                        "through free modules always exist)");
                auto it = comps.find(deg);
                if (it == comps.end())
                    it = comps.emplace(deg, Matrix(p.gens[i] * n, q.gens[i])).first;
                it->second.set_column(s, *x);
            }
        }
        for (auto& [deg, mat] : comps)
            if (!mat.is_zero()) ui.comps.emplace(deg, std::move(mat));
        cone.lift.push_back(std::move(ui));
    }

    // Cone: C_0 = P_0, C_i = Q_{i-1} (+) P_i; D(q, p) = (-dQ q, u q + dP p).
    // A terminated resolution contributes zero modules beyond its end, so
    // the cone lives on as long as both sides are known.
    auto p_known = [&](std::size_t i) { return i < p.modules.size() || p.terminated; };
    auto q_known = [&](std::size_t i) { return i < q.modules.size() || q.terminated; };
    auto pg = [&](std::size_t i) { return i < p.gens.size() ? p.gens[i] : 0; };
    auto qg = [&](std::size_t i) { return i < q.gens.size() ? q.gens[i] : 0; };
    std::size_t levels = 0;
    while (levels < depth + 2 && p_known(levels) && (levels == 0 || q_known(levels - 1))) ++levels;
    for (std::size_t i = 0; i < levels; ++i)
        cone.cone_gens.push_back((i >= 1 ? qg(i - 1) : 0) + pg(i));
    for (std::size_t i = 0; i + 1 < levels; ++i) {
        std::size_t src_q = qg(i);
        std::size_t src_p = pg(i + 1);
        std::size_t dst_q = i >= 1 ? qg(i - 1) : 0;
        std::size_t dst_p = pg(i);
        InducedMap d{sig, src_q + src_p, dst_q + dst_p, {}};
        std::map<long, Matrix> comps;
        auto put = [&](long deg, std::size_t row0, std::size_t col, const Vec& v) {
            if (vec_is_zero(v)) return;
            auto it = comps.find(deg);
            if (it == comps.end())
                it = comps.emplace(deg, Matrix((dst_q + dst_p) * n, src_q + src_p)).first;
            for (std::size_t r = 0; r < v.size(); ++r) it->second.at(row0 + r, col) += v[r];
        };
        for (std::size_t s = 0; s < src_q; ++s) {
            if (i >= 1) {
                Vec dq = mat_vec(q.diffs[i - 1], generator_vector(sig->base(), src_q, s));
                put(0, 0, s, vec_scale(Rat(-1), dq));
            }
            if (dst_p > 0 && i < cone.lift.size())
                for (const auto& [deg, mat] : cone.lift[i].comps) put(deg, dst_q * n, s, mat.column(s));
        }
        for (std::size_t s = 0; s < src_p; ++s) {
            Vec dp = mat_vec(p.diffs[i], generator_vector(sig->base(), src_p, s));
            put(0, dst_q * n, src_q + s, dp);
        }
        for (auto& [deg, mat] : comps)
            if (!mat.is_zero()) d.comps.emplace(deg, std::move(mat));
        cone.cone_diffs.push_back(std::move(d));
    }
    return cone;
}

namespace {

// Transported Hom complex: Hom_A(R^g (x) A, N) ~ N^g; the pullback under an
// induced map uses N's t-action for the degree shifts.
Matrix transported_dstar(const InducedMap& d, const OreModule& n) {
    const auto& a = d.sig->base();
    const std::size_t adim = a->dim;
    const std::size_t m = n.base->dim;
    Matrix out(d.src_gens * m, d.dst_gens * m);
    for (const auto& [l, mat] : d.comps) {
        Matrix tl = Matrix::identity(m);
        if (l >= 0) {
            for (long s = 0; s < l; ++s) tl = n.t_act * tl;
        } else {
            if (!n.t_inv) throw std::invalid_argument("negative degree needs a Laurent module");
            for (long s = 0; s < -l; ++s) tl = *n.t_inv * tl;
        }
        for (std::size_t s = 0; s < d.src_gens; ++s)
            for (std::size_t sp = 0; sp < d.dst_gens; ++sp) {
                Matrix blk(m, m);
                for (std::size_t r = 0; r < adim; ++r) {
                    const Rat& c = mat.at(sp * adim + r, s);
                    if (c != 0) blk = blk + c * n.base->action[r];
                }
                blk = tl * blk;
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t j = 0; j < m; ++j) out.at(s * m + i, sp * m + j) += blk.at(i, j);
            }
    }
    return out;
}

std::vector<std::size_t> ext_from_induced_complex(const std::vector<std::size_t>& gens,
                                                  const std::vector<InducedMap>& diffs,
                                                  const OreModule& n, std::size_t max_k,
                                                  bool terminated) {
    const std::size_t m = n.base->dim;
    std::vector<std::size_t> dstar_rank(gens.size(), 0);
    for (std::size_t i = 0; i < diffs.size(); ++i)
        if (gens[i] > 0 && gens[i + 1] > 0) dstar_rank[i] = rank(transported_dstar(diffs[i], n));
    std::vector<std::size_t> dims;
    for (std::size_t k = 0; k <= max_k; ++k) {
        if (k >= gens.size()) {
            if (!terminated)
                throw std::invalid_argument("induced complex too short for requested degree");
            dims.push_back(0);
            continue;
        }
        if (k + 1 >= gens.size() && !terminated)
            throw std::invalid_argument("induced complex too short for requested degree");
        std::size_t space = gens[k] * m;
        std::size_t ker = space - (k < diffs.size() ? dstar_rank[k] : 0);
        std::size_t im = k == 0 ? 0 : dstar_rank[k - 1];
        dims.push_back(ker - im);
    }
    return dims;
}

}  // namespace

std::vector<std::size_t> cone_ext(const OreModule& m, const OreModule& n, std::size_t max_k) {
    ConeResolution cone = build_cone(m, max_k + 2);
    bool terminated = cone.p_res.terminated && cone.q_res.terminated;
    return ext_from_induced_complex(cone.cone_gens, cone.cone_diffs, n, max_k, terminated);
}

std::vector<std::size_t> induced_ext(const ModulePtr& m_over_r, const OreModule& n,
                                     std::size_t max_k) {
    const auto& sig = n.sig;
    Resolution res = resolve(m_over_r, max_k + 2, CoverMode::minimal, false);
    std::vector<InducedMap> diffs;
    for (std::size_t i = 0; i < res.diffs.size(); ++i)
        diffs.push_back(induced_from_matrix(sig, res.diffs[i], res.gens[i + 1], res.gens[i]));
    return ext_from_induced_complex(res.gens, diffs, n, max_k, res.terminated);
}

CheckReport cone_certificate(const ConeResolution& c, long window) {
    CheckReport rep;
    const auto& sig = c.sig;
    const std::size_t n = sig->base()->dim;
    const long lo = is_laurent(sig->kind()) ? -window : 0;

    for (std::size_t i = 0; i + 1 < c.cone_diffs.size(); ++i)
        if (!induced_is_zero(induced_compose(c.cone_diffs[i], c.cone_diffs[i + 1]))) {
            rep.fail("cone differential does not square to zero at degree " + std::to_string(i));
            return rep;
        }

    const OreModule& m = c.target;
    auto gamma_window = [&](long hi) {
        std::size_t degs = static_cast<std::size_t>(hi - lo + 1);
        std::size_t block = c.cone_gens[0] * n;
        Matrix g(m.base->dim, block * degs);
        for (long a = lo; a <= hi; ++a)
            for (std::size_t col = 0; col < block; ++col) {
                Vec v(block);
                v[col] = 1;
                Vec base = mat_vec(c.p_res.augmentation, v);
                if (a >= 0)
                    for (long s = 0; s < a; ++s) base = mat_vec(m.t_act, base);
                else
                    for (long s = 0; s < -a; ++s) base = mat_vec(*m.t_inv, base);
                g.set_column(static_cast<std::size_t>(a - lo) * block + col, base);
            }
        return g;
    };
    if (rank(gamma_window(window)) != m.base->dim)
        rep.fail("augmentation is not surjective on the window");

    if (!c.cone_diffs.empty()) {
        Matrix d0 = induced_window(c.cone_diffs[0], lo, window, lo, window + 1);
        Matrix g = gamma_window(window + 1);
        if (!(g * d0).is_zero()) rep.fail("augmentation o d_0 != 0");
    }

    auto contained = [&](const Matrix& boundaries, const Matrix& cycles, std::size_t tall) {
        Matrix cyc(tall, cycles.cols());
        for (std::size_t cc = 0; cc < cycles.cols(); ++cc)
            for (std::size_t r = 0; r < cycles.rows(); ++r) cyc.at(r, cc) = cycles.at(r, cc);
        return rank(hstack(boundaries, cyc)) == rank(boundaries);
    };

    // Exactness at C_0: cycles of gamma are boundaries of D_0.
    if (!c.cone_diffs.empty()) {
        Matrix g = gamma_window(window);
        Matrix cycles = kernel_basis(g);
        Matrix boundaries = induced_window(c.cone_diffs[0], lo, window + 1, lo, window + 2);
        std::size_t tall = c.cone_gens[0] * n * static_cast<std::size_t>(window + 2 - lo + 1);
        if (!contained(boundaries, cycles, tall))
            rep.fail("cycle of low degree is not a boundary at cone degree 0");
    }

    for (std::size_t i = 0; i + 1 < c.cone_diffs.size(); ++i) {
        Matrix di = induced_window(c.cone_diffs[i], lo, window, lo, window + 1);
        Matrix cycles = kernel_basis(di);
        Matrix boundaries = induced_window(c.cone_diffs[i + 1], lo, window + 1, lo, window + 2);
        std::size_t tall = c.cone_gens[i + 1] * n * static_cast<std::size_t>(window + 2 - lo + 1);
        if (!contained(boundaries, cycles, tall)) {
            rep.fail("cycle of low degree is not a boundary at cone degree " + std::to_string(i + 1));
            return rep;
        }
    }
    return rep;
}

}  // namespace orehom

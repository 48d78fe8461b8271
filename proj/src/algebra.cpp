#include "orehom/algebra.hpp"

#include <algorithm>

namespace orehom {

Vec FDAlgebra::mul(const Vec& x, const Vec& y) const {
    Vec r(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < dim; ++j) {
            if (y[j] == 0) continue;
            Rat f = x[i] * y[j];
            for (std::size_t k = 0; k < dim; ++k) {
                const Rat& cc = c(i, j, k);
                if (cc != 0) r[k] += f * cc;
            }
        }
    }
    return r;
}

Matrix FDAlgebra::left_mult(const Vec& x) const {
    Matrix m(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) m.set_column(j, mul(x, basis_vec(j)));
    return m;
}

Matrix FDAlgebra::right_mult(const Vec& x) const {
    Matrix m(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) m.set_column(j, mul(basis_vec(j), x));
    return m;
}

CheckReport check_algebra(const FDAlgebra& a) {
    CheckReport rep;
    if (a.unit.size() != a.dim || a.structure.size() != a.dim * a.dim * a.dim) {
        rep.fail("shape mismatch in algebra data");
        return rep;
    }
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t j = 0; j < a.dim; ++j)
            for (std::size_t k = 0; k < a.dim; ++k) {
                Vec lhs = a.mul(a.mul(a.basis_vec(i), a.basis_vec(j)), a.basis_vec(k));
                Vec rhs = a.mul(a.basis_vec(i), a.mul(a.basis_vec(j), a.basis_vec(k)));
                if (lhs != rhs) {
                    rep.fail("associativity fails at basis triple (" + std::to_string(i) + "," +
                             std::to_string(j) + "," + std::to_string(k) + ")");
                    return rep;
                }
            }
    for (std::size_t i = 0; i < a.dim; ++i) {
        if (a.mul(a.unit, a.basis_vec(i)) != a.basis_vec(i) ||
            a.mul(a.basis_vec(i), a.unit) != a.basis_vec(i)) {
            rep.fail("unitality fails at basis element " + std::to_string(i));
            return rep;
        }
    }
    return rep;
}

CheckReport check_morphism(const AlgebraMorphism& phi) {
    CheckReport rep;
    const FDAlgebra& s = *phi.source;
    const FDAlgebra& t = *phi.target;
    if (phi.matrix.rows() != t.dim || phi.matrix.cols() != s.dim) {
        rep.fail("morphism matrix shape mismatch");
        return rep;
    }
    if (phi.apply(s.unit) != t.unit) rep.fail("morphism is not unital");
    for (std::size_t i = 0; i < s.dim; ++i)
        for (std::size_t j = 0; j < s.dim; ++j) {
            Vec lhs = phi.apply(s.mul(s.basis_vec(i), s.basis_vec(j)));
            Vec rhs = t.mul(phi.apply(s.basis_vec(i)), phi.apply(s.basis_vec(j)));
            if (lhs != rhs) {
                rep.fail("morphism not multiplicative at basis pair (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
                return rep;
            }
        }
    return rep;
}

AlgebraMorphism identity_morphism(const AlgebraPtr& a) {
    return AlgebraMorphism{a, a, Matrix::identity(a->dim)};
}

AlgebraMorphism compose(const AlgebraMorphism& f, const AlgebraMorphism& g) {
    return AlgebraMorphism{g.source, f.target, f.matrix * g.matrix};
}

std::optional<AlgebraMorphism> inverse_morphism(const AlgebraMorphism& phi) {
    auto inv = inverse(phi.matrix);
    if (!inv) return std::nullopt;
    return AlgebraMorphism{phi.target, phi.source, *inv};
}

CheckReport check_alpha_derivation(const SigmaDerivation& d) {
    CheckReport rep;
    const FDAlgebra& a = *d.algebra;
    if (d.matrix.rows() != a.dim || d.matrix.cols() != a.dim) {
        rep.fail("derivation matrix shape mismatch");
        return rep;
    }
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t j = 0; j < a.dim; ++j) {
            Vec ei = a.basis_vec(i), ej = a.basis_vec(j);
            Vec lhs = d.apply(a.mul(ei, ej));
            Vec rhs;
            if (d.flavor == DerivationFlavor::standard)
                rhs = vec_add(a.mul(d.apply(ei), ej), a.mul(d.alpha.apply(ei), d.apply(ej)));
            else
                rhs = vec_add(a.mul(d.apply(ei), d.alpha.apply(ej)), a.mul(ei, d.apply(ej)));
            if (lhs != rhs) {
                rep.fail("Leibniz identity fails at basis pair (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
                return rep;
            }
        }
    if (!vec_is_zero(d.apply(a.unit))) rep.fail("derivation does not vanish on the unit");
    return rep;
}

FDAlgebra opposite(const FDAlgebra& a) {
    FDAlgebra op = a;
    op.name = a.name + "^op";
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t j = 0; j < a.dim; ++j)
            for (std::size_t k = 0; k < a.dim; ++k) op.c(i, j, k) = a.c(j, i, k);
    return op;
}

FDAlgebra enveloping(const FDAlgebra& a) {
    FDAlgebra op = opposite(a);
    FDAlgebra env;
    env.name = a.name + "^e";
    env.dim = a.dim * a.dim;
    env.basis_labels.resize(env.dim);
    env.structure.assign(env.dim * env.dim * env.dim, Rat(0));
    env.unit.assign(env.dim, Rat(0));
    auto idx = [&](std::size_t i, std::size_t j) { return i * a.dim + j; };
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t j = 0; j < a.dim; ++j)
            env.basis_labels[idx(i, j)] = a.basis_labels[i] + "(x)" + a.basis_labels[j];
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t j = 0; j < a.dim; ++j)
            for (std::size_t k = 0; k < a.dim; ++k)
                for (std::size_t l = 0; l < a.dim; ++l)
                    for (std::size_t m = 0; m < a.dim; ++m)
                        for (std::size_t p = 0; p < a.dim; ++p) {
                            Rat v = a.c(i, k, m) * op.c(j, l, p);
                            if (v != 0) env.c(idx(i, j), idx(k, l), idx(m, p)) += v;
                        }
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t j = 0; j < a.dim; ++j) env.unit[idx(i, j)] = a.unit[i] * a.unit[j];
    return env;
}

Matrix radical_basis(const FDAlgebra& a) {
    // Trace form of the left regular representation; its kernel is the
    // Jacobson radical in characteristic zero.
    std::vector<Matrix> lmul;
    for (std::size_t i = 0; i < a.dim; ++i) lmul.push_back(a.left_mult(a.basis_vec(i)));
    Matrix form(a.dim, a.dim);
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t j = 0; j < a.dim; ++j) {
            Matrix prod = lmul[i] * lmul[j];
            Rat tr(0);
            for (std::size_t k = 0; k < a.dim; ++k) tr += prod.at(k, k);
            form.at(i, j) = tr;
        }
    return kernel_basis(form);
}

Vec RightModule::act(const Vec& v, const Vec& a) const {
    Vec r(dim);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        r = vec_add(r, vec_scale(a[i], mat_vec(action[i], v)));
    }
    return r;
}

Matrix RightModule::action_of(const Vec& a) const {
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) m = m + a[i] * action[i];
    return m;
}

CheckReport check_right_module(const RightModule& m) {
    CheckReport rep;
    const FDAlgebra& a = *m.algebra;
    if (m.action.size() != a.dim) {
        rep.fail("module action count mismatch");
        return rep;
    }
    if (!(m.action_of(a.unit) == Matrix::identity(m.dim))) rep.fail("unit does not act as identity");
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t j = 0; j < a.dim; ++j) {
            // (v . e_j) . e_i = v . (e_j e_i)
            Matrix lhs = m.action[i] * m.action[j];
            Matrix rhs(m.dim, m.dim);
            for (std::size_t k = 0; k < a.dim; ++k)
                if (a.c(j, i, k) != 0) rhs = rhs + a.c(j, i, k) * m.action[k];
            if (!(lhs == rhs)) {
                rep.fail("action is not compatible with multiplication at (" + std::to_string(i) +
                         "," + std::to_string(j) + ")");
                return rep;
            }
        }
    return rep;
}

RightModule regular_module(const AlgebraPtr& a) {
    RightModule m;
    m.algebra = a;
    m.dim = a->dim;
    m.name = a->name;
    for (std::size_t i = 0; i < a->dim; ++i) m.action.push_back(a->right_mult(a->basis_vec(i)));
    return m;
}

RightModule twist_module(const RightModule& m, const AlgebraMorphism& alpha) {
    RightModule t = m;
    t.name = m.name + "_twist";
    for (std::size_t i = 0; i < m.algebra->dim; ++i)
        t.action[i] = m.action_of(alpha.apply(m.algebra->basis_vec(i)));
    return t;
}

RightModule direct_sum(const RightModule& a, const RightModule& b) {
    RightModule s;
    s.algebra = a.algebra;
    s.dim = a.dim + b.dim;
    s.name = a.name + "+" + b.name;
    for (std::size_t i = 0; i < a.algebra->dim; ++i) {
        Matrix m(s.dim, s.dim);
        for (std::size_t r = 0; r < a.dim; ++r)
            for (std::size_t c = 0; c < a.dim; ++c) m.at(r, c) = a.action[i].at(r, c);
        for (std::size_t r = 0; r < b.dim; ++r)
            for (std::size_t c = 0; c < b.dim; ++c) m.at(a.dim + r, a.dim + c) = b.action[i].at(r, c);
        s.action.push_back(std::move(m));
    }
    return s;
}

RightModule zero_module(const AlgebraPtr& a) {
    RightModule z;
    z.algebra = a;
    z.dim = 0;
    z.name = "0";
    for (std::size_t i = 0; i < a->dim; ++i) z.action.emplace_back(0, 0);
    return z;
}

RightModule submodule(const RightModule& m, const Matrix& basis, const std::string& name) {
    RightModule s;
    s.algebra = m.algebra;
    s.dim = basis.cols();
    s.name = name;
    for (std::size_t i = 0; i < m.algebra->dim; ++i) {
        auto x = solve_columns(basis, m.action[i] * basis);
        if (!x) throw std::invalid_argument("submodule: span is not invariant under the action");
        s.action.push_back(std::move(*x));
    }
    return s;
}

std::pair<RightModule, Matrix> quotient_module(const RightModule& m, const Matrix& basis,
                                               const std::string& name) {
    std::size_t r = basis.cols();
    Matrix probe = hstack(basis, Matrix::identity(m.dim));
    auto rr = rref(probe);
    std::vector<Vec> cols;
    for (std::size_t k = 0; k < r; ++k) cols.push_back(basis.column(k));
    std::vector<Vec> lift;
    for (auto p : rr.pivots)
        if (p >= r) {
            cols.push_back(Matrix::identity(m.dim).column(p - r));
            lift.push_back(cols.back());
        }
    Matrix full = Matrix::from_columns(m.dim, cols);
    auto inv = inverse(full);
    if (!inv) throw std::invalid_argument("quotient_module: basis is not independent");
    std::size_t s = m.dim - r;
    Matrix proj(s, m.dim);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < m.dim; ++j) proj.at(i, j) = inv->at(r + i, j);

    RightModule qm;
    qm.algebra = m.algebra;
    qm.dim = s;
    qm.name = name;
    Matrix lift_mat = Matrix::from_columns(m.dim, lift);
    for (std::size_t i = 0; i < m.algebra->dim; ++i) qm.action.push_back(proj * m.action[i] * lift_mat);
    // Invariance check: the action must kill the subspace.
    for (std::size_t i = 0; i < m.algebra->dim; ++i)
        for (std::size_t k = 0; k < r; ++k)
            if (!vec_is_zero(mat_vec(proj, mat_vec(m.action[i], basis.column(k)))))
                throw std::invalid_argument("quotient_module: subspace is not invariant");
    return {std::move(qm), std::move(proj)};
}

CheckReport check_module_map(const ModuleMap& f) {
    CheckReport rep;
    if (f.source->algebra != f.target->algebra) {
        rep.fail("module map across different algebras");
        return rep;
    }
    for (std::size_t i = 0; i < f.source->algebra->dim; ++i)
        if (!(f.matrix * f.source->action[i] == f.target->action[i] * f.matrix)) {
            rep.fail("map does not intertwine the action of basis element " + std::to_string(i));
            return rep;
        }
    return rep;
}

RightModule bimodule_as_right_module(const AlgebraPtr& a, const AlgebraPtr& env) {
    RightModule m;
    m.algebra = env;
    m.dim = a->dim;
    m.name = a->name + " as bimodule";
    for (std::size_t i = 0; i < a->dim; ++i)
        for (std::size_t j = 0; j < a->dim; ++j)
            m.action.push_back(a->left_mult(a->basis_vec(j)) * a->right_mult(a->basis_vec(i)));
    return m;
}

namespace {

std::vector<mpz_class> divisors_of(const mpz_class& value) {
    mpz_class v = abs(value);
    if (v == 0) throw std::invalid_argument("divisors_of: zero");
    if (v > mpz_class("1000000000000"))
        throw NotSplitError("integer too large to factor while splitting eigenvalues");
    std::vector<mpz_class> divs;
    for (mpz_class d = 1; d * d <= v; ++d) {
        if (v % d == 0) {
            divs.push_back(d);
            divs.push_back(v / d);
        }
    }
    std::sort(divs.begin(), divs.end());
    divs.erase(std::unique(divs.begin(), divs.end()), divs.end());
    return divs;
}

// Monic characteristic polynomial by Faddeev-LeVerrier; coefficient of
// lambda^{n-k} is returned at index k (index 0 holds 1).
std::vector<Rat> char_poly(const Matrix& m) {
    std::size_t n = m.rows();
    std::vector<Rat> coeff(n + 1);
    coeff[0] = 1;
    Matrix mk = m;
    for (std::size_t k = 1; k <= n; ++k) {
        Rat tr(0);
        for (std::size_t i = 0; i < n; ++i) tr += mk.at(i, i);
        coeff[k] = -tr / Rat(static_cast<long>(k));
        if (k < n) {
            Matrix shifted = mk;
            for (std::size_t i = 0; i < n; ++i) shifted.at(i, i) += coeff[k];
            mk = m * shifted;
        }
    }
    return coeff;
}

}  // namespace

std::vector<Rat> rational_eigenvalues(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("rational_eigenvalues: square matrix required");
    if (m.rows() == 0) return {};
    std::vector<Rat> p = char_poly(m);
    const std::size_t full_size = p.size();
    std::vector<Rat> roots;
    // Strip zero roots.
    while (p.size() > 1 && p.back() == 0) p.pop_back();
    if (p.size() < full_size) roots.push_back(Rat(0));
    if (p.size() == 1) return roots;
    mpz_class den(1);
    for (const auto& c : p) den = lcm(den, c.get_den());
    std::vector<mpz_class> ip;
    for (const auto& c : p) ip.push_back(mpz_class(c * Rat(den)));
    auto ps = divisors_of(ip.back());
    auto qs = divisors_of(ip.front());
    for (const auto& num : ps)
        for (const auto& q : qs)
            for (int sign : {1, -1}) {
                Rat cand(sign * num, q);
                cand.canonicalize();
                Rat val(0);
                for (const auto& c : ip) val = val * cand + Rat(c);
                if (val == 0 && std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
    std::sort(roots.begin(), roots.end());
    return roots;
}

namespace {

// Quotient data for S = A / rad(A).
struct Quotient {
    FDAlgebra algebra;           // S
    Matrix projection;           // A-coords -> S-coords
    std::vector<Vec> lift;       // S basis as A-vectors
};

Quotient quotient_by_radical(const FDAlgebra& a) {
    Matrix rad = radical_basis(a);
    std::size_t r = rad.cols();
    // Complete the radical basis by standard basis vectors.
    Matrix probe = hstack(rad, Matrix::identity(a.dim));
    auto rr = rref(probe);
    std::vector<Vec> cols;
    for (std::size_t k = 0; k < r; ++k) cols.push_back(rad.column(k));
    std::vector<Vec> lift;
    for (auto p : rr.pivots)
        if (p >= r) {
            cols.push_back(Matrix::identity(a.dim).column(p - r));
            lift.push_back(cols.back());
        }
    Matrix basis = Matrix::from_columns(a.dim, cols);
    auto inv = inverse(basis);
    if (!inv) throw std::logic_error("radical completion is singular");
    std::size_t s = a.dim - r;
    Matrix proj(s, a.dim);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < a.dim; ++j) proj.at(i, j) = inv->at(r + i, j);

    Quotient q;
    q.projection = proj;
    q.lift = lift;
    q.algebra.name = a.name + "/rad";
    q.algebra.dim = s;
    for (std::size_t i = 0; i < s; ++i) q.algebra.basis_labels.push_back("s" + std::to_string(i));
    q.algebra.structure.assign(s * s * s, Rat(0));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) {
            Vec prod = mat_vec(proj, a.mul(lift[i], lift[j]));
            for (std::size_t k = 0; k < s; ++k) q.algebra.c(i, j, k) = prod[k];
        }
    q.algebra.unit = mat_vec(proj, a.unit);
    return q;
}

// Joint eigenspace refinement of S under left multiplication by central
// elements; blocks are returned as column bases inside S.
std::vector<Matrix> central_blocks(const FDAlgebra& s) {
    // Center: x with x e_i = e_i x for all i.
    std::vector<Matrix> rows;
    Matrix stacked(s.dim * s.dim, s.dim);
    for (std::size_t i = 0; i < s.dim; ++i) {
        Matrix diff = s.left_mult(s.basis_vec(i)) - s.right_mult(s.basis_vec(i));
        for (std::size_t r = 0; r < s.dim; ++r)
            for (std::size_t c = 0; c < s.dim; ++c) stacked.at(i * s.dim + r, c) = diff.at(r, c);
    }
    Matrix center = kernel_basis(stacked);

    std::vector<Matrix> blocks{Matrix::identity(s.dim)};
    for (std::size_t zi = 0; zi < center.cols(); ++zi) {
        Matrix lz = s.left_mult(center.column(zi));
        std::vector<Matrix> refined;
        for (const auto& block : blocks) {
            auto restricted = solve_columns(block, lz * block);
            if (!restricted) throw std::logic_error("central action does not preserve block");
            std::size_t b = block.cols();
            std::size_t found = 0;
            for (const auto& lambda : rational_eigenvalues(*restricted)) {
                Matrix shifted = *restricted;
                for (std::size_t d = 0; d < b; ++d) shifted.at(d, d) -= lambda;
                Matrix eig = kernel_basis(shifted);
                if (eig.cols() == 0) continue;
                found += eig.cols();
                refined.push_back(block * eig);
            }
            if (found != b)
                throw NotSplitError("central element has an irrational eigenvalue; quotient does not split");
        }
        blocks = std::move(refined);
    }
    return blocks;
}

// Unit of the block algebra spanned by the given columns of S.
Vec block_unit(const FDAlgebra& s, const Matrix& block) {
    std::size_t b = block.cols();
    // Find v in the block with v u_t = u_t for every block basis vector.
    Matrix system(s.dim * b, b);
    Vec rhs(s.dim * b);
    for (std::size_t t = 0; t < b; ++t) {
        Vec ut = block.column(t);
        for (std::size_t g = 0; g < b; ++g) {
            Vec prod = s.mul(block.column(g), ut);
            for (std::size_t r = 0; r < s.dim; ++r) system.at(t * s.dim + r, g) = prod[r];
        }
        for (std::size_t r = 0; r < s.dim; ++r) rhs[t * s.dim + r] = ut[r];
    }
    auto x = solve(system, rhs);
    if (!x) throw std::logic_error("block has no unit");
    Vec unit(s.dim);
    for (std::size_t g = 0; g < b; ++g) unit = vec_add(unit, vec_scale((*x)[g], block.column(g)));
    return unit;
}

Matrix right_ideal_of(const FDAlgebra& s, const Vec& y, const Matrix& block) {
    std::vector<Vec> cols;
    for (std::size_t t = 0; t < block.cols(); ++t) cols.push_back(s.mul(y, block.column(t)));
    Matrix span = Matrix::from_columns(s.dim, cols);
    auto rr = rref(span.transpose());
    std::vector<Vec> basis;
    for (std::size_t k = 0; k < rr.pivots.size(); ++k) basis.push_back(rr.reduced.row(k));
    return Matrix::from_columns(s.dim, basis);
}

Matrix minimal_right_ideal(const FDAlgebra& s, const Matrix& block, std::size_t expected_dim) {
    Matrix ideal = block;
    bool improved = true;
    while (improved && ideal.cols() > expected_dim) {
        improved = false;
        std::vector<Vec> candidates;
        for (std::size_t t = 0; t < ideal.cols(); ++t) candidates.push_back(ideal.column(t));
        for (std::size_t t = 0; t + 1 < ideal.cols(); ++t) {
            candidates.push_back(vec_add(ideal.column(t), ideal.column(t + 1)));
            candidates.push_back(vec_sub(ideal.column(t), ideal.column(t + 1)));
        }
        for (const auto& y : candidates) {
            if (vec_is_zero(y)) continue;
            Matrix next = right_ideal_of(s, y, block);
            if (next.cols() > 0 && next.cols() < ideal.cols()) {
                ideal = next;
                improved = true;
                break;
            }
        }
    }
    if (ideal.cols() != expected_dim)
        throw NotSplitError("matrix block does not split over the rationals");
    return ideal;
}

}  // namespace

std::vector<RightModule> simple_modules(const AlgebraPtr& a) {
    Quotient q = quotient_by_radical(*a);
    const FDAlgebra& s = q.algebra;
    std::vector<RightModule> simples;
    for (const auto& block : central_blocks(s)) {
        std::size_t b = block.cols();
        std::size_t n = 0;
        while (n * n < b) ++n;
        if (n * n != b) throw NotSplitError("block dimension is not a perfect square");
        Matrix ideal = (n == 1) ? block : minimal_right_ideal(s, block, n);
        (void)block_unit(s, block);  // existence check
        RightModule m;
        m.algebra = a;
        m.dim = ideal.cols();
        m.name = "simple" + std::to_string(simples.size());
        for (std::size_t r = 0; r < a->dim; ++r) {
            Vec w = mat_vec(q.projection, a->basis_vec(r));
            Matrix rm = s.right_mult(w);
            auto restricted = solve_columns(ideal, rm * ideal);
            if (!restricted) throw std::logic_error("minimal right ideal is not invariant");
            m.action.push_back(std::move(*restricted));
        }
        simples.push_back(std::move(m));
    }
    return simples;
}

namespace {

Matrix intersect_spaces(const Matrix& a, const Matrix& b) {
    if (a.cols() == 0 || b.cols() == 0) return Matrix(a.rows(), 0);
    Matrix joint = hstack(a, -b);
    Matrix ker = kernel_basis(joint);
    std::vector<Vec> cols;
    for (std::size_t k = 0; k < ker.cols(); ++k) {
        Vec x(a.cols());
        for (std::size_t i = 0; i < a.cols(); ++i) x[i] = ker.at(i, k);
        cols.push_back(mat_vec(a, x));
    }
    Matrix span = Matrix::from_columns(a.rows(), cols);
    if (span.cols() == 0) return span;
    auto rr = rref(span.transpose());
    std::vector<Vec> basis;
    for (std::size_t k = 0; k < rr.pivots.size(); ++k) basis.push_back(rr.reduced.row(k));
    return Matrix::from_columns(a.rows(), basis);
}

// A common rational eigenvector of all matrices exists iff some choice of
// eigenvalues gives a nonzero joint eigenspace intersection.
bool common_eigenvector_exists(const std::vector<Matrix>& mats, std::size_t n) {
    std::vector<Matrix> spaces{Matrix::identity(n)};
    for (const auto& m : mats) {
        std::vector<Matrix> next;
        for (const auto& lambda : rational_eigenvalues(m)) {
            Matrix shifted = m;
            for (std::size_t i = 0; i < n; ++i) shifted.at(i, i) -= lambda;
            Matrix eig = kernel_basis(shifted);
            if (eig.cols() == 0) continue;
            for (const auto& s : spaces) {
                Matrix inter = intersect_spaces(s, eig);
                if (inter.cols() > 0) next.push_back(inter);
            }
        }
        spaces = std::move(next);
        if (spaces.empty()) return false;
    }
    return true;
}

}  // namespace

bool has_proper_submodule(const RightModule& m) {
    if (m.dim <= 1) return false;
    if (m.dim > 3) throw std::invalid_argument("has_proper_submodule: only supported for dim <= 3");
    // Invariant lines are common eigenvectors; invariant hyperplanes are
    // common eigenvectors of the transposed action. Dimensions <= 3 need
    // nothing else.
    if (common_eigenvector_exists(m.action, m.dim)) return true;
    if (m.dim == 3) {
        std::vector<Matrix> transposed;
        for (const auto& a : m.action) transposed.push_back(a.transpose());
        if (common_eigenvector_exists(transposed, m.dim)) return true;
    }
    return false;
}

}  // namespace orehom

#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "orehom/matrix.hpp"

namespace orehom {

struct NotSplitError : std::runtime_error {
    explicit NotSplitError(const std::string& what) : std::runtime_error(what) {}
};

// Finite-dimensional unital associative algebra over the rationals, given by
// structure constants: e_i e_j = sum_k c[i][j][k] e_k.
struct FDAlgebra {
    std::string name;
    std::size_t dim = 0;
    std::vector<std::string> basis_labels;
    std::vector<Rat> structure;  // flat, index (i*dim + j)*dim + k
    Vec unit;

    const Rat& c(std::size_t i, std::size_t j, std::size_t k) const {
        return structure[(i * dim + j) * dim + k];
    }
    Rat& c(std::size_t i, std::size_t j, std::size_t k) { return structure[(i * dim + j) * dim + k]; }

    Vec basis_vec(std::size_t i) const {
        Vec v(dim);
        v[i] = 1;
        return v;
    }

    Vec mul(const Vec& x, const Vec& y) const;
    Matrix left_mult(const Vec& x) const;   // L_x : y -> x y
    Matrix right_mult(const Vec& x) const;  // R_x : y -> y x
};

using AlgebraPtr = std::shared_ptr<const FDAlgebra>;

struct CheckReport {
    bool ok = true;
    std::vector<std::string> failures;
    void fail(const std::string& msg) {
        ok = false;
        failures.push_back(msg);
    }
};

CheckReport check_algebra(const FDAlgebra& a);

// Unital algebra morphism between algebras of the same dimension, stored as
// the coordinate matrix.
struct AlgebraMorphism {
    AlgebraPtr source;
    AlgebraPtr target;
    Matrix matrix;

    Vec apply(const Vec& x) const { return mat_vec(matrix, x); }
};

CheckReport check_morphism(const AlgebraMorphism& phi);

AlgebraMorphism identity_morphism(const AlgebraPtr& a);
AlgebraMorphism compose(const AlgebraMorphism& f, const AlgebraMorphism& g);  // f after g
std::optional<AlgebraMorphism> inverse_morphism(const AlgebraMorphism& phi);

enum class DerivationFlavor { standard, opposite };

// standard: d(ab) = d(a) b + alpha(a) d(b)
// opposite: d(ab) = d(a) alpha(b) + a d(b)
struct SigmaDerivation {
    AlgebraPtr algebra;
    AlgebraMorphism alpha;
    Matrix matrix;
    DerivationFlavor flavor = DerivationFlavor::standard;

    Vec apply(const Vec& x) const { return mat_vec(matrix, x); }
};

CheckReport check_alpha_derivation(const SigmaDerivation& d);

FDAlgebra opposite(const FDAlgebra& a);
FDAlgebra enveloping(const FDAlgebra& a);  // A (x) A^op, basis index (i,j) -> i*dim + j

// Basis (columns) of the Jacobson radical via the characteristic-zero trace
// form of the left regular representation.
Matrix radical_basis(const FDAlgebra& a);

// Right module over an algebra. The stored matrices act on coordinate
// columns from the left and compose as an anti-homomorphism:
// action(x) * action(y) = action(y x), matching (m . y) . x = m . (y x).
struct RightModule {
    AlgebraPtr algebra;
    std::size_t dim = 0;
    std::vector<Matrix> action;  // one matrix per algebra basis element
    std::string name;

    Vec act(const Vec& v, const Vec& a) const;  // v . a
    Matrix action_of(const Vec& a) const;       // sum_i a_i action[i]
};

using ModulePtr = std::shared_ptr<const RightModule>;

CheckReport check_right_module(const RightModule& m);

RightModule regular_module(const AlgebraPtr& a);
RightModule twist_module(const RightModule& m, const AlgebraMorphism& alpha);
RightModule direct_sum(const RightModule& a, const RightModule& b);
RightModule zero_module(const AlgebraPtr& a);

// Submodule spanned by the given coordinate columns (closed under the
// action); throws if the span is not invariant.
RightModule submodule(const RightModule& m, const Matrix& basis, const std::string& name);

// Quotient of m by an invariant subspace; second component is the
// projection matrix onto quotient coordinates.
std::pair<RightModule, Matrix> quotient_module(const RightModule& m, const Matrix& basis,
                                               const std::string& name);

struct ModuleMap {
    ModulePtr source;
    ModulePtr target;
    Matrix matrix;
};

CheckReport check_module_map(const ModuleMap& f);

// One simple right module per matrix block of A/rad(A); requires the
// semisimple quotient to split over the rationals.
std::vector<RightModule> simple_modules(const AlgebraPtr& a);

// A as a right module over enveloping(a): x . (e_i (x) e_j) = e_j x e_i.
RightModule bimodule_as_right_module(const AlgebraPtr& a, const AlgebraPtr& env);

// True iff the module has an invariant subspace of dimension strictly
// between 0 and dim. Exhaustive only for dim <= 3 (test helper).
bool has_proper_submodule(const RightModule& m);

// Rational eigenvalues of an exact matrix (each listed once).
std::vector<Rat> rational_eigenvalues(const Matrix& m);

}  // namespace orehom

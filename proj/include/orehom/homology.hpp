#pragma once

#include <optional>

#include "orehom/differentials.hpp"

namespace orehom {

struct LiftFailed : std::runtime_error {
    explicit LiftFailed(const std::string& what) : std::runtime_error(what) {}
};
struct NotExactError : std::runtime_error {
    explicit NotExactError(const std::string& what) : std::runtime_error(what) {}
};

enum class CoverMode { minimal, full };

// Homological dimension value capped at max_k; at_least means the bound was
// reached without detecting termination (the module may have infinite
// dimension). In inequality arithmetic an at_least value behaves like
// infinity.
struct DhValue {
    std::size_t value = 0;
    bool at_least = false;

    friend bool operator==(const DhValue&, const DhValue&) = default;
};

std::string dh_to_string(const DhValue& v);

struct FreeCover {
    ModulePtr cover;       // A^k
    Matrix surjection;     // cover coords -> target coords
    std::size_t generators = 0;
};

// Free right module A^k; coordinates are indexed (generator, algebra coord)
// as s * dim(A) + r.
ModulePtr free_module(const AlgebraPtr& a, std::size_t k);

FreeCover free_cover(const ModulePtr& m, CoverMode mode);

// Iterated free covers of kernels. In minimal mode, a kernel that is
// certified projective by an explicit splitting ends the resolution as its
// final (non-free) term; a zero kernel ends it too.
struct Resolution {
    ModulePtr target;
    std::vector<ModulePtr> modules;     // C_0 .. C_L
    std::vector<std::size_t> gens;      // generator count per level (0 for a projective tail)
    std::vector<bool> is_free;
    std::vector<Matrix> diffs;          // d_i : C_{i+1} -> C_i
    Matrix augmentation;                // eps : C_0 -> target
    bool terminated = false;

    std::size_t length() const { return modules.size() - 1; }
};

Resolution resolve(const ModulePtr& m, std::size_t max_len, CoverMode mode = CoverMode::minimal,
                   bool allow_projective_tail = true);

// d o d = 0, surjectivity of the augmentation and image = kernel at every
// interior degree, all by rank arithmetic.
CheckReport verify_resolution(const Resolution& r);

// Basis of Hom_A(m, n) as matrices (n coords x m coords).
std::vector<Matrix> hom_basis(const RightModule& m, const RightModule& n);

std::vector<std::size_t> ext_dims(const Resolution& res, const ModulePtr& n, std::size_t max_k);
std::vector<std::size_t> ext_dims(const ModulePtr& m, const ModulePtr& n, std::size_t max_k,
                                  CoverMode mode = CoverMode::minimal);

DhValue dh(const ModulePtr& m, std::size_t max_k);
DhValue gldim(const AlgebraPtr& a, std::size_t max_k);
DhValue bidim(const AlgebraPtr& a, std::size_t max_k);

CheckReport twist_invariance_check(const ModulePtr& m, const AlgebraMorphism& alpha,
                                   std::size_t max_k);

struct ShortExactSequence {
    ModulePtr sub, middle, quotient;
    Matrix inject;   // sub -> middle
    Matrix project;  // middle -> quotient
};

struct SubadditivityReport {
    DhValue sub, middle, quotient;
    bool ok = false;
    std::vector<std::string> failures;
};

// Verifies the sequence by rank arithmetic, then checks the three
// homological-dimension inequalities (at_least values act as infinity).
SubadditivityReport subadditivity_check(const ShortExactSequence& ses, std::size_t max_k);

CheckReport retraction_check(const ModulePtr& m, const SignaturePtr& sig);

// A-linear map between induced modules (R^src (x) A) -> (R^dst (x) A),
// stored by the images of the free generators: comps[l] has one column per
// source generator, holding the degree-l part in destination coordinates.
struct InducedMap {
    SignaturePtr sig;
    std::size_t src_gens = 0, dst_gens = 0;
    std::map<long, Matrix> comps;
};

using DegVec = std::map<long, Vec>;  // degree -> coordinate vector

InducedMap induced_from_matrix(const SignaturePtr& sig, const Matrix& d, std::size_t src_gens,
                               std::size_t dst_gens);
DegVec induced_apply(const InducedMap& u, const DegVec& x);
InducedMap induced_compose(const InducedMap& v, const InducedMap& u);
bool induced_is_zero(const InducedMap& u);

// Coordinate matrix of u on the degree window [src_lo, src_hi] ->
// [dst_lo, dst_hi]; entries leaving the destination window must be absent
// (callers pick windows wide enough).
Matrix induced_window(const InducedMap& u, long src_lo, long src_hi, long dst_lo, long dst_hi);

// Mapping-cone resolution of a finite-dimensional Ore module M: resolutions
// of M|_R and (M|_R)_alpha over R, a chain map lifting
// j'(m (x) g) = m (x) t g - (m t) (x) g, and the cone.
struct ConeResolution {
    SignaturePtr sig;
    OreModule target;
    Resolution p_res;                    // of M|_R
    Resolution q_res;                    // of (M|_R)_alpha
    std::vector<InducedMap> lift;        // u_i : Q_i (x) A -> P_i (x) A
    std::vector<std::size_t> cone_gens;  // generators of C_i = Q_{i-1} (+) P_i
    std::vector<InducedMap> cone_diffs;  // D_i : C_{i+1} -> C_i
};

ConeResolution build_cone(const OreModule& m, std::size_t depth);

// Ext_A^k(M, N) via the cone and the adjunction
// Hom_A(P (x)_R A, N) ~ Hom_R(P, N|_R).
std::vector<std::size_t> cone_ext(const OreModule& m, const OreModule& n, std::size_t max_k);

// Ext_A^k(M (x)_R A, N) through the induced resolution and the adjunction.
std::vector<std::size_t> induced_ext(const ModulePtr& m_over_r, const OreModule& n,
                                     std::size_t max_k);

// d o d = 0 plus windowed exactness: every cycle supported in t-degrees
// <= window is a boundary of an element supported in t-degrees <= window+2.
CheckReport cone_certificate(const ConeResolution& c, long window);

}  // namespace orehom

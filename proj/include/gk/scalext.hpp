#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gk/gaugecheck.hpp"

namespace gk {

// L = F(s), s^2 = d, with its unique extension of v. Galois group {id, s -> -s}.
struct GaloisExtension {
    ValPtr v;
    std::shared_ptr<const QuadraticValuation> vL;
    Elem d;
    AlgPtr alg;               // L as an F-algebra, basis 1, s
    std::vector<Mat> group;   // action on the basis, group[0] = id
    Mat trace_form;           // Tr(b_i b_j)
    NormPtr norm;             // v_L as an F-norm on the basis 1, s
    std::string kind;         // "unramified" or "ramified"

    const FieldPtr& field() const { return v->field(); }
    const FieldPtr& big_field() const { return vL->field(); }
    std::size_t order() const { return group.size(); }
    // index of the composite a o b in group
    std::size_t compose(std::size_t a, std::size_t b) const;
    std::size_t inverse(std::size_t a) const;
    bool central(std::size_t a) const;
    Vec coords(const Elem& x) const;  // element of L -> F^2
    Elem element(const Vec& c) const;
};

// throws UnsupportedError unless v extends uniquely to F(sqrt d)
GaloisExtension quadratic_extension(const ValPtr& v, const Elem& d, const std::string& name = "s");

struct IdempotentFamily {
    AlgPtr LL;                // L (x)_F L, basis b_i (x) b_j at 2i + j
    Vec e;
    std::vector<Vec> family;  // e_i = (id (x) g_i)(e)
    bool maps_to_one = false;     // multiplication sends e to 1
    bool balanced = false;        // e (x (x) 1) = e (1 (x) x)
    bool twisted = false;         // e_i (x (x) 1) = e_i (1 (x) g_i(x))
    bool orthogonal = false;      // e_i e_j = delta_ij e_i
    bool sums_to_one = false;
    bool diagonal_invariant = false;  // (g (x) g)(e) = e
    bool value_zero = false;      // (v_L (x) v_L)(e_i) = 0
    bool ok() const {
        return maps_to_one && balanced && twisted && orthogonal && sums_to_one && diagonal_invariant && value_zero;
    }
};

// e = sum l_i (x) l_i#, l# the trace-dual base; throws on a degenerate trace form
IdempotentFamily separability_idempotent(const GaloisExtension& L);

// L inside a valued division algebra D through gen, gen^2 = L.d
struct EmbeddedField {
    DivisionRing D;
    GaloisExtension L;
    Vec gen;
    Vec embed(const Vec& l) const;  // F^2 coordinates -> D
};

EmbeddedField embed_field(const DivisionRing& D, const GaloisExtension& L, const Vec& gen);

struct DIotaDecomposition {
    std::vector<Vec> centralizer;
    std::vector<std::vector<Vec>> parts;   // D_g = {d : l d = d g(l)}
    std::vector<std::size_t> dims_over_C;
    std::vector<Value> psi;                // canonical representative of Gamma_{D_g} mod Gamma_C
    ValueLattice gamma_C, gamma_D;
    bool direct_sum = false;               // parts span D
    bool psi_homomorphism = false;
    bool psi_injective = false;
    Z ramification;                        // [Gamma_D : Gamma_C]
    bool totally_ramified = false;         // ramification = [D : C] and equal residue dims
};

DIotaDecomposition d_iota_decomposition(const EmbeddedField& E);

// L-linear structure of D (x)_F L: embedded e_g and the tensor norm v_D (x) v_L
struct ExtendedAlgebra {
    AlgPtr A;
    NormPtr norm;
    std::vector<Vec> idempotents;  // e_g
    std::vector<Vec> d_to_A(const std::vector<Vec>& ds) const;  // d -> d (x) 1
};

ExtendedAlgebra extend_division_algebra(const EmbeddedField& E, const IdempotentFamily& fam);

struct ResidueIdempotents {
    std::size_t a0_dim = 0;
    std::vector<Vec> tilde;                          // residues of e_g in the compressed algebra
    std::vector<bool> primitive;
    std::vector<bool> primitive_certified;           // exhaustive or one-dimensional
    std::vector<std::vector<std::size_t>> block_dims;  // dim e_g A_0 e_h
    bool pattern_matches_psi = false;
};

ResidueIdempotents residue_idempotent_structure(const EmbeddedField& E);

struct IsotropyReport {
    std::string verdict;  // "isotropic", "anisotropic", "undecided"
    std::string route;
    std::size_t sigma_L = 0;
    std::optional<std::size_t> kappa;
    std::optional<Vec> witness;   // e_kappa in D (x) L
    AnisotropyResult residue;     // graded anisotropy of (sigma (x) g)~ when computed
};

// sigma (x) g on D (x)_F L; sigma must stabilize L
IsotropyReport isotropy_criterion(const EmbeddedField& E, const Involution& sigma, std::size_t g,
                                  const AnisotropyOptions& opt = {});

struct DescentReport {
    NormPtr restriction;           // alpha on V = F^n
    bool restriction_is_norm = false;
    bool tensor_equal = false;     // alpha = alpha|_V (x) v_K
    bool inequality = false;       // alpha >= alpha|_V (x) v_K
    bool a = false, b = false, c = false;
    std::string b_base;            // which candidate base of V splits alpha
    bool chi_injective = false;
    std::optional<Vec> chi_kernel; // element of V (x) K whose leading terms cancel
    bool groups_add = false;       // Gamma_alpha = Gamma_V + Gamma_K
    bool agree() const { return a == b && b == c; }
};

// alpha: a v_K-norm on K^n; V = F^n
DescentReport descent_equivalence(const GaloisExtension& K, const NormPtr& alpha);

struct TensorGradedReport {
    bool tables_agree = false;
    bool involutions_agree = false;
    std::size_t dim = 0;
};

TensorGradedReport tensor_graded_check(const AlgPtr& A, const NormPtr& phi, const Involution& s, const AlgPtr& B,
                                       const NormPtr& psi, const Involution& t);

// phi (x) v_K on A (x)_F K and sigma (x) id
InvarianceReport extension_invariance(const AlgPtr& A, const NormPtr& phi, const Involution& s,
                                      const GaloisExtension& K);

}  // namespace gk

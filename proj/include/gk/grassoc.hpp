#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gk/invalg.hpp"
#include "gk/valnorms.hpp"

namespace gk {

struct NotANormError : std::invalid_argument {
    NotANormError(const std::string& m, NormCheck c) : std::invalid_argument(m), check(std::move(c)) {}
    NormCheck check;
};

struct SurmultiplicativityError : std::invalid_argument {
    SurmultiplicativityError(const std::string& m, Vec a, Vec b)
        : std::invalid_argument(m), x(std::move(a)), y(std::move(b)) {}
    Vec x, y;
};

struct InvarianceError : std::invalid_argument {
    InvarianceError(const std::string& m, Vec w) : std::invalid_argument(m), witness(std::move(w)) {}
    Vec witness;
};

// gr_phi(A) compressed to a finite-dimensional algebra over the residue field:
// basis element i is the image of lifts[i], phi(lifts[i]) = degree[i] a canonical
// coset representative; products are read through the section, so t_g ~ 1 for g in Gamma_F.
struct GradedAlgebra {
    AlgPtr A;
    NormPtr phi;
    ValPtr v;
    AlgPtr B;
    std::vector<Vec> lifts;
    std::vector<Value> degree;
    std::vector<std::vector<Value>> grade;        // grading key per basis element
    std::vector<std::vector<std::size_t>> components;
    std::vector<std::vector<Value>> component_grade;
    Mat Pinv;

    const FieldPtr& residue_field() const { return B->field(); }
    std::size_t dim() const { return B->dim(); }
    // degree-0 component (A_0); empty if absent
    std::vector<std::size_t> zero_component() const;
    std::size_t component_of(std::size_t i) const;
    // phi(x) and the compressed image of x
    std::optional<std::pair<Value, Vec>> lead(const Vec& x) const;
    Vec lift(const Vec& xi) const;
    // subspace spanned by a component, as vectors of B
    std::vector<Vec> component_span(std::size_t c) const;
};

// phi must be surmultiplicative with phi(1) = 0. outer: grading keys already carried
// by phi's splitting base (used when A is itself a compressed graded algebra)
GradedAlgebra build_graded(const AlgPtr& A, const NormPtr& phi, const std::vector<std::vector<Value>>& outer = {});
// any value function: a splitting base is searched first (NotANormError on failure)
GradedAlgebra build_graded(const AlgPtr& A, const VFPtr& phi, const NormCheckOptions& opt = {});

// ---- radicals ----

// Jacobson radical; method names the algorithm used
std::vector<Vec> jacobson_radical(const Algebra& B, std::string* method = nullptr);

struct SemisimpleReport {
    bool semisimple = false;
    std::vector<Vec> radical;         // J(B)
    std::vector<Vec> graded_radical;  // largest homogeneous ideal inside J(B)
    std::string method;
};

SemisimpleReport check_graded_semisimple(const GradedAlgebra& G);

// two-sided ideal generated by gens
std::vector<Vec> ideal_closure(const Algebra& B, const std::vector<Vec>& gens);
std::vector<Vec> right_ideal_closure(const Algebra& B, const std::vector<Vec>& gens);

struct TameReport {
    bool tame = false;
    std::size_t graded_center_dim = 0;
    std::size_t center_image_dim = 0;
    std::size_t ramification = 0;  // cosets met by the graded center
    std::string note;
};

// UnsupportedError for wild or inseparable centers
TameReport check_tame(const GradedAlgebra& G);

// ---- involutions ----

// a splitting-base vector b with phi(sigma(b)) != phi(b), if any; exact for split norms
std::optional<Vec> invariance_witness(const SplitNorm& phi, const Involution& s);

struct GradedInvolution {
    Mat S;  // on B
    Involution tilde() const { return {S}; }
};

GradedInvolution induce_involution(const GradedAlgebra& G, const Involution& s);

// algebra spanned by a set of basis indices closed under multiplication (A_0 for instance)
AlgPtr subalgebra(const Algebra& B, const std::vector<std::size_t>& idx);
Involution restrict_involution(const Mat& S, const std::vector<std::size_t>& idx);

// ---- anisotropy ----

struct AnisotropyOptions {
    std::uint64_t budget = std::uint64_t(1) << 24;
    int height = 2;  // coefficient bound for searches over infinite residue fields
    bool certificates = true;  // definiteness certificates over Q; off = plain search
};

struct AnisotropyResult {
    Verdict verdict = Verdict::Undecided;  // Yes = anisotropic
    std::optional<Vec> witness;            // nonzero xi with tau(xi) xi = 0
    std::string certificate;
    std::uint64_t examined = 0;
};

// search for homogeneous xi in the given components with tau(xi) xi = 0
AnisotropyResult anisotropy(const Algebra& B, const Mat& tau, const std::vector<std::vector<std::size_t>>& comps,
                            const AnisotropyOptions& opt = {});
AnisotropyResult graded_anisotropy(const GradedAlgebra& G, const GradedInvolution& s, const AnisotropyOptions& opt = {});
AnisotropyResult residue_anisotropy(const GradedAlgebra& G, const GradedInvolution& s, const AnisotropyOptions& opt = {});

// ---- idempotents ----

// empty when graded simple, else the reason
std::string graded_simple_defect(const GradedAlgebra& G);
// degree-0 idempotent e with e B = right ideal generated by the homogeneous gens
Vec ideal_idempotent(const GradedAlgebra& G, const std::vector<Vec>& gens);

// textual table: cosets, component dims, multiplication, involution
std::string graded_dump(const GradedAlgebra& G, const GradedInvolution* s = nullptr);

}  // namespace gk

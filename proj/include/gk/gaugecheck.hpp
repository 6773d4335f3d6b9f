#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gk/grassoc.hpp"

namespace gk {

struct GaugeOptions {
    std::uint64_t seed = 20240601;
    int samples = 200;            // random elements tried by refutation searches
    int height = 1;               // coefficient bound for residue lifts over infinite residue fields
    std::uint64_t search_budget = 50000;  // residue vectors per component
    AnisotropyOptions aniso;
};

struct GaugeReport {
    bool is_norm = false;
    bool is_surmultiplicative = false;
    bool is_semisimple = false;
    std::optional<bool> is_tame;  // nullopt: unsupported (wild or inseparable center)
    std::optional<std::pair<Vec, Vec>> surmult_witness;
    std::vector<Vec> radical_witness;  // graded radical, residue coordinates
    std::string note;
    bool gauge() const { return is_norm && is_surmultiplicative && is_semisimple; }
};

GaugeReport check_gauge(const AlgPtr& A, const VFPtr& phi, const GaugeOptions& opt = {});

struct InvarianceReport {
    bool invariant = false;
    bool certified = false;  // exhaustive over a splitting base
    std::optional<Vec> witness;
};

InvarianceReport check_invariant(const VFPtr& phi, const Involution& s, const GaugeOptions& opt = {});

struct SpecialReport {
    Verdict special = Verdict::Undecided;
    std::optional<Vec> witness;  // x with phi(s(x) x) != 2 phi(x)
    std::optional<Value> value_x, value_sxx;
    bool invariant = false;
    AnisotropyResult graded;               // anisotropy of the residue involution on all components
    std::optional<Vec> search_witness;     // found by the direct search alone
    std::uint64_t searched = 0;
    std::string certificate;
};

// direct search for x with phi(s(x) x) != 2 phi(x): lifted residue vectors, base vectors, random elements
std::optional<Vec> refute_special(const GradedAlgebra& G, const Involution& s, const GaugeOptions& opt,
                                  std::uint64_t* searched = nullptr);
SpecialReport check_special(const AlgPtr& A, const Involution& s, const NormPtr& phi, const GaugeOptions& opt = {});

struct SpringerReport {
    AnisotropyResult residue;  // degree-0 part
    AnisotropyResult graded;   // all components
    bool consistent = false;   // both decided and equal
    std::string sigma_status;
    AnisotropyResult sigma;    // direct attempt on A itself
    bool sigma_search_clean = false;  // bounded search on A found no isotropic vector
};

SpringerReport springer_criterion(const AlgPtr& A, const Involution& s, const NormPtr& phi, const GaugeOptions& opt = {});

// phi_u(x) = phi(u x u^-1)
NormPtr conjugate_norm(const Algebra& A, const SplitNorm& phi, const Vec& u);
// residue image of u invertible in the graded algebra
bool is_stable_unit(const GradedAlgebra& G, const Vec& u);

struct ProbeReport {
    std::string verdict;  // "unique special", "no special gauge", "undecided"
    SpecialReport special;
    std::size_t conjugates_checked = 0;
    std::size_t conjugates_special = 0;
    bool uniqueness_alarm = false;
};

// units: candidates for conjugate gauges; defaults to small elements of A
ProbeReport mainthcor_probe(const AlgPtr& A, const Involution& s, const NormPtr& phi, const GaugeOptions& opt = {},
                            std::vector<Vec> units = {});

// ---- norms on D-spaces and hermitian forms ----

struct CompatReport {
    bool invariant = false;       // End(alpha) invariant under ad_h
    bool same_end = false;        // End(alpha#) = End(alpha)
    bool constant_gap = false;    // alpha - alpha# constant
    bool shift_compatible = false;  // alpha - gap/2 compatible with h
    std::optional<Value> gap;
    bool agree() const {
        return invariant == same_end && same_end == constant_gap && constant_gap == shift_compatible;
    }
};

CompatReport compat_conditions(const DNorm& alpha, const HermitianForm& h);

struct AdjointReport {
    bool equal = false;
    std::size_t checked = 0;
    std::string note;
};

// residue involution of ad_h on gr End(alpha) against ad of the residue form, alpha compatible with h
AdjointReport adjoint_residue_check(const DNorm& alpha, const HermitianForm& h);

// ---- composition ----

struct CompositionReport {
    bool alpha_gauge = false;
    bool beta_gauge = false;  // eps o alpha as a w-gauge
    bool star_gauge = false;  // induced graded value function on gr_beta(A)
    std::size_t gr_alpha_dim = 0, gr_star_dim = 0;
};

CompositionReport composed_gauge(const AlgPtr& A, const NormPtr& alpha, const CoarsenedValuation& cv);

}  // namespace gk

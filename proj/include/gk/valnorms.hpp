#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gk/linalg.hpp"
#include "gk/valuation.hpp"

namespace gk {

// Leading form of x in an ambient graded residue space. x is first rescaled to
// the canonical representative rho of its class mod Gamma_F; coords are the
// residue coordinates of that rescaled vector. Leads with the same coset key
// live in the same graded piece and may be compared linearly.
struct Lead {
    Value degree;
    Value coset;
    Vec coords;
};

class ValueFunction {
public:
    ValueFunction(ValPtr v, std::size_t n) : v_(std::move(v)), n_(n) {}
    virtual ~ValueFunction() = default;

    const ValPtr& valuation() const { return v_; }
    const FieldPtr& field() const { return v_->field(); }
    std::size_t dim() const { return n_; }

    virtual Value eval(const Vec& x) const = 0;
    virtual std::optional<Lead> lead(const Vec& x) const { return std::nullopt; }
    // degrees of the ambient graded slots; nullopt if the rule has no ambient
    virtual std::optional<std::vector<Value>> ambient() const { return std::nullopt; }
    // vectors worth trying first when searching for a splitting base
    virtual std::vector<Vec> candidates() const { return {}; }
    virtual std::string rule() const = 0;

protected:
    void check_dim(const Vec& x) const;
    ValPtr v_;
    std::size_t n_;
};

using VFPtr = std::shared_ptr<const ValueFunction>;

class SplitNorm;
using NormPtr = std::shared_ptr<const SplitNorm>;

// alpha(sum e_i c_i) = min(gamma_i + v(c_i))
class SplitNorm : public ValueFunction {
public:
    SplitNorm(ValPtr v, std::vector<Vec> base, std::vector<Value> values);

    const std::vector<Vec>& base() const { return base_; }
    const std::vector<Value>& values() const { return vals_; }
    Vec coords(const Vec& x) const;  // coordinates in the splitting base

    Value eval(const Vec& x) const override;
    std::optional<Lead> lead(const Vec& x) const override;
    std::optional<std::vector<Value>> ambient() const override { return vals_; }
    std::vector<Vec> candidates() const override { return base_; }
    std::string rule() const override { return "splitting base"; }

    // norm on F^m via the columns of B (independent vectors of V)
    NormPtr restrict(const std::vector<Vec>& B) const;
    NormPtr shifted(const Value& g) const;
    bool same_as(const SplitNorm& o) const;

private:
    std::vector<Vec> base_;
    std::vector<Value> vals_;
    Mat Pinv_;
};

// generic lead of a split-style coordinate vector: slot i has degree gammas[i]
std::optional<Lead> split_lead(const Valuation& v, const std::vector<Value>& gammas, const Vec& c);

// restriction to span(B), coordinates relative to B
class Restriction : public ValueFunction {
public:
    Restriction(VFPtr parent, std::vector<Vec> B);
    Value eval(const Vec& y) const override;
    std::optional<Lead> lead(const Vec& y) const override;
    std::optional<std::vector<Value>> ambient() const override { return parent_->ambient(); }
    std::vector<Vec> candidates() const override;
    std::string rule() const override { return "restriction"; }
    Vec push(const Vec& y) const;

private:
    VFPtr parent_;
    std::vector<Vec> B_;
};

// alpha + g
class Shifted : public ValueFunction {
public:
    Shifted(VFPtr parent, Value g);
    Value eval(const Vec& x) const override { return parent_->eval(x) + g_; }
    std::optional<Lead> lead(const Vec& x) const override;
    std::optional<std::vector<Value>> ambient() const override;
    std::vector<Vec> candidates() const override { return parent_->candidates(); }
    std::string rule() const override { return "shift"; }

private:
    VFPtr parent_;
    Value g_;
};

// V1 + V2 + ..., min of the parts
class DirectSum : public ValueFunction {
public:
    explicit DirectSum(std::vector<VFPtr> parts);
    Value eval(const Vec& x) const override;
    std::optional<Lead> lead(const Vec& x) const override;
    std::optional<std::vector<Value>> ambient() const override;
    std::vector<Vec> candidates() const override;
    std::string rule() const override { return "direct sum"; }

private:
    std::vector<Vec> split(const Vec& x) const;
    std::vector<VFPtr> parts_;
};

// (c1, c2) -> v(c1 + c2 s sqrt(1+t)), the root taken in the completion; needs
// v(t) > 0, 1+t a nonsquare in F, residue characteristic not 2
class EmbeddedRoot : public ValueFunction {
public:
    EmbeddedRoot(ValPtr v, Elem s, Elem t, std::size_t max_terms = 200);
    Value eval(const Vec& x) const override;
    std::optional<Lead> lead(const Vec& x) const override;
    std::optional<std::vector<Value>> ambient() const override { return std::vector<Value>{v_->zero_value()}; }
    std::string rule() const override;

private:
    // an element z of F with v(z) = alpha(x) and the same leading term
    Elem approximant(const Vec& x) const;
    Elem s_, t_;
    std::size_t max_terms_;
    std::vector<Q> binom_;
};

// (x, y) over V (x) W: sum e_i (x) y_i -> min(gamma_i + beta(y_i)); coordinates i*m + j
class TensorRule : public ValueFunction {
public:
    TensorRule(NormPtr alpha, VFPtr beta);
    Value eval(const Vec& z) const override;
    std::string rule() const override { return "tensor"; }

private:
    NormPtr a_;
    VFPtr b_;
};

VFPtr tensor_rule(const NormPtr& alpha, const VFPtr& beta);
NormPtr tensor(const NormPtr& alpha, const NormPtr& beta);
// alpha (x) v_L on V (x) L = L^n for a valuation vL extending alpha's valuation
NormPtr extend_scalars(const NormPtr& alpha, const ValPtr& vL);
Vec kron(const Vec& x, const Vec& y);

// ---- coarsening ----

// w = eps o v on the same field; u induced on the residue field of w
struct CoarsenedValuation {
    ConvexSubgroup delta;
    ValPtr v, w, u;
    // v(t^w_lambda)
    Value tau(const Value& lambda) const;
    Value eps(const Value& g) const { return quotient_map(delta, g); }
};

CoarsenedValuation coarsen_valuation(const ValPtr& v, std::size_t kept);

// alpha(x) = tau(lambda) + mu(xi), lambda = beta(x), xi the residue vector of
// x t^w_{-lambda} in the beta-splitting base; beta values must lie in Gamma_w
class ComposedRule : public ValueFunction {
public:
    ComposedRule(CoarsenedValuation cv, NormPtr beta, VFPtr mu);
    Value eval(const Vec& x) const override;
    std::optional<Lead> lead(const Vec& x) const override;
    std::optional<std::vector<Value>> ambient() const override { return mu_->ambient(); }
    std::vector<Vec> candidates() const override;
    std::string rule() const override { return "composed"; }

    const CoarsenedValuation& coarsening() const { return cv_; }
    const NormPtr& beta() const { return beta_; }
    const VFPtr& mu() const { return mu_; }
    // residue vector at beta-degree lambda (xi = 0 if beta(x) > lambda)
    Vec residue_vector(const Vec& x, const Value& lambda) const;
    Vec lift_vector(const Vec& xi) const;

private:
    CoarsenedValuation cv_;
    NormPtr beta_;
    VFPtr mu_;
};

struct Coarsening {
    VFPtr beta;
    struct Component {
        Value lambda;
        VFPtr alpha;  // u-value function on V^beta_lambda
        std::vector<std::size_t> slots;
    };
    std::vector<Component> components;  // one per class of Lambda_V mod Lambda_F
};

// supported for split norms and composed rules
Coarsening coarsen(const VFPtr& alpha, const CoarsenedValuation& cv);
// alpha_lambda at a specific lambda in Lambda_V
VFPtr component_at(const VFPtr& alpha, const CoarsenedValuation& cv, const Value& lambda);

// ---- norm recognition ----

enum class Verdict { Yes, No, Undecided };
std::string verdict_str(Verdict v);

struct NormCheckOptions {
    std::size_t max_reductions = 64;
    std::vector<Vec> extra_candidates;
};

struct NormCheck {
    Verdict verdict = Verdict::Undecided;
    NormPtr norm;                     // splitting base found
    std::vector<Vec> independent;     // homogeneously independent vectors found
    std::vector<Vec> collapsed;       // vectors whose leading forms fell into the span of earlier ones
    std::size_t gr_dim_lower = 0;
    std::optional<std::size_t> gr_dim_upper;
    std::string note;
};

NormCheck check_norm(const ValueFunction& alpha, const NormCheckOptions& opt = {});

}  // namespace gk

#include "gk/valnorms.hpp"

#include <map>
#include <stdexcept>

namespace gk {

void ValueFunction::check_dim(const Vec& x) const {
    if (x.size() != n_)
        throw std::invalid_argument("vector of length " + std::to_string(x.size()) + " in a space of dimension " +
                                    std::to_string(n_));
}

static Value coset_key(const Valuation& v, const Value& g) { return v.group().canonical(g); }

// ---- split norms ----

SplitNorm::SplitNorm(ValPtr v, std::vector<Vec> base, std::vector<Value> values)
    : ValueFunction(std::move(v), base.size()), base_(std::move(base)), vals_(std::move(values)) {
    if (vals_.size() != n_) throw std::invalid_argument("one value per base vector expected");
    for (const auto& b : base_) {
        if (b.size() != n_) throw std::invalid_argument("base vector of wrong length");
        for (const auto& e : b)
            if (!same_field(e.field(), field())) throw std::invalid_argument("base vector over another field");
    }
    for (const auto& g : vals_)
        if (g.rank() != v_->rank() || g.is_inf()) throw std::invalid_argument("bad base value");
    auto inv = n_ ? inverse(from_columns(base_)) : std::optional<Mat>(Mat{});
    if (!inv) throw std::invalid_argument("splitting base is not a basis");
    Pinv_ = *inv;
}

Vec SplitNorm::coords(const Vec& x) const {
    check_dim(x);
    return Pinv_ * x;
}

Value SplitNorm::eval(const Vec& x) const {
    Vec c = coords(x);
    Value m = v_->inf_value();
    for (std::size_t i = 0; i < n_; ++i)
        if (!c[i].is_zero()) m = vmin(m, vals_[i] + v_->val(c[i]));
    return m;
}

std::optional<Lead> split_lead(const Valuation& v, const std::vector<Value>& gammas, const Vec& c) {
    Value m = v.inf_value();
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!c[i].is_zero()) m = vmin(m, gammas[i] + v.val(c[i]));
    if (m.is_inf()) return std::nullopt;
    Lead L{m, coset_key(v, m), zero_vec(v.residue_field(), c.size())};
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!c[i].is_zero() && gammas[i] + v.val(c[i]) == m) L.coords[i] = v.lead(c[i]);
    return L;
}

std::optional<Lead> SplitNorm::lead(const Vec& x) const { return split_lead(*v_, vals_, coords(x)); }

NormPtr SplitNorm::restrict(const std::vector<Vec>& B) const {
    const std::size_t m = B.size();
    struct Row {
        Vec a, coef;
    };
    std::vector<Row> rows;
    for (std::size_t k = 0; k < m; ++k) rows.push_back({coords(B[k]), unit_vec(field(), m, k)});
    std::vector<Vec> base;
    std::vector<Value> vals;
    // valuation-pivot elimination: each chosen vector attains its min at a pivot
    // that all later vectors have cleared
    while (!rows.empty()) {
        Row w = rows.front();
        rows.erase(rows.begin());
        Value mu = v_->inf_value();
        std::size_t piv = n_;
        for (std::size_t i = 0; i < n_; ++i) {
            if (w.a[i].is_zero()) continue;
            Value g = vals_[i] + v_->val(w.a[i]);
            if (g < mu) {
                mu = g;
                piv = i;
            }
        }
        if (piv == n_) throw std::invalid_argument("restriction: vectors are linearly dependent");
        for (auto& r : rows) {
            if (r.a[piv].is_zero()) continue;
            Elem f = r.a[piv] / w.a[piv];
            r.a = r.a - scale(w.a, f);
            r.coef = r.coef - scale(w.coef, f);
        }
        base.push_back(w.coef);
        vals.push_back(mu);
    }
    return std::make_shared<SplitNorm>(v_, base, vals);
}

NormPtr SplitNorm::shifted(const Value& g) const {
    std::vector<Value> vals;
    for (const auto& x : vals_) vals.push_back(x + g);
    return std::make_shared<SplitNorm>(v_, base_, vals);
}

bool SplitNorm::same_as(const SplitNorm& o) const {
    if (o.dim() != n_) return false;
    for (std::size_t i = 0; i < n_; ++i)
        if (o.eval(base_[i]) != vals_[i] || eval(o.base_[i]) != o.vals_[i]) return false;
    return true;
}

// ---- restriction, shift, direct sum ----

Restriction::Restriction(VFPtr parent, std::vector<Vec> B)
    : ValueFunction(parent->valuation(), B.size()), parent_(std::move(parent)), B_(std::move(B)) {
    for (const auto& b : B_)
        if (b.size() != parent_->dim()) throw std::invalid_argument("restriction: vector of wrong length");
    if (independent_subset(B_).size() != B_.size())
        throw std::invalid_argument("restriction: vectors are linearly dependent");
}

Vec Restriction::push(const Vec& y) const {
    check_dim(y);
    Vec x = zero_vec(field(), parent_->dim());
    for (std::size_t k = 0; k < n_; ++k)
        if (!y[k].is_zero()) x = x + scale(B_[k], y[k]);
    return x;
}

Value Restriction::eval(const Vec& y) const { return parent_->eval(push(y)); }
std::optional<Lead> Restriction::lead(const Vec& y) const { return parent_->lead(push(y)); }

std::vector<Vec> Restriction::candidates() const {
    if (auto sp = std::dynamic_pointer_cast<const SplitNorm>(parent_)) return sp->restrict(B_)->base();
    return {};
}

Shifted::Shifted(VFPtr parent, Value g) : ValueFunction(parent->valuation(), parent->dim()), parent_(std::move(parent)), g_(std::move(g)) {}

std::optional<Lead> Shifted::lead(const Vec& x) const {
    auto L = parent_->lead(x);
    if (!L) return L;
    L->degree = L->degree + g_;
    L->coset = coset_key(*v_, L->degree);
    return L;
}

std::optional<std::vector<Value>> Shifted::ambient() const {
    auto a = parent_->ambient();
    if (a)
        for (auto& d : *a) d = d + g_;
    return a;
}

static std::size_t total_dim(const std::vector<VFPtr>& parts) {
    std::size_t n = 0;
    for (const auto& p : parts) n += p->dim();
    return n;
}

DirectSum::DirectSum(std::vector<VFPtr> parts)
    : ValueFunction(parts.at(0)->valuation(), total_dim(parts)), parts_(std::move(parts)) {
    for (const auto& p : parts_)
        if (!same_field(p->field(), field()) || p->valuation()->rank() != v_->rank())
            throw std::invalid_argument("direct sum of value functions over different valuations");
}

std::vector<Vec> DirectSum::split(const Vec& x) const {
    check_dim(x);
    std::vector<Vec> out;
    std::size_t off = 0;
    for (const auto& p : parts_) {
        out.emplace_back(x.begin() + off, x.begin() + off + p->dim());
        off += p->dim();
    }
    return out;
}

Value DirectSum::eval(const Vec& x) const {
    auto xs = split(x);
    Value m = v_->inf_value();
    for (std::size_t k = 0; k < parts_.size(); ++k) m = vmin(m, parts_[k]->eval(xs[k]));
    return m;
}

std::optional<Lead> DirectSum::lead(const Vec& x) const {
    auto xs = split(x);
    Value m = eval(x);
    if (m.is_inf()) return std::nullopt;
    Lead L{m, coset_key(*v_, m), {}};
    for (std::size_t k = 0; k < parts_.size(); ++k) {
        auto amb = parts_[k]->ambient();
        if (!amb) return std::nullopt;
        if (parts_[k]->eval(xs[k]) == m) {
            auto Lk = parts_[k]->lead(xs[k]);
            if (!Lk) return std::nullopt;
            L.coords.insert(L.coords.end(), Lk->coords.begin(), Lk->coords.end());
        } else {
            Vec z = zero_vec(v_->residue_field(), amb->size());
            L.coords.insert(L.coords.end(), z.begin(), z.end());
        }
    }
    return L;
}

std::optional<std::vector<Value>> DirectSum::ambient() const {
    std::vector<Value> out;
    for (const auto& p : parts_) {
        auto a = p->ambient();
        if (!a) return std::nullopt;
        out.insert(out.end(), a->begin(), a->end());
    }
    return out;
}

std::vector<Vec> DirectSum::candidates() const {
    std::vector<Vec> out;
    std::size_t off = 0;
    for (const auto& p : parts_) {
        for (const auto& c : p->candidates()) {
            Vec x = zero_vec(field(), n_);
            for (std::size_t i = 0; i < c.size(); ++i) x[off + i] = c[i];
            out.push_back(x);
        }
        off += p->dim();
    }
    return out;
}

// ---- embedded square root ----

EmbeddedRoot::EmbeddedRoot(ValPtr v, Elem s, Elem t, std::size_t max_terms)
    : ValueFunction(std::move(v), 2), s_(std::move(s)), t_(std::move(t)), max_terms_(max_terms) {
    if (field()->p == 2 || v_->residue_char() == 2) throw UnsupportedError("square roots in residue characteristic 2");
    if (s_.is_zero()) throw std::invalid_argument("embedded root: s must be nonzero");
    if (t_.is_zero() || !(v_->val(t_) > v_->zero_value()))
        throw std::invalid_argument("embedded root: v(t) must be positive");
    auto sq = is_square(Elem::one(field()) + t_);
    if (!sq) throw UnsupportedError("cannot decide whether 1+t is a square");
    if (*sq) throw std::invalid_argument("embedded root: 1+t is a square, the map is not injective");
    binom_.push_back(Q(1));
    for (std::size_t k = 1; k <= max_terms_; ++k) {
        Q b = binom_.back() * (Q(1, 2) - Q(long(k) - 1)) / Q(long(k));
        b.canonicalize();
        binom_.push_back(b);
    }
}

Elem EmbeddedRoot::approximant(const Vec& x) const {
    check_dim(x);
    const Elem &c1 = x[0], &c2 = x[1];
    if (c2.is_zero()) return c1;
    Elem cs = c2 * s_;
    Value vcs = v_->val(cs), vt = v_->val(t_);
    Elem sum = Elem::one(field()), term = Elem::one(field());
    for (std::size_t K = 0;; ++K) {
        if (K > 0) {
            term = term * t_;
            sum = sum + term * Elem::of(field(), binom_[K]);
        }
        Elem z = c1 + cs * sum;
        // tail of the series has value >= v(c2 s) + (K+1) v(t)
        Value bound = vcs + vt.scaled(Q(long(K) + 1));
        if (!z.is_zero() && v_->val(z) < bound) return z;
        if (K + 1 >= max_terms_) throw std::runtime_error("embedded root: series did not separate within the term budget");
    }
}

Value EmbeddedRoot::eval(const Vec& x) const {
    check_dim(x);
    if (is_zero(x)) return v_->inf_value();
    return v_->val(approximant(x));
}

std::optional<Lead> EmbeddedRoot::lead(const Vec& x) const {
    check_dim(x);
    if (is_zero(x)) return std::nullopt;
    Elem z = approximant(x);
    Value m = v_->val(z);
    return Lead{m, coset_key(*v_, m), Vec{v_->lead(z)}};
}

std::string EmbeddedRoot::rule() const { return "embedded root of 1+(" + t_.str() + ")"; }

// ---- tensor products ----

Vec kron(const Vec& x, const Vec& y) {
    Vec out;
    out.reserve(x.size() * y.size());
    for (const auto& a : x)
        for (const auto& b : y) out.push_back(a * b);
    return out;
}

TensorRule::TensorRule(NormPtr alpha, VFPtr beta)
    : ValueFunction(alpha->valuation(), alpha->dim() * beta->dim()), a_(std::move(alpha)), b_(std::move(beta)) {
    if (!same_field(a_->field(), b_->field())) throw std::invalid_argument("tensor over different fields");
}

Value TensorRule::eval(const Vec& z) const {
    check_dim(z);
    const std::size_t n = a_->dim(), m = b_->dim();
    Value best = v_->inf_value();
    // z = sum_j f_j (x) z_j in the standard basis; rewrite as sum_i e_i (x) y_i
    std::vector<Vec> cols(m, zero_vec(field(), n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < m; ++k) cols[k][j] = z[j * m + k];
    std::vector<Vec> ycoef;
    for (std::size_t k = 0; k < m; ++k) ycoef.push_back(a_->coords(cols[k]));
    for (std::size_t i = 0; i < n; ++i) {
        Vec yi(m);
        for (std::size_t k = 0; k < m; ++k) yi[k] = ycoef[k][i];
        if (is_zero(yi)) continue;
        best = vmin(best, a_->values()[i] + b_->eval(yi));
    }
    return best;
}

VFPtr tensor_rule(const NormPtr& alpha, const VFPtr& beta) {
    if (auto sb = std::dynamic_pointer_cast<const SplitNorm>(beta)) return tensor(alpha, sb);
    return std::make_shared<TensorRule>(alpha, beta);
}

NormPtr tensor(const NormPtr& alpha, const NormPtr& beta) {
    if (!same_field(alpha->field(), beta->field())) throw std::invalid_argument("tensor over different fields");
    std::vector<Vec> base;
    std::vector<Value> vals;
    for (std::size_t i = 0; i < alpha->dim(); ++i)
        for (std::size_t j = 0; j < beta->dim(); ++j) {
            base.push_back(kron(alpha->base()[i], beta->base()[j]));
            vals.push_back(alpha->values()[i] + beta->values()[j]);
        }
    return std::make_shared<SplitNorm>(alpha->valuation(), base, vals);
}

NormPtr extend_scalars(const NormPtr& alpha, const ValPtr& vL) {
    auto q = std::dynamic_pointer_cast<const QuadraticValuation>(vL);
    if (!q) throw UnsupportedError("scalar extension only along supported quadratic extensions");
    if (!same_field(q->base()->field(), alpha->field())) throw std::invalid_argument("extension of a different field");
    std::vector<Vec> base;
    for (const auto& b : alpha->base()) {
        Vec e;
        for (const auto& c : b) e.push_back(q->from_base(c));
        base.push_back(e);
    }
    return std::make_shared<SplitNorm>(vL, base, alpha->values());
}

// ---- coarsening ----

Value CoarsenedValuation::tau(const Value& lambda) const { return v->val(w->section(lambda)); }

CoarsenedValuation coarsen_valuation(const ValPtr& v, std::size_t kept) {
    auto mv = std::dynamic_pointer_cast<const MonomialValuation>(v);
    if (!mv) throw UnsupportedError("coarsening is supported for monomial valuations only");
    if (kept == 0 || kept > v->rank()) throw std::invalid_argument("convex subgroup must keep 1..rank coordinates");
    ConvexSubgroup delta{v->rank(), kept};
    const FieldPtr& F = v->field();
    std::vector<Value> ew;
    for (const auto& g : mv->weights()) ew.push_back(quotient_map(delta, g));
    std::optional<std::pair<unsigned long, Value>> cw, cu;
    if (auto p = mv->coef_prime()) {
        Value gp = v->val(Elem::of(F, Q(long(*p))));
        Value ep = quotient_map(delta, gp);
        if (ep.is_zero())
            cu = std::make_pair(*p, gp);
        else
            cw = std::make_pair(*p, ep);
    }
    auto w = std::make_shared<MonomialValuation>(F, kept, cw, ew);
    const FieldPtr& R = w->residue_field();
    std::vector<Value> uw;
    for (const auto& name : R->vars)
        for (int i = 0; i < F->nvars(); ++i)
            if (F->vars[i] == name) uw.push_back(mv->weights()[i]);
    auto u = std::make_shared<MonomialValuation>(R, v->rank(), cu, uw);
    if (!same_field(u->residue_field(), v->residue_field()))
        throw std::logic_error("coarsening: residue fields do not match");
    return CoarsenedValuation{delta, v, w, u};
}

ComposedRule::ComposedRule(CoarsenedValuation cv, NormPtr beta, VFPtr mu)
    : ValueFunction(cv.v, beta->dim()), cv_(std::move(cv)), beta_(std::move(beta)), mu_(std::move(mu)) {
    if (!same_field(beta_->field(), field()) || beta_->valuation()->rank() != cv_.delta.kept)
        throw std::invalid_argument("composed rule: beta must be a w-norm on the same space");
    if (!same_field(mu_->field(), cv_.u->field()) || mu_->dim() != n_ || mu_->valuation()->rank() != v_->rank())
        throw std::invalid_argument("composed rule: mu must be a u-value function of the same dimension");
    for (const auto& l : beta_->values())
        if (!cv_.w->group().contains(l)) throw UnsupportedError("composed rule: beta values must lie in Gamma_w");
}

Vec ComposedRule::residue_vector(const Vec& x, const Value& lambda) const {
    Vec c = beta_->coords(x);
    Vec xi = zero_vec(cv_.u->field(), n_);
    for (std::size_t i = 0; i < n_; ++i)
        if (!c[i].is_zero()) xi[i] = cv_.w->residue(c[i] * cv_.w->section(beta_->values()[i] - lambda));
    return xi;
}

Vec ComposedRule::lift_vector(const Vec& xi) const {
    Vec x = zero_vec(field(), n_);
    for (std::size_t i = 0; i < n_; ++i) {
        if (xi[i].is_zero()) continue;
        Elem c = cv_.w->lift(xi[i]) * cv_.w->section(-beta_->values()[i]);
        x = x + scale(beta_->base()[i], c);
    }
    return x;
}

Value ComposedRule::eval(const Vec& x) const {
    Value lam = beta_->eval(x);
    if (lam.is_inf()) return v_->inf_value();
    return cv_.tau(lam) + mu_->eval(residue_vector(x, lam));
}

std::optional<Lead> ComposedRule::lead(const Vec& x) const {
    Value lam = beta_->eval(x);
    if (lam.is_inf()) return std::nullopt;
    auto L = mu_->lead(residue_vector(x, lam));
    if (!L) return L;
    L->degree = cv_.tau(lam) + L->degree;
    L->coset = coset_key(*v_, L->degree);
    return L;
}

std::vector<Vec> ComposedRule::candidates() const {
    std::vector<Vec> out;
    for (const auto& xi : mu_->candidates()) out.push_back(lift_vector(xi));
    for (std::size_t i = 0; i < n_; ++i) out.push_back(lift_vector(unit_vec(cv_.u->field(), n_, i)));
    return out;
}

VFPtr component_at(const VFPtr& alpha, const CoarsenedValuation& cv, const Value& lambda) {
    if (auto sp = std::dynamic_pointer_cast<const SplitNorm>(alpha)) {
        std::vector<Value> vals;
        for (const auto& g : sp->values()) {
            Value d = lambda - cv.eps(g);
            if (cv.w->group().contains(d)) vals.push_back(g + cv.tau(d));
        }
        if (vals.empty()) throw std::invalid_argument("lambda " + lambda.str() + " is not a value of beta");
        std::vector<Vec> base;
        for (std::size_t i = 0; i < vals.size(); ++i) base.push_back(unit_vec(cv.u->field(), vals.size(), i));
        return std::make_shared<SplitNorm>(cv.u, base, vals);
    }
    if (auto cr = std::dynamic_pointer_cast<const ComposedRule>(alpha)) {
        if (!cv.w->group().contains(lambda)) throw std::invalid_argument("lambda " + lambda.str() + " is not a value of beta");
        Value t = cv.tau(lambda);
        if (t.is_zero()) return cr->mu();
        return std::make_shared<Shifted>(cr->mu(), t);
    }
    throw UnsupportedError("coarsening not supported for rule '" + alpha->rule() + "'");
}

Coarsening coarsen(const VFPtr& alpha, const CoarsenedValuation& cv) {
    Coarsening out;
    if (auto sp = std::dynamic_pointer_cast<const SplitNorm>(alpha)) {
        std::vector<Value> bvals;
        for (const auto& g : sp->values()) bvals.push_back(cv.eps(g));
        out.beta = std::make_shared<SplitNorm>(cv.w, sp->base(), bvals);
        std::map<std::string, std::size_t> seen;
        for (std::size_t i = 0; i < bvals.size(); ++i) {
            Value rep = cv.w->group().canonical(bvals[i]);
            auto [it, fresh] = seen.emplace(rep.str(), out.components.size());
            if (fresh) out.components.push_back({rep, component_at(alpha, cv, rep), {}});
            out.components[it->second].slots.push_back(i);
        }
        return out;
    }
    if (auto cr = std::dynamic_pointer_cast<const ComposedRule>(alpha)) {
        out.beta = cr->beta();
        Coarsening::Component c{Value::zero(cv.delta.kept), cr->mu(), {}};
        for (std::size_t i = 0; i < cr->dim(); ++i) c.slots.push_back(i);
        out.components.push_back(c);
        return out;
    }
    throw UnsupportedError("coarsening not supported for rule '" + alpha->rule() + "'");
}

// ---- norm recognition ----

std::string verdict_str(Verdict v) {
    switch (v) {
        case Verdict::Yes:
            return "yes";
        case Verdict::No:
            return "no";
        default:
            return "undecided";
    }
}

NormCheck check_norm(const ValueFunction& alpha, const NormCheckOptions& opt) {
    const std::size_t n = alpha.dim();
    const Valuation& v = *alpha.valuation();
    NormCheck res;
    auto amb = alpha.ambient();
    if (amb) res.gr_dim_upper = amb->size();

    std::vector<Vec> cands = alpha.candidates();
    cands.insert(cands.end(), opt.extra_candidates.begin(), opt.extra_candidates.end());
    for (std::size_t i = 0; i < n; ++i) cands.push_back(unit_vec(alpha.field(), n, i));

    std::vector<Lead> leads;
    std::vector<Value> vals;
    bool capped = false;
    for (const auto& x0 : cands) {
        if (res.independent.size() == n) break;
        if (amb && res.independent.size() == amb->size()) {
            // leads found so far fill the ambient space
            res.collapsed.push_back(x0);
            break;
        }
        Vec x = x0;
        bool placed = false;
        for (std::size_t it = 0; it <= opt.max_reductions; ++it) {
            std::vector<Vec> withx = res.independent;
            withx.push_back(x);
            if (independent_subset(withx).size() == res.independent.size()) {
                res.collapsed.push_back(x0);
                placed = true;
                break;
            }
            if (it == opt.max_reductions) break;
            auto L = alpha.lead(x);
            if (!L) {
                res.note = "rule '" + alpha.rule() + "' provides no leading forms";
                res.gr_dim_lower = res.independent.size();
                return res;
            }
            std::vector<std::size_t> same;
            for (std::size_t k = 0; k < leads.size(); ++k)
                if (leads[k].coset == L->coset) same.push_back(k);
            std::optional<Vec> sol;
            if (!same.empty()) {
                std::vector<Vec> cols;
                for (auto k : same) cols.push_back(leads[k].coords);
                sol = solve(from_columns(cols), L->coords);
            }
            if (!sol) {
                res.independent.push_back(x);
                leads.push_back(*L);
                vals.push_back(L->degree);
                placed = true;
                break;
            }
            for (std::size_t q = 0; q < same.size(); ++q) {
                if ((*sol)[q].is_zero()) continue;
                std::size_t k = same[q];
                Elem c = v.lift((*sol)[q]) * v.section(L->degree - vals[k]);
                x = x - scale(res.independent[k], c);
            }
        }
        if (!placed) {
            capped = true;
            res.collapsed.push_back(x0);
        }
    }
    res.gr_dim_lower = res.independent.size();
    if (res.independent.size() == n) {
        res.verdict = Verdict::Yes;
        res.norm = std::make_shared<SplitNorm>(alpha.valuation(), res.independent, vals);
        res.note = "splitting base found";
    } else if (res.gr_dim_upper && *res.gr_dim_upper < n) {
        res.verdict = Verdict::No;
        res.note = "gr dimension at most " + std::to_string(*res.gr_dim_upper) + " < " + std::to_string(n);
    } else {
        res.note = capped ? "reduction budget exhausted" : "no decision";
    }
    return res;
}

}  // namespace gk

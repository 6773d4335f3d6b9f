#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gk/field.hpp"
#include "gk/ordvalues.hpp"

namespace gk {

struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Valuation {
public:
    virtual ~Valuation() = default;

    const FieldPtr& field() const { return F_; }
    const FieldPtr& residue_field() const { return R_; }
    std::size_t rank() const { return rank_; }
    const ValueLattice& group() const { return group_; }
    unsigned long residue_char() const { return R_->p; }

    virtual Value val(const Elem& a) const = 0;
    // t_g with v(t_g) = g, multiplicative in g
    virtual Elem section(const Value& g) const = 0;
    // requires v(a) >= 0
    virtual Elem residue(const Elem& a) const = 0;
    // residue(lift(r)) == r
    virtual Elem lift(const Elem& r) const = 0;
    virtual std::string describe() const = 0;

    // residue(a / t_{v(a)}), a nonzero
    Elem lead(const Elem& a) const;
    Value zero_value() const { return Value::zero(rank_); }
    Value inf_value() const { return Value::infinity(rank_); }
    bool is_trivial() const { return group_.lattice_rank() == 0; }

protected:
    FieldPtr F_, R_;
    std::size_t rank_ = 0;
    ValueLattice group_;
};

using ValPtr = std::shared_ptr<const Valuation>;

// Gauss/monomial valuation on k(x1..xs): v(sum c_m x^m) = min(v_p(c_m) g_p + m.w),
// with optional p-adic coefficient valuation (char 0 only). Nonzero weights and
// g_p must be Z-independent; zero-weight variables survive in the residue field.
class MonomialValuation : public Valuation {
public:
    MonomialValuation(FieldPtr F, std::size_t rank, std::optional<std::pair<unsigned long, Value>> coef,
                      std::vector<Value> weights);

    Value val(const Elem& a) const override;
    Elem section(const Value& g) const override;
    Elem residue(const Elem& a) const override;
    Elem lift(const Elem& r) const override;
    std::string describe() const override;

    Value val_poly(const Poly& p) const;
    const std::vector<Value>& weights() const { return w_; }
    std::optional<unsigned long> coef_prime() const { return cp_ ? std::optional(cp_->first) : std::nullopt; }
    const std::vector<int>& residue_vars() const { return zvars_; }

private:
    Value term_value(const Mono& m, const Q& c) const;
    Poly lead_part(const Poly& p, const Value& v, int& pk) const;

    std::optional<std::pair<unsigned long, Value>> cp_;
    std::vector<Value> w_;
    std::vector<int> zvars_;  // indices of zero-weight variables
    std::vector<Value> gens_;
    std::vector<int> gen_kind_;  // -1 = prime, else variable index
};

ValPtr padic(unsigned long p);
ValPtr trivial_valuation(const FieldPtr& F, std::size_t rank = 1);
ValPtr monomial(const FieldPtr& F, std::vector<Value> weights,
                std::optional<std::pair<unsigned long, Value>> coef = std::nullopt);

// Unique extension to base(s), s^2 = d: unramified (d a unit, residue nonsquare)
// or totally ramified (d equal to the section t_{v(d)}, v(d) not in 2 Gamma).
class QuadraticValuation : public Valuation {
public:
    QuadraticValuation(FieldPtr F, ValPtr base);

    Value val(const Elem& a) const override;
    Elem section(const Value& g) const override;
    Elem residue(const Elem& a) const override;
    Elem lift(const Elem& r) const override;
    std::string describe() const override;

    bool ramified() const { return ramified_; }
    const ValPtr& base() const { return base_; }
    Elem to_base(const RatFun& x) const { return Elem(base_->field(), x); }
    Elem from_base(const Elem& x) const { return Elem(F_, x.a()); }

private:
    ValPtr base_;
    bool ramified_ = false;
    Value half_;  // v(d)/2
};

struct ExtensionReport {
    bool unique = false;
    std::string kind;  // "unramified", "ramified", "split"
    std::string certificate;
};

// x^2 + b x + c over (F, v)
ExtensionReport check_unique_extension(const Valuation& v, const Elem& b, const Elem& c);
ExtensionReport check_unique_extension(const Valuation& v, const Elem& d);  // x^2 - d

// square test in a trivially valued residue field; nullopt when undecidable here
std::optional<bool> is_square(const Elem& a);

}  // namespace gk

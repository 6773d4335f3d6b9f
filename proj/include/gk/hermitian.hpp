#pragma once

#include <optional>
#include <vector>

#include "gk/algebra.hpp"
#include "gk/valnorms.hpp"

namespace gk {

// D with involution theta and a valuation w, w given as a multiplicative split
// norm on D over the valuation of F
struct DivisionRing {
    AlgPtr D;
    Mat theta;
    NormPtr w;

    static DivisionRing field(const ValPtr& v);
    std::size_t dim() const { return D->dim(); }
    const FieldPtr& base_field() const { return D->field(); }
    Vec bar(const Vec& a) const { return theta * a; }
    Value val(const Vec& a) const { return w->eval(a); }
};

using DVec = std::vector<Vec>;  // coordinates in D^n
using DMat = std::vector<std::vector<Vec>>;

Vec flatten(const DVec& x);
DVec unflatten(const Vec& x, std::size_t d);
DMat dmat_mul(const DivisionRing& D, const DMat& A, const DMat& B);
std::optional<DMat> dmat_inverse(const DivisionRing& D, const DMat& A);

// w-norm on the right D-space D^n with a D-splitting base
struct DNorm {
    DivisionRing D;
    std::vector<DVec> base;
    std::vector<Value> values;

    std::size_t dim() const { return base.size(); }
    // as an F-norm on F^(n dim D), base e_i d_m with values gamma_i + omega_m
    NormPtr flatten() const;
    Value eval(const DVec& x) const;
    DNorm shifted(const Value& g) const;
};

// h(x, y) = sum theta(x_k) H_kl y_l
struct HermitianForm {
    DivisionRing D;
    DMat gram;

    std::size_t dim() const { return gram.size(); }
    Vec eval(const DVec& x, const DVec& y) const;
};

// base h-dual to alpha's splitting base, values negated
DNorm dual_norm(const DNorm& alpha, const HermitianForm& h);

struct Compatibility {
    bool compatible = false;
    std::optional<Value> shift;  // gamma with alpha - gamma compatible
};

Compatibility compatibility_defect(const DNorm& alpha, const HermitianForm& h);

}  // namespace gk

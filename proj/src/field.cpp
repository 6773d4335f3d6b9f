#include "gk/field.hpp"

#include <stdexcept>

#include "gk/exprparse.hpp"

namespace gk {

std::string FieldSpec::describe() const {
    std::string s = p ? "F" + std::to_string(p) : "Q";
    if (!vars.empty()) {
        s += "(";
        for (std::size_t i = 0; i < vars.size(); ++i) s += (i ? "," : "") + vars[i];
        s += ")";
    }
    if (theta_sq) s += "[" + theta_name + "^2=" + theta_sq->str(vars) + "]";
    return s;
}

FieldPtr make_field(unsigned long p, std::vector<std::string> vars) {
    auto f = std::make_shared<FieldSpec>();
    f->p = p;
    f->vars = std::move(vars);
    return f;
}

FieldPtr make_quadratic(const FieldPtr& base, const RatFun& d, std::string name) {
    if (base->quadratic()) throw std::invalid_argument("nested quadratic extensions are not supported");
    auto f = std::make_shared<FieldSpec>(*base);
    f->theta_sq = d;
    f->theta_name = std::move(name);
    return f;
}

FieldPtr base_of(const FieldPtr& F) {
    if (!F->quadratic()) return F;
    auto f = std::make_shared<FieldSpec>(*F);
    f->theta_sq.reset();
    return f;
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->p != b->p || a->vars != b->vars || a->quadratic() != b->quadratic()) return false;
    if (a->quadratic() && !(*a->theta_sq == *b->theta_sq)) return false;
    return true;
}

static void check_same(const Elem& x, const Elem& y) {
    if (!same_field(x.field(), y.field())) throw std::invalid_argument("field mismatch");
}

Elem::Elem(FieldPtr F, RatFun a) : F_(std::move(F)), a_(std::move(a)) {
    b_ = RatFun::constant(F_->nvars(), F_->p, 0);
}

Elem::Elem(FieldPtr F, RatFun a, RatFun b) : F_(std::move(F)), a_(std::move(a)), b_(std::move(b)) {
    if (!F_->quadratic() && !b_.is_zero()) throw std::invalid_argument("theta part in a non-quadratic field");
}

Elem Elem::zero(const FieldPtr& F) { return of(F, 0); }
Elem Elem::one(const FieldPtr& F) { return of(F, 1); }
Elem Elem::of(const FieldPtr& F, const Q& c) { return Elem(F, RatFun::constant(F->nvars(), F->p, c)); }

Elem Elem::var(const FieldPtr& F, int i) { return Elem(F, RatFun(Poly::variable(F->nvars(), F->p, i))); }

Elem Elem::theta(const FieldPtr& F) {
    if (!F->quadratic()) throw std::invalid_argument("field has no quadratic generator");
    return Elem(F, RatFun::constant(F->nvars(), F->p, 0), RatFun::constant(F->nvars(), F->p, 1));
}

bool Elem::is_one() const { return b_.is_zero() && a_.is_constant() && a_.constant_value() == 1; }
bool Elem::is_rational() const { return b_.is_zero() && a_.is_constant(); }
Q Elem::rational() const {
    if (!is_rational()) throw std::logic_error("element is not a constant");
    return a_.constant_value();
}

Elem Elem::operator+(const Elem& o) const {
    check_same(*this, o);
    return Elem(F_, a_ + o.a_, b_ + o.b_);
}

Elem Elem::operator-(const Elem& o) const {
    check_same(*this, o);
    return Elem(F_, a_ - o.a_, b_ - o.b_);
}

Elem Elem::operator-() const { return Elem(F_, -a_, -b_); }

Elem Elem::operator*(const Elem& o) const {
    check_same(*this, o);
    if (!F_->quadratic() || (b_.is_zero() && o.b_.is_zero())) return Elem(F_, a_ * o.a_, b_ * o.a_ + a_ * o.b_);
    const RatFun& d = *F_->theta_sq;
    return Elem(F_, a_ * o.a_ + d * b_ * o.b_, a_ * o.b_ + b_ * o.a_);
}

RatFun Elem::norm() const {
    if (!F_->quadratic()) return a_ * a_;
    return a_ * a_ - *F_->theta_sq * b_ * b_;
}

Elem Elem::conj() const { return Elem(F_, a_, -b_); }

Elem Elem::inv() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    if (b_.is_zero()) return Elem(F_, a_.inv(), b_);
    RatFun n = norm();
    if (n.is_zero()) throw std::domain_error("quadratic generator is not a field extension (zero norm)");
    return Elem(F_, a_ / n, -b_ / n);
}

Elem Elem::operator/(const Elem& o) const { return *this * o.inv(); }

Elem Elem::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    Elem r = one(F_), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

bool Elem::operator==(const Elem& o) const {
    check_same(*this, o);
    return a_ == o.a_ && b_ == o.b_;
}

std::string Elem::str() const {
    std::string sa = a_.str(F_->vars);
    if (b_.is_zero()) return sa;
    std::string sb = b_.str(F_->vars);
    std::string th = F_->theta_name;
    std::string tb = (b_.num().is_monomial() && b_.den().is_constant())
                         ? (sb == "1" ? th : (sb == "-1" ? "-" + th : sb + "*" + th))
                         : "(" + sb + ")*" + th;
    if (a_.is_zero()) return tb;
    if (!tb.empty() && tb[0] == '-') return sa + " - " + tb.substr(1);
    return sa + " + " + tb;
}

Elem parse_elem(const FieldPtr& F, const std::string& text) {
    ExprOps<Elem> ops;
    ops.number = [&](const Z& z) { return Elem::of(F, Q(z)); };
    ops.name = [&](const std::string& nm) -> Elem {
        for (int i = 0; i < F->nvars(); ++i)
            if (F->vars[i] == nm) return Elem::var(F, i);
        if (F->quadratic() && nm == F->theta_name) return Elem::theta(F);
        throw std::invalid_argument("unknown name");
    };
    ops.add = [](const Elem& a, const Elem& b) { return a + b; };
    ops.sub = [](const Elem& a, const Elem& b) { return a - b; };
    ops.mul = [](const Elem& a, const Elem& b) { return a * b; };
    ops.div = [](const Elem& a, const Elem& b) { return a / b; };
    ops.neg = [](const Elem& a) { return -a; };
    ops.pow = [](const Elem& a, long e) { return a.pow(e); };
    return parse_expr(text, ops);
}

}  // namespace gk

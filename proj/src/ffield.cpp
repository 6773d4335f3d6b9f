#include "gk/ffield.hpp"

#include <stdexcept>

namespace gk {

static int modp(const Q& c, int p) {
    Z n = c.get_num() % Z(p);
    if (n < 0) n += p;
    return int(n.get_si());
}

std::optional<FiniteField> FiniteField::from(const FieldPtr& F) {
    if (F->p == 0 || F->nvars() != 0) return std::nullopt;
    if (F->p > 1000) return std::nullopt;
    FiniteField ff;
    ff.F_ = F;
    ff.p_ = int(F->p);
    int p = ff.p_;
    bool quad = F->quadratic();
    if (quad) {
        if (!F->theta_sq->is_constant()) return std::nullopt;
        ff.d_ = modp(F->theta_sq->constant_value(), p);
        for (int x = 0; x < p; ++x)
            if ((x * x) % p == ff.d_) throw std::invalid_argument("s^2 = d with d a square: not a field");
    }
    int q = quad ? p * p : p;
    ff.q_ = q;
    ff.add_.resize(q * q);
    ff.mul_.resize(q * q);
    ff.neg_.resize(q);
    ff.inv_.assign(q, 0);
    for (int x = 0; x < q; ++x) {
        int a1 = x % p, b1 = x / p;
        ff.neg_[x] = ((p - a1) % p) + ((p - b1) % p) * p;
        for (int y = 0; y < q; ++y) {
            int a2 = y % p, b2 = y / p;
            ff.add_[x * q + y] = (a1 + a2) % p + ((b1 + b2) % p) * p;
            int ra = (a1 * a2 + ff.d_ * ((b1 * b2) % p)) % p;
            int rb = (a1 * b2 + a2 * b1) % p;
            int m = ra + rb * p;
            ff.mul_[x * q + y] = m;
            if (m == 1) ff.inv_[x] = y;
        }
    }
    return ff;
}

int FiniteField::encode(const Elem& e) const {
    if (!e.a().is_constant() || !e.b().is_constant()) throw std::invalid_argument("not a finite-field element");
    int a = modp(e.a().constant_value(), p_);
    int b = modp(e.b().constant_value(), p_);
    return a + b * p_;
}

Elem FiniteField::decode(int k) const {
    int a = k % p_, b = k / p_;
    if (!F_->quadratic()) return Elem::of(F_, Q(a));
    return Elem(F_, RatFun::constant(0, F_->p, Q(a)), RatFun::constant(0, F_->p, Q(b)));
}

}  // namespace gk

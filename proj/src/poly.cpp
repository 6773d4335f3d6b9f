#include "gk/poly.hpp"

#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace gk {

Q inv_mod(const Q& c, unsigned long p) {
    Z m(p), r;
    Z n = c.get_num() % m;
    if (n < 0) n += m;
    if (mpz_invert(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t()) == 0) throw std::domain_error("not invertible mod p");
    return Q(r);
}

Q Poly::reduce(const Q& c) const {
    if (p_ == 0) return c;
    Z m(p_);
    Z n = c.get_num() % m;
    Z d = c.get_den() % m;
    if (d == 0) throw std::domain_error("denominator divisible by the characteristic");
    Z di;
    mpz_invert(di.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
    Z r = (n * di) % m;
    if (r < 0) r += m;
    return Q(r);
}

Poly Poly::constant(int nvars, unsigned long p, const Q& c) {
    Poly r(nvars, p);
    r.add_term(Mono(nvars, 0), c);
    return r;
}

Poly Poly::monomial(int nvars, unsigned long p, const Mono& m, const Q& c) {
    Poly r(nvars, p);
    r.add_term(m, c);
    return r;
}

Poly Poly::variable(int nvars, unsigned long p, int i) {
    Mono m(nvars, 0);
    m.at(i) = 1;
    return monomial(nvars, p, m);
}

void Poly::add_term(const Mono& m, const Q& c) {
    Q cc = reduce(c);
    if (cc == 0) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
        t_.emplace(m, cc);
        return;
    }
    it->second = reduce(it->second + cc);
    if (it->second == 0) t_.erase(it);
}

bool Poly::is_constant() const {
    if (t_.empty()) return true;
    if (t_.size() != 1) return false;
    for (int e : t_.begin()->first)
        if (e) return false;
    return true;
}

Q Poly::constant_value() const {
    if (!is_constant()) throw std::logic_error("not a constant polynomial");
    return t_.empty() ? Q(0) : t_.begin()->second;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    for (const auto& [m, c] : o.t_) r.add_term(m, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    for (const auto& [m, c] : o.t_) r.add_term(m, -c);
    return r;
}

Poly Poly::operator-() const {
    Poly r(nv_, p_);
    for (const auto& [m, c] : t_) r.add_term(m, -c);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r(nv_, p_);
    Mono e(nv_);
    for (const auto& [m1, c1] : t_)
        for (const auto& [m2, c2] : o.t_) {
            for (int i = 0; i < nv_; ++i) e[i] = m1[i] + m2[i];
            r.add_term(e, c1 * c2);
        }
    return r;
}

Poly Poly::scaled(const Q& c) const {
    Poly r(nv_, p_);
    for (const auto& [m, x] : t_) r.add_term(m, x * c);
    return r;
}

Poly Poly::shifted(const Mono& s) const {
    Poly r(nv_, p_);
    Mono e(nv_);
    for (const auto& [m, c] : t_) {
        for (int i = 0; i < nv_; ++i) e[i] = m[i] + s[i];
        r.t_.emplace(e, c);
    }
    return r;
}

Mono Poly::min_exps() const {
    Mono r(nv_, 0);
    bool first = true;
    for (const auto& [m, c] : t_) {
        for (int i = 0; i < nv_; ++i) r[i] = first ? m[i] : std::min(r[i], m[i]);
        first = false;
    }
    return r;
}

Mono Poly::max_exps() const {
    Mono r(nv_, 0);
    bool first = true;
    for (const auto& [m, c] : t_) {
        for (int i = 0; i < nv_; ++i) r[i] = first ? m[i] : std::max(r[i], m[i]);
        first = false;
    }
    return r;
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    Poly q(nv_, p_);
    if (is_zero()) return q;
    Mono lo(nv_), hi(nv_);
    {
        Mono amin = min_exps(), amax = max_exps(), dmin = d.min_exps(), dmax = d.max_exps();
        for (int i = 0; i < nv_; ++i) {
            lo[i] = amin[i] - dmin[i];
            hi[i] = amax[i] - dmax[i];
            if (lo[i] > hi[i]) return std::nullopt;
        }
    }
    const auto& [dm, dc] = d.lead_term();
    Q dinv = p_ ? inv_mod(dc, p_) : Q(1 / dc);
    Poly r = *this;
    while (!r.is_zero()) {
        const auto& [rm, rc] = r.lead_term();
        Mono e(nv_);
        for (int i = 0; i < nv_; ++i) {
            e[i] = rm[i] - dm[i];
            if (e[i] < lo[i] || e[i] > hi[i]) return std::nullopt;
        }
        Poly t = monomial(nv_, p_, e, rc * dinv);
        q = q + t;
        r = r - t * d;
    }
    return q;
}

int Poly::degree1() const {
    if (nv_ != 1) throw std::logic_error("degree1 on multivariate polynomial");
    if (t_.empty()) return -1;
    return t_.rbegin()->first[0];
}

Q Poly::coeff1(int e) const {
    auto it = t_.find(Mono{e});
    return it == t_.end() ? Q(0) : it->second;
}

static std::string coef_str(const Q& c) { return c.get_str(); }

std::string Poly::str(const std::vector<std::string>& names) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const auto& [m, c] = *it;
        Q cc = c;
        bool neg = cc < 0;
        if (neg) cc = -cc;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        std::string mono;
        for (int i = 0; i < nv_; ++i) {
            if (m[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names.at(i);
            if (m[i] != 1) mono += "^" + std::to_string(m[i]);
        }
        if (mono.empty())
            os << coef_str(cc);
        else if (cc == 1)
            os << mono;
        else
            os << coef_str(cc) << "*" << mono;
    }
    return os.str();
}

// ---- univariate gcd ----

static Poly to_poly1(const Poly& a) {
    Mono m = a.min_exps();
    m[0] = -m[0];
    return a.shifted(m);
}

static Q fdiv(const Q& a, const Q& b, unsigned long p) { return p ? Q(a * inv_mod(b, p)) : Q(a / b); }

static Poly rem1(Poly a, const Poly& b) {
    unsigned long p = a.charac();
    int db = b.degree1();
    Q lb = b.coeff1(db);
    while (!a.is_zero() && a.degree1() >= db) {
        int da = a.degree1();
        Q f = fdiv(a.coeff1(da), lb, p);
        a = a - b.shifted(Mono{da - db}).scaled(f);
    }
    return a;
}

Poly poly_gcd1(const Poly& a0, const Poly& b0) {
    Poly a = to_poly1(a0), b = to_poly1(b0);
    while (!b.is_zero()) {
        Poly r = rem1(a, b);
        a = b;
        b = r.is_zero() ? r : to_poly1(r);
    }
    if (a.is_zero()) return a;
    Q lc = a.coeff1(a.degree1());
    return a.scaled(a.charac() ? inv_mod(lc, a.charac()) : Q(1 / lc));
}

// ---- multivariate gcd: recursive primitive remainder sequences ----

static int deg_in(const Poly& a, int k) {
    int d = -1;
    for (const auto& [m, c] : a.terms()) d = std::max(d, m[k]);
    return d;
}

// coefficient of x_k^e, as a polynomial free of x_k
static Poly coeff_in(const Poly& a, int k, int e) {
    Poly r(a.nvars(), a.charac());
    for (const auto& [m, c] : a.terms())
        if (m[k] == e) {
            Mono mm = m;
            mm[k] = 0;
            r = r + Poly::monomial(a.nvars(), a.charac(), mm, c);
        }
    return r;
}

static Poly unit_normal(const Poly& a) {
    if (a.is_zero()) return a;
    Q lc = a.lead_term().second;
    return a.scaled(a.charac() ? inv_mod(lc, a.charac()) : Q(1 / lc));
}

static Poly gcd_rec(const Poly& a, const Poly& b);

static Poly content_in(const Poly& a, int k) {
    Poly g(a.nvars(), a.charac());
    for (int e = deg_in(a, k); e >= 0; --e) {
        Poly c = coeff_in(a, k, e);
        if (c.is_zero()) continue;
        g = g.is_zero() ? unit_normal(c) : gcd_rec(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

static Poly prim_in(const Poly& a, int k) {
    Poly c = content_in(a, k);
    return c.is_constant() ? unit_normal(a) : unit_normal(*a.divide_exact(c));
}

// clear denominators and the integer content (char 0); unit scaling otherwise
static Poly int_primitive(const Poly& a) {
    if (a.is_zero() || a.charac()) return unit_normal(a);
    Z num = 0, den = 1;
    for (const auto& [m, c] : a.terms()) {
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    }
    return a.scaled(Q(den, num));
}

// value of a at x_i = pt[i] for i != k, as a univariate polynomial in x_k
static Poly eval_except(const Poly& a, int k, const std::vector<Z>& pt) {
    Poly r(1, a.charac());
    for (const auto& [m, c] : a.terms()) {
        Q f = c;
        for (int i = 0; i < a.nvars(); ++i) {
            if (i == k) continue;
            Z w;
            mpz_pow_ui(w.get_mpz_t(), pt[i].get_mpz_t(), static_cast<unsigned long>(m[i]));
            f *= w;
        }
        r = r + Poly::monomial(1, a.charac(), Mono{m[k]}, f);
    }
    return r;
}

// true if the x_k-primitive parts of a, b are certainly coprime: a specialization of
// the other variables keeping both x_k-degrees has a constant gcd
static bool coprime_at_random_point(const Poly& a, const Poly& b, int k) {
    static std::mt19937_64 rng(12345);
    const int da = deg_in(a, k), db = deg_in(b, k);
    std::uniform_int_distribution<long> D(1, 1000);
    for (int attempt = 0; attempt < 3; ++attempt) {
        std::vector<Z> pt(a.nvars());
        for (auto& z : pt) z = a.charac() ? Z(D(rng) % static_cast<long>(a.charac())) : Z(D(rng));
        Poly ea = eval_except(a, k, pt), eb = eval_except(b, k, pt);
        if (ea.is_zero() || eb.is_zero() || ea.degree1() != da || eb.degree1() != db) continue;
        if (ea.min_exps()[0] > 0 && eb.min_exps()[0] > 0) return false;
        return poly_gcd1(ea, eb).degree1() == 0;
    }
    return false;
}

// ---- heuristic gcd over Z (char 0): evaluate at a large integer, recurse,
// rebuild by balanced xi-adic expansion, confirm by division ----

static Z int_content(const Poly& a) {
    Z g = 0;
    for (const auto& [m, c] : a.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
    return g;
}

static Z max_abs(const Poly& a) {
    Z m = 0;
    for (const auto& [e, c] : a.terms()) {
        Z n = abs(c.get_num());
        if (n > m) m = n;
    }
    return m;
}

static Poly subst_int(const Poly& a, int k, const Z& xi) {
    Poly r(a.nvars(), 0);
    for (const auto& [m, c] : a.terms()) {
        Z w;
        mpz_pow_ui(w.get_mpz_t(), xi.get_mpz_t(), static_cast<unsigned long>(m[k]));
        Mono mm = m;
        mm[k] = 0;
        r = r + Poly::monomial(a.nvars(), 0, mm, c * Q(w));
    }
    return r;
}

static bool divides_poly(const Poly& d, const Poly& a) {
    auto q = a.divide_exact(d);
    if (!q) return false;
    if (q->is_zero()) return true;
    for (int e : q->min_exps())
        if (e < 0) return false;
    return true;
}

// integer-coefficient inputs with nonnegative exponents; full gcd over Z or nullopt
static std::optional<Poly> heu_gcd(const Poly& a0, const Poly& b0, int depth) {
    const int nv = a0.nvars();
    if (a0.is_zero() || b0.is_zero()) return std::nullopt;
    Z ca = int_content(a0), cb = int_content(b0), cg;
    mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    Mono ma = a0.min_exps(), mb = b0.min_exps(), mg(nv);
    for (int i = 0; i < nv; ++i) mg[i] = std::min(ma[i], mb[i]);
    for (auto& e : ma) e = -e;
    for (auto& e : mb) e = -e;
    Poly a = a0.shifted(ma).scaled(Q(1) / Q(ca)), b = b0.shifted(mb).scaled(Q(1) / Q(cb));
    Poly outer = Poly::monomial(nv, 0, mg, Q(cg));
    int k = -1;
    for (int i = 0; i < nv && k < 0; ++i)
        if (deg_in(a, i) > 0 || deg_in(b, i) > 0) k = i;
    if (k < 0) return outer;
    if (depth > 8) return std::nullopt;
    Z xi = 2 * std::min(max_abs(a), max_abs(b)) + 29;
    for (int attempt = 0; attempt < 6; ++attempt) {
        Poly A = subst_int(a, k, xi), B = subst_int(b, k, xi);
        if (auto G = heu_gcd(A, B, depth + 1)) {
            // balanced xi-adic digits of each coefficient become x_k powers
            Poly g(nv, 0);
            std::map<Mono, Z> rest;
            for (const auto& [m, c] : G->terms()) rest[m] = c.get_num();
            Z half = xi / 2;
            for (int e = 0; !rest.empty(); ++e) {
                for (auto it = rest.begin(); it != rest.end();) {
                    Z d = it->second % xi;
                    if (d < 0) d += xi;
                    if (d > half) d -= xi;
                    if (d != 0) {
                        Mono mm = it->first;
                        mm[k] = e;
                        g = g + Poly::monomial(nv, 0, mm, Q(d));
                    }
                    it->second = (it->second - d) / xi;
                    it = it->second == 0 ? rest.erase(it) : std::next(it);
                }
            }
            if (!g.is_zero()) {
                Mono mgg = g.min_exps();
                for (auto& e : mgg) e = -e;
                g = g.shifted(mgg);
                g = g.scaled(Q(1) / Q(int_content(g)));
                if (divides_poly(g, a) && divides_poly(g, b)) return g * outer;
            }
        }
        xi = xi * 73794 / 27011;
    }
    return std::nullopt;
}

// nonnegative exponents, no common monomial factor handled by the caller
static Poly gcd_rec(const Poly& a0, const Poly& b0) {
    const int nv = a0.nvars();
    const unsigned long p = a0.charac();
    if (a0.is_zero()) return unit_normal(b0);
    if (b0.is_zero()) return unit_normal(a0);
    if (a0.is_constant() || b0.is_constant()) return Poly::constant(nv, p, 1);
    Mono ma = a0.min_exps(), mb = b0.min_exps(), mg(nv);
    for (int i = 0; i < nv; ++i) mg[i] = std::min(ma[i], mb[i]);
    for (auto& e : ma) e = -e;
    for (auto& e : mb) e = -e;
    Poly a = a0.shifted(ma), b = b0.shifted(mb);
    int k = -1;
    for (int i = 0; i < nv && k < 0; ++i)
        if (deg_in(a, i) > 0 || deg_in(b, i) > 0) k = i;
    Poly mono = Poly::monomial(nv, p, mg, 1);
    if (k < 0) return mono;
    if (p == 0)
        if (auto h = heu_gcd(int_primitive(a), int_primitive(b), 0)) return unit_normal(*h * mono);
    bool uni = true;
    for (int i = k + 1; i < nv && uni; ++i) uni = deg_in(a, i) <= 0 && deg_in(b, i) <= 0;
    if (uni) {
        std::vector<Z> pt(nv, Z(0));
        Poly g1 = poly_gcd1(eval_except(a, k, pt), eval_except(b, k, pt));
        Poly g(nv, p);
        for (const auto& [m, c] : g1.terms()) {
            Mono mm(nv, 0);
            mm[k] = m[0];
            g = g + Poly::monomial(nv, p, mm, c);
        }
        return g * mono;
    }
    if (deg_in(a, k) <= 0 || deg_in(b, k) <= 0) {
        // one side is free of x_k: gcd divides every x_k-coefficient of the other
        const Poly& free = deg_in(a, k) <= 0 ? a : b;
        const Poly& other = deg_in(a, k) <= 0 ? b : a;
        return unit_normal(gcd_rec(free, content_in(other, k)) * mono);
    }
    Poly g = gcd_rec(content_in(a, k), content_in(b, k));
    Poly r0 = prim_in(a, k), r1 = prim_in(b, k);
    if (coprime_at_random_point(r0, r1, k)) return unit_normal(g * mono);
    if (deg_in(r0, k) < deg_in(r1, k)) std::swap(r0, r1);
    while (deg_in(r1, k) > 0) {
        Poly r = r0;
        int db = deg_in(r1, k);
        Poly lb = coeff_in(r1, k, db);
        while (!r.is_zero() && deg_in(r, k) >= db) {
            int dr = deg_in(r, k);
            Mono sh(nv, 0);
            sh[k] = dr - db;
            r = int_primitive(r * lb - r1.shifted(sh) * coeff_in(r, k, dr));
        }
        if (r.is_zero()) return unit_normal(g * r1 * mono);
        r0 = r1;
        r1 = prim_in(r, k);
    }
    return unit_normal(g * mono);
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.nvars() == 1 && !a.is_zero() && !b.is_zero()) {
        Mono ma = a.min_exps(), mb = b.min_exps();
        Poly g = poly_gcd1(a, b);
        return g.shifted(Mono{std::min(ma[0], mb[0])});
    }
    return gcd_rec(a, b);
}

// ---- rational functions ----

RatFun::RatFun(const Poly& num) : num_(num), den_(Poly::constant(num.nvars(), num.charac(), 1)) {}

RatFun::RatFun(const Poly& num, const Poly& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    normalize();
}

void RatFun::normalize() {
    int nv = num_.nvars();
    unsigned long p = num_.charac();
    if (num_.is_zero()) {
        den_ = Poly::constant(nv, p, 1);
        return;
    }
    auto fix_den = [&]() {
        Mono m = den_.min_exps();
        for (auto& e : m) e = -e;
        den_ = den_.shifted(m);
        num_ = num_.shifted(m);
        Q lc = den_.lead_term().second;
        Q li = p ? inv_mod(lc, p) : Q(1 / lc);
        den_ = den_.scaled(li);
        num_ = num_.scaled(li);
    };
    fix_den();
    if (den_.is_constant()) return;
    if (auto q = num_.divide_exact(den_)) {
        num_ = *q;
        den_ = Poly::constant(nv, p, 1);
        return;
    }
    Poly g = poly_gcd(num_, den_);
    if (!g.is_constant()) {
        num_ = *num_.divide_exact(g);
        den_ = *den_.divide_exact(g);
        fix_den();
    }
}

Q RatFun::constant_value() const {
    if (!is_constant()) throw std::logic_error("not a constant");
    Q n = num_.constant_value(), d = den_.constant_value();
    return charac() ? num_.reduce(n * inv_mod(d, charac())) : Q(n / d);
}

RatFun RatFun::operator+(const RatFun& o) const {
    if (den_ == o.den_) return RatFun(num_ + o.num_, den_);
    return RatFun(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator-(const RatFun& o) const {
    if (den_ == o.den_) return RatFun(num_ - o.num_, den_);
    return RatFun(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator-() const {
    RatFun r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFun RatFun::operator*(const RatFun& o) const { return RatFun(num_ * o.num_, den_ * o.den_); }

RatFun RatFun::operator/(const RatFun& o) const {
    if (o.is_zero()) throw std::domain_error("division by zero");
    return RatFun(num_ * o.den_, den_ * o.num_);
}

RatFun RatFun::inv() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    return RatFun(den_, num_);
}

bool RatFun::operator==(const RatFun& o) const {
    if (den_ == o.den_) return num_ == o.num_;
    return num_ * o.den_ == o.num_ * den_;
}

std::string RatFun::str(const std::vector<std::string>& names) const {
    if (den_.is_constant() && den_.constant_value() == 1) return num_.str(names);
    return "(" + num_.str(names) + ")/(" + den_.str(names) + ")";
}

}  // namespace gk

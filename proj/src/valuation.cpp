#include "gk/valuation.hpp"

#include <sstream>
#include <stdexcept>

namespace gk {

Elem Valuation::lead(const Elem& a) const {
    if (a.is_zero()) throw std::domain_error("lead of zero");
    return residue(a / section(val(a)));
}

static long ord_p(const Z& z, unsigned long p) {
    if (z == 0) throw std::domain_error("ord of zero");
    Z t = z;
    long k = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
        ++k;
    }
    return k;
}

static long ord_p(const Q& q, unsigned long p) { return ord_p(q.get_num(), p) - ord_p(q.get_den(), p); }

// rational coordinates of g in the span of independent gens (Gaussian elimination)
static std::optional<std::vector<Q>> span_coords(const std::vector<Value>& gens, const Value& g) {
    std::size_t r = g.rank(), m = gens.size();
    std::vector<std::vector<Q>> M(r, std::vector<Q>(m + 1));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < m; ++j) M[i][j] = gens[j][i];
        M[i][m] = g[i];
    }
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    for (std::size_t c = 0; c < m && row < r; ++c) {
        std::size_t k = row;
        while (k < r && M[k][c] == 0) ++k;
        if (k == r) continue;
        std::swap(M[row], M[k]);
        Q iv = 1 / M[row][c];
        for (auto& x : M[row]) x *= iv;
        for (std::size_t i = 0; i < r; ++i)
            if (i != row && M[i][c] != 0) {
                Q f = M[i][c];
                for (std::size_t j = 0; j <= m; ++j) M[i][j] -= f * M[row][j];
            }
        piv.push_back(c);
        ++row;
    }
    for (std::size_t i = row; i < r; ++i)
        if (M[i][m] != 0) return std::nullopt;
    std::vector<Q> x(m, Q(0));
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = M[i][m];
    return x;
}

MonomialValuation::MonomialValuation(FieldPtr F, std::size_t rank, std::optional<std::pair<unsigned long, Value>> coef,
                                     std::vector<Value> weights)
    : cp_(std::move(coef)), w_(std::move(weights)) {
    F_ = std::move(F);
    rank_ = rank;
    if (F_->quadratic()) throw std::invalid_argument("monomial valuation on a quadratic field");
    if (int(w_.size()) != F_->nvars()) throw std::invalid_argument("one weight per variable expected");
    if (cp_ && F_->p != 0) throw std::invalid_argument("p-adic coefficients need characteristic 0");
    if (cp_) {
        if (cp_->second.rank() != rank || cp_->second.is_zero()) throw std::invalid_argument("bad prime value");
        gens_.push_back(cp_->second);
        gen_kind_.push_back(-1);
    }
    for (int i = 0; i < F_->nvars(); ++i) {
        if (w_[i].rank() != rank || w_[i].is_inf()) throw std::invalid_argument("bad variable weight");
        if (w_[i].is_zero())
            zvars_.push_back(i);
        else {
            gens_.push_back(w_[i]);
            gen_kind_.push_back(i);
        }
    }
    group_ = ValueLattice(rank, gens_);
    if (group_.lattice_rank() != gens_.size())
        throw UnsupportedError("monomial weights must be Z-independent");
    std::vector<std::string> rv;
    for (int i : zvars_) rv.push_back(F_->vars[i]);
    R_ = make_field(cp_ ? cp_->first : F_->p, rv);
}

Value MonomialValuation::term_value(const Mono& m, const Q& c) const {
    Value v = Value::zero(rank_);
    if (cp_) v += cp_->second.scaled(ord_p(c, cp_->first));
    for (int i = 0; i < F_->nvars(); ++i)
        if (m[i]) v += w_[i].scaled(m[i]);
    return v;
}

Value MonomialValuation::val_poly(const Poly& p) const {
    Value best = Value::infinity(rank_);
    for (const auto& [m, c] : p.terms()) best = vmin(best, term_value(m, c));
    return best;
}

Value MonomialValuation::val(const Elem& a) const {
    if (a.is_zero()) return Value::infinity(rank_);
    return val_poly(a.a().num()) - val_poly(a.a().den());
}

Elem MonomialValuation::section(const Value& g) const {
    auto x = span_coords(gens_, g);
    if (!x) throw std::invalid_argument("value " + g.str() + " not in the value group");
    Elem t = Elem::one(F_);
    for (std::size_t j = 0; j < gens_.size(); ++j) {
        const Q& q = (*x)[j];
        if (q.get_den() != 1) throw std::invalid_argument("value " + g.str() + " not in the value group");
        long e = q.get_num().get_si();
        if (e == 0) continue;
        if (gen_kind_[j] < 0)
            t *= Elem::of(F_, Q(cp_->first)).pow(e);
        else
            t *= Elem::var(F_, gen_kind_[j]).pow(e);
    }
    return t;
}

// terms of p attaining value v, with the prime power and weighted part divided out
Poly MonomialValuation::lead_part(const Poly& p, const Value& v, int& pk) const {
    int nz = int(zvars_.size());
    Poly out(nz, R_->p);
    Poly acc(nz, R_->p);
    pk = 0;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        if (!(term_value(m, c) == v)) continue;
        Q cc = c;
        if (cp_) {
            long k = ord_p(c, cp_->first);
            if (first) pk = int(k);
            Z pw;
            mpz_ui_pow_ui(pw.get_mpz_t(), cp_->first, (unsigned long)(k < 0 ? -k : k));
            cc = k >= 0 ? Q(c / Q(pw)) : Q(c * Q(pw));
        }
        first = false;
        Mono zm(nz);
        for (int j = 0; j < nz; ++j) zm[j] = m[zvars_[j]];
        acc = acc + Poly::monomial(nz, R_->p, zm, cc);
    }
    return acc;
}

Elem MonomialValuation::residue(const Elem& a) const {
    if (a.is_zero()) return Elem::zero(R_);
    Value v = val(a);
    if (v < Value::zero(rank_)) throw std::domain_error("residue of an element of negative value");
    if (v > Value::zero(rank_)) return Elem::zero(R_);
    Value vn = val_poly(a.a().num());
    int k1, k2;
    Poly n = lead_part(a.a().num(), vn, k1);
    Poly d = lead_part(a.a().den(), vn, k2);
    return Elem(R_, RatFun(n, d));
}

Elem MonomialValuation::lift(const Elem& r) const {
    if (!same_field(r.field(), R_)) throw std::invalid_argument("lift: not a residue element");
    int nv = F_->nvars();
    auto conv = [&](const Poly& p) {
        Poly out(nv, F_->p);
        for (const auto& [m, c] : p.terms()) {
            Mono fm(nv, 0);
            for (std::size_t j = 0; j < zvars_.size(); ++j) fm[zvars_[j]] = m[j];
            out = out + Poly::monomial(nv, F_->p, fm, c);
        }
        return out;
    };
    return Elem(F_, RatFun(conv(r.a().num()), conv(r.a().den())));
}

std::string MonomialValuation::describe() const {
    std::ostringstream os;
    os << "monomial[" << F_->describe();
    if (cp_) os << "; v(" << cp_->first << ")=" << cp_->second.str();
    for (int i = 0; i < F_->nvars(); ++i) os << "; v(" << F_->vars[i] << ")=" << w_[i].str();
    os << "]";
    return os.str();
}

ValPtr padic(unsigned long p) {
    return std::make_shared<MonomialValuation>(make_field(0), 1, std::make_pair(p, Value{Q(1)}),
                                               std::vector<Value>{});
}

ValPtr trivial_valuation(const FieldPtr& F, std::size_t rank) {
    return std::make_shared<MonomialValuation>(F, rank, std::nullopt,
                                               std::vector<Value>(F->nvars(), Value::zero(rank)));
}

ValPtr monomial(const FieldPtr& F, std::vector<Value> weights, std::optional<std::pair<unsigned long, Value>> coef) {
    std::size_t r = weights.empty() ? (coef ? coef->second.rank() : 1) : weights[0].rank();
    return std::make_shared<MonomialValuation>(F, r, std::move(coef), std::move(weights));
}

// ---- square tests ----

static std::optional<bool> rational_square(const Q& q) {
    if (q < 0) return false;
    return mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t());
}

static bool fp_square(const Q& q, unsigned long p) {
    Z a = q.get_num();
    if (a % Z(p) == 0) return true;
    if (p == 2) return true;
    Z r;
    Z e = Z((p - 1) / 2);
    Z m(p);
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r == 1;
}

static std::optional<bool> const_square(const Q& c, unsigned long p) {
    return p ? std::optional<bool>(fp_square(c, p)) : rational_square(c);
}

// univariate square test by descending coefficient matching
static std::optional<bool> poly_square1(const Poly& a0) {
    unsigned long p = a0.charac();
    if (p == 2) return std::nullopt;
    Mono mn = a0.min_exps();
    if (mn[0] % 2) return false;
    Poly a = a0.shifted(Mono{-mn[0]});
    int n = a.degree1();
    if (n % 2) return false;
    Q lc = a.coeff1(n);
    auto sq = const_square(lc, p);
    if (!sq || !*sq) return sq;
    if (p != 0 && n > 0) return std::nullopt;  // would need sqrt in F_p; not needed here
    if (n == 0) return true;
    // char 0: s = sum s_k x^k, s_top = sqrt(lc)
    int m = n / 2;
    std::vector<Q> s(m + 1);
    Z rn, rd;
    mpz_sqrt(rn.get_mpz_t(), lc.get_num_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), lc.get_den_mpz_t());
    s[m] = Q(rn, rd);
    s[m].canonicalize();
    for (int k = m - 1; k >= 0; --k) {
        Q acc = a.coeff1(m + k);
        for (int i = k + 1; i <= m; ++i) {
            int j = m + k - i;
            if (j > k && j <= m) acc -= s[i] * s[j];
        }
        s[k] = acc / (2 * s[m]);
    }
    Poly sp(1, 0);
    for (int k = 0; k <= m; ++k) sp = sp + Poly::monomial(1, 0, Mono{k}, s[k]);
    return sp * sp == a;
}

std::optional<bool> is_square(const Elem& a) {
    const FieldPtr& F = a.field();
    if (F->quadratic()) return std::nullopt;
    if (a.is_zero()) return true;
    if (a.is_rational()) return const_square(a.rational(), F->p);
    Poly nd = a.a().num() * a.a().den();
    if (F->nvars() == 1) return poly_square1(nd);
    // a single variable in use: test in that variable alone
    int used = -1;
    for (const auto& [m, c] : nd.terms())
        for (int i = 0; i < F->nvars(); ++i)
            if (m[i] != 0) {
                if (used >= 0 && used != i) return std::nullopt;
                used = i;
            }
    if (used < 0) return const_square(nd.constant_value(), F->p);
    Poly one(1, F->p);
    for (const auto& [m, c] : nd.terms()) one = one + Poly::monomial(1, F->p, Mono{m[used]}, c);
    return poly_square1(one);
}

// ---- quadratic extensions ----

QuadraticValuation::QuadraticValuation(FieldPtr F, ValPtr base) : base_(std::move(base)) {
    F_ = std::move(F);
    rank_ = base_->rank();
    if (!F_->quadratic()) throw std::invalid_argument("quadratic valuation on a non-quadratic field");
    if (!same_field(base_of(F_), base_->field())) throw std::invalid_argument("base valuation on a different field");
    if (base_->residue_char() == 2) throw UnsupportedError("unsupported: not tame (residue characteristic 2)");
    Elem d = to_base(*F_->theta_sq);
    auto rep = check_unique_extension(*base_, d);
    if (!rep.unique) throw UnsupportedError("valuation does not extend uniquely: " + rep.certificate);
    Value vd = base_->val(d);
    half_ = vd.scaled(Q(1, 2));
    if (rep.kind == "ramified") {
        ramified_ = true;
        if (!(base_->section(vd) == d))
            throw UnsupportedError("ramified generator must square to the section element t_v(d)");
        group_ = base_->group().join({half_});
        R_ = base_->residue_field();
    } else {
        if (!vd.is_zero()) throw UnsupportedError("unramified generator must be a unit");
        group_ = base_->group();
        R_ = make_quadratic(base_->residue_field(), base_->residue(d).a(), F_->theta_name + "_");
    }
}

Value QuadraticValuation::val(const Elem& a) const {
    if (a.is_zero()) return inf_value();
    Value va = a.a().is_zero() ? inf_value() : base_->val(to_base(a.a()));
    Value vb = a.b().is_zero() ? inf_value() : base_->val(to_base(a.b()));
    if (ramified_) vb = vb + half_;
    return vmin(va, vb);
}

Elem QuadraticValuation::section(const Value& g) const {
    if (!ramified_ || base_->group().contains(g)) return from_base(base_->section(g));
    Value g0 = g - half_;
    if (!base_->group().contains(g0)) throw std::invalid_argument("value " + g.str() + " not in the value group");
    return from_base(base_->section(g0)) * Elem::theta(F_);
}

Elem QuadraticValuation::residue(const Elem& a) const {
    Value v = val(a);
    if (v < zero_value()) throw std::domain_error("residue of an element of negative value");
    if (ramified_) {
        if (a.a().is_zero()) return Elem::zero(R_);
        return Elem(R_, base_->residue(to_base(a.a())).a());
    }
    Elem ra = a.a().is_zero() ? Elem::zero(base_->residue_field()) : base_->residue(to_base(a.a()));
    Elem rb = a.b().is_zero() ? Elem::zero(base_->residue_field()) : base_->residue(to_base(a.b()));
    return Elem(R_, ra.a(), rb.a());
}

Elem QuadraticValuation::lift(const Elem& r) const {
    if (ramified_) return from_base(base_->lift(Elem(base_->residue_field(), r.a())));
    Elem la = base_->lift(Elem(base_->residue_field(), r.a()));
    Elem lb = base_->lift(Elem(base_->residue_field(), r.b()));
    return Elem(F_, la.a(), lb.a());
}

std::string QuadraticValuation::describe() const {
    return std::string(ramified_ ? "ramified" : "unramified") + " extension of " + base_->describe() + " by " +
           F_->theta_name + "^2=" + F_->theta_sq->str(F_->vars);
}

ExtensionReport check_unique_extension(const Valuation& v, const Elem& d) {
    ExtensionReport rep;
    if (v.residue_char() == 2) throw UnsupportedError("unsupported: not tame (residue characteristic 2)");
    if (d.is_zero()) throw std::invalid_argument("x^2 is not irreducible");
    Value vd = v.val(d);
    Value half = vd.scaled(Q(1, 2));
    if (!v.group().contains(half)) {
        rep.unique = true;
        rep.kind = "ramified";
        rep.certificate = "v(d)=" + vd.str() + " not in 2*Gamma";
        return rep;
    }
    Elem t = v.section(half);
    Elem u = d / (t * t);
    Elem ub = v.residue(u);
    auto sq = is_square(ub);
    if (!sq) throw UnsupportedError("cannot decide squares in the residue field " + ub.field()->describe());
    if (*sq) {
        rep.unique = false;
        rep.kind = "split";
        rep.certificate = "residue " + ub.str() + " is a square";
    } else {
        rep.unique = true;
        rep.kind = "unramified";
        rep.certificate = "residue " + ub.str() + " is a nonsquare";
    }
    return rep;
}

ExtensionReport check_unique_extension(const Valuation& v, const Elem& b, const Elem& c) {
    if (v.field()->p == 2) throw UnsupportedError("unsupported: characteristic 2");
    Elem two = Elem::of(v.field(), 2);
    Elem half_b = b / two;
    return check_unique_extension(v, half_b * half_b - c);
}

}  // namespace gk

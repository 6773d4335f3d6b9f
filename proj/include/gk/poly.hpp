#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gk/ordvalues.hpp"

namespace gk {

using Mono = std::vector<int>;

// Laurent polynomial over Q or F_p (coefficients kept reduced in [0,p)).
class Poly {
public:
    Poly() = default;
    Poly(int nvars, unsigned long p) : nv_(nvars), p_(p) {}
    static Poly constant(int nvars, unsigned long p, const Q& c);
    static Poly monomial(int nvars, unsigned long p, const Mono& m, const Q& c = 1);
    static Poly variable(int nvars, unsigned long p, int i);

    int nvars() const { return nv_; }
    unsigned long charac() const { return p_; }
    const std::map<Mono, Q>& terms() const { return t_; }

    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    bool is_monomial() const { return t_.size() == 1; }
    Q constant_value() const;  // requires is_constant

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const Q& c) const;
    Poly shifted(const Mono& m) const;  // multiply by x^m
    bool operator==(const Poly& o) const { return t_ == o.t_; }

    Mono min_exps() const;
    Mono max_exps() const;
    // lex-largest term
    const std::pair<const Mono, Q>& lead_term() const { return *t_.rbegin(); }

    // exact quotient in the Laurent ring, if it exists
    std::optional<Poly> divide_exact(const Poly& d) const;

    // univariate helpers (nvars == 1, nonnegative exponents)
    int degree1() const;
    Q coeff1(int e) const;

    Q reduce(const Q& c) const;  // into the coefficient field
    std::string str(const std::vector<std::string>& names) const;

private:
    void add_term(const Mono& m, const Q& c);
    int nv_ = 0;
    unsigned long p_ = 0;
    std::map<Mono, Q> t_;
};

Q inv_mod(const Q& c, unsigned long p);

// Rational function num/den; den normalized (min exponents zero, lead coeff 1).
class RatFun {
public:
    RatFun() = default;
    RatFun(const Poly& num);
    RatFun(const Poly& num, const Poly& den);
    static RatFun constant(int nvars, unsigned long p, const Q& c) { return RatFun(Poly::constant(nvars, p, c)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    int nvars() const { return num_.nvars(); }
    unsigned long charac() const { return num_.charac(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return den_.is_constant() && num_.is_constant(); }
    Q constant_value() const;

    RatFun operator+(const RatFun& o) const;
    RatFun operator-(const RatFun& o) const;
    RatFun operator-() const;
    RatFun operator*(const RatFun& o) const;
    RatFun operator/(const RatFun& o) const;
    RatFun inv() const;
    bool operator==(const RatFun& o) const;

    std::string str(const std::vector<std::string>& names) const;

private:
    void normalize();
    Poly num_, den_;
};

// univariate gcd over the coefficient field, monic
Poly poly_gcd1(const Poly& a, const Poly& b);
// multivariate gcd (recursive primitive PRS), normalized to lead coefficient 1
Poly poly_gcd(const Poly& a, const Poly& b);

}  // namespace gk

#pragma once

#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gk/poly.hpp"

namespace gk {

// Q, F_p, rational function fields over them, and a quadratic extension
// base(s) with s^2 = d on top.
struct FieldSpec {
    unsigned long p = 0;
    std::vector<std::string> vars;
    std::optional<RatFun> theta_sq;
    std::string theta_name = "s";

    int nvars() const { return int(vars.size()); }
    bool quadratic() const { return theta_sq.has_value(); }
    std::string describe() const;
};

using FieldPtr = std::shared_ptr<const FieldSpec>;

FieldPtr make_field(unsigned long p, std::vector<std::string> vars = {});
FieldPtr make_quadratic(const FieldPtr& base, const RatFun& d, std::string name = "s");
// base field with the quadratic part dropped
FieldPtr base_of(const FieldPtr& F);
bool same_field(const FieldPtr& a, const FieldPtr& b);

class Elem {
public:
    Elem() = default;
    Elem(FieldPtr F, RatFun a);
    Elem(FieldPtr F, RatFun a, RatFun b);

    static Elem zero(const FieldPtr& F);
    static Elem one(const FieldPtr& F);
    static Elem of(const FieldPtr& F, const Q& c);
    static Elem var(const FieldPtr& F, int i);
    static Elem theta(const FieldPtr& F);

    const FieldPtr& field() const { return F_; }
    const RatFun& a() const { return a_; }
    const RatFun& b() const { return b_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_one() const;
    bool is_rational() const;  // constant in the prime field (or Q)
    Q rational() const;

    Elem operator+(const Elem& o) const;
    Elem operator-(const Elem& o) const;
    Elem operator-() const;
    Elem operator*(const Elem& o) const;
    Elem operator/(const Elem& o) const;
    Elem& operator+=(const Elem& o) { return *this = *this + o; }
    Elem& operator-=(const Elem& o) { return *this = *this - o; }
    Elem& operator*=(const Elem& o) { return *this = *this * o; }
    Elem inv() const;
    Elem pow(long e) const;
    Elem conj() const;          // a - b s
    RatFun norm() const;        // a^2 - d b^2
    bool operator==(const Elem& o) const;
    bool operator!=(const Elem& o) const { return !(*this == o); }

    std::string str() const;

private:
    FieldPtr F_;
    RatFun a_, b_;
};

inline std::ostream& operator<<(std::ostream& os, const Elem& e) { return os << e.str(); }

// Parses +,-,*,/,^ (integer exponents), parentheses, rationals, names.
Elem parse_elem(const FieldPtr& F, const std::string& text);

}  // namespace gk

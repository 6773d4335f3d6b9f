#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace gk {

using Q = mpq_class;
using Z = mpz_class;

// Element of Q^r under lex order, or infinity.
class Value {
public:
    Value() = default;
    explicit Value(std::vector<Q> coords);
    Value(std::initializer_list<Q> coords);

    static Value zero(std::size_t rank);
    static Value infinity(std::size_t rank);
    static Value unit(std::size_t rank, std::size_t i, const Q& q = 1);

    bool is_inf() const { return inf_; }
    bool is_zero() const;
    std::size_t rank() const { return c_.size(); }
    const std::vector<Q>& coords() const { return c_; }
    const Q& operator[](std::size_t i) const { return c_[i]; }

    Value operator+(const Value& o) const;
    Value operator-(const Value& o) const;  // finite right operand
    Value operator-() const;
    Value scaled(const Q& q) const;
    Value& operator+=(const Value& o) { return *this = *this + o; }

    std::string str() const;

private:
    std::vector<Q> c_;
    bool inf_ = false;
};

// -1, 0, 1. Throws std::invalid_argument on rank mismatch.
int lex_compare(const Value& a, const Value& b);

inline bool operator==(const Value& a, const Value& b) { return lex_compare(a, b) == 0; }
inline bool operator<(const Value& a, const Value& b) { return lex_compare(a, b) < 0; }
inline bool operator>(const Value& a, const Value& b) { return lex_compare(a, b) > 0; }
inline bool operator<=(const Value& a, const Value& b) { return lex_compare(a, b) <= 0; }
inline bool operator>=(const Value& a, const Value& b) { return lex_compare(a, b) >= 0; }

inline std::ostream& operator<<(std::ostream& os, const Value& g) { return os << g.str(); }

Value vmin(const Value& a, const Value& b);

// Tail block {0}^kept x Q^(rank-kept).
struct ConvexSubgroup {
    std::size_t rank = 0;
    std::size_t kept = 0;
    bool contains(const Value& g) const;
};

Value quotient_map(const ConvexSubgroup& delta, const Value& g);
// (λ) -> (λ, 0...0)
Value lift_zero_tail(const ConvexSubgroup& delta, const Value& lam);
// (0..0, δ) padded back into rank r from a tail-only vector
Value pad_front(const Value& tail, std::size_t rank);

// Finitely generated subgroup of Q^r.
class ValueLattice {
public:
    ValueLattice() = default;
    ValueLattice(std::size_t rank, const std::vector<Value>& gens);

    std::size_t ambient_rank() const { return rank_; }
    std::size_t lattice_rank() const { return basis_.size(); }
    std::vector<Value> basis() const;

    bool contains(const Value& g) const;
    // integer coordinates in basis(); nullopt if not a member
    std::optional<std::vector<Z>> coordinates(const Value& g) const;
    // canonical representative of g + L
    Value canonical(const Value& g) const;
    bool same_coset(const Value& a, const Value& b) const;
    bool contains_lattice(const ValueLattice& sub) const;
    // [this : sub], sub must be a finite-index sublattice
    Z index_of(const ValueLattice& sub) const;

    ValueLattice join(const ValueLattice& o) const;
    ValueLattice join(const std::vector<Value>& extra) const;

private:
    std::size_t rank_ = 0;
    Z den_ = 1;                          // common denominator
    std::vector<std::vector<Z>> basis_;  // echelon, integer rows of den_*L
    std::vector<std::size_t> pivots_;
    std::vector<Value> gens_;
};

}  // namespace gk

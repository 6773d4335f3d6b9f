#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gk/linalg.hpp"

namespace gk {

// Finite-dimensional algebra over F by structure constants: table[i][j] = e_i e_j.
class Algebra {
public:
    Algebra(FieldPtr F, std::vector<std::string> names, std::vector<std::vector<Vec>> table);

    const FieldPtr& field() const { return F_; }
    std::size_t dim() const { return n_; }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<std::vector<Vec>>& table() const { return t_; }

    Vec zero() const { return zero_vec(F_, n_); }
    Vec basis(std::size_t i) const { return unit_vec(F_, n_, i); }
    const Vec& one() const { return one_; }
    Vec scalar(const Elem& c) const { return scale(one_, c); }

    Vec mul(const Vec& a, const Vec& b) const;
    Mat left(const Vec& a) const;   // y -> a y
    Mat right(const Vec& a) const;  // y -> y a
    std::optional<Vec> inverse(const Vec& a) const;
    bool is_associative() const;

    std::string str(const Vec& a) const;
    // expression in basis names and field names
    Vec parse(const std::string& text) const;

private:
    FieldPtr F_;
    std::size_t n_;
    std::vector<std::string> names_;
    std::vector<std::vector<Vec>> t_;
    Vec one_;
};

using AlgPtr = std::shared_ptr<const Algebra>;

// the field itself as a 1-dimensional algebra
AlgPtr field_algebra(const FieldPtr& F);

}  // namespace gk

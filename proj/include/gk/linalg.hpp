#pragma once

#include <optional>
#include <vector>

#include "gk/field.hpp"

namespace gk {

using Vec = std::vector<Elem>;
using Mat = std::vector<Vec>;  // row-major

Vec zero_vec(const FieldPtr& F, std::size_t n);
Vec unit_vec(const FieldPtr& F, std::size_t n, std::size_t i);
Mat zero_mat(const FieldPtr& F, std::size_t r, std::size_t c);
Mat identity(const FieldPtr& F, std::size_t n);

bool is_zero(const Vec& v);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator-(const Vec& a);
Vec scale(const Vec& a, const Elem& c);
Elem dot(const Vec& a, const Vec& b);

Mat transpose(const Mat& A);
Mat operator*(const Mat& A, const Mat& B);
Mat operator+(const Mat& A, const Mat& B);
Mat operator-(const Mat& A, const Mat& B);
Vec operator*(const Mat& A, const Vec& x);
Mat scale(const Mat& A, const Elem& c);
bool equal(const Mat& A, const Mat& B);
// columns given as vectors
Mat from_columns(const std::vector<Vec>& cols);
Vec column(const Mat& A, std::size_t j);

struct Echelon {
    Mat R;                           // reduced row echelon form
    std::vector<std::size_t> pivots; // pivot column per nonzero row
};

Echelon rref(Mat A);
std::size_t rank(const Mat& A);
std::vector<Vec> kernel(const Mat& A);  // basis of {x : A x = 0}
std::optional<Vec> solve(const Mat& A, const Vec& b);
std::optional<Mat> inverse(const Mat& A);
Elem det(Mat A);

// rank of a list of vectors; indices of a maximal independent prefix-greedy subset
std::vector<std::size_t> independent_subset(const std::vector<Vec>& vs);
// basis of the span, in rref form
std::vector<Vec> span_basis(const std::vector<Vec>& vs);
// intersection of two subspaces given by spanning sets
std::vector<Vec> intersect(const std::vector<Vec>& U, const std::vector<Vec>& W, const FieldPtr& F, std::size_t n);

std::string vec_str(const Vec& v);

}  // namespace gk

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gk/algebra.hpp"
#include "gk/hermitian.hpp"
#include "gk/valnorms.hpp"

namespace gk {

// ---- presets ----

// M_n(D); basis E_ij d_m at index (i n + j) dim D + m
AlgPtr matrix_algebra(const DivisionRing& D, std::size_t n);
AlgPtr matrix_algebra(const FieldPtr& F, std::size_t n);
// basis i^r j^s at index r m + s; i^m = a, j^m = b, j i = omega i j
AlgPtr symbol_algebra(const Elem& a, const Elem& b, std::size_t m, const Elem& omega);
// basis 1, i, j, k = ij
AlgPtr quaternion_algebra(const Elem& a, const Elem& b);
// basis a_i (x) b_j at index i dim B + j
AlgPtr tensor_algebra(const AlgPtr& A, const AlgPtr& B);
// same algebra in the basis given by the columns of P
AlgPtr change_basis(const AlgPtr& A, const Mat& P);

DMat to_dmat(const Vec& x, std::size_t n, std::size_t d);
Vec from_dmat(const DMat& M);

Elem quaternion_norm(const Elem& a, const Elem& b, const Vec& z);

// ---- involutions ----

struct Involution {
    Mat S;  // sigma(x) = S x
    Vec apply(const Vec& x) const { return S * x; }
};

Involution transpose_involution(const FieldPtr& F, std::size_t n);
Involution conjugation_involution(const AlgPtr& quaternion);
// ad_h on M_n(D) = End_D(D^n): f -> H^-1 f^* H
Involution adjoint_involution(const HermitianForm& h);
Involution tensor_involution(const AlgPtr& A, const Involution& s, const AlgPtr& B, const Involution& t);

// empty when sigma is an involution, else the failing law
std::string involution_defect(const Algebra& A, const Involution& s);

enum class InvolutionKind { First, Second };
enum class InvolutionType { Orthogonal, Symplectic, Unitary };
std::string kind_str(InvolutionKind k);
std::string type_str(InvolutionType t);

struct Classification {
    InvolutionKind kind;
    InvolutionType type;
    std::size_t center_dim = 0, degree = 0, sym_dim = 0, symd_dim = 0;
    bool one_in_symd = false;
};

std::vector<Vec> center(const Algebra& A);
std::vector<Vec> sym_space(const Involution& s, const FieldPtr& F);
std::vector<Vec> symd_space(const Involution& s, const FieldPtr& F);
// throws std::invalid_argument when sigma is not an involution
Classification classify_involution(const Algebra& A, const Involution& s);

bool is_hermitian(const HermitianForm& h);
bool is_nondegenerate(const HermitianForm& h);

// ---- value functions on algebras ----

// End(alpha) on M_n(D) as a split norm: base P E_ij d_m P^-1, values gamma_i + omega_m - gamma_j
NormPtr end_norm(const DNorm& alpha);
// direct evaluation from the matrix of f in alpha's base
Value end_value(const DNorm& alpha, const Vec& f);

// quaternion division algebra (a, b) over (F, v) with a certified extension of v
struct QuaternionDivision {
    DivisionRing ring;
    std::string certificate;  // "totally ramified", "unramified", "semiramified"
};

// throws UnsupportedError when no certificate is found
QuaternionDivision quaternion_division(const ValPtr& v, const Elem& a, const Elem& b);
// (1/2) v(Nrd z)
Value reduced_norm_value(const Valuation& v, const Elem& a, const Elem& b, const Vec& z);

// symmetric idempotent e != 0, 1 in M_n(D) for ad_h; none when n = 1
std::optional<Vec> symmetric_idempotent_split(const HermitianForm& h);

}  // namespace gk

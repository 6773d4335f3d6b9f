#include "gk/linalg.hpp"

#include <stdexcept>

namespace gk {

Vec zero_vec(const FieldPtr& F, std::size_t n) { return Vec(n, Elem::zero(F)); }

Vec unit_vec(const FieldPtr& F, std::size_t n, std::size_t i) {
    Vec v = zero_vec(F, n);
    v.at(i) = Elem::one(F);
    return v;
}

Mat zero_mat(const FieldPtr& F, std::size_t r, std::size_t c) { return Mat(r, zero_vec(F, c)); }

Mat identity(const FieldPtr& F, std::size_t n) {
    Mat I = zero_mat(F, n, n);
    for (std::size_t i = 0; i < n; ++i) I[i][i] = Elem::one(F);
    return I;
}

bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

Vec operator+(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec operator-(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec operator-(const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

Vec scale(const Vec& a, const Elem& c) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i].is_zero() ? a[i] : a[i] * c;
    return r;
}

Elem dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size() || a.empty()) throw std::invalid_argument("bad dot product");
    Elem s = Elem::zero(a[0].field());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

Mat transpose(const Mat& A) {
    if (A.empty()) return A;
    Mat T(A[0].size(), Vec(A.size()));
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A[0].size(); ++j) T[j][i] = A[i][j];
    return T;
}

Mat operator*(const Mat& A, const Mat& B) {
    if (A.empty() || B.empty() || A[0].size() != B.size()) throw std::invalid_argument("matrix size mismatch");
    const FieldPtr& F = A[0][0].field();
    Mat C = zero_mat(F, A.size(), B[0].size());
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t k = 0; k < B.size(); ++k) {
            if (A[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < B[0].size(); ++j)
                if (!B[k][j].is_zero()) C[i][j] += A[i][k] * B[k][j];
        }
    return C;
}

Mat operator+(const Mat& A, const Mat& B) {
    Mat C = A;
    for (std::size_t i = 0; i < A.size(); ++i) C[i] = A[i] + B.at(i);
    return C;
}

Mat operator-(const Mat& A, const Mat& B) {
    Mat C = A;
    for (std::size_t i = 0; i < A.size(); ++i) C[i] = A[i] - B.at(i);
    return C;
}

Vec operator*(const Mat& A, const Vec& x) {
    Vec r(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) r[i] = dot(A[i], x);
    return r;
}

Mat scale(const Mat& A, const Elem& c) {
    Mat C = A;
    for (auto& row : C) row = scale(row, c);
    return C;
}

bool equal(const Mat& A, const Mat& B) {
    if (A.size() != B.size()) return false;
    for (std::size_t i = 0; i < A.size(); ++i) {
        if (A[i].size() != B[i].size()) return false;
        for (std::size_t j = 0; j < A[i].size(); ++j)
            if (A[i][j] != B[i][j]) return false;
    }
    return true;
}

Mat from_columns(const std::vector<Vec>& cols) {
    if (cols.empty()) return {};
    Mat A(cols[0].size(), Vec(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < cols[0].size(); ++i) A[i][j] = cols[j].at(i);
    return A;
}

Vec column(const Mat& A, std::size_t j) {
    Vec v(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) v[i] = A[i][j];
    return v;
}

// cost heuristic for pivot choice: constants first
static int weight(const Elem& e) {
    if (e.is_rational()) return 0;
    return 1 + int(e.a().num().terms().size() + e.a().den().terms().size() + e.b().num().terms().size());
}

Echelon rref(Mat A) {
    Echelon E;
    if (A.empty()) return E;
    std::size_t rows = A.size(), cols = A[0].size(), r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t best = rows;
        int bw = 0;
        for (std::size_t i = r; i < rows; ++i) {
            if (A[i][c].is_zero()) continue;
            int w = weight(A[i][c]);
            if (best == rows || w < bw) {
                best = i;
                bw = w;
            }
            if (w == 0) break;
        }
        if (best == rows) continue;
        std::swap(A[r], A[best]);
        Elem iv = A[r][c].inv();
        for (std::size_t j = c; j < cols; ++j)
            if (!A[r][j].is_zero()) A[r][j] *= iv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c].is_zero()) continue;
            Elem f = A[i][c];
            for (std::size_t j = c; j < cols; ++j)
                if (!A[r][j].is_zero()) A[i][j] -= f * A[r][j];
        }
        E.pivots.push_back(c);
        ++r;
    }
    A.resize(r);
    E.R = std::move(A);
    return E;
}

std::size_t rank(const Mat& A) { return rref(A).pivots.size(); }

std::vector<Vec> kernel(const Mat& A) {
    if (A.empty()) return {};
    const FieldPtr& F = A[0][0].field();
    std::size_t n = A[0].size();
    Echelon E = rref(A);
    std::vector<bool> is_piv(n, false);
    for (auto p : E.pivots) is_piv[p] = true;
    std::vector<Vec> out;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_piv[f]) continue;
        Vec x = zero_vec(F, n);
        x[f] = Elem::one(F);
        for (std::size_t k = 0; k < E.pivots.size(); ++k) x[E.pivots[k]] = -E.R[k][f];
        out.push_back(x);
    }
    return out;
}

std::optional<Vec> solve(const Mat& A, const Vec& b) {
    if (A.empty()) return std::nullopt;
    const FieldPtr& F = A[0][0].field();
    std::size_t n = A[0].size();
    Mat M = A;
    for (std::size_t i = 0; i < M.size(); ++i) M[i].push_back(b.at(i));
    Echelon E = rref(M);
    Vec x = zero_vec(F, n);
    for (std::size_t k = 0; k < E.pivots.size(); ++k) {
        if (E.pivots[k] == n) return std::nullopt;
        x[E.pivots[k]] = E.R[k][n];
    }
    return x;
}

std::optional<Mat> inverse(const Mat& A) {
    std::size_t n = A.size();
    if (n == 0 || A[0].size() != n) throw std::invalid_argument("inverse of a non-square matrix");
    const FieldPtr& F = A[0][0].field();
    Mat M = A;
    for (std::size_t i = 0; i < n; ++i) {
        Vec e = unit_vec(F, n, i);
        M[i].insert(M[i].end(), e.begin(), e.end());
    }
    Echelon E = rref(M);
    if (E.pivots.size() < n || E.pivots[n - 1] != n - 1) return std::nullopt;
    Mat inv(n);
    for (std::size_t i = 0; i < n; ++i) inv[i] = Vec(E.R[i].begin() + n, E.R[i].end());
    return inv;
}

Elem det(Mat A) {
    std::size_t n = A.size();
    const FieldPtr& F = A[0][0].field();
    Elem d = Elem::one(F);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && A[p][c].is_zero()) ++p;
        if (p == n) return Elem::zero(F);
        if (p != c) {
            std::swap(A[p], A[c]);
            d = -d;
        }
        d *= A[c][c];
        Elem iv = A[c][c].inv();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (A[i][c].is_zero()) continue;
            Elem f = A[i][c] * iv;
            for (std::size_t j = c; j < n; ++j) A[i][j] -= f * A[c][j];
        }
    }
    return d;
}

std::vector<std::size_t> independent_subset(const std::vector<Vec>& vs) {
    std::vector<std::size_t> idx;
    std::vector<Vec> basis;  // kept in echelon form against pivots
    std::vector<std::size_t> piv;
    for (std::size_t k = 0; k < vs.size(); ++k) {
        Vec v = vs[k];
        for (std::size_t b = 0; b < basis.size(); ++b)
            if (!v[piv[b]].is_zero()) v = v - scale(basis[b], v[piv[b]]);
        std::size_t p = 0;
        while (p < v.size() && v[p].is_zero()) ++p;
        if (p == v.size()) continue;
        v = scale(v, v[p].inv());
        for (auto& bb : basis)
            if (!bb[p].is_zero()) bb = bb - scale(v, bb[p]);
        basis.push_back(v);
        piv.push_back(p);
        idx.push_back(k);
    }
    return idx;
}

std::vector<Vec> span_basis(const std::vector<Vec>& vs) {
    if (vs.empty()) return {};
    return rref(vs).R;
}

std::vector<Vec> intersect(const std::vector<Vec>& U, const std::vector<Vec>& W, const FieldPtr& F, std::size_t n) {
    if (U.empty() || W.empty()) return {};
    // solve sum a_i u_i - sum b_j w_j = 0
    Mat M = zero_mat(F, n, U.size() + W.size());
    for (std::size_t i = 0; i < U.size(); ++i)
        for (std::size_t r = 0; r < n; ++r) M[r][i] = U[i][r];
    for (std::size_t j = 0; j < W.size(); ++j)
        for (std::size_t r = 0; r < n; ++r) M[r][U.size() + j] = -W[j][r];
    std::vector<Vec> out;
    for (const auto& k : kernel(M)) {
        Vec x = zero_vec(F, n);
        for (std::size_t i = 0; i < U.size(); ++i)
            if (!k[i].is_zero()) x = x + scale(U[i], k[i]);
        if (!is_zero(x)) out.push_back(x);
    }
    return span_basis(out);
}

std::string vec_str(const Vec& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
    return s + "]";
}

}  // namespace gk

#include "gk/invalg.hpp"

#include <stdexcept>

namespace gk {

namespace {

std::vector<std::vector<Vec>> empty_table(const FieldPtr& F, std::size_t n) {
    return std::vector<std::vector<Vec>>(n, std::vector<Vec>(n, zero_vec(F, n)));
}

std::string idx(std::size_t i) { return std::to_string(i + 1); }

}  // namespace

// ---- presets ----

AlgPtr matrix_algebra(const DivisionRing& D, std::size_t n) {
    const FieldPtr& F = D.base_field();
    const std::size_t d = D.dim(), N = n * n * d;
    auto at = [&](std::size_t i, std::size_t j, std::size_t m) { return (i * n + j) * d + m; };
    std::vector<std::string> names(N);
    auto t = empty_table(F, N);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t m = 0; m < d; ++m) {
                names[at(i, j, m)] = "E" + idx(i) + idx(j) + (d == 1 ? "" : "_" + D.D->names()[m]);
                for (std::size_t l = 0; l < n; ++l)
                    for (std::size_t p = 0; p < d; ++p) {
                        const Vec& c = D.D->table()[m][p];
                        for (std::size_t q = 0; q < d; ++q) t[at(i, j, m)][at(j, l, p)][at(i, l, q)] = c[q];
                    }
            }
    return std::make_shared<Algebra>(F, names, t);
}

AlgPtr matrix_algebra(const FieldPtr& F, std::size_t n) {
    DivisionRing D{field_algebra(F), identity(F, 1), nullptr};
    return matrix_algebra(D, n);
}

AlgPtr symbol_algebra(const Elem& a, const Elem& b, std::size_t m, const Elem& omega) {
    const FieldPtr& F = a.field();
    if (m < 2) throw std::invalid_argument("symbol algebra: degree must be at least 2");
    if (a.is_zero() || b.is_zero()) throw std::invalid_argument("symbol algebra: a and b must be nonzero");
    if (!omega.pow(long(m)).is_one()) throw std::invalid_argument("symbol algebra: omega^m != 1");
    for (std::size_t k = 1; k < m; ++k)
        if (omega.pow(long(k)).is_one()) throw std::invalid_argument("symbol algebra: omega is not primitive");
    const std::size_t N = m * m;
    std::vector<std::string> names(N);
    auto t = empty_table(F, N);
    auto nm = [](const char* s, std::size_t e) -> std::string {
        if (e == 0) return "";
        return e == 1 ? std::string(s) : std::string(s) + std::to_string(e);
    };
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t s = 0; s < m; ++s) {
            std::string n = nm("i", r) + nm("j", s);
            names[r * m + s] = n.empty() ? "1" : n;
            for (std::size_t u = 0; u < m; ++u)
                for (std::size_t v = 0; v < m; ++v) {
                    // (i^r j^s)(i^u j^v) = omega^(s u) i^(r+u) j^(s+v)
                    Elem c = omega.pow(long((s * u) % m));
                    std::size_t ri = r + u, sj = s + v;
                    if (ri >= m) {
                        ri -= m;
                        c *= a;
                    }
                    if (sj >= m) {
                        sj -= m;
                        c *= b;
                    }
                    t[r * m + s][u * m + v][ri * m + sj] = c;
                }
        }
    if (m == 2) names = {"1", "j", "i", "k"};
    return std::make_shared<Algebra>(F, names, t);
}

AlgPtr quaternion_algebra(const Elem& a, const Elem& b) {
    const FieldPtr& F = a.field();
    if (F->p == 2) throw std::invalid_argument("quaternion preset needs characteristic != 2");
    if (a.is_zero() || b.is_zero()) throw std::invalid_argument("quaternion algebra: a and b must be nonzero");
    auto t = empty_table(F, 4);
    Elem one = Elem::one(F), ab = a * b;
    auto set = [&](std::size_t x, std::size_t y, std::size_t z, const Elem& c) { t[x][y][z] = c; };
    for (std::size_t x = 0; x < 4; ++x) {
        set(0, x, x, one);
        set(x, 0, x, one);
    }
    set(1, 1, 0, a);
    set(2, 2, 0, b);
    set(3, 3, 0, -ab);
    set(1, 2, 3, one);
    set(2, 1, 3, -one);
    set(1, 3, 2, a);   // i ij = a j
    set(3, 1, 2, -a);  // ij i = -a j
    set(3, 2, 1, b);   // ij j = b i
    set(2, 3, 1, -b);  // j ij = -b i
    return std::make_shared<Algebra>(F, std::vector<std::string>{"1", "i", "j", "k"}, t);
}

AlgPtr tensor_algebra(const AlgPtr& A, const AlgPtr& B) {
    if (!same_field(A->field(), B->field())) throw std::invalid_argument("tensor of algebras over different fields");
    const FieldPtr& F = A->field();
    const std::size_t n = A->dim(), m = B->dim(), N = n * m;
    std::vector<std::string> names(N);
    auto t = empty_table(F, N);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const std::string &a = A->names()[i], &b = B->names()[j];
            names[i * m + j] = a == "1" ? b : b == "1" ? a : a + "_" + b;
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < m; ++l) {
                    const Vec &ca = A->table()[i][k], &cb = B->table()[j][l];
                    for (std::size_t p = 0; p < n; ++p) {
                        if (ca[p].is_zero()) continue;
                        for (std::size_t q = 0; q < m; ++q)
                            if (!cb[q].is_zero()) t[i * m + j][k * m + l][p * m + q] = ca[p] * cb[q];
                    }
                }
        }
    return std::make_shared<Algebra>(F, names, t);
}

AlgPtr change_basis(const AlgPtr& A, const Mat& P) {
    auto Pinv = inverse(P);
    if (!Pinv) throw std::invalid_argument("change of basis: matrix is singular");
    const std::size_t n = A->dim();
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < n; ++j) cols.push_back(column(P, j));
    std::vector<std::string> names;
    auto t = empty_table(A->field(), n);
    for (std::size_t i = 0; i < n; ++i) {
        names.push_back("b" + idx(i));
        for (std::size_t j = 0; j < n; ++j) t[i][j] = *Pinv * A->mul(cols[i], cols[j]);
    }
    return std::make_shared<Algebra>(A->field(), names, t);
}

DMat to_dmat(const Vec& x, std::size_t n, std::size_t d) {
    if (x.size() != n * n * d) throw std::invalid_argument("matrix algebra element of wrong length");
    DMat M(n, std::vector<Vec>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            M[i][j] = Vec(x.begin() + (i * n + j) * d, x.begin() + (i * n + j + 1) * d);
    return M;
}

Vec from_dmat(const DMat& M) {
    Vec x;
    for (const auto& row : M)
        for (const auto& c : row) x.insert(x.end(), c.begin(), c.end());
    return x;
}

Elem quaternion_norm(const Elem& a, const Elem& b, const Vec& z) {
    if (z.size() != 4) throw std::invalid_argument("quaternion of wrong length");
    return z[0] * z[0] - a * z[1] * z[1] - b * z[2] * z[2] + a * b * z[3] * z[3];
}

// ---- involutions ----

Involution transpose_involution(const FieldPtr& F, std::size_t n) {
    Mat S = zero_mat(F, n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) S[j * n + i][i * n + j] = Elem::one(F);
    return {S};
}

Involution conjugation_involution(const AlgPtr& QA) {
    if (QA->dim() != 4) throw std::invalid_argument("conjugation needs a quaternion algebra");
    Mat S = identity(QA->field(), 4);
    for (std::size_t k = 1; k < 4; ++k) S[k][k] = -S[k][k];
    return {S};
}

Involution adjoint_involution(const HermitianForm& h) {
    const DivisionRing& D = h.D;
    const std::size_t n = h.dim(), d = D.dim(), N = n * n * d;
    auto Hinv = dmat_inverse(D, h.gram);
    if (!Hinv) throw std::invalid_argument("degenerate hermitian form");
    std::vector<Vec> cols;
    for (std::size_t c = 0; c < N; ++c) {
        DMat f = to_dmat(unit_vec(D.base_field(), N, c), n, d);
        DMat fs(n, std::vector<Vec>(n));
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l) fs[k][l] = D.bar(f[l][k]);
        cols.push_back(from_dmat(dmat_mul(D, dmat_mul(D, *Hinv, fs), h.gram)));
    }
    return {from_columns(cols)};
}

Involution tensor_involution(const AlgPtr& A, const Involution& s, const AlgPtr& B, const Involution& t) {
    const std::size_t n = A->dim(), m = B->dim();
    Mat S = zero_mat(A->field(), n * m, n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < m; ++l) S[k * m + l][i * m + j] = s.S[k][i] * t.S[l][j];
    return {S};
}

std::string involution_defect(const Algebra& A, const Involution& s) {
    const std::size_t n = A.dim();
    if (s.S.size() != n || (n && s.S[0].size() != n)) return "involution matrix of wrong size";
    if (!equal(s.S * s.S, identity(A.field(), n))) return "sigma^2 != id";
    std::vector<Vec> img;
    for (std::size_t i = 0; i < n; ++i) img.push_back(column(s.S, i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec l = s.apply(A.table()[i][j]), r = A.mul(img[j], img[i]);
            if (l != r) return "sigma(" + A.names()[i] + " " + A.names()[j] + ") != sigma(" + A.names()[j] + ") sigma(" +
                               A.names()[i] + ")";
        }
    return "";
}

std::string kind_str(InvolutionKind k) { return k == InvolutionKind::First ? "first" : "second"; }

std::string type_str(InvolutionType t) {
    switch (t) {
        case InvolutionType::Orthogonal: return "orthogonal";
        case InvolutionType::Symplectic: return "symplectic";
        default: return "unitary";
    }
}

std::vector<Vec> center(const Algebra& A) {
    Mat M;
    for (std::size_t i = 0; i < A.dim(); ++i) {
        Mat C = A.right(A.basis(i)) - A.left(A.basis(i));
        M.insert(M.end(), C.begin(), C.end());
    }
    return kernel(M);
}

std::vector<Vec> sym_space(const Involution& s, const FieldPtr& F) {
    return kernel(s.S - identity(F, s.S.size()));
}

std::vector<Vec> symd_space(const Involution& s, const FieldPtr& F) {
    Mat T = s.S + identity(F, s.S.size());
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < T.size(); ++j) cols.push_back(column(T, j));
    return span_basis(cols);
}

Classification classify_involution(const Algebra& A, const Involution& s) {
    std::string why = involution_defect(A, s);
    if (!why.empty()) throw std::invalid_argument("not an involution: " + why);
    const FieldPtr& F = A.field();
    Classification c{};
    auto Z = center(A);
    c.center_dim = Z.size();
    bool first = true;
    for (const auto& z : Z)
        if (s.apply(z) != z) first = false;
    c.kind = first ? InvolutionKind::First : InvolutionKind::Second;
    const std::size_t zd = c.center_dim;
    if (A.dim() % zd) throw std::invalid_argument("algebra dimension is not a multiple of its center's");
    std::size_t n2 = A.dim() / zd, n = 0;
    while ((n + 1) * (n + 1) <= n2) ++n;
    if (n * n != n2) throw std::invalid_argument("algebra is not central simple over its center");
    c.degree = n;
    c.sym_dim = sym_space(s, F).size();
    auto Sd = symd_space(s, F);
    c.symd_dim = Sd.size();
    Mat M = from_columns(Sd);
    c.one_in_symd = Sd.empty() ? is_zero(A.one()) : solve(M, A.one()).has_value();
    if (!first) {
        c.type = InvolutionType::Unitary;
        return c;
    }
    if (F->p == 2) {
        c.type = c.one_in_symd ? InvolutionType::Symplectic : InvolutionType::Orthogonal;
        return c;
    }
    if (c.sym_dim % zd) throw std::invalid_argument("symmetric space is not a module over the center");
    std::size_t sd = c.sym_dim / zd;
    if (sd == n * (n + 1) / 2)
        c.type = InvolutionType::Orthogonal;
    else if (sd == n * (n - 1) / 2)
        c.type = InvolutionType::Symplectic;
    else
        throw std::invalid_argument("symmetric space of unexpected dimension " + std::to_string(sd));
    return c;
}

bool is_hermitian(const HermitianForm& h) {
    for (std::size_t k = 0; k < h.dim(); ++k)
        for (std::size_t l = 0; l < h.dim(); ++l)
            if (h.gram[l][k] != h.D.bar(h.gram[k][l])) return false;
    return true;
}

bool is_nondegenerate(const HermitianForm& h) { return dmat_inverse(h.D, h.gram).has_value(); }

// ---- value functions on algebras ----

namespace {

DMat base_matrix(const DNorm& alpha) {
    const std::size_t n = alpha.dim();
    DMat P(n, std::vector<Vec>(n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) P[k][j] = alpha.base[j][k];
    return P;
}

}  // namespace

NormPtr end_norm(const DNorm& alpha) {
    const DivisionRing& D = alpha.D;
    const std::size_t n = alpha.dim(), d = D.dim();
    DMat P = base_matrix(alpha);
    auto Pinv = dmat_inverse(D, P);
    if (!Pinv) throw std::invalid_argument("norm base is not a D-basis");
    const auto& wb = D.w->base();
    const auto& om = D.w->values();
    std::vector<Vec> base;
    std::vector<Value> vals;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t m = 0; m < d; ++m) {
                DMat M(n, std::vector<Vec>(n));
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t l = 0; l < n; ++l) M[k][l] = D.D->mul(D.D->mul(P[k][i], wb[m]), (*Pinv)[j][l]);
                base.push_back(from_dmat(M));
                vals.push_back(alpha.values[i] + om[m] - alpha.values[j]);
            }
    return std::make_shared<SplitNorm>(D.w->valuation(), base, vals);
}

Value end_value(const DNorm& alpha, const Vec& f) {
    const DivisionRing& D = alpha.D;
    const std::size_t n = alpha.dim();
    DMat P = base_matrix(alpha);
    auto Pinv = dmat_inverse(D, P);
    if (!Pinv) throw std::invalid_argument("norm base is not a D-basis");
    DMat C = dmat_mul(D, dmat_mul(D, *Pinv, to_dmat(f, n, D.dim())), P);
    Value m = D.w->valuation()->inf_value();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!is_zero(C[i][j])) m = vmin(m, alpha.values[i] + D.val(C[i][j]) - alpha.values[j]);
    return m;
}

QuaternionDivision quaternion_division(const ValPtr& v, const Elem& a, const Elem& b) {
    const FieldPtr& F = v->field();
    if (v->residue_char() == 2) throw UnsupportedError("quaternion valuation: residue characteristic 2");
    AlgPtr QA = quaternion_algebra(a, b);
    Value va = v->val(a), vb = v->val(b);
    Value ha = va.scaled(Q(1, 2)), hb = vb.scaled(Q(1, 2));
    const ValueLattice& G = v->group();
    std::vector<Value> vals;
    std::string cert;
    if (G.join(std::vector<Value>{ha, hb}).index_of(G) == 4) {
        vals = {v->zero_value(), ha, hb, ha + hb};
        cert = "totally ramified";
    } else if (va.is_zero() && vb.is_zero()) {
        Elem ra = v->residue(a), rb = v->residue(b);
        const FieldPtr& R = v->residue_field();
        bool definite = R->p == 0 && R->nvars() == 0 && !R->quadratic() && ra.rational() < 0 && rb.rational() < 0;
        if (!definite)
            throw UnsupportedError("quaternion valuation: residue algebra not certified to be a division algebra");
        vals.assign(4, v->zero_value());
        cert = "unramified";
    } else if (va.is_zero() && !G.contains(hb) && is_square(v->residue(a)) == std::optional<bool>(false)) {
        vals = {v->zero_value(), v->zero_value(), hb, hb};
        cert = "semiramified";
    } else if (vb.is_zero() && !G.contains(ha) && is_square(v->residue(b)) == std::optional<bool>(false)) {
        vals = {v->zero_value(), ha, v->zero_value(), ha};
        cert = "semiramified";
    } else {
        throw UnsupportedError("quaternion valuation: no division certificate for (" + a.str() + ", " + b.str() + ")");
    }
    std::vector<Vec> base;
    for (std::size_t k = 0; k < 4; ++k) base.push_back(unit_vec(F, 4, k));
    auto w = std::make_shared<SplitNorm>(v, base, vals);
    return {DivisionRing{QA, conjugation_involution(QA).S, w}, cert};
}

Value reduced_norm_value(const Valuation& v, const Elem& a, const Elem& b, const Vec& z) {
    Elem N = quaternion_norm(a, b, z);
    if (N.is_zero()) return v.inf_value();
    return v.val(N).scaled(Q(1, 2));
}

std::optional<Vec> symmetric_idempotent_split(const HermitianForm& h) {
    const DivisionRing& D = h.D;
    const std::size_t n = h.dim(), d = D.dim();
    if (n < 2) return std::nullopt;
    const FieldPtr& F = D.base_field();
    std::vector<DVec> cands;
    for (std::size_t i = 0; i < n; ++i) {
        DVec e(n, D.D->zero());
        e[i] = D.D->one();
        cands.push_back(e);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t m = 0; m < d; ++m) {
                DVec e(n, D.D->zero());
                e[i] = D.D->one();
                e[j] = unit_vec(F, d, m);
                cands.push_back(e);
            }
    for (const auto& x : cands) {
        Vec hxx = h.eval(x, x);
        auto c = D.D->inverse(hxx);
        if (!c) continue;
        // e(y) = x c h(x, y)
        DMat e(n, std::vector<Vec>(n, D.D->zero()));
        for (std::size_t l = 0; l < n; ++l) {
            Vec row = D.D->zero();
            for (std::size_t p = 0; p < n; ++p) row = row + D.D->mul(D.bar(x[p]), h.gram[p][l]);
            for (std::size_t k = 0; k < n; ++k) e[k][l] = D.D->mul(D.D->mul(x[k], *c), row);
        }
        return from_dmat(e);
    }
    return std::nullopt;
}

}  // namespace gk

#include "gk/hermitian.hpp"

#include <stdexcept>

namespace gk {

DivisionRing DivisionRing::field(const ValPtr& v) {
    const FieldPtr& F = v->field();
    auto w = std::make_shared<SplitNorm>(v, std::vector<Vec>{Vec{Elem::one(F)}}, std::vector<Value>{v->zero_value()});
    return DivisionRing{field_algebra(F), identity(F, 1), w};
}

Vec flatten(const DVec& x) {
    Vec out;
    for (const auto& c : x) out.insert(out.end(), c.begin(), c.end());
    return out;
}

DVec unflatten(const Vec& x, std::size_t d) {
    if (d == 0 || x.size() % d) throw std::invalid_argument("vector length is not a multiple of dim D");
    DVec out;
    for (std::size_t k = 0; k < x.size(); k += d) out.emplace_back(x.begin() + k, x.begin() + k + d);
    return out;
}

DMat dmat_mul(const DivisionRing& D, const DMat& A, const DMat& B) {
    std::size_t n = A.size(), m = B.empty() ? 0 : B[0].size(), l = B.size();
    DMat C(n, std::vector<Vec>(m, D.D->zero()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < l; ++k) C[i][j] = C[i][j] + D.D->mul(A[i][k], B[k][j]);
    return C;
}

std::optional<DMat> dmat_inverse(const DivisionRing& D, const DMat& A) {
    const std::size_t n = A.size(), d = D.dim();
    const FieldPtr& F = D.base_field();
    Mat big = zero_mat(F, n * d, n * d);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
            Mat L = D.D->left(A[k][l]);
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b) big[k * d + a][l * d + b] = L[a][b];
        }
    auto inv = inverse(big);
    if (!inv) return std::nullopt;
    DMat out(n, std::vector<Vec>(n));
    for (std::size_t l = 0; l < n; ++l) {
        DVec e(n, D.D->zero());
        e[l] = D.D->one();
        DVec col = unflatten(*inv * flatten(e), d);
        for (std::size_t k = 0; k < n; ++k) out[k][l] = col[k];
    }
    return out;
}

NormPtr DNorm::flatten() const {
    std::vector<Vec> fb;
    std::vector<Value> fv;
    const auto& wb = D.w->base();
    for (std::size_t i = 0; i < base.size(); ++i)
        for (std::size_t m = 0; m < wb.size(); ++m) {
            DVec e;
            for (const auto& c : base[i]) e.push_back(D.D->mul(c, wb[m]));
            fb.push_back(gk::flatten(e));
            fv.push_back(values[i] + D.w->values()[m]);
        }
    return std::make_shared<SplitNorm>(D.w->valuation(), fb, fv);
}

Value DNorm::eval(const DVec& x) const { return flatten()->eval(gk::flatten(x)); }

DNorm DNorm::shifted(const Value& g) const {
    DNorm out = *this;
    for (auto& v : out.values) v = v + g;
    return out;
}

Vec HermitianForm::eval(const DVec& x, const DVec& y) const {
    const std::size_t n = dim();
    if (x.size() != n || y.size() != n) throw std::invalid_argument("hermitian form: vector of wrong length");
    Vec r = D.D->zero();
    for (std::size_t k = 0; k < n; ++k) {
        Vec xk = D.bar(x[k]);
        for (std::size_t l = 0; l < n; ++l) r = r + D.D->mul(D.D->mul(xk, gram[k][l]), y[l]);
    }
    return r;
}

DNorm dual_norm(const DNorm& alpha, const HermitianForm& h) {
    const std::size_t n = alpha.dim();
    if (h.dim() != n) throw std::invalid_argument("form and norm on spaces of different dimension");
    DMat P(n, std::vector<Vec>(n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) P[k][j] = alpha.base[j][k];
    auto M = dmat_inverse(h.D, dmat_mul(h.D, h.gram, P));
    if (!M) throw std::invalid_argument("degenerate hermitian form");
    DNorm out{alpha.D, {}, {}};
    for (std::size_t i = 0; i < n; ++i) {
        DVec e;
        for (std::size_t k = 0; k < n; ++k) e.push_back(h.D.bar((*M)[i][k]));
        out.base.push_back(e);
        out.values.push_back(-alpha.values[i]);
    }
    return out;
}

Compatibility compatibility_defect(const DNorm& alpha, const HermitianForm& h) {
    DNorm sharp = dual_norm(alpha, h);
    if (alpha.dim() == 0) return {true, Value::zero(alpha.D.w->valuation()->rank())};
    Value twice = alpha.values[0] - sharp.eval(alpha.base[0]);
    if (!sharp.flatten()->same_as(*alpha.shifted(-twice).flatten())) return {false, std::nullopt};
    return {true, twice.scaled(Q(1, 2))};
}

}  // namespace gk

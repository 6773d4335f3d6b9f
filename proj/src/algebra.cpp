#include "gk/algebra.hpp"

#include <sstream>
#include <stdexcept>

#include "gk/exprparse.hpp"

namespace gk {

Algebra::Algebra(FieldPtr F, std::vector<std::string> names, std::vector<std::vector<Vec>> table)
    : F_(std::move(F)), n_(table.size()), names_(std::move(names)), t_(std::move(table)) {
    if (names_.size() != n_) throw std::invalid_argument("one name per basis element expected");
    for (const auto& row : t_) {
        if (row.size() != n_) throw std::invalid_argument("structure table is not square");
        for (const auto& v : row)
            if (v.size() != n_) throw std::invalid_argument("structure constant vector of wrong length");
    }
    // unit: u e_j = e_j = e_j u for all j, linear in u
    Mat M;
    Vec rhs;
    for (std::size_t j = 0; j < n_; ++j)
        for (int side = 0; side < 2; ++side)
            for (std::size_t k = 0; k < n_; ++k) {
                Vec row(n_, Elem::zero(F_));
                for (std::size_t i = 0; i < n_; ++i) row[i] = side ? t_[j][i][k] : t_[i][j][k];
                M.push_back(row);
                rhs.push_back(j == k ? Elem::one(F_) : Elem::zero(F_));
            }
    auto u = n_ ? solve(M, rhs) : std::optional<Vec>(Vec{});
    if (!u) throw std::invalid_argument("algebra has no identity element");
    one_ = *u;
}

Vec Algebra::mul(const Vec& a, const Vec& b) const {
    if (a.size() != n_ || b.size() != n_) throw std::invalid_argument("algebra element of wrong length");
    Vec r = zero();
    for (std::size_t i = 0; i < n_; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < n_; ++j) {
            if (b[j].is_zero()) continue;
            Elem c = a[i] * b[j];
            const Vec& e = t_[i][j];
            for (std::size_t k = 0; k < n_; ++k)
                if (!e[k].is_zero()) r[k] += c * e[k];
        }
    }
    return r;
}

Mat Algebra::left(const Vec& a) const {
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < n_; ++j) cols.push_back(mul(a, basis(j)));
    return from_columns(cols);
}

Mat Algebra::right(const Vec& a) const {
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < n_; ++j) cols.push_back(mul(basis(j), a));
    return from_columns(cols);
}

std::optional<Vec> Algebra::inverse(const Vec& a) const {
    auto y = solve(left(a), one_);
    if (!y) return std::nullopt;
    Vec yx = mul(*y, a);
    for (std::size_t k = 0; k < n_; ++k)
        if (yx[k] != one_[k]) return std::nullopt;
    return y;
}

bool Algebra::is_associative() const {
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t k = 0; k < n_; ++k) {
                Vec l = mul(t_[i][j], basis(k)), r = mul(basis(i), t_[j][k]);
                for (std::size_t m = 0; m < n_; ++m)
                    if (l[m] != r[m]) return false;
            }
    return true;
}

std::string Algebra::str(const Vec& a) const {
    std::string out;
    for (std::size_t i = 0; i < n_; ++i) {
        if (a[i].is_zero()) continue;
        std::string c = a[i].str();
        bool neg = c[0] == '-';
        if (neg) c = c.substr(1);
        if (c.find_first_of("+- ") != std::string::npos) {
            neg = false;
            c = "(" + a[i].str() + ")";
        }
        std::string term;
        if (names_[i] == "1")
            term = c;
        else
            term = c == "1" ? names_[i] : c + "*" + names_[i];
        if (neg)
            out += "-";
        else if (!out.empty())
            out += "+";
        out += term;
    }
    return out.empty() ? "0" : out;
}

Vec Algebra::parse(const std::string& text) const {
    ExprOps<Vec> ops;
    ops.number = [&](const Z& z) { return scalar(Elem::of(F_, Q(z))); };
    ops.name = [&](const std::string& nm) -> Vec {
        for (std::size_t i = 0; i < n_; ++i)
            if (names_[i] == nm) return basis(i);
        for (int i = 0; i < F_->nvars(); ++i)
            if (F_->vars[i] == nm) return scalar(Elem::var(F_, i));
        if (F_->quadratic() && nm == F_->theta_name) return scalar(Elem::theta(F_));
        throw std::invalid_argument("unknown name");
    };
    ops.add = [](const Vec& a, const Vec& b) { return a + b; };
    ops.sub = [](const Vec& a, const Vec& b) { return a - b; };
    ops.mul = [this](const Vec& a, const Vec& b) { return mul(a, b); };
    ops.div = [this](const Vec& a, const Vec& b) {
        auto bi = inverse(b);
        if (!bi) throw std::domain_error("division by a non-invertible element");
        return mul(a, *bi);
    };
    ops.neg = [](const Vec& a) { return -a; };
    ops.pow = [this](const Vec& a, long e) {
        Vec base = a;
        if (e < 0) {
            auto ai = inverse(a);
            if (!ai) throw std::domain_error("negative power of a non-invertible element");
            base = *ai;
            e = -e;
        }
        Vec r = one_;
        for (long k = 0; k < e; ++k) r = mul(r, base);
        return r;
    };
    return parse_expr(text, ops);
}

AlgPtr field_algebra(const FieldPtr& F) {
    return std::make_shared<Algebra>(F, std::vector<std::string>{"1"},
                                     std::vector<std::vector<Vec>>{{Vec{Elem::one(F)}}});
}

}  // namespace gk

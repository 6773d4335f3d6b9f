#include "gk/ordvalues.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gk {

Value::Value(std::vector<Q> coords) : c_(std::move(coords)) {
    for (auto& q : c_) q.canonicalize();
}
Value::Value(std::initializer_list<Q> coords) : c_(coords) {
    for (auto& q : c_) q.canonicalize();
}

Value Value::zero(std::size_t rank) { return Value(std::vector<Q>(rank, Q(0))); }

Value Value::infinity(std::size_t rank) {
    Value v = zero(rank);
    v.inf_ = true;
    return v;
}

Value Value::unit(std::size_t rank, std::size_t i, const Q& q) {
    Value v = zero(rank);
    v.c_.at(i) = q;
    v.c_[i].canonicalize();
    return v;
}

bool Value::is_zero() const {
    if (inf_) return false;
    for (const auto& q : c_)
        if (q != 0) return false;
    return true;
}

static void check_rank(const Value& a, const Value& b) {
    if (a.rank() != b.rank()) throw std::invalid_argument("value rank mismatch");
}

Value Value::operator+(const Value& o) const {
    check_rank(*this, o);
    if (inf_ || o.inf_) return infinity(rank());
    Value r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

Value Value::operator-(const Value& o) const {
    check_rank(*this, o);
    if (o.inf_) throw std::invalid_argument("subtracting infinity");
    if (inf_) return *this;
    Value r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
}

Value Value::operator-() const {
    if (inf_) throw std::invalid_argument("negating infinity");
    Value r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
}

Value Value::scaled(const Q& q) const {
    if (inf_) {
        if (q <= 0) throw std::invalid_argument("scaling infinity");
        return *this;
    }
    Value r = *this;
    for (auto& x : r.c_) x *= q;
    return r;
}

std::string Value::str() const {
    if (inf_) return "inf";
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ',';
        os << c_[i].get_str();
    }
    os << ')';
    return os.str();
}

int lex_compare(const Value& a, const Value& b) {
    check_rank(a, b);
    if (a.is_inf() || b.is_inf()) return int(a.is_inf()) - int(b.is_inf());
    for (std::size_t i = 0; i < a.rank(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c) return c < 0 ? -1 : 1;
    }
    return 0;
}

Value vmin(const Value& a, const Value& b) { return a <= b ? a : b; }

bool ConvexSubgroup::contains(const Value& g) const {
    if (g.rank() != rank || g.is_inf()) return false;
    for (std::size_t i = 0; i < kept; ++i)
        if (g[i] != 0) return false;
    return true;
}

Value quotient_map(const ConvexSubgroup& delta, const Value& g) {
    if (g.rank() != delta.rank) throw std::invalid_argument("value rank mismatch");
    if (g.is_inf()) return Value::infinity(delta.kept);
    return Value(std::vector<Q>(g.coords().begin(), g.coords().begin() + delta.kept));
}

Value lift_zero_tail(const ConvexSubgroup& delta, const Value& lam) {
    if (lam.rank() != delta.kept) throw std::invalid_argument("value rank mismatch");
    if (lam.is_inf()) return Value::infinity(delta.rank);
    auto c = lam.coords();
    c.resize(delta.rank, Q(0));
    return Value(c);
}

Value pad_front(const Value& tail, std::size_t rank) {
    if (tail.rank() > rank) throw std::invalid_argument("value rank mismatch");
    if (tail.is_inf()) return Value::infinity(rank);
    std::vector<Q> c(rank - tail.rank(), Q(0));
    c.insert(c.end(), tail.coords().begin(), tail.coords().end());
    return Value(c);
}

// ---- lattice ----

static Z floor_div(const Q& q) {
    Z r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

ValueLattice::ValueLattice(std::size_t rank, const std::vector<Value>& gens) : rank_(rank), gens_(gens) {
    den_ = 1;
    for (const auto& g : gens) {
        if (g.rank() != rank || g.is_inf()) throw std::invalid_argument("bad lattice generator");
        for (const auto& q : g.coords()) mpz_lcm(den_.get_mpz_t(), den_.get_mpz_t(), q.get_den_mpz_t());
    }
    std::vector<std::vector<Z>> rows;
    for (const auto& g : gens) {
        std::vector<Z> r(rank);
        bool nz = false;
        for (std::size_t i = 0; i < rank; ++i) {
            Q s = g[i] * den_;
            r[i] = s.get_num();
            nz = nz || r[i] != 0;
        }
        if (nz) rows.push_back(r);
    }
    // integer row echelon by repeated Euclid on each column
    std::size_t top = 0;
    for (std::size_t col = 0; col < rank && top < rows.size(); ++col) {
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t i = top; i < rows.size(); ++i)
                if (rows[i][col] != 0 && (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col]))) best = i;
            if (best == rows.size()) break;
            std::swap(rows[top], rows[best]);
            bool done = true;
            for (std::size_t i = top + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                Z f = rows[i][col] / rows[top][col];
                for (std::size_t j = col; j < rank; ++j) rows[i][j] -= f * rows[top][j];
                if (rows[i][col] != 0) done = false;
            }
            if (done) break;
        }
        if (top < rows.size() && rows[top][col] != 0) {
            if (rows[top][col] < 0)
                for (auto& z : rows[top]) z = -z;
            basis_.push_back(rows[top]);
            pivots_.push_back(col);
            ++top;
        }
    }
}

std::vector<Value> ValueLattice::basis() const {
    std::vector<Value> out;
    for (const auto& r : basis_) {
        std::vector<Q> c(rank_);
        for (std::size_t i = 0; i < rank_; ++i) {
            c[i] = Q(r[i], den_);
            c[i].canonicalize();
        }
        out.emplace_back(c);
    }
    return out;
}

std::optional<std::vector<Z>> ValueLattice::coordinates(const Value& g) const {
    if (g.rank() != rank_ || g.is_inf()) return std::nullopt;
    std::vector<Q> res(rank_);
    for (std::size_t i = 0; i < rank_; ++i) res[i] = g[i] * den_;
    std::vector<Z> x(basis_.size());
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        std::size_t p = pivots_[k];
        Q t = res[p] / Q(basis_[k][p]);
        if (t.get_den() != 1) return std::nullopt;
        x[k] = t.get_num();
        for (std::size_t j = p; j < rank_; ++j) res[j] -= Q(x[k] * basis_[k][j]);
    }
    for (const auto& q : res)
        if (q != 0) return std::nullopt;
    return x;
}

bool ValueLattice::contains(const Value& g) const { return coordinates(g).has_value(); }

Value ValueLattice::canonical(const Value& g) const {
    if (g.is_inf()) return g;
    std::vector<Q> res(rank_);
    for (std::size_t i = 0; i < rank_; ++i) res[i] = g[i] * den_;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        std::size_t p = pivots_[k];
        Z f = floor_div(res[p] / Q(basis_[k][p]));
        for (std::size_t j = p; j < rank_; ++j) res[j] -= Q(f * basis_[k][j]);
    }
    for (auto& q : res) q /= den_;
    return Value(res);
}

bool ValueLattice::same_coset(const Value& a, const Value& b) const { return contains(a - b); }

bool ValueLattice::contains_lattice(const ValueLattice& sub) const {
    for (const auto& b : sub.basis())
        if (!contains(b)) return false;
    return true;
}

Z ValueLattice::index_of(const ValueLattice& sub) const {
    if (!contains_lattice(sub) || sub.lattice_rank() != lattice_rank())
        throw std::invalid_argument("not a finite-index sublattice");
    // covolume ratio via pivot products; both live in the same span
    Q big = 1, small = 1;
    for (std::size_t k = 0; k < basis_.size(); ++k) big *= Q(basis_[k][pivots_[k]], den_);
    for (std::size_t k = 0; k < sub.basis_.size(); ++k) small *= Q(sub.basis_[k][sub.pivots_[k]], sub.den_);
    Q r = small / big;
    if (r.get_den() != 1) throw std::logic_error("non-integral lattice index");
    return r.get_num();
}

ValueLattice ValueLattice::join(const ValueLattice& o) const { return join(o.basis()); }

ValueLattice ValueLattice::join(const std::vector<Value>& extra) const {
    auto g = basis();
    g.insert(g.end(), extra.begin(), extra.end());
    return ValueLattice(rank_, g);
}

}  // namespace gk

#include "gk/grassoc.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "gk/ffield.hpp"

namespace gk {

namespace {

bool grade_less(const std::vector<Value>& a, const std::vector<Value>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct GradeLess {
    bool operator()(const std::vector<Value>& a, const std::vector<Value>& b) const { return grade_less(a, b); }
};

bool all_zero(const std::vector<Value>& g) {
    return std::all_of(g.begin(), g.end(), [](const Value& x) { return x.is_zero(); });
}

std::string grade_str(const std::vector<Value>& g) {
    std::string s;
    for (std::size_t k = 0; k < g.size(); ++k) s += (k ? " | " : "") + g[k].str();
    return s;
}

bool is_unit_direction(const Vec& b, std::size_t& k) {
    std::size_t nz = 0;
    for (std::size_t i = 0; i < b.size(); ++i)
        if (!b[i].is_zero()) {
            ++nz;
            k = i;
        }
    return nz == 1;
}

Elem trace(const Mat& M) {
    Elem t = Elem::zero(M[0][0].field());
    for (std::size_t i = 0; i < M.size(); ++i) t += M[i][i];
    return t;
}

// coordinates of x in the basis U (x must lie in span U)
Vec coords_in(const std::vector<Vec>& U, const Vec& x) {
    auto c = solve(from_columns(U), x);
    if (!c) throw std::logic_error("vector outside the expected subspace");
    return *c;
}

// trace of y -> x y on the subalgebra spanned by U
Elem sub_trace(const Algebra& B, const std::vector<Vec>& U, const Vec& x) {
    Elem t = Elem::zero(B.field());
    for (std::size_t r = 0; r < U.size(); ++r) t += coords_in(U, B.mul(x, U[r]))[r];
    return t;
}

std::vector<Vec> radical_trace_form(const Algebra& B) {
    const std::size_t n = B.dim();
    std::vector<Mat> L;
    for (std::size_t i = 0; i < n; ++i) L.push_back(B.left(B.basis(i)));
    Mat T = zero_mat(B.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Vec& e = B.table()[i][j];
            Elem t = Elem::zero(B.field());
            for (std::size_t k = 0; k < n; ++k)
                if (!e[k].is_zero()) t += e[k] * trace(L[k]);
            T[i][j] = t;
        }
    return kernel(T);
}

using IMat = std::vector<std::vector<long long>>;

IMat imul(const IMat& A, const IMat& B, long long m) {
    const std::size_t n = A.size();
    IMat C(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            long long a = A[i][k];
            if (!a) continue;
            for (std::size_t j = 0; j < n; ++j) C[i][j] = (C[i][j] + a * B[k][j]) % m;
        }
    return C;
}

long long trace_power(IMat M, long long e, long long m) {
    const std::size_t n = M.size();
    IMat R(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) R[i][i] = 1 % m;
    for (auto& row : M)
        for (auto& x : row) x %= m;
    while (e) {
        if (e & 1) R = imul(R, M, m);
        e >>= 1;
        if (e) M = imul(M, M, m);
    }
    long long t = 0;
    for (std::size_t i = 0; i < n; ++i) t = (t + R[i][i]) % m;
    return t;
}

// layered trace kernels over F_p (restriction of scalars from F_q)
std::vector<Vec> radical_finite(const Algebra& B, const FiniteField& ff) {
    const int p = ff.p(), q = ff.q();
    const int d = q == p ? 1 : 2;
    const std::size_t n = B.dim(), N = n * d;
    const int s = p;  // code of the generator of F_q over F_p
    // T[I][J] = F_p coordinates of f_I f_J, f_{k d + a} = s^a b_k
    std::vector<std::vector<std::vector<int>>> T(N, std::vector<std::vector<int>>(N, std::vector<int>(N, 0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) {
                    int pw = 1;
                    for (int r = 0; r < a + b; ++r) pw = ff.mul(pw, s);
                    for (std::size_t k = 0; k < n; ++k) {
                        int c = ff.mul(pw, ff.encode(B.table()[i][j][k]));
                        for (int e = 0; e < d; ++e) T[i * d + a][j * d + b][k * d + e] = e ? c / p : c % p;
                    }
                }
    auto left = [&](const std::vector<int>& x) {
        IMat L(N, std::vector<long long>(N, 0));
        for (std::size_t I = 0; I < N; ++I) {
            if (!x[I]) continue;
            for (std::size_t J = 0; J < N; ++J)
                for (std::size_t K = 0; K < N; ++K) L[K][J] = (L[K][J] + x[I] * T[I][J][K]) % p;
        }
        return L;
    };
    auto prod = [&](const std::vector<int>& x, std::size_t J) {
        std::vector<int> r(N, 0);
        for (std::size_t I = 0; I < N; ++I)
            if (x[I])
                for (std::size_t K = 0; K < N; ++K) r[K] = (r[K] + x[I] * T[I][J][K]) % p;
        return r;
    };
    int l = 0;
    for (std::size_t pl = p; pl <= N; pl *= p) ++l;
    FieldPtr Fp = make_field(p);
    std::vector<std::vector<int>> I;
    for (std::size_t K = 0; K < N; ++K) {
        std::vector<int> e(N, 0);
        e[K] = 1;
        I.push_back(e);
    }
    long long pi = 1;
    for (int i = 0; i <= l && !I.empty(); ++i, pi *= p) {
        const long long mod = pi * p;
        Mat G(N, Vec(I.size(), Elem::zero(Fp)));
        for (std::size_t r = 0; r < I.size(); ++r)
            for (std::size_t J = 0; J < N; ++J) {
                long long t = trace_power(left(prod(I[r], J)), pi, mod);
                G[J][r] = Elem::of(Fp, Q(long((t / pi) % p)));
            }
        std::vector<std::vector<int>> next;
        for (const auto& c : kernel(G)) {
            std::vector<int> x(N, 0);
            for (std::size_t r = 0; r < I.size(); ++r) {
                int cr = int(mpz_class(c[r].rational().get_num()).get_si());
                cr = ((cr % p) + p) % p;
                for (std::size_t K = 0; K < N; ++K) x[K] = (x[K] + cr * I[r][K]) % p;
            }
            next.push_back(x);
        }
        I = std::move(next);
    }
    std::vector<Vec> out;
    for (const auto& x : I) {
        Vec v(n, Elem::zero(B.field()));
        for (std::size_t k = 0; k < n; ++k) v[k] = ff.decode(x[k * d] + (d == 2 ? x[k * d + 1] * p : 0));
        out.push_back(v);
    }
    return span_basis(out);
}

bool positive_definite(std::vector<std::vector<Q>> M) {
    const std::size_t d = M.size();
    for (std::size_t k = 0; k < d; ++k) {
        if (M[k][k] <= 0) return false;
        for (std::size_t i = k + 1; i < d; ++i) {
            Q f = M[i][k] / M[k][k];
            for (std::size_t j = k; j < d; ++j) M[i][j] -= f * M[k][j];
        }
    }
    return true;
}

}  // namespace

// ---- GradedAlgebra ----

std::vector<std::size_t> GradedAlgebra::zero_component() const {
    for (std::size_t c = 0; c < components.size(); ++c)
        if (all_zero(component_grade[c])) return components[c];
    return {};
}

std::size_t GradedAlgebra::component_of(std::size_t i) const {
    for (std::size_t c = 0; c < components.size(); ++c)
        if (std::find(components[c].begin(), components[c].end(), i) != components[c].end()) return c;
    throw std::out_of_range("basis index without component");
}

std::optional<std::pair<Value, Vec>> GradedAlgebra::lead(const Vec& x) const {
    Vec c = Pinv * x;
    Value m = v->inf_value();
    for (std::size_t k = 0; k < c.size(); ++k)
        if (!c[k].is_zero()) m = vmin(m, v->val(c[k]) + degree[k]);
    if (m.is_inf()) return std::nullopt;
    Vec xi = B->zero();
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k].is_zero() || v->val(c[k]) + degree[k] != m) continue;
        xi[k] = v->residue(c[k] / v->section(m - degree[k]));
    }
    return std::make_pair(m, xi);
}

Vec GradedAlgebra::lift(const Vec& xi) const {
    Vec x = A->zero();
    for (std::size_t k = 0; k < xi.size(); ++k)
        if (!xi[k].is_zero()) x = x + scale(lifts[k], v->lift(xi[k]));
    return x;
}

std::vector<Vec> GradedAlgebra::component_span(std::size_t c) const {
    std::vector<Vec> out;
    for (auto i : components[c]) out.push_back(B->basis(i));
    return out;
}

GradedAlgebra build_graded(const AlgPtr& A, const NormPtr& phi, const std::vector<std::vector<Value>>& outer) {
    if (phi->dim() != A->dim()) throw std::invalid_argument("value function and algebra of different dimension");
    if (!same_field(phi->field(), A->field())) throw std::invalid_argument("value function over another field");
    if (!outer.empty() && outer.size() != A->dim()) throw std::invalid_argument("one outer grade per base vector expected");
    GradedAlgebra G;
    G.A = A;
    G.phi = phi;
    G.v = phi->valuation();
    const Valuation& v = *G.v;
    const std::size_t n = A->dim();
    if (!phi->eval(A->one()).is_zero()) throw std::invalid_argument("value of 1 is " + phi->eval(A->one()).str() + ", not 0");
    for (std::size_t i = 0; i < n; ++i) {
        const Value& g = phi->values()[i];
        Value rho = v.group().canonical(g);
        G.lifts.push_back(scale(phi->base()[i], v.section(rho - g)));
        G.degree.push_back(rho);
        std::vector<Value> key = outer.empty() ? std::vector<Value>{} : outer[i];
        key.push_back(rho);
        G.grade.push_back(key);
    }
    auto Pinv = inverse(from_columns(G.lifts));
    if (!Pinv) throw std::invalid_argument("splitting base is not a basis");
    G.Pinv = *Pinv;
    const FieldPtr& R = v.residue_field();
    std::vector<std::vector<Vec>> table(n, std::vector<Vec>(n, zero_vec(R, n)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec c = G.Pinv * A->mul(G.lifts[i], G.lifts[j]);
            Value target = G.degree[i] + G.degree[j];
            for (std::size_t k = 0; k < n; ++k) {
                if (c[k].is_zero()) continue;
                Value g = v.val(c[k]) + G.degree[k];
                if (g < target)
                    throw SurmultiplicativityError("not surmultiplicative: value of b" + std::to_string(i + 1) + " b" +
                                                       std::to_string(j + 1) + " below " + target.str(),
                                                   G.lifts[i], G.lifts[j]);
                if (g == target) table[i][j][k] = v.residue(c[k] / v.section(target - G.degree[k]));
            }
        }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t k = 0;
        names.push_back(is_unit_direction(phi->base()[i], k) ? "~" + A->names()[k] : "g" + std::to_string(i + 1));
    }
    G.B = std::make_shared<Algebra>(R, names, table);
    std::map<std::vector<Value>, std::vector<std::size_t>, GradeLess> comps;
    for (std::size_t i = 0; i < n; ++i) comps[G.grade[i]].push_back(i);
    for (auto& [key, idx] : comps) {
        G.component_grade.push_back(key);
        G.components.push_back(idx);
    }
    return G;
}

GradedAlgebra build_graded(const AlgPtr& A, const VFPtr& phi, const NormCheckOptions& opt) {
    if (auto sp = std::dynamic_pointer_cast<const SplitNorm>(phi)) return build_graded(A, sp);
    NormCheck c = check_norm(*phi, opt);
    if (c.verdict != Verdict::Yes) {
        std::string msg = "graded dimension defect: ";
        if (c.verdict == Verdict::No)
            msg += "gr dimension at most " + (c.gr_dim_upper ? std::to_string(*c.gr_dim_upper) : std::string("?")) +
                   " < " + std::to_string(phi->dim());
        else
            msg += "no splitting base found (" + c.note + ")";
        throw NotANormError(msg, c);
    }
    return build_graded(A, c.norm);
}

// ---- radicals ----

std::vector<Vec> jacobson_radical(const Algebra& B, std::string* method) {
    const FieldPtr& R = B.field();
    if (R->p == 0 || R->p > B.dim()) {
        if (method) *method = "trace form";
        return radical_trace_form(B);
    }
    auto ff = FiniteField::from(R);
    if (!ff) throw UnsupportedError("radical over an infinite field of small characteristic");
    if (method) *method = "layered trace kernels over F_" + std::to_string(R->p);
    return radical_finite(B, *ff);
}

std::vector<Vec> ideal_closure(const Algebra& B, const std::vector<Vec>& gens) {
    std::vector<Vec> I = span_basis(gens);
    for (;;) {
        std::vector<Vec> all = I;
        for (const auto& x : I)
            for (std::size_t k = 0; k < B.dim(); ++k) {
                all.push_back(B.mul(B.basis(k), x));
                all.push_back(B.mul(x, B.basis(k)));
            }
        auto J = span_basis(all);
        if (J.size() == I.size()) return J;
        I = std::move(J);
    }
}

std::vector<Vec> right_ideal_closure(const Algebra& B, const std::vector<Vec>& gens) {
    std::vector<Vec> all;
    for (const auto& x : gens)
        for (std::size_t k = 0; k < B.dim(); ++k) all.push_back(B.mul(x, B.basis(k)));
    return span_basis(all);
}

SemisimpleReport check_graded_semisimple(const GradedAlgebra& G) {
    SemisimpleReport r;
    r.radical = jacobson_radical(*G.B, &r.method);
    std::vector<Vec> H;
    for (std::size_t c = 0; c < G.components.size(); ++c)
        for (auto& x : intersect(r.radical, G.component_span(c), G.residue_field(), G.dim())) H.push_back(x);
    r.graded_radical = span_basis(H);
    r.semisimple = r.graded_radical.empty();
    return r;
}

TameReport check_tame(const GradedAlgebra& G) {
    TameReport t;
    const Algebra& B = *G.B;
    auto ZB = center(B);
    t.graded_center_dim = ZB.size();
    auto ZA = center(*G.A);
    std::vector<Vec> image;
    if (!ZA.empty()) {
        NormPtr r = G.phi->restrict(ZA);
        for (const auto& y : r->base()) {
            Vec x = G.A->zero();
            for (std::size_t k = 0; k < y.size(); ++k) x = x + scale(ZA[k], y[k]);
            image.push_back(G.lead(x)->second);
        }
    }
    t.center_image_dim = span_basis(image).size();
    if (t.center_image_dim != t.graded_center_dim) {
        t.note = "gr of the center has dimension " + std::to_string(t.center_image_dim) + ", graded center " +
                 std::to_string(t.graded_center_dim);
        return t;
    }
    std::vector<Vec> Z0;
    for (std::size_t c = 0; c < G.components.size(); ++c) {
        auto Zc = intersect(ZB, G.component_span(c), G.residue_field(), G.dim());
        if (Zc.empty()) continue;
        ++t.ramification;
        if (all_zero(G.component_grade[c])) Z0 = Zc;
    }
    const unsigned long p = G.residue_field()->p;
    if (p == 0) {
        t.tame = true;
        t.note = "residue characteristic 0";
        return t;
    }
    Mat T = zero_mat(G.residue_field(), Z0.size(), Z0.size());
    for (std::size_t i = 0; i < Z0.size(); ++i)
        for (std::size_t j = 0; j < Z0.size(); ++j) T[i][j] = sub_trace(B, Z0, B.mul(Z0[i], Z0[j]));
    if (rank(T) != Z0.size()) throw UnsupportedError("inseparable residue center");
    if (t.ramification % p == 0) throw UnsupportedError("wild ramification in the center");
    t.tame = true;
    t.note = "separable center, ramification " + std::to_string(t.ramification);
    return t;
}

// ---- involutions ----

std::optional<Vec> invariance_witness(const SplitNorm& phi, const Involution& s) {
    for (std::size_t i = 0; i < phi.base().size(); ++i)
        if (phi.eval(s.apply(phi.base()[i])) != phi.values()[i]) return phi.base()[i];
    return std::nullopt;
}

GradedInvolution induce_involution(const GradedAlgebra& G, const Involution& s) {
    if (auto w = invariance_witness(*G.phi, s))
        throw InvarianceError("involution does not preserve the value function at " + G.A->str(*w), *w);
    std::vector<Vec> cols;
    for (std::size_t i = 0; i < G.dim(); ++i) {
        auto L = G.lead(s.apply(G.lifts[i]));
        if (!L || L->first != G.degree[i]) throw std::logic_error("involution moved a homogeneous degree");
        cols.push_back(L->second);
    }
    return {from_columns(cols)};
}

AlgPtr subalgebra(const Algebra& B, const std::vector<std::size_t>& idx) {
    const std::size_t d = idx.size();
    std::vector<std::vector<Vec>> t(d, std::vector<Vec>(d, zero_vec(B.field(), d)));
    std::vector<std::string> names;
    for (std::size_t a = 0; a < d; ++a) {
        names.push_back(B.names()[idx[a]]);
        for (std::size_t b = 0; b < d; ++b) {
            Vec e = B.table()[idx[a]][idx[b]];
            for (std::size_t c = 0; c < d; ++c) {
                t[a][b][c] = e[idx[c]];
                e[idx[c]] = Elem::zero(B.field());
            }
            if (!is_zero(e)) throw std::invalid_argument("index set does not span a subalgebra");
        }
    }
    return std::make_shared<Algebra>(B.field(), names, t);
}

Involution restrict_involution(const Mat& S, const std::vector<std::size_t>& idx) {
    const std::size_t d = idx.size();
    Mat out(d, Vec(d));
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) out[a][b] = S[idx[a]][idx[b]];
    for (std::size_t b = 0; b < d; ++b)
        for (std::size_t r = 0; r < S.size(); ++r)
            if (std::find(idx.begin(), idx.end(), r) == idx.end() && !S[r][idx[b]].is_zero())
                throw std::invalid_argument("involution does not preserve the index set");
    return {out};
}

// ---- anisotropy ----

namespace {

struct CompResult {
    Verdict verdict = Verdict::Undecided;
    std::optional<Vec> witness;
    std::string certificate;
};

// products tau(e_a) e_b restricted to one component
std::vector<std::vector<Vec>> pair_products(const Algebra& B, const Mat& tau, const std::vector<std::size_t>& idx) {
    std::vector<std::vector<Vec>> P(idx.size(), std::vector<Vec>(idx.size()));
    for (std::size_t a = 0; a < idx.size(); ++a) {
        Vec ta = tau * B.basis(idx[a]);
        for (std::size_t b = 0; b < idx.size(); ++b) P[a][b] = B.mul(ta, B.basis(idx[b]));
    }
    return P;
}

CompResult finite_search(const Algebra& B, const FiniteField& ff, const std::vector<std::vector<Vec>>& P,
                         const std::vector<std::size_t>& idx, std::uint64_t& budget, std::uint64_t& examined) {
    const std::size_t d = idx.size(), n = B.dim();
    const int q = ff.q();
    std::vector<std::vector<std::vector<int>>> C(d, std::vector<std::vector<int>>(d, std::vector<int>(n)));
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t k = 0; k < n; ++k) C[a][b][k] = ff.encode(P[a][b][k]);
    std::vector<int> acc(n);
    auto isotropic = [&](const std::vector<int>& x) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t a = 0; a < d; ++a) {
            if (!x[a]) continue;
            for (std::size_t b = 0; b < d; ++b) {
                if (!x[b]) continue;
                int c = ff.mul(x[a], x[b]);
                for (std::size_t k = 0; k < n; ++k)
                    if (C[a][b][k]) acc[k] = ff.add(acc[k], ff.mul(c, C[a][b][k]));
            }
        }
        return std::all_of(acc.begin(), acc.end(), [](int v) { return v == 0; });
    };
    auto found = [&](const std::vector<int>& x) {
        Vec w = B.zero();
        for (std::size_t a = 0; a < d; ++a) w[idx[a]] = ff.decode(x[a]);
        return CompResult{Verdict::No, w, "isotropic vector"};
    };
    // basis vectors first: catches exchanged idempotents at once
    for (std::size_t a = 0; a < d; ++a) {
        std::vector<int> x(d, 0);
        x[a] = 1;
        if (isotropic(x)) return found(x);
    }
    // projective representatives (first nonzero entry 1), first slot running fastest
    std::vector<int> x(d, 0);
    x[0] = 1;
    for (;;) {
        std::size_t f = 0;
        while (x[f] == 0) ++f;
        if (x[f] == 1) {
            if (budget == 0) return {};
            --budget;
            ++examined;
            if (isotropic(x)) return found(x);
        }
        std::size_t k = 0;
        for (; k < d; ++k) {
            if (++x[k] < q) break;
            x[k] = 0;
        }
        if (k == d) break;
    }
    return {Verdict::Yes, std::nullopt, "exhaustive search over F_" + std::to_string(q)};
}

CompResult definite_certificate(const Algebra& B, const std::vector<std::vector<Vec>>& P) {
    const std::size_t d = P.size(), n = B.dim();
    // linear functionals on B to test: the trace, then each coordinate
    std::vector<std::pair<std::string, Vec>> funcs;
    Vec tr(n);
    for (std::size_t k = 0; k < n; ++k) tr[k] = trace(B.left(B.basis(k)));
    funcs.emplace_back("trace", tr);
    for (std::size_t k = 0; k < n; ++k) funcs.emplace_back("coordinate " + B.names()[k], B.basis(k));
    for (const auto& [name, f] : funcs) {
        std::vector<std::vector<Q>> M(d, std::vector<Q>(d));
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) M[a][b] = (dot(f, P[a][b]) + dot(f, P[b][a])).rational() / 2;
        if (positive_definite(M)) return {Verdict::Yes, std::nullopt, name + " form positive definite"};
        for (auto& row : M)
            for (auto& e : row) e = -e;
        if (positive_definite(M)) return {Verdict::Yes, std::nullopt, name + " form negative definite"};
    }
    return {};
}

CompResult height_search(const Algebra& B, const std::vector<std::vector<Vec>>& P, const std::vector<std::size_t>& idx,
                         int h, std::uint64_t& budget, std::uint64_t& examined) {
    const std::size_t d = idx.size(), n = B.dim();
    const FieldPtr& R = B.field();
    // plain rationals when every structure constant is one; coordinates tested one at a time
    bool rational = true;
    for (const auto& row : P)
        for (const auto& v : row)
            for (const auto& e : v) rational = rational && e.is_rational();
    std::vector<std::vector<std::vector<Q>>> PQ;
    if (rational) {
        PQ.assign(n, std::vector<std::vector<Q>>(d, std::vector<Q>(d)));
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b) PQ[k][a][b] = P[a][b][k].rational();
    }
    auto isotropic = [&](const std::vector<int>& x) {
        if (!rational) {
            for (std::size_t k = 0; k < n; ++k) {
                Elem acc = Elem::zero(R);
                for (std::size_t a = 0; a < d; ++a)
                    for (std::size_t b = 0; b < d; ++b)
                        if (x[a] && x[b] && !P[a][b][k].is_zero()) acc += P[a][b][k] * Elem::of(R, Q(x[a] * x[b]));
                if (!acc.is_zero()) return false;
            }
            return true;
        }
        Q acc, t;
        for (std::size_t k = 0; k < n; ++k) {
            acc = 0;
            for (std::size_t a = 0; a < d; ++a) {
                if (!x[a]) continue;
                for (std::size_t b = 0; b < d; ++b) {
                    if (!x[b] || sgn(PQ[k][a][b]) == 0) continue;
                    t = PQ[k][a][b] * (x[a] * x[b]);
                    acc += t;
                }
            }
            if (sgn(acc) != 0) return false;
        }
        return true;
    };
    // by support size; first nonzero entry positive, values 1, -1, 2, -2, ...
    std::vector<int> vals;
    for (int v = 1; v <= h; ++v) vals.insert(vals.end(), {v, -v});
    for (std::size_t k = 1; k <= d; ++k) {
        std::vector<std::size_t> pos(k);
        for (std::size_t a = 0; a < k; ++a) pos[a] = a;
        for (;;) {
            std::vector<std::size_t> sel(k, 0);
            for (;;) {
                if (budget == 0) return {};
                --budget;
                ++examined;
                std::vector<int> x(d, 0);
                for (std::size_t a = 0; a < k; ++a) x[pos[a]] = a == 0 ? int(sel[a]) + 1 : vals[sel[a]];
                if (isotropic(x)) {
                    Vec w = B.zero();
                    for (std::size_t a = 0; a < d; ++a) w[idx[a]] = Elem::of(R, Q(x[a]));
                    return {Verdict::No, w, "isotropic vector"};
                }
                std::size_t a = k;
                while (a-- > 0) {
                    // the leading slot takes the positive values only
                    std::size_t lim = a == 0 ? std::size_t(h) : vals.size();
                    if (++sel[a] < lim) break;
                    sel[a] = 0;
                }
                if (a == std::size_t(-1)) break;
            }
            std::size_t a = k;
            while (a-- > 0)
                if (pos[a] < d - k + a) break;
            if (a == std::size_t(-1)) break;
            ++pos[a];
            for (std::size_t b = a + 1; b < k; ++b) pos[b] = pos[b - 1] + 1;
        }
    }
    return {};
}

}  // namespace

AnisotropyResult anisotropy(const Algebra& B, const Mat& tau, const std::vector<std::vector<std::size_t>>& comps,
                            const AnisotropyOptions& opt) {
    AnisotropyResult out;
    const FieldPtr& R = B.field();
    auto ff = FiniteField::from(R);
    std::uint64_t budget = opt.budget;
    bool undecided = false;
    std::vector<std::string> certs;
    for (const auto& idx : comps) {
        if (idx.empty()) continue;
        auto P = pair_products(B, tau, idx);
        CompResult r;
        if (ff) {
            r = finite_search(B, *ff, P, idx, budget, out.examined);
        } else {
            if (opt.certificates && R->p == 0 && R->nvars() == 0 && !R->quadratic()) r = definite_certificate(B, P);
            if (r.verdict == Verdict::Undecided) r = height_search(B, P, idx, opt.height, budget, out.examined);
        }
        if (r.verdict == Verdict::No) {
            out.verdict = Verdict::No;
            out.witness = r.witness;
            out.certificate = r.certificate;
            return out;
        }
        if (r.verdict == Verdict::Undecided) undecided = true;
        else certs.push_back(r.certificate);
    }
    if (undecided) {
        out.certificate = budget == 0 ? "search budget exhausted" : "no certificate found";
        return out;
    }
    out.verdict = Verdict::Yes;
    std::sort(certs.begin(), certs.end());
    certs.erase(std::unique(certs.begin(), certs.end()), certs.end());
    for (std::size_t k = 0; k < certs.size(); ++k) out.certificate += (k ? "; " : "") + certs[k];
    return out;
}

AnisotropyResult graded_anisotropy(const GradedAlgebra& G, const GradedInvolution& s, const AnisotropyOptions& opt) {
    return anisotropy(*G.B, s.S, G.components, opt);
}

AnisotropyResult residue_anisotropy(const GradedAlgebra& G, const GradedInvolution& s, const AnisotropyOptions& opt) {
    return anisotropy(*G.B, s.S, {G.zero_component()}, opt);
}

// ---- idempotents ----

std::string graded_simple_defect(const GradedAlgebra& G) {
    const Algebra& B = *G.B;
    auto ss = check_graded_semisimple(G);
    if (!ss.semisimple) return "graded radical of dimension " + std::to_string(ss.graded_radical.size());
    auto Z = center(B);
    std::vector<Vec> Z0;
    std::size_t total = 0;
    for (std::size_t c = 0; c < G.components.size(); ++c) {
        auto Zc = intersect(Z, G.component_span(c), G.residue_field(), G.dim());
        total += Zc.size();
        if (Zc.empty()) continue;
        if (all_zero(G.component_grade[c])) Z0 = Zc;
        if (!B.inverse(Zc[0])) return "graded center has a noninvertible homogeneous element";
    }
    if (total != Z.size()) return "center is not spanned by homogeneous elements";
    if (Z0.size() > 1) {
        auto ff = FiniteField::from(G.residue_field());
        if (!ff) throw UnsupportedError("cannot decide whether the degree-0 center is a field");
        std::vector<int> x(Z0.size(), 0);
        for (;;) {
            std::size_t k = Z0.size();
            while (k-- > 0) {
                if (++x[k] < ff->q()) break;
                x[k] = 0;
            }
            if (k == std::size_t(-1)) break;
            Vec z = B.zero();
            for (std::size_t a = 0; a < Z0.size(); ++a) z = z + scale(Z0[a], ff->decode(x[a]));
            if (!B.inverse(z)) return "degree-0 center has zero divisors";
        }
    }
    return {};
}

Vec ideal_idempotent(const GradedAlgebra& G, const std::vector<Vec>& gens) {
    const Algebra& B = *G.B;
    std::string why = graded_simple_defect(G);
    if (!why.empty()) throw std::invalid_argument("not graded simple: " + why);
    for (const auto& g : gens) {
        bool hom = is_zero(g);
        for (std::size_t c = 0; c < G.components.size() && !hom; ++c)
            hom = intersect({g}, G.component_span(c), G.residue_field(), G.dim()).size() == 1;
        if (!hom) throw std::invalid_argument("generator " + B.str(g) + " is not homogeneous");
    }
    auto I = right_ideal_closure(B, gens);
    if (I.empty()) return B.zero();
    auto zc = G.zero_component();
    if (zc.empty()) throw std::logic_error("no degree-0 component");
    std::vector<Vec> span0;
    for (auto i : zc) span0.push_back(B.basis(i));
    auto U = intersect(I, span0, G.residue_field(), G.dim());
    // e = sum c_r U_r with e x = x for x in I
    Mat M;
    Vec rhs;
    for (const auto& x : I) {
        std::vector<Vec> cols;
        for (const auto& u : U) cols.push_back(B.mul(u, x));
        Mat C = from_columns(cols);
        for (std::size_t k = 0; k < B.dim(); ++k) {
            M.push_back(U.empty() ? Vec{} : C[k]);
            rhs.push_back(x[k]);
        }
    }
    std::optional<Vec> c = U.empty() ? std::nullopt : solve(M, rhs);
    if (!c) throw std::logic_error("no degree-0 left identity in the ideal");
    Vec e = B.zero();
    for (std::size_t r = 0; r < U.size(); ++r) e = e + scale(U[r], (*c)[r]);
    if (B.mul(e, e) != e || right_ideal_closure(B, {e}).size() != I.size())
        throw std::logic_error("ideal idempotent check failed");
    return e;
}

std::string graded_dump(const GradedAlgebra& G, const GradedInvolution* s) {
    const Algebra& B = *G.B;
    std::ostringstream os;
    os << "residue field: " << G.residue_field()->describe() << "\n";
    os << "dimension: " << B.dim() << ", components: " << G.components.size() << "\n";
    for (std::size_t c = 0; c < G.components.size(); ++c) {
        os << "  [" << grade_str(G.component_grade[c]) << "] dim " << G.components[c].size() << ":";
        for (auto i : G.components[c]) os << " " << B.names()[i];
        os << "\n";
    }
    os << "products:\n";
    for (std::size_t i = 0; i < B.dim(); ++i)
        for (std::size_t j = 0; j < B.dim(); ++j) {
            const Vec& e = B.table()[i][j];
            if (is_zero(e)) continue;
            os << "  " << B.names()[i] << " * " << B.names()[j] << " = " << B.str(e) << "\n";
        }
    if (s) {
        os << "involution:\n";
        for (std::size_t i = 0; i < B.dim(); ++i)
            os << "  " << B.names()[i] << " -> " << B.str(column(s->S, i)) << "\n";
    }
    return os.str();
}

}  // namespace gk

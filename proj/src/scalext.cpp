#include "gk/scalext.hpp"

#include <cmath>
#include <random>

#include "gk/ffield.hpp"

namespace gk {

namespace {

bool same_vec(const Vec& a, const Vec& b) { return is_zero(a - b); }

Elem trace(const Mat& M) {
    Elem t = Elem::zero(M.empty() ? FieldPtr{} : M[0][0].field());
    for (std::size_t i = 0; i < M.size(); ++i) t += M[i][i];
    return t;
}

ValueLattice lattice_of(const Valuation& v, const std::vector<Value>& extra) {
    std::vector<Value> gens = v.group().basis();
    gens.insert(gens.end(), extra.begin(), extra.end());
    return ValueLattice(v.rank(), gens);
}

}  // namespace

// ---- the extension ----

std::size_t GaloisExtension::compose(std::size_t a, std::size_t b) const {
    Mat c = group[a] * group[b];
    for (std::size_t k = 0; k < group.size(); ++k)
        if (equal(c, group[k])) return k;
    throw std::logic_error("group not closed under composition");
}

std::size_t GaloisExtension::inverse(std::size_t a) const {
    for (std::size_t k = 0; k < group.size(); ++k)
        if (compose(a, k) == 0) return k;
    throw std::logic_error("group element without inverse");
}

bool GaloisExtension::central(std::size_t a) const {
    for (std::size_t k = 0; k < group.size(); ++k)
        if (compose(a, k) != compose(k, a)) return false;
    return true;
}

Vec GaloisExtension::coords(const Elem& x) const { return {Elem(field(), x.a()), Elem(field(), x.b())}; }

Elem GaloisExtension::element(const Vec& c) const { return Elem(big_field(), c[0].a(), c[1].a()); }

GaloisExtension quadratic_extension(const ValPtr& v, const Elem& d, const std::string& name) {
    auto rep = check_unique_extension(*v, d);
    if (!rep.unique) throw UnsupportedError("valuation does not extend uniquely: " + rep.certificate);
    GaloisExtension L;
    L.v = v;
    L.d = d;
    const FieldPtr& F = v->field();
    L.vL = std::make_shared<QuadraticValuation>(make_quadratic(F, d.a(), name), v);
    std::vector<std::vector<Vec>> t(2, std::vector<Vec>(2, zero_vec(F, 2)));
    t[0][0][0] = t[0][1][1] = t[1][0][1] = Elem::one(F);
    t[1][1][0] = d;
    L.alg = std::make_shared<Algebra>(F, std::vector<std::string>{"1", name}, t);
    Mat conj = identity(F, 2);
    conj[1][1] = -Elem::one(F);
    L.group = {identity(F, 2), conj};
    L.trace_form = zero_mat(F, 2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) L.trace_form[i][j] = trace(L.alg->left(L.alg->mul(L.alg->basis(i), L.alg->basis(j))));
    Value vs = L.vL->val(Elem::theta(L.vL->field()));
    L.norm = std::make_shared<SplitNorm>(v, std::vector<Vec>{unit_vec(F, 2, 0), unit_vec(F, 2, 1)},
                                         std::vector<Value>{v->zero_value(), vs});
    L.kind = L.vL->ramified() ? "ramified" : "unramified";
    return L;
}

// ---- separability idempotent ----

IdempotentFamily separability_idempotent(const GaloisExtension& L) {
    const FieldPtr& F = L.field();
    const Algebra& K = *L.alg;
    auto Tinv = inverse(L.trace_form);
    if (!Tinv) throw std::invalid_argument("degenerate trace form");
    IdempotentFamily f;
    f.LL = tensor_algebra(L.alg, L.alg);
    const Algebra& LL = *f.LL;
    const std::size_t n = K.dim();
    f.e = LL.zero();
    for (std::size_t i = 0; i < n; ++i) {
        Vec dual = zero_vec(F, n);
        for (std::size_t j = 0; j < n; ++j) dual[j] = (*Tinv)[j][i];
        f.e = f.e + kron(K.basis(i), dual);
    }
    Involution id{identity(F, n)};
    for (const auto& g : L.group) f.family.push_back(tensor_involution(L.alg, id, L.alg, Involution{g}).apply(f.e));

    Vec mu = K.zero();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!f.e[i * n + j].is_zero()) mu = mu + scale(K.mul(K.basis(i), K.basis(j)), f.e[i * n + j]);
    f.maps_to_one = same_vec(mu, K.one());

    f.balanced = f.twisted = f.diagonal_invariant = f.value_zero = true;
    auto vv = tensor(L.norm, L.norm);
    for (std::size_t i = 0; i < n; ++i) {
        Vec x = K.basis(i);
        f.balanced = f.balanced && same_vec(LL.mul(f.e, kron(x, K.one())), LL.mul(f.e, kron(K.one(), x)));
        for (std::size_t g = 0; g < L.order(); ++g)
            f.twisted = f.twisted && same_vec(LL.mul(f.family[g], kron(x, K.one())),
                                              LL.mul(f.family[g], kron(K.one(), L.group[g] * x)));
    }
    Vec sum = LL.zero();
    f.orthogonal = true;
    for (std::size_t g = 0; g < L.order(); ++g) {
        sum = sum + f.family[g];
        Involution gg{L.group[g]};
        f.diagonal_invariant = f.diagonal_invariant && same_vec(tensor_involution(L.alg, gg, L.alg, gg).apply(f.e), f.e);
        f.value_zero = f.value_zero && vv->eval(f.family[g]) == L.v->zero_value();
        for (std::size_t h = 0; h < L.order(); ++h) {
            Vec p = LL.mul(f.family[g], f.family[h]);
            f.orthogonal = f.orthogonal && (g == h ? same_vec(p, f.family[g]) : is_zero(p));
        }
    }
    f.sums_to_one = same_vec(sum, LL.one());
    return f;
}

// ---- L inside D ----

Vec EmbeddedField::embed(const Vec& l) const { return scale(D.D->one(), l[0]) + scale(gen, l[1]); }

EmbeddedField embed_field(const DivisionRing& D, const GaloisExtension& L, const Vec& gen) {
    if (!same_field(D.base_field(), L.field())) throw std::invalid_argument("subfield over a different base");
    if (!same_vec(D.D->mul(gen, gen), D.D->scalar(L.d))) throw std::invalid_argument("generator does not square to d");
    return {D, L, gen};
}

DIotaDecomposition d_iota_decomposition(const EmbeddedField& E) {
    const Algebra& D = *E.D.D;
    const GaloisExtension& L = E.L;
    const Valuation& v = *L.v;
    const std::size_t n = D.dim();
    DIotaDecomposition r;
    Vec s = unit_vec(L.field(), 2, 1);
    for (std::size_t g = 0; g < L.order(); ++g) {
        Vec gs = E.embed(L.group[g] * s);
        r.parts.push_back(kernel(D.left(E.gen) - D.right(gs)));
    }
    r.centralizer = r.parts[0];
    const std::size_t c = r.centralizer.size();
    if (c == 0) throw std::logic_error("empty centralizer");
    std::vector<Vec> all;
    for (const auto& p : r.parts) {
        if (p.size() % c) throw std::logic_error("D_g is not a C-space");
        r.dims_over_C.push_back(p.size() / c);
        all.insert(all.end(), p.begin(), p.end());
    }
    r.direct_sum = all.size() == n && span_basis(all).size() == n;

    r.gamma_D = lattice_of(v, E.D.w->values());
    r.gamma_C = lattice_of(v, E.D.w->restrict(r.centralizer)->values());
    for (const auto& p : r.parts) {
        if (p.empty()) throw std::logic_error("empty D_g");
        auto np = E.D.w->restrict(p);
        for (const auto& g : np->values())
            if (!r.gamma_C.same_coset(g, np->values()[0])) throw std::logic_error("D_g values span several cosets");
        r.psi.push_back(r.gamma_C.canonical(np->values()[0]));
    }
    r.psi_homomorphism = r.psi_injective = true;
    for (std::size_t a = 0; a < L.order(); ++a)
        for (std::size_t b = 0; b < L.order(); ++b) {
            r.psi_homomorphism = r.psi_homomorphism && r.gamma_C.same_coset(r.psi[L.compose(a, b)], r.psi[a] + r.psi[b]);
            if (a != b && r.gamma_C.same_coset(r.psi[a], r.psi[b])) r.psi_injective = false;
        }
    r.ramification = r.gamma_D.index_of(r.gamma_C);
    // residue dimensions: dim / [Gamma : Gamma_F]
    ValueLattice gF = lattice_of(v, {});
    Z eD = r.gamma_D.index_of(gF), eC = r.gamma_C.index_of(gF);
    bool same_residue = Z(n) * eC == Z(c) * eD;
    r.totally_ramified = r.ramification == Z(n / c) && same_residue;
    return r;
}

// ---- D (x) L ----

std::vector<Vec> ExtendedAlgebra::d_to_A(const std::vector<Vec>& ds) const {
    std::vector<Vec> out;
    const FieldPtr& F = A->field();
    for (const auto& d : ds) out.push_back(kron(d, unit_vec(F, 2, 0)));
    return out;
}

ExtendedAlgebra extend_division_algebra(const EmbeddedField& E, const IdempotentFamily& fam) {
    ExtendedAlgebra X;
    X.A = tensor_algebra(E.D.D, E.L.alg);
    X.norm = tensor(E.D.w, E.L.norm);
    const FieldPtr& F = E.L.field();
    for (const auto& e : fam.family) {
        Vec x = X.A->zero();
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b)
                if (!e[a * 2 + b].is_zero()) x = x + scale(kron(E.embed(unit_vec(F, 2, a)), unit_vec(F, 2, b)), e[a * 2 + b]);
        X.idempotents.push_back(x);
    }
    return X;
}

ResidueIdempotents residue_idempotent_structure(const EmbeddedField& E) {
    auto fam = separability_idempotent(E.L);
    auto X = extend_division_algebra(E, fam);
    auto dec = d_iota_decomposition(E);
    GradedAlgebra G = build_graded(X.A, X.norm);
    const Algebra& B = *G.B;
    ResidueIdempotents r;
    auto Z0 = G.zero_component();
    r.a0_dim = Z0.size();
    for (const auto& e : X.idempotents) {
        auto L = G.lead(e);
        if (!L || !(L->first == G.v->zero_value())) throw std::logic_error("separability idempotent not of value 0");
        r.tilde.push_back(L->second);
    }
    const std::size_t m = r.tilde.size();
    auto block = [&](std::size_t g, std::size_t h) {
        std::vector<Vec> span;
        for (auto i : Z0) span.push_back(B.mul(B.mul(r.tilde[g], B.basis(i)), r.tilde[h]));
        return span_basis(span);
    };
    r.block_dims.assign(m, std::vector<std::size_t>(m, 0));
    r.pattern_matches_psi = true;
    for (std::size_t g = 0; g < m; ++g)
        for (std::size_t h = 0; h < m; ++h) {
            r.block_dims[g][h] = block(g, h).size();
            bool same = dec.gamma_C.same_coset(dec.psi[g], dec.psi[h]);
            r.pattern_matches_psi = r.pattern_matches_psi && ((r.block_dims[g][h] > 0) == same);
        }
    auto ff = FiniteField::from(G.residue_field());
    for (std::size_t g = 0; g < m; ++g) {
        auto R = block(g, g);
        const Vec& e = r.tilde[g];
        if (R.size() <= 1) {
            r.primitive.push_back(R.size() == 1);
            r.primitive_certified.push_back(true);
            continue;
        }
        auto nontrivial_idempotent = [&](const Vec& x) {
            return !is_zero(x) && !same_vec(x, e) && same_vec(B.mul(x, x), x);
        };
        bool found = false, certified = false;
        double total = std::pow(double(ff ? ff->q() : 0), double(R.size()));
        if (ff && total <= double(1 << 20)) {
            std::vector<int> c(R.size(), 0);
            for (;;) {
                Vec x = B.zero();
                for (std::size_t k = 0; k < R.size(); ++k)
                    if (c[k]) x = x + scale(R[k], ff->decode(c[k]));
                if (nontrivial_idempotent(x)) {
                    found = true;
                    break;
                }
                std::size_t k = 0;
                for (; k < R.size(); ++k) {
                    if (++c[k] < ff->q()) break;
                    c[k] = 0;
                }
                if (k == R.size()) break;
            }
            certified = true;
        } else {
            // e R e local: nonzero elements invertible in R, sampled
            std::mt19937_64 rng(7);
            std::uniform_int_distribution<int> C(-2, 2);
            for (int t = 0; t < 200 && !found; ++t) {
                Vec x = B.zero();
                for (const auto& b : R) x = x + scale(b, Elem::of(B.field(), Q(C(rng))));
                if (is_zero(x)) continue;
                std::vector<Vec> img;
                for (const auto& b : R) img.push_back(B.mul(x, b));
                if (span_basis(img).size() < R.size()) found = true;
            }
        }
        r.primitive.push_back(!found);
        r.primitive_certified.push_back(certified);
    }
    return r;
}

// ---- isotropy of sigma (x) g ----

IsotropyReport isotropy_criterion(const EmbeddedField& E, const Involution& sigma, std::size_t g,
                                  const AnisotropyOptions& opt) {
    const GaloisExtension& L = E.L;
    if (g >= L.order()) throw std::invalid_argument("group index out of range");
    IsotropyReport r;
    Vec sg = sigma.apply(E.gen);
    bool stable = false;
    for (std::size_t k = 0; k < L.order(); ++k)
        if (same_vec(sg, E.embed(L.group[k] * unit_vec(L.field(), 2, 1)))) {
            r.sigma_L = k;
            stable = true;
        }
    if (!stable) throw std::invalid_argument("involution does not stabilize the subfield");
    auto fam = separability_idempotent(L);
    auto X = extend_division_algebra(E, fam);
    Involution S = tensor_involution(E.D.D, sigma, L.alg, Involution{L.group[g]});
    if (r.sigma_L != g || !L.central(g)) {
        r.route = r.sigma_L != g ? "restriction to the subfield differs from the twist" : "twist not central";
        for (std::size_t k = 0; k < L.order(); ++k) {
            const Vec& e = X.idempotents[k];
            if (is_zero(X.A->mul(S.apply(e), e))) {
                r.kappa = k;
                r.witness = e;
                r.verdict = "isotropic";
                return r;
            }
        }
        throw std::logic_error("no idempotent witness");
    }
    auto dec = d_iota_decomposition(E);
    GradedAlgebra G = build_graded(X.A, X.norm);
    auto gs = induce_involution(G, S);
    r.residue = graded_anisotropy(G, gs, opt);
    r.route = dec.totally_ramified ? "totally ramified over the centralizer" : "residue involution";
    if (r.residue.verdict == Verdict::Yes) {
        r.verdict = "anisotropic";
    } else if (r.residue.verdict == Verdict::No) {
        Vec x = G.lift(*r.residue.witness);
        if (is_zero(X.A->mul(S.apply(x), x))) {
            r.verdict = "isotropic";
            r.witness = x;
        } else {
            r.verdict = "undecided";
            r.route += "; residue isotropic, lift not isotropic";
        }
    } else {
        r.verdict = "undecided";
    }
    return r;
}

// ---- descent ----

DescentReport descent_equivalence(const GaloisExtension& K, const NormPtr& alpha) {
    const auto& vK = K.vL;
    const Valuation& v = *K.v;
    const FieldPtr& F = K.field();
    const FieldPtr& KF = K.big_field();
    const std::size_t n = alpha->dim();
    if (!same_field(alpha->field(), KF)) throw std::invalid_argument("norm is not over the extension");
    auto flat = [&](const Vec& x) {
        Vec out;
        for (const auto& c : x) {
            auto cc = K.coords(c);
            out.insert(out.end(), cc.begin(), cc.end());
        }
        return out;
    };
    auto unflat = [&](const Vec& y) {
        Vec out;
        for (std::size_t j = 0; j < n; ++j) out.push_back(K.element({y[2 * j], y[2 * j + 1]}));
        return out;
    };
    auto up = [&](const Vec& x) {
        Vec out;
        for (const auto& c : x) out.push_back(vK->from_base(c));
        return out;
    };
    const std::vector<Elem> kb = {Elem::one(KF), Elem::theta(KF)};
    std::vector<Vec> fb;
    std::vector<Value> fv;
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& m : kb) {
            fb.push_back(flat(scale(alpha->base()[i], m)));
            fv.push_back(alpha->values()[i] + vK->val(m));
        }
    SplitNorm aF(K.v, fb, fv);

    DescentReport r;
    std::vector<Vec> Vb;
    for (std::size_t j = 0; j < n; ++j) Vb.push_back(flat(up(unit_vec(F, n, j))));
    try {
        r.restriction = aF.restrict(Vb);
        r.restriction_is_norm = true;
    } catch (const std::invalid_argument&) {
        return r;
    }
    auto ext = extend_scalars(r.restriction, vK);
    r.tensor_equal = ext->same_as(*alpha);
    r.inequality = true;
    for (std::size_t i = 0; i < n; ++i)
        r.inequality = r.inequality && alpha->eval(ext->base()[i]) >= ext->values()[i];
    r.a = r.restriction_is_norm && r.tensor_equal;

    std::vector<std::pair<std::string, std::vector<Vec>>> cands;
    std::vector<Vec> std_base, res_base;
    for (std::size_t j = 0; j < n; ++j) std_base.push_back(up(unit_vec(F, n, j)));
    for (const auto& u : r.restriction->base()) res_base.push_back(up(u));
    cands.emplace_back("standard", std_base);
    cands.emplace_back("splitting base of the restriction", res_base);
    for (const auto& [name, base] : cands) {
        std::vector<Value> vals;
        for (const auto& b : base) vals.push_back(alpha->eval(b));
        if (SplitNorm(vK, base, vals).same_as(*alpha)) {
            r.b = true;
            r.b_base = name;
            break;
        }
    }

    // chi on the products u_i m, grouped by coset
    struct Item {
        Vec x;
        Lead lead;
    };
    std::vector<Item> items;
    r.chi_injective = true;
    for (std::size_t i = 0; i < n && r.chi_injective; ++i)
        for (const auto& m : kb) {
            Vec x = flat(scale(res_base[i], m));
            Value expect = r.restriction->values()[i] + vK->val(m);
            if (aF.eval(x) != expect) {
                r.chi_injective = false;
                r.chi_kernel = unflat(x);
                break;
            }
            items.push_back({x, *aF.lead(x)});
        }
    for (std::size_t a = 0; a < items.size() && r.chi_injective; ++a) {
        std::vector<std::size_t> grp;
        for (std::size_t b = 0; b < items.size(); ++b)
            if (items[b].lead.coset == items[a].lead.coset) grp.push_back(b);
        if (grp.front() != a) continue;
        std::vector<Vec> cols;
        for (auto b : grp) cols.push_back(items[b].lead.coords);
        auto ker = kernel(transpose(cols));
        if (ker.empty()) continue;
        Vec y = zero_vec(F, 2 * n);
        for (std::size_t k = 0; k < grp.size(); ++k) {
            const auto& it = items[grp[k]];
            if (ker[0][k].is_zero()) continue;
            Elem c = v.lift(ker[0][k]) * v.section(it.lead.coset - it.lead.degree);
            y = y + scale(it.x, c);
        }
        r.chi_injective = false;
        r.chi_kernel = unflat(y);
    }
    r.c = r.restriction_is_norm && r.chi_injective;

    ValueLattice ga = lattice_of(*vK, alpha->values());
    ValueLattice gv = lattice_of(v, r.restriction->values());
    ValueLattice gsum = gv.join(vK->group().basis());
    r.groups_add = ga.contains_lattice(gsum) && gsum.contains_lattice(ga);
    return r;
}

// ---- tensor products of graded algebras ----

TensorGradedReport tensor_graded_check(const AlgPtr& A, const NormPtr& phi, const Involution& s, const AlgPtr& B,
                                       const NormPtr& psi, const Involution& t) {
    TensorGradedReport r;
    GradedAlgebra GA = build_graded(A, phi), GB = build_graded(B, psi);
    auto AB = tensor_algebra(A, B);
    GradedAlgebra GAB = build_graded(AB, tensor(phi, psi));
    r.dim = GAB.dim();
    auto T = tensor_algebra(GA.B, GB.B);
    r.tables_agree = T->dim() == GAB.dim();
    for (std::size_t i = 0; i < T->dim() && r.tables_agree; ++i)
        for (std::size_t j = 0; j < T->dim() && r.tables_agree; ++j)
            r.tables_agree = same_vec(T->table()[i][j], GAB.B->table()[i][j]);
    auto sA = induce_involution(GA, s), sB = induce_involution(GB, t);
    auto sAB = induce_involution(GAB, tensor_involution(A, s, B, t));
    r.involutions_agree = equal(tensor_involution(GA.B, Involution{sA.S}, GB.B, Involution{sB.S}).S, sAB.S);
    return r;
}

InvarianceReport extension_invariance(const AlgPtr& A, const NormPtr& phi, const Involution& s,
                                      const GaloisExtension& K) {
    return check_invariant(tensor(phi, K.norm), tensor_involution(A, s, K.alg, Involution{K.group[0]}));
}

}  // namespace gk

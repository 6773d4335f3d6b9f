// Acceptance run: one PASS/FAIL line per criterion. Exact arithmetic throughout;
// the only tolerances are the wall-clock limits below.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "gk/ffield.hpp"
#include "gk/scalext.hpp"

using namespace gk;

namespace {

constexpr double kLimit1 = 5, kLimit2 = 1, kLimit3 = 30, kLimit4 = 10, kLimit5 = 10, kLimit6 = 20, kLimit7 = 30,
                 kLimit8 = 5;

struct Checker {
    std::vector<std::string> fails;
    std::size_t count = 0;
    void operator()(bool ok, const std::string& what) {
        ++count;
        if (!ok) fails.push_back(what);
    }
};

// instances with an involution, collected for the Springer directions
struct SpringerCase {
    std::string name;
    AlgPtr A;
    Involution s;
    NormPtr phi;
};
std::vector<SpringerCase> g_springer;

NormPtr standard_norm(const ValPtr& v, std::size_t n, std::vector<Value> vals = {}) {
    std::vector<Vec> base;
    for (std::size_t i = 0; i < n; ++i) base.push_back(unit_vec(v->field(), n, i));
    if (vals.empty()) vals.assign(n, v->zero_value());
    return std::make_shared<SplitNorm>(v, base, vals);
}

Vec qvec(const FieldPtr& F, std::initializer_list<Q> cs) {
    Vec v;
    for (const auto& c : cs) v.push_back(Elem::of(F, c));
    return v;
}

HermitianForm scalar_form(const DivisionRing& D, const std::vector<std::vector<Q>>& H) {
    DMat g;
    for (const auto& row : H) {
        g.emplace_back();
        for (const auto& c : row) g.back().push_back(Vec{Elem::of(D.base_field(), c)});
    }
    return {D, g};
}

DNorm scalar_norm(const DivisionRing& D, const std::vector<std::vector<Q>>& base, const std::vector<Value>& vals) {
    std::vector<DVec> b;
    for (const auto& col : base) {
        b.emplace_back();
        for (const auto& c : col) b.back().push_back(Vec{Elem::of(D.base_field(), c)});
    }
    return {D, b, vals};
}

Vec random_vec(const FieldPtr& F, std::size_t n, std::mt19937& rng) {
    std::uniform_int_distribution<int> C(-6, 6);
    Vec x;
    for (std::size_t i = 0; i < n; ++i) x.push_back(Elem::of(F, Q(C(rng))));
    return x;
}

// ---- 1 ----

Checker quaternion_golden() {
    Checker ck;
    auto QQ = make_field(0);
    auto v3 = padic(3);
    Elem m1 = Elem::of(QQ, -1);
    auto A = quaternion_algebra(m1, m1);
    auto phi = standard_norm(v3, 4);
    auto s = conjugation_involution(A);
    g_springer.push_back({"quaternion (-1,-1) 3-adic", A, s, phi});

    auto g = check_gauge(A, phi);
    ck(g.is_norm, "norm");
    ck(g.is_semisimple, "graded semisimple");
    ck(g.is_tame && *g.is_tame, "tame");
    auto G = build_graded(A, phi);
    auto z = G.zero_component();
    ck(z.size() == 4, "residue algebra has dimension 4");
    ck(check_graded_semisimple(G).radical.empty(), "residue radical is zero");
    // A_0 against (-1,-1) over F_3 in the basis 1, i, j, k
    auto R = G.residue_field();
    auto H3 = quaternion_algebra(Elem::of(R, -1), Elem::of(R, -1));
    bool same = R->p == 3 && G.B->dim() == 4;
    for (std::size_t i = 0; same && i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) same = same && G.B->table()[i][j] == H3->table()[i][j];
    ck(same, "residue algebra is (-1,-1) over F_3");

    ck(check_invariant(phi, s).invariant, "conjugation invariant");
    auto sp = springer_criterion(A, s, phi);
    ck(sp.residue.verdict == Verdict::No && sp.residue.witness.has_value(), "residue involution isotropic with witness");
    if (sp.residue.witness) {
        Vec lift = G.lift(*sp.residue.witness);
        ck(reduced_norm_value(*v3, m1, m1, lift) > Value{0}, "lifted witness has reduced norm of positive value");
    }
    auto spec = check_special(A, s, phi);
    ck(spec.special == Verdict::No && spec.witness.has_value(), "not special, with witness");
    if (spec.witness) {
        const Vec& x = *spec.witness;
        ck(phi->eval(A->mul(s.apply(x), x)) != phi->eval(x) + phi->eval(x), "witness breaks phi(s(x)x) = 2 phi(x)");
    }
    ck(mainthcor_probe(A, s, phi).verdict == "no special gauge", "no special gauge exists");

    std::size_t units = 0, unstable = 0;
    for (const char* u : {"1+i", "1+i+j", "2+i", "1+j", "1+i+j+k", "i+j+k", "3+i"}) {
        Vec x = A->parse(u);
        auto phu = conjugate_norm(*A, *phi, x);
        bool inv = check_invariant(phu, s).invariant;
        ck(inv, std::string("phi_u invariant for u = ") + u);
        ++units;
        if (!is_stable_unit(G, x)) ++unstable;
    }
    ck(units >= 5 && unstable >= 1, "at least five units, one of them not stable");
    return ck;
}

// ---- 2 ----

Checker char_two_remark() {
    Checker ck;
    auto QQ = make_field(0);
    auto M2 = matrix_algebra(QQ, 2);
    Mat S = zero_mat(QQ, 4, 4);
    S[3][0] = S[1][1] = S[2][2] = S[0][3] = Elem::one(QQ);
    Involution s{S};
    auto phi = standard_norm(padic(2), 4);
    g_springer.push_back({"M2 at 2 with diagonal swap", M2, s, phi});
    ck(classify_involution(*M2, s).type == InvolutionType::Orthogonal, "sigma orthogonal");
    auto G = build_graded(M2, phi);
    ck(G.residue_field()->p == 2, "residue characteristic 2");
    auto gs = induce_involution(G, s);
    auto c = classify_involution(*G.B, gs.tilde());
    ck(c.one_in_symd, "1~ in Symd");
    ck(c.type == InvolutionType::Symplectic, "residue involution symplectic");
    return ck;
}

// ---- 3 ----

Checker eqcond_suite() {
    Checker ck;
    std::mt19937 rng(17);
    auto QQ = make_field(0);
    const std::vector<int> primes = {2, 3, 5, 7};
    const std::vector<Q> entries = {1, 2, 3, 5, 6, 7, 10, 14, Q(1, 3), 9, 25};
    std::uniform_int_distribution<int> P(0, 3), E(0, int(entries.size()) - 1), H(-2, 2), N(2, 3);
    std::size_t special = 0, refuted = 0;
    for (int inst = 0; inst < 24; ++inst) {
        auto v = padic(primes[P(rng)]);
        auto D = DivisionRing::field(v);
        const std::size_t n = N(rng);
        std::vector<std::vector<Q>> gram(n, std::vector<Q>(n, 0)), base(n, std::vector<Q>(n, 0));
        std::vector<Value> vals;
        Value c{Q(H(rng), 2)};
        for (std::size_t i = 0; i < n; ++i) {
            gram[i][i] = entries[E(rng)];
            base[i][i] = 1;
            vals.push_back(v->val(Elem::of(QQ, gram[i][i])).scaled(Q(1, 2)) + c);
        }
        auto A = matrix_algebra(QQ, n);
        auto phi = end_norm(scalar_norm(D, base, vals));
        auto s = adjoint_involution(scalar_form(D, gram));
        const std::string tag = "instance " + std::to_string(inst);
        g_springer.push_back({"eqcond " + tag, A, s, phi});
        auto sp = check_special(A, s, phi);
        ck(sp.invariant, tag + " invariant");
        ck(sp.graded.verdict != Verdict::Undecided, tag + " anisotropy decided");
        ck(sp.search_witness.has_value() == (sp.graded.verdict == Verdict::No), tag + " search and anisotropy agree");
        if (sp.special != Verdict::Yes) {
            ++refuted;
            continue;
        }
        ++special;
        std::size_t pairs = 0;
        Vec e11 = A->basis(0);
        for (int t = 0; pairs < 100 && t < 1000; ++t) {
            Vec x = A->mul(A->mul(random_vec(QQ, n * n, rng), e11), random_vec(QQ, n * n, rng));
            if (is_zero(x)) continue;
            auto ker = kernel(A->left(t % 2 ? x : s.apply(x)));
            Vec y = zero_vec(QQ, n * n);
            for (const auto& k : ker) y = y + scale(k, Elem::of(QQ, Q(int(rng() % 7) - 3)));
            if (t % 2) y = s.apply(y);
            if (is_zero(y)) continue;
            bool orth = is_zero(t % 2 ? A->mul(x, s.apply(y)) : A->mul(s.apply(x), y));
            ck(orth, tag + " pair orthogonal");
            ck(phi->eval(x + y) == vmin(phi->eval(x), phi->eval(y)), tag + " sum of orthogonal pair");
            ++pairs;
        }
        ck(pairs == 100, tag + " 100 orthogonal pairs");
    }
    ck(special + refuted >= 20, "at least 20 instances");
    ck(special >= 1 && refuted >= 1, "both outcomes present");
    return ck;
}

// ---- 4 ----

struct FormCase {
    std::string name;
    DNorm alpha;
    HermitianForm h;
};

std::vector<FormCase> form_cases() {
    std::vector<FormCase> out;
    auto v3 = padic(3), v2 = padic(2), v5 = padic(5);
    auto D3 = DivisionRing::field(v3), D2 = DivisionRing::field(v2), D5 = DivisionRing::field(v5);
    Value h{Q(1, 2)};
    out.push_back({"v3 <1,3> (0,1/2)", scalar_norm(D3, {{1, 0}, {0, 1}}, {Value{0}, h}), scalar_form(D3, {{1, 0}, {0, 3}})});
    out.push_back({"v3 <1,1> (0,0)", scalar_norm(D3, {{1, 0}, {0, 1}}, {Value{0}, Value{0}}), scalar_form(D3, {{1, 0}, {0, 1}})});
    out.push_back({"v3 <1,1> (0,1)", scalar_norm(D3, {{1, 0}, {0, 1}}, {Value{0}, Value{1}}), scalar_form(D3, {{1, 0}, {0, 1}})});
    out.push_back({"v3 <2,9,3>", scalar_norm(D3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {Value{0}, Value{1}, h}),
                   scalar_form(D3, {{2, 0, 0}, {0, 9, 0}, {0, 0, 3}})});
    out.push_back({"v3 <2,9,3> shifted", scalar_norm(D3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {Value{2}, Value{3}, Value{Q(5, 2)}}),
                   scalar_form(D3, {{2, 0, 0}, {0, 9, 0}, {0, 0, 3}})});
    out.push_back({"v3 <2,9,3> off", scalar_norm(D3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {Value{0}, Value{0}, h}),
                   scalar_form(D3, {{2, 0, 0}, {0, 9, 0}, {0, 0, 3}})});
    out.push_back({"v3 skew base", scalar_norm(D3, {{1, 1}, {0, 1}}, {Value{0}, h}), scalar_form(D3, {{1, -1}, {-1, 4}})});
    out.push_back({"v3 skew base wrong", scalar_norm(D3, {{1, 0}, {0, 1}}, {Value{0}, h}), scalar_form(D3, {{1, -1}, {-1, 4}})});
    out.push_back({"v2 hyperbolic", scalar_norm(D2, {{1, 0}, {0, 1}}, {Value{0}, Value{0}}), scalar_form(D2, {{0, 1}, {1, 0}})});
    out.push_back({"v2 hyperbolic (1,-1)", scalar_norm(D2, {{1, 0}, {0, 1}}, {Value{1}, Value{-1}}), scalar_form(D2, {{0, 1}, {1, 0}})});
    out.push_back({"v2 hyperbolic (1,0)", scalar_norm(D2, {{1, 0}, {0, 1}}, {Value{1}, Value{0}}), scalar_form(D2, {{0, 1}, {1, 0}})});
    out.push_back({"v5 <1,5,25>", scalar_norm(D5, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {Value{0}, h, Value{1}}),
                   scalar_form(D5, {{1, 0, 0}, {0, 5, 0}, {0, 0, 25}})});
    out.push_back({"v5 <1,2>", scalar_norm(D5, {{1, 0}, {0, 1}}, {Value{0}, Value{0}}), scalar_form(D5, {{1, 0}, {0, 2}})});
    auto qd = quaternion_division(v3, Elem::of(v3->field(), -1), Elem::of(v3->field(), 3)).ring;
    const auto& QD = *qd.D;
    Vec one = QD.one(), zero = QD.zero(), three = QD.scalar(Elem::of(v3->field(), 3));
    out.push_back({"quaternion <1>", DNorm{qd, {{one}}, {Value{0}}}, HermitianForm{qd, {{one}}}});
    out.push_back({"quaternion <1,3>", DNorm{qd, {{one, zero}, {zero, one}}, {Value{0}, h}},
                   HermitianForm{qd, {{one, zero}, {zero, three}}}});
    out.push_back({"quaternion <1,1> j", DNorm{qd, {{QD.parse("j"), zero}, {zero, one}}, {h, Value{0}}},
                   HermitianForm{qd, {{one, zero}, {zero, one}}}});
    out.push_back({"quaternion <1,1> bad", DNorm{qd, {{one, zero}, {zero, one}}, {h, Value{0}}},
                   HermitianForm{qd, {{one, zero}, {zero, one}}}});
    return out;
}

Checker dual_norm_suite() {
    Checker ck;
    std::size_t fourway = 0, adjoint = 0, yes = 0, no = 0;
    for (const auto& c : form_cases()) {
        DNorm sharp = dual_norm(c.alpha, c.h);
        ck(dual_norm(sharp, c.h).flatten()->same_as(*c.alpha.flatten()), c.name + ": double dual");
        for (Value g : {Value{Q(3, 2)}, Value{-1}, Value{Q(1, 3)}})
            ck(dual_norm(c.alpha.shifted(-g), c.h).flatten()->same_as(*sharp.shifted(g).flatten()), c.name + ": shifted dual");
        auto r = compat_conditions(c.alpha, c.h);
        ck(r.agree(), c.name + ": four conditions agree");
        ++fourway;
        (r.invariant ? yes : no)++;
        if (!r.invariant) continue;
        DNorm half = c.alpha.shifted(-r.gap->scaled(Q(1, 2)));
        auto a = adjoint_residue_check(half, c.h);
        ck(a.equal && a.checked == half.dim() * half.dim() * c.alpha.D.dim(), c.name + ": adjoint residue " + a.note);
        ++adjoint;
        auto A = matrix_algebra(c.alpha.D, half.dim());
        g_springer.push_back({"form " + c.name, A, adjoint_involution(c.h), end_norm(half)});
    }
    ck(fourway >= 10, "at least 10 compatibility instances");
    ck(adjoint >= 5, "at least 5 adjoint instances");
    ck(yes >= 1 && no >= 1, "both outcomes present");
    return ck;
}

// ---- 5 ----

struct Rank2 {
    FieldPtr F = make_field(0, {"x", "y"});
    ValPtr v = monomial(F, {Value{1, 0}, Value{0, 1}});
    CoarsenedValuation cv = coarsen_valuation(v, 1);
};

Checker composition_suite() {
    Checker ck;
    Rank2 r;
    const FieldPtr& R = r.cv.u->field();
    std::vector<Vec> std4;
    for (std::size_t i = 0; i < 4; ++i) std4.push_back(unit_vec(r.F, 4, i));
    std::vector<Vec> rstd2 = {unit_vec(R, 2, 0), unit_vec(R, 2, 1)};
    std::vector<Vec> b4 = {qvec(r.F, {1, 0, 0, 1}), qvec(r.F, {0, 1, 0, 0}), qvec(r.F, {0, 1, 1, 0}), qvec(r.F, {0, 0, 0, 1})};
    b4[3][0] = parse_elem(r.F, "x + y");
    auto beta = std::make_shared<SplitNorm>(r.cv.w, b4, std::vector<Value>{Value{0}, Value{1}, Value{-2}, Value{3}});
    auto good = std::make_shared<SplitNorm>(
        r.cv.u, std::vector<Vec>{qvec(R, {1, 1, 0, 0}), qvec(R, {0, 1, 0, 0}), qvec(R, {0, 0, 1, 0}), qvec(R, {0, 0, 1, 1})},
        std::vector<Value>{Value{0, 0}, Value{0, 2}, Value{0, Q(1, 2)}, Value{0, -1}});
    auto root = std::make_shared<EmbeddedRoot>(r.cv.u, Elem::one(R), parse_elem(R, "y"));
    auto rest = std::make_shared<SplitNorm>(r.cv.u, rstd2, std::vector<Value>{Value{0, 0}, Value{0, 1}});
    auto bad = std::make_shared<DirectSum>(std::vector<VFPtr>{root, rest});

    struct Fam {
        std::string name;
        VFPtr a;
        bool expect;
    };
    std::vector<Fam> family = {
        {"composed split", std::make_shared<ComposedRule>(r.cv, beta, good), true},
        {"composed with embedded root", std::make_shared<ComposedRule>(r.cv, beta, bad), false},
        {"split rank 2", std::make_shared<SplitNorm>(r.v, std4, std::vector<Value>{Value{0, 0}, Value{1, 2}, Value{Q(1, 2), 1}, Value{Q(1, 2), -4}}), true},
    };
    std::size_t nonnorm = 0;
    for (const auto& f : family) {
        bool i = check_norm(*f.a).verdict == Verdict::Yes;
        auto co = coarsen(f.a, r.cv);
        bool beta_norm = check_norm(*co.beta).verdict == Verdict::Yes;
        bool iii = beta_norm, ii = beta_norm;
        for (const auto& c : co.components) iii = iii && check_norm(*c.alpha).verdict == Verdict::Yes;
        for (const auto& c : co.components)
            for (int shift : {-1, 0, 2})
                ii = ii && check_norm(*component_at(f.a, r.cv, c.lambda + Value{shift})).verdict == Verdict::Yes;
        ck(i == f.expect, f.name + ": norm verdict");
        ck(i == ii && ii == iii, f.name + ": three-way agreement");
        if (!i) ++nonnorm;
    }
    ck(nonnorm >= 1, "a non-norm is present");

    auto M2 = matrix_algebra(r.F, 2);
    Value z{0, 0};
    struct Case {
        std::vector<Value> vals;
        bool alpha;
    };
    std::vector<Case> cases = {{{z, Value{0, 1}, Value{0, -1}, z}, true},  {{z, Value{0, -1}, z, z}, false},
                               {{z, Value{-1, 0}, z, z}, false},            {{z, Value{1, 3}, Value{-1, -3}, z}, true},
                               {{z, Value{1, 0}, Value{-1, 1}, z}, false},  {{z, z, z, z}, true}};
    std::size_t beta_ok_star_bad = 0, beta_bad = 0, good_cases = 0;
    for (std::size_t k = 0; k < cases.size(); ++k) {
        auto alpha = standard_norm(r.v, 4, cases[k].vals);
        auto rep = composed_gauge(M2, alpha, r.cv);
        std::string tag = "gauge case " + std::to_string(k);
        ck(rep.alpha_gauge == cases[k].alpha, tag + ": gauge verdict");
        ck(rep.alpha_gauge == (rep.beta_gauge && rep.star_gauge), tag + ": composition criterion");
        ck(rep.alpha_gauge == check_gauge(M2, alpha).gauge(), tag + ": matches direct gauge check");
        if (rep.alpha_gauge) ++good_cases;
        if (!rep.beta_gauge) ++beta_bad;
        if (rep.beta_gauge && !rep.star_gauge) ++beta_ok_star_bad;
        if (rep.alpha_gauge && cases[k].vals[1] == cases[k].vals[2])
            g_springer.push_back({tag + " with transpose", M2, transpose_involution(r.F, 2), alpha});
    }
    ck(good_cases >= 1 && beta_bad >= 1 && beta_ok_star_bad >= 1, "both directions with failures");
    return ck;
}

// ---- 6 ----

struct Symbol {
    FieldPtr F;
    ValPtr v;
    DivisionRing D;
    GaloisExtension L;
    EmbeddedField E;
};

Symbol symbol_instance(unsigned long p) {
    auto F = make_field(p, {"x", "y"});
    auto v = monomial(F, {Value{1, 0}, Value{0, 1}});
    Elem x = Elem::var(F, 0), y = Elem::var(F, 1);
    auto D = quaternion_division(v, x, y).ring;
    auto L = quadratic_extension(v, x, "l");
    auto E = embed_field(D, L, D.D->parse("i"));
    return {F, v, D, L, E};
}

Elem rand_xy(const FieldPtr& F, std::mt19937& rng) {
    std::uniform_int_distribution<int> C(-3, 3), E(0, 2);
    Elem e = Elem::zero(F);
    for (int t = 0; t < 2; ++t) e += Elem::of(F, C(rng)) * Elem::var(F, 0).pow(E(rng)) * Elem::var(F, 1).pow(E(rng));
    return e;
}

Checker scalar_extension_suite() {
    Checker ck;
    auto QQ = make_field(0);
    auto L5 = quadratic_extension(padic(5), Elem::of(QQ, 2), "r");
    auto f5 = separability_idempotent(L5);
    ck(L5.kind == "unramified", "sqrt2 at 5 unramified");
    ck(f5.e == qvec(QQ, {Q(1, 2), 0, 0, Q(1, 4)}), "sqrt2 idempotent");
    ck(f5.ok() && f5.value_zero, "sqrt2 idempotent family");
    auto L3 = quadratic_extension(padic(3), Elem::of(QQ, 3), "r");
    auto f3 = separability_idempotent(L3);
    ck(L3.kind == "ramified", "sqrt3 at 3 ramified");
    ck(f3.e == qvec(QQ, {Q(1, 2), 0, 0, Q(1, 6)}), "sqrt3 idempotent");
    ck(f3.ok() && f3.value_zero, "sqrt3 idempotent family");

    auto S = symbol_instance(0);
    const auto& A = *S.D.D;
    auto dec = d_iota_decomposition(S.E);
    ck(dec.dims_over_C == std::vector<std::size_t>{1, 1}, "D_g one-dimensional over C");
    ck(dec.direct_sum, "D is the direct sum of the D_g");
    ck(dec.psi_homomorphism, "psi homomorphism");
    ck(dec.psi_injective == dec.totally_ramified && dec.totally_ramified, "psi injective iff totally ramified (ramified case)");
    std::mt19937 rng(3);
    int pairs = 0;
    while (pairs < 50) {
        Vec a = scale(A.parse("1"), rand_xy(S.F, rng)) + scale(A.parse("i"), rand_xy(S.F, rng));
        Vec b = scale(A.parse("j"), rand_xy(S.F, rng)) + scale(A.parse("k"), rand_xy(S.F, rng));
        if (is_zero(a) || is_zero(b)) continue;
        ck(S.D.val(a + b) == vmin(S.D.val(a), S.D.val(b)), "min formula on D_1 + D_g");
        ++pairs;
    }
    auto res = residue_idempotent_structure(S.E);
    for (std::size_t g = 0; g < res.primitive.size(); ++g)
        ck(res.primitive[g] && res.primitive_certified[g], "e~_g primitive");
    ck(res.block_dims == std::vector<std::vector<std::size_t>>{{1, 0}, {0, 1}}, "block vanishing pattern");
    ck(res.pattern_matches_psi, "pattern matches psi");
    g_springer.push_back({"symbol (x,y) conjugation", S.D.D, conjugation_involution(S.D.D), S.D.w});

    // unramified subfield: psi not injective, not totally ramified
    auto Fx = make_field(0, {"x"});
    auto vx = monomial(Fx, {Value{1}});
    auto qd = quaternion_division(vx, Elem::of(Fx, -1), Elem::of(Fx, -1));
    auto Lx = quadratic_extension(vx, Elem::of(Fx, -1), "l");
    auto Ex = embed_field(qd.ring, Lx, qd.ring.D->parse("i"));
    auto dx = d_iota_decomposition(Ex);
    ck(!dx.psi_injective && !dx.totally_ramified && dx.psi_homomorphism, "unramified subfield: psi not injective");
    ck(residue_idempotent_structure(Ex).pattern_matches_psi, "unramified subfield: pattern matches psi");
    return ck;
}

// ---- 7 ----

Involution diag_involution(const FieldPtr& F, std::initializer_list<int> signs) {
    Mat S = zero_mat(F, signs.size(), signs.size());
    std::size_t i = 0;
    for (int s : signs) {
        S[i][i] = Elem::of(F, s);
        ++i;
    }
    return {S};
}

Checker isotropy_suite() {
    Checker ck;
    for (unsigned long p : {0ul, 3ul, 5ul}) {
        auto S = symbol_instance(p);
        const std::string tag = "p = " + std::to_string(p);
        auto orth = diag_involution(S.F, {1, 1, 1, -1});
        auto conj = conjugation_involution(S.D.D);
        auto fam = separability_idempotent(S.L);
        auto X = extend_division_algebra(S.E, fam);
        for (auto [sigma, g] : {std::pair{conj, 0}, std::pair{orth, 1}}) {
            auto r = isotropy_criterion(S.E, sigma, g);
            auto Sg = tensor_involution(S.D.D, sigma, S.L.alg, Involution{S.L.group[g]});
            ck(r.verdict == "isotropic" && r.witness && r.kappa, tag + ": mismatched case isotropic");
            if (r.witness && r.kappa) {
                ck(*r.witness == X.idempotents[*r.kappa], tag + ": witness is e_kappa");
                ck(is_zero(X.A->mul(Sg.apply(*r.witness), *r.witness)), tag + ": witness isotropic");
            }
            g_springer.push_back({"isotropy " + tag + " g=" + std::to_string(g) + " isotropic", X.A, Sg, X.norm});
        }
        for (auto [sigma, g] : {std::pair{orth, 0}, std::pair{conj, 1}}) {
            auto r = isotropy_criterion(S.E, sigma, g);
            ck(r.verdict == "anisotropic", tag + ": matching case anisotropic");
            auto Sg = tensor_involution(S.D.D, sigma, S.L.alg, Involution{S.L.group[g]});
            g_springer.push_back({"isotropy " + tag + " g=" + std::to_string(g) + " anisotropic", X.A, Sg, X.norm});
            if (p == 0) continue;
            GradedAlgebra G = build_graded(X.A, X.norm);
            auto gs = induce_involution(G, Sg);
            auto ff = *FiniteField::from(G.residue_field());
            std::size_t tried = 0;
            bool clean = true;
            for (const auto& comp : G.components) {
                std::vector<int> c(comp.size(), 0);
                for (;;) {
                    std::size_t k = 0;
                    for (; k < c.size(); ++k) {
                        if (++c[k] < ff.q()) break;
                        c[k] = 0;
                    }
                    if (k == c.size()) break;
                    Vec xi = G.B->zero();
                    for (std::size_t a = 0; a < comp.size(); ++a) xi[comp[a]] = ff.decode(c[a]);
                    clean = clean && !is_zero(G.B->mul(gs.S * xi, xi));
                    ++tried;
                }
            }
            ck(clean, tag + ": brute force finds no isotropic homogeneous element");
            ck(tried == 4u * (p * p - 1), tag + ": every homogeneous element enumerated");
        }
    }
    return ck;
}

// ---- 8 ----

Vec kvec(const GaloisExtension& K, std::initializer_list<std::pair<Q, Q>> cs) {
    Vec v;
    for (auto [a, b] : cs) v.push_back(Elem::of(K.big_field(), a) + Elem::of(K.big_field(), b) * Elem::theta(K.big_field()));
    return v;
}

Checker descent_suite() {
    Checker ck;
    auto QQ = make_field(0);
    std::vector<GaloisExtension> exts = {quadratic_extension(padic(5), Elem::of(QQ, 2), "r"),
                                         quadratic_extension(padic(3), Elem::of(QQ, 3), "r"),
                                         quadratic_extension(padic(3), Elem::of(QQ, 2), "r")};
    struct Case {
        std::size_t ext;
        std::vector<Vec> base;
        std::vector<Value> vals;
    };
    auto& K0 = exts[0];
    auto& K1 = exts[1];
    auto& K2 = exts[2];
    Value h{Q(1, 2)};
    std::vector<Case> cases = {
        {0, {kvec(K0, {{1, 0}, {0, 0}}), kvec(K0, {{0, 0}, {1, 0}})}, {Value{0}, Value{1}}},
        {0, {kvec(K0, {{1, 0}, {2, 0}}), kvec(K0, {{0, 0}, {5, 0}})}, {Value{0}, h}},
        {0, {kvec(K0, {{1, 0}, {0, 0}}), kvec(K0, {{1, 0}, {0, 1}})}, {Value{0}, Value{1}}},
        {0, {kvec(K0, {{0, 1}, {0, 0}}), kvec(K0, {{0, 0}, {1, 1}})}, {Value{0}, Value{0}}},
        {0, {kvec(K0, {{1, 0}, {0, 1}}), kvec(K0, {{0, 0}, {1, 0}})}, {Value{2}, Value{0}}},
        {1, {kvec(K1, {{1, 0}, {0, 0}}), kvec(K1, {{0, 0}, {1, 0}})}, {Value{0}, h}},
        {1, {kvec(K1, {{1, 0}, {0, 0}}), kvec(K1, {{1, 0}, {0, 1}})}, {Value{0}, Value{1}}},
        {1, {kvec(K1, {{0, 1}, {0, 0}}), kvec(K1, {{0, 0}, {3, 0}})}, {Value{0}, Value{0}}},
        {2, {kvec(K2, {{1, 0}, {0, 0}}), kvec(K2, {{1, 0}, {0, 1}})}, {Value{0}, Value{1}}},
        {2, {kvec(K2, {{1, 0}, {0, 0}}), kvec(K2, {{1, 0}, {0, 1}})}, {Value{0}, Value{-1}}},
        {2, {kvec(K2, {{1, 1}, {0, 0}}), kvec(K2, {{0, 0}, {1, 0}})}, {Value{0}, Value{0}}},
    };
    std::size_t yes = 0, no = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& c = cases[i];
        auto r = descent_equivalence(exts[c.ext], std::make_shared<SplitNorm>(exts[c.ext].vL, c.base, c.vals));
        ck(r.agree(), "case " + std::to_string(i) + ": (a), (b), (c) agree");
        (r.a ? yes : no)++;
    }
    ck(cases.size() >= 10 && yes >= 1 && no >= 1, "ten instances with both outcomes");

    // residue-escaping base (e1, e1 + e2 r)
    auto alpha = std::make_shared<SplitNorm>(K0.vL, std::vector<Vec>{kvec(K0, {{1, 0}, {0, 0}}), kvec(K0, {{1, 0}, {0, 1}})},
                                             std::vector<Value>{Value{0}, Value{1}});
    auto r = descent_equivalence(K0, alpha);
    ck(r.restriction_is_norm, "restriction is a norm");
    ck(!r.tensor_equal, "tensor equality fails");
    ck(r.chi_kernel.has_value() && !r.chi_injective, "chi has a kernel element");
    if (r.chi_kernel) {
        // value of k under alpha|V (x) v_K against alpha(k)
        const Vec& k = *r.chi_kernel;
        Vec flat;
        for (const auto& c : k) {
            Vec co = K0.coords(c);
            flat.insert(flat.end(), co.begin(), co.end());
        }
        Value lower = tensor(r.restriction, K0.norm)->eval(flat);
        ck(alpha->eval(k) > lower, "chi kills the exhibited element");
    }
    return ck;
}

// ---- 9 ----

Checker springer_directions(std::string& detail) {
    Checker ck;
    std::size_t applicable = 0, skipped = 0, aniso = 0;
    for (const auto& c : g_springer) {
        auto g = check_gauge(c.A, c.phi);
        if (!g.gauge() || !check_invariant(c.phi, c.s).invariant) {
            ++skipped;
            continue;
        }
        ++applicable;
        auto t0 = std::chrono::steady_clock::now();
        auto r = springer_criterion(c.A, c.s, c.phi);
        if (std::getenv("GK_TRACE"))
            std::cerr << c.name << " " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()
                      << std::endl;
        ck(r.consistent, c.name + ": residue and graded anisotropy agree (" + verdict_str(r.residue.verdict) + "/" +
                             verdict_str(r.graded.verdict) + ")");
        if (r.graded.verdict == Verdict::Yes) {
            ++aniso;
            ck(r.sigma_search_clean, c.name + ": bounded search on sigma finds no isotropic vector");
        }
    }
    detail = std::to_string(applicable) + " invariant gauges checked, " + std::to_string(aniso) + " anisotropic, " +
             std::to_string(skipped) + " without an invariant gauge";
    return ck;
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
    bool all = true;
    std::string detail9;
    auto report = [&](int id, const std::string& title, double limit, const std::function<Checker()>& fn) {
        if (!only.empty() && !only.count(id)) return;
        auto t0 = std::chrono::steady_clock::now();
        Checker ck;
        std::string err;
        try {
            ck = fn();
        } catch (const std::exception& e) {
            err = e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = limit <= 0 || secs < limit;
        bool ok = err.empty() && ck.fails.empty() && in_time;
        all = all && ok;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.2f s", secs);
        std::cout << (ok ? "PASS" : "FAIL") << " " << id << " " << title << " [" << ck.count << " checks, " << buf;
        if (limit > 0) std::cout << " / limit " << limit << " s";
        std::cout << "]";
        if (id == 9) std::cout << " " << detail9;
        std::cout << "\n";
        if (!err.empty()) std::cout << "    error: " << err << "\n";
        if (!in_time) std::cout << "    over the time limit\n";
        for (std::size_t i = 0; i < ck.fails.size() && i < 10; ++i) std::cout << "    failed: " << ck.fails[i] << "\n";
        std::cout << std::flush;
    };
    report(1, "quaternion (-1,-1) at 3: gauge, residue algebra, not special, conjugates", kLimit1, quaternion_golden);
    report(2, "characteristic-2 swap: orthogonal with symplectic residue", kLimit2, char_two_remark);
    report(3, "special gauges: refutation search vs residue anisotropy, orthogonal sums", kLimit3, eqcond_suite);
    report(4, "dual norms, compatibility, adjoint residue", kLimit4, dual_norm_suite);
    report(5, "composition across a coarsening", kLimit5, composition_suite);
    report(6, "scalar extension: idempotents, D_g decomposition", kLimit6, scalar_extension_suite);
    report(7, "isotropy criterion with brute-force confirmation", kLimit7, isotropy_suite);
    report(8, "descent along a quadratic extension", kLimit8, descent_suite);
    report(9, "residue vs graded anisotropy on every instance above", 0, [&] { return springer_directions(detail9); });
    return all ? 0 : 1;
}

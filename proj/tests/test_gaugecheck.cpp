#include <gtest/gtest.h>

#include <random>

#include "gk/gaugecheck.hpp"

using namespace gk;

namespace {

NormPtr standard_norm(const ValPtr& v, std::size_t n, std::vector<Value> vals = {}) {
    std::vector<Vec> base;
    for (std::size_t i = 0; i < n; ++i) base.push_back(unit_vec(v->field(), n, i));
    if (vals.empty()) vals.assign(n, v->zero_value());
    return std::make_shared<SplitNorm>(v, base, vals);
}

// F-valued form on F^n viewed over D = F
HermitianForm scalar_form(const DivisionRing& D, const std::vector<std::vector<Q>>& H) {
    const auto& F = D.base_field();
    DMat g;
    for (const auto& row : H) {
        g.emplace_back();
        for (const auto& c : row) g.back().push_back(Vec{Elem::of(F, c)});
    }
    return {D, g};
}

DNorm scalar_norm(const DivisionRing& D, const std::vector<std::vector<Q>>& base, const std::vector<Value>& vals) {
    const auto& F = D.base_field();
    std::vector<DVec> b;
    for (const auto& col : base) {
        b.emplace_back();
        for (const auto& c : col) b.back().push_back(Vec{Elem::of(F, c)});
    }
    return {D, b, vals};
}

struct Quaternion {
    AlgPtr A;
    NormPtr phi;
    Involution s;
};

Quaternion quaternion_3adic() {
    auto QQ = make_field(0);
    auto A = quaternion_algebra(Elem::of(QQ, -1), Elem::of(QQ, -1));
    return {A, standard_norm(padic(3), 4), conjugation_involution(A)};
}

Vec random_vec(const FieldPtr& F, std::size_t n, std::mt19937& rng) {
    std::uniform_int_distribution<int> C(-6, 6);
    Vec x;
    for (std::size_t i = 0; i < n; ++i) x.push_back(Elem::of(F, Q(C(rng))));
    return x;
}

}  // namespace

TEST(Quaternion, GaugeButNotSpecial) {
    auto [A, phi, s] = quaternion_3adic();
    auto g = check_gauge(A, phi);
    EXPECT_TRUE(g.gauge());
    ASSERT_TRUE(g.is_tame);
    EXPECT_TRUE(*g.is_tame);
    auto inv = check_invariant(phi, s);
    EXPECT_TRUE(inv.invariant);
    EXPECT_TRUE(inv.certified);

    auto sp = check_special(A, s, phi);
    EXPECT_EQ(sp.special, Verdict::No);
    ASSERT_TRUE(sp.witness);
    EXPECT_EQ(*sp.witness, A->basis(0) + A->basis(1) + A->basis(2));
    EXPECT_EQ(*sp.value_x, Value{0});
    EXPECT_EQ(*sp.value_sxx, Value{1});
    // s(x) x = 3
    EXPECT_EQ(A->mul(s.apply(*sp.witness), *sp.witness), scale(A->one(), Elem::of(A->field(), 3)));
}

TEST(Quaternion, SpringerAndProbe) {
    auto [A, phi, s] = quaternion_3adic();
    auto sp = springer_criterion(A, s, phi);
    EXPECT_EQ(sp.residue.verdict, Verdict::No);
    EXPECT_EQ(sp.graded.verdict, Verdict::No);
    EXPECT_TRUE(sp.consistent);
    EXPECT_EQ(sp.sigma.verdict, Verdict::Yes);
    EXPECT_NE(sp.sigma.certificate.find("definite"), std::string::npos);
    EXPECT_TRUE(sp.sigma_search_clean);

    auto pr = mainthcor_probe(A, s, phi);
    EXPECT_EQ(pr.verdict, "no special gauge");
    EXPECT_EQ(pr.conjugates_special, 0u);
    EXPECT_FALSE(pr.uniqueness_alarm);
    EXPECT_GT(pr.conjugates_checked, 0u);
}

TEST(Quaternion, ConjugateNorms) {
    auto [A, phi, s] = quaternion_3adic();
    auto G = build_graded(A, phi);
    const auto& sp = dynamic_cast<const SplitNorm&>(*phi);
    std::vector<std::pair<std::string, bool>> units = {
        {"1 + i + j", false}, {"1 + i", true}, {"i", true}, {"3 + i", true}, {"1 + 3*j + k", true},
        {"1 + j + k", false}, {"2 + i", true},
    };
    for (const auto& [text, stable] : units) {
        Vec u = A->parse(text);
        EXPECT_EQ(is_stable_unit(G, u), stable) << text;
        auto pu = conjugate_norm(*A, sp, u);
        // s(u) u is central, so phi_u stays invariant
        EXPECT_TRUE(check_invariant(pu, s).invariant) << text;
        EXPECT_EQ(pu->same_as(*phi), stable) << text;
        EXPECT_TRUE(check_gauge(A, pu).gauge()) << text;
    }
}

TEST(Special, SkewedEntrywiseGauge) {
    auto QQ = make_field(0);
    auto M2 = matrix_algebra(QQ, 2);
    Value h{Q(1, 2)};
    auto phi = standard_norm(padic(2), 4, {Value{0}, -h, h, Value{0}});
    auto T = transpose_involution(QQ, 2);
    EXPECT_TRUE(check_gauge(M2, phi).gauge());
    auto inv = check_invariant(phi, T);
    EXPECT_FALSE(inv.invariant);
    EXPECT_EQ(*inv.witness, M2->basis(1));
    auto sp = check_special(M2, T, phi);
    EXPECT_FALSE(sp.invariant);
    EXPECT_EQ(sp.special, Verdict::No);
    ASSERT_TRUE(sp.witness);
    // a multiple of E12
    auto w = *sp.witness;
    EXPECT_TRUE(w[0].is_zero() && w[2].is_zero() && w[3].is_zero() && !w[1].is_zero());
    EXPECT_GT(*sp.value_sxx, *sp.value_x + *sp.value_x);
}

TEST(Special, TriangularToyIsNotSemisimple) {
    auto QQ = make_field(0);
    // e11, e12, e22
    std::vector<std::vector<Vec>> table(3, std::vector<Vec>(3, zero_vec(QQ, 3)));
    table[0][0][0] = table[0][1][1] = table[1][2][1] = table[2][2][2] = Elem::one(QQ);
    auto B = std::make_shared<Algebra>(QQ, std::vector<std::string>{"e11", "e12", "e22"}, table);
    auto g = check_gauge(B, standard_norm(trivial_valuation(QQ), 3));
    EXPECT_TRUE(g.is_norm);
    EXPECT_TRUE(g.is_surmultiplicative);
    EXPECT_FALSE(g.is_semisimple);
    ASSERT_EQ(g.radical_witness.size(), 1u);
    EXPECT_EQ(g.radical_witness[0], unit_vec(QQ, 3, 1));
}

TEST(Special, NotANormOrNotSurmultiplicative) {
    auto QQ = make_field(0);
    auto M2 = matrix_algebra(QQ, 2);
    auto v = padic(3);
    // E12 E21 = E11 drops below the sum
    auto bad = standard_norm(v, 4, {Value{0}, Value{1}, Value{0}, Value{0}});
    auto g = check_gauge(M2, bad);
    EXPECT_TRUE(g.is_norm);
    EXPECT_FALSE(g.is_surmultiplicative);
    ASSERT_TRUE(g.surmult_witness);
    auto [x, y] = *g.surmult_witness;
    EXPECT_LT(bad->eval(M2->mul(x, y)), bad->eval(x) + bad->eval(y));
    EXPECT_FALSE(g.gauge());
}

TEST(Special, DiagonalFormWithHalfValue) {
    auto v3 = padic(3);
    auto D = DivisionRing::field(v3);
    auto h = scalar_form(D, {{1, 0}, {0, 3}});
    auto alpha = scalar_norm(D, {{1, 0}, {0, 1}}, {Value{0}, Value{Q(1, 2)}});
    auto A = matrix_algebra(v3->field(), 2);
    auto phi = end_norm(alpha);
    auto s = adjoint_involution(h);
    EXPECT_TRUE(check_gauge(A, phi).gauge());
    auto sp = check_special(A, s, phi);
    EXPECT_EQ(sp.special, Verdict::Yes);
    EXPECT_FALSE(sp.search_witness);
    auto pr = mainthcor_probe(A, s, phi);
    EXPECT_EQ(pr.verdict, "unique special");
    EXPECT_FALSE(pr.uniqueness_alarm);
    EXPECT_GT(pr.conjugates_special, 0u);
    // the zero-valued end norm is not invariant under this adjoint
    auto flat = end_norm(scalar_norm(D, {{1, 0}, {0, 1}}, {Value{0}, Value{0}}));
    auto sf = check_special(A, s, flat);
    EXPECT_FALSE(sf.invariant);
    EXPECT_EQ(sf.special, Verdict::No);
}

TEST(Special, TrivialValuationAnisotropic) {
    auto QQ = make_field(0);
    auto A = quaternion_algebra(Elem::of(QQ, -1), Elem::of(QQ, -1));
    auto phi = standard_norm(trivial_valuation(QQ), 4);
    auto s = conjugation_involution(A);
    auto sp = check_special(A, s, phi);
    EXPECT_EQ(sp.special, Verdict::Yes);
    // split quaternions: 1 + j has s(x) x = 0
    auto B = quaternion_algebra(Elem::of(QQ, -1), Elem::of(QQ, 1));
    auto sb = check_special(B, conjugation_involution(B), phi);
    EXPECT_EQ(sb.special, Verdict::No);
    EXPECT_EQ(*sb.value_sxx, trivial_valuation(QQ)->inf_value());
}

TEST(Special, RandomizedInvariantSuite) {
    std::mt19937 rng(17);
    auto QQ = make_field(0);
    std::size_t special = 0, refuted = 0, pairs = 0;
    const std::vector<int> primes = {2, 3, 5, 7};
    const std::vector<Q> entries = {1, 2, 3, 5, 6, 7, 10, 14, Q(1, 3), 9, 25};
    std::uniform_int_distribution<int> P(0, 3), E(0, int(entries.size()) - 1), H(-2, 2), N(2, 3);
    GaugeOptions opt;
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
        auto sp = check_special(A, s, phi, opt);
        ASSERT_TRUE(sp.invariant) << inst;
        ASSERT_NE(sp.graded.verdict, Verdict::Undecided) << inst;
        // refutation search and residue anisotropy agree
        EXPECT_EQ(sp.search_witness.has_value(), sp.graded.verdict == Verdict::No)
            << inst << " n=" << n << " searched " << sp.searched << " " << sp.graded.certificate;
        const auto& ph = *phi;
        if (sp.special == Verdict::No) {
            ++refuted;
            Vec x = *sp.witness;
            EXPECT_NE(ph.eval(A->mul(s.apply(x), x)), ph.eval(x) + ph.eval(x));
            continue;
        }
        ASSERT_EQ(sp.special, Verdict::Yes);
        ++special;
        EXPECT_TRUE(check_graded_semisimple(build_graded(A, phi)).semisimple);
        // orthogonal pairs: s(x) y = 0 or x s(y) = 0
        Vec e11 = A->basis(0);
        for (int t = 0; t < 100; ++t) {
            Vec x = A->mul(A->mul(random_vec(QQ, n * n, rng), e11), random_vec(QQ, n * n, rng));
            if (is_zero(x)) continue;
            auto ker = kernel(A->left(t % 2 ? x : s.apply(x)));
            Vec y = zero_vec(QQ, n * n);
            for (const auto& k : ker) y = y + scale(k, Elem::of(QQ, Q(int(rng() % 7) - 3)));
            if (t % 2) y = s.apply(y);
            if (is_zero(y)) continue;
            ASSERT_TRUE(is_zero(t % 2 ? A->mul(x, s.apply(y)) : A->mul(s.apply(x), y)));
            EXPECT_EQ(ph.eval(x + y), vmin(ph.eval(x), ph.eval(y)));
            EXPECT_EQ(ph.eval(A->mul(s.apply(x), x)), ph.eval(x) + ph.eval(x));
            ++pairs;
        }
    }
    EXPECT_GE(special, 5u);
    EXPECT_GE(refuted, 5u);
    EXPECT_GE(pairs, 100 * special * 9 / 10);
}

// ---- hermitian forms ----

namespace {

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
    // h(f_i, f_j) = diag(1, 3) in the base f1 = (1,1), f2 = (0,1)
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

}  // namespace

TEST(Hermitian, FourConditionsAgree) {
    std::size_t yes = 0, no = 0;
    for (const auto& c : form_cases()) {
        auto r = compat_conditions(c.alpha, c.h);
        EXPECT_TRUE(r.agree()) << c.name << ": " << r.invariant << r.same_end << r.constant_gap << r.shift_compatible;
        (r.invariant ? yes : no)++;
        // double dual and shifts
        DNorm sharp = dual_norm(c.alpha, c.h);
        EXPECT_TRUE(dual_norm(sharp, c.h).flatten()->same_as(*c.alpha.flatten())) << c.name;
        Value g{Q(3, 2)};
        EXPECT_TRUE(dual_norm(c.alpha.shifted(-g), c.h).flatten()->same_as(*sharp.shifted(g).flatten())) << c.name;
    }
    EXPECT_GE(yes, 5u);
    EXPECT_GE(no, 3u);
}

TEST(Hermitian, AdjointResidueMatchesResidueForm) {
    std::size_t checked = 0;
    for (const auto& c : form_cases()) {
        auto r = compat_conditions(c.alpha, c.h);
        if (!r.invariant) continue;
        DNorm half = c.alpha.shifted(-r.gap->scaled(Q(1, 2)));
        auto a = adjoint_residue_check(half, c.h);
        EXPECT_TRUE(a.equal) << c.name << ": " << a.note;
        EXPECT_EQ(a.checked, half.dim() * half.dim() * c.alpha.D.dim()) << c.name;
        ++checked;
    }
    EXPECT_GE(checked, 5u);
    // incompatible input is reported, not compared
    auto cs = form_cases();
    auto a = adjoint_residue_check(cs[2].alpha, cs[2].h);
    EXPECT_FALSE(a.equal);
    EXPECT_EQ(a.note, "norm not compatible with the form");
}

// ---- composition ----

namespace {

struct Rank2 {
    FieldPtr F = make_field(0, {"x", "y"});
    ValPtr v = monomial(F, {Value{1, 0}, Value{0, 1}});
    CoarsenedValuation cv = coarsen_valuation(v, 1);
};

}  // namespace

TEST(Composition, GaugeAcrossCoarsening) {
    Rank2 r;
    auto M2 = matrix_algebra(r.F, 2);
    Value z{0, 0};
    struct Case {
        std::vector<Value> vals;
        bool alpha, beta, star;
    };
    std::vector<Case> cases = {
        {{z, Value{0, 1}, Value{0, -1}, z}, true, true, true},
        {{z, Value{0, -1}, z, z}, false, true, false},
        {{z, Value{-1, 0}, z, z}, false, false, false},
        {{z, Value{1, 3}, Value{-1, -3}, z}, true, true, true},
        {{z, Value{1, 0}, Value{-1, 1}, z}, false, true, false},
    };
    for (const auto& c : cases) {
        auto alpha = standard_norm(r.v, 4, c.vals);
        auto rep = composed_gauge(M2, alpha, r.cv);
        EXPECT_EQ(rep.alpha_gauge, c.alpha);
        EXPECT_EQ(rep.beta_gauge, c.beta);
        if (c.beta) EXPECT_EQ(rep.star_gauge, c.star);
        EXPECT_EQ(rep.alpha_gauge, rep.beta_gauge && rep.star_gauge);
        EXPECT_EQ(rep.alpha_gauge, check_gauge(M2, alpha).gauge());
    }
}

TEST(Special, EntrywiseTransposeAtThree) {
    // <1,1> is anisotropic over F_3, so transpose stays anisotropic on the residue matrices
    auto QQ = make_field(0);
    auto M2 = matrix_algebra(QQ, 2);
    auto T = transpose_involution(QQ, 2);
    auto sp = check_special(M2, T, standard_norm(padic(3), 4));
    EXPECT_EQ(sp.special, Verdict::Yes);
    EXPECT_FALSE(sp.search_witness);
    // at 5 it is isotropic: 1 + 2^2 = 0
    auto s5 = check_special(M2, T, standard_norm(padic(5), 4));
    EXPECT_EQ(s5.special, Verdict::No);
    EXPECT_TRUE(s5.search_witness);
}

TEST(Leads, StableUnitsMultiplyLeads) {
    std::mt19937 rng(23);
    auto [A, phi, s] = quaternion_3adic();
    auto QQ = A->field();
    auto G = build_graded(A, phi);
    Value h{Q(1, 2)};
    auto M2 = matrix_algebra(QQ, 2);
    auto skew = standard_norm(padic(2), 4, {Value{0}, -h, h, Value{0}});
    auto H = build_graded(M2, skew);
    std::vector<std::pair<const GradedAlgebra*, Vec>> cases = {
        {&G, A->parse("1 + i")}, {&G, A->parse("3 + i + 6*j")}, {&H, M2->one() + scale(M2->basis(1), Elem::of(QQ, 2))}};
    for (const auto& [Gp, u] : cases) {
        ASSERT_TRUE(is_stable_unit(*Gp, u));
        auto lu = *Gp->lead(u);
        for (int t = 0; t < 30; ++t) {
            Vec a = random_vec(QQ, 4, rng);
            if (is_zero(a)) continue;
            auto la = *Gp->lead(a);
            auto lau = *Gp->lead(Gp->A->mul(a, u));
            EXPECT_EQ(lau.first, la.first + lu.first);
            EXPECT_EQ(lau.second, Gp->B->mul(la.second, lu.second));
        }
    }
}

TEST(Leads, SymmetricIdempotentCutsGradedPieces) {
    auto v3 = padic(3);
    auto QQ = v3->field();
    auto D = DivisionRing::field(v3);
    auto alpha = scalar_norm(D, {{1, 0}, {0, 1}}, {Value{0}, Value{Q(1, 2)}});
    auto h = scalar_form(D, {{1, 0}, {0, 3}});
    auto M2 = matrix_algebra(QQ, 2);
    auto phi = end_norm(alpha);
    auto G = build_graded(M2, phi);
    Vec e = M2->basis(0);
    ASSERT_EQ(adjoint_involution(h).apply(e), e);
    ASSERT_EQ(phi->eval(e), Value{0});
    auto et = G.lead(e)->second;
    auto leads = [&](const std::vector<Vec>& span) {
        std::vector<Vec> out;
        auto r = phi->restrict(span);
        for (const auto& b : r->base()) {
            Vec x = zero_vec(QQ, 4);
            for (std::size_t k = 0; k < span.size(); ++k) x = x + scale(span[k], b[k]);
            out.push_back(G.lead(x)->second);
        }
        return span_basis(out);
    };
    // N = M2 and N = M2 E22
    std::vector<std::vector<Vec>> Ns = {{M2->basis(0), M2->basis(1), M2->basis(2), M2->basis(3)},
                                        {M2->basis(1), M2->basis(3)}};
    for (const auto& N : Ns) {
        std::vector<Vec> eN;
        for (const auto& x : N) eN.push_back(M2->mul(e, x));
        eN = span_basis(eN);
        std::vector<Vec> rhs;
        for (const auto& g : leads(N)) rhs.push_back(G.B->mul(et, g));
        rhs = span_basis(rhs);
        auto lhs = leads(eN);
        std::vector<Vec> both = lhs;
        both.insert(both.end(), rhs.begin(), rhs.end());
        EXPECT_EQ(lhs.size(), rhs.size());
        EXPECT_EQ(span_basis(both).size(), lhs.size());
    }
}

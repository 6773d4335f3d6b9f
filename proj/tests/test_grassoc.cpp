#include <gtest/gtest.h>

#include <functional>

#include "gk/ffield.hpp"
#include "gk/grassoc.hpp"

using namespace gk;

namespace {

using Table = std::vector<std::vector<Vec>>;

AlgPtr from_rule(const FieldPtr& F, std::size_t n, const std::function<void(std::size_t, std::size_t, Vec&)>& rule) {
    Table t(n, std::vector<Vec>(n, zero_vec(F, n)));
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
        names.push_back("b" + std::to_string(i));
        for (std::size_t j = 0; j < n; ++j) rule(i, j, t[i][j]);
    }
    return std::make_shared<Algebra>(F, names, t);
}

AlgPtr group_algebra(const FieldPtr& F, std::size_t m1, std::size_t m2) {
    return from_rule(F, m1 * m2, [&](std::size_t i, std::size_t j, Vec& e) {
        std::size_t a = (i / m2 + j / m2) % m1, b = (i % m2 + j % m2) % m2;
        e[a * m2 + b] = Elem::one(F);
    });
}

AlgPtr truncated(const FieldPtr& F, std::size_t m) {
    return from_rule(F, m, [&](std::size_t i, std::size_t j, Vec& e) {
        if (i + j < m) e[i + j] = Elem::one(F);
    });
}

// E_ij, i <= j, listed row by row
AlgPtr upper_triangular(const FieldPtr& F, std::size_t m) {
    std::vector<std::pair<std::size_t, std::size_t>> idx;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) idx.emplace_back(i, j);
    return from_rule(F, idx.size(), [&](std::size_t a, std::size_t b, Vec& e) {
        if (idx[a].second != idx[b].first) return;
        for (std::size_t c = 0; c < idx.size(); ++c)
            if (idx[c] == std::make_pair(idx[a].first, idx[b].second)) e[c] = Elem::one(F);
    });
}

// F[r]/(r^2 - d), basis 1, r
AlgPtr quadratic_algebra(const FieldPtr& F, long d) {
    Table t(2, std::vector<Vec>(2, zero_vec(F, 2)));
    t[0][0][0] = t[0][1][1] = t[1][0][1] = Elem::one(F);
    t[1][1][0] = Elem::of(F, Q(d));
    return std::make_shared<Algebra>(F, std::vector<std::string>{"1", "r"}, t);
}

// x in J iff x y is nilpotent for every y; exhaustive over a finite field
std::vector<Vec> brute_radical(const Algebra& B) {
    auto ff = *FiniteField::from(B.field());
    const std::size_t n = B.dim();
    const int q = ff.q();
    std::vector<int> C(n * n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) C[(i * n + j) * n + k] = ff.encode(B.table()[i][j][k]);
    auto mul = [&](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> r(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            if (a[i])
                for (std::size_t j = 0; j < n; ++j)
                    if (b[j]) {
                        int c = ff.mul(a[i], b[j]);
                        for (std::size_t k = 0; k < n; ++k) r[k] = ff.add(r[k], ff.mul(c, C[(i * n + j) * n + k]));
                    }
        return r;
    };
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= q;
    auto vec_of = [&](std::size_t code) {
        std::vector<int> v(n);
        for (std::size_t i = 0; i < n; ++i, code /= q) v[i] = int(code % q);
        return v;
    };
    auto zero = [](const std::vector<int>& v) { return std::all_of(v.begin(), v.end(), [](int c) { return c == 0; }); };
    std::vector<Vec> J;
    for (std::size_t cx = 1; cx < total; ++cx) {
        auto x = vec_of(cx);
        bool in = true;
        for (std::size_t cy = 0; cy < total && in; ++cy) {
            auto z = mul(x, vec_of(cy)), pw = z;
            for (std::size_t k = 1; k < n && !zero(pw); ++k) pw = mul(pw, z);
            in = zero(pw);
        }
        if (in) {
            Vec v;
            for (int c : x) v.push_back(ff.decode(c));
            J.push_back(v);
        }
    }
    return span_basis(J);
}

NormPtr standard_norm(const ValPtr& v, std::size_t n, std::vector<Value> vals = {}) {
    std::vector<Vec> base;
    for (std::size_t i = 0; i < n; ++i) base.push_back(unit_vec(v->field(), n, i));
    if (vals.empty()) vals.assign(n, v->zero_value());
    return std::make_shared<SplitNorm>(v, base, vals);
}

bool same_span(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    auto sa = span_basis(a), sb = span_basis(b);
    if (sa.size() != sb.size()) return false;
    std::vector<Vec> all = a;
    all.insert(all.end(), b.begin(), b.end());
    return span_basis(all).size() == sa.size();
}

std::vector<std::string> table_strings(const Algebra& B) {
    std::vector<std::string> out;
    for (const auto& row : B.table())
        for (const auto& e : row)
            for (const auto& c : e) out.push_back(c.str());
    return out;
}

}  // namespace

TEST(Radical, MatchesEnumerationOracle) {
    auto F2 = make_field(2), F3 = make_field(3);
    auto F9 = make_quadratic(F3, RatFun::constant(0, 3, Q(-1)));
    std::vector<std::pair<std::string, AlgPtr>> cases = {
        {"F2[C2]", group_algebra(F2, 2, 1)},         {"F2[C4]", group_algebra(F2, 4, 1)},
        {"F2[C2xC2]", group_algebra(F2, 2, 2)},      {"F3[C3]", group_algebra(F3, 3, 1)},
        {"F3[C2]", group_algebra(F3, 2, 1)},         {"F2[x]/x^4", truncated(F2, 4)},
        {"F3[x]/x^3", truncated(F3, 3)},             {"T2(F2)", upper_triangular(F2, 2)},
        {"T3(F2)", upper_triangular(F2, 3)},         {"T2(F3)", upper_triangular(F3, 2)},
        {"M2(F2)", matrix_algebra(F2, 2)},           {"M2(F3)", matrix_algebra(F3, 2)},
        {"F9[C3]", group_algebra(F9, 3, 1)},         {"F9[x]/x^2", truncated(F9, 2)},
        {"F2[C2]xF2[x]/x^3", tensor_algebra(group_algebra(F2, 2, 1), truncated(F2, 3))},
    };
    for (const auto& [name, B] : cases) {
        std::string method;
        auto J = jacobson_radical(*B, &method);
        EXPECT_TRUE(same_span(J, brute_radical(*B))) << name << " via " << method;
    }
}

TEST(Radical, TraceFormInCharacteristicZero) {
    auto QQ = make_field(0);
    std::string method;
    auto T3 = upper_triangular(QQ, 3);
    auto J = jacobson_radical(*T3, &method);
    EXPECT_EQ(method, "trace form");
    // strictly upper part: E12, E13, E23 at positions 1, 2, 4
    EXPECT_TRUE(same_span(J, {T3->basis(1), T3->basis(2), T3->basis(4)}));
    EXPECT_EQ(jacobson_radical(*truncated(QQ, 3)).size(), 2u);
    EXPECT_TRUE(jacobson_radical(*matrix_algebra(QQ, 3)).empty());
    EXPECT_TRUE(jacobson_radical(*quaternion_algebra(Elem::of(QQ, -1), Elem::of(QQ, -1))).empty());
    // char 5 > dim 4: trace form still exact
    auto F5 = make_field(5);
    J = jacobson_radical(*upper_triangular(F5, 2), &method);
    EXPECT_EQ(method, "trace form");
    EXPECT_TRUE(same_span(J, brute_radical(*upper_triangular(F5, 2))));
}

TEST(Graded, QuaternionThreeAdic) {
    auto QQ = make_field(0);
    auto v3 = padic(3);
    auto A = quaternion_algebra(Elem::of(QQ, -1), Elem::of(QQ, -1));
    auto G = build_graded(A, standard_norm(v3, 4));
    EXPECT_EQ(G.dim(), 4u);
    EXPECT_EQ(G.components.size(), 1u);
    EXPECT_EQ(G.zero_component().size(), 4u);
    // A_0 = (-1,-1) over F_3
    auto F3 = G.residue_field();
    auto ref = quaternion_algebra(Elem::of(F3, -1), Elem::of(F3, -1));
    EXPECT_EQ(table_strings(*G.B), table_strings(*ref));
    auto ss = check_graded_semisimple(G);
    EXPECT_TRUE(ss.semisimple);
    EXPECT_TRUE(ss.radical.empty());
    auto tame = check_tame(G);
    EXPECT_TRUE(tame.tame);
    EXPECT_EQ(tame.graded_center_dim, 1u);

    auto s = induce_involution(G, conjugation_involution(A));
    EXPECT_TRUE(equal(s.S, conjugation_involution(ref).S));
    auto c = classify_involution(*G.B, s.tilde());
    EXPECT_EQ(c.type, InvolutionType::Symplectic);

    auto r = residue_anisotropy(G, s);
    ASSERT_EQ(r.verdict, Verdict::No);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(*r.witness, G.B->basis(0) + G.B->basis(1) + G.B->basis(2));  // 1 + i + j
    // quaternion norm oracle: x0^2 + x1^2 + x2^2 + x3^2 over F_3
    Elem nrd = Elem::zero(F3);
    for (const auto& x : *r.witness) nrd += x * x;
    EXPECT_TRUE(nrd.is_zero());
    // its lift has reduced norm of positive valuation
    Vec t = G.lift(*r.witness);
    EXPECT_GT(reduced_norm_value(*v3, Elem::of(QQ, -1), Elem::of(QQ, -1), t), v3->zero_value());
    EXPECT_EQ(graded_anisotropy(G, s).verdict, Verdict::No);
}

TEST(Graded, EntrywiseMatrixGauge) {
    auto QQ = make_field(0);
    auto v2 = padic(2);
    auto M2 = matrix_algebra(QQ, 2);
    auto G = build_graded(M2, standard_norm(v2, 4));
    auto ref = matrix_algebra(G.residue_field(), 2);
    EXPECT_EQ(table_strings(*G.B), table_strings(*ref));
    EXPECT_TRUE(check_graded_semisimple(G).semisimple);
    auto T = induce_involution(G, transpose_involution(QQ, 2));
    EXPECT_TRUE(equal(T.S, transpose_involution(G.residue_field(), 2).S));

    // nonzero degrees: values gamma_i - gamma_j with gamma = (0, 1/2)
    Value h{Q(1, 2)};
    auto phi = standard_norm(v2, 4, {Value{0}, -h, h, Value{0}});
    auto H = build_graded(M2, phi);
    ASSERT_EQ(H.components.size(), 2u);
    EXPECT_EQ(H.zero_component(), (std::vector<std::size_t>{0, 3}));
    EXPECT_EQ(H.degree[1], h);  // 2 E12 lifted to the canonical degree
    EXPECT_EQ(H.lifts[1], scale(M2->basis(1), Elem::of(QQ, 2)));
    // E12 E21 = E11 in the compressed table
    EXPECT_EQ(H.B->mul(H.B->basis(1), H.B->basis(2)), H.B->basis(0));
    EXPECT_TRUE(check_graded_semisimple(H).semisimple);
    EXPECT_THROW(induce_involution(H, transpose_involution(QQ, 2)), InvarianceError);
    try {
        induce_involution(H, transpose_involution(QQ, 2));
    } catch (const InvarianceError& e) {
        EXPECT_NE(phi->eval(transpose_involution(QQ, 2).apply(e.witness)), phi->eval(e.witness));
    }
}

TEST(Graded, CharacteristicTwoSwapIsSymplectic) {
    auto QQ = make_field(0);
    auto M2 = matrix_algebra(QQ, 2);
    Mat S = zero_mat(QQ, 4, 4);
    S[3][0] = S[1][1] = S[2][2] = S[0][3] = Elem::one(QQ);
    auto G = build_graded(M2, standard_norm(padic(2), 4));
    auto s = induce_involution(G, Involution{S});
    auto c = classify_involution(*G.B, s.tilde());
    EXPECT_TRUE(c.one_in_symd);
    EXPECT_EQ(c.type, InvolutionType::Symplectic);
}

TEST(Graded, TrivialValuationGivesAlgebraBack) {
    auto QQ = make_field(0);
    auto A = quaternion_algebra(Elem::of(QQ, 2), Elem::of(QQ, -5));
    auto G = build_graded(A, standard_norm(trivial_valuation(QQ), 4));
    EXPECT_EQ(table_strings(*G.B), table_strings(*A));
    EXPECT_TRUE(check_graded_semisimple(G).semisimple);
    EXPECT_TRUE(check_tame(G).tame);
}

TEST(Graded, BuildErrors) {
    auto QQ = make_field(0);
    auto v3 = padic(3);
    // E22 with value 1: E22 E22 = E22 falls below 2
    auto M2 = matrix_algebra(QQ, 2);
    EXPECT_THROW(build_graded(M2, standard_norm(v3, 4, {Value{0}, Value{0}, Value{0}, Value{1}})),
                 SurmultiplicativityError);
    // value of 1 nonzero
    EXPECT_THROW(build_graded(M2, standard_norm(v3, 4, {Value{1}, Value{0}, Value{0}, Value{1}})), std::invalid_argument);
    // v(c1 + c2 sqrt 7) on Q(sqrt 7) at 3: a valuation, not a norm
    auto K = quadratic_algebra(QQ, 7);
    VFPtr root = std::make_shared<EmbeddedRoot>(v3, Elem::one(QQ), Elem::of(QQ, 6));
    try {
        build_graded(K, root);
        ADD_FAILURE() << "expected a graded dimension defect";
    } catch (const NotANormError& e) {
        EXPECT_NE(std::string(e.what()).find("graded dimension defect"), std::string::npos);
    }
}

TEST(Semisimple, UpperTriangularToy) {
    auto QQ = make_field(0);
    auto T2 = upper_triangular(QQ, 2);
    auto G = build_graded(T2, standard_norm(padic(3), 3));
    auto r = check_graded_semisimple(G);
    EXPECT_FALSE(r.semisimple);
    ASSERT_EQ(r.graded_radical.size(), 1u);
    EXPECT_TRUE(same_span(r.graded_radical, {G.B->basis(1)}));
    EXPECT_FALSE(graded_simple_defect(G).empty());
    EXPECT_THROW(ideal_idempotent(G, {G.B->basis(0)}), std::invalid_argument);
}

TEST(Semisimple, GradedFieldAndMixedRadical) {
    auto QQ = make_field(0);
    EXPECT_TRUE(check_graded_semisimple(build_graded(field_algebra(QQ), standard_norm(padic(5), 1))).semisimple);
    // Q(i) at 2: base 1, 1+i with values 0, 1/2; gr = F2[u]/(u^2 - 1) graded by 1/2
    auto K = quadratic_algebra(QQ, -1);
    NormPtr phi = std::make_shared<SplitNorm>(padic(2), std::vector<Vec>{K->basis(0), K->basis(0) + K->basis(1)},
                                           std::vector<Value>{Value{0}, Value{Q(1, 2)}});
    auto G = build_graded(K, phi);
    auto r = check_graded_semisimple(G);
    EXPECT_EQ(r.radical.size(), 1u);  // 1 + u, not homogeneous
    EXPECT_TRUE(r.graded_radical.empty());
    EXPECT_TRUE(r.semisimple);
    EXPECT_THROW(check_tame(G), UnsupportedError);
}

TEST(Tame, ResidueCharacteristicZero) {
    auto Qx = make_field(0, {"x"});
    auto vx = monomial(Qx, {Value{1}});
    auto A = quaternion_algebra(Elem::var(Qx, 0), Elem::of(Qx, -1));
    auto phi = standard_norm(vx, 4, {Value{0}, Value{Q(1, 2)}, Value{0}, Value{Q(1, 2)}});
    auto G = build_graded(A, phi);
    EXPECT_EQ(G.components.size(), 2u);
    EXPECT_TRUE(check_graded_semisimple(G).semisimple);
    auto t = check_tame(G);
    EXPECT_TRUE(t.tame);
    EXPECT_EQ(t.note, "residue characteristic 0");
}

TEST(Anisotropy, ExchangedComponents) {
    auto QQ = make_field(0);
    auto D = from_rule(QQ, 2, [&](std::size_t i, std::size_t j, Vec& e) {
        if (i == j) e[i] = Elem::one(QQ);
    });
    auto G = build_graded(D, standard_norm(padic(3), 2));
    Mat S = zero_mat(QQ, 2, 2);
    S[0][1] = S[1][0] = Elem::one(QQ);
    auto s = induce_involution(G, Involution{S});
    auto r = graded_anisotropy(G, s);
    ASSERT_EQ(r.verdict, Verdict::No);
    EXPECT_EQ(*r.witness, G.B->basis(0));
}

TEST(Anisotropy, SumOfTwoSquaresOverF3) {
    auto QQ = make_field(0);
    auto K = quadratic_algebra(QQ, -1);
    auto G = build_graded(K, standard_norm(padic(3), 2));
    Mat S = identity(QQ, 2);
    S[1][1] = Elem::of(QQ, -1);
    auto s = induce_involution(G, Involution{S});
    auto r = graded_anisotropy(G, s);
    EXPECT_EQ(r.verdict, Verdict::Yes);
    EXPECT_EQ(r.examined, 4u);
    // exhaustive oracle on F_3^2
    int zeros = 0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) zeros += (a * a + b * b) % 3 == 0;
    EXPECT_EQ(zeros, 1);
    AnisotropyOptions tight;
    tight.budget = 1;
    EXPECT_EQ(graded_anisotropy(G, s, tight).verdict, Verdict::Undecided);
}

TEST(Anisotropy, RationalResidue) {
    auto QQ = make_field(0);
    auto H = quaternion_algebra(Elem::of(QQ, -1), Elem::of(QQ, -1));
    auto G = build_graded(H, standard_norm(trivial_valuation(QQ), 4));
    auto s = induce_involution(G, conjugation_involution(H));
    auto r = graded_anisotropy(G, s);
    EXPECT_EQ(r.verdict, Verdict::Yes);
    EXPECT_NE(r.certificate.find("definite"), std::string::npos);
    auto M = quaternion_algebra(Elem::of(QQ, 1), Elem::of(QQ, 1));
    auto GM = build_graded(M, standard_norm(trivial_valuation(QQ), 4));
    auto rm = graded_anisotropy(GM, induce_involution(GM, conjugation_involution(M)));
    ASSERT_EQ(rm.verdict, Verdict::No);
    EXPECT_TRUE(is_zero(GM.B->mul(conjugation_involution(M).apply(*rm.witness), *rm.witness)));
    // x^2 + y^2 - 3 z^2 - 3 w^2 over Q has no small zero and is indefinite
    auto U = quaternion_algebra(Elem::of(QQ, -1), Elem::of(QQ, 3));
    auto GU = build_graded(U, standard_norm(trivial_valuation(QQ), 4));
    EXPECT_EQ(graded_anisotropy(GU, induce_involution(GU, conjugation_involution(U))).verdict, Verdict::Undecided);
}

TEST(Types, ResidueTypeTable) {
    auto QQ = make_field(0);
    auto K = quadratic_algebra(QQ, -1);
    Mat conj = identity(QQ, 2);
    conj[1][1] = Elem::of(QQ, -1);
    // unitary, unique extension (i inert at 3)
    auto A = tensor_algebra(matrix_algebra(QQ, 2), K);
    auto s = tensor_involution(matrix_algebra(QQ, 2), transpose_involution(QQ, 2), K, Involution{conj});
    auto G = build_graded(A, standard_norm(padic(3), 8));
    auto c = classify_involution(*G.B, induce_involution(G, s).tilde());
    EXPECT_EQ(c.type, InvolutionType::Unitary);
    // two extensions (i splits at 5): the residue involution exchanges the two idempotents
    auto G5 = build_graded(K, standard_norm(padic(5), 2));
    auto t5 = induce_involution(G5, Involution{conj});
    const auto& B = *G5.B;
    std::vector<Vec> idem;
    auto F5 = G5.residue_field();
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) {
            Vec e{Elem::of(F5, a), Elem::of(F5, b)};
            if (b != 0 && B.mul(e, e) == e) idem.push_back(e);
        }
    ASSERT_EQ(idem.size(), 2u);
    EXPECT_EQ(t5.S * idem[0], idem[1]);
    // symplectic and orthogonal rows
    auto H = quaternion_algebra(Elem::of(QQ, -1), Elem::of(QQ, -1));
    auto GH = build_graded(H, standard_norm(padic(3), 4));
    EXPECT_EQ(classify_involution(*GH.B, induce_involution(GH, conjugation_involution(H)).tilde()).type,
              InvolutionType::Symplectic);
    auto GM = build_graded(matrix_algebra(QQ, 2), standard_norm(padic(3), 4));
    EXPECT_EQ(classify_involution(*GM.B, induce_involution(GM, transpose_involution(QQ, 2)).tilde()).type,
              InvolutionType::Orthogonal);
}

TEST(Idempotent, RightIdeals) {
    auto QQ = make_field(0);
    auto M2 = matrix_algebra(QQ, 2);
    auto G = build_graded(M2, standard_norm(padic(2), 4));
    const auto& B = *G.B;
    EXPECT_EQ(ideal_idempotent(G, {B.basis(0)}), B.basis(0));
    EXPECT_EQ(ideal_idempotent(G, {B.basis(1)}), B.basis(0));  // E12 B = row 1
    EXPECT_EQ(ideal_idempotent(G, {B.one()}), B.one());
    // rank-1 generator of nonzero degree
    Value h{Q(1, 2)};
    auto H = build_graded(M2, standard_norm(padic(2), 4, {Value{0}, -h, h, Value{0}}));
    Vec e = ideal_idempotent(H, {H.B->basis(2)});
    EXPECT_EQ(e, H.B->basis(3));  // E21 B = row 2, projection E22
    EXPECT_THROW(ideal_idempotent(H, {H.B->basis(0) + H.B->basis(1)}), std::invalid_argument);
}

TEST(Dump, StableText) {
    auto QQ = make_field(0);
    auto H = quaternion_algebra(Elem::of(QQ, -1), Elem::of(QQ, -1));
    auto G = build_graded(H, standard_norm(padic(3), 4));
    auto s = induce_involution(G, conjugation_involution(H));
    std::string d = graded_dump(G, &s);
    EXPECT_EQ(d, graded_dump(G, &s));
    EXPECT_NE(d.find("[(0)] dim 4: ~1 ~i ~j ~k"), std::string::npos) << d;
    EXPECT_NE(d.find("~i * ~j = ~k"), std::string::npos) << d;
    EXPECT_NE(d.find("~i -> 2*~i"), std::string::npos) << d;
}

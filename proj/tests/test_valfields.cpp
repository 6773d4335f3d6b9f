#include <gtest/gtest.h>

#include <random>

#include "gk/ffield.hpp"
#include "gk/linalg.hpp"
#include "gk/valuation.hpp"

using namespace gk;

namespace {

// independent oracles
int ord5_int(long n) {
    int k = 0;
    while (n % 5 == 0) {
        n /= 5;
        ++k;
    }
    return k;
}

long mod_inverse_brute(long a, long m) {
    for (long x = 1; x < m; ++x)
        if ((a * x) % m == 1) return x;
    return -1;
}

bool has_root_mod(long c1, long c0, long p) {  // x^2 + c1 x + c0
    for (long x = 0; x < p; ++x)
        if ((((x * x + c1 * x + c0) % p) + p) % p == 0) return true;
    return false;
}

Elem random_elem(const FieldPtr& F, std::mt19937& rng, int maxdeg = 2) {
    std::uniform_int_distribution<int> C(-6, 6), D(0, maxdeg);
    auto rpoly = [&](bool nonzero) {
        Poly p(F->nvars(), F->p);
        int terms = 1 + D(rng);
        for (int t = 0; t < terms; ++t) {
            Mono m(F->nvars());
            for (auto& e : m) e = D(rng);
            p = p + Poly::monomial(F->nvars(), F->p, m, Q(C(rng)) * Q(1, F->p ? 1 : 1 + (C(rng) + 6) % 4));
        }
        if (nonzero && p.is_zero()) p = Poly::constant(F->nvars(), F->p, 1);
        return p;
    };
    RatFun a(rpoly(false), rpoly(true));
    if (!F->quadratic()) return Elem(F, a);
    RatFun b(rpoly(false), rpoly(true));
    return Elem(F, a, b);
}

}  // namespace

TEST(Valuate, Examples) {
    auto v3 = padic(3);
    EXPECT_EQ(v3->val(Elem::of(v3->field(), 18)), Value{2});

    auto F = make_field(0, {"x", "y"});
    auto v = monomial(F, {Value{1, 0}, Value{0, 1}});
    EXPECT_EQ(v->val(parse_elem(F, "3x^2*y + x^3")), (Value{2, 1}));

    auto v5 = padic(5);
    auto K = make_quadratic(v5->field(), RatFun::constant(0, 0, 2), "r");
    QuadraticValuation vk(K, v5);
    Elem z = parse_elem(K, "1 + r");
    // oracle: integer norm a^2 - 2 b^2
    long a = 1, b = 1, n = a * a - 2 * b * b;
    EXPECT_EQ(vk.val(z), Value{Q(ord5_int(n < 0 ? -n : n), 2)});
}

TEST(Residue, Examples) {
    auto v3 = padic(3);
    Elem r = v3->residue(parse_elem(v3->field(), "4/5"));
    long expect = (4 * mod_inverse_brute(5 % 3, 3)) % 3;
    EXPECT_EQ(r.rational(), Q(expect));
    EXPECT_TRUE(v3->residue(Elem::one(v3->field())).is_one());
    EXPECT_THROW(v3->residue(parse_elem(v3->field(), "1/3")), std::domain_error);

    auto F = make_field(0, {"x"});
    auto vx = monomial(F, {Value{1}});
    Elem e = parse_elem(F, "(x+2)/(x+1)");
    // oracle: substitute x = 0
    Q sub = Q(0 + 2) / Q(0 + 1);
    EXPECT_EQ(vx->residue(e).rational(), sub);
}

TEST(Section, Examples) {
    auto v3 = padic(3);
    EXPECT_EQ(v3->section(Value{2}).rational(), 9);
    auto F = make_field(0, {"x", "y"});
    auto v = monomial(F, {Value{1, 0}, Value{0, 1}});
    EXPECT_EQ(v->section(Value{1, 1}), parse_elem(F, "x*y"));
    EXPECT_THROW(v->section(Value{Q(1, 2), 0}), std::invalid_argument);

    auto K = make_quadratic(v3->field(), RatFun::constant(0, 0, 3), "r");
    QuadraticValuation vk(K, v3);
    EXPECT_TRUE(vk.ramified());
    EXPECT_EQ(vk.section(Value{Q(1, 2)}), Elem::theta(K));
}

TEST(UniqueExtension, Examples) {
    auto v5 = padic(5), v3 = padic(3);
    auto Q0 = v5->field();
    auto r1 = check_unique_extension(*v5, Elem::of(Q0, 2));
    EXPECT_EQ(r1.unique, !has_root_mod(0, -2, 5));
    EXPECT_TRUE(r1.unique);
    EXPECT_EQ(r1.kind, "unramified");
    auto r2 = check_unique_extension(*v3, Elem::of(Q0, 3));
    EXPECT_TRUE(r2.unique);
    EXPECT_EQ(r2.kind, "ramified");
    auto r3 = check_unique_extension(*v5, Elem::zero(Q0), Elem::one(Q0));  // x^2 + 1
    EXPECT_EQ(r3.unique, !has_root_mod(0, 1, 5));
    EXPECT_FALSE(r3.unique);
    EXPECT_THROW(check_unique_extension(*padic(2), Elem::of(Q0, 3)), UnsupportedError);
}

TEST(UniqueExtension, RejectsSplitValuation) {
    auto v5 = padic(5);
    auto K = make_quadratic(v5->field(), RatFun::constant(0, 0, -1), "i");
    EXPECT_THROW(QuadraticValuation(K, v5), UnsupportedError);
}

namespace {

void check_axioms(const Valuation& v, std::mt19937& rng, int n) {
    const FieldPtr& F = v.field();
    for (int t = 0; t < n; ++t) {
        Elem a = random_elem(F, rng), b = random_elem(F, rng);
        Value va = v.val(a), vb = v.val(b);
        EXPECT_EQ(va.is_inf(), a.is_zero());
        EXPECT_EQ(v.val(a * b), va + vb);
        EXPECT_GE(v.val(a + b), vmin(va, vb));
        if (!a.is_zero() && !b.is_zero()) {
            Elem la = v.lead(a), lb = v.lead(b);
            EXPECT_EQ(v.lead(a * b), la * lb);
            Elem ua = a / v.section(va);
            EXPECT_TRUE(v.val(ua).is_zero());
            EXPECT_EQ(v.residue(v.lift(la)), la);
        }
    }
}

}  // namespace

TEST(ValuationAxioms, AllSupportedFields) {
    std::mt19937 rng(2024);
    check_axioms(*padic(3), rng, 200);
    check_axioms(*padic(5), rng, 200);
    auto Fxy = make_field(0, {"x", "y"});
    check_axioms(*monomial(Fxy, {Value{1, 0}, Value{0, 1}}), rng, 120);
    check_axioms(*monomial(Fxy, {Value{1}, Value{0}}), rng, 120);
    check_axioms(*monomial(make_field(0, {"x"}), {Value{Q(1, 2), 0}}, std::make_pair(3ul, Value{0, 1})), rng, 120);
    check_axioms(
        *monomial(make_field(0, {"x", "y"}), {Value{1, 0}, Value{0, 0}}, std::make_pair(5ul, Value{0, Q(1, 3)})), rng,
        120);
    check_axioms(*monomial(make_field(3, {"x"}), {Value{1}}), rng, 120);
    auto v5 = padic(5);
    check_axioms(QuadraticValuation(make_quadratic(v5->field(), RatFun::constant(0, 0, 2), "r"), v5), rng, 150);
    auto v3 = padic(3);
    check_axioms(QuadraticValuation(make_quadratic(v3->field(), RatFun::constant(0, 0, 3), "r"), v3), rng, 150);
}

TEST(QuadraticExtension, RestrictionAndFundamentalEquality) {
    std::mt19937 rng(5);
    auto v5 = padic(5), v3 = padic(3);
    QuadraticValuation un(make_quadratic(v5->field(), RatFun::constant(0, 0, 2), "r"), v5);
    QuadraticValuation ra(make_quadratic(v3->field(), RatFun::constant(0, 0, 3), "r"), v3);
    for (const QuadraticValuation* L : {&un, &ra}) {
        for (int t = 0; t < 50; ++t) {
            Elem a = random_elem(L->base()->field(), rng);
            EXPECT_EQ(L->val(L->from_base(a)), L->base()->val(a));
        }
        Z e = L->group().index_of(L->base()->group());
        int f = L->residue_field()->quadratic() ? 2 : 1;
        EXPECT_EQ(e * f, 2);
    }
}

TEST(Section, Multiplicativity) {
    auto F = make_field(0, {"x"});
    auto v = monomial(F, {Value{1, 0}}, std::make_pair(7ul, Value{0, Q(1, 3)}));
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b)
            for (int c = -2; c <= 2; ++c)
                for (int d = -2; d <= 2; ++d) {
                    Value g{a, Q(b, 3)}, h{c, Q(d, 3)};
                    EXPECT_EQ(v->section(g) * v->section(h), v->section(g + h));
                    EXPECT_EQ(v->val(v->section(g)), g);
                }
    auto v3 = padic(3);
    QuadraticValuation ra(make_quadratic(v3->field(), RatFun::constant(0, 0, 3), "r"), v3);
    for (int a = -3; a <= 3; ++a)
        for (int b = -3; b <= 3; ++b) {
            Value g{Q(a, 2)}, h{Q(b, 2)};
            EXPECT_EQ(ra.section(g) * ra.section(h), ra.section(g + h));
        }
}

TEST(Residue, ZeroWeightVariablesSurvive) {
    auto F = make_field(0, {"x", "y"});
    auto w = monomial(F, {Value{1}, Value{0}});
    Elem r = w->residue(parse_elem(F, "(y^2 + x*y)/(1 + y + x^3)"));
    auto R = w->residue_field();
    EXPECT_EQ(R->vars, std::vector<std::string>{"y"});
    EXPECT_EQ(r, parse_elem(R, "y^2/(1+y)"));
}

TEST(LinearAlgebra, RationalFunctionMatrices) {
    auto F = make_field(0, {"x", "y"});
    Mat A = {{parse_elem(F, "x"), parse_elem(F, "1")}, {parse_elem(F, "y"), parse_elem(F, "x+y")}};
    auto Ai = inverse(A);
    ASSERT_TRUE(Ai.has_value());
    EXPECT_TRUE(equal(A * *Ai, identity(F, 2)));
    Mat S = {{parse_elem(F, "x"), parse_elem(F, "y")}, {parse_elem(F, "x^2"), parse_elem(F, "x*y")}};
    auto K = kernel(S);
    ASSERT_EQ(K.size(), 1u);
    EXPECT_TRUE(is_zero(S * K[0]));
    EXPECT_EQ(rank(S), 1u);
    EXPECT_EQ(det(A), parse_elem(F, "x^2 + x*y - y"));
}

TEST(FiniteField, TablesAreAField) {
    auto F25 = make_quadratic(make_field(5), RatFun::constant(0, 5, 2), "r");
    auto ff = FiniteField::from(F25);
    ASSERT_TRUE(ff.has_value());
    EXPECT_EQ(ff->q(), 25);
    for (int a = 0; a < 25; ++a) {
        if (a) {
            EXPECT_EQ(ff->mul(a, ff->inv(a)), 1);
        }
        for (int b = 0; b < 25; ++b) {
            EXPECT_EQ(ff->encode(ff->decode(a) * ff->decode(b)), ff->mul(a, b));
            EXPECT_EQ(ff->encode(ff->decode(a) + ff->decode(b)), ff->add(a, b));
        }
    }
}

TEST(Parse, Errors) {
    auto F = make_field(0, {"x"});
    EXPECT_THROW(parse_elem(F, "x + z"), std::exception);
    EXPECT_THROW(parse_elem(F, "(x"), std::exception);
    EXPECT_EQ(parse_elem(F, "2x^2 - x/2"), Elem(F, RatFun(Poly::monomial(1, 0, {2}, 2) - Poly::monomial(1, 0, {1}, Q(1, 2)))));
}

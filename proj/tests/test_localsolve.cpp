#include "oracles.hpp"
#include "superell/localsolve.hpp"

#include <gtest/gtest.h>

using namespace superell;

namespace {

BinaryForm form(int n, std::vector<long> c) {
    std::vector<Int> v;
    for (long x : c) v.emplace_back(x);
    return BinaryForm(n, v);
}

// Coefficients r * p^e with small r and e in {0,1,2}, so that residue
// discs actually have to be refined.
BinaryForm random_padic_form(std::mt19937_64& rng, int n, long p) {
    while (true) {
        std::vector<Int> c(2 * n + 2);
        for (auto& v : c) v = oracle::random_int(rng, -6, 6) * ipow(Int(p), oracle::random_int(rng, 0, 2).get_ui());
        BinaryForm F(n, c);
        if (F.lead() != 0 && disc(F) != 0) return F;
    }
}

// Dedekind's criterion for a monic integer polynomial g at p.
bool dedekind_maximal(const IntPoly& g, std::uint64_t p) {
    Int P(static_cast<unsigned long>(p));
    auto fac = factor_mod_p(ModPoly::from_int(p, g));
    auto lift = [](const ModPoly& m) {
        std::vector<Int> c;
        for (auto x : m.coeffs()) c.emplace_back(static_cast<unsigned long>(x));
        return IntPoly(c);
    };
    IntPoly rad = IntPoly::constant(Int(1)), rest = IntPoly::constant(Int(1));
    for (auto& [phi, e] : fac.factors) {
        rad = rad * lift(phi);
        for (int k = 1; k < e; ++k) rest = rest * lift(phi);
    }
    IntPoly diff = g - rad * rest;
    std::vector<Int> q;
    for (auto& c : diff.coeffs()) {
        EXPECT_EQ(c % P, 0);
        q.push_back(c / P);
    }
    ModPoly F1 = ModPoly::from_int(p, IntPoly(q));
    ModPoly d = poly_gcd_mod_p(ModPoly::from_int(p, rad), ModPoly::from_int(p, rest));
    if (!F1.is_zero()) d = poly_gcd_mod_p(d, F1);
    return d.degree() == 0;
}

Unimodular2 random_sl2(std::mt19937_64& rng) {
    Unimodular2 g;
    for (int i = 0; i < 4; ++i) {
        Int k = oracle::random_int(rng, -2, 2);
        g = g * (i % 2 ? Unimodular2(1, k, 0, 1) : Unimodular2(1, 0, k, 1));
    }
    return g;
}

}  // namespace

TEST(ZpSoluble, GlobalPointGivesLocalPoints) {
    auto F = form(1, {2, 1, 1, 1});
    for (long p : {2, 3, 5, 7, 11}) {
        auto r = zp_soluble(F, Int(p));
        EXPECT_TRUE(r.soluble) << p;
        ASSERT_TRUE(r.witness.has_value());
        EXPECT_TRUE(verify_local_witness(F, Int(p), *r.witness));
    }
}

TEST(ZpSoluble, UnitValueIsTwistedToASquare) {
    auto F = form(1, {5, 2, 0, 5});
    auto r7 = zp_soluble(F, Int(7));
    EXPECT_TRUE(r7.soluble);
    // F(1,1) = 12 is a unit at 5 but a non-square mod 5; (12,12) gives 12^4
    auto r5 = zp_soluble(F, Int(5));
    ASSERT_TRUE(r5.soluble);
    ASSERT_EQ(r5.witness->kind, "square");
    EXPECT_EQ(F.eval(r5.witness->x0, r5.witness->z0), r5.witness->c * r5.witness->c);
    EXPECT_EQ(F.eval(Int(12), Int(12)), ipow(Int(12), 4));
    EXPECT_EQ(oracle::solubility_by_residues(F, Int(5), 2), 1);
}

TEST(ZpSoluble, OddValuationEverywhereIsRefuted) {
    // F/3 = x^3 - x z^2 + z^3 is 1 on all of P^1(F_3)
    auto F = form(1, {3, 0, -3, 3});
    auto r = zp_soluble(F, Int(3));
    EXPECT_FALSE(r.soluble);
    EXPECT_FALSE(r.witness.has_value());
    EXPECT_GT(r.nodes, 0);
    EXPECT_EQ(oracle::solubility_by_residues(F, Int(3), 3), 0);
    EXPECT_TRUE(zp_soluble(F, Int(2)).soluble);
}

TEST(ZpSoluble, AgreesWithResidueEnumeration) {
    std::mt19937_64 rng(41);
    int decided = 0, refuted = 0, cases = 0;
    for (int n : {1, 2})
        for (long p : {2, 3, 5, 7})
            for (int t = 0; t < 25; ++t, ++cases) {
                auto F = random_padic_form(rng, n, p);
                auto r = zp_soluble(F, Int(p));
                EXPECT_LE(r.depth_used, r.depth_cap) << F.str() << " p=" << p;
                if (r.soluble) EXPECT_TRUE(verify_local_witness(F, Int(p), *r.witness));
                int k = r.depth_cap + 1;
                while (k > 1 && ipow(Int(p), k) > 60000) --k;
                int o = oracle::solubility_by_residues(F, Int(p), k);
                if (o >= 0) {
                    ++decided;
                    EXPECT_EQ(o == 1, r.soluble) << F.str() << " p=" << p;
                }
                if (!r.soluble) ++refuted;
            }
    EXPECT_EQ(cases, 200);
    EXPECT_GT(decided, 150);
    EXPECT_GT(refuted, 0);
}

TEST(ZpSoluble, InvariantUnderSl2) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 40; ++t) {
        long p = t % 2 ? 3 : 2;
        auto F = random_padic_form(rng, 1 + t % 2, p);
        auto G = sl2_act(random_sl2(rng), F);
        EXPECT_EQ(zp_soluble(F, Int(p)).soluble, zp_soluble(G, Int(p)).soluble) << F.str();
    }
}

TEST(Real, AlwaysSolubleWithWitness) {
    for (auto F : {form(1, {1, 0, 0, 1}), form(1, {-1, 0, 0, -1}), form(2, {-3, 1, 0, 0, 2, -7})}) {
        auto r = real_soluble(F);
        EXPECT_TRUE(r.soluble);
        EXPECT_EQ(r.z0, 0);
        EXPECT_EQ(F.eval(r.x0, r.z0), r.c * r.c);
    }
}

TEST(PMaximal, ClassicalExamples) {
    EXPECT_FALSE(p_maximal(form(1, {1, 0, 0, 9}), Int(3)));
    EXPECT_FALSE(dedekind_maximal(form(1, {1, 0, 0, 9}).dehomogenize_x(), 3));
    EXPECT_TRUE(p_maximal(form(1, {1, 0, 0, 3}), Int(3)));
    auto F = form(1, {2, 1, 1, 1});
    Int D = disc(F);
    for (long p : {3, 5, 7, 11, 13})
        if (D % p != 0) EXPECT_TRUE(p_maximal(F, Int(p)));
    EXPECT_THROW(p_maximal(form(1, {1, 0, 0, 0}), Int(3)), PreconditionError);
}

TEST(PMaximal, AgreesWithDedekindOnMonicForms) {
    std::mt19937_64 rng(3);
    int nonmax = 0;
    for (int t = 0; t < 60; ++t) {
        long p = t % 3 == 0 ? 2 : (t % 3 == 1 ? 3 : 5);
        int n = 1 + t % 2;
        auto F = random_padic_form(rng, n, p);
        std::vector<Int> c = F.f;
        c[0] = 1;
        BinaryForm G(n, c);
        if (disc(G) == 0) continue;
        bool m = p_maximal(G, Int(p));
        EXPECT_EQ(m, dedekind_maximal(G.dehomogenize_x(), p)) << G.str() << " p=" << p;
        nonmax += !m;
    }
    EXPECT_GT(nonmax, 5);
}

TEST(PMaximal, AgreesWithIntegralElementSearch) {
    std::mt19937_64 rng(5);
    int nonmax = 0;
    for (int t = 0; t < 40; ++t) {
        int n = t < 28 ? 1 : 2;
        long p = n == 1 ? (t % 3 == 0 ? 2 : (t % 3 == 1 ? 3 : 5)) : (t % 2 ? 2 : 3);
        auto F = random_padic_form(rng, n, p);
        bool m = p_maximal(F, Int(p));
        EXPECT_EQ(m, oracle::maximal_by_integral_elements(F, p)) << F.str() << " p=" << p;
        nonmax += !m;
    }
    EXPECT_GT(nonmax, 3);
}

TEST(PMaximal, DeterminedModuloPSquared) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 6; ++t) {
        long p = t % 2 ? 3 : 2;
        auto F = random_padic_form(rng, 1, p);
        bool base = oracle::maximal_by_integral_elements(F, p);
        EXPECT_EQ(base, p_maximal(F, Int(p)));
        for (int l = 0; l < 10; ++l) {
            std::vector<Int> c = F.f;
            for (auto& v : c) v += Int(p * p) * oracle::random_int(rng, -3, 3);
            BinaryForm G(1, c);
            if (G.lead() == 0 || disc(G) == 0) continue;
            EXPECT_EQ(oracle::maximal_by_integral_elements(G, p), base) << G.str();
            EXPECT_EQ(p_maximal(G, Int(p)), base);
        }
    }
}

TEST(PMaximal, InvariantUnderSl2) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        long p = t % 2 ? 3 : 2;
        auto F = random_padic_form(rng, 1 + t % 2, p);
        auto G = sl2_act(random_sl2(rng), F);
        EXPECT_EQ(p_maximal(F, Int(p)), p_maximal(G, Int(p))) << F.str();
    }
}

TEST(ConditionB, LiteralSquares) {
    // reductions x^4 z, x^3 z^2, 2 x^4 z modulo 3
    EXPECT_TRUE(reduced_is_square(form(2, {3, 1, 0, 0, 0, 3}), Int(3)));
    EXPECT_FALSE(reduced_is_square(form(2, {3, 0, 1, 0, 0, 3}), Int(3)));
    EXPECT_FALSE(reduced_is_square(form(2, {3, 2, 0, 0, 0, 3}), Int(3)));
    // (x + z)^2 after stripping z^3: f = 0, 0, 0, 1, 2, 1 mod 3
    EXPECT_TRUE(reduced_is_square(form(2, {3, 3, 0, 1, 2, 1}), Int(3)));
    EXPECT_FALSE(reduced_is_square(form(2, {3, 3, 0, 1, 0, 1}), Int(3)));
}

TEST(ConditionB, ReportIsExclusiveAndNeedsSquarefreeDivisor) {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 60; ++t) {
        auto F = oracle::random_separable_form(rng, 2, 9);
        std::vector<Int> c = F.f;
        c[0] = 3 * (t % 2 ? 1 : -2);
        BinaryForm G(2, c);
        if (disc(G) == 0) continue;
        auto r = condition_report(G, Int(3));
        EXPECT_FALSE(r.cond_a && r.cond_b);
        EXPECT_EQ(r.cond_b, condition_b(G, Int(3)));
    }
    EXPECT_THROW(condition_report(form(1, {9, 1, 0, 1}), Int(3)), PreconditionError);
}

TEST(Everywhere, GlobalPointAndFailure) {
    auto ok = everywhere_local(form(1, {2, 1, 1, 1}), 50);
    EXPECT_TRUE(ok.soluble);
    EXPECT_TRUE(ok.failing.empty());
    EXPECT_GE(ok.checked_bound, 50);
    EXPECT_FALSE(ok.asserted_rule.empty());

    auto bad = everywhere_local(form(1, {3, 0, -3, 3}), 10);
    EXPECT_FALSE(bad.soluble);
    ASSERT_EQ(bad.failing.size(), 1u);
    EXPECT_EQ(bad.failing[0], 3);
    ASSERT_EQ(bad.vanish_flags.size(), 1u);
    EXPECT_EQ(bad.vanish_flags[0], 3);
}

TEST(Everywhere, VanishScreen) {
    EXPECT_TRUE(vanishes_on_p1(form(1, {2, 1, 1, 2}), 2));
    EXPECT_FALSE(vanishes_on_p1(form(1, {2, 1, 1, 1}), 2));
    auto r = everywhere_local(form(1, {2, 1, 1, 2}), 10);
    ASSERT_EQ(r.vanish_flags.size(), 1u);
    EXPECT_EQ(r.vanish_flags[0], 2);
}

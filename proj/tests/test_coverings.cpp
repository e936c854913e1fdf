#include "oracles.hpp"
#include "superell/coverings.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace superell;

namespace {

std::vector<long> distinct_residues(std::mt19937_64& rng, int k, long p) {
    std::set<long> seen;
    std::vector<long> out;
    while (static_cast<int>(out.size()) < k) {
        long r = static_cast<long>(rng() % p);
        if (seen.insert(r).second) out.push_back(r);
    }
    return out;
}

std::vector<long> nonzero_residues(std::mt19937_64& rng, int k, long p) {
    std::vector<long> out;
    for (int i = 0; i < k; ++i) out.push_back(1 + static_cast<long>(rng() % (p - 1)));
    return out;
}

SplitCoveringSpec<Rat> random_rat_spec(std::mt19937_64& rng, int n) {
    std::vector<Rat> roots, delta;
    std::set<long> seen;
    while (static_cast<int>(roots.size()) < 2 * n + 1) {
        long r = oracle::random_int(rng, -9, 9).get_si();
        if (seen.insert(r).second) roots.emplace_back(r);
    }
    for (int i = 0; i < 2 * n + 1; ++i) {
        long d = 0;
        while (d == 0) d = oracle::random_int(rng, -7, 7).get_si();
        delta.emplace_back(d, 1 + static_cast<long>(rng() % 3));
    }
    for (auto& d : delta) d.canonicalize();
    return make_rat_spec(roots, delta);
}

}  // namespace

TEST(Covering, SingleRelationForCubic) {
    auto s = make_rat_spec({Rat(0), Rat(1), Rat(2)}, {Rat(1), Rat(1), Rat(1)});
    auto gens = covering_ideal(s);
    ASSERT_EQ(gens.size(), 1u);
    EXPECT_EQ(gens[0].coeffs, (std::vector<Rat>{Rat(1), Rat(-2), Rat(1)}));
}

TEST(Covering, GeneratorCountAndRank) {
    std::mt19937_64 rng(11);
    for (int n = 1; n <= 4; ++n)
        for (int it = 0; it < 5; ++it) EXPECT_EQ(static_cast<int>(covering_ideal(random_rat_spec(rng, n)).size()), 2 * n - 1);
}

TEST(Covering, EveryQuadrupleLiesInTheSpan) {
    std::mt19937_64 rng(12);
    for (int n = 1; n <= 3; ++n) {
        auto s = random_rat_spec(rng, n);
        std::vector<std::vector<Rat>> rows;
        for (auto& g : covering_ideal(s)) rows.push_back(g.coeffs);
        int N = s.dim();
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                for (int l = 0; l < N; ++l)
                    for (int m = 0; m < N; ++m) {
                        auto r = covering_relation(s, i, j, l, m);
                        EXPECT_TRUE(solve_combination(rows, r.coeffs, s.ctx).has_value())
                            << "n=" << n << " (" << i << j << l << m << ")";
                    }
    }
}

TEST(Covering, ConicOverF7) {
    auto s = make_fp_spec(7, {0, 1, 2}, {1, 1, 1});
    auto fc = fiber_census(s);
    EXPECT_EQ(fc.total, 8u);
    EXPECT_LE(fc.max_fiber, 4u);
    EXPECT_LE(fc.max_branch_fiber, 2u);
    std::vector<Fp> one(3, Fp(1, 7));
    auto v = pi_delta_eval(s, one);
    EXPECT_EQ(v.first, Fp(1, 7));
    EXPECT_TRUE(v.second.is_zero());
}

TEST(Covering, FiberBoundsOverSmallFields) {
    std::mt19937_64 rng(13);
    struct Case {
        int n;
        long p;
    };
    for (Case c : {Case{1, 5}, Case{1, 7}, Case{1, 11}, Case{1, 13}, Case{2, 5}, Case{2, 7}}) {
        for (int it = 0; it < 3; ++it) {
            auto s = make_fp_spec(c.p, distinct_residues(rng, 2 * c.n + 1, c.p), nonzero_residues(rng, 2 * c.n + 1, c.p));
            auto fc = fiber_census(s);
            std::uint64_t sum = 0;
            for (auto f : fc.fibers) sum += f;
            EXPECT_EQ(sum, fc.total);
            EXPECT_LE(fc.max_fiber, 1u << (2 * c.n));
            EXPECT_LE(fc.max_branch_fiber, 1u << (2 * c.n - 1));
        }
    }
}

TEST(Covering, SquareScalingIsAnIsomorphism) {
    std::mt19937_64 rng(14);
    const long p = 11;
    for (int it = 0; it < 5; ++it) {
        auto roots = distinct_residues(rng, 5, p);
        auto delta = nonzero_residues(rng, 5, p), sc = nonzero_residues(rng, 5, p);
        auto s = make_fp_spec(p, roots, delta);
        std::vector<long> scaled;
        for (int i = 0; i < 5; ++i) scaled.push_back(delta[i] * sc[i] * sc[i] % p);
        auto t = make_fp_spec(p, roots, scaled);
        auto pts = covering_points(s);
        EXPECT_EQ(pts.size(), covering_points(t).size());
        for (std::size_t k = 0; k < pts.size(); k += 7) {
            std::vector<Fp> W;
            for (int i = 0; i < 5; ++i) W.push_back(pts[k][i] / Fp(sc[i], p));
            ASSERT_TRUE(on_covering(t, W));
            EXPECT_EQ(pi_delta_eval(s, pts[k]), pi_delta_eval(t, W));
        }
    }
}

TEST(Covering, MapIsIndependentOfThePair) {
    std::mt19937_64 rng(15);
    const long p = 13;
    auto s = make_fp_spec(p, distinct_residues(rng, 5, p), nonzero_residues(rng, 5, p));
    auto pts = covering_points(s);
    ASSERT_GE(pts.size(), 20u);
    std::shuffle(pts.begin(), pts.end(), rng);
    for (int k = 0; k < 20; ++k) EXPECT_NO_THROW(pi_delta_eval(s, pts[k]));
}

TEST(Covering, SolutionBasePointLiftsTheSolution) {
    std::mt19937_64 rng(16);
    int weierstrass = 0;
    for (int it = 0; it < 24; ++it) {
        int n = 1 + it % 3, N = 2 * n + 1;
        std::vector<Int> roots;
        std::set<long> seen;
        while (static_cast<int>(roots.size()) < N) {
            long r = oracle::random_int(rng, -8, 8).get_si();
            if (seen.insert(r).second) roots.emplace_back(r);
        }
        Int x0, z0, f0;
        if (it % 4 == 0) {
            x0 = roots[rng() % N];
            z0 = 1;
            f0 = oracle::random_int(rng, 1, 9);
        } else {
            do {
                x0 = oracle::random_int(rng, -9, 9);
                z0 = oracle::random_int(rng, 1, 5);
            } while (gcd(x0, z0) != 1 || std::any_of(roots.begin(), roots.end(), [&](const Int& t) { return x0 == t * z0; }));
            f0 = 1;
            for (auto& t : roots) f0 *= x0 - t * z0;
        }
        auto sc = solution_covering(f0, roots, x0, z0);
        weierstrass += sc.weierstrass;
        auto v = pi_delta_eval(sc.spec, sc.base_point);
        EXPECT_EQ(v.first, Rat(x0, z0) * Rat(1));
        EXPECT_EQ(v.second, Rat(1));
        // the twist f0 delta has square norm
        Rat q = 1;
        for (auto& d : sc.spec.delta) q *= d;
        EXPECT_TRUE(mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t()));
    }
    EXPECT_GE(weierstrass, 6);
}

TEST(Covering, PointAtInfinityMapsToInfinity) {
    auto sc = solution_covering(Int(4), {Int(0), Int(1), Int(-1)}, Int(1), Int(0));
    auto v = pi_delta_eval(sc.spec, sc.base_point);
    EXPECT_EQ(v.first, Rat(1));
    EXPECT_EQ(v.second, Rat(0));
}

TEST(Covering, Preconditions) {
    EXPECT_THROW(make_fp_spec(7, {0, 1, 1}, {1, 1, 1}), PreconditionError);
    EXPECT_THROW(make_fp_spec(7, {0, 1, 2}, {1, 0, 1}), PreconditionError);
    EXPECT_THROW(make_fp_spec(9, {0, 1, 2}, {1, 1, 1}), PreconditionError);
    auto s = make_fp_spec(101, {0, 1, 2, 3, 4}, {1, 1, 1, 1, 1});
    EXPECT_THROW(fiber_census(s, 1000000), PreconditionError);
    std::vector<Fp> off{Fp(1, 101), Fp(0, 101), Fp(0, 101), Fp(0, 101), Fp(0, 101)};
    EXPECT_THROW(pi_delta_eval(s, off), PreconditionError);
    EXPECT_THROW(solution_covering(Int(2), {Int(0), Int(1), Int(2)}, Int(3), Int(1)), PreconditionError);
}

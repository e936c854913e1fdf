#pragma once
// Brute-force reference implementations used only by the tests. They are
// deliberately naive and share no code paths with the library algorithms.

#include "superell/bigint.hpp"
#include "superell/forms.hpp"
#include "superell/modpoly.hpp"
#include "superell/orders.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using superell::Int;
using superell::ModPoly;
using superell::Rat;

// All monic polynomials of the given degree over F_p, coefficient vectors low-to-high.
inline std::vector<std::vector<std::uint64_t>> monic_polys(std::uint64_t p, int deg) {
    std::vector<std::vector<std::uint64_t>> out;
    std::vector<std::uint64_t> c(deg + 1, 0);
    c[deg] = 1;
    while (true) {
        out.push_back(c);
        int i = 0;
        while (i < deg && ++c[i] == p) c[i++] = 0;
        if (i == deg) break;
    }
    return out;
}

// Naive polynomial remainder over F_p (divisor monic).
inline std::vector<std::uint64_t> rem(std::vector<std::uint64_t> a, const std::vector<std::uint64_t>& d, std::uint64_t p) {
    int dd = static_cast<int>(d.size()) - 1;
    for (int k = static_cast<int>(a.size()) - 1; k >= dd; --k) {
        std::uint64_t t = a[k] % p;
        if (!t) continue;
        for (int i = 0; i <= dd; ++i) a[k - dd + i] = (a[k - dd + i] + (p - t) * d[i]) % p;
    }
    a.resize(std::max(0, dd));
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

inline std::vector<std::uint64_t> quot(std::vector<std::uint64_t> a, const std::vector<std::uint64_t>& d, std::uint64_t p) {
    int dd = static_cast<int>(d.size()) - 1;
    std::vector<std::uint64_t> q(a.size() - dd, 0);
    for (int k = static_cast<int>(a.size()) - 1; k >= dd; --k) {
        std::uint64_t t = a[k] % p;
        q[k - dd] = t;
        if (!t) continue;
        for (int i = 0; i <= dd; ++i) a[k - dd + i] = (a[k - dd + i] + (p - t) * d[i]) % p;
    }
    return q;
}

// Irreducible iff no monic divisor of degree 1..deg/2.
inline bool irreducible(const std::vector<std::uint64_t>& f, std::uint64_t p) {
    int deg = static_cast<int>(f.size()) - 1;
    if (deg < 1) return false;
    for (int d = 1; 2 * d <= deg; ++d)
        for (auto& g : monic_polys(p, d))
            if (rem(f, g, p).empty()) return false;
    return true;
}

// Number of distinct monic irreducible factors, by repeated trial division.
inline int distinct_factor_count(std::vector<std::uint64_t> f, std::uint64_t p) {
    int count = 0;
    int deg = static_cast<int>(f.size()) - 1;
    for (int d = 1; d <= deg; ++d)
        for (auto& g : monic_polys(p, d)) {
            if (static_cast<int>(f.size()) - 1 < d) return count;
            if (!irreducible(g, p)) continue;
            if (!rem(f, g, p).empty()) continue;
            ++count;
            while (static_cast<int>(f.size()) - 1 >= d && rem(f, g, p).empty()) f = quot(f, g, p);
        }
    return count;
}

inline Int random_int(std::mt19937_64& rng, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return Int(d(rng));
}

inline superell::BinaryForm random_form(std::mt19937_64& rng, int n, long bound, bool nonzero_lead = true) {
    std::vector<Int> c(2 * n + 2);
    for (auto& v : c) v = random_int(rng, -bound, bound);
    while (nonzero_lead && c[0] == 0) c[0] = random_int(rng, -bound, bound);
    return superell::BinaryForm(n, c);
}

inline superell::BinaryForm random_separable_form(std::mt19937_64& rng, int n, long bound) {
    while (true) {
        auto F = random_form(rng, n, bound);
        if (superell::disc(F) != 0) return F;
    }
}

struct Instance {
    superell::BinaryForm F;
    Int x0, c, z0;
};

// A separable form with a primitive solution. Non-Weierstrass instances pick
// the inner coefficients freely and solve for (f0, f_{2n+1}) so that
// F(x0, z0) = c^2; Weierstrass instances multiply (z0 x - x0 z) by a random form.
inline Instance random_instance(std::mt19937_64& rng, int n, bool weierstrass, long bound = 4) {
    int N = 2 * n + 1;
    while (true) {
        Int x0 = random_int(rng, -3, 3), z0 = random_int(rng, -3, 3), g;
        mpz_gcd(g.get_mpz_t(), x0.get_mpz_t(), z0.get_mpz_t());
        if (g != 1) continue;
        std::vector<Int> f(N + 1, Int(0));
        Int c = 0;
        if (weierstrass) {
            if (z0 == 0) continue;
            std::vector<Int> G(N);
            for (auto& v : G) v = random_int(rng, -bound, bound);
            if (G[0] == 0) continue;
            for (int i = 0; i < N; ++i) {
                f[i] += z0 * G[i];
                f[i + 1] -= x0 * G[i];
            }
        } else {
            c = random_int(rng, 1, 6);
            for (auto& v : f) v = random_int(rng, -bound, bound);
            Int r = c * c;
            for (int i = 0; i < N; ++i) r -= f[i] * superell::ipow(x0, N - i) * superell::ipow(z0, i);
            r -= f[N] * superell::ipow(z0, N);
            Int X = superell::ipow(x0, N), Z = superell::ipow(z0, N), s, t;
            superell::xgcd(X, Z, s, t);
            Int k = 0;
            if (Z != 0) {
                // k = -round(r s / Z)
                Int num = 2 * r * s + Z, den = 2 * Z;
                if (den < 0) {
                    num = -num;
                    den = -den;
                }
                mpz_fdiv_q(k.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
                k = -k;
            }
            f[0] += r * s + k * Z;
            f[N] += r * t - k * X;
        }
        superell::BinaryForm F(n, f);
        if (F.lead() == 0 || superell::disc(F) == 0) continue;
        if (F.eval(x0, z0) != c * c) continue;
        return {F, x0, c, z0};
    }
}

// Z_p-solubility read off P^1(Z/p^k): 1 if some primitive residue point has
// F-value of even valuation below k, 0 if every point has odd valuation below
// k, -1 if undecided at this precision.
inline int solubility_by_residues(const superell::BinaryForm& F, const Int& p, int k) {
    Int pk = superell::ipow(p, k);
    bool all_odd = true;
    auto look = [&](const Int& x, const Int& z) {
        Int v = F.eval(x, z) % pk;
        if (v == 0) {
            all_odd = false;
            return false;
        }
        int e = 0;
        while (v % p == 0) {
            v /= p;
            ++e;
        }
        if (e % 2 == 0) return true;
        return false;
    };
    for (Int x = 0; x < pk; ++x)
        if (look(x, Int(1))) return 1;
    for (Int t = 0; t < pk / p; ++t)
        if (look(Int(1), p * t)) return 1;
    return all_odd ? 0 : -1;
}

// R_F is p-maximal iff no y/p with y in R_F \ pR_F is integral, i.e. has a
// characteristic polynomial with coefficients c_k divisible by p^k.
inline bool maximal_by_integral_elements(const superell::BinaryForm& F, std::uint64_t p) {
    using namespace superell;
    auto ctx = FormContext::build(F);
    int N = F.degree();
    std::vector<AlgNum> zeta;
    for (int i = 0; i < N; ++i) zeta.push_back(AlgNum::zeta(ctx, i));
    std::vector<std::uint64_t> y(N, 0);
    const Int P(static_cast<unsigned long>(p));
    while (true) {
        int i = 0;
        while (i < N && ++y[i] == p) y[i++] = 0;
        if (i == N) break;
        AlgNum a = AlgNum::rational(ctx, Rat(0));
        for (int j = 0; j < N; ++j)
            if (y[j]) a = a + Rat(Int(static_cast<unsigned long>(y[j]))) * zeta[j];
        RatMat Mz = ctx->zeta_basis() * a.mult_matrix() * ctx->zeta_basis_inverse();
        IntMat M(N, N);
        for (int r = 0; r < N; ++r)
            for (int c = 0; c < N; ++c) {
                if (Mz(r, c).get_den() != 1) return false;  // not integral: should not happen
                M(r, c) = Mz(r, c).get_num();
            }
        IntPoly cp = char_poly(M);
        bool integral = true;
        for (int k = 1; k <= N && integral; ++k) {
            Int c = cp[N - k];
            if (c != 0 && valuation(c, P) < k) integral = false;
        }
        if (integral) return false;
    }
    return true;
}

}  // namespace oracle

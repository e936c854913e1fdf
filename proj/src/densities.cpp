#include "superell/densities.hpp"

#include "superell/errors.hpp"
#include "superell/localsolve.hpp"
#include "superell/sturm.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace superell {

namespace {

using u64 = std::uint64_t;

Int U(u64 x) { return Int(static_cast<unsigned long>(x)); }

Rat pow2(long e) { return rpow(Rat(2), e); }

int moebius(int e) {
    int r = 1;
    for (int q = 2; q * q <= e; ++q)
        if (e % q == 0) {
            e /= q;
            if (e % q == 0) return 0;
            r = -r;
        }
    if (e > 1) r = -r;
    return r;
}

Int binomial(const Int& n, unsigned long k) {
    if (n < 0) return 0;
    Int r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

// Round a positive rational up to a multiple of 2^-bits.
Rat round_up(const Rat& x, unsigned bits) {
    Int scaled = x.get_num() << bits;
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.get_den().get_mpz_t());
    Rat r(q, Int(1) << bits);
    r.canonicalize();
    return r;
}

}  // namespace

std::vector<Int> squarefree_divisors(const Int& f0) {
    require(f0 != 0, "f0 must be nonzero");
    return squarefree_primes(f0);
}

Rat mu(const Int& f0, int n) {
    require(n >= 1, "mu: n must be positive");
    Rat r = 1;
    for (auto& p : squarefree_divisors(f0)) {
        Rat P(p);
        r *= 1 / (P * P) + (P - 1) / rpow(P, n + 1);
    }
    return r;
}

Rat mu_prime(const Int& f0) {
    Rat r = 1;
    for (auto& p : squarefree_divisors(f0)) r *= 1 - 1 / rpow(Rat(p), p.get_si());
    return r;
}

DensityReport density_report(const Int& f0, int n) {
    DensityReport d;
    d.f0 = f0;
    d.n = n;
    d.mu = mu(f0, n);
    d.mu_prime = mu_prime(f0);
    d.one_minus_mu = 1 - d.mu;
    d.mu_prime_minus_mu = d.mu_prime - d.mu;
    return d;
}

std::string percent_floor_tenths(const Rat& x) {
    Rat scaled = x * 1000;
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
    bool neg = q < 0;
    Int a = abs(q);
    Int whole = a / 10, frac = a % 10;
    return std::string(neg ? "-" : "") + whole.get_str() + "." + frac.get_str();
}

std::vector<Table1Column> table1() {
    const std::vector<std::vector<long>> sets = {{2}, {3}, {5}, {2, 3}, {2, 5}, {3, 7}, {2, 3, 7}};
    std::vector<Table1Column> out;
    for (const auto& s : sets) {
        Table1Column c;
        c.primes = s;
        Rat sq = 1, pp = 1;
        for (long p : s) {
            sq *= Rat(1, p * p);
            pp *= 1 - 1 / rpow(Rat(p), p);
        }
        c.lim_one_minus_mu = 1 - sq;
        c.lim_mu_prime_minus_mu = pp - sq;
        c.row1 = percent_floor_tenths(c.lim_one_minus_mu);
        c.row2 = percent_floor_tenths(c.lim_mu_prime_minus_mu);
        out.push_back(c);
    }
    return out;
}

Int irreducible_count(u64 p, int d) {
    require(d >= 1, "irreducible_count: degree must be positive");
    Int s = 0;
    for (int e = 1; e <= d; ++e)
        if (d % e == 0) s += moebius(e) * ipow(U(p), d / e);
    return s / d;
}

std::vector<Int> factor_class_counts(u64 p, int deg) {
    require(deg >= 0, "factor_class_counts: negative degree");
    // C[x-degree][z-degree] of prod_d (1 + z x^d/(1-x^d))^{N_p(d)}
    std::vector<std::vector<Int>> C(deg + 1, std::vector<Int>(deg + 1, Int(0)));
    C[0][0] = 1;
    for (int d = 1; d <= deg; ++d) {
        Int N = irreducible_count(p, d);
        int J = deg / d;
        // P[x][j] = C(N,j) [x-coefficient of Y^j]
        std::vector<std::vector<Int>> P(deg + 1, std::vector<Int>(J + 1, Int(0)));
        P[0][0] = 1;
        for (int j = 1; j <= J; ++j) {
            Int b = binomial(N, j);
            if (b == 0) break;
            for (int k = 0; d * (j + k) <= deg; ++k) P[d * (j + k)][j] = b * binomial(Int(k + j - 1), j - 1);
        }
        std::vector<std::vector<Int>> R(deg + 1, std::vector<Int>(deg + 1, Int(0)));
        for (int a = 0; a <= deg; ++a)
            for (int m = 0; m <= deg; ++m) {
                if (C[a][m] == 0) continue;
                for (int b = 0; a + b <= deg; ++b)
                    for (int j = 0; j <= J && m + j <= deg; ++j)
                        if (P[b][j] != 0) R[a + b][m + j] += C[a][m] * P[b][j];
            }
        C = std::move(R);
    }
    return C[deg];
}

Int count_factor_classes(u64 p, int deg, int m) {
    require(deg >= 1 && m >= 0 && m <= deg, "count_factor_classes: need 0 <= m <= deg");
    return factor_class_counts(p, deg)[m];
}

Int count_I8(int n, int m) {
    require(n >= 0 && m >= 0 && m <= 2 * n + 1, "count_I8: need 0 <= m <= 2n+1");
    return ipow(Int(4), 2 * n + 1) * count_factor_classes(2, 2 * n + 1, m);
}

Int group_order_G_mod_p(int n, u64 p) {
    require(p > 2 && is_prime(p), "group_order_G_mod_p: odd prime expected");
    Int P = U(p), r = ipow(P, static_cast<unsigned long>(n) * n);
    for (int i = 1; i <= n; ++i) r *= ipow(P, 2 * i) - 1;
    return r;
}

Int group_order_Ghat_mod8(int n) {
    require(n >= 0, "group_order_Ghat_mod8: n must be nonnegative");
    if (n == 0) return 4;
    Int r = ipow(Int(2), 5 * n * n + 3 * n + 3) * (ipow(Int(2), n) - 1);
    for (int i = 1; i < n; ++i) r *= ipow(Int(4), i) - 1;
    return r;
}

Rat vol_G_Zp(int n, u64 p) { return Rat(group_order_G_mod_p(n, p)) / Rat(ipow(U(p), 2 * n * n + n)); }

Rat g8_ratio(int n) { return Rat(group_order_Ghat_mod8(n)) / Rat(4 * ipow(Int(8), 2 * n * n + n)); }

Int brute_orthogonal_count(int n, u64 m, bool special) {
    int N = 2 * n + 1;
    require(N <= 3 && m >= 2, "brute_orthogonal_count: dimension at most 3");
    auto A0 = [&](int i, int j) -> u64 { return i + j == N - 1 ? 1 : 0; };
    u64 total = 1;
    for (int i = 0; i < N; ++i) total *= m;
    std::vector<std::vector<u64>> vecs;
    for (u64 idx = 0; idx < total; ++idx) {
        std::vector<u64> v(N);
        u64 t = idx;
        for (int i = 0; i < N; ++i) {
            v[i] = t % m;
            t /= m;
        }
        vecs.push_back(v);
    }
    auto form = [&](const std::vector<u64>& a, const std::vector<u64>& b) {
        u64 s = 0;
        for (int i = 0; i < N; ++i) s = (s + a[i] * b[N - 1 - i]) % m;
        return s;
    };
    auto det = [&](const std::vector<const std::vector<u64>*>& cols) -> long {
        const auto& c = cols;
        long mm = static_cast<long>(m);
        auto e = [&](int r, int k) { return static_cast<long>((*c[k])[r]); };
        long d;
        if (N == 1) d = e(0, 0);
        else
            d = e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
                e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
        return ((d % mm) + mm) % mm;
    };
    Int count = 0;
    std::vector<const std::vector<u64>*> cols;
    std::function<void(int)> rec = [&](int k) {
        if (k == N) {
            if (!special || det(cols) == static_cast<long>(1 % m)) ++count;
            return;
        }
        for (const auto& v : vecs) {
            bool ok = form(v, v) == A0(k, k);
            for (int j = 0; ok && j < k; ++j) ok = form(*cols[j], v) == A0(j, k);
            if (!ok) continue;
            cols.push_back(&v);
            rec(k + 1);
            cols.pop_back();
        }
    };
    rec(0);
    return count;
}

Rat volume_product_upper(u64 cutoff) {
    require(cutoff >= 3, "volume_product_upper: cutoff must be at least 3");
    const unsigned bits = 256;
    Rat u = 1;
    for (u64 p : primes_up_to(cutoff)) {
        if (p == 2) continue;
        Rat P(U(p)), f = 1;
        for (int i = 1; i <= 3; ++i) {
            Rat q = rpow(P, 2 * i);
            f *= q / (q - 1);
        }
        Rat t = 2 / (rpow(P, 6) * (P * P - 1));  // bounds -log prod_{i>=4}(1-p^{-2i})
        f *= 1 / (1 - t);
        u = round_up(u * f, bits);
    }
    Rat C(U(cutoff));
    Rat s = 1 / C + 1 / (C + 1);  // sum_{m > cutoff} 2/(m^2-1)
    return round_up(u / (1 - s), bits);
}

Rat volume_partial_product(int n, u64 bound) {
    Rat r = 1;
    for (u64 p : primes_up_to(bound)) {
        if (p == 2) continue;
        for (int i = 1; i <= n; ++i) {
            Rat q = rpow(Rat(U(p)), 2 * i);
            r *= q / (q - 1);
        }
    }
    return r;
}

Rat coarse_delta(int n, int nu) { return pow2(7 + 2 * nu - n); }
Rat coarse_delta_max(int n) { return pow2(7 - n); }

namespace {

Rat two_adic_factor(int n) {
    Rat g8 = g8_ratio(n), s = 0;
    Rat denom(ipow(Int(8), 2 * n + 1));
    auto counts = factor_class_counts(2, 2 * n + 1);
    for (int m = 1; m <= 2 * n + 1; ++m)
        s += Rat(12) / pow2(2 * n + m - 1) * g8 * Rat(ipow(Int(4), 2 * n + 1) * counts[m]) / denom;
    return s;
}

}  // namespace

Rat refined_delta_max(int n, bool weights_dropped, u64 cutoff) {
    require(n >= 1, "refined_delta_max: n must be positive");
    Rat arch = Rat(3, 2) * pow2(weights_dropped ? 2 * n : n);
    return 2 * arch * two_adic_factor(n) * volume_product_upper(cutoff);
}

Rat refined_delta_max_with_mu(int n, const std::vector<double>& mu_estimates, u64 cutoff) {
    require(static_cast<int>(mu_estimates.size()) == n + 1, "refined_delta_max_with_mu: need n+1 estimates");
    Rat arch = 0;
    for (int m = 0; m <= n; ++m) arch += pow2(2 * n) * Rat(2 * m + 1) / pow2(n + m) * Rat(mu_estimates[m]);
    return 2 * arch * two_adic_factor(n) * volume_product_upper(cutoff);
}

BoundReport bound_report(int n, const Int& f0, u64 cutoff) {
    require(f0 != 0, "bound_report: f0 must be nonzero");
    BoundReport b;
    b.n = n;
    b.f0 = f0;
    b.nu = f0 == 1 || f0 == -1 ? 0 : static_cast<int>(factor_trial(f0).size());
    b.coarse_delta = coarse_delta(n, b.nu);
    b.coarse_delta_max = coarse_delta_max(n);
    b.volume_product_upper = volume_product_upper(cutoff);
    b.refined_delta_max = refined_delta_max(n, false, cutoff);
    b.printed_chain_delta_max = refined_delta_max(n, true, cutoff);
    return b;
}

ChainCheck lemma55_chain_check(u64 p, int n) {
    require(p > 2 && is_prime(p), "lemma55_chain_check: odd prime expected");
    int N = 2 * n + 1;
    auto counts = factor_class_counts(p, N);
    Rat denom(ipow(U(p), N));
    ChainCheck c;
    for (int m = 1; m <= N; ++m) c.lhs += Rat(U(p + 1)) / pow2(m - 1) * Rat(counts[m]) / denom;
    c.rhs_sq = Rat(36 * U(p) * U(p)) / Rat(N);
    c.ok = c.lhs * c.lhs <= c.rhs_sq;
    return c;
}

RealRootEstimate mc_real_root_distribution(int n, u64 samples, u64 seed) {
    require(n >= 1 && samples >= 1, "mc_real_root_distribution: need n >= 1 and samples >= 1");
    const int N = 2 * n + 1;
    const long scale = 1L << 20;
    const u64 block = 4096;
    RealRootEstimate r;
    r.n = n;
    r.samples = samples;
    r.counts.assign(n + 1, 0);
    for (u64 start = 0, b = 0; start < samples; start += block, ++b) {
        // per-block stream derived from the master seed
        std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
        std::mt19937_64 rng(sq);
        std::uniform_int_distribution<long> dist(-scale, scale);
        u64 end = std::min(samples, start + block);
        for (u64 s = start; s < end;) {
            std::vector<Int> c(N + 1);
            c[N] = scale;
            for (int i = 0; i < N; ++i) c[i] = dist(rng);
            IntPoly f(c);
            if (!is_squarefree(f)) continue;
            int roots = real_root_count(f);
            ++r.counts[(roots - 1) / 2];
            ++s;
        }
    }
    for (int m = 0; m <= n; ++m) {
        double q = static_cast<double>(r.counts[m]) / static_cast<double>(samples);
        r.mu.push_back(q);
        r.stderr_.push_back(std::sqrt(q * (1 - q) / static_cast<double>(samples)));
    }
    return r;
}

SignSequence sign_sequence(const BinaryForm& F, const Int& x0, const Int& z0) {
    require(F.lead() != 0, "sign_sequence: f0 must be nonzero");
    require(gcd(x0, z0) == 1, "sign_sequence: (x0,z0) must be primitive");
    require(F.eval(x0, z0) >= 0, "sign_sequence: F(x0,z0) must be nonnegative");
    IntPoly g = F.dehomogenize_x();
    require(is_squarefree(g), "sign_sequence: F(x,1) must be squarefree");
    int roots = real_root_count(g);
    SignSequence s;
    s.m = (roots - 1) / 2;
    int sf0 = sgn(F.lead());
    if (z0 == 0) {
        s.boundary = true;
        s.signs.assign(roots, sf0 * sgn(x0));
        s.tau = s.m + 1;
        return s;
    }
    Rat r0(x0, z0);
    r0.canonicalize();
    bool at_root = g.eval(r0) == 0;
    int below = sturm_count(g, std::nullopt, r0) - (at_root ? 1 : 0);
    int sz = sgn(z0);
    for (int i = 0; i < roots; ++i) {
        if (at_root && i == below) {
            // F = (z0 x - x0 z) G and the entry is f0 z0 G(x0,z0); G has even
            // degree, so G(x0,z0) has the sign of G(r0,1)
            RatPoly lin({Rat(-x0), Rat(z0)});
            auto [q, rem] = to_rat_poly(g).divmod(lin);
            ensure(rem.is_zero(), "sign_sequence: deflation");
            s.signs.push_back(sf0 * sz * sgn(q.eval(r0)));
        } else {
            s.signs.push_back(sf0 * sz * (i < below ? 1 : -1));
        }
    }
    int k = 0;
    while (k < roots && s.signs[k] == s.signs[0]) ++k;
    bool tail_ok = std::all_of(s.signs.begin() + k, s.signs.end(), [&](int x) { return x == -s.signs[0]; });
    ensure(tail_ok, "sign_sequence: not a step sequence");
    if (k == roots) {
        ensure(s.signs[0] == 1, "sign_sequence: all-negative sequence");
        s.tau = s.m + 1;
    } else if (s.signs[0] == 1) {
        ensure(k % 2 == 1, "sign_sequence: even run of +");
        s.tau = (k + 1) / 2;
    } else {
        ensure(k % 2 == 0, "sign_sequence: odd run of -");
        s.tau = s.m + 1 + k / 2;
    }
    return s;
}

ConditionDensities condition_densities(u64 p, int n, const Int& f0) {
    require(is_prime(p) && p < 64, "condition_densities: small prime expected");
    require(f0 != 0 && valuation(f0, U(p)) % 2 == 1, "condition_densities: p must divide the squarefree part of f0");
    int N = 2 * n + 1;
    u64 q = p * p;
    auto red = [&](const Int& a, u64 m) {
        Int r = a % U(m);
        if (r < 0) r += U(m);
        return static_cast<u64>(r.get_ui());
    };
    ConditionDensities d;
    d.p = p;
    d.n = n;
    std::vector<u64> f(N + 1, 0), fp(N + 1, 0);
    f[0] = red(f0, q);
    u64 classes = 0, nonmax = 0, condb = 0;
    while (true) {
        for (int i = 0; i <= N; ++i) fp[i] = f[i] % p;
        bool maximal = p_maximal_mod(n, f, p);
        if (!maximal) ++nonmax;
        else if (reduced_is_square_mod(n, fp, p)) ++condb;
        ++classes;
        int i = 1;
        while (i <= N && ++f[i] == q) f[i++] = 0;
        if (i > N) break;
    }
    d.cond_a = Rat(U(nonmax), U(classes));
    d.cond_b = Rat(U(condb), U(classes));
    d.cond_a.canonicalize();
    d.cond_b.canonicalize();
    d.square_given_maximal = Rat(U(condb), U(classes - nonmax));
    d.square_given_maximal.canonicalize();

    u64 sq = 0, total = 0;
    std::fill(fp.begin(), fp.end(), 0);
    fp[0] = red(f0, p);
    while (true) {
        if (reduced_is_square_mod(n, fp, p)) ++sq;
        ++total;
        int i = 1;
        while (i <= N && ++fp[i] == p) fp[i++] = 0;
        if (i > N) break;
    }
    d.square_mod_p = Rat(U(sq), U(total));
    d.square_mod_p.canonicalize();
    return d;
}

Rat vanish_density(u64 p, int n) {
    require(is_prime(p), "vanish_density: prime expected");
    int N = 2 * n + 1;
    std::vector<u64> f(N + 1, 0);
    u64 hits = 0, total = 0;
    while (true) {
        bool all = true;
        for (u64 x = 0; x < p && all; ++x) {
            u64 acc = 0;
            for (int i = 0; i <= N; ++i) acc = (acc * x + f[i]) % p;  // F(x,1)
            all = acc == 0;
        }
        hits += all;
        ++total;
        int i = 1;
        while (i <= N && ++f[i] == p) f[i++] = 0;
        if (i > N) break;
    }
    Rat r(U(hits), U(total));
    r.canonicalize();
    return r;
}

Rat vanish_density_closed_form(u64 p, int n) { return 1 / rpow(Rat(U(p)), std::min<long>(static_cast<long>(p), 2 * n + 1)); }

}  // namespace superell

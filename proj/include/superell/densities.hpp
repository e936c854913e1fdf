#pragma once

#include "superell/forms.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace superell {

// Prime divisors of the squarefree part of |f0|.
std::vector<Int> squarefree_divisors(const Int& f0);

Rat mu(const Int& f0, int n);
Rat mu_prime(const Int& f0);

struct DensityReport {
    Int f0;
    int n = 1;
    Rat mu, mu_prime, one_minus_mu, mu_prime_minus_mu;
};
DensityReport density_report(const Int& f0, int n);

// Largest multiple of 1/10 percent not exceeding 100*x, e.g. "97.2".
std::string percent_floor_tenths(const Rat& x);

struct Table1Column {
    std::vector<long> primes;
    Rat lim_one_minus_mu;         // 1 - prod p^-2
    Rat lim_mu_prime_minus_mu;    // prod (1 - p^-p) - prod p^-2
    std::string row1, row2;       // rounded down to tenths of a percent
};
std::vector<Table1Column> table1();

// Number of monic irreducible polynomials of degree d over F_p.
Int irreducible_count(std::uint64_t p, int d);

// counts[m] = number of monic degree-deg polynomials over F_p with exactly
// m distinct irreducible factors, m = 0..deg.
std::vector<Int> factor_class_counts(std::uint64_t p, int deg);
Int count_factor_classes(std::uint64_t p, int deg, int m);
// Monic polynomials over Z/8 of degree 2n+1 with m distinct irreducible factors mod 2.
Int count_I8(int n, int m);

Int group_order_G_mod_p(int n, std::uint64_t p);  // odd p
Int group_order_Ghat_mod8(int n);
Rat vol_G_Zp(int n, std::uint64_t p);
// #G(Z/8)/8^{2n^2+n}, using det: Ghat(Z/8) -> (Z/8)^x onto.
Rat g8_ratio(int n);

// Brute-force orthogonal group orders for the split form with antidiagonal
// Gram matrix A0 (dimension 2n+1): g^T A0 g = A0 over Z/m, with det g = 1 if
// special. Feasible for 2n+1 <= 3.
Int brute_orthogonal_count(int n, std::uint64_t m, bool special);

// Certified upper bound on prod_{p>2} prod_{i>=1} (1-p^{-2i})^{-1}: exact
// factors (rounded up) for p <= cutoff, exp-tail bound beyond.
Rat volume_product_upper(std::uint64_t cutoff = 10000);
// Exact partial product prod_{2<p<=bound} prod_{i=1}^n (1-p^{-2i})^{-1}.
Rat volume_partial_product(int n, std::uint64_t bound);

struct BoundReport {
    int n = 1;
    Int f0;
    int nu = 0;                // distinct prime factors of f0
    Rat coarse_delta;          // 2^{7+2nu-n}
    Rat coarse_delta_max;      // 2^{7-n}
    Rat refined_delta_max;     // assembly with exact 2-adic data
    Rat printed_chain_delta_max;  // same with the unweighted 3/2 estimate
    Rat volume_product_upper;
};

Rat coarse_delta(int n, int nu);
Rat coarse_delta_max(int n);
// The archimedean factor sum_m 2^{2n}(2m+1)/2^{n+m} mu_m is bounded by
// (3/2) 2^{n}; pass weights_dropped to use the looser 2^{2n} (3/2).
Rat refined_delta_max(int n, bool weights_dropped = false, std::uint64_t cutoff = 10000);
// Same assembly with given estimates mu_m (m = 0..n) for the archimedean factor.
Rat refined_delta_max_with_mu(int n, const std::vector<double>& mu_estimates, std::uint64_t cutoff = 10000);
BoundReport bound_report(int n, const Int& f0, std::uint64_t cutoff = 10000);

struct ChainCheck {
    Rat lhs;      // sum_m (p+1)/2^{m-1} #I_p(m)/p^{2n+1}
    Rat rhs_sq;   // 36 p^2/(2n+1)
    bool ok = false;
};
ChainCheck lemma55_chain_check(std::uint64_t p, int n);

struct RealRootEstimate {
    int n = 1;
    std::uint64_t samples = 0;
    std::vector<std::uint64_t> counts;  // counts[m]: exactly 2m+1 real roots
    std::vector<double> mu;             // counts[m]/samples
    std::vector<double> stderr_;        // binomial standard errors
};
RealRootEstimate mc_real_root_distribution(int n, std::uint64_t samples, std::uint64_t seed);

struct SignSequence {
    int m = 0;                // F(x,1) has 2m+1 real roots
    std::vector<int> signs;   // +-1 for theta_1 < ... < theta_{2m+1}
    int tau = 0;              // 1..2m+1
    bool boundary = false;    // z0 = 0: all signs equal, label m+1
};
// Signs of f0 (x0 - theta_i z0) over the real roots theta_i of F(x,1); at a
// Weierstrass point the vanishing entry is replaced by the sign of f0 * G(x0,z0)
// where F = (z0 x - x0 z) G.
SignSequence sign_sequence(const BinaryForm& F, const Int& x0, const Int& z0);

// Exhaustive densities over residue classes with f0 fixed.
struct ConditionDensities {
    std::uint64_t p = 3;
    int n = 2;
    Rat cond_a;          // over classes mod p^2 of (f_1..f_{2n+1})
    Rat cond_b;          // over classes mod p^2 (maximal and square reduction)
    Rat square_mod_p;    // over classes mod p: reduction minus z-power is a square
    Rat square_given_maximal;
};
ConditionDensities condition_densities(std::uint64_t p, int n, const Int& f0);

// Density over classes mod p of (f_1..f_{2n+1}), f0 = 0 mod p, of forms vanishing on P^1(F_p).
Rat vanish_density(std::uint64_t p, int n);
Rat vanish_density_closed_form(std::uint64_t p, int n);

}  // namespace superell

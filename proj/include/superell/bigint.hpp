#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace superell {

using Int = mpz_class;
using Rat = mpq_class;

Int ipow(const Int& base, unsigned long e);
Rat rpow(const Rat& base, long e);

// Exponent of p in a (a != 0).
int valuation(const Int& a, const Int& p);
int valuation(const Rat& a, const Int& p);

bool is_square(const Int& a, Int* root = nullptr);
bool is_square(const Rat& a, Rat* root = nullptr);

// Largest m >= 0 with m^k < bound (bound >= 1).
Int max_power_below(const Int& bound, unsigned long k);

// g = gcd(a,b) = s*a + t*b.
Int xgcd(const Int& a, const Int& b, Int& s, Int& t);

bool is_prime(const Int& n);
bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

// Trial-division factorization of |n|, n != 0. Desk-scale inputs only.
std::vector<std::pair<Int, int>> factor_trial(const Int& n);

// Primes dividing |n| to an odd power.
std::vector<Int> squarefree_primes(const Int& n);

// Symmetric residue in (-m/2, m/2].
Int symmetric_mod(const Int& a, const Int& m);

Int parse_int(const std::string& s);
std::string to_string(const Int& a);
std::string to_string(const Rat& a);

inline Rat to_rat(const Int& a) { return Rat(a); }

}  // namespace superell

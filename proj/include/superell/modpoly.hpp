#pragma once

#include "superell/bigint.hpp"
#include "superell/poly.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace superell {

// Polynomial over Z/NZ, coefficients low-to-high, residues in [0, N).
// Moduli are limited to 62 bits; every use in this library is desk-scale.
class ModPoly {
public:
    ModPoly() = default;
    explicit ModPoly(std::uint64_t modulus);
    ModPoly(std::uint64_t modulus, std::vector<std::uint64_t> coeffs);
    static ModPoly from_int(std::uint64_t modulus, const IntPoly& f);
    static ModPoly constant(std::uint64_t modulus, std::uint64_t a);
    static ModPoly x(std::uint64_t modulus);

    std::uint64_t modulus() const { return m_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    const std::vector<std::uint64_t>& coeffs() const { return c_; }
    std::uint64_t operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    std::uint64_t lead() const { return c_.empty() ? 0 : c_.back(); }
    std::uint64_t eval(std::uint64_t x) const;

    ModPoly derivative() const;
    ModPoly make_monic() const;  // leading coefficient must be a unit

    friend ModPoly operator+(const ModPoly& a, const ModPoly& b);
    friend ModPoly operator-(const ModPoly& a, const ModPoly& b);
    friend ModPoly operator-(const ModPoly& a);
    friend ModPoly operator*(const ModPoly& a, const ModPoly& b);
    friend ModPoly operator*(std::uint64_t s, const ModPoly& a);
    friend bool operator==(const ModPoly& a, const ModPoly& b) { return a.m_ == b.m_ && a.c_ == b.c_; }
    friend bool operator!=(const ModPoly& a, const ModPoly& b) { return !(a == b); }
    friend bool operator<(const ModPoly& a, const ModPoly& b);

    // Division by a polynomial whose leading coefficient is a unit mod N.
    std::pair<ModPoly, ModPoly> divmod(const ModPoly& d) const;
    ModPoly operator%(const ModPoly& d) const { return divmod(d).second; }
    ModPoly operator/(const ModPoly& d) const { return divmod(d).first; }

    std::string str() const;

private:
    void trim();
    std::uint64_t m_ = 2;
    std::vector<std::uint64_t> c_;
};

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);  // a must be a unit

// The remaining functions need a prime modulus.
ModPoly poly_gcd_mod_p(const ModPoly& a, const ModPoly& b);  // monic result
// s*a + t*b = g (monic gcd)
ModPoly poly_xgcd_mod_p(const ModPoly& a, const ModPoly& b, ModPoly& s, ModPoly& t);
ModPoly powmod(const ModPoly& base, const Int& e, const ModPoly& f);
// Inverse of a modulo f when gcd(a, f) = 1.
ModPoly invmod(const ModPoly& a, const ModPoly& f);

struct Factorization {
    std::uint64_t unit = 1;
    std::vector<std::pair<ModPoly, int>> factors;  // monic irreducible, sorted
};

// Complete factorization over F_p: squarefree decomposition, distinct-degree
// and equal-degree splitting (Cantor-Zassenhaus, seeded).
Factorization factor_mod_p(const ModPoly& f, std::uint64_t seed = 0x5eed);

// Distinct-degree split of a squarefree monic polynomial: pairs (g_d, d)
// with g_d the product of all irreducible factors of degree d.
std::vector<std::pair<ModPoly, int>> distinct_degree_factor(const ModPoly& f);

bool is_irreducible_mod_p(const ModPoly& f);

}  // namespace superell

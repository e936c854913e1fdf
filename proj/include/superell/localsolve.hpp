#pragma once

#include "superell/forms.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace superell {

// A p-adic point certificate. kind "square": (x0, c, z0) is an exact integer
// solution of c^2 = F(x0, z0) with (x0, z0) primitive at p. kind "root": F has a
// p-adic root congruent to (x0 : z0), certified by Hensel's lemma in the chart
// polynomial; c = 0.
struct LocalWitness {
    std::string kind;
    Int x0, c, z0;
    int chart = 0;  // 0: (s, 1), 1: (1, p t)
};

struct LocalReport {
    Int p;
    bool soluble = false;
    std::optional<LocalWitness> witness;
    int depth_used = 0;
    int depth_cap = 0;
    long nodes = 0;  // residue discs examined
};

int local_depth_cap(const BinaryForm& F, const Int& p);

// Existence of (x0, c, z0) in Z_p^3 with (x0, z0) not both divisible by p and
// c^2 = F(x0, z0).
LocalReport zp_soluble(const BinaryForm& F, const Int& p);

// Re-derives a witness from scratch.
bool verify_local_witness(const BinaryForm& F, const Int& p, const LocalWitness& w);

struct RealReport {
    bool soluble = true;
    Int x0, c, z0;  // c^2 = F(x0, z0) with z0 = 0
};
RealReport real_soluble(const BinaryForm& F);

// Whether R_F (x) Z_p is the maximal order; depends only on F mod p^2.
bool p_maximal(const BinaryForm& F, const Int& p);
// Same test on coefficients already reduced mod p^2 (p < 2^31).
bool p_maximal_mod(int n, const std::vector<std::uint64_t>& f, std::uint64_t p);

// F mod p with its largest z-power removed is a perfect square in F_p[x,z]
// (even multiplicities and a square leading unit).
bool reduced_is_square(const BinaryForm& F, const Int& p);
bool reduced_is_square_mod(int n, const std::vector<std::uint64_t>& f, std::uint64_t p);

struct ConditionReport {
    Int p;
    bool cond_a = false;  // R_F not maximal at p
    bool cond_b = false;  // maximal and the reduction is a square
};

// Requires p | squarefree part of |f0|.
ConditionReport condition_report(const BinaryForm& F, const Int& p);
bool condition_b(const BinaryForm& F, const Int& p);

// F(x0, z0) = 0 mod p for every point of P^1(F_p).
bool vanishes_on_p1(const BinaryForm& F, std::uint64_t p);

struct EverywhereReport {
    RealReport real;
    std::vector<LocalReport> checked;
    std::vector<Int> failing;
    std::vector<Int> vanish_flags;  // p | squarefree part of |f0| with F = 0 on P^1(F_p)
    Int checked_bound;              // every p <= bound was checked
    std::string asserted_rule;
    bool soluble = true;
};

EverywhereReport everywhere_local(const BinaryForm& F, std::uint64_t prime_budget);

Int squarefree_part(const Int& a);

}  // namespace superell

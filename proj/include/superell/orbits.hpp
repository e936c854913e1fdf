#pragma once

#include "superell/orders.hpp"

#include <optional>
#include <string>
#include <vector>

namespace superell {

struct PrimitiveSolution {
    Int x0, c, z0;
    std::string str() const;
};

// Throws PreconditionError unless gcd(x0,z0) = 1 and c^2 = F(x0,z0).
void check_solution(const BinaryForm& F, const PrimitiveSolution& s);

struct MatrixPair {
    IntMat A, B;
};

enum class Tristate { yes, no, undetermined };
std::string to_string(Tristate t);

struct DistinguishedResult {
    Tristate status = Tristate::undetermined;
    std::optional<AlgNum> root;        // yes: root^2 = f0*delta
    std::optional<std::uint64_t> prime;  // no: f0*delta is a non-square in a residue field at this prime
    std::string reason;
};

struct OrbitCertificate {
    BinaryForm form;
    PrimitiveSolution solution;
    Unimodular2 gamma;  // (x0,z0)*gamma = (0,1)
    Int K_used;
    BinaryForm transformed;  // F' = F((x,z) gamma^{-1})
    FracIdeal ideal_I;       // basis: the constructed one, (d + theta b)^n times the basis of I'
    AlgNum delta;
    MatrixPair pair;  // on the canonical HNF basis of I
    int det_sign = 1;  // sign of det(xA+zB)/F_mon before the normalisation (A,B) -> (-A,-B)
    DistinguishedResult distinguished;
};

struct OrbitOptions {
    std::optional<long> K;           // force a particular K instead of searching
    bool test_distinguished = true;
    int lift_bits_cap = 4096;        // precision cap for the square-root lift
};

// Whether K gives an admissible gamma, i.e. F(d,-b) != 0.
bool admissible_K(const BinaryForm& F, const PrimitiveSolution& s, const Int& K);

OrbitCertificate construct_orbit(const BinaryForm& F, const PrimitiveSolution& s, const OrbitOptions& opt = {});

struct CheckItem {
    std::string name;
    bool pass;
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckItem> items;
    bool all_pass() const;
    const CheckItem* find(const std::string& name) const;
};

VerificationReport verify_certificate(const OrbitCertificate& cert);

// The quotients (basis products of I')/delta' in closed form, each checked
// exactly and for membership in I_{F'}^{2n-1}.
VerificationReport verify_quotient_identities(const OrbitCertificate& cert);

// Gram matrices of (a,b) -> pi(a b / delta) on the given basis.
MatrixPair gram_pair(const std::vector<AlgNum>& basis, const AlgNum& delta);

// Number of positive and negative eigenvalues of a nonsingular symmetric matrix.
std::pair<int, int> signature(const IntMat& A);

bool welldefinedness_check(const BinaryForm& F, const PrimitiveSolution& s, long K1, long K2);

DistinguishedResult is_distinguished(const BinaryForm& F, const AlgNum& delta, int lift_bits_cap = 4096);

}  // namespace superell

#pragma once

#include "superell/forms.hpp"
#include "superell/matrix.hpp"

#include <memory>
#include <vector>

namespace superell {

// Structure constants of R_F in the basis zeta_0 = 1, zeta_1, ..., zeta_{2n}:
// table[i][j][k] is the zeta_k-coordinate of zeta_i * zeta_j (Nakagawa).
using MultTable = std::vector<std::vector<std::vector<Int>>>;
MultTable nakagawa_table(const BinaryForm& F);

// K_F = Q[x]/(F(x,1)) together with R_F. Internally every element is stored in
// the power basis of omega = f0*theta, the root of F_mon(x,1).
class FormContext {
public:
    static std::shared_ptr<const FormContext> build(const BinaryForm& F);

    const BinaryForm& form() const { return F_; }
    const BinaryForm& monic_form() const { return Fmon_; }
    const Int& disc() const { return disc_; }
    int n() const { return F_.n; }
    int dim() const { return F_.degree(); }

    std::vector<Rat> mul(const std::vector<Rat>& a, const std::vector<Rat>& b) const;

    const MultTable& mult_table() const { return table_; }
    const RatMat& zeta_basis() const { return zeta_; }          // rows: zeta_i in omega coords
    const RatMat& zeta_basis_inverse() const { return zeta_inv_; }
    const RatMat& pi_basis_inverse() const { return pi_inv_; }  // basis 1, theta, ..., theta^{2n-1}, zeta_{2n}

private:
    explicit FormContext(const BinaryForm& F);
    BinaryForm F_, Fmon_;
    Int disc_;
    std::vector<Int> g_;  // F_mon(x,1) low-to-high, monic
    MultTable table_;
    RatMat zeta_, zeta_inv_, pi_inv_;
};

using Context = std::shared_ptr<const FormContext>;

class AlgNum {
public:
    AlgNum() = default;
    AlgNum(Context ctx, std::vector<Rat> coords);
    static AlgNum rational(Context ctx, const Rat& a);
    static AlgNum theta(Context ctx);
    static AlgNum zeta(Context ctx, int i);
    // p(alpha) for an integer polynomial p
    static AlgNum eval(const IntPoly& p, const AlgNum& alpha);

    const Context& ctx() const { return ctx_; }
    const std::vector<Rat>& coords() const { return c_; }
    std::vector<Rat> zeta_coords() const;
    bool is_zero() const;
    bool is_rational(Rat* value = nullptr) const;

    RatMat mult_matrix() const;  // row k: omega^k * this
    Rat norm() const;
    Rat trace() const;
    AlgNum inverse() const;
    AlgNum pow(long e) const;

    friend AlgNum operator+(const AlgNum& a, const AlgNum& b);
    friend AlgNum operator-(const AlgNum& a, const AlgNum& b);
    friend AlgNum operator-(const AlgNum& a);
    friend AlgNum operator*(const AlgNum& a, const AlgNum& b);
    friend AlgNum operator*(const Rat& s, const AlgNum& a);
    friend bool operator==(const AlgNum& a, const AlgNum& b);
    friend bool operator!=(const AlgNum& a, const AlgNum& b) { return !(a == b); }

private:
    Context ctx_;
    std::vector<Rat> c_;
};

Rat norm_elt(const AlgNum& k);

// A full-rank Z-lattice in K_F.
class FracIdeal {
public:
    FracIdeal() = default;
    // Keeps the given basis (exactly dim() independent elements). The norm is
    // taken with respect to this basis.
    static FracIdeal from_basis(const std::vector<AlgNum>& basis);
    // Lattice spanned by arbitrary generators; the basis is the canonical HNF basis.
    static FracIdeal from_generators(const Context& ctx, const std::vector<AlgNum>& gens);

    const Context& ctx() const { return ctx_; }
    const RatMat& basis() const { return basis_; }
    std::vector<AlgNum> basis_elements() const;
    const IntMat& hnf_numerator() const { return hnf_; }
    const Int& hnf_denominator() const { return den_; }
    FracIdeal canonical() const;

    // det of the basis written in zeta coordinates
    Rat norm() const;
    bool contains(const AlgNum& a) const;
    bool contains(const FracIdeal& other) const;
    bool is_rf_module() const;
    FracIdeal scaled(const AlgNum& k) const;  // k*I, basis order kept

    friend FracIdeal operator*(const FracIdeal& a, const FracIdeal& b);
    friend bool operator==(const FracIdeal& a, const FracIdeal& b);
    friend bool operator!=(const FracIdeal& a, const FracIdeal& b) { return !(a == b); }

private:
    void canonicalize();
    Context ctx_;
    RatMat basis_;
    Int den_;
    IntMat hnf_;
};

inline Rat norm_ideal(const FracIdeal& I) { return I.norm(); }
inline bool lattice_contains(const FracIdeal& I, const AlgNum& a) { return I.contains(a); }
inline FracIdeal lattice_product(const FracIdeal& I, const FracIdeal& J) { return I * J; }

// I_F^j with basis 1, theta, ..., theta^j, zeta_{j+1}, ..., zeta_{2n}.
FracIdeal ideal_power(const Context& ctx, int j);

// Basis of I_{G}^j computed inside K_F, where G is a form of the same degree
// and root is an element of K_F with G(root, 1) = 0. Used to transport ideals
// along K_F ~ K_G.
std::vector<AlgNum> ideal_power_basis_for(const BinaryForm& G, const AlgNum& root, int j);

// zeta'_i = sum_{j<i} g_j root^{i-j}
AlgNum zeta_for(const BinaryForm& G, const AlgNum& root, int i);

// (pi_{2n-1}(a), pi_{2n}(a))
std::pair<Rat, Rat> pi_functionals(const AlgNum& a);

// Determinant of the trace form on the zeta basis.
Int order_discriminant(const Context& ctx);

}  // namespace superell

#pragma once

#include "superell/bigint.hpp"
#include "superell/poly.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace superell {

// F(x,z) = sum_i f_i x^{2n+1-i} z^i.
struct BinaryForm {
    int n = 1;
    std::vector<Int> f;  // f_0 .. f_{2n+1}

    BinaryForm() = default;
    BinaryForm(int n, std::vector<Int> coeffs);

    int degree() const { return 2 * n + 1; }
    const Int& operator[](std::size_t i) const { return f[i]; }
    const Int& lead() const { return f[0]; }

    Int eval(const Int& x, const Int& z) const;
    Rat eval(const Rat& x, const Rat& z) const;
    IntPoly dehomogenize_x() const;  // F(x,1)
    IntPoly dehomogenize_z() const;  // F(1,z)

    std::string encode() const;
    static BinaryForm decode(const std::string& s);
    std::string str() const;

    friend bool operator==(const BinaryForm& a, const BinaryForm& b) { return a.n == b.n && a.f == b.f; }
    friend bool operator!=(const BinaryForm& a, const BinaryForm& b) { return !(a == b); }
};

// [[a,b],[c,d]] with ad - bc = 1, acting on row vectors: (x,z) -> (ax+cz, bx+dz).
struct Unimodular2 {
    Int a = 1, b = 0, c = 0, d = 1;
    Unimodular2() = default;
    Unimodular2(Int a_, Int b_, Int c_, Int d_);
    Unimodular2 inverse() const { return Unimodular2(d, -b, -c, a); }
    friend Unimodular2 operator*(const Unimodular2& x, const Unimodular2& y);
    friend bool operator==(const Unimodular2& x, const Unimodular2& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
};

// Coefficient vectors of homogeneous forms in the x^{d-i} z^i convention.
std::vector<Int> form_mul(const std::vector<Int>& p, const std::vector<Int>& q);

BinaryForm monicize(const BinaryForm& F);
bool height_less_than(const BinaryForm& F, const Int& X);
// (gamma . F)(x,z) = F((x,z) gamma)
BinaryForm sl2_act(const Unimodular2& gamma, const BinaryForm& F);
Int disc(const BinaryForm& F);
inline bool is_separable(const BinaryForm& F) { return disc(F) != 0; }

Int resultant(const IntPoly& f, const IntPoly& g);
Int poly_disc(const IntPoly& f);

// The height box {F : f_0 fixed, H(F) < X} in lexicographic order of
// (f_1, ..., f_{2n+1}), each coordinate increasing.
class FormBox {
public:
    FormBox(int n, const Int& f0, const Int& X);
    const std::vector<Int>& bounds() const { return bounds_; }  // |f_i| <= bounds_[i-1]
    const Int& size() const { return size_; }
    BinaryForm at(const Int& index) const;
    // Visit every k-th element starting at index i (shard i of k).
    void for_each(std::uint64_t shard, std::uint64_t shards, const std::function<void(const Int&, const BinaryForm&)>& fn) const;
    std::vector<BinaryForm> all() const;

private:
    int n_;
    Int f0_, X_;
    std::vector<Int> bounds_;
    Int size_;
};

inline std::vector<BinaryForm> enumerate_box(int n, const Int& f0, const Int& X) { return FormBox(n, f0, X).all(); }

}  // namespace superell

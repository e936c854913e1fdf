#pragma once

#include "superell/bigint.hpp"
#include "superell/errors.hpp"
#include "superell/forms.hpp"
#include "superell/modpoly.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace superell {

// Element of F_p, p an odd prime below 2^32.
struct Fp {
    std::uint64_t v = 0, p = 3;
    Fp() = default;
    Fp(long a, std::uint64_t p_) : p(p_) {
        long m = static_cast<long>(p_);
        v = static_cast<std::uint64_t>(((a % m) + m) % m);
    }
    friend Fp operator+(Fp a, Fp b) { return raw((a.v + b.v) % a.p, a.p); }
    friend Fp operator-(Fp a, Fp b) { return raw((a.v + a.p - b.v) % a.p, a.p); }
    friend Fp operator-(Fp a) { return raw((a.p - a.v) % a.p, a.p); }
    friend Fp operator*(Fp a, Fp b) { return raw(a.v * b.v % a.p, a.p); }
    friend Fp operator/(Fp a, Fp b) {
        require(b.v != 0, "Fp: division by zero");
        return a * raw(invmod(b.v, b.p), b.p);
    }
    friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
    friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }
    bool is_zero() const { return v == 0; }
    std::string str() const { return std::to_string(v); }

    static Fp raw(std::uint64_t v, std::uint64_t p) {
        Fp r;
        r.v = v;
        r.p = p;
        return r;
    }
};

// Field adaptors so the covering code runs over Q and F_p alike.
template <class K>
struct FieldOps;

template <>
struct FieldOps<Rat> {
    struct Ctx {};
    static Rat zero(const Ctx&) { return Rat(0); }
    static Rat one(const Ctx&) { return Rat(1); }
    static bool is_zero(const Rat& a) { return a == 0; }
    static std::string str(const Rat& a) { return to_string(a); }
};

template <>
struct FieldOps<Fp> {
    struct Ctx {
        std::uint64_t p = 3;
    };
    static Fp zero(const Ctx& c) { return Fp(0, c.p); }
    static Fp one(const Ctx& c) { return Fp(1, c.p); }
    static bool is_zero(const Fp& a) { return a.is_zero(); }
    static std::string str(const Fp& a) { return a.str(); }
};

template <class K>
struct SplitCoveringSpec {
    typename FieldOps<K>::Ctx ctx;
    std::vector<K> roots;  // theta_1..theta_{2n+1}, distinct
    std::vector<K> delta;  // nonzero

    int dim() const { return static_cast<int>(roots.size()); }
    void validate() const {
        require(roots.size() == delta.size(), "covering: roots and delta differ in length");
        require(roots.size() >= 3 && roots.size() % 2 == 1, "covering: need 2n+1 >= 3 roots");
        for (std::size_t i = 0; i < roots.size(); ++i) {
            require(!FieldOps<K>::is_zero(delta[i]), "covering: delta_i must be nonzero");
            for (std::size_t j = 0; j < i; ++j) require(roots[i] != roots[j], "covering: roots must be distinct");
        }
    }
};

// Diagonal quadratic form sum_i coeffs[i] Z_i^2.
template <class K>
struct QuadricRelation {
    std::vector<K> coeffs;
    std::vector<int> quadruple;  // (i,j,l,m), 0-based

    template <class V>
    K eval(const std::vector<V>& Z) const {
        K s = coeffs[0] * Z[0] * Z[0];
        for (std::size_t i = 1; i < coeffs.size(); ++i) s = s + coeffs[i] * Z[i] * Z[i];
        return s;
    }
};

// (theta_i - theta_j)(delta_l Z_l^2 - delta_m Z_m^2) - (theta_l - theta_m)(delta_i Z_i^2 - delta_j Z_j^2)
template <class K>
QuadricRelation<K> covering_relation(const SplitCoveringSpec<K>& s, int i, int j, int l, int m) {
    using F = FieldOps<K>;
    QuadricRelation<K> r;
    r.coeffs.assign(s.dim(), F::zero(s.ctx));
    r.quadruple = {i, j, l, m};
    K a = s.roots[i] - s.roots[j], b = s.roots[l] - s.roots[m];
    r.coeffs[l] = r.coeffs[l] + a * s.delta[l];
    r.coeffs[m] = r.coeffs[m] - a * s.delta[m];
    r.coeffs[i] = r.coeffs[i] - b * s.delta[i];
    r.coeffs[j] = r.coeffs[j] + b * s.delta[j];
    return r;
}

// Row reduction over a field; returns the rank.
template <class K>
int row_rank(std::vector<std::vector<K>> m) {
    using F = FieldOps<K>;
    int rows = static_cast<int>(m.size()), cols = rows ? static_cast<int>(m[0].size()) : 0, r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = r;
        while (piv < rows && F::is_zero(m[piv][c])) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        for (int i = r + 1; i < rows; ++i) {
            if (F::is_zero(m[i][c])) continue;
            K t = m[i][c] / m[r][c];
            for (int k = c; k < cols; ++k) m[i][k] = m[i][k] - t * m[r][k];
        }
        ++r;
    }
    return r;
}

// Coefficients x with sum_k x_k rows[k] = target, if any.
template <class K>
std::optional<std::vector<K>> solve_combination(const std::vector<std::vector<K>>& rows, const std::vector<K>& target,
                                                const typename FieldOps<K>::Ctx& ctx) {
    using F = FieldOps<K>;
    int R = static_cast<int>(rows.size()), C = static_cast<int>(target.size());
    // columns of the augmented system are the rows
    std::vector<std::vector<K>> a(C, std::vector<K>(R + 1, F::zero(ctx)));
    for (int c = 0; c < C; ++c) {
        for (int k = 0; k < R; ++k) a[c][k] = rows[k][c];
        a[c][R] = target[c];
    }
    std::vector<int> pivcol;
    int r = 0;
    for (int k = 0; k < R && r < C; ++k) {
        int piv = r;
        while (piv < C && F::is_zero(a[piv][k])) ++piv;
        if (piv == C) continue;
        std::swap(a[piv], a[r]);
        K inv = F::one(ctx) / a[r][k];
        for (auto& x : a[r]) x = x * inv;
        for (int i = 0; i < C; ++i) {
            if (i == r || F::is_zero(a[i][k])) continue;
            K t = a[i][k];
            for (int j = 0; j <= R; ++j) a[i][j] = a[i][j] - t * a[r][j];
        }
        pivcol.push_back(k);
        ++r;
    }
    for (int i = r; i < C; ++i)
        if (!F::is_zero(a[i][R])) return std::nullopt;
    std::vector<K> x(R, F::zero(ctx));
    for (int i = 0; i < r; ++i) x[pivcol[i]] = a[i][R];
    return x;
}

// The 2n-1 relations from the quadruples (1,2,2,k), k = 3..2n+1.
template <class K>
std::vector<QuadricRelation<K>> covering_ideal(const SplitCoveringSpec<K>& s) {
    s.validate();
    std::vector<QuadricRelation<K>> gens;
    for (int k = 2; k < s.dim(); ++k) gens.push_back(covering_relation(s, 0, 1, 1, k));
    std::vector<std::vector<K>> rows;
    for (auto& g : gens) rows.push_back(g.coeffs);
    ensure(row_rank(rows) == s.dim() - 2, "covering_ideal: generators are dependent");
    return gens;
}

template <class K>
bool on_covering(const SplitCoveringSpec<K>& s, const std::vector<K>& Z) {
    bool nonzero = false;
    for (auto& z : Z) nonzero = nonzero || !FieldOps<K>::is_zero(z);
    if (!nonzero) return false;
    for (int k = 2; k < s.dim(); ++k)
        if (!FieldOps<K>::is_zero(covering_relation(s, 0, 1, 1, k).eval(Z))) return false;
    return true;
}

// Point of P^1 as (a : b), normalised to (a/b : 1) or (1 : 0).
template <class K>
using P1Point = std::pair<K, K>;

template <class K>
P1Point<K> pi_delta_eval(const SplitCoveringSpec<K>& s, const std::vector<K>& Z) {
    using F = FieldOps<K>;
    require(static_cast<int>(Z.size()) == s.dim(), "pi_delta: wrong number of coordinates");
    require(on_covering(s, Z), "pi_delta: point is not on the covering");
    std::vector<K> w;
    for (int i = 0; i < s.dim(); ++i) w.push_back(s.delta[i] * Z[i] * Z[i]);
    std::optional<P1Point<K>> value;
    for (int i = 0; i < s.dim(); ++i)
        for (int j = i + 1; j < s.dim(); ++j) {
            if (w[i] == w[j]) continue;
            K num = s.roots[j] * w[i] - s.roots[i] * w[j], den = w[i] - w[j];
            P1Point<K> v{num / den, F::one(s.ctx)};
            if (!value) value = v;
            else ensure(*value == v, "pi_delta: value depends on the pair");
        }
    if (!value) return {F::one(s.ctx), F::zero(s.ctx)};
    return *value;
}

struct FiberCensus {
    std::uint64_t q = 0;
    std::uint64_t total = 0;                // #C(F_q)
    std::vector<std::uint64_t> fibers;      // index a < q: (a : 1); index q: (1 : 0)
    std::uint64_t max_fiber = 0, max_branch_fiber = 0;
    std::vector<std::uint64_t> branch;      // indices of the theta_i
};

// Exhaustive over P^{2n}(F_q); q^{2n} must not exceed the budget.
FiberCensus fiber_census(const SplitCoveringSpec<Fp>& s, std::uint64_t budget = 20000000);

// All points of C(F_q) (normalised: first nonzero coordinate 1).
std::vector<std::vector<Fp>> covering_points(const SplitCoveringSpec<Fp>& s, std::uint64_t budget = 20000000);

SplitCoveringSpec<Fp> make_fp_spec(std::uint64_t p, const std::vector<long>& roots, const std::vector<long>& delta);
SplitCoveringSpec<Rat> make_rat_spec(const std::vector<Rat>& roots, const std::vector<Rat>& delta);

// The covering C^{f0 delta} attached to a primitive solution of y^2 = F(x,z)
// with F = f0 prod (x - theta_i z) split over Q (delta here is the twist f0 delta,
// of square norm), and the base point of the
// lifting lemma: [1 : ... : 1], or with a 0 at the root x0/z0 when c = 0.
struct SolutionCovering {
    SplitCoveringSpec<Rat> spec;
    std::vector<Rat> base_point;
    bool weierstrass = false;
};
SolutionCovering solution_covering(const Int& f0, const std::vector<Int>& roots, const Int& x0, const Int& z0);

// F = f0 prod (x - theta_i z).
BinaryForm split_form(const Int& f0, const std::vector<Int>& roots);

}  // namespace superell

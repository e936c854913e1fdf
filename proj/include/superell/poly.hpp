#pragma once

#include "superell/bigint.hpp"
#include "superell/errors.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace superell {

// Dense univariate polynomial, coefficients stored low-to-high.
// The highest stored coefficient is nonzero unless the polynomial is zero.
template <class T>
class Poly {
public:
    Poly() = default;
    Poly(std::initializer_list<T> c) : c_(c) { trim(); }
    explicit Poly(std::vector<T> c) : c_(std::move(c)) { trim(); }
    static Poly constant(const T& a) { return Poly(std::vector<T>{a}); }
    static Poly monomial(const T& a, std::size_t k) {
        std::vector<T> c(k + 1, T(0));
        c[k] = a;
        return Poly(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }
    T operator[](std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
    const T& lead() const {
        require(!c_.empty(), "lead of zero polynomial");
        return c_.back();
    }

    template <class U>
    U eval(const U& x) const {
        U acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + U(c_[i]);
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<T> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<long>(i));
        return Poly(std::move(d));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a) {
        std::vector<T> r(a.c_);
        for (auto& x : r) x = -x;
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    friend Poly operator*(const T& s, const Poly& a) {
        std::vector<T> r(a.c_);
        for (auto& x : r) x *= s;
        return Poly(std::move(r));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Euclidean division; the divisor's leading coefficient must divide exactly
    // in T (always true over a field, true over Z for monic divisors).
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        require(!d.is_zero(), "polynomial division by zero");
        std::vector<T> r(c_);
        int dd = d.degree();
        if (degree() < dd) return {Poly(), *this};
        std::vector<T> q(c_.size() - d.c_.size() + 1, T(0));
        for (int k = degree(); k >= dd; --k) {
            T t = r[k];
            if (t == 0) continue;
            T qk = t / d.lead();
            require(qk * d.lead() == t, "inexact polynomial division");
            q[k - dd] = qk;
            for (int i = 0; i <= dd; ++i) r[k - dd + i] -= qk * d.c_[i];
        }
        return {Poly(std::move(q)), Poly(std::move(r))};
    }

    std::string str(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == 0) continue;
            std::string coef = c_[i].get_str();
            if (!s.empty()) s += (c_[i] < 0) ? " - " : " + ";
            else if (c_[i] < 0) s += "-";
            if (c_[i] < 0) coef = coef.substr(1);
            bool one = (coef == "1");
            if (i == 0) s += coef;
            else {
                if (!one) s += coef + "*";
                s += var;
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<T> c_;
};

using IntPoly = Poly<Int>;
using RatPoly = Poly<Rat>;

RatPoly to_rat_poly(const IntPoly& f);
// Positive rational multiple of f with coprime integer coefficients.
IntPoly primitive_part(const RatPoly& f);
IntPoly primitive_part(const IntPoly& f);
Int content(const IntPoly& f);

RatPoly monic(const RatPoly& f);
RatPoly poly_gcd(const RatPoly& a, const RatPoly& b);
bool is_squarefree(const IntPoly& f);

// Square-free decomposition over Q: f = c * prod_k g_k^k with g_k squarefree,
// pairwise coprime. Returned as (g_k, k) for nonconstant g_k.
std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& f);

}  // namespace superell

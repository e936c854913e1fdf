#include "superell/modpoly.hpp"

#include "superell/errors.hpp"

#include <algorithm>

namespace superell {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
    Int s, t;
    Int g = xgcd(Int(static_cast<unsigned long>(a % m)), Int(static_cast<unsigned long>(m)), s, t);
    require(g == 1, "invmod: not a unit");
    Int r = s % Int(static_cast<unsigned long>(m));
    if (r < 0) r += Int(static_cast<unsigned long>(m));
    return r.get_ui();
}

ModPoly::ModPoly(std::uint64_t modulus) : m_(modulus) {
    require(modulus >= 2 && modulus < (1ULL << 62), "ModPoly: modulus out of range");
}

ModPoly::ModPoly(std::uint64_t modulus, std::vector<std::uint64_t> coeffs) : ModPoly(modulus) {
    c_ = std::move(coeffs);
    for (auto& v : c_) v %= m_;
    trim();
}

ModPoly ModPoly::from_int(std::uint64_t modulus, const IntPoly& f) {
    ModPoly r(modulus);
    Int m(static_cast<unsigned long>(modulus));
    for (const auto& a : f.coeffs()) {
        Int v = a % m;
        if (v < 0) v += m;
        r.c_.push_back(v.get_ui());
    }
    r.trim();
    return r;
}

ModPoly ModPoly::constant(std::uint64_t modulus, std::uint64_t a) { return ModPoly(modulus, {a}); }
ModPoly ModPoly::x(std::uint64_t modulus) { return ModPoly(modulus, {0, 1}); }

void ModPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::uint64_t ModPoly::eval(std::uint64_t x) const {
    std::uint64_t acc = 0;
    x %= m_;
    for (std::size_t i = c_.size(); i-- > 0;) acc = (mulmod(acc, x, m_) + c_[i]) % m_;
    return acc;
}

ModPoly ModPoly::derivative() const {
    ModPoly r(m_);
    for (std::size_t i = 1; i < c_.size(); ++i) r.c_.push_back(mulmod(c_[i], i % m_, m_));
    r.trim();
    return r;
}

ModPoly ModPoly::make_monic() const {
    if (is_zero()) return *this;
    std::uint64_t inv = invmod(lead(), m_);
    return inv * (*this);
}

ModPoly operator+(const ModPoly& a, const ModPoly& b) {
    require(a.m_ == b.m_, "ModPoly: modulus mismatch");
    ModPoly r(a.m_);
    r.c_.assign(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
        std::uint64_t s = a[i] + b[i];
        r.c_[i] = s >= a.m_ ? s - a.m_ : s;
    }
    r.trim();
    return r;
}

ModPoly operator-(const ModPoly& a) {
    ModPoly r(a.m_);
    for (auto v : a.c_) r.c_.push_back(v == 0 ? 0 : a.m_ - v);
    r.trim();
    return r;
}

ModPoly operator-(const ModPoly& a, const ModPoly& b) { return a + (-b); }

ModPoly operator*(const ModPoly& a, const ModPoly& b) {
    require(a.m_ == b.m_, "ModPoly: modulus mismatch");
    ModPoly r(a.m_);
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            r.c_[i + j] = (r.c_[i + j] + mulmod(a.c_[i], b.c_[j], a.m_)) % a.m_;
    }
    r.trim();
    return r;
}

ModPoly operator*(std::uint64_t s, const ModPoly& a) {
    ModPoly r(a.m_);
    for (auto v : a.c_) r.c_.push_back(mulmod(v, s % a.m_, a.m_));
    r.trim();
    return r;
}

bool operator<(const ModPoly& a, const ModPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = a.c_.size(); i-- > 0;)
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    return false;
}

std::pair<ModPoly, ModPoly> ModPoly::divmod(const ModPoly& d) const {
    require(m_ == d.m_, "ModPoly: modulus mismatch");
    require(!d.is_zero(), "ModPoly: division by zero");
    std::uint64_t inv = invmod(d.lead(), m_);
    ModPoly q(m_), r = *this;
    if (degree() < d.degree()) return {q, r};
    q.c_.assign(c_.size() - d.c_.size() + 1, 0);
    int dd = d.degree();
    for (int k = r.degree(); k >= dd; --k) {
        std::uint64_t t = r.c_[k];
        if (t == 0) continue;
        std::uint64_t qk = mulmod(t, inv, m_);
        q.c_[k - dd] = qk;
        for (int i = 0; i <= dd; ++i) {
            std::uint64_t sub = mulmod(qk, d.c_[i], m_);
            std::uint64_t& x = r.c_[k - dd + i];
            x = x >= sub ? x - sub : x + m_ - sub;
        }
    }
    q.trim();
    r.trim();
    return {q, r};
}

std::string ModPoly::str() const {
    std::vector<Int> c;
    for (auto v : c_) c.emplace_back(static_cast<unsigned long>(v));
    return IntPoly(std::move(c)).str() + " mod " + std::to_string(m_);
}

namespace {

void require_prime(std::uint64_t p) { require(is_prime(p), "ModPoly: modulus is not prime"); }

}  // namespace

ModPoly poly_gcd_mod_p(const ModPoly& a, const ModPoly& b) {
    require_prime(a.modulus());
    ModPoly x = a, y = b;
    while (!y.is_zero()) {
        ModPoly r = x % y;
        x = y;
        y = r;
    }
    return x.make_monic();
}

ModPoly poly_xgcd_mod_p(const ModPoly& a, const ModPoly& b, ModPoly& s, ModPoly& t) {
    std::uint64_t p = a.modulus();
    require_prime(p);
    ModPoly r0 = a, r1 = b;
    ModPoly s0 = ModPoly::constant(p, 1), s1(p), t0(p), t1 = ModPoly::constant(p, 1);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = r1;
        r1 = r;
        ModPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    if (r0.is_zero()) {
        s = s0;
        t = t0;
        return r0;
    }
    std::uint64_t inv = invmod(r0.lead(), p);
    s = inv * s0;
    t = inv * t0;
    return inv * r0;
}

ModPoly powmod(const ModPoly& base, const Int& e, const ModPoly& f) {
    require(e >= 0, "powmod: negative exponent");
    ModPoly r = ModPoly::constant(base.modulus(), 1) % f;
    ModPoly b = base % f;
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = (r * r) % f;
        if (mpz_tstbit(e.get_mpz_t(), i)) r = (r * b) % f;
    }
    return r;
}

ModPoly invmod(const ModPoly& a, const ModPoly& f) {
    ModPoly s(a.modulus()), t(a.modulus());
    ModPoly g = poly_xgcd_mod_p(a % f, f, s, t);
    require(g.is_one(), "invmod: not invertible modulo f");
    return s % f;
}

namespace {

ModPoly pth_root(const ModPoly& f) {
    std::uint64_t p = f.modulus();
    std::vector<std::uint64_t> c;
    for (std::size_t i = 0; i < f.coeffs().size(); i += p) c.push_back(f.coeffs()[i]);
    return ModPoly(p, std::move(c));
}

void squarefree_parts(const ModPoly& f, int mult, std::vector<std::pair<ModPoly, int>>& out) {
    std::uint64_t p = f.modulus();
    if (f.degree() <= 0) return;
    ModPoly df = f.derivative();
    if (df.is_zero()) {
        squarefree_parts(pth_root(f), mult * static_cast<int>(p), out);
        return;
    }
    ModPoly c = poly_gcd_mod_p(f, df);
    ModPoly w = f / c;
    int i = 1;
    while (w.degree() > 0) {
        ModPoly y = poly_gcd_mod_p(w, c);
        ModPoly fac = w / y;
        if (fac.degree() > 0) out.emplace_back(fac.make_monic(), mult * i);
        w = y;
        c = c / y;
        ++i;
    }
    if (c.degree() > 0) squarefree_parts(pth_root(c), mult * static_cast<int>(p), out);
}

void equal_degree_split(const ModPoly& g, int d, std::mt19937_64& rng, std::vector<ModPoly>& out) {
    std::uint64_t p = g.modulus();
    if (g.degree() == d) {
        out.push_back(g);
        return;
    }
    std::uniform_int_distribution<std::uint64_t> coef(0, p - 1);
    Int half = (ipow(Int(static_cast<unsigned long>(p)), static_cast<unsigned long>(d)) - 1) / 2;
    while (true) {
        std::vector<std::uint64_t> c(static_cast<std::size_t>(g.degree()));
        for (auto& v : c) v = coef(rng);
        ModPoly a(p, std::move(c));
        if (a.degree() <= 0) continue;
        ModPoly b(p);
        if (p == 2) {
            ModPoly t = a;
            b = a;
            for (int i = 1; i < d; ++i) {
                t = (t * t) % g;
                b = b + t;
            }
        } else {
            b = powmod(a, half, g) - ModPoly::constant(p, 1);
        }
        ModPoly h = poly_gcd_mod_p(b, g);
        if (h.degree() > 0 && h.degree() < g.degree()) {
            equal_degree_split(h, d, rng, out);
            equal_degree_split((g / h).make_monic(), d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<ModPoly, int>> distinct_degree_factor(const ModPoly& f0) {
    std::uint64_t p = f0.modulus();
    require_prime(p);
    std::vector<std::pair<ModPoly, int>> out;
    ModPoly f = f0.make_monic();
    ModPoly xp = ModPoly::x(p);
    ModPoly h = xp % f;
    Int pe(static_cast<unsigned long>(p));
    for (int d = 1; 2 * d <= f.degree(); ++d) {
        h = powmod(h, pe, f);
        ModPoly g = poly_gcd_mod_p(h - xp, f);
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            f = f / g;
            h = h % f;
        }
    }
    if (f.degree() > 0) out.emplace_back(f.make_monic(), f.degree());
    return out;
}

Factorization factor_mod_p(const ModPoly& f, std::uint64_t seed) {
    std::uint64_t p = f.modulus();
    require_prime(p);
    require(!f.is_zero(), "factor_mod_p: zero polynomial");
    Factorization res;
    res.unit = f.lead();
    std::vector<std::pair<ModPoly, int>> parts;
    squarefree_parts(f.make_monic(), 1, parts);
    std::mt19937_64 rng(seed);
    for (auto& [part, mult] : parts)
        for (auto& [g, d] : distinct_degree_factor(part)) {
            std::vector<ModPoly> irr;
            equal_degree_split(g, d, rng, irr);
            for (auto& q : irr) res.factors.emplace_back(q, mult);
        }
    std::sort(res.factors.begin(), res.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first || (a.first == b.first && a.second < b.second); });
    return res;
}

bool is_irreducible_mod_p(const ModPoly& f) {
    if (f.degree() <= 0) return false;
    auto fac = factor_mod_p(f);
    return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

}  // namespace superell

#include "superell/bigint.hpp"

#include "superell/errors.hpp"

#include <cctype>

namespace superell {

Int ipow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Rat rpow(const Rat& base, long e) {
    if (e < 0) {
        require(base != 0, "rpow: zero to a negative power");
        Rat inv = 1 / base;
        return rpow(inv, -e);
    }
    Rat r(ipow(base.get_num(), static_cast<unsigned long>(e)),
          ipow(base.get_den(), static_cast<unsigned long>(e)));
    return r;
}

int valuation(const Int& a, const Int& p) {
    require(a != 0, "valuation of zero");
    Int q = a;
    int v = 0;
    while (mpz_divisible_p(q.get_mpz_t(), p.get_mpz_t())) {
        q /= p;
        ++v;
    }
    return v;
}

int valuation(const Rat& a, const Int& p) {
    return valuation(a.get_num(), p) - valuation(a.get_den(), p);
}

bool is_square(const Int& a, Int* root) {
    if (a < 0) return false;
    if (!mpz_perfect_square_p(a.get_mpz_t())) return false;
    if (root) mpz_sqrt(root->get_mpz_t(), a.get_mpz_t());
    return true;
}

bool is_square(const Rat& a, Rat* root) {
    Int rn, rd;
    if (!is_square(a.get_num(), &rn) || !is_square(a.get_den(), &rd)) return false;
    if (root) *root = Rat(rn, rd);
    return true;
}

Int max_power_below(const Int& bound, unsigned long k) {
    require(bound >= 1 && k >= 1, "max_power_below: bad arguments");
    // floor of the k-th root, then step down if it is exact
    Int r;
    mpz_root(r.get_mpz_t(), bound.get_mpz_t(), k);
    while (ipow(r, k) >= bound) --r;
    while (ipow(r + 1, k) < bound) ++r;
    return r;
}

Int xgcd(const Int& a, const Int& b, Int& s, Int& t) {
    Int g;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

bool is_prime(std::uint64_t n) { return is_prime(Int(static_cast<unsigned long>(n))); }

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    if (bound < 2) return out;
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
    return out;
}

std::vector<std::pair<Int, int>> factor_trial(const Int& n) {
    require(n != 0, "factor_trial: zero");
    std::vector<std::pair<Int, int>> out;
    Int m = abs(n);
    auto strip = [&](const Int& p) {
        int e = 0;
        while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
            m /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    };
    strip(2);
    for (Int p = 3; p * p <= m; p += 2) strip(p);
    if (m > 1) out.emplace_back(m, 1);
    return out;
}

std::vector<Int> squarefree_primes(const Int& n) {
    std::vector<Int> out;
    for (auto& [p, e] : factor_trial(n))
        if (e % 2) out.push_back(p);
    return out;
}

Int symmetric_mod(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

Int parse_int(const std::string& s) {
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
    require(!t.empty(), "empty integer literal");
    std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    require(start < t.size(), "bad integer literal: " + s);
    for (std::size_t i = start; i < t.size(); ++i)
        require(std::isdigit(static_cast<unsigned char>(t[i])), "bad integer literal: " + s);
    if (t[0] == '+') t = t.substr(1);
    return Int(t, 10);
}

std::string to_string(const Int& a) { return a.get_str(); }
std::string to_string(const Rat& a) { return a.get_str(); }

}  // namespace superell

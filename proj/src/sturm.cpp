#include "superell/sturm.hpp"

namespace superell {

std::vector<IntPoly> sturm_chain(const IntPoly& f) {
    std::vector<IntPoly> chain;
    if (f.is_zero()) return chain;
    chain.push_back(f);
    if (f.degree() == 0) return chain;
    chain.push_back(f.derivative());
    while (true) {
        RatPoly a = to_rat_poly(chain[chain.size() - 2]);
        RatPoly b = to_rat_poly(chain.back());
        RatPoly r = a.divmod(b).second;
        if (r.is_zero()) break;
        chain.push_back(primitive_part(-r));
    }
    return chain;
}

namespace {

int sign_at(const IntPoly& p, const std::optional<Rat>& x, bool plus_infinity) {
    if (!x) {
        int s = sgn(p.lead());
        if (!plus_infinity && p.degree() % 2 == 1) s = -s;
        return s;
    }
    return sgn(p.eval(*x));
}

int variations(const std::vector<IntPoly>& chain, const std::optional<Rat>& x, bool plus_infinity) {
    int v = 0, last = 0;
    for (const auto& p : chain) {
        int s = sign_at(p, x, plus_infinity);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

}  // namespace

int sturm_count(const IntPoly& f, const std::optional<Rat>& lo, const std::optional<Rat>& hi) {
    require(!f.is_zero(), "sturm_count: zero polynomial");
    require(is_squarefree(f), "sturm_count: polynomial is not squarefree");
    if (lo && hi) require(*lo < *hi, "sturm_count: empty interval");
    if (f.degree() == 0) return 0;
    auto chain = sturm_chain(f);
    return variations(chain, lo, false) - variations(chain, hi, true);
}

}  // namespace superell

#include "superell/poly.hpp"

namespace superell {

RatPoly to_rat_poly(const IntPoly& f) {
    std::vector<Rat> c;
    c.reserve(f.coeffs().size());
    for (const auto& a : f.coeffs()) c.emplace_back(a);
    return RatPoly(std::move(c));
}

Int content(const IntPoly& f) {
    Int g = 0;
    for (const auto& a : f.coeffs()) g = gcd(g, a);
    return g;
}

IntPoly primitive_part(const IntPoly& f) {
    if (f.is_zero()) return f;
    Int g = content(f);
    std::vector<Int> c;
    for (const auto& a : f.coeffs()) c.push_back(a / g);
    return IntPoly(std::move(c));
}

IntPoly primitive_part(const RatPoly& f) {
    if (f.is_zero()) return IntPoly();
    Int den = 1;
    for (const auto& a : f.coeffs()) den = lcm(den, Int(a.get_den()));
    std::vector<Int> c;
    for (const auto& a : f.coeffs()) {
        Rat s = a * den;
        c.push_back(s.get_num());
    }
    return primitive_part(IntPoly(std::move(c)));
}

RatPoly monic(const RatPoly& f) {
    if (f.is_zero()) return f;
    Rat inv = 1 / f.lead();
    return inv * f;
}

RatPoly poly_gcd(const RatPoly& a, const RatPoly& b) {
    RatPoly x = a, y = b;
    while (!y.is_zero()) {
        RatPoly r = x.divmod(y).second;
        x = y;
        y = to_rat_poly(primitive_part(r));
    }
    return monic(x);
}

bool is_squarefree(const IntPoly& f) {
    if (f.degree() <= 0) return true;
    RatPoly g = poly_gcd(to_rat_poly(f), to_rat_poly(f.derivative()));
    return g.degree() == 0;
}

std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& f) {
    require(!f.is_zero(), "squarefree decomposition of zero");
    std::vector<std::pair<IntPoly, int>> out;
    if (f.degree() <= 0) return out;
    // Yun's algorithm
    RatPoly a = to_rat_poly(f);
    RatPoly da = a.derivative();
    RatPoly b = poly_gcd(a, da);
    RatPoly c = a.divmod(b).first;
    RatPoly d = da.divmod(b).first - c.derivative();
    int i = 1;
    while (c.degree() > 0) {
        RatPoly g = poly_gcd(c, d);
        if (g.degree() > 0) out.emplace_back(primitive_part(g), i);
        c = c.divmod(g).first;
        d = d.divmod(g).first - c.derivative();
        ++i;
    }
    return out;
}

}  // namespace superell

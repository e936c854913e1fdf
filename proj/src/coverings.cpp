#include "superell/coverings.hpp"

#include <algorithm>

namespace superell {

namespace {

std::uint64_t p1_index(const P1Point<Fp>& a, std::uint64_t q) { return a.second.is_zero() ? q : a.first.v; }

// Calls f on every normalised point of P^{d-1}(F_q).
template <class Fn>
void for_each_projective(int d, std::uint64_t q, Fn&& f) {
    std::vector<Fp> Z(d, Fp(0, q));
    for (int lead = 0; lead < d; ++lead) {
        for (int i = 0; i < d; ++i) Z[i] = Fp(0, q);
        Z[lead] = Fp(1, q);
        int free = d - lead - 1;
        std::vector<std::uint64_t> digits(free, 0);
        while (true) {
            for (int i = 0; i < free; ++i) Z[lead + 1 + i] = Fp::raw(digits[i], q);
            f(Z);
            int k = 0;
            while (k < free && ++digits[k] == q) digits[k++] = 0;
            if (k == free) break;
        }
    }
}

void check_budget(const SplitCoveringSpec<Fp>& s, std::uint64_t budget) {
    s.validate();
    std::uint64_t q = s.ctx.p, work = 1;
    for (int i = 1; i < s.dim(); ++i) {
        work *= q;
        require(work <= budget, "fiber_census: q^{2n} exceeds the enumeration budget");
    }
}

}  // namespace

SplitCoveringSpec<Fp> make_fp_spec(std::uint64_t p, const std::vector<long>& roots, const std::vector<long>& delta) {
    require(p >= 3 && p < (1ULL << 32) && is_prime(p), "covering: p must be an odd prime below 2^32");
    SplitCoveringSpec<Fp> s;
    s.ctx.p = p;
    for (long r : roots) s.roots.emplace_back(r, p);
    for (long d : delta) s.delta.emplace_back(d, p);
    s.validate();
    return s;
}

SplitCoveringSpec<Rat> make_rat_spec(const std::vector<Rat>& roots, const std::vector<Rat>& delta) {
    SplitCoveringSpec<Rat> s;
    s.roots = roots;
    s.delta = delta;
    s.validate();
    return s;
}

std::vector<std::vector<Fp>> covering_points(const SplitCoveringSpec<Fp>& s, std::uint64_t budget) {
    check_budget(s, budget);
    std::vector<std::vector<Fp>> pts;
    for_each_projective(s.dim(), s.ctx.p, [&](const std::vector<Fp>& Z) {
        if (on_covering(s, Z)) pts.push_back(Z);
    });
    return pts;
}

FiberCensus fiber_census(const SplitCoveringSpec<Fp>& s, std::uint64_t budget) {
    check_budget(s, budget);
    FiberCensus fc;
    fc.q = s.ctx.p;
    fc.fibers.assign(fc.q + 1, 0);
    for_each_projective(s.dim(), fc.q, [&](const std::vector<Fp>& Z) {
        if (!on_covering(s, Z)) return;
        ++fc.total;
        ++fc.fibers[p1_index(pi_delta_eval(s, Z), fc.q)];
    });
    for (auto& r : s.roots) fc.branch.push_back(r.v);
    for (std::uint64_t a = 0; a <= fc.q; ++a) fc.max_fiber = std::max(fc.max_fiber, fc.fibers[a]);
    for (auto b : fc.branch) fc.max_branch_fiber = std::max(fc.max_branch_fiber, fc.fibers[b]);
    return fc;
}

BinaryForm split_form(const Int& f0, const std::vector<Int>& roots) {
    require(roots.size() % 2 == 1, "split_form: need an odd number of roots");
    // coefficients of x^{N-i} z^i
    std::vector<Int> c{f0};
    for (auto& t : roots) {
        std::vector<Int> nc(c.size() + 1, Int(0));
        for (std::size_t i = 0; i < c.size(); ++i) {
            nc[i] += c[i];
            nc[i + 1] -= t * c[i];
        }
        c = std::move(nc);
    }
    return BinaryForm(static_cast<int>(roots.size() / 2), c);
}

SolutionCovering solution_covering(const Int& f0, const std::vector<Int>& roots, const Int& x0, const Int& z0) {
    require(f0 != 0, "solution_covering: f0 must be nonzero");
    require(gcd(x0, z0) == 1, "solution_covering: point must be primitive");
    BinaryForm F = split_form(f0, roots);
    Int v = F.eval(x0, z0);
    require(v >= 0 && mpz_perfect_square_p(v.get_mpz_t()), "solution_covering: F(x0,z0) is not a square");
    SolutionCovering out;
    int N = static_cast<int>(roots.size()), hit = -1;
    for (int i = 0; i < N; ++i) {
        out.spec.roots.emplace_back(roots[i]);
        if (x0 - roots[i] * z0 == 0) hit = i;
    }
    for (int i = 0; i < N; ++i) {
        if (i != hit) {
            out.spec.delta.emplace_back(Rat(f0 * (x0 - roots[i] * z0)));
            continue;
        }
        // f0 G(x0,z0)/z0 up to squares, where F = (z0 x - x0 z) G; this keeps
        // prod delta_i a square
        Int d = 1;
        for (int k = 0; k < N; ++k)
            if (k != i) d *= x0 - roots[k] * z0;
        out.spec.delta.emplace_back(Rat(d));
    }
    out.spec.validate();
    out.weierstrass = hit >= 0;
    out.base_point.assign(N, Rat(1));
    if (hit >= 0) out.base_point[hit] = Rat(0);
    ensure(on_covering(out.spec, out.base_point), "solution_covering: base point is off the covering");
    return out;
}

}  // namespace superell

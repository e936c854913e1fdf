#include "superell/localsolve.hpp"

#include "superell/errors.hpp"
#include "superell/modpoly.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace superell {

namespace {

using u64 = std::uint64_t;

// h(b + p*s) for h given low-to-high.
std::vector<Int> shift_scale(const std::vector<Int>& h, const Int& b, const Int& p) {
    std::vector<Int> acc;
    for (std::size_t i = h.size(); i-- > 0;) {
        // acc <- acc * (b + p s) + h_i
        std::vector<Int> next(acc.size() + 1, Int(0));
        for (std::size_t j = 0; j < acc.size(); ++j) {
            next[j] += acc[j] * b;
            next[j + 1] += acc[j] * p;
        }
        next[0] += h[i];
        acc = std::move(next);
    }
    while (!acc.empty() && acc.back() == 0) acc.pop_back();
    return acc;
}

int val_or(const Int& a, const Int& p, int inf) { return a == 0 ? inf : valuation(a, p); }

std::vector<Int> chart_poly(const BinaryForm& F, int chart, const Int& p) {
    int N = F.degree();
    std::vector<Int> g(N + 1);
    if (chart == 0) {
        for (int k = 0; k <= N; ++k) g[k] = F.f[N - k];  // F(s,1)
    } else {
        Int pk = 1;
        for (int k = 0; k <= N; ++k) {
            g[k] = F.f[k] * pk;  // F(1, p t)
            pk *= p;
        }
    }
    while (!g.empty() && g.back() == 0) g.pop_back();
    return g;
}

Int eval_low(const std::vector<Int>& g, const Int& x) {
    Int acc = 0;
    for (std::size_t i = g.size(); i-- > 0;) acc = acc * x + g[i];
    return acc;
}

std::vector<Int> deriv_low(const std::vector<Int>& g) {
    std::vector<Int> d;
    for (std::size_t i = 1; i < g.size(); ++i) d.push_back(g[i] * Int(static_cast<long>(i)));
    return d;
}

u64 to_u64_mod(const Int& a, u64 m) {
    Int r = a % Int(static_cast<unsigned long>(m));
    if (r < 0) r += Int(static_cast<unsigned long>(m));
    return r.get_ui();
}

u64 small_prime(const Int& p) {
    require(p >= 2 && p.fits_ulong_p() && p < Int(1UL << 31) && is_prime(p), "expected a prime below 2^31");
    return p.get_ui();
}

// Dense matrices over Z/q.
using ModMat = std::vector<std::vector<u64>>;

// Row echelon over F_p; returns rank and leaves m reduced.
std::size_t rank_mod_p(ModMat m, u64 p) {
    std::size_t rows = m.size(), cols = rows ? m[0].size() : 0, r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] % p == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        u64 inv = invmod(m[r][c] % p, p);
        for (auto& x : m[r]) x = mulmod(x % p, inv, p);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] % p == 0) continue;
            u64 t = m[i][c] % p;
            for (std::size_t j = 0; j < cols; ++j) m[i][j] = (m[i][j] % p + p - mulmod(t, m[r][j], p)) % p;
        }
        ++r;
    }
    return r;
}

// Left kernel {v : v M = 0} of a square matrix over F_p, in reduced form.
// Each returned vector has a 1 at its pivot and 0 at the other pivots.
std::vector<std::vector<u64>> left_kernel_mod_p(const ModMat& M, u64 p, std::vector<std::size_t>& pivots) {
    std::size_t N = M.size();
    // Solve M^T v^T = 0: reduce the transpose.
    ModMat a(N, std::vector<u64>(N));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) a[i][j] = M[j][i] % p;
    std::vector<std::size_t> pivcol;
    std::size_t r = 0;
    for (std::size_t c = 0; c < N && r < N; ++c) {
        std::size_t piv = r;
        while (piv < N && a[piv][c] == 0) ++piv;
        if (piv == N) continue;
        std::swap(a[piv], a[r]);
        u64 inv = invmod(a[r][c], p);
        for (auto& x : a[r]) x = mulmod(x, inv, p);
        for (std::size_t i = 0; i < N; ++i) {
            if (i == r || a[i][c] == 0) continue;
            u64 t = a[i][c];
            for (std::size_t j = 0; j < N; ++j) a[i][j] = (a[i][j] + p - mulmod(t, a[r][j], p)) % p;
        }
        pivcol.push_back(c);
        ++r;
    }
    std::vector<bool> is_piv(N, false);
    for (auto c : pivcol) is_piv[c] = true;
    std::vector<std::vector<u64>> ker;
    pivots.clear();
    for (std::size_t fcol = 0; fcol < N; ++fcol) {
        if (is_piv[fcol]) continue;
        std::vector<u64> v(N, 0);
        v[fcol] = 1;
        for (std::size_t i = 0; i < pivcol.size(); ++i) v[pivcol[i]] = (p - a[i][fcol]) % p;
        ker.push_back(v);
        pivots.push_back(fcol);
    }
    return ker;
}

// Inverse of a matrix over Z/q whose reduction mod p is invertible (q a power of p).
ModMat inverse_mod(const ModMat& M, u64 p, u64 q) {
    std::size_t N = M.size();
    ModMat a(N, std::vector<u64>(2 * N, 0));
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < N; ++j) a[i][j] = M[i][j] % q;
        a[i][N + i] = 1;
    }
    for (std::size_t c = 0; c < N; ++c) {
        std::size_t piv = c;
        while (piv < N && a[piv][c] % p == 0) ++piv;
        ensure(piv < N, "inverse_mod: singular matrix");
        std::swap(a[piv], a[c]);
        u64 inv = invmod(a[c][c], q);
        for (auto& x : a[c]) x = mulmod(x, inv, q);
        for (std::size_t i = 0; i < N; ++i) {
            if (i == c || a[i][c] == 0) continue;
            u64 t = a[i][c];
            for (std::size_t j = 0; j < 2 * N; ++j) a[i][j] = (a[i][j] + q - mulmod(t, a[c][j], q)) % q;
        }
    }
    ModMat inv(N, std::vector<u64>(N));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) inv[i][j] = a[i][N + j];
    return inv;
}

using ModTable = std::vector<std::vector<std::vector<u64>>>;

ModTable table_mod(int n, const std::vector<u64>& f, u64 q) {
    int N = 2 * n + 1;
    auto add = [&](std::vector<u64>& v, int k, u64 coef, bool neg) {
        if (k == N) {
            // zeta_N = -f_N
            u64 t = mulmod(coef, f[N], q);
            neg = !neg;
            v[0] = neg ? (v[0] + q - t) % q : (v[0] + t) % q;
        } else {
            v[k] = neg ? (v[k] + q - coef) % q : (v[k] + coef) % q;
        }
    };
    ModTable t(N, std::vector<std::vector<u64>>(N, std::vector<u64>(N, 0)));
    for (int j = 0; j < N; ++j) {
        t[0][j][j] = 1;
        t[j][0][j] = 1;
    }
    for (int i = 1; i < N; ++i)
        for (int j = i; j < N; ++j) {
            std::vector<u64> v(N, 0);
            for (int k = j + 1; k <= std::min(i + j, N); ++k) add(v, k, f[i + j - k], false);
            for (int k = std::max(i + j - N, 1); k <= i; ++k) add(v, k, f[i + j - k], true);
            t[i][j] = v;
            t[j][i] = v;
        }
    return t;
}

std::vector<u64> tmul(const ModTable& t, const std::vector<u64>& x, const std::vector<u64>& y, u64 q) {
    std::size_t N = x.size();
    std::vector<u64> r(N, 0);
    for (std::size_t i = 0; i < N; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < N; ++j) {
            if (y[j] == 0) continue;
            u64 c = mulmod(x[i], y[j], q);
            for (std::size_t k = 0; k < N; ++k)
                if (t[i][j][k]) r[k] = (r[k] + mulmod(c, t[i][j][k], q)) % q;
        }
    }
    return r;
}

std::vector<u64> vmat(const std::vector<u64>& v, const ModMat& M, u64 q) {
    std::size_t N = M.size(), C = M[0].size();
    std::vector<u64> r(C, 0);
    for (std::size_t i = 0; i < N; ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < C; ++j) r[j] = (r[j] + mulmod(v[i], M[i][j], q)) % q;
    }
    return r;
}

ModMat matmul(const ModMat& a, const ModMat& b, u64 q) {
    ModMat r;
    for (const auto& row : a) r.push_back(vmat(row, b, q));
    return r;
}

std::vector<u64> reduce_form(const BinaryForm& F, u64 m) {
    std::vector<u64> f;
    for (const auto& c : F.f) f.push_back(to_u64_mod(c, m));
    return f;
}

}  // namespace

int local_depth_cap(const BinaryForm& F, const Int& p) {
    Int D = disc(F);
    int v = D == 0 ? 0 : valuation(D, p);
    return v + (p == 2 ? 5 : 2);
}

LocalReport zp_soluble(const BinaryForm& F, const Int& p) {
    require(F.lead() != 0, "zp_soluble: f0 must be nonzero");
    require(p >= 2 && is_prime(p), "zp_soluble: p must be prime");
    LocalReport rep;
    rep.p = p;
    rep.depth_cap = local_depth_cap(F, p);
    int hard_limit = rep.depth_cap + 64;
    const int INF = 1 << 28;
    int N = F.degree();

    auto witness_square = [&](int chart, const Int& a, const Int& value, int w) {
        Int x0 = chart == 0 ? a : Int(1);
        Int z0 = chart == 0 ? Int(1) : Int(p * a);
        Int u = value;
        for (int i = 0; i < w; ++i) u /= p;
        LocalWitness W;
        W.kind = "square";
        W.chart = chart;
        W.x0 = u * x0;
        W.z0 = u * z0;
        W.c = ipow(u, F.n + 1) * ipow(p, w / 2);
        return W;
    };

    for (int chart = 0; chart < 2 && !rep.soluble; ++chart) {
        std::vector<Int> g = chart_poly(F, chart, p);
        // depth k in the disc a + p^k Z_p; chart 1 already sits one level down
        std::function<bool(const std::vector<Int>&, const Int&, int, const Int&)> visit =
            [&](const std::vector<Int>& h, const Int& a, int k, const Int& pk) -> bool {
            int depth = k + chart;
            ++rep.nodes;
            rep.depth_used = std::max(rep.depth_used, depth);
            if (depth > hard_limit) throw InternalError("zp_soluble: depth exceeded");
            Int h0 = h.empty() ? Int(0) : h[0];
            if (h0 == 0) {
                LocalWitness W;
                W.kind = "root";
                W.chart = chart;
                W.x0 = chart == 0 ? a : Int(1);
                W.z0 = chart == 0 ? Int(1) : Int(p * a);
                W.c = 0;
                rep.witness = W;
                return true;
            }
            int w = valuation(h0, p);
            if (w % 2 == 0) {
                rep.witness = witness_square(chart, a, h0, w);
                return true;
            }
            int m = INF;
            for (std::size_t i = 1; i < h.size(); ++i) m = std::min(m, val_or(h[i], p, INF));
            if (m > w) return false;
            if (h.size() > 1 && h[1] != 0) {
                // v(g'(a)) = v(h_1) - k
                int vd = valuation(h[1], p) - k;
                if (w > 2 * vd) {
                    LocalWitness W;
                    W.kind = "root";
                    W.chart = chart;
                    W.x0 = chart == 0 ? a : Int(1);
                    W.z0 = chart == 0 ? Int(1) : Int(p * a);
                    W.c = 0;
                    rep.witness = W;
                    return true;
                }
            }
            for (unsigned long b = 0; Int(b) < p; ++b) {
                std::vector<Int> child = shift_scale(h, Int(b), p);
                if (visit(child, a + Int(b) * pk, k + 1, pk * p)) return true;
            }
            return false;
        };
        if (visit(g, Int(0), 0, Int(1))) rep.soluble = true;
    }
    (void)N;
    if (rep.soluble) ensure(verify_local_witness(F, p, *rep.witness), "zp_soluble: witness failed verification");
    return rep;
}

bool verify_local_witness(const BinaryForm& F, const Int& p, const LocalWitness& w) {
    if (w.kind == "square") {
        if (w.x0 % p == 0 && w.z0 % p == 0) return false;
        return F.eval(w.x0, w.z0) == w.c * w.c;
    }
    if (w.kind == "root") {
        // Hensel in the chart polynomial at the recorded point
        std::vector<Int> g = chart_poly(F, w.chart, p);
        Int s;
        if (w.chart == 0) {
            if (w.z0 != 1) return false;
            s = w.x0;
        } else {
            if (w.x0 != 1 || w.z0 % p != 0) return false;
            s = w.z0 / p;
        }
        Int v = eval_low(g, s);
        if (v == 0) return true;
        Int d = eval_low(deriv_low(g), s);
        if (d == 0) return false;
        return valuation(v, p) > 2 * valuation(d, p);
    }
    return false;
}

RealReport real_soluble(const BinaryForm& F) {
    require(F.lead() != 0, "real_soluble: f0 must be nonzero");
    RealReport r;
    r.x0 = F.lead();
    r.z0 = 0;
    r.c = ipow(F.lead(), F.n + 1);
    ensure(F.eval(r.x0, r.z0) == r.c * r.c, "real_soluble: witness");
    return r;
}

bool p_maximal_mod(int n, const std::vector<u64>& f, u64 p) {
    int N = 2 * n + 1;
    require(static_cast<int>(f.size()) == N + 1, "p_maximal_mod: need 2n+2 coefficients");
    require(p >= 2 && p < (1ULL << 31), "p_maximal_mod: p out of range");
    u64 q = p * p;
    ModTable T = table_mod(n, f, q);
    ModTable Tp = T;
    for (auto& a : Tp)
        for (auto& b : a)
            for (auto& c : b) c %= p;

    // Frobenius x -> x^p on R/pR, as rows.
    ModMat Phi(N, std::vector<u64>(N, 0));
    for (int a = 0; a < N; ++a) {
        std::vector<u64> e(N, 0), r(N, 0), base;
        e[a] = 1;
        r[0] = 1;
        base = e;
        for (u64 k = p; k; k >>= 1) {
            if (k & 1) r = tmul(Tp, r, base, p);
            if (k > 1) base = tmul(Tp, base, base, p);
        }
        Phi[a] = r;
    }
    // x^(p^j) with p^j >= N kills exactly the radical
    ModMat P = Phi;
    for (u64 pj = p; pj < static_cast<u64>(N); pj *= p) P = matmul(P, Phi, p);
    std::vector<std::size_t> pivots;
    auto rad = left_kernel_mod_p(P, p, pivots);
    std::size_t r = rad.size();
    if (r == 0) return true;

    // W: radical basis followed by the standard vectors off the pivots
    ModMat W;
    for (auto& v : rad) W.push_back(v);
    std::vector<bool> used(N, false);
    for (auto c : pivots) used[c] = true;
    for (int j = 0; j < N; ++j)
        if (!used[j]) {
            std::vector<u64> e(N, 0);
            e[j] = 1;
            W.push_back(e);
        }
    ensure(static_cast<int>(W.size()) == N, "p_maximal: basis size");
    ModMat Winv = inverse_mod(W, p, q);

    std::vector<std::vector<u64>> Ib;  // Z_p-basis of the radical I_p, mod p^2
    for (int k = 0; k < N; ++k) {
        std::vector<u64> b = W[k];
        if (static_cast<std::size_t>(k) >= r)
            for (auto& x : b) x = mulmod(x, p, q);
        Ib.push_back(b);
    }

    // y in R/pR lies in the multiplier ring of I_p (scaled by 1/p) iff
    // y * I_p is contained in p I_p; the conditions are F_p-linear in y.
    ModMat M(N, std::vector<u64>());
    for (int a = 0; a < N; ++a) {
        std::vector<u64> e(N, 0);
        e[a] = 1;
        auto& row = M[a];
        row.reserve(static_cast<std::size_t>(N) * N);
        for (int k = 0; k < N; ++k) {
            auto z = vmat(tmul(T, e, Ib[k], q), Winv, q);
            for (int i = 0; i < N; ++i) {
                if (static_cast<std::size_t>(i) < r) {
                    row.push_back(z[i] % p);
                } else {
                    ensure(z[i] % p == 0, "p_maximal: radical not an ideal");
                    row.push_back(z[i] / p);
                }
            }
        }
    }
    return rank_mod_p(M, p) == static_cast<std::size_t>(N);
}

bool p_maximal(const BinaryForm& F, const Int& p) {
    require(disc(F) != 0, "p_maximal: F must be separable");
    u64 pp = small_prime(p);
    return p_maximal_mod(F.n, reduce_form(F, pp * pp), pp);
}

bool reduced_is_square_mod(int n, const std::vector<u64>& f, u64 p) {
    int N = 2 * n + 1;
    int m = 0;
    while (m <= N && f[m] % p == 0) ++m;
    if (m > N) return false;  // F = 0 mod p
    if ((N - m) % 2 != 0) return false;
    u64 lead = f[m] % p;
    if (p > 2 && powmod(lead, (p - 1) / 2, p) != 1) return false;
    std::vector<u64> c(N - m + 1);
    // G(x,1) = sum_{i >= m} f_i x^{N-i}, low-to-high
    for (int i = m; i <= N; ++i) c[N - i] = f[i] % p;
    ModPoly g(p, c);
    if (g.degree() == 0) return true;
    auto fac = factor_mod_p(g.make_monic());
    for (auto& [h, e] : fac.factors)
        if (e % 2 != 0) return false;
    return true;
}

bool reduced_is_square(const BinaryForm& F, const Int& p) {
    u64 pp = small_prime(p);
    return reduced_is_square_mod(F.n, reduce_form(F, pp), pp);
}

ConditionReport condition_report(const BinaryForm& F, const Int& p) {
    require(F.lead() != 0 && valuation(F.lead(), p) % 2 == 1, "condition: p must divide the squarefree part of |f0|");
    ConditionReport r;
    r.p = p;
    r.cond_a = !p_maximal(F, p);
    r.cond_b = !r.cond_a && reduced_is_square(F, p);
    return r;
}

bool condition_b(const BinaryForm& F, const Int& p) { return condition_report(F, p).cond_b; }

bool vanishes_on_p1(const BinaryForm& F, u64 p) {
    auto f = reduce_form(F, p);
    if (f[0] != 0) return false;
    std::vector<u64> c(f.rbegin(), f.rend());
    ModPoly g(p, c);
    for (u64 x = 0; x < p; ++x)
        if (g.eval(x) != 0) return false;
    return true;
}

Int squarefree_part(const Int& a) {
    require(a != 0, "squarefree_part: zero");
    Int r = 1;
    for (auto& q : squarefree_primes(a)) r *= q;
    return r;
}

EverywhereReport everywhere_local(const BinaryForm& F, u64 prime_budget) {
    require(F.lead() != 0, "everywhere_local: f0 must be nonzero");
    require(disc(F) != 0, "everywhere_local: F must be separable");
    EverywhereReport rep;
    rep.real = real_soluble(F);
    int N = F.degree();
    u64 bound = std::max<u64>(prime_budget, 4ULL * N * N);
    rep.checked_bound = Int(static_cast<unsigned long>(bound));
    std::set<Int> primes;
    for (u64 p : primes_up_to(bound)) primes.insert(Int(static_cast<unsigned long>(p)));
    for (auto& [q, e] : factor_trial(2 * F.lead())) primes.insert(q);
    Int cont = 0;
    for (auto& c : F.f) cont = gcd(cont, c);
    if (cont > 1)
        for (auto& [q, e] : factor_trial(cont)) primes.insert(q);
    for (const Int& p : primes) {
        LocalReport lr = zp_soluble(F, p);
        if (!lr.soluble) {
            rep.failing.push_back(p);
            rep.soluble = false;
        }
        rep.checked.push_back(std::move(lr));
    }
    for (auto& q : squarefree_primes(F.lead()))
        if (q.fits_ulong_p() && vanishes_on_p1(F, q.get_ui())) rep.vanish_flags.push_back(q);
    rep.asserted_rule =
        "p > 2n+1 not dividing the content: F mod p is nonzero at some point of P^1(F_p), a unit value, "
        "and a unit twist of that point gives a square";
    return rep;
}

}  // namespace superell

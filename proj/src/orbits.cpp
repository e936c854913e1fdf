#include "superell/orbits.hpp"

#include "superell/errors.hpp"
#include "superell/modpoly.hpp"
#include "superell/sturm.hpp"

#include <algorithm>
#include <sstream>

namespace superell {

std::string PrimitiveSolution::str() const { return x0.get_str() + "," + c.get_str() + "," + z0.get_str(); }

void check_solution(const BinaryForm& F, const PrimitiveSolution& s) {
    Int g;
    mpz_gcd(g.get_mpz_t(), s.x0.get_mpz_t(), s.z0.get_mpz_t());
    require(g == 1, "solution is not primitive: gcd(x0, z0) != 1");
    require(s.c * s.c == F.eval(s.x0, s.z0), "c^2 != F(x0, z0)");
}

std::string to_string(Tristate t) {
    switch (t) {
        case Tristate::yes: return "yes";
        case Tristate::no: return "no";
        default: return "undetermined";
    }
}

bool VerificationReport::all_pass() const {
    for (const auto& i : items)
        if (!i.pass) return false;
    return true;
}

const CheckItem* VerificationReport::find(const std::string& name) const {
    for (const auto& i : items)
        if (i.name == name) return &i;
    return nullptr;
}

namespace {

struct Gamma {
    Int b, d;
};

Gamma gamma_for(const PrimitiveSolution& s, const Int& K) {
    Int b0, d0;
    Int g = xgcd(s.x0, s.z0, b0, d0);
    ensure(g == 1, "gamma: x0, z0 not coprime");
    return {b0 + K * s.z0, d0 - K * s.x0};
}

// F~'(x,1) where F' = x F~'(x,z); F' has f'_{2n+1} = 0
IntPoly deflate_by_x(const BinaryForm& Fp) {
    int N = Fp.degree();
    ensure(Fp.f[N] == 0, "deflate: F' does not vanish at x = 0");
    std::vector<Int> c;
    for (int i = N - 1; i >= 0; --i) c.push_back(Fp.f[i]);
    return IntPoly(c);
}

IntPoly pi_poly(const BinaryForm& F, int i) {
    // p_i(t) = sum_{j<i} f_j t^{i-j}
    std::vector<Int> c(i + 1, Int(0));
    for (int j = 0; j < i; ++j) c[i - j] = F.f[j];
    return IntPoly(c);
}

std::vector<Int> neg(std::vector<Int> v) {
    for (auto& x : v) x = -x;
    return v;
}

Int to_int_checked(const Rat& r, const std::string& what) {
    ensure(r.get_den() == 1, what + ": non-integral entry");
    return r.get_num();
}

}  // namespace

bool admissible_K(const BinaryForm& F, const PrimitiveSolution& s, const Int& K) {
    auto g = gamma_for(s, K);
    return F.eval(g.d, Int(-g.b)) != 0;
}

MatrixPair gram_pair(const std::vector<AlgNum>& basis, const AlgNum& delta) {
    std::size_t N = basis.size();
    AlgNum dinv = delta.inverse();
    MatrixPair p{IntMat(N, N), IntMat(N, N)};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i; j < N; ++j) {
            auto pr = pi_functionals(basis[i] * basis[j] * dinv);
            p.A(i, j) = p.A(j, i) = to_int_checked(pr.second, "gram matrix A");
            p.B(i, j) = p.B(j, i) = to_int_checked(pr.first, "gram matrix B");
        }
    return p;
}

std::pair<int, int> signature(const IntMat& A) {
    require(A.is_symmetric(), "signature: matrix is not symmetric");
    require(det(A) != 0, "signature: matrix is singular");
    IntPoly cp = char_poly(A);
    int pos = 0;
    for (const auto& [g, k] : squarefree_decomposition(cp)) pos += k * sturm_count(g, Rat(0), std::nullopt);
    return {pos, static_cast<int>(A.rows()) - pos};
}

OrbitCertificate construct_orbit(const BinaryForm& F, const PrimitiveSolution& s, const OrbitOptions& opt) {
    require(F.lead() != 0, "construct_orbit: f0 must be nonzero");
    require(disc(F) != 0, "construct_orbit: form is not separable");
    check_solution(F, s);
    int n = F.n, N = F.degree();

    OrbitCertificate cert;
    cert.form = F;
    cert.solution = s;
    if (opt.K) {
        require(admissible_K(F, s, Int(*opt.K)), "construct_orbit: K is not admissible");
        cert.K_used = *opt.K;
    } else {
        bool found = false;
        for (long t = 0; t <= 2 * N + 2 && !found; ++t) {
            long K = (t % 2) ? (t + 1) / 2 : -(t / 2);
            if (admissible_K(F, s, Int(K))) {
                cert.K_used = K;
                found = true;
            }
        }
        ensure(found, "construct_orbit: no admissible K within the search bound");
    }
    auto gb = gamma_for(s, cert.K_used);
    const Int &b = gb.b, &d = gb.d;
    cert.gamma = Unimodular2(s.z0, b, -s.x0, d);
    Unimodular2 ginv(d, -b, s.x0, s.z0);
    ensure(ginv * cert.gamma == Unimodular2(), "construct_orbit: gamma inverse");
    BinaryForm Fp = sl2_act(ginv, F);
    cert.transformed = Fp;
    ensure(Fp.f[N] == s.c * s.c, "construct_orbit: f'_{2n+1} != c^2");

    auto ctx = FormContext::build(F);
    AlgNum th = AlgNum::theta(ctx);
    AlgNum one = AlgNum::rational(ctx, 1);
    AlgNum u = Rat(d) * one + Rat(b) * th;
    AlgNum tp = (Rat(s.z0) * th - Rat(s.x0) * one) * u.inverse();
    ensure(AlgNum::eval(Fp.dehomogenize_x(), tp).is_zero(), "construct_orbit: theta' is not a root of F'");

    bool weier = s.c == 0;
    Int xi = weier ? Fp.f[N - 1] : s.c;
    ensure(xi != 0, "construct_orbit: xi vanishes");
    AlgNum dp = weier ? AlgNum::eval(deflate_by_x(Fp), tp) - tp : -tp;

    std::vector<AlgNum> Ip;
    Ip.push_back(Rat(xi) * one);
    AlgNum pw = tp;
    for (int i = 1; i <= n; ++i) {
        Ip.push_back(pw);
        pw = pw * tp;
    }
    for (int i = n + 1; i <= 2 * n; ++i) Ip.push_back(zeta_for(Fp, tp, i));

    AlgNum un = u.pow(n);
    std::vector<AlgNum> Ib;
    for (const auto& e : Ip) Ib.push_back(un * e);
    cert.ideal_I = FracIdeal::from_basis(Ib);
    cert.delta = dp * u;

    auto gram = gram_pair(cert.ideal_I.canonical().basis_elements(), cert.delta);
    auto pencil = det_linear_pencil(gram.A, gram.B);
    auto fm = monicize(F).f;
    if (pencil == fm) {
        cert.det_sign = 1;
    } else {
        ensure(pencil == neg(fm), "construct_orbit: det(xA+zB) != +-F_mon");
        cert.det_sign = -1;
        gram.A = Int(-1) * gram.A;
        gram.B = Int(-1) * gram.B;
    }
    cert.pair = gram;

    if (opt.test_distinguished) cert.distinguished = is_distinguished(F, cert.delta, opt.lift_bits_cap);

    auto rep = verify_certificate(cert);
    for (const auto& item : rep.items) ensure(item.pass, "construct_orbit: self-check failed: " + item.name + " " + item.detail);
    return cert;
}

VerificationReport verify_certificate(const OrbitCertificate& cert) {
    VerificationReport r;
    auto add = [&](const std::string& name, bool pass, const std::string& detail = "") { r.items.push_back({name, pass, detail}); };
    const auto& F = cert.form;
    int n = F.n;
    const auto& A = cert.pair.A;
    const auto& B = cert.pair.B;
    std::size_t N = F.degree();

    add("solution", F.eval(cert.solution.x0, cert.solution.z0) == cert.solution.c * cert.solution.c);
    bool dims = A.rows() == N && A.cols() == N && B.rows() == N && B.cols() == N;
    add("dimensions", dims);
    if (!dims) return r;
    add("symmetric", A.is_symmetric() && B.is_symmetric());

    auto pencil = det_linear_pencil(A, B);
    auto fm = monicize(F).f;
    add("determinant", pencil == fm, "det(xA+zB) coefficients vs F_mon");

    const auto& ctx = cert.delta.ctx();
    Rat nd = cert.delta.norm();
    add("delta_invertible", nd != 0);
    if (nd == 0) return r;

    Rat nI = cert.ideal_I.norm();
    add("norm_identity", nI * nI == nd * rpow(Rat(F.lead()), -(2 * n - 1)), "N(I)^2 = N(delta) f0^{-(2n-1)}");

    auto target = ideal_power(ctx, 2 * n - 1).scaled(cert.delta);
    bool contained = true;
    auto el = cert.ideal_I.basis_elements();
    for (std::size_t i = 0; i < el.size() && contained; ++i)
        for (std::size_t j = i; j < el.size() && contained; ++j) contained = target.contains(el[i] * el[j]);
    add("containment", contained, "I^2 in delta I_F^{2n-1}");

    bool gram_ok = true;
    try {
        auto g = gram_pair(cert.ideal_I.canonical().basis_elements(), cert.delta);
        gram_ok = (g.A == A && g.B == B) || (Int(-1) * g.A == A && Int(-1) * g.B == B);
    } catch (const InternalError&) {
        gram_ok = false;
    }
    add("gram_matches_ideal", gram_ok);

    bool split = false;
    std::string sig;
    if (det(A) != 0) {
        auto [p, q] = signature(A);
        split = (p == n + 1 && q == n) || (p == n && q == n + 1);
        sig = std::to_string(p) + "," + std::to_string(q);
    }
    add("split_signature", split, sig);

    // p_i(-B A^{-1} / f0) integral for i = 1..2n
    bool integral = det(A) != 0;
    if (integral) {
        RatMat T = Rat(-1) / Rat(F.lead()) * (to_rat(B) * inverse(to_rat(A)));
        for (int i = 1; i <= 2 * n && integral; ++i) {
            IntPoly p = pi_poly(F, i);
            RatMat acc(N, N);
            for (int k = p.degree(); k >= 0; --k) acc = acc * T + Rat(p[k]) * RatMat::identity(N);
            for (std::size_t a = 0; a < N && integral; ++a)
                for (std::size_t c = 0; c < N && integral; ++c) integral = acc(a, c).get_den() == 1;
        }
    }
    add("ring_condition", integral, "p_i(-B A^{-1}/f0) integral");
    return r;
}

VerificationReport verify_quotient_identities(const OrbitCertificate& cert) {
    VerificationReport r;
    const auto& s = cert.solution;
    const auto& Fp = cert.transformed;
    int n = cert.form.n, N = cert.form.degree();
    const auto& ctx = cert.delta.ctx();
    AlgNum one = AlgNum::rational(ctx, 1);
    AlgNum th = AlgNum::theta(ctx);
    AlgNum u = Rat(cert.gamma.d) * one + Rat(cert.gamma.b) * th;
    AlgNum tp = (Rat(s.z0) * th - Rat(s.x0) * one) * u.inverse();
    AlgNum dp = cert.delta * u.inverse();
    AlgNum dinv = dp.inverse();
    bool weier = s.c == 0;
    Int xi = weier ? Fp.f[N - 1] : s.c;
    auto z = [&](int i) { return zeta_for(Fp, tp, i); };
    auto f = [&](int i) { return Rat(Fp.f[i]); };
    auto Ipp = FracIdeal::from_basis(ideal_power_basis_for(Fp, tp, 2 * n - 1));
    auto add = [&](const std::string& name, const AlgNum& lhs, const AlgNum& rhs) {
        r.items.push_back({name, lhs == rhs && Ipp.contains(lhs), ""});
    };

    AlgNum xi2 = Rat(xi * xi) * dinv;
    AlgNum w = f(2 * n) * one;
    if (!weier) {
        add("xi^2/delta'", xi2, z(2 * n) + w);
        for (int i = 1; i <= n; ++i) add("xi*theta'^" + std::to_string(i) + "/delta'", Rat(xi) * tp.pow(i) * dinv, Rat(-xi) * tp.pow(i - 1));
        for (int j = n + 1; j <= 2 * n; ++j)
            add("xi*zeta'_" + std::to_string(j) + "/delta'", Rat(xi) * z(j) * dinv, Rat(-xi) * z(j - 1) - Rat(xi) * f(j - 1) * one);
    } else {
        AlgNum sum = AlgNum::rational(ctx, 0);
        for (int l = 0; l <= 2 * n - 1; ++l) sum = sum + f(2 * n - 1 - l) * tp.pow(l);
        add("xi^2/delta'", xi2, (Rat(1) - f(2 * n - 1)) * (z(2 * n) + w) + f(2 * n) * sum);
        add("xi*theta'/delta'", Rat(xi) * tp * dinv, z(2 * n));
        for (int i = 2; i <= n; ++i) add("xi*theta'^" + std::to_string(i) + "/delta'", Rat(xi) * tp.pow(i) * dinv, Rat(-xi) * tp.pow(i - 1));
        for (int j = n + 1; j <= 2 * n; ++j)
            add("xi*zeta'_" + std::to_string(j) + "/delta'", Rat(xi) * z(j) * dinv, Rat(-xi) * z(j - 1) + f(j - 1) * z(2 * n));
    }
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            add("theta'^" + std::to_string(i) + "*theta'^" + std::to_string(j) + "/delta'", tp.pow(i + j) * dinv, -tp.pow(i + j - 1));
    for (int i = 1; i <= n - 1; ++i)
        for (int j = n + 1; j <= 2 * n; ++j)
            add("theta'^" + std::to_string(i) + "*zeta'_" + std::to_string(j) + "/delta'", tp.pow(i) * z(j) * dinv, -tp.pow(i - 1) * z(j));
    for (int i = n + 1; i <= 2 * n; ++i)
        for (int j = i; j <= 2 * n; ++j)
            add("zeta'_" + std::to_string(i) + "*zeta'_" + std::to_string(j) + "/delta'", z(i) * z(j) * dinv, -z(i) * z(j - 1) - f(j - 1) * z(i));
    return r;
}

bool welldefinedness_check(const BinaryForm& F, const PrimitiveSolution& s, long K1, long K2) {
    require(admissible_K(F, s, Int(K1)) && admissible_K(F, s, Int(K2)), "welldefinedness_check: K not admissible");
    OrbitOptions o1, o2;
    o1.K = K1;
    o2.K = K2;
    o1.test_distinguished = o2.test_distinguished = false;
    auto c1 = construct_orbit(F, s, o1), c2 = construct_orbit(F, s, o2);
    return c1.ideal_I == c2.ideal_I && c1.delta == c2.delta;
}

// ---------------------------------------------------------------------------
// Squares in K_F

namespace {

using IntVec = std::vector<Int>;

Int mod_sym_or_pos(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

// a*b mod (g, m) for g monic of degree N, coordinates low-to-high
IntVec mul_mod(const IntVec& a, const IntVec& b, const IntVec& g, const Int& m) {
    std::size_t N = g.size() - 1;
    IntVec c(2 * N - 1, Int(0));
    for (std::size_t i = 0; i < N; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < N; ++j) c[i + j] += a[i] * b[j];
    }
    for (std::size_t k = 2 * N - 2; k >= N; --k) {
        c[k] %= m;
        if (c[k] != 0)
            for (std::size_t t = 0; t < N; ++t) c[k - N + t] -= c[k] * g[t];
    }
    c.resize(N);
    for (auto& v : c) v = mod_sym_or_pos(v, m);
    return c;
}

IntVec from_modpoly(const ModPoly& p, std::size_t N) {
    IntVec v(N, Int(0));
    for (std::size_t i = 0; i < N; ++i) v[i] = Int(static_cast<unsigned long>(p[i]));
    return v;
}

ModPoly to_modpoly(const IntVec& v, std::uint64_t p) {
    std::vector<std::uint64_t> c(v.size());
    Int P(static_cast<unsigned long>(p));
    for (std::size_t i = 0; i < v.size(); ++i) c[i] = mod_sym_or_pos(v[i], P).get_ui();
    return ModPoly(p, c);
}

// Square root in F_p[x]/(h), h irreducible; none if a is a non-residue.
std::optional<ModPoly> sqrt_in_field(const ModPoly& a0, const ModPoly& h) {
    std::uint64_t p = h.modulus();
    ModPoly a = a0 % h;
    if (a.is_zero()) return a;
    Int q = ipow(Int(static_cast<unsigned long>(p)), h.degree());
    if (!powmod(a, (q - 1) / 2, h).is_one()) return std::nullopt;
    Int t = q - 1;
    int sexp = 0;
    while (t % 2 == 0) {
        t /= 2;
        ++sexp;
    }
    // non-residue by enumeration of small elements
    ModPoly zn;
    for (std::uint64_t k = 1;; ++k) {
        std::vector<std::uint64_t> c;
        std::uint64_t v = k;
        while (v) {
            c.push_back(v % p);
            v /= p;
        }
        ModPoly cand = ModPoly(p, c) % h;
        if (cand.is_zero()) continue;
        if (!powmod(cand, (q - 1) / 2, h).is_one()) {
            zn = cand;
            break;
        }
    }
    int M = sexp;
    ModPoly c = powmod(zn, t, h), T = powmod(a, t, h), R = powmod(a, (t + 1) / 2, h);
    while (!T.is_one()) {
        int i = 0;
        ModPoly tt = T;
        while (!tt.is_one()) {
            tt = (tt * tt) % h;
            ++i;
        }
        ModPoly bb = c;
        for (int k = 0; k < M - i - 1; ++k) bb = (bb * bb) % h;
        R = (R * bb) % h;
        c = (bb * bb) % h;
        T = (T * c) % h;
        M = i;
    }
    return R;
}

struct GoodPrime {
    std::uint64_t p;
    std::vector<ModPoly> factors;
};

}  // namespace

DistinguishedResult is_distinguished(const BinaryForm& F, const AlgNum& delta, int lift_bits_cap) {
    const auto& ctx = delta.ctx();
    require(ctx && ctx->form() == F, "is_distinguished: delta belongs to another form");
    AlgNum beta = Rat(F.lead()) * delta;
    Rat nb = beta.norm();
    require(nb != 0, "is_distinguished: f0*delta is a zero divisor");
    int N = F.degree();
    DistinguishedResult res;

    Rat q;
    if (beta.is_rational(&q)) {
        Rat root;
        if (is_square(q, &root)) {
            res.status = Tristate::yes;
            res.root = AlgNum::rational(ctx, root);
            res.reason = "rational square";
            return res;
        }
    }

    // integral model: beta' = Delta^2 D^2 beta has integral omega-coordinates,
    // and any square root of it has integral coordinates too
    IntPoly gpoly = ctx->monic_form().dehomogenize_x();
    IntVec g(gpoly.coeffs().begin(), gpoly.coeffs().end());
    Int Delta = abs(poly_disc(gpoly));
    Int D = 1;
    for (const auto& c : beta.coords()) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), c.get_den_mpz_t());
    Int scale = Delta * D;
    IntVec bp(N);
    for (int i = 0; i < N; ++i) {
        Rat v = beta.coords()[i] * Rat(scale * scale);
        bp[i] = v.get_num();
    }

    std::string screen;
    if (!is_square(nb)) screen = "norm of f0*delta is not a rational square";
    else if (beta.is_rational()) screen = "rational non-square in an odd-degree algebra";

    std::vector<GoodPrime> good;
    int tried = 0;
    for (std::uint64_t p = 3; tried < 50; p += 2) {
        if (!is_prime(p)) continue;
        Int P(static_cast<unsigned long>(p));
        if (Delta % P == 0 || D % P == 0) continue;
        ++tried;
        auto gm = ModPoly::from_int(p, gpoly);
        auto fac = factor_mod_p(gm);
        GoodPrime gp{p, {}};
        ModPoly bm = to_modpoly(bp, p);
        bool usable = true;
        for (const auto& [h, e] : fac.factors) {
            ensure(e == 1, "is_distinguished: repeated factor at a good prime");
            ModPoly r = bm % h;
            if (r.is_zero()) {
                usable = false;
                continue;
            }
            Int qq = ipow(P, h.degree());
            if (!powmod(r, (qq - 1) / 2, h).is_one()) {
                res.status = Tristate::no;
                res.prime = p;
                res.reason = "non-square in a residue field of degree " + std::to_string(h.degree());
                return res;
            }
            gp.factors.push_back(h);
        }
        if (usable) good.push_back(gp);
    }
    if (!screen.empty()) {
        res.status = Tristate::no;
        res.reason = screen;
        return res;
    }

    // lift a square root at the good prime with the fewest residue fields
    if (!good.empty()) {
        auto best = std::min_element(good.begin(), good.end(), [](const GoodPrime& a, const GoodPrime& b) { return a.factors.size() < b.factors.size(); });
        std::uint64_t p = best->p;
        const auto& hs = best->factors;
        std::size_t r = hs.size();
        ModPoly gm = ModPoly::from_int(p, gpoly);
        ModPoly bm = to_modpoly(bp, p);
        std::vector<ModPoly> roots, idem;
        for (const auto& h : hs) {
            auto s = sqrt_in_field(bm, h);
            ensure(s.has_value(), "is_distinguished: Euler criterion inconsistent");
            roots.push_back(*s);
            ModPoly cof = gm / h;
            idem.push_back((cof * invmod(cof % h, h)) % gm);
        }
        Int P(static_cast<unsigned long>(p));
        for (std::uint64_t mask = 0; mask < (1ULL << (r - 1)); ++mask) {
            ModPoly a0(p);
            for (std::size_t i = 0; i < r; ++i) {
                ModPoly ri = (i > 0 && (mask >> (i - 1)) & 1) ? -roots[i] : roots[i];
                a0 = a0 + ri * idem[i];
            }
            a0 = a0 % gm;
            ModPoly inv0 = invmod(ModPoly::constant(p, 2) * a0 % gm, gm);
            IntVec a = from_modpoly(a0, N), w = from_modpoly(inv0, N);
            Int m = P;
            while (static_cast<int>(mpz_sizeinbase(m.get_mpz_t(), 2)) <= lift_bits_cap) {
                Int m2 = m * m;
                // refresh the inverse of 2a to precision m2, then one Newton step for a
                IntVec two_a(N);
                for (int i = 0; i < N; ++i) two_a[i] = 2 * a[i];
                for (int it = 0; it < 2; ++it) {
                    IntVec t = mul_mod(two_a, w, g, m2);
                    for (auto& v : t) v = -v;
                    t[0] += 2;
                    w = mul_mod(w, t, g, m2);
                }
                IntVec e = mul_mod(a, a, g, m2);
                for (int i = 0; i < N; ++i) e[i] -= bp[i];
                IntVec corr = mul_mod(e, w, g, m2);
                for (int i = 0; i < N; ++i) a[i] = mod_sym_or_pos(a[i] - corr[i], m2);
                m = m2;
                std::vector<Rat> cand(N);
                for (int i = 0; i < N; ++i) cand[i] = Rat(symmetric_mod(a[i], m)) / Rat(scale);
                AlgNum alpha(ctx, cand);
                if (alpha * alpha == beta) {
                    res.status = Tristate::yes;
                    res.root = alpha;
                    res.reason = "square root lifted at p = " + std::to_string(p);
                    return res;
                }
            }
        }
    }
    res.status = Tristate::undetermined;
    res.reason = "no witness among 50 good primes and no root within the lift cap";
    return res;
}

}  // namespace superell

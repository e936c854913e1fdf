#include "superell/forms.hpp"

#include "superell/errors.hpp"
#include "superell/matrix.hpp"

#include <sstream>

namespace superell {

BinaryForm::BinaryForm(int n_, std::vector<Int> coeffs) : n(n_), f(std::move(coeffs)) {
    require(n >= 1, "BinaryForm: n must be positive");
    require(f.size() == static_cast<std::size_t>(2 * n + 2), "BinaryForm: need 2n+2 coefficients");
}

Int BinaryForm::eval(const Int& x, const Int& z) const {
    // Horner in x with powers of z
    Int acc = 0, zp = 1;
    std::vector<Int> zpow(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        zpow[i] = zp;
        zp *= z;
    }
    for (std::size_t i = 0; i < f.size(); ++i) acc = acc * x + f[i] * zpow[i];
    return acc;
}

Rat BinaryForm::eval(const Rat& x, const Rat& z) const {
    Rat acc = 0, zp = 1;
    std::vector<Rat> zpow(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        zpow[i] = zp;
        zp *= z;
    }
    for (std::size_t i = 0; i < f.size(); ++i) acc = acc * x + f[i] * zpow[i];
    return acc;
}

IntPoly BinaryForm::dehomogenize_x() const {
    std::vector<Int> c(f.rbegin(), f.rend());
    return IntPoly(std::move(c));
}

IntPoly BinaryForm::dehomogenize_z() const { return IntPoly(f); }

std::string BinaryForm::encode() const {
    std::ostringstream os;
    os << n << ';';
    for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << f[i].get_str();
    return os.str();
}

BinaryForm BinaryForm::decode(const std::string& s) {
    auto semi = s.find(';');
    require(semi != std::string::npos, "form encoding must look like n;f0,f1,...");
    Int nn = parse_int(s.substr(0, semi));
    require(nn >= 1 && nn <= 64, "form encoding: n out of range");
    std::vector<Int> c;
    std::string rest = s.substr(semi + 1);
    std::size_t pos = 0;
    while (true) {
        auto comma = rest.find(',', pos);
        c.push_back(parse_int(rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    int n = static_cast<int>(nn.get_si());
    require(c.size() == static_cast<std::size_t>(2 * n + 2), "form encoding: expected 2n+2 coefficients");
    return BinaryForm(n, std::move(c));
}

std::string BinaryForm::str() const {
    std::string s;
    int N = degree();
    for (int i = 0; i <= N; ++i) {
        if (f[i] == 0) continue;
        std::string coef = Int(abs(f[i])).get_str();
        s += s.empty() ? (f[i] < 0 ? "-" : "") : (f[i] < 0 ? " - " : " + ");
        std::string mono;
        int ex = N - i, ez = i;
        if (ex) mono += "x" + (ex > 1 ? "^" + std::to_string(ex) : std::string());
        if (ez) mono += std::string(ex ? "*" : "") + "z" + (ez > 1 ? "^" + std::to_string(ez) : std::string());
        s += (coef == "1" && !mono.empty()) ? mono : coef + (mono.empty() ? "" : "*" + mono);
    }
    return s.empty() ? "0" : s;
}

Unimodular2::Unimodular2(Int a_, Int b_, Int c_, Int d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
    require(a * d - b * c == 1, "Unimodular2: determinant is not 1");
}

Unimodular2 operator*(const Unimodular2& x, const Unimodular2& y) {
    return Unimodular2(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d);
}

std::vector<Int> form_mul(const std::vector<Int>& p, const std::vector<Int>& q) {
    std::vector<Int> r(p.size() + q.size() - 1, Int(0));
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
    return r;
}

BinaryForm monicize(const BinaryForm& F) {
    require(F.lead() != 0, "monicize: zero leading coefficient");
    std::vector<Int> c(F.f.size());
    c[0] = 1;
    Int pw = 1;
    for (std::size_t i = 1; i < c.size(); ++i) {
        c[i] = F.f[i] * pw;
        pw *= F.lead();
    }
    return BinaryForm(F.n, std::move(c));
}

bool height_less_than(const BinaryForm& F, const Int& X) {
    require(F.lead() != 0, "height: zero leading coefficient");
    unsigned long k = 2UL * F.n * (2 * F.n + 1);
    Int pw = 1;
    for (int i = 1; i <= F.degree(); ++i) {
        Int t = abs(pw * F.f[i]);
        if (ipow(t, k) >= ipow(X, static_cast<unsigned long>(i))) return false;
        pw *= F.lead();
    }
    return true;
}

BinaryForm sl2_act(const Unimodular2& g, const BinaryForm& F) {
    int N = F.degree();
    std::vector<Int> l1{g.a, g.c}, l2{g.b, g.d};
    std::vector<std::vector<Int>> p1(N + 1), p2(N + 1);
    p1[0] = p2[0] = {Int(1)};
    for (int k = 1; k <= N; ++k) {
        p1[k] = form_mul(p1[k - 1], l1);
        p2[k] = form_mul(p2[k - 1], l2);
    }
    std::vector<Int> out(N + 1, Int(0));
    for (int i = 0; i <= N; ++i) {
        if (F.f[i] == 0) continue;
        auto t = form_mul(p1[N - i], p2[i]);
        for (int j = 0; j <= N; ++j) out[j] += F.f[i] * t[j];
    }
    return BinaryForm(F.n, std::move(out));
}

Int resultant(const IntPoly& f, const IntPoly& g) {
    require(!f.is_zero() && !g.is_zero(), "resultant of zero polynomial");
    int m = f.degree(), n = g.degree();
    if (m == 0) return ipow(f.lead(), static_cast<unsigned long>(n));
    if (n == 0) return ipow(g.lead(), static_cast<unsigned long>(m));
    int s = m + n;
    IntMat S(s, s);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) S(r, r + k) = f[m - k];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) S(n + r, r + k) = g[n - k];
    return det(S);
}

Int poly_disc(const IntPoly& f) {
    int N = f.degree();
    require(N >= 1, "poly_disc: degree must be positive");
    if (N == 1) return 1;
    Int r = resultant(f, f.derivative());
    Int d = r / f.lead();
    ensure(d * f.lead() == r, "poly_disc: inexact division");
    if ((static_cast<long>(N) * (N - 1) / 2) % 2) d = -d;
    return d;
}

Int disc(const BinaryForm& F) {
    bool zero = true;
    for (const auto& c : F.f) zero = zero && c == 0;
    if (zero) return 0;
    if (F.lead() != 0) return poly_disc(F.dehomogenize_x());
    for (long k = 1;; ++k) {
        BinaryForm G = sl2_act(Unimodular2(1, k, 0, 1), F);
        if (G.lead() != 0) return poly_disc(G.dehomogenize_x());
    }
}

FormBox::FormBox(int n, const Int& f0, const Int& X) : n_(n), f0_(f0), X_(X) {
    require(n >= 1, "FormBox: n must be positive");
    require(f0 != 0, "FormBox: f0 must be nonzero");
    require(X >= 1, "FormBox: X must be at least 1");
    unsigned long k = 2UL * n * (2 * n + 1);
    size_ = 1;
    Int pw = 1;
    for (int i = 1; i <= 2 * n + 1; ++i) {
        Int m = max_power_below(ipow(X, static_cast<unsigned long>(i)), k);
        bounds_.push_back(m / pw);  // |f0^{i-1} f_i| <= m
        size_ *= 2 * bounds_.back() + 1;
        pw *= abs(f0);
    }
}

BinaryForm FormBox::at(const Int& index) const {
    require(index >= 0 && index < size_, "FormBox: index out of range");
    std::vector<Int> c(2 * n_ + 2);
    c[0] = f0_;
    Int rem = index;
    for (int i = 2 * n_ + 1; i >= 1; --i) {
        Int radix = 2 * bounds_[i - 1] + 1;
        Int digit = rem % radix;
        rem /= radix;
        c[i] = digit - bounds_[i - 1];
    }
    return BinaryForm(n_, std::move(c));
}

void FormBox::for_each(std::uint64_t shard, std::uint64_t shards,
                       const std::function<void(const Int&, const BinaryForm&)>& fn) const {
    require(shards >= 1 && shard < shards, "FormBox: bad shard");
    for (Int i = shard; i < size_; i += shards) fn(i, at(i));
}

std::vector<BinaryForm> FormBox::all() const {
    std::vector<BinaryForm> out;
    for_each(0, 1, [&](const Int&, const BinaryForm& F) { out.push_back(F); });
    return out;
}

}  // namespace superell

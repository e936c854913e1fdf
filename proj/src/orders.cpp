#include "superell/orders.hpp"

#include "superell/errors.hpp"

namespace superell {

namespace {

Int lcm_denominators(const RatMat& m) {
    Int l = 1;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    return l;
}

void same_ctx(const Context& a, const Context& b) {
    require(a && b, "uninitialised algebraic object");
    require(a == b || a->form() == b->form(), "context mismatch");
}

}  // namespace

MultTable nakagawa_table(const BinaryForm& F) {
    int N = F.degree();
    const auto& f = F.f;
    // zeta_k as a vector over zeta_0..zeta_{N-1}; zeta_N = -f_N
    auto add_zeta = [&](std::vector<Int>& v, int k, const Int& coef) {
        if (k == N)
            v[0] -= coef * f[N];
        else
            v[k] += coef;
    };
    MultTable t(N, std::vector<std::vector<Int>>(N, std::vector<Int>(N, Int(0))));
    for (int j = 0; j < N; ++j) {
        t[0][j][j] = 1;
        t[j][0][j] = 1;
    }
    for (int i = 1; i < N; ++i)
        for (int j = i; j < N; ++j) {
            std::vector<Int> v(N, Int(0));
            for (int k = j + 1; k <= std::min(i + j, N); ++k) add_zeta(v, k, f[i + j - k]);
            for (int k = std::max(i + j - N, 1); k <= i; ++k) add_zeta(v, k, -f[i + j - k]);
            t[i][j] = v;
            t[j][i] = v;
        }
    return t;
}

FormContext::FormContext(const BinaryForm& F) : F_(F), Fmon_(monicize(F)) {
    require(F.lead() != 0, "orders: leading coefficient must be nonzero");
    disc_ = superell::disc(F);
    require(disc_ != 0, "orders: form is not separable");
    int N = dim();
    g_.assign(N + 1, Int(0));
    for (int k = 0; k <= N; ++k) g_[k] = Fmon_.f[N - k];

    // zeta_i = sum_{j<i} f_j theta^{i-j}, theta = omega / f0
    zeta_ = RatMat(N, N);
    for (int i = 0; i < N; ++i) {
        if (i == 0) {
            zeta_(0, 0) = 1;
            continue;
        }
        for (int k = 1; k <= i; ++k) zeta_(i, k) = Rat(F.f[i - k]) / Rat(ipow(F.lead(), k));
    }
    zeta_inv_ = inverse(zeta_);

    table_ = nakagawa_table(F);
    // cross-check the closed-form table against direct multiplication
    for (int i = 0; i < N; ++i)
        for (int j = i; j < N; ++j) {
            auto prod = mul(zeta_.row(i), zeta_.row(j));
            ensure(vec_mul(prod, zeta_inv_) == std::vector<Rat>(table_[i][j].begin(), table_[i][j].end()),
                   "orders: multiplication table disagrees with direct product");
        }

    RatMat P(N, N);
    Rat th = Rat(1) / Rat(F.lead());
    for (int i = 0; i < N - 1; ++i) P(i, i) = rpow(th, i);
    P.set_row(N - 1, zeta_.row(N - 1));
    pi_inv_ = inverse(P);
}

std::shared_ptr<const FormContext> FormContext::build(const BinaryForm& F) {
    return std::shared_ptr<const FormContext>(new FormContext(F));
}

std::vector<Rat> FormContext::mul(const std::vector<Rat>& a, const std::vector<Rat>& b) const {
    int N = dim();
    std::vector<Rat> c(2 * N - 1, Rat(0));
    for (int i = 0; i < N; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < N; ++j)
            if (b[j] != 0) c[i + j] += a[i] * b[j];
    }
    for (int d = 2 * N - 2; d >= N; --d) {
        if (c[d] == 0) continue;
        for (int m = 0; m < N; ++m)
            if (g_[m] != 0) c[d - N + m] -= c[d] * g_[m];
        c[d] = 0;
    }
    c.resize(N);
    return c;
}

AlgNum::AlgNum(Context ctx, std::vector<Rat> coords) : ctx_(std::move(ctx)), c_(std::move(coords)) {
    require(ctx_ != nullptr, "AlgNum: missing context");
    require(c_.size() == static_cast<std::size_t>(ctx_->dim()), "AlgNum: wrong coordinate count");
}

AlgNum AlgNum::rational(Context ctx, const Rat& a) {
    std::vector<Rat> c(ctx->dim(), Rat(0));
    c[0] = a;
    return AlgNum(std::move(ctx), std::move(c));
}

AlgNum AlgNum::theta(Context ctx) {
    std::vector<Rat> c(ctx->dim(), Rat(0));
    c[1] = Rat(1) / Rat(ctx->form().lead());
    return AlgNum(std::move(ctx), std::move(c));
}

AlgNum AlgNum::zeta(Context ctx, int i) {
    require(i >= 0 && i <= ctx->dim(), "zeta index out of range");
    if (i == ctx->dim()) return rational(ctx, Rat(-ctx->form().f[i]));
    auto row = ctx->zeta_basis().row(i);
    return AlgNum(std::move(ctx), std::move(row));
}

AlgNum AlgNum::eval(const IntPoly& p, const AlgNum& alpha) {
    AlgNum acc = rational(alpha.ctx(), Rat(0));
    for (int k = p.degree(); k >= 0; --k) acc = acc * alpha + rational(alpha.ctx(), Rat(p[k]));
    return acc;
}

std::vector<Rat> AlgNum::zeta_coords() const { return vec_mul(c_, ctx_->zeta_basis_inverse()); }

bool AlgNum::is_zero() const {
    for (const auto& v : c_)
        if (v != 0) return false;
    return true;
}

bool AlgNum::is_rational(Rat* value) const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    if (value) *value = c_[0];
    return true;
}

RatMat AlgNum::mult_matrix() const {
    int N = ctx_->dim();
    RatMat m(N, N);
    std::vector<Rat> e(N, Rat(0));
    for (int k = 0; k < N; ++k) {
        e.assign(N, Rat(0));
        e[k] = 1;
        m.set_row(k, ctx_->mul(e, c_));
    }
    return m;
}

Rat AlgNum::norm() const { return det(mult_matrix()); }

Rat AlgNum::trace() const {
    RatMat m = mult_matrix();
    Rat t = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

AlgNum AlgNum::inverse() const {
    RatMat m = mult_matrix();
    require(det(m) != 0, "AlgNum: element is not invertible");
    std::vector<Rat> one(c_.size(), Rat(0));
    one[0] = 1;
    // x * m = 1 in coordinates, since row k of m is omega^k * this
    return AlgNum(ctx_, solve_left(m, one));
}

AlgNum AlgNum::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    AlgNum result = rational(ctx_, Rat(1)), base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

AlgNum operator+(const AlgNum& a, const AlgNum& b) {
    same_ctx(a.ctx_, b.ctx_);
    auto c = a.c_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
    return AlgNum(a.ctx_, std::move(c));
}

AlgNum operator-(const AlgNum& a, const AlgNum& b) {
    same_ctx(a.ctx_, b.ctx_);
    auto c = a.c_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.c_[i];
    return AlgNum(a.ctx_, std::move(c));
}

AlgNum operator-(const AlgNum& a) { return Rat(-1) * a; }

AlgNum operator*(const AlgNum& a, const AlgNum& b) {
    same_ctx(a.ctx_, b.ctx_);
    return AlgNum(a.ctx_, a.ctx_->mul(a.c_, b.c_));
}

AlgNum operator*(const Rat& s, const AlgNum& a) {
    auto c = a.c_;
    for (auto& v : c) v *= s;
    return AlgNum(a.ctx_, std::move(c));
}

bool operator==(const AlgNum& a, const AlgNum& b) {
    same_ctx(a.ctx_, b.ctx_);
    return a.c_ == b.c_;
}

Rat norm_elt(const AlgNum& k) {
    Rat n = k.norm();
    require(n != 0, "norm_elt: element is not invertible");
    return n;
}

FracIdeal FracIdeal::from_basis(const std::vector<AlgNum>& basis) {
    require(!basis.empty(), "FracIdeal: empty basis");
    FracIdeal I;
    I.ctx_ = basis[0].ctx();
    int N = I.ctx_->dim();
    require(basis.size() == static_cast<std::size_t>(N), "FracIdeal: basis must have dim elements");
    I.basis_ = RatMat(N, N);
    for (int i = 0; i < N; ++i) {
        same_ctx(I.ctx_, basis[i].ctx());
        I.basis_.set_row(i, basis[i].coords());
    }
    require(det(I.basis_) != 0, "FracIdeal: basis is singular");
    I.canonicalize();
    return I;
}

FracIdeal FracIdeal::from_generators(const Context& ctx, const std::vector<AlgNum>& gens) {
    int N = ctx->dim();
    RatMat z(gens.size(), N);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        same_ctx(ctx, gens[i].ctx());
        z.set_row(i, gens[i].zeta_coords());
    }
    Int D = lcm_denominators(z);
    IntMat m(z.rows(), z.cols());
    for (std::size_t i = 0; i < z.rows(); ++i)
        for (std::size_t j = 0; j < z.cols(); ++j) {
            Rat v = z(i, j) * D;
            m(i, j) = v.get_num();
        }
    IntMat h = hnf(m);
    require(h.rows() == static_cast<std::size_t>(N), "FracIdeal: generators do not span a full lattice");
    RatMat zb(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) zb(i, j) = Rat(h(i, j)) / Rat(D);
    FracIdeal I;
    I.ctx_ = ctx;
    I.basis_ = zb * ctx->zeta_basis();
    I.canonicalize();
    return I;
}

void FracIdeal::canonicalize() {
    RatMat z = basis_ * ctx_->zeta_basis_inverse();
    Int D = lcm_denominators(z);
    IntMat m(z.rows(), z.cols());
    for (std::size_t i = 0; i < z.rows(); ++i)
        for (std::size_t j = 0; j < z.cols(); ++j) {
            Rat v = z(i, j) * D;
            m(i, j) = v.get_num();
        }
    hnf_ = hnf(m);
    Int g = D;
    for (std::size_t i = 0; i < hnf_.rows(); ++i)
        for (std::size_t j = 0; j < hnf_.cols(); ++j) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), hnf_(i, j).get_mpz_t());
    den_ = D / g;
    for (std::size_t i = 0; i < hnf_.rows(); ++i)
        for (std::size_t j = 0; j < hnf_.cols(); ++j) hnf_(i, j) /= g;
}

std::vector<AlgNum> FracIdeal::basis_elements() const {
    std::vector<AlgNum> out;
    for (std::size_t i = 0; i < basis_.rows(); ++i) out.emplace_back(ctx_, basis_.row(i));
    return out;
}

FracIdeal FracIdeal::canonical() const {
    FracIdeal I = *this;
    int N = ctx_->dim();
    RatMat zb(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) zb(i, j) = Rat(hnf_(i, j)) / Rat(den_);
    I.basis_ = zb * ctx_->zeta_basis();
    return I;
}

Rat FracIdeal::norm() const { return det(basis_ * ctx_->zeta_basis_inverse()); }

bool FracIdeal::contains(const AlgNum& a) const {
    same_ctx(ctx_, a.ctx());
    auto x = solve_left(basis_, a.coords());
    for (const auto& v : x)
        if (v.get_den() != 1) return false;
    return true;
}

bool FracIdeal::contains(const FracIdeal& other) const {
    for (const auto& b : other.basis_elements())
        if (!contains(b)) return false;
    return true;
}

bool FracIdeal::is_rf_module() const {
    int N = ctx_->dim();
    auto elems = basis_elements();
    for (int i = 1; i < N; ++i) {
        AlgNum z = AlgNum::zeta(ctx_, i);
        for (const auto& b : elems)
            if (!contains(z * b)) return false;
    }
    return true;
}

FracIdeal FracIdeal::scaled(const AlgNum& k) const {
    std::vector<AlgNum> b;
    for (const auto& e : basis_elements()) b.push_back(k * e);
    return from_basis(b);
}

FracIdeal operator*(const FracIdeal& a, const FracIdeal& b) {
    same_ctx(a.ctx_, b.ctx_);
    std::vector<AlgNum> gens;
    auto ea = a.basis_elements(), eb = b.basis_elements();
    for (const auto& x : ea)
        for (const auto& y : eb) gens.push_back(x * y);
    return FracIdeal::from_generators(a.ctx_, gens);
}

bool operator==(const FracIdeal& a, const FracIdeal& b) {
    same_ctx(a.ctx_, b.ctx_);
    return a.den_ == b.den_ && a.hnf_ == b.hnf_;
}

AlgNum zeta_for(const BinaryForm& G, const AlgNum& root, int i) {
    require(i >= 0 && i <= G.degree(), "zeta index out of range");
    AlgNum acc = AlgNum::rational(root.ctx(), Rat(0));
    if (i == 0) return AlgNum::rational(root.ctx(), Rat(1));
    // Horner: sum_{j<i} g_j r^{i-j}
    for (int j = 0; j < i; ++j) acc = (acc + AlgNum::rational(root.ctx(), Rat(G.f[j]))) * root;
    return acc;
}

std::vector<AlgNum> ideal_power_basis_for(const BinaryForm& G, const AlgNum& root, int j) {
    int N = G.degree();
    require(j >= 0 && j < N, "ideal power index out of range");
    std::vector<AlgNum> b;
    AlgNum p = AlgNum::rational(root.ctx(), Rat(1));
    for (int i = 0; i <= j; ++i) {
        b.push_back(p);
        p = p * root;
    }
    for (int i = j + 1; i < N; ++i) b.push_back(zeta_for(G, root, i));
    return b;
}

FracIdeal ideal_power(const Context& ctx, int j) {
    require(j >= 0 && j <= 2 * ctx->n(), "ideal_power: j out of range");
    return FracIdeal::from_basis(ideal_power_basis_for(ctx->form(), AlgNum::theta(ctx), j));
}

std::pair<Rat, Rat> pi_functionals(const AlgNum& a) {
    auto x = vec_mul(a.coords(), a.ctx()->pi_basis_inverse());
    int N = a.ctx()->dim();
    return {x[N - 2], -x[N - 1]};
}

Int order_discriminant(const Context& ctx) {
    int N = ctx->dim();
    std::vector<AlgNum> z;
    for (int i = 0; i < N; ++i) z.push_back(AlgNum::zeta(ctx, i));
    RatMat t(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = i; j < N; ++j) t(i, j) = t(j, i) = (z[i] * z[j]).trace();
    Rat d = det(t);
    ensure(d.get_den() == 1, "order_discriminant: non-integral trace form");
    return d.get_num();
}

}  // namespace superell

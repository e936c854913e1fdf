#include "superell/matrix.hpp"

#include <algorithm>

namespace superell {

RatMat to_rat(const IntMat& m) {
    RatMat r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return r;
}

std::vector<Rat> vec_mul(const std::vector<Rat>& v, const RatMat& m) {
    require(v.size() == m.rows(), "vec_mul: dimension mismatch");
    std::vector<Rat> out(m.cols(), Rat(0));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
    }
    return out;
}

Rat det(const RatMat& m0) {
    require(m0.rows() == m0.cols(), "det: non-square matrix");
    RatMat m = m0;
    std::size_t n = m.rows();
    Rat d = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m(p, k) == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
            d = -d;
        }
        d *= m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k) == 0) continue;
            Rat f = m(i, k) / m(k, k);
            for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return d;
}

Int det(const IntMat& m0) {
    require(m0.rows() == m0.cols(), "det: non-square matrix");
    std::size_t n = m0.rows();
    if (n == 0) return 1;
    IntMat m = m0;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = t;
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

RatMat inverse(const RatMat& m0) {
    require(m0.rows() == m0.cols(), "inverse: non-square matrix");
    std::size_t n = m0.rows();
    RatMat a = m0, inv = RatMat::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a(p, k) == 0) ++p;
        require(p < n, "inverse: singular matrix");
        if (p != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(p, j), a(k, j));
                std::swap(inv(p, j), inv(k, j));
            }
        Rat piv = a(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            a(k, j) /= piv;
            inv(k, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a(i, k) == 0) continue;
            Rat f = a(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

std::size_t rank(const RatMat& m0) {
    RatMat m = m0;
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
        std::size_t p = r;
        while (p < m.rows() && m(p, col) == 0) ++p;
        if (p == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (m(i, col) == 0) continue;
            Rat f = m(i, col) / m(r, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    return r;
}

std::vector<Rat> solve_left(const RatMat& m, const std::vector<Rat>& b) {
    // x m = b  <=>  m^T x^T = b^T
    RatMat t = m.transpose();
    std::size_t n = t.rows();
    require(t.cols() == n && b.size() == n, "solve_left: dimension mismatch");
    RatMat a(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = t(i, j);
        a(i, n) = b[i];
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a(p, k) == 0) ++p;
        require(p < n, "solve_left: singular matrix");
        if (p != k)
            for (std::size_t j = 0; j <= n; ++j) std::swap(a(p, j), a(k, j));
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a(i, k) == 0) continue;
            Rat f = a(i, k) / a(k, k);
            for (std::size_t j = k; j <= n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    std::vector<Rat> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = a(i, n) / a(i, i);
    return x;
}

IntMat hnf(const IntMat& m0) {
    std::size_t nr = m0.rows(), nc = m0.cols();
    std::vector<std::vector<Int>> a(nr);
    for (std::size_t i = 0; i < nr; ++i) a[i] = m0.row(i);
    std::size_t r = 0;
    for (std::size_t col = 0; col < nc && r < nr; ++col) {
        while (true) {
            std::size_t best = nr;
            for (std::size_t i = r; i < nr; ++i)
                if (a[i][col] != 0 && (best == nr || abs(a[i][col]) < abs(a[best][col]))) best = i;
            if (best == nr) break;
            std::swap(a[r], a[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < nr; ++i) {
                if (a[i][col] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(), a[r][col].get_mpz_t());
                for (std::size_t j = col; j < nc; ++j) a[i][j] -= q * a[r][j];
                if (a[i][col] != 0) done = false;
            }
            if (done) break;
        }
        if (r >= nr || a[r][col] == 0) continue;
        if (a[r][col] < 0)
            for (auto& v : a[r]) v = -v;
        for (std::size_t i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(), a[r][col].get_mpz_t());
            if (q != 0)
                for (std::size_t j = col; j < nc; ++j) a[i][j] -= q * a[r][j];
        }
        ++r;
    }
    IntMat h(r, nc);
    for (std::size_t i = 0; i < r; ++i) h.set_row(i, a[i]);
    return h;
}

std::vector<Int> det_linear_pencil(const IntMat& a, const IntMat& b) {
    require(a.rows() == a.cols() && b.rows() == b.cols() && a.rows() == b.rows(),
            "det_linear_pencil: dimension mismatch");
    std::size_t d = a.rows();
    std::vector<Rat> ts, vals;
    for (std::size_t k = 0; k <= d; ++k) {
        long t = (k % 2 == 1) ? static_cast<long>((k + 1) / 2) : -static_cast<long>(k / 2);
        IntMat m(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) m(i, j) = a(i, j) * t + b(i, j);
        ts.emplace_back(t);
        vals.emplace_back(det(m));
    }
    // Newton divided differences
    std::vector<Rat> dd = vals;
    for (std::size_t level = 1; level <= d; ++level)
        for (std::size_t k = d; k >= level; --k) {
            dd[k] = (dd[k] - dd[k - 1]) / (ts[k] - ts[k - level]);
            if (k == level) break;
        }
    // expand the Newton form into monomial coefficients
    RatPoly p;
    for (std::size_t k = d + 1; k-- > 0;) p = p * RatPoly{-ts[k], Rat(1)} + RatPoly::constant(dd[k]);
    std::vector<Int> out(d + 1);
    for (std::size_t i = 0; i <= d; ++i) {
        Rat c = p[d - i];
        ensure(c.get_den() == 1, "det_linear_pencil: non-integral interpolant");
        out[i] = c.get_num();
    }
    return out;
}

IntPoly char_poly(const IntMat& m) {
    std::size_t d = m.rows();
    IntMat neg(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) neg(i, j) = -m(i, j);
    auto c = det_linear_pencil(IntMat::identity(d), neg);
    std::vector<Int> p(d + 1);
    for (std::size_t i = 0; i <= d; ++i) p[d - i] = c[i];
    return IntPoly(std::move(p));
}

}  // namespace superell

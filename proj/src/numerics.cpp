#include "fracfix/numerics.hpp"

#include <cmath>
#include <cstdlib>

namespace fracfix {

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

double sinpi(double x) {
    const double n = std::round(x);
    const double r = x - n;  // in [-0.5, 0.5]
    const double s = std::sin(M_PI * r);
    return (std::llround(n) & 1LL) ? -s : s;
}

double gamma_fn(double x) {
    if (x <= 0.0 && std::abs(x - std::round(x)) <= 1e-14)
        throw PoleError("gamma_fn: pole at non-positive integer");
    if (x < 0.5)
        return M_PI / (sinpi(x) * gamma_fn(1.0 - x));

    // Lanczos, g = 7, 9 coefficients.
    static const double c[9] = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,     -176.61502916214059,    12.507343278686905,
        -0.13857109526572012,   9.9843695780195716e-6,  1.5056327351493116e-7};
    const double z = x - 1.0;
    double a = c[0];
    for (int i = 1; i < 9; ++i) a += c[i] / (z + i);
    const double t = z + 7.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

Complex cpow_principal(Complex z, double w) {
    if (z == 0.0) {
        if (w > 0.0) return 0.0;
        throw DomainError("cpow_principal: 0 raised to non-positive power");
    }
    if (w == 0.0) return 1.0;
    if (w == 1.0) return z;
    // Pin the branch cut: a real negative base maps to the upper side,
    // regardless of the sign of a zero imaginary part.
    if (z.imag() == 0.0) z = Complex(z.real(), 0.0);
    return std::exp(w * std::log(z));
}

Complex ipow(Complex z, long k) {
    Complex r = 1.0;
    Complex base = z;
    for (; k > 0; k >>= 1) {
        if (k & 1) r *= base;
        if (k > 1) base *= base;
    }
    return r;
}

namespace {

void require_square(const CMatrix& A, const char* who) {
    if (!A.square()) throw DomainError(std::string(who) + ": square matrix required");
}

}  // namespace

CVector lu_solve(const CMatrix& A, const CVector& b) {
    require_square(A, "lu_solve");
    const std::size_t n = A.rows();
    if (b.size() != n) throw DomainError("lu_solve: size mismatch");

    CMatrix m = A;
    CVector y = b;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(m(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(m(r, col));
            if (v > best) { best = v; piv = r; }
        }
        if (best < 1e-12) throw SingularMatrix("lu_solve: pivot below 1e-12");
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m(piv, c), m(col, c));
            std::swap(y[piv], y[col]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex f = m(r, col) / m(col, col);
            if (f == 0.0) continue;
            for (std::size_t c = col + 1; c < n; ++c) m(r, c) -= f * m(col, c);
            y[r] -= f * y[col];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        Complex s = y[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= m(i, c) * y[c];
        y[i] = s / m(i, i);
    }
    return y;
}

Complex det(const CMatrix& A) {
    require_square(A, "det");
    const std::size_t n = A.rows();
    CMatrix m = A;
    Complex d = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(m(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(m(r, col));
            if (v > best) { best = v; piv = r; }
        }
        if (best == 0.0) return 0.0;
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m(piv, c), m(col, c));
            d = -d;
        }
        d *= m(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex f = m(r, col) / m(col, col);
            if (f == 0.0) continue;
            for (std::size_t c = col + 1; c < n; ++c) m(r, c) -= f * m(col, c);
        }
    }
    return d;
}

Complex trace(const CMatrix& A) {
    require_square(A, "trace");
    Complex t = 0.0;
    for (std::size_t i = 0; i < A.rows(); ++i) t += A(i, i);
    return t;
}

double sgn(double v) {
    if (v > 0.0) return 1.0;
    if (v < 0.0) return -1.0;
    return 0.0;
}

CMatrix real_part(const CMatrix& A) {
    CMatrix r(A.rows(), A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) r(i, j) = A(i, j).real();
    return r;
}

CMatrix sign_matrix(const CMatrix& A) {
    CMatrix r(A.rows(), A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) r(i, j) = sgn(A(i, j).real());
    return r;
}

double norm2(const CVector& v) {
    double s = 0.0;
    for (const Complex& z : v) s += std::norm(z);
    return std::sqrt(s);
}

double norm_inf(const CVector& v) {
    double m = 0.0;
    for (const Complex& z : v) m = std::max(m, std::abs(z));
    return m;
}

CVector vsub(const CVector& a, const CVector& b) {
    if (a.size() != b.size()) throw DomainError("vsub: size mismatch");
    CVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

CVector matvec(const CMatrix& A, const CVector& x) {
    if (A.cols() != x.size()) throw DomainError("matvec: size mismatch");
    CVector r(A.rows(), 0.0);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < A.cols(); ++j) s += A(i, j) * x[j];
        r[i] = s;
    }
    return r;
}

}  // namespace fracfix

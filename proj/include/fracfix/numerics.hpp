#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fracfix {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

struct PoleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularMatrix : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense row-major complex matrix. Square shape is enforced by the
/// operations that need it (det, trace, solve), not by the container.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols, Complex fill = Complex(0.0, 0.0))
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static CMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ > 0 && rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    Complex operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    bool operator==(const CMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> a_;
};

/// Gamma function on the reals, Lanczos approximation (g = 7, 9 coefficients)
/// with the reflection formula for x < 0.5. Throws PoleError at
/// non-positive integers (tested within 1e-14).
double gamma_fn(double x);

/// sin(pi*x) with exact argument reduction, accurate for large |x|.
double sinpi(double x);

/// Principal-branch complex power exp(w*Log z), Im(Log) in (-pi, pi].
/// 0^w = 0 for w > 0; throws DomainError on 0 with w <= 0.
Complex cpow_principal(Complex z, double w);

/// Non-negative integer power by repeated squaring; ipow(0, 0) = 1.
Complex ipow(Complex z, long k);

/// Solves A*y = b by LU with partial pivoting on the modulus.
/// Throws SingularMatrix when a pivot modulus drops below 1e-12.
CVector lu_solve(const CMatrix& A, const CVector& b);

Complex det(const CMatrix& A);
Complex trace(const CMatrix& A);

double sgn(double v);

/// Entrywise real part.
CMatrix real_part(const CMatrix& A);

/// Entrywise sign of the real part, sgn(0) = 0. Intended for real-valued
/// matrices (imaginary parts are dropped).
CMatrix sign_matrix(const CMatrix& A);

/// Euclidean norm over moduli.
double norm2(const CVector& v);
double norm_inf(const CVector& v);

CVector vsub(const CVector& a, const CVector& b);
CVector matvec(const CMatrix& A, const CVector& x);

}  // namespace fracfix

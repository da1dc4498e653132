#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracfix/fractional.hpp"
#include "fracfix/problem.hpp"

namespace fracfix {

enum class MethodKind { QuasiNewton, PseudoNewton, FracNewtonRaphson, ClassicalNewton };

const char* to_string(MethodKind k);

struct MethodConfig {
    MethodKind kind = MethodKind::QuasiNewton;
    /// Pseudo-Newton diagonal damping.
    double epsilon = 1e-4;
    /// Gradient-norm threshold below which the Newton action replaces the
    /// fractional one. Absent means no hybrid switch.
    std::optional<double> hybrid_delta;
    /// Imaginary parts at or below 10^-rnd_digits are discarded each step.
    int rnd_digits = 5;
    /// Iterates are rounded to this many decimal places each step; the loop
    /// stops when it reaches an exact fixed point of the rounded map.
    /// Values <= 0 disable the rounding.
    int grid_digits = 8;
    int max_iter = 200;
    double tol_step = 1e-8;
    double tol_grad = 1e-4;
};

enum class IterStatus { Converged, MaxIter, Singular, Domain };

const char* to_string(IterStatus s);

struct IterationTrace {
    double alpha = 0.0;
    std::vector<CVector> iterates;     // starts with x0
    std::vector<double> step_norms;    // one per productive step
    std::vector<double> grad_norms;    // one per iterate
    IterStatus status = IterStatus::MaxIter;
    std::optional<double> p_final;

    const CVector& landing() const { return iterates.back(); }
    std::size_t iterations() const { return step_norms.size(); }
};

/// Pre-inversion fractional quasi-Newton matrix at x: entry (j,k) is the RL
/// partial of order beta_mask(alpha, x_k) of the j-th component of the local
/// affine model grad(x) + hess(x)*y, taken in y_k and evaluated at x. The
/// iteration applies its inverse action through lu_solve.
CMatrix quasi_newton_matrix(const Problem& problem, FracOrder alpha, const CVector& x);

/// Diagonal fractional pseudo-Newton matrix: x_k^-beta / Gamma(1-beta) +
/// epsilon on the diagonal (epsilon alone at zero coordinates). Applied
/// directly, without inversion.
CMatrix pseudo_newton_matrix(std::size_t dim, FracOrder alpha, double epsilon,
                             const CVector& x);

/// Pre-inversion fractional Newton-Raphson matrix: entry (j,k) is the RL
/// partial of component j with respect to variable k at the masked order.
CMatrix frac_newton_raphson_matrix(const PolynomialSystem& sys, FracOrder alpha,
                                   const CVector& x);

/// Discards the imaginary part when it is at most 10^-m in magnitude.
Complex rnd_m(Complex z, int m);
CVector rnd_m(CVector v, int m);

/// One application of the configured matrix action to g at x: the base
/// method's action, or the Newton action when the hybrid threshold fires.
CVector method_action(const Problem& problem, const MethodConfig& cfg, FracOrder alpha,
                      const CVector& x, const CVector& g);

/// Runs the fixed-point loop x <- rnd(x - M(x) grad(x)) from x0, recording
/// iterates and norms. Matrix failures surface as trace status, not as
/// exceptions.
IterationTrace iterate(const Problem& problem, const MethodConfig& cfg, FracOrder alpha,
                       const CVector& x0);

}  // namespace fracfix

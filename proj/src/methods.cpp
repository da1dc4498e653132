#include "fracfix/methods.hpp"

#include <cmath>

#include "fracfix/analysis.hpp"

namespace fracfix {

const char* to_string(MethodKind k) {
    switch (k) {
        case MethodKind::QuasiNewton: return "QuasiNewton";
        case MethodKind::PseudoNewton: return "PseudoNewton";
        case MethodKind::FracNewtonRaphson: return "FracNewtonRaphson";
        case MethodKind::ClassicalNewton: return "ClassicalNewton";
    }
    return "?";
}

const char* to_string(IterStatus s) {
    switch (s) {
        case IterStatus::Converged: return "Converged";
        case IterStatus::MaxIter: return "MaxIter";
        case IterStatus::Singular: return "Singular";
        case IterStatus::Domain: return "Domain";
    }
    return "?";
}

CMatrix quasi_newton_matrix(const Problem& problem, FracOrder alpha, const CVector& x) {
    const std::size_t n = problem.dim;
    const CVector g = problem.grad(x);
    const CMatrix h = problem.hess(x);
    CMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double beta = beta_mask(alpha, x[k]);
        if (is_integer_order(beta)) {
            // Zero coordinate: the classical partial of the affine model.
            for (std::size_t j = 0; j < n; ++j) m(j, k) = h(j, k);
            continue;
        }
        const Complex r0 = rl_deriv_monomial(0, beta, x[k]);
        const Complex r1 = rl_deriv_monomial(1, beta, x[k]);
        for (std::size_t j = 0; j < n; ++j) {
            Complex constant = g[j];
            for (std::size_t l = 0; l < n; ++l)
                if (l != k) constant += h(j, l) * x[l];
            m(j, k) = constant * r0 + h(j, k) * r1;
        }
    }
    return m;
}

CMatrix pseudo_newton_matrix(std::size_t dim, FracOrder alpha, double epsilon,
                             const CVector& x) {
    if (epsilon <= 0.0) throw DomainError("pseudo_newton_matrix: epsilon must be positive");
    CMatrix m(dim, dim);
    for (std::size_t k = 0; k < dim; ++k) {
        const double beta = beta_mask(alpha, x[k]);
        m(k, k) = is_integer_order(beta)
                      ? Complex(epsilon)
                      : rl_deriv_monomial(0, beta, x[k]) + epsilon;
    }
    return m;
}

CMatrix frac_newton_raphson_matrix(const PolynomialSystem& sys, FracOrder alpha,
                                   const CVector& x) {
    if (sys.components.size() != sys.n_vars)
        throw DimensionError("frac_newton_raphson_matrix: system must be square");
    const std::size_t n = sys.n_vars;
    CMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double beta = beta_mask(alpha, x[k]);
        for (std::size_t j = 0; j < n; ++j)
            m(j, k) = rl_deriv_poly(sys.components[j], k, beta, x);
    }
    return m;
}

Complex rnd_m(Complex z, int m) {
    if (std::abs(z.imag()) <= std::pow(10.0, -m)) return Complex(z.real(), 0.0);
    return z;
}

CVector rnd_m(CVector v, int m) {
    for (Complex& z : v) z = rnd_m(z, m);
    return v;
}

namespace {

CVector base_action(const Problem& problem, const MethodConfig& cfg, FracOrder alpha,
                    const CVector& x, const CVector& g) {
    switch (cfg.kind) {
        case MethodKind::QuasiNewton:
            return lu_solve(quasi_newton_matrix(problem, alpha, x), g);
        case MethodKind::PseudoNewton: {
            const CMatrix d = pseudo_newton_matrix(problem.dim, alpha, cfg.epsilon, x);
            CVector r(problem.dim);
            for (std::size_t k = 0; k < problem.dim; ++k) r[k] = d(k, k) * g[k];
            return r;
        }
        case MethodKind::FracNewtonRaphson:
            if (!problem.poly_form)
                throw DomainError("FracNewtonRaphson requires a polynomial problem");
            return lu_solve(frac_newton_raphson_matrix(*problem.poly_form, alpha, x), g);
        case MethodKind::ClassicalNewton:
            return lu_solve(problem.hess(x), g);
    }
    throw DomainError("unknown method kind");
}

Complex grid_round(Complex z, double factor) {
    return Complex(std::round(z.real() * factor) / factor,
                   std::round(z.imag() * factor) / factor);
}

bool representable(const CVector& v) {
    for (const Complex& z : v) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        if (std::abs(z.real()) > 1e8 || std::abs(z.imag()) > 1e8) return false;
    }
    return true;
}

}  // namespace

CVector method_action(const Problem& problem, const MethodConfig& cfg, FracOrder alpha,
                      const CVector& x, const CVector& g) {
    if (cfg.hybrid_delta && norm2(g) <= *cfg.hybrid_delta)
        return lu_solve(problem.hess(x), g);
    return base_action(problem, cfg, alpha, x, g);
}

IterationTrace iterate(const Problem& problem, const MethodConfig& cfg, FracOrder alpha,
                       const CVector& x0) {
    if (x0.size() != problem.dim) throw DomainError("iterate: x0 dimension mismatch");

    IterationTrace tr;
    tr.alpha = alpha.value();
    CVector x = x0;
    tr.iterates.push_back(x);

    const double factor = cfg.grid_digits > 0 ? std::pow(10.0, cfg.grid_digits) : 0.0;
    bool failed = false;
    try {
        CVector g = problem.grad(x);
        tr.grad_norms.push_back(norm2(g));
        for (int i = 1; i <= cfg.max_iter; ++i) {
            const CVector step = method_action(problem, cfg, alpha, x, g);
            CVector xn(x.size());
            for (std::size_t k = 0; k < x.size(); ++k) {
                Complex z = rnd_m(x[k] - step[k], cfg.rnd_digits);
                if (factor > 0.0) z = grid_round(z, factor);
                xn[k] = z;
            }
            if (!representable(xn)) {
                tr.status = IterStatus::Domain;
                failed = true;
                break;
            }
            if (xn == x) break;  // exact fixed point of the rounded map
            const double sn = norm2(vsub(xn, x));
            x = std::move(xn);
            g = problem.grad(x);
            tr.iterates.push_back(x);
            tr.step_norms.push_back(sn);
            tr.grad_norms.push_back(norm2(g));
            // With grid rounding on, sub-tolerance moves can only repeat
            // exactly, so the stall test above is the step criterion.
            if (cfg.grid_digits <= 0 && sn <= cfg.tol_step) break;
            if (tr.grad_norms.back() <= cfg.tol_grad) break;
        }
    } catch (const SingularMatrix&) {
        tr.status = IterStatus::Singular;
        failed = true;
    } catch (const DomainError&) {
        tr.status = IterStatus::Domain;
        failed = true;
    } catch (const PoleError&) {
        tr.status = IterStatus::Domain;
        failed = true;
    }

    if (!failed)
        tr.status = tr.grad_norms.back() <= cfg.tol_grad ? IterStatus::Converged
                                                         : IterStatus::MaxIter;
    if (tr.step_norms.size() >= 2) {
        try {
            tr.p_final = order_estimate(tr.step_norms);
        } catch (const DomainError&) {
        }
    }
    return tr;
}

}  // namespace fracfix

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracfix/fractional.hpp"
#include "fracfix/numerics.hpp"

namespace fracfix {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A square multivariate polynomial system, one term list per component.
struct PolynomialSystem {
    std::vector<std::vector<MonomialTerm>> components;
    std::size_t n_vars = 0;

    PolynomialSystem() = default;
    PolynomialSystem(std::vector<std::vector<MonomialTerm>> comps, std::size_t nv);

    bool operator==(const PolynomialSystem&) const = default;
};

/// Parses the line-per-component text format. Terms are coefficients times
/// powers of x1, x2, ... joined by + and -; coefficients are decimal reals
/// or (re, im) pairs; whitespace is insignificant.
PolynomialSystem parse_polynomial_system(std::string_view text);

/// Canonical printer; parse_polynomial_system(to_text(s)) == s for any
/// parsed system.
std::string to_text(const PolynomialSystem& sys);

/// Exact partial derivative of one component with respect to one variable.
/// Constant terms vanish.
std::vector<MonomialTerm> symbolic_partial(const PolynomialSystem& sys,
                                           std::size_t component, std::size_t var);

Complex eval_terms(const std::vector<MonomialTerm>& terms, const CVector& point);

/// The optimization target: a scalar function with gradient and Hessian
/// evaluators at complex points. Root-finding always targets grad.
/// poly_form is present only when the target was built from a polynomial
/// system (grad evaluates the system, hess its Jacobian, f is empty).
struct Problem {
    std::size_t dim = 0;
    std::function<Complex(const CVector&)> f;
    std::function<CVector(const CVector&)> grad;
    std::function<CMatrix(const CVector&)> hess;
    std::optional<PolynomialSystem> poly_form;
};

/// The built-in two-variable trigonometric-polynomial test problem, with
/// sin/cos extended to complex arguments.
Problem builtin_problem();

Problem problem_from_system(PolynomialSystem sys);

}  // namespace fracfix

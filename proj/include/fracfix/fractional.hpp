#pragma once

#include <vector>

#include "fracfix/numerics.hpp"

namespace fracfix {

/// Orders within this distance of an integer are treated as integers and
/// dispatched to the classical differentiation rule.
inline constexpr double kIntegerOrderTol = 1e-12;

inline bool is_integer_order(double a) {
    return std::abs(a - std::round(a)) < kIntegerOrderTol;
}

/// A non-integer real differentiation order. Construction rejects values
/// within kIntegerOrderTol of an integer.
class FracOrder {
public:
    explicit FracOrder(double v) : value_(v) {
        if (is_integer_order(v))
            throw DomainError("FracOrder: order must not be an integer");
    }
    double value() const { return value_; }

private:
    double value_;
};

/// coeff * x1^e1 * x2^e2 * ... with one exponent slot per variable.
struct MonomialTerm {
    Complex coeff;
    std::vector<int> exponents;

    bool operator==(const MonomialTerm&) const = default;
};

/// Order selector guarding the zero coordinate: alpha where |coord| != 0,
/// classical order 1 otherwise.
double beta_mask(FracOrder alpha, Complex coord);

/// Riemann-Liouville derivative (lower limit 0) of z^mu at a non-integer
/// order: Gamma(mu+1)/Gamma(mu-order+1) * z^(mu-order), principal branch.
/// Integer orders use the classical rule (0 for order > mu).
Complex rl_deriv_monomial(int mu, double order, Complex z);

/// Termwise RL partial derivative of a polynomial with respect to one
/// variable; all other coordinates are folded into the coefficients as
/// constants before the monomial rule is applied.
Complex rl_deriv_poly(const std::vector<MonomialTerm>& terms, std::size_t var_index,
                      double order, const CVector& point);

}  // namespace fracfix

#include "fracfix/fractional.hpp"

#include <cmath>

namespace fracfix {

double beta_mask(FracOrder alpha, Complex coord) {
    return std::abs(coord) != 0.0 ? alpha.value() : 1.0;
}

Complex rl_deriv_monomial(int mu, double order, Complex z) {
    if (mu < 0) throw DomainError("rl_deriv_monomial: mu must be non-negative");
    if (is_integer_order(order)) {
        const long n = std::lround(order);
        if (n < 0) throw DomainError("rl_deriv_monomial: negative integer order");
        if (n > mu) return 0.0;
        double c = 1.0;
        for (long i = 0; i < n; ++i) c *= static_cast<double>(mu - i);
        return c * ipow(z, mu - n);
    }
    const double scale = gamma_fn(mu + 1.0) / gamma_fn(mu - order + 1.0);
    return scale * cpow_principal(z, mu - order);
}

Complex rl_deriv_poly(const std::vector<MonomialTerm>& terms, std::size_t var_index,
                      double order, const CVector& point) {
    if (var_index >= point.size())
        throw DomainError("rl_deriv_poly: variable index out of range");
    Complex sum = 0.0;
    for (const MonomialTerm& t : terms) {
        if (t.exponents.size() != point.size())
            throw DomainError("rl_deriv_poly: exponent list does not match dimension");
        Complex folded = t.coeff;
        for (std::size_t l = 0; l < point.size(); ++l) {
            if (l == var_index) continue;
            folded *= ipow(point[l], t.exponents[l]);
        }
        if (folded == 0.0) continue;
        sum += folded * rl_deriv_monomial(t.exponents[var_index], order, point[var_index]);
    }
    return sum;
}

}  // namespace fracfix

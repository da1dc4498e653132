#pragma once

#include <optional>
#include <vector>

#include "fracfix/numerics.hpp"

namespace fracfix {

/// Convergence-order estimate from the last two step norms:
/// log(step[n]) / log(step[n-1]). Both must lie strictly in (0, 1);
/// throws DomainError otherwise.
double order_estimate(const std::vector<double>& step_norms);

enum class CriticalKind { Max, Min, Saddle, Unclassified };

const char* to_string(CriticalKind k);

struct Classification {
    int delta_d = 0;  // sgn(det(Re(H)))
    int delta_t = 0;  // tr(sgn(Re(H)))
    CriticalKind kind = CriticalKind::Unclassified;
};

/// Classifies a critical point from its Hessian: minimum at (1, n),
/// maximum at (1, -n), saddle whenever delta_d = -1, otherwise unclassified.
Classification classify(const CMatrix& hess);

struct CriticalPointRecord {
    CVector point;
    double alpha = 0.0;
    int delta_d = 0;
    int delta_t = 0;
    CriticalKind kind = CriticalKind::Unclassified;
    int iterations = 0;
    std::optional<double> p_n;
    double grad_norm = 0.0;
    double step_norm = 0.0;
};

/// Arithmetic mean of the available p_n values. Throws DomainError when no
/// record carries one.
double mean_order(const std::vector<CriticalPointRecord>& records);

/// Keeps the first record of each cluster under Euclidean distance <= tol
/// on imaginary-chopped points; order is preserved.
std::vector<CriticalPointRecord> dedup(const std::vector<CriticalPointRecord>& records,
                                       double tol);

}  // namespace fracfix

#include "fracfix/analysis.hpp"

#include <cmath>

#include "fracfix/methods.hpp"

namespace fracfix {

double order_estimate(const std::vector<double>& step_norms) {
    if (step_norms.size() < 2)
        throw DomainError("order_estimate: need at least two step norms");
    const double prev = step_norms[step_norms.size() - 2];
    const double last = step_norms.back();
    for (double s : {prev, last})
        if (!(s > 0.0) || s >= 1.0)
            throw DomainError("order_estimate: step norms must lie in (0, 1)");
    return std::log(last) / std::log(prev);
}

const char* to_string(CriticalKind k) {
    switch (k) {
        case CriticalKind::Max: return "Max";
        case CriticalKind::Min: return "Min";
        case CriticalKind::Saddle: return "Saddle";
        case CriticalKind::Unclassified: return "Unclassified";
    }
    return "?";
}

Classification classify(const CMatrix& hess) {
    if (!hess.square()) throw DomainError("classify: square matrix required");
    const CMatrix re = real_part(hess);
    const int n = static_cast<int>(hess.rows());

    Classification c;
    c.delta_d = static_cast<int>(sgn(det(re).real()));
    c.delta_t = static_cast<int>(std::lround(trace(sign_matrix(re)).real()));
    if (c.delta_d == 1 && c.delta_t == n) c.kind = CriticalKind::Min;
    else if (c.delta_d == 1 && c.delta_t == -n) c.kind = CriticalKind::Max;
    else if (c.delta_d == -1) c.kind = CriticalKind::Saddle;
    else c.kind = CriticalKind::Unclassified;
    return c;
}

double mean_order(const std::vector<CriticalPointRecord>& records) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& r : records) {
        if (!r.p_n) continue;
        sum += *r.p_n;
        ++count;
    }
    if (count == 0) throw DomainError("mean_order: no record carries an order estimate");
    return sum / static_cast<double>(count);
}

std::vector<CriticalPointRecord> dedup(const std::vector<CriticalPointRecord>& records,
                                       double tol) {
    if (tol <= 0.0) throw DomainError("dedup: tolerance must be positive");
    std::vector<CriticalPointRecord> kept;
    for (const auto& r : records) {
        const CVector p = rnd_m(r.point, 5);
        bool seen = false;
        for (const auto& k : kept) {
            if (p.size() == k.point.size() && norm2(vsub(p, rnd_m(k.point, 5))) <= tol) {
                seen = true;
                break;
            }
        }
        if (!seen) kept.push_back(r);
    }
    return kept;
}

}  // namespace fracfix

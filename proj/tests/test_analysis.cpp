#include <cmath>

#include "doctest.h"
#include "fracfix/analysis.hpp"

using namespace fracfix;

namespace {

CriticalPointRecord record_at(CVector point, std::optional<double> p = {}) {
    CriticalPointRecord r;
    r.point = std::move(point);
    r.p_n = p;
    return r;
}

CMatrix diag2(double a, double b) {
    CMatrix m(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

}  // namespace

TEST_CASE("order_estimate examples") {
    CHECK(order_estimate({1e-4, 1e-8}) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(order_estimate({1e-3, 1e-4}) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(order_estimate({1e-2, 1e-2}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(order_estimate({0.5}), DomainError);
    CHECK_THROWS_AS(order_estimate({0.5, 0.0}), DomainError);
    CHECK_THROWS_AS(order_estimate({1.5, 0.5}), DomainError);
}

TEST_CASE("order_estimate recovers synthetic orders exactly") {
    const double c = 0.1;
    for (double p : {1.0, 1.5, 2.0}) {
        const std::vector<double> steps = {std::pow(c, p), std::pow(c, p * p)};
        CHECK(std::abs(order_estimate(steps) - p) < 1e-9);
    }
}

TEST_CASE("mean_order on fixed sequences") {
    std::vector<CriticalPointRecord> uniform = {record_at({}, 2.0), record_at({}, 2.0),
                                                record_at({}, 2.0)};
    CHECK(mean_order(uniform) == doctest::Approx(2.0));

    // The 26 order estimates of the non-hybrid benchmark run.
    const double t1[] = {0.9812, 1.0260, 1.0000, 1.0113, 0.9960, 1.0255, 1.0095,
                         1.0145, 0.9812, 1.0000, 1.0144, 1.0313, 1.0192, 0.9966,
                         1.0285, 1.0000, 1.0195, 1.0044, 1.0399, 1.0000, 1.0187,
                         0.9812, 0.9563, 1.0377, 0.9812, 0.9812};
    std::vector<CriticalPointRecord> r1;
    for (double p : t1) r1.push_back(record_at({}, p));
    CHECK(std::abs(mean_order(r1) - 1.0060) <= 1e-4);

    // The 70 order estimates of the hybrid pseudo-Newton benchmark run.
    const double t3[] = {2.0712, 2.1970, 2.1262, 2.8079, 2.1427, 1.9860, 1.9809, 2.1703,
                         2.2093, 1.9673, 2.2122, 2.1124, 2.1726, 2.2126, 2.2710, 2.7275,
                         1.4237, 2.8405, 2.1855, 2.2868, 2.1795, 2.0709, 1.9686, 1.9971,
                         1.9983, 2.1087, 1.9890, 1.9735, 2.0270, 1.9863, 2.1428, 2.3031,
                         2.1184, 2.1235, 1.9727, 2.0053, 2.0119, 1.9803, 1.9642, 1.9787,
                         2.2493, 1.9835, 2.1461, 2.0974, 2.0605, 2.0695, 2.4473, 2.0016,
                         2.0016, 2.0806, 1.9278, 2.0069, 2.0748, 2.0878, 1.9701, 2.0229,
                         1.9676, 2.0443, 2.0444, 2.0486, 2.1260, 1.9795, 2.0743, 2.0718,
                         2.1002, 2.0505, 1.9751, 2.1391, 2.1398, 1.9672};
    std::vector<CriticalPointRecord> r3;
    for (double p : t3) r3.push_back(record_at({}, p));
    CHECK(std::abs(mean_order(r3) - 2.0994) <= 1e-4);

    // Records without an estimate are skipped.
    r1.push_back(record_at({}));
    CHECK_NOTHROW(mean_order(r1));
    CHECK_THROWS_AS(mean_order({record_at({})}), DomainError);
}

TEST_CASE("classify truth table on 2x2 diagonal Hessians") {
    const struct { double a, b; int dd, dt; CriticalKind kind; } cases[] = {
        {2, 3, 1, 2, CriticalKind::Min},
        {-1, -4, 1, -2, CriticalKind::Max},
        {1, -1, -1, 0, CriticalKind::Saddle},
        {-2, 3, -1, 0, CriticalKind::Saddle},
        {5, 2, 1, 2, CriticalKind::Min},
        {-2, -3, 1, -2, CriticalKind::Max},
        {0, 5, 0, 1, CriticalKind::Unclassified},
        {0, -5, 0, -1, CriticalKind::Unclassified},
        {0, 0, 0, 0, CriticalKind::Unclassified},
    };
    for (const auto& c : cases) {
        const Classification got = classify(diag2(c.a, c.b));
        CHECK(got.delta_d == c.dd);
        CHECK(got.delta_t == c.dt);
        CHECK(got.kind == c.kind);
    }
}

TEST_CASE("classify ignores positive scaling") {
    CMatrix h(2, 2);
    h(0, 0) = 1.5;
    h(0, 1) = Complex(0.2, 0.7);  // imaginary parts are dropped by design
    h(1, 0) = Complex(0.2, -0.7);
    h(1, 1) = -2.25;
    const Classification base = classify(h);
    for (double c : {0.5, 3.0, 100.0}) {
        CMatrix scaled(2, 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) scaled(i, j) = c * h(i, j);
        const Classification got = classify(scaled);
        CHECK(got.delta_d == base.delta_d);
        CHECK(got.delta_t == base.delta_t);
        CHECK(got.kind == base.kind);
    }
}

TEST_CASE("dedup") {
    CriticalPointRecord a = record_at({Complex(1.0, 0.0), Complex(2.0, 0.0)});
    CriticalPointRecord b = record_at({Complex(1.0 + 1e-9, 0.0), Complex(2.0, 0.0)});
    CHECK(dedup({a, b}, 1e-4).size() == 1);

    CriticalPointRecord c = record_at({Complex(1.0, 1.5), Complex(2.0, -0.5)});
    CriticalPointRecord cc = record_at({Complex(1.0, -1.5), Complex(2.0, 0.5)});
    CHECK(dedup({c, cc}, 1e-4).size() == 2);  // conjugate pair stays distinct

    CHECK(dedup({}, 1e-4).empty());
    CHECK_THROWS_AS(dedup({a}, 0.0), DomainError);

    // stable order: the first representative survives
    const auto kept = dedup({a, c, b}, 1e-4);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].point == a.point);
    CHECK(kept[1].point == c.point);
}

#include <doctest.h>

#include <cmath>

#include "qg/growth.hpp"
#include "qg/rng.hpp"
#include "qg/schedules.hpp"

using namespace qg;

TEST_CASE("u-sequence: first terms are exact") {
    const auto u = u_sequence(2);
    CHECK(u[0] == 1.0);
    CHECK(u[1] == 2.0);  // 0.5 + sqrt(2.25)
    CHECK(u[2] == doctest::Approx(1.0 + std::sqrt(3.0)).epsilon(1e-15));
}

TEST_CASE("u-sequence: algebraic identities") {
    const auto u = u_sequence(1000);
    // u_k^2 = u_k u_{k-1} + 2
    for (std::size_t k = 1; k < u.size(); ++k)
        CHECK(std::fabs(u[k] * u[k] - u[k] * u[k - 1] - 2.0) <= 1e-9);
    // u_n = 1 + 2 sum_{k=1}^n 1/u_k
    double s = 0.0;
    for (std::size_t k = 1; k < u.size(); ++k) {
        s += 1.0 / u[k];
        CHECK(std::fabs(u[k] - (1.0 + 2.0 * s)) <= 1e-9);
    }
}

TEST_CASE("u-sequence: asymptotics u_n ~ 2 sqrt(n)") {
    const auto u = u_sequence(10000);
    const double ratio = u.back() / (2.0 * std::sqrt(10000.0));
    CHECK(ratio >= 0.98);
    CHECK(ratio <= 1.02);
}

TEST_CASE("schedule kinds") {
    const auto c = StepSchedule::constant(0.5);
    CHECK(c.gamma(0) == 0.5);
    CHECK(c.gamma(17) == 0.5);

    const auto h = StepSchedule::harmonic(1.0);
    CHECK(h.gamma(0) == 0.5);
    CHECK(h.gamma(3) == doctest::Approx(0.2).epsilon(1e-15));

    const auto d = StepSchedule::decreasing_u(1.0, 10);
    CHECK(d.gamma(0) == 0.5);  // 1/u_1 = 1/2
    CHECK_THROWS_AS(d.gamma(10), Error);

    const auto cu = StepSchedule::custom({0.1, 0.2});
    CHECK(cu.gamma(1) == 0.2);
    CHECK_THROWS_AS(cu.gamma(2), Error);
    CHECK_THROWS_AS(StepSchedule::custom({0.1, -0.2}), Error);
    CHECK_THROWS_AS(StepSchedule::constant(0.0), Error);
}

TEST_CASE("decreasing-u equalizes the two lower-bound expressions") {
    const int horizon = 500;
    const auto sched = StepSchedule::decreasing_u(1.0, horizon);
    double sum = 0.0;
    for (int n = 1; n <= horizon; ++n) {
        sum += sched.gamma(n - 1);
        const double lhs = 1.0 / (1.0 + 2.0 * sum);
        const double rhs = sched.gamma(n - 1);
        CHECK(std::fabs(lhs - rhs) <= 1e-9);
    }
}

TEST_CASE("growth functions: shape and inverses") {
    const auto lin = GrowthFn::linear(2.0);
    CHECK(lin.eval(0.0) == 0.0);
    CHECK(lin.inverse(3.0) == doctest::Approx(3.0).epsilon(1e-15));

    const auto sq = GrowthFn::sqrt(2.0);
    CHECK(sq.inverse(4.0) == doctest::Approx(4.0).epsilon(1e-15));

    const auto mx = GrowthFn::mixed(1.0, 2.0);
    const double z = mx.inverse(4.0);
    const double expected = std::pow((-1.0 + std::sqrt(17.0)) / 2.0, 2);
    CHECK(z == doctest::Approx(expected).epsilon(1e-14));
    CHECK(mx.eval(z) == doctest::Approx(4.0).epsilon(1e-10));

    CHECK_THROWS_AS(lin.inverse(-1.0), Error);
    CHECK_THROWS_AS(GrowthFn::sqrt(0.0), Error);
}

TEST_CASE("growth inverse round-trips across scales") {
    for (const auto& h : {GrowthFn::linear(1.7), GrowthFn::sqrt(0.9), GrowthFn::mixed(0.8, 2.2)}) {
        for (double z = 1e-6; z <= 1e6; z *= 10.0) {
            const double back = h.inverse(h.eval(z));
            CHECK(std::fabs(back - z) <= 1e-10 * z);
        }
    }
}

TEST_CASE("mixed step-size closed form matches the composed route") {
    const double M = 1.3, L = 2.7;
    const auto h = GrowthFn::mixed(M, L);
    Rng rng(5);
    for (int t = 0; t < 1000; ++t) {
        const double v = std::exp(rng.uniform(-6.0, 6.0));
        const double direct = 0.5 * h.inv_deriv_at(v);
        const double reference = (1.0 / L) * (1.0 - 1.0 / std::sqrt(1.0 + 2.0 * L * v / (M * M)));
        CHECK(std::fabs(direct - reference) <= 1e-10 * std::fabs(reference));
        // Composition through deriv and inverse agrees as well.
        const double composed = 0.5 / h.deriv(h.inverse(v));
        CHECK(std::fabs(direct - composed) <= 1e-9 * std::max(1.0, std::fabs(direct)));
    }
}

TEST_CASE("growth concavity probe") {
    Rng rng(9);
    for (const auto& h : {GrowthFn::linear(1.0), GrowthFn::sqrt(2.0), GrowthFn::mixed(1.0, 3.0)}) {
        for (int t = 0; t < 300; ++t) {
            const double a = std::exp(rng.uniform(-3.0, 6.0));
            const double b = std::exp(rng.uniform(-3.0, 6.0));
            CHECK(h.eval(0.5 * (a + b)) >= 0.5 * (h.eval(a) + h.eval(b)) - 1e-12);
        }
    }
}

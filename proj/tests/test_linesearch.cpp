#include <doctest.h>

#include <cmath>

#include "qg/linesearch.hpp"
#include "qg/zoo.hpp"
#include "support.hpp"

using namespace qg;

namespace {

// Test-only oracle: f(x) = <c, x> + offset. Unbounded below along -c.
class AffineOracle final : public FirstOrderOracle {
  public:
    explicit AffineOracle(Vec c) : c_(std::move(c)), tags_{ClassTag::convex_only()} {}
    double value(const Vec& x) const override { return dot(c_, x); }
    double f_star() const override { return 0.0; }
    int dimension() const override { return static_cast<int>(c_.size()); }
    const std::vector<ClassTag>& class_tags() const override { return tags_; }

  protected:
    Vec select_subgradient(const Vec&, SubgradPolicy) const override { return c_; }

  private:
    Vec c_;
    std::vector<ClassTag> tags_;
};

// f(x) = (x - 2)^2 in one dimension.
class ShiftedParabola final : public FirstOrderOracle {
  public:
    ShiftedParabola() : tags_{ClassTag::qg_plus(2.0)} {}
    double value(const Vec& x) const override { return (x[0] - 2.0) * (x[0] - 2.0); }
    double f_star() const override { return 0.0; }
    int dimension() const override { return 1; }
    const std::vector<ClassTag>& class_tags() const override { return tags_; }
    bool has_optset_projection() const override { return true; }
    Vec optset_projection(const Vec&) const override { return Vec{2.0}; }

  protected:
    Vec select_subgradient(const Vec& x, SubgradPolicy) const override {
        return Vec{2.0 * (x[0] - 2.0)};
    }

  private:
    std::vector<ClassTag> tags_;
};

}  // namespace

TEST_CASE("parabola vertex") {
    ShiftedParabola oracle;
    LineProblem line{&oracle, Vec{0.0}, Vec{1.0}};
    const auto res = exact_line_search(line);
    CHECK(res.alpha == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(res.value == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("kink minimizer of |x|") {
    AbsOracle oracle(1.0);
    LineProblem line{&oracle, Vec{3.0}, Vec{-1.0}};
    const auto res = exact_line_search(line);
    CHECK(res.alpha == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(std::fabs(res.point[0]) <= 1e-10);
}

TEST_CASE("Huber restriction from 5 along -1") {
    // The 1-D restriction h(5 - alpha) is minimized at alpha = 5.
    auto oracle = huber_oracle(1.0, 1.0);
    LineProblem line{oracle.get(), Vec{5.0}, Vec{-1.0}};
    const auto res = exact_line_search(line);
    CHECK(res.alpha == doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("negative-direction search works both ways") {
    ShiftedParabola oracle;
    LineProblem line{&oracle, Vec{5.0}, Vec{1.0}};
    const auto res = exact_line_search(line);
    CHECK(res.alpha == doctest::Approx(-3.0).epsilon(1e-10));
}

TEST_CASE("flat minimizer interval resolves to its right end") {
    // Along e0 from (1,1): the sup-norm restriction is flat on [-2, 0].
    SupNormSqOracle oracle(1.0, 2);
    LineProblem line{&oracle, Vec{1.0, 1.0}, Vec{-1.0, 0.0}};
    const auto res = exact_line_search(line);
    CHECK(res.alpha == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(res.value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("zero direction returns immediately") {
    ShiftedParabola oracle;
    LineProblem line{&oracle, Vec{1.0}, Vec{0.0}};
    const auto res = exact_line_search(line);
    CHECK(res.alpha == 0.0);
    CHECK(res.point == Vec{1.0});
}

TEST_CASE("unbounded line is detected") {
    AffineOracle oracle(Vec{1.0});
    LineProblem line{&oracle, Vec{0.0}, Vec{-1.0}};
    CHECK_THROWS_AS(exact_line_search(line), Error);
}

TEST_CASE("line-search optimality and idempotence on zoo restrictions") {
    Rng rng(21);
    auto oracle = lb3d_instance(1.0, 4, std::vector<double>(4, 0.9), 1e-3).oracle;
    for (int t = 0; t < 50; ++t) {
        const Vec base = rng.uniform_vec(3, -4.0, 4.0);
        Vec dir = rng.uniform_vec(3, -1.0, 1.0);
        if (is_zero(dir)) continue;
        LineProblem line{oracle.get(), base, dir};
        const auto res = exact_line_search(line);
        const double probe = 1e-6;
        CHECK(oracle->value(add_scaled(base, res.alpha + probe, dir)) >= res.value - 1e-10);
        CHECK(oracle->value(add_scaled(base, res.alpha - probe, dir)) >= res.value - 1e-10);
        // Searching again from the minimizer returns a vanishing step.
        LineProblem again{oracle.get(), res.point, dir};
        const auto res2 = exact_line_search(again);
        CHECK(std::fabs(res2.alpha) <= 1e-9 * (1.0 + std::fabs(res.alpha)));
    }
}

TEST_CASE("orthogonal subgradient: two-piece combination") {
    SupNormOracle oracle(1.0, 2);
    const Vec g = orthogonal_subgradient(oracle, Vec{1.0, 1.0}, Vec{1.0, -1.0});
    CHECK(g[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(g[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::fabs(dot(g, Vec{1.0, -1.0})) <= 1e-12);
}

TEST_CASE("orthogonal subgradient: differentiable point returns the gradient") {
    ShiftedParabola oracle;
    // At x = 2 the gradient vanishes, so it is orthogonal to anything.
    const Vec g = orthogonal_subgradient(oracle, Vec{2.0}, Vec{1.0});
    CHECK(std::fabs(g[0]) <= 1e-12);
}

TEST_CASE("orthogonal subgradient: zero reference accepts any subgradient") {
    AbsOracle oracle(2.0);
    const Vec g = orthogonal_subgradient(oracle, Vec{1.5}, Vec{0.0});
    CHECK(g[0] == doctest::Approx(2.0));
}

TEST_CASE("orthogonal subgradient: reports a missing bracket") {
    // x = (2, 0) is not a minimizer along e0; no orthogonal choice exists.
    SupNormOracle oracle(1.0, 2);
    CHECK_THROWS_AS(orthogonal_subgradient(oracle, Vec{2.0, 0.0}, Vec{1.0, 0.0}), Error);
}

TEST_CASE("orthogonal combinations stay valid subgradients") {
    Rng rng(33);
    SupNormSqOracle oracle(1.5, 3);
    for (int t = 0; t < 200; ++t) {
        // Points with tied leading coordinates so the subdifferential is fat.
        const double m = rng.uniform(0.5, 3.0);
        Vec x{m, -m, rng.uniform(-m, m)};
        Vec v{rng.uniform(0.1, 1.0), rng.uniform(0.1, 1.0), 0.0};
        const Vec g = orthogonal_subgradient(oracle, x, v);
        CHECK(std::fabs(dot(g, v)) <= 1e-9 * (norm2(g) * norm2(v) + 1.0));
        for (int probe = 0; probe < 5; ++probe) {
            const Vec y = rng.uniform_vec(3, -10.0, 10.0);
            CHECK(oracle.value(y) - oracle.value(x) - dot(g, sub(y, x)) >= -1e-10);
        }
    }
}

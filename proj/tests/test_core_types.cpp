#include "support.hpp"

#include <doctest.h>

#include <limits>

using namespace dubins3d;

TEST_CASE("canonicalize wraps angles into their ranges")
{
    const CscPath p = canonicalize({kTwoPi + 0.1, kPi, 1.0, -3.0 * kPi, kPi / 2.0});
    CHECK(p.phi1 == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(p.psi1 == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(p.d == 1.0);
    CHECK(p.phi2 == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(p.psi2 == doctest::Approx(kPi / 2.0).epsilon(1e-12));
}

TEST_CASE("canonicalize zeroes the plane angle of degenerate arcs")
{
    const CscPath p = canonicalize({1.3, 0.0, 2.0, 0.7, 0.0});
    CHECK(p == CscPath{0.0, 0.0, 2.0, 0.0, 0.0});
}

TEST_CASE("canonical paths are left alone")
{
    const CscPath in{-0.2, 0.5, 0.0, 0.3, 0.4};
    CHECK(canonicalize(in) == in);
}

TEST_CASE("canonicalize rejects non-finite fields")
{
    CHECK_THROWS_AS(canonicalize({std::numeric_limits<double>::quiet_NaN(), 1, 1, 0, 0}), NonFinite);
    CHECK_THROWS_AS(canonicalize({0, 1, std::numeric_limits<double>::infinity(), 0, 0}), NonFinite);
}

TEST_CASE("canonicalize is idempotent and preserves the endpoint")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> wide(-20.0, 20.0), len(0.0, 5.0);
    for (int i = 0; i < 500; ++i)
    {
        const CscPath raw{wide(rng), wide(rng), len(rng), wide(rng), wide(rng)};
        const CscPath once = canonicalize(raw);
        CHECK(canonicalize(once) == once);
        CHECK(once.psi1 >= 0.0);
        CHECK(once.psi1 < kTwoPi);
        CHECK(once.phi1 > -kPi);
        CHECK(once.phi1 <= kPi);
        const Pose a = fk_dubins(raw, 1.0), b = fk_dubins(once, 1.0);
        CHECK((a.position - b.position).norm() < 1e-11);
        CHECK((a.direction - b.direction).norm() < 1e-12);
    }
}

TEST_CASE("wrapping helpers")
{
    CHECK(wrap_pi(-kPi) == doctest::Approx(kPi));
    CHECK(wrap_pi(3.0 * kPi / 2.0) == doctest::Approx(-kPi / 2.0));
    CHECK(wrap_two_pi(-0.5) == doctest::Approx(kTwoPi - 0.5));
    CHECK(angle_distance(0.1, kTwoPi - 0.1) == doctest::Approx(0.2));
}

TEST_CASE("tolerances must be positive and finite")
{
    CHECK_NOTHROW(Tolerances{}.validate());
    Tolerances t;
    t.fk_residual = 0.0;
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
    t = {};
    t.dedup_angle = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
}

TEST_CASE("goal pose normalizes its direction and validates input")
{
    const GoalPose g({1, 2, 3}, {0, 0, 4}, 2.0);
    CHECK(g.direction().norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g.radius() == 2.0);
    CHECK_THROWS_AS(GoalPose({1, 2, 3}, {0, 0, 0}), InvalidGoal);
    CHECK_THROWS_AS(GoalPose({1, 2, 3}, {0, 0, 1}, 0.0), InvalidGoal);
    CHECK_THROWS_AS(GoalPose({std::numeric_limits<double>::quiet_NaN(), 0, 0}, {0, 0, 1}), InvalidGoal);
}

TEST_CASE("path length")
{
    CHECK(path_length({0, 0, 5, 0, 0}, 1.0) == 5.0);
    CHECK(path_length({0, kPi / 2.0, 0, 0, kPi / 2.0}, 2.0) == doctest::Approx(kTwoPi));
    CHECK(path_length({0, kPi, 1, 0, kPi}, 1.0) == doctest::Approx(kTwoPi + 1.0));
}

TEST_CASE("sorting is by length with a lexicographic tie-break")
{
    std::vector<CscPath> paths{{0.5, 1.0, 2.0, 0, 0}, {0.1, 0.5, 1.0, 0, 0}, {-0.5, 1.0, 2.0, 0, 0}};
    sort_by_length(paths, 1.0);
    CHECK(paths[0].d == 1.0);
    CHECK(paths[1].phi1 == -0.5);
    CHECK(paths[2].phi1 == 0.5);
}

TEST_CASE("duplicates compare wrapped angles and lengths")
{
    const Tolerances tol;
    CHECK(is_duplicate({kPi, 1, 1, 0, 1}, {-kPi + 1e-8, 1, 1, 0, 1}, tol));
    CHECK_FALSE(is_duplicate({0, 1, 1, 0, 1}, {0, 1, 1 + 1e-5, 0, 1}, tol));
    CHECK(parameter_distance({0, 1, 1, 0, 1}, {0, 1.25, 1, 0, 1}) == doctest::Approx(0.25));
}

TEST_CASE("enum names")
{
    CHECK(to_string(SolutionKind::InfiniteFamily) == "infinite_family");
    CHECK(to_string(CaseTag::Planar) == "planar");
    CHECK(to_string(Rejection::NegativeExtension) == "negative_extension");
}

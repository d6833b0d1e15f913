#include "support.hpp"

#include "dubins3d/oracle.hpp"

#include <doctest.h>

using namespace dubins3d;

TEST_CASE("geometric sampler on hand-checked paths")
{
    const auto straight = fk_geometric({0, 0, 5, 0, 0}, 1.0, 2);
    REQUIRE(straight.size() == 2);
    CHECK(straight[0].norm() == 0.0);
    CHECK((straight[1] - Vec3(0, 0, 5)).norm() < 1e-15);

    const auto quarter = fk_geometric({0, kPi / 2.0, 0, 0, 0}, 1.0, 9);
    REQUIRE(quarter.size() == 9);
    CHECK((quarter.back() - Vec3(1, 0, 1)).norm() < 1e-14);
    for (const Vec3 &p : quarter)
        CHECK(std::hypot(p.x() - 1.0, p.z()) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(fk_geometric({0, 0, 5, 0, 0}, 1.0, 1), std::invalid_argument);
}

TEST_CASE("geometric sampler agrees with the closed form along the path")
{
    std::mt19937_64 rng(1);
    for (int i = 0; i < 300; ++i)
    {
        const CscPath p = fixtures::random_path(rng);
        const auto pts = fk_geometric(p, 1.0, 30);
        CHECK((pts.back() - fk_dubins(p, 1.0).position).norm() < 1e-10);
        // Consecutive samples are never farther apart than the arc-length step.
        const double step = path_length(p, 1.0) / 29.0;
        for (std::size_t k = 1; k < pts.size(); ++k)
            CHECK((pts[k] - pts[k - 1]).norm() <= step + 1e-12);
    }
}

TEST_CASE("numeric solver finds all seven paths of the seven-solution goal")
{
    const GoalPose g = fixtures::seven_solution_goal();
    const auto found = numeric_solve(g, 24);
    CHECK(found.size() == 7);
    for (const CscPath &p : found)
        CHECK(fk_residual(p, g) < 1e-8);
}

TEST_CASE("numeric solver finds the straight path")
{
    const GoalPose g({0, 0, 5}, {0, 0, 1});
    const auto found = numeric_solve(g, 12);
    CHECK(fixtures::contains(found, {0, 0, 5, 0, 0}, Tolerances{1e-6, 1e-9, 1e-6, 1e-5, 1e-5, 1e-9}));
    CHECK_THROWS_AS(numeric_solve(g, 1), std::invalid_argument);
}

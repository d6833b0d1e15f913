#include "support.hpp"

#include "dubins3d/oracle.hpp"

#include <doctest.h>

using namespace dubins3d;

namespace
{
    void check_pose(const Pose &p, const Vec3 &x, const Vec3 &v, double eps)
    {
        CHECK((p.position - x).norm() < eps);
        CHECK((p.direction - v).norm() < eps);
    }
} // namespace

TEST_CASE("closed-form forward kinematics on hand-checked paths")
{
    check_pose(fk_dubins({0, 0, 5, 0, 0}, 1.0), {0, 0, 5}, {0, 0, 1}, 1e-14);
    check_pose(fk_dubins({0, kPi / 2.0, 0, 0, 0}, 1.0), {1, 0, 1}, {1, 0, 0}, 1e-14);
    check_pose(fk_dubins({kPi / 2.0, kPi / 2.0, 0, 0, 0}, 2.0), {0, 2, 2}, {0, 1, 0}, 1e-14);
}

TEST_CASE("closed-form endpoint matches a moving-frame composition")
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i)
    {
        const CscPath p = fixtures::random_path(rng);
        const double r = (i % 2) ? 1.0 : 0.5 + i % 7;
        const std::vector<Vec3> pts = fk_geometric(p, r, 2);
        CHECK((fk_dubins(p, r).position - pts.back()).norm() < 1e-10 * (1.0 + pts.back().norm()));
    }
}

TEST_CASE("DH transforms")
{
    CHECK(dh_transform(3, 0.0).isApprox(HomTransform::Identity(), 1e-15));
    const HomTransform a1 = dh_transform(1, 0.0);
    CHECK(a1(0, 0) == doctest::Approx(1.0));
    CHECK(a1(0, 1) == doctest::Approx(0.0));
    CHECK(a1(0, 2) == doctest::Approx(0.0));
    CHECK(a1(0, 3) == doctest::Approx(1.0));
    CHECK(a1.row(3).isApprox(Eigen::RowVector4d(0, 0, 0, 1)));
    CHECK_THROWS_AS(dh_transform(6, 0.0), std::invalid_argument);

    // theta5 = pi closes the chain of a path without a second arc.
    const CscPath p{0.3, 1.1, 0.7, 0.0, 0.0};
    const JointValues j = dubins_to_dh(p);
    CHECK(j.theta5 == doctest::Approx(kPi));
    const Pose chain = fk_chain(j), closed = fk_dubins(p, 1.0);
    check_pose(chain, closed.position, closed.direction, 1e-12);
}

TEST_CASE("DH chain agrees with the closed form")
{
    check_pose(fk_chain(dubins_to_dh({0, 0, 5, 0, 0})), {0, 0, 5}, {0, 0, 1}, 1e-12);
    check_pose(fk_chain(dubins_to_dh({0, kPi / 2.0, 0, 0, 0})), {1, 0, 1}, {1, 0, 0}, 1e-12);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i)
    {
        const CscPath p = fixtures::random_path(rng);
        const Pose a = fk_chain(dubins_to_dh(p)), b = fk_dubins(p, 1.0);
        CHECK((a.position - b.position).norm() < 1e-10);
        CHECK((a.direction - b.direction).norm() < 1e-10);
    }
}

TEST_CASE("parameter map between Dubins and DH")
{
    const JointValues s = dubins_to_dh({0, 0, 5, 0, 0});
    CHECK(s.theta1 == 0.0);
    CHECK(s.theta2 == doctest::Approx(kPi));
    CHECK(s.d3 == 5.0);
    CHECK(s.theta4 == doctest::Approx(kPi));
    CHECK(s.theta5 == doctest::Approx(kPi));

    const JointValues j = dubins_to_dh({0.1, 1.0, 2.0, -0.5, 0.3});
    CHECK(j.theta1 == doctest::Approx(0.1));
    CHECK(j.theta2 == doctest::Approx(kPi - 1.0));
    CHECK(j.d3 == 2.0);
    CHECK(j.theta4 == doctest::Approx(kPi - 0.5));
    CHECK(j.theta5 == doctest::Approx(kPi - 0.3));

    std::mt19937_64 rng(8);
    for (int i = 0; i < 200; ++i)
    {
        const CscPath p = fixtures::random_path(rng);
        CHECK(parameter_distance(dh_to_dubins(dubins_to_dh(p)), canonicalize(p)) < 1e-12);
    }
}

TEST_CASE("FK residual")
{
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i)
    {
        CscPath p = fixtures::random_path(rng);
        const GoalPose g = fixtures::goal_of(p);
        CHECK(fk_residual(p, g) < 1e-12);
        p.psi1 += 1e-3;
        CHECK(fk_residual(p, g) > 1e-5);
    }
}

TEST_CASE("goal scaling")
{
    const GoalPose scaled = scale_goal(GoalPose({0, 0, 10}, {0, 0, 1}, 2.0));
    CHECK(scaled.position().isApprox(Vec3(0, 0, 5)));
    CHECK(scaled.radius() == 1.0);

    const GoalPose g({1, -2, 3}, {0.2, 0.3, 0.9}, 1.0);
    const GoalPose same = scale_goal(g);
    CHECK(same.position() == g.position());
    CHECK(same.direction() == g.direction());

    const CscPath up = unscale_path({0.4, 1.0, 2.0, -1.0, 0.5}, 3.0);
    CHECK(up.d == 6.0);
    CHECK(up.psi1 == 1.0);
    CHECK(up.phi2 == -1.0);
}

TEST_CASE("refinement pulls a perturbed path back onto its goal")
{
    std::mt19937_64 rng(10);
    int recovered = 0;
    for (int i = 0; i < 100; ++i)
    {
        const CscPath p = fixtures::random_path(rng);
        const GoalPose g = fixtures::goal_of(p);
        CscPath noisy = p;
        noisy.phi1 += 1e-4;
        noisy.d += 1e-4;
        const CscPath refined = refine_path(noisy, g);
        CHECK(fk_residual(refined, g) <= fk_residual(noisy, g));
        CHECK(refined.d >= 0.0);
        if (fk_residual(refined, g) < 1e-10)
            ++recovered;
    }
    CHECK(recovered >= 95);
}

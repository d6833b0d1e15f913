#pragma once
/**
 * @file   special_cases.hpp
 * @brief  Goals on which the general elimination degenerates: goals on the
 *         start axis (straight line and the one-parameter family) and goals
 *         whose solutions all lie in one vertical plane.
 *
 * All functions take goals already scaled to unit turning radius.
 */

#include "dubins3d/core_types.hpp"
#include "dubins3d/polynomial.hpp"

#include <optional>
#include <span>
#include <vector>

namespace dubins3d
{
    class NoValidBranch : public Error
    {
      public:
        using Error::Error;
    };

    /// Goal on the start axis with heading +z and position above the start
    /// is reported as InfiniteFamily (the straight path is one member);
    /// StraightLine is never returned.
    CaseTag detect(const GoalPose &unit_goal, const Tolerances &tol);

    /// The single path (0, 0, |x_g|, 0, 0).
    SolutionSet solve_straight(const GoalPose &unit_goal);

    /// @p n base rotations evenly spaced on [0, 2 pi).
    std::vector<double> even_theta1_samples(std::size_t n = 8);

    /// Paths with a fixed base rotation @p theta1 and a wrist angle theta4 in
    /// {0, pi} (@p wrist_sign = cos theta4). Exact for every goal where the
    /// resulting motion is planar; each returned path is FK-validated.
    std::vector<CscPath> planar_branch(const GoalPose &unit_goal, double theta1, int wrist_sign, const Tolerances &tol);

    /// Polynomial in d3 from the squared-position equation after solving the
    /// four in-plane equations for (c2, s2, s5, c5) as affine functions of d3.
    /// Empty when that linear system is singular.
    std::optional<UniPoly> planar_d3_polynomial(const GoalPose &unit_goal, double theta1, int wrist_sign);

    /// One representative per (theta1 sample, admissible theta4 branch).
    /// Aligned goals farther than 2 use both branches; anti-aligned goals
    /// within 2 use theta4 = 0 when it reaches the goal. Elsewhere each branch
    /// is kept if it yields a valid path at the first sample. Throws
    /// NoValidBranch if no branch does.
    SolutionSet solve_family(const GoalPose &unit_goal, std::span<const double> theta1_samples, const Tolerances &tol);

    /// Four base/wrist combinations: theta1 in {a, a + pi} with a the heading
    /// of the goal position (or of the goal direction when the position is on
    /// the axis), theta4 in {0, pi}.
    SolutionSet solve_planar(const GoalPose &unit_goal, const Tolerances &tol);

    /// Closest goal with x_x v_y - x_y v_x = 0, reached by rotating either the
    /// position or the heading about the vertical axis (whichever moves less).
    /// Empty when both horizontal components vanish.
    std::optional<GoalPose> nearest_planar_goal(const GoalPose &unit_goal);

    /// Solutions of the nearest planar goal carried over to @p unit_goal by
    /// Levenberg-Marquardt, started from each planar path and from points
    /// along its least-constrained parameter direction. Finds the paths that
    /// split off double roots close to the planar manifold.
    std::vector<CscPath> continue_from_planar(const GoalPose &unit_goal, const Tolerances &tol);

    /// Solves a goal nudged 1e-7 off the planar manifold with the general
    /// pipeline and refines each result against the original goal.
    SolutionSet solve_unknown_singular(const GoalPose &unit_goal, const Tolerances &tol);

} // namespace dubins3d

#pragma once
/**
 * @file   solver.hpp
 * @brief  Entry points: all CSC paths to a goal, or the shortest one.
 */

#include "dubins3d/core_types.hpp"

namespace dubins3d
{
    /// Elimination, root finding and back-substitution for a unit-radius goal
    /// off the special-case manifolds. Throws SingularQ or
    /// IdenticallyZeroDeterminant when the elimination degenerates.
    SolutionSet solve_general(const GoalPose &unit_goal, const Tolerances &tol);

    /// Every valid CSC path to @p goal, sorted by length. Goals on the start
    /// axis return an InfiniteFamily set whose representatives sample the
    /// base rotation at 8 even angles. Throws InvalidGoal when the goal is the
    /// start pose itself.
    SolutionSet solve(const GoalPose &goal, const Tolerances &tol = {});

    struct ShortestPath
    {
        CscPath path;
        SolutionKind kind = SolutionKind::Discrete;
        /// True when the goal admits a continuum of paths and @p path is only
        /// the shortest among the sampled representatives.
        bool sampled = false;
    };

    /// First path of solve(); throws NoSolution on an empty set.
    ShortestPath shortest(const GoalPose &goal, const Tolerances &tol = {});

} // namespace dubins3d

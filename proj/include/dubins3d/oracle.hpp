#pragma once
/**
 * @file   oracle.hpp
 * @brief  Brute-force numeric solver and geometric path sampler, kept apart
 *         from the analytic pipeline so the two can check each other.
 */

#include "dubins3d/core_types.hpp"

#include <vector>

namespace dubins3d
{
    /// Multi-start Levenberg-Marquardt over (phi1, psi1, phi2, psi2), with the
    /// straight length chosen in closed form for each angle set. Starts are the
    /// local minima of the residual on a grid_density^4 lattice plus the best
    /// lattice points. Returns deduplicated, canonical paths with FK residual
    /// below 1e-8 and d >= 0. Not guaranteed to be complete.
    std::vector<CscPath> numeric_solve(const GoalPose &goal, int grid_density);

    /// @p samples points spaced evenly in arc length along the path, built by
    /// composing arc, segment and arc as rigid motions of a moving frame.
    /// Throws std::invalid_argument when samples < 2.
    std::vector<Vec3> fk_geometric(const CscPath &path, double r, int samples);

} // namespace dubins3d

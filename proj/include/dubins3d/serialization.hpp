#pragma once
/**
 * @file   serialization.hpp
 * @brief  JSON forms of goals and solution sets.
 *
 * Solution set layout:
 *
 *     {goal: {x, v, r}, kind, solutions: [{phi1, psi1, d, phi2, psi2, length, fk_residual}],
 *      family?: {theta4_choices, theta1_samples, representatives},
 *      diagnostics: {case_tag, q_condition, characteristic_degree, root_count,
 *                    perturbation_fallback, notes, candidates}, wall_ms}
 */

#include "dubins3d/core_types.hpp"

#include <json.hpp>

namespace dubins3d
{
    nlohmann::json to_json(const GoalPose &goal);
    /// Reads {x: [3], v: [3], r?}; throws InvalidGoal on a malformed document.
    GoalPose goal_from_json(const nlohmann::json &doc);

    nlohmann::json to_json(const CscPath &path, const GoalPose &goal);
    nlohmann::json to_json(const SolutionSet &set, const GoalPose &goal);

} // namespace dubins3d

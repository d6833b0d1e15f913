#pragma once
/**
 * @file   kinematics.hpp
 * @brief  Forward kinematics of CSC paths and of the equivalent RRPRR arm.
 *
 * The closed-form Dubins forward map is the production path; the DH chain
 * product is an independent derivation of the same map. DH rows (r, alpha,
 * d, theta): joints 1, 2, 4, 5 are (1, pi/2, 0, theta_i); joint 3 is
 * (0, 0, d3, 0). Dubins and DH parameters are related by
 *
 *     [phi1, psi1, d, phi2, psi2] = [theta1, pi - theta2, d3, theta4 - pi, pi - theta5].
 */

#include "dubins3d/core_types.hpp"

#include <Eigen/Core>

namespace dubins3d
{
    using HomTransform = Eigen::Matrix4d;

    /// Position and heading reached by @p path from the canonical start.
    struct Pose
    {
        Vec3 position;
        Vec3 direction;
    };

    Pose fk_dubins(const CscPath &path, double r);

    /// A_i for joint @p joint_index in 1..5. @p value is theta_i, or d3 for joint 3.
    HomTransform dh_transform(int joint_index, double value);

    /// Third and fourth columns of A1 A2 A3 A4 A5.
    Pose fk_chain(const JointValues &joints);

    JointValues dubins_to_dh(const CscPath &path);
    /// Canonicalized inverse of dubins_to_dh.
    CscPath dh_to_dubins(const JointValues &joints);

    /// max(|x_fk - x_g| / max(1, |x_g|), |v_fk - v_g|), evaluated at the goal's radius.
    double fk_residual(const CscPath &path, const GoalPose &goal);

    /// Same goal with position divided by r and unit radius.
    GoalPose scale_goal(const GoalPose &goal);
    CscPath unscale_path(const CscPath &path, double r);

    /// Levenberg-Marquardt refinement of all five parameters against the FK
    /// residual, keeping d >= 0. Returns the input unchanged if it cannot
    /// improve it.
    CscPath refine_path(const CscPath &path, const GoalPose &goal, int max_iterations = 30);

} // namespace dubins3d

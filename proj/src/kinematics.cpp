#include "dubins3d/kinematics.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace dubins3d
{
    namespace
    {
        void require_finite(const CscPath &p)
        {
            if (!std::isfinite(p.phi1) || !std::isfinite(p.psi1) || !std::isfinite(p.d) || !std::isfinite(p.phi2) ||
                !std::isfinite(p.psi2))
                throw NonFinite("path has non-finite parameters");
        }

        using Residual = Eigen::Matrix<double, 6, 1>;
        using Params = Eigen::Matrix<double, 5, 1>;

        CscPath from_params(const Params &p) { return {p(0), p(1), p(2), p(3), p(4)}; }

        Residual pose_error(const Params &p, const GoalPose &goal)
        {
            const Pose pose = fk_dubins(from_params(p), goal.radius());
            Residual e;
            e.head<3>() = (pose.position - goal.position()) / std::max(1.0, goal.position().norm());
            e.tail<3>() = pose.direction - goal.direction();
            return e;
        }
    } // namespace

    Pose fk_dubins(const CscPath &path, double r)
    {
        require_finite(path);
        if (!std::isfinite(r))
            throw NonFinite("non-finite turning radius");

        const double cf1 = std::cos(path.phi1), sf1 = std::sin(path.phi1);
        const double cp1 = std::cos(path.psi1), sp1 = std::sin(path.psi1);
        const double cf2 = std::cos(path.phi2), sf2 = std::sin(path.phi2);
        const double cp2 = std::cos(path.psi2), sp2 = std::sin(path.psi2);
        const double d = path.d;

        Pose out;
        out.direction = Vec3(sp2 * (cp1 * cf1 * cf2 - sf1 * sf2) + sp1 * cp2 * cf1,
                             sp2 * (cp1 * sf1 * cf2 + cf1 * sf2) + sp1 * cp2 * sf1,
                             cp1 * cp2 - sp1 * sp2 * cf2);

        // Common in-plane reach of the first arc, the segment and the second arc.
        const double reach = sp1 * (d + r * sp2) + r * cp1 * (cf2 * (1.0 - cp2) - 1.0) + r;
        out.position = Vec3(cf1 * reach + r * (cp2 - 1.0) * sf1 * sf2,
                            sf1 * reach - r * (cp2 - 1.0) * cf1 * sf2,
                            cp1 * (d + r * sp2) + r * sp1 * (cf2 * (cp2 - 1.0) + 1.0));
        return out;
    }

    HomTransform dh_transform(int joint_index, double value)
    {
        if (!std::isfinite(value))
            throw NonFinite("non-finite joint value");
        double r = 1.0, alpha = kPi / 2.0, d = 0.0, theta = value;
        switch (joint_index)
        {
        case 1:
        case 2:
        case 4:
        case 5:
            break;
        case 3:
            r = 0.0;
            alpha = 0.0;
            d = value;
            theta = 0.0;
            break;
        default:
            throw std::invalid_argument("joint index must be in 1..5");
        }
        const double ct = std::cos(theta), st = std::sin(theta);
        // cos(pi/2) is not exactly zero in floating point.
        const double ca = (alpha == 0.0) ? 1.0 : 0.0;
        const double sa = (alpha == 0.0) ? 0.0 : 1.0;

        HomTransform a;
        a << ct, -st * ca, st * sa, r * ct,
             st, ct * ca, -ct * sa, r * st,
             0.0, sa, ca, d,
             0.0, 0.0, 0.0, 1.0;
        return a;
    }

    Pose fk_chain(const JointValues &j)
    {
        const HomTransform hand = dh_transform(1, j.theta1) * dh_transform(2, j.theta2) * dh_transform(3, j.d3) *
                                  dh_transform(4, j.theta4) * dh_transform(5, j.theta5);
        return {hand.block<3, 1>(0, 3), hand.block<3, 1>(0, 2)};
    }

    JointValues dubins_to_dh(const CscPath &p)
    {
        return {p.phi1, kPi - p.psi1, p.d, p.phi2 + kPi, kPi - p.psi2};
    }

    CscPath dh_to_dubins(const JointValues &j)
    {
        return canonicalize({j.theta1, kPi - j.theta2, j.d3, j.theta4 - kPi, kPi - j.theta5});
    }

    double fk_residual(const CscPath &path, const GoalPose &goal)
    {
        const Pose pose = fk_dubins(path, goal.radius());
        const double pos = (pose.position - goal.position()).norm() / std::max(1.0, goal.position().norm());
        const double dir = (pose.direction - goal.direction()).norm();
        return std::max(pos, dir);
    }

    GoalPose scale_goal(const GoalPose &goal)
    {
        if (goal.radius() == 1.0)
            return goal;
        return GoalPose(goal.position() / goal.radius(), goal.direction(), 1.0);
    }

    CscPath unscale_path(const CscPath &path, double r)
    {
        CscPath out = path;
        out.d *= r;
        return out;
    }

    CscPath refine_path(const CscPath &path, const GoalPose &goal, int max_iterations)
    {
        Params p(path.phi1, path.psi1, path.d, path.phi2, path.psi2);
        Residual e = pose_error(p, goal);
        double cost = e.squaredNorm();
        double lambda = 1e-6;
        constexpr double h = 1e-7;

        for (int it = 0; it < max_iterations && cost > 1e-30; ++it)
        {
            Eigen::Matrix<double, 6, 5> jac;
            for (int k = 0; k < 5; ++k)
            {
                Params hi = p, lo = p;
                hi(k) += h;
                lo(k) -= h;
                jac.col(k) = (pose_error(hi, goal) - pose_error(lo, goal)) / (2.0 * h);
            }
            const Eigen::Matrix<double, 5, 5> jtj = jac.transpose() * jac;
            const Params g = jac.transpose() * e;

            bool improved = false;
            for (int attempt = 0; attempt < 8; ++attempt)
            {
                Eigen::Matrix<double, 5, 5> damped = jtj;
                damped.diagonal().array() += lambda * (1.0 + jtj.diagonal().array());
                Params trial = p - damped.ldlt().solve(g);
                trial(2) = std::max(trial(2), 0.0);
                const Residual te = pose_error(trial, goal);
                const double tc = te.squaredNorm();
                if (std::isfinite(tc) && tc < cost)
                {
                    p = trial;
                    e = te;
                    cost = tc;
                    lambda = std::max(lambda * 0.1, 1e-12);
                    improved = true;
                    break;
                }
                lambda *= 10.0;
            }
            if (!improved)
                break;
        }
        return from_params(p);
    }

} // namespace dubins3d

#pragma once
// Fixtures shared by the unit tests and the acceptance runner.

#include "dubins3d/core_types.hpp"
#include "dubins3d/kinematics.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace fixtures
{
    using namespace dubins3d;

    inline GoalPose seven_solution_goal()
    {
        return GoalPose({2.64101, -1.78042, -0.371051}, {-0.323321, 0.729589, 0.602631}, 1.0);
    }

    inline CscPath random_path(std::mt19937_64 &rng, double max_d = 4.0)
    {
        std::uniform_real_distribution<double> phi(-kPi, kPi), psi(0.0, kTwoPi), d(0.0, max_d);
        return canonicalize({phi(rng), psi(rng), d(rng), phi(rng), psi(rng)});
    }

    inline GoalPose goal_of(const CscPath &path, double r = 1.0)
    {
        const Pose pose = fk_dubins(path, r);
        return GoalPose(pose.position, pose.direction, r);
    }

    inline GoalPose random_goal(std::mt19937_64 &rng, double half_cube = 4.0)
    {
        std::uniform_real_distribution<double> coord(-half_cube, half_cube);
        std::normal_distribution<double> normal;
        const Vec3 x(coord(rng), coord(rng), coord(rng));
        Vec3 v(normal(rng), normal(rng), normal(rng));
        while (v.norm() < 1e-6)
            v = Vec3(normal(rng), normal(rng), normal(rng));
        return GoalPose(x, v, 1.0);
    }

    /// z-component of x cross v, relative to the goal size.
    inline double planar_discriminant(const GoalPose &g)
    {
        const Vec3 &x = g.position(), &v = g.direction();
        return std::abs(x.x() * v.y() - x.y() * v.x()) / (1.0 + x.norm());
    }

    inline bool on_start_axis(const GoalPose &g, double eps)
    {
        const Vec3 &x = g.position(), &v = g.direction();
        return std::hypot(x.x(), x.y()) < eps && std::hypot(v.x(), v.y()) < eps;
    }

    inline bool contains(const std::vector<CscPath> &paths, const CscPath &p, const Tolerances &tol = {})
    {
        return std::any_of(paths.begin(), paths.end(), [&](const CscPath &q) { return is_duplicate(p, q, tol); });
    }

    /// Planar CSC solution at unit radius in (u, z) coordinates: start at the
    /// origin heading +z. Turning senses are +1 for counter-clockwise.
    struct PlanarCsc
    {
        int first_turn = 0;
        int second_turn = 0;
        double arc1 = 0.0;
        double straight = 0.0;
        double arc2 = 0.0;
        double u1 = 0.0, z1 = 0.0; ///< end of the first arc
        double u_end = 0.0, z_end = 0.0, heading_end = 0.0;
    };

    namespace detail
    {
        inline double wrap_arc(double a)
        {
            a = std::fmod(a, kTwoPi);
            if (a < 0.0)
                a += kTwoPi;
            return (a > kTwoPi - 1e-12) ? 0.0 : a;
        }

        inline void advance(double &u, double &z, double &heading, int turn, double angle)
        {
            const double cu = u - turn * std::sin(heading), cz = z + turn * std::cos(heading);
            heading += turn * angle;
            u = cu + turn * std::sin(heading);
            z = cz - turn * std::cos(heading);
        }
    } // namespace detail

    /// LSL, RSR, LSR and RSL constructions by tangent lines between turning
    /// circles, each kept when it reproduces the goal.
    inline std::vector<PlanarCsc> planar_csc(double goal_u, double goal_z, double goal_heading)
    {
        const double start_heading = kPi / 2.0;
        std::vector<PlanarCsc> out;
        for (int s1 : {1, -1})
            for (int s2 : {1, -1})
            {
                const double c1u = -s1 * std::sin(start_heading), c1z = s1 * std::cos(start_heading);
                const double c2u = goal_u - s2 * std::sin(goal_heading), c2z = goal_z + s2 * std::cos(goal_heading);
                const double du = c2u - c1u, dz = c2z - c1z;
                const double dist = std::hypot(du, dz);
                double line = std::atan2(dz, du), straight = dist;
                if (s1 != s2)
                {
                    if (dist < 2.0)
                        continue;
                    straight = std::sqrt(dist * dist - 4.0);
                    line += s1 * std::atan2(2.0, straight);
                }
                PlanarCsc c;
                c.first_turn = s1;
                c.second_turn = s2;
                c.arc1 = detail::wrap_arc(s1 * (line - start_heading));
                c.straight = straight;
                c.arc2 = detail::wrap_arc(s2 * (goal_heading - line));
                double u = 0.0, z = 0.0, h = start_heading;
                detail::advance(u, z, h, s1, c.arc1);
                c.u1 = u;
                c.z1 = z;
                u += straight * std::cos(h);
                z += straight * std::sin(h);
                detail::advance(u, z, h, s2, c.arc2);
                c.u_end = u;
                c.z_end = z;
                c.heading_end = h;
                if (std::hypot(u - goal_u, z - goal_z) > 1e-9 || angle_distance(h, goal_heading) > 1e-9)
                    continue;
                const bool seen = std::any_of(out.begin(), out.end(), [&](const PlanarCsc &o) {
                    return std::abs(o.arc1 - c.arc1) < 1e-9 && std::abs(o.straight - c.straight) < 1e-9 &&
                           std::abs(o.arc2 - c.arc2) < 1e-9 && std::hypot(o.u1 - c.u1, o.z1 - c.z1) < 1e-9;
                });
                if (!seen)
                    out.push_back(c);
            }
        return out;
    }

    /// Random goal in a vertical plane through the start, at least @p min_range away.
    struct PlanarGoal
    {
        GoalPose goal;
        Vec3 in_plane;       ///< horizontal unit vector spanning the plane with +z
        double u, z, heading; ///< 2D description
    };

    inline PlanarGoal random_planar_goal(std::mt19937_64 &rng, double min_range, double max_range)
    {
        std::uniform_real_distribution<double> angle(-kPi, kPi), range(min_range, max_range);
        const double a = angle(rng), rho = range(rng), elevation = angle(rng), heading = angle(rng);
        const Vec3 u(std::cos(a), std::sin(a), 0.0);
        const double pu = rho * std::cos(elevation), pz = rho * std::sin(elevation);
        const Vec3 x = pu * u + pz * Vec3::UnitZ();
        const Vec3 v = std::cos(heading) * u + std::sin(heading) * Vec3::UnitZ();
        return {GoalPose(x, v, 1.0), u, pu, pz, heading};
    }

} // namespace fixtures

#include "dubins3d/special_cases.hpp"

#include "dubins3d/backsub.hpp"
#include "dubins3d/elimination.hpp"
#include "dubins3d/kinematics.hpp"
#include "dubins3d/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace dubins3d
{
    namespace
    {
        // In-plane equations for u = (c2, s2, s5, c5) with s4 = 0, c4 = sigma:
        //   w c2 + vz s2 - sigma s5 = 0
        //   vz c2 - w s2 - c5 = 0
        //   (xi - 1) c2 + xz s2 - sigma c5 = sigma + 1
        //   xz c2 - (xi - 1) s2 + s5 = -d3
        struct InPlane
        {
            Eigen::Matrix4d m;
            Eigen::Vector4d constant;
            Eigen::Vector4d per_d3;
            double w = 0.0, xi = 0.0, xz = 0.0, vz = 0.0;
        };

        InPlane in_plane_system(const GoalPose &g, double theta1, int sigma)
        {
            const double c1 = std::cos(theta1), s1 = std::sin(theta1);
            InPlane s;
            s.w = g.direction().x() * c1 + g.direction().y() * s1;
            s.xi = g.position().x() * c1 + g.position().y() * s1;
            s.xz = g.position().z();
            s.vz = g.direction().z();
            s.m << s.w, s.vz, -sigma, 0.0,
                   s.vz, -s.w, 0.0, -1.0,
                   s.xi - 1.0, s.xz, 0.0, -sigma,
                   s.xz, -(s.xi - 1.0), 1.0, 0.0;
            s.constant << 0.0, 0.0, sigma + 1.0, 0.0;
            s.per_d3 << 0.0, 0.0, 0.0, -1.0;
            return s;
        }

        JointValues joints_from(double theta1, int sigma, double d3, double c2, double s2, double s5, double c5)
        {
            return {theta1, std::atan2(s2, c2), d3, sigma > 0 ? 0.0 : kPi, std::atan2(s5, c5)};
        }

        std::vector<JointValues> branch_candidates(const GoalPose &g, double theta1, int sigma)
        {
            std::vector<JointValues> out;
            const InPlane s = in_plane_system(g, theta1, sigma);

            if (const auto poly = planar_d3_polynomial(g, theta1, sigma); poly && poly->degree() >= 1)
            {
                const Eigen::PartialPivLU<Eigen::Matrix4d> lu(s.m);
                for (const RealRoot &root : real_roots(*poly))
                {
                    const Eigen::Vector4d u = lu.solve(s.constant + root.value * s.per_d3);
                    out.push_back(joints_from(theta1, sigma, root.value, u(0), u(1), u(2), u(3)));
                }
            }

            // Direct route, also valid when the system above is singular:
            // a c2 + b s2 = sigma + 1 on the unit circle.
            const double a = s.xi - 1.0 - sigma * s.vz;
            const double b = s.xz + sigma * s.w;
            const double rho = std::hypot(a, b);
            const double ratio = (sigma + 1.0) / std::max(rho, 1e-300);
            if (rho > 1e-12 && std::abs(ratio) <= 1.0 + 1e-9)
            {
                const double base = std::atan2(b, a);
                const double spread = std::acos(std::clamp(ratio, -1.0, 1.0));
                for (double theta2 : {base + spread, base - spread})
                {
                    const double c2 = std::cos(theta2), s2 = std::sin(theta2);
                    const double s5 = sigma * (s.w * c2 + s.vz * s2);
                    const double c5 = s.vz * c2 - s.w * s2;
                    const double d3 = -s5 - s.xz * c2 + (s.xi - 1.0) * s2;
                    out.push_back(joints_from(theta1, sigma, d3, c2, s2, s5, c5));
                }
            }
            return out;
        }

        std::vector<double> planar_headings(const GoalPose &g, const Tolerances &tol)
        {
            const Vec3 &x = g.position(), &v = g.direction();
            double a = 0.0;
            if (std::hypot(x.x(), x.y()) > tol.singular_det * (1.0 + x.norm()))
                a = std::atan2(x.y(), x.x());
            else if (std::hypot(v.x(), v.y()) > tol.singular_det)
                a = std::atan2(v.y(), v.x());
            return {a, a + kPi};
        }
    } // namespace

    CaseTag detect(const GoalPose &g, const Tolerances &tol)
    {
        const Vec3 &x = g.position(), &v = g.direction();
        const double scale = 1.0 + x.norm();
        const bool position_on_axis = std::hypot(x.x(), x.y()) < tol.singular_det * scale;
        const bool heading_on_axis = std::hypot(v.x(), v.y()) < tol.singular_det;
        if (position_on_axis && heading_on_axis)
            return CaseTag::InfiniteFamily;
        if (std::abs(x.x() * v.y() - x.y() * v.x()) < tol.singular_det * scale)
            return CaseTag::Planar;
        return CaseTag::General;
    }

    SolutionSet solve_straight(const GoalPose &g)
    {
        SolutionSet out;
        out.kind = SolutionKind::StraightLine;
        out.diagnostics.case_tag = CaseTag::StraightLine;
        out.paths.push_back({0.0, 0.0, g.position().norm(), 0.0, 0.0});
        return out;
    }

    std::vector<double> even_theta1_samples(std::size_t n)
    {
        std::vector<double> out(n);
        for (std::size_t k = 0; k < n; ++k)
            out[k] = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
        return out;
    }

    std::optional<UniPoly> planar_d3_polynomial(const GoalPose &g, double theta1, int wrist_sign)
    {
        const InPlane s = in_plane_system(g, theta1, wrist_sign);
        Eigen::JacobiSVD<Eigen::Matrix4d> svd(s.m);
        const auto &sv = svd.singularValues();
        if (sv(3) < 1e-10 * sv(0))
            return std::nullopt;

        const Eigen::PartialPivLU<Eigen::Matrix4d> lu(s.m);
        const double eta = g.position().x() * std::sin(theta1) - g.position().y() * std::cos(theta1);
        const double target = (s.xi - 1.0) * (s.xi - 1.0) + s.xz * s.xz + eta * eta;
        const double scale = 1.0 + g.position().norm();
        std::vector<std::pair<double, double>> samples;
        for (int k = -2; k <= 2; ++k)
        {
            const double d3 = k * scale;
            const Eigen::Vector4d u = lu.solve(s.constant + d3 * s.per_d3);
            const double first = wrist_sign * (1.0 + u(3)) + 1.0;
            const double second = d3 + u(2);
            samples.emplace_back(d3, first * first + second * second - target);
        }
        return interpolate(samples).trimmed(1e-12);
    }

    std::vector<CscPath> planar_branch(const GoalPose &g, double theta1, int wrist_sign, const Tolerances &tol)
    {
        const auto joints = branch_candidates(g, theta1, wrist_sign);
        return assemble(g, joints, tol).paths;
    }

    SolutionSet solve_family(const GoalPose &g, std::span<const double> theta1_samples, const Tolerances &tol)
    {
        const double dist = g.position().norm();
        const bool aligned = g.direction().z() > 0.0;
        const double probe = theta1_samples.empty() ? 0.0 : theta1_samples.front();

        std::vector<int> signs;
        if (aligned && dist > 2.0 + tol.singular_det)
            signs = {1, -1};
        else if (!aligned && dist <= 2.0 + tol.singular_det && !planar_branch(g, probe, 1, tol).empty())
            signs = {1};
        else
        {
            for (int sigma : {1, -1})
                if (!planar_branch(g, probe, sigma, tol).empty())
                    signs.push_back(sigma);
        }
        if (signs.empty())
            throw NoValidBranch("no wrist branch reaches this goal");

        FamilyDescriptor fam;
        for (int sigma : signs)
            fam.theta4_choices.push_back(sigma > 0 ? 0.0 : kPi);
        fam.theta1_samples.assign(theta1_samples.begin(), theta1_samples.end());
        const bool straight_reachable = aligned && g.position().z() > 0.0;
        const CscPath straight{0.0, 0.0, dist, 0.0, 0.0};
        fam.generator = [g, tol, signs, straight_reachable, straight](double theta1, std::size_t branch) {
            if (branch >= signs.size())
                return std::vector<CscPath>{};
            auto paths = planar_branch(g, theta1, signs[branch], tol);
            if (straight_reachable)
                for (CscPath &p : paths)
                    if (is_duplicate(p, straight, tol))
                        p = straight;
            return paths;
        };

        SolutionSet out;
        out.kind = SolutionKind::InfiniteFamily;
        out.diagnostics.case_tag = CaseTag::InfiniteFamily;
        for (double theta1 : theta1_samples)
        {
            for (std::size_t b = 0; b < signs.size(); ++b)
            {
                const auto paths = fam.generator(theta1, b);
                if (paths.empty())
                    continue;
                fam.representatives.push_back(paths.front());
                if (std::none_of(out.paths.begin(), out.paths.end(),
                                 [&](const CscPath &p) { return is_duplicate(p, paths.front(), tol); }))
                    out.paths.push_back(paths.front());
            }
        }
        if (fam.representatives.empty())
            throw NoValidBranch("no sampled base rotation yields a valid path");

        if (straight_reachable)
        {
            if (std::none_of(out.paths.begin(), out.paths.end(),
                             [&](const CscPath &p) { return is_duplicate(p, straight, tol); }))
                out.paths.push_back(straight);
        }
        sort_by_length(out.paths, g.radius());
        out.family = std::move(fam);
        return out;
    }

    SolutionSet solve_planar(const GoalPose &g, const Tolerances &tol)
    {
        std::vector<JointValues> joints;
        for (double theta1 : planar_headings(g, tol))
            for (int sigma : {1, -1})
            {
                const auto c = branch_candidates(g, theta1, sigma);
                joints.insert(joints.end(), c.begin(), c.end());
            }
        SolutionSet out = assemble(g, joints, tol, nullptr);
        out.diagnostics.case_tag = CaseTag::Planar;
        out.diagnostics.root_count = static_cast<int>(joints.size());
        return out;
    }

    std::optional<GoalPose> nearest_planar_goal(const GoalPose &g)
    {
        const Vec3 &x = g.position(), &v = g.direction();
        const double xh = std::hypot(x.x(), x.y()), vh = std::hypot(v.x(), v.y());
        if (xh < 1e-12 && vh < 1e-12)
            return std::nullopt;
        if (xh < 1e-12 || vh < 1e-12)
            return g;
        // Signed angle from the horizontal position to the horizontal heading,
        // reduced so that parallel and anti-parallel both count as aligned.
        double angle = std::atan2(x.x() * v.y() - x.y() * v.x(), x.x() * v.x() + x.y() * v.y());
        if (angle > kPi / 2.0)
            angle -= kPi;
        else if (angle < -kPi / 2.0)
            angle += kPi;
        const Eigen::AngleAxisd turn(xh <= vh ? angle : -angle, Vec3::UnitZ());
        if (xh <= vh)
            return GoalPose(turn * x, v, 1.0);
        return GoalPose(x, turn * v, 1.0);
    }

    std::vector<CscPath> continue_from_planar(const GoalPose &g, const Tolerances &tol)
    {
        const auto planar = nearest_planar_goal(g);
        if (!planar)
            return {};
        const SolutionSet seeds = solve_planar(*planar, tol);

        auto pose_error = [&g](const Eigen::Matrix<double, 5, 1> &p) {
            const Pose pose = fk_dubins({p(0), p(1), p(2), p(3), p(4)}, 1.0);
            Eigen::Matrix<double, 6, 1> e;
            e << pose.position - g.position(), pose.direction - g.direction();
            return e;
        };

        std::vector<CscPath> out;
        for (const CscPath &seed : seeds.paths)
        {
            Eigen::Matrix<double, 5, 1> p(seed.phi1, seed.psi1, seed.d, seed.phi2, seed.psi2);
            Eigen::Matrix<double, 6, 5> jac;
            for (int k = 0; k < 5; ++k)
            {
                Eigen::Matrix<double, 5, 1> hi = p, lo = p;
                hi(k) += 1e-6;
                lo(k) -= 1e-6;
                jac.col(k) = (pose_error(hi) - pose_error(lo)) / 2e-6;
            }
            Eigen::JacobiSVD<Eigen::Matrix<double, 6, 5>> svd(jac, Eigen::ComputeFullV);
            const Eigen::Matrix<double, 5, 1> weak = svd.matrixV().col(4);

            for (double step : {0.0, 3e-3, -3e-3, 3e-2, -3e-2, 1e-1, -1e-1})
            {
                const Eigen::Matrix<double, 5, 1> s = p + step * weak;
                CscPath q = canonicalize(refine_path({s(0), s(1), std::max(s(2), 0.0), s(3), s(4)}, g, 60), tol.psi_eps);
                if (q.d <= 1e-9)
                    q.d = 0.0;
                if (!(fk_residual(q, g) < tol.fk_residual))
                    continue;
                if (std::none_of(out.begin(), out.end(), [&](const CscPath &o) { return is_duplicate(o, q, tol); }))
                    out.push_back(q);
            }
        }
        return out;
    }

    SolutionSet solve_unknown_singular(const GoalPose &g, const Tolerances &tol)
    {
        const Vec3 &x = g.position(), &v = g.direction();
        // Moving the position across the heading's vertical plane changes
        // x_x v_y - x_y v_x at first order.
        Vec3 dir(-v.y(), v.x(), 0.0);
        if (dir.norm() < 1e-6)
            dir = Vec3(-x.y(), x.x(), 0.0);
        if (dir.norm() < 1e-6)
            dir = Vec3(1.0, 0.0, 0.0);
        dir.normalize();
        const double delta = 1e-7 * std::max(1.0, x.norm());

        SolutionSet out;
        out.kind = SolutionKind::Discrete;
        out.diagnostics.case_tag = CaseTag::UnknownSingular;
        out.diagnostics.perturbation_fallback = true;

        for (double sign : {1.0, -1.0})
        {
            SolutionSet nudged;
            try
            {
                nudged = solve_general(GoalPose(x + sign * delta * dir, v, 1.0), tol);
            }
            catch (const Error &e)
            {
                out.diagnostics.notes.push_back(std::string("perturbed solve failed: ") + e.what());
                continue;
            }
            for (const CandidateDiagnostic &cd : nudged.diagnostics.candidates)
                if (cd.rejection != Rejection::None && cd.rejection != Rejection::Duplicate)
                    out.diagnostics.candidates.push_back(cd);
            for (const CscPath &p : nudged.paths)
            {
                CscPath q = canonicalize(refine_path(p, g), tol.psi_eps);
                if (q.d <= 1e-9)
                    q.d = 0.0;
                const double r = fk_residual(q, g);
                CandidateDiagnostic cd;
                cd.d3 = q.d;
                cd.fk_residual = r;
                cd.refined = true;
                if (!(r < tol.fk_residual) || q.d < 0.0)
                    cd.rejection = Rejection::ResidualTooLarge;
                else if (std::any_of(out.paths.begin(), out.paths.end(),
                                     [&](const CscPath &o) { return is_duplicate(o, q, tol); }))
                    cd.rejection = Rejection::Duplicate;
                else
                    out.paths.push_back(q);
                out.diagnostics.candidates.push_back(cd);
            }
            if (!out.paths.empty())
                break;
        }
        sort_by_length(out.paths, g.radius());
        return out;
    }

} // namespace dubins3d

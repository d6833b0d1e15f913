#include "dubins3d/solver.hpp"

#include "dubins3d/backsub.hpp"
#include "dubins3d/elimination.hpp"
#include "dubins3d/kinematics.hpp"
#include "dubins3d/special_cases.hpp"

#include <algorithm>
#include <chrono>
#include <string>

namespace dubins3d
{
    namespace
    {
        constexpr double kConsistencyNote = 1e-6;
        // Relative planar discriminant below which double roots are close
        // enough to merge numerically.
        constexpr double kNearPlanarBand = 5e-2;

        void merge_near_planar(SolutionSet &set, const GoalPose &unit_goal, const Tolerances &tol)
        {
            const Vec3 &x = unit_goal.position(), &v = unit_goal.direction();
            if (std::abs(x.x() * v.y() - x.y() * v.x()) >= kNearPlanarBand * (1.0 + x.norm()))
                return;
            int added = 0;
            for (const CscPath &p : continue_from_planar(unit_goal, tol))
            {
                if (std::any_of(set.paths.begin(), set.paths.end(), [&](const CscPath &o) { return is_duplicate(o, p, tol); }))
                    continue;
                set.paths.push_back(p);
                ++added;
            }
            if (added > 0)
            {
                sort_by_length(set.paths, 1.0);
                set.diagnostics.notes.push_back("near-planar continuation added " + std::to_string(added) + " path(s)");
            }
        }

        SolutionSet fallback(const GoalPose &unit_goal, const Tolerances &tol, const std::string &why)
        {
            SolutionSet out = solve_unknown_singular(unit_goal, tol);
            out.diagnostics.notes.insert(out.diagnostics.notes.begin(), why);
            if (out.paths.empty())
                out.kind = SolutionKind::SingularUnhandled;
            return out;
        }

        void rescale(SolutionSet &set, double r)
        {
            if (r == 1.0)
                return;
            for (CscPath &p : set.paths)
                p = unscale_path(p, r);
            if (!set.family)
                return;
            for (CscPath &p : set.family->representatives)
                p = unscale_path(p, r);
            set.family->generator = [inner = std::move(set.family->generator), r](double theta1, std::size_t branch) {
                auto paths = inner(theta1, branch);
                for (CscPath &p : paths)
                    p = unscale_path(p, r);
                return paths;
            };
        }
    } // namespace

    SolutionSet solve_general(const GoalPose &unit_goal, const Tolerances &tol)
    {
        const PQSystem sys = build_pq(unit_goal);
        const Reduction red = reduce_to_sigma(sys);

        Diagnostics diag;
        diag.case_tag = CaseTag::General;
        diag.q_condition = red.q_condition;
        const std::vector<double> roots = find_theta4_roots(red.sigma, &diag.characteristic_degree);
        diag.root_count = static_cast<int>(roots.size());

        std::vector<JointValues> joints;
        std::vector<std::pair<double, double>> mismatch;
        for (double theta4 : roots)
        {
            const auto arms = null_space_candidates(expand_numeric(red.sigma.at_angle(theta4)), tol, false);
            for (const ArmSolution &arm : arms)
            {
                const BaseSolution base = base_candidate(sys, arm.d3, theta4, arm.theta5);
                joints.push_back({base.theta1, base.theta2, arm.d3, theta4, arm.theta5});
                mismatch.emplace_back(arm.inconsistency, std::max(base.residual, base.inconsistency));
            }
        }

        SolutionSet out = assemble(unit_goal, joints, tol, &diag);
        for (std::size_t i = 0; i < diag.candidates.size(); ++i)
        {
            CandidateDiagnostic &cd = diag.candidates[i];
            if (cd.rejection != Rejection::ResidualTooLarge)
                continue;
            if (mismatch[i].first > kConsistencyNote)
                cd.rejection = Rejection::InconsistentNullVector;
            else if (mismatch[i].second > kConsistencyNote)
                cd.rejection = Rejection::InconsistentSolution;
        }
        out.diagnostics = std::move(diag);
        return out;
    }

    SolutionSet solve(const GoalPose &goal, const Tolerances &tol)
    {
        tol.validate();
        const auto start = std::chrono::steady_clock::now();

        const GoalPose unit = scale_goal(goal);
        if (unit.position().norm() < 1e-12 && unit.direction().z() > 1.0 - 1e-12)
            throw InvalidGoal("goal coincides with the start pose");

        SolutionSet out;
        switch (detect(unit, tol))
        {
        case CaseTag::InfiniteFamily:
            try
            {
                out = solve_family(unit, even_theta1_samples(8), tol);
            }
            catch (const NoValidBranch &e)
            {
                out = fallback(unit, tol, e.what());
            }
            break;
        case CaseTag::Planar:
            out = solve_planar(unit, tol);
            if (out.paths.empty())
                out = fallback(unit, tol, "planar handler found no path");
            break;
        default:
            try
            {
                out = solve_general(unit, tol);
                merge_near_planar(out, unit, tol);
                if (out.paths.empty())
                    out = fallback(unit, tol, "general pipeline found no path");
            }
            catch (const SingularQ &e)
            {
                out = fallback(unit, tol, e.what());
            }
            catch (const IdenticallyZeroDeterminant &e)
            {
                out = fallback(unit, tol, e.what());
            }
            break;
        }

        rescale(out, goal.radius());
        out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return out;
    }

    ShortestPath shortest(const GoalPose &goal, const Tolerances &tol)
    {
        const SolutionSet set = solve(goal, tol);
        if (set.paths.empty())
            throw NoSolution("no CSC path reaches this goal");
        ShortestPath out;
        out.path = set.paths.front();
        out.kind = set.kind;
        if (set.kind == SolutionKind::InfiniteFamily)
            out.sampled = !(out.path.psi1 == 0.0 && out.path.psi2 == 0.0);
        return out;
    }

} // namespace dubins3d

#include "dubins3d/core_types.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace dubins3d
{
    void Tolerances::validate() const
    {
        for (double v : {fk_residual, singular_det, unit_circle, dedup_angle, dedup_length, psi_eps})
        {
            if (!(v > 0.0) || !std::isfinite(v))
                throw std::invalid_argument("tolerances must be positive and finite");
        }
    }

    GoalPose::GoalPose(const Vec3 &position, const Vec3 &direction, double radius)
        : position_(position), direction_(direction), radius_(radius)
    {
        if (!position.allFinite() || !direction.allFinite() || !std::isfinite(radius))
            throw InvalidGoal("goal pose has non-finite components");
        if (!(radius > 0.0))
            throw InvalidGoal("turning radius must be positive");
        const double n = direction.norm();
        if (n < 1e-12)
            throw InvalidGoal("goal direction has zero length");
        direction_ /= n;
    }

    double wrap_pi(double angle)
    {
        double a = std::fmod(angle, kTwoPi);
        if (a <= -kPi)
            a += kTwoPi;
        else if (a > kPi)
            a -= kTwoPi;
        return a;
    }

    double wrap_two_pi(double angle)
    {
        double a = std::fmod(angle, kTwoPi);
        if (a < 0.0)
            a += kTwoPi;
        if (a >= kTwoPi)
            a = 0.0;
        return a;
    }

    double angle_distance(double a, double b) { return std::abs(wrap_pi(a - b)); }

    CscPath canonicalize(const CscPath &path, double psi_eps)
    {
        for (double v : {path.phi1, path.psi1, path.d, path.phi2, path.psi2})
        {
            if (!std::isfinite(v))
                throw NonFinite("path has non-finite parameters");
        }
        CscPath out{wrap_pi(path.phi1), wrap_two_pi(path.psi1), path.d, wrap_pi(path.phi2), wrap_two_pi(path.psi2)};
        // A bend of 2pi - eps ends where a bend of -eps does.
        if (out.psi1 < psi_eps || kTwoPi - out.psi1 < psi_eps)
        {
            out.psi1 = 0.0;
            out.phi1 = 0.0;
        }
        if (out.psi2 < psi_eps || kTwoPi - out.psi2 < psi_eps)
        {
            out.psi2 = 0.0;
            out.phi2 = 0.0;
        }
        return out;
    }

    double parameter_distance(const CscPath &a, const CscPath &b)
    {
        return std::max({angle_distance(a.phi1, b.phi1), angle_distance(a.psi1, b.psi1), std::abs(a.d - b.d),
                         angle_distance(a.phi2, b.phi2), angle_distance(a.psi2, b.psi2)});
    }

    bool is_duplicate(const CscPath &a, const CscPath &b, const Tolerances &tol)
    {
        return angle_distance(a.phi1, b.phi1) < tol.dedup_angle && angle_distance(a.psi1, b.psi1) < tol.dedup_angle &&
               angle_distance(a.phi2, b.phi2) < tol.dedup_angle && angle_distance(a.psi2, b.psi2) < tol.dedup_angle &&
               std::abs(a.d - b.d) < tol.dedup_length;
    }

    double path_length(const CscPath &path, double r) { return r * (path.psi1 + path.psi2) + path.d; }

    void sort_by_length(std::vector<CscPath> &paths, double r)
    {
        std::stable_sort(paths.begin(), paths.end(), [r](const CscPath &a, const CscPath &b) {
            const double la = path_length(a, r);
            const double lb = path_length(b, r);
            if (la != lb)
                return la < lb;
            return std::tie(a.phi1, a.psi1, a.d, a.phi2, a.psi2) < std::tie(b.phi1, b.psi1, b.d, b.phi2, b.psi2);
        });
    }

    std::string to_string(SolutionKind kind)
    {
        switch (kind)
        {
        case SolutionKind::Discrete:
            return "discrete";
        case SolutionKind::StraightLine:
            return "straight_line";
        case SolutionKind::InfiniteFamily:
            return "infinite_family";
        case SolutionKind::SingularUnhandled:
            return "singular_unhandled";
        }
        return "unknown";
    }

    std::string to_string(CaseTag tag)
    {
        switch (tag)
        {
        case CaseTag::General:
            return "general";
        case CaseTag::StraightLine:
            return "straight_line";
        case CaseTag::InfiniteFamily:
            return "infinite_family";
        case CaseTag::Planar:
            return "planar";
        case CaseTag::UnknownSingular:
            return "unknown_singular";
        }
        return "unknown";
    }

    std::string to_string(Rejection reason)
    {
        switch (reason)
        {
        case Rejection::None:
            return "accepted";
        case Rejection::EmptyNullSpace:
            return "empty_null_space";
        case Rejection::InconsistentNullVector:
            return "inconsistent_null_vector";
        case Rejection::InconsistentSolution:
            return "inconsistent_solution";
        case Rejection::NegativeExtension:
            return "negative_extension";
        case Rejection::ResidualTooLarge:
            return "residual_too_large";
        case Rejection::Duplicate:
            return "duplicate";
        }
        return "unknown";
    }

} // namespace dubins3d

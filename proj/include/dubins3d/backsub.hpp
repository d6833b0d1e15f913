#pragma once
/**
 * @file   backsub.hpp
 * @brief  Recovery of full joint solutions from roots of the characteristic
 *         polynomial, and assembly into validated CSC paths.
 */

#include "dubins3d/core_types.hpp"
#include "dubins3d/elimination.hpp"

#include <span>
#include <vector>

namespace dubins3d
{
    class EmptyNullSpace : public Error
    {
      public:
        using Error::Error;
    };

    class InconsistentNullVector : public Error
    {
      public:
        using Error::Error;
    };

    class InconsistentSolution : public Error
    {
      public:
        using Error::Error;
    };

    /// 2 atan(x4), in (-pi, pi).
    double theta4_from_root(double x4);

    struct ArmSolution
    {
        double d3 = 0.0;
        double theta5 = 0.0;
        /// Largest mismatch between a product slot of the null vector and the
        /// product of its factors (0 for an exact monomial vector).
        double inconsistency = 0.0;
    };

    /// Null vectors of a numeric 12x12 block matrix, normalized so the
    /// constant slot is 1. Singular values below 1e-8 sigma_max count as null;
    /// when @p strict is false the smallest singular vector is always used, the
    /// second one too if its singular value is below 1e-3 sigma_max, and
    /// inconsistent vectors are returned with their mismatch instead of dropped.
    std::vector<ArmSolution> null_space_candidates(const Sigma12Numeric &m, const Tolerances &tol, bool strict);

    /// (d3, theta5) pairs at a root x4. Throws EmptyNullSpace when the matrix
    /// has no numerical null space, InconsistentNullVector when no null vector
    /// is a consistent monomial vector.
    std::vector<ArmSolution> solve_d3_theta5(const Sigma12 &s12, double x4, const Tolerances &tol);

    struct BaseSolution
    {
        double theta1 = 0.0;
        double theta2 = 0.0;
        double residual = 0.0;      ///< least-squares residual relative to 1 + |rhs|
        double inconsistency = 0.0; ///< unit-circle and product-slot mismatch
    };

    /// Least squares over all 14 equations; never throws.
    BaseSolution base_candidate(const PQSystem &sys, double d3, double theta4, double theta5);

    /// As base_candidate, but throws InconsistentSolution unless the residual
    /// and every consistency check pass.
    BaseSolution solve_theta12(const PQSystem &sys, double d3, double theta4, double theta5, const Tolerances &tol);

    /// theta4 values where det Sigma12 vanishes. Roots of the characteristic
    /// polynomial in the x4 chart and in the half-turn chart (each restricted
    /// to |x| <= 1) seed small windows in theta4 in which the determinant is
    /// bracketed and solved directly. @p degree receives the larger of the two
    /// chart polynomial degrees.
    std::vector<double> find_theta4_roots(const SigmaMatrix &sigma, int *degree = nullptr);

    /// Candidates become paths: d3 < -1e-6 is rejected and d3 <= 1e-9 snapped
    /// to 0; paths with FK residual in [tol, 0.1) are refined once and kept if
    /// they stay close; survivors are canonicalized, deduplicated and sorted.
    /// @p goal must have unit radius. Per-candidate outcomes go to @p diagnostics.
    SolutionSet assemble(const GoalPose &goal, std::span<const JointValues> candidates, const Tolerances &tol,
                         Diagnostics *diagnostics = nullptr);

} // namespace dubins3d

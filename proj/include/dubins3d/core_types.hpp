#pragma once
/**
 * @file   core_types.hpp
 * @brief  Value types shared by every stage of the 3D CSC Dubins solver.
 *
 * The start pose is fixed at the origin heading along +z. A goal is a position
 * and a unit heading; a CSC path is the tuple (phi1, psi1, d, phi2, psi2) where
 * psi_i is the bending angle of arc i and phi_i the orientation of its plane.
 */

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dubins3d
{
    using Vec3 = Eigen::Vector3d;

    inline constexpr double kPi = 3.14159265358979323846;
    inline constexpr double kTwoPi = 2.0 * kPi;

    /*───────────────────────────────────────────────────────────────────────*
     * Errors
     *───────────────────────────────────────────────────────────────────────*/

    /// Base of every error the library throws.
    class Error : public std::runtime_error
    {
      public:
        using std::runtime_error::runtime_error;
    };

    class NonFinite : public Error
    {
      public:
        using Error::Error;
    };

    class InvalidGoal : public Error
    {
      public:
        using Error::Error;
    };

    class NoSolution : public Error
    {
      public:
        using Error::Error;
    };

    /*───────────────────────────────────────────────────────────────────────*
     * Tolerances
     *───────────────────────────────────────────────────────────────────────*/

    struct Tolerances
    {
        double fk_residual = 1e-6;  ///< acceptance bound on fk_residual
        double singular_det = 1e-9; ///< special-case manifold detection (relative)
        double unit_circle = 1e-6;  ///< |s^2 + c^2 - 1| checks
        double dedup_angle = 1e-6;
        double dedup_length = 1e-6;
        double psi_eps = 1e-9; ///< arcs shorter than this are degenerate

        /// Throws std::invalid_argument unless every field is positive and finite.
        void validate() const;
    };

    /*───────────────────────────────────────────────────────────────────────*
     * Poses and paths
     *───────────────────────────────────────────────────────────────────────*/

    /// Goal position and heading for a vehicle with minimum turning radius r.
    class GoalPose
    {
      public:
        /// Normalizes @p direction. Throws InvalidGoal on non-finite input,
        /// a zero direction or r <= 0.
        GoalPose(const Vec3 &position, const Vec3 &direction, double radius = 1.0);

        const Vec3 &position() const noexcept { return position_; }
        const Vec3 &direction() const noexcept { return direction_; }
        double radius() const noexcept { return radius_; }

      private:
        Vec3 position_;
        Vec3 direction_;
        double radius_;
    };

    struct CscPath
    {
        double phi1 = 0.0;
        double psi1 = 0.0;
        double d = 0.0;
        double phi2 = 0.0;
        double psi2 = 0.0;

        bool operator==(const CscPath &) const = default;
    };

    /// DH-side joint values of the RRPRR arm.
    struct JointValues
    {
        double theta1 = 0.0;
        double theta2 = 0.0;
        double d3 = 0.0;
        double theta4 = 0.0;
        double theta5 = 0.0;
    };

    /// Wraps into (-pi, pi].
    double wrap_pi(double angle);
    /// Wraps into [0, 2pi).
    double wrap_two_pi(double angle);
    /// Smallest absolute difference between two angles modulo 2pi.
    double angle_distance(double a, double b);

    /// Wraps angles into their canonical ranges (psi in [0, 2pi), phi in
    /// (-pi, pi]) and zeroes phi for degenerate arcs. Throws NonFinite.
    CscPath canonicalize(const CscPath &path, double psi_eps = Tolerances{}.psi_eps);

    /// Largest wrapped angle difference or |delta d| between two paths.
    double parameter_distance(const CscPath &a, const CscPath &b);

    bool is_duplicate(const CscPath &a, const CscPath &b, const Tolerances &tol);

    /// r (psi1 + psi2) + d
    double path_length(const CscPath &path, double r);

    /// Ascending by length, ties broken by the lexicographic tuple.
    void sort_by_length(std::vector<CscPath> &paths, double r);

    /*───────────────────────────────────────────────────────────────────────*
     * Solution sets
     *───────────────────────────────────────────────────────────────────────*/

    enum class SolutionKind
    {
        Discrete,
        StraightLine,
        InfiniteFamily,
        SingularUnhandled,
    };

    enum class CaseTag
    {
        General,
        StraightLine,
        InfiniteFamily,
        Planar,
        UnknownSingular,
    };

    std::string to_string(SolutionKind kind);
    std::string to_string(CaseTag tag);

    /// One-parameter family of paths indexed by theta1 for each theta4 branch.
    struct FamilyDescriptor
    {
        std::vector<double> theta4_choices;
        /// Paths reaching the goal for a given theta1 and branch index; empty
        /// when that branch has no valid member at theta1.
        std::function<std::vector<CscPath>(double theta1, std::size_t branch)> generator;
        std::vector<double> theta1_samples;
        /// One entry per (theta1 sample, branch) member, sample-major order.
        std::vector<CscPath> representatives;
    };

    enum class Rejection
    {
        None,
        EmptyNullSpace,
        InconsistentNullVector,
        InconsistentSolution,
        NegativeExtension,
        ResidualTooLarge,
        Duplicate,
    };

    std::string to_string(Rejection reason);

    struct CandidateDiagnostic
    {
        double theta4 = 0.0;
        double d3 = 0.0;
        double fk_residual = 0.0;
        bool refined = false;
        Rejection rejection = Rejection::None;
    };

    struct Diagnostics
    {
        CaseTag case_tag = CaseTag::General;
        double q_condition = 0.0;
        int characteristic_degree = -1;
        int root_count = 0; ///< distinct theta4 candidates examined
        std::vector<CandidateDiagnostic> candidates;
        bool perturbation_fallback = false;
        std::vector<std::string> notes;
    };

    struct SolutionSet
    {
        SolutionKind kind = SolutionKind::Discrete;
        std::vector<CscPath> paths;
        std::optional<FamilyDescriptor> family;
        Diagnostics diagnostics;
        double wall_ms = 0.0;
    };

} // namespace dubins3d

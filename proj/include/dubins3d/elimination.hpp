#pragma once
/**
 * @file   elimination.hpp
 * @brief  Numeric elimination of the RRPRR inverse-kinematics system down to
 *         a univariate polynomial in x4 = tan(theta4 / 2).
 *
 * Unknown terms on the arm side (theta4, theta5, d3) form the 9-term basis
 *
 *     [d3^2 s5, d3^2 c5, d3^2, d3 s5, d3 c5, d3, s5, c5, 1]
 *
 * and on the base side (theta1, theta2) the 8-term basis
 *
 *     [s1 s2, s1 c2, c1 s2, c1 c2, s1, c1, s2, c2].
 *
 * The 14 equations read P(s4, c4) * arm_terms = Q * base_terms, where every
 * entry of P is affine in (s4, c4) and Q depends only on the goal.
 */

#include "dubins3d/core_types.hpp"
#include "dubins3d/polynomial.hpp"

#include <Eigen/Core>

#include <array>

namespace dubins3d
{
    class SingularQ : public Error
    {
      public:
        using Error::Error;
    };

    class IdenticallyZeroDeterminant : public Error
    {
      public:
        using Error::Error;
    };

    using Vector6 = Eigen::Matrix<double, 6, 1>;
    using ArmTerms = Eigen::Matrix<double, 9, 1>;
    using BaseTerms = Eigen::Matrix<double, 8, 1>;
    using ExtendedTerms = Eigen::Matrix<double, 12, 1>;
    using PMatrix = Eigen::Matrix<double, 14, 9>;
    using QMatrix = Eigen::Matrix<double, 14, 8>;
    using SigmaNumeric = Eigen::Matrix<double, 6, 9>;
    using Sigma12Numeric = Eigen::Matrix<double, 12, 12>;

    ArmTerms arm_terms(double d3, double theta5);
    BaseTerms base_terms(double theta1, double theta2);
    /// [d3^3 s5, d3^3 c5, d3^3, ..., s5, c5, 1].
    ExtendedTerms extended_terms(double d3, double theta5);

    /// Third and fourth columns of A2^-1 A1^-1 A_hand = A3 A4 A5 written out
    /// row by row: the heading rows first, then the position rows.
    class TildeEquations
    {
      public:
        explicit TildeEquations(const GoalPose &unit_goal);

        /// Arm side: [c4 s5, c5, s4 s5, c4 (1 + c5) + 1, -d3 - s5, s4 (1 + c5)].
        Vector6 arm_side(double theta4, double theta5, double d3) const;
        /// Base side evaluated at (theta1, theta2) for this goal.
        Vector6 base_side(double theta1, double theta2) const;

      private:
        Vec3 x_;
        Vec3 v_;
    };

    TildeEquations build_tilde(const GoalPose &unit_goal);

    struct PQSystem
    {
        PMatrix constant = PMatrix::Zero();
        PMatrix sine = PMatrix::Zero();   ///< coefficient of s4
        PMatrix cosine = PMatrix::Zero(); ///< coefficient of c4
        QMatrix q = QMatrix::Zero();

        PMatrix p(double s4, double c4) const { return constant + s4 * sine + c4 * cosine; }
        PMatrix p(double theta4) const;
    };

    /// Rows: 3 heading, 3 position, |p|^2, p.I, p x I (3), |p|^2 I - 2 (p.I) p (3).
    PQSystem build_pq(const GoalPose &unit_goal);

    /// 6x9 matrix in x4 with (1 + x4^2) cleared, stored as the three affine
    /// parts so that it can be evaluated either in x4 or directly in theta4.
    class SigmaMatrix
    {
      public:
        SigmaMatrix() = default;
        SigmaMatrix(const SigmaNumeric &constant, const SigmaNumeric &sine, const SigmaNumeric &cosine);

        /// Entry as a polynomial in x4: constant (1 + x^2) + 2x sine + cosine (1 - x^2).
        UniPoly entry(int row, int col) const;
        /// Largest entry degree; at most 2 by construction.
        int degree_bound() const noexcept { return degree_bound_; }

        SigmaNumeric at_x(double x4) const;
        /// Uncleared matrix at theta4 (differs from at_x by the factor 1 + x4^2).
        SigmaNumeric at_angle(double theta4) const;

        /// Same system in the chart theta4 -> theta4 + pi.
        SigmaMatrix shifted_half_turn() const;

        const SigmaNumeric &constant() const noexcept { return constant_; }
        const SigmaNumeric &sine() const noexcept { return sine_; }
        const SigmaNumeric &cosine() const noexcept { return cosine_; }

      private:
        SigmaNumeric constant_ = SigmaNumeric::Zero();
        SigmaNumeric sine_ = SigmaNumeric::Zero();
        SigmaNumeric cosine_ = SigmaNumeric::Zero();
        int degree_bound_ = 0;
    };

    struct Reduction
    {
        SigmaMatrix sigma;
        std::array<int, 8> solved_rows{}; ///< rows of Q inverted to eliminate the base terms
        std::array<int, 6> kept_rows{};
        double q_condition = 0.0;
    };

    /// Throws SingularQ when the best 8-row subset of Q has condition >= @p max_condition.
    Reduction reduce_to_sigma(const PQSystem &sys, double max_condition = 1e10);

    /// [[S, 0], [0, S]] over the extended basis, the lower copy shifted right
    /// by three columns.
    class Sigma12
    {
      public:
        Sigma12() = default;
        explicit Sigma12(SigmaMatrix sigma) : sigma_(std::move(sigma)) {}

        UniPoly entry(int row, int col) const;
        int degree_bound() const noexcept { return sigma_.degree_bound(); }
        Sigma12Numeric at_x(double x4) const;
        Sigma12Numeric at_angle(double theta4) const;
        const SigmaMatrix &sigma() const noexcept { return sigma_; }

      private:
        SigmaMatrix sigma_;
    };

    Sigma12 half_angle_and_expand(const SigmaMatrix &sigma);

    /// Embeds a 6x9 numeric matrix into the 12x12 block layout.
    Sigma12Numeric expand_numeric(const SigmaNumeric &s);

    /// det Sigma12(x4) interpolated at 12 * degree_bound + 1 Chebyshev nodes
    /// on [-1, 1]. Leading coefficients below 1e-10 of the largest are
    /// dropped. Throws IdenticallyZeroDeterminant when at every node the
    /// LU factorization has its smallest pivot below @p zero_threshold times
    /// its largest.
    UniPoly characteristic_polynomial(const Sigma12 &s12, double zero_threshold = 1e-13);

} // namespace dubins3d

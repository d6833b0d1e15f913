#include "dubins3d/elimination.hpp"

#include "newton_form.hpp"

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/float128.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dubins3d
{
    ArmTerms arm_terms(double d3, double theta5)
    {
        const double s5 = std::sin(theta5), c5 = std::cos(theta5);
        ArmTerms t;
        t << d3 * d3 * s5, d3 * d3 * c5, d3 * d3, d3 * s5, d3 * c5, d3, s5, c5, 1.0;
        return t;
    }

    BaseTerms base_terms(double theta1, double theta2)
    {
        const double s1 = std::sin(theta1), c1 = std::cos(theta1);
        const double s2 = std::sin(theta2), c2 = std::cos(theta2);
        BaseTerms t;
        t << s1 * s2, s1 * c2, c1 * s2, c1 * c2, s1, c1, s2, c2;
        return t;
    }

    ExtendedTerms extended_terms(double d3, double theta5)
    {
        ExtendedTerms t;
        t.head<3>() = d3 * arm_terms(d3, theta5).head<3>();
        t.tail<9>() = arm_terms(d3, theta5);
        return t;
    }

    TildeEquations::TildeEquations(const GoalPose &unit_goal) : x_(unit_goal.position()), v_(unit_goal.direction()) {}

    Vector6 TildeEquations::arm_side(double theta4, double theta5, double d3) const
    {
        const double s4 = std::sin(theta4), c4 = std::cos(theta4);
        const double s5 = std::sin(theta5), c5 = std::cos(theta5);
        Vector6 out;
        out << c4 * s5, c5, s4 * s5, c4 * (1.0 + c5) + 1.0, -d3 - s5, s4 * (1.0 + c5);
        return out;
    }

    Vector6 TildeEquations::base_side(double theta1, double theta2) const
    {
        const double s1 = std::sin(theta1), c1 = std::cos(theta1);
        const double s2 = std::sin(theta2), c2 = std::cos(theta2);
        const double w = v_.x() * c1 + v_.y() * s1;
        const double xi = x_.x() * c1 + x_.y() * s1;
        Vector6 out;
        out << c2 * w + s2 * v_.z(),
               c2 * v_.z() - s2 * w,
               v_.x() * s1 - v_.y() * c1,
               c2 * (xi - 1.0) + x_.z() * s2,
               x_.z() * c2 - s2 * (xi - 1.0),
               x_.x() * s1 - x_.y() * c1;
        return out;
    }

    TildeEquations build_tilde(const GoalPose &unit_goal) { return TildeEquations(unit_goal); }

    PMatrix PQSystem::p(double theta4) const { return p(std::sin(theta4), std::cos(theta4)); }

    PQSystem build_pq(const GoalPose &unit_goal)
    {
        const double xx = unit_goal.position().x(), xy = unit_goal.position().y(), xz = unit_goal.position().z();
        const double vx = unit_goal.direction().x(), vy = unit_goal.direction().y(), vz = unit_goal.direction().z();
        PQSystem sys;
        // Expanded offline; constants of each equation sit in the column of the "1" term.
        sys.cosine(0, 6) += 1;
        sys.q(0, 1) = vy;
        sys.q(0, 3) = vx;
        sys.q(0, 6) = vz;
        sys.constant(1, 7) += 1;
        sys.q(1, 0) = -vy;
        sys.q(1, 2) = -vx;
        sys.q(1, 7) = vz;
        sys.sine(2, 6) += 1;
        sys.q(2, 4) = vx;
        sys.q(2, 5) = -vy;
        sys.cosine(3, 7) += 1;
        sys.cosine(3, 8) += 1;
        sys.constant(3, 8) += 1;
        sys.q(3, 1) = xy;
        sys.q(3, 3) = xx;
        sys.q(3, 6) = xz;
        sys.q(3, 7) = -1;
        sys.constant(4, 5) += -1;
        sys.constant(4, 6) += -1;
        sys.q(4, 0) = -xy;
        sys.q(4, 2) = -xx;
        sys.q(4, 6) = 1;
        sys.q(4, 7) = xz;
        sys.sine(5, 7) += 1;
        sys.sine(5, 8) += 1;
        sys.q(5, 4) = xx;
        sys.q(5, 5) = -xy;
        sys.constant(6, 2) += 1;
        sys.constant(6, 3) += 2;
        sys.cosine(6, 7) += 2;
        sys.constant(6, 7) += 2;
        sys.cosine(6, 8) += 2;
        sys.constant(6, 8) += 3;
        sys.q(6, 4) = -2*xy;
        sys.q(6, 5) = -2*xx;
        sys.constant(6, 8) -= xx*xx + xy*xy + xz*xz + 1;
        sys.constant(7, 4) += -1;
        sys.cosine(7, 6) += 1;
        sys.constant(7, 6) += 1;
        sys.q(7, 4) = -vy;
        sys.q(7, 5) = -vx;
        sys.constant(7, 8) -= vx*xx + vy*xy + vz*xz;
        sys.sine(8, 3) += -1;
        sys.sine(8, 7) += -1;
        sys.sine(8, 8) += -1;
        sys.q(8, 0) = vx;
        sys.q(8, 1) = vx*xz - vz*xx;
        sys.q(8, 2) = -vy;
        sys.q(8, 3) = -vy*xz + vz*xy;
        sys.q(8, 6) = -vx*xy + vy*xx;
        sys.sine(9, 6) += -1;
        sys.q(9, 0) = -vx*xz + vz*xx;
        sys.q(9, 1) = vx;
        sys.q(9, 2) = vy*xz - vz*xy;
        sys.q(9, 3) = -vy;
        sys.q(9, 7) = -vx*xy + vy*xx;
        sys.cosine(10, 3) += 1;
        sys.cosine(10, 7) += 1;
        sys.constant(10, 7) += 1;
        sys.cosine(10, 8) += 1;
        sys.q(10, 4) = -vy*xz + vz*xy;
        sys.q(10, 5) = -vx*xz + vz*xx;
        sys.constant(10, 8) -= -vz;
        sys.cosine(11, 0) += 1;
        sys.cosine(11, 4) += 2;
        sys.constant(11, 4) += 2;
        sys.cosine(11, 5) += 2;
        sys.cosine(11, 6) += -1;
        sys.constant(11, 6) += -2;
        sys.q(11, 0) = 2*(vy*xz - vz*xy);
        sys.q(11, 1) = -2*vx*xx*xy + vy*xx*xx - vy*xy*xy + vy*xz*xz - vy - 2*vz*xy*xz;
        sys.q(11, 2) = 2*(vx*xz - vz*xx);
        sys.q(11, 3) = -vx*xx*xx + vx*xy*xy + vx*xz*xz - vx - 2*vy*xx*xy - 2*vz*xx*xz;
        sys.q(11, 6) = -2*vx*xx*xz - 2*vy*xy*xz + vz*xx*xx + vz*xy*xy - vz*xz*xz + vz;
        sys.q(11, 7) = 2*(vx*xx + vy*xy + vz*xz);
        sys.constant(12, 1) += -1;
        sys.cosine(12, 3) += 2;
        sys.constant(12, 3) += 2;
        sys.cosine(12, 7) += 2;
        sys.constant(12, 7) += 3;
        sys.cosine(12, 8) += 2;
        sys.constant(12, 8) += 2;
        sys.q(12, 0) = 2*vx*xx*xy - vy*xx*xx + vy*xy*xy - vy*xz*xz + vy + 2*vz*xy*xz;
        sys.q(12, 1) = 2*(vy*xz - vz*xy);
        sys.q(12, 2) = vx*xx*xx - vx*xy*xy - vx*xz*xz + vx + 2*vy*xx*xy + 2*vz*xx*xz;
        sys.q(12, 3) = 2*(vx*xz - vz*xx);
        sys.q(12, 6) = -2*(vx*xx + vy*xy + vz*xz);
        sys.q(12, 7) = -2*vx*xx*xz - 2*vy*xy*xz + vz*xx*xx + vz*xy*xy - vz*xz*xz + vz;
        sys.sine(13, 0) += 1;
        sys.sine(13, 4) += 2;
        sys.sine(13, 5) += 2;
        sys.sine(13, 6) += 1;
        sys.q(13, 4) = -vx*xx*xx + vx*xy*xy + vx*xz*xz + vx - 2*vy*xx*xy - 2*vz*xx*xz;
        sys.q(13, 5) = 2*vx*xx*xy - vy*xx*xx + vy*xy*xy - vy*xz*xz - vy + 2*vz*xy*xz;
        sys.constant(13, 8) -= -2*(vx*xy - vy*xx);
        return sys;
    }

    SigmaMatrix::SigmaMatrix(const SigmaNumeric &constant, const SigmaNumeric &sine, const SigmaNumeric &cosine)
        : constant_(constant), sine_(sine), cosine_(cosine)
    {
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 9; ++j)
                degree_bound_ = std::max(degree_bound_, entry(i, j).degree());
        if (degree_bound_ > 4)
            throw std::logic_error("sigma entry degree exceeds 4");
    }

    UniPoly SigmaMatrix::entry(int row, int col) const
    {
        const double a = constant_(row, col), b = sine_(row, col), c = cosine_(row, col);
        return UniPoly{a + c, 2.0 * b, a - c};
    }

    SigmaNumeric SigmaMatrix::at_x(double x4) const
    {
        const double x2 = x4 * x4;
        return (1.0 + x2) * constant_ + (2.0 * x4) * sine_ + (1.0 - x2) * cosine_;
    }

    SigmaNumeric SigmaMatrix::at_angle(double theta4) const
    {
        return constant_ + std::sin(theta4) * sine_ + std::cos(theta4) * cosine_;
    }

    SigmaMatrix SigmaMatrix::shifted_half_turn() const { return SigmaMatrix(constant_, -sine_, -cosine_); }

    Reduction reduce_to_sigma(const PQSystem &sys, double max_condition)
    {
        const Eigen::Matrix<double, 8, 14> qt = sys.q.transpose();
        Eigen::ColPivHouseholderQR<Eigen::Matrix<double, 8, 14>> qr(qt);
        const auto &perm = qr.colsPermutation().indices();

        Reduction red;
        std::vector<int> chosen(perm.data(), perm.data() + 8);
        std::sort(chosen.begin(), chosen.end());
        std::copy(chosen.begin(), chosen.end(), red.solved_rows.begin());
        int k = 0;
        for (int r = 0; r < 14; ++r)
        {
            if (!std::binary_search(chosen.begin(), chosen.end(), r))
                red.kept_rows[static_cast<std::size_t>(k++)] = r;
        }

        Eigen::Matrix<double, 8, 8> qa;
        Eigen::Matrix<double, 6, 8> qb;
        for (int i = 0; i < 8; ++i)
            qa.row(i) = sys.q.row(red.solved_rows[static_cast<std::size_t>(i)]);
        for (int i = 0; i < 6; ++i)
            qb.row(i) = sys.q.row(red.kept_rows[static_cast<std::size_t>(i)]);

        Eigen::JacobiSVD<Eigen::Matrix<double, 8, 8>> svd(qa);
        const auto &sv = svd.singularValues();
        red.q_condition = sv(7) > 0.0 ? sv(0) / sv(7) : std::numeric_limits<double>::infinity();
        if (!(red.q_condition < max_condition))
            throw SingularQ("no well-conditioned 8-row subset of Q");

        // M = Q_B Q_A^-1, via the transposed solve Q_A^T M^T = Q_B^T.
        const Eigen::Matrix<double, 6, 8> m = qa.transpose().partialPivLu().solve(qb.transpose()).transpose();

        auto reduce = [&](const PMatrix &part) {
            Eigen::Matrix<double, 8, 9> pa;
            SigmaNumeric pb;
            for (int i = 0; i < 8; ++i)
                pa.row(i) = part.row(red.solved_rows[static_cast<std::size_t>(i)]);
            for (int i = 0; i < 6; ++i)
                pb.row(i) = part.row(red.kept_rows[static_cast<std::size_t>(i)]);
            return SigmaNumeric(pb - m * pa);
        };
        red.sigma = SigmaMatrix(reduce(sys.constant), reduce(sys.sine), reduce(sys.cosine));
        return red;
    }

    Sigma12Numeric expand_numeric(const SigmaNumeric &s)
    {
        Sigma12Numeric out = Sigma12Numeric::Zero();
        out.block<6, 9>(0, 0) = s;
        out.block<6, 9>(6, 3) = s;
        return out;
    }

    UniPoly Sigma12::entry(int row, int col) const
    {
        if (row < 6)
            return col < 9 ? sigma_.entry(row, col) : UniPoly{};
        return col >= 3 ? sigma_.entry(row - 6, col - 3) : UniPoly{};
    }

    Sigma12Numeric Sigma12::at_x(double x4) const { return expand_numeric(sigma_.at_x(x4)); }

    Sigma12Numeric Sigma12::at_angle(double theta4) const { return expand_numeric(sigma_.at_angle(theta4)); }

    Sigma12 half_angle_and_expand(const SigmaMatrix &sigma) { return Sigma12(sigma); }

    UniPoly characteristic_polynomial(const Sigma12 &s12, double zero_threshold)
    {
        // Near-planar goals put a tight root cluster at x4 = 0 whose low-order
        // coefficients are many orders below the rest; double-precision
        // determinants lose them entirely.
        using Quad = boost::multiprecision::float128;
        using QuadMatrix = Eigen::Matrix<Quad, 12, 12>;

        std::array<std::array<std::vector<double>, 12>, 12> entries;
        for (int r = 0; r < 12; ++r)
            for (int c = 0; c < 12; ++c)
                entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = s12.entry(r, c).coefficients();

        const int n = 12 * std::max(s12.degree_bound(), 1) + 1;
        std::vector<Quad> xs, dets;
        xs.reserve(static_cast<std::size_t>(n));
        dets.reserve(static_cast<std::size_t>(n));
        bool all_zero = true;
        for (double node : chebyshev_nodes(n))
        {
            const Quad x = node;
            QuadMatrix m;
            for (int r = 0; r < 12; ++r)
                for (int c = 0; c < 12; ++c)
                {
                    const auto &coeffs = entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
                    Quad v = 0;
                    for (auto k = coeffs.size(); k-- > 0;)
                        v = v * x + coeffs[k];
                    m(r, c) = v;
                }
            const Eigen::PartialPivLU<QuadMatrix> lu(m);
            Quad smallest = boost::multiprecision::abs(lu.matrixLU()(0, 0)), largest = smallest;
            for (int i = 1; i < 12; ++i)
            {
                const Quad p = boost::multiprecision::abs(lu.matrixLU()(i, i));
                smallest = std::min(smallest, p);
                largest = std::max(largest, p);
            }
            if (largest > 0 && smallest > zero_threshold * largest)
                all_zero = false;
            xs.push_back(x);
            dets.push_back(lu.determinant());
        }
        if (all_zero)
            throw IdenticallyZeroDeterminant("characteristic determinant vanishes identically");

        const std::vector<Quad> wide = detail::newton_to_monomial(xs, std::move(dets));
        std::vector<double> c;
        c.reserve(wide.size());
        for (const Quad &v : wide)
            c.push_back(static_cast<double>(v));
        return UniPoly(std::move(c)).trimmed(1e-10);
    }

} // namespace dubins3d

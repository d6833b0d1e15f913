#include "dubins3d/oracle.hpp"

#include "dubins3d/kinematics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace dubins3d
{
    namespace
    {
        using Angles = Eigen::Vector4d; // phi1, psi1, phi2, psi2
        using Residual = Eigen::Matrix<double, 6, 1>;

        struct Evaluation
        {
            Residual error;
            double d = 0.0;
        };

        Evaluation evaluate(const Angles &a, const GoalPose &goal)
        {
            const CscPath no_segment{a(0), a(1), 0.0, a(2), a(3)};
            const Pose base = fk_dubins(no_segment, goal.radius());
            const Vec3 along(std::sin(a(1)) * std::cos(a(0)), std::sin(a(1)) * std::sin(a(0)), std::cos(a(1)));
            Evaluation ev;
            ev.d = along.dot(goal.position() - base.position);
            ev.error.head<3>() = (base.position + ev.d * along - goal.position()) / std::max(1.0, goal.position().norm());
            ev.error.tail<3>() = base.direction - goal.direction();
            return ev;
        }

        Angles minimize(Angles a, const GoalPose &goal)
        {
            Evaluation ev = evaluate(a, goal);
            double cost = ev.error.squaredNorm();
            double lambda = 1e-3;
            constexpr double h = 1e-7;
            for (int it = 0; it < 100 && cost > 1e-28; ++it)
            {
                Eigen::Matrix<double, 6, 4> jac;
                for (int k = 0; k < 4; ++k)
                {
                    Angles hi = a, lo = a;
                    hi(k) += h;
                    lo(k) -= h;
                    jac.col(k) = (evaluate(hi, goal).error - evaluate(lo, goal).error) / (2.0 * h);
                }
                const Eigen::Matrix4d jtj = jac.transpose() * jac;
                const Eigen::Vector4d g = jac.transpose() * ev.error;
                bool improved = false;
                for (int attempt = 0; attempt < 10; ++attempt)
                {
                    Eigen::Matrix4d damped = jtj;
                    damped.diagonal().array() += lambda * (1.0 + jtj.diagonal().array());
                    const Angles trial = a - damped.ldlt().solve(g);
                    const Evaluation te = evaluate(trial, goal);
                    const double tc = te.error.squaredNorm();
                    if (std::isfinite(tc) && tc < cost)
                    {
                        a = trial;
                        ev = te;
                        cost = tc;
                        lambda = std::max(lambda * 0.2, 1e-12);
                        improved = true;
                        break;
                    }
                    lambda *= 10.0;
                }
                if (!improved)
                    break;
            }
            return a;
        }
    } // namespace

    std::vector<CscPath> numeric_solve(const GoalPose &goal, int grid_density)
    {
        if (grid_density < 2)
            throw std::invalid_argument("grid density must be at least 2");
        const int n = grid_density;
        const std::size_t total = static_cast<std::size_t>(n) * n * n * n;

        auto node = [n](std::size_t idx) {
            Angles a;
            for (int k = 3; k >= 0; --k)
            {
                const int i = static_cast<int>(idx % static_cast<std::size_t>(n));
                idx /= static_cast<std::size_t>(n);
                a(k) = (k == 0 || k == 2) ? -kPi + kTwoPi * (i + 0.5) / n : kTwoPi * (i + 0.5) / n;
            }
            return a;
        };

        std::vector<double> cost(total);
        for (std::size_t idx = 0; idx < total; ++idx)
            cost[idx] = evaluate(node(idx), goal).error.squaredNorm();

        // Local minima on the periodic lattice (all 80 neighbours).
        std::vector<std::size_t> starts;
        const std::size_t stride[4] = {static_cast<std::size_t>(n) * n * n, static_cast<std::size_t>(n) * n,
                                       static_cast<std::size_t>(n), 1};
        for (std::size_t idx = 0; idx < total; ++idx)
        {
            int coord[4];
            std::size_t rest = idx;
            for (int k = 0; k < 4; ++k)
            {
                coord[k] = static_cast<int>(rest / stride[k]);
                rest %= stride[k];
            }
            bool minimum = true;
            for (int off = 0; off < 81 && minimum; ++off)
            {
                if (off == 40)
                    continue;
                int o = off;
                std::size_t nb = 0;
                for (int k = 3; k >= 0; --k)
                {
                    const int delta = o % 3 - 1;
                    o /= 3;
                    nb += static_cast<std::size_t>((coord[k] + delta + n) % n) * stride[k];
                }
                if (cost[nb] < cost[idx])
                    minimum = false;
            }
            if (minimum)
                starts.push_back(idx);
        }
        std::vector<std::size_t> order(total);
        for (std::size_t i = 0; i < total; ++i)
            order[i] = i;
        const std::size_t best = std::min<std::size_t>(64, total);
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best), order.end(),
                          [&](std::size_t a, std::size_t b) { return cost[a] < cost[b]; });
        starts.insert(starts.end(), order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best));
        std::sort(starts.begin(), starts.end());
        starts.erase(std::unique(starts.begin(), starts.end()), starts.end());

        std::vector<CscPath> found;
        for (std::size_t idx : starts)
        {
            const Angles a = minimize(node(idx), goal);
            const Evaluation ev = evaluate(a, goal);
            if (ev.d < -1e-9)
                continue;
            CscPath p = canonicalize({a(0), a(1), std::max(ev.d, 0.0), a(2), a(3)});
            if (!(fk_residual(p, goal) < 1e-8))
                continue;
            if (std::none_of(found.begin(), found.end(), [&](const CscPath &q) { return parameter_distance(p, q) < 1e-5; }))
                found.push_back(p);
        }
        sort_by_length(found, goal.radius());
        return found;
    }

    std::vector<Vec3> fk_geometric(const CscPath &path, double r, int samples)
    {
        if (samples < 2)
            throw std::invalid_argument("at least two samples are needed");

        // Moving frame: tangent t, bending direction n.
        struct Frame
        {
            Vec3 p, t, n;
        };
        auto arc = [r](const Frame &f, double angle) {
            Frame out;
            out.p = f.p + r * std::sin(angle) * f.t + r * (1.0 - std::cos(angle)) * f.n;
            out.t = std::cos(angle) * f.t + std::sin(angle) * f.n;
            out.n = -std::sin(angle) * f.t + std::cos(angle) * f.n;
            return out;
        };
        auto turn = [](const Frame &f, double phi) {
            Frame out = f;
            out.n = std::cos(phi) * f.n + std::sin(phi) * f.t.cross(f.n);
            return out;
        };

        const Frame start = turn({Vec3::Zero(), Vec3::UnitZ(), Vec3::UnitX()}, path.phi1);
        const Frame after_first = arc(start, path.psi1);
        Frame after_segment = after_first;
        after_segment.p += path.d * after_first.t;
        const Frame second = turn(after_segment, path.phi2);

        const double l1 = r * path.psi1, l2 = path.d, l3 = r * path.psi2;
        const double total = l1 + l2 + l3;
        std::vector<Vec3> out;
        out.reserve(static_cast<std::size_t>(samples));
        for (int i = 0; i < samples; ++i)
        {
            const double s = (i == samples - 1) ? total : total * i / (samples - 1);
            if (s <= l1 && l1 > 0.0)
                out.push_back(arc(start, s / r).p);
            else if (s <= l1 + l2)
                out.push_back(after_first.p + (s - l1) * after_first.t);
            else
                out.push_back(arc(second, std::min(s - l1 - l2, l3) / r).p);
        }
        return out;
    }

} // namespace dubins3d

#include "dubins3d/backsub.hpp"

#include "dubins3d/kinematics.hpp"

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace dubins3d
{
    namespace
    {
        constexpr double kNullRatio = 1e-8;
        // Second singular value this small marks a near-double root whose
        // null vector is mixed with its neighbour's.
        constexpr double kNearNullRatio = 1e-3;
        constexpr double kProductTolerance = 1e-6;

        struct Mismatch
        {
            double circle = 0.0;
            double product = 0.0;
        };

        // Slots: d3^3 s5, d3^3 c5, d3^3, d3^2 s5, d3^2 c5, d3^2, d3 s5, d3 c5, d3, s5, c5, 1.
        Mismatch monomial_mismatch(const ExtendedTerms &v)
        {
            const double d = v(8), s = v(9), c = v(10);
            const double scale = 1.0 + std::abs(d);
            const double expected[8] = {d * d * d * s, d * d * d * c, d * d * d, d * d * s, d * d * c, d * d, d * s, d * c};
            const int power[8] = {3, 3, 3, 2, 2, 2, 1, 1};
            Mismatch m;
            m.circle = std::abs(s * s + c * c - 1.0);
            for (int k = 0; k < 8; ++k)
                m.product = std::max(m.product, std::abs(v(k) - expected[k]) / std::pow(scale, power[k]));
            return m;
        }

        ArmSolution to_arm(const ExtendedTerms &v, const Mismatch &m)
        {
            return {v(8), std::atan2(v(9), v(10)), std::max(m.circle, m.product)};
        }
    } // namespace

    double theta4_from_root(double x4) { return 2.0 * std::atan(x4); }

    std::vector<ArmSolution> null_space_candidates(const Sigma12Numeric &m, const Tolerances &tol, bool strict)
    {
        Eigen::JacobiSVD<Sigma12Numeric> svd(m, Eigen::ComputeFullV);
        const auto &sv = svd.singularValues();
        const double smax = sv(0);
        int null_dim = 0;
        for (int k = 11; k >= 0 && sv(k) <= kNullRatio * smax; --k)
            ++null_dim;
        if (null_dim == 0)
        {
            if (strict)
                throw EmptyNullSpace("matrix has full numerical rank at this root");
            null_dim = 1;
        }
        if (!strict && null_dim == 1 && sv(10) <= kNearNullRatio * smax)
            null_dim = 2;
        if (smax == 0.0)
            throw EmptyNullSpace("matrix vanishes at this root");

        std::vector<ExtendedTerms> normalized;
        std::vector<ExtendedTerms> basis;
        for (int k = 0; k < null_dim; ++k)
        {
            const ExtendedTerms n = svd.matrixV().col(11 - k);
            basis.push_back(n);
            if (std::abs(n(11)) > 1e-12)
                normalized.push_back(n / n(11));
        }

        // Two-dimensional null space: along the line with constant slot 1,
        // pick the points where (s5, c5) lies on the unit circle.
        if (null_dim == 2)
        {
            const ExtendedTerms &a = basis[0], &b = basis[1];
            const bool use_a = std::abs(a(11)) >= std::abs(b(11));
            const ExtendedTerms &p = use_a ? a : b, &q = use_a ? b : a;
            if (std::abs(p(11)) > 1e-12)
            {
                const ExtendedTerms u = p / p(11);
                const ExtendedTerms w = q - u * q(11);
                const double qa = w(9) * w(9) + w(10) * w(10);
                const double qb = 2.0 * (u(9) * w(9) + u(10) * w(10));
                const double qc = u(9) * u(9) + u(10) * u(10) - 1.0;
                const double disc = qb * qb - 4.0 * qa * qc;
                if (qa > 1e-14 && disc >= 0.0)
                {
                    const double root = std::sqrt(disc);
                    for (double t : {(-qb + root) / (2.0 * qa), (-qb - root) / (2.0 * qa)})
                        normalized.push_back(u + t * w);
                }
            }
        }

        std::vector<ArmSolution> out;
        for (const ExtendedTerms &v : normalized)
        {
            const Mismatch mm = monomial_mismatch(v);
            const bool consistent = mm.circle < tol.unit_circle && mm.product < kProductTolerance;
            if (consistent || !strict)
                out.push_back(to_arm(v, mm));
        }
        if (strict && out.empty())
            throw InconsistentNullVector("no null vector is a consistent monomial vector");
        return out;
    }

    std::vector<ArmSolution> solve_d3_theta5(const Sigma12 &s12, double x4, const Tolerances &tol)
    {
        return null_space_candidates(s12.at_angle(theta4_from_root(x4)), tol, true);
    }

    BaseSolution base_candidate(const PQSystem &sys, double d3, double theta4, double theta5)
    {
        const Eigen::Matrix<double, 14, 1> rhs = sys.p(theta4) * arm_terms(d3, theta5);
        const BaseTerms b = sys.q.colPivHouseholderQr().solve(rhs);

        BaseSolution out;
        out.residual = (sys.q * b - rhs).norm() / (1.0 + rhs.norm());
        out.theta1 = std::atan2(b(4), b(5));
        out.theta2 = std::atan2(b(6), b(7));
        const double s1 = b(4), c1 = b(5), s2 = b(6), c2 = b(7);
        out.inconsistency = std::max({std::abs(s1 * s1 + c1 * c1 - 1.0), std::abs(s2 * s2 + c2 * c2 - 1.0),
                                      std::abs(b(0) - s1 * s2), std::abs(b(1) - s1 * c2), std::abs(b(2) - c1 * s2),
                                      std::abs(b(3) - c1 * c2)});
        return out;
    }

    BaseSolution solve_theta12(const PQSystem &sys, double d3, double theta4, double theta5, const Tolerances &tol)
    {
        const BaseSolution out = base_candidate(sys, d3, theta4, theta5);
        if (!(out.residual < kProductTolerance) || !(out.inconsistency < std::min(tol.unit_circle, kProductTolerance)))
            throw InconsistentSolution("base-side terms do not form a consistent solution");
        return out;
    }

    std::vector<double> find_theta4_roots(const SigmaMatrix &sigma, int *degree)
    {
        struct Window
        {
            double lo, hi;
        };
        std::vector<Window> windows;
        int max_degree = -1;

        for (int chart = 0; chart < 2; ++chart)
        {
            const SigmaMatrix s = chart == 0 ? sigma : sigma.shifted_half_turn();
            const UniPoly p = characteristic_polynomial(Sigma12(s));
            max_degree = std::max(max_degree, p.degree());
            if (p.degree() < 1)
                continue;
            for (const auto &z : complex_roots(p))
            {
                const double re = z.real(), im = std::abs(z.imag());
                if (im >= 1e-2 * (1.0 + std::abs(re)) || std::abs(re) > 1.05)
                    continue;
                const double centre = theta4_from_root(re) + chart * kPi;
                const double half_width = std::max(1e-3, 8.0 * im / (1.0 + re * re));
                windows.push_back({centre - half_width, centre + half_width});
            }
        }
        if (degree)
            *degree = max_degree;

        std::sort(windows.begin(), windows.end(), [](const Window &a, const Window &b) { return a.lo < b.lo; });
        std::vector<Window> merged;
        for (const Window &w : windows)
        {
            if (!merged.empty() && w.lo <= merged.back().hi)
                merged.back().hi = std::max(merged.back().hi, w.hi);
            else
                merged.push_back(w);
        }

        auto det_at = [&sigma](double theta) { return expand_numeric(sigma.at_angle(theta)).partialPivLu().determinant(); };

        constexpr int kSamples = 33;
        std::vector<double> roots;
        for (const Window &w : merged)
        {
            double ts[kSamples], gs[kSamples];
            for (int i = 0; i < kSamples; ++i)
            {
                ts[i] = w.lo + (w.hi - w.lo) * i / (kSamples - 1);
                gs[i] = det_at(ts[i]);
            }
            bool bracketed = false;
            for (int i = 0; i + 1 < kSamples; ++i)
            {
                if (gs[i] == 0.0)
                {
                    roots.push_back(ts[i]);
                    bracketed = true;
                }
                else if ((gs[i] < 0.0) != (gs[i + 1] < 0.0) && gs[i + 1] != 0.0)
                {
                    std::uintmax_t iterations = 100;
                    const auto [a, b] = boost::math::tools::toms748_solve(
                        det_at, ts[i], ts[i + 1], gs[i], gs[i + 1],
                        boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 2), iterations);
                    roots.push_back(0.5 * (a + b));
                    bracketed = true;
                }
            }
            // A near-double root can touch zero without a sign change: take
            // interior minima of |det| where the sign holds on both sides.
            for (int i = 1; i + 1 < kSamples; ++i)
            {
                const bool same_sign = (gs[i - 1] < 0.0) == (gs[i] < 0.0) && (gs[i] < 0.0) == (gs[i + 1] < 0.0);
                if (!same_sign || gs[i] == 0.0 || !(std::abs(gs[i]) < std::abs(gs[i - 1])) ||
                    !(std::abs(gs[i]) < std::abs(gs[i + 1])))
                    continue;
                std::uintmax_t iterations = 60;
                const auto [t, value] = boost::math::tools::brent_find_minima(
                    [&](double theta) { return std::abs(det_at(theta)); }, ts[i - 1], ts[i + 1],
                    std::numeric_limits<double>::digits / 2, iterations);
                (void)value;
                roots.push_back(t);
                bracketed = true;
            }
            if (!bracketed)
            {
                const auto *best = std::min_element(gs, gs + kSamples, [](double a, double b) { return std::abs(a) < std::abs(b); });
                roots.push_back(ts[best - gs]);
            }
        }

        for (double &t : roots)
            t = wrap_pi(t);
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end(), [](double a, double b) { return b - a < 1e-12; }), roots.end());
        return roots;
    }

    SolutionSet assemble(const GoalPose &goal, std::span<const JointValues> candidates, const Tolerances &tol,
                         Diagnostics *diagnostics)
    {
        SolutionSet out;
        out.kind = SolutionKind::Discrete;
        for (const JointValues &j : candidates)
        {
            CandidateDiagnostic cd;
            cd.theta4 = j.theta4;
            cd.d3 = j.d3;

            // Noise-level negative extensions are clamped and left to FK validation.
            if (j.d3 < -1e-6)
            {
                cd.rejection = Rejection::NegativeExtension;
                if (diagnostics)
                    diagnostics->candidates.push_back(cd);
                continue;
            }
            JointValues jj = j;
            if (jj.d3 <= 1e-9)
                jj.d3 = 0.0;

            CscPath path = canonicalize(dh_to_dubins(jj), tol.psi_eps);
            double r = fk_residual(path, goal);
            if (r > 1e-12 && r < 0.1)
            {
                CscPath refined = canonicalize(refine_path(path, goal), tol.psi_eps);
                if (refined.d <= 1e-9)
                    refined.d = 0.0;
                const double rr = fk_residual(refined, goal);
                if (rr < r && parameter_distance(refined, path) < 0.1)
                {
                    path = refined;
                    r = rr;
                    cd.refined = true;
                }
            }
            cd.fk_residual = r;

            if (!(r < tol.fk_residual))
                cd.rejection = Rejection::ResidualTooLarge;
            else if (std::any_of(out.paths.begin(), out.paths.end(),
                                 [&](const CscPath &p) { return is_duplicate(p, path, tol); }))
                cd.rejection = Rejection::Duplicate;
            else
                out.paths.push_back(path);
            if (diagnostics)
                diagnostics->candidates.push_back(cd);
        }
        sort_by_length(out.paths, goal.radius());
        return out;
    }

} // namespace dubins3d

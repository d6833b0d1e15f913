#include "dubins3d/polynomial.hpp"

#include "newton_form.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dubins3d
{
    UniPoly::UniPoly(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) { strip_exact_zeros(); }

    UniPoly::UniPoly(std::initializer_list<double> coefficients) : coeffs_(coefficients) { strip_exact_zeros(); }

    void UniPoly::strip_exact_zeros()
    {
        while (!coeffs_.empty() && coeffs_.back() == 0.0)
            coeffs_.pop_back();
    }

    double UniPoly::coefficient(int power) const noexcept
    {
        if (power < 0 || power >= static_cast<int>(coeffs_.size()))
            return 0.0;
        return coeffs_[static_cast<std::size_t>(power)];
    }

    double UniPoly::max_abs_coefficient() const noexcept
    {
        double m = 0.0;
        for (double c : coeffs_)
            m = std::max(m, std::abs(c));
        return m;
    }

    double UniPoly::operator()(double x) const noexcept
    {
        double acc = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }

    std::complex<double> UniPoly::operator()(std::complex<double> z) const noexcept
    {
        std::complex<double> acc = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * z + *it;
        return acc;
    }

    UniPoly UniPoly::derivative() const
    {
        if (coeffs_.size() <= 1)
            return {};
        std::vector<double> d(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k)
            d[k - 1] = static_cast<double>(k) * coeffs_[k];
        return UniPoly(std::move(d));
    }

    UniPoly UniPoly::trimmed(double relative) const
    {
        const double threshold = relative * max_abs_coefficient();
        std::vector<double> c = coeffs_;
        while (!c.empty() && std::abs(c.back()) < threshold)
            c.pop_back();
        return UniPoly(std::move(c));
    }

    UniPoly operator+(const UniPoly &a, const UniPoly &b)
    {
        std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
        for (std::size_t k = 0; k < a.coeffs_.size(); ++k)
            c[k] += a.coeffs_[k];
        for (std::size_t k = 0; k < b.coeffs_.size(); ++k)
            c[k] += b.coeffs_[k];
        return UniPoly(std::move(c));
    }

    UniPoly operator-(const UniPoly &a, const UniPoly &b) { return a + (-1.0) * b; }

    UniPoly operator*(const UniPoly &a, const UniPoly &b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return UniPoly(std::move(c));
    }

    UniPoly operator*(double s, const UniPoly &a)
    {
        std::vector<double> c = a.coeffs_;
        for (double &v : c)
            v *= s;
        return UniPoly(std::move(c));
    }

    UniPoly interpolate(std::span<const std::pair<double, double>> samples)
    {
        std::vector<std::pair<double, double>> pts(samples.begin(), samples.end());
        if (pts.empty())
            return {};
        for (const auto &[x, y] : pts)
        {
            if (!std::isfinite(x) || !std::isfinite(y))
                throw NonFinite("interpolation sample is not finite");
        }
        std::sort(pts.begin(), pts.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
        for (std::size_t i = 1; i < pts.size(); ++i)
        {
            if (pts[i].first == pts[i - 1].first)
                throw DuplicateNodes("interpolation nodes must be distinct");
        }

        // Extended precision: the monomial expansion of a high-degree Newton
        // form loses several digits to cancellation in double.
        const std::size_t n = pts.size();
        std::vector<long double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            x[i] = pts[i].first;
            y[i] = pts[i].second;
        }
        const std::vector<long double> wide = detail::newton_to_monomial(x, std::move(y));
        std::vector<double> c(wide.begin(), wide.end());
        return UniPoly(std::move(c));
    }

    std::vector<double> chebyshev_nodes(int n, double lo, double hi)
    {
        std::vector<double> nodes(static_cast<std::size_t>(std::max(n, 0)));
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (int k = 0; k < n; ++k)
            nodes[static_cast<std::size_t>(k)] = mid + half * std::cos(kPi * (k + 0.5) / n);
        return nodes;
    }

    namespace
    {
        // Parlett-Reinsch diagonal similarity scaling by powers of two.
        void balance(Eigen::MatrixXd &m)
        {
            const Eigen::Index n = m.rows();
            constexpr double radix = 2.0;
            bool converged = false;
            while (!converged)
            {
                converged = true;
                for (Eigen::Index i = 0; i < n; ++i)
                {
                    double c = 0.0, r = 0.0;
                    for (Eigen::Index j = 0; j < n; ++j)
                    {
                        if (j == i)
                            continue;
                        c += std::abs(m(j, i));
                        r += std::abs(m(i, j));
                    }
                    if (c == 0.0 || r == 0.0)
                        continue;
                    double g = r / radix, f = 1.0;
                    const double s = c + r;
                    while (c < g)
                    {
                        f *= radix;
                        c *= radix * radix;
                    }
                    g = r * radix;
                    while (c > g)
                    {
                        f /= radix;
                        c /= radix * radix;
                    }
                    if ((c + r) / f < 0.95 * s)
                    {
                        converged = false;
                        m.row(i) /= f;
                        m.col(i) *= f;
                    }
                }
            }
        }
    } // namespace

    std::vector<std::complex<double>> complex_roots(const UniPoly &p)
    {
        if (p.is_zero())
            throw ZeroPolynomial("roots of the zero polynomial are undefined");
        const auto &c = p.coefficients();
        std::vector<std::complex<double>> roots;

        std::size_t low = 0;
        while (low < c.size() && c[low] == 0.0)
            ++low;
        roots.assign(low, {0.0, 0.0});

        const std::size_t n = c.size() - 1 - low;
        if (n == 0)
            return roots;
        const double lead = c.back();
        if (n == 1)
        {
            roots.emplace_back(-c[low] / lead, 0.0);
            return roots;
        }

        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t i = 1; i < n; ++i)
            comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
        for (std::size_t i = 0; i < n; ++i)
            comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -c[low + i] / lead;
        balance(comp);

        Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, false);
        const auto ev = solver.eigenvalues();
        for (Eigen::Index i = 0; i < ev.size(); ++i)
            roots.push_back(ev(i));
        return roots;
    }

    namespace
    {
        double polish(const UniPoly &p, double x, int multiplicity)
        {
            UniPoly f = p;
            for (int k = 1; k < multiplicity; ++k)
                f = f.derivative();
            const UniPoly df = f.derivative();
            double best = x, best_val = std::abs(f(x));
            for (int it = 0; it < 50 && best_val > 0.0; ++it)
            {
                const double slope = df(x);
                if (slope == 0.0 || !std::isfinite(slope))
                    break;
                const double next = x - f(x) / slope;
                if (!std::isfinite(next))
                    break;
                const double v = std::abs(f(next));
                if (v >= best_val)
                    break;
                x = next;
                best = next;
                best_val = v;
            }
            return best;
        }
    } // namespace

    std::vector<RealRoot> real_roots(const UniPoly &p, double imag_tolerance)
    {
        if (p.is_zero())
            throw ZeroPolynomial("roots of the zero polynomial are undefined");
        if (p.degree() < 1)
            return {};

        const auto z = complex_roots(p);
        const std::size_t n = z.size();

        // Single-linkage clustering.
        std::vector<std::size_t> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](std::size_t i) {
            while (parent[i] != i)
                i = parent[i] = parent[parent[i]];
            return i;
        };
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (std::abs(z[i] - z[j]) < 1e-4 * (1.0 + std::abs(z[i])))
                    parent[find(i)] = find(j);

        std::vector<RealRoot> out;
        std::vector<bool> seen(n, false);
        for (std::size_t i = 0; i < n; ++i)
        {
            const std::size_t root = find(i);
            if (seen[root])
                continue;
            seen[root] = true;
            std::complex<double> sum = 0.0;
            int m = 0;
            for (std::size_t j = 0; j < n; ++j)
            {
                if (find(j) == root)
                {
                    sum += z[j];
                    ++m;
                }
            }
            const std::complex<double> centroid = sum / static_cast<double>(m);
            if (std::abs(centroid.imag()) >= imag_tolerance * (1.0 + std::abs(centroid.real())))
                continue;
            out.push_back({polish(p, centroid.real(), m), m});
        }
        std::sort(out.begin(), out.end(), [](const RealRoot &a, const RealRoot &b) { return a.value < b.value; });
        return out;
    }

} // namespace dubins3d

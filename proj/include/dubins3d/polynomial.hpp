#pragma once
/**
 * @file   polynomial.hpp
 * @brief  Univariate real polynomials: arithmetic, interpolation, roots.
 */

#include "dubins3d/core_types.hpp"

#include <complex>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace dubins3d
{
    class DuplicateNodes : public Error
    {
      public:
        using Error::Error;
    };

    class ZeroPolynomial : public Error
    {
      public:
        using Error::Error;
    };

    /// Real polynomial with coefficients in ascending degree. The zero
    /// polynomial has no coefficients.
    class UniPoly
    {
      public:
        UniPoly() = default;
        explicit UniPoly(std::vector<double> coefficients);
        UniPoly(std::initializer_list<double> coefficients);

        /// -1 for the zero polynomial.
        int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
        bool is_zero() const noexcept { return coeffs_.empty(); }
        const std::vector<double> &coefficients() const noexcept { return coeffs_; }
        double coefficient(int power) const noexcept;

        /// Largest absolute coefficient (0 for the zero polynomial).
        double max_abs_coefficient() const noexcept;

        double operator()(double x) const noexcept;
        std::complex<double> operator()(std::complex<double> z) const noexcept;

        UniPoly derivative() const;

        /// Drops leading coefficients with |c| < relative * max|c|.
        UniPoly trimmed(double relative) const;

        friend UniPoly operator+(const UniPoly &a, const UniPoly &b);
        friend UniPoly operator-(const UniPoly &a, const UniPoly &b);
        friend UniPoly operator*(const UniPoly &a, const UniPoly &b);
        friend UniPoly operator*(double s, const UniPoly &a);

      private:
        void strip_exact_zeros();
        std::vector<double> coeffs_;
    };

    /// Unique polynomial of degree < samples.size() through every (x, y)
    /// sample. Newton divided differences on ascending nodes, expanded to the
    /// monomial basis. Throws DuplicateNodes.
    UniPoly interpolate(std::span<const std::pair<double, double>> samples);

    /// @p n Chebyshev points of the first kind on [lo, hi].
    std::vector<double> chebyshev_nodes(int n, double lo = -1.0, double hi = 1.0);

    /// Eigenvalues of the balanced companion matrix. Throws ZeroPolynomial.
    std::vector<std::complex<double>> complex_roots(const UniPoly &p);

    struct RealRoot
    {
        double value = 0.0;
        int multiplicity = 1;
    };

    /// Real roots, ascending. Eigenvalues closer than 1e-4 (1 + |z|) are
    /// clustered into one root of that multiplicity; a cluster is real when
    /// |imag| < imag_tolerance (1 + |real|) at its centroid. Each root is
    /// Newton-polished. Throws ZeroPolynomial; a nonzero constant has no roots.
    std::vector<RealRoot> real_roots(const UniPoly &p, double imag_tolerance = 1e-8);

} // namespace dubins3d

#pragma once

#include <cstddef>
#include <vector>

namespace dubins3d::detail
{
    /// Monomial coefficients (ascending) of the polynomial through (x[i], y[i]).
    /// Nodes must be distinct. Works in whatever precision T provides.
    template <typename T>
    std::vector<T> newton_to_monomial(const std::vector<T> &x, std::vector<T> a)
    {
        const std::size_t n = x.size();
        if (n == 0)
            return {};
        // Divided differences in place: a[k] becomes f[x0..xk].
        for (std::size_t k = 1; k < n; ++k)
            for (std::size_t i = n - 1; i >= k; --i)
                a[i] = (a[i] - a[i - 1]) / (x[i] - x[i - k]);

        // Expand the Newton form from the innermost term outwards.
        std::vector<T> c(n, T(0));
        c[0] = a[n - 1];
        std::size_t len = 1;
        for (std::size_t k = n - 1; k-- > 0;)
        {
            // c <- c * (t - x[k]) + a[k]
            c[len] = c[len - 1];
            for (std::size_t j = len - 1; j > 0; --j)
                c[j] = c[j - 1] - x[k] * c[j];
            c[0] = -x[k] * c[0] + a[k];
            ++len;
        }
        return c;
    }
} // namespace dubins3d::detail

#include "dubins3d/polynomial.hpp"

#include <doctest.h>

#include <random>

using namespace dubins3d;

namespace
{
    using Samples = std::vector<std::pair<double, double>>;
}

TEST_CASE("interpolation through small sample sets")
{
    const Samples flat{{0, 1}, {1, 1}, {2, 1}};
    const UniPoly c = interpolate(flat);
    REQUIRE(c.degree() == 0);
    CHECK(c.coefficient(0) == doctest::Approx(1.0));

    const Samples square{{-1, 1}, {0, 0}, {1, 1}};
    const UniPoly q = interpolate(square);
    REQUIRE(q.degree() == 2);
    CHECK(q.coefficient(0) == doctest::Approx(0.0));
    CHECK(q.coefficient(1) == doctest::Approx(0.0));
    CHECK(q.coefficient(2) == doctest::Approx(1.0));

    const Samples unsorted{{1, 1}, {-1, 1}, {0, 0}};
    CHECK(interpolate(unsorted).coefficient(2) == doctest::Approx(1.0));

    const Samples twice{{0, 1}, {0, 2}};
    CHECK_THROWS_AS(interpolate(twice), DuplicateNodes);
}

TEST_CASE("degree-20 polynomial recovered from 25 Chebyshev samples")
{
    std::mt19937_64 rng(20);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial)
    {
        std::vector<double> c(21);
        for (double &x : c)
            x = coef(rng);
        const UniPoly truth(c);
        Samples s;
        for (double x : chebyshev_nodes(25))
            s.emplace_back(x, truth(x));
        const UniPoly got = interpolate(s);
        double worst = 0.0;
        for (int k = 0; k <= 24; ++k)
            worst = std::max(worst, std::abs(got.coefficient(k) - truth.coefficient(k)));
        CHECK(worst / truth.max_abs_coefficient() < 1e-8);
    }
}

TEST_CASE("Chebyshev nodes lie inside the interval and are distinct")
{
    const auto nodes = chebyshev_nodes(7, 2.0, 4.0);
    REQUIRE(nodes.size() == 7);
    for (std::size_t i = 0; i < nodes.size(); ++i)
    {
        CHECK(nodes[i] > 2.0);
        CHECK(nodes[i] < 4.0);
        for (std::size_t j = 0; j < i; ++j)
            CHECK(nodes[i] != nodes[j]);
    }
}

TEST_CASE("arithmetic and evaluation")
{
    const UniPoly a{1, 2};    // 1 + 2x
    const UniPoly b{-1, 0, 3}; // -1 + 3x^2
    CHECK((a * b)(2.0) == doctest::Approx(a(2.0) * b(2.0)));
    CHECK((a + b).coefficients() == std::vector<double>{0, 2, 3});
    CHECK((a - a).is_zero());
    CHECK((a - a).degree() == -1);
    CHECK((2.0 * b).coefficient(2) == 6.0);
    CHECK(b.derivative().coefficients() == std::vector<double>{0, 6});
    CHECK(UniPoly{1, 0, 1e-14}.trimmed(1e-10).degree() == 0);
    const std::complex<double> i(0.0, 1.0);
    CHECK(std::abs(UniPoly{1, 0, 1}(i)) < 1e-15);
}

TEST_CASE("real roots")
{
    const auto pm = real_roots(UniPoly{-1, 0, 1});
    REQUIRE(pm.size() == 2);
    CHECK(pm[0].value == doctest::Approx(-1.0));
    CHECK(pm[1].value == doctest::Approx(1.0));

    CHECK(real_roots(UniPoly{1, 0, 1}).empty());
    CHECK(real_roots(UniPoly{3}).empty());
    CHECK_THROWS_AS(real_roots(UniPoly{}), ZeroPolynomial);
    CHECK_THROWS_AS(complex_roots(UniPoly{}), ZeroPolynomial);

    // (x - 2)^3 (x^2 + x + 1)
    const UniPoly cubed = UniPoly{-2, 1} * UniPoly{-2, 1} * UniPoly{-2, 1} * UniPoly{1, 1, 1};
    const auto triple = real_roots(cubed);
    REQUIRE(triple.size() == 1);
    CHECK(triple[0].value == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(triple[0].multiplicity == 3);

    const auto zero_root = real_roots(UniPoly{0, 0, -4, 1});
    REQUIRE(zero_root.size() == 2);
    CHECK(zero_root[0].value == 0.0);
    CHECK(zero_root[0].multiplicity == 2);
    CHECK(zero_root[1].value == doctest::Approx(4.0));
}

TEST_CASE("real roots of random products of known factors")
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> root(-3.0, 3.0), quad(0.1, 2.0);
    for (int trial = 0; trial < 100; ++trial)
    {
        std::vector<double> truth;
        UniPoly p{1};
        for (int k = 0; k < 5; ++k)
        {
            truth.push_back(root(rng));
            p = p * UniPoly{-truth.back(), 1};
        }
        p = p * UniPoly{quad(rng), 0.3, 1}; // no real roots
        std::sort(truth.begin(), truth.end());
        bool separated = true;
        for (std::size_t k = 1; k < truth.size(); ++k)
            separated = separated && truth[k] - truth[k - 1] > 1e-2;
        if (!separated)
            continue;
        const auto got = real_roots(p);
        REQUIRE(got.size() == truth.size());
        for (std::size_t k = 0; k < truth.size(); ++k)
            CHECK(got[k].value == doctest::Approx(truth[k]).epsilon(1e-9));
    }
}

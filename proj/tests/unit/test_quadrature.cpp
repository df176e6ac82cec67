// SPDX-License-Identifier: Apache-2.0
//
// patchrad: patch-averaged radiation operators for near-field array modelling
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>

#include "patchrad/errors.hpp"
#include "patchrad/quadrature.hpp"
#include "patchrad/types.hpp"

using namespace patchrad;
using doctest::Approx;

namespace
{
    double monomial_integral(int p) { return p % 2 ? 0.0 : 2.0 / (p + 1); }
}

TEST_CASE("low order rules")
{
    const auto &r1 = gauss_legendre<double>(1);
    REQUIRE(r1.order() == 1);
    CHECK(r1.nodes[0] == 0.0);
    CHECK(r1.weights[0] == Approx(2.0).epsilon(1e-15));

    const auto &r2 = gauss_legendre<double>(2);
    CHECK(r2.nodes[0] == Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r2.nodes[1] == Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r2.weights[0] == Approx(1.0).epsilon(1e-15));
    CHECK(r2.weights[1] == Approx(1.0).epsilon(1e-15));

    const auto &r3 = gauss_legendre<double>(3);
    CHECK(r3.nodes[0] == Approx(-std::sqrt(0.6)).epsilon(1e-15));
    CHECK(r3.nodes[1] == 0.0);
    CHECK(r3.nodes[2] == Approx(std::sqrt(0.6)).epsilon(1e-15));
    CHECK(r3.weights[0] == Approx(5.0 / 9.0).epsilon(1e-15));
    CHECK(r3.weights[1] == Approx(8.0 / 9.0).epsilon(1e-15));
    CHECK(r3.weights[2] == Approx(5.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("rule structure for every order")
{
    for (std::size_t n = 1; n <= gl_max_order; ++n)
    {
        const auto &rule = gauss_legendre<double>(n);
        REQUIRE(rule.order() == n);
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i)
        {
            sum += rule.weights[i];
            CHECK(rule.weights[i] > 0.0);
            CHECK(std::abs(rule.nodes[i] + rule.nodes[n - 1 - i]) < 1e-14);
            CHECK(std::abs(rule.weights[i] - rule.weights[n - 1 - i]) < 1e-14);
            if (i > 0)
                CHECK(rule.nodes[i] > rule.nodes[i - 1]);
        }
        CHECK(std::abs(sum - 2.0) < 1e-14);
    }
}

TEST_CASE("monomial exactness up to degree 2n-1")
{
    for (std::size_t n = 1; n <= gl_max_order; ++n)
    {
        const auto &rule = gauss_legendre<double>(n);
        for (int p = 0; p <= int(2 * n - 1); ++p)
        {
            double q = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                q += rule.weights[i] * std::pow(rule.nodes[i], p);
            CHECK(std::abs(q - monomial_integral(p)) < 1e-13);
        }
    }
}

TEST_CASE("rules are cached")
{
    CHECK(&gauss_legendre<double>(5) == &gauss_legendre<double>(5));
    CHECK(gauss_legendre<float>(2).nodes[1] == doctest::Approx(0.5773503f));
}

TEST_CASE("order out of range")
{
    CHECK_THROWS_AS(gauss_legendre<double>(0), InvalidArgument);
    CHECK_THROWS_AS(gauss_legendre<double>(gl_max_order + 1), InvalidArgument);
}

TEST_CASE("tensor rule examples")
{
    CMat3<double> C;
    C << 1.0, std::complex<double>(0, 2), 3.0, 4.0, 5.0, std::complex<double>(-1, 1), 7.0, 8.0, 9.0;
    for (std::size_t n : {1u, 2u, 5u, 16u})
    {
        const auto &rule = gauss_legendre<double>(n);
        const CMat3<double> c = tensor_quad_2d([&](double, double) { return C; }, rule);
        CHECK((c - C).norm() < 1e-14 * C.norm());
        const CMat3<double> odd = tensor_quad_2d([&](double xi, double) -> CMat3<double> { return xi * C; }, rule);
        CHECK(odd.norm() < 1e-15 * C.norm());
    }
    const CMat3<double> I = CMat3<double>::Identity();
    const CMat3<double> q =
        tensor_quad_2d([&](double xi, double eta) -> CMat3<double> { return xi * xi * eta * eta * I; },
                       gauss_legendre<double>(2));
    CHECK((q - I / 9.0).norm() < 1e-15);
}

TEST_CASE("tensor rule exact on bivariate monomials")
{
    for (std::size_t n = 1; n <= 8; ++n)
    {
        const auto &rule = gauss_legendre<double>(n);
        for (int p = 0; p <= int(2 * n - 1); ++p)
            for (int q = 0; q <= int(2 * n - 1); ++q)
            {
                const auto v = tensor_quad_2d(
                    [&](double xi, double eta) { return std::complex<double>(std::pow(xi, p) * std::pow(eta, q)); },
                    rule);
                CHECK(std::abs(v - 0.25 * monomial_integral(p) * monomial_integral(q)) < 1e-12);
            }
    }
}

TEST_CASE("exponential convergence on plane-wave integrands")
{
    // f = exp(j (a xi + b eta)) with |a|, |b| <= 1, exact average sinc(a) sinc(b)
    const double a = 1.0, b = -0.7;
    const std::complex<double> exact = (std::sin(a) / a) * (std::sin(b) / b);
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t n = 1; n <= 8; ++n)
    {
        const auto v = tensor_quad_2d(
            [&](double xi, double eta) { return std::polar(1.0, a * xi + b * eta); }, gauss_legendre<double>(n));
        const double err = std::abs(v - exact);
        if (previous > 1e-14)
            CHECK(err < previous / 5.0 + 1e-15);
        previous = err;
    }
}

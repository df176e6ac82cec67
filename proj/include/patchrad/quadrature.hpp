// SPDX-License-Identifier: Apache-2.0
//
// patchrad: patch-averaged radiation operators for near-field array modelling
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#ifndef PATCHRAD_QUADRATURE_HPP
#define PATCHRAD_QUADRATURE_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <type_traits>
#include <vector>

#include "patchrad/errors.hpp"

namespace patchrad
{
    inline constexpr std::size_t gl_max_order = 32;

    // Gauss-Legendre rule on [-1, 1], nodes strictly increasing
    template <typename Scalar>
    struct GLRule
    {
        std::vector<Scalar> nodes;
        std::vector<Scalar> weights;

        std::size_t order() const { return nodes.size(); }
    };

    namespace detail
    {
        // Newton iteration on P_n, started from the Chebyshev-like guess cos(pi (i - 1/4) / (n + 1/2)).
        // Roots are computed for the upper half and mirrored, so the rule is exactly symmetric.
        template <typename Scalar>
        GLRule<Scalar> compute_gauss_legendre(std::size_t n)
        {
            GLRule<Scalar> rule;
            rule.nodes.assign(n, Scalar(0));
            rule.weights.assign(n, Scalar(0));

            const std::size_t half = (n + 1) / 2;
            for (std::size_t i = 0; i < half; ++i)
            {
                Scalar x = std::cos(std::numbers::pi_v<Scalar> * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
                Scalar dp = Scalar(0);
                for (int iter = 0; iter < 100; ++iter)
                {
                    // Three-term recurrence for P_n(x) and its derivative
                    Scalar p0 = Scalar(1), p1 = x;
                    for (std::size_t j = 2; j <= n; ++j)
                    {
                        const Scalar p2 = ((Scalar(2 * j - 1)) * x * p1 - Scalar(j - 1) * p0) / Scalar(j);
                        p0 = p1;
                        p1 = p2;
                    }
                    const Scalar pn = (n == 1) ? x : p1;
                    const Scalar pnm1 = (n == 1) ? Scalar(1) : p0;
                    dp = Scalar(n) * (x * pn - pnm1) / (x * x - Scalar(1));
                    const Scalar dx = pn / dp;
                    x -= dx;
                    if (std::abs(dx) <= Scalar(2) * std::numeric_limits<Scalar>::epsilon())
                        break;
                }
                // Re-evaluate the derivative at the converged root for the weight
                Scalar p0 = Scalar(1), p1 = x;
                for (std::size_t j = 2; j <= n; ++j)
                {
                    const Scalar p2 = ((Scalar(2 * j - 1)) * x * p1 - Scalar(j - 1) * p0) / Scalar(j);
                    p0 = p1;
                    p1 = p2;
                }
                const Scalar pn = (n == 1) ? x : p1;
                const Scalar pnm1 = (n == 1) ? Scalar(1) : p0;
                dp = Scalar(n) * (x * pn - pnm1) / (x * x - Scalar(1));

                const Scalar w = Scalar(2) / ((Scalar(1) - x * x) * dp * dp);
                rule.nodes[n - 1 - i] = x;
                rule.nodes[i] = -x;
                rule.weights[n - 1 - i] = w;
                rule.weights[i] = w;
            }
            if (n % 2 == 1)
                rule.nodes[n / 2] = Scalar(0);
            return rule;
        }

        template <typename Scalar>
        const std::array<GLRule<Scalar>, gl_max_order> &gauss_legendre_table()
        {
            static const std::array<GLRule<Scalar>, gl_max_order> table = [] {
                std::array<GLRule<Scalar>, gl_max_order> t;
                for (std::size_t n = 1; n <= gl_max_order; ++n)
                    t[n - 1] = compute_gauss_legendre<Scalar>(n);
                return t;
            }();
            return table;
        }
    }

    /// Order-n Gauss-Legendre rule, 1 <= n <= 32. Rules come from a table built once per Scalar type.
    template <typename Scalar>
    const GLRule<Scalar> &gauss_legendre(std::size_t n)
    {
        if (n < 1 || n > gl_max_order)
            throw InvalidArgument("gauss_legendre: order must be in [1, 32], got " + std::to_string(n));
        return detail::gauss_legendre_table<Scalar>()[n - 1];
    }

    namespace detail
    {
        template <typename T>
        auto evaluated(const T &v)
        {
            if constexpr (requires { v.eval(); })
                return v.eval();
            else
                return v;
        }
    }

    /// (1/4) sum_q1 sum_q2 w_q1 w_q2 f(xi_q1, eta_q2)
    ///
    /// f returns a scalar or any fixed-size Eigen object (typically a complex 3x3 matrix). The 1/4 is the
    /// Jacobian of [-1,1]^2 onto a unit-area square, so the result is an average over the square.
    template <typename Scalar, typename Fn>
    auto tensor_quad_2d(Fn &&f, const GLRule<Scalar> &rule)
    {
        using Result = std::decay_t<decltype(detail::evaluated(f(Scalar(0), Scalar(0))))>;
        const std::size_t n = rule.order();
        if (n == 0)
            throw InvalidArgument("tensor_quad_2d: empty rule");
        // Seeded with the first term so the one-point rule reproduces f(0, 0) exactly
        Result acc = (rule.weights[0] * rule.weights[0]) * f(rule.nodes[0], rule.nodes[0]);
        for (std::size_t q1 = 0; q1 < n; ++q1)
            for (std::size_t q2 = 0; q2 < n; ++q2)
                if (q1 != 0 || q2 != 0)
                    acc += (rule.weights[q1] * rule.weights[q2]) * f(rule.nodes[q1], rule.nodes[q2]);
        return Result(acc * Scalar(0.25));
    }
}

#endif

// SPDX-License-Identifier: Apache-2.0
//
// patchrad: patch-averaged radiation operators for near-field array modelling
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "patchrad/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "patchrad/greens.hpp"
#include "patchrad/oracle.hpp"
#include "patchrad/quadrature.hpp"
#include "patchrad/radiation.hpp"

namespace patchrad
{
    namespace
    {
        Vec3<double> random_unit(std::mt19937_64 &rng)
        {
            const double z = 2.0 * detail::unit_uniform(rng) - 1.0;
            const double phi = 2.0 * std::numbers::pi * detail::unit_uniform(rng);
            const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
            return Vec3<double>(rho * std::cos(phi), rho * std::sin(phi), z);
        }

        double log_uniform(std::mt19937_64 &rng, double lo, double hi)
        {
            return std::exp(std::log(lo) + detail::unit_uniform(rng) * (std::log(hi) - std::log(lo)));
        }
    }

    GreensValidation validate_greens(std::size_t pairs, std::uint64_t seed, double wavelength)
    {
        const Wavenumber<double> k(wavelength);
        std::mt19937_64 rng(seed);
        GreensValidation out;
        out.pairs = pairs;
        for (std::size_t i = 0; i < pairs; ++i)
        {
            const double R = log_uniform(rng, 0.1, 100.0) / k.kappa();
            const Vec3<double> s = wavelength * Vec3<double>(2.0 * detail::unit_uniform(rng) - 1.0,
                                                             2.0 * detail::unit_uniform(rng) - 1.0,
                                                             2.0 * detail::unit_uniform(rng) - 1.0);
            const Vec3<double> r = s + R * random_unit(rng);
            const CMat3<double> G = dyadic_green(r, s, k);
            const CMat3<double> F = dyadic_green_fd_oracle(r, s, k, 1e-4 * R);
            const double scale = G.norm();
            out.max_fd_error = std::max(out.max_fd_error, (G - F).norm() / scale);
            out.max_symmetry_error =
                std::max(out.max_symmetry_error, (G - dyadic_green(s, r, k).transpose()).norm() / scale);
        }
        return out;
    }

    QuadratureValidation validate_quadrature(std::size_t max_order, std::size_t patches, std::uint64_t seed,
                                             double wavelength)
    {
        QuadratureValidation out;
        out.max_order_checked = max_order;
        for (std::size_t n = 1; n <= max_order; ++n)
        {
            const auto &rule = gauss_legendre<double>(n);
            for (std::size_t p = 0; p <= 2 * n - 1; ++p)
            {
                double sum = 0.0;
                for (std::size_t q = 0; q < n; ++q)
                    sum += rule.weights[q] * std::pow(rule.nodes[q], double(p));
                const double exact = (p % 2 == 1) ? 0.0 : 2.0 / double(p + 1);
                out.max_monomial_error = std::max(out.max_monomial_error, std::abs(sum - exact));
            }
        }

        const Wavenumber<double> k(wavelength);
        const auto &coarse = gauss_legendre<double>(2);
        const auto &fine = gauss_legendre<double>(16);
        std::mt19937_64 rng(seed);
        out.patches = patches;
        for (std::size_t i = 0; i < patches; ++i)
        {
            // Side in [lambda/1000, lambda/10], so A <= lambda^2 / 100
            const double side = wavelength * (0.001 + 0.099 * detail::unit_uniform(rng));
            const Vec3<double> normal = random_unit(rng);
            Vec3<double> d1 = normal.cross(random_unit(rng));
            d1.normalize();
            const Vec3<double> centroid = wavelength * Vec3<double>(detail::unit_uniform(rng), detail::unit_uniform(rng),
                                                                    detail::unit_uniform(rng));
            SurfaceMesh<double> mesh;
            mesh.wavelength = wavelength;
            mesh.patches.emplace_back(centroid, side * side, normal, 0);
            const std::vector<TangentFrame<double>> frames{{d1, normal.cross(d1).normalized()}};

            const double distance = log_uniform(rng, 0.5 * wavelength, 100.0 * wavelength);
            const Vec3<double> r = centroid + distance * random_unit(rng);
            const auto a = patch_operator(r, mesh, frames, coarse, k);
            const auto b = patch_operator(r, mesh, frames, fine, k);
            out.max_patch_error = std::max(out.max_patch_error, (a.blocks - b.blocks).norm() / b.blocks.norm());
        }
        return out;
    }
}

// SPDX-License-Identifier: Apache-2.0
//
// patchrad: patch-averaged radiation operators for near-field array modelling
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

// Randomized self-checks of the kernels against their independent references.

#ifndef PATCHRAD_VALIDATION_HPP
#define PATCHRAD_VALIDATION_HPP

#include <cstddef>
#include <cstdint>

namespace patchrad
{
    struct GreensValidation
    {
        std::size_t pairs = 0;
        double max_fd_error = 0.0;       // closed form vs finite differences, relative Frobenius
        double max_symmetry_error = 0.0; // |G(r,s) - G(s,r)^T|_F / |G|_F
        double threshold = 1e-6;

        bool passed() const { return max_fd_error < threshold && max_symmetry_error < 1e-12; }
    };

    /// Random (r, s) pairs with kappa R log-uniform in [0.1, 100], FD step h = 1e-4 R.
    GreensValidation validate_greens(std::size_t pairs, std::uint64_t seed, double wavelength = 1.0);

    struct QuadratureValidation
    {
        std::size_t max_order_checked = 0;
        double max_monomial_error = 0.0; // over orders 1..max_order_checked, degrees <= 2n - 1
        std::size_t patches = 0;
        double max_patch_error = 0.0; // N_q = 2 vs N_q = 16 block, relative Frobenius

        bool passed() const { return max_monomial_error < 1e-12 && max_patch_error < 1e-3; }
    };

    /// GL exactness for orders 1..max_order, then random sub-wavelength patches (A <= lambda^2/100)
    /// observed from distances log-uniform in [lambda/2, 100 lambda].
    QuadratureValidation validate_quadrature(std::size_t max_order, std::size_t patches, std::uint64_t seed,
                                             double wavelength = 1.0);
}

#endif

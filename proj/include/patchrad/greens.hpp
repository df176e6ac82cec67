// SPDX-License-Identifier: Apache-2.0
//
// patchrad: patch-averaged radiation operators for near-field array modelling
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

// Free-space scalar and dyadic Green's functions.
//
// Time convention is exp(+j omega t), so outgoing waves carry exp(-j kappa R).
// No physical prefactor (-j omega mu) is applied: the field of a current moment
// j at s is G(r, s) j. All accuracy metrics in this library are invariant to a
// global complex scale, so the prefactor never matters.

#ifndef PATCHRAD_GREENS_HPP
#define PATCHRAD_GREENS_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <type_traits>

#include "patchrad/types.hpp"

namespace patchrad
{
    // Closest allowed source/observation separation in meters
    template <typename Scalar>
    inline constexpr Scalar green_min_distance = Scalar(1e-12);

    namespace detail
    {
        template <typename Scalar>
        Scalar checked_distance(const Vec3<Scalar> &r, const Vec3<Scalar> &s)
        {
            const Scalar R = (r - s).norm();
            if (!(R > green_min_distance<Scalar>))
                throw SingularityError("Green's function evaluated at its source point (|r - s| <= 1e-12 m)");
            return R;
        }

        template <typename Scalar>
        std::complex<Scalar> scalar_green_at(Scalar R, Scalar kappa)
        {
            const Scalar phase = -kappa * R;
            return std::complex<Scalar>(std::cos(phase), std::sin(phase)) /
                   (Scalar(4) * std::numbers::pi_v<Scalar> * R);
        }
    }

    /// g(r, s) = exp(-j kappa R) / (4 pi R), R = |r - s|
    template <typename Scalar>
    std::complex<Scalar> scalar_green(const Vec3<Scalar> &r, const std::type_identity_t<Vec3<Scalar>> &s, const Wavenumber<Scalar> &k)
    {
        return detail::scalar_green_at(detail::checked_distance(r, s), k.kappa());
    }

    /// Dyadic Green's function (I + grad grad / kappa^2) g in closed form.
    ///
    /// With Rhat = (r - s) / R and u = 1 / (kappa R):
    ///   G = g [ (1 - j u - u^2) I + (-1 + 3 j u + 3 u^2) Rhat Rhat^T ]
    /// The result is symmetric and G(r, s) = G(s, r)^T.
    template <typename Scalar>
    CMat3<Scalar> dyadic_green(const Vec3<Scalar> &r, const std::type_identity_t<Vec3<Scalar>> &s, const Wavenumber<Scalar> &k)
    {
        using C = std::complex<Scalar>;
        const Vec3<Scalar> d = r - s;
        const Scalar R = detail::checked_distance(r, s);
        const Vec3<Scalar> rhat = d / R;
        const Scalar u = Scalar(1) / (k.kappa() * R);
        const C g = detail::scalar_green_at(R, k.kappa());

        const C transverse = g * C(Scalar(1) - u * u, -u);
        const C radial = g * C(Scalar(3) * u * u - Scalar(1), Scalar(3) * u);

        CMat3<Scalar> G;
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j)
            {
                C v = radial * (rhat(i) * rhat(j));
                if (i == j)
                    v += transverse;
                G(i, j) = v;
                G(j, i) = v;
            }
        return G;
    }

    /// Finite-difference reference for dyadic_green.
    ///
    /// Builds grad grad g from central second differences of scalar_green in r
    /// (diagonal: three-point stencil, off-diagonal: four-point cross stencil),
    /// Richardson-extrapolated over steps h and h/2 so the truncation error is
    /// O((kappa h)^4). Used only for verification.
    template <typename Scalar>
    CMat3<Scalar> dyadic_green_fd_oracle(const Vec3<Scalar> &r, const std::type_identity_t<Vec3<Scalar>> &s, const Wavenumber<Scalar> &k,
                                         Scalar h)
    {
        using C = std::complex<Scalar>;
        const Scalar R = detail::checked_distance(r, s);
        if (!(h > Scalar(0)))
            throw InvalidArgument("dyadic_green_fd_oracle: step must be positive");
        if (h >= R / Scalar(10))
            throw StepTooLargeError("dyadic_green_fd_oracle: step must satisfy h < R/10");

        const auto g = [&](const Vec3<Scalar> &p) { return scalar_green(p, s, k); };
        const C g0 = g(r);

        const auto hessian = [&](Scalar step) {
            CMat3<Scalar> H;
            for (int i = 0; i < 3; ++i)
            {
                Vec3<Scalar> ei = Vec3<Scalar>::Zero();
                ei(i) = step;
                H(i, i) = (g(r + ei) - Scalar(2) * g0 + g(r - ei)) / (step * step);
                for (int j = 0; j < i; ++j)
                {
                    Vec3<Scalar> ej = Vec3<Scalar>::Zero();
                    ej(j) = step;
                    const C v = (g(r + ei + ej) - g(r + ei - ej) - g(r - ei + ej) + g(r - ei - ej)) /
                                (Scalar(4) * step * step);
                    H(i, j) = v;
                    H(j, i) = v;
                }
            }
            return H;
        };

        const CMat3<Scalar> H = (Scalar(4) * hessian(h / Scalar(2)) - hessian(h)) / Scalar(3);
        const Scalar kappa2 = k.kappa() * k.kappa();
        return CMat3<Scalar>::Identity() * g0 + H / kappa2;
    }
}

#endif

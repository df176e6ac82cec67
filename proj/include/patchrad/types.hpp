// SPDX-License-Identifier: Apache-2.0
//
// patchrad: patch-averaged radiation operators for near-field array modelling
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#ifndef PATCHRAD_TYPES_HPP
#define PATCHRAD_TYPES_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>

#include "patchrad/errors.hpp"

namespace patchrad
{
    template <typename Scalar>
    using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

    template <typename Scalar>
    using CVec3 = Eigen::Matrix<std::complex<Scalar>, 3, 1>;

    template <typename Scalar>
    using Mat3 = Eigen::Matrix<Scalar, 3, 3>;

    template <typename Scalar>
    using CMat3 = Eigen::Matrix<std::complex<Scalar>, 3, 3>;

    template <typename Scalar>
    using CMatX = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

    template <typename Scalar>
    using CVecX = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

    // Radiated field at one observation point
    template <typename Scalar>
    using FieldVector = CVec3<Scalar>;

    // Free-space wavenumber, always constructed from the wavelength so kappa = 2 pi / lambda holds exactly.
    template <typename Scalar>
    class Wavenumber
    {
    public:
        explicit Wavenumber(Scalar wavelength) : wavelength_(wavelength)
        {
            if (!(wavelength > Scalar(0)) || !std::isfinite(wavelength))
                throw InvalidArgument("Wavenumber: wavelength must be positive and finite");
            kappa_ = Scalar(2) * std::numbers::pi_v<Scalar> / wavelength;
        }

        Scalar kappa() const { return kappa_; }
        Scalar wavelength() const { return wavelength_; }

    private:
        Scalar wavelength_;
        Scalar kappa_;
    };

    // Receiver polarization direction, normalized on construction.
    template <typename Scalar>
    class Polarization
    {
    public:
        explicit Polarization(const Vec3<Scalar> &direction)
        {
            const Scalar n = direction.norm();
            if (!(n > Scalar(0)) || !std::isfinite(n))
                throw InvalidArgument("Polarization: direction must be non-zero and finite");
            u_ = direction / n;
        }

        const Vec3<Scalar> &direction() const { return u_; }

    private:
        Vec3<Scalar> u_;
    };
}

#endif

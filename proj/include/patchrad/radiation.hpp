// SPDX-License-Identifier: Apache-2.0
//
// patchrad: patch-averaged radiation operators for near-field array modelling
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

// Radiation operators K(r) = [K_1(r), ..., K_K(r)] mapping stacked segment current
// moments to the field at r, and the field / steering-matrix synthesis built on them.
//
// Two operators are provided:
//   point source   K_k(r) = G(r, s_k)                                   (K Green calls)
//   patch(N_q)     K_k(r) = average of G(r, .) over the L_k x L_k patch  (K N_q^2 Green calls)
// Both are built per observation point.

#ifndef PATCHRAD_RADIATION_HPP
#define PATCHRAD_RADIATION_HPP

#include <cstddef>
#include <string>
#include <type_traits>
#include <vector>

#include "patchrad/geometry.hpp"
#include "patchrad/greens.hpp"
#include "patchrad/quadrature.hpp"

namespace patchrad
{
    // Stacked embedded element current moments (A m per unit port excitation), 3K x N.
    // Rows 3k..3k+2 hold the x, y, z components of segment k.
    template <typename Scalar>
    class EmbeddedCurrentMatrix
    {
    public:
        EmbeddedCurrentMatrix() = default;

        explicit EmbeddedCurrentMatrix(CMatX<Scalar> m) : m_(std::move(m))
        {
            if (m_.rows() == 0 || m_.rows() % 3 != 0)
                throw InvalidArgument("EmbeddedCurrentMatrix: row count must be a positive multiple of 3");
            if (m_.cols() == 0)
                throw InvalidArgument("EmbeddedCurrentMatrix: at least one port is required");
            if (!m_.allFinite())
                throw InvalidArgument("EmbeddedCurrentMatrix: entries must be finite");
        }

        std::size_t segments() const { return std::size_t(m_.rows() / 3); }
        std::size_t ports() const { return std::size_t(m_.cols()); }
        const CMatX<Scalar> &matrix() const { return m_; }

        // M_(k), the three rows of segment k
        auto block(std::size_t k) const { return m_.middleRows(3 * Eigen::Index(k), 3); }

    private:
        CMatX<Scalar> m_;
    };

    enum class OperatorKind
    {
        point_source,
        patch
    };

    template <typename Scalar>
    struct RadiationOperator
    {
        Eigen::Matrix<std::complex<Scalar>, 3, Eigen::Dynamic> blocks; // 3 x 3K
        Vec3<Scalar> observation;
        OperatorKind kind = OperatorKind::point_source;
        std::size_t quadrature_order = 0; // N_q for patch operators, 0 for point source
        std::size_t green_calls = 0;      // dyadic Green evaluations used to build the operator

        std::size_t segments() const { return std::size_t(blocks.cols() / 3); }
        auto block(std::size_t k) const { return blocks.template middleCols<3>(3 * Eigen::Index(k)); }

        std::string describe() const
        {
            return kind == OperatorKind::point_source ? std::string("point_source")
                                                      : "patch(" + std::to_string(quadrature_order) + ")";
        }
    };

    namespace detail
    {
        template <typename Scalar>
        void check_proximity(const Vec3<Scalar> &r, const Vec3<Scalar> &sample, Scalar wavelength)
        {
            if ((r - sample).norm() <= wavelength / Scalar(100))
                throw ProximityError("observation point lies within lambda/100 of the transmit surface");
        }
    }

    /// Zeroth-order (centroid) operator, K_k = G(r, s_k). Patch areas are ignored.
    template <typename Scalar>
    RadiationOperator<Scalar> point_source_operator(const std::type_identity_t<Vec3<Scalar>> &r, const SurfaceMesh<Scalar> &mesh,
                                                    const Wavenumber<Scalar> &k)
    {
        RadiationOperator<Scalar> op;
        op.observation = r;
        op.kind = OperatorKind::point_source;
        op.blocks.resize(3, 3 * Eigen::Index(mesh.size()));
        for (std::size_t p = 0; p < mesh.size(); ++p)
        {
            const Vec3<Scalar> &s = mesh.patches[p].centroid;
            detail::check_proximity(r, s, k.wavelength());
            op.blocks.template middleCols<3>(3 * Eigen::Index(p)) = dyadic_green(r, s, k);
            ++op.green_calls;
        }
        return op;
    }

    /// Patch-averaged operator: tensor Gauss-Legendre average of G(r, .) over
    /// s_k + (L_k/2)(xi d1 + eta d2), (xi, eta) in [-1, 1]^2.
    template <typename Scalar>
    RadiationOperator<Scalar> patch_operator(const std::type_identity_t<Vec3<Scalar>> &r, const SurfaceMesh<Scalar> &mesh,
                                             const std::vector<TangentFrame<Scalar>> &frames,
                                             const GLRule<Scalar> &rule, const Wavenumber<Scalar> &k)
    {
        if (frames.size() != mesh.size())
            throw InvalidArgument("patch_operator: one tangent frame per patch is required");

        RadiationOperator<Scalar> op;
        op.observation = r;
        op.kind = OperatorKind::patch;
        op.quadrature_order = rule.order();
        op.blocks.resize(3, 3 * Eigen::Index(mesh.size()));

        for (std::size_t p = 0; p < mesh.size(); ++p)
        {
            const auto &patch = mesh.patches[p];
            const auto &frame = frames[p];
            const Scalar half = patch.side_length / Scalar(2);
            op.blocks.template middleCols<3>(3 * Eigen::Index(p)) = tensor_quad_2d(
                [&](Scalar xi, Scalar eta) {
                    const Vec3<Scalar> s = patch.centroid + half * (xi * frame.d1 + eta * frame.d2);
                    detail::check_proximity(r, s, k.wavelength());
                    ++op.green_calls;
                    return dyadic_green(r, s, k);
                },
                rule);
        }
        return op;
    }

    /// Tangent frames for every patch from the embedded current matrix
    template <typename Scalar>
    std::vector<TangentFrame<Scalar>> compute_tangent_frames(const SurfaceMesh<Scalar> &mesh,
                                                             const EmbeddedCurrentMatrix<Scalar> &M)
    {
        if (M.segments() != mesh.size())
            throw InvalidArgument("compute_tangent_frames: current matrix has " + std::to_string(M.segments()) +
                                  " segments, mesh has " + std::to_string(mesh.size()));
        std::vector<TangentFrame<Scalar>> frames;
        frames.reserve(mesh.size());
        for (std::size_t p = 0; p < mesh.size(); ++p)
            frames.push_back(compute_tangent_frame(mesh.patches[p], M.block(p)));
        return frames;
    }

    /// A(r) = K(r) M, column n is the field of port n under unit excitation
    template <typename Scalar>
    Eigen::Matrix<std::complex<Scalar>, 3, Eigen::Dynamic> steering_matrix(const RadiationOperator<Scalar> &op,
                                                                           const EmbeddedCurrentMatrix<Scalar> &M)
    {
        if (op.blocks.cols() != M.matrix().rows())
            throw InvalidArgument("steering_matrix: operator has " + std::to_string(op.blocks.cols()) +
                                  " columns, current matrix has " + std::to_string(M.matrix().rows()) + " rows");
        return op.blocks * M.matrix();
    }

    /// e(r) = K(r) M w
    template <typename Scalar>
    FieldVector<Scalar> radiated_field(const RadiationOperator<Scalar> &op, const EmbeddedCurrentMatrix<Scalar> &M,
                                       const std::type_identity_t<CVecX<Scalar>> &w)
    {
        if (op.blocks.cols() != M.matrix().rows())
            throw InvalidArgument("radiated_field: operator / current matrix dimension mismatch");
        if (w.size() != M.matrix().cols())
            throw InvalidArgument("radiated_field: weight vector has " + std::to_string(w.size()) +
                                  " entries, expected " + std::to_string(M.matrix().cols()));
        return op.blocks * (M.matrix() * w);
    }

    /// u_r^H e
    template <typename Scalar>
    std::complex<Scalar> scalar_field(const FieldVector<Scalar> &field, const Polarization<Scalar> &pol)
    {
        return pol.direction().template cast<std::complex<Scalar>>().dot(field);
    }
}

#endif

// SPDX-License-Identifier: Apache-2.0
//
// patchrad: patch-averaged radiation operators for near-field array modelling
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

// Transmit surface as a list of flat square-equivalent patches.
//
// Arrays are built from thin z-directed strips lying in the yz-plane with normals
// along +x. Each strip of length `element_length` is cut into `segments_per_element`
// square cells (strip width = segment length), so L_k = sqrt(A_k) is the cell side.
//
// Element ordering for planar arrays is row-major: element = row * cols + col,
// rows advance along +z, columns along +y. Patches of one element are contiguous
// and ordered along +z.

#ifndef PATCHRAD_GEOMETRY_HPP
#define PATCHRAD_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "patchrad/types.hpp"

namespace patchrad
{
    template <typename Scalar>
    struct Patch
    {
        Vec3<Scalar> centroid;
        Scalar area = Scalar(0);
        Vec3<Scalar> normal;
        Scalar side_length = Scalar(0); // sqrt(area)
        std::size_t element = 0;

        Patch() = default;
        Patch(const Vec3<Scalar> &c, Scalar a, const Vec3<Scalar> &n, std::size_t elem)
            : centroid(c), area(a), normal(n), side_length(std::sqrt(a)), element(elem)
        {
            if (!(a > Scalar(0)) || !std::isfinite(a))
                throw InvalidArgument("Patch: area must be positive and finite");
            if (std::abs(n.norm() - Scalar(1)) > Scalar(1e-12))
                throw InvalidArgument("Patch: normal must be a unit vector");
        }
    };

    template <typename Scalar>
    struct TangentFrame
    {
        Vec3<Scalar> d1; // dominant current direction
        Vec3<Scalar> d2; // normal x d1
    };

    template <typename Scalar>
    struct SurfaceMesh
    {
        std::vector<Patch<Scalar>> patches;
        Scalar wavelength = Scalar(0);

        std::size_t size() const { return patches.size(); }

        std::size_t element_count() const
        {
            std::size_t n = 0;
            for (const auto &p : patches)
                n = std::max(n, p.element + 1);
            return n;
        }

        Vec3<Scalar> centroid() const
        {
            Vec3<Scalar> c = Vec3<Scalar>::Zero();
            Scalar total = Scalar(0);
            for (const auto &p : patches)
            {
                c += p.area * p.centroid;
                total += p.area;
            }
            return c / total;
        }
    };

    // Rectangular grid of z-directed strip elements in the yz-plane
    template <typename Scalar>
    struct ArrayLayout
    {
        std::size_t rows = 1;
        std::size_t cols = 1;
        Scalar spacing = Scalar(0);
        Scalar element_length = Scalar(0);
        std::size_t segments_per_element = 1;
        Scalar wavelength = Scalar(0);

        std::size_t element_count() const { return rows * cols; }

        void validate() const
        {
            if (rows < 1 || cols < 1)
                throw InvalidArgument("ArrayLayout: rows and cols must be >= 1");
            if (segments_per_element < 1)
                throw InvalidArgument("ArrayLayout: segments_per_element must be >= 1");
            if (!(spacing > Scalar(0)) || !(element_length > Scalar(0)) || !(wavelength > Scalar(0)))
                throw InvalidArgument("ArrayLayout: spacing, element_length and wavelength must be positive");
        }

        Vec3<Scalar> element_center(std::size_t element) const
        {
            const std::size_t row = element / cols;
            const std::size_t col = element % cols;
            const Scalar y = (Scalar(col) - Scalar(cols - 1) / Scalar(2)) * spacing;
            const Scalar z = (Scalar(row) - Scalar(rows - 1) / Scalar(2)) * spacing;
            return Vec3<Scalar>(Scalar(0), y, z);
        }

        Scalar segment_length() const { return element_length / Scalar(segments_per_element); }

        // Largest aperture dimension, center-to-center diagonal plus one element length
        Scalar aperture_size() const
        {
            return std::hypot(Scalar(cols - 1) * spacing, Scalar(rows - 1) * spacing) + element_length;
        }
    };

    template <typename Scalar>
    SurfaceMesh<Scalar> build_mesh(const ArrayLayout<Scalar> &layout)
    {
        layout.validate();
        SurfaceMesh<Scalar> mesh;
        mesh.wavelength = layout.wavelength;
        mesh.patches.reserve(layout.element_count() * layout.segments_per_element);

        const Scalar seg = layout.segment_length();
        const Scalar area = seg * seg;
        const Vec3<Scalar> normal = Vec3<Scalar>::UnitX();
        for (std::size_t e = 0; e < layout.element_count(); ++e)
        {
            const Vec3<Scalar> center = layout.element_center(e);
            for (std::size_t j = 0; j < layout.segments_per_element; ++j)
            {
                const Scalar z_local = -layout.element_length / Scalar(2) + (Scalar(j) + Scalar(0.5)) * seg;
                mesh.patches.emplace_back(center + z_local * Vec3<Scalar>::UnitZ(), area, normal, e);
            }
        }
        return mesh;
    }

    /// n_elements strips spaced along y, centered on the origin
    template <typename Scalar>
    SurfaceMesh<Scalar> build_linear_array_mesh(std::size_t n_elements, Scalar spacing, Scalar element_length,
                                                std::size_t segments_per_element, Scalar wavelength)
    {
        if (n_elements < 1)
            throw InvalidArgument("build_linear_array_mesh: n_elements must be >= 1");
        return build_mesh(ArrayLayout<Scalar>{1, n_elements, spacing, element_length, segments_per_element, wavelength});
    }

    /// rows x cols strips on a yz grid with equal pitch in y and z, row-major element order
    template <typename Scalar>
    SurfaceMesh<Scalar> build_planar_array_mesh(std::size_t rows, std::size_t cols, Scalar spacing,
                                                Scalar element_length, std::size_t segments_per_element,
                                                Scalar wavelength)
    {
        return build_mesh(ArrayLayout<Scalar>{rows, cols, spacing, element_length, segments_per_element, wavelength});
    }

    /// Human-readable warnings for patches outside the sub-wavelength regime A_k <= lambda^2 / 100.
    template <typename Scalar>
    std::vector<std::string> mesh_warnings(const SurfaceMesh<Scalar> &mesh)
    {
        std::vector<std::string> out;
        const Scalar limit = mesh.wavelength * mesh.wavelength / Scalar(100);
        std::size_t oversized = 0;
        for (const auto &p : mesh.patches)
            if (p.area > limit)
                ++oversized;
        if (oversized > 0)
            out.push_back(std::to_string(oversized) + " of " + std::to_string(mesh.size()) +
                          " patches exceed lambda^2/100; patch quadrature accuracy is not guaranteed");
        return out;
    }

    /// Local tangent frame of one patch from its 3 x N block of embedded currents.
    ///
    /// d1 is the normalized sum over ports of Re{M_(k)}. When that sum is below
    /// 1e-9 ||Re{M_(k)}||_F (currents cancel), d1 falls back to the dominant left
    /// singular vector of Re{M_(k)}, signed so its largest-magnitude component is
    /// positive. d2 = normalize(n x d1).
    template <typename Scalar, typename Derived>
    TangentFrame<Scalar> compute_tangent_frame(const Patch<Scalar> &patch, const Eigen::MatrixBase<Derived> &m_block)
    {
        if (m_block.rows() != 3)
            throw InvalidArgument("compute_tangent_frame: current block must have 3 rows");

        const Eigen::Matrix<Scalar, 3, Eigen::Dynamic> re = m_block.real();
        const Scalar fro = re.norm();
        if (!(fro > Scalar(0)))
            throw DegenerateCurrentError("compute_tangent_frame: Re{M_(k)} is identically zero");

        Vec3<Scalar> d1 = re.rowwise().sum();
        if (d1.norm() > Scalar(1e-9) * fro)
        {
            d1.normalize();
        }
        else
        {
            Eigen::JacobiSVD<Eigen::Matrix<Scalar, 3, Eigen::Dynamic>> svd(re, Eigen::ComputeFullU);
            d1 = svd.matrixU().col(0);
            Eigen::Index imax = 0;
            d1.cwiseAbs().maxCoeff(&imax);
            if (d1(imax) < Scalar(0))
                d1 = -d1;
        }

        Vec3<Scalar> d2 = patch.normal.cross(d1);
        const Scalar n2 = d2.norm();
        if (!(n2 > Scalar(1e-12)))
            throw DegenerateCurrentError("compute_tangent_frame: current direction is parallel to the patch normal");
        d2 /= n2;
        return TangentFrame<Scalar>{d1, d2};
    }
}

#endif

// SPDX-License-Identifier: Apache-2.0
//
// patchrad: patch-averaged radiation operators for near-field array modelling
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

// Ground truth for the radiation operators.
//
// Elements are flat strip dipoles with a standing-wave current along their axis,
// uniform across the strip width. The embedded current matrix samples that current
// at patch centroids; the reference field integrates the same current over the
// full strip surface with composite Gauss-Legendre quadrature, independent of the
// mesh, the tangent frames and the operator code.
//
// Coupling between elements is not solved for. The optional phase perturbation
// adds small seeded complex copies of each element's current onto its grid
// neighbours, a qualitative stand-in only.

#ifndef PATCHRAD_ORACLE_HPP
#define PATCHRAD_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <sstream>
#include <type_traits>
#include <vector>

#include "patchrad/geometry.hpp"
#include "patchrad/greens.hpp"
#include "patchrad/quadrature.hpp"
#include "patchrad/radiation.hpp"

namespace patchrad
{
    enum class CurrentProfile
    {
        sinusoidal,
        uniform
    };

    template <typename Scalar>
    struct DipoleElement
    {
        Vec3<Scalar> center;
        Vec3<Scalar> axis;   // unit, current direction
        Vec3<Scalar> normal; // unit strip normal
        Scalar length = Scalar(0);
        Scalar width = Scalar(0); // 0 for a line current
        CurrentProfile profile = CurrentProfile::sinusoidal;

        void validate() const
        {
            if (!(length > Scalar(0)) || width < Scalar(0))
                throw InvalidArgument("DipoleElement: length must be positive and width non-negative");
            if (std::abs(axis.norm() - Scalar(1)) > Scalar(1e-12) || std::abs(normal.norm() - Scalar(1)) > Scalar(1e-12))
                throw InvalidArgument("DipoleElement: axis and normal must be unit vectors");
        }

        Vec3<Scalar> width_direction() const { return normal.cross(axis).normalized(); }
    };

    /// One strip dipole per layout element, matching build_mesh.
    template <typename Scalar>
    std::vector<DipoleElement<Scalar>> build_dipole_elements(const ArrayLayout<Scalar> &layout,
                                                             CurrentProfile profile = CurrentProfile::sinusoidal)
    {
        layout.validate();
        std::vector<DipoleElement<Scalar>> out;
        for (std::size_t e = 0; e < layout.element_count(); ++e)
            out.push_back(DipoleElement<Scalar>{layout.element_center(e), Vec3<Scalar>::UnitZ(), Vec3<Scalar>::UnitX(),
                                                layout.element_length, layout.segment_length(), profile});
        return out;
    }

    /// Current at axial coordinate z_local (0 at the feed).
    ///
    /// Sinusoidal: sin(kappa (L/2 - |z|)), i.e. cos(kappa z) on a half-wave element, zero at the tips.
    /// Uniform: 1.
    template <typename Scalar>
    CVec3<Scalar> sinusoidal_current(Scalar z_local, const DipoleElement<Scalar> &element, const Wavenumber<Scalar> &k)
    {
        const Scalar half = element.length / Scalar(2);
        if (!(std::abs(z_local) <= half * (Scalar(1) + Scalar(1e-12))))
            throw InvalidArgument("sinusoidal_current: coordinate lies outside the element");
        const Scalar amplitude = element.profile == CurrentProfile::uniform
                                     ? Scalar(1)
                                     : std::sin(k.kappa() * (half - std::min(std::abs(z_local), half)));
        return (amplitude * element.axis).template cast<std::complex<Scalar>>();
    }

    enum class CouplingModel
    {
        none,
        phase_perturbation
    };

    namespace detail
    {
        // Uniform double in [0, 1) from the top 53 bits of mt19937_64, identical on every platform
        inline double unit_uniform(std::mt19937_64 &rng)
        {
            return double(rng() >> 11) * 0x1.0p-53;
        }
    }

    /// Element-to-port drive matrix C (E x E). Identity without coupling; with phase
    /// perturbation, each port also drives its nearest-neighbour elements with
    /// rho exp(j phi), rho in [0.02, 0.09), phi in [0, 2 pi), drawn from mt19937_64(seed)
    /// in (port, element) order.
    template <typename Scalar>
    CMatX<Scalar> coupling_matrix(const std::vector<DipoleElement<Scalar>> &elements, CouplingModel model,
                                  std::uint64_t seed)
    {
        const Eigen::Index E = Eigen::Index(elements.size());
        CMatX<Scalar> C = CMatX<Scalar>::Identity(E, E);
        if (model == CouplingModel::none || E < 2)
            return C;

        Scalar pitch = std::numeric_limits<Scalar>::max();
        for (Eigen::Index a = 0; a < E; ++a)
            for (Eigen::Index b = a + 1; b < E; ++b)
                pitch = std::min(pitch, (elements[a].center - elements[b].center).norm());

        std::mt19937_64 rng(seed);
        for (Eigen::Index n = 0; n < E; ++n)
            for (Eigen::Index e = 0; e < E; ++e)
            {
                if (e == n || (elements[e].center - elements[n].center).norm() > pitch * Scalar(1.01))
                    continue;
                const double rho = 0.02 + 0.07 * detail::unit_uniform(rng);
                const double phi = 2.0 * std::numbers::pi * detail::unit_uniform(rng);
                C(e, n) = std::polar(Scalar(rho), Scalar(phi));
            }
        return C;
    }

    /// Embedded current matrix sampled at patch centroids.
    ///
    /// Column n holds sum_e C(e, n) axis_e I_e(z_k) times the patch current moment
    /// length (A_k / width, or L_k for line elements), zero on patches of undriven elements.
    template <typename Scalar>
    EmbeddedCurrentMatrix<Scalar> synth_embedded_current_matrix(const SurfaceMesh<Scalar> &mesh,
                                                                const std::vector<DipoleElement<Scalar>> &elements,
                                                                const CMatX<Scalar> &drive, const Wavenumber<Scalar> &k)
    {
        if (drive.rows() != Eigen::Index(elements.size()) || drive.cols() < 1)
            throw InvalidArgument("synth_embedded_current_matrix: drive matrix must have one row per element");

        CMatX<Scalar> M = CMatX<Scalar>::Zero(3 * Eigen::Index(mesh.size()), drive.cols());
        for (std::size_t p = 0; p < mesh.size(); ++p)
        {
            const auto &patch = mesh.patches[p];
            if (patch.element >= elements.size())
                throw InvalidArgument("synth_embedded_current_matrix: patch " + std::to_string(p) +
                                      " references element " + std::to_string(patch.element) + " which does not exist");
            const auto &el = elements[patch.element];
            const Vec3<Scalar> offset = patch.centroid - el.center;
            const Scalar z_local = offset.dot(el.axis);
            const Scalar lateral = (offset - z_local * el.axis).norm();
            if (std::abs(z_local) > el.length / Scalar(2) || lateral > el.width / Scalar(2) + Scalar(1e-12) * el.length)
                throw InvalidArgument("synth_embedded_current_matrix: patch " + std::to_string(p) +
                                      " does not lie on element " + std::to_string(patch.element));

            const Scalar moment_length = el.width > Scalar(0) ? patch.area / el.width : patch.side_length;
            const CVec3<Scalar> j = sinusoidal_current(z_local, el, k) * moment_length;
            M.middleRows(3 * Eigen::Index(p), 3) += j * drive.row(Eigen::Index(patch.element));
        }
        return EmbeddedCurrentMatrix<Scalar>(std::move(M));
    }

    template <typename Scalar>
    EmbeddedCurrentMatrix<Scalar> synth_embedded_current_matrix(const SurfaceMesh<Scalar> &mesh,
                                                                const std::vector<DipoleElement<Scalar>> &elements,
                                                                CouplingModel model, std::uint64_t seed,
                                                                const Wavenumber<Scalar> &k)
    {
        return synth_embedded_current_matrix(mesh, elements, coupling_matrix(elements, model, seed), k);
    }

    // Composite Gauss-Legendre layout used by the reference integral
    struct ReferenceQuadrature
    {
        std::size_t panels = 0;      // along each element
        std::size_t panel_order = 8; // GL points per panel
        std::size_t width_order = 0; // GL points across the strip (0 for line elements)

        std::size_t points_per_element() const { return panels * panel_order; }
    };

    template <typename Scalar>
    struct ReferenceField
    {
        FieldVector<Scalar> e_sim;
        ReferenceQuadrature method;
        Scalar convergence = Scalar(0); // relative change from the previous refinement
    };

    namespace detail
    {
        template <typename Scalar>
        FieldVector<Scalar> integrate_elements(const Vec3<Scalar> &r, const std::vector<DipoleElement<Scalar>> &elements,
                                               const CVecX<Scalar> &amplitudes, const Wavenumber<Scalar> &k,
                                               const ReferenceQuadrature &q)
        {
            const auto &axial = gauss_legendre<Scalar>(q.panel_order);
            FieldVector<Scalar> e = FieldVector<Scalar>::Zero();
            for (std::size_t i = 0; i < elements.size(); ++i)
            {
                if (amplitudes(Eigen::Index(i)) == std::complex<Scalar>(0))
                    continue;
                const auto &el = elements[i];
                const Vec3<Scalar> across = el.width_direction();
                const Scalar panel = el.length / Scalar(q.panels);
                FieldVector<Scalar> acc = FieldVector<Scalar>::Zero();
                for (std::size_t p = 0; p < q.panels; ++p)
                {
                    const Scalar z0 = -el.length / Scalar(2) + (Scalar(p) + Scalar(0.5)) * panel;
                    for (std::size_t a = 0; a < axial.order(); ++a)
                    {
                        const Scalar z = z0 + Scalar(0.5) * panel * axial.nodes[a];
                        const CVec3<Scalar> j = sinusoidal_current(z, el, k) * (Scalar(0.5) * panel * axial.weights[a]);
                        const Vec3<Scalar> on_axis = el.center + z * el.axis;
                        if (q.width_order == 0 || el.width == Scalar(0))
                        {
                            acc += dyadic_green(r, on_axis, k) * j;
                            continue;
                        }
                        // Uniform density across the width: average over the strip
                        const auto &lateral = gauss_legendre<Scalar>(q.width_order);
                        for (std::size_t b = 0; b < lateral.order(); ++b)
                        {
                            const Vec3<Scalar> s = on_axis + (Scalar(0.5) * el.width * lateral.nodes[b]) * across;
                            acc += dyadic_green(r, s, k) * (j * (Scalar(0.5) * lateral.weights[b]));
                        }
                    }
                }
                e += amplitudes(Eigen::Index(i)) * acc;
            }
            return e;
        }
    }

    /// Radiation integral of the element currents evaluated by brute-force composite quadrature.
    ///
    /// Starts with at least `refinement` axial points per element (8-point GL panels, an even
    /// panel count so the feed point is a panel boundary) and 4 points across each strip, then
    /// doubles both until two successive results agree to 1e-8 relative. Throws OracleFailure
    /// after `max_doublings` doublings without convergence.
    template <typename Scalar>
    ReferenceField<Scalar> reference_field(const Vec3<Scalar> &r, const std::vector<DipoleElement<Scalar>> &elements,
                                           const std::type_identity_t<CVecX<Scalar>> &amplitudes,
                                           const Wavenumber<Scalar> &k, std::size_t refinement, std::size_t max_doublings = 3,
                                           Scalar tolerance = Scalar(1e-8))
    {
        if (amplitudes.size() != Eigen::Index(elements.size()))
            throw InvalidArgument("reference_field: one amplitude per element is required");
        if (refinement < 1)
            throw InvalidArgument("reference_field: refinement must be >= 1");
        for (const auto &el : elements)
            el.validate();

        ReferenceQuadrature q;
        q.panels = (refinement + q.panel_order - 1) / q.panel_order;
        q.panels += q.panels % 2;
        q.width_order = 4;

        FieldVector<Scalar> previous = detail::integrate_elements(r, elements, amplitudes, k, q);
        for (std::size_t d = 0; d < max_doublings; ++d)
        {
            ReferenceQuadrature finer = q;
            finer.panels *= 2;
            finer.width_order = std::min<std::size_t>(2 * q.width_order, gl_max_order);
            const FieldVector<Scalar> current = detail::integrate_elements(r, elements, amplitudes, k, finer);
            const Scalar scale = current.norm();
            const Scalar change = scale > Scalar(0) ? (current - previous).norm() / scale : Scalar(0);
            if (change < tolerance)
                return ReferenceField<Scalar>{current, finer, change};
            previous = current;
            q = finer;
        }
        std::ostringstream msg;
        msg << "reference_field: quadrature did not converge to " << tolerance << " after " << max_doublings
            << " doublings";
        throw OracleFailure(msg.str());
    }
}

#endif

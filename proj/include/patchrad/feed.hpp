// SPDX-License-Identifier: Apache-2.0
//
// patchrad: patch-averaged radiation operators for near-field array modelling
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

// Continuous feeding model.
//
// A feed function w(p) over a feed locus replaces the discrete port weights; the
// current it induces is the superposition of a current kernel j(s, p) (current
// density at s due to a unit feed at p). The field is then
//   e(r) = int w(p) a(r, p) dp,   a(r, p) = sum_k K_k(r) j(s_k, p) A_k
// and is evaluated as a uniform midpoint Riemann sum over the locus.
//
// The feed locus is a set of line segments, by default the centerline of every
// element. Surface-dense feeds are not modelled.

#ifndef PATCHRAD_FEED_HPP
#define PATCHRAD_FEED_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <type_traits>
#include <vector>

#include "patchrad/geometry.hpp"
#include "patchrad/radiation.hpp"

namespace patchrad
{
    template <typename Scalar>
    struct FeedFunction
    {
        std::string name;
        std::function<std::complex<Scalar>(const Vec3<Scalar> &)> w;

        std::complex<Scalar> operator()(const Vec3<Scalar> &p) const { return w(p); }
    };

    template <typename Scalar>
    FeedFunction<Scalar> uniform_feed(std::complex<Scalar> value = Scalar(1))
    {
        return {"uniform", [value](const Vec3<Scalar> &) { return value; }};
    }

    /// exp(j kappa u.p)
    template <typename Scalar>
    FeedFunction<Scalar> linear_phase_feed(const Wavenumber<Scalar> &k, const std::type_identity_t<Vec3<Scalar>> &direction)
    {
        const Vec3<Scalar> g = k.kappa() * direction;
        return {"linear-phase", [g](const Vec3<Scalar> &p) { return std::polar(Scalar(1), g.dot(p)); }};
    }

    /// exp(-|p - c|^2 / (2 tau^2))
    template <typename Scalar>
    FeedFunction<Scalar> gaussian_taper_feed(const std::type_identity_t<Vec3<Scalar>> &center, Scalar tau)
    {
        if (!(tau > Scalar(0)))
            throw InvalidArgument("gaussian_taper_feed: taper width must be positive");
        return {"gaussian-taper", [center, tau](const Vec3<Scalar> &p) {
                    return std::complex<Scalar>(std::exp(-(p - center).squaredNorm() / (Scalar(2) * tau * tau)));
                }};
    }

    template <typename Scalar>
    using CurrentKernel = std::function<CVec3<Scalar>(const Vec3<Scalar> &s, const Vec3<Scalar> &p)>;

    /// j(s, p) = direction exp(-|s - p|^2 / (2 sigma^2)), a feed spreading current around p
    template <typename Scalar>
    CurrentKernel<Scalar> gaussian_spread_kernel(const std::type_identity_t<Vec3<Scalar>> &direction, Scalar sigma)
    {
        if (!(sigma > Scalar(0)))
            throw InvalidArgument("gaussian_spread_kernel: sigma must be positive");
        const CVec3<Scalar> d = direction.normalized().template cast<std::complex<Scalar>>();
        return [d, sigma](const Vec3<Scalar> &s, const Vec3<Scalar> &p) -> CVec3<Scalar> {
            return d * std::exp(-(s - p).squaredNorm() / (Scalar(2) * sigma * sigma));
        };
    }

    /// Kernel reproducing the discrete embedded currents: a feed at p excites the port
    /// whose feed point is nearest, j(s_k, p) = M_(k) e_n / A_k. Zero off the mesh centroids.
    template <typename Scalar>
    CurrentKernel<Scalar> embedded_current_kernel(const SurfaceMesh<Scalar> &mesh, const EmbeddedCurrentMatrix<Scalar> &M,
                                                  const std::vector<Vec3<Scalar>> &port_points)
    {
        if (M.segments() != mesh.size())
            throw InvalidArgument("embedded_current_kernel: mesh / current matrix size mismatch");
        if (port_points.size() != M.ports())
            throw InvalidArgument("embedded_current_kernel: one feed point per port is required");

        using Key = std::tuple<Scalar, Scalar, Scalar>;
        auto index = std::make_shared<std::map<Key, std::size_t>>();
        for (std::size_t k = 0; k < mesh.size(); ++k)
        {
            const auto &c = mesh.patches[k].centroid;
            (*index)[Key(c.x(), c.y(), c.z())] = k;
        }
        auto density = std::make_shared<CMatX<Scalar>>(M.matrix());
        for (std::size_t k = 0; k < mesh.size(); ++k)
            density->middleRows(3 * Eigen::Index(k), 3) /= mesh.patches[k].area;

        return [index, density, port_points](const Vec3<Scalar> &s, const Vec3<Scalar> &p) -> CVec3<Scalar> {
            const auto it = index->find(Key(s.x(), s.y(), s.z()));
            if (it == index->end())
                return CVec3<Scalar>::Zero();
            std::size_t port = 0;
            Scalar best = std::numeric_limits<Scalar>::max();
            for (std::size_t n = 0; n < port_points.size(); ++n)
            {
                const Scalar d = (port_points[n] - p).squaredNorm();
                if (d < best)
                {
                    best = d;
                    port = n;
                }
            }
            return density->block(3 * Eigen::Index(it->second), Eigen::Index(port), 3, 1);
        };
    }

    template <typename Scalar>
    struct FeedSegment
    {
        Vec3<Scalar> start;
        Vec3<Scalar> end;

        Scalar length() const { return (end - start).norm(); }
    };

    template <typename Scalar>
    using FeedLocus = std::vector<FeedSegment<Scalar>>;

    /// Centerline of every element, in element order
    template <typename Scalar>
    FeedLocus<Scalar> element_centerlines(const ArrayLayout<Scalar> &layout)
    {
        layout.validate();
        FeedLocus<Scalar> locus;
        const Vec3<Scalar> half = Scalar(0.5) * layout.element_length * Vec3<Scalar>::UnitZ();
        for (std::size_t e = 0; e < layout.element_count(); ++e)
        {
            const Vec3<Scalar> c = layout.element_center(e);
            locus.push_back({c - half, c + half});
        }
        return locus;
    }

    /// Midpoints of a uniform grid of spacing dp on every locus segment.
    /// Each segment length must be an integer multiple of dp (to 1e-9 relative).
    template <typename Scalar>
    std::vector<Vec3<Scalar>> feed_grid(const FeedLocus<Scalar> &locus, Scalar dp)
    {
        if (!(dp > Scalar(0)))
            throw InvalidArgument("feed_grid: grid spacing must be positive");
        std::vector<Vec3<Scalar>> points;
        for (const auto &seg : locus)
        {
            const Scalar len = seg.length();
            const auto cells = static_cast<long long>(std::llround(len / dp));
            if (cells < 1 || std::abs(Scalar(cells) * dp - len) > Scalar(1e-9) * len)
                throw InvalidArgument("feed_grid: segment length is not a multiple of the grid spacing");
            const Vec3<Scalar> step = (seg.end - seg.start) / Scalar(cells);
            for (long long c = 0; c < cells; ++c)
                points.push_back(seg.start + (Scalar(c) + Scalar(0.5)) * step);
        }
        if (points.empty())
            throw InvalidArgument("feed_grid: empty feed locus");
        return points;
    }

    /// a(r, p) = sum_k K_k(r) j(s_k, p) A_k for a prebuilt operator at r
    template <typename Scalar>
    CVec3<Scalar> continuous_steering(const RadiationOperator<Scalar> &op, const Vec3<Scalar> &p,
                                      const CurrentKernel<Scalar> &kernel, const SurfaceMesh<Scalar> &mesh)
    {
        if (op.segments() != mesh.size())
            throw InvalidArgument("continuous_steering: operator / mesh size mismatch");
        CVec3<Scalar> a = CVec3<Scalar>::Zero();
        for (std::size_t k = 0; k < mesh.size(); ++k)
        {
            const auto &patch = mesh.patches[k];
            const CVec3<Scalar> j = kernel(patch.centroid, p);
            if (j.isZero(0))
                continue;
            a += op.block(k) * (j * patch.area);
        }
        return a;
    }

    /// Continuous steering vector through the patch operator at r
    template <typename Scalar>
    CVec3<Scalar> continuous_steering(const Vec3<Scalar> &r, const Vec3<Scalar> &p, const CurrentKernel<Scalar> &kernel,
                                      const SurfaceMesh<Scalar> &mesh, const std::vector<TangentFrame<Scalar>> &frames,
                                      const GLRule<Scalar> &rule, const Wavenumber<Scalar> &k)
    {
        return continuous_steering(patch_operator(r, mesh, frames, rule, k), p, kernel, mesh);
    }

    /// u_r^H a(r, p)
    template <typename Scalar>
    std::complex<Scalar> scalar_steering(const RadiationOperator<Scalar> &op, const Vec3<Scalar> &p,
                                         const CurrentKernel<Scalar> &kernel, const SurfaceMesh<Scalar> &mesh,
                                         const Polarization<Scalar> &pol)
    {
        return scalar_field(FieldVector<Scalar>(continuous_steering(op, p, kernel, mesh)), pol);
    }

    /// Midpoint Riemann sum e(r) ~ sum_n w(p_n) dp a(r, p_n) over the feed grid of spacing dp
    template <typename Scalar>
    FieldVector<Scalar> riemann_field(const RadiationOperator<Scalar> &op, const FeedFunction<Scalar> &w,
                                      const CurrentKernel<Scalar> &kernel, const SurfaceMesh<Scalar> &mesh,
                                      const FeedLocus<Scalar> &locus, Scalar dp)
    {
        FieldVector<Scalar> e = FieldVector<Scalar>::Zero();
        for (const auto &p : feed_grid(locus, dp))
        {
            const std::complex<Scalar> wp = w(p);
            if (wp == std::complex<Scalar>(0))
                continue;
            e += (wp * dp) * continuous_steering(op, p, kernel, mesh);
        }
        return e;
    }

    /// Numerical rank of M: singular values above tol * sigma_max
    template <typename Scalar>
    std::size_t current_subspace_dimension(const EmbeddedCurrentMatrix<Scalar> &M, Scalar tol)
    {
        Eigen::BDCSVD<CMatX<Scalar>> svd(M.matrix());
        const auto &sv = svd.singularValues();
        if (sv.size() == 0 || !(sv(0) > Scalar(0)))
            return 0;
        std::size_t rank = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > tol * sv(0))
                ++rank;
        return rank;
    }
}

#endif

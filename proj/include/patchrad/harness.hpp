// SPDX-License-Identifier: Apache-2.0
//
// patchrad: patch-averaged radiation operators for near-field array modelling
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

// Distance-sweep accuracy studies and operator cost benchmarks.
//
// Observation points lie on a ray from the mesh centroid. Azimuth is measured from
// +x toward +y in the xy-plane, elevation from the xy-plane toward +z.

#ifndef PATCHRAD_HARNESS_HPP
#define PATCHRAD_HARNESS_HPP

#include <complex>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "patchrad/geometry.hpp"
#include "patchrad/oracle.hpp"

namespace patchrad
{
    struct SweepConfig
    {
        std::string name = "sweep";
        double wavelength = 0.06; // meters
        std::size_t rows = 1;     // rows > 1 makes a planar array
        std::size_t cols = 8;
        double spacing_wavelengths = 0.5;
        double element_length_wavelengths = 0.5;
        std::size_t segments_per_element = 72;
        CurrentProfile profile = CurrentProfile::sinusoidal;
        CouplingModel coupling = CouplingModel::none;
        std::uint64_t seed = 1;

        std::size_t quadrature_order = 2;
        std::size_t oracle_refinement = 8; // reference axial points per model segment

        double distance_min_wavelengths = 0.5;
        double distance_max_wavelengths = 200.0;
        std::size_t distance_count = 40;
        double azimuth_deg = 120.0;
        double elevation_deg = 30.0;
        Vec3<double> polarization = Vec3<double>::UnitZ();
        std::vector<std::complex<double>> weights; // empty: all ones

        std::size_t threads = 1;

        bool planar() const { return rows > 1; }
        ArrayLayout<double> layout() const;
        std::vector<double> distances() const; // meters, log-spaced
        Vec3<double> direction() const;
        CVecX<double> port_weights() const;
        void validate() const;
    };

    struct ErrorSample
    {
        double distance = 0.0; // meters from the array centroid
        double rel_error_point_source = 0.0;
        double rel_error_patch = 0.0;
        double rel_error_scalar_point_source = 0.0; // u_r^H projections
        double rel_error_scalar_patch = 0.0;
        double reference_norm = 0.0;
    };

    struct ErrorCurve
    {
        SweepConfig config;
        std::string version;
        Vec3<double> origin = Vec3<double>::Zero();
        double aperture = 0.0;
        double rayleigh = 0.0;
        std::vector<ErrorSample> samples;
    };

    /// |e_sim - e_model| / |e_sim|
    template <typename Scalar>
    Scalar relative_error(const FieldVector<Scalar> &e_sim, const FieldVector<Scalar> &e_model)
    {
        const Scalar ref = e_sim.norm();
        if (!(ref > Scalar(0)))
            throw UndefinedMetricError("relative_error: reference field is zero");
        return (e_sim - e_model).norm() / ref;
    }

    double rayleigh_distance(double aperture, double wavelength);

    ErrorCurve run_distance_sweep(const SweepConfig &cfg);

    struct CostRow
    {
        std::size_t elements = 0;
        std::size_t segments = 0;
        std::size_t green_calls_point_source = 0;
        std::size_t green_calls_patch = 0;
        double seconds_point_source = 0.0; // median per observation point
        double seconds_patch = 0.0;
    };

    struct CostTable
    {
        std::size_t quadrature_order = 2;
        std::size_t repetitions = 11;
        std::string version;
        std::vector<CostRow> rows;
    };

    /// One linear-array row per element count (base supplies spacing, segments and wavelength).
    /// Times are medians over `repetitions` builds of operator + field at one observation point.
    CostTable run_cost_benchmark(const SweepConfig &base, const std::vector<std::size_t> &element_counts,
                                 std::size_t repetitions = 11);

    void export_results(const ErrorCurve &curve, const std::filesystem::path &path, const std::string &format = "csv");
    void export_results(const CostTable &table, const std::filesystem::path &path, const std::string &format = "csv");

    // Reads the sample rows of an exported curve; metadata lines are skipped.
    std::vector<ErrorSample> read_error_curve_csv(const std::filesystem::path &path);

    std::string build_version();
}

#endif

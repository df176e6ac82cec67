// SPDX-License-Identifier: Apache-2.0
//
// patchrad: patch-averaged radiation operators for near-field array modelling
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "patchrad/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <numbers>
#include <thread>

#include "patchrad/io.hpp"
#include "patchrad/radiation.hpp"

#ifndef PATCHRAD_VERSION_STRING
#define PATCHRAD_VERSION_STRING "unknown"
#endif

namespace patchrad
{
    std::string build_version() { return PATCHRAD_VERSION_STRING; }

    ArrayLayout<double> SweepConfig::layout() const
    {
        return ArrayLayout<double>{rows, cols, spacing_wavelengths * wavelength, element_length_wavelengths * wavelength,
                                   segments_per_element, wavelength};
    }

    std::vector<double> SweepConfig::distances() const
    {
        std::vector<double> d(distance_count);
        const double lo = std::log(distance_min_wavelengths * wavelength);
        const double hi = std::log(distance_max_wavelengths * wavelength);
        for (std::size_t i = 0; i < distance_count; ++i)
        {
            const double t = distance_count == 1 ? 0.0 : double(i) / double(distance_count - 1);
            d[i] = std::exp(lo + t * (hi - lo));
        }
        return d;
    }

    Vec3<double> SweepConfig::direction() const
    {
        const double az = azimuth_deg * std::numbers::pi / 180.0;
        const double el = elevation_deg * std::numbers::pi / 180.0;
        return Vec3<double>(std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el));
    }

    CVecX<double> SweepConfig::port_weights() const
    {
        const Eigen::Index n = Eigen::Index(rows * cols);
        if (weights.empty())
            return CVecX<double>::Ones(n);
        CVecX<double> w(n);
        for (Eigen::Index i = 0; i < n; ++i)
            w(i) = weights[std::size_t(i)];
        return w;
    }

    void SweepConfig::validate() const
    {
        layout().validate();
        if (!weights.empty() && weights.size() != rows * cols)
            throw InvalidArgument("SweepConfig: weights must have one entry per element (" +
                                  std::to_string(rows * cols) + ")");
        if (distance_count < 1)
            throw InvalidArgument("SweepConfig: distance_count must be >= 1");
        if (!(distance_min_wavelengths > 0.0) || distance_max_wavelengths < distance_min_wavelengths ||
            (distance_count > 1 && !(distance_max_wavelengths > distance_min_wavelengths)))
            throw InvalidArgument("SweepConfig: distances must be positive and increasing");
        if (!(azimuth_deg >= 0.0 && azimuth_deg < 360.0) || !(elevation_deg >= -90.0 && elevation_deg <= 90.0))
            throw InvalidArgument("SweepConfig: angles must lie in [0, 360) x [-90, 90] degrees");
        if (quadrature_order < 1 || quadrature_order > gl_max_order)
            throw InvalidArgument("SweepConfig: quadrature_order must be in [1, 32]");
        if (oracle_refinement < 8)
            throw InvalidArgument("SweepConfig: oracle_refinement must be >= 8 (x the model segment count)");
        if (!(polarization.norm() > 0.0))
            throw InvalidArgument("SweepConfig: polarization must be non-zero");
        if (threads < 1)
            throw InvalidArgument("SweepConfig: threads must be >= 1");
    }

    double rayleigh_distance(double aperture, double wavelength)
    {
        if (!(aperture > 0.0) || !(wavelength > 0.0))
            throw InvalidArgument("rayleigh_distance: aperture and wavelength must be positive");
        return 2.0 * aperture * aperture / wavelength;
    }

    namespace
    {
        // Runs job(i) for i in [0, count) on up to `threads` workers; rethrows the first failure by index.
        template <typename Job>
        void parallel_for(std::size_t count, std::size_t threads, Job &&job)
        {
            std::vector<std::exception_ptr> errors(count);
            std::atomic<std::size_t> next{0};
            auto worker = [&] {
                for (std::size_t i = next++; i < count; i = next++)
                {
                    try
                    {
                        job(i);
                    }
                    catch (...)
                    {
                        errors[i] = std::current_exception();
                    }
                }
            };
            const std::size_t n = std::max<std::size_t>(1, std::min(threads, count));
            {
                std::vector<std::jthread> pool;
                for (std::size_t t = 1; t < n; ++t)
                    pool.emplace_back(worker);
                worker();
            }
            for (auto &e : errors)
                if (e)
                    std::rethrow_exception(e);
        }

        double scalar_relative_error(const FieldVector<double> &sim, const FieldVector<double> &model,
                                     const Polarization<double> &pol)
        {
            const std::complex<double> ref = scalar_field(sim, pol);
            if (std::abs(ref) == 0.0)
                return std::numeric_limits<double>::quiet_NaN();
            return std::abs(ref - scalar_field(model, pol)) / std::abs(ref);
        }
    }

    ErrorCurve run_distance_sweep(const SweepConfig &cfg)
    {
        cfg.validate();
        const auto layout = cfg.layout();
        const Wavenumber<double> k(cfg.wavelength);
        const auto mesh = build_mesh(layout);
        const auto elements = build_dipole_elements(layout, cfg.profile);
        const CMatX<double> drive = coupling_matrix(elements, cfg.coupling, cfg.seed);
        const auto M = synth_embedded_current_matrix(mesh, elements, drive, k);
        const auto frames = compute_tangent_frames(mesh, M);
        const auto &rule = gauss_legendre<double>(cfg.quadrature_order);
        const CVecX<double> w = cfg.port_weights();
        const CVecX<double> amplitudes = drive * w;
        const Polarization<double> pol(cfg.polarization);
        const std::size_t refinement = cfg.oracle_refinement * cfg.segments_per_element;

        ErrorCurve curve;
        curve.config = cfg;
        curve.version = build_version();
        curve.origin = mesh.centroid();
        curve.aperture = layout.aperture_size();
        curve.rayleigh = rayleigh_distance(curve.aperture, cfg.wavelength);

        const auto distances = cfg.distances();
        const Vec3<double> dir = cfg.direction();
        curve.samples.resize(distances.size());
        parallel_for(distances.size(), cfg.threads, [&](std::size_t i) {
            const Vec3<double> r = curve.origin + distances[i] * dir;
            // models first so the proximity guard fires before the oracle is attempted
            const auto e_ps = radiated_field(point_source_operator(r, mesh, k), M, w);
            const auto e_patch = radiated_field(patch_operator(r, mesh, frames, rule, k), M, w);
            const auto ref = reference_field(r, elements, amplitudes, k, refinement);

            ErrorSample &s = curve.samples[i];
            s.distance = distances[i];
            s.rel_error_point_source = relative_error(ref.e_sim, e_ps);
            s.rel_error_patch = relative_error(ref.e_sim, e_patch);
            s.rel_error_scalar_point_source = scalar_relative_error(ref.e_sim, e_ps, pol);
            s.rel_error_scalar_patch = scalar_relative_error(ref.e_sim, e_patch, pol);
            s.reference_norm = ref.e_sim.norm();
        });
        return curve;
    }

    CostTable run_cost_benchmark(const SweepConfig &base, const std::vector<std::size_t> &element_counts,
                                 std::size_t repetitions)
    {
        if (repetitions < 1)
            throw InvalidArgument("run_cost_benchmark: repetitions must be >= 1");
        CostTable table;
        table.quadrature_order = base.quadrature_order;
        table.repetitions = repetitions;
        table.version = build_version();

        const Wavenumber<double> k(base.wavelength);
        const auto &rule = gauss_legendre<double>(base.quadrature_order);
        for (const std::size_t n : element_counts)
        {
            SweepConfig cfg = base;
            cfg.rows = 1;
            cfg.cols = n;
            cfg.weights.clear();
            cfg.validate();
            const auto layout = cfg.layout();
            const auto mesh = build_mesh(layout);
            const auto elements = build_dipole_elements(layout, cfg.profile);
            const auto M = synth_embedded_current_matrix(mesh, elements, cfg.coupling, cfg.seed, k);
            const auto frames = compute_tangent_frames(mesh, M);
            const CVecX<double> w = cfg.port_weights();
            const Vec3<double> r = mesh.centroid() + 10.0 * cfg.wavelength * cfg.direction();

            CostRow row;
            row.elements = n;
            row.segments = mesh.size();

            std::vector<double> t_ps, t_patch;
            FieldVector<double> sink = FieldVector<double>::Zero();
            for (std::size_t rep = 0; rep < repetitions; ++rep)
            {
                auto t0 = std::chrono::steady_clock::now();
                const auto ps = point_source_operator(r, mesh, k);
                sink += radiated_field(ps, M, w);
                auto t1 = std::chrono::steady_clock::now();
                const auto patch = patch_operator(r, mesh, frames, rule, k);
                sink += radiated_field(patch, M, w);
                auto t2 = std::chrono::steady_clock::now();
                t_ps.push_back(std::chrono::duration<double>(t1 - t0).count());
                t_patch.push_back(std::chrono::duration<double>(t2 - t1).count());
                row.green_calls_point_source = ps.green_calls;
                row.green_calls_patch = patch.green_calls;
            }
            if (!sink.allFinite())
                throw std::runtime_error("run_cost_benchmark: non-finite field");
            const auto median = [](std::vector<double> v) {
                std::nth_element(v.begin(), v.begin() + std::ptrdiff_t(v.size() / 2), v.end());
                return v[v.size() / 2];
            };
            row.seconds_point_source = median(t_ps);
            row.seconds_patch = median(t_patch);
            table.rows.push_back(row);
        }
        return table;
    }

    namespace
    {
        void require_csv(const std::string &format)
        {
            if (format != "csv")
                throw InvalidArgument("export_results: unsupported format '" + format + "' (only csv)");
        }

        std::ofstream open_output(const std::filesystem::path &path)
        {
            std::ofstream out(path, std::ios::binary);
            if (!out)
                throw IoError("export_results: cannot open '" + path.string() + "' for writing");
            return out;
        }

        const char *profile_name(CurrentProfile p) { return p == CurrentProfile::uniform ? "uniform" : "sinusoidal"; }
        const char *coupling_name(CouplingModel c)
        {
            return c == CouplingModel::none ? "none" : "phase-perturbation";
        }
    }

    void export_results(const ErrorCurve &curve, const std::filesystem::path &path, const std::string &format)
    {
        require_csv(format);
        auto out = open_output(path);
        const auto &c = curve.config;
        out << "# patchrad distance sweep\n";
        out << "# version = " << curve.version << '\n';
        out << "# name = " << c.name << '\n';
        out << "# geometry = " << (c.planar() ? "planar" : "linear") << ' ' << c.rows << 'x' << c.cols << '\n';
        out << "# wavelength_m = " << format_number(c.wavelength) << '\n';
        out << "# spacing_wavelengths = " << format_number(c.spacing_wavelengths) << '\n';
        out << "# element_length_wavelengths = " << format_number(c.element_length_wavelengths) << '\n';
        out << "# segments_per_element = " << c.segments_per_element << '\n';
        out << "# profile = " << profile_name(c.profile) << '\n';
        out << "# coupling = " << coupling_name(c.coupling) << '\n';
        out << "# seed = " << c.seed << '\n';
        out << "# quadrature_order = " << c.quadrature_order << '\n';
        out << "# oracle_refinement = " << c.oracle_refinement << '\n';
        out << "# azimuth_deg = " << format_number(c.azimuth_deg) << '\n';
        out << "# elevation_deg = " << format_number(c.elevation_deg) << '\n';
        out << "# polarization = " << format_number(c.polarization.x()) << ',' << format_number(c.polarization.y())
            << ',' << format_number(c.polarization.z()) << '\n';
        out << "# weights = " << (c.weights.empty() ? "uniform" : "explicit") << '\n';
        out << "# origin_m = " << format_number(curve.origin.x()) << ',' << format_number(curve.origin.y()) << ','
            << format_number(curve.origin.z()) << '\n';
        out << "# aperture_m = " << format_number(curve.aperture) << '\n';
        out << "# rayleigh_distance_m = " << format_number(curve.rayleigh) << '\n';
        out << "distance_m,distance_wavelengths,rel_error_point_source,rel_error_patch,"
               "rel_error_scalar_point_source,rel_error_scalar_patch,reference_norm\n";
        for (const auto &s : curve.samples)
        {
            out << format_number(s.distance) << ',' << format_number(s.distance / c.wavelength) << ','
                << format_number(s.rel_error_point_source) << ',' << format_number(s.rel_error_patch) << ','
                << format_number(s.rel_error_scalar_point_source) << ',' << format_number(s.rel_error_scalar_patch)
                << ',' << format_number(s.reference_norm) << '\n';
        }
        if (!out)
            throw IoError("export_results: write failed for '" + path.string() + "'");
    }

    void export_results(const CostTable &table, const std::filesystem::path &path, const std::string &format)
    {
        require_csv(format);
        auto out = open_output(path);
        out << "# patchrad operator cost benchmark\n";
        out << "# version = " << table.version << '\n';
        out << "# quadrature_order = " << table.quadrature_order << '\n';
        out << "# repetitions = " << table.repetitions << '\n';
        out << "n_elements,n_segments,green_calls_point_source,green_calls_patch,call_ratio,"
               "seconds_point_source,seconds_patch,time_ratio\n";
        for (const auto &r : table.rows)
        {
            const double call_ratio = double(r.green_calls_patch) / double(r.green_calls_point_source);
            out << r.elements << ',' << r.segments << ',' << r.green_calls_point_source << ',' << r.green_calls_patch
                << ',' << format_number(call_ratio) << ',' << format_number(r.seconds_point_source) << ','
                << format_number(r.seconds_patch) << ',' << format_number(r.seconds_patch / r.seconds_point_source)
                << '\n';
        }
        if (!out)
            throw IoError("export_results: write failed for '" + path.string() + "'");
    }

    std::vector<ErrorSample> read_error_curve_csv(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw IoError("read_error_curve_csv: cannot open '" + path.string() + "'");
        std::string line;
        bool header_seen = false;
        std::vector<ErrorSample> samples;
        std::size_t lineno = 0;
        while (std::getline(in, line))
        {
            ++lineno;
            if (line.empty() || line[0] == '#')
                continue;
            const auto cols = split_csv_line(line);
            if (!header_seen)
            {
                if (cols.size() != 7 || cols[0] != "distance_m")
                    throw IoError(path.string() + ": unexpected column header");
                header_seen = true;
                continue;
            }
            const std::string ctx = path.string() + ":" + std::to_string(lineno);
            if (cols.size() != 7)
                throw IoError(ctx + ": expected 7 columns");
            ErrorSample s;
            s.distance = parse_number(cols[0], ctx);
            s.rel_error_point_source = parse_number(cols[2], ctx);
            s.rel_error_patch = parse_number(cols[3], ctx);
            s.rel_error_scalar_point_source = parse_number(cols[4], ctx);
            s.rel_error_scalar_patch = parse_number(cols[5], ctx);
            s.reference_norm = parse_number(cols[6], ctx);
            samples.push_back(s);
        }
        if (!header_seen)
            throw IoError(path.string() + ": missing column header");
        return samples;
    }
}

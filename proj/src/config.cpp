// SPDX-License-Identifier: Apache-2.0
//
// patchrad: patch-averaged radiation operators for near-field array modelling
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "patchrad/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fstream>
#include <set>
#include <sstream>

#include "patchrad/io.hpp"

namespace pt = boost::property_tree;

namespace patchrad
{
    namespace
    {
        const std::set<std::string> &known_keys()
        {
            static const std::set<std::string> keys{
                "array.geometry", "array.elements", "array.rows", "array.cols", "array.spacing_wavelengths",
                "array.element_length_wavelengths", "array.segments_per_element", "array.wavelength_m",
                "array.profile", "currents.coupling", "currents.seed", "model.quadrature_order",
                "model.oracle_refinement", "sweep.name", "sweep.distance_min_wavelengths",
                "sweep.distance_max_wavelengths", "sweep.distance_count", "sweep.azimuth_deg", "sweep.elevation_deg",
                "sweep.polarization", "sweep.weights", "sweep.threads", "feed.function", "feed.direction",
                "feed.taper_wavelengths", "feed.kernel_sigma_wavelengths", "bench.element_counts",
                "bench.repetitions"};
            return keys;
        }

        std::string trim(std::string s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        }

        class Reader
        {
        public:
            explicit Reader(const pt::ptree &tree) : tree_(tree) {}

            std::string text(const std::string &key, const std::string &fallback) const
            {
                const auto v = tree_.get_optional<std::string>(pt::ptree::path_type(key, '.'));
                return v ? trim(*v) : fallback;
            }

            double number(const std::string &key, double fallback) const
            {
                const auto v = tree_.get_optional<std::string>(pt::ptree::path_type(key, '.'));
                if (!v)
                    return fallback;
                try
                {
                    return parse_number(trim(*v), "config key '" + key + "'");
                }
                catch (const IoError &e)
                {
                    throw ConfigError(e.what());
                }
            }

            std::size_t count(const std::string &key, std::size_t fallback) const
            {
                const double v = number(key, double(fallback));
                if (v < 0 || v != std::floor(v))
                    throw ConfigError("config key '" + key + "' must be a non-negative integer");
                return std::size_t(v);
            }

            std::vector<double> numbers(const std::string &key) const
            {
                std::vector<double> out;
                for (auto part : split_csv_line(text(key, "")))
                    out.push_back(number_of(std::string(part), key));
                return out;
            }

            Vec3<double> vec3(const std::string &key, const Vec3<double> &fallback) const
            {
                if (text(key, "").empty())
                    return fallback;
                const auto v = numbers(key);
                if (v.size() != 3)
                    throw ConfigError("config key '" + key + "' must hold three comma-separated numbers");
                return Vec3<double>(v[0], v[1], v[2]);
            }

        private:
            static double number_of(const std::string &s, const std::string &key)
            {
                try
                {
                    return parse_number(trim(s), "config key '" + key + "'");
                }
                catch (const IoError &e)
                {
                    throw ConfigError(e.what());
                }
            }

            const pt::ptree &tree_;
        };

        // "uniform" or "re:im, re:im, ..." (":im" optional)
        std::vector<std::complex<double>> parse_weights(const std::string &text)
        {
            if (text.empty() || text == "uniform")
                return {};
            std::vector<std::complex<double>> out;
            for (auto part : split_csv_line(text))
            {
                const std::string item = trim(std::string(part));
                const auto colon = item.find(':');
                const double re = parse_number(item.substr(0, colon), "sweep.weights");
                const double im = colon == std::string::npos ? 0.0 : parse_number(item.substr(colon + 1), "sweep.weights");
                out.emplace_back(re, im);
            }
            return out;
        }

        RunConfig interpret(const pt::ptree &tree)
        {
            for (const auto &section : tree)
            {
                if (section.second.empty() && !section.second.data().empty())
                    throw ConfigError("config key '" + section.first + "' must be inside a [section]");
                for (const auto &kv : section.second)
                {
                    const std::string key = section.first + "." + kv.first;
                    if (!known_keys().count(key))
                        throw ConfigError("unknown config key '" + key + "'");
                }
            }

            const Reader r(tree);
            RunConfig cfg;
            SweepConfig &s = cfg.sweep;

            const std::string geometry = r.text("array.geometry", "linear");
            if (geometry == "linear")
            {
                s.rows = 1;
                s.cols = r.count("array.elements", r.count("array.cols", 8));
            }
            else if (geometry == "planar")
            {
                s.rows = r.count("array.rows", 2);
                s.cols = r.count("array.cols", 4);
            }
            else
                throw ConfigError("array.geometry must be 'linear' or 'planar', got '" + geometry + "'");

            s.spacing_wavelengths = r.number("array.spacing_wavelengths", s.spacing_wavelengths);
            s.element_length_wavelengths = r.number("array.element_length_wavelengths", s.element_length_wavelengths);
            s.segments_per_element = r.count("array.segments_per_element", s.segments_per_element);
            s.wavelength = r.number("array.wavelength_m", s.wavelength);

            const std::string profile = r.text("array.profile", "sinusoidal");
            if (profile == "sinusoidal")
                s.profile = CurrentProfile::sinusoidal;
            else if (profile == "uniform")
                s.profile = CurrentProfile::uniform;
            else
                throw ConfigError("array.profile must be 'sinusoidal' or 'uniform', got '" + profile + "'");

            const std::string coupling = r.text("currents.coupling", "none");
            if (coupling == "none")
                s.coupling = CouplingModel::none;
            else if (coupling == "phase-perturbation")
                s.coupling = CouplingModel::phase_perturbation;
            else
                throw ConfigError("currents.coupling must be 'none' or 'phase-perturbation', got '" + coupling + "'");
            s.seed = r.count("currents.seed", std::size_t(s.seed));

            s.quadrature_order = r.count("model.quadrature_order", s.quadrature_order);
            s.oracle_refinement = r.count("model.oracle_refinement", s.oracle_refinement);

            s.name = r.text("sweep.name", s.name);
            s.distance_min_wavelengths = r.number("sweep.distance_min_wavelengths", s.distance_min_wavelengths);
            s.distance_max_wavelengths = r.number("sweep.distance_max_wavelengths", s.distance_max_wavelengths);
            s.distance_count = r.count("sweep.distance_count", s.distance_count);
            s.azimuth_deg = r.number("sweep.azimuth_deg", s.azimuth_deg);
            s.elevation_deg = r.number("sweep.elevation_deg", s.elevation_deg);
            s.polarization = r.vec3("sweep.polarization", s.polarization);
            try
            {
                s.weights = parse_weights(r.text("sweep.weights", "uniform"));
            }
            catch (const IoError &e)
            {
                throw ConfigError(e.what());
            }
            s.threads = r.count("sweep.threads", s.threads);

            FeedConfig &f = cfg.feed;
            f.function = r.text("feed.function", f.function);
            if (f.function != "uniform" && f.function != "linear-phase" && f.function != "gaussian-taper")
                throw ConfigError("feed.function must be uniform, linear-phase or gaussian-taper, got '" + f.function +
                                  "'");
            f.direction = r.vec3("feed.direction", f.direction);
            f.taper_wavelengths = r.number("feed.taper_wavelengths", f.taper_wavelengths);
            f.kernel_sigma_wavelengths = r.number("feed.kernel_sigma_wavelengths", f.kernel_sigma_wavelengths);

            BenchConfig &b = cfg.bench;
            if (!r.text("bench.element_counts", "").empty())
            {
                b.element_counts.clear();
                for (double v : r.numbers("bench.element_counts"))
                {
                    if (v < 1 || v != std::floor(v))
                        throw ConfigError("bench.element_counts must hold positive integers");
                    b.element_counts.push_back(std::size_t(v));
                }
            }
            b.repetitions = r.count("bench.repetitions", b.repetitions);

            try
            {
                s.validate();
            }
            catch (const InvalidArgument &e)
            {
                throw ConfigError(e.what());
            }
            return cfg;
        }
    }

    Override parse_override(const std::string &text)
    {
        const auto eq = text.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("override '" + text + "' must have the form section.key=value");
        const std::string key = trim(text.substr(0, eq));
        if (key.find('.') == std::string::npos)
            throw ConfigError("override key '" + key + "' must have the form section.key");
        return {key, trim(text.substr(eq + 1))};
    }

    RunConfig parse_config_text(const std::string &text, const std::vector<Override> &overrides)
    {
        pt::ptree tree;
        std::istringstream in(text);
        try
        {
            pt::read_ini(in, tree);
        }
        catch (const pt::ini_parser_error &e)
        {
            throw ConfigError(std::string("config parse error: ") + e.what());
        }
        for (const auto &[key, value] : overrides)
        {
            if (!known_keys().count(key))
                throw ConfigError("unknown config key '" + key + "' in override");
            tree.put(pt::ptree::path_type(key, '.'), value);
        }
        return interpret(tree);
    }

    RunConfig load_config(const std::filesystem::path &path, const std::vector<Override> &overrides)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw IoError("cannot open config file '" + path.string() + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        try
        {
            return parse_config_text(ss.str(), overrides);
        }
        catch (const ConfigError &e)
        {
            throw ConfigError(path.string() + ": " + e.what());
        }
    }

    FeedFunction<double> make_feed_function(const FeedConfig &feed, const SweepConfig &sweep)
    {
        const Wavenumber<double> k(sweep.wavelength);
        if (feed.function == "uniform")
            return uniform_feed<double>();
        if (feed.function == "linear-phase")
            return linear_phase_feed(k, Vec3<double>(feed.direction.normalized()));
        if (feed.function == "gaussian-taper")
            return gaussian_taper_feed(Vec3<double>(Vec3<double>::Zero()), feed.taper_wavelengths * sweep.wavelength);
        throw ConfigError("unknown feed function '" + feed.function + "'");
    }
}

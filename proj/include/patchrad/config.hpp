// SPDX-License-Identifier: Apache-2.0
//
// patchrad: patch-averaged radiation operators for near-field array modelling
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

// INI-style run configuration ("key = value" lines grouped in [sections], '#' or ';' comments).
// See configs/*.cfg for every recognised key.

#ifndef PATCHRAD_CONFIG_HPP
#define PATCHRAD_CONFIG_HPP

#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "patchrad/feed.hpp"
#include "patchrad/harness.hpp"

namespace patchrad
{
    struct ConfigError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    struct FeedConfig
    {
        std::string function = "linear-phase"; // uniform | linear-phase | gaussian-taper
        Vec3<double> direction = Vec3<double>::UnitY();
        double taper_wavelengths = 2.0;
        double kernel_sigma_wavelengths = 0.125;
    };

    struct BenchConfig
    {
        std::vector<std::size_t> element_counts{2, 4, 8, 16, 32};
        std::size_t repetitions = 11;
    };

    struct RunConfig
    {
        SweepConfig sweep;
        FeedConfig feed;
        BenchConfig bench;
    };

    using Override = std::pair<std::string, std::string>; // "section.key", value

    // Parses "section.key=value"
    Override parse_override(const std::string &text);

    RunConfig parse_config_text(const std::string &text, const std::vector<Override> &overrides = {});
    RunConfig load_config(const std::filesystem::path &path, const std::vector<Override> &overrides = {});

    FeedFunction<double> make_feed_function(const FeedConfig &feed, const SweepConfig &sweep);
}

#endif

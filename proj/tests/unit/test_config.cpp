// SPDX-License-Identifier: Apache-2.0
//
// patchrad: patch-averaged radiation operators for near-field array modelling
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include <doctest.h>

#include <fstream>

#include "patchrad/config.hpp"
#include "test_helpers.hpp"

using namespace patchrad;

TEST_CASE("defaults from an empty file")
{
    const auto cfg = parse_config_text("");
    CHECK(cfg.sweep.rows == 1);
    CHECK(cfg.sweep.cols == 8);
    CHECK(cfg.sweep.segments_per_element == 72);
    CHECK(cfg.sweep.quadrature_order == 2);
    CHECK(cfg.sweep.azimuth_deg == 120.0);
    CHECK(cfg.sweep.elevation_deg == 30.0);
    CHECK(cfg.sweep.distance_count == 40);
    CHECK(cfg.feed.function == "linear-phase");
    CHECK(cfg.bench.element_counts == std::vector<std::size_t>{2, 4, 8, 16, 32});
    CHECK(cfg.bench.repetitions == 11);
}

TEST_CASE("full configuration")
{
    const std::string text = R"(# comment
; another comment
[array]
geometry = planar
rows = 2
cols = 4
spacing_wavelengths = 4
element_length_wavelengths = 0.5
segments_per_element = 36
wavelength_m = 0.1
profile = uniform

[currents]
coupling = phase-perturbation
seed = 99

[model]
quadrature_order = 3
oracle_refinement = 16

[sweep]
name = trial
distance_min_wavelengths = 1
distance_max_wavelengths = 10
distance_count = 5
azimuth_deg = 10
elevation_deg = -20
polarization = 0, 1, 0
weights = 1, 0:1, -1, 2:-0.5, 1, 1, 1, 1
threads = 2

[feed]
function = gaussian-taper
direction = 0, 0, 1
taper_wavelengths = 3
kernel_sigma_wavelengths = 0.25

[bench]
element_counts = 2, 8
repetitions = 5
)";
    const auto cfg = parse_config_text(text);
    const auto &s = cfg.sweep;
    CHECK(s.planar());
    CHECK(s.rows == 2);
    CHECK(s.cols == 4);
    CHECK(s.spacing_wavelengths == 4.0);
    CHECK(s.segments_per_element == 36);
    CHECK(s.wavelength == 0.1);
    CHECK(s.profile == CurrentProfile::uniform);
    CHECK(s.coupling == CouplingModel::phase_perturbation);
    CHECK(s.seed == 99);
    CHECK(s.quadrature_order == 3);
    CHECK(s.oracle_refinement == 16);
    CHECK(s.name == "trial");
    CHECK(s.distance_count == 5);
    CHECK(s.elevation_deg == -20.0);
    CHECK(s.polarization == Vec3<double>::UnitY());
    REQUIRE(s.weights.size() == 8);
    CHECK(s.weights[1] == std::complex<double>(0, 1));
    CHECK(s.weights[3] == std::complex<double>(2, -0.5));
    CHECK(s.threads == 2);
    CHECK(cfg.feed.function == "gaussian-taper");
    CHECK(cfg.feed.taper_wavelengths == 3.0);
    CHECK(cfg.bench.element_counts == std::vector<std::size_t>{2, 8});
    CHECK(cfg.bench.repetitions == 5);

    const auto w = make_feed_function(cfg.feed, s);
    CHECK(w.name == "gaussian-taper");
    CHECK(std::abs(w(Vec3<double>(0.3, 0, 0)) - std::exp(-0.5)) < 1e-15);
}

TEST_CASE("overrides")
{
    const auto o = parse_override("sweep.azimuth_deg = 45");
    CHECK(o.first == "sweep.azimuth_deg");
    CHECK(o.second == "45");
    CHECK_THROWS_AS(parse_override("azimuth=45"), ConfigError);
    CHECK_THROWS_AS(parse_override("sweep.azimuth_deg"), ConfigError);

    const auto cfg = parse_config_text("[sweep]\nazimuth_deg = 10\n", {o, {"array.elements", "4"}});
    CHECK(cfg.sweep.azimuth_deg == 45.0);
    CHECK(cfg.sweep.cols == 4);
    CHECK_THROWS_AS(parse_config_text("", {{"sweep.nope", "1"}}), ConfigError);
}

TEST_CASE("configuration errors")
{
    CHECK_THROWS_AS(parse_config_text("[array]\ncolour = red\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[unknown]\nx = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("stray = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[array]\ngeometry = circular\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[array]\nelements = 2.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[array]\nspacing_wavelengths = abc\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[sweep]\nazimuth_deg = 400\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[sweep]\nweights = 1, 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[sweep]\npolarization = 1, 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[array\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[feed]\nfunction = chirp\n"), ConfigError);
}

TEST_CASE("shipped configurations load")
{
    for (const char *name : {"linear_halfwave", "linear_4lambda", "planar_halfwave", "planar_4lambda", "mini"})
    {
        const auto path = std::filesystem::path(PATCHRAD_CONFIG_DIR) / (std::string(name) + ".cfg");
        CAPTURE(path.string());
        CHECK_NOTHROW(load_config(path));
    }
    const auto planar = load_config(std::filesystem::path(PATCHRAD_CONFIG_DIR) / "planar_4lambda.cfg");
    CHECK(planar.sweep.rows == 2);
    CHECK(planar.sweep.cols == 4);
    CHECK(planar.sweep.spacing_wavelengths == 4.0);
    test::TempDir dir("config");
    std::ofstream(dir / "bad.cfg") << "[array]\nbogus = 1\n";
    try
    {
        load_config(dir / "bad.cfg");
        FAIL("expected ConfigError");
    }
    catch (const ConfigError &e)
    {
        CHECK(std::string(e.what()).find("bad.cfg") != std::string::npos);
    }
}

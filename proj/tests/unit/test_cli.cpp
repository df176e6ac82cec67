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
#include <sstream>

#include "cli.hpp"
#include "patchrad/harness.hpp"
#include "patchrad/io.hpp"
#include "test_helpers.hpp"

using namespace patchrad;

namespace
{
    struct Run
    {
        int code = -1;
        std::string out;
        std::string err;
    };

    Run run(std::vector<std::string> args)
    {
        std::ostringstream out, err;
        Run r;
        r.code = cli::parse_and_dispatch(args, out, err);
        r.out = out.str();
        r.err = err.str();
        return r;
    }

    const std::string mini = (std::filesystem::path(PATCHRAD_CONFIG_DIR) / "mini.cfg").string();

    std::string slurp(const std::filesystem::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
}

TEST_CASE("help lists every verb")
{
    const auto r = run({"--help"});
    CHECK(r.code == 0);
    for (const char *verb : {"sweep", "bench", "validate-greens", "validate-quadrature", "export-mesh", "subspace"})
        CHECK(r.out.find(verb) != std::string::npos);
    CHECK(run({"sweep", "--help"}).code == 0);
}

TEST_CASE("usage errors exit with 2")
{
    auto r = run({});
    CHECK(r.code == 2);

    r = run({"swep", "--config", mini});
    CHECK(r.code == 2);
    CHECK(r.err.find("did you mean 'sweep'") != std::string::npos);

    r = run({"sweep", "--config", "missing.cfg", "--out", "x.csv"});
    CHECK(r.code == 2);
    CHECK(r.err.find("missing.cfg") != std::string::npos);

    r = run({"sweep", "--config", mini});
    CHECK(r.code == 2); // --out is required

    r = run({"sweep", "--config", mini, "--out", "x.csv", "--thread", "2"});
    CHECK(r.code == 2);
    CHECK(r.err.find("did you mean '--threads'") != std::string::npos);

    r = run({"sweep", "--config", mini, "--out", "x.csv", "--set", "nonsense"});
    CHECK(r.code == 2);

    r = run({"sweep", "--config", mini, "--out", "x.csv", "--set", "sweep.colour=red"});
    CHECK(r.code == 2);
    CHECK(r.err.find("sweep.colour") != std::string::npos);
}

TEST_CASE("runtime errors exit with 1")
{
    test::TempDir dir("cli_rt");
    const auto r = run({"sweep", "--config", mini, "--out", (dir.path / "no" / "such" / "dir.csv").string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("dir.csv") != std::string::npos);
}

TEST_CASE("sweep verb writes a curve and honours overrides")
{
    test::TempDir dir("cli_sweep");
    const auto a = dir / "a.csv", b = dir / "b.csv", c = dir / "c.csv";
    REQUIRE(run({"sweep", "--config", mini, "--out", a.string()}).code == 0);
    REQUIRE(run({"sweep", "--config", mini, "--out", b.string(), "--threads", "3"}).code == 0);
    CHECK(slurp(a) == slurp(b));
    const auto samples = read_error_curve_csv(a);
    CHECK(samples.size() == 6);
    CHECK(slurp(a).find("rel_error_point_source") != std::string::npos);
    CHECK(slurp(a).find("rel_error_patch") != std::string::npos);

    REQUIRE(run({"sweep", "--config", mini, "--out", c.string(), "--set", "sweep.distance_count=3", "--seed", "8"})
                .code == 0);
    CHECK(read_error_curve_csv(c).size() == 3);
    CHECK(slurp(c).find("# seed = 8") != std::string::npos);
}

TEST_CASE("bench verb")
{
    test::TempDir dir("cli_bench");
    const auto r = run({"bench", "--config", mini, "--out", (dir / "cost.csv").string(), "--repetitions", "1"});
    CHECK(r.code == 0);
    CHECK(slurp(dir / "cost.csv").find("\n4,32,32,128,4,") != std::string::npos);
}

TEST_CASE("validation verbs")
{
    auto r = run({"validate-greens", "--pairs", "200", "--seed", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    r = run({"validate-quadrature", "--patches", "20"});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("export-mesh and subspace verbs")
{
    test::TempDir dir("cli_mesh");
    const auto r = run({"export-mesh", "--config", mini, "--out", (dir / "mesh.csv").string(), "--currents",
                        (dir / "m.csv").string()});
    CHECK(r.code == 0);
    CHECK(read_mesh_csv(dir / "mesh.csv", 0.06).size() == 16);
    CHECK(read_currents_csv(dir / "m.csv").ports() == 2);

    auto s = run({"subspace", "--currents", (dir / "m.csv").string()});
    CHECK(s.code == 0);
    CHECK(s.out.find("rank 2") != std::string::npos);
    s = run({"subspace", "--config", mini, "--tol", "1e-6"});
    CHECK(s.code == 0);
    CHECK(s.out.find("rank 2") != std::string::npos);
    CHECK(run({"subspace"}).code == 2);
    CHECK(run({"subspace", "--currents", "nowhere.csv"}).code == 2);
}

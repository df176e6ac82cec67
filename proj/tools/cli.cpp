// SPDX-License-Identifier: Apache-2.0
//
// patchrad: patch-averaged radiation operators for near-field array modelling
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>

#include "patchrad/config.hpp"
#include "patchrad/feed.hpp"
#include "patchrad/harness.hpp"
#include "patchrad/io.hpp"
#include "patchrad/validation.hpp"

namespace patchrad::cli
{
    namespace
    {
        struct UsageError : std::runtime_error
        {
            using std::runtime_error::runtime_error;
        };

        const std::vector<std::string> verbs{"sweep",  "bench",       "validate-greens", "validate-quadrature",
                                             "export-mesh", "subspace"};

        std::size_t edit_distance(const std::string &a, const std::string &b)
        {
            std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
            for (std::size_t j = 0; j <= b.size(); ++j)
                prev[j] = j;
            for (std::size_t i = 1; i <= a.size(); ++i)
            {
                cur[0] = i;
                for (std::size_t j = 1; j <= b.size(); ++j)
                    cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
                std::swap(prev, cur);
            }
            return prev[b.size()];
        }

        std::string suggestion(const std::string &word, const std::vector<std::string> &candidates)
        {
            std::string best;
            std::size_t best_d = 4;
            for (const auto &c : candidates)
            {
                const std::size_t d = edit_distance(word, c);
                if (d < best_d)
                {
                    best_d = d;
                    best = c;
                }
            }
            return best.empty() ? std::string() : "; did you mean '" + best + "'?";
        }

        // Shared options of the config-driven verbs
        struct ConfigOptions
        {
            std::string config;
            std::vector<std::string> overrides;
            std::optional<std::uint64_t> seed;
            std::optional<std::size_t> threads;

            void attach(CLI::App *cmd, bool config_required = true)
            {
                auto *opt = cmd->add_option("-c,--config", config, "Run configuration file");
                if (config_required)
                    opt->required();
                cmd->add_option("--set", overrides, "Override a config key: section.key=value (repeatable)");
                cmd->add_option("--seed", seed, "Seed for all pseudo-random synthesis");
                cmd->add_option("--threads", threads, "Maximum worker threads");
            }

            RunConfig load() const
            {
                if (!std::filesystem::exists(config))
                    throw UsageError("config file '" + config + "' does not exist");
                std::vector<Override> ovr;
                for (const auto &o : overrides)
                {
                    try
                    {
                        ovr.push_back(parse_override(o));
                    }
                    catch (const ConfigError &e)
                    {
                        throw UsageError(e.what());
                    }
                }
                if (seed)
                    ovr.emplace_back("currents.seed", std::to_string(*seed));
                if (threads)
                    ovr.emplace_back("sweep.threads", std::to_string(*threads));
                return load_config(config, ovr);
            }
        };

        int run_sweep(const ConfigOptions &opts, const std::string &out_path, std::ostream &out)
        {
            const RunConfig cfg = opts.load();
            const ErrorCurve curve = run_distance_sweep(cfg.sweep);
            export_results(curve, out_path);

            std::size_t dominated = 0, near = 0;
            for (const auto &s : curve.samples)
                if (s.distance < curve.rayleigh)
                {
                    ++near;
                    if (s.rel_error_patch <= s.rel_error_point_source)
                        ++dominated;
                }
            out << "sweep '" << cfg.sweep.name << "': " << curve.samples.size() << " samples written to " << out_path
                << '\n'
                << "rayleigh distance " << curve.rayleigh << " m; patch <= point-source at " << dominated << "/" << near
                << " near-field samples\n";
            return exit_ok;
        }

        int run_bench(const ConfigOptions &opts, const std::string &out_path, std::optional<std::size_t> reps,
                      std::ostream &out)
        {
            const RunConfig cfg = opts.load();
            const CostTable table =
                run_cost_benchmark(cfg.sweep, cfg.bench.element_counts, reps.value_or(cfg.bench.repetitions));
            export_results(table, out_path);
            out << "N      K      calls(ps)  calls(patch)  ratio  time ratio\n";
            for (const auto &r : table.rows)
                out << std::left << std::setw(7) << r.elements << std::setw(7) << r.segments << std::setw(11)
                    << r.green_calls_point_source << std::setw(14) << r.green_calls_patch << std::setw(7)
                    << double(r.green_calls_patch) / double(r.green_calls_point_source)
                    << r.seconds_patch / r.seconds_point_source << '\n';
            return exit_ok;
        }

        int run_export_mesh(const ConfigOptions &opts, const std::string &out_path, const std::string &currents_path,
                            std::ostream &out)
        {
            const RunConfig cfg = opts.load();
            const auto layout = cfg.sweep.layout();
            const auto mesh = build_mesh(layout);
            write_mesh_csv(mesh, out_path);
            out << "wrote " << mesh.size() << " patches to " << out_path << '\n';
            for (const auto &w : mesh_warnings(mesh))
                out << "warning: " << w << '\n';
            if (!currents_path.empty())
            {
                const Wavenumber<double> k(cfg.sweep.wavelength);
                const auto elements = build_dipole_elements(layout, cfg.sweep.profile);
                const auto M = synth_embedded_current_matrix(mesh, elements, cfg.sweep.coupling, cfg.sweep.seed, k);
                write_currents_csv(M, currents_path);
                out << "wrote " << M.segments() * 3 << "x" << M.ports() << " current matrix to " << currents_path
                    << '\n';
            }
            return exit_ok;
        }

        int run_subspace(const ConfigOptions &opts, const std::string &currents_path, double tol, std::ostream &out)
        {
            EmbeddedCurrentMatrix<double> M;
            if (!currents_path.empty())
            {
                if (!std::filesystem::exists(currents_path))
                    throw UsageError("currents file '" + currents_path + "' does not exist");
                M = read_currents_csv(currents_path);
            }
            else
            {
                if (opts.config.empty())
                    throw UsageError("subspace needs --config or --currents");
                const RunConfig cfg = opts.load();
                const auto layout = cfg.sweep.layout();
                const Wavenumber<double> k(cfg.sweep.wavelength);
                M = synth_embedded_current_matrix(build_mesh(layout), build_dipole_elements(layout, cfg.sweep.profile),
                                                  cfg.sweep.coupling, cfg.sweep.seed, k);
            }
            out << "current matrix " << M.segments() * 3 << "x" << M.ports() << ", numerical rank "
                << current_subspace_dimension(M, tol) << " at tol " << tol << '\n';
            return exit_ok;
        }
    }

    int parse_and_dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"patchrad: point-source vs patch-averaged radiation operators for near-field array modelling",
                     "patchrad"};
        app.require_subcommand(1);
        app.footer("Exit codes: 0 success, 1 runtime error, 2 usage error.");

        ConfigOptions sweep_opts, bench_opts, mesh_opts, subspace_opts;
        std::string sweep_out, bench_out, mesh_out, mesh_currents, subspace_currents;
        std::optional<std::size_t> repetitions;
        std::size_t pairs = 1000, patches = 200, max_order = 8;
        std::uint64_t greens_seed = 1, quad_seed = 1;
        double tol = 1e-8;

        auto *sweep = app.add_subcommand("sweep", "Distance sweep: reference vs point-source vs patch fields, CSV out");
        sweep_opts.attach(sweep);
        sweep->add_option("-o,--out", sweep_out, "Output error-curve CSV")->required();

        auto *bench = app.add_subcommand("bench", "Operator cost benchmark over element counts, CSV out");
        bench_opts.attach(bench);
        bench->add_option("-o,--out", bench_out, "Output cost-table CSV")->required();
        bench->add_option("--repetitions", repetitions, "Timing repetitions (median reported)");

        auto *vg = app.add_subcommand("validate-greens", "Closed-form dyadic Green vs finite-difference oracle");
        vg->add_option("--pairs", pairs, "Random (r, s) pairs")->capture_default_str();
        vg->add_option("--seed", greens_seed, "Random seed")->capture_default_str();

        auto *vq = app.add_subcommand("validate-quadrature", "Gauss-Legendre exactness and N_q=2 vs N_q=16 patches");
        vq->add_option("--max-order", max_order, "Highest GL order for the exactness check")->capture_default_str();
        vq->add_option("--patches", patches, "Random sub-wavelength patches")->capture_default_str();
        vq->add_option("--seed", quad_seed, "Random seed")->capture_default_str();

        auto *em = app.add_subcommand("export-mesh", "Write the configured mesh (and optionally currents) as CSV");
        mesh_opts.attach(em);
        em->add_option("-o,--out", mesh_out, "Output mesh CSV")->required();
        em->add_option("--currents", mesh_currents, "Also write the synthesized embedded current matrix here");

        auto *sub = app.add_subcommand("subspace", "Numerical rank of the embedded current matrix");
        subspace_opts.attach(sub, false);
        sub->add_option("--currents", subspace_currents, "Import the current matrix from CSV instead of synthesizing");
        sub->add_option("--tol", tol, "Relative singular value threshold")->capture_default_str();

        if (!args.empty() && !args.front().empty() && args.front()[0] != '-' &&
            std::find(verbs.begin(), verbs.end(), args.front()) == verbs.end())
        {
            err << "error: unknown command '" << args.front() << "'" << suggestion(args.front(), verbs) << '\n'
                << "run 'patchrad --help' for the list of commands\n";
            return exit_usage_error;
        }

        try
        {
            std::vector<std::string> reversed(args.rbegin(), args.rend());
            app.parse(reversed);
        }
        catch (const CLI::CallForHelp &)
        {
            out << app.help();
            return exit_ok;
        }
        catch (const CLI::CallForAllHelp &)
        {
            out << app.help("", CLI::AppFormatMode::All);
            return exit_ok;
        }
        catch (const CLI::ParseError &e)
        {
            err << "error: " << e.what();
            for (const auto &a : args)
                if (a.size() > 2 && a.rfind("--", 0) == 0)
                {
                    const std::string name = a.substr(0, a.find('='));
                    const std::vector<std::string> flags{"--config", "--out",   "--set",      "--seed",
                                                         "--threads", "--pairs", "--patches",  "--max-order",
                                                         "--tol",    "--currents", "--repetitions", "--help"};
                    if (std::find(flags.begin(), flags.end(), name) == flags.end())
                        err << suggestion(name, flags);
                }
            err << '\n';
            return exit_usage_error;
        }

        try
        {
            if (*sweep)
                return run_sweep(sweep_opts, sweep_out, out);
            if (*bench)
                return run_bench(bench_opts, bench_out, repetitions, out);
            if (*vg)
            {
                const auto v = validate_greens(pairs, greens_seed);
                out << "validate-greens: " << v.pairs << " pairs, max closed-form vs FD relative error "
                    << v.max_fd_error << " (threshold " << v.threshold << "), max symmetry error "
                    << v.max_symmetry_error << '\n'
                    << (v.passed() ? "PASS" : "FAIL") << '\n';
                return v.passed() ? exit_ok : exit_runtime_error;
            }
            if (*vq)
            {
                const auto v = validate_quadrature(max_order, patches, quad_seed);
                out << "validate-quadrature: GL orders 1.." << v.max_order_checked << " max monomial error "
                    << v.max_monomial_error << " (threshold 1e-12); " << v.patches
                    << " patches max N_q=2 vs N_q=16 block error " << v.max_patch_error << " (threshold 1e-3)\n"
                    << (v.passed() ? "PASS" : "FAIL") << '\n';
                return v.passed() ? exit_ok : exit_runtime_error;
            }
            if (*em)
                return run_export_mesh(mesh_opts, mesh_out, mesh_currents, out);
            if (*sub)
                return run_subspace(subspace_opts, subspace_currents, tol, out);
        }
        catch (const UsageError &e)
        {
            err << "error: " << e.what() << '\n';
            return exit_usage_error;
        }
        catch (const ConfigError &e)
        {
            err << "error: " << e.what() << '\n';
            return exit_usage_error;
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what() << '\n';
            return exit_runtime_error;
        }
        return exit_usage_error;
    }
}

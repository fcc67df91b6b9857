// Command-line front end: simulate, compare, converge, selftest.

#include "cosserat/config.hpp"
#include "cosserat/output.hpp"
#include "cosserat/selftest.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace cosserat;
using nlohmann::json;

namespace {

json run_metadata(const RunConfig& cfg, const char* command)
{
    return {
        {"schema_version", kSchemaVersion},
        {"command", command},
        {"config_hash", config_hash(cfg)},
        {"config", json::parse(serialize_config(cfg))},
        {"scenario", cfg.scenario.name},
        {"model", to_string(cfg.model)},
        {"elements", cfg.scenario.rod.elements},
        {"h", cfg.stepper.h},
        {"horizon", cfg.scenario.horizon},
        {"cadence", cfg.output.cadence},
    };
}

fs::path prepare_dir(const RunConfig& cfg)
{
    const fs::path dir(cfg.output.directory);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
    return dir;
}

int simulate_cmd(const RunConfig& cfg)
{
    const fs::path dir = prepare_dir(cfg);
    const fs::path csv = dir / "timeseries.csv";
    TimeseriesWriter series(csv);
    std::optional<SnapshotWriter> snaps;
    if (cfg.output.snapshot_cadence > 0)
        snaps.emplace(dir / "snapshots.csv");

    std::size_t rows = 0;
    DiagnosticsRecord last;
    simulate(cfg.scenario, cfg.model, cfg.stepper, [&](const DiagnosticsRecord& r, const RodState& s) {
        if (r.k % cfg.output.cadence == 0) {
            series.write(r);
            ++rows;
        }
        if (snaps && r.k % cfg.output.snapshot_cadence == 0)
            snaps->write(s);
        last = r;
    });
    series.close();
    json meta = run_metadata(cfg, "simulate");
    meta["columns"] = timeseries_columns();
    meta["rows"] = rows;
    if (snaps) {
        snaps->close();
        meta["snapshots"] = {{"file", "snapshots.csv"}, {"cadence", cfg.output.snapshot_cadence},
                             {"columns", snapshot_columns()}};
    }
    write_json(sidecar_path(csv), meta);

    std::printf("%s (%s): %zu steps, %zu rows -> %s\n", cfg.scenario.name.c_str(), to_string(cfg.model), last.k, rows,
                csv.string().c_str());
    std::printf("final H = %.10g J, length = %.10g m, e in [%.6f, %.6f]\n", last.energy.total(), last.length,
                last.e_min, last.e_max);
    return 0;
}

int compare_cmd(const RunConfig& cfg)
{
    const fs::path dir = prepare_dir(cfg);
    TimeseriesWriter wm(dir / "timeseries_modified.csv"), ws(dir / "timeseries_standard.csv");
    auto every = [&](TimeseriesWriter& w) {
        return [&w, &cfg](const DiagnosticsRecord& r, const RodState&) {
            if (r.k % cfg.output.cadence == 0)
                w.write(r);
        };
    };
    const ComparisonMetrics m = compare_models(cfg.scenario, cfg.stepper, every(wm), every(ws));
    wm.close();
    ws.close();

    json out = run_metadata(cfg, "compare");
    out["metrics"] = to_json(m);
    out["timeseries"] = {"timeseries_modified.csv", "timeseries_standard.csv"};
    write_json(dir / "comparison.json", out);

    std::printf("delta_H_max = %.10g J\ndelta_L_max = %.10g\ndelta_V_max = %.10g\n", m.energy, m.length, m.volume);
    return 0;
}

int converge_cmd(const RunConfig& cfg, SweepMode mode)
{
    const fs::path dir = prepare_dir(cfg);
    const std::vector<ConvergenceMetrics> rows = convergence_sweep(cfg.scenario, mode, cfg.ladder, cfg.stepper, cfg.model);
    const SweepLadder& l = cfg.ladder;

    json meta = run_metadata(cfg, "converge");
    meta["mode"] = to_string(mode);
    meta["sample_interval"] = l.sample_interval;
    if (mode == SweepMode::space)
        meta["reference"] = {{"elements", l.reference_elements}, {"h", l.space_h}};
    else
        meta["reference"] = {{"elements", l.time_elements}, {"h", l.reference_step}};
    const fs::path csv = dir / (std::string("convergence_") + to_string(mode) + ".csv");
    write_convergence_table(rows, csv, meta);

    std::printf("%10s %12s %14s %14s\n", "elements", "h", "eps_pos", "eps_rot");
    for (const ConvergenceMetrics& r : rows)
        std::printf("%10zu %12.4g %14.6e %14.6e%s\n", r.elements, r.h, r.eps_pos, r.eps_rot, r.nested ? "" : "  *");
    return 0;
}

int selftest_cmd()
{
    bool ok = true;
    for (const SelfTestResult& r : run_selftest()) {
        std::printf("%s  %-40s %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        ok = ok && r.passed;
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Lie group variational integrator for Cosserat rods with deforming cross-sections"};
    app.require_subcommand(1);

    std::string config_path, output_dir, mode = "space";
    auto add_config = [&](CLI::App* sub) {
        sub->add_option("config", config_path, "JSON run configuration")->required();
        sub->add_option("-o,--output-dir", output_dir, "override output.directory");
    };
    CLI::App* sim = app.add_subcommand("simulate", "run a single simulation");
    add_config(sim);
    CLI::App* cmp = app.add_subcommand("compare", "run modified and standard models and report the differences");
    add_config(cmp);
    CLI::App* conv = app.add_subcommand("converge", "spatial or temporal convergence sweep");
    add_config(conv);
    conv->add_option("--mode", mode, "space|time")->check(CLI::IsMember({"space", "time"}));
    CLI::App* self = app.add_subcommand("selftest", "run the invariant checks");

    if (argc > 1 && argv[1][0] != '-') {
        const std::string cmd = argv[1];
        if (cmd != "simulate" && cmd != "compare" && cmd != "converge" && cmd != "selftest") {
            std::cerr << "error: unknown subcommand '" << cmd << "'\n\n" << app.help();
            return 2;
        }
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (self->parsed())
            return selftest_cmd();
        RunConfig cfg = load_config(config_path);
        if (!output_dir.empty())
            cfg.output.directory = output_dir;
        if (sim->parsed())
            return simulate_cmd(cfg);
        if (cmp->parsed())
            return compare_cmd(cfg);
        return converge_cmd(cfg, sweep_mode_from_string(mode));
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 1;
    }
}

// Command-line front end: run a single controller, compare both on one
// scenario, or validate a scenario file. Exit codes: 0 success, 2
// configuration/parse error, 3 numerical blowup.

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "alv/alv.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Options {
    std::optional<std::string> scenario;
    std::optional<double> dt;
    std::optional<double> duration;
};

alv::Scenario resolve_scenario(const Options& opt) {
    alv::Scenario sc;
    std::optional<std::string> path = opt.scenario;
    if (!path) {
        if (const char* env = std::getenv("DSM_AUTOPILOT_DEFAULT_SCENARIO")) path = env;
    }
    if (path) sc = alv::load_scenario_file(*path);
    if (opt.dt) sc.dt = *opt.dt;
    if (opt.duration) sc.duration = *opt.duration;
    alv::validate_scenario(sc);
    return sc;
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw alv::config_error("cannot write '" + p.string() + "'");
    f << content;
}

template <class WriteFn>
void write_csv(const fs::path& p, WriteFn&& fn) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw alv::config_error("cannot write '" + p.string() + "'");
    fn(f);
}

void write_run_outputs(const fs::path& out, const alv::SimResult& r,
                       alv::ControllerKind kind) {
    const std::string name = alv::controller_name(kind);
    write_csv(out / (name + "_trajectory.csv"),
              [&](std::ostream& os) { alv::write_trajectory_csv(os, r.log); });
    write_csv(out / (name + "_metrics.csv"),
              [&](std::ostream& os) { alv::write_metrics_csv(os, r.metrics); });
    if (kind == alv::ControllerKind::Dsm)
        write_csv(out / "dsm_coefficients.csv", [&](std::ostream& os) {
            alv::write_coefficients_csv(os, r.coefficient_log);
        });
}

// Shortest decimal that round-trips; the console echo favors readability
// over the fixed 17-digit CSV form.
std::string format_short(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string render_primitives(const std::vector<alv::DisturbancePrimitive>& ch) {
    if (ch.empty()) return "none";
    std::string s;
    for (const auto& p : ch) {
        if (!s.empty()) s += ' ';
        switch (p.kind) {
            case alv::DisturbancePrimitive::Kind::Step:
                s += "step(" + format_short(p.p0) + "," + format_short(p.p1) + ")";
                break;
            case alv::DisturbancePrimitive::Kind::Ramp:
                s += "ramp(" + format_short(p.p0) + "," + format_short(p.p1) + ")";
                break;
            case alv::DisturbancePrimitive::Kind::Sine:
                s += "sine(" + format_short(p.p0) + "," + format_short(p.p1) +
                     "," + format_short(p.p2) + ")";
                break;
        }
    }
    return s;
}

void print_effective_config(const alv::Scenario& sc) {
    std::cout << "[simulation]\n"
              << "duration = " << format_short(sc.duration) << "\n"
              << "dt = " << format_short(sc.dt) << "\n"
              << "use_gyro = " << (sc.use_gyro ? "true" : "false") << "\n"
              << "initial_q = " << format_short(sc.initial_q) << "\n";

    std::cout << "[reference]\ntimes =";
    for (double t : sc.reference.times()) std::cout << ' ' << format_short(t);
    std::cout << "\nrates_deg =";
    for (double r : sc.reference.rates())
        std::cout << ' ' << format_short(r * 180.0 / std::numbers::pi);
    std::cout << "\n";

    std::cout << "[schedule]\nsamples = " << sc.schedule.times.size() << "\n";
    for (std::size_t k = 0; k < sc.schedule.times.size(); ++k) {
        const auto& c = sc.schedule.samples[k];
        std::cout << "t=" << format_short(sc.schedule.times[k]) << " Z_v="
                  << format_short(c.Zv) << " Z_q=" << format_short(c.Zq)
                  << " Z_theta=" << format_short(c.Zth) << " Z_de="
                  << format_short(c.Zde) << " M_vz=" << format_short(c.Mvz)
                  << " M_q=" << format_short(c.Mq) << " M_de=" << format_short(c.Mde)
                  << "\n";
    }

    std::cout << "[disturbance]\n"
              << "f11 = " << render_primitives(sc.disturbance.f11) << "\n"
              << "f12 = " << render_primitives(sc.disturbance.f12) << "\n"
              << "matched = " << render_primitives(sc.disturbance.matched) << "\n";

    std::cout << "[csm]\n"
              << "K = " << format_short(sc.csm.K) << "\n"
              << "rho = " << format_short(sc.csm.rho) << "\n"
              << "epsilon = " << format_short(sc.csm.epsilon) << "\n";

    std::cout << "[dsm]\n"
              << "rho = " << format_short(sc.dsm.rho) << "\n"
              << "epsilon = " << format_short(sc.dsm.epsilon) << "\n"
              << "wn = " << format_short(sc.dsm.wn) << "\n"
              << "wn_is_hz = " << (sc.dsm.wn_is_hz ? "true" : "false") << "\n"
              << "resolve_period = " << format_short(sc.dsm.resolve_period)
              << "  # resolved: every " << alv::resolve_steps(sc) << " steps\n";
}

// Self-contained plot script regenerating the tracking-error and
// coefficient-history figures from the CSVs next to it.
constexpr const char* kPlotScript = R"PY(#!/usr/bin/env python3
"""Regenerate comparison figures from the CSV logs in this directory."""
import csv
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))


def read_csv(name):
    with open(os.path.join(HERE, name), newline="") as f:
        rows = list(csv.DictReader(f))
    return {k: [float(r[k]) for r in rows] for k in rows[0]}


csm = read_csv("csm_trajectory.csv")
dsm = read_csv("dsm_trajectory.csv")

fig, axes = plt.subplots(3, 1, figsize=(9, 10), sharex=True)
for log, label in ((csm, "conventional"), (dsm, "dynamic")):
    axes[0].plot(log["t"], log["e_theta"], label=label)
    axes[1].plot(log["t"], log["e_q"], label=label)
    axes[2].plot(log["t"], log["delta_c"], label=label)
axes[0].set_ylabel("pitch angle error [rad]")
axes[1].set_ylabel("pitch rate error [rad/s]")
axes[2].set_ylabel("commanded deflection [rad]")
axes[2].set_xlabel("t [s]")
for ax in axes:
    ax.grid(True, alpha=0.3)
    ax.legend()
fig.tight_layout()
fig.savefig(os.path.join(HERE, "comparison_tracking.png"), dpi=150)

coeff = read_csv("dsm_coefficients.csv")
fig2, axes2 = plt.subplots(3, 1, figsize=(9, 8), sharex=True)
for ax, key in zip(axes2, ("a2", "a3", "b2")):
    ax.plot(coeff["t"], coeff[key])
    ax.set_ylabel(key)
    ax.grid(True, alpha=0.3)
axes2[2].set_xlabel("t [s]")
fig2.tight_layout()
fig2.savefig(os.path.join(HERE, "dsm_coefficients.png"), dpi=150)

print("wrote comparison_tracking.png and dsm_coefficients.png")
)PY";

int cmd_run(const Options& opt, const std::string& controller, const std::string& out) {
    const alv::Scenario sc = resolve_scenario(opt);
    const alv::ControllerKind kind =
        controller == "csm" ? alv::ControllerKind::Csm : alv::ControllerKind::Dsm;
    fs::create_directories(out);
    const alv::SimResult r = alv::run_scenario(sc, kind);
    write_run_outputs(out, r, kind);
    std::cout << controller << ": rms_e_q = " << alv::format_double(r.metrics.rms_e_q)
              << ", rms_e_theta = " << alv::format_double(r.metrics.rms_e_theta)
              << ", reachability_violations = "
              << static_cast<long long>(r.metrics.reachability_violations) << "\n";
    return kExitOk;
}

int cmd_compare(const Options& opt, const std::string& out) {
    const alv::Scenario sc = resolve_scenario(opt);
    fs::create_directories(out);
    const alv::SimResult rc = alv::run_scenario(sc, alv::ControllerKind::Csm);
    const alv::SimResult rd = alv::run_scenario(sc, alv::ControllerKind::Dsm);
    write_run_outputs(out, rc, alv::ControllerKind::Csm);
    write_run_outputs(out, rd, alv::ControllerKind::Dsm);

    const auto rows = alv::build_comparison(rc.metrics, rd.metrics);
    write_csv(fs::path(out) / "comparison.csv",
              [&](std::ostream& os) { alv::write_comparison_csv(os, rows); });
    write_file(fs::path(out) / "plot_comparison.py", kPlotScript);

    std::cout << "metric                     csm            dsm            dsm/csm\n";
    for (const auto& r : rows) {
        std::printf("%-24s %14.6g %14.6g %14.6g\n", r.metric.c_str(), r.csm, r.dsm,
                    r.ratio);
    }
    return kExitOk;
}

int cmd_validate(const Options& opt) {
    const alv::Scenario sc = resolve_scenario(opt);
    print_effective_config(sc);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sliding-mode pitch autopilot simulator: conventional vs dynamic "
                 "manifold on a time-varying launch-vehicle model"};
    app.require_subcommand(1);

    Options opt;
    std::string controller, out_dir;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--scenario", opt.scenario,
                        "Scenario file (default: $DSM_AUTOPILOT_DEFAULT_SCENARIO or "
                        "built-in defaults)");
        cmd->add_option("--dt", opt.dt, "Override integration step [s]");
        cmd->add_option("--duration", opt.duration, "Override duration [s]");
    };

    CLI::App* run = app.add_subcommand("run", "Simulate one controller");
    add_common(run);
    run->add_option("--controller", controller, "csm or dsm")
        ->required()
        ->check(CLI::IsMember({"csm", "dsm"}));
    run->add_option("--out", out_dir, "Output directory")->required();

    CLI::App* compare = app.add_subcommand("compare", "Simulate both controllers");
    add_common(compare);
    compare->add_option("--out", out_dir, "Output directory")->required();

    CLI::App* validate =
        app.add_subcommand("validate", "Parse and echo the effective configuration");
    add_common(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (app.got_subcommand(run)) return cmd_run(opt, controller, out_dir);
        if (app.got_subcommand(compare)) return cmd_compare(opt, out_dir);
        return cmd_validate(opt);
    } catch (const alv::numerical_blowup& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const alv::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const alv::ill_conditioned_identification& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const alv::invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

#include "fwm/cli.hpp"

#include "fwm/analytic.hpp"
#include "fwm/harness.hpp"
#include "fwm/io.hpp"
#include "fwm/observables.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <string>
#include <vector>

namespace fwm {
namespace cli {
namespace {

using ConfigMap = std::map<std::string, std::string>;

double parse_real(const std::string& tok, const std::string& what) {
    double v = 0.0;
    const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (r.ec != std::errc{} || r.ptr != tok.data() + tok.size() || !std::isfinite(v))
        throw harness::SpecError("malformed " + what + " '" + tok + "'");
    return v;
}

int parse_int(const std::string& tok, const std::string& what) {
    int v = 0;
    const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (r.ec != std::errc{} || r.ptr != tok.data() + tok.size())
        throw harness::SpecError("malformed " + what + " '" + tok + "'");
    return v;
}

ConfigMap load_config(const std::string& path) {
    if (path.empty()) return {};
    ConfigMap conf;
    try {
        conf = io::parse_config_file(path);
    } catch (const std::runtime_error& e) {
        throw harness::SpecError(e.what());
    }
    static const char* kKnown[] = {"modes",  "kappa", "steps",      "snapshot_every",
                                   "envelope", "mask",  "input",      "dt_divisor",
                                   "output",   "name",  "kappas"};
    for (const auto& [key, value] : conf) {
        bool known = false;
        for (const char* k : kKnown) known = known || key == k;
        if (!known) throw harness::SpecError("unknown config key '" + key + "' in " + path);
    }
    return conf;
}

/// Bound flag variables shared by the simulation-carrying subcommands.
struct SimFlags {
    int modes = 45;
    double kappa = 0.06981317007977318;  // pi/45
    int steps = 45;
    int snapshot_every = 1;
    std::string envelope = "gaussian:22,4";
    std::string mask = "full";
    std::string input = "separable";
    std::string output;
    std::string config_file;
    std::string name = "run";
    double dt_divisor = 100.0;
};

void add_sim_options(CLI::App* sub, SimFlags& f, bool with_kappa) {
    sub->add_option("--modes,-M", f.modes, "cell/mode count (odd recommended; default 45)")
        ->check(CLI::PositiveNumber);
    if (with_kappa)
        sub->add_option("--kappa,-k", f.kappa,
                        "coupling per unit length (default pi/45, sign flip after 45 cells)");
    sub->add_option("--steps,-n", f.steps, "whole-cell steps (default 45)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--snapshot-every", f.snapshot_every, "record every k-th step (default 1)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--envelope", f.envelope,
                    "gaussian:<center>,<width> | point:<cell> (default gaussian:22,4)");
    sub->add_option("--mask", f.mask, "full | window:<start>,<end> (default full)");
    sub->add_option("--input", f.input, "separable | diagonal (default separable)");
    sub->add_option("--output,-o", f.output,
                    "output directory (default $FWM_OUTPUT_DIR, else ./out)");
    sub->add_option("--config,-c", f.config_file, "key=value config file (flags win)");
}

/// Flag > config file > built-in default, per field.
harness::SimConfig resolve_config(const CLI::App* sub, const SimFlags& f, const ConfigMap& conf) {
    harness::SimConfig cfg;
    auto from_conf_real = [&](const char* key, double fallback) {
        const auto it = conf.find(key);
        return it == conf.end() ? fallback : parse_real(it->second, std::string("config ") + key);
    };
    auto from_conf_int = [&](const char* key, int fallback) {
        const auto it = conf.find(key);
        return it == conf.end() ? fallback : parse_int(it->second, std::string("config ") + key);
    };
    auto from_conf_str = [&](const char* key, const std::string& fallback) {
        const auto it = conf.find(key);
        return it == conf.end() ? fallback : it->second;
    };
    auto given = [&](const char* flag) {
        const CLI::Option* opt = sub->get_option_no_throw(flag);
        return opt != nullptr && opt->count() > 0;
    };

    cfg.modes = given("--modes") ? f.modes : from_conf_int("modes", cfg.modes);
    if (sub->get_option_no_throw("--kappa") != nullptr)
        cfg.kappa = given("--kappa") ? f.kappa : from_conf_real("kappa", cfg.kappa);
    cfg.steps = given("--steps") ? f.steps : from_conf_int("steps", cfg.steps);
    cfg.snapshot_every = given("--snapshot-every") ? f.snapshot_every
                                                   : from_conf_int("snapshot_every", cfg.snapshot_every);
    cfg.envelope = given("--envelope") ? f.envelope : from_conf_str("envelope", cfg.envelope);
    cfg.mask = given("--mask") ? f.mask : from_conf_str("mask", cfg.mask);
    cfg.input = given("--input") ? f.input : from_conf_str("input", cfg.input);
    if (sub->get_option_no_throw("--dt-divisor") != nullptr)
        cfg.dt_divisor = given("--dt-divisor") ? f.dt_divisor
                                               : from_conf_real("dt_divisor", cfg.dt_divisor);
    return cfg;
}

std::string resolve_outdir(const CLI::App* sub, const SimFlags& f, const ConfigMap& conf) {
    if (sub->count("--output") > 0) return f.output;
    if (const auto it = conf.find("output"); it != conf.end()) return it->second;
    if (const char* env = std::getenv("FWM_OUTPUT_DIR"); env != nullptr && *env != '\0')
        return env;
    return "out";
}

void warn_even_modes(int modes, std::ostream& err) {
    if (modes % 2 == 0)
        err << "note: even mode count leaves the most negative mode unpaired; "
               "odd counts are the symmetric default\n";
}

int do_run(const CLI::App* sub, const SimFlags& f, std::ostream& out, std::ostream& err) {
    const ConfigMap conf = load_config(f.config_file);
    const harness::SimConfig cfg = resolve_config(sub, f, conf);
    const std::string name =
        sub->count("--name") > 0 ? f.name
                                 : (conf.count("name") > 0 ? conf.at("name") : std::string("run"));
    if (name.empty()) throw harness::SpecError("--name must not be empty");
    const std::string outdir = resolve_outdir(sub, f, conf);
    warn_even_modes(cfg.modes, err);

    const harness::ValidationReport rep = harness::run_custom(cfg, name, outdir);
    out << harness::format_report(rep);
    out << "# " << rep.scenario << ": " << rep.checks.size() << " checks, artifacts in "
        << outdir << "\n";
    return rep.pass() ? 0 : 1;
}

int do_validate(const CLI::App* sub, const SimFlags& f, const std::vector<std::string>& names,
                bool run_all_flag, bool list_flag, std::ostream& out, std::ostream& err) {
    const ConfigMap conf = load_config(f.config_file);
    if (list_flag) {
        for (const auto& s : harness::registry())
            out << s.name << "  -  " << s.description << "\n";
        return 0;
    }
    if (run_all_flag && !names.empty())
        throw harness::SpecError("--all conflicts with an explicit scenario list");

    const std::string outdir = resolve_outdir(sub, f, conf);
    const bool divisor_given = sub->count("--dt-divisor") > 0 || conf.count("dt_divisor") > 0;
    const harness::SimConfig cfg = resolve_config(sub, f, conf);

    auto run_named = [&](const std::string& name) {
        if (name == "mode_agreement" && divisor_given) {
            harness::SimConfig m;
            m.dt_divisor = cfg.dt_divisor;
            return harness::run_mode_agreement(m, outdir);
        }
        return harness::run_scenario(name, outdir);
    };

    std::vector<std::string> to_run = names;
    if (run_all_flag || to_run.empty()) to_run = harness::list_scenarios();

    std::vector<harness::ValidationReport> reports;
    reports.reserve(to_run.size());
    for (const auto& n : to_run) reports.push_back(run_named(n));

    out << harness::format_reports(reports);
    out << "# artifacts in " << outdir << "\n";
    (void)err;
    return harness::all_pass(reports) ? 0 : 1;
}

int do_sweep(const CLI::App* sub, const SimFlags& f, const std::string& kappas_arg,
             std::ostream& out, std::ostream& err) {
    const ConfigMap conf = load_config(f.config_file);
    const std::string kappas_spec =
        sub->count("--kappas") > 0
            ? kappas_arg
            : (conf.count("kappas") > 0 ? conf.at("kappas") : std::string());
    if (kappas_spec.empty())
        throw harness::SpecError("sweep needs --kappas <k1,k2,...> (or a config 'kappas' entry)");

    std::vector<double> kappas;
    size_t pos = 0;
    while (true) {
        const size_t comma = kappas_spec.find(',', pos);
        const std::string tok = kappas_spec.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        kappas.push_back(parse_real(tok, "sweep coupling"));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }

    const harness::SimConfig base = resolve_config(sub, f, conf);
    const std::string outdir = resolve_outdir(sub, f, conf);
    warn_even_modes(base.modes, err);
    std::filesystem::create_directories(outdir.empty() ? "." : outdir);
    const std::string summary_path =
        (std::filesystem::path(outdir.empty() ? "." : outdir) / "sweep_summary.csv").string();
    std::ofstream summary(summary_path);
    if (!summary) throw std::runtime_error("cannot open for writing: " + summary_path);
    summary << "kappa,steps,final_generated_fraction,norm_drift,max_transport_residual\n";

    bool ok = true;
    for (const double kappa : kappas) {
        harness::SimConfig cfg = base;
        cfg.kappa = kappa;
        const Lattice lat = harness::lattice_of(cfg);
        const StepPlan plan{cfg.kappa, lat.dz / lat.c, cfg.steps,
                            harness::parse_mask_spec(lat, cfg.mask)};
        const Trajectory traj = run(harness::initial_state(cfg), plan, cfg.snapshot_every);

        const obs::ConservationReport cons = obs::conservation_check(traj);
        const obs::IntensityProfile prof = obs::intensities(traj.snapshots.back());
        double generated = 0.0;
        for (const double v : prof.i_e1) generated += v * lat.dz;
        double max_res = 0.0;
        for (const double r : cons.max_residual) max_res = std::max(max_res, r);
        const bool pass = cons.norm_drift <= cfg.tol_transport && max_res <= cfg.tol_transport;
        ok = ok && pass;

        summary << io::format_double(kappa) << ',' << cfg.steps << ','
                << io::format_double(generated) << ',' << io::format_double(cons.norm_drift)
                << ',' << io::format_double(max_res) << '\n';
        char line[160];
        std::snprintf(line, sizeof(line),
                      "sweep kappa=%-12.6g generated_fraction=%.6f norm_drift=%.2e  %s\n", kappa,
                      generated, cons.norm_drift, pass ? "PASS" : "FAIL");
        out << line;
    }
    out << "# sweep summary: " << summary_path << "\n";
    return ok ? 0 : 1;
}

int do_params(double density, double lambda, double gamma, double delta, std::ostream& out) {
    const analytic::PhysicalParams p{density, lambda, gamma, delta};
    const double g = analytic::derive_g(p);
    const double kappa = analytic::derive_kappa(p);
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "inputs: n = %.9g 1/m^3, lambda = %.9g m, gamma = %.9g 1/s, delta = %.9g 1/s\n"
                  "g     = 3*n*lambda^2*gamma/(8*pi)\n"
                  "      = 3 * %.9g * (%.9g)^2 * %.9g / %.9g = %.9g  1/(m*s)\n"
                  "kappa = g/delta = %.9g / %.9g = %.9g  1/m\n",
                  density, lambda, gamma, delta, density, lambda, gamma,
                  8.0 * std::numbers::pi, g, g, delta, kappa);
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "conversion length (complete pump->generated transfer) pi/(2*kappa) = %.9g m\n"
                  "full cycle length (pump restored, sign flipped)       pi/kappa     = %.9g m\n",
                  analytic::conversion_length(kappa), analytic::full_cycle_length(kappa));
    out << buf;
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"two-photon four-wave-mixing lattice simulator and validation harness", "fwm"};
    app.require_subcommand(1);

    SimFlags rf, sf, vf;

    CLI::App* run_sub = app.add_subcommand("run", "propagate one configuration, emit CSV artifacts");
    add_sim_options(run_sub, rf, /*with_kappa=*/true);
    run_sub->add_option("--name", rf.name, "artifact file prefix (default 'run')");

    CLI::App* validate_sub =
        app.add_subcommand("validate", "run registered validation scenarios");
    std::vector<std::string> scenario_names;
    bool all_flag = false, list_flag = false;
    validate_sub->add_option("scenarios", scenario_names, "scenario names (default: all)");
    validate_sub->add_flag("--all", all_flag, "run every registered scenario");
    validate_sub->add_flag("--list", list_flag, "list registered scenarios and exit");
    validate_sub->add_option("--output,-o", vf.output,
                             "output directory (default $FWM_OUTPUT_DIR, else ./out)");
    validate_sub->add_option("--config,-c", vf.config_file, "key=value config file");
    validate_sub->add_option("--dt-divisor", vf.dt_divisor,
                             "mode-oracle step divisor: dt = dz/(divisor*c) (default 100)")
        ->check(CLI::PositiveNumber);

    CLI::App* sweep_sub = app.add_subcommand("sweep", "run several couplings, emit a summary CSV");
    std::string kappas_arg;
    sweep_sub->add_option("--kappas", kappas_arg, "comma-separated coupling values");
    add_sim_options(sweep_sub, sf, /*with_kappa=*/false);

    CLI::App* params_sub =
        app.add_subcommand("params", "derive coupling and lengths from physical inputs");
    double density = 0.0, lambda = 0.0, gamma = 0.0, delta = 0.0;
    params_sub->add_option("--density", density, "atom number density [1/m^3]")->required();
    params_sub->add_option("--lambda", lambda, "transition wavelength [m]")->required();
    params_sub->add_option("--gamma", gamma, "radiative decay rate [1/s]")->required();
    params_sub->add_option("--delta", delta, "single-photon detuning [1/s]")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (app.got_subcommand(run_sub)) return do_run(run_sub, rf, out, err);
        if (app.got_subcommand(validate_sub))
            return do_validate(validate_sub, vf, scenario_names, all_flag, list_flag, out, err);
        if (app.got_subcommand(sweep_sub)) return do_sweep(sweep_sub, sf, kappas_arg, out, err);
        if (app.got_subcommand(params_sub)) return do_params(density, lambda, gamma, delta, out);
        err << "usage error: no subcommand\n";
        return 2;
    } catch (const harness::SpecError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int cli_main(int argc, const char* const* argv) {
    return cli_main(argc, argv, std::cout, std::cerr);
}

}  // namespace cli
}  // namespace fwm

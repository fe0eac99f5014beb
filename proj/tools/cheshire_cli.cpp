// Copyright 2026 The Cheshire Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Uses nothing but the C interface in cheshire.h.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cheshire/cheshire.h"

namespace {

enum Exit { kOk = 0, kUsage = 1, kNumerical = 2, kAcceptance = 3 };

// Carries a library status up to main.
struct Failure {
    chs_status status;
    std::string context;
};

void check(chs_status s, const std::string &context) {
    if (s != CHS_OK) {
        throw Failure{s, context + ": " + chs_last_error_message()};
    }
}

int exit_code(chs_status s) {
    switch (s) {
        case CHS_INVALID_ARGUMENT:
        case CHS_BASIS_MISMATCH:
        case CHS_INCOMPATIBLE_GRID:
        case CHS_IO:
            return kUsage;
        default:
            return kNumerical;
    }
}

std::string num(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

struct Params {
    double w = 1.0;
    double dx = 0.1;
    double dy = 0.1;
    std::size_t chi_steps = 100;
    double t = 0.79;
    double alpha = 0.2;
    std::size_t grid_n = 512;
    double grid_span = 8.0;
    std::uint64_t seed = 1;
    std::uint64_t samples = 0;
    std::string out = ".";
    std::string format = "csv,pgm";
    std::string noise = "phase-noise-post";
    double strength = std::numbers::pi;
    bool tamper = false;

    bool csv = false;
    bool pgm = false;

    chs_photon_config photon() const {
        chs_photon_config c;
        chs_photon_config_default(&c);
        c.width = w;
        c.delta_x = dx;
        c.delta_y = dy;
        c.grid_n = grid_n;
        c.grid_half_span = grid_span;
        return c;
    }
};

// Every CSV starts with this line so a table records how it was produced.
std::string params_comment(const std::string &command, const Params &p) {
    return "params: command=" + command + " w=" + num(p.w) + " dx=" + num(p.dx) + " dy=" + num(p.dy) +
           " chi_steps=" + std::to_string(p.chi_steps) + " t=" + num(p.t) + " alpha=" + num(p.alpha) +
           " grid_n=" + std::to_string(p.grid_n) + " grid_span=" + num(p.grid_span) +
           " seed=" + std::to_string(p.seed) + " samples=" + std::to_string(p.samples) + " noise=" + p.noise +
           " strength=" + num(p.strength);
}

std::filesystem::path output_dir(const Params &p) {
    std::error_code ec;
    std::filesystem::create_directories(p.out, ec);
    if (ec) {
        throw Failure{CHS_IO, "cannot create output directory " + p.out + ": " + ec.message()};
    }
    return p.out;
}

class Table {
   public:
    Table(const std::filesystem::path &path, const std::string &comment, const std::string &header)
        : path_(path), out_(path) {
        if (!out_) {
            throw Failure{CHS_IO, "cannot open " + path.string()};
        }
        out_ << "# " << comment << '\n' << header << '\n';
    }
    std::ofstream &row() { return out_; }

    void close() {
        out_.close();
        if (!out_) {
            throw Failure{CHS_IO, "failed writing " + path_.string()};
        }
    }

   private:
    std::filesystem::path path_;
    std::ofstream out_;
};

void write_weak_values(const std::filesystem::path &dir, const std::string &comment, const chs_photon_config &cfg) {
    chs_weak_value_report reports[4];
    check(chs_photon_weak_values(&cfg, reports), "weak values");
    Table t(dir / "weak_values.csv", comment,
            "observable,weak_re,weak_im,coupling,predicted_shift,simulated_shift,discrepancy");
    for (const auto &r : reports) {
        t.row() << chs_observable_name(r.observable) << ',' << num(r.weak_re) << ',' << num(r.weak_im) << ','
                << num(r.coupling) << ',' << num(r.predicted_shift) << ','
                << (r.has_simulated ? num(r.simulated_shift) : "") << ','
                << (r.has_simulated ? num(r.discrepancy) : "") << '\n';
    }
    t.close();
}

struct PhotonHandle {
    chs_photon *h = nullptr;
    ~PhotonHandle() { chs_photon_destroy(h); }
};

int photon_cat(const Params &p) {
    const auto dir = output_dir(p);
    const auto comment = params_comment("photon-cat", p);
    const auto cfg = p.photon();
    PhotonHandle ph;
    check(chs_photon_create(&cfg, &ph.h), "photon pipeline");

    const struct {
        chs_field field;
        const char *stem;
    } figures[] = {{CHS_FIELD_ARM_II, "fig2a"}, {CHS_FIELD_ARM_I, "fig2b"}, {CHS_FIELD_COMBINED, "fig2c"}};
    for (const auto &f : figures) {
        if (p.csv) {
            check(chs_photon_write_field(ph.h, f.field, CHS_FORMAT_CSV, (dir / (std::string(f.stem) + ".csv")).c_str(),
                                         comment.c_str()),
                  f.stem);
        }
        if (p.pgm) {
            check(chs_photon_write_field(ph.h, f.field, CHS_FORMAT_PGM, (dir / (std::string(f.stem) + ".pgm")).c_str(),
                                         nullptr),
                  f.stem);
        }
    }

    double re[3];
    double im[3];
    double cx = 0.0;
    double cy = 0.0;
    double prob = 0.0;
    double purity = 0.0;
    check(chs_photon_coefficients(ph.h, re, im), "coefficients");
    check(chs_photon_centroid(ph.h, &cx, &cy), "centroid");
    check(chs_photon_postselection_probability(ph.h, &prob), "post-selection probability");
    check(chs_photon_pointer_purity(ph.h, &purity), "pointer purity");

    Table t(dir / "summary.csv", comment, "quantity,value");
    const char *terms[] = {"arm_II", "arm_I_plus", "arm_I_minus"};
    for (int k = 0; k < 3; ++k) {
        t.row() << "coeff_" << terms[k] << "_re," << num(re[k]) << '\n';
        t.row() << "coeff_" << terms[k] << "_im," << num(im[k]) << '\n';
    }
    t.row() << "centroid_x," << num(cx) << '\n' << "centroid_y," << num(cy) << '\n';
    t.row() << "postselection_probability," << num(prob) << '\n';
    t.row() << "pointer1_purity," << num(purity) << '\n';
    const char *field_names[] = {"max_abs_fig2a", "max_abs_fig2b", "max_abs_fig2c"};
    for (int k = 0; k < 3; ++k) {
        double m = 0.0;
        check(chs_photon_field_max(ph.h, figures[k].field, &m), field_names[k]);
        t.row() << field_names[k] << ',' << num(m) << '\n';
    }

    // Lobe weights only exist once the three terms have separated. Disks of
    // 0.49 of the closest term spacing never touch; beyond 6 W they hold no
    // further mass.
    const double spacing = std::min(2.0 * std::abs(p.dx), std::hypot(p.dx, p.dy));
    const double radius = std::min(0.49 * spacing, 6.0 * p.w);
    double weights[3];
    const chs_status s = radius > 0.0 ? chs_photon_lobe_weights(ph.h, radius, weights) : CHS_REGIME;
    if (s == CHS_OK) {
        for (int k = 0; k < 3; ++k) {
            t.row() << "lobe_weight_" << terms[k] << ',' << num(weights[k]) << '\n';
        }
    } else if (s != CHS_REGIME) {
        check(s, "lobe weights");
    }
    t.close();

    write_weak_values(dir, comment, cfg);
    return kOk;
}

struct SweepHandle {
    chs_sweep *h = nullptr;
    ~SweepHandle() { chs_sweep_destroy(h); }
};

int neutron_cat(const Params &p) {
    const auto dir = output_dir(p);
    const auto comment = params_comment("neutron-cat", p);
    const struct {
        const char *name;
        chs_neutron_probe probe;
    } probes[] = {
        {"baseline", {CHS_PROBE_NONE, CHS_PATH_I, 1.0, 0.0}},
        {"absorber_I", {CHS_PROBE_ABSORBER, CHS_PATH_I, p.t, 0.0}},
        {"absorber_II", {CHS_PROBE_ABSORBER, CHS_PATH_II, p.t, 0.0}},
        {"field_I", {CHS_PROBE_FIELD, CHS_PATH_I, 1.0, p.alpha}},
        {"field_II", {CHS_PROBE_FIELD, CHS_PATH_II, 1.0, p.alpha}},
    };
    Table vis(dir / "visibility.csv", comment, "probe,visibility_d1,visibility_d2,raw_visibility_d1,raw_visibility_d2");
    for (const auto &pr : probes) {
        SweepHandle sw;
        check(chs_neutron_sweep_create(&pr.probe, p.chi_steps, &sw.h), pr.name);
        const auto path = dir / ("sweep_" + std::string(pr.name) + ".csv");
        check(chs_sweep_write_csv(sw.h, path.c_str(), comment.c_str(), p.samples, p.seed), pr.name);
        double v1 = 0.0;
        double v2 = 0.0;
        double r1 = 0.0;
        double r2 = 0.0;
        check(chs_sweep_visibility(sw.h, &v1, &v2, &r1, &r2), pr.name);
        vis.row() << pr.name << ',' << num(v1) << ',' << num(v2) << ',' << num(r1) << ',' << num(r2) << '\n';
    }
    vis.close();
    return kOk;
}

struct EnsembleHandle {
    chs_ensemble *h = nullptr;
    ~EnsembleHandle() { chs_ensemble_destroy(h); }
};

chs_noise parse_noise(const std::string &name) {
    for (chs_noise n : {CHS_NOISE_PHASE_PRE, CHS_NOISE_PHASE_POST, CHS_NOISE_AMPLITUDE}) {
        if (name == chs_noise_name(n)) {
            return n;
        }
    }
    throw Failure{CHS_INVALID_ARGUMENT, "unknown noise kind " + name};
}

int weak_values(Params p) {
    if (p.samples == 0) {
        p.samples = 1000;
    }
    const auto dir = output_dir(p);
    const auto comment = params_comment("weak-values", p);
    const auto cfg = p.photon();
    const chs_noise noise = parse_noise(p.noise);
    write_weak_values(dir, comment, cfg);

    const std::string stats_header =
        "noise,strength,samples,null_samples,mean_x,mean_y,stderr_x,stderr_y,density_centroid_x,"
        "density_centroid_y,purity,mean_postselection_probability";
    auto stats_row = [&](std::ofstream &out, double strength, const chs_ensemble_stats &s) {
        out << chs_noise_name(noise) << ',' << num(strength) << ',' << s.samples << ',' << s.null_samples << ','
            << num(s.mean_x) << ',' << num(s.mean_y) << ',' << num(s.stderr_x) << ',' << num(s.stderr_y) << ','
            << num(s.density_centroid_x) << ',' << num(s.density_centroid_y) << ',' << num(s.purity) << ','
            << num(s.mean_postselection_probability) << '\n';
    };

    {
        EnsembleHandle e;
        check(chs_ensemble_run(&cfg, noise, p.strength, p.samples, p.seed, &e.h), "ensemble");
        chs_ensemble_stats s;
        check(chs_ensemble_stats_get(e.h, &s), "ensemble");
        Table t(dir / "ensemble.csv", comment, stats_header);
        stats_row(t.row(), p.strength, s);
        t.close();
        if (p.csv) {
            check(chs_ensemble_write_density(e.h, CHS_FORMAT_CSV, (dir / "ensemble_density.csv").c_str(),
                                             comment.c_str()),
                  "ensemble density");
        }
        if (p.pgm) {
            check(chs_ensemble_write_density(e.h, CHS_FORMAT_PGM, (dir / "ensemble_density.pgm").c_str(), nullptr),
                  "ensemble density");
        }
    }

    // Attenuation of the pointer readout as the disturbance grows from zero
    // to the requested strength.
    Table att(dir / "attenuation.csv", comment, stats_header);
    const int steps = 8;
    for (int k = 0; k <= steps; ++k) {
        const double strength = p.strength * k / steps;
        EnsembleHandle e;
        check(chs_ensemble_run(&cfg, noise, strength, p.samples, p.seed, &e.h), "attenuation");
        chs_ensemble_stats s;
        check(chs_ensemble_stats_get(e.h, &s), "attenuation");
        stats_row(att.row(), strength, s);
    }
    att.close();
    return kOk;
}

struct ReportHandle {
    chs_report *h = nullptr;
    ~ReportHandle() { chs_report_destroy(h); }
};

int verify(const Params &p) {
    ReportHandle r;
    check(chs_verify(p.seed, p.tamper ? CHS_VERIFY_TAMPER : 0u, &r.h), "verify");
    std::fputs(chs_report_text(r.h), stdout);
    std::fflush(stdout);
    return chs_report_all_passed(r.h) ? kOk : kAcceptance;
}

void parse_formats(Params &p) {
    std::stringstream ss(p.format);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "csv") {
            p.csv = true;
        } else if (item == "pgm") {
            p.pgm = true;
        } else {
            throw CLI::ValidationError("--format", "unknown format '" + item + "' (expected csv, pgm)");
        }
    }
    if (!p.csv && !p.pgm) {
        throw CLI::ValidationError("--format", "at least one of csv, pgm is required");
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Pre/post-selected interferometer simulator"};
    app.set_version_flag("--version", std::string(chs_version()));
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key = value parameter file; command-line flags take precedence");
    app.allow_config_extras(CLI::config_extras_mode::error);

    Params p;
    app.add_option("--w", p.w, "pointer width W")->capture_default_str();
    app.add_option("--dx", p.dx, "pointer-1 displacement")->capture_default_str();
    app.add_option("--dy", p.dy, "pointer-2 displacement")->capture_default_str();
    app.add_option("--chi-steps", p.chi_steps, "phases per neutron sweep")->capture_default_str();
    app.add_option("--t", p.t, "absorber transmissivity")->capture_default_str();
    app.add_option("--alpha", p.alpha, "field rotation angle")->capture_default_str();
    app.add_option("--grid-n", p.grid_n, "points per axis")->capture_default_str();
    app.add_option("--grid-span", p.grid_span, "half-span in widths")->capture_default_str();
    app.add_option("--seed", p.seed, "random seed")->capture_default_str();
    app.add_option("--samples", p.samples, "neutron counts per phase, or ensemble size (weak-values, default 1000)")
        ->capture_default_str();
    app.add_option("--out", p.out, "output directory")->capture_default_str();
    app.add_option("--format", p.format, "comma-separated subset of csv,pgm")->capture_default_str();
    app.add_option("--noise", p.noise, "phase-noise-pre, phase-noise-post or amplitude-noise")->capture_default_str();
    app.add_option("--strength", p.strength, "disturbance strength")->capture_default_str();
    app.add_flag("--tamper", p.tamper, "perturb one coefficient (negative control)")->group("");

    auto *photon = app.add_subcommand("photon-cat", "pointer densities, centroids and weak values for the photon");
    auto *neutron = app.add_subcommand("neutron-cat", "detector curves and visibilities for the neutron");
    auto *weak = app.add_subcommand("weak-values", "weak values and disturbance ensembles");
    auto *check_cmd = app.add_subcommand("verify", "run the acceptance suite");

    try {
        app.parse(argc, argv);
        parse_formats(p);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (photon->parsed()) {
            return photon_cat(p);
        }
        if (neutron->parsed()) {
            return neutron_cat(p);
        }
        if (weak->parsed()) {
            return weak_values(p);
        }
        if (check_cmd->parsed()) {
            return verify(p);
        }
    } catch (const Failure &f) {
        std::cerr << "error (" << chs_status_name(f.status) << "): " << f.context << '\n';
        return exit_code(f.status);
    }
    return kUsage;
}

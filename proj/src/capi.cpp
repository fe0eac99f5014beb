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

#include "cheshire/cheshire.h"

#include <cmath>
#include <memory>
#include <new>
#include <ostream>
#include <string>
#include <tuple>

#include "cheshire/acceptance.hpp"
#include "cheshire/analysis.hpp"
#include "cheshire/hybrid.hpp"
#include "cheshire/io.hpp"
#include "cheshire/neutron.hpp"

using namespace cheshire;

struct chs_photon {
    InteractionSpec spec;
    UniformGrid1D grid;
    HybridState hybrid;
    PointerJointState joint;
};

struct chs_sweep {
    ChiSweep sweep;
};

struct chs_ensemble {
    EnsembleResult result;
    UniformGrid1D grid;
};

struct chs_report {
    std::vector<CriterionResult> results;
    std::string text;
};

namespace {

thread_local std::string last_error;

chs_status to_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument:
            return CHS_INVALID_ARGUMENT;
        case ErrorCode::BasisMismatch:
            return CHS_BASIS_MISMATCH;
        case ErrorCode::DegenerateInput:
            return CHS_DEGENERATE_INPUT;
        case ErrorCode::IncompatibleGrid:
            return CHS_INCOMPATIBLE_GRID;
        case ErrorCode::Regime:
            return CHS_REGIME;
        case ErrorCode::NullPostselection:
            return CHS_NULL_POSTSELECTION;
        case ErrorCode::UndefinedWeakValue:
            return CHS_UNDEFINED_WEAK_VALUE;
        case ErrorCode::Io:
            return CHS_IO;
    }
    return CHS_INTERNAL;
}

template <typename F>
chs_status guarded(F &&f) {
    try {
        f();
        last_error.clear();
        return CHS_OK;
    } catch (const Error &e) {
        last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc &) {
        last_error = "out of memory";
        return CHS_INTERNAL;
    } catch (const std::exception &e) {
        last_error = e.what();
        return CHS_INTERNAL;
    }
}

void require(bool condition, const char *message) {
    if (!condition) {
        throw Error(ErrorCode::InvalidArgument, message);
    }
}

InteractionSpec spec_from(const chs_photon_config &c) {
    InteractionSpec spec{c.delta_x, c.delta_y, c.width};
    spec.validate();
    return spec;
}

UniformGrid1D grid_from(const chs_photon_config &c) {
    require(std::isfinite(c.grid_half_span) && c.grid_half_span > 0.0, "grid half-span must be positive");
    auto grid = default_grid(c.width, c.grid_n, c.grid_half_span);
    grid.validate();
    return grid;
}

Path path_from(chs_path p) {
    require(p == CHS_PATH_I || p == CHS_PATH_II, "unknown path");
    return p == CHS_PATH_I ? Path::I : Path::II;
}

NeutronScenario scenario_from(const chs_neutron_probe *probe, double chi) {
    NeutronScenario s;
    s.chi = chi;
    if (probe == nullptr || probe->kind == CHS_PROBE_NONE) {
        return s;
    }
    if (probe->kind == CHS_PROBE_ABSORBER) {
        s.absorber = Absorber{path_from(probe->path), probe->transmissivity};
    } else if (probe->kind == CHS_PROBE_FIELD) {
        require(std::isfinite(probe->alpha), "field angle must be finite");
        s.rotation = SpinRotation::field(path_from(probe->path), probe->alpha);
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown probe kind");
    }
    return s;
}

void store(const DetectorProbabilities &p, chs_detector_probabilities *out) {
    *out = {p.d1, p.d2, p.absorbed, p.rejected};
}

DetectorProbabilities load(const chs_detector_probabilities &p) { return {p.d1, p.d2, p.absorbed, p.rejected}; }

Field2D photon_field(const chs_photon &ph, chs_field field) {
    if (field == CHS_FIELD_COMBINED) {
        return joint_density(ph.joint, ph.grid, ph.grid);
    }
    require(field == CHS_FIELD_ARM_I || field == CHS_FIELD_ARM_II, "unknown field");
    const auto arm2 = photon_term_index(ph.joint, PhotonTerm::ArmII);
    // Scale so the arm-II term reads 2 F(x, y - dy).
    const Complex scale = 2.0 / ph.joint.terms()[arm2].coeff;
    if (field == CHS_FIELD_ARM_II) {
        const std::size_t idx[] = {arm2};
        return term_field(ph.joint, idx, scale, ph.grid, ph.grid);
    }
    const std::size_t idx[] = {photon_term_index(ph.joint, PhotonTerm::ArmIPlus),
                               photon_term_index(ph.joint, PhotonTerm::ArmIMinus)};
    return term_field(ph.joint, idx, scale, ph.grid, ph.grid);
}

void write_field(const Field2D &f, chs_format format, const char *path, const char *comment) {
    require(path != nullptr, "output path is null");
    require(format == CHS_FORMAT_CSV || format == CHS_FORMAT_PGM, "unknown format");
    const std::string note = comment ? comment : "";
    if (format == CHS_FORMAT_CSV) {
        write_file(path, [&](std::ostream &out) { write_field_csv(out, f, note); });
    } else {
        write_file(path, [&](std::ostream &out) { write_field_pgm(out, f); }, true);
    }
}

}  // namespace

extern "C" {

const char *chs_status_name(chs_status status) {
    switch (status) {
        case CHS_OK:
            return "ok";
        case CHS_INVALID_ARGUMENT:
            return "invalid_argument";
        case CHS_BASIS_MISMATCH:
            return "basis_mismatch";
        case CHS_DEGENERATE_INPUT:
            return "degenerate_input";
        case CHS_INCOMPATIBLE_GRID:
            return "incompatible_grid";
        case CHS_REGIME:
            return "regime";
        case CHS_NULL_POSTSELECTION:
            return "null_postselection";
        case CHS_UNDEFINED_WEAK_VALUE:
            return "undefined_weak_value";
        case CHS_IO:
            return "io";
        case CHS_INTERNAL:
            return "internal";
    }
    return "unknown";
}

const char *chs_last_error_message(void) { return last_error.c_str(); }

const char *chs_version(void) { return "0.1.0"; }

void chs_photon_config_default(chs_photon_config *config) {
    if (config != nullptr) {
        *config = {1.0, 0.1, 0.1, 512, 8.0};
    }
}

chs_status chs_photon_create(const chs_photon_config *config, chs_photon **out) {
    return guarded([&] {
        require(config != nullptr && out != nullptr, "null argument");
        *out = nullptr;
        auto ph = std::make_unique<chs_photon>();
        ph->spec = spec_from(*config);
        ph->grid = grid_from(*config);
        ph->hybrid = interact(preselect_photon(ph->spec), ph->spec);
        ph->joint = postselect(ph->hybrid, photon_postselection());
        *out = ph.release();
    });
}

void chs_photon_destroy(chs_photon *photon) { delete photon; }

chs_status chs_photon_coefficients(const chs_photon *photon, double re[3], double im[3]) {
    return guarded([&] {
        require(photon != nullptr && re != nullptr && im != nullptr, "null argument");
        const PhotonTerm order[] = {PhotonTerm::ArmII, PhotonTerm::ArmIPlus, PhotonTerm::ArmIMinus};
        for (int k = 0; k < 3; ++k) {
            const Complex c = photon->joint.terms()[photon_term_index(photon->joint, order[k])].coeff;
            re[k] = c.real();
            im[k] = c.imag();
        }
    });
}

chs_status chs_photon_centroid(const chs_photon *photon, double *x, double *y) {
    return guarded([&] {
        require(photon != nullptr && x != nullptr && y != nullptr, "null argument");
        std::tie(*x, *y) = centroid2d(photon->joint);
    });
}

chs_status chs_photon_postselection_probability(const chs_photon *photon, double *p) {
    return guarded([&] {
        require(photon != nullptr && p != nullptr, "null argument");
        *p = postselection_probability(photon->hybrid, photon->joint, photon_postselection());
    });
}

chs_status chs_photon_pointer_purity(const chs_photon *photon, double *purity) {
    return guarded([&] {
        require(photon != nullptr && purity != nullptr, "null argument");
        *purity = pointer_entanglement(photon->joint);
    });
}

chs_status chs_photon_lobe_weights(const chs_photon *photon, double radius, double weights[3]) {
    return guarded([&] {
        require(photon != nullptr && weights != nullptr, "null argument");
        require(std::isfinite(radius) && radius > 0.0, "lobe radius must be positive");
        const auto w = strong_lobe_weights(photon->joint, radius);
        const PhotonTerm order[] = {PhotonTerm::ArmII, PhotonTerm::ArmIPlus, PhotonTerm::ArmIMinus};
        for (int k = 0; k < 3; ++k) {
            weights[k] = w[photon_term_index(photon->joint, order[k])];
        }
    });
}

chs_status chs_photon_field_max(const chs_photon *photon, chs_field field, double *max_abs) {
    return guarded([&] {
        require(photon != nullptr && max_abs != nullptr, "null argument");
        *max_abs = photon_field(*photon, field).max_abs();
    });
}

chs_status chs_photon_write_field(const chs_photon *photon, chs_field field, chs_format format, const char *path,
                                  const char *comment) {
    return guarded([&] {
        require(photon != nullptr, "null argument");
        write_field(photon_field(*photon, field), format, path, comment);
    });
}

const char *chs_observable_name(chs_observable observable) {
    switch (observable) {
        case CHS_OBS_PATH_I:
            return observable_name(Observable::PathI);
        case CHS_OBS_PATH_II:
            return observable_name(Observable::PathII);
        case CHS_OBS_SPIN_PATH_I:
            return observable_name(Observable::SpinPathI);
        case CHS_OBS_SPIN_PATH_II:
            return observable_name(Observable::SpinPathII);
    }
    return "unknown";
}

chs_status chs_photon_weak_values(const chs_photon_config *config, chs_weak_value_report out[4]) {
    return guarded([&] {
        require(config != nullptr && out != nullptr, "null argument");
        const auto reports = photon_weak_value_reports(spec_from(*config));
        for (const auto &r : reports) {
            const auto k = static_cast<int>(r.observable);
            out[k] = {static_cast<chs_observable>(k),
                      r.weak_value.real(),
                      r.weak_value.imag(),
                      r.coupling,
                      r.predicted_shift,
                      r.simulated_shift ? 1 : 0,
                      r.simulated_shift.value_or(0.0),
                      r.discrepancy.value_or(0.0)};
        }
    });
}

chs_status chs_neutron_probabilities(const chs_neutron_probe *probe, double chi, chs_detector_probabilities *out) {
    return guarded([&] {
        require(out != nullptr, "null argument");
        require(std::isfinite(chi), "phase must be finite");
        store(detector_probabilities(scenario_from(probe, chi)), out);
    });
}

chs_status chs_sample_counts(const chs_detector_probabilities *p, uint64_t n, uint64_t seed,
                             chs_detector_counts *out) {
    return guarded([&] {
        require(p != nullptr && out != nullptr, "null argument");
        const auto c = sample_counts(load(*p), n, seed);
        *out = {c.d1, c.d2, c.absorbed, c.rejected};
    });
}

chs_status chs_neutron_sweep_create(const chs_neutron_probe *probe, size_t chi_steps, chs_sweep **out) {
    return guarded([&] {
        require(out != nullptr, "null argument");
        *out = nullptr;
        require(chi_steps > 0, "chi sweep needs at least one step");
        auto s = std::make_unique<chs_sweep>();
        s->sweep = chi_sweep(scenario_from(probe, 0.0), uniform_chi_grid(chi_steps));
        *out = s.release();
    });
}

void chs_sweep_destroy(chs_sweep *sweep) { delete sweep; }

size_t chs_sweep_size(const chs_sweep *sweep) { return sweep ? sweep->sweep.rows.size() : 0; }

chs_status chs_sweep_row(const chs_sweep *sweep, size_t index, double *chi, chs_detector_probabilities *p) {
    return guarded([&] {
        require(sweep != nullptr, "null argument");
        require(index < sweep->sweep.rows.size(), "sweep row out of range");
        const auto &row = sweep->sweep.rows[index];
        if (chi != nullptr) {
            *chi = row.chi;
        }
        if (p != nullptr) {
            store(row.p, p);
        }
    });
}

chs_status chs_sweep_visibility(const chs_sweep *sweep, double *v_d1, double *v_d2, double *raw_d1,
                                double *raw_d2) {
    return guarded([&] {
        require(sweep != nullptr, "null argument");
        const auto &s = sweep->sweep;
        if (v_d1) *v_d1 = s.visibility_d1;
        if (v_d2) *v_d2 = s.visibility_d2;
        if (raw_d1) *raw_d1 = s.raw_visibility_d1;
        if (raw_d2) *raw_d2 = s.raw_visibility_d2;
    });
}

chs_status chs_sweep_write_csv(const chs_sweep *sweep, const char *path, const char *comment, uint64_t samples,
                               uint64_t seed) {
    return guarded([&] {
        require(sweep != nullptr && path != nullptr, "null argument");
        // Draw before opening the file so a failure leaves nothing behind.
        std::vector<DetectorCounts> counts;
        if (samples > 0) {
            for (std::size_t i = 0; i < sweep->sweep.rows.size(); ++i) {
                counts.push_back(sample_counts(sweep->sweep.rows[i].p, samples, seed + i));
            }
        }
        write_file(path, [&](std::ostream &out) {
            if (comment != nullptr && *comment != '\0') {
                out << "# " << comment << '\n';
            }
            out << "chi,p_d1,p_d2,p_absorbed,p_rejected";
            if (samples > 0) {
                out << ",n_d1,n_d2,n_absorbed,n_rejected";
            }
            out << '\n';
            for (std::size_t i = 0; i < sweep->sweep.rows.size(); ++i) {
                const auto &r = sweep->sweep.rows[i];
                out << format_double(r.chi) << ',' << format_double(r.p.d1) << ',' << format_double(r.p.d2) << ','
                    << format_double(r.p.absorbed) << ',' << format_double(r.p.rejected);
                if (samples > 0) {
                    const auto &c = counts[i];
                    out << ',' << c.d1 << ',' << c.d2 << ',' << c.absorbed << ',' << c.rejected;
                }
                out << '\n';
            }
        });
    });
}

const char *chs_noise_name(chs_noise noise) {
    switch (noise) {
        case CHS_NOISE_PHASE_PRE:
            return noise_kind_name(NoiseKind::PhasePre);
        case CHS_NOISE_PHASE_POST:
            return noise_kind_name(NoiseKind::PhasePost);
        case CHS_NOISE_AMPLITUDE:
            return noise_kind_name(NoiseKind::Amplitude);
    }
    return "unknown";
}

chs_status chs_ensemble_run(const chs_photon_config *config, chs_noise noise, double strength, uint64_t samples,
                            uint64_t seed, chs_ensemble **out) {
    return guarded([&] {
        require(config != nullptr && out != nullptr, "null argument");
        *out = nullptr;
        require(noise == CHS_NOISE_PHASE_PRE || noise == CHS_NOISE_PHASE_POST || noise == CHS_NOISE_AMPLITUDE,
                "unknown noise kind");
        const NoiseKind kinds[] = {NoiseKind::PhasePre, NoiseKind::PhasePost, NoiseKind::Amplitude};
        auto e = std::make_unique<chs_ensemble>();
        e->grid = grid_from(*config);
        e->result = disturbance_ensemble(DisturbanceModel{kinds[noise], strength, samples, seed}, spec_from(*config));
        *out = e.release();
    });
}

void chs_ensemble_destroy(chs_ensemble *ensemble) { delete ensemble; }

chs_status chs_ensemble_stats_get(const chs_ensemble *ensemble, chs_ensemble_stats *out) {
    return guarded([&] {
        require(ensemble != nullptr && out != nullptr, "null argument");
        const auto &r = ensemble->result;
        *out = {r.samples,
                r.null_samples,
                r.mean_x,
                r.mean_y,
                r.stderr_x,
                r.stderr_y,
                r.density_centroid_x,
                r.density_centroid_y,
                r.purity,
                r.mean_postselection_probability};
    });
}

chs_status chs_ensemble_write_density(const chs_ensemble *ensemble, chs_format format, const char *path,
                                      const char *comment) {
    return guarded([&] {
        require(ensemble != nullptr, "null argument");
        write_field(ensemble->result.density(ensemble->grid, ensemble->grid), format, path, comment);
    });
}

chs_status chs_verify(uint64_t seed, unsigned flags, chs_report **out) {
    return guarded([&] {
        require(out != nullptr, "null argument");
        *out = nullptr;
        auto r = std::make_unique<chs_report>();
        r->results = run_acceptance(AcceptanceOptions{seed, (flags & CHS_VERIFY_TAMPER) != 0});
        r->text = format_report(r->results);
        *out = r.release();
    });
}

void chs_report_destroy(chs_report *report) { delete report; }

const char *chs_report_text(const chs_report *report) { return report ? report->text.c_str() : ""; }

int chs_report_all_passed(const chs_report *report) { return report && all_passed(report->results) ? 1 : 0; }

size_t chs_report_size(const chs_report *report) { return report ? report->results.size() : 0; }

chs_status chs_report_criterion(const chs_report *report, size_t index, int *id, int *passed, const char **name,
                                const char **detail) {
    return guarded([&] {
        require(report != nullptr, "null argument");
        require(index < report->results.size(), "criterion index out of range");
        const auto &c = report->results[index];
        if (id) *id = c.id;
        if (passed) *passed = c.passed ? 1 : 0;
        if (name) *name = c.name.c_str();
        if (detail) *detail = c.detail.c_str();
    });
}

}  // extern "C"

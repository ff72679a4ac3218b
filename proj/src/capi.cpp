// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The mgfcap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mgfcap/mgfcap.h"

#include "mgfcap/capacity.hpp"
#include "mgfcap/error.hpp"
#include "mgfcap/fading.hpp"
#include "mgfcap/selftest.hpp"
#include "mgfcap/simulate.hpp"

#include <map>
#include <new>
#include <string>
#include <vector>

struct mgfcap_model {
    mgfcap::FadingModel model;
    std::string family;
};

namespace {

thread_local std::string g_last_error;

struct NullArgument : mgfcap::Error {
    using Error::Error;
};

// Runs f, mapping exceptions to status codes.
template <class F>
mgfcap_status guard(F&& f) {
    try {
        f();
        g_last_error.clear();
        return MGFCAP_OK;
    } catch (const NullArgument& e) {
        g_last_error = e.what();
        return MGFCAP_E_NULL;
    } catch (const mgfcap::PoleError& e) {
        g_last_error = e.what();
        return MGFCAP_E_POLE;
    } catch (const mgfcap::DomainError& e) {
        g_last_error = e.what();
        return MGFCAP_E_DOMAIN;
    } catch (const mgfcap::ParameterError& e) {
        g_last_error = e.what();
        return MGFCAP_E_PARAMETER;
    } catch (const mgfcap::ConvergenceError& e) {
        g_last_error = e.what();
        return MGFCAP_E_CONVERGENCE;
    } catch (const mgfcap::UnsupportedError& e) {
        g_last_error = e.what();
        return MGFCAP_E_UNSUPPORTED;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return MGFCAP_E_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return MGFCAP_E_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return MGFCAP_E_INTERNAL;
    }
}

mgfcap::CombinerSpec to_spec(const mgfcap_combiner_spec& c) {
    if (c.kind != MGFCAP_EGC && c.kind != MGFCAP_MRC) throw mgfcap::ParameterError("unknown combiner kind");
    mgfcap::CombinerSpec s;
    s.kind = c.kind == MGFCAP_EGC ? mgfcap::CombinerKind::EGC : mgfcap::CombinerKind::MRC;
    s.L = c.L;
    s.snr = c.snr;
    s.bandwidth = c.bandwidth;
    s.validate();
    return s;
}

mgfcap::IntegrationMode to_mode(const mgfcap_integration* m) {
    mgfcap::IntegrationMode out;
    if (!m) return out;
    switch (m->method) {
    case MGFCAP_METHOD_ADAPTIVE: out.method = mgfcap::Method::Adaptive; break;
    case MGFCAP_METHOD_GCQ: out.method = mgfcap::Method::Gcq; break;
    default: throw mgfcap::ParameterError("integration method must be adaptive or gcq");
    }
    out.gcq_n = m->gcq_n;
    out.gcq_literal = m->gcq_literal != 0;
    if (m->rel_tol > 0.0) out.rel_tol = m->rel_tol;
    return out;
}

mgfcap_method to_c(mgfcap::Method m) {
    switch (m) {
    case mgfcap::Method::Adaptive: return MGFCAP_METHOD_ADAPTIVE;
    case mgfcap::Method::Gcq: return MGFCAP_METHOD_GCQ;
    case mgfcap::Method::ClosedForm: return MGFCAP_METHOD_CLOSED_FORM;
    case mgfcap::Method::MonteCarlo: return MGFCAP_METHOD_MONTE_CARLO;
    }
    return MGFCAP_METHOD_ADAPTIVE;
}

std::vector<mgfcap::FadingModel> gather(const mgfcap_model* const* models, int L) {
    if (L < 1) throw mgfcap::ParameterError("combiner needs L >= 1");
    std::vector<mgfcap::FadingModel> out;
    out.reserve(L);
    for (int i = 0; i < L; ++i) {
        if (!models[i]) throw NullArgument("NULL model handle in branch list");
        out.push_back(models[i]->model);
    }
    return out;
}

void write_point(const mgfcap::CapacityPoint& p, mgfcap_capacity_point* out) {
    out->value = p.value;
    out->method = to_c(p.method);
    out->error_estimate = p.error_estimate;
}

} // namespace

extern "C" {

const char* mgfcap_version(void) { return "0.1.0"; }

const char* mgfcap_last_error(void) { return g_last_error.c_str(); }

const char* mgfcap_status_name(mgfcap_status status) {
    switch (status) {
    case MGFCAP_OK: return "ok";
    case MGFCAP_E_DOMAIN: return "domain error";
    case MGFCAP_E_POLE: return "pole";
    case MGFCAP_E_PARAMETER: return "invalid parameter";
    case MGFCAP_E_CONVERGENCE: return "no convergence";
    case MGFCAP_E_UNSUPPORTED: return "unsupported";
    case MGFCAP_E_NULL: return "null argument";
    case MGFCAP_E_INTERNAL: return "internal error";
    }
    return "unknown status";
}

mgfcap_status mgfcap_model_create(const char* family, const char* const* keys, const double* values, size_t count,
                                  mgfcap_model** out) {
    if (!family || !out || (count > 0 && (!keys || !values))) {
        g_last_error = "NULL argument to mgfcap_model_create";
        return MGFCAP_E_NULL;
    }
    *out = nullptr;
    return guard([&] {
        std::map<std::string, double> kv;
        for (size_t i = 0; i < count; ++i) {
            if (!keys[i]) throw NullArgument("NULL parameter name");
            if (!kv.emplace(keys[i], values[i]).second) {
                throw mgfcap::ParameterError(std::string("duplicate parameter '") + keys[i] + "'");
            }
        }
        auto model = mgfcap::FadingModel::from_record(family, kv);
        auto* h = new mgfcap_model{model, model.family()};
        *out = h;
    });
}

void mgfcap_model_destroy(mgfcap_model* model) { delete model; }

mgfcap_status mgfcap_model_family(const mgfcap_model* model, const char** out) {
    if (!model || !out) {
        g_last_error = "NULL argument to mgfcap_model_family";
        return MGFCAP_E_NULL;
    }
    *out = model->family.c_str();
    return MGFCAP_OK;
}

int mgfcap_model_sampleable(const mgfcap_model* model) { return model && model->model.sampleable() ? 1 : 0; }

mgfcap_status mgfcap_pdf(const mgfcap_model* model, double r, double* out) {
    if (!model || !out) {
        g_last_error = "NULL argument to mgfcap_pdf";
        return MGFCAP_E_NULL;
    }
    return guard([&] { *out = mgfcap::pdf(model->model, r); });
}

mgfcap_status mgfcap_mgf(const mgfcap_model* model, double s, int p, double* mgf, double* dmgf) {
    if (!model) {
        g_last_error = "NULL argument to mgfcap_mgf";
        return MGFCAP_E_NULL;
    }
    return guard([&] {
        const auto v = mgfcap::mgf_pair(model->model, s, p);
        if (mgf) *mgf = v.mgf;
        if (dmgf) *dmgf = v.dmgf;
    });
}

mgfcap_status mgfcap_mgf_oracle(const mgfcap_model* model, double s, int p, double* out) {
    if (!model || !out) {
        g_last_error = "NULL argument to mgfcap_mgf_oracle";
        return MGFCAP_E_NULL;
    }
    return guard([&] { *out = mgfcap::mgf_p_oracle(model->model, s, p); });
}

mgfcap_status mgfcap_moment(const mgfcap_model* model, double k, double* out) {
    if (!model || !out) {
        g_last_error = "NULL argument to mgfcap_moment";
        return MGFCAP_E_NULL;
    }
    return guard([&] { *out = mgfcap::envelope_moment(model->model, k); });
}

mgfcap_status mgfcap_aux_c(int q, double s, mgfcap_aux_path path, double* out) {
    if (!out) {
        g_last_error = "NULL argument to mgfcap_aux_c";
        return MGFCAP_E_NULL;
    }
    return guard([&] {
        switch (path) {
        case MGFCAP_AUX_DIRECT: *out = mgfcap::aux_c(q, s); break;
        case MGFCAP_AUX_FOX: *out = mgfcap::aux_c_fox(q, s); break;
        case MGFCAP_AUX_MEIJER: *out = mgfcap::aux_c_meijer(q, s); break;
        default: throw mgfcap::ParameterError("unknown C_q evaluation path");
        }
    });
}

void mgfcap_integration_default(mgfcap_integration* mode) {
    if (!mode) return;
    const mgfcap::IntegrationMode d;
    mode->method = MGFCAP_METHOD_ADAPTIVE;
    mode->gcq_n = d.gcq_n;
    mode->gcq_literal = d.gcq_literal ? 1 : 0;
    mode->rel_tol = d.rel_tol;
}

mgfcap_status mgfcap_capacity(const mgfcap_model* const* models, const mgfcap_combiner_spec* comb,
                              const mgfcap_integration* mode, mgfcap_capacity_point* out) {
    if (!models || !comb || !out) {
        g_last_error = "NULL argument to mgfcap_capacity";
        return MGFCAP_E_NULL;
    }
    return guard([&] {
        const auto spec = to_spec(*comb);
        write_point(mgfcap::capacity_independent(gather(models, comb->L), spec, to_mode(mode)), out);
    });
}

mgfcap_status mgfcap_capacity_joint(mgfcap_joint_mgf_fn fn, void* user, const mgfcap_combiner_spec* comb,
                                    const mgfcap_integration* mode, mgfcap_capacity_point* out) {
    if (!fn || !comb || !out) {
        g_last_error = "NULL argument to mgfcap_capacity_joint";
        return MGFCAP_E_NULL;
    }
    return guard([&] {
        mgfcap::JointMgf joint = [&](double x) {
            double m = 0.0, dm = 0.0;
            if (fn(user, x, &m, &dm) != 0) throw mgfcap::ParameterError("joint MGF callback reported failure");
            return std::pair{m, dm};
        };
        write_point(mgfcap::capacity_joint(joint, to_spec(*comb), to_mode(mode)), out);
    });
}

mgfcap_status mgfcap_capacity_nakagami_closed(double m, int L, double gamma_bar, double bandwidth,
                                              mgfcap_capacity_point* out) {
    if (!out) {
        g_last_error = "NULL argument to mgfcap_capacity_nakagami_closed";
        return MGFCAP_E_NULL;
    }
    return guard([&] { write_point(mgfcap::capacity_mrc_nakagami_closed(m, L, gamma_bar, bandwidth), out); });
}

mgfcap_status mgfcap_jensen_bound(const mgfcap_model* const* models, const mgfcap_combiner_spec* comb, double* out) {
    if (!models || !comb || !out) {
        g_last_error = "NULL argument to mgfcap_jensen_bound";
        return MGFCAP_E_NULL;
    }
    return guard([&] { *out = mgfcap::jensen_bound(gather(models, comb->L), to_spec(*comb)); });
}

mgfcap_status mgfcap_simulate(const mgfcap_model* const* models, const mgfcap_combiner_spec* comb,
                              uint64_t n_samples, uint64_t seed, uint64_t batch, int workers,
                              mgfcap_sim_result* out) {
    if (!models || !comb || !out) {
        g_last_error = "NULL argument to mgfcap_simulate";
        return MGFCAP_E_NULL;
    }
    return guard([&] {
        mgfcap::SimConfig cfg;
        cfg.comb = to_spec(*comb);
        cfg.models = gather(models, comb->L);
        cfg.n_samples = n_samples;
        cfg.seed = seed;
        cfg.batch = batch == 0 ? mgfcap::default_batch(n_samples) : batch;
        cfg.workers = workers;
        const auto r = mgfcap::simulate_capacity(cfg);
        out->mean = r.mean;
        out->std_error = r.std_error;
        out->n_samples = r.n_samples;
    });
}

mgfcap_status mgfcap_selftest(double tolerance_scale, mgfcap_selftest_fn fn, void* user, int* all_passed) {
    if (!all_passed) {
        g_last_error = "NULL argument to mgfcap_selftest";
        return MGFCAP_E_NULL;
    }
    return guard([&] {
        const auto checks = mgfcap::run_selftest(tolerance_scale, [&](const mgfcap::SelftestCheck& c) {
            if (fn) fn(user, c.name.c_str(), c.measured, c.tolerance, c.passed ? 1 : 0);
        });
        bool ok = true;
        for (const auto& c : checks) ok = ok && c.passed;
        *all_passed = ok ? 1 : 0;
    });
}

} // extern "C"

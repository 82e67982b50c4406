// Copyright 2026 The nullwave Authors
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

#include "nullwave/nullwave.h"

#include <exception>
#include <string>
#include <vector>

#include "nullwave/cli/config.hpp"
#include "nullwave/cli/experiments.hpp"
#include "nullwave/error.hpp"
#include "nullwave/fields.hpp"
#include "nullwave/solver/riccati.hpp"
#include "nullwave/solver/transport.hpp"
#include "nullwave/system_core.hpp"

struct nw_system {
  nullwave::core::SystemSpec spec;
};

struct nw_field {
  nullwave::fields::GridField field;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_summary;

nw_status status_of(nullwave::ErrorCode code) {
  using nullwave::ErrorCode;
  switch (code) {
    case ErrorCode::structural: return NW_ERR_STRUCTURAL;
    case ErrorCode::precondition: return NW_ERR_PRECONDITION;
    case ErrorCode::domain: return NW_ERR_DOMAIN;
    case ErrorCode::coverage: return NW_ERR_COVERAGE;
    case ErrorCode::degenerate: return NW_ERR_DEGENERATE;
    case ErrorCode::blowup_point: return NW_ERR_BLOWUP_POINT;
    case ErrorCode::gluing: return NW_ERR_GLUING;
    case ErrorCode::config: return NW_ERR_CONFIG;
    case ErrorCode::io: return NW_ERR_IO;
  }
  return NW_ERR_INTERNAL;
}

nw_status fail(nw_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class F>
nw_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return NW_OK;
  } catch (const nullwave::cli::ConfigError& e) {
    return fail(NW_ERR_CONFIG, e.what());
  } catch (const nullwave::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(NW_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(NW_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(NW_ERR_INTERNAL, "unknown error");
  }
}

nullwave::fields::InitialDatum datum_of(const nw_breakpoint* points, size_t count) {
  std::vector<nullwave::fields::Breakpoint> bps;
  bps.reserve(count);
  for (size_t n = 0; n < count; ++n) bps.push_back({points[n].x, points[n].value});
  return nullwave::fields::InitialDatum::from_breakpoints(std::move(bps));
}

}  // namespace

extern "C" {

const char* nw_last_error(void) { return last_error.c_str(); }

const char* nw_status_name(nw_status status) {
  switch (status) {
    case NW_OK: return "ok";
    case NW_ERR_STRUCTURAL: return "structural";
    case NW_ERR_PRECONDITION: return "precondition";
    case NW_ERR_DOMAIN: return "domain";
    case NW_ERR_COVERAGE: return "coverage";
    case NW_ERR_DEGENERATE: return "degenerate";
    case NW_ERR_BLOWUP_POINT: return "blowup_point";
    case NW_ERR_GLUING: return "gluing";
    case NW_ERR_CONFIG: return "config";
    case NW_ERR_IO: return "io";
    case NW_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case NW_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* nw_version(void) { return "0.1.0"; }

nw_status nw_system_create(const double* speeds, size_t p, const double* coupling, nw_system** out) {
  if (!speeds || !coupling || !out || p == 0) return fail(NW_ERR_INVALID_ARGUMENT, "null argument or p = 0");
  return guarded([&] {
    std::vector<double> c(speeds, speeds + p);
    std::vector<double> a(coupling, coupling + p * p * p);
    *out = new nw_system{nullwave::core::SystemSpec(std::move(c), std::move(a))};
  });
}

nw_status nw_system_from_triplets(const double* speeds, size_t p, const nw_coupling_entry* entries, size_t count,
                                  nw_system** out) {
  if (!speeds || (!entries && count > 0) || !out || p == 0)
    return fail(NW_ERR_INVALID_ARGUMENT, "null argument or p = 0");
  return guarded([&] {
    std::vector<nullwave::core::CouplingEntry> list;
    for (size_t n = 0; n < count; ++n) list.push_back({entries[n].i, entries[n].j, entries[n].k, entries[n].value});
    *out = new nw_system{nullwave::core::SystemSpec::from_triplets(std::vector<double>(speeds, speeds + p), list)};
  });
}

void nw_system_destroy(nw_system* system) { delete system; }

size_t nw_system_dimension(const nw_system* system) { return system ? static_cast<size_t>(system->spec.p()) : 0; }

nw_status nw_system_validate(const nw_system* system, nw_validation* out) {
  if (!system || !out) return fail(NW_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto r = nullwave::core::validate(system->spec);
    out->symmetric = r.symmetric ? 1 : 0;
    out->null_condition_holds = r.null_condition_holds ? 1 : 0;
    out->resonant_count = r.resonant_triples.size();
  });
}

nw_status nw_system_resonant_triples(const nw_system* system, int* triples, size_t capacity, size_t* count) {
  if (!system || !count || (!triples && capacity > 0)) return fail(NW_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto r = nullwave::core::validate(system->spec);
    *count = r.resonant_triples.size();
    for (size_t n = 0; n < r.resonant_triples.size() && n < capacity; ++n) {
      triples[3 * n] = r.resonant_triples[n].i;
      triples[3 * n + 1] = r.resonant_triples[n].j;
      triples[3 * n + 2] = r.resonant_triples[n].k;
    }
  });
}

nw_status nw_system_gamma(const nw_system* system, double* out) {
  if (!system || !out) return fail(NW_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = nullwave::core::gamma(system->spec); });
}

nw_status nw_contraction_budget(double gamma, double e0, nw_budget* out) {
  if (!out) return fail(NW_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto b = nullwave::core::contraction_budget(gamma, e0);
    *out = nw_budget{b.gamma, b.e0,       b.admissible ? 1 : 0,   b.r_star ? 1 : 0, b.r_star.value_or(0.0),
                     b.r_max ? 1 : 0, b.r_max.value_or(0.0), b.lipschitz};
  });
}

nw_status nw_budget_sequence(double gamma, double e0, int m, double* out) {
  if (!out || m < 0) return fail(NW_ERR_INVALID_ARGUMENT, "null output or negative m");
  return guarded([&] {
    const auto seq = nullwave::core::budget_sequence(gamma, e0, m);
    for (size_t n = 0; n < seq.size(); ++n) out[n] = seq[n];
  });
}

nw_status nw_datum_l1(const nw_breakpoint* points, size_t count, double* out) {
  if ((!points && count > 0) || !out) return fail(NW_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = nullwave::fields::datum_l1(datum_of(points, count)); });
}

nw_status nw_riccati_oracle(const nw_breakpoint* points, size_t count, double c, double lambda, double x, double t,
                            double* out) {
  if ((!points && count > 0) || !out) return fail(NW_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = nullwave::solver::riccati_oracle(datum_of(points, count), c, lambda, x, t); });
}

nw_status nw_transport_solve(double c, const nw_breakpoint* points, size_t count, const nw_grid* grid,
                             nw_field** out) {
  if ((!points && count > 0) || !grid || !out) return fail(NW_ERR_INVALID_ARGUMENT, "null argument");
  if (!(grid->dx > 0.0) || !(grid->dt > 0.0) || grid->nx < 1 || grid->nt < 0)
    return fail(NW_ERR_INVALID_ARGUMENT, "grid needs dx, dt > 0, nx >= 1 and nt >= 0");
  return guarded([&] {
    const nullwave::fields::Grid g{grid->x0, grid->dx, grid->nx, grid->dt, grid->nt};
    *out = new nw_field{nullwave::solver::transport_solve(c, datum_of(points, count), g)};
  });
}

void nw_field_destroy(nw_field* field) { delete field; }

nw_status nw_field_grid(const nw_field* field, nw_grid* out) {
  if (!field || !out) return fail(NW_ERR_INVALID_ARGUMENT, "null argument");
  const auto& g = field->field.grid();
  *out = nw_grid{g.x0, g.dx, g.nx, g.dt, g.nt};
  return NW_OK;
}

nw_status nw_field_at(const nw_field* field, int j, int n, double* out) {
  if (!field || !out) return fail(NW_ERR_INVALID_ARGUMENT, "null argument");
  const auto& g = field->field.grid();
  if (j < 0 || j > g.nx || n < 0 || n > g.nt) return fail(NW_ERR_DOMAIN, "node index outside the grid");
  *out = field->field.at(j, n);
  return NW_OK;
}

const double* nw_field_data(const nw_field* field, size_t* count) {
  if (!field) return nullptr;
  const auto s = field->field.samples();
  if (count) *count = s.size();
  return s.data();
}

nw_status nw_run_experiment(const char* experiment, const char* config_path, const nw_overrides* overrides,
                            const char* out_dir, int* exit_code, const char** summary) {
  if (!config_path || !out_dir || !exit_code) return fail(NW_ERR_INVALID_ARGUMENT, "null argument");
  *exit_code = nullwave::cli::kConfigError;
  if (summary) *summary = "";
  nullwave::cli::Overrides ov;
  if (experiment) ov.experiment = experiment;
  if (overrides) {
    if (overrides->has_dx) ov.dx = overrides->dx;
    if (overrides->has_dt) ov.dt = overrides->dt;
    if (overrides->has_seed) ov.seed = overrides->seed;
  }
  const nw_status status = guarded([&] {
    const auto cfg = nullwave::cli::load_config(config_path, ov);
    const auto outcome = nullwave::cli::run_experiment(cfg, out_dir);
    *exit_code = outcome.exit_code;
    last_summary = outcome.summary;
  });
  if (status != NW_OK) *exit_code = nullwave::cli::kConfigError;
  if (summary) *summary = status == NW_OK ? last_summary.c_str() : "";
  return status;
}

}  // extern "C"

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

/* C interface to the nullwave library. All handles are opaque; every call
 * that can fail returns an nw_status and leaves a message for
 * nw_last_error() on the calling thread. Indices are zero-based. */
#ifndef NULLWAVE_NULLWAVE_H
#define NULLWAVE_NULLWAVE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(NULLWAVE_BUILDING_LIBRARY)
#define NW_API __declspec(dllexport)
#else
#define NW_API __declspec(dllimport)
#endif
#else
#define NW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nw_status {
  NW_OK = 0,
  NW_ERR_STRUCTURAL = 1,
  NW_ERR_PRECONDITION = 2,
  NW_ERR_DOMAIN = 3,
  NW_ERR_COVERAGE = 4,
  NW_ERR_DEGENERATE = 5,
  NW_ERR_BLOWUP_POINT = 6,
  NW_ERR_GLUING = 7,
  NW_ERR_CONFIG = 8,
  NW_ERR_IO = 9,
  NW_ERR_INVALID_ARGUMENT = 10,
  NW_ERR_INTERNAL = 11
} nw_status;

typedef struct nw_system nw_system;
typedef struct nw_field nw_field;

typedef struct nw_coupling_entry {
  int i;
  int j;
  int k;
  double value;
} nw_coupling_entry;

typedef struct nw_breakpoint {
  double x;
  double value;
} nw_breakpoint;

typedef struct nw_grid {
  double x0;
  double dx;
  int nx;
  double dt;
  int nt;
} nw_grid;

typedef struct nw_budget {
  double gamma;
  double e0;
  int admissible;
  int has_r_star;
  double r_star;
  int has_r_max;
  double r_max;
  double lipschitz;
} nw_budget;

typedef struct nw_validation {
  int symmetric;
  int null_condition_holds;
  size_t resonant_count;
} nw_validation;

typedef struct nw_overrides {
  int has_dx;
  double dx;
  int has_dt;
  double dt;
  int has_seed;
  uint64_t seed;
} nw_overrides;

/* Message of the last failed call on this thread; empty if none. */
NW_API const char* nw_last_error(void);
NW_API const char* nw_status_name(nw_status status);
NW_API const char* nw_version(void);

/* coupling: dense p*p*p tensor, index (i*p + j)*p + k. */
NW_API nw_status nw_system_create(const double* speeds, size_t p, const double* coupling, nw_system** out);
NW_API nw_status nw_system_from_triplets(const double* speeds, size_t p, const nw_coupling_entry* entries,
                                         size_t count, nw_system** out);
NW_API void nw_system_destroy(nw_system* system);
NW_API size_t nw_system_dimension(const nw_system* system);
NW_API nw_status nw_system_validate(const nw_system* system, nw_validation* out);
/* Writes up to capacity resonant triples as consecutive (i, j, k). */
NW_API nw_status nw_system_resonant_triples(const nw_system* system, int* triples, size_t capacity, size_t* count);
NW_API nw_status nw_system_gamma(const nw_system* system, double* out);

NW_API nw_status nw_contraction_budget(double gamma, double e0, nw_budget* out);
/* Writes r_0 .. r_m into out, which must hold m + 1 values. */
NW_API nw_status nw_budget_sequence(double gamma, double e0, int m, double* out);

NW_API nw_status nw_datum_l1(const nw_breakpoint* points, size_t count, double* out);
NW_API nw_status nw_riccati_oracle(const nw_breakpoint* points, size_t count, double c, double lambda, double x,
                                   double t, double* out);

/* Free transport of a datum with speed c on the given grid. */
NW_API nw_status nw_transport_solve(double c, const nw_breakpoint* points, size_t count, const nw_grid* grid,
                                    nw_field** out);
NW_API void nw_field_destroy(nw_field* field);
NW_API nw_status nw_field_grid(const nw_field* field, nw_grid* out);
NW_API nw_status nw_field_at(const nw_field* field, int j, int n, double* out);
/* Row-major samples, (nt + 1) * (nx + 1) values. */
NW_API const double* nw_field_data(const nw_field* field, size_t* count);

/* Runs an experiment from a JSON config and writes its outputs under
 * out_dir. exit_code receives 0 (holds), 1 (configuration error) or
 * 2 (violated inequality or unexpected divergence). The returned status is
 * NW_OK whenever the experiment ran, whatever its verdict. summary, if
 * non-null, receives a one-line description owned by the library and valid
 * until the next call on this thread. */
NW_API nw_status nw_run_experiment(const char* experiment, const char* config_path, const nw_overrides* overrides,
                                   const char* out_dir, int* exit_code, const char** summary);

#ifdef __cplusplus
}
#endif

#endif /* NULLWAVE_NULLWAVE_H */

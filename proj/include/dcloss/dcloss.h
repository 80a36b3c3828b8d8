/* Copyright 2026 The dcloss Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of libdcloss: confidence-weighted correspondence losses,
 * occlusion masks, evaluation metrics and file formats.
 *
 * Conventions:
 *  - Every fallible call returns dcl_status; DCL_OK is 0. On failure the
 *    message is available from dcl_last_error() on the same thread and no
 *    output handle is written.
 *  - Objects are opaque handles owned by the caller and released with the
 *    matching *_destroy function (which accepts NULL).
 *  - Grids are row-major, height x width. Flow samples are interleaved
 *    (u, v) pairs, u horizontal.
 *  - Optional validity / region masks may be NULL, meaning "all pixels".
 */
#ifndef DCLOSS_DCLOSS_H_
#define DCLOSS_DCLOSS_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(DCLOSS_BUILDING_LIBRARY)
#define DCLOSS_API __declspec(dllexport)
#else
#define DCLOSS_API __declspec(dllimport)
#endif
#else
#define DCLOSS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dcl_status {
  DCL_OK = 0,
  DCL_ERR_INVALID_ARGUMENT = 1,
  DCL_ERR_DIMENSION_MISMATCH = 2,
  DCL_ERR_NON_FINITE = 3,
  DCL_ERR_NO_VALID_PIXELS = 4,
  DCL_ERR_IO = 5,
  DCL_ERR_BAD_MAGIC = 6,
  DCL_ERR_TRUNCATED = 7,
  DCL_ERR_BAD_DIMENSIONS = 8,
  DCL_ERR_BAD_HEADER = 9,
  DCL_ERR_UNSUPPORTED_FORMAT = 10,
  DCL_ERR_DIVERGED = 11,
  DCL_ERR_CONFIG = 12,
  DCL_ERR_INTERNAL = 100
} dcl_status;

typedef enum dcl_task { DCL_TASK_FLOW = 0, DCL_TASK_STEREO = 1 } dcl_task;

typedef enum dcl_loss_mode {
  DCL_LOSS_PLAIN_L1 = 0,
  DCL_LOSS_DB = 1,
  DCL_LOSS_OA = 2,
  DCL_LOSS_SUM = 3,
  DCL_LOSS_MULTIPLICATION = 4,
  DCL_LOSS_MASKING = 5,
  DCL_LOSS_MASK_SUM = 6
} dcl_loss_mode;

typedef enum dcl_stereo_direction {
  DCL_LEFT_TO_RIGHT = 0,
  DCL_RIGHT_TO_LEFT = 1
} dcl_stereo_direction;

typedef struct dcl_cycle_params {
  double gamma1;
  double gamma2;
} dcl_cycle_params;

typedef struct dcl_weight_spec {
  dcl_loss_mode mode;
  double alpha1;
  double beta1;
  double alpha2;
  double beta2;
  dcl_cycle_params cycle;
} dcl_weight_spec;

typedef struct dcl_flow dcl_flow;     /* H x W field of (u, v) */
typedef struct dcl_scalar dcl_scalar; /* H x W field of doubles */
typedef struct dcl_mask dcl_mask;     /* H x W booleans */
typedef struct dcl_report dcl_report; /* evaluation metrics */

DCLOSS_API const char* dcl_version(void);
DCLOSS_API const char* dcl_status_name(dcl_status status);
/* Message of the most recent failure on the calling thread ("" if none). */
DCLOSS_API const char* dcl_last_error(void);

/* ---- grids ------------------------------------------------------------ */

/* `uv` holds 2 * height * width values. */
DCLOSS_API dcl_status dcl_flow_create(int height, int width, const double* uv, dcl_flow** out);
DCLOSS_API void dcl_flow_destroy(dcl_flow* flow);
DCLOSS_API int dcl_flow_height(const dcl_flow* flow);
DCLOSS_API int dcl_flow_width(const dcl_flow* flow);
/* `count` is the capacity of `uv` in doubles; must be >= 2 * height * width. */
DCLOSS_API dcl_status dcl_flow_copy_data(const dcl_flow* flow, double* uv, size_t count);

DCLOSS_API dcl_status dcl_scalar_create(int height, int width, const double* values,
                                        dcl_scalar** out);
DCLOSS_API void dcl_scalar_destroy(dcl_scalar* scalar);
DCLOSS_API int dcl_scalar_height(const dcl_scalar* scalar);
DCLOSS_API int dcl_scalar_width(const dcl_scalar* scalar);
DCLOSS_API dcl_status dcl_scalar_copy_data(const dcl_scalar* scalar, double* values, size_t count);

/* Nonzero bytes are true. */
DCLOSS_API dcl_status dcl_mask_create(int height, int width, const uint8_t* values, dcl_mask** out);
DCLOSS_API void dcl_mask_destroy(dcl_mask* mask);
DCLOSS_API int dcl_mask_height(const dcl_mask* mask);
DCLOSS_API int dcl_mask_width(const dcl_mask* mask);
DCLOSS_API dcl_status dcl_mask_copy_data(const dcl_mask* mask, uint8_t* values, size_t count);
/* Element-wise AND; `b` may be NULL (copy of `a`). */
DCLOSS_API dcl_status dcl_mask_and(const dcl_mask* a, const dcl_mask* b, dcl_mask** out);

/* ---- geometry --------------------------------------------------------- */

DCLOSS_API dcl_status dcl_flow_hflip(const dcl_flow* flow, dcl_flow** out);
DCLOSS_API dcl_status dcl_scalar_hflip(const dcl_scalar* scalar, dcl_scalar** out);
/* Mirror and negate a disparity estimated on the swapped, mirrored pair. */
DCLOSS_API dcl_status dcl_reverse_disparity_restore(const dcl_scalar* flipped_estimate,
                                                    dcl_scalar** out);
/* left pixel (x, y) matches right pixel (x - d, y). */
DCLOSS_API dcl_status dcl_disparity_to_flow(const dcl_scalar* disparity,
                                            dcl_stereo_direction direction, dcl_flow** out);
DCLOSS_API size_t dcl_scalar_count_negative(const dcl_scalar* scalar);

/* ---- confidence ------------------------------------------------------- */

/* gamma1 = 0.01, gamma2 = 0.5 */
DCLOSS_API dcl_cycle_params dcl_cycle_params_default(void);

DCLOSS_API dcl_status dcl_confidence_db_flow(const dcl_flow* pred, const dcl_flow* gt,
                                             const dcl_mask* valid, dcl_scalar** out);
DCLOSS_API dcl_status dcl_confidence_db_stereo(const dcl_scalar* pred, const dcl_scalar* gt,
                                               const dcl_mask* valid, dcl_scalar** out);
/* `params` may be NULL for the defaults. */
DCLOSS_API dcl_status dcl_confidence_oa_flow(const dcl_flow* forward, const dcl_flow* backward,
                                             const dcl_cycle_params* params, dcl_scalar** out);
/* `right_to_left` in restored orientation. */
DCLOSS_API dcl_status dcl_confidence_oa_stereo(const dcl_scalar* left_to_right,
                                               const dcl_scalar* right_to_left,
                                               const dcl_cycle_params* params, dcl_scalar** out);
/* true = matched (passes the consistency check, target inside the frame). */
DCLOSS_API dcl_status dcl_occlusion_mask_flow(const dcl_flow* forward, const dcl_flow* backward,
                                              const dcl_cycle_params* params, dcl_mask** out);
DCLOSS_API dcl_status dcl_occlusion_mask_stereo(const dcl_scalar* left_to_right,
                                                const dcl_scalar* right_to_left,
                                                const dcl_cycle_params* params, dcl_mask** out);

/* ---- losses ----------------------------------------------------------- */

DCLOSS_API dcl_weight_spec dcl_weight_spec_default(dcl_loss_mode mode, dcl_task task);
DCLOSS_API const char* dcl_loss_mode_name(dcl_loss_mode mode);
DCLOSS_API dcl_status dcl_loss_mode_parse(const char* name, dcl_loss_mode* out);

/* Single-prediction weighted L1 with explicit weights. `grad` (optional)
 * receives the derivative of the summed per-pixel loss. */
DCLOSS_API dcl_status dcl_weighted_l1_flow(const dcl_flow* pred, const dcl_flow* gt,
                                           const dcl_scalar* weights, const dcl_mask* valid,
                                           double* scalar, dcl_flow** grad);
DCLOSS_API dcl_status dcl_weighted_l1_stereo(const dcl_scalar* pred, const dcl_scalar* gt,
                                             const dcl_scalar* weights, const dcl_mask* valid,
                                             double* scalar, dcl_scalar** grad);

/* Weight map a spec assigns to one prediction. `backward` may be NULL when
 * the mode does not read the cycle confidence. */
DCLOSS_API dcl_status dcl_weight_map_flow(const dcl_weight_spec* spec, const dcl_flow* forward,
                                          const dcl_flow* backward, const dcl_flow* gt,
                                          const dcl_mask* valid, dcl_scalar** out);
DCLOSS_API dcl_status dcl_weight_map_stereo(const dcl_weight_spec* spec,
                                            const dcl_scalar* left_to_right,
                                            const dcl_scalar* right_to_left, const dcl_scalar* gt,
                                            const dcl_mask* valid, dcl_scalar** out);

/* Sequence loss over `count` predictions ordered earliest first:
 *   total = sum_i gamma_seq^(count - i) * loss_i.
 * `backward` may be NULL, or an array of `count` entries. `scalars` (optional)
 * receives the per-iteration losses. `weight_map` and `loss_map` (optional)
 * receive the maps of the final iteration. */
DCLOSS_API dcl_status dcl_sequence_loss_flow(const dcl_flow* const* forward,
                                             const dcl_flow* const* backward, size_t count,
                                             const dcl_flow* gt, const dcl_mask* valid,
                                             const dcl_weight_spec* spec, double gamma_seq,
                                             double* total, double* scalars,
                                             dcl_scalar** weight_map, dcl_scalar** loss_map);
DCLOSS_API dcl_status dcl_sequence_loss_stereo(const dcl_scalar* const* left_to_right,
                                               const dcl_scalar* const* right_to_left,
                                               size_t count, const dcl_scalar* gt,
                                               const dcl_mask* valid, const dcl_weight_spec* spec,
                                               double gamma_seq, double* total, double* scalars,
                                               dcl_scalar** weight_map, dcl_scalar** loss_map);

/* ---- metrics ---------------------------------------------------------- */

/* `region` (optional) selects the matched pixels; its complement is reported
 * as unmatched. */
DCLOSS_API dcl_status dcl_evaluate_flow(const dcl_flow* pred, const dcl_flow* gt,
                                        const dcl_mask* valid, const dcl_mask* region,
                                        dcl_report** out);
DCLOSS_API dcl_status dcl_evaluate_stereo(const dcl_scalar* pred, const dcl_scalar* gt,
                                          const dcl_mask* valid, const dcl_mask* region,
                                          dcl_report** out);
DCLOSS_API void dcl_report_destroy(dcl_report* report);
/* Looks up a CSV column by name. `*available` is 0 for NA cells. */
DCLOSS_API dcl_status dcl_report_get(const dcl_report* report, const char* column, double* value,
                                     int* available);
/* Header + data row. Writes at most `capacity` bytes including the NUL and
 * stores the full length (without NUL) in `*length`. */
DCLOSS_API dcl_status dcl_report_csv(const dcl_report* report, char* buffer, size_t capacity,
                                     size_t* length);

/* ---- files ------------------------------------------------------------ */

/* `valid` (optional) receives false where the file stores unknown flow. */
DCLOSS_API dcl_status dcl_read_flo(const char* path, dcl_flow** flow, dcl_mask** valid);
DCLOSS_API dcl_status dcl_write_flo(const char* path, const dcl_flow* flow, const dcl_mask* valid);
DCLOSS_API dcl_status dcl_read_pfm(const char* path, dcl_scalar** values, dcl_mask** valid);
DCLOSS_API dcl_status dcl_write_pfm(const char* path, const dcl_scalar* values,
                                    const dcl_mask* valid);
/* `range` may be NULL (min/max of the data); otherwise {lo, hi}.
 * `degenerate` (optional) is set when lo == hi. */
DCLOSS_API dcl_status dcl_write_pgm(const char* path, const dcl_scalar* values, const double* range,
                                    int* degenerate);
DCLOSS_API dcl_status dcl_write_mask_pgm(const char* path, const dcl_mask* mask);
DCLOSS_API dcl_status dcl_read_mask_pgm(const char* path, dcl_mask** out);
DCLOSS_API dcl_status dcl_write_report_csv(const char* path, const dcl_report* report);

/* ---- toy training ----------------------------------------------------- */

/* Runs the experiment described by the key = value config file and writes
 * comparison.csv, runs/ and (optionally) snapshots/ under `output_dir`. */
DCLOSS_API dcl_status dcl_toytrain_run(const char* config_path, const char* output_dir);
/* Default config file text; same buffer protocol as dcl_report_csv. */
DCLOSS_API dcl_status dcl_toytrain_defaults(char* buffer, size_t capacity, size_t* length);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif /* DCLOSS_DCLOSS_H_ */

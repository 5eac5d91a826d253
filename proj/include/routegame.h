/* Copyright 2026 The routegame Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the route-distribution game engine. All handles are opaque;
 * every function reports success through rg_status and leaves a description
 * of the last failure in rg_last_error() (thread-local). Strings returned
 * through char** are heap-allocated; release them with rg_string_free().
 * Numbers inside returned JSON are decimal strings so that values beyond
 * 64 bits survive round-trips. */

#ifndef ROUTEGAME_H_
#define ROUTEGAME_H_

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rg_status {
  RG_OK = 0,
  RG_ERROR_INVALID_ARGUMENT = 1,
  RG_ERROR_PARSE = 2,
  RG_ERROR_UNSUPPORTED = 3,
  /* A verifier ran to completion and the property does not hold; details and
   * the witness are in the output JSON. */
  RG_ERROR_VERIFICATION = 4,
  RG_ERROR_INTERNAL = 5
} rg_status;

typedef struct rg_game rg_game;
typedef struct rg_profile rg_profile;

/* Message for the most recent failure on this thread; never NULL. */
const char* rg_last_error(void);
void rg_string_free(char* s);

/* --- Games ------------------------------------------------------------- */

/* topology_json: {"destination": id, "edges": [[a,b], ...], "nodes": [...]}.
 * tiebreak: "lowest-sender" (default when NULL) or "highest-sender". */
rg_status rg_game_create_json(const char* topology_json, int64_t reward,
                              const char* tiebreak, rg_game** out);
rg_status rg_game_create_line(int depth, int64_t reward, rg_game** out);
rg_status rg_game_create_ring(int stages, int64_t reward, rg_game** out);
void rg_game_free(rg_game* game);

/* JSON: {"shape", "depth", "players", "game": {...}}. */
rg_status rg_game_describe(const rg_game* game, char** json_out);

/* Reward at which the many-stage ring construction applies, as a decimal
 * string (it outgrows 64-bit integers near 23 stages). */
rg_status rg_ring_special_reward(int stages, char** decimal_out);

/* --- Strategy profiles -------------------------------------------------- */

/* kind: "line-spe", "tree-spe", "ring2" or "ring-special". The game must
 * have the matching shape; "ring-special" additionally requires the game's
 * reward to equal the special reward for its stage count. */
rg_status rg_profile_construct(const rg_game* game, const char* kind,
                               rg_profile** out);
/* Profile JSON embeds its game: {"game": {...}, "strategies": {...}}. */
rg_status rg_profile_parse(const char* profile_json, rg_game** game_out,
                           rg_profile** profile_out);
rg_status rg_profile_to_json(const rg_game* game, const rg_profile* profile,
                             char** json_out);
void rg_profile_free(rg_profile* profile);

/* --- Outcomes and verdicts ---------------------------------------------- */

/* Stage-by-stage play of the full game under the profile. */
rg_status rg_cascade(const rg_game* game, const rg_profile* profile,
                     char** tree_json_out);
rg_status rg_outcome_dot(const rg_game* game, const rg_profile* profile,
                         char** dot_out);

/* mode: "nash" (full game) or "spe" (every per-stage frontier). On a failed
 * check returns RG_ERROR_VERIFICATION and still fills the verdict JSON,
 * including the witnessing deviation. */
rg_status rg_verify(const rg_game* game, const rg_profile* profile,
                    const char* mode, char** verdict_json_out);

/* Asynchronous-protocol experiment: one deterministic round-robin run plus
 * `trials` random fair schedules, compared against the cascade. JSON:
 * {"converged", "rounds", "unanimous", "trials", "tree"}. */
rg_status rg_simulate(const rg_game* game, const rg_profile* profile,
                      int trials, uint64_t seed, char** report_json_out);

/* --- Tables and searches ------------------------------------------------ */

/* CSV: k,value,increment,factorial with cells blank where undefined. */
rg_status rg_growth_table(int max_k, char** csv_out);

/* Two-player projection of the 3-stage ring at the given reward.
 * resolution: "searched" (default when NULL) or "literal". JSON carries the
 * full matrix, surviving actions after iterated elimination, pure equilibria
 * and the best-response walk; CSV is the payoff grid. Either output pointer
 * may be NULL when not wanted. */
rg_status rg_ring_matrix(int64_t reward, const char* resolution,
                         char** json_out, char** csv_out);

/* Smallest reward (<= bound) whose subgame has an equilibrium reaching every
 * player: {"found", "reward", "bound"}. */
rg_status rg_min_incentive(const rg_game* game, int64_t bound,
                           char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* ROUTEGAME_H_ */

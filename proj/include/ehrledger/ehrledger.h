/* Copyright (c) the ehrledger authors. All rights reserved.
 * Licensed under the Apache 2.0 License.
 *
 * C interface to the ehrledger core: a small permissioned ledger with
 * anonymous client credentials, a private data collection for patient
 * name/address, a simulated multi-organization network, and a latency
 * benchmark harness with an encrypted-table baseline.
 *
 * Conventions:
 *   - Every function returns EHRL_OK (0) or a negative ehrl_status.
 *   - ehrl_last_error() describes the most recent failure on the calling
 *     thread; the pointer stays valid until the next ehrl call on that
 *     thread.
 *   - Strings returned through char** are heap-allocated UTF-8; release
 *     them with ehrl_string_free. Byte buffers go through
 *     ehrl_buffer_free.
 *   - JSON in, JSON out: configs, operation arguments and outcomes are
 *     all JSON documents, so bindings need no struct marshalling.
 */

#ifndef EHRLEDGER_H
#define EHRLEDGER_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ehrl_network ehrl_network;

typedef enum ehrl_status {
  EHRL_OK = 0,
  EHRL_ERR_INVALID_ARGUMENT = -1,
  EHRL_ERR_NOT_FOUND = -2,
  EHRL_ERR_DUPLICATE = -3,
  EHRL_ERR_ACCESS_DENIED = -4,
  EHRL_ERR_PURGED = -5,
  EHRL_ERR_AUTH_FAILED = -6,
  EHRL_ERR_PROOF_INVALID = -7,
  EHRL_ERR_NONCE_MISMATCH = -8,
  EHRL_ERR_MALFORMED = -9,
  EHRL_ERR_CONFLICT = -10,
  EHRL_ERR_IO = -11,
  EHRL_ERR_INTERNAL = -12
} ehrl_status;

const char* ehrl_version(void);

/* Stable kebab-case name of a status, e.g. "not-found". */
const char* ehrl_status_name(ehrl_status status);

/* Message of the last failure on this thread, empty string if none. */
const char* ehrl_last_error(void);

/* ---- Simulated network ---------------------------------------------- */

/* config_json may be NULL or "" for the default topology (three orgs of
 * three peers, three orderers, one private collection owned by the first
 * org). Keys: orgs, peersPerOrg, orderers, policy, blockSize,
 * batchTimeout, seed, collection. */
ehrl_status ehrl_network_create(const char* config_json, ehrl_network** out_network);
void ehrl_network_free(ehrl_network* network);

ehrl_status ehrl_network_register_client(ehrl_network* network, const char* name,
                                         const char* org);

/* Runs one operation end to end. op is one of create, read, read-private,
 * update, delete; args_json carries the record fields. client "anon"
 * submits with the built-in anonymous credential; nonzero anonymous makes
 * any client present its credential instead of its certificate. The
 * outcome JSON (always written on return when out_outcome_json is
 * non-NULL and the arguments parse) mirrors the returned status and
 * carries response, txId, flag, blockNumber and latencyMs. */
ehrl_status ehrl_network_execute(ehrl_network* network, const char* client, const char* op,
                                 const char* args_json, int anonymous,
                                 char** out_outcome_json);

/* script_json is a JSON array of {"op", "client", "args"} entries. Writes
 * are submitted asynchronously so the batching settings shape the blocks.
 * Returns EHRL_OK when the script ran, with per-entry outcomes in
 * out_outcomes_json; entry-level failures do not fail the call. */
ehrl_status ehrl_network_run_script(ehrl_network* network, const char* script_json,
                                    int force_anonymous, char** out_outcomes_json);

/* Full audit: every peer's chain, cross-peer state equality, orderer log
 * agreement. */
ehrl_status ehrl_network_verify(ehrl_network* network);

/* Deterministic JSON rendering of the public world state (peer 0). */
ehrl_status ehrl_network_snapshot(ehrl_network* network, char** out_json);

/* Counters: peers, orderers, height, blocksCommitted, txsCommitted,
 * txsValid, clients. */
ehrl_status ehrl_network_stats(ehrl_network* network, char** out_json);

ehrl_status ehrl_network_export_chain(ehrl_network* network, unsigned char** out_bytes,
                                      size_t* out_len);

/* Structural audit of an exported chain image without a network. */
ehrl_status ehrl_chain_verify_bytes(const unsigned char* bytes, size_t len);

/* ---- Benchmark harness ----------------------------------------------- */

/* Deterministic schema-valid records, one JSON object per line. */
ehrl_status ehrl_generate_records(uint64_t count, uint64_t seed, char** out_jsonl);

/* plan_json keys: targets (["ledger","baseline"]), volumes, readsPerVolume,
 * seed; NULL or "" runs the default plan. Returns CSV with header
 * target,volume,op,mean_ms,p95_ms,samples. */
ehrl_status ehrl_bench_run(const char* plan_json, char** out_csv);

/* Renders a results CSV as a table plus the read-latency crossover
 * estimate. Nonzero include_reference appends the same analysis over the
 * pinned published reference numbers. */
ehrl_status ehrl_bench_report(const char* results_csv, int include_reference,
                              char** out_summary);

void ehrl_string_free(char* s);
void ehrl_buffer_free(unsigned char* bytes);

#ifdef __cplusplus
}
#endif

#endif /* EHRLEDGER_H */

// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#include "ehrledger/ehrledger.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "bench/bench.hpp"
#include "core/errors.hpp"
#include "ledger/chain.hpp"
#include "netsim/network.hpp"

struct ehrl_network {
  std::unique_ptr<ehrl::netsim::Network> impl;
};

namespace {

using nlohmann::json;

thread_local std::string g_last_error;

ehrl_status fail(ehrl::Err code, std::string message) {
  g_last_error = std::move(message);
  return static_cast<ehrl_status>(-static_cast<int>(code));
}

ehrl_status fail(const ehrl::Error& error) { return fail(error.code, error.message); }

ehrl_status pass() {
  g_last_error.clear();
  return EHRL_OK;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ehrl_status give_string(const std::string& s, char** out) {
  if (out == nullptr) return pass();
  *out = dup_string(s);
  if (*out == nullptr) return fail(ehrl::Err::internal, "out of memory");
  return pass();
}

std::optional<json> parse_json(const char* text, const char* what) {
  json parsed = json::parse(text, nullptr, false);
  if (parsed.is_discarded()) {
    g_last_error = std::string(what) + " is not valid JSON";
    return std::nullopt;
  }
  return parsed;
}

json outcome_to_json(const ehrl::netsim::OpOutcome& outcome) {
  json j{{"op", outcome.op},
         {"ok", outcome.ok},
         {"errorCode", ehrl::err_name(outcome.error_code)},
         {"error", outcome.error},
         {"response", outcome.response},
         {"latencyMs", outcome.latency_ms}};
  if (outcome.tx_id) j["txId"] = ehrl::to_hex(*outcome.tx_id);
  if (outcome.flag) {
    j["flag"] = ehrl::ledger::flag_name(*outcome.flag);
    j["blockNumber"] = outcome.block_number;
  }
  return j;
}

}  // namespace

extern "C" {

const char* ehrl_version(void) { return "0.1.0"; }

const char* ehrl_status_name(ehrl_status status) {
  int code = -static_cast<int>(status);
  if (status == EHRL_OK) code = 0;
  if (code < 0 || code > static_cast<int>(ehrl::Err::internal)) return "unknown";
  return ehrl::err_name(static_cast<ehrl::Err>(code));
}

const char* ehrl_last_error(void) { return g_last_error.c_str(); }

ehrl_status ehrl_network_create(const char* config_json, ehrl_network** out_network) {
  if (out_network == nullptr) {
    return fail(ehrl::Err::invalid_argument, "out_network is NULL");
  }
  *out_network = nullptr;
  ehrl::netsim::NetworkConfig config;
  if (config_json != nullptr && config_json[0] != '\0') {
    auto parsed = parse_json(config_json, "config");
    if (!parsed) return static_cast<ehrl_status>(-1);
    auto decoded = ehrl::netsim::NetworkConfig::from_json(*parsed);
    if (!decoded) return fail(ehrl::Err::invalid_argument, "config fields are malformed");
    config = std::move(*decoded);
  }
  auto net = ehrl::netsim::Network::create(config);
  if (!net.ok()) return fail(net.error());
  *out_network = new ehrl_network{std::move(net.value())};
  return pass();
}

void ehrl_network_free(ehrl_network* network) { delete network; }

ehrl_status ehrl_network_register_client(ehrl_network* network, const char* name,
                                         const char* org) {
  if (network == nullptr || name == nullptr || org == nullptr) {
    return fail(ehrl::Err::invalid_argument, "network, name and org are required");
  }
  auto registered = network->impl->register_client(name, org);
  if (!registered.ok()) return fail(registered.error());
  return pass();
}

ehrl_status ehrl_network_execute(ehrl_network* network, const char* client, const char* op,
                                 const char* args_json, int anonymous,
                                 char** out_outcome_json) {
  if (out_outcome_json != nullptr) *out_outcome_json = nullptr;
  if (network == nullptr || client == nullptr || op == nullptr) {
    return fail(ehrl::Err::invalid_argument, "network, client and op are required");
  }
  json args = json::object();
  if (args_json != nullptr && args_json[0] != '\0') {
    auto parsed = parse_json(args_json, "args");
    if (!parsed) return static_cast<ehrl_status>(-1);
    args = std::move(*parsed);
  }
  auto outcome = network->impl->execute_op(client, op, args, anonymous != 0);
  if (out_outcome_json != nullptr) {
    auto given = give_string(outcome_to_json(outcome).dump(), out_outcome_json);
    if (given != EHRL_OK) return given;
  }
  if (!outcome.ok) return fail(outcome.error_code, outcome.error);
  return pass();
}

ehrl_status ehrl_network_run_script(ehrl_network* network, const char* script_json,
                                    int force_anonymous, char** out_outcomes_json) {
  if (out_outcomes_json != nullptr) *out_outcomes_json = nullptr;
  if (network == nullptr || script_json == nullptr) {
    return fail(ehrl::Err::invalid_argument, "network and script are required");
  }
  auto parsed = parse_json(script_json, "script");
  if (!parsed) return static_cast<ehrl_status>(-1);
  auto outcomes = network->impl->run_script(*parsed, force_anonymous != 0);
  if (!outcomes.ok()) return fail(outcomes.error());
  json rendered = json::array();
  for (const auto& outcome : *outcomes) rendered.push_back(outcome_to_json(outcome));
  return give_string(rendered.dump(), out_outcomes_json);
}

ehrl_status ehrl_network_verify(ehrl_network* network) {
  if (network == nullptr) return fail(ehrl::Err::invalid_argument, "network is NULL");
  auto audited = network->impl->verify();
  if (!audited.ok()) return fail(audited.error());
  return pass();
}

ehrl_status ehrl_network_snapshot(ehrl_network* network, char** out_json) {
  if (network == nullptr || out_json == nullptr) {
    return fail(ehrl::Err::invalid_argument, "network and out_json are required");
  }
  return give_string(network->impl->snapshot(0), out_json);
}

ehrl_status ehrl_network_stats(ehrl_network* network, char** out_json) {
  if (network == nullptr || out_json == nullptr) {
    return fail(ehrl::Err::invalid_argument, "network and out_json are required");
  }
  const auto& net = *network->impl;
  json stats{{"peers", net.peer_count()},
             {"orderers", net.ordering().node_count()},
             {"height", net.peer_at(0).chain.height()},
             {"blocksCommitted", net.blocks_committed()},
             {"txsCommitted", net.txs_committed()},
             {"txsValid", net.txs_valid()}};
  return give_string(stats.dump(), out_json);
}

ehrl_status ehrl_network_export_chain(ehrl_network* network, unsigned char** out_bytes,
                                      size_t* out_len) {
  if (network == nullptr || out_bytes == nullptr || out_len == nullptr) {
    return fail(ehrl::Err::invalid_argument, "network, out_bytes and out_len are required");
  }
  ehrl::Bytes exported = network->impl->export_chain();
  *out_bytes = static_cast<unsigned char*>(std::malloc(exported.size()));
  if (*out_bytes == nullptr) return fail(ehrl::Err::internal, "out of memory");
  std::memcpy(*out_bytes, exported.data(), exported.size());
  *out_len = exported.size();
  return pass();
}

ehrl_status ehrl_chain_verify_bytes(const unsigned char* bytes, size_t len) {
  if (bytes == nullptr && len != 0) {
    return fail(ehrl::Err::invalid_argument, "bytes is NULL");
  }
  auto chain = ehrl::ledger::LedgerChain::import_bytes(ehrl::ByteSpan(bytes, len));
  if (!chain.ok()) return fail(chain.error());
  auto audited = chain->verify();
  if (!audited.ok()) return fail(audited.error());
  return pass();
}

ehrl_status ehrl_generate_records(uint64_t count, uint64_t seed, char** out_jsonl) {
  if (out_jsonl == nullptr) return fail(ehrl::Err::invalid_argument, "out_jsonl is NULL");
  std::string lines;
  for (const auto& record : ehrl::bench::generate_records(count, seed)) {
    lines += record.to_json().dump();
    lines += "\n";
  }
  return give_string(lines, out_jsonl);
}

ehrl_status ehrl_bench_run(const char* plan_json, char** out_csv) {
  if (out_csv == nullptr) return fail(ehrl::Err::invalid_argument, "out_csv is NULL");
  *out_csv = nullptr;
  ehrl::bench::BenchPlan plan;
  if (plan_json != nullptr && plan_json[0] != '\0') {
    auto parsed = parse_json(plan_json, "plan");
    if (!parsed) return static_cast<ehrl_status>(-1);
    auto decoded = ehrl::bench::BenchPlan::from_json(*parsed);
    if (!decoded) return fail(ehrl::Err::invalid_argument, "plan fields are malformed");
    plan = std::move(*decoded);
  }
  auto results = ehrl::bench::run_bench(plan);
  if (!results.ok()) return fail(results.error());
  return give_string(ehrl::bench::to_csv(*results), out_csv);
}

ehrl_status ehrl_bench_report(const char* results_csv, int include_reference,
                              char** out_summary) {
  if (results_csv == nullptr || out_summary == nullptr) {
    return fail(ehrl::Err::invalid_argument, "results_csv and out_summary are required");
  }
  *out_summary = nullptr;
  auto results = ehrl::bench::from_csv(results_csv);
  if (!results.ok()) return fail(results.error());
  return give_string(ehrl::bench::summarize(*results, include_reference != 0), out_summary);
}

void ehrl_string_free(char* s) { std::free(s); }

void ehrl_buffer_free(unsigned char* bytes) { std::free(bytes); }

}  // extern "C"

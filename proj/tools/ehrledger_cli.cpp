// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ehrledger/ehrledger.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct NetHandle {
  ehrl_network* net = nullptr;
  ~NetHandle() { ehrl_network_free(net); }
};

int fail_with(const std::string& what) {
  std::fprintf(stderr, "error: %s: %s\n", what.c_str(), ehrl_last_error());
  return 1;
}

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  return static_cast<bool>(out);
}

// Relative bench result paths land under EHRLEDGER_RESULT_DIR when it is set.
fs::path result_path(const std::string& raw) {
  fs::path path = raw;
  if (path.is_relative()) {
    const char* dir = std::getenv("EHRLEDGER_RESULT_DIR");
    if (dir != nullptr && dir[0] != '\0') path = fs::path(dir) / path;
  }
  return path;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

std::optional<json> fetch_stats(ehrl_network* net) {
  char* text = nullptr;
  if (ehrl_network_stats(net, &text) != EHRL_OK) return std::nullopt;
  json stats = json::parse(text, nullptr, false);
  ehrl_string_free(text);
  if (stats.is_discarded()) return std::nullopt;
  return stats;
}

// Rebuilds the session network by replaying every recorded operation in
// order. Failed operations are replayed too: they consumed randomness when
// first executed, so skipping them would desynchronize later draws.
int open_session(const fs::path& state_dir, NetHandle& handle) {
  auto config = read_file(state_dir / "config.json");
  if (!config) {
    std::fprintf(stderr, "error: %s not found, run `net init` first\n",
                 (state_dir / "config.json").string().c_str());
    return 1;
  }
  if (ehrl_network_create(config->c_str(), &handle.net) != EHRL_OK) {
    return fail_with("create network");
  }
  std::ifstream ops(state_dir / "ops.jsonl");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(ops, line)) {
    ++line_no;
    if (line.empty()) continue;
    json entry = json::parse(line, nullptr, false);
    if (entry.is_discarded() || !entry.is_object()) {
      std::fprintf(stderr, "error: %s line %zu is not a valid entry\n",
                   (state_dir / "ops.jsonl").string().c_str(), line_no);
      return 1;
    }
    const std::string client = entry.value("client", "anon");
    const std::string op = entry.value("op", "");
    const std::string args = entry.value("args", json::object()).dump();
    const int anonymous = entry.value("anonymous", false) ? 1 : 0;
    char* outcome = nullptr;
    (void)ehrl_network_execute(handle.net, client.c_str(), op.c_str(), args.c_str(),
                               anonymous, &outcome);
    ehrl_string_free(outcome);
  }
  return 0;
}

int append_op(const fs::path& state_dir, const std::string& op, const std::string& client,
              const json& args, bool anonymous) {
  json entry{{"op", op}, {"client", client}, {"args", args}, {"anonymous", anonymous}};
  std::ofstream out(state_dir / "ops.jsonl", std::ios::app);
  if (!out) {
    std::fprintf(stderr, "error: cannot append to %s\n",
                 (state_dir / "ops.jsonl").string().c_str());
    return 1;
  }
  out << entry.dump() << "\n";
  return out ? 0 : 1;
}

int cmd_net_init(const fs::path& state_dir, const std::string& config_path) {
  std::string config_text = "{}";
  if (!config_path.empty()) {
    auto loaded = read_file(config_path);
    if (!loaded) {
      std::fprintf(stderr, "error: cannot read %s\n", config_path.c_str());
      return 1;
    }
    config_text = *loaded;
  }
  NetHandle handle;
  if (ehrl_network_create(config_text.c_str(), &handle.net) != EHRL_OK) {
    return fail_with("invalid network config");
  }
  std::error_code ec;
  fs::create_directories(state_dir, ec);
  if (ec) {
    std::fprintf(stderr, "error: cannot create %s: %s\n", state_dir.string().c_str(),
                 ec.message().c_str());
    return 1;
  }
  if (!write_file(state_dir / "config.json", config_text) ||
      !write_file(state_dir / "ops.jsonl", "")) {
    std::fprintf(stderr, "error: cannot write session files in %s\n",
                 state_dir.string().c_str());
    return 1;
  }
  auto stats = fetch_stats(handle.net);
  if (!stats) return fail_with("query network stats");
  std::printf("initialized %s: %llu peers, %llu orderers\n", state_dir.string().c_str(),
              stats->value("peers", 0ULL), stats->value("orderers", 0ULL));
  return 0;
}

int cmd_tx(const fs::path& state_dir, const std::string& op, const std::string& client,
           const std::string& args_text, bool anonymous) {
  json args = json::parse(args_text, nullptr, false);
  if (args.is_discarded()) {
    std::fprintf(stderr, "error: --args is not valid JSON\n");
    return 1;
  }
  NetHandle handle;
  if (int rc = open_session(state_dir, handle); rc != 0) return rc;
  char* outcome_text = nullptr;
  ehrl_status status = ehrl_network_execute(handle.net, client.c_str(), op.c_str(),
                                            args.dump().c_str(), anonymous ? 1 : 0,
                                            &outcome_text);
  if (outcome_text == nullptr) return fail_with("execute " + op);
  json outcome = json::parse(outcome_text, nullptr, false);
  ehrl_string_free(outcome_text);
  if (outcome.is_discarded()) return fail_with("decode outcome");
  std::printf("%s\n", outcome.dump(2).c_str());
  // Every executed operation is recorded, ok or not. Reads and failures both
  // advance the deterministic randomness streams, so replay needs them.
  if (int rc = append_op(state_dir, op, client, args, anonymous); rc != 0) return rc;
  return status == EHRL_OK ? 0 : 1;
}

int cmd_net_verify(const fs::path& state_dir) {
  NetHandle handle;
  if (int rc = open_session(state_dir, handle); rc != 0) return rc;
  if (ehrl_network_verify(handle.net) != EHRL_OK) return fail_with("verify");
  auto stats = fetch_stats(handle.net);
  if (!stats) return fail_with("query network stats");
  std::printf("ok: height=%llu blocks=%llu txs=%llu valid=%llu\n",
              stats->value("height", 0ULL), stats->value("blocksCommitted", 0ULL),
              stats->value("txsCommitted", 0ULL), stats->value("txsValid", 0ULL));
  return 0;
}

int cmd_net_snapshot(const fs::path& state_dir) {
  NetHandle handle;
  if (int rc = open_session(state_dir, handle); rc != 0) return rc;
  char* text = nullptr;
  if (ehrl_network_snapshot(handle.net, &text) != EHRL_OK) return fail_with("snapshot");
  std::printf("%s\n", text);
  ehrl_string_free(text);
  return 0;
}

int cmd_net_export(const fs::path& state_dir, const std::string& out_path) {
  NetHandle handle;
  if (int rc = open_session(state_dir, handle); rc != 0) return rc;
  unsigned char* bytes = nullptr;
  size_t len = 0;
  if (ehrl_network_export_chain(handle.net, &bytes, &len) != EHRL_OK) {
    return fail_with("export chain");
  }
  ehrl_status audited = ehrl_chain_verify_bytes(bytes, len);
  if (audited != EHRL_OK) {
    ehrl_buffer_free(bytes);
    return fail_with("audit exported chain");
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  bool written = static_cast<bool>(out.write(reinterpret_cast<const char*>(bytes),
                                             static_cast<std::streamsize>(len)));
  ehrl_buffer_free(bytes);
  if (!written) {
    std::fprintf(stderr, "error: cannot write %s\n", out_path.c_str());
    return 1;
  }
  std::printf("exported %zu bytes to %s\n", len, out_path.c_str());
  return 0;
}

int cmd_bench_run(const std::string& targets, const std::string& volumes,
                  std::uint64_t reads, std::uint64_t seed, const std::string& out_path) {
  json plan{{"targets", split_list(targets)}, {"readsPerVolume", reads}, {"seed", seed}};
  json parsed_volumes = json::array();
  for (const auto& item : split_list(volumes)) {
    char* end = nullptr;
    unsigned long long value = std::strtoull(item.c_str(), &end, 10);
    if (end == nullptr || *end != '\0') {
      std::fprintf(stderr, "error: volume %s is not a number\n", item.c_str());
      return 1;
    }
    parsed_volumes.push_back(value);
  }
  plan["volumes"] = std::move(parsed_volumes);
  char* csv = nullptr;
  if (ehrl_bench_run(plan.dump().c_str(), &csv) != EHRL_OK) return fail_with("bench run");
  std::string csv_text = csv;
  ehrl_string_free(csv);
  fs::path resolved = result_path(out_path);
  std::error_code ec;
  if (resolved.has_parent_path()) fs::create_directories(resolved.parent_path(), ec);
  if (!write_file(resolved, csv_text)) {
    std::fprintf(stderr, "error: cannot write %s\n", resolved.string().c_str());
    return 1;
  }
  std::size_t rows = 0;
  for (char c : csv_text) rows += c == '\n' ? 1 : 0;
  if (rows > 0) rows -= 1;  // header
  std::printf("wrote %zu result rows to %s\n", rows, resolved.string().c_str());
  return 0;
}

int cmd_bench_report(const std::string& in_path, bool include_reference) {
  auto csv = read_file(result_path(in_path));
  if (!csv) {
    std::fprintf(stderr, "error: cannot read %s\n",
                 result_path(in_path).string().c_str());
    return 1;
  }
  char* summary = nullptr;
  if (ehrl_bench_report(csv->c_str(), include_reference ? 1 : 0, &summary) != EHRL_OK) {
    return fail_with("bench report");
  }
  std::printf("%s", summary);
  ehrl_string_free(summary);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ehrledger: a desk-scale permissioned ledger for health records"};
  app.set_version_flag("--version", std::string(ehrl_version()));
  app.require_subcommand(1);

  std::string state_dir = ".ehrledger";
  std::string config_path;
  std::string export_out;
  std::string client = "anon";
  std::string args_text = "{}";
  bool anonymous = false;
  std::string targets = "ledger,baseline";
  std::string volumes = "10,100,1000,10000,100000";
  std::uint64_t reads = 200;
  std::uint64_t seed = 42;
  std::string bench_out = "results.csv";
  std::string report_in;
  bool paper_ref = false;

  CLI::App* net = app.add_subcommand("net", "manage a persistent simulated network");
  net->require_subcommand(1);
  CLI::App* init = net->add_subcommand("init", "create a fresh session state directory");
  init->add_option("--config", config_path, "network config JSON file");
  init->add_option("--state-dir", state_dir, "session state directory");
  CLI::App* verify = net->add_subcommand("verify", "replay the session and audit every peer");
  verify->add_option("--state-dir", state_dir, "session state directory");
  CLI::App* snapshot = net->add_subcommand("snapshot", "print the world state of peer 0");
  snapshot->add_option("--state-dir", state_dir, "session state directory");
  CLI::App* exporter = net->add_subcommand("export", "write the committed chain to a file");
  exporter->add_option("--out", export_out, "output file")->required();
  exporter->add_option("--state-dir", state_dir, "session state directory");

  CLI::App* tx = app.add_subcommand("tx", "submit a chaincode operation");
  tx->require_subcommand(1);
  std::vector<CLI::App*> tx_ops;
  for (const char* name : {"create", "read", "read-private", "update", "delete"}) {
    CLI::App* op = tx->add_subcommand(name, std::string(name) + " a health record");
    op->add_option("--client", client, "client id, or `anon` for the anonymous default");
    op->add_option("--args", args_text, "operation arguments as JSON");
    op->add_flag("--anonymous", anonymous, "authenticate with a credential presentation");
    op->add_option("--state-dir", state_dir, "session state directory");
    tx_ops.push_back(op);
  }

  CLI::App* bench = app.add_subcommand("bench", "measure ledger and baseline performance");
  bench->require_subcommand(1);
  CLI::App* run = bench->add_subcommand("run", "populate each target and record latencies");
  run->add_option("--targets", targets, "comma list of targets (ledger,baseline)");
  run->add_option("--volumes", volumes, "comma list of record volumes, increasing");
  run->add_option("--reads", reads, "read samples per volume");
  run->add_option("--seed", seed, "deterministic seed");
  run->add_option("--out", bench_out, "output CSV file");
  CLI::App* report = bench->add_subcommand("report", "summarize a results CSV");
  report->add_option("--in", report_in, "results CSV file")->required();
  report->add_flag("--paper-ref", paper_ref,
                   "include the published reference measurements");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (init->parsed()) return cmd_net_init(state_dir, config_path);
  if (verify->parsed()) return cmd_net_verify(state_dir);
  if (snapshot->parsed()) return cmd_net_snapshot(state_dir);
  if (exporter->parsed()) return cmd_net_export(state_dir, export_out);
  for (CLI::App* op : tx_ops) {
    if (op->parsed()) {
      return cmd_tx(state_dir, op->get_name(), client, args_text, anonymous);
    }
  }
  if (run->parsed()) return cmd_bench_run(targets, volumes, reads, seed, bench_out);
  if (report->parsed()) return cmd_bench_report(report_in, paper_ref);
  return 1;
}

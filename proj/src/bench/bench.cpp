// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#include "bench/bench.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <numeric>
#include <set>
#include <tuple>

#include <nlohmann/json.hpp>

#include "baseline/store.hpp"
#include "core/rng.hpp"
#include "netsim/network.hpp"

namespace ehrl::bench {

using Clock = std::chrono::steady_clock;

namespace {

constexpr std::size_t kWarmup = 20;

const std::array<const char*, 8> kFirstNames = {"Alexis",  "Dimitra", "Eleni", "Kostas",
                                                "Marina",  "Nikos",   "Sofia", "Thanos"};
const std::array<const char*, 8> kLastNames = {"Antonaki", "Dimou",     "Georgiou", "Ioannou",
                                               "Makris",   "Nikolaidi", "Pappas",   "Vlahos"};
const std::array<const char*, 6> kStreets = {"Harbor Street", "Olive Road",   "Museum Avenue",
                                             "Dock Lane",     "Village Walk", "Hill Crescent"};
const std::array<const char*, 5> kCountries = {"Greece", "Cyprus", "Italy", "Malta", "Spain"};
const std::array<const char*, 3> kOutcomes = {"negative", "positive", "inconclusive"};

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct CellStats {
  double mean_ms = 0.0;
  double p95_ms = 0.0;
  std::uint64_t samples = 0;
};

CellStats stats_of(std::vector<double> samples) {
  CellStats stats;
  stats.samples = samples.size();
  if (samples.empty()) return stats;
  stats.mean_ms = std::accumulate(samples.begin(), samples.end(), 0.0) / samples.size();
  std::sort(samples.begin(), samples.end());
  std::size_t rank = static_cast<std::size_t>(std::ceil(0.95 * samples.size()));
  stats.p95_ms = samples[rank == 0 ? 0 : rank - 1];
  return stats;
}

/// Uniform client-visible interface over the two backends.
class Driver {
 public:
  virtual ~Driver() = default;
  virtual Result<void> write(const chaincode::EHRRecord& record) = 0;
  virtual Result<void> read(const std::string& id) = 0;
  /// Pipeline instrumentation: committed valid transactions, or nullopt
  /// for backends without a commit pipeline.
  virtual std::optional<std::uint64_t> committed() const { return std::nullopt; }
};

class LedgerDriver final : public Driver {
 public:
  static Result<std::unique_ptr<LedgerDriver>> create(std::uint64_t seed) {
    netsim::NetworkConfig config;
    config.seed = seed;
    auto net = netsim::Network::create(config);
    if (!net.ok()) return net.error();
    auto driver = std::make_unique<LedgerDriver>();
    driver->net_ = std::move(net.value());
    return driver;
  }

  Result<void> write(const chaincode::EHRRecord& record) override {
    auto outcome = net_->execute_op(kClient, "create", record.to_json());
    if (!outcome.ok) return Error{Err::internal, "bench write failed: " + outcome.error};
    return {};
  }

  Result<void> read(const std::string& id) override {
    auto outcome = net_->execute_op(kClient, "read", {{"id", id}});
    if (!outcome.ok) return Error{Err::internal, "bench read failed: " + outcome.error};
    return {};
  }

  std::optional<std::uint64_t> committed() const override { return net_->txs_valid(); }

 private:
  static constexpr const char* kClient = "bench@Healthcenter";
  std::unique_ptr<netsim::Network> net_;
};

class BaselineDriver final : public Driver {
 public:
  explicit BaselineDriver(std::uint64_t seed) : store_(seed) {}

  Result<void> write(const chaincode::EHRRecord& record) override {
    return store_.insert(record);
  }

  Result<void> read(const std::string& id) override {
    auto row = store_.read(id);
    if (!row.ok()) return row.error();
    return {};
  }

 private:
  baseline::BaselineStore store_;
};

Result<std::unique_ptr<Driver>> make_driver(const std::string& target, std::uint64_t seed) {
  if (target == "ledger") {
    auto driver = LedgerDriver::create(seed);
    if (!driver.ok()) return driver.error();
    return std::unique_ptr<Driver>(std::move(driver.value()));
  }
  if (target == "baseline") {
    return std::unique_ptr<Driver>(std::make_unique<BaselineDriver>(seed));
  }
  return Error{Err::invalid_argument, "unknown bench target " + target};
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return buffer;
}

}  // namespace

Result<void> BenchPlan::validate() const {
  for (const auto& target : targets) {
    if (target != "ledger" && target != "baseline") {
      return Error{Err::invalid_argument, "unknown bench target " + target};
    }
  }
  if (std::set<std::string>(targets.begin(), targets.end()).size() != targets.size()) {
    return Error{Err::invalid_argument, "bench targets repeat"};
  }
  if (volumes.empty()) return Error{Err::invalid_argument, "no volumes"};
  for (std::size_t i = 0; i < volumes.size(); ++i) {
    if (volumes[i] == 0) return Error{Err::invalid_argument, "volumes must be positive"};
    if (i > 0 && volumes[i] <= volumes[i - 1]) {
      return Error{Err::invalid_argument, "volumes must be strictly increasing"};
    }
  }
  if (reads_per_volume < 1) {
    return Error{Err::invalid_argument, "reads_per_volume must be at least 1"};
  }
  return {};
}

nlohmann::json BenchPlan::to_json() const {
  return {{"targets", targets},
          {"volumes", volumes},
          {"readsPerVolume", reads_per_volume},
          {"seed", seed}};
}

std::optional<BenchPlan> BenchPlan::from_json(const nlohmann::json& j) {
  if (!j.is_object()) return std::nullopt;
  BenchPlan plan;
  if (j.contains("targets")) {
    if (!j["targets"].is_array()) return std::nullopt;
    plan.targets.clear();
    for (const auto& target : j["targets"]) {
      if (!target.is_string()) return std::nullopt;
      plan.targets.push_back(target.get<std::string>());
    }
  }
  if (j.contains("volumes")) {
    if (!j["volumes"].is_array()) return std::nullopt;
    plan.volumes.clear();
    for (const auto& volume : j["volumes"]) {
      if (!volume.is_number_unsigned()) return std::nullopt;
      plan.volumes.push_back(volume.get<std::uint64_t>());
    }
  }
  if (j.contains("readsPerVolume")) {
    if (!j["readsPerVolume"].is_number_unsigned()) return std::nullopt;
    plan.reads_per_volume = j["readsPerVolume"].get<std::uint32_t>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) return std::nullopt;
    plan.seed = j["seed"].get<std::uint64_t>();
  }
  return plan;
}

std::vector<chaincode::EHRRecord> generate_records(std::uint64_t n, std::uint64_t seed) {
  DeterministicRng rng = DeterministicRng(seed).fork("records");
  std::vector<chaincode::EHRRecord> records;
  records.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    chaincode::EHRRecord record;
    Bytes id(16);
    rng.fill(id);
    record.id = to_hex(id);
    record.name = std::string(kFirstNames[rng.below(kFirstNames.size())]) + " " +
                  kLastNames[rng.below(kLastNames.size())];
    record.address =
        std::to_string(1 + rng.below(200)) + " " + kStreets[rng.below(kStreets.size())];
    record.country = kCountries[rng.below(kCountries.size())];
    char dob[16];
    std::snprintf(dob, sizeof(dob), "%04u-%02u-%02u",
                  static_cast<unsigned>(1930 + rng.below(70)),
                  static_cast<unsigned>(1 + rng.below(12)),
                  static_cast<unsigned>(1 + rng.below(28)));
    record.dateOfBirth = dob;
    record.test = kOutcomes[rng.below(kOutcomes.size())];
    records.push_back(std::move(record));
  }
  return records;
}

Result<std::vector<BenchResult>> run_bench(const BenchPlan& plan) {
  auto valid = plan.validate();
  if (!valid.ok()) return valid.error();

  std::vector<BenchResult> results;
  if (plan.targets.empty()) return results;
  auto records = generate_records(plan.volumes.back(), plan.seed);

  for (const auto& target : plan.targets) {
    auto driver = make_driver(target, plan.seed);
    if (!driver.ok()) return driver.error();

    std::uint64_t populated = 0;
    for (std::uint64_t volume : plan.volumes) {
      std::vector<double> write_ms;
      write_ms.reserve(volume - populated);
      for (std::uint64_t i = populated; i < volume; ++i) {
        auto start = Clock::now();
        auto written = (*driver)->write(records[i]);
        write_ms.push_back(ms_since(start));
        if (!written.ok()) return written.error();
      }
      populated = volume;
      if (auto committed = (*driver)->committed(); committed && *committed != populated) {
        return Error{Err::internal, "ledger writes bypassed the commit pipeline"};
      }
      // Short segments cannot afford the full warm-up discard.
      std::size_t warm = std::min(kWarmup, write_ms.size() / 2);
      write_ms.erase(write_ms.begin(), write_ms.begin() + static_cast<std::ptrdiff_t>(warm));

      DeterministicRng pick =
          DeterministicRng(plan.seed).fork("picks/" + target + "/" + std::to_string(volume));
      std::vector<double> read_ms;
      read_ms.reserve(plan.reads_per_volume);
      for (std::size_t i = 0; i < kWarmup + plan.reads_per_volume; ++i) {
        const std::string& id = records[pick.below(volume)].id;
        auto start = Clock::now();
        auto read = (*driver)->read(id);
        double elapsed = ms_since(start);
        if (!read.ok()) return read.error();
        if (i >= kWarmup) read_ms.push_back(elapsed);
      }

      CellStats write_stats = stats_of(std::move(write_ms));
      CellStats read_stats = stats_of(std::move(read_ms));
      results.push_back({target, volume, "read", read_stats.mean_ms, read_stats.p95_ms,
                         read_stats.samples});
      results.push_back({target, volume, "write", write_stats.mean_ms, write_stats.p95_ms,
                         write_stats.samples});
    }
  }

  std::sort(results.begin(), results.end(), [](const BenchResult& a, const BenchResult& b) {
    return std::tie(a.target, a.volume, a.op) < std::tie(b.target, b.volume, b.op);
  });
  return results;
}

std::string to_csv(const std::vector<BenchResult>& results) {
  std::string csv{kCsvHeader};
  csv += "\n";
  for (const auto& row : results) {
    csv += row.target + "," + std::to_string(row.volume) + "," + row.op + "," +
           format_double(row.mean_ms) + "," + format_double(row.p95_ms) + "," +
           std::to_string(row.samples) + "\n";
  }
  return csv;
}

Result<std::vector<BenchResult>> from_csv(std::string_view csv) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t end = csv.find('\n', pos);
    if (end == std::string_view::npos) end = csv.size();
    lines.push_back(csv.substr(pos, end - pos));
    pos = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || lines.front() != kCsvHeader) {
    return Error{Err::invalid_argument, "missing results header"};
  }

  std::vector<BenchResult> results;
  for (std::size_t row = 1; row < lines.size(); ++row) {
    std::vector<std::string> fields;
    std::string_view line = lines[row];
    std::size_t start = 0;
    while (true) {
      std::size_t comma = line.find(',', start);
      fields.emplace_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 6) {
      return Error{Err::invalid_argument, "results row needs 6 fields"};
    }
    BenchResult result;
    result.target = fields[0];
    result.op = fields[2];
    char* end = nullptr;
    result.volume = std::strtoull(fields[1].c_str(), &end, 10);
    if (end == fields[1].c_str() || *end != '\0') {
      return Error{Err::invalid_argument, "undecodable volume"};
    }
    result.mean_ms = std::strtod(fields[3].c_str(), &end);
    if (end == fields[3].c_str() || *end != '\0') {
      return Error{Err::invalid_argument, "undecodable mean"};
    }
    result.p95_ms = std::strtod(fields[4].c_str(), &end);
    if (end == fields[4].c_str() || *end != '\0') {
      return Error{Err::invalid_argument, "undecodable p95"};
    }
    result.samples = std::strtoull(fields[5].c_str(), &end, 10);
    if (end == fields[5].c_str() || *end != '\0') {
      return Error{Err::invalid_argument, "undecodable sample count"};
    }
    if (result.op != "read" && result.op != "write") {
      return Error{Err::invalid_argument, "op must be read or write"};
    }
    results.push_back(std::move(result));
  }
  return results;
}

std::optional<Crossover> estimate_crossover(const std::vector<BenchResult>& results) {
  std::vector<std::pair<double, double>> base_points;
  std::vector<double> ledger_means;
  for (const auto& row : results) {
    if (row.op != "read") continue;
    if (row.target == "baseline") {
      base_points.emplace_back(static_cast<double>(row.volume), row.mean_ms);
    } else if (row.target == "ledger") {
      ledger_means.push_back(row.mean_ms);
    }
  }
  if (base_points.size() < 2 || ledger_means.empty()) return std::nullopt;

  double mean_v = 0.0;
  double mean_y = 0.0;
  for (const auto& [v, y] : base_points) {
    mean_v += v;
    mean_y += y;
  }
  mean_v /= static_cast<double>(base_points.size());
  mean_y /= static_cast<double>(base_points.size());
  double covariance = 0.0;
  double variance = 0.0;
  for (const auto& [v, y] : base_points) {
    covariance += (v - mean_v) * (y - mean_y);
    variance += (v - mean_v) * (v - mean_v);
  }
  if (variance <= 0.0) return std::nullopt;

  Crossover crossover;
  crossover.slope = covariance / variance;
  crossover.intercept = mean_y - crossover.slope * mean_v;
  crossover.ledger_ms =
      std::accumulate(ledger_means.begin(), ledger_means.end(), 0.0) / ledger_means.size();
  if (crossover.slope <= 0.0) return std::nullopt;
  crossover.volume = (crossover.ledger_ms - crossover.intercept) / crossover.slope;
  if (!std::isfinite(crossover.volume) || crossover.volume <= 0.0) return std::nullopt;
  return crossover;
}

std::vector<BenchResult> reference_results() {
  const std::vector<std::uint64_t> volumes{10, 100, 1000, 10000, 100000, 1000000};
  const std::vector<double> base_reads{1.73, 1.79, 2.38, 8.76, 43.52, 136.19};
  const std::vector<double> base_writes{4.32, 4.48, 4.47, 4.37, 4.39, 4.45};
  std::vector<BenchResult> results;
  for (std::size_t i = 0; i < volumes.size(); ++i) {
    results.push_back({"baseline", volumes[i], "read", base_reads[i], base_reads[i], 1});
    results.push_back({"baseline", volumes[i], "write", base_writes[i], base_writes[i], 1});
    results.push_back({"ledger", volumes[i], "read", 183.0, 183.0, 1});
    results.push_back({"ledger", volumes[i], "write", 58.0, 58.0, 1});
  }
  return results;
}

std::string summarize(const std::vector<BenchResult>& results, bool include_reference) {
  std::string out = "target      volume      op      mean_ms      p95_ms     samples\n";
  char line[160];
  for (const auto& row : results) {
    std::snprintf(line, sizeof(line), "%-10s %9llu   %-5s %12.3f %11.3f %11llu\n",
                  row.target.c_str(), static_cast<unsigned long long>(row.volume),
                  row.op.c_str(), row.mean_ms, row.p95_ms,
                  static_cast<unsigned long long>(row.samples));
    out += line;
  }

  bool has_ledger = false;
  bool has_baseline = false;
  for (const auto& row : results) {
    if (row.op != "read") continue;
    has_ledger = has_ledger || row.target == "ledger";
    has_baseline = has_baseline || row.target == "baseline";
  }
  if (has_ledger && has_baseline) {
    if (auto crossover = estimate_crossover(results)) {
      std::snprintf(line, sizeof(line),
                    "crossover: baseline reads overtake ledger reads near %.0f records "
                    "(baseline ~ %.6g ms/record + %.4g ms, ledger ~ %.4g ms)\n",
                    crossover->volume, crossover->slope, crossover->intercept,
                    crossover->ledger_ms);
      out += line;
    } else {
      out += "crossover: none (degenerate baseline fit)\n";
    }
  }

  if (include_reference) {
    auto reference = estimate_crossover(reference_results());
    if (reference) {
      std::snprintf(line, sizeof(line),
                    "reference: published measurements cross near %.0f records "
                    "(ledger constant %.0f ms)\n",
                    reference->volume, reference->ledger_ms);
      out += line;
    }
  }
  return out;
}

}  // namespace ehrl::bench

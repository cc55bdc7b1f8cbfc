// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "chaincode/ehr.hpp"
#include "core/errors.hpp"

namespace ehrl::bench {

/// What to measure: which backends, at which record volumes, with how many
/// timed reads per cell. Everything downstream of the seed is
/// deterministic except the clock itself.
struct BenchPlan {
  std::vector<std::string> targets{"ledger", "baseline"};
  /// Default ladder stops at 100k; the million-record rung is opt-in
  /// because populating the ledger that far takes tens of minutes.
  std::vector<std::uint64_t> volumes{10, 100, 1000, 10000, 100000};
  std::uint32_t reads_per_volume = 200;
  std::uint64_t seed = 42;

  Result<void> validate() const;
  nlohmann::json to_json() const;
  static std::optional<BenchPlan> from_json(const nlohmann::json& j);
};

/// One measured cell: latency of one operation kind against one backend at
/// one volume.
struct BenchResult {
  std::string target;
  std::uint64_t volume = 0;
  std::string op;  // "read" or "write"
  double mean_ms = 0.0;
  double p95_ms = 0.0;  // nearest-rank percentile
  std::uint64_t samples = 0;

  bool operator==(const BenchResult& other) const = default;
};

/// Deterministic stream of schema-valid records with distinct 128-bit hex
/// ids. Same (n, seed) always yields the same records.
std::vector<chaincode::EHRRecord> generate_records(std::uint64_t n, std::uint64_t seed);

/// Populates each target to each volume in turn and times the client-visible
/// operations: writes over the tail of each population segment (first
/// iterations discarded as warm-up), reads over uniformly random existing
/// ids after 20 discarded warm-up reads. Ledger cells run the full
/// endorse-order-validate-commit pipeline per write, enforced by checking
/// the committed-transaction counter against the population count. Results
/// come back sorted by (target, volume, op).
Result<std::vector<BenchResult>> run_bench(const BenchPlan& plan);

inline constexpr std::string_view kCsvHeader = "target,volume,op,mean_ms,p95_ms,samples";

std::string to_csv(const std::vector<BenchResult>& results);
Result<std::vector<BenchResult>> from_csv(std::string_view csv);

/// Where baseline reads are expected to overtake the flat ledger reads:
/// least-squares line through the baseline (volume, mean) read points
/// against the mean ledger read constant.
struct Crossover {
  double volume = 0.0;
  double slope = 0.0;      // baseline ms per record
  double intercept = 0.0;  // baseline ms at volume zero
  double ledger_ms = 0.0;  // ledger read constant
};

/// Requires read rows for both targets; returns nothing when either side
/// is missing or the fit is degenerate (flat or already-crossed baseline).
std::optional<Crossover> estimate_crossover(const std::vector<BenchResult>& results);

/// Published query times of the deployment this system models and of its
/// database baseline, pinned for comparison reports. Their crossover
/// estimate lands near 1.2 million records.
std::vector<BenchResult> reference_results();

/// Human-readable table plus the crossover line. The crossover is omitted
/// entirely when a target is missing and reported as "none" when the fit
/// is degenerate. With include_reference, appends the same analysis over
/// the pinned reference numbers.
std::string summarize(const std::vector<BenchResult>& results, bool include_reference);

}  // namespace ehrl::bench

// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <string>
#include <vector>

#include "baseline/store.hpp"
#include "netsim/network.hpp"

using namespace ehrl;
using baseline::BaselineStore;
using chaincode::EHRRecord;

namespace {

EHRRecord make_record(std::size_t i) {
  EHRRecord record;
  record.id = "row-" + std::to_string(i);
  record.name = "Patient Number " + std::to_string(i);
  record.address = std::to_string(i) + " Harbor Street";
  record.country = i % 2 == 0 ? "Greece" : "Cyprus";
  record.dateOfBirth = "19" + std::to_string(50 + i % 50) + "-06-15";
  record.test = i % 3 == 0 ? "positive" : "negative";
  return record;
}

bool contains(const Bytes& haystack, const std::string& needle) {
  return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) !=
         haystack.end();
}

double mean_scan_ms(const BaselineStore& store, std::size_t volume, std::uint64_t seed,
                    int samples) {
  DeterministicRng picks(seed);
  double total = 0.0;
  for (int i = 0; i < samples; ++i) {
    std::string id = "row-" + std::to_string(picks.below(volume));
    auto start = std::chrono::steady_clock::now();
    auto record = store.read(id);
    total += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                 .count();
    REQUIRE(record.ok());
  }
  return total / samples;
}

}  // namespace

TEST_CASE("insert and read round trip through encryption") {
  BaselineStore store(42);
  EHRRecord record = make_record(7);
  REQUIRE(store.insert(record).ok());
  CHECK(store.size() == 1);
  CHECK(store.contains("row-7"));

  auto back = store.read("row-7");
  REQUIRE(back.ok());
  CHECK(back->name == record.name);
  CHECK(back->address == record.address);
  CHECK(back->country == record.country);
  CHECK(back->dateOfBirth == record.dateOfBirth);
  CHECK(back->test == record.test);

  CHECK(store.insert(record).error().code == Err::duplicate);
  CHECK(store.read("row-8").error().code == Err::not_found);
}

TEST_CASE("update rewrites in place and remove erases") {
  BaselineStore store(42);
  REQUIRE(store.insert(make_record(1)).ok());
  REQUIRE(store.insert(make_record(2)).ok());

  EHRRecord changed = make_record(1);
  changed.test = "inconclusive";
  changed.name = "Renamed Patient";
  REQUIRE(store.update(changed).ok());
  auto back = store.read("row-1");
  REQUIRE(back.ok());
  CHECK(back->test == "inconclusive");
  CHECK(back->name == "Renamed Patient");

  EHRRecord ghost = make_record(9);
  CHECK(store.update(ghost).error().code == Err::not_found);

  REQUIRE(store.remove("row-1").ok());
  CHECK(store.size() == 1);
  CHECK_FALSE(store.contains("row-1"));
  CHECK(store.read("row-1").error().code == Err::not_found);
  CHECK(store.remove("row-1").error().code == Err::not_found);

  // The freed id is insertable again.
  CHECK(store.insert(make_record(1)).ok());
}

TEST_CASE("serialized rows never expose name or address plaintext") {
  BaselineStore store(42);
  std::vector<EHRRecord> records;
  for (std::size_t i = 0; i < 50; ++i) {
    records.push_back(make_record(i));
    REQUIRE(store.insert(records.back()).ok());
  }
  Bytes image = store.serialize();
  for (const auto& record : records) {
    CHECK_FALSE(contains(image, record.name));
    CHECK_FALSE(contains(image, record.address));
    CHECK(contains(image, record.id));  // public columns stay readable
    CHECK(contains(image, record.country));
  }

  SUBCASE("same seed reproduces the same image") {
    BaselineStore again(42);
    for (const auto& record : records) REQUIRE(again.insert(record).ok());
    CHECK(again.serialize() == image);
  }

  SUBCASE("ciphertexts of equal plaintexts differ by nonce") {
    EHRRecord twin_a = make_record(100);
    EHRRecord twin_b = make_record(101);
    twin_b.name = twin_a.name;
    twin_b.address = twin_a.address;
    BaselineStore twins(42);
    REQUIRE(twins.insert(twin_a).ok());
    REQUIRE(twins.insert(twin_b).ok());
    auto a = twins.read(twin_a.id);
    auto b = twins.read(twin_b.id);
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    CHECK(a->name == b->name);  // plaintext equal, rows still decrypt apart
  }
}

TEST_CASE("json-lines bulk load") {
  BaselineStore store(42);
  std::string lines;
  for (std::size_t i = 0; i < 10; ++i) lines += make_record(i).to_json().dump() + "\n";
  auto loaded = store.load_jsonl(lines);
  REQUIRE(loaded.ok());
  CHECK(*loaded == 10);
  CHECK(store.size() == 10);
  CHECK(store.read("row-9").ok());

  CHECK(store.load_jsonl("not json\n").error().code == Err::invalid_argument);
  CHECK(store.load_jsonl("{\"id\":\"x\"}\n").error().code == Err::invalid_argument);
  auto empty = BaselineStore(1).load_jsonl("");
  REQUIRE(empty.ok());
  CHECK(*empty == 0);
}

TEST_CASE("scan cost grows with the row count") {
  BaselineStore store(42);
  std::size_t checkpoint_small = 1000;
  std::size_t checkpoint_large = 100000;
  for (std::size_t i = 0; i < checkpoint_small; ++i) REQUIRE(store.insert(make_record(i)).ok());
  mean_scan_ms(store, checkpoint_small, 5, 20);  // warm up
  double small = mean_scan_ms(store, checkpoint_small, 6, 200);

  for (std::size_t i = checkpoint_small; i < checkpoint_large; ++i) {
    REQUIRE(store.insert(make_record(i)).ok());
  }
  mean_scan_ms(store, checkpoint_large, 7, 20);  // warm up
  double large = mean_scan_ms(store, checkpoint_large, 8, 200);

  CHECK(large > small);
  CHECK(large >= 5.0 * small);
}

TEST_CASE("baseline answers match the ledger for a member-org caller") {
  BaselineStore store(42);
  auto net = netsim::Network::create(netsim::NetworkConfig{});
  REQUIRE(net.ok());
  netsim::Network& n = **net;

  std::vector<EHRRecord> records;
  for (std::size_t i = 0; i < 30; ++i) records.push_back(make_record(i));

  for (const auto& record : records) {
    REQUIRE(store.insert(record).ok());
    auto created = n.execute_op("clerk@Healthcenter", "create", record.to_json());
    REQUIRE(created.ok);
  }
  for (std::size_t i = 0; i < records.size(); i += 3) {
    EHRRecord changed = records[i];
    changed.test = "retested";
    REQUIRE(store.update(changed).ok());
    REQUIRE(n.execute_op("clerk@Healthcenter", "update",
                         {{"id", changed.id}, {"test", "retested"}})
                .ok);
  }
  REQUIRE(store.remove(records[4].id).ok());
  REQUIRE(n.execute_op("clerk@Healthcenter", "delete", {{"id", records[4].id}}).ok);

  for (const auto& record : records) {
    auto row = store.read(record.id);
    auto pub = n.execute_op("clerk@Healthcenter", "read", {{"id", record.id}});
    auto priv = n.execute_op("clerk@Healthcenter", "read-private", {{"id", record.id}});
    if (record.id == records[4].id) {
      CHECK(row.error().code == Err::not_found);
      CHECK(pub.error_code == Err::not_found);
      continue;
    }
    REQUIRE(row.ok());
    REQUIRE(pub.ok);
    REQUIRE(priv.ok);
    CHECK(row->country == pub.response["country"].get<std::string>());
    CHECK(row->dateOfBirth == pub.response["dateOfBirth"].get<std::string>());
    CHECK(row->test == pub.response["test"].get<std::string>());
    CHECK(row->name == priv.response["name"].get<std::string>());
    CHECK(row->address == priv.response["address"].get<std::string>());
  }
}

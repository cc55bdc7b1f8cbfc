// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#include "oracle.hpp"

namespace ehrl::testing {

using ledger::TxFlag;
using ledger::Version;

OracleOutcome replay_serially(const std::vector<std::vector<OracleTx>>& blocks,
                              std::uint64_t first_block_number) {
  OracleOutcome out;
  std::uint64_t block_number = first_block_number;
  for (const auto& block : blocks) {
    std::vector<TxFlag> flags;
    std::uint32_t index = 0;
    for (const auto& tx : block) {
      TxFlag flag = TxFlag::valid;
      if (!tx.well_endorsed) {
        flag = TxFlag::invalid_endorsement;
      } else {
        for (const auto& read : tx.reads) {
          auto it = out.state.find(read.key);
          std::optional<Version> current;
          if (it != out.state.end()) current = it->second.version;
          if (current != read.version) {
            flag = TxFlag::invalid_mvcc;
            break;
          }
        }
      }
      if (flag == TxFlag::valid) {
        for (const auto& write : tx.writes) {
          if (write.value) {
            out.state[write.key] = OracleCell{*write.value, Version{block_number, index}};
          } else {
            out.state.erase(write.key);
          }
        }
      }
      flags.push_back(flag);
      ++index;
    }
    out.flags.push_back(std::move(flags));
    ++block_number;
  }
  return out;
}

}  // namespace ehrl::testing

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>

#include "recsys/graph.hpp"
#include "recsys/systems.hpp"

namespace recsys {

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

struct PeriodicPoints {
  BigCount count;
  std::optional<std::set<Word>> words;  // present when count <= cap
};

/// Closed length-n paths: exact count by trace(A^n), plus their label words.
PeriodicPoints periodic_points(const LabeledDigraph& g, int n, std::uint64_t cap = kDefaultEnumerationCap);

/// z_n = z_{n-2} + z_{n-3}, z_0 = 3, z_1 = 0, z_2 = 2.
BigCount perrin_count(int n);

struct CycleStorageCode {
  int n = 0;
  int q = 2;
  std::set<Word> codewords;
  RecoveryTable table;  // (left neighbour, right neighbour) -> symbol

  /// (1/n) log_q |code|
  double rate() const;
};

CycleStorageCode storage_code_for_cycle(const RecoverableSystem& s, int n,
                                        std::uint64_t cap = kDefaultEnumerationCap);

struct StorageViolation {
  Word codeword;
  int position = 0;
};

struct StorageVerifyResult {
  bool ok = false;
  std::optional<StorageViolation> violation;
};

StorageVerifyResult verify_storage_code(const CycleStorageCode& c);
bool is_shift_closed(const CycleStorageCode& c);

/// Header "n q", then one codeword per line. The table goes in a sidecar file.
void write_code(std::ostream& out, const CycleStorageCode& c);
CycleStorageCode read_code(std::istream& in, const RecoveryTable& table);

}  // namespace recsys

#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "recsys/graph.hpp"

namespace recsys {

struct ForbiddenSet {
  int q = 2;
  int k = 1;
  int l = 1;
  std::set<Word> words;  // each of length 2l+k

  std::size_t window() const { return static_cast<std::size_t>(2 * l + k); }
  void validate() const;
};

/// f(alpha, beta) = w for boundary words alpha, beta of length l.
using RecoveryTable = std::map<std::pair<Word, Word>, Word>;

struct SystemParams {
  int q = 2;
  int k = 1;
  int l = 1;
};

struct Provenance {
  std::string construction;
  int effective_alphabet = 0;  // letters on essential vertices/edges
};

struct RecoverableSystem {
  SystemParams params;
  LabeledDigraph presentation;
  RecoveryTable table;
  Provenance provenance;
};

struct Conflict {
  Word alpha, beta, w1, w2;
};

struct VerifyResult {
  bool recoverable = false;
  RecoveryTable table;
  std::optional<Conflict> conflict;
};

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Sentinel for presentations without any bi-infinite path.
inline constexpr double kNoCapacity = -std::numeric_limits<double>::infinity();

bool is_admissible(const ForbiddenSet& f);

/// Vertices: all words of length 2l+k-1. Edge u->v when v extends u by one
/// symbol and the spelled window is not forbidden; the edge label is v's last symbol.
LabeledDigraph presentation_from_forbidden(const ForbiddenSet& f);
LabeledDigraph presentation_from_forbidden(int q, std::size_t n, const std::set<Word>& forbidden);

/// Presentation of the shift whose allowed m-windows are `allowed`: vertices
/// are the (m-1)-words occurring as a prefix or suffix of an allowed word.
LabeledDigraph window_graph(int q, const std::set<Word>& allowed);

/// Label sequences of length-n paths through essential vertices, i.e. B_n of
/// the presented shift. Edge labels are concatenated.
std::set<Word> block_words(const LabeledDigraph& g, int n);

VerifyResult verify_recoverable(const LabeledDigraph& presentation, int k, int l);

/// Verifies `presentation` and packages it; throws DomainError on a conflict.
RecoverableSystem make_system(const LabeledDigraph& presentation, int k, int l, std::string construction);

/// Q^{2l+k} minus B_{2l+k}.
ForbiddenSet forbidden_set_of(const RecoverableSystem& s);

/// log_q of the Perron eigenvalue; kNoCapacity if it is 0; 0 when q = 1.
double capacity(const LabeledDigraph& presentation);
double capacity(const RecoverableSystem& s);

Rational upper_bound(int k, int l);

enum class EdgeCoverMode { square, power };

/// square: q = t^2, (param, param)-recoverable, capacity 1/2.
/// power:  q = t^(param+1), (param, 1)-recoverable, capacity 1/(param+1).
RecoverableSystem edge_cover_system(int t, EdgeCoverMode mode, int param);

/// (k, k+1)-recoverable system over {0,1,2} built from the blocks 2 0^{k+1}
/// and 2 1^{k+1}; capacity log_q 2 / (k+2).
RecoverableSystem marker_system(int q, int k);

struct TruncationParams {
  int t = 0;
  int r = 0;
};
/// t = ceil(sqrt(q)), r = t^2 - q; throws unless q >= 2 and r <= t.
TruncationParams truncation_params(int q);
/// The truncated de Bruijn matrix A_Q as an adjacency matrix.
AdjacencyMatrix truncated_matrix(int q);
RecoverableSystem truncated_debruijn_system(int q);
double capacity_formula(int q);

/// Adds two symbols and a 4-cycle through the most visited pair vertex.
RecoverableSystem recursive_extend(const RecoverableSystem& s);
/// cap * log_{q+2} q + (1/q^2) log_{q+2}(1 + 1/q^2)
double recursive_lower_bound(double cap, int q);

struct ExhaustiveResult {
  double capacity = kNoCapacity;
  std::uint64_t function_index = 0;
  std::uint64_t candidates = 0;
  RecoverableSystem witness;
};

inline constexpr std::uint64_t kDefaultSearchCap = 10'000'000;

/// Recovery function for index i: f(pair_j) is base-q^k digit j of i, where
/// pair_j = alpha * q^l + beta over the base-q values of alpha and beta.
RecoveryTable recovery_function(int q, int k, int l, std::uint64_t index);
ForbiddenSet forbidden_set_of_function(int q, int k, int l, const RecoveryTable& f);

ExhaustiveResult exhaustive_max_capacity(int q, int k, int l, unsigned threads = 1,
                                         std::uint64_t search_cap = kDefaultSearchCap);

// Text formats.
void write_forbidden(std::ostream& out, const ForbiddenSet& f);
ForbiddenSet read_forbidden(std::istream& in);
void write_table(std::ostream& out, const RecoveryTable& t);
RecoveryTable read_table(std::istream& in);

}  // namespace recsys

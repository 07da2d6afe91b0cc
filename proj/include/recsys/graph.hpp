#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "recsys/word.hpp"

namespace recsys {

struct Vertex {
  int id = 0;
  Word label;
};

struct Edge {
  int from = 0;
  int to = 0;
  Word label;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Dense nonnegative integer matrix; entry (i, j) counts edges i -> j.
class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;
  explicit AdjacencyMatrix(std::size_t n) : n_(n), entries_(n * n, 0) {}
  AdjacencyMatrix(std::size_t n, std::vector<std::int64_t> row_major);
  static AdjacencyMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t size() const { return n_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const std::vector<std::int64_t>& entries() const { return entries_; }

  AdjacencyMatrix operator*(const AdjacencyMatrix& rhs) const;
  AdjacencyMatrix power(unsigned m) const;
  AdjacencyMatrix submatrix(const std::vector<int>& keep) const;

  friend bool operator==(const AdjacencyMatrix&, const AdjacencyMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> entries_;
};

/// Directed multigraph with word-labelled vertices and edges over [q].
///
/// Vertices are kept in lexicographic (base-q numeric) order of their labels,
/// so vertex ids are positions in that order. The constructor takes labels in
/// any order and edge endpoints as indices into the given label list; it sorts
/// and renumbers both.
class LabeledDigraph {
 public:
  LabeledDigraph() = default;
  LabeledDigraph(int q, std::vector<Word> vertex_labels, std::vector<Edge> edges);

  int q() const { return q_; }
  std::size_t label_length() const { return label_length_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const Vertex& vertex(int id) const { return vertices_[static_cast<std::size_t>(id)]; }
  const std::vector<Edge>& edges() const { return edges_; }
  /// Indices into edges() of the edges leaving `v`, ordered by (to, label).
  const std::vector<std::size_t>& out_edges(int v) const { return out_[static_cast<std::size_t>(v)]; }
  std::optional<int> find_vertex(const Word& label) const;

  /// True when no two edges share (from, to, label).
  bool has_distinct_parallel_labels() const;
  /// True when labels of edges leaving each vertex are pairwise distinct.
  bool is_right_resolving() const;

 private:
  int q_ = 1;
  std::size_t label_length_ = 0;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_;
};

LabeledDigraph de_bruijn(int q, int d);
AdjacencyMatrix adjacency(const LabeledDigraph& g);
LabeledDigraph higher_power(const LabeledDigraph& g, int m);
LabeledDigraph induced_subgraph(const LabeledDigraph& g, const std::vector<int>& keep);

bool is_strongly_connected(const LabeledDigraph& g);
bool is_strongly_connected(const AdjacencyMatrix& a);
/// Strongly connected components, each sorted, ordered by smallest member.
std::vector<std::vector<int>> scc_decompose(const LabeledDigraph& g);
std::vector<std::vector<int>> scc_decompose(const AdjacencyMatrix& a);

/// Vertices lying on some bi-infinite path (in-degree and out-degree stay
/// positive after iterated trimming).
std::vector<int> essential_vertices(const LabeledDigraph& g);
/// Explicit pruning: the subgraph on essential vertices.
LabeledDigraph prune_inessential(const LabeledDigraph& g);
/// The strongly connected component carrying the Perron eigenvalue
/// (first such component on ties).
LabeledDigraph core_subgraph(const LabeledDigraph& g);

/// Spectral radius: maximum over SCCs; 0 for a nilpotent matrix.
double perron_eigenvalue(const AdjacencyMatrix& a);

struct PerronData {
  double eigenvalue = 0.0;
  std::vector<double> right;  // A y = lambda y, sum(y) = 1
  std::vector<double> left;   // x^T A = lambda x^T, x^T y = 1
};

/// Perron eigenpair of an irreducible matrix. Throws DomainError otherwise.
PerronData perron_vectors(const AdjacencyMatrix& a);

/// Number of distinct label sequences of length-n paths.
BigCount count_words(const LabeledDigraph& g, int n);
/// trace(A^n), exact.
BigCount trace_power(const AdjacencyMatrix& a, int n);

void write_matrix_csv(std::ostream& out, const AdjacencyMatrix& a);

}  // namespace recsys

#include "recsys/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <string>

namespace recsys {

// ---------------------------------------------------------------------------
// AdjacencyMatrix

AdjacencyMatrix::AdjacencyMatrix(std::size_t n, std::vector<std::int64_t> row_major)
    : n_(n), entries_(std::move(row_major)) {
  if (entries_.size() != n * n) throw DomainError("matrix entry count is not n*n");
  for (auto v : entries_) {
    if (v < 0) throw DomainError("adjacency entries must be nonnegative");
  }
}

AdjacencyMatrix AdjacencyMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  std::vector<std::int64_t> flat;
  for (const auto& r : rows) {
    if (r.size() != rows.size()) throw DomainError("matrix is not square");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return AdjacencyMatrix(rows.size(), std::move(flat));
}

AdjacencyMatrix AdjacencyMatrix::operator*(const AdjacencyMatrix& rhs) const {
  if (rhs.n_ != n_) throw DomainError("matrix dimension mismatch");
  AdjacencyMatrix out(n_);
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < n_; ++k) {
      const std::int64_t a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        const std::int64_t b = rhs(k, j);
        if (b == 0) continue;
        if (a > kMax / b || out(i, j) > kMax - a * b) {
          throw DomainError("matrix product overflows 64-bit entries");
        }
        out(i, j) += a * b;
      }
    }
  }
  return out;
}

AdjacencyMatrix AdjacencyMatrix::power(unsigned m) const {
  AdjacencyMatrix result(n_);
  for (std::size_t i = 0; i < n_; ++i) result(i, i) = 1;
  AdjacencyMatrix base = *this;
  while (m > 0) {
    if (m & 1U) result = result * base;
    m >>= 1U;
    if (m > 0) base = base * base;
  }
  return result;
}

AdjacencyMatrix AdjacencyMatrix::submatrix(const std::vector<int>& keep) const {
  AdjacencyMatrix out(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (std::size_t j = 0; j < keep.size(); ++j) {
      out(i, j) = (*this)(static_cast<std::size_t>(keep[i]), static_cast<std::size_t>(keep[j]));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// LabeledDigraph

namespace {

void check_symbols(const Word& w, int q, const char* what) {
  for (Symbol s : w) {
    if (s < 0 || s >= q) {
      throw DomainError(std::string(what) + " uses symbol " + std::to_string(s) +
                        " outside [q] with q=" + std::to_string(q));
    }
  }
}

}  // namespace

LabeledDigraph::LabeledDigraph(int q, std::vector<Word> vertex_labels, std::vector<Edge> edges)
    : q_(q) {
  if (q < 1) throw DomainError("alphabet size q must be >= 1");
  if (!vertex_labels.empty()) label_length_ = vertex_labels.front().size();
  for (const auto& w : vertex_labels) {
    if (w.size() != label_length_) throw DomainError("vertex labels must have equal length");
    check_symbols(w, q, "vertex label");
  }

  std::vector<int> order(vertex_labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return vertex_labels[a] < vertex_labels[b]; });
  std::vector<int> new_id(vertex_labels.size());
  vertices_.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0 && vertex_labels[order[i]] == vertex_labels[order[i - 1]]) {
      throw DomainError("duplicate vertex label " + format_word(vertex_labels[order[i]]));
    }
    new_id[order[i]] = static_cast<int>(i);
    vertices_.push_back({static_cast<int>(i), vertex_labels[order[i]]});
  }

  const int nv = static_cast<int>(vertices_.size());
  for (auto& e : edges) {
    if (e.from < 0 || e.from >= nv || e.to < 0 || e.to >= nv) {
      throw DomainError("edge endpoint out of range");
    }
    check_symbols(e.label, q, "edge label");
    e.from = new_id[e.from];
    e.to = new_id[e.to];
  }
  std::sort(edges.begin(), edges.end());
  edges_ = std::move(edges);
  out_.assign(vertices_.size(), {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    out_[static_cast<std::size_t>(edges_[i].from)].push_back(i);
  }
}

std::optional<int> LabeledDigraph::find_vertex(const Word& label) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), label,
                             [](const Vertex& v, const Word& w) { return v.label < w; });
  if (it == vertices_.end() || it->label != label) return std::nullopt;
  return it->id;
}

bool LabeledDigraph::has_distinct_parallel_labels() const {
  return std::adjacent_find(edges_.begin(), edges_.end()) == edges_.end();
}

bool LabeledDigraph::is_right_resolving() const {
  for (const auto& out : out_) {
    std::set<Word> seen;
    for (auto idx : out) {
      if (!seen.insert(edges_[idx].label).second) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Constructions

LabeledDigraph de_bruijn(int q, int d) {
  if (q < 1 || d < 1) throw DomainError("de_bruijn needs q >= 1 and d >= 1");
  auto labels = all_words(q, static_cast<std::size_t>(d));
  const auto n = static_cast<std::uint64_t>(labels.size());
  std::vector<Edge> edges;
  edges.reserve(labels.size() * static_cast<std::size_t>(q));
  for (std::uint64_t u = 0; u < n; ++u) {
    // successors of u drop the first symbol and append one: (u mod q^{d-1}) * q + [q]
    const std::uint64_t base = (u % (n / static_cast<std::uint64_t>(q))) * static_cast<std::uint64_t>(q);
    for (int a = 0; a < q; ++a) {
      edges.push_back({static_cast<int>(u), static_cast<int>(base + static_cast<std::uint64_t>(a)), Word{a}});
    }
  }
  return LabeledDigraph(q, std::move(labels), std::move(edges));
}

AdjacencyMatrix adjacency(const LabeledDigraph& g) {
  AdjacencyMatrix a(g.vertex_count());
  for (const auto& e : g.edges()) {
    a(static_cast<std::size_t>(e.from), static_cast<std::size_t>(e.to)) += 1;
  }
  return a;
}

LabeledDigraph higher_power(const LabeledDigraph& g, int m) {
  if (m < 1) throw DomainError("higher_power needs m >= 1");
  const auto am = adjacency(g).power(static_cast<unsigned>(m));
  std::vector<Word> labels;
  for (const auto& v : g.vertices()) labels.push_back(v.label);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < am.size(); ++i) {
    for (std::size_t j = 0; j < am.size(); ++j) {
      for (std::int64_t c = 0; c < am(i, j); ++c) {
        edges.push_back({static_cast<int>(i), static_cast<int>(j), labels[j]});
      }
    }
  }
  return LabeledDigraph(g.q(), std::move(labels), std::move(edges));
}

LabeledDigraph induced_subgraph(const LabeledDigraph& g, const std::vector<int>& keep) {
  std::vector<int> pos(g.vertex_count(), -1);
  std::vector<Word> labels;
  for (int v : keep) {
    if (v < 0 || static_cast<std::size_t>(v) >= g.vertex_count()) throw DomainError("vertex out of range");
    if (pos[static_cast<std::size_t>(v)] >= 0) continue;
    pos[static_cast<std::size_t>(v)] = static_cast<int>(labels.size());
    labels.push_back(g.vertex(v).label);
  }
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    const int a = pos[static_cast<std::size_t>(e.from)];
    const int b = pos[static_cast<std::size_t>(e.to)];
    if (a >= 0 && b >= 0) edges.push_back({a, b, e.label});
  }
  return LabeledDigraph(g.q(), std::move(labels), std::move(edges));
}

// ---------------------------------------------------------------------------
// Connectivity

std::vector<std::vector<int>> scc_decompose(const AdjacencyMatrix& a) {
  // Iterative Tarjan.
  const int n = static_cast<int>(a.size());
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<char> on_stack(n, 0);
  std::vector<std::vector<int>> comps;
  int counter = 0;
  struct Frame {
    int v;
    int next;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next < n) {
        const int w = f.next++;
        if (a(static_cast<std::size_t>(f.v), static_cast<std::size_t>(w)) == 0) continue;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const int v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<int> comp;
        int w = -1;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
    }
  }
  std::sort(comps.begin(), comps.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return comps;
}

std::vector<std::vector<int>> scc_decompose(const LabeledDigraph& g) {
  return scc_decompose(adjacency(g));
}

bool is_strongly_connected(const AdjacencyMatrix& a) {
  return a.size() > 0 && scc_decompose(a).size() == 1;
}

bool is_strongly_connected(const LabeledDigraph& g) { return is_strongly_connected(adjacency(g)); }

std::vector<int> essential_vertices(const LabeledDigraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<int> indeg(n, 0), outdeg(n, 0);
  std::vector<std::vector<int>> preds(n), succs(n);
  for (const auto& e : g.edges()) {
    ++outdeg[static_cast<std::size_t>(e.from)];
    ++indeg[static_cast<std::size_t>(e.to)];
    succs[static_cast<std::size_t>(e.from)].push_back(e.to);
    preds[static_cast<std::size_t>(e.to)].push_back(e.from);
  }
  std::vector<char> alive(n, 1);
  std::vector<int> queue;
  for (std::size_t v = 0; v < n; ++v) {
    if (indeg[v] == 0 || outdeg[v] == 0) {
      alive[v] = 0;
      queue.push_back(static_cast<int>(v));
    }
  }
  while (!queue.empty()) {
    const int v = queue.back();
    queue.pop_back();
    for (int w : succs[static_cast<std::size_t>(v)]) {
      if (alive[static_cast<std::size_t>(w)] && --indeg[static_cast<std::size_t>(w)] == 0) {
        alive[static_cast<std::size_t>(w)] = 0;
        queue.push_back(w);
      }
    }
    for (int w : preds[static_cast<std::size_t>(v)]) {
      if (alive[static_cast<std::size_t>(w)] && --outdeg[static_cast<std::size_t>(w)] == 0) {
        alive[static_cast<std::size_t>(w)] = 0;
        queue.push_back(w);
      }
    }
  }
  std::vector<int> out;
  for (std::size_t v = 0; v < n; ++v) {
    if (alive[v]) out.push_back(static_cast<int>(v));
  }
  return out;
}

LabeledDigraph prune_inessential(const LabeledDigraph& g) {
  return induced_subgraph(g, essential_vertices(g));
}

// ---------------------------------------------------------------------------
// Perron eigenvalue

namespace {

constexpr int kMaxIterations = 100000;
constexpr double kBracketTol = 1e-15;

struct PowerResult {
  double lambda = 0.0;
  std::vector<double> vec;
};

// Power iteration on B = A + I for an irreducible A. The Collatz-Wielandt
// ratios min_i (Bx)_i / x_i and max_i (Bx)_i / x_i bracket rho(B); we stop when
// the bracket closes or stops shrinking, so the returned value is certified up
// to the final bracket width.
PowerResult shifted_power_iteration(const AdjacencyMatrix& a, bool transpose) {
  const std::size_t n = a.size();
  std::vector<double> x(n, 1.0 / static_cast<double>(n)), bx(n);
  double best_width = std::numeric_limits<double>::infinity();
  int stale = 0;
  double lo = 0.0, hi = 0.0;
  for (int it = 0; it < kMaxIterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = x[i];
      for (std::size_t j = 0; j < n; ++j) {
        const auto aij = transpose ? a(j, i) : a(i, j);
        if (aij != 0) s += static_cast<double>(aij) * x[j];
      }
      bx[i] = s;
    }
    lo = std::numeric_limits<double>::infinity();
    hi = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = bx[i] / x[i];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      total += bx[i];
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = bx[i] / total;
    const double width = hi - lo;
    if (width <= kBracketTol * hi) break;
    if (width < best_width) {
      best_width = width;
      stale = 0;
    } else if (++stale > 50) {
      break;  // rounding floor reached
    }
  }
  return {0.5 * (lo + hi) - 1.0, std::move(x)};
}

double component_radius(const AdjacencyMatrix& sub) {
  if (sub.size() == 1) return static_cast<double>(sub(0, 0));
  return shifted_power_iteration(sub, false).lambda;
}

}  // namespace

double perron_eigenvalue(const AdjacencyMatrix& a) {
  double best = 0.0;
  for (const auto& comp : scc_decompose(a)) {
    best = std::max(best, component_radius(a.submatrix(comp)));
  }
  return best;
}

LabeledDigraph core_subgraph(const LabeledDigraph& g) {
  const auto a = adjacency(g);
  const auto comps = scc_decompose(a);
  if (comps.empty()) throw DomainError("core_subgraph of an empty graph");
  std::size_t best = 0;
  double best_val = -1.0;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const double r = component_radius(a.submatrix(comps[c]));
    if (r > best_val + 1e-12) {
      best_val = r;
      best = c;
    }
  }
  return induced_subgraph(g, comps[best]);
}

PerronData perron_vectors(const AdjacencyMatrix& a) {
  if (!is_strongly_connected(a)) throw DomainError("perron_vectors needs an irreducible matrix");
  const std::size_t n = a.size();
  if (n == 1) {
    if (a(0, 0) == 0) throw DomainError("perron_vectors: single vertex without a loop");
    return {static_cast<double>(a(0, 0)), {1.0}, {1.0}};
  }
  auto right = shifted_power_iteration(a, false);
  auto left = shifted_power_iteration(a, true);
  PerronData out;
  out.eigenvalue = right.lambda;
  out.right = std::move(right.vec);
  out.left = std::move(left.vec);
  double sy = 0.0;
  for (double v : out.right) sy += v;
  for (double& v : out.right) v /= sy;
  double xy = 0.0;
  for (std::size_t i = 0; i < n; ++i) xy += out.left[i] * out.right[i];
  for (double& v : out.left) v /= xy;
  return out;
}

// ---------------------------------------------------------------------------
// Exact counting

namespace {

constexpr std::size_t kSubsetCap = 200000;

using Subset = std::vector<std::uint64_t>;

void set_bit(Subset& s, std::size_t i) { s[i / 64] |= (std::uint64_t{1} << (i % 64)); }
bool test_bit(const Subset& s, std::size_t i) { return (s[i / 64] >> (i % 64)) & 1U; }

// Distinct label sequences by DP over the subset automaton.
std::optional<BigCount> count_by_subsets(const LabeledDigraph& g, int n) {
  const std::size_t nv = g.vertex_count();
  const std::size_t words = (nv + 63) / 64;
  Subset start(words, 0);
  for (std::size_t v = 0; v < nv; ++v) set_bit(start, v);
  std::map<Subset, BigCount> layer{{start, 1}};
  std::set<Subset> seen{start};
  for (int step = 0; step < n; ++step) {
    std::map<Subset, BigCount> next;
    for (const auto& [subset, count] : layer) {
      std::map<Word, Subset> by_label;
      for (std::size_t v = 0; v < nv; ++v) {
        if (!test_bit(subset, v)) continue;
        for (auto idx : g.out_edges(static_cast<int>(v))) {
          const auto& e = g.edges()[idx];
          auto [it, inserted] = by_label.try_emplace(e.label, Subset(words, 0));
          set_bit(it->second, static_cast<std::size_t>(e.to));
        }
      }
      for (auto& [label, target] : by_label) {
        seen.insert(target);
        if (seen.size() > kSubsetCap) return std::nullopt;
        next[target] += count;
      }
    }
    layer = std::move(next);
  }
  BigCount total = 0;
  for (const auto& [subset, count] : layer) total += count;
  return total;
}

BigCount count_by_enumeration(const LabeledDigraph& g, int n) {
  std::set<std::vector<Word>> labels;
  std::vector<Word> path;
  std::function<void(int, int)> walk = [&](int v, int depth) {
    if (depth == n) {
      labels.insert(path);
      return;
    }
    for (auto idx : g.out_edges(v)) {
      const auto& e = g.edges()[idx];
      path.push_back(e.label);
      walk(e.to, depth + 1);
      path.pop_back();
    }
  };
  for (std::size_t v = 0; v < g.vertex_count(); ++v) walk(static_cast<int>(v), 0);
  return BigCount(labels.size());
}

}  // namespace

BigCount count_words(const LabeledDigraph& g, int n) {
  if (n < 1) throw DomainError("count_words needs n >= 1");
  if (auto c = count_by_subsets(g, n)) return *c;
  if (n > 20 || g.q() > 4) {
    throw DomainError("count_words: subset automaton too large and brute force outside n<=20, q<=4");
  }
  return count_by_enumeration(g, n);
}

BigCount trace_power(const AdjacencyMatrix& a, int n) {
  if (n < 0) throw DomainError("trace_power needs n >= 0");
  const std::size_t d = a.size();
  using Big = std::vector<BigCount>;
  auto mul = [d](const Big& x, const Big& y) {
    Big z(d * d, 0);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t k = 0; k < d; ++k) {
        if (x[i * d + k] == 0) continue;
        for (std::size_t j = 0; j < d; ++j) z[i * d + j] += x[i * d + k] * y[k * d + j];
      }
    }
    return z;
  };
  Big result(d * d, 0), base(d * d, 0);
  for (std::size_t i = 0; i < d; ++i) result[i * d + i] = 1;
  for (std::size_t i = 0; i < d * d; ++i) base[i] = a.entries()[i];
  for (unsigned m = static_cast<unsigned>(n); m > 0; m >>= 1U) {
    if (m & 1U) result = mul(result, base);
    if (m > 1) base = mul(base, base);
  }
  BigCount tr = 0;
  for (std::size_t i = 0; i < d; ++i) tr += result[i * d + i];
  return tr;
}

void write_matrix_csv(std::ostream& out, const AdjacencyMatrix& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (j > 0) out << ',';
      out << a(i, j);
    }
    out << '\n';
  }
}

}  // namespace recsys

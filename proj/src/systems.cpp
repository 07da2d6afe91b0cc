#include "recsys/systems.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

namespace recsys {

void ForbiddenSet::validate() const {
  if (q < 1 || k < 1 || l < 1) throw DomainError("forbidden set needs q, k, l >= 1");
  for (const auto& w : words) {
    if (w.size() != window()) throw DomainError("forbidden word " + format_word(w) + " has length != 2l+k");
    for (Symbol s : w) {
      if (s < 0 || s >= q) throw DomainError("forbidden word " + format_word(w) + " leaves [q]");
    }
  }
}

bool is_admissible(const ForbiddenSet& f) {
  f.validate();
  const auto ul = static_cast<std::size_t>(f.l);
  const auto uk = static_cast<std::size_t>(f.k);
  const auto middles = all_words(f.q, uk);
  const auto need = static_cast<std::size_t>(checked_pow(static_cast<std::uint64_t>(f.q), uk) - 1);
  for (const auto& u : all_words(f.q, ul)) {
    for (const auto& v : all_words(f.q, ul)) {
      std::size_t hit = 0;
      for (const auto& w : middles) {
        if (f.words.count(concat(concat(u, w), v))) ++hit;
      }
      if (hit < need) return false;
    }
  }
  return true;
}

LabeledDigraph presentation_from_forbidden(int q, std::size_t n, const std::set<Word>& forbidden) {
  if (n < 2) throw DomainError("presentation_from_forbidden needs window length >= 2");
  auto labels = all_words(q, n - 1);
  const auto count = static_cast<std::uint64_t>(labels.size());
  std::vector<Edge> edges;
  for (std::uint64_t u = 0; u < count; ++u) {
    const std::uint64_t base = (u % (count / static_cast<std::uint64_t>(q))) * static_cast<std::uint64_t>(q);
    for (int a = 0; a < q; ++a) {
      Word spelled = labels[u];
      spelled.push_back(a);
      if (forbidden.count(spelled)) continue;
      edges.push_back({static_cast<int>(u), static_cast<int>(base + static_cast<std::uint64_t>(a)), Word{a}});
    }
  }
  return LabeledDigraph(q, std::move(labels), std::move(edges));
}

LabeledDigraph presentation_from_forbidden(const ForbiddenSet& f) {
  f.validate();
  return presentation_from_forbidden(f.q, f.window(), f.words);
}

LabeledDigraph window_graph(int q, const std::set<Word>& allowed) {
  if (allowed.empty()) return LabeledDigraph(q, {}, {});
  const std::size_t m = allowed.begin()->size();
  if (m < 2) throw DomainError("window_graph needs words of length >= 2");
  std::map<Word, int> index;
  for (const auto& w : allowed) {
    if (w.size() != m) throw DomainError("window_graph needs equal-length words");
    index.emplace(slice(w, 0, m - 1), 0);
    index.emplace(slice(w, 1, m - 1), 0);
  }
  std::vector<Word> labels;
  for (auto& [label, id] : index) {
    id = static_cast<int>(labels.size());
    labels.push_back(label);
  }
  std::vector<Edge> edges;
  for (const auto& w : allowed) {
    edges.push_back({index.at(slice(w, 0, m - 1)), index.at(slice(w, 1, m - 1)), Word{w.back()}});
  }
  return LabeledDigraph(q, std::move(labels), std::move(edges));
}

std::set<Word> block_words(const LabeledDigraph& g, int n) {
  if (n < 1) throw DomainError("block_words needs n >= 1");
  const auto keep = essential_vertices(g);
  std::vector<char> alive(g.vertex_count(), 0);
  for (int v : keep) alive[static_cast<std::size_t>(v)] = 1;

  std::set<Word> out;
  Word path;
  std::function<void(int, int)> walk = [&](int v, int left) {
    if (left == 0) {
      out.insert(path);
      return;
    }
    for (auto idx : g.out_edges(v)) {
      const auto& e = g.edges()[idx];
      if (!alive[static_cast<std::size_t>(e.to)]) continue;
      const auto before = path.size();
      path.insert(path.end(), e.label.begin(), e.label.end());
      walk(e.to, left - 1);
      path.resize(before);
    }
  };
  for (int v : keep) walk(v, n);
  return out;
}

VerifyResult verify_recoverable(const LabeledDigraph& presentation, int k, int l) {
  if (k < 1 || l < 1) throw DomainError("verify_recoverable needs k, l >= 1");
  const auto uk = static_cast<std::size_t>(k);
  const auto ul = static_cast<std::size_t>(l);
  VerifyResult result;
  for (const auto& word : block_words(presentation, 2 * l + k)) {
    if (word.size() != 2 * ul + uk) {
      throw DomainError("verify_recoverable expects single-symbol edge labels");
    }
    auto key = std::make_pair(slice(word, 0, ul), slice(word, ul + uk, ul));
    Word mid = slice(word, ul, uk);
    auto [it, inserted] = result.table.emplace(key, mid);
    if (!inserted && it->second != mid) {
      result.conflict = Conflict{key.first, key.second, it->second, mid};
      result.recoverable = false;
      return result;
    }
  }
  result.recoverable = true;
  return result;
}

namespace {

int effective_alphabet(const LabeledDigraph& g) {
  std::set<Symbol> used;
  const auto keep = essential_vertices(g);
  std::vector<char> alive(g.vertex_count(), 0);
  for (int v : keep) alive[static_cast<std::size_t>(v)] = 1;
  for (const auto& e : g.edges()) {
    if (alive[static_cast<std::size_t>(e.from)] && alive[static_cast<std::size_t>(e.to)]) {
      used.insert(e.label.begin(), e.label.end());
    }
  }
  return static_cast<int>(used.size());
}

}  // namespace

RecoverableSystem make_system(const LabeledDigraph& presentation, int k, int l, std::string construction) {
  auto v = verify_recoverable(presentation, k, l);
  if (!v.recoverable) {
    const auto& c = *v.conflict;
    throw DomainError(construction + ": not (" + std::to_string(k) + "," + std::to_string(l) +
                      ")-recoverable, boundary (" + format_word(c.alpha) + "," + format_word(c.beta) +
                      ") admits " + format_word(c.w1) + " and " + format_word(c.w2));
  }
  RecoverableSystem s;
  s.params = {presentation.q(), k, l};
  s.presentation = presentation;
  s.table = std::move(v.table);
  s.provenance = {std::move(construction), effective_alphabet(presentation)};
  return s;
}

ForbiddenSet forbidden_set_of(const RecoverableSystem& s) {
  ForbiddenSet f{s.params.q, s.params.k, s.params.l, {}};
  const auto allowed = block_words(s.presentation, 2 * s.params.l + s.params.k);
  for (auto& w : all_words(f.q, f.window())) {
    if (!allowed.count(w)) f.words.insert(std::move(w));
  }
  return f;
}

double capacity(const LabeledDigraph& presentation) {
  const double lambda = perron_eigenvalue(adjacency(presentation));
  if (lambda <= 0.0) return kNoCapacity;
  if (presentation.q() == 1) return 0.0;
  return std::log(lambda) / std::log(static_cast<double>(presentation.q()));
}

double capacity(const RecoverableSystem& s) { return capacity(s.presentation); }

Rational upper_bound(int k, int l) {
  if (k < 1 || l < 1) throw DomainError("upper_bound needs k, l >= 1");
  const auto g = std::gcd(l, k + l);
  return {l / g, (k + l) / g};
}

// ---------------------------------------------------------------------------
// Explicit constructions

namespace {

// Presentation of a walk on `a` where the emitted symbol is the vertex index.
LabeledDigraph vertex_walk_presentation(int q, const AdjacencyMatrix& a) {
  std::vector<Word> labels;
  for (std::size_t i = 0; i < a.size(); ++i) labels.push_back(Word{static_cast<Symbol>(i)});
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a(i, j) > 0) edges.push_back({static_cast<int>(i), static_cast<int>(j), Word{static_cast<Symbol>(j)}});
    }
  }
  return LabeledDigraph(q, std::move(labels), std::move(edges));
}

}  // namespace

RecoverableSystem edge_cover_system(int t, EdgeCoverMode mode, int param) {
  if (t < 2 || param < 1) throw DomainError("edge_cover_system needs t >= 2 and a parameter >= 1");
  if (mode == EdgeCoverMode::power) {
    const int q = static_cast<int>(checked_pow(static_cast<std::uint64_t>(t), static_cast<std::size_t>(param + 1)));
    auto g = vertex_walk_presentation(q, adjacency(de_bruijn(t, param + 1)));
    return make_system(g, param, 1, "edgecover-power");
  }
  // Symbol s stands for the pair (s / t, s % t); the second coordinate of x_i
  // must equal the first coordinate of x_{i+l}.
  const int q = t * t;
  const auto l = static_cast<std::size_t>(param);
  std::set<Word> allowed;
  for (auto& w : all_words(q, l + 1)) {
    if (w.front() % t == w.back() / t) allowed.insert(std::move(w));
  }
  return make_system(window_graph(q, allowed), param, param, "edgecover-square");
}

RecoverableSystem marker_system(int q, int k) {
  if (q < 3) throw DomainError("marker_system needs q >= 3");
  if (k < 1) throw DomainError("marker_system needs k >= 1");
  const auto len = static_cast<std::size_t>(k + 2);
  auto block = [&](Symbol fill) {
    Word b(len, fill);
    b[0] = 2;
    return b;
  };
  const Word blocks[2] = {block(0), block(1)};
  std::set<Word> allowed;
  for (int mask = 0; mask < 8; ++mask) {
    Word seq;
    for (int i = 0; i < 3; ++i) {
      const auto& b = blocks[(mask >> i) & 1];
      seq.insert(seq.end(), b.begin(), b.end());
    }
    for (std::size_t i = 0; i + len + 1 <= seq.size(); ++i) allowed.insert(slice(seq, i, len + 1));
  }
  return make_system(window_graph(q, allowed), k, k + 1, "marker");
}

TruncationParams truncation_params(int q) {
  if (q <= 1) throw DomainError("truncated construction needs q >= 2");
  int t = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(q))));
  while (t * t < q) ++t;
  while (t > 1 && (t - 1) * (t - 1) >= q) --t;
  const int r = t * t - q;
  if (r > t) {
    throw DomainError("q=" + std::to_string(q) + " gives r=" + std::to_string(r) + " > t=" + std::to_string(t) +
                      "; no capacity formula for this range");
  }
  return {t, r};
}

namespace {

std::vector<int> truncation_keep(int t, int r) {
  const int n = t * t;
  std::vector<int> keep;
  for (int i = 0; i < n; ++i) {
    const bool drop = (r < t) ? (i >= n - r) : (i % t == t - 1);
    if (!drop) keep.push_back(i);
  }
  return keep;
}

}  // namespace

AdjacencyMatrix truncated_matrix(int q) {
  const auto [t, r] = truncation_params(q);
  return adjacency(de_bruijn(t, 2)).submatrix(truncation_keep(t, r));
}

RecoverableSystem truncated_debruijn_system(int q) {
  auto g = vertex_walk_presentation(q, truncated_matrix(q));
  return make_system(g, 1, 1, "truncated");
}

double capacity_formula(int q) {
  const auto [t, r] = truncation_params(q);
  const double tm1 = t - 1;
  const double lambda = 0.5 * (tm1 + std::sqrt(tm1 * tm1 + 4.0 * (t - r)));
  return std::log(lambda) / std::log(static_cast<double>(q));
}

// ---------------------------------------------------------------------------
// Recursive construction

double recursive_lower_bound(double cap, int q) {
  const double lq2 = std::log(static_cast<double>(q + 2));
  const double inv = 1.0 / (static_cast<double>(q) * q);
  return cap * std::log(static_cast<double>(q)) / lq2 + inv * std::log1p(inv) / lq2;
}

RecoverableSystem recursive_extend(const RecoverableSystem& s) {
  if (s.params.k != 1 || s.params.l != 1) throw DomainError("recursive_extend needs a (1,1)-recoverable system");
  if (!is_strongly_connected(s.presentation)) {
    throw DomainError("recursive_extend needs a strongly connected presentation");
  }
  const int q = s.params.q;
  auto words = block_words(s.presentation, 3);
  const auto pairs = window_graph(q, words);

  // Most visited pair vertex under the max-entropy measure: p = x o y.
  const auto pd = perron_vectors(adjacency(pairs));
  int best = 0;
  double best_mass = -1.0;
  for (std::size_t v = 0; v < pairs.vertex_count(); ++v) {
    const double mass = pd.left[v] * pd.right[v];
    if (mass > best_mass + 1e-12) {
      best_mass = mass;
      best = static_cast<int>(v);
    }
  }
  const Symbol a = pairs.vertex(best).label[0];
  const Symbol b = pairs.vertex(best).label[1];
  const Symbol alpha = q;
  const Symbol beta = q + 1;
  words.insert({a, b, alpha});
  words.insert({b, alpha, beta});
  words.insert({alpha, beta, a});
  words.insert({beta, a, b});
  return make_system(window_graph(q + 2, words), 1, 1, "recursive");
}

// ---------------------------------------------------------------------------
// Exhaustive search

RecoveryTable recovery_function(int q, int k, int l, std::uint64_t index) {
  const auto ul = static_cast<std::size_t>(l);
  const auto uk = static_cast<std::size_t>(k);
  const std::uint64_t ql = checked_pow(static_cast<std::uint64_t>(q), ul);
  const std::uint64_t qk = checked_pow(static_cast<std::uint64_t>(q), uk);
  RecoveryTable f;
  for (std::uint64_t pair = 0; pair < ql * ql; ++pair) {
    f[{index_word(pair / ql, q, ul), index_word(pair % ql, q, ul)}] = index_word(index % qk, q, uk);
    index /= qk;
  }
  return f;
}

ForbiddenSet forbidden_set_of_function(int q, int k, int l, const RecoveryTable& f) {
  ForbiddenSet out{q, k, l, {}};
  const auto middles = all_words(q, static_cast<std::size_t>(k));
  for (const auto& [key, keep] : f) {
    for (const auto& w : middles) {
      if (w != keep) out.words.insert(concat(concat(key.first, w), key.second));
    }
  }
  return out;
}

namespace {

std::uint64_t search_space(int q, int k, int l, std::uint64_t cap) {
  // q^(k * q^(2l)), refusing anything beyond `cap`.
  const std::uint64_t pairs = checked_pow(static_cast<std::uint64_t>(q), static_cast<std::size_t>(2 * l));
  const std::uint64_t digits = static_cast<std::uint64_t>(k) * pairs;
  std::uint64_t total = 1;
  for (std::uint64_t i = 0; i < digits; ++i) {
    if (q > 1 && total > cap / static_cast<std::uint64_t>(q)) {
      throw DomainError("exhaustive search space q^(k q^(2l)) exceeds the cap of " + std::to_string(cap));
    }
    total *= static_cast<std::uint64_t>(q);
  }
  if (total > cap) throw DomainError("exhaustive search space exceeds the cap of " + std::to_string(cap));
  return total;
}

}  // namespace

ExhaustiveResult exhaustive_max_capacity(int q, int k, int l, unsigned threads, std::uint64_t search_cap) {
  if (q < 1 || k < 1 || l < 1) throw DomainError("exhaustive_max_capacity needs q, k, l >= 1");
  const std::uint64_t total = search_space(q, k, l, search_cap);
  std::vector<double> caps(total, kNoCapacity);
  auto evaluate = [&](std::uint64_t i) {
    const auto f = forbidden_set_of_function(q, k, l, recovery_function(q, k, l, i));
    caps[i] = capacity(presentation_from_forbidden(f));
  };
  threads = std::max(1U, threads);
  if (threads == 1 || total < 2) {
    for (std::uint64_t i = 0; i < total; ++i) evaluate(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t i = w; i < total; i += threads) evaluate(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  // Sequential reduction keeps the answer independent of the thread count.
  ExhaustiveResult out;
  out.candidates = total;
  for (std::uint64_t i = 0; i < total; ++i) {
    if (i == 0 || caps[i] > out.capacity + 1e-12) {
      out.capacity = caps[i];
      out.function_index = i;
    }
  }
  const auto f = forbidden_set_of_function(q, k, l, recovery_function(q, k, l, out.function_index));
  out.witness = make_system(presentation_from_forbidden(f), k, l, "exhaustive");
  return out;
}

// ---------------------------------------------------------------------------
// Text formats

void write_forbidden(std::ostream& out, const ForbiddenSet& f) {
  out << f.q << ' ' << f.k << ' ' << f.l << '\n';
  for (const auto& w : f.words) out << format_word(w) << '\n';
}

ForbiddenSet read_forbidden(std::istream& in) {
  ForbiddenSet f;
  std::string line;
  if (!std::getline(in, line)) throw DomainError("forbidden set file is empty");
  std::istringstream header(line);
  if (!(header >> f.q >> f.k >> f.l)) throw DomainError("forbidden set header must be 'q k l'");
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    f.words.insert(parse_word(line.substr(first, last - first + 1)));
  }
  f.validate();
  return f;
}

void write_table(std::ostream& out, const RecoveryTable& t) {
  for (const auto& [key, w] : t) {
    out << format_word(key.first) << ' ' << format_word(key.second) << " -> " << format_word(w) << '\n';
  }
}

RecoveryTable read_table(std::istream& in) {
  RecoveryTable t;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ss(line);
    std::string a, b, arrow, w;
    if (!(ss >> a >> b >> arrow >> w) || arrow != "->") {
      throw DomainError("table line " + std::to_string(lineno) + " is not 'alpha beta -> w'");
    }
    t[{parse_word(a), parse_word(b)}] = parse_word(w);
  }
  return t;
}

}  // namespace recsys

#include "recsys/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace recsys {

// ---------------------------------------------------------------------------
// MarkovMeasure

int MarkovMeasure::index_of(const Word& label) const {
  auto it = std::lower_bound(states.begin(), states.end(), label);
  if (it == states.end() || *it != label) throw DomainError("unknown state " + format_word(label));
  return static_cast<int>(it - states.begin());
}

double MarkovMeasure::stationarity_residual() const {
  double worst = 0.0;
  for (std::size_t j = 0; j < size(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < size(); ++i) s += p[i] * P[i][j];
    worst = std::max(worst, std::abs(s - p[j]));
  }
  return worst;
}

void MarkovMeasure::validate(double tol) const {
  const std::size_t n = size();
  if (P.size() != n || p.size() != n) throw DomainError("measure dimensions disagree");
  if (!std::is_sorted(states.begin(), states.end())) throw DomainError("measure states must be sorted");
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (P[i].size() != n) throw DomainError("transition matrix is not square");
    double row = 0.0;
    for (double v : P[i]) {
      if (v < 0.0) throw DomainError("negative transition probability");
      row += v;
    }
    if (std::abs(row - 1.0) > tol) {
      throw DomainError("row " + std::to_string(i) + " of P sums to " + std::to_string(row));
    }
    if (p[i] < 0.0) throw DomainError("negative stationary probability");
    total += p[i];
  }
  if (std::abs(total - 1.0) > tol) throw DomainError("stationary vector does not sum to 1");
  if (stationarity_residual() > tol) throw DomainError("p is not stationary for P");
}

namespace {

Emission infer_emission(const LabeledDigraph& g) {
  if (g.label_length() == 0) return Emission::none;
  bool shift = true;
  bool block = true;
  for (const auto& e : g.edges()) {
    const auto& u = g.vertex(e.from).label;
    const auto& v = g.vertex(e.to).label;
    if (e.label != v) block = false;
    if (e.label.size() != 1 || !std::equal(u.begin() + 1, u.end(), v.begin()) || v.back() != e.label[0]) {
      shift = false;
    }
  }
  if (shift) return Emission::shift;
  if (block) return Emission::block;
  return Emission::none;
}

}  // namespace

MarkovMeasure max_entropy_measure(const LabeledDigraph& g, std::uint64_t log_base) {
  if (!is_strongly_connected(g)) throw DomainError("max_entropy_measure needs a strongly connected graph");
  const auto a = adjacency(g);
  const auto pd = perron_vectors(a);
  const std::size_t n = a.size();
  MarkovMeasure m;
  m.q = g.q();
  m.log_base = log_base ? log_base : static_cast<std::uint64_t>(g.q());
  m.emission = infer_emission(g);
  for (const auto& v : g.vertices()) m.states.push_back(v.label);
  m.P.assign(n, std::vector<double>(n, 0.0));
  m.p.assign(n, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    // (Ay)_u equals lambda y_u up to rounding; dividing by it keeps rows exact.
    double ay = 0.0;
    for (std::size_t v = 0; v < n; ++v) ay += static_cast<double>(a(u, v)) * pd.right[v];
    for (std::size_t v = 0; v < n; ++v) m.P[u][v] = static_cast<double>(a(u, v)) * pd.right[v] / ay;
    m.p[u] = pd.left[u] * pd.right[u];
  }
  double total = 0.0;
  for (double v : m.p) total += v;
  for (double& v : m.p) v /= total;
  m.validate();
  return m;
}

double entropy_rate(const MarkovMeasure& m) {
  double h = 0.0;
  for (std::size_t u = 0; u < m.size(); ++u) {
    if (m.p[u] == 0.0) continue;
    double row = 0.0;
    for (double v : m.P[u]) {
      if (v > 0.0) row -= v * std::log(v);
    }
    h += m.p[u] * row;
  }
  return h / std::log(static_cast<double>(m.log_base));
}

double cylinder_probability(const MarkovMeasure& m, const std::vector<Word>& states) {
  if (states.empty()) return 1.0;
  int prev = m.index_of(states.front());
  double prob = m.p[static_cast<std::size_t>(prev)];
  for (std::size_t i = 1; i < states.size(); ++i) {
    const int cur = m.index_of(states[i]);
    prob *= m.P[static_cast<std::size_t>(prev)][static_cast<std::size_t>(cur)];
    prev = cur;
  }
  return prob;
}

// ---------------------------------------------------------------------------
// Window marginals

namespace {

std::size_t state_label_length(const MarkovMeasure& m) {
  if (m.states.empty()) throw DomainError("empty measure");
  return m.states.front().size();
}

// Adds P(first `len` symbols after skipping `skip`) for block emission.
void accumulate_block(const MarkovMeasure& m, std::size_t skip, std::size_t len, WordDistribution& out,
                      double weight) {
  const std::size_t need = skip + len;
  Word spelled;
  std::function<void(std::size_t, double)> walk = [&](std::size_t u, double prob) {
    const auto before = spelled.size();
    spelled.insert(spelled.end(), m.states[u].begin(), m.states[u].end());
    if (spelled.size() >= need) {
      out.prob[word_index(slice(spelled, skip, len), m.q)] += weight * prob;
    } else {
      for (std::size_t v = 0; v < m.size(); ++v) {
        if (m.P[u][v] > 0.0) walk(v, prob * m.P[u][v]);
      }
    }
    spelled.resize(before);
  };
  for (std::size_t u = 0; u < m.size(); ++u) {
    if (m.p[u] > 0.0) walk(u, m.p[u]);
  }
}

void accumulate_shift(const MarkovMeasure& m, std::size_t n, WordDistribution& out) {
  const std::size_t L = state_label_length(m);
  if (n <= L) {
    for (std::size_t u = 0; u < m.size(); ++u) {
      out.prob[word_index(slice(m.states[u], 0, n), m.q)] += m.p[u];
    }
    return;
  }
  Word spelled;
  std::function<void(std::size_t, double)> walk = [&](std::size_t u, double prob) {
    if (spelled.size() == n) {
      out.prob[word_index(spelled, m.q)] += prob;
      return;
    }
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (m.P[u][v] <= 0.0) continue;
      spelled.push_back(m.states[v].back());
      walk(v, prob * m.P[u][v]);
      spelled.pop_back();
    }
  };
  for (std::size_t u = 0; u < m.size(); ++u) {
    if (m.p[u] <= 0.0) continue;
    spelled = m.states[u];
    walk(u, m.p[u]);
  }
}

WordDistribution empty_distribution(const MarkovMeasure& m, std::size_t n) {
  if (n == 0) throw DomainError("window length must be >= 1");
  return {m.q, n, std::vector<double>(checked_pow(static_cast<std::uint64_t>(m.q), n), 0.0)};
}

}  // namespace

WordDistribution window_marginal(const MarkovMeasure& m, std::size_t n) {
  auto out = empty_distribution(m, n);
  switch (m.emission) {
    case Emission::shift:
      accumulate_shift(m, n, out);
      break;
    case Emission::block:
      accumulate_block(m, 0, n, out, 1.0);
      break;
    case Emission::none:
      throw DomainError("measure states do not determine a symbol sequence");
  }
  return out;
}

WordDistribution symbol_marginal(const MarkovMeasure& m, std::size_t n) {
  if (m.emission != Emission::block) return window_marginal(m, n);
  auto out = empty_distribution(m, n);
  const std::size_t L = state_label_length(m);
  for (std::size_t phase = 0; phase < L; ++phase) {
    accumulate_block(m, phase, n, out, 1.0 / static_cast<double>(L));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conditional window entropies

double entropy_q(double x, int q) {
  if (x < 0.0 || x > 1.0) throw DomainError("entropy_q needs x in [0,1]");
  double h = 0.0;
  if (x > 0.0) h -= x * std::log(x);
  if (x < 1.0) h -= (1.0 - x) * std::log1p(-x);
  return h / std::log(static_cast<double>(q));
}

namespace {

template <typename Visit>
void for_each_boundary(const WordDistribution& window, int k, int l, Visit visit) {
  const auto uk = static_cast<std::size_t>(k);
  const auto ul = static_cast<std::size_t>(l);
  if (window.n != 2 * ul + uk) throw DomainError("window length must equal 2l+k");
  const auto middles = all_words(window.q, uk);
  for (const auto& alpha : all_words(window.q, ul)) {
    for (const auto& beta : all_words(window.q, ul)) {
      std::vector<double> probs;
      probs.reserve(middles.size());
      for (const auto& w : middles) probs.push_back(window[concat(concat(alpha, w), beta)]);
      visit(alpha, beta, middles, probs);
    }
  }
}

}  // namespace

WindowEntropyReport window_conditional_entropy(const WordDistribution& window, int k, int l) {
  WindowEntropyReport report;
  bool first = true;
  const double lq = std::log(static_cast<double>(window.q));
  for_each_boundary(window, k, l, [&](const Word& alpha, const Word& beta, const auto&, const auto& probs) {
    double total = 0.0;
    for (double v : probs) total += v;
    if (total <= 0.0) {
      report.zero_probability.emplace_back(alpha, beta);
      return;
    }
    double h = 0.0;
    for (double v : probs) {
      if (v > 0.0) h -= (v / total) * std::log(v / total);
    }
    h /= lq;
    report.entropy[{alpha, beta}] = h;
    if (first || h > report.max) {
      report.max = h;
      report.argmax = {alpha, beta};
      first = false;
    }
  });
  return report;
}

WindowEntropyReport window_conditional_entropy(const MarkovMeasure& m, int k, int l) {
  return window_conditional_entropy(window_marginal(m, static_cast<std::size_t>(2 * l + k)), k, l);
}

bool is_epsilon_recoverable(const MarkovMeasure& m, double epsilon, int k, int l, double tol) {
  return window_conditional_entropy(m, k, l).max <= epsilon + tol;
}

Decoded map_decoder(const WordDistribution& window, int k, int l, const Word& alpha, const Word& beta) {
  if (alpha.size() != static_cast<std::size_t>(l) || beta.size() != static_cast<std::size_t>(l)) {
    throw DomainError("boundary words must have length l");
  }
  const auto middles = all_words(window.q, static_cast<std::size_t>(k));
  double total = 0.0;
  Decoded best;
  double best_p = -1.0;
  for (const auto& w : middles) {
    const double v = window[concat(concat(alpha, w), beta)];
    total += v;
    if (v > best_p) {
      best_p = v;
      best.w = w;
    }
  }
  if (total <= 0.0) {
    throw DomainError("boundary (" + format_word(alpha) + "," + format_word(beta) + ") has probability 0");
  }
  best.prob = best_p / total;
  return best;
}

Decoded map_decoder(const MarkovMeasure& m, int k, int l, const Word& alpha, const Word& beta) {
  return map_decoder(window_marginal(m, static_cast<std::size_t>(2 * l + k)), k, l, alpha, beta);
}

// ---------------------------------------------------------------------------
// Construction 2

double delta_from_epsilon(double epsilon, int q, int k) {
  if (q < 2 || k < 1) throw DomainError("delta_from_epsilon needs q >= 2 and k >= 1");
  if (!(epsilon >= 0.0) || epsilon > k + 1e-12) {
    throw DomainError("epsilon must lie in [0, k]; got " + std::to_string(epsilon));
  }
  const double qk = std::pow(static_cast<double>(q), k);
  const double spread = std::log(qk - 1.0) / std::log(static_cast<double>(q));
  auto f = [&](double d) { return entropy_q(d, q) + d * spread; };
  double lo = 0.0;
  double hi = (qk - 1.0) / qk;
  if (epsilon <= 0.0) return 0.0;
  if (epsilon >= f(hi)) return hi;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < epsilon ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

EpsilonParams epsilon_params(double epsilon, int q, int k, int l) {
  EpsilonParams e{epsilon, q, k, l, delta_from_epsilon(epsilon, q, k), false};
  e.beyond_symbol_range = e.delta > static_cast<double>(q - 1) / q + 1e-15;
  return e;
}

EpsilonConstruction epsilon_construction(const RecoverableSystem& s, double epsilon) {
  const int q = s.params.q;
  const int k = s.params.k;
  const int l = s.params.l;
  const int n = 2 * l + k;
  EpsilonConstruction out;
  out.params = epsilon_params(epsilon, q, k, l);

  // Re-present on n-word vertices: the window graph of B_{n+1}.
  out.core = window_graph(q, block_words(s.presentation, n + 1));
  if (!is_strongly_connected(out.core)) {
    throw DomainError("epsilon_construction needs an irreducible system");
  }
  out.power = higher_power(out.core, n);
  if (!is_strongly_connected(out.power)) {
    throw DomainError("epsilon_construction: the " + std::to_string(n) + "-th power is reducible (period divides n)");
  }
  const std::uint64_t base = checked_pow(static_cast<std::uint64_t>(q), static_cast<std::size_t>(n));
  out.mu = max_entropy_measure(out.power, base);

  const auto ul = static_cast<std::size_t>(l);
  const auto uk = static_cast<std::size_t>(k);
  const auto middles = all_words(q, uk);
  std::vector<Word> labels;
  std::vector<int> base_of;
  for (std::size_t u = 0; u < out.mu.size(); ++u) {
    const Word& label = out.mu.states[u];
    for (const auto& w : middles) {
      Word x = concat(concat(slice(label, 0, ul), w), slice(label, ul + uk, ul));
      labels.push_back(std::move(x));
      base_of.push_back(static_cast<int>(u));
    }
  }
  std::vector<int> order(labels.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return labels[a] < labels[b]; });

  const double delta = out.params.delta;
  const double ghost_share = delta / (static_cast<double>(middles.size()) - 1.0);
  MarkovMeasure& nu = out.nu;
  nu.q = q;
  nu.log_base = base;
  nu.emission = Emission::block;
  std::vector<double> factor;
  for (int i : order) {
    const auto u = static_cast<std::size_t>(base_of[i]);
    nu.states.push_back(labels[i]);
    out.ghost_of.push_back(base_of[i]);
    factor.push_back(labels[i] == out.mu.states[u] ? 1.0 - delta : ghost_share);
  }
  const std::size_t nd = nu.states.size();
  nu.P.assign(nd, std::vector<double>(nd, 0.0));
  nu.p.assign(nd, 0.0);
  std::vector<Edge> edges;
  for (std::size_t x = 0; x < nd; ++x) {
    const auto bx = static_cast<std::size_t>(out.ghost_of[x]);
    nu.p[x] = out.mu.p[bx] * factor[x];
    for (std::size_t y = 0; y < nd; ++y) {
      const double pm = out.mu.P[bx][static_cast<std::size_t>(out.ghost_of[y])];
      if (pm <= 0.0) continue;
      nu.P[x][y] = pm * factor[y];
      edges.push_back({static_cast<int>(x), static_cast<int>(y), nu.states[y]});
    }
  }
  out.d = LabeledDigraph(q, nu.states, std::move(edges));
  nu.validate();
  return out;
}

MarkovMeasure markov_approximation(const WordDistribution& marginal, double tol) {
  const std::size_t m = marginal.n;
  const int q = marginal.q;
  if (m < 2) throw DomainError("markov_approximation needs marginals of length >= 2");
  const std::uint64_t qm1 = checked_pow(static_cast<std::uint64_t>(q), m - 1);
  const auto uq = static_cast<std::uint64_t>(q);
  std::vector<double> pre(qm1, 0.0), suf(qm1, 0.0);
  for (std::uint64_t i = 0; i < qm1 * uq; ++i) {
    pre[i / uq] += marginal.prob[i];
    suf[i % qm1] += marginal.prob[i];
  }
  for (std::uint64_t x = 0; x < qm1; ++x) {
    if (std::abs(pre[x] - suf[x]) > tol) {
      throw DomainError("inconsistent marginal at subword " + format_word(index_word(x, q, m - 1)) +
                        ": prefix mass " + std::to_string(pre[x]) + " vs suffix mass " + std::to_string(suf[x]));
    }
  }
  MarkovMeasure out;
  out.q = q;
  out.log_base = static_cast<std::uint64_t>(q);
  out.emission = Emission::shift;
  std::vector<int> pos(qm1, -1);
  for (std::uint64_t x = 0; x < qm1; ++x) {
    if (pre[x] > 0.0) {
      pos[x] = static_cast<int>(out.states.size());
      out.states.push_back(index_word(x, q, m - 1));
      out.p.push_back(pre[x]);
    }
  }
  const std::size_t n = out.states.size();
  out.P.assign(n, std::vector<double>(n, 0.0));
  for (std::uint64_t x = 0; x < qm1; ++x) {
    if (pos[x] < 0) continue;
    for (std::uint64_t a = 0; a < uq; ++a) {
      const double v = marginal.prob[x * uq + a];
      const int y = pos[(x * uq + a) % qm1];
      if (v > 0.0 && y >= 0) out.P[static_cast<std::size_t>(pos[x])][static_cast<std::size_t>(y)] = v / pre[x];
    }
  }
  double total = 0.0;
  for (double v : out.p) total += v;
  for (double& v : out.p) v /= total;
  out.validate(std::max(tol, 1e-12));
  return out;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* emission_name(Emission e) {
  switch (e) {
    case Emission::shift:
      return "shift";
    case Emission::block:
      return "block";
    case Emission::none:
      return "none";
  }
  return "none";
}

std::vector<double> parse_row(const std::string& line, std::size_t n) {
  std::vector<double> row;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      row.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw DomainError("bad number '" + cell + "' in measure file");
    }
  }
  if (row.size() != n) throw DomainError("measure row has " + std::to_string(row.size()) + " entries, expected " +
                                         std::to_string(n));
  return row;
}

}  // namespace

void write_measure(std::ostream& out, const MarkovMeasure& m) {
  out << "q " << m.q << '\n';
  out << "log_base " << m.log_base << '\n';
  out << "emission " << emission_name(m.emission) << '\n';
  out << "states " << m.size() << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) out << (i ? " " : "") << format_word(m.states[i]);
  out << "\nP\n";
  for (const auto& row : m.P) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << fmt(row[j]);
    out << '\n';
  }
  out << "p\n";
  for (std::size_t j = 0; j < m.p.size(); ++j) out << (j ? "," : "") << fmt(m.p[j]);
  out << '\n';
}

MarkovMeasure read_measure(std::istream& in) {
  MarkovMeasure m;
  std::string key, emission, line;
  std::size_t n = 0;
  if (!(in >> key >> m.q) || key != "q") throw DomainError("measure file: expected 'q'");
  if (!(in >> key >> m.log_base) || key != "log_base") throw DomainError("measure file: expected 'log_base'");
  if (!(in >> key >> emission) || key != "emission") throw DomainError("measure file: expected 'emission'");
  if (emission == "shift") {
    m.emission = Emission::shift;
  } else if (emission == "block") {
    m.emission = Emission::block;
  } else if (emission == "none") {
    m.emission = Emission::none;
  } else {
    throw DomainError("measure file: unknown emission " + emission);
  }
  if (!(in >> key >> n) || key != "states") throw DomainError("measure file: expected 'states'");
  for (std::size_t i = 0; i < n; ++i) {
    std::string w;
    if (!(in >> w)) throw DomainError("measure file: missing state labels");
    m.states.push_back(parse_word(w));
  }
  if (!(in >> key) || key != "P") throw DomainError("measure file: expected 'P'");
  std::getline(in, line);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw DomainError("measure file: truncated P");
    m.P.push_back(parse_row(line, n));
  }
  if (!(in >> key) || key != "p") throw DomainError("measure file: expected 'p'");
  std::getline(in, line);
  if (!std::getline(in, line)) throw DomainError("measure file: missing p");
  m.p = parse_row(line, n);
  m.validate();
  return m;
}

}  // namespace recsys

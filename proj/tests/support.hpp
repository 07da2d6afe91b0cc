#pragma once

// Test-only oracles. None of these call into the code paths they check:
// counts come from brute-force word enumeration, spectra from Eigen, and the
// frozen constants from tests/oracles/derive_values.py (mpmath, 40 digits).

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "recsys/graph.hpp"
#include "recsys/systems.hpp"

namespace oracle {

using recsys::Word;

// --- frozen values (tests/oracles/derive_values.py) ---
inline constexpr double kPlastic = 1.32471795724474602596;
inline constexpr double kLog2Plastic = 0.405685231375824546;
inline constexpr double kAppendixLambda = 2.324717957244746;
inline const std::vector<double> kAppendixP = {0.17700882267470847, 0.41149558866264576, 0.17700882267470847,
                                               0.23448676598793729};
inline const std::vector<std::vector<double>> kAppendixPmu = {
    {0.43015970900194673, 0.56984029099805327, 0.0, 0.0},
    {0.0, 0.43015970900194673, 0.24512233375330724, 0.32471795724474603},
    {0.0, 0.0, 0.43015970900194673, 0.56984029099805327},
    {0.43015970900194673, 0.56984029099805327, 0.0, 0.0}};
inline constexpr double kDelta0286 = 0.049906583972375727;
inline const std::vector<std::int64_t> kPerrin0to15 = {3, 0, 2, 3, 2, 5, 5, 7, 10, 12, 17, 22, 29, 39, 51, 68};
inline constexpr std::int64_t kPerrin40 = 76725;
inline constexpr std::int64_t kPerrin60 = 21252274;
inline constexpr double kMarker31 = 0.21030991785715248;
inline constexpr double kMarker32 = 0.15773243839286436;
inline constexpr double kRecursive6 = 0.38896751008869177;
inline constexpr double kLog6of2 = 0.38685280723454159;
inline constexpr double kTruncated8 = 0.48332810449216528;

// --- values printed in the paper (rounded there) ---
inline const std::vector<double> kPaperMu = {0.177, 0.411, 0.177, 0.235};
inline const std::vector<std::vector<double>> kPaperPmu = {
    {0.43, 0.57, 0, 0}, {0, 0.43, 0.245, 0.325}, {0, 0, 0.43, 0.57}, {0.43, 0.57, 0, 0}};
// Eq. (22) as coefficient pairs (c_delta, c_delta_bar): entry = c_d * delta + c_db * (1 - delta).
struct Coef {
  double d, db;
};
inline const std::vector<std::vector<Coef>> kPaperPnu = {
    {{0.43, 0}, {0, 0}, {0, 0.43}, {0, 0}, {0, 0.245}, {0, 0.325}, {0.245, 0}, {0.325, 0}},
    {{0.57, 0}, {0, 0.43}, {0, 0.57}, {0.43, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}},
    {{0.43, 0}, {0, 0}, {0, 0.43}, {0, 0}, {0, 0.245}, {0, 0.325}, {0.245, 0}, {0.325, 0}},
    {{0.57, 0}, {0, 0.43}, {0, 0.57}, {0.43, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}},
    {{0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0.43}, {0, 0.57}, {0.43, 0}, {0.57, 0}},
    {{0.57, 0}, {0, 0.43}, {0, 0.57}, {0.43, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}},
    {{0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0.43}, {0, 0.57}, {0.43, 0}, {0.57, 0}},
    {{0.57, 0}, {0, 0.43}, {0, 0.57}, {0.43, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}};
inline const std::vector<double> kPaperPnuApprox = {0.02, 0.168, 0.391, 0.009, 0.168, 0.223, 0.009, 0.012};

inline std::set<Word> binary_forbidden() { return {{0, 0, 0}, {1, 1, 1}, {1, 1, 0}, {0, 1, 1}}; }

inline bool has_forbidden_window(const Word& w, const std::set<Word>& forbidden, std::size_t n, std::size_t from = 0) {
  for (std::size_t i = from; i + n <= w.size(); ++i) {
    if (forbidden.count(Word(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i + n)))) {
      return true;
    }
  }
  return false;
}

// Number of w in [q]^len for which some x in [q]^(n-1) makes x.w free of
// forbidden n-windows. Extending a rejected word never helps, so dead
// branches are cut.
inline std::uint64_t brute_prefix_count(int q, int len, const std::set<Word>& forbidden, std::size_t n) {
  std::vector<Word> prefixes;
  {
    Word x(n - 1, 0);
    std::function<void(std::size_t)> gen = [&](std::size_t i) {
      if (i == x.size()) {
        prefixes.push_back(x);
        return;
      }
      for (int a = 0; a < q; ++a) {
        x[i] = a;
        gen(i + 1);
      }
    };
    gen(0);
  }
  std::uint64_t count = 0;
  std::function<void(std::vector<Word>&, int)> dfs = [&](std::vector<Word>& alive, int depth) {
    if (depth == len) {
      ++count;
      return;
    }
    for (int a = 0; a < q; ++a) {
      std::vector<Word> next;
      for (const auto& s : alive) {
        Word t = s;
        t.push_back(a);
        if (!forbidden.count(Word(t.end() - static_cast<std::ptrdiff_t>(n), t.end()))) next.push_back(t);
      }
      if (!next.empty()) dfs(next, depth + 1);
    }
  };
  dfs(prefixes, 0);
  return count;
}

// Words w of length len whose periodic extension w^Z avoids every forbidden window.
inline std::set<Word> brute_periodic_words(int q, int len, const std::set<Word>& forbidden, std::size_t n) {
  std::set<Word> out;
  Word w(static_cast<std::size_t>(len), 0);
  std::function<void(std::size_t)> gen = [&](std::size_t i) {
    if (i == w.size()) {
      Word rep;
      while (rep.size() < w.size() + n) rep.insert(rep.end(), w.begin(), w.end());
      bool ok = true;
      for (std::size_t s = 0; s < w.size() && ok; ++s) {
        ok = !forbidden.count(Word(rep.begin() + static_cast<std::ptrdiff_t>(s),
                                   rep.begin() + static_cast<std::ptrdiff_t>(s + n)));
      }
      if (ok) out.insert(w);
      return;
    }
    for (int a = 0; a < q; ++a) {
      w[i] = a;
      gen(i + 1);
    }
  };
  gen(0);
  return out;
}

// Distinct edge-label sequences of all length-len paths, by explicit enumeration.
inline std::uint64_t dfs_path_labels(const recsys::LabeledDigraph& g, int len) {
  std::set<std::vector<Word>> seen;
  std::vector<Word> path;
  std::function<void(int, int)> walk = [&](int v, int d) {
    if (d == len) {
      seen.insert(path);
      return;
    }
    for (auto idx : g.out_edges(v)) {
      path.push_back(g.edges()[idx].label);
      walk(g.edges()[idx].to, d + 1);
      path.pop_back();
    }
  };
  for (int v = 0; v < static_cast<int>(g.vertex_count()); ++v) walk(v, 0);
  return seen.size();
}

// Spectral radius as the maximum over irreducible diagonal blocks, found by
// transitive closure. Within a block the Perron root is simple, which keeps
// Eigen's nonsymmetric solver accurate even when A itself is defective.
inline double eigen_radius(const recsys::AdjacencyMatrix& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) reach[i][j] = a(i, j) > 0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) reach[i][j] |= reach[i][k] && reach[k][j];
  double r = 0.0;
  std::vector<char> done(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (done[i] || !reach[i][i]) continue;
    std::vector<std::size_t> block;
    for (std::size_t j = 0; j < n; ++j) {
      if (reach[i][j] && reach[j][i]) {
        block.push_back(j);
        done[j] = 1;
      }
    }
    const auto m = static_cast<Eigen::Index>(block.size());
    Eigen::MatrixXd sub(m, m);
    for (Eigen::Index x = 0; x < m; ++x)
      for (Eigen::Index y = 0; y < m; ++y)
        sub(x, y) = static_cast<double>(a(block[static_cast<std::size_t>(x)], block[static_cast<std::size_t>(y)]));
    Eigen::EigenSolver<Eigen::MatrixXd> es(sub, false);
    for (Eigen::Index x = 0; x < m; ++x) r = std::max(r, std::abs(es.eigenvalues()[x]));
  }
  return r;
}

inline double bisect_plastic() {
  double lo = 1.0, hi = 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid * mid * mid - mid - 1.0 < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline std::vector<std::int64_t> perrin_by_recursion(int n) {
  std::vector<std::int64_t> z = {3, 0, 2};
  while (static_cast<int>(z.size()) <= n) z.push_back(z[z.size() - 2] + z[z.size() - 3]);
  return z;
}

inline recsys::AdjacencyMatrix random_matrix(std::mt19937& rng, std::size_t n, double density, int max_entry = 1) {
  std::bernoulli_distribution edge(density);
  std::uniform_int_distribution<int> mult(1, max_entry);
  recsys::AdjacencyMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (edge(rng)) a(i, j) = mult(rng);
    }
  }
  return a;
}

inline std::set<Word> random_forbidden(std::mt19937& rng, int q, std::size_t n, double density) {
  std::bernoulli_distribution pick(density);
  std::set<Word> out;
  for (auto& w : recsys::all_words(q, n)) {
    if (pick(rng)) out.insert(std::move(w));
  }
  return out;
}

inline recsys::AdjacencyMatrix perrin_matrix() {
  return recsys::AdjacencyMatrix::from_rows({{0, 1, 1}, {0, 0, 1}, {1, 0, 0}});
}

}  // namespace oracle

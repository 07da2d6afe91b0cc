#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

#include "recsys/graph.hpp"
#include "recsys/systems.hpp"

namespace recsys {

/// How a state sequence spells a symbol sequence.
///   shift: each state label is the last L symbols; a step emits one symbol.
///   block: each state emits its whole label; a step emits L symbols.
///   none:  labels are opaque; only state-level quantities are available.
enum class Emission { shift, block, none };

/// Markov chain on labelled states with its stationary vector. Entropies are
/// reported in units of log(log_base).
struct MarkovMeasure {
  int q = 2;
  std::vector<Word> states;
  std::vector<std::vector<double>> P;
  std::vector<double> p;
  std::uint64_t log_base = 2;
  Emission emission = Emission::shift;

  std::size_t size() const { return states.size(); }
  int index_of(const Word& label) const;
  /// Throws DomainError unless rows sum to 1, p sums to 1 and pP = p (tol 1e-12).
  void validate(double tol = 1e-12) const;
  /// max_j |(pP)_j - p_j|
  double stationarity_residual() const;
};

/// Dense distribution over [q]^n, indexed by word_index.
struct WordDistribution {
  int q = 2;
  std::size_t n = 0;
  std::vector<double> prob;

  double operator[](const Word& w) const { return prob[word_index(w, q)]; }
};

/// Construction 1: P_uv = A_uv y_v / (lambda y_u), p = x o y with x^T y = 1.
/// Entropy in base q unless `log_base` is given.
MarkovMeasure max_entropy_measure(const LabeledDigraph& g, std::uint64_t log_base = 0);

double entropy_rate(const MarkovMeasure& m);
double cylinder_probability(const MarkovMeasure& m, const std::vector<Word>& states);

/// Law of the n symbols starting at a block boundary (block emission) or at
/// any time (shift emission).
WordDistribution window_marginal(const MarkovMeasure& m, std::size_t n);
/// Shift-invariant law of n consecutive symbols: block emissions are averaged
/// over the L possible phases.
WordDistribution symbol_marginal(const MarkovMeasure& m, std::size_t n);

struct WindowEntropyReport {
  std::map<std::pair<Word, Word>, double> entropy;
  std::vector<std::pair<Word, Word>> zero_probability;
  double max = 0.0;
  std::pair<Word, Word> argmax;
};

WindowEntropyReport window_conditional_entropy(const WordDistribution& window, int k, int l);
WindowEntropyReport window_conditional_entropy(const MarkovMeasure& m, int k, int l);
bool is_epsilon_recoverable(const MarkovMeasure& m, double epsilon, int k, int l, double tol = 1e-10);

/// H_q(x) with 0 log 0 = 0.
double entropy_q(double x, int q);

struct EpsilonParams {
  double epsilon = 0.0;
  int q = 2;
  int k = 1;
  int l = 1;
  double delta = 0.0;
  /// delta > (q-1)/q, outside the range the k=1 analysis covers.
  bool beyond_symbol_range = false;
};

/// Solves H_q(delta) + delta log_q(q^k - 1) = epsilon on [0, (q^k-1)/q^k].
double delta_from_epsilon(double epsilon, int q, int k);
EpsilonParams epsilon_params(double epsilon, int q, int k, int l);

struct EpsilonConstruction {
  EpsilonParams params;
  LabeledDigraph core;   // presentation on (2l+k)-word windows
  LabeledDigraph power;  // core^(2l+k)
  LabeledDigraph d;      // power plus q^k - 1 ghosts per vertex
  MarkovMeasure mu;      // max-entropy measure on `power`, base q^(2l+k)
  MarkovMeasure nu;      // perturbed measure on `d`, base q^(2l+k)
  std::vector<int> ghost_of;  // per state of nu: index of its real vertex in mu
};

EpsilonConstruction epsilon_construction(const RecoverableSystem& s, double epsilon);

/// Order-(m-1) Markov measure with the given length-m marginal. Throws
/// DomainError naming the (m-1)-word whose prefix and suffix marginals disagree.
MarkovMeasure markov_approximation(const WordDistribution& marginal, double tol = 1e-12);

struct Decoded {
  Word w;
  double prob = 0.0;
};
Decoded map_decoder(const WordDistribution& window, int k, int l, const Word& alpha, const Word& beta);
Decoded map_decoder(const MarkovMeasure& m, int k, int l, const Word& alpha, const Word& beta);

void write_measure(std::ostream& out, const MarkovMeasure& m);
MarkovMeasure read_measure(std::istream& in);

}  // namespace recsys

#include "recsys/storage.hpp"

#include <cmath>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace recsys {

PeriodicPoints periodic_points(const LabeledDigraph& g, int n, std::uint64_t cap) {
  if (n < 1) throw DomainError("periodic_points needs n >= 1");
  PeriodicPoints out;
  out.count = trace_power(adjacency(g), n);
  if (out.count > cap) return out;

  std::set<Word> words;
  Word path;
  int start = 0;
  std::function<void(int, int)> walk = [&](int v, int depth) {
    if (depth == n) {
      if (v == start) words.insert(path);
      return;
    }
    for (auto idx : g.out_edges(v)) {
      const auto& e = g.edges()[idx];
      const auto before = path.size();
      path.insert(path.end(), e.label.begin(), e.label.end());
      walk(e.to, depth + 1);
      path.resize(before);
    }
  };
  for (start = 0; start < static_cast<int>(g.vertex_count()); ++start) walk(start, 0);
  out.words = std::move(words);
  return out;
}

BigCount perrin_count(int n) {
  if (n < 0) throw DomainError("perrin_count needs n >= 0");
  BigCount z[3] = {3, 0, 2};
  if (n < 3) return z[n];
  for (int i = 3; i <= n; ++i) {
    BigCount next = z[1] + z[0];
    z[0] = z[1];
    z[1] = z[2];
    z[2] = next;
  }
  return z[2];
}

double CycleStorageCode::rate() const {
  if (codewords.empty()) return -INFINITY;
  if (q == 1) return 0.0;
  return std::log(static_cast<double>(codewords.size())) / (n * std::log(static_cast<double>(q)));
}

CycleStorageCode storage_code_for_cycle(const RecoverableSystem& s, int n, std::uint64_t cap) {
  if (s.params.k != 1 || s.params.l != 1) throw DomainError("storage codes on cycles need a (1,1)-recoverable system");
  if (n < 3) throw DomainError("a cycle needs n >= 3 so that both neighbours are distinct");
  auto pts = periodic_points(s.presentation, n, cap);
  if (!pts.words) {
    throw DomainError("periodic point count " + pts.count.str() + " exceeds the enumeration cap " + std::to_string(cap));
  }
  CycleStorageCode c;
  c.n = n;
  c.q = s.params.q;
  c.codewords = std::move(*pts.words);
  c.table = s.table;
  return c;
}

StorageVerifyResult verify_storage_code(const CycleStorageCode& c) {
  for (const auto& w : c.codewords) {
    if (w.size() != static_cast<std::size_t>(c.n)) return {false, StorageViolation{w, 0}};
    for (int i = 0; i < c.n; ++i) {
      const Word left{w[static_cast<std::size_t>((i + c.n - 1) % c.n)]};
      const Word right{w[static_cast<std::size_t>((i + 1) % c.n)]};
      auto it = c.table.find({left, right});
      if (it == c.table.end() || it->second != Word{w[static_cast<std::size_t>(i)]}) {
        return {false, StorageViolation{w, i}};
      }
    }
  }
  return {true, std::nullopt};
}

bool is_shift_closed(const CycleStorageCode& c) {
  for (const auto& w : c.codewords) {
    if (w.empty()) continue;
    Word shifted(w.begin() + 1, w.end());
    shifted.push_back(w.front());
    if (!c.codewords.count(shifted)) return false;
  }
  return true;
}

void write_code(std::ostream& out, const CycleStorageCode& c) {
  out << c.n << ' ' << c.q << '\n';
  for (const auto& w : c.codewords) out << format_word(w) << '\n';
}

CycleStorageCode read_code(std::istream& in, const RecoveryTable& table) {
  CycleStorageCode c;
  std::string line;
  if (!std::getline(in, line)) throw DomainError("code file is empty");
  std::istringstream header(line);
  if (!(header >> c.n >> c.q)) throw DomainError("code header must be 'n q'");
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    c.codewords.insert(parse_word(line.substr(first, last - first + 1)));
  }
  c.table = table;
  return c;
}

}  // namespace recsys

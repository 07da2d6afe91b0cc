#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "recsys/graph_io.hpp"
#include "recsys/measures.hpp"
#include "recsys/storage.hpp"
#include "recsys/systems.hpp"

namespace recsys::cli {

namespace {

struct RunConfig {
  std::string mode;        // positional: construction / measure mode / report kind
  std::string variant;     // --mode
  std::optional<int> q, k, l, n, t, r;
  std::optional<double> eps;
  std::string q_range;     // report bounds
  std::string in, out;
  std::string format = "table";
  unsigned threads = 1;
  double tol = 1e-10;
  bool seed_table = false;
  bool core = false;
};

std::string num(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// key/value report rendered as "key: value" lines or a two-line CSV.
class Report {
 public:
  void add(std::string key, std::string value) { rows_.emplace_back(std::move(key), std::move(value)); }
  void add(std::string key, double value) { add(std::move(key), num(value)); }
  void add(std::string key, long long value) { add(std::move(key), std::to_string(value)); }

  void print(std::ostream& out, const std::string& format) const {
    if (format == "csv") {
      for (std::size_t i = 0; i < rows_.size(); ++i) out << (i ? "," : "") << rows_[i].first;
      out << '\n';
      for (std::size_t i = 0; i < rows_.size(); ++i) out << (i ? "," : "") << rows_[i].second;
      out << '\n';
      return;
    }
    for (const auto& [k, v] : rows_) out << k << ": " << v << '\n';
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

int need(const std::optional<int>& v, const char* flag) {
  if (!v) throw DomainError(std::string("missing required flag ") + flag);
  return *v;
}

std::string sidecar(const std::string& path, const std::string& ext) {
  return std::filesystem::path(path).replace_extension(ext).string();
}

void save_system(const RunConfig& cfg, const RecoverableSystem& s) {
  if (cfg.out.empty()) return;
  save_graph(cfg.out + ".json", s.presentation);
  std::ostringstream table;
  write_table(table, s.table);
  write_file(cfg.out + ".table", table.str());
}

std::string rational(const Rational& r) { return std::to_string(r.num) + "/" + std::to_string(r.den); }

void describe_system(Report& rep, const RecoverableSystem& s) {
  rep.add("construction", s.provenance.construction);
  rep.add("q", static_cast<long long>(s.params.q));
  rep.add("k", static_cast<long long>(s.params.k));
  rep.add("l", static_cast<long long>(s.params.l));
  rep.add("capacity", capacity(s));
  rep.add("log_base", static_cast<long long>(s.params.q));
  rep.add("upper_bound", rational(upper_bound(s.params.k, s.params.l)));
  rep.add("effective_alphabet", static_cast<long long>(s.provenance.effective_alphabet));
  rep.add("vertices", static_cast<long long>(s.presentation.vertex_count()));
  rep.add("verified", "PASS");
}

// Seed for the recursive chain: the largest square t^2 <= q with q - t^2 even.
std::optional<int> recursive_seed(int q) {
  int t = static_cast<int>(std::sqrt(static_cast<double>(q)));
  while ((t + 1) * (t + 1) <= q) ++t;
  while (t * t > q) --t;
  if (t < 2 || (q - t * t) % 2 != 0) return std::nullopt;
  return t;
}

int cmd_construct(const RunConfig& cfg, std::ostream& out) {
  Report rep;
  if (cfg.mode == "debruijn") {
    const int q = need(cfg.q, "--q");
    const int d = cfg.n.value_or(2);
    auto g = de_bruijn(q, d);
    if (!cfg.out.empty()) save_graph(cfg.out + ".json", g);
    rep.add("construction", "debruijn");
    rep.add("q", static_cast<long long>(q));
    rep.add("order", static_cast<long long>(d));
    rep.add("capacity", capacity(g));
    rep.add("log_base", static_cast<long long>(q));
    rep.add("vertices", static_cast<long long>(g.vertex_count()));
    rep.print(out, cfg.format);
    return kPass;
  }

  RecoverableSystem s;
  if (cfg.mode == "truncated") {
    int q = 0;
    if (cfg.q) {
      q = *cfg.q;
    } else {
      q = need(cfg.t, "--t or --q") * *cfg.t - cfg.r.value_or(0);
    }
    s = truncated_debruijn_system(q);
  } else if (cfg.mode == "marker") {
    s = marker_system(cfg.q.value_or(3), cfg.k.value_or(1));
  } else if (cfg.mode == "edgecover") {
    const int t = need(cfg.t, "--t");
    if (cfg.variant.empty() || cfg.variant == "square") {
      s = edge_cover_system(t, EdgeCoverMode::square, cfg.l.value_or(1));
    } else if (cfg.variant == "power") {
      s = edge_cover_system(t, EdgeCoverMode::power, cfg.k.value_or(1));
    } else {
      throw DomainError("--mode must be square or power");
    }
  } else if (cfg.mode == "recursive") {
    if (!cfg.in.empty()) {
      s = recursive_extend(make_system(load_graph(cfg.in), 1, 1, "input"));
    } else {
      const int q = need(cfg.q, "--q or --in");
      const auto seed = recursive_seed(q);
      if (!seed || *seed * *seed == q) {
        throw DomainError("q=" + std::to_string(q) + " is not a square plus a positive even number");
      }
      s = edge_cover_system(*seed, EdgeCoverMode::square, 1);
      while (s.params.q < q) s = recursive_extend(s);
    }
  } else if (cfg.mode == "exhaustive") {
    s = exhaustive_max_capacity(need(cfg.q, "--q"), cfg.k.value_or(1), cfg.l.value_or(1), cfg.threads).witness;
  } else {
    throw DomainError("unknown construction '" + cfg.mode + "'");
  }
  save_system(cfg, s);
  describe_system(rep, s);
  rep.print(out, cfg.format);
  return kPass;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  if (cfg.in.empty()) throw DomainError("verify needs --in");
  const std::string mode = cfg.variant.empty() ? "system" : cfg.variant;
  if (mode == "system") {
    const int k = cfg.k.value_or(1);
    const int l = cfg.l.value_or(1);
    auto g = load_graph(cfg.in);
    auto res = verify_recoverable(g, k, l);
    if (!res.recoverable) {
      const auto& c = *res.conflict;
      out << "FAIL: boundary (" << format_word(c.alpha) << ", " << format_word(c.beta) << ") admits "
          << format_word(c.w1) << " and " << format_word(c.w2) << '\n';
      return kFail;
    }
    const auto table_path = sidecar(cfg.in, ".table");
    if (std::filesystem::exists(table_path)) {
      std::istringstream ts(read_file(table_path));
      for (const auto& [key, w] : read_table(ts)) {
        auto it = res.table.find(key);
        if (it != res.table.end() && it->second != w) {
          out << "FAIL: table maps (" << format_word(key.first) << ", " << format_word(key.second) << ") to "
              << format_word(w) << " but the system forces " << format_word(it->second) << '\n';
          return kFail;
        }
      }
    }
    out << "PASS: (" << k << "," << l << ")-recoverable, " << res.table.size() << " boundary pairs\n";
    return kPass;
  }
  if (mode == "forbidden") {
    std::istringstream fs(read_file(cfg.in));
    const auto f = read_forbidden(fs);
    const bool admissible = is_admissible(f);
    auto res = verify_recoverable(presentation_from_forbidden(f), f.k, f.l);
    out << "admissible: " << (admissible ? "yes" : "no") << '\n';
    if (!res.recoverable) {
      const auto& c = *res.conflict;
      out << "FAIL: boundary (" << format_word(c.alpha) << ", " << format_word(c.beta) << ") admits "
          << format_word(c.w1) << " and " << format_word(c.w2) << '\n';
      return kFail;
    }
    out << "PASS: (" << f.k << "," << f.l << ")-recoverable\n";
    return kPass;
  }
  if (mode == "code") {
    std::istringstream ts(read_file(sidecar(cfg.in, ".table")));
    const auto table = read_table(ts);
    std::istringstream cs(read_file(cfg.in));
    const auto code = read_code(cs, table);
    const auto res = verify_storage_code(code);
    if (!res.ok) {
      out << "FAIL: codeword " << format_word(res.violation->codeword) << " position " << res.violation->position
          << '\n';
      return kFail;
    }
    if (!is_shift_closed(code)) {
      out << "FAIL: code is not closed under cyclic shift\n";
      return kFail;
    }
    out << "PASS: " << code.codewords.size() << " codewords, rate " << num(code.rate()) << " (log base " << code.q
        << ")\n";
    return kPass;
  }
  throw DomainError("verify --mode must be system, forbidden or code");
}

RecoverableSystem measure_input(const RunConfig& cfg) {
  const int k = cfg.k.value_or(1);
  const int l = cfg.l.value_or(1);
  if (!cfg.in.empty()) return make_system(load_graph(cfg.in), k, l, "input");
  return exhaustive_max_capacity(need(cfg.q, "--q or --in"), k, l, cfg.threads).witness;
}

int cmd_measure(const RunConfig& cfg, std::ostream& out) {
  Report rep;
  if (cfg.mode == "maxent") {
    if (cfg.in.empty()) throw DomainError("measure maxent needs --in");
    auto g = load_graph(cfg.in);
    if (cfg.core) g = core_subgraph(g);
    const auto mu = max_entropy_measure(g);
    if (!cfg.out.empty()) {
      std::ostringstream ms;
      write_measure(ms, mu);
      write_file(cfg.out, ms.str());
    }
    rep.add("h_mu", entropy_rate(mu));
    rep.add("capacity", capacity(g));
    rep.add("log_base", static_cast<long long>(mu.log_base));
    rep.add("states", static_cast<long long>(mu.size()));
    rep.print(out, cfg.format);
    return kPass;
  }
  if (cfg.mode == "epsilon") {
    if (!cfg.eps) throw DomainError("measure epsilon needs --eps");
    const auto s = measure_input(cfg);
    const auto ec = epsilon_construction(s, *cfg.eps);
    if (!cfg.out.empty()) {
      std::ostringstream ms;
      write_measure(ms, ec.nu);
      write_file(cfg.out, ms.str());
    }
    const int n = 2 * s.params.l + s.params.k;
    const double h_mu = entropy_rate(ec.mu);
    const double h_nu = entropy_rate(ec.nu);
    const auto report = window_conditional_entropy(ec.nu, s.params.k, s.params.l);
    rep.add("epsilon", *cfg.eps);
    rep.add("delta", ec.params.delta);
    rep.add("delta_beyond_symbol_range", ec.params.beyond_symbol_range ? "yes" : "no");
    rep.add("h_mu", h_mu);
    rep.add("h_nu", h_nu);
    rep.add("gain", h_nu - h_mu);
    rep.add("gain_expected", *cfg.eps / n);
    rep.add("log_base", static_cast<long long>(ec.nu.log_base));
    rep.add("window_entropy_max", report.max);
    rep.add("window_entropy_log_base", static_cast<long long>(s.params.q));
    rep.add("epsilon_recoverable", report.max <= *cfg.eps + cfg.tol ? "yes" : "no");
    rep.add("stationarity_residual", ec.nu.stationarity_residual());
    rep.print(out, cfg.format);
    return kPass;
  }
  throw DomainError("unknown measure mode '" + cfg.mode + "'");
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw DomainError("--q range must look like 9..16");
  }
}

int cmd_report(const RunConfig& cfg, std::ostream& out) {
  if (cfg.mode != "bounds") throw DomainError("unknown report '" + cfg.mode + "'");
  std::string range = cfg.q_range;
  if (range.empty()) {
    if (!cfg.seed_table) throw DomainError("report bounds needs --q LO..HI or --seed-table");
    range = "9..16";
  }
  const auto [lo, hi] = parse_range(range);
  if (lo < 2 || hi < lo) throw DomainError("report bounds needs 2 <= LO <= HI");
  out << "q,eq11_bound,recursive_bound,upper_bound\n";
  for (int q = lo; q <= hi; ++q) {
    std::string eq11, rec;
    try {
      eq11 = num(capacity_formula(q));
    } catch (const DomainError&) {
      // r > t: no formula
    }
    if (auto seed = recursive_seed(q)) {
      double b = 0.5;
      for (int p = *seed * *seed; p < q; p += 2) b = recursive_lower_bound(b, p);
      rec = num(b);
    }
    out << q << ',' << eq11 << ',' << rec << ',' << num(upper_bound(1, 1).value()) << '\n';
  }
  return kPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constructs, verifies and measures (k,l)-recoverable systems."};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--q", cfg.q, "alphabet size");
    sub->add_option("--k", cfg.k, "window length");
    sub->add_option("--l", cfg.l, "neighbourhood length");
    sub->add_option("--n", cfg.n, "order / cycle length");
    sub->add_option("--t", cfg.t, "base alphabet for square-type constructions");
    sub->add_option("--r", cfg.r, "truncation amount (q = t^2 - r)");
    sub->add_option("--eps", cfg.eps, "entropy budget epsilon");
    sub->add_option("--mode", cfg.variant, "construction or verification variant");
    sub->add_option("--in", cfg.in, "input file");
    sub->add_option("--out", cfg.out, "output path or prefix");
    sub->add_option("--format", cfg.format, "table or csv")->check(CLI::IsMember({"table", "csv"}));
    sub->add_option("--threads", cfg.threads, "worker threads");
    sub->add_option("--tol", cfg.tol, "tolerance override");
  };

  auto* construct = app.add_subcommand("construct", "build a system and print its capacity");
  construct->add_option("kind", cfg.mode, "debruijn|truncated|marker|edgecover|recursive|exhaustive")->required();
  add_common(construct);

  auto* verify = app.add_subcommand("verify", "check recoverability of a system, forbidden set or storage code");
  add_common(verify);

  auto* measure = app.add_subcommand("measure", "max-entropy and epsilon-recoverable measures");
  measure->add_option("kind", cfg.mode, "maxent|epsilon")->required();
  add_common(measure);
  measure->add_flag("--core", cfg.core, "restrict the input graph to its Perron component");

  auto* report = app.add_subcommand("report", "bound tables");
  report->add_option("kind", cfg.mode, "bounds")->required();
  report->add_option("--q", cfg.q_range, "range LO..HI");
  report->add_flag("--seed-table", cfg.seed_table, "emit the 9..16 bound table");
  report->add_option("--format", cfg.format, "csv");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (construct->parsed()) return cmd_construct(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out);
    if (measure->parsed()) return cmd_measure(cfg, out);
    if (report->parsed()) return cmd_report(cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace recsys::cli

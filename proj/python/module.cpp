#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "recsys/graph.hpp"
#include "recsys/graph_io.hpp"
#include "recsys/measures.hpp"
#include "recsys/storage.hpp"
#include "recsys/systems.hpp"

namespace py = pybind11;
using namespace recsys;

namespace {

py::int_ to_py(const BigCount& v) { return py::int_(py::module_::import("builtins").attr("int")(v.str())); }

AdjacencyMatrix from_py(const std::vector<std::vector<std::int64_t>>& rows) { return AdjacencyMatrix::from_rows(rows); }

std::vector<std::vector<std::int64_t>> to_rows(const AdjacencyMatrix& a) {
  std::vector<std::vector<std::int64_t>> rows(a.size(), std::vector<std::int64_t>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) rows[i][j] = a(i, j);
  }
  return rows;
}

py::dict table_dict(const RecoveryTable& t) {
  py::dict d;
  for (const auto& [key, w] : t) d[py::make_tuple(format_word(key.first), format_word(key.second))] = format_word(w);
  return d;
}

EdgeCoverMode parse_mode(const std::string& mode) {
  if (mode == "square") return EdgeCoverMode::square;
  if (mode == "power") return EdgeCoverMode::power;
  throw DomainError("mode must be 'square' or 'power'");
}

}  // namespace

PYBIND11_MODULE(recsys, m) {
  m.doc() = "Recoverable systems: constructions, capacities, measures and cycle storage codes.";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  py::class_<LabeledDigraph>(m, "LabeledDigraph")
      .def_property_readonly("q", &LabeledDigraph::q)
      .def_property_readonly("vertices",
                             [](const LabeledDigraph& g) {
                               std::vector<std::string> out;
                               for (const auto& v : g.vertices()) out.push_back(format_word(v.label));
                               return out;
                             })
      .def_property_readonly("edges",
                             [](const LabeledDigraph& g) {
                               std::vector<std::tuple<int, int, std::string>> out;
                               for (const auto& e : g.edges()) out.emplace_back(e.from, e.to, format_word(e.label));
                               return out;
                             })
      .def("adjacency", [](const LabeledDigraph& g) { return to_rows(adjacency(g)); })
      .def("to_json", &graph_to_json)
      .def_static("from_json", &graph_from_json)
      .def("__len__", &LabeledDigraph::vertex_count);

  py::class_<RecoverableSystem>(m, "RecoverableSystem")
      .def_property_readonly("q", [](const RecoverableSystem& s) { return s.params.q; })
      .def_property_readonly("k", [](const RecoverableSystem& s) { return s.params.k; })
      .def_property_readonly("l", [](const RecoverableSystem& s) { return s.params.l; })
      .def_property_readonly("presentation", [](const RecoverableSystem& s) { return s.presentation; })
      .def_property_readonly("table", [](const RecoverableSystem& s) { return table_dict(s.table); })
      .def_property_readonly("construction", [](const RecoverableSystem& s) { return s.provenance.construction; })
      .def_property_readonly("effective_alphabet",
                             [](const RecoverableSystem& s) { return s.provenance.effective_alphabet; })
      .def("capacity", [](const RecoverableSystem& s) { return capacity(s); });

  m.def("de_bruijn", &de_bruijn, py::arg("q"), py::arg("d"));
  m.def("higher_power", &higher_power, py::arg("g"), py::arg("m"));
  m.def("is_strongly_connected", py::overload_cast<const LabeledDigraph&>(&is_strongly_connected));
  m.def("scc_decompose", py::overload_cast<const LabeledDigraph&>(&scc_decompose));
  m.def("perron_eigenvalue", [](const std::vector<std::vector<std::int64_t>>& a) { return perron_eigenvalue(from_py(a)); });
  m.def("count_words", [](const LabeledDigraph& g, int n) { return to_py(count_words(g, n)); });
  m.def("trace_power", [](const std::vector<std::vector<std::int64_t>>& a, int n) { return to_py(trace_power(from_py(a), n)); });

  m.def("presentation_from_forbidden",
        [](int q, int k, int l, const std::vector<std::string>& words) {
          ForbiddenSet f{q, k, l, {}};
          for (const auto& w : words) f.words.insert(parse_word(w));
          return presentation_from_forbidden(f);
        },
        py::arg("q"), py::arg("k"), py::arg("l"), py::arg("words"));
  m.def("is_admissible", [](int q, int k, int l, const std::vector<std::string>& words) {
    ForbiddenSet f{q, k, l, {}};
    for (const auto& w : words) f.words.insert(parse_word(w));
    return is_admissible(f);
  });
  m.def("verify_recoverable",
        [](const LabeledDigraph& g, int k, int l) {
          auto r = verify_recoverable(g, k, l);
          return py::make_tuple(r.recoverable, table_dict(r.table));
        },
        py::arg("g"), py::arg("k"), py::arg("l"));
  m.def("make_system", &make_system, py::arg("g"), py::arg("k"), py::arg("l"), py::arg("construction") = "input");
  m.def("capacity", py::overload_cast<const LabeledDigraph&>(&capacity));
  m.def("upper_bound", [](int k, int l) {
    auto r = upper_bound(k, l);
    return py::make_tuple(r.num, r.den);
  });
  m.def("edge_cover_system", [](int t, const std::string& mode, int param) { return edge_cover_system(t, parse_mode(mode), param); },
        py::arg("t"), py::arg("mode") = "square", py::arg("param") = 1);
  m.def("marker_system", &marker_system, py::arg("q"), py::arg("k"));
  m.def("truncated_debruijn_system", &truncated_debruijn_system, py::arg("q"));
  m.def("capacity_formula", &capacity_formula, py::arg("q"));
  m.def("recursive_extend", &recursive_extend);
  m.def("recursive_lower_bound", &recursive_lower_bound, py::arg("cap"), py::arg("q"));
  m.def("exhaustive_max_capacity",
        [](int q, int k, int l, unsigned threads) {
          ExhaustiveResult r;
          {
            py::gil_scoped_release release;
            r = exhaustive_max_capacity(q, k, l, threads);
          }
          return py::make_tuple(r.capacity, r.witness, r.function_index);
        },
        py::arg("q"), py::arg("k"), py::arg("l"), py::arg("threads") = 1);

  m.def("delta_from_epsilon", &delta_from_epsilon, py::arg("epsilon"), py::arg("q"), py::arg("k"));
  m.def("max_entropy_measure",
        [](const LabeledDigraph& g) {
          auto mu = max_entropy_measure(g);
          py::dict d;
          std::vector<std::string> states;
          for (const auto& s : mu.states) states.push_back(format_word(s));
          d["states"] = states;
          d["P"] = mu.P;
          d["p"] = mu.p;
          d["entropy_rate"] = entropy_rate(mu);
          return d;
        });
  m.def("epsilon_construction",
        [](const RecoverableSystem& s, double eps) {
          auto ec = epsilon_construction(s, eps);
          const auto report = window_conditional_entropy(ec.nu, s.params.k, s.params.l);
          std::vector<std::string> states;
          for (const auto& w : ec.nu.states) states.push_back(format_word(w));
          py::dict d;
          d["delta"] = ec.params.delta;
          d["h_mu"] = entropy_rate(ec.mu);
          d["h_nu"] = entropy_rate(ec.nu);
          d["log_base"] = ec.nu.log_base;
          d["states"] = states;
          d["P"] = ec.nu.P;
          d["p"] = ec.nu.p;
          d["window_entropy_max"] = report.max;
          return d;
        },
        py::arg("system"), py::arg("epsilon"));

  m.def("perrin_count", [](int n) { return to_py(perrin_count(n)); });
  m.def("periodic_point_count", [](const LabeledDigraph& g, int n) { return to_py(periodic_points(g, n, 0).count); });
  m.def("storage_code_for_cycle",
        [](const RecoverableSystem& s, int n) {
          auto c = storage_code_for_cycle(s, n);
          std::vector<std::string> words;
          for (const auto& w : c.codewords) words.push_back(format_word(w));
          py::dict d;
          d["codewords"] = words;
          d["rate"] = c.rate();
          d["valid"] = verify_storage_code(c).ok && is_shift_closed(c);
          return d;
        },
        py::arg("system"), py::arg("n"));
}

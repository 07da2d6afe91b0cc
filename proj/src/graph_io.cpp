#include "recsys/graph_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace recsys {

using nlohmann::json;

std::string graph_to_json(const LabeledDigraph& g) {
  json doc;
  doc["q"] = g.q();
  doc["label_len"] = g.label_length();
  doc["vertices"] = json::array();
  for (const auto& v : g.vertices()) {
    doc["vertices"].push_back({{"id", v.id}, {"label", format_word(v.label)}});
  }
  doc["edges"] = json::array();
  for (const auto& e : g.edges()) {
    doc["edges"].push_back({{"from", e.from}, {"to", e.to}, {"label", format_word(e.label)}});
  }
  return doc.dump(1) + "\n";
}

LabeledDigraph graph_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("graph file is not valid JSON: ") + e.what());
  }
  try {
    const int q = doc.at("q").get<int>();
    const auto label_len = doc.at("label_len").get<std::size_t>();
    const auto& vs = doc.at("vertices");
    std::vector<Word> labels(vs.size());
    std::vector<char> filled(vs.size(), 0);
    for (const auto& v : vs) {
      const auto id = v.at("id").get<std::size_t>();
      if (id >= labels.size() || filled[id]) throw DomainError("vertex ids must be 0..|V|-1 and unique");
      labels[id] = parse_word(v.at("label").get<std::string>());
      if (labels[id].size() != label_len) throw DomainError("vertex label length differs from label_len");
      filled[id] = 1;
    }
    std::vector<Edge> edges;
    for (const auto& e : doc.at("edges")) {
      edges.push_back({e.at("from").get<int>(), e.at("to").get<int>(),
                       parse_word(e.at("label").get<std::string>())});
    }
    return LabeledDigraph(q, std::move(labels), std::move(edges));
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed graph document: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path);
  out << contents;
}

void save_graph(const std::string& path, const LabeledDigraph& g) { write_file(path, graph_to_json(g)); }

LabeledDigraph load_graph(const std::string& path) { return graph_from_json(read_file(path)); }

}  // namespace recsys

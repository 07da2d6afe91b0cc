#pragma once

#include <iosfwd>
#include <string>

#include "recsys/graph.hpp"

namespace recsys {

// JSON document: {"q", "label_len", "vertices": [{"id", "label"}], "edges": [{"from", "to", "label"}]}.
// Labels are strings over 0-9a-z.
std::string graph_to_json(const LabeledDigraph& g);
LabeledDigraph graph_from_json(const std::string& text);

void save_graph(const std::string& path, const LabeledDigraph& g);
LabeledDigraph load_graph(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace recsys

#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "wlpa/graph.hpp"

#ifndef WLPA_DATA_DIR
#error "WLPA_DATA_DIR must point at data/"
#endif

namespace wlpa::testing {

inline std::string data_path(const std::string& name) { return std::string(WLPA_DATA_DIR) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("missing fixture " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline std::string fixture_text(const std::string& name) { return read_file(data_path("graphs/" + name)); }

inline WeightedGraph fixture(const std::string& name) { return parse_weighted_graph(fixture_text(name)); }

}  // namespace wlpa::testing

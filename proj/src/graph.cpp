#include "genset/graph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "genset/errors.hpp"

namespace genset {

Graph::Graph(int order) {
  if (order < 0) throw std::invalid_argument("graph order must be nonnegative");
  adjacency_.assign(static_cast<std::size_t>(order), VertexSet(order));
}

Graph::Graph(int order, const std::vector<Edge>& edges) : Graph(order) {
  for (auto [u, v] : edges) add_edge(u, v);
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= order()) {
    throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
  }
}

void Graph::add_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw std::invalid_argument("self-loops are not allowed");
  adjacency_[u].set(v);
  adjacency_[v].set(u);
}

void Graph::remove_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  adjacency_[u].reset(v);
  adjacency_[v].reset(u);
}

bool Graph::has_edge(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  return adjacency_[u].test(v);
}

std::int64_t Graph::edge_count() const {
  std::int64_t twice = 0;
  for (const auto& row : adjacency_) twice += static_cast<std::int64_t>(row.count());
  return twice / 2;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (int u = 0; u < order(); ++u) {
    for (auto v = adjacency_[u].find_next(u); v != VertexSet::npos;
         v = adjacency_[u].find_next(v)) {
      out.emplace_back(u, static_cast<int>(v));
    }
  }
  return out;
}

VertexSet Graph::all_vertices() const {
  VertexSet all(adjacency_.size());
  all.set();
  return all;
}

Graph Graph::induced(const std::vector<int>& vertices) const {
  Graph sub(static_cast<int>(vertices.size()));
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    check_vertex(vertices[i]);
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (adjacency_[vertices[i]].test(vertices[j])) {
        sub.add_edge(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return sub;
}

std::vector<std::uint64_t> Graph::adjacency_words() const {
  if (order() > 64) throw CapacityError("operation supports graphs of order <= 64");
  std::vector<std::uint64_t> words(adjacency_.size(), 0);
  for (int u = 0; u < order(); ++u) {
    for (auto v = adjacency_[u].find_first(); v != VertexSet::npos;
         v = adjacency_[u].find_next(v)) {
      words[u] |= std::uint64_t{1} << v;
    }
  }
  return words;
}

// ---------------------------------------------------------------------------

Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  int n = -1;
  long long m = -1;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    if (n < 0) {
      std::string tag, n_field, m_field;
      fields >> tag >> n_field >> m_field;
      if (tag != "graph" || n_field.rfind("n=", 0) != 0 || m_field.rfind("m=", 0) != 0) {
        throw ParseError(line_no, "expected 'graph n=<int> m=<int>' header");
      }
      try {
        n = std::stoi(n_field.substr(2));
        m = std::stoll(m_field.substr(2));
      } catch (const std::exception&) {
        throw ParseError(line_no, "bad graph header counts");
      }
      if (n < 0 || m < 0) throw ParseError(line_no, "negative graph header counts");
      continue;
    }
    int u = 0;
    int v = 0;
    std::string rest;
    if (!(fields >> u >> v) || (fields >> rest)) {
      throw ParseError(line_no, "expected an edge line 'u v'");
    }
    if (u < 1 || v < 1 || u > n || v > n) throw ParseError(line_no, "vertex out of range");
    if (u == v) throw ParseError(line_no, "self-loop");
    edges.emplace_back(u - 1, v - 1);
  }
  if (n < 0) throw ParseError(std::max<std::size_t>(line_no, 1), "missing graph header");
  if (static_cast<long long>(edges.size()) != m) {
    throw ParseError(line_no, "edge count does not match header m=" + std::to_string(m));
  }
  Graph g(n);
  for (auto [u, v] : edges) {
    if (g.has_edge(u, v)) throw ParseError(line_no, "duplicate edge");
    g.add_edge(u, v);
  }
  return g;
}

std::string format_graph(const Graph& g) {
  const auto edges = g.edges();
  std::string out = "graph n=" + std::to_string(g.order()) +
                    " m=" + std::to_string(edges.size()) + "\n";
  for (auto [u, v] : edges) {
    out += std::to_string(u + 1) + " " + std::to_string(v + 1) + "\n";
  }
  return out;
}

}  // namespace genset

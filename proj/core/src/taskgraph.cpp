#include "nnn/taskgraph.hpp"

#include <algorithm>
#include <stdexcept>

#include "nnn/diagnostic.hpp"

namespace nnn {

namespace {

struct Span {
  std::vector<std::string> entries;  // tasks with no predecessor inside the subtree
  std::vector<std::string> exits;    // tasks with no successor inside the subtree
};

// For a sequential composite the reduced edges are exactly exits(k) x
// entries(k+1); parallel composites contribute nothing.
Span build(const TaskNode& n, std::vector<std::pair<std::string, std::string>>& edges,
           std::vector<std::pair<std::string, std::string>>& nodes) {
  if (const auto* t = n.atomic()) {
    nodes.emplace_back(t->id, t->text);
    return Span{{t->id}, {t->id}};
  }
  const auto& c = *n.composite();
  std::vector<Span> parts;
  for (const auto& child : c.children) {
    Span s = build(child, edges, nodes);
    if (!s.entries.empty()) parts.push_back(std::move(s));
  }
  Span out;
  if (parts.empty()) return out;
  if (c.mode == CompositionMode::parallel) {
    for (auto& p : parts) {
      out.entries.insert(out.entries.end(), p.entries.begin(), p.entries.end());
      out.exits.insert(out.exits.end(), p.exits.begin(), p.exits.end());
    }
    return out;
  }
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    for (const auto& a : parts[i].exits) {
      for (const auto& b : parts[i + 1].entries) edges.emplace_back(a, b);
    }
  }
  out.entries = parts.front().entries;
  out.exits = parts.back().exits;
  return out;
}

std::string truncate(std::string_view s, std::size_t max) {
  if (utf8_length(s) <= max) return std::string(s);
  // cut on a code point boundary
  std::size_t cps = 0;
  std::size_t i = 0;
  while (i < s.size() && cps < max - 3) {
    ++i;
    while (i < s.size() && (static_cast<unsigned char>(s[i]) & 0xC0) == 0x80) ++i;
    ++cps;
  }
  return std::string(s.substr(0, i)) + "...";
}

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

const std::string& TaskGraph::text(const std::string& id) const {
  auto it = texts_.find(id);
  if (it == texts_.end()) throw std::out_of_range("no task '" + id + "'");
  return it->second;
}

std::vector<std::string> TaskGraph::successors(const std::string& id) const {
  std::vector<std::string> out;
  for (auto it = edges_.lower_bound({id, std::string()}); it != edges_.end() && it->first == id; ++it) {
    out.push_back(it->second);
  }
  return out;
}

bool TaskGraph::precedes(const std::string& before, const std::string& after) const {
  std::vector<std::string> stack{before};
  std::set<std::string> seen;
  while (!stack.empty()) {
    const std::string cur = stack.back();
    stack.pop_back();
    for (const auto& next : successors(cur)) {
      if (next == after) return true;
      if (seen.insert(next).second) stack.push_back(next);
    }
  }
  return false;
}

TaskGraph compile_graph(const TasksSection& tasks) {
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::pair<std::string, std::string>> nodes;
  CompositeTask root;
  root.mode = CompositionMode::parallel;
  root.children = tasks.roots;
  build(TaskNode(std::move(root)), edges, nodes);

  TaskGraph g;
  for (auto& [id, text] : nodes) {
    if (!g.texts_.emplace(id, text).second) {
      throw DiagnosticError(make_diagnostic(codes::dup_id, "/guideline/tasks", "duplicate task id '" + id + "'"));
    }
    g.nodes_.push_back(id);
  }
  g.edges_.insert(edges.begin(), edges.end());
  if (topological_order(g).size() != g.nodes_.size()) throw std::logic_error("task graph has a cycle");
  return g;
}

bool is_valid_trace(const TaskGraph& graph, const std::vector<std::string>& trace) {
  if (trace.size() != graph.nodes().size()) return false;
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (!graph.contains(trace[i]) || !pos.emplace(trace[i], i).second) return false;
  }
  return std::all_of(graph.edges().begin(), graph.edges().end(),
                     [&](const auto& e) { return pos[e.first] < pos[e.second]; });
}

std::vector<std::string> topological_order(const TaskGraph& graph) {
  const IdOrder order = IdOrder::for_ids(graph.nodes());
  std::map<std::string, int> indegree;
  for (const auto& n : graph.nodes()) indegree[n] = 0;
  for (const auto& [a, b] : graph.edges()) ++indegree[b];
  auto cmp = [&](const std::string& a, const std::string& b) { return order(a, b); };
  std::set<std::string, decltype(cmp)> ready(cmp);
  for (const auto& [n, d] : indegree) {
    if (d == 0) ready.insert(n);
  }
  std::vector<std::string> out;
  while (!ready.empty()) {
    std::string n = *ready.begin();
    ready.erase(ready.begin());
    for (const auto& s : graph.successors(n)) {
      if (--indegree[s] == 0) ready.insert(s);
    }
    out.push_back(std::move(n));
  }
  return out;
}

std::string to_dot(const TaskGraph& graph) {
  std::string out = "digraph tasks {\n  rankdir=LR;\n  node [shape=box];\n";
  for (const auto& n : graph.nodes()) {
    out += "  " + dot_quote(n) + " [label=" + dot_quote(n + ": " + truncate(graph.text(n), 40)) + "];\n";
  }
  for (const auto& [a, b] : graph.edges()) out += "  " + dot_quote(a) + " -> " + dot_quote(b) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace nnn

#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nnn/model.hpp"

namespace nnn {

/// Precedence DAG over atomic task ids. `edges` is the transitive reduction
/// of the order implied by the composition tree.
class TaskGraph {
 public:
  const std::vector<std::string>& nodes() const { return nodes_; }  // document order
  const std::set<std::pair<std::string, std::string>>& edges() const { return edges_; }
  const std::string& text(const std::string& id) const;
  bool contains(const std::string& id) const { return texts_.count(id) > 0; }

  /// True iff `before` must run before `after` (path in the DAG).
  bool precedes(const std::string& before, const std::string& after) const;
  std::vector<std::string> successors(const std::string& id) const;

 private:
  friend TaskGraph compile_graph(const TasksSection& tasks);
  std::vector<std::string> nodes_;
  std::map<std::string, std::string> texts_;
  std::set<std::pair<std::string, std::string>> edges_;
};

/// Sequential composites order each child before the next; parallel
/// composites and the top level add no order. Throws DiagnosticError
/// (E-DUP-ID) when two atomic tasks share an id.
TaskGraph compile_graph(const TasksSection& tasks);

/// True iff `trace` lists every node exactly once and respects every edge.
bool is_valid_trace(const TaskGraph& graph, const std::vector<std::string>& trace);

/// Kahn's algorithm; among ready nodes the smallest id comes first (numeric
/// order when all ids are decimal, lexicographic otherwise).
std::vector<std::string> topological_order(const TaskGraph& graph);

/// Graphviz digraph; labels are "id: text" with text cut to 40 characters.
std::string to_dot(const TaskGraph& graph);

}  // namespace nnn

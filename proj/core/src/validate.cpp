#include "nnn/validate.hpp"

#include <map>
#include <set>

namespace nnn {

namespace {

class StructureWalker {
 public:
  ValidationReport report;

  void run(const GuidelineDocument& doc) {
    const auto& m = doc.meta;
    text(m.title, "/meta/title", "title");
    text(m.definition.text, "/meta/definition", "definition text");
    hints(m.definition.hints, "/meta/definition");
    text(m.version_id, "/meta/version", "version id");

    for (std::size_t i = 0; i < doc.custom.recommended.size(); ++i) {
      const auto& r = doc.custom.recommended[i];
      const auto p = item_path("/custom", "recommended", i + 1);
      text(r.task_id, p, "id");
      score(r.score, p);
    }
    for (std::size_t i = 0; i < doc.custom.mandatory.size(); ++i) {
      text(doc.custom.mandatory[i].task_id, item_path("/custom", "mandatory", i + 1), "id");
    }

    const auto& b = doc.body;
    for (std::size_t i = 0; i < b.factors.items.size(); ++i) {
      factor(b.factors.items[i], item_path("/guideline/factors", "factor", i + 1), 0);
    }
    for (std::size_t i = 0; i < b.symptoms.items.size(); ++i) {
      const auto& s = b.symptoms.items[i];
      const auto p = item_path("/guideline/symptoms", "symptom", i + 1);
      text(s.text, p, "text");
      category(s.category, s.subcategory, p);
      hints(s.hints, p);
      examples(s.examples, p);
    }
    labels(b.outcomes.noc_labels, "/guideline/outcomes");
    for (std::size_t i = 0; i < b.outcomes.items.size(); ++i) {
      const auto& o = b.outcomes.items[i];
      const auto p = item_path("/guideline/outcomes", "outcome", i + 1);
      text(o.id, p, "id");
      text(o.text, p, "text");
      hints(o.hints, p);
      examples(o.examples, p);
      inputs(o.inputs, p);
    }
    labels(b.tasks.nic_labels, "/guideline/tasks");
    tasks(b.tasks.roots, "/guideline/tasks");
    for (std::size_t i = 0; i < b.documentations.items.size(); ++i) {
      const auto& d = b.documentations.items[i];
      const auto p = item_path("/guideline/documentations", "documentation", i + 1);
      text(d.id, p, "id");
      text(d.text, p, "text");
      hints(d.hints, p);
      examples(d.examples, p);
      inputs(d.inputs, p);
    }
    report.sort();
  }

 private:
  void add(std::string_view code, const std::string& path, std::string message) {
    report.add(make_diagnostic(code, path, std::move(message)));
  }

  void text(const std::string& value, const std::string& path, const char* what) {
    if (value.empty()) add(codes::empty_text, path, std::string(what) + " must not be empty");
  }

  void score(const std::optional<Score>& s, const std::string& path) {
    if (s) score(*s, path);
  }
  void score(const Score& s, const std::string& path) {
    if (!s.in_range()) add(codes::score_range, path, "score " + std::to_string(s.value) + " is outside 1..10");
  }

  void category(const std::optional<std::string>& cat, const std::optional<std::string>& sub,
                const std::string& path) {
    if (sub && !cat) add(codes::subcategory, path, "subcategory given without category");
  }

  void hints(const std::vector<Hint>& hs, const std::string& parent) {
    const auto c = child_path(parent, "hints");
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const auto p = item_path(c, "hint", i + 1);
      text(hs[i].text, p, "hint text");
      score(hs[i].score, p);
    }
  }

  void examples(const std::vector<Example>& es, const std::string& parent, int depth = 0) {
    const auto c = child_path(parent, "examples");
    for (std::size_t i = 0; i < es.size(); ++i) {
      const auto p = item_path(c, "example", i + 1);
      if (depth >= 2) add(codes::example_depth, p, "examples may nest only one level deep");
      text(es[i].text, p, "example text");
      score(es[i].score, p);
      examples(es[i].children, p, depth + 1);
    }
  }

  void inputs(const std::vector<InputSpec>& in, const std::string& parent) {
    const auto c = child_path(parent, "inputs");
    for (std::size_t i = 0; i < in.size(); ++i) text(in[i].label, item_path(c, "input", i + 1), "input label");
  }

  void labels(const std::vector<std::string>& ls, const std::string& parent) {
    const auto c = child_path(parent, "labels");
    for (std::size_t i = 0; i < ls.size(); ++i) text(ls[i], item_path(c, "label", i + 1), "label text");
  }

  void factor(const Factor& f, const std::string& path, int depth) {
    if (depth >= 2) add(codes::factor_depth, path, "factors may nest only one level deep");
    text(f.text, path, "text");
    category(f.category, f.subcategory, path);
    hints(f.hints, path);
    examples(f.examples, path);
    const auto c = child_path(path, "factors");
    for (std::size_t i = 0; i < f.children.size(); ++i) factor(f.children[i], item_path(c, "factor", i + 1), depth + 1);
  }

  void tasks(const std::vector<TaskNode>& nodes, const std::string& parent) {
    std::map<std::string, std::size_t> ord;
    for (const auto& n : nodes) {
      if (const auto* t = n.atomic()) {
        const auto p = item_path(parent, "task", ++ord["task"]);
        text(t->id, p, "id");
        text(t->text, p, "text");
        score(t->score, p);
        hints(t->hints, p);
        examples(t->examples, p);
        inputs(t->inputs, p);
        continue;
      }
      const auto& c = *n.composite();
      const char* name = c.mode == CompositionMode::sequential ? "sequential-tasks" : "parallel-tasks";
      const auto p = item_path(parent, name, ++ord[name]);
      if (c.children.empty()) add(codes::empty_composite, p, std::string("<") + name + "> has no tasks");
      tasks(c.children, p);
    }
  }
};

void task_paths(const std::vector<TaskNode>& nodes, const std::string& parent,
                std::vector<std::pair<std::string, std::string>>& out) {
  std::map<std::string, std::size_t> ord;
  for (const auto& n : nodes) {
    if (const auto* t = n.atomic()) {
      out.emplace_back(t->id, item_path(parent, "task", ++ord["task"]));
    } else {
      const auto& c = *n.composite();
      const char* name = c.mode == CompositionMode::sequential ? "sequential-tasks" : "parallel-tasks";
      task_paths(c.children, item_path(parent, name, ++ord[name]), out);
    }
  }
}

}  // namespace

ValidationReport validate_structure(const GuidelineDocument& doc) {
  StructureWalker w;
  w.run(doc);
  return std::move(w.report);
}

ValidationReport validate_semantics(const GuidelineDocument& doc, const SemanticOptions& opts) {
  ValidationReport report;
  const auto& b = doc.body;

  // (id, path) per scope, in document order
  std::vector<std::pair<std::string, std::string>> scopes[3];
  task_paths(b.tasks.roots, "/guideline/tasks", scopes[0]);
  for (std::size_t i = 0; i < b.outcomes.items.size(); ++i) {
    scopes[1].emplace_back(b.outcomes.items[i].id, item_path("/guideline/outcomes", "outcome", i + 1));
  }
  for (std::size_t i = 0; i < b.documentations.items.size(); ++i) {
    scopes[2].emplace_back(b.documentations.items[i].id,
                           item_path("/guideline/documentations", "documentation", i + 1));
  }
  static constexpr const char* scope_names[3] = {"task", "outcome", "documentation"};

  std::map<std::string, int> first_scope;
  for (int s = 0; s < 3; ++s) {
    std::set<std::string> seen;
    for (const auto& [id, path] : scopes[s]) {
      if (id.empty()) continue;  // reported by validate_structure
      if (!seen.insert(id).second) {
        report.add(make_diagnostic(codes::dup_id, path,
                                   std::string("duplicate ") + scope_names[s] + " id '" + id + "'"));
        continue;
      }
      auto [it, fresh] = first_scope.emplace(id, s);
      if (!fresh) {
        report.add(make_diagnostic(codes::id_collision, path,
                                   std::string(scope_names[s]) + " id '" + id + "' is also used by a " +
                                       scope_names[it->second]));
      }
    }
  }

  std::set<std::string> task_ids;
  for (const auto& [id, path] : scopes[0]) task_ids.insert(id);

  auto dangling = [&](const std::string& id, const std::string& path, const char* kind) {
    auto d = make_diagnostic(codes::dangling_ref, path,
                             std::string(kind) + " entry references unknown task id '" + id + "'");
    if (opts.dangling_refs_as_warnings) d.severity = Severity::warning;
    report.add(std::move(d));
  };

  std::set<std::string> recommended;
  for (std::size_t i = 0; i < doc.custom.recommended.size(); ++i) {
    const auto& id = doc.custom.recommended[i].task_id;
    const auto path = item_path("/custom", "recommended", i + 1);
    if (!recommended.insert(id).second) {
      report.add(make_diagnostic(codes::dup_custom, path, "repeated recommendation for task '" + id + "' ignored"));
      continue;
    }
    if (!id.empty() && task_ids.count(id) == 0) dangling(id, path, "recommended");
  }
  std::set<std::string> mandatory;
  for (std::size_t i = 0; i < doc.custom.mandatory.size(); ++i) {
    const auto& id = doc.custom.mandatory[i].task_id;
    const auto path = item_path("/custom", "mandatory", i + 1);
    if (!mandatory.insert(id).second) {
      report.add(make_diagnostic(codes::dup_custom, path, "repeated mandatory entry for task '" + id + "' ignored"));
      continue;
    }
    if (!id.empty() && task_ids.count(id) == 0) dangling(id, path, "mandatory");
    if (recommended.count(id) > 0) {
      report.add(make_diagnostic(codes::mandatory_and_recommended, path,
                                 "task '" + id + "' is both mandatory and recommended"));
    }
  }

  auto empty_section = [&](bool empty, const char* name) {
    if (empty) {
      report.add(make_diagnostic(codes::empty_section, child_path("/guideline", name),
                                 std::string("section <") + name + "> has no entries"));
    }
  };
  empty_section(b.factors.items.empty(), "factors");
  empty_section(b.symptoms.items.empty(), "symptoms");
  empty_section(b.outcomes.items.empty(), "outcomes");
  empty_section(b.tasks.roots.empty(), "tasks");
  empty_section(b.documentations.items.empty(), "documentations");

  report.sort();
  return report;
}

std::optional<std::string> effective_source(const GuidelineDocument& doc, std::string_view path) {
  const auto elements = document_elements(doc);
  for (const auto& e : elements) {
    if (e.path != path) continue;
    if (!e.in_guideline) break;
    for (const ElementInfo* cur = &e;; cur = &elements[static_cast<std::size_t>(cur->parent)]) {
      if (cur->source) return cur->source;
      if (cur->parent < 0) return std::nullopt;
    }
  }
  throw DiagnosticError(make_diagnostic(codes::bad_path, std::string(path),
                                        "no guideline element at '" + std::string(path) + "'"));
}

}  // namespace nnn

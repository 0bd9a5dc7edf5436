#include "nnn/model.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>

namespace nnn {

std::string_view to_string(ValidationStatus s) {
  switch (s) {
    case ValidationStatus::research: return "research";
    case ValidationStatus::implementing: return "implementing";
    case ValidationStatus::testing: return "testing";
    case ValidationStatus::running: return "running";
    case ValidationStatus::expired: return "expired";
  }
  return "research";
}

std::string_view to_string(FactorType t) { return t == FactorType::risk ? "risk" : "related"; }

std::string_view to_string(Goal g) {
  switch (g) {
    case Goal::achieve: return "achieve";
    case Goal::maintain: return "maintain";
    case Goal::prevent: return "prevent";
  }
  return "achieve";
}

std::string_view to_string(CompositionMode m) {
  return m == CompositionMode::sequential ? "sequential" : "parallel";
}

std::optional<ValidationStatus> parse_validation_status(std::string_view s) {
  for (auto v : {ValidationStatus::research, ValidationStatus::implementing, ValidationStatus::testing,
                 ValidationStatus::running, ValidationStatus::expired}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

std::optional<FactorType> parse_factor_type(std::string_view s) {
  if (s == "related") return FactorType::related;
  if (s == "risk") return FactorType::risk;
  return std::nullopt;
}

std::optional<Goal> parse_goal(std::string_view s) {
  for (auto g : {Goal::achieve, Goal::maintain, Goal::prevent}) {
    if (to_string(g) == s) return g;
  }
  return std::nullopt;
}

void collect_atomic_tasks(const TaskNode& node, std::vector<const AtomicTask*>& out) {
  if (const auto* a = node.atomic()) {
    out.push_back(a);
    return;
  }
  for (const auto& c : node.composite()->children) collect_atomic_tasks(c, out);
}

std::vector<const AtomicTask*> all_atomic_tasks(const TasksSection& tasks) {
  std::vector<const AtomicTask*> out;
  for (const auto& r : tasks.roots) collect_atomic_tasks(r, out);
  return out;
}

std::vector<const AtomicTask*> all_atomic_tasks(const GuidelineDocument& doc) {
  return all_atomic_tasks(doc.body.tasks);
}

const AtomicTask* find_task(const GuidelineDocument& doc, std::string_view id) {
  for (const auto* t : all_atomic_tasks(doc)) {
    if (t->id == id) return t;
  }
  return nullptr;
}

std::string format_date(const std::chrono::year_month_day& d) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
  return buf;
}

std::optional<std::chrono::year_month_day> parse_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  auto digits = [&](std::size_t pos, std::size_t n) -> std::optional<int> {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data() + pos, s.data() + pos + n, v);
    if (ec != std::errc{} || p != s.data() + pos + n) return std::nullopt;
    for (std::size_t i = pos; i < pos + n; ++i) {
      if (s[i] < '0' || s[i] > '9') return std::nullopt;
    }
    return v;
  };
  auto y = digits(0, 4);
  auto m = digits(5, 2);
  auto d = digits(8, 2);
  if (!y || !m || !d) return std::nullopt;
  std::chrono::year_month_day ymd{std::chrono::year{*y}, std::chrono::month{static_cast<unsigned>(*m)},
                                  std::chrono::day{static_cast<unsigned>(*d)}};
  if (!ymd.ok()) return std::nullopt;
  return ymd;
}

std::optional<std::int64_t> parse_integer(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::string_view digits = s;
  if (digits.front() == '+') digits.remove_prefix(1);
  if (digits.empty()) return std::nullopt;
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc{} || p != digits.data() + digits.size()) return std::nullopt;
  return v;
}

bool is_decimal_id(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool IdOrder::operator()(std::string_view a, std::string_view b) const {
  if (numeric) {
    auto strip = [](std::string_view v) {
      auto nz = v.find_first_not_of('0');
      return nz == std::string_view::npos ? std::string_view("0") : v.substr(nz);
    };
    auto x = strip(a);
    auto y = strip(b);
    if (x.size() != y.size()) return x.size() < y.size();
    if (x != y) return x < y;
  }
  return a < b;
}

IdOrder IdOrder::for_ids(const std::vector<std::string>& ids) {
  return IdOrder{std::all_of(ids.begin(), ids.end(), [](const std::string& s) { return is_decimal_id(s); })};
}

std::string item_path(std::string_view parent, std::string_view name, std::size_t ordinal) {
  std::string out(parent);
  out += '/';
  out += name;
  out += '[';
  out += std::to_string(ordinal);
  out += ']';
  return out;
}

std::string child_path(std::string_view parent, std::string_view name) {
  std::string out(parent);
  out += '/';
  out += name;
  return out;
}

namespace {

class ElementLister {
 public:
  std::vector<ElementInfo> out;

  int add(std::string path, std::string name, int parent, std::optional<std::string> source,
          bool guideline) {
    out.push_back(ElementInfo{std::move(path), std::move(name), parent, std::move(source), guideline});
    return static_cast<int>(out.size()) - 1;
  }

  void hints(const std::vector<Hint>& hs, int parent, bool g) {
    if (hs.empty()) return;
    const int c = add(child_path(out[parent].path, "hints"), "hints", parent, std::nullopt, g);
    for (std::size_t i = 0; i < hs.size(); ++i) {
      add(item_path(out[c].path, "hint", i + 1), "hint", c, hs[i].source, g);
    }
  }

  void examples(const std::vector<Example>& es, int parent, bool g) {
    if (es.empty()) return;
    const int c = add(child_path(out[parent].path, "examples"), "examples", parent, std::nullopt, g);
    for (std::size_t i = 0; i < es.size(); ++i) {
      const int e = add(item_path(out[c].path, "example", i + 1), "example", c, es[i].source, g);
      examples(es[i].children, e, g);
    }
  }

  void inputs(const std::vector<InputSpec>& in, int parent) {
    if (in.empty()) return;
    const int c = add(child_path(out[parent].path, "inputs"), "inputs", parent, std::nullopt, true);
    for (std::size_t i = 0; i < in.size(); ++i) {
      add(item_path(out[c].path, "input", i + 1), "input", c, std::nullopt, true);
    }
  }

  void labels(const std::vector<std::string>& ls, int parent) {
    if (ls.empty()) return;
    const int c = add(child_path(out[parent].path, "labels"), "labels", parent, std::nullopt, true);
    for (std::size_t i = 0; i < ls.size(); ++i) {
      add(item_path(out[c].path, "label", i + 1), "label", c, std::nullopt, true);
    }
  }

  void factor(const Factor& f, const std::string& path, int parent) {
    const int e = add(path, "factor", parent, f.source, true);
    hints(f.hints, e, true);
    examples(f.examples, e, true);
    if (!f.children.empty() || f.children_source) {
      const int c = add(child_path(path, "factors"), "factors", e, f.children_source, true);
      for (std::size_t i = 0; i < f.children.size(); ++i) {
        factor(f.children[i], item_path(out[c].path, "factor", i + 1), c);
      }
    }
  }

  void task_nodes(const std::vector<TaskNode>& nodes, int parent) {
    std::map<std::string, std::size_t> ordinals;
    for (const auto& n : nodes) {
      if (const auto* a = n.atomic()) {
        const int e = add(item_path(out[parent].path, "task", ++ordinals["task"]), "task", parent,
                          a->source, true);
        hints(a->hints, e, true);
        examples(a->examples, e, true);
        inputs(a->inputs, e);
      } else {
        const auto* c = n.composite();
        const std::string name =
            c->mode == CompositionMode::sequential ? "sequential-tasks" : "parallel-tasks";
        const int e = add(item_path(out[parent].path, name, ++ordinals[name]), name, parent, c->source, true);
        task_nodes(c->children, e);
      }
    }
  }
};

}  // namespace

std::vector<ElementInfo> document_elements(const GuidelineDocument& doc) {
  ElementLister l;
  const int meta = l.add("/meta", "meta", -1, std::nullopt, false);
  l.add("/meta/title", "title", meta, std::nullopt, false);
  const int def = l.add("/meta/definition", "definition", meta, std::nullopt, false);
  l.hints(doc.meta.definition.hints, def, false);
  l.add("/meta/version", "version", meta, std::nullopt, false);
  l.add("/meta/validation", "validation", meta, std::nullopt, false);
  for (const auto& [opt, name] : {std::pair{&doc.meta.institution, "institution"},
                                  std::pair{&doc.meta.author, "author"},
                                  std::pair{&doc.meta.validator, "validator"},
                                  std::pair{&doc.meta.implementer, "implementer"}}) {
    if (*opt) l.add(child_path("/meta", name), name, meta, std::nullopt, false);
  }
  l.add("/meta/date", "date", meta, std::nullopt, false);

  if (!doc.custom.empty()) {
    const int custom = l.add("/custom", "custom", -1, std::nullopt, false);
    for (std::size_t i = 0; i < doc.custom.recommended.size(); ++i) {
      l.add(item_path("/custom", "recommended", i + 1), "recommended", custom, std::nullopt, false);
    }
    for (std::size_t i = 0; i < doc.custom.mandatory.size(); ++i) {
      l.add(item_path("/custom", "mandatory", i + 1), "mandatory", custom, std::nullopt, false);
    }
  }

  const auto& b = doc.body;
  const int g = l.add("/guideline", "guideline", -1, b.source, true);
  if (!b.factors.items.empty() || b.factors.source) {
    const int s = l.add("/guideline/factors", "factors", g, b.factors.source, true);
    for (std::size_t i = 0; i < b.factors.items.size(); ++i) {
      l.factor(b.factors.items[i], item_path("/guideline/factors", "factor", i + 1), s);
    }
  }
  if (!b.symptoms.items.empty() || b.symptoms.source) {
    const int s = l.add("/guideline/symptoms", "symptoms", g, b.symptoms.source, true);
    for (std::size_t i = 0; i < b.symptoms.items.size(); ++i) {
      const auto& sym = b.symptoms.items[i];
      const int e = l.add(item_path("/guideline/symptoms", "symptom", i + 1), "symptom", s, sym.source, true);
      l.hints(sym.hints, e, true);
      l.examples(sym.examples, e, true);
    }
  }
  if (!b.outcomes.items.empty() || !b.outcomes.noc_labels.empty() || b.outcomes.source) {
    const int s = l.add("/guideline/outcomes", "outcomes", g, b.outcomes.source, true);
    l.labels(b.outcomes.noc_labels, s);
    for (std::size_t i = 0; i < b.outcomes.items.size(); ++i) {
      const auto& o = b.outcomes.items[i];
      const int e = l.add(item_path("/guideline/outcomes", "outcome", i + 1), "outcome", s, o.source, true);
      l.hints(o.hints, e, true);
      l.examples(o.examples, e, true);
      l.inputs(o.inputs, e);
    }
  }
  if (!b.tasks.roots.empty() || !b.tasks.nic_labels.empty() || b.tasks.source) {
    const int s = l.add("/guideline/tasks", "tasks", g, b.tasks.source, true);
    l.labels(b.tasks.nic_labels, s);
    l.task_nodes(b.tasks.roots, s);
  }
  if (!b.documentations.items.empty() || b.documentations.source) {
    const int s = l.add("/guideline/documentations", "documentations", g, b.documentations.source, true);
    for (std::size_t i = 0; i < b.documentations.items.size(); ++i) {
      const auto& d = b.documentations.items[i];
      const int e = l.add(item_path("/guideline/documentations", "documentation", i + 1), "documentation", s,
                          d.source, true);
      l.hints(d.hints, e, true);
      l.examples(d.examples, e, true);
      l.inputs(d.inputs, e);
    }
  }
  return std::move(l.out);
}

}  // namespace nnn

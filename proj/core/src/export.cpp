#include "nnn/export.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

#include "nnn/taskgraph.hpp"
#include "nnn/xml.hpp"

namespace nnn {

std::string slugify(std::string_view s) {
  std::string out;
  bool gap = false;
  for (unsigned char c : s) {
    if (std::isalnum(c) != 0 && c < 0x80) {
      if (gap && !out.empty()) out += '_';
      out += static_cast<char>(std::tolower(c));
      gap = false;
    } else {
      gap = true;
    }
  }
  return out.empty() ? "guideline" : out;
}

std::string ledger_json(const LossLedger& ledger) {
  auto names = [](const std::set<BuildingBlock>& blocks) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto b : blocks) arr.push_back(std::string(to_string(b)));
    return arr;
  };
  nlohmann::json j = {{"standard", std::string(to_string(ledger.standard))},
                      {"emitted", names(ledger.emitted)},
                      {"via_workaround", names(ledger.via_workaround)},
                      {"dropped", names(ledger.dropped)}};
  return j.dump(2) + "\n";
}

namespace {

/// Tracks blocks as the emitters write them; whatever was detected but
/// never written ends up dropped.
class Recorder {
 public:
  Recorder(Standard s, const GuidelineDocument& doc) : detected_(detect_blocks(doc)) { ledger_.standard = s; }

  bool has(BuildingBlock b) const { return !detected_.at(b).empty(); }
  void emit(BuildingBlock b) {
    if (has(b)) ledger_.emitted.insert(b);
  }
  void workaround(BuildingBlock b) {
    if (has(b)) ledger_.via_workaround.insert(b);
  }

  LossLedger finish() {
    for (const auto& [b, paths] : detected_) {
      if (paths.empty() || ledger_.emitted.count(b) > 0 || ledger_.via_workaround.count(b) > 0) continue;
      ledger_.dropped.insert(b);
    }
    return ledger_;
  }

 private:
  std::map<BuildingBlock, std::vector<std::string>> detected_;
  LossLedger ledger_;
};

void require_tasks(const GuidelineDocument& doc) {
  if (all_atomic_tasks(doc).empty()) {
    throw DiagnosticError(make_diagnostic(codes::export_empty, "/guideline/tasks", "document has no tasks to export"));
  }
}

/// Distinct provenance strings in document order: `source` attributes and
/// hint `from` attributes.
std::vector<std::string> collect_sources(const GuidelineDocument& doc) {
  std::vector<std::string> out;
  auto add = [&](const std::optional<std::string>& s) {
    if (s && !s->empty() && std::find(out.begin(), out.end(), *s) == out.end()) out.push_back(*s);
  };
  for (const auto& e : document_elements(doc)) add(e.source);
  auto hints = [&](const std::vector<Hint>& hs) {
    for (const auto& h : hs) add(h.from);
  };
  hints(doc.meta.definition.hints);
  auto factors = [&](auto&& self, const std::vector<Factor>& fs) -> void {
    for (const auto& f : fs) {
      hints(f.hints);
      self(self, f.children);
    }
  };
  factors(factors, doc.body.factors.items);
  for (const auto& s : doc.body.symptoms.items) hints(s.hints);
  for (const auto& o : doc.body.outcomes.items) hints(o.hints);
  for (const auto* t : all_atomic_tasks(doc)) hints(t->hints);
  for (const auto& d : doc.body.documentations.items) hints(d.hints);
  return out;
}

template <typename T>
std::string join(const std::vector<T>& items, std::string_view sep) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += sep;
    out += s;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Arden

std::string arden_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    out += c;
    if (c == '"') out += '"';
  }
  return out + "\"";
}

/// Free text inside a slot must not contain the slot terminator.
std::string arden_text(std::string_view s) {
  std::string out(s);
  for (std::size_t p = out.find(";;"); p != std::string::npos; p = out.find(";;", p)) out.replace(p, 2, "; ;");
  return out;
}

std::string_view arden_validation(ValidationStatus s) {
  switch (s) {
    case ValidationStatus::implementing: return "testing";
    case ValidationStatus::running: return "production";
    default: return to_string(s);
  }
}

void arden_actions(const TaskNode& n, std::vector<std::string>& lines) {
  if (const auto* t = n.atomic()) {
    lines.push_back("write " + arden_string(t->text));
    for (const auto& in : t->inputs) lines.push_back("write " + arden_string("Document: " + in.label));
    return;
  }
  for (const auto& c : n.composite()->children) arden_actions(c, lines);
}

struct ArdenCommon {
  std::string slug;
  std::vector<std::string> sources;
  std::vector<std::string> keywords;
  std::vector<std::string> outcomes;
};

std::string arden_mlm(const GuidelineDocument& doc, const ArdenCommon& c, const std::string& name,
                      const std::string& title, const std::vector<std::string>& actions, Recorder& rec) {
  const auto& m = doc.meta;
  std::string o;
  o += "maintenance:\n";
  o += "  title: " + arden_text(m.title) + ": " + arden_text(title) + ";;\n";
  rec.emit(BuildingBlock::B1);
  o += "  mlmname: " + name + ";;\n";
  o += "  arden: Version 2.5;;\n";
  o += "  version: " + arden_text(m.version_id) + ";;\n";
  o += "  institution: " + arden_text(m.institution.value_or("")) + ";;\n";
  o += "  author: " + arden_text(m.author.value_or("")) + ";;\n";
  o += "  specialist: " + arden_text(m.validator.value_or("")) + ";;\n";
  o += "  date: " + format_date(m.date) + ";;\n";
  o += "  validation: " + std::string(arden_validation(m.validation_status)) + ";;\n";
  o += "library:\n";
  if (!c.outcomes.empty()) {
    o += "  purpose: Expected outcomes (approximation, an Arden purpose is not an evaluable outcome): " +
         arden_text(join(c.outcomes, "; ")) + ";;\n";
    rec.workaround(BuildingBlock::B8);
  } else {
    o += "  purpose: " + arden_text(title) + ";;\n";
  }
  o += "  explanation: " + arden_text(m.definition.text) + ";;\n";
  rec.emit(BuildingBlock::B2);
  o += "  keywords: " + arden_text(join(c.keywords, "; ")) + ";;\n";
  if (!c.keywords.empty()) rec.emit(BuildingBlock::B3);
  o += "  citations: ";
  for (std::size_t i = 0; i < c.sources.size(); ++i) {
    o += (i == 0 ? "" : " ") + std::to_string(i + 1) + ". " + arden_text(c.sources[i]);
  }
  if (!c.sources.empty()) rec.emit(BuildingBlock::B6);
  o += ";;\n";
  o += "knowledge:\n";
  o += "  type: data-driven;;\n";
  o += "  data: /* TODO: read the patient data this module depends on */;;\n";
  o += "  priority: 50;;\n";
  o += "  evoke: /* TODO: triggering event */;;\n";
  o += "  logic: /* TODO: clinical condition */ conclude true;;\n";
  o += "  action:\n";
  for (std::size_t i = 0; i < actions.size(); ++i) {
    o += "    " + arden_text(actions[i]) + (i + 1 == actions.size() ? ";;\n" : ";\n");
  }
  o += "end:\n";
  return o;
}

// ---------------------------------------------------------------------------
// Asbru

XmlElement xnode(std::string name, std::initializer_list<std::pair<const char*, std::string>> attrs = {}) {
  XmlElement e;
  e.name = std::move(name);
  for (const auto& [k, v] : attrs) e.set_attribute(k, v);
  return e;
}

XmlElement asbru_comment(std::string text) { return xnode("comment", {{"text", std::move(text)}}); }

XmlElement asbru_task(const TaskNode& n, std::size_t& group) {
  if (const auto* t = n.atomic()) {
    XmlElement p = xnode("plan", {{"name", "task-" + t->id}, {"title", t->text}});
    if (t->source) p.children.push_back(asbru_comment("source: " + *t->source));
    for (const auto& in : t->inputs) p.children.push_back(asbru_comment("document: " + in.label));
    XmlElement body = xnode("plan-body");
    body.children.push_back(xnode("user-performed"));
    p.children.push_back(std::move(body));
    return p;
  }
  const auto& c = *n.composite();
  const bool seq = c.mode == CompositionMode::sequential;
  XmlElement p = xnode("plan", {{"name", "group-" + std::to_string(++group)}});
  if (c.name) p.set_attribute("title", *c.name);
  if (c.source) p.children.push_back(asbru_comment("source: " + *c.source));
  XmlElement body = xnode("plan-body");
  XmlElement sub = xnode("subplans", {{"type", seq ? "sequentially" : "parallel"}, {"wait-for", "all"}});
  for (const auto& k : c.children) sub.children.push_back(asbru_task(k, group));
  body.children.push_back(std::move(sub));
  p.children.push_back(std::move(body));
  return p;
}

// ---------------------------------------------------------------------------
// GLIF

std::string glif_name(std::string_view s) {
  std::string out;
  for (unsigned char c : s) out += std::isalnum(c) != 0 || c >= 0x80 ? static_cast<char>(c) : '_';
  return out;
}

}  // namespace

ExportBundle export_arden(const GuidelineDocument& doc) {
  require_tasks(doc);
  Recorder rec(Standard::arden, doc);
  ArdenCommon c;
  c.slug = slugify(doc.meta.title);
  c.sources = collect_sources(doc);
  for (const auto& s : doc.body.symptoms.items) c.keywords.push_back(s.text);
  bool outcome_inputs = false;
  for (const auto& o : doc.body.outcomes.items) {
    std::string line = o.text;
    for (const auto& in : o.inputs) line += " [document: " + in.label + "]";
    outcome_inputs = outcome_inputs || !o.inputs.empty();
    c.outcomes.push_back(std::move(line));
  }

  ExportBundle out;
  std::size_t group = 0;
  for (const auto& root : doc.body.tasks.roots) {
    std::vector<std::string> actions;
    arden_actions(root, actions);
    if (actions.empty()) continue;  // empty composite
    std::string id;
    std::string title;
    if (const auto* t = root.atomic()) {
      id = t->id;
      title = t->text;
    } else {
      const auto* comp = root.composite();
      id = "group" + std::to_string(++group);
      title = comp->name.value_or(comp->text.value_or("task group " + std::to_string(group)));
    }
    rec.emit(BuildingBlock::B7);
    const std::string name = c.slug + "_" + slugify(id);
    out.artifacts.push_back({name + ".mlm", arden_mlm(doc, c, name, title, actions, rec)});
  }
  std::vector<std::string> doc_actions;
  for (const auto& d : doc.body.documentations.items) {
    doc_actions.push_back("write " + arden_string("Documentation: " + d.text));
    for (const auto& in : d.inputs) doc_actions.push_back("write " + arden_string("Document: " + in.label));
  }
  bool task_inputs = false;
  for (const auto* t : all_atomic_tasks(doc)) task_inputs = task_inputs || !t->inputs.empty();
  if (!doc_actions.empty()) {
    const std::string name = c.slug + "_documentation";
    out.artifacts.push_back(
        {name + ".mlm", arden_mlm(doc, c, name, "emphases of nursing documentation", doc_actions, rec)});
    rec.emit(BuildingBlock::B9);
  }
  if (task_inputs || outcome_inputs) rec.emit(BuildingBlock::B9);
  out.ledger = rec.finish();
  return out;
}

ExportBundle export_asbru(const GuidelineDocument& doc) {
  require_tasks(doc);
  Recorder rec(Standard::asbru, doc);
  const auto& b = doc.body;

  XmlElement plan = xnode("plan", {{"name", slugify(doc.meta.title)}, {"title", doc.meta.title}});
  rec.emit(BuildingBlock::B1);
  for (const auto& s : collect_sources(doc)) {
    plan.children.push_back(asbru_comment("source: " + s));
    rec.emit(BuildingBlock::B6);
  }

  if (!b.symptoms.items.empty()) {
    XmlElement pre = xnode("preconditions");
    pre.children.push_back(asbru_comment(
        "workaround: defining characteristics stated as preconditions; precautions can no longer be expressed"));
    XmlElement any = xnode("any-of");
    for (const auto& s : b.symptoms.items) {
      XmlElement cond = xnode("condition", {{"label", s.text}});
      cond.children.push_back(asbru_comment("TODO: parameter proposition for this characteristic"));
      any.children.push_back(std::move(cond));
    }
    pre.children.push_back(std::move(any));
    plan.children.push_back(std::move(pre));
    rec.workaround(BuildingBlock::B3);
  }

  if (!b.outcomes.items.empty() || !b.outcomes.noc_labels.empty()) {
    XmlElement intentions = xnode("intentions");
    for (const auto& o : b.outcomes.items) {
      XmlElement in = xnode("intention", {{"label", o.id},
                                          {"type", "overall-state"},
                                          {"verb", std::string(to_string(o.goal))},
                                          {"importance", "1"}});
      in.children.push_back(asbru_comment(o.text));
      for (const auto& input : o.inputs) in.children.push_back(asbru_comment("document: " + input.label));
      XmlElement tp = xnode("temporal-pattern");
      tp.children.push_back(asbru_comment("TODO: temporal pattern for this outcome"));
      in.children.push_back(std::move(tp));
      intentions.children.push_back(std::move(in));
      rec.emit(BuildingBlock::B8);
    }
    for (const auto& label : b.outcomes.noc_labels) {
      intentions.children.push_back(xnode("intention", {{"label", label}, {"type", "noc-label"}}));
      rec.emit(BuildingBlock::B11);
    }
    plan.children.push_back(std::move(intentions));
  }

  XmlElement body = xnode("plan-body");
  XmlElement top = xnode("subplans", {{"type", "parallel"}, {"wait-for", "all"}});
  std::size_t group = 0;
  for (const auto& r : b.tasks.roots) top.children.push_back(asbru_task(r, group));
  rec.emit(BuildingBlock::B7);
  bool inputs = false;
  for (const auto* t : all_atomic_tasks(doc)) inputs = inputs || !t->inputs.empty();
  for (const auto& o : b.outcomes.items) inputs = inputs || !o.inputs.empty();
  for (const auto& d : b.documentations.items) {
    XmlElement p = xnode("plan", {{"name", "documentation-" + d.id}, {"title", d.text}});
    for (const auto& in : d.inputs) p.children.push_back(asbru_comment("document: " + in.label));
    XmlElement pb = xnode("plan-body");
    pb.children.push_back(xnode("user-performed"));
    p.children.push_back(std::move(pb));
    top.children.push_back(std::move(p));
    inputs = true;
  }
  if (inputs) rec.emit(BuildingBlock::B9);
  body.children.push_back(std::move(top));
  plan.children.push_back(std::move(body));

  XmlElement root = xnode("plan-library");
  XmlElement plans = xnode("plans");
  plans.children.push_back(std::move(plan));
  root.children.push_back(std::move(plans));

  ExportBundle out;
  std::string text = write_xml(root, XmlWriteOptions{true, false, 2});
  const std::string marker = "?>\n";
  text.insert(text.find(marker) + marker.size(),
              "<!-- Asbru skeleton generated from an NNN guideline; TODO markers need clinical input. -->\n");
  out.artifacts.push_back({slugify(doc.meta.title) + ".asbru.xml", std::move(text)});
  out.ledger = rec.finish();
  return out;
}

ExportBundle export_glif(const GuidelineDocument& doc) {
  require_tasks(doc);
  Recorder rec(Standard::glif, doc);
  const auto& b = doc.body;
  ExportBundle out;

  const TaskGraph graph = compile_graph(b.tasks);
  const auto order = topological_order(graph);
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    if (graph.edges().count({order[i], order[i + 1]}) == 0) {
      out.diagnostics.push_back(make_diagnostic(
          codes::linearized, "/guideline/tasks",
          "unordered tasks chained in a fixed order ('" + order[i] + "' before '" + order[i + 1] + "')"));
      break;
    }
  }

  std::vector<std::string> steps;
  for (const auto& id : order) steps.push_back("Step_" + glif_name(id));
  std::vector<std::string> doc_steps;
  for (const auto& d : b.documentations.items) doc_steps.push_back("Step_doc_" + glif_name(d.id));

  std::string o;
  o += "Guideline\n";
  o += "  name: " + doc.meta.title + "\n";
  rec.emit(BuildingBlock::B1);
  if (doc.meta.author) o += "  author: " + *doc.meta.author + "\n";
  std::vector<std::string> intentions;
  for (const auto& x : b.outcomes.items) intentions.push_back(x.text);
  if (!intentions.empty()) {
    o += "  intention: " + join(intentions, "; ") + "\n";
    rec.emit(BuildingBlock::B8);
  }
  std::vector<std::string> criteria;
  for (const auto& s : b.symptoms.items) criteria.push_back(s.text);
  if (!criteria.empty()) {
    o += "  eligibility_criteria: " + join(criteria, "; ") + "\n";
    rec.emit(BuildingBlock::B3);
  }
  o += "  didactics: " + doc.meta.definition.text + "\n";
  rec.emit(BuildingBlock::B2);
  std::vector<std::string> all_steps = steps;
  all_steps.insert(all_steps.end(), doc_steps.begin(), doc_steps.end());
  o += "  step: " + join(all_steps, ", ") + "\n";
  o += "  first_step: " + steps.front() + "\n";

  std::vector<std::string> didactics;
  for (const auto& l : b.tasks.nic_labels) {
    didactics.push_back("NIC: " + l);
    rec.workaround(BuildingBlock::B10);
  }
  for (const auto& l : b.outcomes.noc_labels) {
    didactics.push_back("NOC: " + l);
    rec.workaround(BuildingBlock::B11);
  }
  const std::string didactics_line =
      didactics.empty() ? "[none]" : join(didactics, "; ") + " (labels carried as didactics; no native slot)";

  std::map<std::string, const AtomicTask*> by_id;
  for (const auto* t : all_atomic_tasks(doc)) by_id.emplace(t->id, t);
  bool inputs = false;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto* t = by_id.at(order[i]);
    o += "\nAction Step\n";
    o += "  name: " + steps[i] + "\n";
    o += "  action: AS_" + glif_name(t->id) + "\n";
    o += "  subguideline: null\n";
    o += "  next_step: " + (i + 1 < steps.size() ? steps[i + 1] : std::string("null")) + "\n";
    rec.emit(BuildingBlock::B7);

    std::vector<std::string> data;
    for (const auto& in : t->inputs) data.push_back(in.label);
    inputs = inputs || !data.empty();
    o += "\nAction Specification\n";
    o += "  name: AS_" + glif_name(t->id) + "\n";
    o += "  patient_data: " + (data.empty() ? std::string("null") : join(data, ", ")) + "\n";
    o += "  description: " + t->text + "\n";
    o += "  didactics: " + didactics_line + "\n";
  }
  for (std::size_t i = 0; i < b.documentations.items.size(); ++i) {
    const auto& d = b.documentations.items[i];
    o += "\nAction Step\n";
    o += "  name: " + doc_steps[i] + "\n";
    o += "  action: AS_doc_" + glif_name(d.id) + "\n";
    o += "  subguideline: null\n";
    o += "  next_step: null\n";
    std::vector<std::string> data;
    for (const auto& in : d.inputs) data.push_back(in.label);
    o += "\nAction Specification\n";
    o += "  name: AS_doc_" + glif_name(d.id) + "\n";
    o += "  patient_data: " + (data.empty() ? std::string("null") : join(data, ", ")) + "\n";
    o += "  description: " + d.text + "\n";
    o += "  didactics: " + didactics_line + "\n";
    inputs = true;
  }
  for (const auto& x : b.outcomes.items) inputs = inputs || !x.inputs.empty();
  if (inputs) rec.emit(BuildingBlock::B9);

  const auto sources = collect_sources(doc);
  if (!sources.empty()) {
    o += "\nSupplemental Material\n";
    o += "  name: Sources\n";
    o += "  material: " + join(sources, "; ") + "\n";
    rec.emit(BuildingBlock::B6);
  }

  out.artifacts.push_back({slugify(doc.meta.title) + ".glif.txt", std::move(o)});
  out.ledger = rec.finish();
  return out;
}

ExportBundle export_document(const GuidelineDocument& doc, Standard standard) {
  switch (standard) {
    case Standard::arden: return export_arden(doc);
    case Standard::asbru: return export_asbru(doc);
    case Standard::glif: return export_glif(doc);
  }
  return export_arden(doc);
}

}  // namespace nnn

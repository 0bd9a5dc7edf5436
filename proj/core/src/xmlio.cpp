#include "nnn/xmlio.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <set>

#include "nnn/inputschema.hpp"

namespace nnn {

bool ParseResult::has_errors() const {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

namespace {

const std::set<std::string, std::less<>> kRepeatable = {
    "factor", "symptom", "outcome", "task", "sequential-tasks", "parallel-tasks", "sequential-task",
    "parallel-task", "documentation", "hint", "example", "input", "label", "recommended", "mandatory"};

bool is_ns_decl(std::string_view k) { return k == "xmlns" || k.rfind("xmlns:", 0) == 0; }

/// A child element together with its document path.
struct Child {
  const XmlElement* element;
  std::string path;
};

class Parser {
 public:
  explicit Parser(ParseMode mode) : mode_(mode) {}

  std::vector<Diagnostic> diagnostics;

  std::optional<GuidelineDocument> run(const XmlElement& root) {
    if (root.name != "nnn") {
      emit(codes::missing_section, "/", "root element must be <nnn>, found <" + root.name + ">");
      return std::nullopt;
    }
    check_attributes(root, "/", {}, false);
    const NamespaceScope scope = NamespaceScope{}.enter(root);
    if (!root.text.empty()) stray_text("/");

    const XmlElement* meta = nullptr;
    const XmlElement* custom = nullptr;
    const XmlElement* guideline = nullptr;
    for (const auto& c : children_of(root, "")) {
      const auto& e = *c.element;
      if (e.name == "meta") {
        take_singleton(meta, e, c.path);
      } else if (e.name == "custom") {
        take_singleton(custom, e, c.path);
      } else if (e.name == "guideline") {
        take_singleton(guideline, e, c.path);
      } else {
        unknown(e, c.path);
      }
    }
    if (meta == nullptr) emit(codes::missing_section, "/meta", "required section <meta> is missing");
    if (guideline == nullptr) emit(codes::missing_section, "/guideline", "required section <guideline> is missing");
    if (meta == nullptr || guideline == nullptr) return std::nullopt;

    GuidelineDocument doc;
    doc.meta = parse_meta(*meta, "/meta");
    if (custom != nullptr) doc.custom = parse_custom(*custom, "/custom");
    doc.body = parse_guideline(*guideline, "/guideline", scope.enter(*guideline));
    return doc;
  }

 private:
  // -- diagnostics ---------------------------------------------------------

  void emit(std::string_view code, std::string path, std::string message) {
    diagnostics.push_back(make_diagnostic(code, std::move(path), std::move(message)));
  }

  void unknown(const XmlElement& e, const std::string& path) {
    emit(codes::unknown_element, path, "unknown element <" + e.name + "> ignored");
  }

  void stray_text(const std::string& path) {
    emit(codes::unknown_element, path, "unexpected text content ignored");
  }

  /// Paths for each child: repeatable (and unknown) names always carry an
  /// ordinal, singletons only when duplicated.
  static std::vector<Child> children_of(const XmlElement& e, const std::string& path) {
    std::map<std::string, std::size_t> seen;
    std::vector<Child> out;
    out.reserve(e.children.size());
    for (const auto& c : e.children) {
      const std::size_t ord = ++seen[c.name];
      out.push_back(Child{&c, ord > 1 || kRepeatable.count(c.name) > 0 ? item_path(path, c.name, ord)
                                                                         : child_path(path, c.name)});
    }
    return out;
  }

  void take_singleton(const XmlElement*& slot, const XmlElement& e, const std::string& path) {
    if (slot != nullptr) {
      emit(codes::dup_element, path, "<" + e.name + "> may appear only once; later copy ignored");
      return;
    }
    slot = &e;
  }

  void check_attributes(const XmlElement& e, const std::string& path, std::initializer_list<std::string_view> known,
                        bool allow_source) {
    for (const auto& [k, v] : e.attributes) {
      if (is_ns_decl(k)) continue;
      if (allow_source && k == "source") continue;
      if (std::find(known.begin(), known.end(), k) != known.end()) continue;
      emit(codes::unknown_attr, path, "unknown attribute '" + k + "' on <" + e.name + "> ignored");
    }
  }

  static std::optional<std::string> attr(const XmlElement& e, std::string_view key) {
    if (const std::string* v = e.attribute(key)) return normalize_space(*v);
    return std::nullopt;
  }

  std::string required(const XmlElement& e, const std::string& path, std::string_view key) {
    if (auto v = attr(e, key)) return *v;
    emit(codes::attr_missing, path, "<" + e.name + "> requires attribute '" + std::string(key) + "'");
    return {};
  }

  std::optional<Score> score_attr(const XmlElement& e, const std::string& path, std::string_view key = "score") {
    auto raw = attr(e, key);
    if (!raw) return std::nullopt;
    auto n = parse_integer(*raw);
    if (!n || *n < std::numeric_limits<int>::min() || *n > std::numeric_limits<int>::max()) {
      emit(codes::bad_integer, path, std::string(key) + " '" + *raw + "' is not an integer");
      return std::nullopt;
    }
    return Score{static_cast<int>(*n)};
  }

  // -- meta -----------------------------------------------------------------

  Meta parse_meta(const XmlElement& m, const std::string& path) {
    check_attributes(m, path, {}, false);
    if (!m.text.empty()) stray_text(path);
    Meta meta;
    std::map<std::string, const XmlElement*> found;
    std::map<std::string, std::string> paths;
    static const std::array<std::string_view, 9> names = {"title", "definition", "version", "validation",
                                                          "institution", "author", "validator", "implementer",
                                                          "date"};
    for (const auto& c : children_of(m, path)) {
      const auto& e = *c.element;
      if (std::find(names.begin(), names.end(), e.name) == names.end()) {
        unknown(e, c.path);
        continue;
      }
      const XmlElement*& slot = found[e.name];
      take_singleton(slot, e, c.path);
      if (slot == &e) paths[e.name] = c.path;
    }
    auto need = [&](const char* name) -> const XmlElement* {
      auto it = found.find(name);
      if (it == found.end()) {
        emit(codes::element_missing, child_path(path, name), "<meta> requires <" + std::string(name) + ">");
        return nullptr;
      }
      return it->second;
    };

    if (const auto* e = need("title")) {
      check_attributes(*e, paths["title"], {"text"}, false);
      meta.title = required(*e, paths["title"], "text");
      no_children(*e, paths["title"]);
    }
    if (const auto* e = need("definition")) {
      const auto& p = paths["definition"];
      check_attributes(*e, p, {"text", "theme"}, false);
      meta.definition.text = required(*e, p, "text");
      // theme="" is the canonical spelling of "no theme" (keeps the repair idempotent)
      meta.definition.theme = attr(*e, "theme");
      if (meta.definition.theme && meta.definition.theme->empty()) {
        meta.definition.theme.reset();
      } else if (!meta.definition.theme) {
        if (mode_ == ParseMode::lenient) {
          emit(codes::theme_missing, p, "<definition> has no 'theme'; left absent");
        } else {
          emit(codes::attr_missing, p, "<definition> requires attribute 'theme'");
        }
      }
      if (!e->text.empty()) stray_text(p);
      for (const auto& c : children_of(*e, p)) {
        if (c.element->name == "hints") {
          append_hints(meta.definition.hints, *c.element, c.path, false);
        } else {
          unknown(*c.element, c.path);
        }
      }
    }
    if (const auto* e = need("version")) {
      check_attributes(*e, paths["version"], {"id"}, false);
      meta.version_id = required(*e, paths["version"], "id");
      no_children(*e, paths["version"]);
    }
    if (const auto* e = need("validation")) {
      const auto& p = paths["validation"];
      check_attributes(*e, p, {"status"}, false);
      if (auto s = attr(*e, "status")) {
        if (auto v = parse_validation_status(*s)) {
          meta.validation_status = *v;
        } else {
          emit(codes::bad_enum, p,
               "validation status '" + *s + "' is not one of research, implementing, testing, running, expired");
        }
      } else {
        required(*e, p, "status");
      }
      no_children(*e, p);
    }
    for (auto [name, slot] : {std::pair{"institution", &meta.institution}, std::pair{"author", &meta.author},
                              std::pair{"validator", &meta.validator}, std::pair{"implementer", &meta.implementer}}) {
      auto it = found.find(name);
      if (it == found.end()) continue;
      check_attributes(*it->second, paths[name], {"name"}, false);
      *slot = required(*it->second, paths[name], "name");
      no_children(*it->second, paths[name]);
    }
    if (const auto* e = need("date")) {
      const auto& p = paths["date"];
      check_attributes(*e, p, {"text"}, false);
      if (auto s = attr(*e, "text")) {
        if (auto d = parse_date(*s)) {
          meta.date = *d;
        } else {
          emit(codes::bad_date, p, "date '" + *s + "' is not a valid YYYY-MM-DD date");
        }
      } else {
        required(*e, p, "text");
      }
      no_children(*e, p);
    }
    return meta;
  }

  void no_children(const XmlElement& e, const std::string& path) {
    if (!e.text.empty()) stray_text(path);
    for (const auto& c : children_of(e, path)) unknown(*c.element, c.path);
  }

  // -- custom ---------------------------------------------------------------

  Custom parse_custom(const XmlElement& e, const std::string& path) {
    check_attributes(e, path, {}, false);
    if (!e.text.empty()) stray_text(path);
    Custom out;
    for (const auto& c : children_of(e, path)) {
      const auto& x = *c.element;
      if (x.name == "recommended") {
        check_attributes(x, c.path, {"id", "score"}, false);
        std::string id = required(x, c.path, "id");
        auto score = score_attr(x, c.path);
        if (!x.attribute("score")) required(x, c.path, "score");
        no_children(x, c.path);
        if (score) out.recommended.push_back(Recommended{std::move(id), *score});
      } else if (x.name == "mandatory") {
        check_attributes(x, c.path, {"id"}, false);
        out.mandatory.push_back(Mandatory{required(x, c.path, "id")});
        no_children(x, c.path);
      } else {
        unknown(x, c.path);
      }
    }
    return out;
  }

  // -- shared blocks --------------------------------------------------------

  void append_hints(std::vector<Hint>& out, const XmlElement& e, const std::string& path, bool guideline) {
    check_attributes(e, path, {}, false);
    if (!e.text.empty()) stray_text(path);
    for (const auto& c : children_of(e, path)) {
      const auto& x = *c.element;
      if (x.name != "hint") {
        unknown(x, c.path);
        continue;
      }
      check_attributes(x, c.path, {"from", "text", "score"}, guideline);
      Hint h;
      h.from = attr(x, "from");
      h.text = required(x, c.path, "text");
      h.score = score_attr(x, c.path);
      if (guideline) h.source = attr(x, "source");
      no_children(x, c.path);
      out.push_back(std::move(h));
    }
  }

  void append_examples(std::vector<Example>& out, const XmlElement& e, const std::string& path) {
    check_attributes(e, path, {}, false);
    if (!e.text.empty()) stray_text(path);
    for (const auto& c : children_of(e, path)) {
      const auto& x = *c.element;
      if (x.name != "example") {
        unknown(x, c.path);
        continue;
      }
      check_attributes(x, c.path, {"text", "score"}, true);
      Example ex;
      ex.text = required(x, c.path, "text");
      ex.score = score_attr(x, c.path);
      ex.source = attr(x, "source");
      if (!x.text.empty()) stray_text(c.path);
      const XmlElement* nested = nullptr;
      for (const auto& cc : children_of(x, c.path)) {
        if (cc.element->name == "examples") {
          take_singleton(nested, *cc.element, cc.path);
          if (nested == cc.element) append_examples(ex.children, *cc.element, cc.path);
        } else {
          unknown(*cc.element, cc.path);
        }
      }
      out.push_back(std::move(ex));
    }
  }

  void append_inputs(std::vector<InputSpec>& out, const XmlElement& e, const std::string& path,
                     const NamespaceScope& scope) {
    check_attributes(e, path, {}, false);
    if (!e.text.empty()) stray_text(path);
    const NamespaceScope inner = scope.enter(e);
    for (const auto& c : children_of(e, path)) {
      const auto& x = *c.element;
      if (x.name != "input") {
        unknown(x, c.path);
        continue;
      }
      check_attributes(x, c.path, {"label"}, false);
      InputSpec in;
      in.label = required(x, c.path, "label");
      try {
        in.body = compile_input_body(x, inner);
      } catch (const DiagnosticError& err) {
        const auto& d = err.diagnostic();
        const std::string where = d.path.empty() ? std::string() : " (at " + d.path + ")";
        if (d.code == codes::pattern_param) {
          emit(codes::pattern_param, c.path, d.message + where);
        } else {
          emit(codes::opaque_input, c.path, "input kept unchecked: " + d.message + where);
        }
        in.body = OpaqueInput{x.children, d.message};
      }
      out.push_back(std::move(in));
    }
  }

  void append_labels(std::vector<std::string>& out, const XmlElement& e, const std::string& path) {
    check_attributes(e, path, {}, true);
    if (!e.text.empty()) stray_text(path);
    for (const auto& c : children_of(e, path)) {
      const auto& x = *c.element;
      if (x.name != "label") {
        unknown(x, c.path);
        continue;
      }
      no_children(x, c.path);
      if (auto t = attr(x, "text")) {
        check_attributes(x, c.path, {"text"}, true);
        out.push_back(*t);
        continue;
      }
      check_attributes(x, c.path, {"text", "name"}, true);
      if (auto n = attr(x, "name")) {
        if (mode_ == ParseMode::lenient) {
          emit(codes::label_attr, c.path, "<label> uses 'name' instead of 'text'; read as text");
          out.push_back(*n);
        } else {
          emit(codes::attr_missing, c.path, "<label> requires attribute 'text' (found 'name')");
        }
        continue;
      }
      required(x, c.path, "text");
    }
  }

  // -- guideline ------------------------------------------------------------

  GuidelineBody parse_guideline(const XmlElement& g, const std::string& path, const NamespaceScope& scope) {
    check_attributes(g, path, {}, true);
    if (!g.text.empty()) stray_text(path);
    GuidelineBody body;
    body.source = attr(g, "source");
    std::map<std::string, const XmlElement*> seen;
    for (const auto& c : children_of(g, path)) {
      const auto& x = *c.element;
      static const std::set<std::string, std::less<>> sections = {"factors", "symptoms", "outcomes", "tasks",
                                                                  "documentations"};
      if (sections.count(x.name) == 0) {
        unknown(x, c.path);
        continue;
      }
      const XmlElement*& slot = seen[x.name];
      take_singleton(slot, x, c.path);
      if (slot != &x) continue;
      const NamespaceScope s = scope.enter(x);
      if (x.name == "factors") {
        body.factors.source = attr(x, "source");
        parse_factor_list(body.factors.items, x, c.path);
      } else if (x.name == "symptoms") {
        parse_symptoms(body.symptoms, x, c.path);
      } else if (x.name == "outcomes") {
        parse_outcomes(body.outcomes, x, c.path, s);
      } else if (x.name == "tasks") {
        parse_tasks(body.tasks, x, c.path, s);
      } else {
        parse_documentations(body.documentations, x, c.path, s);
      }
    }
    return body;
  }

  void parse_factor_list(std::vector<Factor>& out, const XmlElement& e, const std::string& path) {
    check_attributes(e, path, {}, true);
    if (!e.text.empty()) stray_text(path);
    for (const auto& c : children_of(e, path)) {
      const auto& x = *c.element;
      if (x.name != "factor") {
        unknown(x, c.path);
        continue;
      }
      check_attributes(x, c.path, {"text", "type", "category", "subcategory"}, true);
      Factor f;
      f.text = required(x, c.path, "text");
      if (auto t = attr(x, "type")) {
        if (auto v = parse_factor_type(*t)) {
          f.type = *v;
        } else {
          emit(codes::bad_enum, c.path, "factor type '" + *t + "' is not one of related, risk");
        }
      }
      f.category = attr(x, "category");
      f.subcategory = attr(x, "subcategory");
      f.source = attr(x, "source");
      if (!x.text.empty()) stray_text(c.path);
      const XmlElement* hints = nullptr;
      const XmlElement* examples = nullptr;
      const XmlElement* nested = nullptr;
      for (const auto& cc : children_of(x, c.path)) {
        const auto& y = *cc.element;
        if (y.name == "hints") {
          take_singleton(hints, y, cc.path);
          if (hints == &y) append_hints(f.hints, y, cc.path, true);
        } else if (y.name == "examples") {
          take_singleton(examples, y, cc.path);
          if (examples == &y) append_examples(f.examples, y, cc.path);
        } else if (y.name == "factors") {
          take_singleton(nested, y, cc.path);
          if (nested == &y) {
            f.children_source = attr(y, "source");
            parse_factor_list(f.children, y, cc.path);
          }
        } else {
          unknown(y, cc.path);
        }
      }
      out.push_back(std::move(f));
    }
  }

  /// Shared hints/examples/inputs reading for items; returns false for
  /// names it does not handle.
  struct Blocks {
    const XmlElement* hints = nullptr;
    const XmlElement* examples = nullptr;
    const XmlElement* inputs = nullptr;
  };

  template <typename Item>
  bool item_block(Item& item, Blocks& b, const Child& c, const NamespaceScope& scope, bool with_inputs) {
    const auto& y = *c.element;
    if (y.name == "hints") {
      take_singleton(b.hints, y, c.path);
      if (b.hints == &y) append_hints(item.hints, y, c.path, true);
      return true;
    }
    if (y.name == "examples") {
      take_singleton(b.examples, y, c.path);
      if (b.examples == &y) append_examples(item.examples, y, c.path);
      return true;
    }
    if constexpr (requires { item.inputs; }) {
      if (with_inputs && y.name == "inputs") {
        take_singleton(b.inputs, y, c.path);
        if (b.inputs == &y) append_inputs(item.inputs, y, c.path, scope);
        return true;
      }
    }
    return false;
  }

  template <typename Item>
  void item_children(Item& item, const XmlElement& x, const std::string& path, const NamespaceScope& scope,
                     bool with_inputs) {
    if (!x.text.empty()) stray_text(path);
    Blocks b;
    const NamespaceScope s = scope.enter(x);
    for (const auto& c : children_of(x, path)) {
      if (!item_block(item, b, c, s, with_inputs)) unknown(*c.element, c.path);
    }
  }

  void parse_symptoms(SymptomsSection& out, const XmlElement& e, const std::string& path) {
    check_attributes(e, path, {}, true);
    out.source = attr(e, "source");
    if (!e.text.empty()) stray_text(path);
    for (const auto& c : children_of(e, path)) {
      const auto& x = *c.element;
      if (x.name != "symptom") {
        unknown(x, c.path);
        continue;
      }
      check_attributes(x, c.path, {"text", "category", "subcategory"}, true);
      Symptom s;
      s.text = required(x, c.path, "text");
      s.category = attr(x, "category");
      s.subcategory = attr(x, "subcategory");
      s.source = attr(x, "source");
      item_children(s, x, c.path, NamespaceScope{}, false);
      out.items.push_back(std::move(s));
    }
  }

  void parse_outcomes(OutcomesSection& out, const XmlElement& e, const std::string& path,
                      const NamespaceScope& scope) {
    check_attributes(e, path, {}, true);
    out.source = attr(e, "source");
    if (!e.text.empty()) stray_text(path);
    const XmlElement* labels = nullptr;
    for (const auto& c : children_of(e, path)) {
      const auto& x = *c.element;
      if (x.name == "labels") {
        take_singleton(labels, x, c.path);
        if (labels == &x) append_labels(out.noc_labels, x, c.path);
        continue;
      }
      if (x.name != "outcome") {
        unknown(x, c.path);
        continue;
      }
      check_attributes(x, c.path, {"goal", "text", "id"}, true);
      Outcome o;
      o.id = required(x, c.path, "id");
      o.text = required(x, c.path, "text");
      if (auto g = attr(x, "goal")) {
        if (auto v = parse_goal(*g)) {
          o.goal = *v;
        } else {
          emit(codes::bad_enum, c.path, "outcome goal '" + *g + "' is not one of achieve, maintain, prevent");
        }
      } else {
        required(x, c.path, "goal");
      }
      o.source = attr(x, "source");
      item_children(o, x, c.path, scope, true);
      out.items.push_back(std::move(o));
    }
  }

  void parse_tasks(TasksSection& out, const XmlElement& e, const std::string& path, const NamespaceScope& scope) {
    check_attributes(e, path, {}, true);
    out.source = attr(e, "source");
    if (!e.text.empty()) stray_text(path);
    const XmlElement* labels = nullptr;
    std::vector<Child> rest;
    for (const auto& c : children_of(e, path)) {
      if (c.element->name == "labels") {
        take_singleton(labels, *c.element, c.path);
        if (labels == c.element) append_labels(out.nic_labels, *c.element, c.path);
      } else {
        rest.push_back(c);
      }
    }
    task_nodes(out.roots, rest, scope);
  }

  void task_nodes(std::vector<TaskNode>& out, const std::vector<Child>& kids, const NamespaceScope& scope) {
    for (const auto& c : kids) {
      const auto& x = *c.element;
      if (x.name == "task") {
        check_attributes(x, c.path, {"text", "id", "predictedeffort", "score"}, true);
        AtomicTask t;
        t.id = required(x, c.path, "id");
        t.text = required(x, c.path, "text");
        if (auto pe = attr(x, "predictedeffort")) {
          auto n = parse_integer(*pe);
          if (!n || *n < 0) {
            emit(codes::bad_integer, c.path, "predictedeffort '" + *pe + "' is not a non-negative integer");
          } else {
            t.predicted_effort = *n;
          }
        }
        t.score = score_attr(x, c.path);
        t.source = attr(x, "source");
        item_children(t, x, c.path, scope, true);
        out.emplace_back(std::move(t));
        continue;
      }
      std::optional<CompositionMode> mode;
      if (x.name == "sequential-tasks" || x.name == "sequential-task") mode = CompositionMode::sequential;
      if (x.name == "parallel-tasks" || x.name == "parallel-task") mode = CompositionMode::parallel;
      if (!mode) {
        unknown(x, c.path);
        continue;
      }
      if (x.name.back() == 'k') {
        const std::string canonical = x.name + "s";
        if (mode_ == ParseMode::lenient) {
          emit(codes::lenient_composite_name, c.path, "<" + x.name + "> read as <" + canonical + ">");
        } else {
          emit(codes::composite_name, c.path, "composite must be spelled <" + canonical + ">");
        }
      }
      check_attributes(x, c.path, {"name", "text"}, true);
      CompositeTask comp;
      comp.mode = *mode;
      comp.name = attr(x, "name");
      comp.text = attr(x, "text");
      comp.source = attr(x, "source");
      if (!x.text.empty()) stray_text(c.path);
      task_nodes(comp.children, children_of(x, c.path), scope.enter(x));
      out.emplace_back(std::move(comp));
    }
  }

  void parse_documentations(DocumentationsSection& out, const XmlElement& e, const std::string& path,
                            const NamespaceScope& scope) {
    check_attributes(e, path, {}, true);
    out.source = attr(e, "source");
    if (!e.text.empty()) stray_text(path);
    for (const auto& c : children_of(e, path)) {
      const auto& x = *c.element;
      if (x.name != "documentation") {
        unknown(x, c.path);
        continue;
      }
      check_attributes(x, c.path, {"text", "id"}, true);
      Documentation d;
      d.id = required(x, c.path, "id");
      d.text = required(x, c.path, "text");
      d.source = attr(x, "source");
      item_children(d, x, c.path, scope, true);
      out.items.push_back(std::move(d));
    }
  }

  ParseMode mode_;
};

// -- serialization ------------------------------------------------------------

XmlElement node(std::string name) {
  XmlElement e;
  e.name = std::move(name);
  return e;
}

void set_opt(XmlElement& e, const char* key, const std::optional<std::string>& v) {
  if (v) e.set_attribute(key, *v);
}

void set_score(XmlElement& e, const std::optional<Score>& s) {
  if (s) e.set_attribute("score", std::to_string(s->value));
}

void add_hints(XmlElement& parent, const std::vector<Hint>& hints) {
  if (hints.empty()) return;
  XmlElement c = node("hints");
  for (const auto& h : hints) {
    XmlElement x = node("hint");
    set_opt(x, "from", h.from);
    x.set_attribute("text", h.text);
    set_score(x, h.score);
    set_opt(x, "source", h.source);
    c.children.push_back(std::move(x));
  }
  parent.children.push_back(std::move(c));
}

void add_examples(XmlElement& parent, const std::vector<Example>& examples) {
  if (examples.empty()) return;
  XmlElement c = node("examples");
  for (const auto& ex : examples) {
    XmlElement x = node("example");
    x.set_attribute("text", ex.text);
    set_score(x, ex.score);
    set_opt(x, "source", ex.source);
    add_examples(x, ex.children);
    c.children.push_back(std::move(x));
  }
  parent.children.push_back(std::move(c));
}

void add_inputs(XmlElement& parent, const std::vector<InputSpec>& inputs) {
  if (inputs.empty()) return;
  XmlElement c = node("inputs");
  for (const auto& in : inputs) {
    XmlElement x = node("input");
    x.set_attribute("label", in.label);
    x.set_attribute("xmlns", std::string(kRelaxNgNamespace));
    if (const auto* p = in.pattern()) {
      x.children.push_back(pattern_to_xml(*p));
    } else {
      x.children = std::get<OpaqueInput>(in.body).body;
    }
    c.children.push_back(std::move(x));
  }
  parent.children.push_back(std::move(c));
}

void add_labels(XmlElement& parent, const std::vector<std::string>& labels) {
  if (labels.empty()) return;
  XmlElement c = node("labels");
  for (const auto& l : labels) {
    XmlElement x = node("label");
    x.set_attribute("text", l);
    c.children.push_back(std::move(x));
  }
  parent.children.push_back(std::move(c));
}

XmlElement factor_xml(const Factor& f) {
  XmlElement x = node("factor");
  x.set_attribute("text", f.text);
  x.set_attribute("type", std::string(to_string(f.type)));
  set_opt(x, "category", f.category);
  set_opt(x, "subcategory", f.subcategory);
  set_opt(x, "source", f.source);
  add_hints(x, f.hints);
  add_examples(x, f.examples);
  if (!f.children.empty() || f.children_source) {
    XmlElement c = node("factors");
    set_opt(c, "source", f.children_source);
    for (const auto& k : f.children) c.children.push_back(factor_xml(k));
    x.children.push_back(std::move(c));
  }
  return x;
}

XmlElement task_xml(const TaskNode& n) {
  if (const auto* t = n.atomic()) {
    XmlElement x = node("task");
    x.set_attribute("id", t->id);
    x.set_attribute("text", t->text);
    if (t->predicted_effort) x.set_attribute("predictedeffort", std::to_string(*t->predicted_effort));
    set_score(x, t->score);
    set_opt(x, "source", t->source);
    add_hints(x, t->hints);
    add_examples(x, t->examples);
    add_inputs(x, t->inputs);
    return x;
  }
  const auto& c = *n.composite();
  XmlElement x = node(c.mode == CompositionMode::sequential ? "sequential-tasks" : "parallel-tasks");
  set_opt(x, "name", c.name);
  set_opt(x, "text", c.text);
  set_opt(x, "source", c.source);
  for (const auto& k : c.children) x.children.push_back(task_xml(k));
  return x;
}

}  // namespace

ParseResult parse_document(std::string_view text, ParseMode mode) {
  ParseResult result;
  auto xml = parse_xml(text);
  if (!xml.root) {
    const auto& err = *xml.error;
    result.diagnostics.push_back(make_diagnostic(codes::xml_malformed, "/",
                                                 "line " + std::to_string(err.line) + ": " + err.message));
    return result;
  }
  Parser p(mode);
  result.document = p.run(*xml.root);
  result.diagnostics = std::move(p.diagnostics);
  sort_diagnostics(result.diagnostics);
  return result;
}

XmlElement document_to_xml(const GuidelineDocument& doc) {
  XmlElement root = node("nnn");

  XmlElement meta = node("meta");
  {
    XmlElement t = node("title");
    t.set_attribute("text", doc.meta.title);
    meta.children.push_back(std::move(t));
    XmlElement d = node("definition");
    d.set_attribute("text", doc.meta.definition.text);
    d.set_attribute("theme", doc.meta.definition.theme.value_or(""));
    add_hints(d, doc.meta.definition.hints);
    meta.children.push_back(std::move(d));
    XmlElement v = node("version");
    v.set_attribute("id", doc.meta.version_id);
    meta.children.push_back(std::move(v));
    XmlElement s = node("validation");
    s.set_attribute("status", std::string(to_string(doc.meta.validation_status)));
    meta.children.push_back(std::move(s));
    for (const auto& [name, value] : {std::pair{"institution", &doc.meta.institution},
                                      std::pair{"author", &doc.meta.author},
                                      std::pair{"validator", &doc.meta.validator},
                                      std::pair{"implementer", &doc.meta.implementer}}) {
      if (!*value) continue;
      XmlElement x = node(name);
      x.set_attribute("name", **value);
      meta.children.push_back(std::move(x));
    }
    XmlElement date = node("date");
    date.set_attribute("text", format_date(doc.meta.date));
    meta.children.push_back(std::move(date));
  }
  root.children.push_back(std::move(meta));

  if (!doc.custom.empty()) {
    XmlElement custom = node("custom");
    for (const auto& r : doc.custom.recommended) {
      XmlElement x = node("recommended");
      x.set_attribute("id", r.task_id);
      x.set_attribute("score", std::to_string(r.score.value));
      custom.children.push_back(std::move(x));
    }
    for (const auto& m : doc.custom.mandatory) {
      XmlElement x = node("mandatory");
      x.set_attribute("id", m.task_id);
      custom.children.push_back(std::move(x));
    }
    root.children.push_back(std::move(custom));
  }

  const auto& b = doc.body;
  XmlElement g = node("guideline");
  set_opt(g, "source", b.source);
  if (!b.factors.items.empty() || b.factors.source) {
    XmlElement s = node("factors");
    set_opt(s, "source", b.factors.source);
    for (const auto& f : b.factors.items) s.children.push_back(factor_xml(f));
    g.children.push_back(std::move(s));
  }
  if (!b.symptoms.items.empty() || b.symptoms.source) {
    XmlElement s = node("symptoms");
    set_opt(s, "source", b.symptoms.source);
    for (const auto& sym : b.symptoms.items) {
      XmlElement x = node("symptom");
      x.set_attribute("text", sym.text);
      set_opt(x, "category", sym.category);
      set_opt(x, "subcategory", sym.subcategory);
      set_opt(x, "source", sym.source);
      add_hints(x, sym.hints);
      add_examples(x, sym.examples);
      s.children.push_back(std::move(x));
    }
    g.children.push_back(std::move(s));
  }
  if (!b.outcomes.items.empty() || !b.outcomes.noc_labels.empty() || b.outcomes.source) {
    XmlElement s = node("outcomes");
    set_opt(s, "source", b.outcomes.source);
    add_labels(s, b.outcomes.noc_labels);
    for (const auto& o : b.outcomes.items) {
      XmlElement x = node("outcome");
      x.set_attribute("id", o.id);
      x.set_attribute("goal", std::string(to_string(o.goal)));
      x.set_attribute("text", o.text);
      set_opt(x, "source", o.source);
      add_hints(x, o.hints);
      add_examples(x, o.examples);
      add_inputs(x, o.inputs);
      s.children.push_back(std::move(x));
    }
    g.children.push_back(std::move(s));
  }
  if (!b.tasks.roots.empty() || !b.tasks.nic_labels.empty() || b.tasks.source) {
    XmlElement s = node("tasks");
    set_opt(s, "source", b.tasks.source);
    add_labels(s, b.tasks.nic_labels);
    for (const auto& n : b.tasks.roots) s.children.push_back(task_xml(n));
    g.children.push_back(std::move(s));
  }
  if (!b.documentations.items.empty() || b.documentations.source) {
    XmlElement s = node("documentations");
    set_opt(s, "source", b.documentations.source);
    for (const auto& d : b.documentations.items) {
      XmlElement x = node("documentation");
      x.set_attribute("id", d.id);
      x.set_attribute("text", d.text);
      set_opt(x, "source", d.source);
      add_hints(x, d.hints);
      add_examples(x, d.examples);
      add_inputs(x, d.inputs);
      s.children.push_back(std::move(x));
    }
    g.children.push_back(std::move(s));
  }
  root.children.push_back(std::move(g));
  return root;
}

std::string serialize_document(const GuidelineDocument& doc) { return write_xml(document_to_xml(doc)); }

}  // namespace nnn

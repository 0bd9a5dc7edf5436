#include "nnn/inputschema.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "nnn/model.hpp"

namespace nnn {

std::string_view to_string(PatternKind k) {
  switch (k) {
    case PatternKind::element: return "element";
    case PatternKind::attribute: return "attribute";
    case PatternKind::text: return "text";
    case PatternKind::data: return "data";
    case PatternKind::choice: return "choice";
    case PatternKind::optional: return "optional";
    case PatternKind::one_or_more: return "oneOrMore";
    case PatternKind::zero_or_more: return "zeroOrMore";
    case PatternKind::literal: return "literal";
  }
  return "text";
}

std::string_view to_string(Datatype t) {
  switch (t) {
    case Datatype::string: return "string";
    case Datatype::integer: return "integer";
    case Datatype::date: return "date";
  }
  return "string";
}

std::string_view to_string(DataParam p) {
  switch (p) {
    case DataParam::min_length: return "minLength";
    case DataParam::max_length: return "maxLength";
    case DataParam::min_inclusive: return "minInclusive";
    case DataParam::max_inclusive: return "maxInclusive";
  }
  return "minLength";
}

PatternNode PatternNode::element(std::string name, std::vector<PatternNode> content) {
  PatternNode n;
  n.kind = PatternKind::element;
  n.name = std::move(name);
  n.children = std::move(content);
  return n;
}

PatternNode PatternNode::attribute(std::string name, PatternNode value) {
  PatternNode n;
  n.kind = PatternKind::attribute;
  n.name = std::move(name);
  n.children.push_back(std::move(value));
  return n;
}

PatternNode PatternNode::any_text() { return PatternNode{}; }

PatternNode PatternNode::data(Datatype type, std::map<DataParam, std::string> params) {
  PatternNode n;
  n.kind = PatternKind::data;
  n.datatype = type;
  n.params = std::move(params);
  return n;
}

PatternNode PatternNode::choice(std::vector<PatternNode> alternatives) {
  PatternNode n;
  n.kind = PatternKind::choice;
  n.children = std::move(alternatives);
  return n;
}

namespace {

PatternNode wrap(PatternKind k, PatternNode inner) {
  PatternNode n;
  n.kind = k;
  n.children.push_back(std::move(inner));
  return n;
}

}  // namespace

PatternNode PatternNode::optional(PatternNode inner) { return wrap(PatternKind::optional, std::move(inner)); }
PatternNode PatternNode::one_or_more(PatternNode inner) {
  return wrap(PatternKind::one_or_more, std::move(inner));
}
PatternNode PatternNode::zero_or_more(PatternNode inner) {
  return wrap(PatternKind::zero_or_more, std::move(inner));
}

PatternNode PatternNode::literal(std::string text) {
  PatternNode n;
  n.kind = PatternKind::literal;
  n.text = std::move(text);
  return n;
}

// ---------------------------------------------------------------------------
// Datatypes

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_xml_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_xml_space(s.back())) s.remove_suffix(1);
  return s;
}

bool is_textual(PatternKind k) {
  return k == PatternKind::text || k == PatternKind::data || k == PatternKind::literal;
}

bool is_literal_element(const PatternNode& p) {
  return p.kind == PatternKind::element && p.children.size() == 1 &&
         p.children.front().kind == PatternKind::literal;
}

enum class ValueCheck { ok, lexical, bounds };

ValueCheck check_value(Datatype type, const std::map<DataParam, std::string>& params, std::string_view raw) {
  auto param = [&](DataParam p) -> const std::string* {
    auto it = params.find(p);
    return it == params.end() ? nullptr : &it->second;
  };
  switch (type) {
    case Datatype::string: {
      const auto len = static_cast<std::int64_t>(utf8_length(raw));
      if (const auto* v = param(DataParam::min_length); v && len < *parse_integer(*v)) return ValueCheck::bounds;
      if (const auto* v = param(DataParam::max_length); v && len > *parse_integer(*v)) return ValueCheck::bounds;
      return ValueCheck::ok;
    }
    case Datatype::integer: {
      auto n = parse_integer(trim(raw));
      if (!n) return ValueCheck::lexical;
      if (const auto* v = param(DataParam::min_inclusive); v && *n < *parse_integer(*v)) return ValueCheck::bounds;
      if (const auto* v = param(DataParam::max_inclusive); v && *n > *parse_integer(*v)) return ValueCheck::bounds;
      return ValueCheck::ok;
    }
    case Datatype::date: {
      auto d = parse_date(trim(raw));
      if (!d) return ValueCheck::lexical;
      if (const auto* v = param(DataParam::min_inclusive); v && *d < *parse_date(*v)) return ValueCheck::bounds;
      if (const auto* v = param(DataParam::max_inclusive); v && *d > *parse_date(*v)) return ValueCheck::bounds;
      return ValueCheck::ok;
    }
  }
  return ValueCheck::lexical;
}

}  // namespace

bool datatype_accepts(Datatype type, const std::map<DataParam, std::string>& params, std::string_view lexical) {
  return check_value(type, params, lexical) == ValueCheck::ok;
}

// ---------------------------------------------------------------------------
// Compilation

namespace {

enum class Context {
  root,             // directly under <input>
  element_content,  // direct child of an element pattern
  element_optional, // inside an optional that is itself direct element content
  nested,           // inside choice / oneOrMore / zeroOrMore / nested optional
};

[[noreturn]] void unsupported(const std::string& path, const std::string& why) {
  throw DiagnosticError(make_diagnostic(codes::pattern_unsupported, path, why));
}

[[noreturn]] void bad_param(const std::string& path, const std::string& why) {
  throw DiagnosticError(make_diagnostic(codes::pattern_param, path, why));
}

std::optional<DataParam> param_from_name(std::string_view s) {
  for (auto p : {DataParam::min_length, DataParam::max_length, DataParam::min_inclusive, DataParam::max_inclusive}) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

class Compiler {
 public:
  PatternNode compile(const XmlElement& x, const NamespaceScope& parent, Context ctx, const std::string& path) {
    const NamespaceScope scope = parent.enter(x);
    auto [ns, local] = scope.resolve(x.name);
    const std::string here = path + "/" + local;
    if (ns != kRelaxNgNamespace) {
      unsupported(here, "<" + x.name + "> is not in the RelaxNG structure namespace");
    }

    if (local == "element") return compile_element(x, scope, ctx, here);
    if (local == "attribute") {
      if (ctx != Context::element_content && ctx != Context::element_optional) {
        unsupported(here, "attributes must be direct element content or wrapped in one optional");
      }
      return compile_attribute(x, scope, here);
    }
    if (local == "text" || local == "data") {
      if (ctx != Context::element_content) unsupported(here, "<" + local + "> must be direct element content");
      if (!x.text.empty()) unsupported(here, "unexpected text inside <" + local + ">");
      if (local == "text") {
        if (!x.children.empty()) unsupported(here, "<text> takes no children");
        return PatternNode::any_text();
      }
      return compile_data(x, scope, here);
    }
    if (local == "choice" || local == "optional" || local == "oneOrMore" || local == "zeroOrMore") {
      if (!x.text.empty()) unsupported(here, "unexpected text inside <" + local + ">");
      if (x.children.empty()) unsupported(here, "<" + local + "> needs a child pattern");
      if (local == "choice") {
        std::vector<PatternNode> alts;
        for (const auto& c : x.children) alts.push_back(compile(c, scope, Context::nested, here));
        return PatternNode::choice(std::move(alts));
      }
      if (x.children.size() != 1) unsupported(here, "<" + local + "> with several children (implicit group)");
      const Context inner_ctx =
          local == "optional" && ctx == Context::element_content ? Context::element_optional : Context::nested;
      PatternNode inner = compile(x.children.front(), scope, inner_ctx, here);
      if (local == "optional") return PatternNode::optional(std::move(inner));
      if (local == "oneOrMore") return PatternNode::one_or_more(std::move(inner));
      return PatternNode::zero_or_more(std::move(inner));
    }
    unsupported(here, "<" + local + "> is outside the supported schema subset");
  }

 private:
  PatternNode compile_element(const XmlElement& x, const NamespaceScope& scope, Context ctx,
                              const std::string& here) {
    if (ctx == Context::element_optional) {
      // optional(element) directly in element content is fine
    }
    const std::string* name = x.attribute("name");
    if (name == nullptr) unsupported(here, "<element> without a name attribute (name classes)");
    for (const auto& [k, v] : x.attributes) {
      if (k != "name" && k != "ns" && k != "datatypeLibrary" && k != "xmlns" && k.rfind("xmlns:", 0) != 0) {
        unsupported(here, "attribute '" + k + "' on <element>");
      }
    }
    const std::string named = here + "[@name='" + *name + "']";
    std::vector<PatternNode> content;
    for (const auto& c : x.children) content.push_back(compile(c, scope, Context::element_content, named));
    if (!x.text.empty()) content.push_back(PatternNode::literal(x.text));

    int textual = 0;
    bool has_data = false;
    bool has_literal = false;
    bool has_elements = false;
    for (const auto& c : content) {
      if (is_textual(c.kind)) ++textual;
      if (c.kind == PatternKind::data) has_data = true;
      if (c.kind == PatternKind::literal) has_literal = true;
      const bool attr_like = c.kind == PatternKind::attribute ||
                             (c.kind == PatternKind::optional && c.inner().kind == PatternKind::attribute);
      if (!is_textual(c.kind) && !attr_like) has_elements = true;
    }
    if (textual > 1) unsupported(named, "more than one text/data/literal in one element");
    if ((has_data || has_literal) && has_elements) {
      unsupported(named, "typed or literal text mixed with child elements");
    }
    // Literal text is read after the child patterns; keep it last so that
    // canonical XML (text before children) compiles to the same tree.
    return PatternNode::element(*name, std::move(content));
  }

  PatternNode compile_attribute(const XmlElement& x, const NamespaceScope& scope, const std::string& here) {
    const std::string* name = x.attribute("name");
    if (name == nullptr) unsupported(here, "<attribute> without a name attribute (name classes)");
    if (!x.text.empty()) unsupported(here, "literal attribute values are not supported");
    if (x.children.empty()) return PatternNode::attribute(*name, PatternNode::any_text());
    if (x.children.size() != 1) unsupported(here, "<attribute> with several value patterns");
    const NamespaceScope inner = scope.enter(x.children.front());
    auto [ns, local] = inner.resolve(x.children.front().name);
    if (ns != kRelaxNgNamespace || (local != "text" && local != "data")) {
      unsupported(here, "attribute values must be <text/> or <data>");
    }
    PatternNode value = compile(x.children.front(), scope, Context::element_content, here);
    return PatternNode::attribute(*name, std::move(value));
  }

  PatternNode compile_data(const XmlElement& x, const NamespaceScope& scope, const std::string& here) {
    const std::string* type = x.attribute("type");
    if (type == nullptr) bad_param(here, "<data> without a type attribute");
    Datatype dt;
    if (*type == "string") {
      dt = Datatype::string;
    } else if (*type == "integer") {
      dt = Datatype::integer;
    } else if (*type == "date") {
      dt = Datatype::date;
    } else {
      unsupported(here, "datatype '" + *type + "' (only string, integer, date)");
    }
    std::map<DataParam, std::string> params;
    for (const auto& c : x.children) {
      const NamespaceScope cs = scope.enter(x).enter(c);
      auto [ns, local] = cs.resolve(c.name);
      if (ns != kRelaxNgNamespace || local != "param") unsupported(here, "<" + c.name + "> inside <data>");
      const std::string* pname = c.attribute("name");
      if (pname == nullptr) bad_param(here, "<param> without a name");
      auto p = param_from_name(*pname);
      if (!p) bad_param(here, "unknown parameter '" + *pname + "'");
      const bool length = *p == DataParam::min_length || *p == DataParam::max_length;
      if (length != (dt == Datatype::string)) {
        bad_param(here, "parameter '" + *pname + "' is not valid for datatype " + std::string(to_string(dt)));
      }
      const std::string value(trim(c.text));
      if (length) {
        auto n = parse_integer(value);
        if (!n || *n < 0) bad_param(here, "'" + *pname + "' must be a non-negative integer");
      } else if (dt == Datatype::integer) {
        if (!parse_integer(value)) bad_param(here, "'" + *pname + "' must be an integer");
      } else if (!parse_date(value)) {
        bad_param(here, "'" + *pname + "' must be a date (YYYY-MM-DD)");
      }
      if (!params.emplace(*p, value).second) bad_param(here, "parameter '" + *pname + "' given twice");
    }
    return PatternNode::data(dt, std::move(params));
  }
};

}  // namespace

PatternNode compile_pattern(const XmlElement& fragment, const NamespaceScope& scope) {
  return Compiler{}.compile(fragment, scope, Context::root, "");
}

PatternNode compile_input_body(const XmlElement& input, const NamespaceScope& scope) {
  const NamespaceScope inner = scope.enter(input);
  if (!input.text.empty()) unsupported("", "text directly inside <input>");
  if (input.children.size() != 1) {
    unsupported("", "an input body must hold exactly one pattern (found " +
                        std::to_string(input.children.size()) + ")");
  }
  return compile_pattern(input.children.front(), inner);
}

XmlElement pattern_to_xml(const PatternNode& p) {
  XmlElement x;
  switch (p.kind) {
    case PatternKind::element:
      x.name = "element";
      x.set_attribute("name", p.name);
      for (const auto& c : p.children) {
        if (c.kind == PatternKind::literal) {
          x.text = c.text;
        } else {
          x.children.push_back(pattern_to_xml(c));
        }
      }
      break;
    case PatternKind::attribute:
      x.name = "attribute";
      x.set_attribute("name", p.name);
      x.children.push_back(pattern_to_xml(p.inner()));
      break;
    case PatternKind::text:
      x.name = "text";
      break;
    case PatternKind::data:
      x.name = "data";
      x.set_attribute("type", std::string(to_string(p.datatype)));
      for (const auto& [k, v] : p.params) {
        XmlElement param;
        param.name = "param";
        param.set_attribute("name", std::string(to_string(k)));
        param.text = v;
        x.children.push_back(std::move(param));
      }
      break;
    case PatternKind::choice:
    case PatternKind::optional:
    case PatternKind::one_or_more:
    case PatternKind::zero_or_more:
      x.name = std::string(to_string(p.kind));
      for (const auto& c : p.children) x.children.push_back(pattern_to_xml(c));
      break;
    case PatternKind::literal:
      // Only reachable for a bare literal; canonical form is element text.
      x.name = "element";
      x.text = p.text;
      break;
  }
  return x;
}

// ---------------------------------------------------------------------------
// Record matching

namespace {

using Positions = std::set<std::size_t>;

struct ContentModel {
  std::vector<std::pair<const PatternNode*, bool>> attributes;  // pattern, required
  const PatternNode* textual = nullptr;
  std::vector<PatternNode> sequence;  // element content, literal runs folded into choices
};

ContentModel content_model(const PatternNode& element) {
  ContentModel m;
  std::vector<const PatternNode*> rest;
  for (const auto& c : element.children) {
    if (c.kind == PatternKind::attribute) {
      m.attributes.emplace_back(&c, true);
    } else if (c.kind == PatternKind::optional && c.inner().kind == PatternKind::attribute) {
      m.attributes.emplace_back(&c.inner(), false);
    } else if (is_textual(c.kind)) {
      m.textual = &c;
    } else {
      rest.push_back(&c);
    }
  }
  for (std::size_t i = 0; i < rest.size();) {
    std::size_t j = i;
    while (j < rest.size() && is_literal_element(*rest[j])) ++j;
    if (j - i >= 2) {
      std::vector<PatternNode> alts;
      for (std::size_t k = i; k < j; ++k) alts.push_back(*rest[k]);
      m.sequence.push_back(PatternNode::choice(std::move(alts)));
      i = j;
    } else {
      m.sequence.push_back(*rest[i]);
      ++i;
    }
  }
  return m;
}

bool is_namespace_attr(std::string_view k) { return k == "xmlns" || k.rfind("xmlns:", 0) == 0; }

class Matcher {
 public:
  /// Full (deep) match of an element pattern against one record element.
  bool element_matches(const PatternNode& p, const XmlElement& r) {
    auto key = std::make_pair(&p, &r);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const bool ok = element_matches_uncached(p, r);
    memo_.emplace(key, ok);
    return ok;
  }

  /// Positions reachable after matching `p` from each start. `deep` selects
  /// full element matching versus name-only alignment.
  Positions advance(const PatternNode& p, const Positions& starts, const std::vector<XmlElement>& kids,
                    bool deep) {
    Positions out;
    switch (p.kind) {
      case PatternKind::element:
        for (auto s : starts) {
          if (s < kids.size() && kids[s].name == p.name && (!deep || element_matches(p, kids[s]))) {
            out.insert(s + 1);
          }
        }
        break;
      case PatternKind::choice:
        for (const auto& a : p.children) {
          auto r = advance(a, starts, kids, deep);
          out.insert(r.begin(), r.end());
        }
        break;
      case PatternKind::optional:
        out = starts;
        {
          auto r = advance(p.inner(), starts, kids, deep);
          out.insert(r.begin(), r.end());
        }
        break;
      case PatternKind::zero_or_more:
        out = closure(p.inner(), starts, kids, deep);
        break;
      case PatternKind::one_or_more:
        out = closure(p.inner(), advance(p.inner(), starts, kids, deep), kids, deep);
        break;
      default:
        break;  // attributes and text never consume child elements
    }
    return out;
  }

  Positions sequence(const std::vector<PatternNode>& seq, Positions starts, const std::vector<XmlElement>& kids,
                     bool deep, std::size_t* furthest = nullptr) {
    auto note = [&](const Positions& ps) {
      if (furthest != nullptr && !ps.empty()) *furthest = std::max(*furthest, *ps.rbegin());
    };
    note(starts);
    for (const auto& p : seq) {
      starts = advance(p, starts, kids, deep);
      note(starts);
      if (starts.empty()) break;
    }
    return starts;
  }

 private:
  Positions closure(const PatternNode& inner, Positions starts, const std::vector<XmlElement>& kids, bool deep) {
    Positions all = starts;
    Positions frontier = std::move(starts);
    while (!frontier.empty()) {
      Positions next;
      for (auto s : advance(inner, frontier, kids, deep)) {
        if (all.insert(s).second) next.insert(s);
      }
      frontier = std::move(next);
    }
    return all;
  }

  bool element_matches_uncached(const PatternNode& p, const XmlElement& r) {
    if (p.name != r.name) return false;
    const ContentModel m = content_model(p);
    if (!attributes_match(m, r)) return false;
    if (!text_matches(m, r)) return false;
    auto ends = sequence(m.sequence, Positions{0}, r.children, true);
    return ends.count(r.children.size()) > 0;
  }

  static bool attributes_match(const ContentModel& m, const XmlElement& r) {
    for (const auto& [k, v] : r.attributes) {
      if (is_namespace_attr(k)) continue;
      auto it = std::find_if(m.attributes.begin(), m.attributes.end(),
                             [&](const auto& a) { return a.first->name == k; });
      if (it == m.attributes.end()) return false;
      const PatternNode& value = it->first->inner();
      if (value.kind == PatternKind::data && !datatype_accepts(value.datatype, value.params, v)) return false;
    }
    for (const auto& [a, required] : m.attributes) {
      if (required && r.attribute(a->name) == nullptr) return false;
    }
    return true;
  }

  static bool text_matches(const ContentModel& m, const XmlElement& r) {
    if (m.textual == nullptr) return r.text.empty();
    switch (m.textual->kind) {
      case PatternKind::text:
        return true;
      case PatternKind::data:
        return r.children.empty() && datatype_accepts(m.textual->datatype, m.textual->params, r.text);
      case PatternKind::literal:
        return r.children.empty() && (r.text.empty() || trim(r.text) == trim(m.textual->text));
      default:
        return false;
    }
  }

  std::map<std::pair<const PatternNode*, const XmlElement*>, bool> memo_;
};

class Explainer {
 public:
  explicit Explainer(Matcher& m) : m_(m) {}

  ValidationReport report;

  void element(const PatternNode& p, const XmlElement& r, const std::string& path) {
    if (p.name != r.name) {
      add(codes::rec_element, path, "expected <" + p.name + ">, found <" + r.name + ">");
      return;
    }
    const std::size_t before = report.diagnostics().size();
    const ContentModel cm = content_model(p);
    attributes(cm, r, path);
    text(cm, r, path);
    children(cm.sequence, r.children, path);
    if (report.diagnostics().size() == before) {
      add(codes::rec_element, path, "<" + r.name + "> content matches no alternative of the pattern");
    }
  }

  void root(const PatternNode& p, const XmlElement& r) {
    std::vector<XmlElement> kids{r};
    children({p}, kids, "");
  }

 private:
  void add(std::string_view code, const std::string& path, std::string message) {
    report.add(make_diagnostic(code, path.empty() ? "/" : path, std::move(message)));
  }

  void value(const PatternNode& v, std::string_view raw, const std::string& path, const std::string& what) {
    if (v.kind != PatternKind::data) return;
    switch (check_value(v.datatype, v.params, raw)) {
      case ValueCheck::ok:
        break;
      case ValueCheck::lexical:
        add(codes::rec_datatype, path,
            what + " '" + std::string(raw) + "' is not a valid " + std::string(to_string(v.datatype)));
        break;
      case ValueCheck::bounds:
        add(codes::rec_bounds, path, what + " '" + std::string(raw) + "' is outside " + describe_bounds(v));
        break;
    }
  }

  static std::string describe_bounds(const PatternNode& v) {
    std::string out;
    for (const auto& [k, val] : v.params) {
      if (!out.empty()) out += ", ";
      out += std::string(to_string(k)) + " " + val;
    }
    if (v.datatype == Datatype::string) out = "[" + out + "] (length in characters)";
    return out.empty() ? "bounds" : out;
  }

  void attributes(const ContentModel& m, const XmlElement& r, const std::string& path) {
    for (const auto& [k, v] : r.attributes) {
      if (is_namespace_attr(k)) continue;
      auto it = std::find_if(m.attributes.begin(), m.attributes.end(),
                             [&](const auto& a) { return a.first->name == k; });
      if (it == m.attributes.end()) {
        add(codes::rec_extra, path + "/@" + k, "attribute '" + k + "' is not allowed here");
        continue;
      }
      value(it->first->inner(), v, path + "/@" + k, "attribute value");
    }
    for (const auto& [a, required] : m.attributes) {
      if (required && r.attribute(a->name) == nullptr) {
        add(codes::rec_element, path, "missing attribute '" + a->name + "'");
      }
    }
  }

  void text(const ContentModel& m, const XmlElement& r, const std::string& path) {
    if (m.textual == nullptr) {
      if (!r.text.empty()) add(codes::rec_extra, path, "text content is not allowed in <" + r.name + ">");
      return;
    }
    if (m.textual->kind == PatternKind::text) return;
    if (!r.children.empty()) {
      add(codes::rec_extra, path, "<" + r.name + "> must not contain child elements");
      return;
    }
    if (m.textual->kind == PatternKind::data) {
      value(*m.textual, r.text, path, "value");
    } else if (!r.text.empty() && trim(r.text) != trim(m.textual->text)) {
      add(codes::rec_datatype, path,
          "text '" + std::string(trim(r.text)) + "' must be '" + std::string(trim(m.textual->text)) + "'");
    }
  }

  void children(const std::vector<PatternNode>& seq, const std::vector<XmlElement>& kids, const std::string& path) {
    if (m_.sequence(seq, Positions{0}, kids, true).count(kids.size()) > 0) return;

    std::size_t furthest = 0;
    auto shallow = m_.sequence(seq, Positions{0}, kids, false, &furthest);
    if (shallow.count(kids.size()) == 0) {
      if (furthest >= kids.size()) {
        add(codes::rec_element, path, "required element missing" + expected_after(seq));
        return;
      }
      const auto& bad = kids[furthest];
      const std::string kid_path = child_item_path(path, kids, furthest);
      const bool could_end = m_.sequence(seq, Positions{0}, kids, false).count(furthest) > 0 ||
                             ends_at(seq, kids, furthest);
      add(could_end ? codes::rec_extra : codes::rec_element, kid_path,
          "unexpected element <" + bad.name + ">");
      return;
    }

    // Names line up; find one alignment and explain each aligned element.
    std::vector<const PatternNode*> assignment(kids.size(), nullptr);
    std::size_t budget = 100000;
    if (align(seq, 0, kids, 0, assignment, budget)) {
      const std::size_t before = report.diagnostics().size();
      for (std::size_t i = 0; i < kids.size(); ++i) {
        if (assignment[i] != nullptr && !m_.element_matches(*assignment[i], kids[i])) {
          element(*assignment[i], kids[i], child_item_path(path, kids, i));
        }
      }
      if (report.diagnostics().size() > before) return;
    }
    add(codes::rec_element, path, "child elements match no alternative of the pattern");
  }

  bool ends_at(const std::vector<PatternNode>& seq, const std::vector<XmlElement>& kids, std::size_t pos) {
    std::vector<XmlElement> prefix(kids.begin(), kids.begin() + static_cast<std::ptrdiff_t>(pos));
    return m_.sequence(seq, Positions{0}, prefix, false).count(pos) > 0;
  }

  static std::string expected_after(const std::vector<PatternNode>& seq) {
    for (const auto& p : seq) {
      if (p.kind == PatternKind::element) return " (e.g. <" + p.name + ">)";
    }
    return "";
  }

  static std::string child_item_path(const std::string& parent, const std::vector<XmlElement>& kids, std::size_t i) {
    std::size_t ordinal = 0;
    for (std::size_t k = 0; k <= i; ++k) {
      if (kids[k].name == kids[i].name) ++ordinal;
    }
    if (parent.empty()) return "/" + kids[i].name;
    return item_path(parent, kids[i].name, ordinal);
  }

  // Backtracking name-only alignment of a pattern sequence to record children.
  bool align(const std::vector<PatternNode>& seq, std::size_t si, const std::vector<XmlElement>& kids,
             std::size_t ki, std::vector<const PatternNode*>& out, std::size_t& budget) {
    if (budget == 0) return false;
    --budget;
    if (si == seq.size()) return ki == kids.size();
    return align_one(seq[si], kids, ki, out, budget, [&](std::size_t next) {
      return align(seq, si + 1, kids, next, out, budget);
    });
  }

  using Cont = std::function<bool(std::size_t)>;

  bool align_one(const PatternNode& p, const std::vector<XmlElement>& kids, std::size_t ki,
                 std::vector<const PatternNode*>& out, std::size_t& budget, const Cont& k) {
    if (budget == 0) return false;
    --budget;
    switch (p.kind) {
      case PatternKind::element:
        if (ki < kids.size() && kids[ki].name == p.name) {
          out[ki] = &p;
          if (k(ki + 1)) return true;
          out[ki] = nullptr;
        }
        return false;
      case PatternKind::choice:
        for (const auto& a : p.children) {
          if (align_one(a, kids, ki, out, budget, k)) return true;
        }
        return false;
      case PatternKind::optional:
        return align_one(p.inner(), kids, ki, out, budget, k) || k(ki);
      case PatternKind::zero_or_more:
        return repeat(p.inner(), kids, ki, out, budget, k, 0);
      case PatternKind::one_or_more:
        return repeat(p.inner(), kids, ki, out, budget, k, 1);
      default:
        return k(ki);
    }
  }

  bool repeat(const PatternNode& inner, const std::vector<XmlElement>& kids, std::size_t ki,
              std::vector<const PatternNode*>& out, std::size_t& budget, const Cont& k, int min) {
    if (min <= 0 && k(ki)) return true;
    return align_one(inner, kids, ki, out, budget, [&](std::size_t next) {
      if (next == ki) return false;  // no progress
      return repeat(inner, kids, next, out, budget, k, min - 1);
    });
  }

  Matcher& m_;
};

}  // namespace

ValidationReport validate_record(const PatternNode& pattern, const XmlElement& record) {
  Matcher matcher;
  std::vector<XmlElement> kids{record};
  std::vector<PatternNode> seq{pattern};
  if (matcher.sequence(seq, Positions{0}, kids, true).count(1) > 0) return {};
  Explainer ex(matcher);
  ex.root(pattern, record);
  if (ex.report.empty()) {
    ex.report.add(make_diagnostic(codes::rec_element, "/" + record.name, "record does not match the pattern"));
  }
  return std::move(ex.report);
}

}  // namespace nnn

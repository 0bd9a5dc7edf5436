#include "nnn/xml.hpp"

#include <algorithm>
#include <climits>

#include <expat.h>

namespace nnn {

const std::string* XmlElement::attribute(std::string_view key) const {
  for (const auto& [k, v] : attributes) {
    if (k == key) return &v;
  }
  return nullptr;
}

void XmlElement::set_attribute(std::string key, std::string value) {
  for (auto& [k, v] : attributes) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  attributes.emplace_back(std::move(key), std::move(value));
}

bool XmlElement::remove_attribute(std::string_view key) {
  auto it = std::find_if(attributes.begin(), attributes.end(),
                         [&](const auto& kv) { return kv.first == key; });
  if (it == attributes.end()) return false;
  attributes.erase(it);
  return true;
}

bool XmlElement::same_as(const XmlElement& other) const {
  if (name != other.name || text != other.text || children != other.children) return false;
  auto a = attributes;
  auto b = other.attributes;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

bool is_xml_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::string normalize_space(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending = false;
  for (char c : s) {
    if (is_xml_space(c)) {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

std::size_t utf8_length(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

namespace {

constexpr int kMaxDepth = 256;

struct TreeBuilder {
  XML_Parser parser = nullptr;
  std::vector<XmlElement> stack;
  std::optional<XmlElement> root;
  std::optional<XmlParseError> error;

  void fail(std::string message) {
    if (!error) {
      error = XmlParseError{std::move(message), static_cast<int>(XML_GetCurrentLineNumber(parser))};
    }
    XML_StopParser(parser, XML_FALSE);
  }
};

bool only_space(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return is_xml_space(c); });
}

void XMLCALL on_start(void* data, const XML_Char* name, const XML_Char** attrs) {
  auto* b = static_cast<TreeBuilder*>(data);
  if (static_cast<int>(b->stack.size()) >= kMaxDepth) {
    b->fail("element nesting deeper than " + std::to_string(kMaxDepth));
    return;
  }
  XmlElement e;
  e.name = name;
  e.line = static_cast<int>(XML_GetCurrentLineNumber(b->parser));
  for (int i = 0; attrs[i] != nullptr; i += 2) e.attributes.emplace_back(attrs[i], attrs[i + 1]);
  b->stack.push_back(std::move(e));
}

void XMLCALL on_end(void* data, const XML_Char*) {
  auto* b = static_cast<TreeBuilder*>(data);
  if (b->stack.empty()) return;
  XmlElement e = std::move(b->stack.back());
  b->stack.pop_back();
  if (only_space(e.text)) e.text.clear();
  if (b->stack.empty()) {
    b->root = std::move(e);
  } else {
    b->stack.back().children.push_back(std::move(e));
  }
}

void XMLCALL on_text(void* data, const XML_Char* s, int len) {
  auto* b = static_cast<TreeBuilder*>(data);
  if (!b->stack.empty()) b->stack.back().text.append(s, static_cast<std::size_t>(len));
}

void XMLCALL on_doctype(void* data, const XML_Char*, const XML_Char*, const XML_Char*, int) {
  static_cast<TreeBuilder*>(data)->fail("DOCTYPE declarations are not accepted");
}

void XMLCALL on_decl(void* data, const XML_Char*, const XML_Char* encoding, int) {
  if (encoding == nullptr) return;
  std::string enc(encoding);
  std::transform(enc.begin(), enc.end(), enc.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (enc != "utf-8" && enc != "utf8") {
    static_cast<TreeBuilder*>(data)->fail("declared encoding '" + std::string(encoding) +
                                          "' is not UTF-8");
  }
}

struct ParserHandle {
  XML_Parser p;
  explicit ParserHandle(XML_Parser parser) : p(parser) {}
  ~ParserHandle() { XML_ParserFree(p); }
  ParserHandle(const ParserHandle&) = delete;
  ParserHandle& operator=(const ParserHandle&) = delete;
};

}  // namespace

XmlParseOutcome parse_xml(std::string_view text) {
  if (text.size() >= 2 && ((static_cast<unsigned char>(text[0]) == 0xFE &&
                            static_cast<unsigned char>(text[1]) == 0xFF) ||
                           (static_cast<unsigned char>(text[0]) == 0xFF &&
                            static_cast<unsigned char>(text[1]) == 0xFE))) {
    return {std::nullopt, XmlParseError{"UTF-16 input is not accepted", 1}};
  }
  ParserHandle handle(XML_ParserCreate("UTF-8"));
  if (handle.p == nullptr) return {std::nullopt, XmlParseError{"cannot allocate XML parser", 0}};

  TreeBuilder builder;
  builder.parser = handle.p;
  XML_SetUserData(handle.p, &builder);
  XML_SetElementHandler(handle.p, on_start, on_end);
  XML_SetCharacterDataHandler(handle.p, on_text);
  XML_SetStartDoctypeDeclHandler(handle.p, on_doctype);
  XML_SetXmlDeclHandler(handle.p, on_decl);
  XML_SetParamEntityParsing(handle.p, XML_PARAM_ENTITY_PARSING_NEVER);

  constexpr std::size_t kChunk = 1 << 20;
  std::size_t offset = 0;
  do {
    const std::size_t n = std::min(kChunk, text.size() - offset);
    const bool last = offset + n == text.size();
    if (XML_Parse(handle.p, text.data() + offset, static_cast<int>(n), last ? XML_TRUE : XML_FALSE) ==
        XML_STATUS_ERROR) {
      if (!builder.error) {
        builder.error = XmlParseError{XML_ErrorString(XML_GetErrorCode(handle.p)),
                                      static_cast<int>(XML_GetCurrentLineNumber(handle.p))};
      }
      break;
    }
    offset += n;
  } while (offset < text.size());

  if (builder.error) return {std::nullopt, builder.error};
  if (!builder.root) return {std::nullopt, XmlParseError{"no root element", 1}};
  return {std::move(builder.root), std::nullopt};
}

std::string escape_text(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '\r': out += "&#13;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string escape_attribute(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      case '\t': out += "&#9;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

void write_xml(std::string& out, const XmlElement& e, const XmlWriteOptions& opts, int depth) {
  const bool inline_mode = depth < 0;
  if (!inline_mode) out.append(static_cast<std::size_t>(depth * opts.indent), ' ');
  out += '<';
  out += e.name;
  auto attrs = e.attributes;
  if (opts.sort_attributes) std::sort(attrs.begin(), attrs.end());
  for (const auto& [k, v] : attrs) {
    out += ' ';
    out += k;
    out += "=\"";
    out += escape_attribute(v);
    out += '"';
  }
  if (e.children.empty() && e.text.empty()) {
    out += inline_mode ? "/>" : "/>\n";
    return;
  }
  out += '>';
  if (e.children.empty()) {
    out += escape_text(e.text);
  } else if (!e.text.empty() || inline_mode) {
    // Mixed content: indentation would become part of the text.
    out += escape_text(e.text);
    for (const auto& c : e.children) write_xml(out, c, opts, -1);
  } else {
    out += '\n';
    for (const auto& c : e.children) write_xml(out, c, opts, depth + 1);
    out.append(static_cast<std::size_t>(depth * opts.indent), ' ');
  }
  out += "</";
  out += e.name;
  out += inline_mode ? ">" : ">\n";
}

std::string write_xml(const XmlElement& root, const XmlWriteOptions& opts) {
  std::string out;
  if (opts.declaration) out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  write_xml(out, root, opts, 0);
  return out;
}

NamespaceScope NamespaceScope::enter(const XmlElement& e) const {
  NamespaceScope next = *this;
  for (const auto& [k, v] : e.attributes) {
    if (k == "xmlns") {
      next.bindings_.emplace_back("", v);
    } else if (k.rfind("xmlns:", 0) == 0) {
      next.bindings_.emplace_back(k.substr(6), v);
    }
  }
  return next;
}

std::pair<std::string, std::string> NamespaceScope::resolve(std::string_view qname) const {
  std::string prefix;
  std::string local(qname);
  if (auto colon = qname.find(':'); colon != std::string_view::npos) {
    prefix = std::string(qname.substr(0, colon));
    local = std::string(qname.substr(colon + 1));
  }
  for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it) {
    if (it->first == prefix) return {it->second, local};
  }
  return {std::string(), local};
}

}  // namespace nnn

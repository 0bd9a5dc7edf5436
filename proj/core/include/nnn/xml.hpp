#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nnn {

inline constexpr std::string_view kRelaxNgNamespace = "http://relaxng.org/ns/structure/1.0";

/// Element tree produced by the XML reader. Character data is concatenated
/// per element; whitespace-only text is dropped. Comments and processing
/// instructions are discarded.
struct XmlElement {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<XmlElement> children;
  std::string text;
  int line = 0;

  const std::string* attribute(std::string_view key) const;
  void set_attribute(std::string key, std::string value);
  bool remove_attribute(std::string_view key);

  /// Structural equality, ignoring `line` and attribute order.
  bool same_as(const XmlElement& other) const;
  friend bool operator==(const XmlElement& a, const XmlElement& b) { return a.same_as(b); }
};

struct XmlParseError {
  std::string message;
  int line = 0;
};

/// Parses a complete UTF-8 document. DOCTYPE declarations and non-UTF-8
/// encodings are rejected; no entity beyond the predefined five is expanded.
struct XmlParseOutcome {
  std::optional<XmlElement> root;
  std::optional<XmlParseError> error;
};
XmlParseOutcome parse_xml(std::string_view text);

struct XmlWriteOptions {
  bool declaration = true;
  bool sort_attributes = true;
  int indent = 2;
};

/// Serializes `root` with one element per line. Elements that have both
/// text and children are written inline so the text survives re-parsing.
std::string write_xml(const XmlElement& root, const XmlWriteOptions& opts = {});
void write_xml(std::string& out, const XmlElement& e, const XmlWriteOptions& opts, int depth);

std::string escape_text(std::string_view s);
std::string escape_attribute(std::string_view s);

/// Namespace prefix bindings in scope at an element.
class NamespaceScope {
 public:
  NamespaceScope() = default;
  NamespaceScope enter(const XmlElement& e) const;
  /// Resolved namespace URI and local name of `qname`.
  std::pair<std::string, std::string> resolve(std::string_view qname) const;

 private:
  std::vector<std::pair<std::string, std::string>> bindings_;  // prefix ("" = default) -> uri
};

/// Collapses internal whitespace runs to one space and trims both ends.
std::string normalize_space(std::string_view s);
bool is_xml_space(char c);
/// Number of Unicode scalar values in a UTF-8 string.
std::size_t utf8_length(std::string_view s);

}  // namespace nnn

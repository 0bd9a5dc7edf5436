#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace nnn {

enum class PatternKind {
  element,
  attribute,
  text,
  data,
  choice,
  optional,
  one_or_more,
  zero_or_more,
  literal,
};

enum class Datatype { string, integer, date };
enum class DataParam { min_length, max_length, min_inclusive, max_inclusive };

std::string_view to_string(PatternKind k);
std::string_view to_string(Datatype t);
std::string_view to_string(DataParam p);

/// One node of a compiled input schema. Which fields are meaningful depends
/// on `kind`:
///   element      name, children (content, in order)
///   attribute    name, children[0] (value pattern)
///   data         datatype, params
///   choice       children (alternatives, non-empty)
///   optional / one_or_more / zero_or_more   children[0]
///   literal      text
struct PatternNode {
  PatternKind kind = PatternKind::text;
  std::string name;
  std::string text;
  Datatype datatype = Datatype::string;
  std::map<DataParam, std::string> params;
  std::vector<PatternNode> children;

  static PatternNode element(std::string name, std::vector<PatternNode> content = {});
  static PatternNode attribute(std::string name, PatternNode value);
  static PatternNode any_text();
  static PatternNode data(Datatype type, std::map<DataParam, std::string> params = {});
  static PatternNode choice(std::vector<PatternNode> alternatives);
  static PatternNode optional(PatternNode inner);
  static PatternNode one_or_more(PatternNode inner);
  static PatternNode zero_or_more(PatternNode inner);
  static PatternNode literal(std::string text);

  const PatternNode& inner() const { return children.front(); }

  friend bool operator==(const PatternNode&, const PatternNode&) = default;
};

}  // namespace nnn

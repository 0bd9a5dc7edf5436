#pragma once

#include <string_view>

#include "nnn/diagnostic.hpp"
#include "nnn/pattern.hpp"
#include "nnn/xml.hpp"

namespace nnn {

/// Compiles one schema element (e.g. the `<element>` under an `<input>`)
/// into a pattern tree. `scope` carries the namespace bindings in force at
/// `fragment`'s parent; the fragment itself must resolve to the RelaxNG
/// structure namespace.
///
/// Supported subset: element (with a `name` attribute), attribute, text,
/// data (string | integer | date with length or inclusive-bound params),
/// choice, optional, oneOrMore, zeroOrMore, and literal element text.
/// Attributes may appear directly in an element or wrapped in one optional.
/// Text, data and literals may only be direct element content, and data
/// cannot be mixed with child elements.
///
/// Throws DiagnosticError with E-PATTERN-UNSUPPORTED or E-PATTERN-PARAM.
PatternNode compile_pattern(const XmlElement& fragment, const NamespaceScope& scope = {});

/// Compiles the body of an `<input>` element: exactly one pattern child.
PatternNode compile_input_body(const XmlElement& input, const NamespaceScope& scope = {});

/// Canonical schema XML for a pattern. Element names are unprefixed; the
/// caller binds the default namespace (see kRelaxNgNamespace).
XmlElement pattern_to_xml(const PatternNode& pattern);

/// Checks a record fragment against a pattern. The report is empty iff the
/// record matches. Attributes match unordered, child elements in order. An
/// element whose content is a single literal matches an empty element or
/// one whose trimmed text equals the literal; a run of two or more such
/// sibling patterns acts as a choice of exactly one.
ValidationReport validate_record(const PatternNode& pattern, const XmlElement& record);

/// True iff `lexical` is a valid value of `type` within `params`.
bool datatype_accepts(Datatype type, const std::map<DataParam, std::string>& params,
                      std::string_view lexical);

}  // namespace nnn

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "nnn/diagnostic.hpp"
#include "nnn/model.hpp"

namespace nnn {

/// Grammar-level checks on a parsed document: score range, factor and
/// example nesting depth, subcategory without category, empty composites,
/// empty required texts. Sorted by path, then code.
ValidationReport validate_structure(const GuidelineDocument& doc);

struct SemanticOptions {
  /// Report E-DANGLING-REF with warning severity (same code).
  bool dangling_refs_as_warnings = false;
};

/// Cross-reference checks: duplicate ids per scope (tasks, outcomes,
/// documentations), ids shared across scopes, custom entries pointing at no
/// task, mandatory+recommended overlap, repeated custom entries, empty
/// guideline sections. Meant to run after a clean validate_structure.
ValidationReport validate_semantics(const GuidelineDocument& doc, const SemanticOptions& opts = {});

/// The `source` attribute in force at `path`: the element's own, else the
/// nearest ancestor's. Throws DiagnosticError (E-BAD-PATH) unless `path`
/// names an element inside `<guideline>` of the canonical form.
std::optional<std::string> effective_source(const GuidelineDocument& doc, std::string_view path);

}  // namespace nnn

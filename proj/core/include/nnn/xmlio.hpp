#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nnn/diagnostic.hpp"
#include "nnn/model.hpp"
#include "nnn/xml.hpp"

namespace nnn {

/// Strict mode turns each known grammar/example mismatch into an error;
/// lenient mode repairs it and reports a warning.
///
/// Repairs: `<label name=..>` read as `text`; missing definition `theme`;
/// singular composite spellings `<sequential-task>` / `<parallel-task>`.
enum class ParseMode { strict, lenient };

struct ParseResult {
  std::optional<GuidelineDocument> document;  // absent => at least one error
  std::vector<Diagnostic> diagnostics;        // sorted by path, then code

  bool has_errors() const;
};

/// Reads one `<nnn>` document (`<meta>`, optional `<custom>`, `<guideline>`).
/// Never throws on bad input. A document is produced whenever the text is
/// well-formed and both required sections exist, even if errors were found.
ParseResult parse_document(std::string_view text, ParseMode mode = ParseMode::strict);

/// Canonical XML: declaration, 2-space indent, sorted attributes, empty
/// containers and an empty `<custom>` omitted.
std::string serialize_document(const GuidelineDocument& doc);

/// The element tree serialize_document writes.
XmlElement document_to_xml(const GuidelineDocument& doc);

}  // namespace nnn

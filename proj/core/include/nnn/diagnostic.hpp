#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nnn {

enum class Severity { error, warning, info };

std::string_view to_string(Severity s);

/// A single finding, addressed by a document path such as
/// `/guideline/factors/factor[3]`. Tests and tooling key on `code`;
/// `message` is free text.
struct Diagnostic {
  Severity severity = Severity::error;
  std::string code;
  std::string path;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Stable diagnostic codes. The set is closed: every code the library emits
/// appears in catalog().
namespace codes {
// xmlio
inline constexpr std::string_view xml_malformed = "E-XML-MALFORMED";
inline constexpr std::string_view missing_section = "E-MISSING-SECTION";
inline constexpr std::string_view element_missing = "E-ELEMENT-MISSING";
inline constexpr std::string_view dup_element = "E-DUP-ELEMENT";
inline constexpr std::string_view attr_missing = "E-ATTR-MISSING";
inline constexpr std::string_view bad_enum = "E-ENUM";
inline constexpr std::string_view bad_date = "E-DATE";
inline constexpr std::string_view bad_integer = "E-INTEGER";
inline constexpr std::string_view composite_name = "E-COMPOSITE-NAME";
inline constexpr std::string_view lenient_composite_name = "W-COMPOSITE-NAME";
inline constexpr std::string_view label_attr = "W-LABEL-ATTR";
inline constexpr std::string_view theme_missing = "W-THEME-MISSING";
inline constexpr std::string_view unknown_element = "W-UNKNOWN-ELEMENT";
inline constexpr std::string_view unknown_attr = "W-UNKNOWN-ATTR";
inline constexpr std::string_view opaque_input = "W-OPAQUE-INPUT";
// inputschema
inline constexpr std::string_view pattern_unsupported = "E-PATTERN-UNSUPPORTED";
inline constexpr std::string_view pattern_param = "E-PATTERN-PARAM";
inline constexpr std::string_view rec_element = "E-REC-ELEMENT";
inline constexpr std::string_view rec_datatype = "E-REC-DATATYPE";
inline constexpr std::string_view rec_bounds = "E-REC-BOUNDS";
inline constexpr std::string_view rec_extra = "E-REC-EXTRA";
// validate: structure
inline constexpr std::string_view score_range = "E-SCORE-RANGE";
inline constexpr std::string_view factor_depth = "E-FACTOR-DEPTH";
inline constexpr std::string_view example_depth = "E-EXAMPLE-DEPTH";
inline constexpr std::string_view subcategory = "E-SUBCAT";
inline constexpr std::string_view empty_composite = "E-EMPTY-COMPOSITE";
inline constexpr std::string_view empty_text = "E-EMPTY-TEXT";
// validate: semantics
inline constexpr std::string_view dup_id = "E-DUP-ID";
inline constexpr std::string_view id_collision = "W-ID-COLLISION";
inline constexpr std::string_view dangling_ref = "E-DANGLING-REF";
inline constexpr std::string_view mandatory_and_recommended = "W-MAND-AND-REC";
inline constexpr std::string_view empty_section = "W-EMPTY-SECTION";
inline constexpr std::string_view dup_custom = "W-DUP-CUSTOM";
inline constexpr std::string_view bad_path = "E-BAD-PATH";
// export
inline constexpr std::string_view export_empty = "E-EXPORT-EMPTY";
inline constexpr std::string_view linearized = "I-LINEARIZED";
// store
inline constexpr std::string_view io = "E-IO";
}  // namespace codes

struct CatalogEntry {
  std::string_view code;
  Severity severity;  // default severity; --refs-warn may demote E-DANGLING-REF
  std::string_view summary;
};

std::span<const CatalogEntry> catalog();
const CatalogEntry* find_catalog_entry(std::string_view code);

Diagnostic make_diagnostic(std::string_view code, std::string path, std::string message);

/// Counts are kept consistent with `diagnostics` by construction.
class ValidationReport {
 public:
  ValidationReport() = default;
  explicit ValidationReport(std::vector<Diagnostic> diagnostics);

  void add(Diagnostic d);
  void append(const ValidationReport& other);
  void append(std::span<const Diagnostic> ds);
  /// Sorts by document path (segment-wise, ordinals numerically), then code.
  void sort();

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }
  std::size_t error_count() const { return errors_; }
  std::size_t warning_count() const { return warnings_; }
  bool empty() const { return diagnostics_.empty(); }
  bool has_errors() const { return errors_ > 0; }

 private:
  std::vector<Diagnostic> diagnostics_;
  std::size_t errors_ = 0;
  std::size_t warnings_ = 0;
};

/// Orders document paths segment by segment, comparing `[n]` ordinals as
/// numbers.
bool path_less(std::string_view a, std::string_view b);
void sort_diagnostics(std::vector<Diagnostic>& ds);

/// Thrown by operations whose contract names a failure code.
class DiagnosticError : public std::runtime_error {
 public:
  explicit DiagnosticError(Diagnostic d);
  const Diagnostic& diagnostic() const { return diagnostic_; }

 private:
  Diagnostic diagnostic_;
};

std::string render_text(std::span<const Diagnostic> ds, bool color = false);
/// JSON array of {severity, code, path, message}.
std::string render_json(std::span<const Diagnostic> ds);

std::ostream& operator<<(std::ostream& os, const Diagnostic& d);

}  // namespace nnn

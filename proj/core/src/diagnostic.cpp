#include "nnn/diagnostic.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>

#include <nlohmann/json.hpp>

namespace nnn {

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::error:
      return "error";
    case Severity::warning:
      return "warning";
    case Severity::info:
      return "info";
  }
  return "error";
}

namespace {

constexpr std::array kCatalog{
    CatalogEntry{codes::xml_malformed, Severity::error, "input is not well-formed UTF-8 XML"},
    CatalogEntry{codes::missing_section, Severity::error, "document lacks <nnn>, <meta> or <guideline>"},
    CatalogEntry{codes::element_missing, Severity::error, "a required child element is absent"},
    CatalogEntry{codes::dup_element, Severity::error, "a single-occurrence element appears twice"},
    CatalogEntry{codes::attr_missing, Severity::error, "a required attribute is absent"},
    CatalogEntry{codes::bad_enum, Severity::error, "attribute value outside its enumeration"},
    CatalogEntry{codes::bad_date, Severity::error, "meta date is not a valid ISO 8601 calendar date"},
    CatalogEntry{codes::bad_integer, Severity::error, "score or predictedeffort is not an integer"},
    CatalogEntry{codes::composite_name, Severity::error, "singular composite element name (strict)"},
    CatalogEntry{codes::lenient_composite_name, Severity::warning,
                 "singular composite element name repaired"},
    CatalogEntry{codes::label_attr, Severity::warning, "label attribute `name` read as `text`"},
    CatalogEntry{codes::theme_missing, Severity::warning, "definition without `theme` accepted"},
    CatalogEntry{codes::unknown_element, Severity::warning, "unknown element ignored"},
    CatalogEntry{codes::unknown_attr, Severity::warning, "unknown attribute ignored"},
    CatalogEntry{codes::opaque_input, Severity::warning,
                 "input body outside the supported schema subset stored opaquely"},
    CatalogEntry{codes::pattern_unsupported, Severity::error, "schema construct outside the supported subset"},
    CatalogEntry{codes::pattern_param, Severity::error, "invalid datatype parameter"},
    CatalogEntry{codes::rec_element, Severity::error, "record element or attribute does not match"},
    CatalogEntry{codes::rec_datatype, Severity::error, "record value does not parse as its datatype"},
    CatalogEntry{codes::rec_bounds, Severity::error, "record value outside its declared bounds"},
    CatalogEntry{codes::rec_extra, Severity::error, "record carries content the pattern does not allow"},
    CatalogEntry{codes::score_range, Severity::error, "score outside 1..10"},
    CatalogEntry{codes::factor_depth, Severity::error, "factor nested deeper than one level"},
    CatalogEntry{codes::example_depth, Severity::error, "example nested deeper than one level"},
    CatalogEntry{codes::subcategory, Severity::error, "subcategory without category"},
    CatalogEntry{codes::empty_composite, Severity::error, "sequential/parallel composite without children"},
    CatalogEntry{codes::empty_text, Severity::error, "required text or id is empty"},
    CatalogEntry{codes::dup_id, Severity::error, "id repeated within its scope"},
    CatalogEntry{codes::id_collision, Severity::warning, "id reused across task/outcome/documentation scopes"},
    CatalogEntry{codes::dangling_ref, Severity::error, "custom entry references an unknown task id"},
    CatalogEntry{codes::mandatory_and_recommended, Severity::warning, "task both mandatory and recommended"},
    CatalogEntry{codes::empty_section, Severity::warning, "guideline section has no items"},
    CatalogEntry{codes::dup_custom, Severity::warning, "repeated custom entry ignored"},
    CatalogEntry{codes::bad_path, Severity::error, "document path addresses nothing"},
    CatalogEntry{codes::export_empty, Severity::error, "no tasks to export"},
    CatalogEntry{codes::linearized, Severity::info, "parallel branches linearized in export"},
    CatalogEntry{codes::io, Severity::error, "file system access failed"},
};

struct PathSegment {
  std::string_view name;
  long ordinal = 0;
};

PathSegment split_segment(std::string_view seg) {
  PathSegment out{seg, 0};
  if (!seg.empty() && seg.back() == ']') {
    auto open = seg.rfind('[');
    if (open != std::string_view::npos) {
      long n = 0;
      auto digits = seg.substr(open + 1, seg.size() - open - 2);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
      if (ec == std::errc{} && ptr == digits.data() + digits.size()) {
        out.name = seg.substr(0, open);
        out.ordinal = n;
      }
    }
  }
  return out;
}

std::vector<std::string_view> split_path(std::string_view p) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i <= p.size()) {
    auto j = p.find('/', i);
    if (j == std::string_view::npos) j = p.size();
    if (j > i) out.push_back(p.substr(i, j - i));
    i = j + 1;
  }
  return out;
}

}  // namespace

std::span<const CatalogEntry> catalog() { return kCatalog; }

const CatalogEntry* find_catalog_entry(std::string_view code) {
  auto it = std::find_if(kCatalog.begin(), kCatalog.end(),
                         [&](const CatalogEntry& e) { return e.code == code; });
  return it == kCatalog.end() ? nullptr : &*it;
}

Diagnostic make_diagnostic(std::string_view code, std::string path, std::string message) {
  const auto* entry = find_catalog_entry(code);
  if (entry == nullptr) throw std::logic_error("diagnostic code not in catalog: " + std::string(code));
  return Diagnostic{entry->severity, std::string(code), std::move(path), std::move(message)};
}

ValidationReport::ValidationReport(std::vector<Diagnostic> diagnostics) {
  for (auto& d : diagnostics) add(std::move(d));
}

void ValidationReport::add(Diagnostic d) {
  if (d.severity == Severity::error) ++errors_;
  if (d.severity == Severity::warning) ++warnings_;
  diagnostics_.push_back(std::move(d));
}

void ValidationReport::append(const ValidationReport& other) { append(other.diagnostics()); }

void ValidationReport::append(std::span<const Diagnostic> ds) {
  for (const auto& d : ds) add(d);
}

void ValidationReport::sort() { sort_diagnostics(diagnostics_); }

bool path_less(std::string_view a, std::string_view b) {
  auto sa = split_path(a);
  auto sb = split_path(b);
  for (std::size_t i = 0; i < sa.size() && i < sb.size(); ++i) {
    auto x = split_segment(sa[i]);
    auto y = split_segment(sb[i]);
    if (x.name != y.name) return x.name < y.name;
    if (x.ordinal != y.ordinal) return x.ordinal < y.ordinal;
  }
  return sa.size() < sb.size();
}

void sort_diagnostics(std::vector<Diagnostic>& ds) {
  std::stable_sort(ds.begin(), ds.end(), [](const Diagnostic& a, const Diagnostic& b) {
    if (path_less(a.path, b.path)) return true;
    if (path_less(b.path, a.path)) return false;
    return a.code < b.code;
  });
}

DiagnosticError::DiagnosticError(Diagnostic d)
    : std::runtime_error(d.code + " " + d.path + ": " + d.message), diagnostic_(std::move(d)) {}

std::ostream& operator<<(std::ostream& os, const Diagnostic& d) {
  return os << to_string(d.severity) << '[' << d.code << "] " << (d.path.empty() ? "/" : d.path)
            << ": " << d.message;
}

std::string render_text(std::span<const Diagnostic> ds, bool color) {
  std::ostringstream os;
  for (const auto& d : ds) {
    if (color) {
      const char* c = d.severity == Severity::error     ? "\x1b[31m"
                      : d.severity == Severity::warning ? "\x1b[33m"
                                                        : "\x1b[36m";
      os << c << to_string(d.severity) << "\x1b[0m";
    } else {
      os << to_string(d.severity);
    }
    os << '[' << d.code << "] " << (d.path.empty() ? "/" : d.path) << ": " << d.message << '\n';
  }
  return os.str();
}

std::string render_json(std::span<const Diagnostic> ds) {
  auto arr = nlohmann::json::array();
  for (const auto& d : ds) {
    arr.push_back({{"severity", to_string(d.severity)},
                   {"code", d.code},
                   {"path", d.path},
                   {"message", d.message}});
  }
  return arr.dump(2, ' ', false, nlohmann::json::error_handler_t::replace);
}

}  // namespace nnn

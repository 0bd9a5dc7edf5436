#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <set>

#include "nnn/diagnostic.hpp"

namespace nnn {
namespace {

TEST(Catalog, CodesAreUniqueAndPrefixedBySeverity) {
  std::set<std::string_view> seen;
  for (const auto& e : catalog()) {
    EXPECT_TRUE(seen.insert(e.code).second) << e.code;
    const char expected = e.severity == Severity::error ? 'E' : e.severity == Severity::warning ? 'W' : 'I';
    EXPECT_EQ(e.code.front(), expected) << e.code;
    EXPECT_FALSE(e.summary.empty());
  }
  EXPECT_EQ(find_catalog_entry("E-NOT-A-CODE"), nullptr);
  ASSERT_NE(find_catalog_entry(codes::dangling_ref), nullptr);
}

TEST(Catalog, MakeDiagnosticUsesCatalogSeverity) {
  EXPECT_EQ(make_diagnostic(codes::empty_section, "/guideline/factors", "x").severity, Severity::warning);
  EXPECT_EQ(make_diagnostic(codes::linearized, "/", "x").severity, Severity::info);
  EXPECT_EQ(make_diagnostic(codes::dup_id, "/", "x").severity, Severity::error);
}

TEST(ValidationReport, CountsTrackDiagnostics) {
  ValidationReport r;
  EXPECT_TRUE(r.empty());
  r.add(make_diagnostic(codes::dup_id, "/a", ""));
  r.add(make_diagnostic(codes::empty_section, "/b", ""));
  r.add(make_diagnostic(codes::linearized, "/c", ""));
  EXPECT_EQ(r.error_count(), 1u);
  EXPECT_EQ(r.warning_count(), 1u);
  EXPECT_TRUE(r.has_errors());

  ValidationReport other({make_diagnostic(codes::score_range, "/d", "")});
  r.append(other);
  EXPECT_EQ(r.error_count(), 2u);
  EXPECT_EQ(r.diagnostics().size(), 4u);
}

TEST(PathOrder, OrdinalsCompareNumerically) {
  EXPECT_TRUE(path_less("/guideline/factors/factor[2]", "/guideline/factors/factor[10]"));
  EXPECT_FALSE(path_less("/guideline/factors/factor[10]", "/guideline/factors/factor[2]"));
  EXPECT_TRUE(path_less("/guideline", "/guideline/factors"));
  EXPECT_TRUE(path_less("/custom/mandatory[1]", "/guideline"));
}

TEST(PathOrder, SortIsByPathThenCode) {
  std::vector<Diagnostic> ds = {
      make_diagnostic(codes::score_range, "/guideline/tasks/task[10]", ""),
      make_diagnostic(codes::empty_text, "/guideline/tasks/task[2]", ""),
      make_diagnostic(codes::dup_id, "/guideline/tasks/task[2]", ""),
  };
  sort_diagnostics(ds);
  EXPECT_EQ(ds[0].code, codes::dup_id);
  EXPECT_EQ(ds[1].code, codes::empty_text);
  EXPECT_EQ(ds[2].path, "/guideline/tasks/task[10]");
}

TEST(Render, JsonHasExactlyTheDocumentedFields) {
  std::vector<Diagnostic> ds = {make_diagnostic(codes::dangling_ref, "/custom/mandatory[1]", "id \"30\" unknown")};
  auto j = nlohmann::json::parse(render_json(ds));
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 1u);
  std::set<std::string> keys;
  for (const auto& [k, v] : j[0].items()) keys.insert(k);
  EXPECT_EQ(keys, (std::set<std::string>{"severity", "code", "path", "message"}));
  EXPECT_EQ(j[0]["severity"], "error");
  EXPECT_EQ(j[0]["message"], "id \"30\" unknown");
  EXPECT_EQ(nlohmann::json::parse(render_json({})), nlohmann::json::array());
}

TEST(Render, TextLineShape) {
  std::vector<Diagnostic> ds = {make_diagnostic(codes::empty_section, "/guideline/symptoms", "no items")};
  EXPECT_EQ(render_text(ds), "warning[W-EMPTY-SECTION] /guideline/symptoms: no items\n");
  EXPECT_NE(render_text(ds, true).find("\x1b["), std::string::npos);
}

}  // namespace
}  // namespace nnn

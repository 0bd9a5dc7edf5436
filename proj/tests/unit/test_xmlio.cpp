#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "generators.hpp"
#include "nnn/validate.hpp"
#include "nnn/xmlio.hpp"

namespace nnn {
namespace {

std::vector<std::string> codes_of(const std::vector<Diagnostic>& ds) {
  std::vector<std::string> out;
  for (const auto& d : ds) out.push_back(d.code);
  return out;
}

std::string wrap_meta(const std::string& meta, const std::string& guideline = "<guideline/>") {
  return "<nnn>" + meta + guideline + "</nnn>";
}

const std::string kMeta =
    "<meta><title text=\"fatigue\"/><definition text=\"d\" theme=\"t\"/><version id=\"1.0\"/>"
    "<validation status=\"implementing\"/><date text=\"2013-04-01\"/></meta>";

TEST(ParseCorpus, MetaFields) {
  auto r = parse_document(testing::corpus_text(), ParseMode::lenient);
  ASSERT_TRUE(r.document);
  const auto& m = r.document->meta;
  EXPECT_EQ(m.title, "fatigue");
  EXPECT_EQ(m.version_id, "1.0");
  EXPECT_EQ(m.validation_status, ValidationStatus::implementing);
  EXPECT_EQ(m.institution, "University of Vienna");
  EXPECT_EQ(format_date(m.date), "2013-04-01");
  EXPECT_FALSE(m.definition.theme);
  EXPECT_EQ(m.definition.text.find("  "), std::string::npos);  // whitespace normalized
}

TEST(ParseCorpus, LenientRepairsAreExactlyTheKnownOnes) {
  auto r = parse_document(testing::corpus_text(), ParseMode::lenient);
  ASSERT_TRUE(r.document);
  EXPECT_EQ(codes_of(r.diagnostics), (std::vector<std::string>{"W-LABEL-ATTR", "W-THEME-MISSING"}));
  EXPECT_EQ(r.diagnostics[0].path, "/guideline/tasks/labels/label[1]");
  EXPECT_EQ(r.diagnostics[1].path, "/meta/definition");
  EXPECT_EQ(r.document->body.tasks.nic_labels, (std::vector<std::string>{"Energy Management"}));
}

TEST(ParseCorpus, StrictReportsTheGrammarMismatches) {
  auto r = parse_document(testing::corpus_text(), ParseMode::strict);
  EXPECT_TRUE(r.has_errors());
  std::vector<std::string> paths;
  for (const auto& d : r.diagnostics) {
    EXPECT_EQ(d.code, "E-ATTR-MISSING");
    paths.push_back(d.path);
  }
  EXPECT_EQ(paths, (std::vector<std::string>{"/guideline/tasks/labels/label[1]", "/meta/definition"}));
}

TEST(ParseCorpus, LenientRepairIsIdempotent) {
  auto lenient = parse_document(testing::corpus_text(), ParseMode::lenient);
  ASSERT_TRUE(lenient.document);
  auto strict = parse_document(serialize_document(*lenient.document), ParseMode::strict);
  ASSERT_TRUE(strict.document);
  EXPECT_TRUE(strict.diagnostics.empty()) << render_text(strict.diagnostics);
  EXPECT_EQ(*strict.document, *lenient.document);
}

TEST(ParseErrors, EnumAndDate) {
  auto bad_status = parse_document(wrap_meta(
      "<meta><title text=\"t\"/><definition text=\"d\" theme=\"t\"/><version id=\"1\"/>"
      "<validation status=\"finished\"/><date text=\"2013-04-01\"/></meta>"));
  EXPECT_EQ(codes_of(bad_status.diagnostics), std::vector<std::string>{"E-ENUM"});

  auto bad_date = parse_document(wrap_meta(
      "<meta><title text=\"t\"/><definition text=\"d\" theme=\"t\"/><version id=\"1\"/>"
      "<validation status=\"testing\"/><date text=\"2013-13-01\"/></meta>"));
  EXPECT_EQ(codes_of(bad_date.diagnostics), std::vector<std::string>{"E-DATE"});
}

TEST(ParseErrors, MalformedAndMissingSections) {
  auto malformed = parse_document("<nnn><meta>");
  EXPECT_FALSE(malformed.document);
  EXPECT_EQ(codes_of(malformed.diagnostics), std::vector<std::string>{"E-XML-MALFORMED"});

  auto no_guideline = parse_document("<nnn>" + kMeta + "</nnn>");
  EXPECT_FALSE(no_guideline.document);
  EXPECT_EQ(codes_of(no_guideline.diagnostics), std::vector<std::string>{"E-MISSING-SECTION"});

  auto wrong_root = parse_document("<guideline/>");
  EXPECT_FALSE(wrong_root.document);
  EXPECT_TRUE(wrong_root.has_errors());
}

TEST(ParseMinimal, EmptyGuidelineIsAccepted) {
  auto r = parse_document(wrap_meta(kMeta));
  ASSERT_TRUE(r.document);
  EXPECT_TRUE(r.diagnostics.empty());
  EXPECT_TRUE(r.document->custom.empty());
}

TEST(ParseMinimal, FlatTasksAndCompositeSpellings) {
  const std::string tasks =
      "<guideline><tasks><task id=\"0\" text=\"a\"/><sequential-task><task id=\"1\" text=\"b\"/>"
      "<parallel-tasks><task id=\"2\" text=\"c\"/></parallel-tasks></sequential-task></tasks></guideline>";
  auto lenient = parse_document(wrap_meta(kMeta, tasks), ParseMode::lenient);
  ASSERT_TRUE(lenient.document);
  EXPECT_EQ(codes_of(lenient.diagnostics), std::vector<std::string>{"W-COMPOSITE-NAME"});
  const auto& roots = lenient.document->body.tasks.roots;
  ASSERT_EQ(roots.size(), 2u);
  ASSERT_NE(roots[1].composite(), nullptr);
  EXPECT_EQ(roots[1].composite()->mode, CompositionMode::sequential);

  auto strict = parse_document(wrap_meta(kMeta, tasks), ParseMode::strict);
  EXPECT_EQ(codes_of(strict.diagnostics), std::vector<std::string>{"E-COMPOSITE-NAME"});

  const std::string out = serialize_document(*lenient.document);
  EXPECT_NE(out.find("<sequential-tasks>"), std::string::npos);
  EXPECT_EQ(out.find("<sequential-task>"), std::string::npos);
}

TEST(ParseMinimal, FactorTypeDefaultsToRelated) {
  auto r = parse_document(wrap_meta(
      kMeta, "<guideline><factors><factor text=\"a\"/><factor text=\"b\" type=\"risk\"/></factors></guideline>"));
  ASSERT_TRUE(r.document);
  EXPECT_EQ(r.document->body.factors.items[0].type, FactorType::related);
  EXPECT_EQ(r.document->body.factors.items[1].type, FactorType::risk);
}

TEST(ParseMinimal, SourceAcceptedOnGuidelineElements) {
  auto r = parse_document(wrap_meta(
      kMeta, "<guideline source=\"G\"><factors source=\"S1\"><factor text=\"Stress\"/></factors></guideline>"));
  ASSERT_TRUE(r.document);
  EXPECT_TRUE(r.diagnostics.empty());
  EXPECT_EQ(r.document->body.source, "G");
  EXPECT_EQ(r.document->body.factors.source, "S1");
}

TEST(ParseMinimal, UnknownContentIsReportedNotFatal) {
  auto r = parse_document(wrap_meta(
      kMeta, "<guideline><symptoms><symptom text=\"s\" colour=\"red\"><causes/></symptom></symptoms></guideline>"));
  ASSERT_TRUE(r.document);
  EXPECT_EQ(codes_of(r.diagnostics), (std::vector<std::string>{"W-UNKNOWN-ATTR", "W-UNKNOWN-ELEMENT"}));
}

TEST(Serialize, HintsBlockAndEmptyCustomOmitted) {
  GuidelineDocument d = testing::document_with_tasks({});
  Factor f;
  f.text = "stress";
  f.hints.push_back(Hint{"Handbook", "a hint", Score{3}, {}});
  d.body.factors.items.push_back(f);
  const std::string out = serialize_document(d);
  EXPECT_NE(out.find("<hints>\n"), std::string::npos);
  EXPECT_NE(out.find("<hint from=\"Handbook\" score=\"3\" text=\"a hint\"/>"), std::string::npos);
  EXPECT_EQ(out.find("<custom"), std::string::npos);

  auto back = parse_document(out, ParseMode::strict);
  ASSERT_TRUE(back.document);
  EXPECT_TRUE(back.diagnostics.empty());
  EXPECT_EQ(*back.document, d);
}

TEST(Serialize, CanonicalFormIsStable) {
  const auto doc = testing::corpus_document();
  const std::string once = serialize_document(doc);
  auto again = parse_document(once, ParseMode::strict);
  ASSERT_TRUE(again.document);
  EXPECT_EQ(serialize_document(*again.document), once);
}

TEST(RoundTrip, RandomCleanDocuments) {
  testing::Rng rng(20240501);
  for (int i = 0; i < 300; ++i) {
    const auto doc = testing::random_clean_document(rng);
    const std::string text = serialize_document(doc);
    auto r = parse_document(text, ParseMode::strict);
    ASSERT_TRUE(r.document) << text;
    ASSERT_TRUE(r.diagnostics.empty()) << render_text(r.diagnostics) << text;
    ASSERT_EQ(*r.document, doc) << text;
    // A strict-clean model re-validates clean.
    EXPECT_TRUE(validate_structure(*r.document).empty());
    EXPECT_TRUE(validate_semantics(*r.document).empty()) << render_text(validate_semantics(*r.document).diagnostics());
  }
}

// Parsing arbitrary bytes never throws or crashes, and a missing document
// always comes with an error.
void expect_total(const std::string& text) {
  for (auto mode : {ParseMode::strict, ParseMode::lenient}) {
    ParseResult r;
    ASSERT_NO_THROW(r = parse_document(text, mode));
    if (!r.document) EXPECT_TRUE(r.has_errors());
    EXPECT_TRUE(std::is_sorted(r.diagnostics.begin(), r.diagnostics.end(), [](const auto& a, const auto& b) {
      return path_less(a.path, b.path);
    }));
    if (r.document) {
      ASSERT_NO_THROW((void)validate_structure(*r.document));
      ASSERT_NO_THROW((void)validate_semantics(*r.document));
    }
  }
}

TEST(Fuzz, RandomBytes) {
  testing::Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    std::string s(static_cast<std::size_t>(testing::uniform(rng, 0, 200)), '\0');
    for (auto& c : s) c = static_cast<char>(testing::uniform(rng, 0, 255));
    expect_total(s);
  }
}

TEST(Fuzz, MutatedCorpus) {
  testing::Rng rng(8);
  const std::string base = testing::corpus_text();
  static const std::string alphabet = "<>/=\"' &;abc\n";
  for (int i = 0; i < 400; ++i) {
    std::string s = base;
    for (int k = testing::uniform(rng, 1, 8); k > 0; --k) {
      const auto pos = static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<int>(s.size()) - 1));
      switch (testing::uniform(rng, 0, 2)) {
        case 0:
          s.erase(pos, static_cast<std::size_t>(testing::uniform(rng, 1, 20)));
          break;
        case 1:
          s.insert(pos, 1, alphabet[static_cast<std::size_t>(testing::uniform(rng, 0, 12))]);
          break;
        default:
          s[pos] = alphabet[static_cast<std::size_t>(testing::uniform(rng, 0, 12))];
      }
      if (s.empty()) break;
    }
    expect_total(s);
  }
}

}  // namespace
}  // namespace nnn

#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "nnn/coverage.hpp"

namespace nnn {
namespace {

std::set<BuildingBlock> present(const std::map<BuildingBlock, std::vector<std::string>>& detected) {
  std::set<BuildingBlock> out;
  for (const auto& [b, paths] : detected) {
    if (!paths.empty()) out.insert(b);
  }
  return out;
}

std::set<BuildingBlock> blocks(std::initializer_list<int> numbers) {
  std::set<BuildingBlock> out;
  for (int n : numbers) out.insert(kAllBlocks[static_cast<std::size_t>(n - 1)]);
  return out;
}

SupportLevel level_for(char cell) {
  switch (cell) {
    case '+':
      return SupportLevel::supported;
    case '0':
      return SupportLevel::workaround;
    default:
      return SupportLevel::not_supported;
  }
}

TEST(SupportMatrix, MatchesReferenceCellForCell) {
  int cells = 0;
  for (const auto& name : testing::reference_standards()) {
    const auto standard = parse_standard(name);
    ASSERT_TRUE(standard) << name;
    for (int b = 1; b <= 11; ++b) {
      EXPECT_EQ(support_level(*standard, kAllBlocks[static_cast<std::size_t>(b - 1)]),
                level_for(testing::reference_cell(name, b)))
          << name << " B" << b;
      ++cells;
    }
  }
  EXPECT_EQ(cells, 33);
}

TEST(SupportMatrix, SpotChecks) {
  EXPECT_EQ(support_level(Standard::arden, BuildingBlock::B4), SupportLevel::not_supported);
  EXPECT_EQ(support_level(Standard::asbru, BuildingBlock::B3), SupportLevel::workaround);
  EXPECT_EQ(support_level(Standard::glif, BuildingBlock::B10), SupportLevel::workaround);
}

TEST(Names, BlocksAndStandards) {
  EXPECT_EQ(kAllBlocks.size(), 11u);
  EXPECT_EQ(parse_block("B7"), BuildingBlock::B7);
  EXPECT_EQ(parse_block("11"), BuildingBlock::B11);
  EXPECT_FALSE(parse_block("B12"));
  EXPECT_FALSE(parse_block("B0"));
  EXPECT_EQ(display_name(BuildingBlock::B5), "risk factors");
  for (auto b : kAllBlocks) EXPECT_EQ(parse_block(to_string(b)), b);
  for (auto s : kAllStandards) EXPECT_EQ(parse_standard(to_string(s)), s);
  EXPECT_FALSE(parse_standard("proforma"));
}

TEST(Detect, CorpusBlocks) {
  const auto detected = detect_blocks(testing::corpus_document());
  EXPECT_EQ(detected.size(), 11u);
  EXPECT_EQ(present(detected), blocks({1, 2, 3, 4, 7, 8, 9, 10, 11}));
}

TEST(Detect, EmptyBodyHasOnlyTitleAndDescription) {
  EXPECT_EQ(present(detect_blocks(testing::document_with_tasks({}))), blocks({1, 2}));
}

TEST(Detect, RiskFactorPath) {
  auto doc = testing::document_with_tasks({});
  Factor f;
  f.text = "smoking";
  f.type = FactorType::risk;
  doc.body.factors.items = {f};
  const auto detected = detect_blocks(doc);
  EXPECT_EQ(detected.at(BuildingBlock::B5), std::vector<std::string>{"/guideline/factors/factor[1]"});
  EXPECT_TRUE(detected.at(BuildingBlock::B4).empty());
}

TEST(Detect, SourcesAndHintOrigins) {
  auto doc = testing::document_with_tasks({});
  Symptom s;
  s.text = "tired";
  s.hints.push_back(Hint{"Handbook", "h", {}, {}});
  doc.body.symptoms.items = {s};
  EXPECT_EQ(detect_blocks(doc).at(BuildingBlock::B6),
            std::vector<std::string>{"/guideline/symptoms/symptom[1]/hints/hint[1]"});
  doc.body.symptoms.items[0].hints.clear();
  doc.body.symptoms.source = "S";
  EXPECT_EQ(detect_blocks(doc).at(BuildingBlock::B6), std::vector<std::string>{"/guideline/symptoms"});
}

TEST(Compare, CorpusAgainstArden) {
  const auto report = compare_report(testing::corpus_document());
  const auto& arden = report.at(Standard::arden);
  const std::set<BuildingBlock> lost(arden.lost.begin(), arden.lost.end());
  const std::set<BuildingBlock> work(arden.via_workaround.begin(), arden.via_workaround.end());
  const auto expected_lost = blocks({4, 10, 11});
  EXPECT_TRUE(std::includes(lost.begin(), lost.end(), expected_lost.begin(), expected_lost.end()));
  EXPECT_TRUE(work.count(BuildingBlock::B8));
}

TEST(Compare, TitleOnlyDocument) {
  // The definition element is mandatory, so B2 counts as present too.
  GuidelineDocument doc;
  doc.meta.title = "only a title";
  const auto report = compare_report(doc);
  for (auto s : {Standard::arden, Standard::glif}) {
    EXPECT_EQ(report.at(s).expressible, (std::vector<BuildingBlock>{BuildingBlock::B1, BuildingBlock::B2}));
    EXPECT_TRUE(report.at(s).lost.empty());
  }
  EXPECT_EQ(report.at(Standard::asbru).expressible, std::vector<BuildingBlock>{BuildingBlock::B1});
  EXPECT_EQ(report.at(Standard::asbru).lost, std::vector<BuildingBlock>{BuildingBlock::B2});
}

TEST(Compare, FullDocumentAgainstGlif) {
  const auto doc = testing::all_blocks_document();
  EXPECT_EQ(present(detect_blocks(doc)), blocks({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}));
  const auto report = compare_report(doc);
  const auto& glif = report.at(Standard::glif);
  EXPECT_EQ(glif.lost, (std::vector<BuildingBlock>{BuildingBlock::B4, BuildingBlock::B5}));
}

TEST(Properties, PartitionsAreDisjointAndComplete) {
  testing::Rng rng(3);
  for (int i = 0; i < 150; ++i) {
    const auto doc = testing::random_clean_document(rng);
    const auto detected = detect_blocks(doc);
    EXPECT_EQ(detected.at(BuildingBlock::B7).size(), all_atomic_tasks(doc).size());
    const auto seen = present(detected);
    for (const auto& [standard, p] : compare_report(doc)) {
      std::multiset<BuildingBlock> all;
      all.insert(p.expressible.begin(), p.expressible.end());
      all.insert(p.via_workaround.begin(), p.via_workaround.end());
      all.insert(p.lost.begin(), p.lost.end());
      EXPECT_EQ(all.size(), seen.size());
      EXPECT_EQ(std::set<BuildingBlock>(all.begin(), all.end()), seen);
    }
  }
}

}  // namespace
}  // namespace nnn

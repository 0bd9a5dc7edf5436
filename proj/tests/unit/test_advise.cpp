#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "generators.hpp"
#include "nnn/advise.hpp"

namespace nnn {
namespace {

std::vector<std::string> ids_of(const std::vector<AdviceEntry>& es) {
  std::vector<std::string> out;
  for (const auto& e : es) out.push_back(e.task_id);
  return out;
}

AtomicTask task(const std::string& id) {
  AtomicTask t;
  t.id = id;
  t.text = "t" + id;
  return t;
}

TEST(Advise, RecommendedScoresOrderTasks) {
  auto doc = testing::document_with_tasks({TaskNode(task("22")), TaskNode(task("21"))});
  doc.custom.recommended = {{"21", Score{7}}, {"22", Score{4}}};
  const auto order = advise_order(doc);
  EXPECT_EQ(ids_of(order), (std::vector<std::string>{"21", "22"}));
  EXPECT_EQ(order[0].effective_score, Score{7});
  EXPECT_EQ(order[1].rank, 2);
}

TEST(Advise, CorpusSkipsDanglingRefsAndTieBreaksById) {
  const auto order = advise_order(testing::corpus_document());
  EXPECT_EQ(ids_of(order), (std::vector<std::string>{"0", "1", "2", "3"}));
  for (const auto& e : order) {
    EXPECT_FALSE(e.mandatory);
    EXPECT_FALSE(e.effective_score);
  }
}

TEST(Advise, MandatoryBeatsTopScore) {
  auto doc = testing::document_with_tasks({TaskNode(task("r")), TaskNode(task("m"))});
  doc.custom.recommended = {{"r", Score{10}}};
  doc.custom.mandatory = {{"m"}};
  EXPECT_EQ(ids_of(advise_order(doc)), (std::vector<std::string>{"m", "r"}));
}

TEST(Advise, RecommendedOverridesOwnScore) {
  auto a = task("a");
  a.score = Score{9};
  auto b = task("b");
  b.score = Score{5};
  auto doc = testing::document_with_tasks({TaskNode(a), TaskNode(b)});
  doc.custom.recommended = {{"a", Score{1}}};
  const auto order = advise_order(doc);
  EXPECT_EQ(ids_of(order), (std::vector<std::string>{"b", "a"}));
  EXPECT_EQ(order[1].effective_score, Score{1});
}

TEST(Advise, FirstOfRepeatedEntriesCounts) {
  auto doc = testing::document_with_tasks({TaskNode(task("a")), TaskNode(task("b"))});
  doc.custom.recommended = {{"b", Score{2}}, {"a", Score{3}}, {"b", Score{9}}};
  EXPECT_EQ(ids_of(advise_order(doc)), (std::vector<std::string>{"a", "b"}));
}

TEST(Advise, UnscoredSortsBelowScoreOne) {
  auto doc = testing::document_with_tasks({TaskNode(task("a")), TaskNode(task("b"))});
  doc.custom.recommended = {{"b", Score{1}}};
  EXPECT_EQ(ids_of(advise_order(doc)), (std::vector<std::string>{"b", "a"}));
}

// Checks the ordering contract with a pairwise comparison written out
// independently of the implementation.
bool should_precede(const AdviceEntry& a, const AdviceEntry& b, bool numeric) {
  if (a.mandatory != b.mandatory) return a.mandatory;
  const int sa = a.effective_score ? a.effective_score->value : 0;
  const int sb = b.effective_score ? b.effective_score->value : 0;
  if (sa != sb) return sa > sb;
  if (numeric) return std::stoll(a.task_id) < std::stoll(b.task_id);
  return a.task_id < b.task_id;
}

TEST(AdviseProperties, RandomDocuments) {
  testing::Rng rng(77);
  for (int i = 0; i < 300; ++i) {
    const auto doc = testing::random_clean_document(rng);
    const auto order = advise_order(doc);
    ASSERT_EQ(order, advise_order(doc));

    std::multiset<std::string> expected;
    for (const auto* t : all_atomic_tasks(doc)) expected.insert(t->id);
    const auto got = ids_of(order);
    EXPECT_EQ(std::multiset<std::string>(got.begin(), got.end()), expected);

    const bool numeric = std::all_of(got.begin(), got.end(), [](const std::string& s) { return is_decimal_id(s); });
    bool seen_optional = false;
    for (std::size_t k = 0; k < order.size(); ++k) {
      EXPECT_EQ(order[k].rank, static_cast<int>(k) + 1);
      if (!order[k].mandatory) seen_optional = true;
      EXPECT_FALSE(seen_optional && order[k].mandatory) << "mandatory block is not a prefix";
      if (k > 0) EXPECT_FALSE(should_precede(order[k], order[k - 1], numeric));
    }
  }
}

}  // namespace
}  // namespace nnn

namespace nnn {
namespace {

int rank_of(const std::vector<AdviceEntry>& order, const std::string& id) {
  for (const auto& e : order) {
    if (e.task_id == id) return e.rank;
  }
  return -1;
}

TEST(AdviseProperties, RaisingAScoreNeverWorsensRank) {
  testing::Rng rng(78);
  for (int i = 0; i < 200; ++i) {
    auto doc = testing::random_clean_document(rng);
    const auto tasks = all_atomic_tasks(doc);
    const std::string id = tasks[static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<int>(tasks.size()) - 1))]->id;
    auto it = std::find_if(doc.custom.recommended.begin(), doc.custom.recommended.end(),
                           [&](const Recommended& r) { return r.task_id == id; });
    if (it == doc.custom.recommended.end()) {
      doc.custom.recommended.push_back({id, Score{1}});
      it = std::prev(doc.custom.recommended.end());
    }
    int previous = rank_of(advise_order(doc), id);
    for (int s = it->score.value + 1; s <= 10; ++s) {
      it->score = Score{s};
      const int now = rank_of(advise_order(doc), id);
      EXPECT_LE(now, previous);
      previous = now;
    }
  }
}

}  // namespace
}  // namespace nnn

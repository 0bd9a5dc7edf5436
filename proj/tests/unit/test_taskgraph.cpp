#include <gtest/gtest.h>

#include <algorithm>
#include <regex>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "nnn/taskgraph.hpp"

namespace nnn {
namespace {

using Edges = std::set<std::pair<std::string, std::string>>;

TaskNode task(const std::string& id, const std::string& text = "") {
  AtomicTask t;
  t.id = id;
  t.text = text.empty() ? "task " + id : text;
  return t;
}

TaskNode seq(std::vector<TaskNode> children) {
  CompositeTask c;
  c.mode = CompositionMode::sequential;
  c.children = std::move(children);
  return c;
}

TaskNode par(std::vector<TaskNode> children) {
  CompositeTask c;
  c.mode = CompositionMode::parallel;
  c.children = std::move(children);
  return c;
}

TasksSection section(std::vector<TaskNode> roots) {
  TasksSection s;
  s.roots = std::move(roots);
  return s;
}

TasksSection diamond() { return section({seq({task("0"), par({task("1"), task("2")}), task("3")})}); }

TEST(Compile, SequentialPair) {
  EXPECT_EQ(compile_graph(section({seq({task("0"), task("1")})})).edges(), (Edges{{"0", "1"}}));
}

TEST(Compile, Diamond) {
  const auto g = compile_graph(diamond());
  EXPECT_EQ(g.edges(), (Edges{{"0", "1"}, {"0", "2"}, {"1", "3"}, {"2", "3"}}));
  EXPECT_TRUE(g.precedes("0", "3"));
  EXPECT_FALSE(g.precedes("1", "2"));
  EXPECT_FALSE(g.precedes("3", "0"));
  EXPECT_EQ(g.successors("0"), (std::vector<std::string>{"1", "2"}));
}

TEST(Compile, FlatCorpusHasNoEdges) {
  const auto g = compile_graph(testing::corpus_document().body.tasks);
  EXPECT_EQ(g.nodes(), (std::vector<std::string>{"0", "1", "2", "3"}));
  EXPECT_TRUE(g.edges().empty());
  EXPECT_EQ(g.text("0"), "Evaluate medication");
}

TEST(Compile, EmptyCompositesAreTransparent) {
  const auto g = compile_graph(section({seq({task("a"), par({}), seq({}), task("b")})}));
  EXPECT_EQ(g.edges(), (Edges{{"a", "b"}}));
}

TEST(Compile, DuplicateIdThrows) {
  try {
    (void)compile_graph(section({task("0"), seq({task("1"), task("0")})}));
    FAIL() << "expected E-DUP-ID";
  } catch (const DiagnosticError& e) {
    EXPECT_EQ(e.diagnostic().code, "E-DUP-ID");
  }
}

TEST(Traces, Examples) {
  const auto pair = compile_graph(section({seq({task("0"), task("1")})}));
  EXPECT_TRUE(is_valid_trace(pair, {"0", "1"}));
  EXPECT_FALSE(is_valid_trace(pair, {"1", "0"}));
  EXPECT_FALSE(is_valid_trace(pair, {"0"}));
  EXPECT_FALSE(is_valid_trace(pair, {"0", "1", "1"}));
  EXPECT_FALSE(is_valid_trace(pair, {"0", "2"}));
  const auto d = compile_graph(diamond());
  EXPECT_TRUE(is_valid_trace(d, {"0", "2", "1", "3"}));
  EXPECT_FALSE(is_valid_trace(d, {"0", "1", "3", "2"}));
}

TEST(TopologicalOrder, Examples) {
  EXPECT_EQ(topological_order(compile_graph(diamond())), (std::vector<std::string>{"0", "1", "2", "3"}));
  EXPECT_TRUE(topological_order(compile_graph(section({}))).empty());
  EXPECT_EQ(topological_order(compile_graph(section({task("2"), task("0"), task("1")}))),
            (std::vector<std::string>{"0", "1", "2"}));
  // Numeric tie-break when every id is decimal.
  EXPECT_EQ(topological_order(compile_graph(section({task("10"), task("9")}))),
            (std::vector<std::string>{"9", "10"}));
  EXPECT_EQ(topological_order(compile_graph(section({task("10"), task("9"), task("x")}))),
            (std::vector<std::string>{"10", "9", "x"}));
}

TEST(Dot, ShapeAndDeterminism) {
  const auto one = to_dot(compile_graph(section({task("7", "only")})));
  EXPECT_EQ(one.rfind("digraph", 0), 0u);
  EXPECT_NE(one.find("\"7: only\""), std::string::npos);

  const auto d = compile_graph(diamond());
  const auto dot = to_dot(d);
  EXPECT_EQ(dot, to_dot(compile_graph(diamond())));
  const std::regex edge("\"[^\"]+\" -> \"[^\"]+\"");
  EXPECT_EQ(std::distance(std::sregex_iterator(dot.begin(), dot.end(), edge), std::sregex_iterator()), 4);
  const std::regex node("\n\\s*\"[^\"]+\" \\[label=");
  EXPECT_EQ(std::distance(std::sregex_iterator(dot.begin(), dot.end(), node), std::sregex_iterator()), 4);
}

TEST(Dot, LongTextIsCut) {
  const std::string text(60, 'x');
  const auto dot = to_dot(compile_graph(section({task("1", text)})));
  const auto start = dot.find("label=\"") + 7;
  const auto label = dot.substr(start, dot.find('"', start) - start);
  EXPECT_LE(label.size() - 3, 40u);  // "1: " prefix
  EXPECT_NE(label.find("..."), std::string::npos);
}

TEST(Oracle, RandomTreesAgreeWithInterleavingEnumerator) {
  testing::Rng rng(42);
  for (int i = 0; i < 200; ++i) {
    const auto roots = testing::random_task_roots(rng, {});
    const auto tasks = section(roots);
    const auto g = compile_graph(tasks);
    const auto traces = testing::enumerate_traces(roots);
    EXPECT_EQ(g.edges(), testing::transitive_reduction(testing::common_order(traces)));

    auto perm = g.nodes();
    std::sort(perm.begin(), perm.end());
    do {
      ASSERT_EQ(is_valid_trace(g, perm), traces.count(perm) > 0);
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_TRUE(is_valid_trace(g, topological_order(g)));
  }
}

TEST(Properties, DeepWideTreesStayAcyclic) {
  testing::Rng rng(43);
  testing::TreeShape shape;
  shape.max_atomic = 40;
  for (int i = 0; i < 50; ++i) {
    const auto g = compile_graph(section(testing::random_task_roots(rng, shape, false)));
    const auto order = topological_order(g);
    ASSERT_EQ(order.size(), g.nodes().size());
    EXPECT_TRUE(is_valid_trace(g, order));
    for (const auto& [a, b] : g.edges()) EXPECT_FALSE(g.precedes(b, a));
  }
}

}  // namespace
}  // namespace nnn

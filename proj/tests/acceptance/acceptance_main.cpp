// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "generators.hpp"
#include "inject.hpp"
#include "oracles.hpp"
#include "nnn/advise.hpp"
#include "nnn/coverage.hpp"
#include "nnn/export.hpp"
#include "nnn/inputschema.hpp"
#include "nnn/taskgraph.hpp"
#include "nnn/validate.hpp"
#include "nnn/xml.hpp"
#include "nnn/xmlio.hpp"

namespace {

using namespace nnn;
using Clock = std::chrono::steady_clock;

// Collects failure reasons for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++count_;
  }
  bool ok() const { return count_ == 0; }
  std::string summary() const {
    std::ostringstream s;
    s << count_ << " failure(s)";
    for (const auto& f : failures_) s << "; " << f;
    return s.str();
  }

 private:
  std::vector<std::string> failures_;
  std::size_t count_ = 0;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::string> codes(const std::vector<Diagnostic>& ds) {
  std::vector<std::string> out;
  for (const auto& d : ds) out.push_back(d.code);
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
  return out;
}

void corpus_round_trip(Check& c) {
  const auto t0 = Clock::now();
  const auto lenient = parse_document(testing::corpus_text(), ParseMode::lenient);
  c.expect(lenient.document.has_value(), "corpus did not parse");
  if (!lenient.document) return;
  auto got = codes(lenient.diagnostics);
  std::sort(got.begin(), got.end());
  c.expect(got == std::vector<std::string>{"W-LABEL-ATTR", "W-THEME-MISSING"}, "lenient codes: " + join(got));
  c.expect(!validate_structure(*lenient.document).has_errors(), "structural errors");

  const auto strict = parse_document(serialize_document(*lenient.document), ParseMode::strict);
  c.expect(strict.document.has_value() && strict.diagnostics.empty(),
           "strict re-parse: " + join(codes(strict.diagnostics)));
  const double s = seconds_since(t0);
  c.expect(s < 1.0, "took " + std::to_string(s) + " s");
}

void table_conformance(Check& c) {
  int cells = 0;
  for (const auto& name : testing::reference_standards()) {
    const auto standard = parse_standard(name);
    c.expect(standard.has_value(), "unknown standard " + name);
    if (!standard) continue;
    for (int n = 1; n <= 11; ++n) {
      const auto block = kAllBlocks[static_cast<std::size_t>(n - 1)];
      const char cell = testing::reference_cell(name, n);
      const SupportLevel want = cell == '+'   ? SupportLevel::supported
                                : cell == '0' ? SupportLevel::workaround
                                              : SupportLevel::not_supported;
      c.expect(support_level(*standard, block) == want, name + " B" + std::to_string(n));
      ++cells;
    }
  }
  c.expect(cells == 33, "cells = " + std::to_string(cells));

  const auto doc = testing::all_blocks_document();
  for (const auto& name : testing::reference_standards()) {
    const auto bundle = export_document(doc, *parse_standard(name));
    for (int n = 1; n <= 11; ++n) {
      const auto block = kAllBlocks[static_cast<std::size_t>(n - 1)];
      const char cell = testing::reference_cell(name, n);
      const auto& ledger = bundle.ledger;
      const bool ok = ledger.emitted.count(block) == (cell == '+' ? 1u : 0u) &&
                      ledger.via_workaround.count(block) == (cell == '0' ? 1u : 0u) &&
                      ledger.dropped.count(block) == (cell == '-' ? 1u : 0u);
      c.expect(ok, "ledger " + name + " B" + std::to_string(n));
    }
  }
}

void dangling_refs(Check& c) {
  const auto report = validate_semantics(testing::corpus_document());
  std::set<std::string> paths;
  std::size_t count = 0;
  for (const auto& d : report.diagnostics()) {
    if (d.code != "E-DANGLING-REF") continue;
    ++count;
    paths.insert(d.path);
  }
  c.expect(count == 5, "count = " + std::to_string(count));
  c.expect(paths == std::set<std::string>{"/custom/recommended[1]", "/custom/recommended[2]",
                                          "/custom/mandatory[1]", "/custom/mandatory[2]",
                                          "/custom/mandatory[3]"},
           "unexpected paths");
  // The referenced ids are the ones absent from tasks 0..3.
  std::set<std::string> ids;
  const auto doc = testing::corpus_document();
  for (const auto& r : doc.custom.recommended) ids.insert(r.task_id);
  for (const auto& m : doc.custom.mandatory) ids.insert(m.task_id);
  c.expect(ids == std::set<std::string>{"21", "22", "30", "31", "32"}, "referenced ids differ");
}

void task_graph_oracle(Check& c) {
  const auto t0 = Clock::now();
  testing::Rng rng(2024);
  testing::TreeShape shape;
  shape.max_atomic = 7;
  for (int i = 0; i < 500; ++i) {
    const auto roots = testing::random_task_roots(rng, shape);
    TasksSection tasks;
    tasks.roots = roots;
    const auto g = compile_graph(tasks);
    const auto traces = testing::enumerate_traces(roots);
    c.expect(g.edges() == testing::transitive_reduction(testing::common_order(traces)),
             "edges differ on tree " + std::to_string(i));
    auto perm = g.nodes();
    std::sort(perm.begin(), perm.end());
    do {
      if (is_valid_trace(g, perm) != (traces.count(perm) > 0)) {
        c.expect(false, "trace verdict differs on tree " + std::to_string(i));
        break;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  const double s = seconds_since(t0);
  c.expect(s < 30.0, "took " + std::to_string(s) + " s");
}

const PatternNode* corpus_input(const GuidelineDocument& doc, const std::string& task, const std::string& label) {
  const auto* t = find_task(doc, task);
  if (t == nullptr) return nullptr;
  for (const auto& in : t->inputs) {
    if (in.label == label) return in.pattern();
  }
  return nullptr;
}

std::vector<std::string> record_codes(const PatternNode& p, const std::string& record) {
  const auto xml = parse_xml(record);
  if (!xml.root) return {"unparsable"};
  return codes(validate_record(p, *xml.root).diagnostics());
}

void input_boundaries(Check& c) {
  const auto doc = testing::corpus_document();
  const PatternNode* summary = corpus_input(doc, "0", "Short summary");
  c.expect(summary != nullptr, "Short summary input missing");
  if (summary != nullptr) {
    const auto wrap = [](std::size_t n) { return "<summary>" + std::string(n, 'x') + "</summary>"; };
    c.expect(record_codes(*summary, wrap(50)).empty(), "length 50 rejected");
    c.expect(record_codes(*summary, wrap(51)) == std::vector<std::string>{"E-REC-BOUNDS"}, "length 51 accepted");
  }

  const auto bounded = parse_xml(
      "<input xmlns=\"http://relaxng.org/ns/structure/1.0\" label=\"Pain level\">"
      "<element name=\"level\"><data type=\"integer\">"
      "<param name=\"minInclusive\">1</param><param name=\"maxInclusive\">10</param>"
      "</data></element></input>");
  c.expect(bounded.root.has_value(), "bounded input does not parse");
  if (!bounded.root) return;
  const auto p = compile_input_body(*bounded.root);
  const auto level = [](int v) { return "<level>" + std::to_string(v) + "</level>"; };
  c.expect(record_codes(p, level(1)).empty(), "1 rejected");
  c.expect(record_codes(p, level(10)).empty(), "10 rejected");
  c.expect(record_codes(p, level(0)) == std::vector<std::string>{"E-REC-BOUNDS"}, "0 accepted");
  c.expect(record_codes(p, level(11)) == std::vector<std::string>{"E-REC-BOUNDS"}, "11 accepted");
}

int rank_of(const std::vector<AdviceEntry>& order, const std::string& id) {
  for (const auto& e : order) {
    if (e.task_id == id) return e.rank;
  }
  return -1;
}

void advise_properties(Check& c) {
  testing::Rng rng(606);
  for (int i = 0; i < 500; ++i) {
    auto doc = testing::random_clean_document(rng);
    const auto order = advise_order(doc);
    c.expect(order == advise_order(doc), "not deterministic");

    std::multiset<std::string> expected;
    for (const auto* t : all_atomic_tasks(doc)) expected.insert(t->id);
    std::multiset<std::string> got;
    bool seen_optional = false;
    for (const auto& e : order) {
      got.insert(e.task_id);
      if (!e.mandatory) seen_optional = true;
      c.expect(!(seen_optional && e.mandatory), "mandatory entries are not a prefix");
    }
    c.expect(got == expected, "not a permutation of the atomic tasks");

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
      c.expect(now <= previous, "rank worsened for task " + id);
      previous = now;
    }
  }
}

void injection_suite(Check& c) {
  const auto& all = testing::injections();
  for (const auto& entry : catalog()) {
    const std::string code(entry.code);
    auto it = std::find_if(all.begin(), all.end(), [&](const testing::Injection& inj) { return inj.code == code; });
    c.expect(it != all.end(), "no injector for " + code);
    if (it == all.end()) continue;
    testing::Rng rng(std::hash<std::string>{}(code));
    for (int round = 0; round < 10; ++round) {
      const auto doc = testing::random_clean_document(rng);
      testing::Rng a(static_cast<std::uint64_t>(round));
      testing::Rng b(static_cast<std::uint64_t>(round));
      const auto baseline = it->run(doc, false, a);
      c.expect(baseline.empty(), code + " baseline reports " + join(baseline));
      const auto injected = it->run(doc, true, b);
      c.expect(injected == std::vector<std::string>{code}, code + " injected reports " + join(injected));
    }
  }
}

void corpus_coverage(Check& c) {
  const auto detected = detect_blocks(testing::corpus_document());
  std::set<std::string> present;
  for (const auto& [block, paths] : detected) {
    if (!paths.empty()) present.insert(std::string(to_string(block)));
  }
  // The corpus carries no source or from attributes, so B6 is absent.
  const std::set<std::string> frozen{"B1", "B2", "B3", "B4", "B7", "B8", "B9", "B10", "B11"};
  c.expect(present == frozen, "present blocks differ");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria{
      {"corpus round trip", corpus_round_trip},
      {"support matrix and ledgers", table_conformance},
      {"dangling references", dangling_refs},
      {"task graph oracle", task_graph_oracle},
      {"input schema boundaries", input_boundaries},
      {"advise determinism and monotonicity", advise_properties},
      {"diagnostic injection", injection_suite},
      {"corpus coverage", corpus_coverage},
  };

  int failed = 0;
  int n = 0;
  for (const auto& criterion : criteria) {
    ++n;
    Check check;
    const auto t0 = Clock::now();
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double s = seconds_since(t0);
    std::cout << (check.ok() ? "PASS" : "FAIL") << "  " << n << "  " << criterion.name;
    std::cout << "  (" << static_cast<int>(s * 1000) << " ms)";
    if (!check.ok()) std::cout << "  " << check.summary();
    std::cout << std::endl;
    if (!check.ok()) ++failed;
  }
  return failed == 0 ? 0 : 1;
}

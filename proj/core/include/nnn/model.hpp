#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nnn/pattern.hpp"
#include "nnn/xml.hpp"

namespace nnn {

// Document model for NANDA/NIC/NOC guideline documents. Plain aggregates,
// built by the parser and treated as immutable afterwards. Structural
// invariants (score range, nesting depth, ...) are checked by validate, so
// the model can represent the violations it reports.

enum class ValidationStatus { research, implementing, testing, running, expired };
enum class FactorType { related, risk };
enum class Goal { achieve, maintain, prevent };
enum class CompositionMode { sequential, parallel };

std::string_view to_string(ValidationStatus s);
std::string_view to_string(FactorType t);
std::string_view to_string(Goal g);
std::string_view to_string(CompositionMode m);
std::optional<ValidationStatus> parse_validation_status(std::string_view s);
std::optional<FactorType> parse_factor_type(std::string_view s);
std::optional<Goal> parse_goal(std::string_view s);

/// Preference weight, valid range 1..10.
struct Score {
  int value = 0;
  bool in_range() const { return value >= 1 && value <= 10; }
  friend auto operator<=>(const Score&, const Score&) = default;
};

struct Hint {
  std::optional<std::string> from;
  std::string text;
  std::optional<Score> score;
  std::optional<std::string> source;
  friend bool operator==(const Hint&, const Hint&) = default;
};

struct Example {
  std::string text;
  std::optional<Score> score;
  std::optional<std::string> source;
  std::vector<Example> children;
  friend bool operator==(const Example&, const Example&) = default;
};

/// Input body outside the supported schema subset, kept as parsed.
struct OpaqueInput {
  std::vector<XmlElement> body;
  std::string reason;
  friend bool operator==(const OpaqueInput& a, const OpaqueInput& b) { return a.body == b.body; }
};

struct InputSpec {
  std::string label;
  std::variant<PatternNode, OpaqueInput> body;

  const PatternNode* pattern() const { return std::get_if<PatternNode>(&body); }
  friend bool operator==(const InputSpec&, const InputSpec&) = default;
};

struct Definition {
  std::string text;
  std::optional<std::string> theme;
  std::vector<Hint> hints;
  friend bool operator==(const Definition&, const Definition&) = default;
};

struct Meta {
  std::string title;
  Definition definition;
  std::string version_id;
  ValidationStatus validation_status = ValidationStatus::research;
  std::optional<std::string> institution;
  std::optional<std::string> author;
  std::optional<std::string> validator;
  std::optional<std::string> implementer;
  std::chrono::year_month_day date{};
  friend bool operator==(const Meta&, const Meta&) = default;
};

struct Recommended {
  std::string task_id;
  Score score;
  friend bool operator==(const Recommended&, const Recommended&) = default;
};

struct Mandatory {
  std::string task_id;
  friend bool operator==(const Mandatory&, const Mandatory&) = default;
};

struct Custom {
  std::vector<Recommended> recommended;
  std::vector<Mandatory> mandatory;
  bool empty() const { return recommended.empty() && mandatory.empty(); }
  friend bool operator==(const Custom&, const Custom&) = default;
};

struct Factor {
  std::string text;
  std::optional<std::string> category;
  std::optional<std::string> subcategory;
  FactorType type = FactorType::related;  // absent attribute reads as related
  std::vector<Hint> hints;
  std::vector<Example> examples;
  std::optional<std::string> source;
  std::optional<std::string> children_source;  // `source` on the nested <factors>
  std::vector<Factor> children;
  friend bool operator==(const Factor&, const Factor&) = default;
};

struct Symptom {
  std::string text;
  std::optional<std::string> category;
  std::optional<std::string> subcategory;
  std::vector<Hint> hints;
  std::vector<Example> examples;
  std::optional<std::string> source;
  friend bool operator==(const Symptom&, const Symptom&) = default;
};

struct Outcome {
  std::string id;
  Goal goal = Goal::achieve;
  std::string text;
  std::vector<Hint> hints;
  std::vector<Example> examples;
  std::vector<InputSpec> inputs;
  std::optional<std::string> source;
  friend bool operator==(const Outcome&, const Outcome&) = default;
};

struct AtomicTask {
  std::string id;
  std::string text;
  std::optional<std::int64_t> predicted_effort;  // unit unspecified; minutes by convention
  std::optional<Score> score;
  std::vector<Hint> hints;
  std::vector<Example> examples;
  std::vector<InputSpec> inputs;
  std::optional<std::string> source;
  friend bool operator==(const AtomicTask&, const AtomicTask&) = default;
};

struct TaskNode;

struct CompositeTask {
  CompositionMode mode = CompositionMode::sequential;
  std::optional<std::string> name;
  std::optional<std::string> text;
  std::optional<std::string> source;
  std::vector<TaskNode> children;
  friend bool operator==(const CompositeTask&, const CompositeTask&) = default;
};

struct TaskNode {
  std::variant<AtomicTask, CompositeTask> value;

  TaskNode() = default;
  TaskNode(AtomicTask t) : value(std::move(t)) {}      // NOLINT(google-explicit-constructor)
  TaskNode(CompositeTask c) : value(std::move(c)) {}   // NOLINT(google-explicit-constructor)

  const AtomicTask* atomic() const { return std::get_if<AtomicTask>(&value); }
  const CompositeTask* composite() const { return std::get_if<CompositeTask>(&value); }
  friend bool operator==(const TaskNode&, const TaskNode&) = default;
};

struct Documentation {
  std::string id;
  std::string text;
  std::vector<Hint> hints;
  std::vector<Example> examples;
  std::vector<InputSpec> inputs;
  std::optional<std::string> source;
  friend bool operator==(const Documentation&, const Documentation&) = default;
};

struct FactorsSection {
  std::vector<Factor> items;
  std::optional<std::string> source;
  friend bool operator==(const FactorsSection&, const FactorsSection&) = default;
};

struct SymptomsSection {
  std::vector<Symptom> items;
  std::optional<std::string> source;
  friend bool operator==(const SymptomsSection&, const SymptomsSection&) = default;
};

struct OutcomesSection {
  std::vector<std::string> noc_labels;
  std::vector<Outcome> items;
  std::optional<std::string> source;
  friend bool operator==(const OutcomesSection&, const OutcomesSection&) = default;
};

/// Top-level entries of `roots` run in parallel (no order among them).
struct TasksSection {
  std::vector<std::string> nic_labels;
  std::vector<TaskNode> roots;
  std::optional<std::string> source;
  friend bool operator==(const TasksSection&, const TasksSection&) = default;
};

struct DocumentationsSection {
  std::vector<Documentation> items;
  std::optional<std::string> source;
  friend bool operator==(const DocumentationsSection&, const DocumentationsSection&) = default;
};

struct GuidelineBody {
  FactorsSection factors;
  SymptomsSection symptoms;
  OutcomesSection outcomes;
  TasksSection tasks;
  DocumentationsSection documentations;
  std::optional<std::string> source;
  friend bool operator==(const GuidelineBody&, const GuidelineBody&) = default;
};

struct GuidelineDocument {
  Meta meta;
  Custom custom;
  GuidelineBody body;
  friend bool operator==(const GuidelineDocument&, const GuidelineDocument&) = default;
};

/// Unique atomic task with the given id, or nullptr.
const AtomicTask* find_task(const GuidelineDocument& doc, std::string_view id);

/// Depth-first, left-to-right flattening of every composite.
std::vector<const AtomicTask*> all_atomic_tasks(const GuidelineDocument& doc);
std::vector<const AtomicTask*> all_atomic_tasks(const TasksSection& tasks);
void collect_atomic_tasks(const TaskNode& node, std::vector<const AtomicTask*>& out);

std::string format_date(const std::chrono::year_month_day& d);
/// Strict YYYY-MM-DD with calendar check.
std::optional<std::chrono::year_month_day> parse_date(std::string_view s);

/// Base-10 integer with optional sign, no surrounding whitespace.
std::optional<std::int64_t> parse_integer(std::string_view s);

/// Tie-break order for task ids: numeric when every id in the set is an
/// unsigned decimal number, lexicographic otherwise.
struct IdOrder {
  bool numeric = false;
  bool operator()(std::string_view a, std::string_view b) const;
  static IdOrder for_ids(const std::vector<std::string>& ids);
};
bool is_decimal_id(std::string_view s);

/// Every element of the canonical form of `doc`, in document order. Paths
/// omit the `<nnn>` root and give 1-based ordinals to repeatable elements.
struct ElementInfo {
  std::string path;
  std::string name;
  int parent = -1;                    // index into the same list
  std::optional<std::string> source;  // own `source` attribute
  bool in_guideline = false;
};
std::vector<ElementInfo> document_elements(const GuidelineDocument& doc);

std::string item_path(std::string_view parent, std::string_view name, std::size_t ordinal);
std::string child_path(std::string_view parent, std::string_view name);

}  // namespace nnn

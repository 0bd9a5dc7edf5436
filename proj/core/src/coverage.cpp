#include "nnn/coverage.hpp"

namespace nnn {

namespace {

constexpr std::array<std::string_view, 11> kCodes = {"B1", "B2", "B3", "B4", "B5", "B6",
                                                     "B7", "B8", "B9", "B10", "B11"};
constexpr std::array<std::string_view, 11> kNames = {"title",
                                                     "description",
                                                     "defining characteristics",
                                                     "related factors",
                                                     "risk factors",
                                                     "sources",
                                                     "nursing interventions",
                                                     "nursing outcomes",
                                                     "emphases of nursing documentation",
                                                     "NIC labels",
                                                     "NOC labels"};

// '+' supported, '-' not supported, '0' workaround; columns B1..B11
constexpr std::array<std::string_view, 3> kMatrix = {
    "+++--++0+--",  // arden
    "+-0--++++-+",  // asbru
    "+++--++++00",  // glif
};

}  // namespace

std::string_view to_string(BuildingBlock b) { return kCodes[static_cast<std::size_t>(b)]; }
std::string_view display_name(BuildingBlock b) { return kNames[static_cast<std::size_t>(b)]; }

std::optional<BuildingBlock> parse_block(std::string_view s) {
  if (!s.empty() && (s.front() == 'B' || s.front() == 'b')) s.remove_prefix(1);
  for (std::size_t i = 0; i < kCodes.size(); ++i) {
    if (kCodes[i].substr(1) == s) return static_cast<BuildingBlock>(i);
  }
  return std::nullopt;
}

std::string_view to_string(Standard s) {
  switch (s) {
    case Standard::arden: return "arden";
    case Standard::asbru: return "asbru";
    case Standard::glif: return "glif";
  }
  return "arden";
}

std::optional<Standard> parse_standard(std::string_view s) {
  for (auto st : kAllStandards) {
    if (to_string(st) == s) return st;
  }
  return std::nullopt;
}

std::string_view to_string(SupportLevel s) {
  switch (s) {
    case SupportLevel::supported: return "supported";
    case SupportLevel::not_supported: return "not_supported";
    case SupportLevel::workaround: return "workaround";
  }
  return "not_supported";
}

SupportLevel support_level(Standard standard, BuildingBlock block) {
  const char cell = kMatrix[static_cast<std::size_t>(standard)][static_cast<std::size_t>(block)];
  switch (cell) {
    case '+': return SupportLevel::supported;
    case '0': return SupportLevel::workaround;
    default: return SupportLevel::not_supported;
  }
}

namespace {

void add_inputs(std::vector<std::string>& out, const std::vector<ElementInfo>& elements) {
  for (const auto& e : elements) {
    if (e.name == "inputs") out.push_back(e.path);
  }
}

}  // namespace

std::map<BuildingBlock, std::vector<std::string>> detect_blocks(const GuidelineDocument& doc) {
  std::map<BuildingBlock, std::vector<std::string>> out;
  for (auto b : kAllBlocks) out[b];

  out[BuildingBlock::B1].push_back("/meta/title");
  out[BuildingBlock::B2].push_back("/meta/definition");

  const auto elements = document_elements(doc);
  // Factors in canonical order line up with "factor" entries of the serialized document.
  std::vector<const Factor*> factors;
  auto flatten = [&](auto&& self, const std::vector<Factor>& fs) -> void {
    for (const auto& f : fs) {
      factors.push_back(&f);
      self(self, f.children);
    }
  };
  flatten(flatten, doc.body.factors.items);

  std::size_t factor_index = 0;
  auto hint_from = [&]() {
    // hint elements in document order, paired with their model hints
    std::vector<const Hint*> hs;
    auto push = [&](const std::vector<Hint>& v) {
      for (const auto& h : v) hs.push_back(&h);
    };
    push(doc.meta.definition.hints);
    auto factor_hints = [&](auto&& self, const std::vector<Factor>& fs) -> void {
      for (const auto& f : fs) {
        push(f.hints);
        self(self, f.children);
      }
    };
    factor_hints(factor_hints, doc.body.factors.items);
    for (const auto& s : doc.body.symptoms.items) push(s.hints);
    for (const auto& o : doc.body.outcomes.items) push(o.hints);
    auto task_hints = [&](auto&& self, const std::vector<TaskNode>& ns) -> void {
      for (const auto& n : ns) {
        if (const auto* t = n.atomic()) {
          push(t->hints);
        } else {
          self(self, n.composite()->children);
        }
      }
    };
    task_hints(task_hints, doc.body.tasks.roots);
    for (const auto& d : doc.body.documentations.items) push(d.hints);
    return hs;
  }();
  std::size_t hint_index = 0;

  for (const auto& e : elements) {
    const bool sourced = e.source && !e.source->empty();
    if (sourced) out[BuildingBlock::B6].push_back(e.path);
    if (e.name == "hint") {
      const Hint* h = hint_from[hint_index++];
      if (h->from && !h->from->empty() && !sourced) out[BuildingBlock::B6].push_back(e.path);
    } else if (e.name == "factor") {
      const Factor* f = factors[factor_index++];
      out[f->type == FactorType::risk ? BuildingBlock::B5 : BuildingBlock::B4].push_back(e.path);
    } else if (e.name == "symptom") {
      out[BuildingBlock::B3].push_back(e.path);
    } else if (e.name == "task") {
      out[BuildingBlock::B7].push_back(e.path);
    } else if (e.name == "outcome") {
      out[BuildingBlock::B8].push_back(e.path);
    } else if (e.name == "documentation") {
      out[BuildingBlock::B9].push_back(e.path);
    } else if (e.name == "label") {
      const bool tasks = e.path.rfind("/guideline/tasks/", 0) == 0;
      out[tasks ? BuildingBlock::B10 : BuildingBlock::B11].push_back(e.path);
    }
  }
  add_inputs(out[BuildingBlock::B9], elements);
  return out;
}

Partition partition_for(Standard standard, const std::map<BuildingBlock, std::vector<std::string>>& detected) {
  Partition p;
  for (const auto& [block, paths] : detected) {
    if (paths.empty()) continue;
    switch (support_level(standard, block)) {
      case SupportLevel::supported: p.expressible.push_back(block); break;
      case SupportLevel::workaround: p.via_workaround.push_back(block); break;
      case SupportLevel::not_supported: p.lost.push_back(block); break;
    }
  }
  return p;
}

std::map<Standard, Partition> compare_report(const GuidelineDocument& doc) {
  const auto detected = detect_blocks(doc);
  std::map<Standard, Partition> out;
  for (auto s : kAllStandards) out[s] = partition_for(s, detected);
  return out;
}

}  // namespace nnn

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nnn/model.hpp"

namespace nnn {

struct AdviceEntry {
  std::string task_id;
  bool mandatory = false;
  std::optional<Score> effective_score;
  int rank = 0;  // 1-based, contiguous
  friend bool operator==(const AdviceEntry&, const AdviceEntry&) = default;
};

/// Display order of every atomic task: mandatory tasks first, then by
/// effective score (recommended score, else the task's own, else none,
/// which sorts below 1), ties by id. Custom entries naming no task are
/// skipped; of repeated entries only the first counts.
std::vector<AdviceEntry> advise_order(const GuidelineDocument& doc);

}  // namespace nnn

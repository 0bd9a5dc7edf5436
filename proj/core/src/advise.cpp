#include "nnn/advise.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace nnn {

std::vector<AdviceEntry> advise_order(const GuidelineDocument& doc) {
  const auto tasks = all_atomic_tasks(doc);

  std::map<std::string, Score> recommended;
  for (const auto& r : doc.custom.recommended) recommended.emplace(r.task_id, r.score);  // first wins
  std::set<std::string> mandatory;
  for (const auto& m : doc.custom.mandatory) mandatory.insert(m.task_id);

  std::vector<AdviceEntry> out;
  std::vector<std::string> ids;
  std::set<std::string> seen;
  for (const auto* t : tasks) {
    if (!seen.insert(t->id).second) continue;  // duplicate ids: first occurrence only
    AdviceEntry e;
    e.task_id = t->id;
    e.mandatory = mandatory.count(t->id) > 0;
    if (auto it = recommended.find(t->id); it != recommended.end()) {
      e.effective_score = it->second;
    } else {
      e.effective_score = t->score;
    }
    ids.push_back(t->id);
    out.push_back(std::move(e));
  }

  const IdOrder by_id = IdOrder::for_ids(ids);
  std::sort(out.begin(), out.end(), [&](const AdviceEntry& a, const AdviceEntry& b) {
    if (a.mandatory != b.mandatory) return a.mandatory;
    const int sa = a.effective_score ? a.effective_score->value : 0;
    const int sb = b.effective_score ? b.effective_score->value : 0;
    if (sa != sb) return sa > sb;
    return by_id(a.task_id, b.task_id);
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i) + 1;
  return out;
}

}  // namespace nnn

#pragma once

#include <set>
#include <string>
#include <vector>

#include "nnn/coverage.hpp"
#include "nnn/diagnostic.hpp"
#include "nnn/model.hpp"

namespace nnn {

/// What an exporter did with each building block found in the document.
struct LossLedger {
  Standard standard = Standard::arden;
  std::set<BuildingBlock> emitted;
  std::set<BuildingBlock> via_workaround;
  std::set<BuildingBlock> dropped;
  friend bool operator==(const LossLedger&, const LossLedger&) = default;
};

struct Artifact {
  std::string filename;
  std::string content;
};

struct ExportBundle {
  std::vector<Artifact> artifacts;  // never empty
  LossLedger ledger;
  std::vector<Diagnostic> diagnostics;  // informational only
};

// Each exporter emits a skeleton, not executable logic; TODO markers flag
// the places a clinician has to fill in. All three throw DiagnosticError
// (E-EXPORT-EMPTY) when the document has no atomic task.

/// One Arden MLM per top-level task node (composites collapse into one
/// MLM), plus one MLM for documentation items.
ExportBundle export_arden(const GuidelineDocument& doc);

/// One Asbru plan whose plan-body mirrors the task composition tree.
ExportBundle export_asbru(const GuidelineDocument& doc);

/// GLIF Guideline / Action Step / Action Specification text. Steps are
/// chained in topological order; I-LINEARIZED notes a forced order.
ExportBundle export_glif(const GuidelineDocument& doc);

ExportBundle export_document(const GuidelineDocument& doc, Standard standard);

/// {"standard", "emitted", "via_workaround", "dropped"} with block names.
std::string ledger_json(const LossLedger& ledger);

/// Lowercase ASCII file-name stem: runs of other characters become '_'.
std::string slugify(std::string_view s);

}  // namespace nnn

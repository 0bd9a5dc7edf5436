#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nnn/model.hpp"

namespace nnn {

/// The eleven NNN building blocks.
enum class BuildingBlock {
  B1,   // title
  B2,   // description
  B3,   // defining characteristics
  B4,   // related factors
  B5,   // risk factors
  B6,   // sources
  B7,   // nursing interventions
  B8,   // nursing outcomes
  B9,   // emphases of nursing documentation
  B10,  // NIC labels
  B11,  // NOC labels
};

inline constexpr std::array<BuildingBlock, 11> kAllBlocks = {
    BuildingBlock::B1, BuildingBlock::B2, BuildingBlock::B3, BuildingBlock::B4,  BuildingBlock::B5, BuildingBlock::B6,
    BuildingBlock::B7, BuildingBlock::B8, BuildingBlock::B9, BuildingBlock::B10, BuildingBlock::B11};

std::string_view to_string(BuildingBlock b);     // "B1" .. "B11"
std::string_view display_name(BuildingBlock b);  // "title", "risk factors", ...
std::optional<BuildingBlock> parse_block(std::string_view s);  // "B7" or "7"

enum class Standard { arden, asbru, glif };
inline constexpr std::array<Standard, 3> kAllStandards = {Standard::arden, Standard::asbru, Standard::glif};
std::string_view to_string(Standard s);
std::optional<Standard> parse_standard(std::string_view s);

enum class SupportLevel { supported, not_supported, workaround };
std::string_view to_string(SupportLevel s);

/// Support of the three guideline standards for each building block.
SupportLevel support_level(Standard standard, BuildingBlock block);

/// Paths realizing each block; every block is a key (empty list if absent).
std::map<BuildingBlock, std::vector<std::string>> detect_blocks(const GuidelineDocument& doc);

struct Partition {
  std::vector<BuildingBlock> expressible;
  std::vector<BuildingBlock> via_workaround;
  std::vector<BuildingBlock> lost;
};

/// Detected (non-empty) blocks split by each standard's support level.
std::map<Standard, Partition> compare_report(const GuidelineDocument& doc);
Partition partition_for(Standard standard, const std::map<BuildingBlock, std::vector<std::string>>& detected);

}  // namespace nnn

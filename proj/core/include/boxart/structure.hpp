#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "boxart/diagram.hpp"
#include "boxart/grid.hpp"

namespace boxart {

/// A non-space cell not explained by any parsed box. Row 0 is the top line.
struct StrayCell {
  int row = 0;
  int col = 0;
  char ch = ' ';

  bool operator==(const StrayCell& other) const {
    return row == other.row && col == other.col && ch == other.ch;
  }
};

/// Parsed box inventory of a grid. Every '-', '|' and alphanumeric is
/// attributed to exactly one box or listed as a stray.
struct StructureReport {
  std::vector<Box> boxes;
  std::vector<StrayCell> stray_cells;
  bool is_clean = false;
};

/// Structural diff between a model's output art and the expected result of a
/// generation task.
struct GenerationMetrics {
  bool exact_match = false;
  int boxes_matched = 0;
  int boxes_missing = 0;
  int boxes_fabricated = 0;
  std::set<char> names_missing;
  std::set<char> names_fabricated;
  int noise_remaining = 0;
  int noise_added = 0;
  int top_margin_rows = 0;
  int left_margin_cols = 0;
  bool runaway_repetition = false;
};

/// Recovers all boxes drawn in the render convention (dash runs on two rows,
/// pipe runs on two columns, sides >= 3). Scan is greedy by (top row, left
/// column) taking the largest area among candidates sharing a top-left;
/// accepted boxes consume their boundary cells. Alphanumerics at interior
/// corners of found boxes are resolved into names; everything else is stray.
StructureReport parse_boxes(const CharGrid& grid);

/// True iff some '|' has a '-' diagonally adjacent (one row up or down, one
/// column left or right) — the witness that box art is plausibly present.
bool has_vertex_signature(const std::string& text);

/// Pulls ASCII-art out of a free-form response: first the content between the
/// last pair of triple-backtick fences; if that lacks the vertex signature,
/// every line strictly after the last line containing two consecutive
/// alphanumerics. Absent when neither step yields vertex-bearing content.
std::optional<std::string> extract_art(const std::string& response);

enum class TaskKind;  // defined in trials.hpp

/// Reference side of a generation trial handed to the grader: the semantic
/// model plus the art exactly as shown in the prompt.
struct GenerationReference {
  Diagram diagram;
  std::string shown_text;
};

/// Scores extracted output art against the task's expected transform of the
/// reference. Box matching requires exact shape; position must be exact
/// except translation (one uniform offset shared by all matched boxes) and
/// scale (doubled coordinates).
GenerationMetrics grade_generation(TaskKind task, const GenerationReference& reference,
                                   const std::string& output_art,
                                   const NoiseSpec& noise = NoiseSpec{});

}  // namespace boxart

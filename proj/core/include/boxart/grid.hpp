#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "boxart/rng.hpp"

namespace boxart {

/// Rectangular or ragged character raster. Row 0 is the top line of the art.
/// Generated art only ever contains printable 7-bit characters plus space;
/// model output is stored as-is.
class CharGrid {
 public:
  CharGrid() = default;
  explicit CharGrid(std::vector<std::string> rows) : rows_(std::move(rows)) {}

  /// Splits on '\n'. The inverse of to_text().
  static CharGrid from_text(std::string_view text);

  /// Joins rows with '\n', no trailing newline.
  std::string to_text() const;

  int height() const { return static_cast<int>(rows_.size()); }

  /// Widest row. In padded mode every row has exactly this many cells.
  int width() const;

  bool is_padded() const;

  const std::vector<std::string>& rows() const { return rows_; }

  /// Cell lookup that treats missing cells of ragged rows as spaces.
  /// Out-of-range rows also read as spaces.
  char at(int row, int col) const;

  bool operator==(const CharGrid& other) const { return rows_ == other.rows_; }

 private:
  std::vector<std::string> rows_;
};

/// Noise injection parameters: per-space replacement probability and the
/// characters drawn from. The default charset is disjoint from box boundary
/// marks and names, so a noise character is always recognizable as noise.
struct NoiseSpec {
  double level = 0.0;
  std::string charset = "\"@*.,";
};

/// Right-pads every row with spaces to exactly `width` cells.
/// Throws WidthTooSmall if any row is longer than `width`.
CharGrid pad_to_width(const CharGrid& grid, int width);

/// Removes trailing spaces from every row.
CharGrid trim_ragged(const CharGrid& grid);

/// Copies `grid` into an outer_w x outer_h canvas of spaces. (dx, dy) is the
/// offset of the inner canvas's bottom-left corner from the outer canvas's
/// bottom-left corner (x right, y up). Throws DoesNotFit.
CharGrid embed(const CharGrid& grid, int outer_w, int outer_h, int dx, int dy);

/// Each cell becomes a 2x2 block of the same character.
CharGrid upscale2(const CharGrid& grid);

/// Keeps cells at even row and column indices; inverse of upscale2.
/// Throws OddDimensions unless both dimensions are even.
CharGrid downscale2(const CharGrid& grid);

/// Replaces each space independently with probability spec.level by a uniform
/// charset member; the whole pass is resampled until at least one replacement
/// happened. Level 0 is the identity. Throws NoSpacesAvailable when level > 0
/// and the grid has no space cell.
CharGrid inject_noise(const CharGrid& grid, const NoiseSpec& spec, RandomStream& rng);

/// Exact counts of every non-space character.
std::map<char, int> char_histogram(const CharGrid& grid);

}  // namespace boxart

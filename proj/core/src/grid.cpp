#include "boxart/grid.hpp"

#include <algorithm>

#include "boxart/error.hpp"

namespace boxart {

CharGrid CharGrid::from_text(std::string_view text) {
  std::vector<std::string> rows;
  std::size_t start = 0;
  while (true) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      rows.emplace_back(text.substr(start));
      break;
    }
    rows.emplace_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return CharGrid(std::move(rows));
}

std::string CharGrid::to_text() const {
  std::string out;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i > 0) out.push_back('\n');
    out += rows_[i];
  }
  return out;
}

int CharGrid::width() const {
  std::size_t w = 0;
  for (const auto& row : rows_) w = std::max(w, row.size());
  return static_cast<int>(w);
}

bool CharGrid::is_padded() const {
  if (rows_.empty()) return true;
  const std::size_t w = rows_.front().size();
  return std::all_of(rows_.begin(), rows_.end(),
                     [w](const std::string& r) { return r.size() == w; });
}

char CharGrid::at(int row, int col) const {
  if (row < 0 || row >= height() || col < 0) return ' ';
  const std::string& r = rows_[static_cast<std::size_t>(row)];
  if (col >= static_cast<int>(r.size())) return ' ';
  return r[static_cast<std::size_t>(col)];
}

CharGrid pad_to_width(const CharGrid& grid, int width) {
  std::vector<std::string> rows = grid.rows();
  for (auto& row : rows) {
    if (static_cast<int>(row.size()) > width) {
      throw Error(ErrorCode::WidthTooSmall,
                  "row of length " + std::to_string(row.size()) + " exceeds width " +
                      std::to_string(width));
    }
    row.resize(static_cast<std::size_t>(width), ' ');
  }
  return CharGrid(std::move(rows));
}

CharGrid trim_ragged(const CharGrid& grid) {
  std::vector<std::string> rows = grid.rows();
  for (auto& row : rows) {
    std::size_t end = row.find_last_not_of(' ');
    row.resize(end == std::string::npos ? 0 : end + 1);
  }
  return CharGrid(std::move(rows));
}

CharGrid embed(const CharGrid& grid, int outer_w, int outer_h, int dx, int dy) {
  const int w = grid.width();
  const int h = grid.height();
  if (dx < 0 || dy < 0 || w + dx > outer_w || h + dy > outer_h) {
    throw Error(ErrorCode::DoesNotFit, "inner " + std::to_string(w) + "x" + std::to_string(h) +
                                           " at (" + std::to_string(dx) + "," + std::to_string(dy) +
                                           ") in " + std::to_string(outer_w) + "x" +
                                           std::to_string(outer_h));
  }
  std::vector<std::string> rows(static_cast<std::size_t>(outer_h),
                                std::string(static_cast<std::size_t>(outer_w), ' '));
  // y is measured upward, storage rows downward: inner row r lands at
  // outer storage row (outer_h - dy - h + r).
  const int top = outer_h - dy - h;
  for (int r = 0; r < h; ++r) {
    const std::string& src = grid.rows()[static_cast<std::size_t>(r)];
    std::copy(src.begin(), src.end(),
              rows[static_cast<std::size_t>(top + r)].begin() + dx);
  }
  return CharGrid(std::move(rows));
}

CharGrid upscale2(const CharGrid& grid) {
  std::vector<std::string> rows;
  rows.reserve(static_cast<std::size_t>(grid.height()) * 2);
  for (const auto& row : grid.rows()) {
    std::string wide;
    wide.reserve(row.size() * 2);
    for (char c : row) {
      wide.push_back(c);
      wide.push_back(c);
    }
    rows.push_back(wide);
    rows.push_back(std::move(wide));
  }
  return CharGrid(std::move(rows));
}

CharGrid downscale2(const CharGrid& grid) {
  if (grid.height() % 2 != 0) {
    throw Error(ErrorCode::OddDimensions, "height " + std::to_string(grid.height()));
  }
  std::vector<std::string> rows;
  rows.reserve(static_cast<std::size_t>(grid.height()) / 2);
  for (int r = 0; r < grid.height(); r += 2) {
    const std::string& src = grid.rows()[static_cast<std::size_t>(r)];
    if (src.size() % 2 != 0) {
      throw Error(ErrorCode::OddDimensions, "row width " + std::to_string(src.size()));
    }
    std::string half;
    half.reserve(src.size() / 2);
    for (std::size_t c = 0; c < src.size(); c += 2) half.push_back(src[c]);
    rows.push_back(std::move(half));
  }
  return CharGrid(std::move(rows));
}

CharGrid inject_noise(const CharGrid& grid, const NoiseSpec& spec, RandomStream& rng) {
  if (spec.level == 0.0) return grid;
  if (spec.level < 0.0 || spec.level > 1.0 || spec.charset.empty()) {
    throw Error(ErrorCode::InvalidArgs, "noise level must be in [0,1] with a nonempty charset");
  }
  bool has_space = false;
  for (const auto& row : grid.rows()) {
    if (row.find(' ') != std::string::npos) {
      has_space = true;
      break;
    }
  }
  if (!has_space) throw Error(ErrorCode::NoSpacesAvailable, "no space cell to replace");

  const int last = static_cast<int>(spec.charset.size()) - 1;
  while (true) {
    std::vector<std::string> rows = grid.rows();
    int replaced = 0;
    for (auto& row : rows) {
      for (char& c : row) {
        if (c != ' ') continue;
        if (rng.uniform_double() < spec.level) {
          c = spec.charset[static_cast<std::size_t>(rng.uniform_int(0, last))];
          ++replaced;
        }
      }
    }
    if (replaced >= 1) return CharGrid(std::move(rows));
  }
}

std::map<char, int> char_histogram(const CharGrid& grid) {
  std::map<char, int> hist;
  for (const auto& row : grid.rows()) {
    for (char c : row) {
      if (c != ' ') ++hist[c];
    }
  }
  return hist;
}

}  // namespace boxart

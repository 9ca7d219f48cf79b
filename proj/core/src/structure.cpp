#include "boxart/structure.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "boxart/error.hpp"
#include "boxart/trials.hpp"

namespace boxart {
namespace {

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

/// Box in storage coordinates: t/b are top/bottom rows, l/r left/right
/// columns, all referring to the corner cells.
struct SBox {
  int t = 0, l = 0, b = 0, r = 0;
  std::optional<char> name;
  Corner name_corner = Corner::LL;

  int width() const { return r - l + 1; }
  int height() const { return b - t + 1; }
};

std::pair<int, int> interior_storage_cell(const SBox& box, Corner corner) {
  switch (corner) {
    case Corner::LL: return {box.b - 1, box.l + 1};
    case Corner::LR: return {box.b - 1, box.r - 1};
    case Corner::UL: return {box.t + 1, box.l + 1};
    case Corner::UR: return {box.t + 1, box.r - 1};
  }
  return {box.b - 1, box.l + 1};
}

constexpr Corner kCornerOrder[4] = {Corner::LL, Corner::LR, Corner::UL, Corner::UR};

/// Recovers boxes as an exact cover of the '-' and '|' cells. The scan is
/// greedy by (top row, left column) with larger areas tried first, but a
/// commitment that leaves structural cells unexplained is backtracked:
/// tangent boxes can merge their runs through corner cells, which creates
/// false rectangles that only the cover condition can rule out. The search
/// is budget-bounded and falls back to the best cover seen, so mangled
/// model output still parses to a reasonable box set.
class BoxScanner {
 public:
  explicit BoxScanner(const CharGrid& grid)
      : height_(grid.height()), width_(grid.width()),
        cells_(static_cast<std::size_t>(height_) * std::max(width_, 1), ' '),
        consumed_(static_cast<std::size_t>(height_) * std::max(width_, 1), false) {
    for (int r = 0; r < height_; ++r) {
      for (int c = 0; c < width_; ++c) cells_[idx(r, c)] = grid.at(r, c);
    }
  }

  std::vector<SBox> scan() {
    boxes_.clear();
    best_boxes_.clear();
    best_strays_ = -1;
    steps_ = 0;
    if (width_ > 0 && height_ > 0) solve(0);
    // Replay the winning cover so the consumed marks match the result.
    std::fill(consumed_.begin(), consumed_.end(), false);
    for (const SBox& box : best_boxes_) consume(box);
    return best_boxes_;
  }

  char cell(int r, int c) const {
    if (r < 0 || r >= height_ || c < 0 || c >= width_) return ' ';
    return cells_[idx(r, c)];
  }
  bool consumed(int r, int c) const { return consumed_[idx(r, c)]; }
  int height() const { return height_; }
  int width() const { return width_; }

 private:
  static constexpr int kStepBudget = 20000;

  std::size_t idx(int r, int c) const {
    return static_cast<std::size_t>(r) * width_ + c;
  }

  bool open(int r, int c, char ch) const {
    return r >= 0 && r < height_ && c >= 0 && c < width_ && cells_[idx(r, c)] == ch &&
           !consumed_[idx(r, c)];
  }

  /// All rectangles whose top-left corner cell is (t, l), largest area
  /// first. Merged runs mean the corner cell itself may hold another box's
  /// mark, so only boundary cells are constrained.
  std::vector<SBox> candidates_at(int t, int l) const {
    std::vector<SBox> out;
    if (!open(t, l + 1, '-') || !open(t + 1, l, '|')) return out;

    int dash_end = l + 1;
    while (open(t, dash_end + 1, '-')) ++dash_end;
    int pipe_end = t + 1;
    while (open(pipe_end + 1, l, '|')) ++pipe_end;

    for (int r = dash_end + 1; r >= l + 2; --r) {
      if (!open(t + 1, r, '|')) continue;
      int right_end = t + 1;
      while (open(right_end + 1, r, '|')) ++right_end;
      const int b_cap = std::min(pipe_end, right_end) + 1;
      for (int b = b_cap; b >= t + 2; --b) {
        bool ok = true;
        for (int c = l + 1; c <= r - 1 && ok; ++c) ok = open(b, c, '-');
        if (ok) out.push_back(SBox{t, l, b, r, std::nullopt, Corner::LL});
      }
    }
    std::sort(out.begin(), out.end(), [](const SBox& a, const SBox& b) {
      const long area_a = static_cast<long>(a.width()) * a.height();
      const long area_b = static_cast<long>(b.width()) * b.height();
      if (area_a != area_b) return area_a > area_b;
      if (a.b != b.b) return a.b > b.b;
      return a.r > b.r;
    });
    return out;
  }

  void consume(const SBox& box) { mark(box, true); }
  void unconsume(const SBox& box) { mark(box, false); }

  void mark(const SBox& box, bool value) {
    for (int c = box.l + 1; c <= box.r - 1; ++c) {
      consumed_[idx(box.t, c)] = value;
      consumed_[idx(box.b, c)] = value;
    }
    for (int r = box.t + 1; r <= box.b - 1; ++r) {
      consumed_[idx(r, box.l)] = value;
      consumed_[idx(r, box.r)] = value;
    }
  }

  int stray_structural_cells() const {
    int count = 0;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if ((cells_[i] == '-' || cells_[i] == '|') && !consumed_[i]) ++count;
    }
    return count;
  }

  bool record_terminal() {
    const int strays = stray_structural_cells();
    if (best_strays_ < 0 || strays < best_strays_) {
      best_strays_ = strays;
      best_boxes_ = boxes_;
    }
    return strays == 0;
  }

  /// True once a perfect cover is locked in best_boxes_.
  bool solve(int pos) {
    const int total = height_ * width_;
    while (pos < total) {
      if (!candidates_at(pos / width_, pos % width_).empty()) break;
      ++pos;
    }
    if (pos >= total) return record_terminal();

    for (const SBox& candidate : candidates_at(pos / width_, pos % width_)) {
      if (steps_ >= kStepBudget) break;
      ++steps_;
      consume(candidate);
      boxes_.push_back(candidate);
      if (solve(pos + 1)) return true;
      boxes_.pop_back();
      unconsume(candidate);
    }
    if (steps_ >= kStepBudget) return record_terminal();
    // No rectangle anchored here survives; the cells must belong to merged
    // neighbours instead.
    return solve(pos + 1);
  }

  int height_;
  int width_;
  std::vector<char> cells_;
  std::vector<bool> consumed_;
  std::vector<SBox> boxes_;
  std::vector<SBox> best_boxes_;
  int best_strays_ = -1;
  int steps_ = 0;
};

/// Resolves which alphanumeric belongs to which box. Interior corners can
/// coincide across boxes, so this propagates forced choices first (a box with
/// one candidate cell, a cell wanted by one box) and only then falls back to
/// the first free corner in LL,LR,UL,UR order.
void attribute_names(const BoxScanner& scanner, std::vector<SBox>& boxes) {
  const std::size_t n = boxes.size();
  std::vector<std::vector<std::pair<std::pair<int, int>, Corner>>> cands(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (Corner corner : kCornerOrder) {
      auto cell = interior_storage_cell(boxes[i], corner);
      const char ch = scanner.cell(cell.first, cell.second);
      if (is_alnum(ch) && !scanner.consumed(cell.first, cell.second)) {
        cands[i].push_back({cell, corner});
      }
    }
  }

  std::map<std::pair<int, int>, int> claimed;  // cell -> box index
  std::vector<bool> named(n, false);

  auto unclaimed = [&](std::size_t i) {
    std::vector<std::pair<std::pair<int, int>, Corner>> out;
    for (const auto& cand : cands[i]) {
      if (!claimed.count(cand.first)) out.push_back(cand);
    }
    return out;
  };
  auto claim = [&](std::size_t i, const std::pair<std::pair<int, int>, Corner>& cand) {
    boxes[i].name = scanner.cell(cand.first.first, cand.first.second);
    boxes[i].name_corner = cand.second;
    claimed[cand.first] = static_cast<int>(i);
    named[i] = true;
  };

  bool progress = true;
  while (progress) {
    progress = false;
    // Boxes with a single live candidate take it.
    for (std::size_t i = 0; i < n; ++i) {
      if (named[i]) continue;
      auto live = unclaimed(i);
      if (live.size() == 1) {
        claim(i, live.front());
        progress = true;
      }
    }
    // Cells wanted by exactly one unnamed box go to that box.
    std::map<std::pair<int, int>, std::vector<std::size_t>> wanted;
    for (std::size_t i = 0; i < n; ++i) {
      if (named[i]) continue;
      for (const auto& cand : unclaimed(i)) wanted[cand.first].push_back(i);
    }
    for (const auto& [cell, takers] : wanted) {
      if (takers.size() != 1 || named[takers.front()]) continue;
      for (const auto& cand : unclaimed(takers.front())) {
        if (cand.first == cell) {
          claim(takers.front(), cand);
          progress = true;
          break;
        }
      }
    }
    if (!progress) {
      // Remaining ambiguity: first unnamed box takes its first live corner.
      for (std::size_t i = 0; i < n; ++i) {
        if (named[i]) continue;
        auto live = unclaimed(i);
        if (!live.empty()) {
          claim(i, live.front());
          progress = true;
          break;
        }
      }
    }
  }

}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (true) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

std::string join_lines(const std::vector<std::string>& lines, std::size_t from) {
  std::string out;
  for (std::size_t i = from; i < lines.size(); ++i) {
    if (i > from) out.push_back('\n');
    out += lines[i];
  }
  return out;
}

bool has_two_consecutive_alnums(const std::string& line) {
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    if (is_alnum(line[i]) && is_alnum(line[i + 1])) return true;
  }
  return false;
}

/// Content between the last pair of ``` fences, with any language tag on the
/// opening fence line dropped.
std::optional<std::string> last_fenced_block(const std::string& response) {
  const std::string fence = "```";
  std::size_t close = response.rfind(fence);
  if (close == std::string::npos || close == 0) return std::nullopt;
  std::size_t open = response.rfind(fence, close - 1);
  if (open == std::string::npos) return std::nullopt;
  std::size_t begin = open + fence.size();
  std::size_t nl = response.find('\n', begin);
  if (nl != std::string::npos && nl < close) begin = nl + 1;
  std::size_t end = close;
  if (end > begin && response[end - 1] == '\n') --end;
  return response.substr(begin, end - begin);
}

/// Rows flushed against the top and left edges: leading blank rows dropped,
/// the common left space margin removed, trailing blank rows dropped.
std::vector<std::string> flush_top_left(const std::string& text) {
  std::vector<std::string> lines = split_lines(text);
  for (auto& line : lines) {
    std::size_t end = line.find_last_not_of(' ');
    line.resize(end == std::string::npos ? 0 : end + 1);
  }
  std::size_t first = 0;
  while (first < lines.size() && lines[first].empty()) ++first;
  std::size_t last = lines.size();
  while (last > first && lines[last - 1].empty()) --last;
  lines = std::vector<std::string>(lines.begin() + static_cast<std::ptrdiff_t>(first),
                                   lines.begin() + static_cast<std::ptrdiff_t>(last));
  std::size_t margin = std::string::npos;
  for (const auto& line : lines) {
    if (line.empty()) continue;
    margin = std::min(margin, line.find_first_not_of(' '));
  }
  if (margin == std::string::npos) margin = 0;
  for (auto& line : lines) {
    if (line.size() >= margin) line.erase(0, margin);
  }
  return lines;
}

std::vector<std::string> trimmed_rows(const CharGrid& grid) {
  std::vector<std::string> rows = trim_ragged(grid).rows();
  while (!rows.empty() && rows.back().empty()) rows.pop_back();
  return rows;
}

/// Storage-coordinate boxes of the expected result of a task.
std::vector<SBox> expected_storage_boxes(TaskKind task, const Diagram& diagram) {
  Diagram expected = diagram;
  int side = diagram.side;
  std::vector<SBox> out;
  if (task == TaskKind::GenRotation) expected = rotate_cw(diagram);
  for (const Box& box : expected.boxes) {
    SBox s;
    if (task == TaskKind::GenScale) {
      s.l = 2 * box.x1;
      s.r = 2 * box.x2 + 1;
      s.t = 2 * side - 1 - (2 * box.y2 + 1);
      s.b = 2 * side - 1 - 2 * box.y1;
    } else {
      s.l = box.x1;
      s.r = box.x2;
      s.t = side - 1 - box.y2;
      s.b = side - 1 - box.y1;
    }
    s.name = box.name;
    s.name_corner = box.name_corner;
    out.push_back(s);
  }
  return out;
}

int count_matches_at_offset(const std::vector<SBox>& refs, const std::vector<SBox>& outs,
                            int dr, int dc) {
  std::vector<bool> used(outs.size(), false);
  int matched = 0;
  for (const SBox& ref : refs) {
    for (std::size_t j = 0; j < outs.size(); ++j) {
      if (used[j]) continue;
      const SBox& got = outs[j];
      if (got.t == ref.t + dr && got.l == ref.l + dc && got.width() == ref.width() &&
          got.height() == ref.height()) {
        used[j] = true;
        ++matched;
        break;
      }
    }
  }
  return matched;
}

bool detect_runaway(const std::vector<std::string>& lines, int reference_height) {
  const int n = static_cast<int>(lines.size());
  if (reference_height > 0 && n > 4 * reference_height) return true;
  for (int h = 1; h * 8 <= n; ++h) {
    for (int i = 0; i + h * 8 <= n; ++i) {
      bool repeats = true;
      for (int k = 1; k < 8 && repeats; ++k) {
        for (int j = 0; j < h && repeats; ++j) {
          if (lines[static_cast<std::size_t>(i + j)] !=
              lines[static_cast<std::size_t>(i + k * h + j)]) {
            repeats = false;
          }
        }
      }
      if (repeats) return true;
    }
  }
  return false;
}

}  // namespace

StructureReport parse_boxes(const CharGrid& grid) {
  BoxScanner scanner(grid);
  std::vector<SBox> sboxes = scanner.scan();
  attribute_names(scanner, sboxes);

  std::map<std::pair<int, int>, char> name_cells;
  for (const SBox& s : sboxes) {
    if (s.name) name_cells[interior_storage_cell(s, s.name_corner)] = *s.name;
  }

  StructureReport report;
  const int height = scanner.height();
  for (const SBox& s : sboxes) {
    Box box;
    box.x1 = s.l;
    box.x2 = s.r;
    box.y1 = height - 1 - s.b;
    box.y2 = height - 1 - s.t;
    box.name = s.name;
    box.name_corner = s.name_corner;
    report.boxes.push_back(box);
  }
  for (int r = 0; r < scanner.height(); ++r) {
    for (int c = 0; c < scanner.width(); ++c) {
      const char ch = scanner.cell(r, c);
      if (ch == ' ') continue;
      if (scanner.consumed(r, c)) continue;
      if (name_cells.count({r, c})) continue;
      report.stray_cells.push_back(StrayCell{r, c, ch});
    }
  }
  report.is_clean = report.stray_cells.empty();
  return report;
}

bool has_vertex_signature(const std::string& text) {
  const std::vector<std::string> lines = split_lines(text);
  auto at = [&](int r, int c) -> char {
    if (r < 0 || r >= static_cast<int>(lines.size()) || c < 0) return ' ';
    const std::string& line = lines[static_cast<std::size_t>(r)];
    if (c >= static_cast<int>(line.size())) return ' ';
    return line[static_cast<std::size_t>(c)];
  };
  for (int r = 0; r < static_cast<int>(lines.size()); ++r) {
    const std::string& line = lines[static_cast<std::size_t>(r)];
    for (int c = 0; c < static_cast<int>(line.size()); ++c) {
      if (line[static_cast<std::size_t>(c)] != '|') continue;
      if (at(r - 1, c - 1) == '-' || at(r - 1, c + 1) == '-' || at(r + 1, c - 1) == '-' ||
          at(r + 1, c + 1) == '-') {
        return true;
      }
    }
  }
  return false;
}

std::optional<std::string> extract_art(const std::string& response) {
  if (auto fenced = last_fenced_block(response)) {
    if (has_vertex_signature(*fenced)) return fenced;
  }
  const std::vector<std::string> lines = split_lines(response);
  std::size_t last_wordy = lines.size();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (has_two_consecutive_alnums(lines[i])) last_wordy = i;
  }
  if (last_wordy + 1 < lines.size()) {
    std::string tail = join_lines(lines, last_wordy + 1);
    if (has_vertex_signature(tail)) return tail;
  }
  return std::nullopt;
}

GenerationMetrics grade_generation(TaskKind task, const GenerationReference& reference,
                                   const std::string& output_art, const NoiseSpec& noise) {
  GenerationMetrics metrics;
  const std::vector<std::string> out_lines = split_lines(output_art);
  const CharGrid out_grid(out_lines);

  // Expected art, for the exact-match check.
  std::vector<std::string> expected_rows;
  switch (task) {
    case TaskKind::GenVerbatim:
      expected_rows = trimmed_rows(CharGrid::from_text(reference.shown_text));
      break;
    case TaskKind::GenNoise:
      expected_rows = trimmed_rows(render(reference.diagram, true));
      break;
    case TaskKind::GenRotation:
      expected_rows = trimmed_rows(render(rotate_cw(reference.diagram), true));
      break;
    case TaskKind::GenScale:
      expected_rows = trimmed_rows(upscale2(render(reference.diagram, true)));
      break;
    case TaskKind::GenTranslation:
      expected_rows = flush_top_left(reference.shown_text);
      break;
    default:
      throw Error(ErrorCode::InvalidArgs, "grade_generation requires a generation task");
  }
  metrics.exact_match = trimmed_rows(out_grid) == expected_rows;

  const std::vector<SBox> refs = expected_storage_boxes(task, reference.diagram);
  StructureReport parsed = parse_boxes(out_grid);
  std::vector<SBox> outs;
  const int out_height = out_grid.height();
  for (const Box& box : parsed.boxes) {
    SBox s;
    s.l = box.x1;
    s.r = box.x2;
    s.t = out_height - 1 - box.y2;
    s.b = out_height - 1 - box.y1;
    s.name = box.name;
    outs.push_back(s);
  }

  int matched = 0;
  if (task == TaskKind::GenTranslation) {
    // One uniform offset must explain every matched box.
    int best = 0;
    std::pair<int, int> best_off{0, 0};
    bool any = false;
    for (const SBox& ref : refs) {
      for (const SBox& got : outs) {
        if (got.width() != ref.width() || got.height() != ref.height()) continue;
        const std::pair<int, int> off{got.t - ref.t, got.l - ref.l};
        const int count = count_matches_at_offset(refs, outs, off.first, off.second);
        if (count > best || (count == best && (!any || off < best_off))) {
          best = count;
          best_off = off;
          any = true;
        }
      }
    }
    matched = best;
  } else {
    matched = count_matches_at_offset(refs, outs, 0, 0);
  }
  metrics.boxes_matched = matched;
  metrics.boxes_missing = static_cast<int>(refs.size()) - matched;
  metrics.boxes_fabricated = static_cast<int>(outs.size()) - matched;

  std::set<char> ref_names;
  for (const SBox& ref : refs) {
    if (ref.name) ref_names.insert(*ref.name);
  }
  std::set<char> shown_alnums;
  for (char c : reference.shown_text) {
    if (is_alnum(c)) shown_alnums.insert(c);
  }
  std::set<char> out_alnums;
  for (char c : output_art) {
    if (is_alnum(c)) out_alnums.insert(c);
  }
  for (char c : ref_names) {
    if (!out_alnums.count(c)) metrics.names_missing.insert(c);
  }
  for (char c : out_alnums) {
    if (!shown_alnums.count(c)) metrics.names_fabricated.insert(c);
  }

  if (task == TaskKind::GenNoise) {
    auto count_noise = [&](const std::string& text) {
      int count = 0;
      for (char c : text) {
        if (noise.charset.find(c) != std::string::npos) ++count;
      }
      return count;
    };
    metrics.noise_remaining = count_noise(output_art);
    metrics.noise_added = std::max(0, metrics.noise_remaining - count_noise(reference.shown_text));
  }

  int top_margin = 0;
  for (const auto& line : out_lines) {
    if (line.find_first_not_of(' ') != std::string::npos) break;
    ++top_margin;
  }
  metrics.top_margin_rows = top_margin;
  std::size_t left_margin = std::string::npos;
  for (const auto& line : out_lines) {
    const std::size_t first = line.find_first_not_of(' ');
    if (first != std::string::npos) left_margin = std::min(left_margin, first);
  }
  metrics.left_margin_cols = left_margin == std::string::npos ? 0 : static_cast<int>(left_margin);

  const int shown_height = static_cast<int>(split_lines(reference.shown_text).size());
  metrics.runaway_repetition = detect_runaway(out_lines, shown_height);
  return metrics;
}

}  // namespace boxart

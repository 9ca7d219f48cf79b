#include "boxart/diagram.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "boxart/error.hpp"

namespace boxart {
namespace {

constexpr char kNamePool[] = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
constexpr int kNamePoolSize = 62;

int storage_row(int side, int y) { return side - 1 - y; }

/// Interior cell adjacent to a corner, e.g. LL -> (x1+1, y1+1).
std::pair<int, int> interior_cell(const Box& box, Corner corner) {
  switch (corner) {
    case Corner::LL: return {box.x1 + 1, box.y1 + 1};
    case Corner::LR: return {box.x2 - 1, box.y1 + 1};
    case Corner::UL: return {box.x1 + 1, box.y2 - 1};
    case Corner::UR: return {box.x2 - 1, box.y2 - 1};
  }
  return {box.x1 + 1, box.y1 + 1};
}

constexpr std::array<Corner, 4> kCorners = {Corner::LL, Corner::LR, Corner::UL, Corner::UR};

template <typename Fn>
void for_each_rendered_cell(const Box& box, Fn&& fn) {
  for (int x = box.x1 + 1; x <= box.x2 - 1; ++x) {
    fn(x, box.y1, '-');
    fn(x, box.y2, '-');
  }
  for (int y = box.y1 + 1; y <= box.y2 - 1; ++y) {
    fn(box.x1, y, '|');
    fn(box.x2, y, '|');
  }
}

/// Occupancy of a partially built canvas: rendered boundary cells plus the
/// reserved interior corners of every placed box.
struct PlacementField {
  int side = 0;
  std::vector<char> cells;
  std::vector<bool> reserved;

  explicit PlacementField(int s)
      : side(s),
        cells(static_cast<std::size_t>(s) * s, ' '),
        reserved(static_cast<std::size_t>(s) * s, false) {}

  std::size_t idx(int x, int y) const {
    return static_cast<std::size_t>(y) * side + x;
  }

  void add(const Box& box) {
    for_each_rendered_cell(box, [&](int x, int y, char c) { cells[idx(x, y)] = c; });
    for (Corner corner : kCorners) {
      auto [cx, cy] = interior_cell(box, corner);
      reserved[idx(cx, cy)] = true;
    }
  }

  bool admissible(const Box& box) const {
    bool ok = true;
    for_each_rendered_cell(box, [&](int x, int y, char) {
      if (cells[idx(x, y)] != ' ' || reserved[idx(x, y)]) ok = false;
    });
    if (!ok) return false;
    for (Corner corner : kCorners) {
      auto [cx, cy] = interior_cell(box, corner);
      if (cells[idx(cx, cy)] != ' ') return false;
    }
    return true;
  }
};

std::set<char> draw_name_pool(int count, RandomStream& rng) {
  std::array<char, kNamePoolSize> chars{};
  std::copy(kNamePool, kNamePool + kNamePoolSize, chars.begin());
  std::set<char> pool;
  for (int i = 0; i < count; ++i) {
    const int j = rng.uniform_int(i, kNamePoolSize - 1);
    std::swap(chars[static_cast<std::size_t>(i)], chars[static_cast<std::size_t>(j)]);
    pool.insert(chars[static_cast<std::size_t>(i)]);
  }
  return pool;
}

}  // namespace

const char* to_string(Corner corner) {
  switch (corner) {
    case Corner::LL: return "LL";
    case Corner::LR: return "LR";
    case Corner::UL: return "UL";
    case Corner::UR: return "UR";
  }
  return "LL";
}

Corner corner_from_string(const std::string& name) {
  if (name == "LL") return Corner::LL;
  if (name == "LR") return Corner::LR;
  if (name == "UL") return Corner::UL;
  if (name == "UR") return Corner::UR;
  throw Error(ErrorCode::InvalidArgs, "unknown corner: " + name);
}

CharBudget CharBudget::from_diagram(const Diagram& diagram) {
  CharBudget budget;
  budget.box_count = static_cast<int>(diagram.boxes.size());
  for (const Box& box : diagram.boxes) {
    budget.dashes += 2 * (box.width() - 2);
    budget.pipes += 2 * (box.height() - 2);
    if (box.name) budget.names.insert(*box.name);
  }
  return budget;
}

CharGrid render(const Diagram& diagram, bool names_shown) {
  std::vector<std::string> rows(static_cast<std::size_t>(diagram.side),
                                std::string(static_cast<std::size_t>(diagram.side), ' '));
  auto put = [&](int x, int y, char c) {
    rows[static_cast<std::size_t>(storage_row(diagram.side, y))][static_cast<std::size_t>(x)] = c;
  };
  for (const Box& box : diagram.boxes) {
    for_each_rendered_cell(box, put);
    if (names_shown && box.name) {
      auto [nx, ny] = interior_cell(box, box.name_corner);
      put(nx, ny, *box.name);
    }
  }
  return CharGrid(std::move(rows));
}

bool propose_and_place(Diagram& diagram, const GenParams& params, RandomStream& rng,
                       const CharBudget* remaining) {
  // Every outstanding box consumes at least 2 dashes and 2 pipes; a state
  // that cannot cover that reserve can never reach the budget exactly.
  if (remaining &&
      (remaining->box_count <= 0 || remaining->dashes < 2 * remaining->box_count ||
       remaining->pipes < 2 * remaining->box_count)) {
    return false;
  }

  PlacementField field(params.side);
  for (const Box& placed : diagram.boxes) field.add(placed);

  for (int attempt = 0; attempt < params.proposal_cap; ++attempt) {
    const int sx = rng.uniform_int(0, params.side - 1);
    int len_x = rng.poisson(params.lambda);
    while (len_x < 3) len_x = rng.poisson(params.lambda);
    const int sy = rng.uniform_int(0, params.side - 1);
    int len_y = rng.poisson(params.lambda);
    while (len_y < 3) len_y = rng.poisson(params.lambda);

    if (remaining) {
      if (remaining->box_count == 1) {
        // A canvas whose final box does not consume the exact remainder is
        // discarded anyway, so the dead draws are skipped here.
        len_x = 2 + remaining->dashes / 2;
        len_y = 2 + remaining->pipes / 2;
      } else {
        // Clip to the largest length whose marginal dash/pipe contribution
        // still fits after reserving the minimum for the boxes yet to come;
        // a clip below 3 rejects the proposal outright.
        const int reserve = 2 * (remaining->box_count - 1);
        const int wmax = 2 + (remaining->dashes - reserve) / 2;
        const int hmax = 2 + (remaining->pipes - reserve) / 2;
        if (wmax < 3 || hmax < 3) continue;
        len_x = std::min(len_x, wmax);
        len_y = std::min(len_y, hmax);
      }
    }

    Box candidate{sx, sy, sx + len_x - 1, sy + len_y - 1, std::nullopt, Corner::LL};
    if (candidate.x2 > params.side - 1 || candidate.y2 > params.side - 1) continue;
    if (!field.admissible(candidate)) continue;

    diagram.boxes.push_back(candidate);
    return true;
  }
  return false;
}

Diagram generate(const GenParams& params, RandomStream& rng,
                 const std::optional<CharBudget>& budget) {
  for (int canvas_try = 0;; ++canvas_try) {
    Diagram diagram{params.side, {}};
    CharBudget remaining;
    if (budget) remaining = *budget;

    while (static_cast<int>(diagram.boxes.size()) < params.max_boxes) {
      if (!propose_and_place(diagram, params, rng, budget ? &remaining : nullptr)) break;
      if (budget) {
        const Box& placed = diagram.boxes.back();
        remaining.dashes -= 2 * (placed.width() - 2);
        remaining.pipes -= 2 * (placed.height() - 2);
        remaining.box_count -= 1;
      }
    }

    if (!budget) {
      if (params.names_shown) {
        const auto pool = draw_name_pool(static_cast<int>(diagram.boxes.size()), rng);
        return assign_names(diagram, pool, rng);
      }
      return diagram;
    }

    const bool matches =
        remaining.dashes == 0 && remaining.pipes == 0 && remaining.box_count == 0;
    if (matches) {
      if (params.names_shown) return assign_names(diagram, budget->names, rng);
      return diagram;
    }
    if (canvas_try + 1 >= params.canvas_retry_cap) {
      throw Error(ErrorCode::BudgetUnsatisfiable,
                  "no canvas matched the budget after " +
                      std::to_string(params.canvas_retry_cap) + " tries");
    }
  }
}

Diagram assign_names(const Diagram& diagram, const std::set<char>& name_pool, RandomStream& rng) {
  if (name_pool.size() != diagram.boxes.size()) {
    throw Error(ErrorCode::InvalidArgs,
                "name pool size " + std::to_string(name_pool.size()) + " != box count " +
                    std::to_string(diagram.boxes.size()));
  }
  for (char c : name_pool) {
    if (!std::isalnum(static_cast<unsigned char>(c))) {
      throw Error(ErrorCode::InvalidArgs, std::string("name is not alphanumeric: ") + c);
    }
  }

  std::vector<char> names(name_pool.begin(), name_pool.end());
  for (int i = static_cast<int>(names.size()) - 1; i > 0; --i) {
    const int j = rng.uniform_int(0, i);
    std::swap(names[static_cast<std::size_t>(i)], names[static_cast<std::size_t>(j)]);
  }

  Diagram named = diagram;
  // Names are placed progressively so a later box never grabs a cell an
  // earlier name already occupies.
  std::vector<std::string> rows = render(diagram, false).rows();
  for (std::size_t i = 0; i < named.boxes.size(); ++i) {
    Box& box = named.boxes[i];
    std::vector<Corner> free;
    for (Corner corner : kCorners) {
      auto [cx, cy] = interior_cell(box, corner);
      if (rows[static_cast<std::size_t>(storage_row(diagram.side, cy))]
              [static_cast<std::size_t>(cx)] == ' ') {
        free.push_back(corner);
      }
    }
    if (free.empty()) throw Error(ErrorCode::NoFreeCorner, "box has no free interior corner");
    box.name = names[i];
    box.name_corner = free[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<int>(free.size()) - 1))];
    auto [nx, ny] = interior_cell(box, box.name_corner);
    rows[static_cast<std::size_t>(storage_row(diagram.side, ny))][static_cast<std::size_t>(nx)] =
        names[i];
  }
  return named;
}

Diagram rotate_cw(const Diagram& diagram) {
  Diagram rotated{diagram.side, {}};
  rotated.boxes.reserve(diagram.boxes.size());
  const int s = diagram.side;
  for (const Box& box : diagram.boxes) {
    Box r;
    r.x1 = box.y1;
    r.y1 = s - 1 - box.x2;
    r.x2 = box.y2;
    r.y2 = s - 1 - box.x1;
    r.name = box.name;
    switch (box.name_corner) {
      case Corner::LL: r.name_corner = Corner::UL; break;
      case Corner::UL: r.name_corner = Corner::UR; break;
      case Corner::UR: r.name_corner = Corner::LR; break;
      case Corner::LR: r.name_corner = Corner::LL; break;
    }
    rotated.boxes.push_back(r);
  }
  return rotated;
}

void validate(const Diagram& diagram) {
  if (diagram.side < 0) throw Error(ErrorCode::InvalidArgs, "negative canvas side");
  PlacementField field(diagram.side);
  std::set<char> seen_names;
  for (std::size_t i = 0; i < diagram.boxes.size(); ++i) {
    const Box& box = diagram.boxes[i];
    const std::string tag = "box " + std::to_string(i);
    if (box.x1 < 0 || box.y1 < 0 || box.x2 > diagram.side - 1 || box.y2 > diagram.side - 1) {
      throw Error(ErrorCode::InvalidArgs, tag + " out of canvas");
    }
    if (box.width() < 3 || box.height() < 3) {
      throw Error(ErrorCode::InvalidArgs, tag + " side shorter than 3");
    }
    if (box.name) {
      if (!std::isalnum(static_cast<unsigned char>(*box.name))) {
        throw Error(ErrorCode::InvalidArgs, tag + " name not alphanumeric");
      }
      if (!seen_names.insert(*box.name).second) {
        throw Error(ErrorCode::InvalidArgs, tag + " duplicates a name");
      }
    }
    if (!field.admissible(box)) {
      throw Error(ErrorCode::InvalidArgs, tag + " collides or violates a reserved corner");
    }
    field.add(box);
  }
}

}  // namespace boxart

#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "boxart/grid.hpp"
#include "boxart/rng.hpp"

namespace boxart {

enum class Corner { LL, LR, UL, UR };

const char* to_string(Corner corner);
Corner corner_from_string(const std::string& name);

/// Axis-aligned box in canvas coordinates: (x1, y1) is the lower-left cell,
/// (x2, y2) the upper-right, both inclusive, x right and y up. Sides are at
/// least 3 cells. The name, when assigned, is one alphanumeric drawn at the
/// interior cell adjacent to name_corner.
struct Box {
  int x1 = 0;
  int y1 = 0;
  int x2 = 0;
  int y2 = 0;
  std::optional<char> name;
  Corner name_corner = Corner::LL;

  int width() const { return x2 - x1 + 1; }
  int height() const { return y2 - y1 + 1; }

  bool same_extent(const Box& other) const {
    return x1 == other.x1 && y1 == other.y1 && x2 == other.x2 && y2 == other.y2;
  }
  bool operator==(const Box& other) const {
    return same_extent(other) && name == other.name &&
           (!name || name_corner == other.name_corner);
  }
};

/// Semantic model of one box illustration on a square canvas.
struct Diagram {
  int side = 0;
  std::vector<Box> boxes;

  bool operator==(const Diagram& other) const {
    return side == other.side && boxes == other.boxes;
  }
};

/// Generation parameters: canvas side s, box cap B, Poisson length parameter.
struct GenParams {
  int side = 24;
  int max_boxes = 14;
  double lambda = 8.0;
  bool names_shown = false;
  int proposal_cap = 1000;
  int canvas_retry_cap = 100000;
};

/// Character budget a peer illustration must match exactly: dash and pipe
/// totals, the name set, and the box count (the count is implied by the name
/// set when names are shown, and must be carried explicitly otherwise).
struct CharBudget {
  int dashes = 0;
  int pipes = 0;
  std::set<char> names;
  int box_count = 0;

  static CharBudget from_diagram(const Diagram& diagram);
};

/// Renders onto a side x side padded grid: '-' along horizontal edges, '|'
/// along vertical edges, corner cells left as spaces, names (when shown) at
/// their interior corner cells.
CharGrid render(const Diagram& diagram, bool names_shown);

/// One proposal/rejection round: draws a candidate box (uniform start per
/// axis, Poisson length redrawn while < 3) and retries up to
/// params.proposal_cap times. A candidate is rejected when it overflows the
/// canvas, any of its rendered cells would land on a non-space cell or on an
/// existing box's reserved interior corner, or an existing non-space cell sits
/// on any of its own four interior corners. On success the box is appended
/// (name unassigned) and true returned; false means no placement was found.
/// `remaining`, when given, holds the unconsumed budget (box_count counts the
/// boxes still to place, this one included): proposal lengths are clipped so
/// the box's dash/pipe contribution fits what is left after reserving the
/// minimum 2 dashes and 2 pipes per later box, and a clip below length 3
/// rejects the proposal.
bool propose_and_place(Diagram& diagram, const GenParams& params, RandomStream& rng,
                       const CharBudget* remaining = nullptr);

/// Adds boxes until a placement round fails or max_boxes is reached, then
/// assigns names when params.names_shown. With a budget, finished canvases
/// whose dash/pipe totals or box count differ from the budget are discarded
/// and regenerated; throws BudgetUnsatisfiable after params.canvas_retry_cap
/// rejected canvases.
Diagram generate(const GenParams& params, RandomStream& rng,
                 const std::optional<CharBudget>& budget = std::nullopt);

/// Assigns the pool to the boxes bijectively in a uniformly random
/// permutation; each name corner is drawn uniformly from the corners whose
/// interior cell is still a space. Pool size must equal the box count.
Diagram assign_names(const Diagram& diagram, const std::set<char>& name_pool, RandomStream& rng);

/// Quarter-turn clockwise of the whole model; name corners turn with it.
Diagram rotate_cw(const Diagram& diagram);

/// Throws InvalidArgs describing the first violated invariant: boxes
/// in-canvas with sides >= 3, unique names, no rendered-cell collisions, and
/// no rendered cell on any box's reserved interior corner.
void validate(const Diagram& diagram);

}  // namespace boxart

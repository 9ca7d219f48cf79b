#pragma once

#include <array>
#include <string>
#include <string_view>

#include "boxart/trials.hpp"

namespace boxart {

/// Edit-distance scoring of one recognition trial. weighted is 1/k when the
/// correct choice ties k ways for the minimum distance, otherwise 0.
struct BaselineScore {
  int unweighted = 0;
  double weighted = 0.0;
  std::array<long, 3> distances{};
};

/// Levenshtein distance with unit insert/delete/substitute costs, computed
/// over the full serialized text including newlines.
long levenshtein(std::string_view a, std::string_view b);

/// Distances from the reference text to each choice text as shown in the
/// prompt; unweighted credit iff the correct choice attains the minimum.
BaselineScore score_trial(const RecognitionTrial& trial);

BaselineScore score_choice_texts(const std::string& reference,
                                 const std::array<std::string, 3>& choice_texts,
                                 int correct_index);

}  // namespace boxart

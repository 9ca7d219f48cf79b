#include "boxart/baseline.hpp"

#include <algorithm>
#include <vector>

namespace boxart {

long levenshtein(std::string_view a, std::string_view b) {
  if (a.size() > b.size()) std::swap(a, b);
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  if (n == 0) return static_cast<long>(m);

  std::vector<long> prev(n + 1);
  std::vector<long> curr(n + 1);
  for (std::size_t i = 0; i <= n; ++i) prev[i] = static_cast<long>(i);
  for (std::size_t j = 1; j <= m; ++j) {
    curr[0] = static_cast<long>(j);
    const char bj = b[j - 1];
    for (std::size_t i = 1; i <= n; ++i) {
      const long sub = prev[i - 1] + (a[i - 1] == bj ? 0 : 1);
      curr[i] = std::min({prev[i] + 1, curr[i - 1] + 1, sub});
    }
    std::swap(prev, curr);
  }
  return prev[n];
}

BaselineScore score_choice_texts(const std::string& reference,
                                 const std::array<std::string, 3>& choice_texts,
                                 int correct_index) {
  BaselineScore score;
  for (int i = 0; i < 3; ++i) {
    score.distances[static_cast<std::size_t>(i)] =
        levenshtein(reference, choice_texts[static_cast<std::size_t>(i)]);
  }
  const long min_dist = *std::min_element(score.distances.begin(), score.distances.end());
  const long ties = std::count(score.distances.begin(), score.distances.end(), min_dist);
  if (score.distances[static_cast<std::size_t>(correct_index)] == min_dist) {
    score.unweighted = 1;
    score.weighted = 1.0 / static_cast<double>(ties);
  }
  return score;
}

BaselineScore score_trial(const RecognitionTrial& trial) {
  std::array<std::string, 3> texts;
  int correct_index = 0;
  for (int i = 0; i < 3; ++i) {
    texts[static_cast<std::size_t>(i)] = trial.choices[static_cast<std::size_t>(i)].text;
    if (trial.choices[static_cast<std::size_t>(i)].label == trial.correct_label) {
      correct_index = i;
    }
  }
  return score_choice_texts(trial.reference_text, texts, correct_index);
}

}  // namespace boxart

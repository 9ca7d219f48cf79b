#pragma once

#include <array>
#include <string>
#include <vector>

#include "boxart/trials.hpp"

// Prompt text assembly. Every literal here is part of the wire contract with
// the model and is pinned by golden-file tests; do not reflow or "fix"
// wording or spacing.
namespace boxart::prompts {

std::string recognition_prompt(bool names_shown, const std::string& reference_text,
                               const std::string& question,
                               const std::array<std::string, 3>& choice_texts);

const char* recognition_question(TaskKind kind, bool reference_enlarged);

std::string generation_prompt(TaskKind kind, const std::string& reference_text);

struct ExemplarView {
  std::string full_art;
  std::string object_name;
  std::string part_art;
  std::vector<std::string> choices;
  char expected_answer = 'A';
};

std::string part_recognition_prompt(const std::string& full_art, const std::string& object_name,
                                    const std::string& part_art,
                                    const std::array<std::string, 3>& choice_names,
                                    const std::vector<ExemplarView>& exemplars);

}  // namespace boxart::prompts

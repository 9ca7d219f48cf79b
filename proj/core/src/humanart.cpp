#include "boxart/humanart.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "answer_scan.hpp"
#include "boxart/error.hpp"
#include "boxart/grid.hpp"
#include "prompts.hpp"

namespace boxart {
namespace {

using nlohmann::json;

const std::vector<ClassVocabulary>& vocabularies() {
  static const std::vector<ClassVocabulary> kVocabs = {
      {"bird", {"head", "leg(s)", "wing(s)"}, false},
      {"cat", {"back leg(s)", "front leg(s)", "head", "tail"}, false},
      {"dog", {"back leg(s)", "front leg(s)", "head", "tail"}, false},
      {"car", {"body", "wheel(s)", "other"}, true},
      {"airplane", {"tail", "wing(s)", "other"}, true},
  };
  return kVocabs;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  json parsed;
  try {
    in >> parsed;
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::Io, path + ": " + ex.what());
  }
  return parsed;
}

/// Pads every line of every text in the record to the record-wide maximum
/// width, and part masks to the full art's line count.
void pad_record(ArtRecord& record) {
  auto lines_of = [](const std::string& text) {
    return CharGrid::from_text(text).rows();
  };
  std::vector<std::string> full = lines_of(record.full_art);
  std::size_t width = 0;
  for (const auto& line : full) width = std::max(width, line.size());
  for (const auto& [label, art] : record.parts) {
    for (const auto& line : lines_of(art)) width = std::max(width, line.size());
  }

  auto pad = [&](std::vector<std::string> lines, std::size_t line_count) {
    lines.resize(std::max(lines.size(), line_count));
    for (auto& line : lines) line.resize(width, ' ');
    return CharGrid(std::move(lines)).to_text();
  };
  const std::size_t line_count = full.size();
  record.full_art = pad(std::move(full), line_count);
  for (auto& [label, art] : record.parts) {
    art = pad(lines_of(art), line_count);
  }
}

void validate_record(const ArtRecord& record) {
  const ClassVocabulary& vocab = vocabulary_for(record.object_class);
  const auto full = CharGrid::from_text(record.full_art);
  for (const auto& [label, art] : record.parts) {
    const bool known =
        std::find(vocab.parts.begin(), vocab.parts.end(), label) != vocab.parts.end();
    if (!known || label == "other") {
      throw Error(ErrorCode::UnknownPart,
                  record.id + ": part \"" + label + "\" not in the " + record.object_class +
                      " vocabulary");
    }
    const auto part = CharGrid::from_text(art);
    for (int r = 0; r < part.height(); ++r) {
      for (int c = 0; c < static_cast<int>(part.rows()[static_cast<std::size_t>(r)].size());
           ++c) {
        const char pc = part.at(r, c);
        if (pc == ' ') continue;
        if (pc != full.at(r, c)) {
          throw Error(ErrorCode::MaskMismatch,
                      record.id + "/" + label + " at (" + std::to_string(r) + "," +
                          std::to_string(c) + "): '" + pc + "' vs '" + full.at(r, c) + "'");
        }
      }
    }
  }
}

}  // namespace

const ClassVocabulary& vocabulary_for(const std::string& object_class) {
  for (const auto& vocab : vocabularies()) {
    if (vocab.object_class == object_class) return vocab;
  }
  throw Error(ErrorCode::InvalidArgs, "unknown object class: " + object_class);
}

std::string object_display_name(const std::string& object_class) {
  vocabulary_for(object_class);  // validates
  return (object_class == "airplane" ? "an " : "a ") + object_class;
}

ExemplarSet ExemplarSet::from_json_file(const std::string& path) {
  const json parsed = load_json_file(path);
  if (!parsed.contains("exemplars") || !parsed["exemplars"].is_array() ||
      parsed["exemplars"].size() != 6) {
    throw Error(ErrorCode::InvalidArgs, path + ": expected exactly six exemplars");
  }
  ExemplarSet set;
  for (std::size_t i = 0; i < 6; ++i) {
    const json& entry = parsed["exemplars"][i];
    Exemplar& ex = set.exemplars[i];
    ex.full_art = entry.at("full").get<std::string>();
    ex.object_name = entry.at("object").get<std::string>();
    ex.part_art = entry.at("part").get<std::string>();
    ex.choices = entry.at("choices").get<std::vector<std::string>>();
    const std::string answer = entry.at("answer").get<std::string>();
    if (answer.size() != 1 || answer[0] < 'A' ||
        answer[0] >= static_cast<char>('A' + ex.choices.size())) {
      throw Error(ErrorCode::InvalidArgs, path + ": exemplar answer out of range");
    }
    ex.expected_answer = answer[0];
  }
  return set;
}

std::vector<ArtRecord> load_corpus(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw Error(ErrorCode::Io, dir + " is not a directory");
  std::vector<std::string> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      paths.push_back(entry.path().string());
    }
  }
  std::sort(paths.begin(), paths.end());

  std::vector<ArtRecord> records;
  for (const auto& path : paths) {
    const json parsed = load_json_file(path);
    ArtRecord record;
    record.id = parsed.at("id").get<std::string>();
    record.object_class = parsed.at("class").get<std::string>();
    record.full_art = parsed.at("full").get<std::string>();
    if (parsed.contains("parts")) {
      for (const auto& [label, art] : parsed.at("parts").items()) {
        record.parts[label] = art.get<std::string>();
      }
    }
    pad_record(record);
    validate_record(record);
    records.push_back(std::move(record));
  }
  return records;
}

PartTrial build_part_trial(const ArtRecord& record, const std::string& part,
                           const ClassVocabulary& vocab, const ExemplarSet& exemplars,
                           RandomStream& rng) {
  if (!record.parts.count(part)) {
    throw Error(ErrorCode::InvalidArgs, record.id + " has no part \"" + part + "\"");
  }
  if (vocab.parts.size() < 3) {
    throw Error(ErrorCode::VocabularyTooSmall,
                vocab.object_class + " offers only " + std::to_string(vocab.parts.size()));
  }
  for (const Exemplar& ex : exemplars.exemplars) {
    if (ex.full_art == record.full_art) {
      throw Error(ErrorCode::InvalidArgs,
                  record.id + ": queried art equals an exemplar's art");
    }
  }

  // Two distinct distractors, uniform without replacement.
  std::vector<std::string> others;
  for (const auto& label : vocab.parts) {
    if (label != part) others.push_back(label);
  }
  for (int i = 0; i < 2; ++i) {
    const int j = rng.uniform_int(i, static_cast<int>(others.size()) - 1);
    std::swap(others[static_cast<std::size_t>(i)], others[static_cast<std::size_t>(j)]);
  }

  std::array<std::string, 3> names = {part, others[0], others[1]};
  for (int i = 2; i > 0; --i) {
    const int j = rng.uniform_int(0, i);
    std::swap(names[static_cast<std::size_t>(i)], names[static_cast<std::size_t>(j)]);
  }

  PartTrial trial;
  trial.record_id = record.id;
  trial.object_class = record.object_class;
  trial.part_label = part;
  trial.full_art = record.full_art;
  trial.part_art = record.parts.at(part);
  for (int i = 0; i < 3; ++i) {
    trial.choices[static_cast<std::size_t>(i)] =
        TrialChoice{static_cast<char>('A' + i), names[static_cast<std::size_t>(i)]};
    if (names[static_cast<std::size_t>(i)] == part) {
      trial.correct_label = static_cast<char>('A' + i);
    }
  }

  std::vector<prompts::ExemplarView> views;
  for (const Exemplar& ex : exemplars.exemplars) {
    views.push_back(
        {ex.full_art, ex.object_name, ex.part_art, ex.choices, ex.expected_answer});
  }
  trial.prompt_text = prompts::part_recognition_prompt(
      trial.full_art, object_display_name(record.object_class), trial.part_art, names, views);
  return trial;
}

ChoiceAnswer extract_part_answer(const std::string& response) {
  if (auto marker = detail::last_marker_pos(response, '6')) {
    if (auto label = detail::find_choice_after(response, *marker, false)) {
      return ChoiceAnswer{label};
    }
  }
  if (auto label = detail::find_choice_after(response, 0, true)) return ChoiceAnswer{label};
  return ChoiceAnswer{std::nullopt};
}

}  // namespace boxart

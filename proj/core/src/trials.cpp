#include "boxart/trials.hpp"

#include <algorithm>
#include <cctype>

#include "answer_scan.hpp"
#include "boxart/error.hpp"
#include "boxart/structure.hpp"
#include "prompts.hpp"

namespace boxart {
namespace {

struct KindName {
  TaskKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {TaskKind::RecogVerbatim, "recog-verbatim"},
    {TaskKind::RecogTranslation, "recog-translation"},
    {TaskKind::RecogRotation, "recog-rotation"},
    {TaskKind::RecogNoise, "recog-noise"},
    {TaskKind::RecogScale, "recog-scale"},
    {TaskKind::GenVerbatim, "gen-verbatim"},
    {TaskKind::GenTranslation, "gen-translation"},
    {TaskKind::GenNoise, "gen-noise"},
    {TaskKind::GenScale, "gen-scale"},
    {TaskKind::GenRotation, "gen-rotation"},
};

GenParams params_for_size_factor(double factor) {
  if (factor == 1.0) return GenParams{24, 14, 8.0, false, 1000, 100000};
  if (factor == 0.6) return GenParams{15, 9, 5.0, false, 1000, 100000};
  if (factor == 0.3) return GenParams{8, 5, 3.0, false, 1000, 100000};
  throw Error(ErrorCode::InvalidArgs, "size factor must be 1.0, 0.6 or 0.3");
}

std::string embed_render(const Diagram& diagram, bool names, int dx, int dy) {
  const int outer = 2 * diagram.side;
  return embed(render(diagram, names), outer, outer, dx, dy).to_text();
}

/// Slots the correct text into a uniformly random position among A/B/C and
/// fills the rest with the distractors in order.
void place_choices(RecognitionTrial& trial, const std::string& correct_text,
                   const Diagram& correct_diagram, const std::array<std::string, 2>& distractors,
                   const std::array<Diagram, 2>& distractor_diagrams, RandomStream& rng) {
  const int correct_pos = rng.uniform_int(0, 2);
  int next_distractor = 0;
  for (int i = 0; i < 3; ++i) {
    auto& slot = trial.choices[static_cast<std::size_t>(i)];
    slot.label = static_cast<char>('A' + i);
    if (i == correct_pos) {
      slot.text = correct_text;
      trial.choice_diagrams[static_cast<std::size_t>(i)] = correct_diagram;
    } else {
      slot.text = distractors[static_cast<std::size_t>(next_distractor)];
      trial.choice_diagrams[static_cast<std::size_t>(i)] =
          distractor_diagrams[static_cast<std::size_t>(next_distractor)];
      ++next_distractor;
    }
  }
  trial.correct_label = static_cast<char>('A' + correct_pos);
}

}  // namespace

namespace detail {

std::optional<std::size_t> last_marker_pos(const std::string& response, char digit) {
  const std::string paren = std::string("(") + digit + ")";
  const std::string bare = std::string(1, digit) + ")";
  const std::string dotted = std::string(1, digit) + ".";
  std::optional<std::size_t> marker_pos;
  std::size_t line_start = 0;
  while (line_start <= response.size()) {
    std::size_t line_end = response.find('\n', line_start);
    if (line_end == std::string::npos) line_end = response.size();
    std::size_t content = line_start;
    while (content < line_end && (response[content] == ' ' || response[content] == '\t')) {
      ++content;
    }
    const std::string_view line(response.data() + content, line_end - content);
    if (line.rfind(paren, 0) == 0 || line.rfind(bare, 0) == 0 || line.rfind(dotted, 0) == 0) {
      marker_pos = content;
    }
    if (line_end == response.size()) break;
    line_start = line_end + 1;
  }
  return marker_pos;
}

std::optional<char> find_choice_after(const std::string& text, std::size_t from,
                                      bool last_occurrence) {
  std::optional<char> found;
  const std::string needle = "choice";
  for (std::size_t pos = from; pos + needle.size() < text.size() + 1; ++pos) {
    bool match = true;
    for (std::size_t i = 0; i < needle.size() && match; ++i) {
      match = std::tolower(static_cast<unsigned char>(text[pos + i])) == needle[i];
    }
    if (!match) continue;
    std::size_t after = pos + needle.size();
    std::size_t skipped = 0;
    while (after < text.size() && (text[after] == ' ' || text[after] == '\t')) {
      ++after;
      ++skipped;
    }
    if (skipped == 0 || after >= text.size()) continue;
    const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(text[after])));
    if (letter != 'A' && letter != 'B' && letter != 'C') continue;
    if (after + 1 < text.size() &&
        std::isalnum(static_cast<unsigned char>(text[after + 1])) != 0) {
      continue;
    }
    if (!last_occurrence) return letter;
    found = letter;
  }
  return found;
}

}  // namespace detail

const char* to_string(TaskKind kind) {
  for (const auto& entry : kKindNames) {
    if (entry.kind == kind) return entry.name;
  }
  return "recog-verbatim";
}

TaskKind task_kind_from_string(const std::string& name) {
  for (const auto& entry : kKindNames) {
    if (name == entry.name) return entry.kind;
  }
  throw Error(ErrorCode::InvalidArgs, "unknown task kind: " + name);
}

bool is_generation_kind(TaskKind kind) {
  switch (kind) {
    case TaskKind::GenVerbatim:
    case TaskKind::GenTranslation:
    case TaskKind::GenNoise:
    case TaskKind::GenScale:
    case TaskKind::GenRotation:
      return true;
    default:
      return false;
  }
}

TrialSettings make_settings(TaskKind kind, bool names_shown, double size_factor,
                            double noise_level, bool padding_kept, EnlargedSide enlarged) {
  TrialSettings settings;
  settings.kind = kind;
  settings.gen_params = GenParams{24, 14, 8.0, names_shown, 1000, 100000};
  switch (kind) {
    case TaskKind::RecogVerbatim:
    case TaskKind::RecogTranslation:
    case TaskKind::GenVerbatim:
    case TaskKind::GenTranslation:
      break;
    case TaskKind::RecogRotation:
    case TaskKind::GenRotation:
      settings.gen_params = params_for_size_factor(size_factor);
      settings.gen_params.names_shown = names_shown;
      break;
    case TaskKind::RecogNoise:
      settings.noise = NoiseSpec{noise_level, NoiseSpec{}.charset};
      settings.padding_kept = padding_kept;
      if (!padding_kept) settings.gen_params.max_boxes = 6;
      break;
    case TaskKind::GenNoise:
      settings.noise = NoiseSpec{noise_level, NoiseSpec{}.charset};
      break;
    case TaskKind::RecogScale:
      settings.gen_params = GenParams{12, 7, 4.0, names_shown, 1000, 100000};
      settings.enlarged_side = enlarged;
      break;
    case TaskKind::GenScale:
      settings.gen_params = GenParams{12, 7, 4.0, names_shown, 1000, 100000};
      break;
  }
  if (is_generation_kind(kind)) settings.gen_params.names_shown = true;
  return settings;
}

void validate_settings(const TrialSettings& settings) {
  const GenParams& p = settings.gen_params;
  if (p.side < 3 || p.max_boxes < 1 || p.lambda <= 0.0) {
    throw Error(ErrorCode::InvalidArgs, "gen params: need side >= 3, max_boxes >= 1, lambda > 0");
  }
  const bool noise_kind =
      settings.kind == TaskKind::RecogNoise || settings.kind == TaskKind::GenNoise;
  if (settings.noise.has_value() != noise_kind) {
    throw Error(ErrorCode::InvalidArgs, "noise spec present iff the kind is a noise task");
  }
  if (settings.enlarged_side.has_value() != (settings.kind == TaskKind::RecogScale)) {
    throw Error(ErrorCode::InvalidArgs, "enlarged_side present iff kind is recog-scale");
  }
  if (settings.kind == TaskKind::RecogNoise && !settings.padding_kept && p.max_boxes > 6) {
    throw Error(ErrorCode::InvalidArgs, "ragged noise trials cap max_boxes at 6");
  }
  if (is_generation_kind(settings.kind) && !p.names_shown) {
    throw Error(ErrorCode::InvalidArgs, "generation trials always show names");
  }
}

const TrialChoice& RecognitionTrial::choice(char label) const {
  for (const auto& c : choices) {
    if (c.label == label) return c;
  }
  throw Error(ErrorCode::InvalidArgs, std::string("no such choice label: ") + label);
}

RecognitionTrial build_recognition_trial(const TrialSettings& settings, RandomStream& rng) {
  validate_settings(settings);
  if (is_generation_kind(settings.kind)) {
    throw Error(ErrorCode::InvalidArgs, "build_recognition_trial needs a recognition kind");
  }

  RecognitionTrial trial;
  trial.settings = settings;
  const GenParams& params = settings.gen_params;

  const Diagram d1 = generate(params, rng);
  trial.reference_diagram = d1;

  // Distractors match the histogram of the image family they appear beside:
  // for rotation that is the rotated correct choice (dash/pipe swap).
  const CharBudget budget = settings.kind == TaskKind::RecogRotation
                                ? CharBudget::from_diagram(rotate_cw(d1))
                                : CharBudget::from_diagram(d1);
  const Diagram d2 = generate(params, rng, budget);
  const Diagram d3 = generate(params, rng, budget);

  const bool names = params.names_shown;
  std::string correct_text;
  Diagram correct_diagram;
  std::array<std::string, 2> distractor_texts;
  std::array<Diagram, 2> distractor_diagrams{d2, d3};

  switch (settings.kind) {
    case TaskKind::RecogVerbatim: {
      trial.reference_text = render(d1, names).to_text();
      correct_text = trial.reference_text;
      correct_diagram = d1;
      distractor_texts = {render(d2, names).to_text(), render(d3, names).to_text()};
      break;
    }
    case TaskKind::RecogTranslation: {
      const int max_off = params.side;
      const int rx = rng.uniform_int(0, max_off);
      const int ry = rng.uniform_int(0, max_off);
      int cx = rx, cy = ry;
      while (cx == rx && cy == ry) {
        cx = rng.uniform_int(0, max_off);
        cy = rng.uniform_int(0, max_off);
      }
      trial.reference_text = embed_render(d1, names, rx, ry);
      correct_text = embed_render(d1, names, cx, cy);
      correct_diagram = d1;
      for (int i = 0; i < 2; ++i) {
        const Diagram& d = i == 0 ? d2 : d3;
        const int dx = rng.uniform_int(0, max_off);
        const int dy = rng.uniform_int(0, max_off);
        distractor_texts[static_cast<std::size_t>(i)] = embed_render(d, names, dx, dy);
      }
      break;
    }
    case TaskKind::RecogRotation: {
      trial.reference_text = render(d1, names).to_text();
      correct_diagram = rotate_cw(d1);
      correct_text = render(correct_diagram, names).to_text();
      distractor_texts = {render(d2, names).to_text(), render(d3, names).to_text()};
      break;
    }
    case TaskKind::RecogNoise: {
      const NoiseSpec& spec = *settings.noise;
      trial.reference_text = inject_noise(render(d1, names), spec, rng).to_text();
      correct_text = inject_noise(render(d1, names), spec, rng).to_text();
      correct_diagram = d1;
      distractor_texts = {inject_noise(render(d2, names), spec, rng).to_text(),
                          inject_noise(render(d3, names), spec, rng).to_text()};
      if (!settings.padding_kept) {
        trial.reference_text = trim_ragged(CharGrid::from_text(trial.reference_text)).to_text();
        correct_text = trim_ragged(CharGrid::from_text(correct_text)).to_text();
        for (auto& text : distractor_texts) {
          text = trim_ragged(CharGrid::from_text(text)).to_text();
        }
      }
      break;
    }
    case TaskKind::RecogScale: {
      const bool reference_enlarged = *settings.enlarged_side == EnlargedSide::Reference;
      correct_diagram = d1;
      if (reference_enlarged) {
        trial.reference_text = upscale2(render(d1, names)).to_text();
        correct_text = render(d1, names).to_text();
        distractor_texts = {render(d2, names).to_text(), render(d3, names).to_text()};
      } else {
        trial.reference_text = render(d1, names).to_text();
        correct_text = upscale2(render(d1, names)).to_text();
        distractor_texts = {upscale2(render(d2, names)).to_text(),
                            upscale2(render(d3, names)).to_text()};
      }
      break;
    }
    default:
      break;
  }

  place_choices(trial, correct_text, correct_diagram, distractor_texts, distractor_diagrams, rng);
  trial.question_text = prompts::recognition_question(
      settings.kind, settings.enlarged_side == EnlargedSide::Reference);
  trial.prompt_text = render_recognition_prompt(trial);
  return trial;
}

std::string render_recognition_prompt(const RecognitionTrial& trial) {
  return prompts::recognition_prompt(
      trial.settings.names_shown(), trial.reference_text, trial.question_text,
      {trial.choices[0].text, trial.choices[1].text, trial.choices[2].text});
}

GenerationTrial build_generation_trial(const TrialSettings& settings, RandomStream& rng) {
  validate_settings(settings);
  if (!is_generation_kind(settings.kind)) {
    throw Error(ErrorCode::InvalidArgs, "build_generation_trial needs a generation kind");
  }

  GenerationTrial trial;
  trial.settings = settings;
  const GenParams& params = settings.gen_params;
  trial.reference_diagram = generate(params, rng);

  switch (settings.kind) {
    case TaskKind::GenTranslation: {
      const int dx = rng.uniform_int(0, params.side);
      const int dy = rng.uniform_int(0, params.side);
      trial.reference_text = embed_render(trial.reference_diagram, true, dx, dy);
      break;
    }
    case TaskKind::GenNoise: {
      trial.reference_text =
          inject_noise(render(trial.reference_diagram, true), *settings.noise, rng).to_text();
      break;
    }
    default:
      trial.reference_text = render(trial.reference_diagram, true).to_text();
      break;
  }
  trial.prompt_text = prompts::generation_prompt(settings.kind, trial.reference_text);
  return trial;
}

ChoiceAnswer extract_choice_answer(const std::string& response) {
  if (auto marker = detail::last_marker_pos(response, '4')) {
    if (auto label = detail::find_choice_after(response, *marker, false)) {
      return ChoiceAnswer{label};
    }
  }
  if (auto label = detail::find_choice_after(response, 0, true)) return ChoiceAnswer{label};
  return ChoiceAnswer{std::nullopt};
}

bool needs_reissue(const std::string& response) {
  const long lines = 1 + std::count(response.begin(), response.end(), '\n');
  if (lines < 3) return true;
  return !has_vertex_signature(response);
}

}  // namespace boxart

#include "boxart/records.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "boxart/error.hpp"

namespace boxart {
namespace {

using nlohmann::json;

json diagram_to_value(const Diagram& diagram) {
  json boxes = json::array();
  for (const Box& box : diagram.boxes) {
    json b{{"x1", box.x1}, {"y1", box.y1}, {"x2", box.x2}, {"y2", box.y2}};
    if (box.name) {
      b["name"] = std::string(1, *box.name);
      b["corner"] = to_string(box.name_corner);
    }
    boxes.push_back(std::move(b));
  }
  return json{{"side", diagram.side}, {"boxes", std::move(boxes)}};
}

Diagram diagram_from_value(const json& value) {
  Diagram diagram;
  diagram.side = value.at("side").get<int>();
  for (const json& b : value.at("boxes")) {
    Box box;
    box.x1 = b.at("x1").get<int>();
    box.y1 = b.at("y1").get<int>();
    box.x2 = b.at("x2").get<int>();
    box.y2 = b.at("y2").get<int>();
    if (b.contains("name")) {
      const std::string name = b.at("name").get<std::string>();
      if (name.size() != 1) throw Error(ErrorCode::InvalidArgs, "box name must be one character");
      box.name = name[0];
      box.name_corner = corner_from_string(b.at("corner").get<std::string>());
    }
    diagram.boxes.push_back(box);
  }
  return diagram;
}

json settings_to_value(const TrialSettings& settings) {
  json value{{"kind", to_string(settings.kind)},
             {"side", settings.gen_params.side},
             {"max_boxes", settings.gen_params.max_boxes},
             {"lambda", settings.gen_params.lambda},
             {"names_shown", settings.gen_params.names_shown},
             {"proposal_cap", settings.gen_params.proposal_cap},
             {"canvas_retry_cap", settings.gen_params.canvas_retry_cap},
             {"padding_kept", settings.padding_kept},
             {"seed", settings.seed}};
  if (settings.noise) {
    value["noise_level"] = settings.noise->level;
    value["noise_charset"] = settings.noise->charset;
  }
  if (settings.enlarged_side) {
    value["enlarged"] = *settings.enlarged_side == EnlargedSide::Reference ? "ref" : "choices";
  }
  return value;
}

TrialSettings settings_from_value(const json& value) {
  TrialSettings settings;
  settings.kind = task_kind_from_string(value.at("kind").get<std::string>());
  settings.gen_params.side = value.at("side").get<int>();
  settings.gen_params.max_boxes = value.at("max_boxes").get<int>();
  settings.gen_params.lambda = value.at("lambda").get<double>();
  settings.gen_params.names_shown = value.at("names_shown").get<bool>();
  settings.gen_params.proposal_cap = value.at("proposal_cap").get<int>();
  settings.gen_params.canvas_retry_cap = value.at("canvas_retry_cap").get<int>();
  settings.padding_kept = value.at("padding_kept").get<bool>();
  settings.seed = value.at("seed").get<std::uint64_t>();
  if (value.contains("noise_level")) {
    settings.noise = NoiseSpec{value.at("noise_level").get<double>(),
                               value.at("noise_charset").get<std::string>()};
  }
  if (value.contains("enlarged")) {
    settings.enlarged_side = value.at("enlarged").get<std::string>() == "ref"
                                 ? EnlargedSide::Reference
                                 : EnlargedSide::Choices;
  }
  return settings;
}

std::string set_to_string(const std::set<char>& chars) {
  return std::string(chars.begin(), chars.end());
}

json metrics_to_value(const GenerationMetrics& m) {
  return json{{"exact_match", m.exact_match},
              {"boxes_matched", m.boxes_matched},
              {"boxes_missing", m.boxes_missing},
              {"boxes_fabricated", m.boxes_fabricated},
              {"names_missing", set_to_string(m.names_missing)},
              {"names_fabricated", set_to_string(m.names_fabricated)},
              {"noise_remaining", m.noise_remaining},
              {"noise_added", m.noise_added},
              {"top_margin_rows", m.top_margin_rows},
              {"left_margin_cols", m.left_margin_cols},
              {"runaway_repetition", m.runaway_repetition}};
}

GenerationMetrics metrics_from_value(const json& value) {
  GenerationMetrics m;
  m.exact_match = value.at("exact_match").get<bool>();
  m.boxes_matched = value.at("boxes_matched").get<int>();
  m.boxes_missing = value.at("boxes_missing").get<int>();
  m.boxes_fabricated = value.at("boxes_fabricated").get<int>();
  for (char c : value.at("names_missing").get<std::string>()) m.names_missing.insert(c);
  for (char c : value.at("names_fabricated").get<std::string>()) m.names_fabricated.insert(c);
  m.noise_remaining = value.at("noise_remaining").get<int>();
  m.noise_added = value.at("noise_added").get<int>();
  m.top_margin_rows = value.at("top_margin_rows").get<int>();
  m.left_margin_cols = value.at("left_margin_cols").get<int>();
  m.runaway_repetition = value.at("runaway_repetition").get<bool>();
  return m;
}

json parse_line(const std::string& line) {
  try {
    return json::parse(line);
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::Io, std::string("bad JSONL line: ") + ex.what());
  }
}

template <typename Record>
std::vector<Record> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::vector<Record> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(Record::from_json_line(line));
  }
  return records;
}

}  // namespace

std::string diagram_to_json(const Diagram& diagram) { return diagram_to_value(diagram).dump(); }

Diagram diagram_from_json(const std::string& text) {
  return diagram_from_value(parse_line(text));
}

TrialRecord TrialRecord::from_recognition(const RecognitionTrial& trial, std::string trial_id) {
  TrialRecord record;
  record.trial_id = std::move(trial_id);
  record.kind = to_string(trial.settings.kind);
  record.seed = trial.settings.seed;
  record.reference = trial.reference_text;
  record.choices.assign(trial.choices.begin(), trial.choices.end());
  record.correct_label = trial.correct_label;
  record.prompt = trial.prompt_text;
  record.settings = trial.settings;
  GroundTruth truth;
  truth.reference = trial.reference_diagram;
  truth.choices.assign(trial.choice_diagrams.begin(), trial.choice_diagrams.end());
  record.ground_truth = std::move(truth);
  return record;
}

TrialRecord TrialRecord::from_generation(const GenerationTrial& trial, std::string trial_id) {
  TrialRecord record;
  record.trial_id = std::move(trial_id);
  record.kind = to_string(trial.settings.kind);
  record.seed = trial.settings.seed;
  record.reference = trial.reference_text;
  record.prompt = trial.prompt_text;
  record.settings = trial.settings;
  record.ground_truth = GroundTruth{trial.reference_diagram, {}};
  record.max_reissues = trial.max_reissues;
  return record;
}

TrialRecord TrialRecord::from_part(const PartTrial& trial, std::string trial_id,
                                   std::uint64_t seed) {
  TrialRecord record;
  record.trial_id = std::move(trial_id);
  record.kind = "part-recognition";
  record.seed = seed;
  record.reference = trial.full_art;
  record.choices.assign(trial.choices.begin(), trial.choices.end());
  record.correct_label = trial.correct_label;
  record.prompt = trial.prompt_text;
  record.object_class = trial.object_class;
  record.record_id = trial.record_id;
  record.part_label = trial.part_label;
  record.part_art = trial.part_art;
  return record;
}

std::string TrialRecord::to_json_line() const {
  json value{{"trial_id", trial_id}, {"kind", kind}, {"seed", seed}, {"reference", reference},
             {"prompt", prompt}};
  if (settings) value["settings"] = settings_to_value(*settings);
  if (!is_generation()) {
    json cs = json::array();
    for (const TrialChoice& c : choices) {
      cs.push_back(json{{"label", std::string(1, c.label)}, {"text", c.text}});
    }
    if (!choices.empty()) value["choices"] = std::move(cs);
    if (correct_label) value["correct_label"] = std::string(1, *correct_label);
  } else {
    value["max_reissues"] = *max_reissues;
  }
  if (ground_truth) {
    json truth{{"reference", diagram_to_value(ground_truth->reference)}};
    if (!ground_truth->choices.empty()) {
      json cs = json::array();
      for (const Diagram& d : ground_truth->choices) cs.push_back(diagram_to_value(d));
      truth["choices"] = std::move(cs);
    }
    value["ground_truth"] = std::move(truth);
  }
  if (object_class) value["object_class"] = *object_class;
  if (record_id) value["record_id"] = *record_id;
  if (part_label) value["part_label"] = *part_label;
  if (part_art) value["part_art"] = *part_art;
  return value.dump();
}

TrialRecord TrialRecord::from_json_line(const std::string& line) {
  const json value = parse_line(line);
  TrialRecord record;
  record.trial_id = value.at("trial_id").get<std::string>();
  record.kind = value.at("kind").get<std::string>();
  record.seed = value.at("seed").get<std::uint64_t>();
  record.reference = value.at("reference").get<std::string>();
  record.prompt = value.at("prompt").get<std::string>();
  if (value.contains("settings")) record.settings = settings_from_value(value.at("settings"));
  if (value.contains("choices")) {
    for (const json& c : value.at("choices")) {
      record.choices.push_back(
          TrialChoice{c.at("label").get<std::string>().at(0), c.at("text").get<std::string>()});
    }
  }
  if (value.contains("correct_label")) {
    record.correct_label = value.at("correct_label").get<std::string>().at(0);
  }
  if (value.contains("max_reissues")) record.max_reissues = value.at("max_reissues").get<int>();
  if (value.contains("ground_truth")) {
    GroundTruth truth;
    truth.reference = diagram_from_value(value.at("ground_truth").at("reference"));
    if (value.at("ground_truth").contains("choices")) {
      for (const json& d : value.at("ground_truth").at("choices")) {
        truth.choices.push_back(diagram_from_value(d));
      }
    }
    record.ground_truth = std::move(truth);
  }
  if (value.contains("object_class")) {
    record.object_class = value.at("object_class").get<std::string>();
  }
  if (value.contains("record_id")) record.record_id = value.at("record_id").get<std::string>();
  if (value.contains("part_label")) record.part_label = value.at("part_label").get<std::string>();
  if (value.contains("part_art")) record.part_art = value.at("part_art").get<std::string>();
  return record;
}

std::string ResponseRecord::to_json_line() const {
  json value{{"trial_id", trial_id},       {"attempt_index", attempt_index},
             {"raw_response", raw_response}, {"reissue_count", reissue_count},
             {"gave_up", gave_up},         {"started_at", started_at},
             {"finished_at", finished_at}, {"model", model}};
  if (error) value["error"] = *error;
  return value.dump();
}

ResponseRecord ResponseRecord::from_json_line(const std::string& line) {
  const json value = parse_line(line);
  ResponseRecord record;
  record.trial_id = value.at("trial_id").get<std::string>();
  record.attempt_index = value.at("attempt_index").get<int>();
  record.raw_response = value.at("raw_response").get<std::string>();
  record.reissue_count = value.at("reissue_count").get<int>();
  record.gave_up = value.at("gave_up").get<bool>();
  record.started_at = value.at("started_at").get<std::string>();
  record.finished_at = value.at("finished_at").get<std::string>();
  record.model = value.at("model").get<std::string>();
  if (value.contains("error")) record.error = value.at("error").get<std::string>();
  return record;
}

std::string GradeRecord::to_json_line() const {
  json value{{"trial_id", trial_id}, {"grader", grader}, {"flagged", flagged}};
  if (extracted_answer) value["extracted_answer"] = *extracted_answer;
  if (metrics) value["metrics"] = metrics_to_value(*metrics);
  if (correct) value["correct"] = *correct;
  if (unweighted) value["unweighted"] = *unweighted;
  if (weighted) value["weighted"] = *weighted;
  if (distances) value["distances"] = *distances;
  return value.dump();
}

GradeRecord GradeRecord::from_json_line(const std::string& line) {
  const json value = parse_line(line);
  GradeRecord record;
  record.trial_id = value.at("trial_id").get<std::string>();
  record.grader = value.at("grader").get<std::string>();
  record.flagged = value.at("flagged").get<bool>();
  if (value.contains("extracted_answer")) {
    record.extracted_answer = value.at("extracted_answer").get<std::string>();
  }
  if (value.contains("metrics")) record.metrics = metrics_from_value(value.at("metrics"));
  if (value.contains("correct")) record.correct = value.at("correct").get<bool>();
  if (value.contains("unweighted")) record.unweighted = value.at("unweighted").get<int>();
  if (value.contains("weighted")) record.weighted = value.at("weighted").get<double>();
  if (value.contains("distances")) {
    record.distances = value.at("distances").get<std::array<long, 3>>();
  }
  return record;
}

std::vector<TrialRecord> read_trials(const std::string& path) {
  return read_jsonl<TrialRecord>(path);
}
std::vector<ResponseRecord> read_responses(const std::string& path) {
  return read_jsonl<ResponseRecord>(path);
}
std::vector<GradeRecord> read_grades(const std::string& path) {
  return read_jsonl<GradeRecord>(path);
}

struct JsonlWriter::Impl {
  std::ofstream out;
};

JsonlWriter::JsonlWriter(const std::string& path) : impl_(new Impl) {
  impl_->out.open(path, std::ios::app);
  if (!impl_->out) {
    delete impl_;
    throw Error(ErrorCode::Io, "cannot open " + path + " for append");
  }
}

JsonlWriter::~JsonlWriter() { delete impl_; }

void JsonlWriter::append(const std::string& line) {
  impl_->out << line << '\n';
  impl_->out.flush();
}

}  // namespace boxart

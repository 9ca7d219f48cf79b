#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "boxart/baseline.hpp"
#include "boxart/client.hpp"
#include "boxart/error.hpp"
#include "boxart/humanart.hpp"
#include "boxart/records.hpp"
#include "boxart/report.hpp"
#include "boxart/runner.hpp"
#include "boxart/stats.hpp"
#include "boxart/structure.hpp"
#include "boxart/trials.hpp"

namespace {

using namespace boxart;

std::string trial_id_for(const std::string& kind, int index) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%s-%06d", kind.c_str(), index);
  return buffer;
}

struct GenArgs {
  std::string kind = "recog-verbatim";
  int n = 1;
  std::uint64_t seed = 0;
  std::string out = "trials.jsonl";
  std::string names = "off";
  double size = 1.0;
  double noise_level = 0.04;
  std::string padding = "padded";
  std::string enlarged = "ref";
  std::string corpus_dir;
  std::string exemplars_path;
  int per_part = 1;
};

int run_gen(const GenArgs& args) {
  JsonlWriter out(args.out);
  int written = 0;

  if (args.kind == "part") {
    if (args.corpus_dir.empty() || args.exemplars_path.empty()) {
      throw Error(ErrorCode::InvalidArgs, "--kind part requires --corpus and --exemplars");
    }
    const ExemplarSet exemplars = ExemplarSet::from_json_file(args.exemplars_path);
    const std::vector<ArtRecord> corpus = load_corpus(args.corpus_dir);
    std::uint64_t counter = 0;
    for (const ArtRecord& record : corpus) {
      for (const auto& [part, art] : record.parts) {
        for (int repeat = 0; repeat < args.per_part; ++repeat) {
          const std::uint64_t trial_seed = RandomStream::mix(args.seed, counter++);
          RandomStream rng(trial_seed);
          const PartTrial trial = build_part_trial(
              record, part, vocabulary_for(record.object_class), exemplars, rng);
          const std::string id =
              "part-" + record.id + "-" + part + "-" + std::to_string(repeat);
          out.append(TrialRecord::from_part(trial, id, trial_seed).to_json_line());
          ++written;
        }
      }
    }
    std::cerr << "wrote " << written << " part trials to " << args.out << "\n";
    return 0;
  }

  const TaskKind kind = task_kind_from_string(args.kind);
  const bool names_shown = args.names == "on";
  const bool padding_kept = args.padding == "padded";
  const EnlargedSide enlarged =
      args.enlarged == "ref" ? EnlargedSide::Reference : EnlargedSide::Choices;

  for (int i = 0; i < args.n; ++i) {
    TrialSettings settings =
        make_settings(kind, names_shown, args.size, args.noise_level, padding_kept, enlarged);
    settings.seed = RandomStream::mix(args.seed, static_cast<std::uint64_t>(i));
    RandomStream rng(settings.seed);
    const std::string id = trial_id_for(args.kind, i);
    if (is_generation_kind(kind)) {
      out.append(TrialRecord::from_generation(build_generation_trial(settings, rng), id)
                     .to_json_line());
    } else {
      out.append(TrialRecord::from_recognition(build_recognition_trial(settings, rng), id)
                     .to_json_line());
    }
    ++written;
  }
  std::cerr << "wrote " << written << " trials to " << args.out << "\n";
  return 0;
}

int run_run(const std::string& trials_path, const std::string& responses_path,
            const std::string& grades_path, const std::string& config_path,
            const std::string& mock_script, int parallel_override) {
  const std::vector<TrialRecord> trials = read_trials(trials_path);
  ClientConfig config;
  if (!config_path.empty()) config = ClientConfig::from_json_file(config_path);
  if (parallel_override > 0) config.max_parallel_requests = parallel_override;

  std::unique_ptr<ModelClient> client;
  std::string model_name = config.model_name;
  if (!mock_script.empty()) {
    client = std::make_unique<MockClient>(MockClient::script_from_json_file(mock_script));
    model_name = "mock";
  } else {
    client = std::make_unique<HttpChatClient>(config);
  }

  std::vector<TrialRecord> recognition;
  std::vector<TrialRecord> generation;
  for (const TrialRecord& trial : trials) {
    (trial.is_generation() ? generation : recognition).push_back(trial);
  }

  RunOptions options;
  options.max_parallel = config.max_parallel_requests;
  options.model_name = model_name;
  RunSummary total;
  for (const auto& [batch, is_gen] :
       {std::pair{&recognition, false}, std::pair{&generation, true}}) {
    if (batch->empty()) continue;
    const RunSummary summary =
        is_gen ? run_generation(*batch, *client, options, responses_path, grades_path)
               : run_recognition(*batch, *client, options, responses_path, grades_path);
    total.completed += summary.completed;
    total.skipped += summary.skipped;
    total.failed += summary.failed;
  }
  std::cerr << "completed " << total.completed << ", skipped " << total.skipped << ", failed "
            << total.failed << "\n";
  return total.failed == 0 ? 0 : 1;
}

int run_grade(const std::string& trials_path, const std::string& responses_path,
              const std::string& out_path) {
  const auto trials = read_trials(trials_path);
  const auto responses = read_responses(responses_path);
  const auto grades = grade_stored(trials, responses);
  JsonlWriter out(out_path);
  for (const GradeRecord& grade : grades) out.append(grade.to_json_line());
  std::cerr << "graded " << grades.size() << " responses into " << out_path << "\n";
  return 0;
}

int run_baseline(const std::string& trials_path, const std::string& out_path) {
  const auto trials = read_trials(trials_path);
  JsonlWriter out(out_path);
  int written = 0;
  for (const TrialRecord& trial : trials) {
    if (trial.is_generation()) continue;
    out.append(baseline_grade(trial).to_json_line());
    ++written;
  }
  std::cerr << "scored " << written << " trials into " << out_path << "\n";
  return 0;
}

int run_report(const std::string& trials_path, const std::string& grades_path,
               const std::string& csv_path) {
  const auto trials = read_trials(trials_path);
  const auto grades = read_grades(grades_path);
  const auto rows = build_report(trials, grades);
  std::cout << to_markdown(rows);
  if (!csv_path.empty()) {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + csv_path);
    out << to_csv(rows);
    std::cerr << "wrote " << csv_path << "\n";
  }
  return 0;
}

int run_parse(const std::string& grid_path, const std::string& corpus_dir) {
  if (!grid_path.empty()) {
    std::ifstream in(grid_path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + grid_path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();
    if (!text.empty() && text.back() == '\n') text.pop_back();
    const StructureReport report = parse_boxes(CharGrid::from_text(text));
    std::cout << "boxes: " << report.boxes.size() << "\n";
    for (const Box& box : report.boxes) {
      std::cout << "  (" << box.x1 << "," << box.y1 << ")-(" << box.x2 << "," << box.y2 << ")";
      if (box.name) std::cout << " name=" << *box.name << " corner=" << to_string(box.name_corner);
      std::cout << "\n";
    }
    std::cout << "strays: " << report.stray_cells.size() << "\n";
    std::cout << "clean: " << (report.is_clean ? "yes" : "no") << "\n";
    return 0;
  }
  if (!corpus_dir.empty()) {
    const std::vector<ArtRecord> corpus = load_corpus(corpus_dir);
    std::size_t parts = 0;
    for (const ArtRecord& record : corpus) parts += record.parts.size();
    std::cout << "records: " << corpus.size() << "\nparts: " << parts << "\n";
    return 0;
  }
  throw Error(ErrorCode::InvalidArgs, "parse needs --grid or --corpus");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ASCII box-diagram benchmark toolkit"};
  app.require_subcommand(1);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "Build a trials JSONL file");
  gen->add_option("--kind", gen_args.kind,
                  "recog-{verbatim,translation,rotation,noise,scale}, "
                  "gen-{verbatim,translation,noise,scale,rotation}, or part")
      ->required();
  gen->add_option("--n", gen_args.n, "number of trials");
  gen->add_option("--seed", gen_args.seed, "base seed");
  gen->add_option("--out", gen_args.out, "output JSONL path");
  gen->add_option("--names", gen_args.names, "on|off (recognition only)")
      ->check(CLI::IsMember({"on", "off"}));
  gen->add_option("--size", gen_args.size, "rotation size factor: 1.0, 0.6 or 0.3");
  gen->add_option("--noise-level", gen_args.noise_level, "per-space replacement probability");
  gen->add_option("--padding", gen_args.padding, "padded|ragged (noise trials)")
      ->check(CLI::IsMember({"padded", "ragged"}));
  gen->add_option("--enlarged", gen_args.enlarged, "ref|choices (scale trials)")
      ->check(CLI::IsMember({"ref", "choices"}));
  gen->add_option("--corpus", gen_args.corpus_dir, "corpus directory (part trials)");
  gen->add_option("--exemplars", gen_args.exemplars_path, "exemplars.json (part trials)");
  gen->add_option("--per-part", gen_args.per_part, "trials per (image, part)");

  std::string trials_path, responses_path = "responses.jsonl", grades_path = "grades.jsonl";
  std::string config_path, mock_script;
  int parallel_override = 0;
  CLI::App* run = app.add_subcommand("run", "Query a model over a trials file");
  run->add_option("--trials", trials_path)->required();
  run->add_option("--responses", responses_path);
  run->add_option("--grades", grades_path);
  run->add_option("--config", config_path, "client config JSON");
  run->add_option("--mock-script", mock_script, "JSON array of scripted responses");
  run->add_option("--parallel", parallel_override, "override max parallel requests");

  std::string g_trials, g_responses, g_out = "grades.jsonl";
  CLI::App* grade = app.add_subcommand("grade", "Re-grade stored responses");
  grade->add_option("--trials", g_trials)->required();
  grade->add_option("--responses", g_responses)->required();
  grade->add_option("--out", g_out);

  std::string b_trials, b_out = "baseline.jsonl";
  CLI::App* baseline = app.add_subcommand("baseline", "Edit-distance baseline over trials");
  baseline->add_option("--trials", b_trials)->required();
  baseline->add_option("--out", b_out);

  std::string r_trials, r_grades, r_csv;
  CLI::App* report = app.add_subcommand("report", "Aggregate grades into tables");
  report->add_option("--trials", r_trials)->required();
  report->add_option("--grades", r_grades)->required();
  report->add_option("--csv", r_csv, "also write a CSV");

  std::string p_grid, p_corpus;
  CLI::App* parse = app.add_subcommand("parse", "Inspect a grid file or validate a corpus");
  parse->add_option("--grid", p_grid, "text file holding one grid");
  parse->add_option("--corpus", p_corpus, "corpus directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return run_gen(gen_args);
    if (run->parsed()) {
      return run_run(trials_path, responses_path, grades_path, config_path, mock_script,
                     parallel_override);
    }
    if (grade->parsed()) return run_grade(g_trials, g_responses, g_out);
    if (baseline->parsed()) return run_baseline(b_trials, b_out);
    if (report->parsed()) return run_report(r_trials, r_grades, r_csv);
    if (parse->parsed()) return run_parse(p_grid, p_corpus);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
  return 0;
}

// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion pins its thresholds in code.

#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "boxart/baseline.hpp"
#include "boxart/client.hpp"
#include "boxart/diagram.hpp"
#include "boxart/grid.hpp"
#include "boxart/humanart.hpp"
#include "boxart/records.hpp"
#include "boxart/report.hpp"
#include "boxart/rng.hpp"
#include "boxart/runner.hpp"
#include "boxart/stats.hpp"
#include "boxart/structure.hpp"
#include "boxart/trials.hpp"

using namespace boxart;

namespace {

struct CheckFailure {
  std::string message;
};

void require(bool condition, const std::string& message) {
  if (!condition) throw CheckFailure{message};
}

// Key: extent plus the name and the cell it renders to. Thin boxes collapse
// interior corners onto one cell, so the corner enum itself is not
// recoverable from the grid; the rendered name cell is.
std::multiset<std::string> box_keys(const std::vector<Box>& boxes) {
  std::multiset<std::string> keys;
  for (const Box& box : boxes) {
    std::string key = std::to_string(box.x1) + "," + std::to_string(box.y1) + "," +
                      std::to_string(box.x2) + "," + std::to_string(box.y2);
    if (box.name) {
      const int nx = (box.name_corner == Corner::LL || box.name_corner == Corner::UL)
                         ? box.x1 + 1
                         : box.x2 - 1;
      const int ny = (box.name_corner == Corner::LL || box.name_corner == Corner::LR)
                         ? box.y1 + 1
                         : box.y2 - 1;
      key += ",";
      key += *box.name;
      key += "@" + std::to_string(nx) + "," + std::to_string(ny);
    }
    keys.insert(key);
  }
  return keys;
}

std::map<char, int> structural_histogram(const std::string& text) {
  std::map<char, int> hist;
  for (char c : text) {
    if (c == '-' || c == '|' || std::isalnum(static_cast<unsigned char>(c))) ++hist[c];
  }
  return hist;
}

// ---------------------------------------------------------------------------
// 1. Generator soundness: 10,000 named diagrams at (24,14,8) all pass the
//    model invariants and parse back to the exact box/name set.
void criterion_generator_soundness() {
  const GenParams params{24, 14, 8.0, true, 1000, 100000};
  const int total = 10000;
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= total || failed.load()) return;
      try {
        RandomStream rng = RandomStream(20240001).child(static_cast<std::uint64_t>(i));
        const Diagram d = generate(params, rng);
        validate(d);
        const StructureReport report = parse_boxes(render(d, true));
        require(report.is_clean, "strays in seed " + std::to_string(i));
        require(box_keys(report.boxes) == box_keys(d.boxes),
                "round-trip mismatch in seed " + std::to_string(i));
      } catch (const std::exception& error) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        failed = true;
        failure = error.what();
      } catch (const CheckFailure& check) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        failed = true;
        failure = check.message;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  require(!failed.load(), failure);
}

// ---------------------------------------------------------------------------
// 2. Multiset constraint: 1,000 trials per recognition kind, choice
//    histograms over {-, |, alphanumerics} equal at the defined stage
//    (clean ground-truth renders for noise trials, displayed text otherwise).
void criterion_multiset_constraint() {
  const TrialSettings bases[] = {
      make_settings(TaskKind::RecogVerbatim, false),
      make_settings(TaskKind::RecogTranslation, false),
      make_settings(TaskKind::RecogRotation, false, 1.0),
      make_settings(TaskKind::RecogNoise, false, 1.0, 0.04, true),
      make_settings(TaskKind::RecogScale, false, 1.0, 0.04, true, EnlargedSide::Choices),
  };
  std::atomic<int> violations{0};
  std::atomic<std::size_t> next{0};
  const int per_kind = 1000;
  struct Job {
    const TrialSettings* base;
    int index;
  };
  std::vector<Job> jobs;
  for (const TrialSettings& base : bases) {
    for (int i = 0; i < per_kind; ++i) jobs.push_back({&base, i});
  }
  std::atomic<bool> threw{false};
  auto worker = [&]() {
    while (true) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      try {
        TrialSettings settings = *jobs[j].base;
        settings.seed = RandomStream::mix(20240002 + static_cast<std::uint64_t>(settings.kind),
                                          static_cast<std::uint64_t>(jobs[j].index));
        RandomStream rng(settings.seed);
        const RecognitionTrial trial = build_recognition_trial(settings, rng);
        std::map<char, int> hist[3];
        for (int c = 0; c < 3; ++c) {
          if (settings.kind == TaskKind::RecogNoise) {
            hist[c] = structural_histogram(
                render(trial.choice_diagrams[static_cast<std::size_t>(c)], false).to_text());
          } else {
            hist[c] =
                structural_histogram(trial.choices[static_cast<std::size_t>(c)].text);
          }
        }
        if (hist[0] != hist[1] || hist[0] != hist[2]) ++violations;
      } catch (...) {
        threw = true;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  require(!threw.load(), "trial construction threw");
  require(violations.load() == 0,
          std::to_string(violations.load()) + " histogram violations");
}

// ---------------------------------------------------------------------------
// 3. Edit-distance baseline reproduces the published per-setting accuracies
//    over 400 fresh trials each.
struct BaselineSetting {
  std::string name;
  TrialSettings settings;
  double expect_lo;  // percent
  double expect_hi;
  bool exact100 = false;
};

void criterion_baseline_table() {
  std::vector<BaselineSetting> table;
  table.push_back({"verbatim", make_settings(TaskKind::RecogVerbatim, false), 100.0, 100.0, true});
  table.push_back({"rotation-0.3", make_settings(TaskKind::RecogRotation, false, 0.3),
                   33.7 - 7.0, 33.7 + 7.0});
  table.push_back({"rotation-0.6", make_settings(TaskKind::RecogRotation, false, 0.6),
                   33.7 - 7.0, 33.7 + 7.0});
  table.push_back({"rotation-1.0", make_settings(TaskKind::RecogRotation, false, 1.0),
                   33.7 - 7.0, 33.7 + 7.0});
  table.push_back({"translation", make_settings(TaskKind::RecogTranslation, false),
                   39.6 - 7.0, 39.6 + 7.0});
  table.push_back({"scale-ref-nonames",
                   make_settings(TaskKind::RecogScale, false, 1.0, 0.04, true,
                                 EnlargedSide::Reference),
                   97.0, 100.0});
  table.push_back({"scale-ref-names",
                   make_settings(TaskKind::RecogScale, true, 1.0, 0.04, true,
                                 EnlargedSide::Reference),
                   97.0, 100.0});
  table.push_back({"scale-cho-nonames",
                   make_settings(TaskKind::RecogScale, false, 1.0, 0.04, true,
                                 EnlargedSide::Choices),
                   97.0, 100.0});
  table.push_back({"scale-cho-names",
                   make_settings(TaskKind::RecogScale, true, 1.0, 0.04, true,
                                 EnlargedSide::Choices),
                   97.0, 100.0});
  table.push_back({"noise-0.04-kept",
                   make_settings(TaskKind::RecogNoise, false, 1.0, 0.04, true), 99.0, 100.0});
  table.push_back({"noise-0.04-ragged",
                   make_settings(TaskKind::RecogNoise, false, 1.0, 0.04, false), 99.0, 100.0});
  table.push_back({"noise-0.32-kept",
                   make_settings(TaskKind::RecogNoise, false, 1.0, 0.32, true), 99.0, 100.0});
  table.push_back({"noise-0.32-ragged",
                   make_settings(TaskKind::RecogNoise, false, 1.0, 0.32, false), 99.0, 100.0});

  const int per_setting = 400;
  struct Tally {
    std::atomic<long> unweighted_sum{0};
    std::atomic<bool> weighted_violation{false};
  };
  std::vector<Tally> tallies(table.size());

  struct Job {
    std::size_t setting;
    int index;
  };
  std::vector<Job> jobs;
  for (std::size_t s = 0; s < table.size(); ++s) {
    for (int i = 0; i < per_setting; ++i) jobs.push_back({s, i});
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> threw{false};
  auto worker = [&]() {
    while (true) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      try {
        const Job& job = jobs[j];
        TrialSettings settings = table[job.setting].settings;
        settings.seed = RandomStream::mix(20240003 + job.setting * 7919,
                                          static_cast<std::uint64_t>(job.index));
        RandomStream rng(settings.seed);
        const RecognitionTrial trial = build_recognition_trial(settings, rng);
        const BaselineScore score = score_trial(trial);
        if (score.weighted > score.unweighted + 1e-12) {
          tallies[job.setting].weighted_violation = true;
        }
        tallies[job.setting].unweighted_sum += score.unweighted;
      } catch (...) {
        threw = true;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  require(!threw.load(), "trial construction threw");

  std::ostringstream detail;
  bool ok = true;
  for (std::size_t s = 0; s < table.size(); ++s) {
    const double acc =
        100.0 * static_cast<double>(tallies[s].unweighted_sum.load()) / per_setting;
    const bool in_range = table[s].exact100
                              ? tallies[s].unweighted_sum.load() == per_setting
                              : acc >= table[s].expect_lo && acc <= table[s].expect_hi;
    if (!in_range || tallies[s].weighted_violation.load()) ok = false;
    detail << " " << table[s].name << "=" << acc << (in_range ? "" : "(!)");
    if (tallies[s].weighted_violation.load()) detail << "(w>u!)";
  }
  std::printf("    baseline accuracies:%s\n", detail.str().c_str());
  require(ok, "baseline accuracy outside the pinned ranges:" + detail.str());
}

// ---------------------------------------------------------------------------
// 4. Statistics: every published interval from its (k, n) to +/-0.1 points,
//    the multi-test tail bound, and the stratified per-image accuracies from
//    the per-part rows to +/-0.05 points.
void criterion_statistics() {
  struct CiCase {
    long k, n;
    double lo, hi;  // percent
  };
  const CiCase cis[] = {
      {399, 400, 98.6, 100.0}, {135, 397, 29.4, 38.9}, {139, 395, 30.5, 40.1},
      {137, 397, 29.8, 39.4},  {361, 399, 87.2, 93.2}, {157, 396, 34.8, 44.7},
      {170, 401, 37.5, 47.4},  {126, 400, 27.0, 36.3}, {152, 400, 33.2, 43.0},
      {175, 398, 39.0, 49.0},  {168, 399, 37.2, 47.1}, {161, 398, 35.6, 45.5},
      {158, 396, 35.0, 44.9},
  };
  for (const CiCase& c : cis) {
    const auto [lo, hi] = clopper_pearson(c.k, c.n, 0.05);
    require(std::abs(lo * 100.0 - c.lo) <= 0.1 + 1e-9,
            "ci lower for k=" + std::to_string(c.k) + " n=" + std::to_string(c.n) + " got " +
                std::to_string(lo * 100.0));
    require(std::abs(hi * 100.0 - c.hi) <= 0.1 + 1e-9,
            "ci upper for k=" + std::to_string(c.k) + " n=" + std::to_string(c.n) + " got " +
                std::to_string(hi * 100.0));
  }

  require(binomial_tail_ge(13, 0.05, 3) < 0.025, "multi-test tail bound not below 2.5%");

  // Per-part (accuracy %, n) rows; the expected per-image stratified values.
  struct ImageCase {
    std::string id;
    std::vector<std::pair<double, long>> parts;
    double expected;  // percent
  };
  const std::vector<ImageCase> images = {
      {"birds-1", {{57.1, 210}, {66.5, 200}, {54.0, 200}}, 59.2},
      {"birds-2", {{98.1, 210}, {11.0, 200}, {52.3, 220}}, 53.8},
      {"birds-3", {{50.0, 220}, {36.8, 220}, {72.4, 210}}, 53.1},
      {"birds-4", {{26.4, 220}, {33.0, 200}, {20.0, 180}}, 26.5},
      {"cats-1", {{24.5, 200}, {29.5, 190}, {65.9, 220}, {39.5, 210}}, 39.9},
      {"cats-2", {{42.0, 205}, {20.9, 220}, {57.5, 207}, {28.6, 210}}, 37.2},
      {"cats-3", {{25.5, 200}, {32.3, 220}, {69.4, 180}, {43.0, 200}}, 42.6},
      {"cats-4", {{32.0, 200}, {26.8, 190}, {55.9, 211}, {18.2, 220}}, 33.2},
      {"dogs-1", {{50.9, 230}, {50.5, 220}, {55.7, 210}, {57.4, 230}}, 53.6},
      {"dogs-2", {{40.0, 210}, {31.0, 200}, {44.8, 210}, {46.4, 220}}, 40.5},
      {"dogs-3", {{60.9, 230}, {26.0, 200}, {58.1, 210}, {46.4, 220}}, 47.8},
      {"dogs-4", {{41.0, 200}, {46.0, 200}, {41.9, 210}, {10.5, 200}}, 34.9},
      {"dogs-5", {{54.5, 198}, {13.3, 180}, {65.8, 190}, {18.6, 220}}, 38.1},
      {"cars-1", {{52.4, 170}, {97.1, 210}}, 74.7},
      {"cars-2", {{39.5, 220}, {29.6, 230}}, 34.6},
      {"cars-3", {{62.0, 200}, {3.5, 200}}, 32.8},
      {"cars-4", {{61.0, 210}, {12.4, 210}}, 36.7},
      {"planes-1", {{51.9, 210}, {58.2, 220}}, 55.0},
      {"planes-2", {{62.4, 210}, {47.7, 220}}, 55.1},
      {"planes-3", {{35.9, 220}, {50.0, 200}}, 43.0},
      {"planes-4", {{21.4, 220}, {33.3, 210}}, 27.3},
      {"planes-5", {{26.2, 210}, {80.5, 190}}, 53.4},
      {"planes-6", {{57.6, 210}, {15.8, 190}}, 36.7},
      {"planes-7", {{15.9, 170}, {34.0, 200}}, 24.9},
      {"planes-8", {{31.0, 210}, {37.4, 190}}, 34.2},
      {"planes-9", {{41.8, 220}, {58.5, 200}}, 50.2},
      {"planes-10", {{63.3, 210}, {27.8, 180}}, 45.6},
  };
  for (const ImageCase& image : images) {
    PartAccuracyGroup group;
    group.image_id = image.id;
    int part_index = 0;
    for (const auto& [acc, n] : image.parts) {
      const long k = std::lround(acc * static_cast<double>(n) / 100.0);
      group.parts.push_back({"part" + std::to_string(part_index++), k, n});
    }
    const double got = stratified_accuracy(group) * 100.0;
    require(std::abs(got - image.expected) <= 0.05 + 1e-9,
            image.id + ": stratified " + std::to_string(got) + " vs " +
                std::to_string(image.expected));
  }
}

// ---------------------------------------------------------------------------
// 5. Transform properties at scale.
void criterion_transform_properties() {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    RandomStream rng = RandomStream(20240005).child(seed);
    const Diagram d = generate(GenParams{12, 7, 4.0, true, 1000, 100000}, rng);
    require(rotate_cw(rotate_cw(rotate_cw(rotate_cw(d)))) == d, "rotate^4 != identity");
  }

  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    RandomStream rng = RandomStream(20240006).child(seed);
    const Diagram d = generate(GenParams{12, 7, 4.0, false, 1000, 100000}, rng);
    const CharGrid g = render(d, false);
    require(downscale2(upscale2(g)) == g, "downscale2(upscale2) != identity");
  }

  for (double level : {0.04, 0.32}) {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      RandomStream rng = RandomStream(20240007).child(
          seed + static_cast<std::uint64_t>(level * 1000));
      const Diagram d = generate(GenParams{24, 14, 8.0, false, 1000, 100000}, rng);
      const CharGrid g = render(d, false);
      const CharGrid noised = inject_noise(g, NoiseSpec{level, NoiseSpec{}.charset}, rng);
      int injected = 0;
      for (int r = 0; r < g.height(); ++r) {
        for (int c = 0; c < g.width(); ++c) {
          if (g.at(r, c) != ' ') {
            require(noised.at(r, c) == g.at(r, c), "noise altered a non-space cell");
          } else if (noised.at(r, c) != ' ') {
            ++injected;
          }
        }
      }
      require(injected >= 1, "noise injected nothing at level > 0");
    }
  }

  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    RandomStream rng = RandomStream(20240008).child(seed);
    const Diagram d = generate(GenParams{12, 7, 4.0, false, 1000, 100000}, rng);
    const CharGrid inner = render(d, false);
    const int dx = rng.uniform_int(0, 12);
    const int dy = rng.uniform_int(0, 12);
    const CharGrid outer = embed(inner, 24, 24, dx, dy);
    const int top = 24 - dy - inner.height();
    for (int r = 0; r < inner.height(); ++r) {
      for (int c = 0; c < inner.width(); ++c) {
        require(outer.at(top + r, dx + c) == inner.at(r, c), "embed/crop mismatch");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// 6. Prompt fidelity: golden byte-equality plus the verbatim task sentences.
std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(bool(in), "missing fixture " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void criterion_prompt_fidelity() {
  const std::string golden_dir = std::string(BOXART_TEST_DIR) + "/golden/";

  struct RecogCase {
    TaskKind kind;
    TrialSettings settings;
    std::uint64_t seed;
    const char* fixture;
    const char* sentence;
  };
  const RecogCase recog_cases[] = {
      {TaskKind::RecogVerbatim, make_settings(TaskKind::RecogVerbatim, false), 1001,
       "recog_verbatim.txt",
       "Which choice has ASCII-art that matches the reference ASCII-art exactly?"},
      {TaskKind::RecogTranslation, make_settings(TaskKind::RecogTranslation, false), 1002,
       "recog_translation.txt",
       "after it has been moved left, right, up, or down?"},
      {TaskKind::RecogRotation, make_settings(TaskKind::RecogRotation, true, 0.3), 1003,
       "recog_rotation_03_names.txt", "underwent a quarter-turn clockwise?"},
      {TaskKind::RecogNoise, make_settings(TaskKind::RecogNoise, false, 1.0, 0.32, true), 1004,
       "recog_noise_032.txt", "Ignoring the noisy characters injected into the depictions"},
      {TaskKind::RecogScale,
       make_settings(TaskKind::RecogScale, false, 1.0, 0.04, true, EnlargedSide::Reference),
       1005, "recog_scale_ref_enlarged.txt", "to half its size?"},
  };
  for (const RecogCase& c : recog_cases) {
    RandomStream rng(c.seed);
    const RecognitionTrial trial = build_recognition_trial(c.settings, rng);
    require(trial.prompt_text == read_file(golden_dir + c.fixture),
            std::string("recognition fixture drifted: ") + c.fixture);
    require(trial.prompt_text.find(c.sentence) != std::string::npos,
            std::string("missing sentence in ") + c.fixture);
  }

  struct GenCase {
    TaskKind kind;
    const char* fixture;
    const char* sentence;
  };
  const GenCase gen_cases[] = {
      {TaskKind::GenVerbatim, "gen_verbatim.txt", "return the ASCII-art image to me verbatim"},
      {TaskKind::GenTranslation, "gen_translation.txt",
       "no blank areas at the top of it and no empty left margin"},
      {TaskKind::GenNoise, "gen_noise.txt", "replace by a single space character"},
      {TaskKind::GenScale, "gen_scale.txt", "scaled up to double the size"},
      {TaskKind::GenRotation, "gen_rotation.txt", "rotated a quarter-turn clockwise"},
  };
  for (const GenCase& c : gen_cases) {
    RandomStream rng(1010 + static_cast<std::uint64_t>(c.kind));
    const GenerationTrial trial = build_generation_trial(make_settings(c.kind), rng);
    require(trial.prompt_text == read_file(golden_dir + c.fixture),
            std::string("generation fixture drifted: ") + c.fixture);
    require(trial.prompt_text.find(c.sentence) != std::string::npos,
            std::string("missing sentence in ") + c.fixture);
  }

  const ExemplarSet exemplars =
      ExemplarSet::from_json_file(std::string(BOXART_DATA_DIR) + "/exemplars.json");
  const std::vector<ArtRecord> corpus =
      load_corpus(std::string(BOXART_TEST_DIR) + "/data/corpus");
  RandomStream rng(2001);
  const PartTrial part = build_part_trial(corpus.front(), corpus.front().parts.begin()->first,
                                          vocabulary_for(corpus.front().object_class),
                                          exemplars, rng);
  require(part.prompt_text == read_file(golden_dir + "part_recognition.txt"),
          "part-recognition fixture drifted");
  for (const char* token :
       {"EX_FULL_IMG", "EXPECTED_ANSWER_TO_6_FOR_EX", "(1) ", "(2) ", "(3) ", "(4) ", "(5) ",
        "(6) ", "IMAGE_PART", "OBJECT_IN_FULL_IMAGE"}) {
    require(part.prompt_text.find(token) != std::string::npos,
            std::string("part prompt lacks ") + token);
  }
}

// ---------------------------------------------------------------------------
// 7. Mock end-to-end: a 30-trial recognition campaign and a 5-trial
//    generation campaign with exact expected grades and a byte-stable report.
void criterion_mock_end_to_end() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "boxart_acceptance_e2e";
  fs::remove_all(dir);
  fs::create_directories(dir);

  // --- recognition: 30 trials, scripted answers with a known pattern ---
  std::vector<TrialRecord> recog;
  for (int i = 0; i < 30; ++i) {
    TrialSettings settings = make_settings(TaskKind::RecogVerbatim, false);
    settings.gen_params = GenParams{8, 5, 3.0, false, 1000, 100000};
    settings.seed = RandomStream::mix(20240009, static_cast<std::uint64_t>(i));
    RandomStream rng(settings.seed);
    char id[32];
    std::snprintf(id, sizeof id, "recog-verbatim-%06d", i);
    recog.push_back(TrialRecord::from_recognition(build_recognition_trial(settings, rng), id));
  }
  // Pattern: 0..19 answer correctly, 20..24 answer the next letter over,
  // 25..29 give no parsable answer.
  std::vector<std::string> recog_script;
  for (int i = 0; i < 30; ++i) {
    const char correct = *recog[static_cast<std::size_t>(i)].correct_label;
    if (i < 20) {
      recog_script.push_back(std::string("(1) ... (2) ... (3) ...\n(4) The answer is Choice ") +
                             correct + " because it matches.");
    } else if (i < 25) {
      const char wrong = static_cast<char>('A' + (correct - 'A' + 1) % 3);
      recog_script.push_back(std::string("(4) Choice ") + wrong);
    } else {
      recog_script.push_back("I am not sure I can answer that.");
    }
  }
  MockClient recog_mock(recog_script);
  RunOptions options;
  options.max_parallel = 1;
  options.model_name = "mock";
  run_recognition(recog, recog_mock, options, (dir / "recog_responses.jsonl").string(),
                  (dir / "recog_grades.jsonl").string());

  const auto recog_grades = read_grades((dir / "recog_grades.jsonl").string());
  require(recog_grades.size() == 30, "expected 30 recognition grades");
  int correct = 0, incorrect = 0, flagged = 0;
  for (const GradeRecord& grade : recog_grades) {
    if (grade.flagged) {
      ++flagged;
      require(!grade.correct.has_value(), "flagged grade carries a verdict");
    } else if (*grade.correct) {
      ++correct;
    } else {
      ++incorrect;
    }
  }
  require(correct == 20 && incorrect == 5 && flagged == 5,
          "recognition grade pattern mismatch: " + std::to_string(correct) + "/" +
              std::to_string(incorrect) + "/" + std::to_string(flagged));

  // --- generation: 5 trials covering echo, give-up and stretched output ---
  std::vector<TrialRecord> gen;
  for (int i = 0; i < 5; ++i) {
    TrialSettings settings = make_settings(TaskKind::GenVerbatim);
    settings.gen_params = GenParams{12, 7, 4.0, true, 1000, 100000};
    settings.seed = RandomStream::mix(20240010, static_cast<std::uint64_t>(i));
    RandomStream rng(settings.seed);
    char id[32];
    std::snprintf(id, sizeof id, "gen-verbatim-%06d", i);
    gen.push_back(TrialRecord::from_generation(build_generation_trial(settings, rng), id));
  }
  std::vector<std::string> gen_script;
  // 0: exact echo in fences.
  gen_script.push_back("```\n" + gen[0].reference + "\n```");
  // 1: fifteen refusals, exhausting the reissue budget.
  for (int i = 0; i < 15; ++i) gen_script.push_back("sorry, text only");
  // 2: a row-stretched output: one interior row duplicated.
  {
    std::vector<std::string> rows = CharGrid::from_text(gen[2].reference).rows();
    rows.insert(rows.begin() + 6, rows[6]);
    gen_script.push_back("```\n" + CharGrid(rows).to_text() + "\n```");
  }
  // 3: two refusals then the echo.
  gen_script.push_back("ok");
  gen_script.push_back("here is a description\nof the picture\nin plain words");
  gen_script.push_back("```\n" + gen[3].reference + "\n```");
  // 4: art after prose without fences.
  gen_script.push_back("Here it is:\n" + gen[4].reference);

  MockClient gen_mock(gen_script);
  run_generation(gen, gen_mock, options, (dir / "gen_responses.jsonl").string(),
                 (dir / "gen_grades.jsonl").string());

  const auto gen_responses = read_responses((dir / "gen_responses.jsonl").string());
  const auto gen_grades = read_grades((dir / "gen_grades.jsonl").string());
  require(gen_responses.size() == 5 && gen_grades.size() == 5, "expected 5 generation records");

  std::map<std::string, const ResponseRecord*> responses_by_id;
  for (const auto& r : gen_responses) responses_by_id[r.trial_id] = &r;
  std::map<std::string, const GradeRecord*> grades_by_id;
  for (const auto& g : gen_grades) grades_by_id[g.trial_id] = &g;

  require(grades_by_id.at("gen-verbatim-000000")->metrics->exact_match,
          "echo trial should match exactly");
  require(responses_by_id.at("gen-verbatim-000001")->gave_up, "trial 1 should give up");
  require(responses_by_id.at("gen-verbatim-000001")->reissue_count == 14,
          "give-up must consume all 14 reissues");
  require(grades_by_id.at("gen-verbatim-000001")->flagged, "give-up grade is flagged");
  require(!grades_by_id.at("gen-verbatim-000001")->metrics.has_value(),
          "give-up grade carries no metrics");
  const GenerationMetrics& stretched = *grades_by_id.at("gen-verbatim-000002")->metrics;
  require(!stretched.exact_match, "stretched output must not match exactly");
  require(stretched.boxes_matched <
              static_cast<int>(gen[2].ground_truth->reference.boxes.size()),
          "stretched output must lose box matches");
  require(stretched.names_fabricated.empty(), "stretched output fabricated a name");
  require(responses_by_id.at("gen-verbatim-000003")->reissue_count == 2,
          "trial 3 should take two reissues");
  require(grades_by_id.at("gen-verbatim-000003")->metrics->exact_match,
          "trial 3 echo should match");
  require(grades_by_id.at("gen-verbatim-000004")->metrics->exact_match,
          "unfenced echo should match");

  // --- byte-stable report over both campaigns ---
  std::vector<TrialRecord> all_trials = recog;
  all_trials.insert(all_trials.end(), gen.begin(), gen.end());
  std::vector<GradeRecord> all_grades = recog_grades;
  all_grades.insert(all_grades.end(), gen_grades.begin(), gen_grades.end());
  const std::string csv_once = to_csv(build_report(all_trials, all_grades));
  const std::string csv_twice = to_csv(build_report(all_trials, all_grades));
  require(csv_once == csv_twice, "report not byte-stable");
  require(csv_once.find("recog-verbatim,80.0,") != std::string::npos,
          "report accuracy row mismatch (want 20/25 = 80.0)");

  // Regrading stored responses must reproduce the grades byte for byte.
  const auto regraded = grade_stored(recog, read_responses((dir / "recog_responses.jsonl").string()));
  require(regraded.size() == recog_grades.size(), "regrade count mismatch");
  for (std::size_t i = 0; i < regraded.size(); ++i) {
    require(regraded[i].to_json_line() == recog_grades[i].to_json_line(),
            "regrade not byte-identical");
  }
  fs::remove_all(dir);
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    std::function<void()> run;
  };
  const Criterion criteria[] = {
      {1, "generator soundness (10,000 diagrams, invariants + parse round-trip)",
       criterion_generator_soundness},
      {2, "multiset constraint (1,000 trials per recognition kind)",
       criterion_multiset_constraint},
      {3, "edit-distance baseline reproduction (400 trials x 13 settings)",
       criterion_baseline_table},
      {4, "statistics (intervals, tail bound, stratified accuracy)", criterion_statistics},
      {5, "transform properties (rotation, scaling, noise, embedding)",
       criterion_transform_properties},
      {6, "prompt fidelity (golden files + task sentences)", criterion_prompt_fidelity},
      {7, "mock end-to-end (30 recognition + 5 generation trials)", criterion_mock_end_to_end},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string failure;
    try {
      criterion.run();
    } catch (const CheckFailure& check) {
      failure = check.message;
    } catch (const std::exception& error) {
      failure = error.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (failure.empty()) {
      std::printf("PASS criterion %d: %s (%.1fs)\n", criterion.number, criterion.name, seconds);
    } else {
      std::printf("FAIL criterion %d: %s (%.1fs) -- %s\n", criterion.number, criterion.name,
                  seconds, failure.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

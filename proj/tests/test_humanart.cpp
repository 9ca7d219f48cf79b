#include "boxart/humanart.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include <doctest.h>

#include "boxart/error.hpp"

using namespace boxart;

namespace {

const std::string kCorpusDir = std::string(BOXART_TEST_DIR) + "/data/corpus";
const std::string kExemplarsPath = std::string(BOXART_DATA_DIR) + "/exemplars.json";

struct TempCorpus {
  std::filesystem::path dir;
  explicit TempCorpus(const std::string& name) {
    dir = std::filesystem::temp_directory_path() / ("boxart_corpus_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
  }
  ~TempCorpus() { std::filesystem::remove_all(dir); }
  void write(const std::string& file, const std::string& content) const {
    std::ofstream out(dir / file);
    out << content;
  }
};

}  // namespace

TEST_CASE("the bundled corpus loads with aligned masks") {
  const std::vector<ArtRecord> corpus = load_corpus(kCorpusDir);
  REQUIRE_FALSE(corpus.empty());
  for (const ArtRecord& record : corpus) {
    CHECK_FALSE(record.parts.empty());
    // Uniform padding: every line of every art shares the record width.
    const auto full = CharGrid::from_text(record.full_art);
    CHECK(full.is_padded());
    for (const auto& [label, art] : record.parts) {
      const auto part = CharGrid::from_text(art);
      CHECK(part.is_padded());
      CHECK(part.width() == full.width());
      CHECK(part.height() == full.height());
    }
  }
}

TEST_CASE("mask mismatches and unknown parts fail loading") {
  TempCorpus corpus("bad");
  corpus.write("bad_mask.json",
               R"({"id":"bad","class":"dog","full":"xy\nzw","parts":{"head":" q"}})");
  CHECK_THROWS_AS((void)load_corpus(corpus.dir.string()), Error);

  TempCorpus corpus2("unknown");
  corpus2.write("unknown_part.json",
                R"json({"id":"u","class":"dog","full":"xy","parts":{"wheel(s)":"x "}})json");
  CHECK_THROWS_AS((void)load_corpus(corpus2.dir.string()), Error);

  // "other" may never label a mask, even where it is a legal choice.
  TempCorpus corpus3("other");
  corpus3.write("other.json",
                R"({"id":"o","class":"car","full":"xy","parts":{"other":"x "}})");
  CHECK_THROWS_AS((void)load_corpus(corpus3.dir.string()), Error);
}

TEST_CASE("a record with no parts is valid and yields no trials") {
  TempCorpus corpus("empty");
  corpus.write("noparts.json", R"({"id":"n","class":"cat","full":"meow","parts":{}})");
  const auto records = load_corpus(corpus.dir.string());
  REQUIRE(records.size() == 1);
  CHECK(records[0].parts.empty());
}

TEST_CASE("vocabularies gate the distractor pool") {
  CHECK(vocabulary_for("car").includes_other);
  CHECK(vocabulary_for("airplane").includes_other);
  CHECK_FALSE(vocabulary_for("dog").includes_other);
  CHECK_THROWS_AS((void)vocabulary_for("submarine"), Error);
  CHECK(object_display_name("airplane") == "an airplane");
  CHECK(object_display_name("dog") == "a dog");
}

TEST_CASE("part trials offer the correct label among three feasible choices") {
  const ExemplarSet exemplars = ExemplarSet::from_json_file(kExemplarsPath);
  const std::vector<ArtRecord> corpus = load_corpus(kCorpusDir);
  const ClassVocabulary& vocab = vocabulary_for(corpus[0].object_class);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomStream rng(seed);
    const PartTrial trial = build_part_trial(corpus[0], corpus[0].parts.begin()->first, vocab,
                                             exemplars, rng);
    int correct_count = 0;
    std::set<std::string> seen;
    for (const TrialChoice& choice : trial.choices) {
      const bool in_vocab = std::find(vocab.parts.begin(), vocab.parts.end(), choice.text) !=
                            vocab.parts.end();
      REQUIRE(in_vocab);
      seen.insert(choice.text);
      if (choice.text == trial.part_label) {
        ++correct_count;
        REQUIRE(choice.label == trial.correct_label);
      }
    }
    REQUIRE(correct_count == 1);
    REQUIRE(seen.size() == 3);
  }
}

TEST_CASE("dogs never see the other option") {
  const ExemplarSet exemplars = ExemplarSet::from_json_file(kExemplarsPath);
  TempCorpus corpus("dog");
  corpus.write("dog.json",
               R"({"id":"d1","class":"dog","full":"woof\nwoof","parts":{"head":"woof"}})");
  const std::vector<ArtRecord> records = load_corpus(corpus.dir.string());
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    RandomStream rng(seed);
    const PartTrial trial =
        build_part_trial(records[0], "head", vocabulary_for("dog"), exemplars, rng);
    for (const TrialChoice& choice : trial.choices) {
      REQUIRE(choice.text != "other");
    }
  }
}

TEST_CASE("choice orderings cover all six permutations uniformly") {
  const ExemplarSet exemplars = ExemplarSet::from_json_file(kExemplarsPath);
  const std::vector<ArtRecord> corpus = load_corpus(kCorpusDir);
  const ArtRecord& record = corpus[0];
  const ClassVocabulary& vocab = vocabulary_for(record.object_class);
  const std::string part = record.parts.begin()->first;

  std::map<std::string, int> orders;
  const int runs = 10000;
  for (int i = 0; i < runs; ++i) {
    RandomStream rng(static_cast<std::uint64_t>(i) + 999);
    const PartTrial trial = build_part_trial(record, part, vocab, exemplars, rng);
    std::string key;
    for (const TrialChoice& choice : trial.choices) key += choice.text + ";";
    ++orders[key];
  }
  // With 4 feasible labels there are 3 distractor pairs x 6 orders; the
  // correct label's position must still be uniform over A/B/C.
  std::map<char, int> label_counts;
  for (int i = 0; i < runs; ++i) {
    RandomStream rng(static_cast<std::uint64_t>(i) + 999);
    ++label_counts[build_part_trial(record, part, vocab, exemplars, rng).correct_label];
  }
  for (char label : {'A', 'B', 'C'}) {
    const double freq = static_cast<double>(label_counts[label]) / runs;
    CHECK(freq > 1.0 / 3.0 - 0.02);
    CHECK(freq < 1.0 / 3.0 + 0.02);
  }
}

TEST_CASE("exemplar art may not equal the queried art") {
  const ExemplarSet exemplars = ExemplarSet::from_json_file(kExemplarsPath);
  TempCorpus corpus("clash");
  // Re-use exemplar five's art as a corpus record; the trial must refuse it.
  std::string full = exemplars.exemplars[4].full_art;
  std::string escaped;
  for (char c : full) {
    if (c == '\\') escaped += "\\\\";
    else if (c == '"') escaped += "\\\"";
    else if (c == '\n') escaped += "\\n";
    else escaped += c;
  }
  corpus.write("clash.json",
               std::string(R"({"id":"c","class":"dog","full":")") + escaped +
                   R"(","parts":{"head":""}})");
  const auto records = load_corpus(corpus.dir.string());
  RandomStream rng(1);
  CHECK_THROWS_AS((void)build_part_trial(records[0], "head", vocabulary_for("dog"), exemplars,
                                         rng),
                  Error);
}

TEST_CASE("part answers key on question six") {
  CHECK(extract_part_answer("(5) ...\n(6) The answer is Choice C").label == 'C');
  CHECK(extract_part_answer("6) choice a").label == 'A');
  CHECK(extract_part_answer("Choice B is my answer").label == 'B');
  CHECK(extract_part_answer("no answer at all").flagged());
  // A (4) sub-answer must not shadow the (6) answer.
  CHECK(extract_part_answer("(4) characters for Choice A\n(6) Choice B").label == 'B');
}

TEST_CASE("exemplar file must hold exactly six entries in order") {
  const ExemplarSet exemplars = ExemplarSet::from_json_file(kExemplarsPath);
  // Slot five is the dog / back-leg example with four choices.
  CHECK(exemplars.exemplars[4].object_name == "a dog");
  CHECK(exemplars.exemplars[4].choices.size() == 4);
  CHECK(exemplars.exemplars[4].expected_answer == 'B');
  CHECK(exemplars.exemplars[0].choices.size() == 4);   // stick-person, body
  CHECK(exemplars.exemplars[1].choices.size() == 2);   // car, wheels
  CHECK(exemplars.exemplars[2].choices.size() == 4);   // cat, tail
  CHECK(exemplars.exemplars[3].choices.size() == 3);   // bird, head
  CHECK(exemplars.exemplars[5].choices.size() == 3);   // airplane, wings
}

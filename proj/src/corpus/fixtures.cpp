// SPDX-License-Identifier: Apache-2.0
#include <array>
#include <string>

#include "loraseq/corpus.hpp"
#include "loraseq/error.hpp"

namespace loraseq::corpus {

namespace {

struct LexEntry {
  const char* form;
  const char* upos;
};

// Closed lexicon; each form always carries the same tag.
constexpr std::array<LexEntry, 40> kLexicon{{
    {"bata", "NOUN"},     {"aso", "NOUN"},     {"bahay", "NOUN"},    {"guro", "NOUN"},
    {"lungsod", "NOUN"},  {"pagkain", "NOUN"}, {"ilog", "NOUN"},     {"libro", "NOUN"},
    {"kumain", "VERB"},   {"tumakbo", "VERB"}, {"bumili", "VERB"},   {"nagluto", "VERB"},
    {"sumulat", "VERB"},  {"naglaro", "VERB"}, {"uminom", "VERB"},   {"maganda", "ADJ"},
    {"malaki", "ADJ"},    {"maliit", "ADJ"},   {"masaya", "ADJ"},    {"mabilis", "ADJ"},
    {"sa", "ADP"},        {"para", "ADP"},     {"mula", "ADP"},      {"ako", "PRON"},
    {"siya", "PRON"},     {"kami", "PRON"},    {"sila", "PRON"},     {"ang", "DET"},
    {"ng", "DET"},        {"mga", "DET"},      {"kahapon", "ADV"},   {"bukas", "ADV"},
    {"ngayon", "ADV"},    {"agad", "ADV"},     {"at", "CCONJ"},      {"pero", "CCONJ"},
    {"hindi", "PART"},    {"na", "PART"},      {"Luzon", "PROPN"},   {"Mindanao", "PROPN"},
}};

const char* deprel_for(std::string_view upos) {
  if (upos == "NOUN") return "obj";
  if (upos == "VERB") return "ccomp";
  if (upos == "ADJ") return "amod";
  if (upos == "ADP") return "case";
  if (upos == "PRON") return "nsubj";
  if (upos == "DET") return "det";
  if (upos == "ADV") return "advmod";
  if (upos == "CCONJ") return "cc";
  if (upos == "PART") return "mark";
  return "flat";
}

struct Entity {
  const char* label;
  std::array<const char*, 3> words;
  std::size_t length;
};

constexpr std::array<Entity, 12> kGazetteer{{
    {"PER", {"Juan", "dela", "Cruz"}, 3},
    {"PER", {"Maria", "Clara", nullptr}, 2},
    {"PER", {"Jose", "Rizal", nullptr}, 2},
    {"PER", {"Andres", "Bonifacio", nullptr}, 2},
    {"LOC", {"Maynila", nullptr, nullptr}, 1},
    {"LOC", {"Quezon", "City", nullptr}, 2},
    {"LOC", {"Cebu", nullptr, nullptr}, 1},
    {"LOC", {"Davao", nullptr, nullptr}, 1},
    {"ORG", {"DOH", nullptr, nullptr}, 1},
    {"ORG", {"Senado", nullptr, nullptr}, 1},
    {"ORG", {"Kongreso", "ng", "Pilipinas"}, 3},
    {"ORG", {"PAGASA", nullptr, nullptr}, 1},
}};

void require_size(std::size_t size) {
  if (size < 1) throw ConfigError("fixture size must be at least 1");
}

std::vector<std::size_t> random_words(SeededRng& rng, std::size_t min_len, std::size_t max_len) {
  const std::size_t len = min_len + static_cast<std::size_t>(rng.below(max_len - min_len + 1));
  std::vector<std::size_t> words(len);
  for (auto& w : words) w = static_cast<std::size_t>(rng.below(kLexicon.size()));
  return words;
}

std::string sentence_id(std::string_view prefix, std::size_t i) {
  return std::string(prefix) + "-" + std::to_string(i + 1);
}

}  // namespace

std::vector<Sentence> make_tagging_sentences(std::size_t size, std::uint64_t seed) {
  require_size(size);
  SeededRng rng(seed);
  std::vector<Sentence> out;
  for (std::size_t s = 0; s < size; ++s) {
    Sentence sent;
    sent.id = sentence_id("tag", s);
    for (std::size_t w : random_words(rng, 3, 10)) {
      Token t;
      t.form = kLexicon[w].form;
      t.upos = kLexicon[w].upos;
      sent.tokens.push_back(std::move(t));
    }
    out.push_back(std::move(sent));
  }
  return out;
}

std::vector<Sentence> make_parsing_sentences(std::size_t size, std::uint64_t seed) {
  require_size(size);
  SeededRng rng(seed);
  std::vector<Sentence> out;
  for (std::size_t s = 0; s < size; ++s) {
    Sentence sent;
    sent.id = sentence_id("dep", s);
    const auto words = random_words(rng, 3, 10);
    for (std::size_t i = 0; i < words.size(); ++i) {
      Token t;
      t.form = kLexicon[words[i]].form;
      t.upos = kLexicon[words[i]].upos;
      t.head = i;  // 1-based index of the previous token; 0 (ROOT) for the first
      t.deprel = i == 0 ? "root" : deprel_for(*t.upos);
      sent.tokens.push_back(std::move(t));
    }
    out.push_back(std::move(sent));
  }
  return out;
}

std::vector<Sentence> make_ner_sentences(std::size_t size, std::uint64_t seed) {
  require_size(size);
  SeededRng rng(seed);
  std::vector<Sentence> out;
  for (std::size_t s = 0; s < size; ++s) {
    Sentence sent;
    const auto filler = random_words(rng, 3, 7);
    const std::size_t n_entities = 1 + static_cast<std::size_t>(rng.below(2));
    std::vector<std::size_t> slots;
    for (std::size_t e = 0; e < n_entities; ++e) slots.push_back(rng.below(filler.size() + 1));
    for (std::size_t pos = 0; pos <= filler.size(); ++pos) {
      for (std::size_t slot : slots) {
        if (slot != pos) continue;
        const Entity& ent = kGazetteer[rng.below(kGazetteer.size())];
        for (std::size_t k = 0; k < ent.length; ++k) {
          Token t;
          t.form = ent.words[k];
          t.iob = std::string(k == 0 ? "B-" : "I-") + ent.label;
          sent.tokens.push_back(std::move(t));
        }
        // Keep adjacent entities apart so their spans stay distinguishable.
        Token sep;
        sep.form = "at";
        sep.iob = "O";
        sent.tokens.push_back(std::move(sep));
      }
      if (pos < filler.size()) {
        Token t;
        t.form = kLexicon[filler[pos]].form;
        t.iob = "O";
        sent.tokens.push_back(std::move(t));
      }
    }
    out.push_back(std::move(sent));
  }
  return out;
}

std::vector<SummaryPair> make_summary_pairs(std::size_t size, std::uint64_t seed) {
  require_size(size);
  SeededRng rng(seed);
  std::vector<SummaryPair> out;
  for (std::size_t p = 0; p < size; ++p) {
    // The topic noun recurs in the lead sentence, which also serves as the
    // reference summary.
    const char* topic = kLexicon[rng.below(8)].form;
    const std::size_t n_sent = 3 + static_cast<std::size_t>(rng.below(3));
    std::string source;
    std::string reference;
    for (std::size_t s = 0; s < n_sent; ++s) {
      std::string sentence;
      const auto words = random_words(rng, 4, 8);
      for (std::size_t i = 0; i < words.size(); ++i) {
        if (!sentence.empty()) sentence += ' ';
        if (s == 0 && i % 2 == 0) {
          sentence += topic;
          sentence += ' ';
        }
        sentence += kLexicon[words[i]].form;
      }
      sentence += '.';
      if (s == 0) reference = sentence;
      if (!source.empty()) source += ' ';
      source += sentence;
    }
    out.push_back({source, reference, std::nullopt});
  }
  return out;
}

std::optional<FixtureKind> parse_fixture_kind(std::string_view name) {
  if (name == "tagging") return FixtureKind::tagging;
  if (name == "parsing") return FixtureKind::parsing;
  if (name == "ner") return FixtureKind::ner;
  if (name == "summary") return FixtureKind::summary;
  return std::nullopt;
}

std::string_view fixture_kind_name(FixtureKind kind) {
  switch (kind) {
    case FixtureKind::tagging: return "tagging";
    case FixtureKind::parsing: return "parsing";
    case FixtureKind::ner: return "ner";
    case FixtureKind::summary: return "summary";
  }
  return "unknown";
}

std::string_view fixture_file_name(FixtureKind kind) {
  switch (kind) {
    case FixtureKind::tagging: return "tagging.conllu";
    case FixtureKind::parsing: return "parsing.conllu";
    case FixtureKind::ner: return "ner.iob";
    case FixtureKind::summary: return "summary.jsonl";
  }
  return "fixture";
}

std::filesystem::path make_fixture(FixtureKind kind, std::size_t size, std::uint64_t seed,
                                   const std::filesystem::path& out_dir) {
  require_size(size);
  std::string contents;
  switch (kind) {
    case FixtureKind::tagging: contents = write_conllu(make_tagging_sentences(size, seed)); break;
    case FixtureKind::parsing: contents = write_conllu(make_parsing_sentences(size, seed)); break;
    case FixtureKind::ner: contents = write_iob(make_ner_sentences(size, seed)); break;
    case FixtureKind::summary: contents = render_summary_pairs(make_summary_pairs(size, seed)); break;
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  const auto path = out_dir / fixture_file_name(kind);
  write_file(path, contents);
  return path;
}

}  // namespace loraseq::corpus

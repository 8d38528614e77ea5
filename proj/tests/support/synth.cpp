#include "synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "stylo/csv.hpp"
#include "stylo/error.hpp"
#include "stylo/rng.hpp"

namespace synth {

namespace {

namespace fs = std::filesystem;

enum class Gender { M, F, N };

struct Noun {
  const char* word;
  Gender gender;
};

// One shared noun list; authors see different windows of it.
const Noun kNouns[] = {
    {"Hund", Gender::M},      {"Katze", Gender::F},   {"Haus", Gender::N},
    {"Wald", Gender::M},      {"Vogel", Gender::M},   {"Maus", Gender::F},
    {"Pferd", Gender::N},     {"Wolf", Gender::M},    {"Fuchs", Gender::M},
    {"Rabe", Gender::M},      {"Eule", Gender::F},    {"Ente", Gender::F},
    {"König", Gender::M},     {"Königin", Gender::F}, {"Prinz", Gender::M},
    {"Hexe", Gender::F},      {"Zwerg", Gender::M},   {"Riese", Gender::M},
    {"Schloss", Gender::N},   {"Turm", Gender::M},    {"Brücke", Gender::F},
    {"Burg", Gender::F},      {"Mann", Gender::M},    {"Frau", Gender::F},
    {"Kind", Gender::N},      {"Mutter", Gender::F},  {"Vater", Gender::M},
    {"Bruder", Gender::M},    {"Schwester", Gender::F}, {"Freund", Gender::M},
    {"Nachbar", Gender::M},   {"Gast", Gender::M},    {"Bauer", Gender::M},
    {"Berg", Gender::M},      {"Tal", Gender::N},     {"Fluss", Gender::M},
    {"Bach", Gender::M},      {"See", Gender::M},     {"Insel", Gender::F},
    {"Wiese", Gender::F},     {"Feld", Gender::N},    {"Garten", Gender::M},
    {"Blume", Gender::F},     {"Stein", Gender::M},   {"Weg", Gender::M},
    {"Dorf", Gender::N},      {"Stadt", Gender::F},   {"Markt", Gender::M},
    {"Himmel", Gender::M},    {"Sonne", Gender::F},   {"Mond", Gender::M},
    {"Stern", Gender::M},     {"Wolke", Gender::F},   {"Wind", Gender::M},
    {"Feuer", Gender::N},     {"Licht", Gender::N},   {"Schatten", Gender::M},
    {"Abend", Gender::M},     {"Nacht", Gender::F},   {"Tag", Gender::M},
    {"Jahr", Gender::N},      {"Stunde", Gender::F},  {"Zeit", Gender::F},
    {"Tür", Gender::F},       {"Fenster", Gender::N}, {"Dach", Gender::N},
    {"Zimmer", Gender::N},    {"Keller", Gender::M},  {"Hof", Gender::M},
    {"Tisch", Gender::M},     {"Stuhl", Gender::M},   {"Bett", Gender::N},
    {"Kerze", Gender::F},     {"Brot", Gender::N},    {"Wasser", Gender::N},
    {"Apfel", Gender::M},     {"Gold", Gender::N},    {"Holz", Gender::N},
    {"Korb", Gender::M},      {"Kleid", Gender::N},   {"Mantel", Gender::M},
    {"Ring", Gender::M},      {"Krone", Gender::F},   {"Schwert", Gender::N},
    {"Stimme", Gender::F},    {"Lied", Gender::N},    {"Traum", Gender::M},
    {"Glück", Gender::N},     {"Mut", Gender::M},     {"Freude", Gender::F},
    {"Herz", Gender::N},      {"Hand", Gender::F},    {"Auge", Gender::N},
    {"System", Gender::N},    {"Rechner", Gender::M}, {"Programm", Gender::N},
    {"Maschine", Gender::F},  {"Motor", Gender::M},   {"Schalter", Gender::M},
    {"Sensor", Gender::M},    {"Signal", Gender::N},  {"Wert", Gender::M},
    {"Zahl", Gender::F},      {"Messung", Gender::F}, {"Einheit", Gender::F},
    {"Methode", Gender::F},   {"Modell", Gender::N},  {"Struktur", Gender::F},
    {"Funktion", Gender::F},  {"Prozess", Gender::M}, {"Energie", Gender::F},
    {"Spannung", Gender::F},  {"Strom", Gender::M},   {"Druck", Gender::M},
    {"Temperatur", Gender::F}, {"Masse", Gender::F},  {"Kraft", Gender::F},
    {"Leistung", Gender::F},  {"Frequenz", Gender::F}, {"Tabelle", Gender::F},
    {"Formel", Gender::F},    {"Regel", Gender::F},   {"Fehler", Gender::M},
    {"Versuch", Gender::M},   {"Anlage", Gender::F},  {"Werkzeug", Gender::N},
    {"Leitung", Gender::F},   {"Platte", Gender::F},  {"Rohr", Gender::N},
};
constexpr std::size_t kNounCount = sizeof(kNouns) / sizeof(kNouns[0]);

struct Verb {
  const char* sg;  // past singular: "sah"
  const char* pl;  // past plural: "sahen"
};

const Verb kVerbs[] = {
    {"sah", "sahen"},         {"ging", "gingen"},     {"kam", "kamen"},
    {"lief", "liefen"},       {"sprach", "sprachen"}, {"rief", "riefen"},
    {"sang", "sangen"},       {"stand", "standen"},   {"saß", "saßen"},
    {"lag", "lagen"},         {"fiel", "fielen"},     {"flog", "flogen"},
    {"trug", "trugen"},       {"hielt", "hielten"},   {"aß", "aßen"},
    {"trank", "tranken"},     {"las", "lasen"},       {"schrieb", "schrieben"},
    {"schwamm", "schwammen"}, {"sprang", "sprangen"}, {"stieg", "stiegen"},
    {"traf", "trafen"},       {"fing", "fingen"},     {"wuchs", "wuchsen"},
    {"zog", "zogen"},         {"fand", "fanden"},     {"blieb", "blieben"},
    {"schlief", "schliefen"}, {"dachte", "dachten"},  {"wusste", "wussten"},
    {"brachte", "brachten"},  {"machte", "machten"},  {"sagte", "sagten"},
    {"fragte", "fragten"},    {"spielte", "spielten"}, {"wohnte", "wohnten"},
    {"lernte", "lernten"},    {"kaufte", "kauften"},  {"suchte", "suchten"},
    {"kochte", "kochten"},    {"baute", "bauten"},    {"malte", "malten"},
    {"zeigte", "zeigten"},    {"hörte", "hörten"},    {"wartete", "warteten"},
};
constexpr std::size_t kVerbCount = sizeof(kVerbs) / sizeof(kVerbs[0]);

const char* kAdjectives[] = {
    "alt",    "jung",    "groß",   "klein",  "gut",    "schön",  "neu",
    "lang",   "kurz",    "hoch",   "tief",   "breit",  "dick",   "dünn",
    "hell",   "dunkel",  "warm",   "kalt",   "nass",   "stark",  "schwach",
    "schnell", "langsam", "laut",  "leise",  "froh",   "müde",   "klug",
    "reich",  "arm",     "voll",   "leer",   "weich",  "hart",   "süß",
    "frisch", "rot",     "blau",   "grün",   "gelb",   "weiß",   "schwarz",
    "wild",   "still",   "ruhig",  "klar",   "fein",   "eng",    "weit",
    "stolz",  "ernst",   "genau",  "stabil", "robust", "kompakt",
};
constexpr std::size_t kAdjectiveCount =
    sizeof(kAdjectives) / sizeof(kAdjectives[0]);

const char* kAdverbs[] = {
    "dann",  "heute",  "dort",   "hier",   "leise",  "langsam", "oft",
    "bald",  "wieder", "immer",  "gestern", "morgen", "sofort", "endlich",
    "kaum",  "fast",   "gern",   "lange",  "schon",  "noch",
};
constexpr std::size_t kAdverbCount = sizeof(kAdverbs) / sizeof(kAdverbs[0]);

const char* kSubordinators[] = {"weil", "dass", "obwohl", "während", "bevor",
                                "nachdem"};
constexpr std::size_t kSubordinatorCount =
    sizeof(kSubordinators) / sizeof(kSubordinators[0]);

const char* kPrepositions[] = {"in", "an", "auf", "vor", "hinter", "neben",
                               "unter", "mit", "bei"};
constexpr std::size_t kPrepositionCount =
    sizeof(kPrepositions) / sizeof(kPrepositions[0]);

const char* nom_article(Gender g) {
  switch (g) {
    case Gender::M: return "Der";
    case Gender::F: return "Die";
    case Gender::N: return "Das";
  }
  return "Der";
}

const char* acc_article(Gender g) {
  switch (g) {
    case Gender::M: return "den";
    case Gender::F: return "die";
    case Gender::N: return "das";
  }
  return "den";
}

const char* dat_article(Gender g) {
  switch (g) {
    case Gender::M: return "dem";
    case Gender::F: return "der";
    case Gender::N: return "dem";
  }
  return "dem";
}

const char* rel_pronoun(Gender g) {
  switch (g) {
    case Gender::M: return "der";
    case Gender::F: return "die";
    case Gender::N: return "das";
  }
  return "der";
}

const char* nom_article_lower(Gender g) {
  switch (g) {
    case Gender::M: return "der";
    case Gender::F: return "die";
    case Gender::N: return "das";
  }
  return "der";
}

// Adjective ending: weak declension is "e" in the nominative after der/die/
// das and "en" otherwise; good enough for generated prose.
std::string adj_nom(const char* stem) { return std::string(stem) + "e"; }
std::string adj_obl(const char* stem) { return std::string(stem) + "en"; }

struct AuthorStyle {
  double base_len = 8.0;   // mean sentence length in words
  double len_sd = 1.5;
  double p_sub = 0.2;      // subordinate clause per sentence
  double p_rel = 0.1;      // relative clause per sentence
  double p_adj = 0.2;      // adjective per noun phrase
  double p_ich = 0.0;      // "Ich ..." sentence openings
  double p_wir = 0.0;      // "Wir ..." sentence openings
  double p_adverb = 0.3;   // adverb filler unit weight
  double p_number = 0.0;   // numeral filler ("bei 20 Grad")
  double zipf_s = 0.8;     // noun draw skew inside the pool
  std::size_t noun_offset = 0;
  std::size_t noun_pool = 24;
  std::size_t n_tokens = 380;  // target document length in words
};

// Low-correlation permutations of the author slot, so no two style axes
// order the five authors of a genre the same way.
constexpr int kPermA[5] = {0, 2, 4, 1, 3};
constexpr int kPermB[5] = {3, 0, 4, 2, 1};
constexpr int kPermC[5] = {1, 4, 0, 3, 2};
constexpr int kPermD[5] = {2, 0, 3, 1, 4};

AuthorStyle author_style(std::size_t genre, std::size_t slot) {
  const double g = static_cast<double>(genre);
  const double i = static_cast<double>(slot);
  AuthorStyle s;
  s.base_len = 5.5 + 1.9 * i + 2.1 * g;
  s.len_sd = 1.0 + 0.3 * i;
  s.p_sub = 0.06 + 0.16 * kPermA[slot] + 0.03 * g;
  s.p_rel = 0.05 + 0.07 * kPermB[slot];
  s.p_adj = 0.05 + 0.09 * kPermC[slot] + 0.04 * (2.0 - g);
  switch (slot % 3) {
    case 0: s.p_ich = 0.30; s.p_wir = 0.04; break;
    case 1: s.p_ich = 0.04; s.p_wir = 0.30; break;
    default: s.p_ich = 0.10; s.p_wir = 0.10; break;
  }
  if (genre == 1) {  // common speech leans on first person
    s.p_ich += 0.08;
    s.p_wir += 0.08;
  }
  s.p_adverb = 0.15 + 0.08 * kPermD[slot];
  s.p_number = genre == 2 ? 0.10 + 0.02 * i : 0.0;
  s.zipf_s = 0.45 + 0.14 * kPermB[slot] + 0.10 * g;
  s.noun_offset = (13 * slot + 41 * genre) % kNounCount;
  s.noun_pool = 15 + 4 * kPermC[slot];
  s.n_tokens = static_cast<std::size_t>(300 + 52 * kPermD[slot] + 38 * (2 - static_cast<int>(genre)));
  return s;
}

class TextGen {
 public:
  TextGen(stylo::Rng& rng, const AuthorStyle& style) : rng_(rng), style_(style) {
    // Zipf weights over the author's noun window.
    double total = 0.0;
    for (std::size_t r = 0; r < style_.noun_pool; ++r) {
      total += 1.0 / std::pow(static_cast<double>(r + 1), style_.zipf_s);
      cumulative_.push_back(total);
    }
  }

  std::string document() {
    std::string text;
    std::size_t words = 0;
    std::size_t since_break = 0;
    while (words < style_.n_tokens) {
      const auto sentence = make_sentence();
      if (!text.empty())
        text += since_break >= 4 && rng_.uniform() < 0.35 ? "\n\n" : " ";
      if (text.empty() || text.back() == '\n') since_break = 0;
      text += sentence.first;
      words += sentence.second;
      ++since_break;
    }
    text += "\n";
    return text;
  }

 private:
  const Noun& draw_noun() {
    const double u = rng_.uniform() * cumulative_.back();
    const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
    const std::size_t rank =
        static_cast<std::size_t>(it - cumulative_.begin());
    return kNouns[(style_.noun_offset + rank) % kNounCount];
  }

  const Verb& draw_verb() { return kVerbs[rng_.below(kVerbCount)]; }

  // Appends "den kleinen Hund" style tokens; returns the noun for possible
  // relative attachment.
  const Noun& push_np(std::vector<std::string>& out, bool nominative) {
    const Noun& noun = draw_noun();
    out.push_back(nominative ? nom_article(noun.gender)
                             : acc_article(noun.gender));
    if (rng_.uniform() < style_.p_adj) {
      const char* adj = kAdjectives[rng_.below(kAdjectiveCount)];
      out.push_back(nominative ? adj_nom(adj) : adj_obl(adj));
    }
    out.push_back(noun.word);
    return noun;
  }

  void push_pp(std::vector<std::string>& out) {
    const Noun& noun = draw_noun();
    out.push_back(kPrepositions[rng_.below(kPrepositionCount)]);
    out.push_back(dat_article(noun.gender));
    if (rng_.uniform() < style_.p_adj)
      out.push_back(adj_obl(kAdjectives[rng_.below(kAdjectiveCount)]));
    out.push_back(noun.word);
  }

  std::pair<std::string, std::size_t> make_sentence() {
    const double drawn = rng_.normal(style_.base_len, style_.len_sd);
    const std::size_t target =
        static_cast<std::size_t>(std::max(3.0, std::round(drawn)));

    std::vector<std::string> tokens;
    const double open = rng_.uniform();
    if (open < style_.p_ich) {
      tokens.push_back("Ich");
      tokens.push_back(draw_verb().sg);
    } else if (open < style_.p_ich + style_.p_wir) {
      tokens.push_back("Wir");
      tokens.push_back(draw_verb().pl);
    } else {
      push_np(tokens, true);
      tokens.push_back(draw_verb().sg);
    }

    bool rel_open = false;  // whether a relative clause can still attach
    const Noun* last_np_noun = nullptr;
    while (tokens.size() < target) {
      const double u = rng_.uniform();
      if (u < style_.p_number) {
        tokens.push_back("bei");
        tokens.push_back(std::to_string(5 + rng_.below(95)));
        tokens.push_back("Grad");
        rel_open = false;
      } else if (u < style_.p_number + style_.p_adverb) {
        tokens.push_back(kAdverbs[rng_.below(kAdverbCount)]);
        rel_open = false;
      } else if (u < style_.p_number + style_.p_adverb + 0.45) {
        const Noun& n = push_np(tokens, false);
        last_np_noun = &n;
        rel_open = true;
      } else {
        push_pp(tokens);
        rel_open = false;
      }
    }

    std::string sentence;
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      if (t > 0) sentence += " ";
      sentence += tokens[t];
    }
    std::size_t words = tokens.size();

    if (rel_open && last_np_noun != nullptr &&
        rng_.uniform() < style_.p_rel) {
      // ", der dort wohnte"
      sentence += ", ";
      sentence += rel_pronoun(last_np_noun->gender);
      sentence += " ";
      sentence += kAdverbs[rng_.below(kAdverbCount)];
      sentence += " ";
      sentence += draw_verb().sg;
      words += 3;
    } else if (rng_.uniform() < style_.p_sub) {
      // ", weil der Hund dort schlief"
      const Noun& n = draw_noun();
      sentence += ", ";
      sentence += kSubordinators[rng_.below(kSubordinatorCount)];
      sentence += " ";
      sentence += nom_article_lower(n.gender);
      sentence += " ";
      sentence += n.word;
      sentence += " ";
      sentence += kAdverbs[rng_.below(kAdverbCount)];
      sentence += " ";
      sentence += draw_verb().sg;
      words += 5;
    }

    sentence += ".";
    return {sentence, words};
  }

  stylo::Rng& rng_;
  const AuthorStyle& style_;
  std::vector<double> cumulative_;
};

const char* kGenreNames[] = {"fairy_tale", "common_speech", "technical_language"};

const char* kAuthorNames[] = {
    "adler", "brandt", "conrad", "dorn",  "ebner",
    "falk",  "gruber", "hartmann", "imhof", "jung",
    "kraft", "lenz",  "moser",  "nolte", "otte",
};

void write_manifest_and_texts(
    const fs::path& root,
    const std::vector<std::array<std::string, 4>>& docs) {
  fs::create_directories(root / "texts");
  std::string manifest = "id,author,genre,title,path\n";
  for (const auto& [id, author, genre, text] : docs) {
    const std::string rel = "texts/" + id + ".txt";
    stylo::write_file(root / rel, text);
    manifest += id + "," + author + "," + genre + "," +
                stylo::csv_field("Probe " + id) + "," + rel + "\n";
  }
  stylo::write_file(root / "manifest.csv", manifest);
}

}  // namespace

std::size_t write_corpus(const fs::path& root, const CorpusParams& params) {
  if (params.genres == 0 || params.genres > 3)
    throw stylo::DataError("synthetic corpus supports 1..3 genres");
  if (params.authors_per_genre == 0 || params.authors_per_genre > 5)
    throw stylo::DataError("synthetic corpus supports 1..5 authors per genre");

  stylo::Rng rng(params.seed);
  std::vector<std::array<std::string, 4>> docs;
  std::size_t serial = 0;
  for (std::size_t g = 0; g < params.genres; ++g) {
    for (std::size_t a = 0; a < params.authors_per_genre; ++a) {
      const AuthorStyle style = author_style(g, a);
      const std::string author = kAuthorNames[g * 5 + a];
      for (std::size_t d = 0; d < params.docs_per_author; ++d) {
        TextGen gen(rng, style);
        char id[16];
        std::snprintf(id, sizeof(id), "s%03zu", ++serial);
        docs.push_back({id, author, kGenreNames[g], gen.document()});
      }
    }
  }
  write_manifest_and_texts(root, docs);
  return docs.size();
}

std::size_t write_share_corpus(const fs::path& root, std::size_t fairy,
                               std::size_t speech, std::size_t technical,
                               std::uint64_t seed) {
  stylo::Rng rng(seed);
  const std::size_t counts[3] = {fairy, speech, technical};
  std::vector<std::array<std::string, 4>> docs;
  std::size_t serial = 0;
  for (std::size_t g = 0; g < 3; ++g) {
    for (std::size_t d = 0; d < counts[g]; ++d) {
      const std::size_t slot = d % 5;
      const AuthorStyle style = author_style(g, slot);
      TextGen gen(rng, style);
      char id[16];
      std::snprintf(id, sizeof(id), "p%03zu", ++serial);
      docs.push_back({id, kAuthorNames[g * 5 + slot], kGenreNames[g],
                      gen.document()});
    }
  }
  write_manifest_and_texts(root, docs);
  return docs.size();
}

}  // namespace synth

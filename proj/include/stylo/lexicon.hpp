#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace stylo {

// External word knowledge: stop words, a reference frequency table and a
// small POS lexicon with suffix fallback. All lookups are case-insensitive;
// the shipped German data files under data/ are user-replaceable.

struct StopWordList {
  std::unordered_set<std::string> words;  // lowercase

  bool contains(std::string_view lower_token) const {
    return words.count(std::string(lower_token)) > 0;
  }
};

// File format: one word per line, '#' starts a comment.
StopWordList load_stop_words(const std::filesystem::path& file);

struct FrequencyTable {
  std::unordered_map<std::string, std::uint64_t> freq;  // lowercase keys
  std::uint64_t f_max = 0;
  int unknown_class = 1;  // class of the rarest entry + 1
};

FrequencyTable make_frequency_table(
    const std::vector<std::pair<std::string, std::uint64_t>>& counts);

// File format: token<TAB>count per line.
FrequencyTable load_frequency_table(const std::filesystem::path& file);

// Leipzig convention: floor(0.5 + log2(f_max / f(token))). Tokens absent from
// the table get unknown_class.
int frequency_class(const FrequencyTable& table, std::string_view token);

enum class WordClass {
  Noun,
  Verb,
  Adjective,
  Pronoun,
  ConjunctionSub,
  ConjunctionCoord,
  Other,
};

const char* word_class_name(WordClass c);
WordClass parse_word_class(std::string_view name);  // throws DataError

struct PosLexicon {
  std::unordered_map<std::string, WordClass> entries;  // lowercase keys
  // Applied in order, first match wins; entries take precedence.
  std::vector<std::pair<std::string, WordClass>> suffix_rules;
};

// entries_file: token<TAB>class; suffix_file: suffix<TAB>class (order kept).
PosLexicon load_pos_lexicon(const std::filesystem::path& entries_file,
                            const std::filesystem::path& suffix_file);

// Exact entry first, then suffix rules, then the German convention that a
// capitalized mid-sentence token is a noun, else Other.
WordClass pos_tag(const PosLexicon& lex, std::string_view token,
                  bool capitalized_midsentence);

struct LexiconSet {
  StopWordList stops;
  FrequencyTable freq;
  PosLexicon pos;
};

}  // namespace stylo

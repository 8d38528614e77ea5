#include "stylo/lexicon.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "stylo/csv.hpp"
#include "stylo/error.hpp"
#include "stylo/unicode.hpp"

namespace stylo {

namespace {

// token<TAB>value lines; empty lines and '#' comment lines skipped.
std::vector<std::pair<std::string, std::string>> read_tsv(
    const std::filesystem::path& file) {
  const std::string content = read_file(file);
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(content);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError(file.string() + ":" + std::to_string(line_no) +
                      ": expected token<TAB>value");
    }
    out.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return out;
}

int class_of(std::uint64_t f_max, std::uint64_t f) {
  return static_cast<int>(std::floor(
      0.5 + std::log2(static_cast<double>(f_max) / static_cast<double>(f))));
}

}  // namespace

StopWordList load_stop_words(const std::filesystem::path& file) {
  const std::string content = read_file(file);
  StopWordList list;
  std::istringstream in(content);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t'))
      line.pop_back();
    std::size_t start = 0;
    while (start < line.size() && (line[start] == ' ' || line[start] == '\t'))
      ++start;
    line.erase(0, start);
    if (line.empty()) continue;
    list.words.insert(fold_lower(line));
  }
  if (list.words.empty()) {
    throw DataError("stop word list is empty: " + file.string());
  }
  return list;
}

FrequencyTable make_frequency_table(
    const std::vector<std::pair<std::string, std::uint64_t>>& counts) {
  FrequencyTable table;
  for (const auto& [token, count] : counts) {
    if (count == 0) throw DataError("frequency count must be >= 1: " + token);
    table.freq[fold_lower(token)] += count;  // case-insensitive merge
  }
  if (table.freq.empty()) throw DataError("frequency table is empty");
  std::uint64_t f_min = std::numeric_limits<std::uint64_t>::max();
  for (const auto& [token, count] : table.freq) {
    table.f_max = std::max(table.f_max, count);
    f_min = std::min(f_min, count);
  }
  table.unknown_class = class_of(table.f_max, f_min) + 1;
  return table;
}

FrequencyTable load_frequency_table(const std::filesystem::path& file) {
  std::vector<std::pair<std::string, std::uint64_t>> counts;
  for (const auto& [token, value] : read_tsv(file)) {
    std::uint64_t count = 0;
    try {
      count = std::stoull(value);
    } catch (const std::exception&) {
      throw DataError(file.string() + ": bad count for token " + token);
    }
    counts.emplace_back(token, count);
  }
  try {
    return make_frequency_table(counts);
  } catch (const DataError& e) {
    throw DataError(file.string() + ": " + e.what());
  }
}

int frequency_class(const FrequencyTable& table, std::string_view token) {
  const auto it = table.freq.find(fold_lower(token));
  if (it == table.freq.end()) return table.unknown_class;
  return class_of(table.f_max, it->second);
}

const char* word_class_name(WordClass c) {
  switch (c) {
    case WordClass::Noun: return "noun";
    case WordClass::Verb: return "verb";
    case WordClass::Adjective: return "adjective";
    case WordClass::Pronoun: return "pronoun";
    case WordClass::ConjunctionSub: return "conjunction_sub";
    case WordClass::ConjunctionCoord: return "conjunction_coord";
    case WordClass::Other: return "other";
  }
  return "other";
}

WordClass parse_word_class(std::string_view name) {
  if (name == "noun") return WordClass::Noun;
  if (name == "verb") return WordClass::Verb;
  if (name == "adjective") return WordClass::Adjective;
  if (name == "pronoun") return WordClass::Pronoun;
  if (name == "conjunction_sub") return WordClass::ConjunctionSub;
  if (name == "conjunction_coord") return WordClass::ConjunctionCoord;
  if (name == "other") return WordClass::Other;
  throw DataError("unknown word class: " + std::string(name));
}

PosLexicon load_pos_lexicon(const std::filesystem::path& entries_file,
                            const std::filesystem::path& suffix_file) {
  PosLexicon lex;
  for (const auto& [token, cls] : read_tsv(entries_file)) {
    lex.entries[fold_lower(token)] = parse_word_class(cls);
  }
  for (const auto& [suffix, cls] : read_tsv(suffix_file)) {
    lex.suffix_rules.emplace_back(fold_lower(suffix), parse_word_class(cls));
  }
  return lex;
}

WordClass pos_tag(const PosLexicon& lex, std::string_view token,
                  bool capitalized_midsentence) {
  const std::string lower = fold_lower(token);
  const auto it = lex.entries.find(lower);
  if (it != lex.entries.end()) return it->second;
  for (const auto& [suffix, cls] : lex.suffix_rules) {
    if (lower.size() >= suffix.size() &&
        lower.compare(lower.size() - suffix.size(), suffix.size(), suffix) == 0) {
      return cls;
    }
  }
  if (capitalized_midsentence) return WordClass::Noun;
  return WordClass::Other;
}

}  // namespace stylo

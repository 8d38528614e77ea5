#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "stylo/corpus.hpp"
#include "stylo/lexicon.hpp"

namespace stylo {

// The per-document attribute vector. Word types are counted case-folded so
// sentence-initial capitalization does not split a type.
struct FeatureVector {
  std::uint64_t word_count = 0;
  std::uint64_t distinct_word_count = 0;
  std::uint64_t pronoun_i_count = 0;   // "ich", case-insensitive
  std::uint64_t pronoun_we_count = 0;  // "wir", case-insensitive
  std::string top_word;                // most frequent type, ties lexicographic
  std::uint64_t top_word_freq = 0;
  double avg_word_length = 0.0;        // code points per token
  double mean_sentence_len = 0.0;      // tokens per sentence
  double var_sentence_len = 0.0;       // population variance
  double yules_k = 0.0;
  std::uint64_t hapax_count = 0;
  double hypotaxis_ratio = 0.0;
  double parataxis_ratio = 0.0;
  double type_token_ratio = 0.0;
  double entropy = 0.0;                // bits
  std::uint64_t entropy_window = 0;    // tokens actually used
  std::uint64_t stopword_hapax_count = 0;
  std::string top_stopword;
  std::uint64_t top_stopword_freq = 0;
  double top_stopword_pct = 0.0;
  double mean_freq_class = 0.0;
  std::uint64_t adjective_count = 0;
  std::uint64_t verb_count = 0;
  std::uint64_t noun_count = 0;
};

inline constexpr std::uint64_t kDefaultEntropyWindow = 1000;

// K = 10^4 * (sum_i i^2 * V_i - N) / N^2 over the case-folded frequency
// spectrum; 0 when every type is a hapax. Throws DataError on empty input.
double yules_k(const TokenStream& stream);

// Shannon entropy in bits over the first min(window, N) case-folded tokens.
// Returns (H, tokens used). Throws DataError on empty input.
std::pair<double, std::uint64_t> entropy(const TokenStream& stream,
                                         std::uint64_t window = kDefaultEntropyWindow);

// Number of case-folded types occurring exactly once.
std::uint64_t hapax_count(const TokenStream& stream);

// (mean, population variance) of tokens per sentence. Throws DataError when
// there are no sentences.
std::pair<double, double> sentence_stats(const TokenStream& stream);

// A sentence is hypotactic when it contains a subordinating conjunction or a
// comma followed within two tokens by der/die/das/welche(r/s). Returns
// (hypotaxis share, parataxis share); the two sum to 1.
std::pair<double, double> hypotaxis_ratio(const TokenStream& stream,
                                          const PosLexicon& lex);

struct StopwordStats {
  std::uint64_t hapax_count = 0;  // stop word types occurring exactly once
  std::string top;                // ties broken lexicographically
  std::uint64_t top_freq = 0;
  double top_pct = 0.0;           // top_freq / word_count
};

StopwordStats stopword_stats(const TokenStream& stream, const StopWordList& stops);

// Fills every FeatureVector field. Pure; throws DataError on an empty stream.
FeatureVector extract_features(const TokenStream& stream, const LexiconSet& lexica,
                               std::uint64_t entropy_window = kDefaultEntropyWindow);

// Field names in CSV column order (24 fields, two of them strings).
const std::vector<std::string>& feature_field_names();

// The 22 numeric fields, in feature_field_names() order.
const std::vector<std::string>& numeric_attribute_names();

std::vector<double> numeric_row(const FeatureVector& fv);

struct FeatureRow {
  std::string id;
  std::string author;
  std::string genre;
  FeatureVector features;
};

std::vector<std::vector<double>> numeric_matrix(const std::vector<FeatureRow>& rows);

// CSV with header id + feature_field_names(); reals use 9 significant digits.
std::string feature_csv(const std::vector<FeatureRow>& rows);
void write_feature_csv(const std::filesystem::path& file,
                       const std::vector<FeatureRow>& rows);

}  // namespace stylo

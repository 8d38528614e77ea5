#include "stylo/features.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "stylo/csv.hpp"
#include "stylo/error.hpp"
#include "stylo/unicode.hpp"

namespace stylo {

namespace {

// Ordered map so tie-breaks and float summation order are reproducible.
std::map<std::string, std::uint64_t> folded_counts(const TokenStream& stream,
                                                   std::size_t limit) {
  std::map<std::string, std::uint64_t> counts;
  const std::size_t n = std::min(limit, stream.tokens.size());
  for (std::size_t i = 0; i < n; ++i) counts[fold_lower(stream.tokens[i])]++;
  return counts;
}

bool capitalized_midsentence(const TokenStream& stream, std::size_t index,
                             std::size_t sentence_begin) {
  if (index == sentence_begin) return false;
  std::size_t pos = 0;
  return is_upper(decode_utf8(stream.tokens[index], pos));
}

bool is_relative_pronoun(const std::string& lower) {
  return lower == "der" || lower == "die" || lower == "das" ||
         lower == "welche" || lower == "welcher" || lower == "welches";
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

double yules_k(const TokenStream& stream) {
  if (stream.empty()) throw DataError("empty document");
  const auto counts = folded_counts(stream, stream.size());
  const double n = static_cast<double>(stream.size());
  std::uint64_t sum_sq = 0;
  for (const auto& [token, f] : counts) sum_sq += f * f;
  return 1e4 * (static_cast<double>(sum_sq) - n) / (n * n);
}

std::pair<double, std::uint64_t> entropy(const TokenStream& stream,
                                         std::uint64_t window) {
  if (stream.empty()) throw DataError("empty document");
  if (window == 0) throw DataError("entropy window must be >= 1");
  const std::uint64_t used =
      std::min<std::uint64_t>(window, stream.size());
  const auto counts = folded_counts(stream, used);
  double h = 0.0;
  for (const auto& [token, f] : counts) {
    const double p = static_cast<double>(f) / static_cast<double>(used);
    h -= p * std::log2(p);
  }
  return {h, used};
}

std::uint64_t hapax_count(const TokenStream& stream) {
  const auto counts = folded_counts(stream, stream.size());
  std::uint64_t hapax = 0;
  for (const auto& [token, f] : counts)
    if (f == 1) ++hapax;
  return hapax;
}

std::pair<double, double> sentence_stats(const TokenStream& stream) {
  if (stream.sentences.empty()) throw DataError("document has no sentences");
  const double n = static_cast<double>(stream.sentences.size());
  std::uint64_t sum = 0, sum_sq = 0;
  for (const auto& [begin, end] : stream.sentences) {
    const std::uint64_t len = end - begin;
    sum += len;
    sum_sq += len * len;
  }
  const double mean = static_cast<double>(sum) / n;
  const double variance = static_cast<double>(sum_sq) / n - mean * mean;
  return {mean, variance};
}

std::pair<double, double> hypotaxis_ratio(const TokenStream& stream,
                                          const PosLexicon& lex) {
  if (stream.sentences.empty()) throw DataError("document has no sentences");
  std::size_t hypotactic = 0;
  for (const auto& [begin, end] : stream.sentences) {
    bool hit = false;
    for (std::size_t i = begin; i < end && !hit; ++i) {
      if (pos_tag(lex, stream.tokens[i],
                  capitalized_midsentence(stream, i, begin)) ==
          WordClass::ConjunctionSub) {
        hit = true;
        break;
      }
      // Relative clause: comma followed within two tokens by a relative
      // pronoun.
      if (stream.comma_before[i]) {
        if (is_relative_pronoun(fold_lower(stream.tokens[i]))) hit = true;
        else if (i + 1 < end && is_relative_pronoun(fold_lower(stream.tokens[i + 1])))
          hit = true;
      }
    }
    if (hit) ++hypotactic;
  }
  const double hypo =
      static_cast<double>(hypotactic) / static_cast<double>(stream.sentences.size());
  return {hypo, 1.0 - hypo};
}

StopwordStats stopword_stats(const TokenStream& stream, const StopWordList& stops) {
  std::map<std::string, std::uint64_t> counts;
  for (const auto& token : stream.tokens) {
    const std::string lower = fold_lower(token);
    if (stops.contains(lower)) counts[lower]++;
  }
  StopwordStats stats;
  for (const auto& [word, f] : counts) {
    if (f == 1) ++stats.hapax_count;
    if (f > stats.top_freq) {  // map order gives the lexicographic tie-break
      stats.top = word;
      stats.top_freq = f;
    }
  }
  if (stats.top_freq > 0 && !stream.empty()) {
    stats.top_pct = static_cast<double>(stats.top_freq) /
                    static_cast<double>(stream.size());
  }
  return stats;
}

FeatureVector extract_features(const TokenStream& stream, const LexiconSet& lexica,
                               std::uint64_t entropy_window) {
  if (stream.empty()) throw DataError("empty document");
  FeatureVector fv;
  fv.word_count = stream.size();

  const auto counts = folded_counts(stream, stream.size());
  fv.distinct_word_count = counts.size();
  for (const auto& [token, f] : counts) {
    if (f == 1) ++fv.hapax_count;
    if (f > fv.top_word_freq) {
      fv.top_word = token;
      fv.top_word_freq = f;
    }
  }
  fv.type_token_ratio = static_cast<double>(fv.distinct_word_count) /
                        static_cast<double>(fv.word_count);

  std::uint64_t total_chars = 0;
  std::uint64_t freq_class_sum = 0;
  for (const auto& token : stream.tokens) {
    total_chars += cp_count(token);
    const std::string lower = fold_lower(token);
    if (lower == "ich") ++fv.pronoun_i_count;
    if (lower == "wir") ++fv.pronoun_we_count;
    freq_class_sum +=
        static_cast<std::uint64_t>(frequency_class(lexica.freq, lower));
  }
  fv.avg_word_length =
      static_cast<double>(total_chars) / static_cast<double>(fv.word_count);
  fv.mean_freq_class =
      static_cast<double>(freq_class_sum) / static_cast<double>(fv.word_count);

  std::tie(fv.mean_sentence_len, fv.var_sentence_len) = sentence_stats(stream);
  fv.yules_k = yules_k(stream);
  std::tie(fv.entropy, fv.entropy_window) = entropy(stream, entropy_window);
  std::tie(fv.hypotaxis_ratio, fv.parataxis_ratio) =
      hypotaxis_ratio(stream, lexica.pos);

  const StopwordStats stops = stopword_stats(stream, lexica.stops);
  fv.stopword_hapax_count = stops.hapax_count;
  fv.top_stopword = stops.top;
  fv.top_stopword_freq = stops.top_freq;
  fv.top_stopword_pct = stops.top_pct;

  for (const auto& [begin, end] : stream.sentences) {
    for (std::size_t i = begin; i < end; ++i) {
      switch (pos_tag(lexica.pos, stream.tokens[i],
                      capitalized_midsentence(stream, i, begin))) {
        case WordClass::Adjective: ++fv.adjective_count; break;
        case WordClass::Verb: ++fv.verb_count; break;
        case WordClass::Noun: ++fv.noun_count; break;
        default: break;
      }
    }
  }
  return fv;
}

const std::vector<std::string>& feature_field_names() {
  static const std::vector<std::string> names = {
      "word_count",       "distinct_word_count", "pronoun_i_count",
      "pronoun_we_count", "top_word",            "top_word_freq",
      "avg_word_length",  "mean_sentence_len",   "var_sentence_len",
      "yules_k",          "hapax_count",         "hypotaxis_ratio",
      "parataxis_ratio",  "type_token_ratio",    "entropy",
      "entropy_window",   "stopword_hapax_count", "top_stopword",
      "top_stopword_freq", "top_stopword_pct",   "mean_freq_class",
      "adjective_count",  "verb_count",          "noun_count"};
  return names;
}

const std::vector<std::string>& numeric_attribute_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& name : feature_field_names())
      if (name != "top_word" && name != "top_stopword") out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<double> numeric_row(const FeatureVector& fv) {
  return {
      static_cast<double>(fv.word_count),
      static_cast<double>(fv.distinct_word_count),
      static_cast<double>(fv.pronoun_i_count),
      static_cast<double>(fv.pronoun_we_count),
      static_cast<double>(fv.top_word_freq),
      fv.avg_word_length,
      fv.mean_sentence_len,
      fv.var_sentence_len,
      fv.yules_k,
      static_cast<double>(fv.hapax_count),
      fv.hypotaxis_ratio,
      fv.parataxis_ratio,
      fv.type_token_ratio,
      fv.entropy,
      static_cast<double>(fv.entropy_window),
      static_cast<double>(fv.stopword_hapax_count),
      static_cast<double>(fv.top_stopword_freq),
      fv.top_stopword_pct,
      fv.mean_freq_class,
      static_cast<double>(fv.adjective_count),
      static_cast<double>(fv.verb_count),
      static_cast<double>(fv.noun_count),
  };
}

std::vector<std::vector<double>> numeric_matrix(const std::vector<FeatureRow>& rows) {
  std::vector<std::vector<double>> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(numeric_row(row.features));
  return out;
}

std::string feature_csv(const std::vector<FeatureRow>& rows) {
  std::ostringstream out;
  out << "id";
  for (const auto& name : feature_field_names()) out << ',' << name;
  out << '\n';
  for (const auto& row : rows) {
    const FeatureVector& fv = row.features;
    out << csv_field(row.id) << ',' << fv.word_count << ','
        << fv.distinct_word_count << ',' << fv.pronoun_i_count << ','
        << fv.pronoun_we_count << ',' << csv_field(fv.top_word) << ','
        << fv.top_word_freq << ',' << format_real(fv.avg_word_length) << ','
        << format_real(fv.mean_sentence_len) << ','
        << format_real(fv.var_sentence_len) << ',' << format_real(fv.yules_k)
        << ',' << fv.hapax_count << ',' << format_real(fv.hypotaxis_ratio)
        << ',' << format_real(fv.parataxis_ratio) << ','
        << format_real(fv.type_token_ratio) << ',' << format_real(fv.entropy)
        << ',' << fv.entropy_window << ',' << fv.stopword_hapax_count << ','
        << csv_field(fv.top_stopword) << ',' << fv.top_stopword_freq << ','
        << format_real(fv.top_stopword_pct) << ','
        << format_real(fv.mean_freq_class) << ',' << fv.adjective_count << ','
        << fv.verb_count << ',' << fv.noun_count << '\n';
  }
  return out.str();
}

void write_feature_csv(const std::filesystem::path& file,
                       const std::vector<FeatureRow>& rows) {
  write_file(file, feature_csv(rows));
}

}  // namespace stylo

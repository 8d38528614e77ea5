#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>

namespace synth {

// Deterministic German-ish corpus generator. Each author gets a distinctive
// mix of sentence length, subordination, adjective density, pronoun habits
// and vocabulary, so the extracted features separate authors.
struct CorpusParams {
  std::size_t genres = 3;  // up to 3: fairy_tale, common_speech, technical_language
  std::size_t authors_per_genre = 5;
  std::size_t docs_per_author = 4;
  std::uint64_t seed = 42;
};

// Writes manifest.csv and texts/ under root; returns the document count.
std::size_t write_corpus(const std::filesystem::path& root,
                         const CorpusParams& params);

// Corpus with exact per-genre document counts (fairy_tale, common_speech,
// technical_language), for share statistics.
std::size_t write_share_corpus(const std::filesystem::path& root,
                               std::size_t fairy, std::size_t speech,
                               std::size_t technical, std::uint64_t seed = 42);

}  // namespace synth

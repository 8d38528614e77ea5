#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stylo {

// One labeled text of a corpus.
struct Document {
  std::string id;
  std::string author;
  std::string genre;
  std::string title;
  std::string text;  // UTF-8
};

// Tokenized, sentence-segmented view of a text.
//
// Tokens are maximal runs of letters/digits; hyphens and apostrophes are kept
// when they sit between word characters ("Peterchen's"). All other punctuation
// is dropped. Sentences are half-open [begin, end) index ranges into tokens;
// they are disjoint, ordered and cover the token sequence without gaps.
struct TokenStream {
  std::vector<std::string> tokens;
  std::vector<std::pair<std::size_t, std::size_t>> sentences;
  // comma_before[i]: a comma occurred between token i-1 and token i.
  std::vector<bool> comma_before;
  std::size_t raw_sentence_count = 0;

  bool empty() const { return tokens.empty(); }
  std::size_t size() const { return tokens.size(); }
};

// Sentence boundaries sit at '.', '!' and '?' and at paragraph breaks (blank
// line). A period only ends a sentence when followed by whitespace plus an
// uppercase letter, or by end of text; that guards abbreviations like "z.B.".
TokenStream tokenize(std::string_view text);

// Reads manifest.csv (header id,author,genre,title,path) under root plus the
// text files it names. Documents come back sorted by id. Throws DataError for
// missing files, non-UTF-8 content, duplicate ids and empty fields.
std::vector<Document> load_corpus(const std::filesystem::path& root);

}  // namespace stylo

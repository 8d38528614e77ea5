#include "stylo/corpus.hpp"

#include <algorithm>
#include <unordered_set>

#include "stylo/csv.hpp"
#include "stylo/error.hpp"
#include "stylo/unicode.hpp"

namespace stylo {

namespace {

bool is_joiner(char32_t cp) {
  return cp == '-' || cp == '\'' || cp == 0x2019;  // hyphen, ', right quote
}

}  // namespace

TokenStream tokenize(std::string_view text) {
  TokenStream ts;
  std::string current;
  bool token_open = false;
  bool token_comma = false;    // comma seen right before the open token
  bool comma_pending = false;  // comma seen since the last token ended
  int newline_run = 0;
  std::size_t sent_start = 0;

  const auto flush_token = [&] {
    if (!token_open) return;
    ts.tokens.push_back(current);
    ts.comma_before.push_back(token_comma);
    current.clear();
    token_open = false;
  };
  const auto close_sentence = [&] {
    if (ts.tokens.size() > sent_start) {
      ts.sentences.emplace_back(sent_start, ts.tokens.size());
      sent_start = ts.tokens.size();
    }
    comma_pending = false;
  };

  std::size_t pos = 0;
  const std::size_t n = text.size();
  while (pos < n) {
    const char32_t cp = decode_utf8(text, pos);

    if (is_word_char(cp)) {
      if (!token_open) {
        token_open = true;
        token_comma = comma_pending;
        comma_pending = false;
      }
      append_utf8(current, cp);
      newline_run = 0;
      continue;
    }

    if (token_open && is_joiner(cp)) {
      std::size_t peek = pos;
      if (peek < n && is_word_char(decode_utf8(text, peek))) {
        append_utf8(current, cp);  // intra-word hyphen/apostrophe
        newline_run = 0;
        continue;
      }
    }

    flush_token();

    if (cp == ',') {
      comma_pending = true;
      newline_run = 0;
      continue;
    }
    if (cp == '!' || cp == '?') {
      close_sentence();
      newline_run = 0;
      continue;
    }
    if (cp == '.') {
      // Boundary only before whitespace + uppercase, or at end of text.
      std::size_t peek = pos;
      bool boundary = peek >= n;
      if (!boundary) {
        const char32_t next = decode_utf8(text, peek);
        if (is_space(next)) {
          boundary = true;  // stays true if only whitespace remains
          while (peek < n) {
            const char32_t ahead = decode_utf8(text, peek);
            if (!is_space(ahead)) {
              boundary = is_upper(ahead);
              break;
            }
          }
        }
      }
      if (boundary) close_sentence();
      newline_run = 0;
      continue;
    }
    if (cp == '\n') {
      if (++newline_run >= 2) close_sentence();  // paragraph break
      continue;
    }
    if (is_space(cp)) continue;  // spaces/tabs keep a newline run alive
    newline_run = 0;             // any other punctuation or symbol
  }

  flush_token();
  close_sentence();
  ts.raw_sentence_count = ts.sentences.size();
  return ts;
}

std::vector<Document> load_corpus(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  if (!fs::exists(root)) {
    throw DataError("corpus root does not exist: " + root.string());
  }
  const fs::path manifest_path = root / "manifest.csv";
  if (!fs::exists(manifest_path)) {
    throw DataError("missing manifest: " + manifest_path.string());
  }

  const auto rows = read_csv(manifest_path);
  if (rows.empty()) return {};

  static const std::vector<std::string> kHeader = {"id", "author", "genre",
                                                   "title", "path"};
  if (rows.front() != kHeader) {
    throw DataError("manifest header must be id,author,genre,title,path: " +
                    manifest_path.string());
  }

  std::vector<Document> docs;
  std::unordered_set<std::string> seen_ids;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != 5) {
      throw DataError("manifest row " + std::to_string(r + 1) + " has " +
                      std::to_string(row.size()) + " fields, expected 5");
    }
    Document doc;
    doc.id = row[0];
    doc.author = row[1];
    doc.genre = row[2];
    doc.title = row[3];
    const std::string& rel_path = row[4];

    if (doc.id.empty() || doc.author.empty() || doc.genre.empty()) {
      throw DataError("manifest row " + std::to_string(r + 1) +
                      ": id, author and genre must be non-empty");
    }
    if (!seen_ids.insert(doc.id).second) {
      throw DataError("duplicate id in manifest: " + doc.id);
    }

    const fs::path file = root / rel_path;
    if (!fs::exists(file)) {
      throw DataError("missing file referenced by manifest: " + rel_path +
                      " (id " + doc.id + ")");
    }
    doc.text = read_file(file);
    if (!valid_utf8(doc.text)) {
      throw DataError("non-UTF-8 content: " + rel_path + " (id " + doc.id + ")");
    }
    if (doc.text.empty()) {
      throw DataError("empty document text: " + rel_path + " (id " + doc.id + ")");
    }
    docs.push_back(std::move(doc));
  }

  std::sort(docs.begin(), docs.end(),
            [](const Document& a, const Document& b) { return a.id < b.id; });
  return docs;
}

}  // namespace stylo

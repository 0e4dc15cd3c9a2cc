#include "ncdlab/textops/distortion.hpp"

#include <algorithm>
#include <vector>

#include "ncdlab/common/error.hpp"
#include "ncdlab/common/rng.hpp"

namespace ncdlab::text {

namespace {
constexpr std::string_view kCharset =
    "!\"#$%&'()+,-./0123456789:;<=>?@ABCDEFGHIJKLMNOPQRSTUVWXYZ[\\]^_`abcdefghijklmnopqrstuvwxyz{|}~";

bool is_asterisk_run(std::string_view tok) {
  return !tok.empty() && std::all_of(tok.begin(), tok.end(), [](char c) { return c == '*'; });
}
}  // namespace

std::string_view random_charset() { return kCharset; }

std::string_view to_string(Substitution s) {
  return s == Substitution::Asterisk ? "asterisk" : "random";
}

std::string_view to_string(Shuffle s) {
  switch (s) {
    case Shuffle::None: return "none";
    case Shuffle::ShuffleAsterisks: return "shuffle-asterisks";
    case Shuffle::ShuffleWords: return "shuffle-words";
    case Shuffle::ShuffleAll: return "shuffle-all";
  }
  return "?";
}

Substitution parse_substitution(std::string_view name) {
  if (name == "asterisk") return Substitution::Asterisk;
  if (name == "random" || name == "random-char") return Substitution::RandomChar;
  throw ValidationError("unknown substitution method '" + std::string(name) + "'");
}

Shuffle parse_shuffle(std::string_view name) {
  if (name == "none") return Shuffle::None;
  if (name == "shuffle-asterisks") return Shuffle::ShuffleAsterisks;
  if (name == "shuffle-words") return Shuffle::ShuffleWords;
  if (name == "shuffle-all") return Shuffle::ShuffleAll;
  throw ValidationError("unknown shuffle mode '" + std::string(name) + "'");
}

void DistortionSpec::validate() const {
  if (!valid())
    throw ValidationError("shuffle mode " + std::string(to_string(shuffle)) +
                          " requires asterisk substitution");
}

DistortedDocument distort(const TokenStream& doc, const RemovalSet& set, Substitution substitution,
                          std::uint64_t seed, std::string doc_id) {
  DistortedDocument out;
  out.doc_id = std::move(doc_id);
  Rng rng(seed);
  for (const auto& tok : doc.tokens()) {
    if (tok.kind == TokenKind::Separator) {
      out.bytes += tok.text;
      continue;
    }
    ++out.words_total;
    if (!set.contains(tok.text)) {
      out.bytes += tok.text;
      continue;
    }
    ++out.words_replaced;
    for (std::size_t i = 0; i < tok.text.size(); ++i) {
      out.bytes.push_back(substitution == Substitution::Asterisk
                              ? '*'
                              : kCharset[rng.below(kCharset.size())]);
    }
  }
  return out;
}

DistortedDocument shuffle_variant(const DistortedDocument& doc, Shuffle mode, std::uint64_t seed) {
  if (mode == Shuffle::None) return doc;

  std::vector<std::string_view> tokens;
  std::string_view text = doc.bytes;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ') ++j;
    if (j > i) tokens.push_back(text.substr(i, j - i));
    i = j;
  }

  Rng rng(seed);
  if (mode == Shuffle::ShuffleAll) {
    rng.shuffle(std::span<std::string_view>(tokens));
  } else {
    const bool move_asterisks = mode == Shuffle::ShuffleAsterisks;
    std::vector<std::size_t> slots;
    std::vector<std::string_view> movable;
    for (std::size_t k = 0; k < tokens.size(); ++k) {
      if (is_asterisk_run(tokens[k]) == move_asterisks) {
        slots.push_back(k);
        movable.push_back(tokens[k]);
      }
    }
    rng.shuffle(std::span<std::string_view>(movable));
    for (std::size_t k = 0; k < slots.size(); ++k) tokens[slots[k]] = movable[k];
  }

  DistortedDocument out{doc.doc_id, {}, doc.words_total, doc.words_replaced};
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    if (k) out.bytes.push_back(' ');
    out.bytes += tokens[k];
  }
  return out;
}

double percentage_substituted(const DistortedDocument& doc) {
  if (doc.words_total == 0)
    throw ValidationError("substitution ratio undefined for a document without words");
  return static_cast<double>(doc.words_replaced) / static_cast<double>(doc.words_total);
}

}  // namespace ncdlab::text

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "ncdlab/textops/frequency_table.hpp"
#include "ncdlab/textops/tokenizer.hpp"

namespace ncdlab::text {

enum class Substitution { Asterisk, RandomChar };

/// Post-substitution reordering applied to asterisk-distorted text.
enum class Shuffle {
  None,
  ShuffleAsterisks,  ///< asterisk strings permuted among asterisk slots
  ShuffleWords,      ///< remaining words permuted among word slots
  ShuffleAll,        ///< every token permuted over every slot
};

std::string_view to_string(Substitution s);
std::string_view to_string(Shuffle s);
Substitution parse_substitution(std::string_view name);
Shuffle parse_shuffle(std::string_view name);

/// Printable ASCII 33..126 without '*'.
std::string_view random_charset();

struct DistortionSpec {
  Selection selection = Selection::MFW;
  Substitution substitution = Substitution::Asterisk;
  Shuffle shuffle = Shuffle::None;
  Level level;
  std::uint64_t seed = 0;

  /// Shuffles are only defined on asterisk-substituted text.
  bool valid() const noexcept {
    return shuffle == Shuffle::None || substitution == Substitution::Asterisk;
  }
  void validate() const;
};

struct DistortedDocument {
  std::string doc_id;
  std::string bytes;
  std::size_t words_total = 0;
  std::size_t words_replaced = 0;
};

/// Replaces every character of each word in `set`. Separators and other
/// words are copied, so the output has the input's length.
DistortedDocument distort(const TokenStream& doc, const RemovalSet& set, Substitution substitution,
                          std::uint64_t seed, std::string doc_id = {});

/// Re-tokenizes on spaces and permutes tokens per `mode`. The output joins
/// tokens with single spaces; Shuffle::None returns the input unchanged.
DistortedDocument shuffle_variant(const DistortedDocument& doc, Shuffle mode, std::uint64_t seed);

/// words_replaced / words_total; ValidationError when the document has no words.
double percentage_substituted(const DistortedDocument& doc);

}  // namespace ncdlab::text

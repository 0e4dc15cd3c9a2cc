#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ncdlab::text {

enum class TokenKind { Word, Separator };

struct Token {
  TokenKind kind;
  std::string text;

  bool operator==(const Token&) const = default;
};

/// How bytes that are not valid UTF-8 are handled before normalization.
enum class DecodePolicy {
  Lossy,   ///< each invalid byte becomes U+FFFD, which normalizes to a space
  Strict,  ///< throw DecodeError naming the byte offset
};

/// A normalized document split into alternating words and space runs.
///
/// Words are non-empty runs of 'a'..'z'; separators are non-empty runs of
/// ' '. Concatenating the token texts gives back the normalized text.
class TokenStream {
 public:
  TokenStream() = default;

  /// Throws ValidationError if the tokens violate the alternation or
  /// character-class invariants.
  explicit TokenStream(std::vector<Token> tokens);

  const std::vector<Token>& tokens() const noexcept { return tokens_; }
  bool empty() const noexcept { return tokens_.empty(); }

  std::string text() const;
  std::size_t word_count() const;
  std::vector<std::string_view> words() const;

 private:
  std::vector<Token> tokens_;
};

/// Lowercases ASCII letters and maps every other code point to one space.
std::string normalize(std::string_view raw, DecodePolicy policy = DecodePolicy::Lossy);

/// Splits already-normalized text. Throws ValidationError on characters
/// outside 'a'..'z' and ' '.
TokenStream tokenize_normalized(std::string_view normalized);

TokenStream normalize_and_tokenize(std::string_view raw,
                                   DecodePolicy policy = DecodePolicy::Lossy);

}  // namespace ncdlab::text

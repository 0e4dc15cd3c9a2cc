#include "ncdlab/textops/tokenizer.hpp"

#include "ncdlab/common/error.hpp"

namespace ncdlab::text {
namespace {

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }

// Length of the valid UTF-8 sequence starting at raw[i], or 0 if invalid.
std::size_t utf8_sequence_length(std::string_view raw, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(raw[i]);
  if (b0 < 0x80) return 1;
  std::size_t len;
  unsigned char lo = 0x80, hi = 0xBF;
  if (b0 >= 0xC2 && b0 <= 0xDF) {
    len = 2;
  } else if (b0 >= 0xE0 && b0 <= 0xEF) {
    len = 3;
    if (b0 == 0xE0) lo = 0xA0;       // overlong
    if (b0 == 0xED) hi = 0x9F;       // surrogates
  } else if (b0 >= 0xF0 && b0 <= 0xF4) {
    len = 4;
    if (b0 == 0xF0) lo = 0x90;       // overlong
    if (b0 == 0xF4) hi = 0x8F;       // > U+10FFFF
  } else {
    return 0;
  }
  if (i + len > raw.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(raw[i + k]);
    const unsigned char min = k == 1 ? lo : 0x80;
    const unsigned char max = k == 1 ? hi : 0xBF;
    if (b < min || b > max) return 0;
  }
  return len;
}

}  // namespace

TokenStream::TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    const Token& t = tokens_[i];
    if (t.text.empty()) throw ValidationError("token stream contains an empty token");
    for (char c : t.text) {
      const bool ok = t.kind == TokenKind::Word ? is_lower(c) : c == ' ';
      if (!ok) throw ValidationError("token '" + t.text + "' has characters outside its class");
    }
    if (i > 0 && tokens_[i - 1].kind == t.kind)
      throw ValidationError("adjacent tokens of the same kind at index " + std::to_string(i));
  }
}

std::string TokenStream::text() const {
  std::string out;
  for (const auto& t : tokens_) out += t.text;
  return out;
}

std::size_t TokenStream::word_count() const {
  std::size_t n = 0;
  for (const auto& t : tokens_) n += t.kind == TokenKind::Word;
  return n;
}

std::vector<std::string_view> TokenStream::words() const {
  std::vector<std::string_view> out;
  for (const auto& t : tokens_)
    if (t.kind == TokenKind::Word) out.emplace_back(t.text);
  return out;
}

std::string normalize(std::string_view raw, DecodePolicy policy) {
  std::string out;
  out.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    const std::size_t len = utf8_sequence_length(raw, i);
    if (len == 0) {
      if (policy == DecodePolicy::Strict) throw DecodeError(i);
      out.push_back(' ');
      ++i;
      continue;
    }
    if (len == 1) {
      char c = raw[i];
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      out.push_back(is_lower(c) ? c : ' ');
    } else {
      out.push_back(' ');
    }
    i += len;
  }
  return out;
}

TokenStream tokenize_normalized(std::string_view normalized) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < normalized.size()) {
    const char c = normalized[i];
    TokenKind kind;
    if (is_lower(c)) {
      kind = TokenKind::Word;
    } else if (c == ' ') {
      kind = TokenKind::Separator;
    } else {
      throw ValidationError("character outside [a-z ] at offset " + std::to_string(i));
    }
    std::size_t j = i + 1;
    while (j < normalized.size() &&
           (kind == TokenKind::Word ? is_lower(normalized[j]) : normalized[j] == ' '))
      ++j;
    tokens.push_back({kind, std::string(normalized.substr(i, j - i))});
    i = j;
  }
  return TokenStream(std::move(tokens));
}

TokenStream normalize_and_tokenize(std::string_view raw, DecodePolicy policy) {
  return tokenize_normalized(normalize(raw, policy));
}

}  // namespace ncdlab::text

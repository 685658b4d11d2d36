#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cfs/rational.hpp"

namespace cfs::detail {

struct Token {
  enum class Kind { Word, Number, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Words are [A-Za-z_][A-Za-z0-9_*']*, numbers are digits with an optional
/// fraction or decimal part, punctuation is one of `{}()=,;&|!.` or `->`.
/// `#` starts a comment running to the end of the line.
std::vector<Token> tokenize(std::string_view text);

class TokenStream {
 public:
  explicit TokenStream(std::string_view text) : tokens_(tokenize(text)) {}

  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  bool at_end() const { return peek().kind == Token::Kind::End; }

  bool is_punct(std::string_view p, std::size_t ahead = 0) const;
  bool is_word(std::string_view w, std::size_t ahead = 0) const;
  bool accept_punct(std::string_view p);
  bool accept_word(std::string_view w);
  /// Skips optional `,` or `;` separators.
  void skip_separators();

  void expect_punct(std::string_view p);
  void expect_word(std::string_view w);
  /// Any word token; `what` names it in the error message.
  Token expect_identifier(std::string_view what);
  /// A label: a word or an integer-looking number.
  Token expect_label();
  Rational expect_rational();

  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] static void fail_at(const Token& token, const std::string& message);

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace cfs::detail

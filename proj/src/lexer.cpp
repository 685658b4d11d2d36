#include "lexer.hpp"

#include <cctype>
#include <stdexcept>

#include "cfs/error.hpp"

namespace cfs::detail {

namespace {

bool word_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '*' || c == '\'';
}
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::string describe(const Token& t) {
  if (t.kind == Token::Kind::End) return "end of input";
  return "'" + t.text + "'";
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    std::size_t j = i;
    if (word_start(c)) {
      t.kind = Token::Kind::Word;
      while (j < text.size() && word_char(text[j])) ++j;
    } else if (digit(c)) {
      t.kind = Token::Kind::Number;
      while (j < text.size() && digit(text[j])) ++j;
      if (j + 1 < text.size() && (text[j] == '.' || text[j] == '/') && digit(text[j + 1])) {
        ++j;
        while (j < text.size() && digit(text[j])) ++j;
      }
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      t.kind = Token::Kind::Punct;
      j = i + 2;
    } else if (std::string_view("{}()=,;&|!.").find(c) != std::string_view::npos) {
      t.kind = Token::Kind::Punct;
      j = i + 1;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    t.text = std::string(text.substr(i, j - i));
    advance(j - i);
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

const Token& TokenStream::peek(std::size_t ahead) const {
  return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
}

Token TokenStream::next() {
  Token t = peek();
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return t;
}

bool TokenStream::is_punct(std::string_view p, std::size_t ahead) const {
  const auto& t = peek(ahead);
  return t.kind == Token::Kind::Punct && t.text == p;
}

bool TokenStream::is_word(std::string_view w, std::size_t ahead) const {
  const auto& t = peek(ahead);
  return t.kind == Token::Kind::Word && t.text == w;
}

bool TokenStream::accept_punct(std::string_view p) {
  if (!is_punct(p)) return false;
  next();
  return true;
}

bool TokenStream::accept_word(std::string_view w) {
  if (!is_word(w)) return false;
  next();
  return true;
}

void TokenStream::skip_separators() {
  while (accept_punct(",") || accept_punct(";")) {
  }
}

void TokenStream::expect_punct(std::string_view p) {
  if (!accept_punct(p)) fail("expected '" + std::string(p) + "', found " + describe(peek()));
}

void TokenStream::expect_word(std::string_view w) {
  if (!accept_word(w)) fail("expected '" + std::string(w) + "', found " + describe(peek()));
}

Token TokenStream::expect_identifier(std::string_view what) {
  if (peek().kind != Token::Kind::Word) fail("expected " + std::string(what) + ", found " + describe(peek()));
  return next();
}

Token TokenStream::expect_label() {
  const auto& t = peek();
  if (t.kind == Token::Kind::Word ||
      (t.kind == Token::Kind::Number && t.text.find_first_of("./") == std::string::npos)) {
    return next();
  }
  fail("expected a label, found " + describe(t));
}

Rational TokenStream::expect_rational() {
  const auto& t = peek();
  if (t.kind != Token::Kind::Number) fail("expected a number, found " + describe(t));
  try {
    Rational r = parse_rational(t.text);
    next();
    return r;
  } catch (const std::invalid_argument&) {
    fail("malformed number '" + t.text + "'");
  }
}

void TokenStream::fail(const std::string& message) const { fail_at(peek(), message); }

void TokenStream::fail_at(const Token& token, const std::string& message) {
  throw ParseError(message, token.line, token.column);
}

}  // namespace cfs::detail

#include "lexer.hpp"

#include <cctype>

namespace chanres::detail {

namespace {

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

}  // namespace

Lexer::Lexer(std::string_view src) {
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (ident_char(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      t.kind = TokenKind::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      t.kind = TokenKind::Punct;
      t.text = "->";
      advance(2);
    } else if (std::string_view("{};:!?.+()=,").find(c) != std::string_view::npos) {
      t.kind = TokenKind::Punct;
      t.text = std::string(1, c);
      advance(1);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    tokens_.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  tokens_.push_back(end);
}

const Token& Lexer::peek(std::size_t ahead) const {
  const auto idx = pos_ + ahead;
  return idx < tokens_.size() ? tokens_[idx] : tokens_.back();
}

Token Lexer::next() {
  Token t = peek();
  if (pos_ < tokens_.size() - 1) ++pos_;
  return t;
}

bool Lexer::accept(std::string_view s) {
  if (peek().kind != TokenKind::End && peek().text == s) {
    next();
    return true;
  }
  return false;
}

void Lexer::expect(std::string_view s) {
  if (!accept(s)) {
    const auto& t = peek();
    fail_at(t, "expected '" + std::string(s) + "' but found " +
                   (t.kind == TokenKind::End ? std::string("end of input") : "'" + t.text + "'"));
  }
}

std::string Lexer::expect_ident(std::string_view what) {
  const auto& t = peek();
  if (t.kind != TokenKind::Ident) {
    fail_at(t, "expected " + std::string(what) + " but found " +
                   (t.kind == TokenKind::End ? std::string("end of input") : "'" + t.text + "'"));
  }
  return next().text;
}

void Lexer::fail(const std::string& msg) const { fail_at(peek(), msg); }

void Lexer::fail_at(const Token& t, const std::string& msg) {
  throw ParseError(msg, t.line, t.column);
}

}  // namespace chanres::detail

#pragma once

// Tokenizer shared by the .bmsc/.hmsc/.gt/.csm readers.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "chanres/errors.hpp"

namespace chanres::detail {

enum class TokenKind { Ident, Punct, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src);

  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  bool at_end() const { return peek().kind == TokenKind::End; }

  bool accept(std::string_view punct_or_word);
  void expect(std::string_view punct_or_word);
  std::string expect_ident(std::string_view what);

  [[noreturn]] void fail(const std::string& msg) const;
  [[noreturn]] static void fail_at(const Token& t, const std::string& msg);

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace chanres::detail

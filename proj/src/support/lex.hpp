#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fc {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error(msg + " at " + std::to_string(line) + ":" + std::to_string(col)),
        line(line), col(col) {}
};

struct Token {
  enum class K { Ident, Int, Punct, End };
  K k = K::End;
  std::string text;
  int64_t num = 0;
  int line = 0, col = 0;
};

// Shared tokenizer for .tdl programs and .tdp scripts. Identifiers may contain
// (but not start with) '_' and digits; '//' starts a line comment.
class Lexer {
 public:
  explicit Lexer(std::string_view src);

  const Token& peek(size_t ahead = 0) const;
  Token next();
  bool at_end() const { return peek().k == Token::K::End; }

  bool is(std::string_view punct_or_kw) const;
  bool accept(std::string_view punct_or_kw);
  Token expect(std::string_view punct_or_kw);
  Token expect_ident(const char* what = "identifier");
  int64_t expect_int();

  [[noreturn]] void fail(const std::string& msg) const;

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace fc

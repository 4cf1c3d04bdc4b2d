#include "support/lex.hpp"

#include <array>
#include <cctype>

namespace fc {

namespace {
// Longest match first within each leading character.
constexpr std::array kPuncts = {
    "|=>", ":=", "!=", "<=", ">=", "&&", "||", "~>", "|->", "=>.", "->", "-*", "++",
    "{", "}", "(", ")", "[", "]", "<", ">", ",", ";", ":", ".", "+", "-", "*", "/",
    "=", "!", "&", "|", "~", "@", "_", "?", "\xe2\x80\xa2" /* bullet */};
}  // namespace

Lexer::Lexer(std::string_view s) {
  size_t i = 0, n = s.size();
  int line = 1, col = 1;
  auto advance = [&](size_t k) {
    for (size_t j = 0; j < k; ++j) {
      if (s[i + j] == '\n') { line++; col = 1; } else { col++; }
    }
    i += k;
  };
  while (i < n) {
    char c = s[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') { advance(1); continue; }
    if (c == '/' && i + 1 < n && s[i + 1] == '/') {
      while (i < n && s[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < n && std::isdigit(static_cast<unsigned char>(s[j]))) j++;
      t.k = Token::K::Int;
      t.text = std::string(s.substr(i, j - i));
      t.num = std::stoll(t.text);
      advance(j - i);
      toks_.push_back(std::move(t));
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < n && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\'')) j++;
      t.k = Token::K::Ident;
      t.text = std::string(s.substr(i, j - i));
      advance(j - i);
      toks_.push_back(std::move(t));
      continue;
    }
    bool matched = false;
    for (const char* p : kPuncts) {
      std::string_view pv(p);
      if (s.substr(i, pv.size()) == pv) {
        t.k = Token::K::Punct;
        t.text = std::string(pv);
        advance(pv.size());
        toks_.push_back(std::move(t));
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError("unexpected character '" + std::string(1, c) + "'", line, col);
  }
  Token end;
  end.k = Token::K::End;
  end.line = line;
  end.col = col;
  toks_.push_back(end);
}

const Token& Lexer::peek(size_t ahead) const {
  size_t j = pos_ + ahead;
  if (j >= toks_.size()) j = toks_.size() - 1;
  return toks_[j];
}

Token Lexer::next() {
  Token t = peek();
  if (pos_ + 1 < toks_.size()) pos_++;
  return t;
}

bool Lexer::is(std::string_view w) const {
  const Token& t = peek();
  return (t.k == Token::K::Punct || t.k == Token::K::Ident) && t.text == w;
}

bool Lexer::accept(std::string_view w) {
  if (!is(w)) return false;
  next();
  return true;
}

Token Lexer::expect(std::string_view w) {
  if (!is(w)) fail("expected '" + std::string(w) + "', found '" + peek().text + "'");
  return next();
}

Token Lexer::expect_ident(const char* what) {
  if (peek().k != Token::K::Ident) fail(std::string("expected ") + what + ", found '" + peek().text + "'");
  return next();
}

int64_t Lexer::expect_int() {
  bool neg = false;
  if (is("-")) { next(); neg = true; }
  if (peek().k != Token::K::Int) fail("expected integer literal");
  int64_t v = next().num;
  return neg ? -v : v;
}

void Lexer::fail(const std::string& msg) const {
  throw ParseError(msg, peek().line, peek().col);
}

}  // namespace fc

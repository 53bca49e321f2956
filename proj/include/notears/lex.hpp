#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "notears/diagnostics.hpp"

namespace notears {

enum class Tok {
  LParen,
  RParen,
  Lambda,
  Dot,
  Colon,
  Assign,  // :=
  Comma,
  Star,    // *
  Arrow,   // ->
  Ident,
  Number,
  KwDef,
  KwAxiom,
  KwImport,
  KwU,
  KwNat,
  KwZero,
  KwSuc,
  KwNatElim,
  KwUnit,
  KwStar,  // the Unit inhabitant `star`
  KwId,
  KwRefl,
  KwJ,
  Eof,
};

struct Token {
  Tok kind;
  std::string text;
  Span span;
};

namespace detail {
inline bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}
}  // namespace detail

// Tokenizes the whole input. ASCII-only surface syntax; anything else is an
// IllegalCharacter diagnostic. Line comments start with --.
inline std::vector<Token> lex(const std::string& src, const std::string& file) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1, col = 1;

  auto here = [&]() { return Pos{line, col}; };
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (i < src.size() && src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto push = [&](Tok k, Pos begin, std::size_t len) {
    out.push_back({k, src.substr(i, len), Span{begin, Pos{line, col + static_cast<int>(len)}}});
    advance(len);
  };

  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Pos begin = here();
    switch (c) {
      case '(': push(Tok::LParen, begin, 1); continue;
      case ')': push(Tok::RParen, begin, 1); continue;
      case '\\': push(Tok::Lambda, begin, 1); continue;
      case '.': push(Tok::Dot, begin, 1); continue;
      case ',': push(Tok::Comma, begin, 1); continue;
      case '*': push(Tok::Star, begin, 1); continue;
      case ':':
        if (i + 1 < src.size() && src[i + 1] == '=') {
          push(Tok::Assign, begin, 2);
        } else {
          push(Tok::Colon, begin, 1);
        }
        continue;
      case '-':
        if (i + 1 < src.size() && src[i + 1] == '>') {
          push(Tok::Arrow, begin, 2);
          continue;
        }
        throw CheckError({file, Span{begin, begin}, "illegal character '-'"});
      default:
        break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t len = 0;
      while (i + len < src.size() && std::isdigit(static_cast<unsigned char>(src[i + len]))) ++len;
      push(Tok::Number, begin, len);
      continue;
    }
    if (detail::ident_start(c)) {
      std::size_t len = 0;
      while (i + len < src.size() && detail::ident_char(src[i + len])) ++len;
      std::string word = src.substr(i, len);
      Tok k = Tok::Ident;
      if (word == "def") k = Tok::KwDef;
      else if (word == "axiom") k = Tok::KwAxiom;
      else if (word == "import") k = Tok::KwImport;
      else if (word == "U") k = Tok::KwU;
      else if (word == "Nat") k = Tok::KwNat;
      else if (word == "zero") k = Tok::KwZero;
      else if (word == "suc") k = Tok::KwSuc;
      else if (word == "natElim") k = Tok::KwNatElim;
      else if (word == "Unit") k = Tok::KwUnit;
      else if (word == "star") k = Tok::KwStar;
      else if (word == "Id") k = Tok::KwId;
      else if (word == "refl") k = Tok::KwRefl;
      else if (word == "J") k = Tok::KwJ;
      push(k, begin, len);
      continue;
    }
    throw CheckError({file, Span{begin, begin},
                      std::string("illegal character '") + c + "'"});
  }
  out.push_back({Tok::Eof, "", Span{here(), here()}});
  return out;
}

}  // namespace notears

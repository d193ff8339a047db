#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace quenum {

/// Tape-cell symbol. The numeric values double as the code used to index
/// step-operator matrices, so they must not be reordered.
enum class Symbol : std::uint8_t {
  Blank = 0,   // '0', the spacer between expressions
  Tilde = 1,   // '~'
  P = 2,       // 'P'
  LParen = 3,  // '('
  RParen = 4,  // ')'
  N = 5,       // 'N', only present in the extended alphabet
};

/// The quantum register uses exactly five symbols; the extended alphabet adds
/// 'N' for norm-style sentences.
enum class Alphabet { Base, Extended };

constexpr int kBaseSymbolCount = 5;
constexpr int kExtendedSymbolCount = 6;

constexpr int symbol_count(Alphabet a) {
  return a == Alphabet::Base ? kBaseSymbolCount : kExtendedSymbolCount;
}

constexpr int code(Symbol s) { return static_cast<int>(s); }

constexpr char to_char(Symbol s) {
  switch (s) {
    case Symbol::Blank: return '0';
    case Symbol::Tilde: return '~';
    case Symbol::P: return 'P';
    case Symbol::LParen: return '(';
    case Symbol::RParen: return ')';
    case Symbol::N: return 'N';
  }
  return '?';
}

constexpr std::optional<Symbol> symbol_from_char(char c) {
  switch (c) {
    case '0': return Symbol::Blank;
    case '~': return Symbol::Tilde;
    case 'P': return Symbol::P;
    case '(': return Symbol::LParen;
    case ')': return Symbol::RParen;
    case 'N': return Symbol::N;
    default: return std::nullopt;
  }
}

constexpr Symbol symbol_from_code(int c) { return static_cast<Symbol>(c); }

constexpr bool in_alphabet(Symbol s, Alphabet a) {
  return code(s) < symbol_count(a);
}

}  // namespace quenum

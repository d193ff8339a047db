#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quenum/symbols.hpp"

namespace quenum {

/// A nonempty string of non-blank symbols. Immutable after construction.
class Expression {
 public:
  /// Validates that every character is a non-blank symbol of the extended
  /// alphabet. Use parse() to restrict to the base alphabet.
  explicit Expression(std::string_view text);

  const std::string& str() const { return text_; }
  int length() const { return static_cast<int>(text_.size()); }
  Symbol symbol(int i) const { return *symbol_from_char(text_[i]); }

  friend bool operator==(const Expression& a, const Expression& b) = default;
  friend auto operator<=>(const Expression& a, const Expression& b) = default;

 private:
  std::string text_;
};

/// Maps text to an Expression, rejecting characters outside `alphabet`.
Expression parse(std::string_view text, Alphabet alphabet = Alphabet::Base);

/// The norm of X is the expression X(X).
Expression norm(const Expression& x);

enum class SentenceKind { PofX, NegPofX, PNofX, NegPNofX, NotSentence };

/// Which expressions count as sentences.
///   base_atomic:     P(X), ~P(X) with X not itself a sentence.
///   extended_orders: P(X), ~P(X) where X is a non-sentence (order 1) or a
///                    sentence of order k < max_order (order k+1).
///   with_pn:         all four patterns P(X), ~P(X), PN(X), ~PN(X), any X.
struct SentenceSet {
  enum class Mode { BaseAtomic, ExtendedOrders, WithPN };
  Mode mode = Mode::BaseAtomic;
  int max_order = 1;

  static SentenceSet base_atomic() { return {Mode::BaseAtomic, 1}; }
  static SentenceSet extended_orders(int max_k) {
    return {Mode::ExtendedOrders, max_k};
  }
  static SentenceSet with_pn() { return {Mode::WithPN, 0}; }
};

struct SentenceForm {
  SentenceKind kind = SentenceKind::NotSentence;
  std::optional<Expression> argument;  // the X between the parentheses
  std::optional<int> order;            // 1 = atomic; set only for ordered modes

  bool is_sentence() const { return kind != SentenceKind::NotSentence; }
  bool negated() const {
    return kind == SentenceKind::NegPofX || kind == SentenceKind::NegPNofX;
  }
};

/// Pattern-matches x against the four sentence prefixes under the given set.
/// NotSentence is an ordinary result, not an error.
SentenceForm classify(const Expression& x,
                      SentenceSet set = SentenceSet::base_atomic());

/// The expression a sentence refers to: the argument for P-forms, the norm of
/// the argument for PN-forms. Throws NotASentenceError otherwise.
Expression referent(const SentenceForm& s);

/// Convenience: classify under `set` and take the referent.
Expression referent(const Expression& sentence,
                    SentenceSet set = SentenceSet::with_pn());

/// The two fixed points of the norm-based sentence patterns:
/// ~PN(~PN) and PN(PN). Each equals its own referent.
std::vector<Expression> self_referential_sentences();

enum class ChainStatus {
  TerminatedNonSentence,  // referent of the last sentence is not a sentence
  TerminatedNegative,     // last sentence asserts a nonprintability
  Cutoff,                 // max_steps reached without terminating
};

struct ChainResult {
  std::vector<Expression> sentences;        // starting with PN(x)
  std::optional<Expression> stopped_at;     // the non-sentence referent, if any
  ChainStatus status = ChainStatus::Cutoff;
};

/// Follows PN(x) -> referent -> referent -> ... while the referent stays a
/// positive-printability sentence; see ChainStatus for the stop conditions.
ChainResult chain(const Expression& x, int max_steps);

/// Number of "PN" substrings; the chain growth law is stated in terms of it.
int pn_repetitions(const Expression& x);

struct SentenceCount {
  long long exact = 0;    // exhaustive enumeration under base_atomic
  double formula = 0.0;   // 4^(n-3) + 4^(n-4), exact as a dyadic rational
};

/// Counts length-n sentences two ways; callers compare and report mismatches.
SentenceCount count_sentences(int n);

}  // namespace quenum

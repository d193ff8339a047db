#include "quenum/expression.hpp"

#include <cmath>

#include "quenum/errors.hpp"

namespace quenum {

Expression::Expression(std::string_view text) : text_(text) {
  if (text_.empty()) throw EmptyInputError("expression must be nonempty");
  for (char c : text_) {
    auto s = symbol_from_char(c);
    if (!s) {
      throw UnknownSymbolError(std::string("unknown symbol '") + c +
                               "' in expression");
    }
    if (*s == Symbol::Blank) {
      throw UnknownSymbolError("blank inside an expression");
    }
  }
}

Expression parse(std::string_view text, Alphabet alphabet) {
  if (text.empty()) throw EmptyInputError("empty input");
  if (alphabet == Alphabet::Base) {
    for (char c : text) {
      auto s = symbol_from_char(c);
      if (s && !in_alphabet(*s, alphabet)) {
        throw UnknownSymbolError(std::string("symbol '") + c +
                                 "' requires the extended alphabet");
      }
    }
  }
  return Expression(text);
}

Expression norm(const Expression& x) {
  return Expression(x.str() + "(" + x.str() + ")");
}

namespace {

struct PrefixMatch {
  SentenceKind kind;
  std::string_view interior;
};

// The four prefixes are pairwise non-prefixing, so at most one matches.
std::optional<PrefixMatch> match_pattern(std::string_view s) {
  static constexpr struct {
    std::string_view prefix;
    SentenceKind kind;
  } kPatterns[] = {
      {"~PN(", SentenceKind::NegPNofX},
      {"~P(", SentenceKind::NegPofX},
      {"PN(", SentenceKind::PNofX},
      {"P(", SentenceKind::PofX},
  };
  if (s.empty() || s.back() != ')') return std::nullopt;
  for (const auto& p : kPatterns) {
    if (s.substr(0, p.prefix.size()) == p.prefix) {
      std::string_view interior =
          s.substr(p.prefix.size(), s.size() - p.prefix.size() - 1);
      if (interior.empty()) return std::nullopt;
      return PrefixMatch{p.kind, interior};
    }
  }
  return std::nullopt;
}

bool is_p_form(SentenceKind k) {
  return k == SentenceKind::PofX || k == SentenceKind::NegPofX;
}

}  // namespace

SentenceForm classify(const Expression& x, SentenceSet set) {
  auto m = match_pattern(x.str());
  if (!m) return {};
  Expression argument(m->interior);

  switch (set.mode) {
    case SentenceSet::Mode::WithPN:
      return {m->kind, std::move(argument), std::nullopt};

    case SentenceSet::Mode::BaseAtomic: {
      if (!is_p_form(m->kind)) return {};
      if (classify(argument, set).is_sentence()) return {};
      return {m->kind, std::move(argument), 1};
    }

    case SentenceSet::Mode::ExtendedOrders: {
      if (!is_p_form(m->kind)) return {};
      SentenceForm arg_form = classify(argument, set);
      if (!arg_form.is_sentence()) {
        return {m->kind, std::move(argument), 1};
      }
      int k = arg_form.order.value_or(1);
      if (k + 1 > set.max_order) return {};
      return {m->kind, std::move(argument), k + 1};
    }
  }
  return {};
}

Expression referent(const SentenceForm& s) {
  if (!s.is_sentence() || !s.argument) {
    throw NotASentenceError("referent of a non-sentence");
  }
  switch (s.kind) {
    case SentenceKind::PofX:
    case SentenceKind::NegPofX:
      return *s.argument;
    case SentenceKind::PNofX:
    case SentenceKind::NegPNofX:
      return norm(*s.argument);
    case SentenceKind::NotSentence:
      break;
  }
  throw NotASentenceError("referent of a non-sentence");
}

Expression referent(const Expression& sentence, SentenceSet set) {
  return referent(classify(sentence, set));
}

std::vector<Expression> self_referential_sentences() {
  // A sentence prefix(X)")" equals its referent X(X) only if
  // |prefix| + |X| + 1 = 2|X| + 2, i.e. |X| = |prefix| - 1, which forces X to
  // be the prefix with its '(' dropped. Only the two PN patterns close.
  std::vector<Expression> out;
  for (std::string_view prefix : {"~PN(", "PN("}) {
    Expression x(prefix.substr(0, prefix.size() - 1));
    Expression candidate = norm(x);
    SentenceForm form = classify(candidate, SentenceSet::with_pn());
    if (form.is_sentence() && referent(form) == candidate) {
      out.push_back(candidate);
    }
  }
  return out;
}

ChainResult chain(const Expression& x, int max_steps) {
  ChainResult result;
  Expression current(std::string("PN(") + x.str() + ")");
  const SentenceSet set = SentenceSet::with_pn();
  while (true) {
    result.sentences.push_back(current);
    SentenceForm form = classify(current, set);
    if (form.negated()) {
      result.status = ChainStatus::TerminatedNegative;
      return result;
    }
    Expression next = referent(form);
    if (!classify(next, set).is_sentence()) {
      result.stopped_at = std::move(next);
      result.status = ChainStatus::TerminatedNonSentence;
      return result;
    }
    if (static_cast<int>(result.sentences.size()) >= max_steps) {
      result.status = ChainStatus::Cutoff;
      return result;
    }
    current = std::move(next);
  }
}

int pn_repetitions(const Expression& x) {
  int count = 0;
  const std::string& s = x.str();
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i] == 'P' && s[i + 1] == 'N') ++count;
  }
  return count;
}

namespace {

// Recursive count via the classification rules; cheaper than re-parsing each
// of the 4^n strings and used as the enumeration's inner test.
bool is_base_sentence(std::string_view s) {
  if (s.size() < 4 || s.back() != ')') return false;
  std::string_view interior;
  if (s.substr(0, 2) == "P(") {
    interior = s.substr(2, s.size() - 3);
  } else if (s.substr(0, 3) == "~P(") {
    interior = s.substr(3, s.size() - 4);
  } else {
    return false;
  }
  if (interior.empty()) return false;
  return !is_base_sentence(interior);
}

}  // namespace

SentenceCount count_sentences(int n) {
  if (n < 1) throw EmptyInputError("sentence length must be positive");
  if (n > 12) {
    throw ScaleExceededError("exhaustive counting supports lengths up to 12");
  }
  static constexpr char kDigits[4] = {'~', 'P', '(', ')'};
  SentenceCount out;
  std::string s(static_cast<std::size_t>(n), '~');
  const long long total = 1LL << (2 * n);
  for (long long v = 0; v < total; ++v) {
    long long t = v;
    for (int i = 0; i < n; ++i) {
      s[static_cast<std::size_t>(i)] = kDigits[t & 3];
      t >>= 2;
    }
    if (is_base_sentence(s)) ++out.exact;
  }
  out.formula = std::ldexp(1.0, 2 * (n - 3)) + std::ldexp(1.0, 2 * (n - 4));
  return out;
}

}  // namespace quenum

#include "quenum/qucom.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "quenum/errors.hpp"
#include "quenum/expression.hpp"
#include "quenum/projector.hpp"

namespace quenum {

namespace {

constexpr int kMaxBlock = 6;

// Argument digits: ~,P,(,) -> 0,1,2,3, most significant digit leftmost.
constexpr char kArgDigits[4] = {'~', 'P', '(', ')'};

std::string argument_string(long long value, int n) {
  std::string s(static_cast<std::size_t>(n), '~');
  for (int i = n - 1; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = kArgDigits[value & 3];
    value >>= 2;
  }
  return s;
}

long long argument_value(const BasisConfig& c, int payload_first, int n) {
  long long v = 0;
  for (int i = 0; i < n; ++i) {
    const Symbol s = c.symbol_at(payload_first + i);
    int digit = -1;
    switch (s) {
      case Symbol::Tilde: digit = 0; break;
      case Symbol::P: digit = 1; break;
      case Symbol::LParen: digit = 2; break;
      case Symbol::RParen: digit = 3; break;
      default: digit = -1; break;
    }
    if (digit < 0) return -1;
    v = v * 4 + digit;
  }
  return v;
}

Expression p_of(const std::string& x) { return Expression("P(" + x + ")"); }
Expression not_p_of(const std::string& x) {
  return Expression("~P(" + x + ")");
}

}  // namespace

QucomState build_qucom(int n_max) {
  if (n_max < 1 || n_max > kMaxBlock) {
    throw ScaleExceededError("enumerator block count must be in [1, " +
                             std::to_string(kMaxBlock) + "]");
  }
  QucomState q;
  q.n_max = n_max;

  // Block n occupies 2n+5 sites starting at `a`: sign cell, the n+3 cells of
  // P(X), one separator blank, and an n-cell payload region; one blank is
  // left between consecutive blocks.
  int a = 1;
  for (int n = 1; n <= n_max; ++n) {
    QucomBlock block;
    block.n = n;
    block.start = a;
    block.sentence_end = a + n + 3;
    block.payload_start = block.sentence_end + 2;
    block.payload_end = block.payload_start + n - 1;
    a = block.payload_end + 2;
    q.blocks.push_back(block);
    // Ledger of scripted cell operations: one move per site crossed, one
    // digit superposition per argument cell, the sign split, the sentence
    // flag, and one conditional copy per payload cell.
    q.script_ops += (2 * n + 5 + 1) + n + 1 + 1 + n;
  }
  q.head_site = a + 1;  // one blank after the last block, head one past it

  for (QucomBlock& block : q.blocks) {
    const int n = block.n;
    const double amp = 1.0 / std::sqrt(2.0 * std::pow(4.0, n));
    const long long total = 1LL << (2 * n);
    SparseState state(1);
    for (long long v = 0; v < total; ++v) {
      const std::string x = argument_string(v, n);
      const bool x_is_sentence =
          classify(Expression(x), SentenceSet::base_atomic()).is_sentence();
      const AncillaLabel flag =
          x_is_sentence ? AncillaLabel::One : AncillaLabel::Zero;

      BasisConfig positive(0, q.head_site);
      positive.set_symbol(block.start + 1, Symbol::P);
      positive.set_symbol(block.start + 2, Symbol::LParen);
      for (int i = 0; i < n; ++i) {
        positive.set_symbol(block.start + 3 + i, *symbol_from_char(x[i]));
      }
      positive.set_symbol(block.sentence_end, Symbol::RParen);
      BasisConfig negative = positive;
      negative.set_symbol(block.start, Symbol::Tilde);
      if (!x_is_sentence) {
        for (int i = 0; i < n; ++i) {
          positive.set_symbol(block.payload_start + i, *symbol_from_char(x[i]));
        }
      }
      positive.append_ancilla(flag);
      negative.append_ancilla(flag);
      state.add_term(positive, Complex(amp, 0.0));
      state.add_term(negative, Complex(amp, 0.0));
    }
    block.state = std::move(state);
  }
  return q;
}

SparseState qucom_full_state(const QucomState& q, std::size_t max_terms) {
  std::size_t expected = 1;
  for (const QucomBlock& block : q.blocks) {
    expected *= block.state.term_count();
    if (expected > max_terms) {
      throw ScaleExceededError(
          "full enumerator state would exceed the term cap");
    }
  }
  SparseState acc(1);
  acc.add_term(BasisConfig(0, q.head_site), Complex(1.0, 0.0));
  for (const QucomBlock& block : q.blocks) {
    SparseState next(1);
    for (const auto& [base, base_amp] : acc.terms()) {
      for (const auto& [part, part_amp] : block.state.terms()) {
        BasisConfig merged = base;
        for (const auto& [site, sym] : part.support()) {
          merged.set_symbol(site, sym);
        }
        for (AncillaLabel l : part.ancilla()) merged.append_ancilla(l);
        next.add_term(merged, base_amp * part_amp);
      }
    }
    acc = std::move(next);
  }
  return acc;
}

SemanticsReport verify_qucom(const QucomState& q, double eps) {
  SemanticsReport rep;
  rep.machine = "qucom:nmax=" + std::to_string(q.n_max);
  rep.horizon = q.head_site;
  rep.m = 0;
  rep.epsilon = eps;
  rep.max_sentence_length = q.n_max + 4;

  for (const QucomBlock& block : q.blocks) {
    const SparseState& psi = block.state;
    for (const Expression& x : non_sentence_arguments(block.n)) {
      const Expression claims[2] = {p_of(x.str()), not_p_of(x.str())};
      for (int neg = 0; neg < 2; ++neg) {
        const Expression& s = claims[neg];
        const Projector qh_s = q_h_anywhere(s);
        const Projector qh_x = q_h_anywhere(x);
        const Projector qh_not_x = q_h_anywhere_not(x);

        SentenceRecord rec{.sentence = s, .printability = 0.0, .verdict = {}, .valid = true, .complete = false, .identity_sum = 1.0};
        rec.printability = expectation(psi, qh_s);
        const Projector& falsifier = neg == 0 ? qh_not_x : qh_x;
        const Projector& keeper = neg == 0 ? qh_x : qh_not_x;
        rec.verdict.n = q.head_site;
        rec.verdict.m = 0;
        if (rec.printability <= eps) {
          rec.verdict.status = TruthStatus::Undefined;
        } else {
          rec.verdict.witness =
              expectation(psi, combine({falsifier, qh_s}, CombineMode::And));
          rec.verdict.witness_alt = rec.verdict.witness;
          rec.verdict.status = rec.verdict.witness <= eps ? TruthStatus::True
                                                          : TruthStatus::False;
        }
        rec.valid = rec.verdict.status != TruthStatus::False;
        rec.complete = rec.printability > eps;
        const double kept =
            expectation(psi, combine({keeper, qh_s}, CombineMode::And));
        rec.identity_sum = kept + (1.0 - rec.printability);
        rep.sentences.push_back(std::move(rec));
      }
      const double joint = expectation(
          psi, combine({q_h_anywhere(claims[0]), q_h_anywhere(claims[1])},
                       CombineMode::And));
      rep.pairs.push_back({x, joint, joint <= eps});
    }
  }

  for (const auto& rec : rep.sentences) {
    if (rec.printability > eps) ++rep.printable_count;
    if (rec.valid) ++rep.valid_count;
    if (rec.complete) ++rep.complete_count;
    rep.aggregate_valid = rep.aggregate_valid && rec.valid;
    rep.aggregate_complete = rep.aggregate_complete && rec.complete;
  }
  for (const auto& pair : rep.pairs) {
    if (!pair.consistent) ++rep.inconsistent_count;
  }
  rep.maximally_complete = rep.aggregate_complete;
  return rep;
}

QftDistribution qft_argument(const QucomState& q, int n) {
  if (n < 1 || n > q.n_max) {
    throw ScaleExceededError("no such enumerator block");
  }
  const QucomBlock& block = q.blocks[static_cast<std::size_t>(n - 1)];
  const long long size = 1LL << (2 * n);
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(size));
  const int arg_first = block.start + 3;

  QftDistribution out;
  out.n = n;
  out.rows.resize(static_cast<std::size_t>(size));
  for (long long y = 0; y < size; ++y) out.rows[static_cast<std::size_t>(y)].y = y;

  std::vector<Complex> coherent(static_cast<std::size_t>(size),
                                Complex(0.0, 0.0));
  for (const auto& [c, amp] : block.state.terms()) {
    if (c.ancilla().at(0) != AncillaLabel::Zero) continue;  // sentence args
    const long long x = argument_value(c, arg_first, n);
    const bool negative = c.symbol_at(block.start) == Symbol::Tilde;
    if (negative) {
      // Payload identical across arguments: amplitudes interfere.
      for (long long y = 0; y < size; ++y) {
        const double phase = 2.0 * M_PI * static_cast<double>(y) *
                             static_cast<double>(x) /
                             static_cast<double>(size);
        coherent[static_cast<std::size_t>(y)] +=
            amp * inv_sqrt * Complex(std::cos(phase), std::sin(phase));
      }
    } else {
      // The payload records X, so each (Y, X) cell stays distinct.
      const double p = std::norm(amp) / static_cast<double>(size);
      for (long long y = 0; y < size; ++y) {
        out.rows[static_cast<std::size_t>(y)].p_branch += p;
      }
    }
  }
  for (long long y = 0; y < size; ++y) {
    out.rows[static_cast<std::size_t>(y)].notp_branch =
        std::norm(coherent[static_cast<std::size_t>(y)]);
    out.p_branch_total += out.rows[static_cast<std::size_t>(y)].p_branch;
    out.notp_branch_total += out.rows[static_cast<std::size_t>(y)].notp_branch;
  }
  return out;
}

EfficiencyReport qucom_efficiency_report(const QucomState& q) {
  EfficiencyReport out;
  out.n_max = q.n_max;
  out.script_ops = q.script_ops;
  for (int n = 1; n <= q.n_max; ++n) {
    const SentenceCount count = count_sentences(n);
    const double strings = std::pow(4.0, n);
    out.sentences_exact +=
        2 * ((1LL << (2 * n)) - count.exact);
    out.sentences_formula += 2.0 * (strings - count.formula);
  }
  return out;
}

}  // namespace quenum

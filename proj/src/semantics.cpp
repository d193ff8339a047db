#include "quenum/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "quenum/errors.hpp"
#include "quenum/text.hpp"

namespace quenum {

namespace {

constexpr double kEquivalenceTolerance = 1e-9;

struct ResolvedSentence {
  SentenceForm form;
  Expression sentence;
  Expression target;  // the expression the sentence claims present or absent
  bool positive;      // claims presence
};

ResolvedSentence resolve(const Expression& s, SentenceSet set) {
  SentenceForm form = classify(s, set);
  if (!form.is_sentence()) {
    throw NotASentenceError("'" + s.str() + "' is not a sentence");
  }
  Expression target = referent(form);
  bool positive = !form.negated();
  return {std::move(form), s, std::move(target), positive};
}

Expression p_of(const Expression& x) {
  return Expression("P(" + x.str() + ")");
}

Expression not_p_of(const Expression& x) {
  return Expression("~P(" + x.str() + ")");
}

}  // namespace

const SparseState& Evolution::at(int n) const {
  while (static_cast<int>(cache_.size()) <= n) {
    cache_.push_back(apply_step(*op_, cache_.back()));
  }
  return cache_[static_cast<std::size_t>(n)];
}

double printability(const Evolution& ev, const Expression& s, int n) {
  return expectation(ev.at(n), q_h_anywhere(s));
}

TruthVerdict nm_truth(const Evolution& ev, const Expression& s, int n, int m,
                      double eps, SentenceSet set) {
  const ResolvedSentence r = resolve(s, set);
  const SparseState& psi_n = ev.at(n);
  const Projector qh_s = q_h_anywhere(s);
  const double p = expectation(psi_n, qh_s);

  TruthVerdict v;
  v.n = n;
  v.m = m;
  if (p <= eps) {
    v.status = TruthStatus::Undefined;
    return v;
  }

  const Projector present = q_h_anywhere(r.target);
  const Projector absent = q_h_anywhere_not(r.target);
  const Projector& falsifier = r.positive ? absent : present;
  const Projector& truth_keeper = r.positive ? present : absent;

  // Defining form: the falsifying amplitude on the S-containing paths.
  v.witness = sandwich(psi_n, falsifier, ev.op(), m, qh_s);

  // Equivalent difference form: <Psi(n)| (T^dag)^m Q T^m Qh_S |Psi(n)>
  // subtracted from the printability.
  SparseState evolved_all = apply_steps(ev.op(), psi_n, m);
  SparseState evolved_s = apply_steps(ev.op(), apply(qh_s, psi_n), m);
  const double kept =
      inner_product(evolved_all, apply(truth_keeper, evolved_s)).real();
  v.witness_alt = p - kept;

  if (std::abs(v.witness - v.witness_alt) > kEquivalenceTolerance) {
    std::ostringstream msg;
    msg << "truth definitions disagree for " << s.str() << " at n=" << n
        << " m=" << m << ": " << v.witness << " vs " << v.witness_alt;
    throw EquivalenceViolationError(msg.str());
  }

  v.status = v.witness <= eps ? TruthStatus::True : TruthStatus::False;
  return v;
}

TruthVerdict truth(const Evolution& ev, const Expression& s, int horizon,
                   double eps, SentenceSet set) {
  const ResolvedSentence r = resolve(s, set);
  TruthVerdict v = nm_truth(ev, s, horizon, 0, eps, set);
  // A falsified nonprintability claim stays false: its witness element is
  // nondecreasing in n. Every other outcome can still move as paths extend.
  if (!r.positive && v.status == TruthStatus::False) {
    v.finality = Finality::Final;
  } else {
    v.finality = Finality::MayChangeWithN;
  }
  return v;
}

ValidityCheck validity(const Evolution& ev, const Expression& s, int n, int m,
                       double eps, SentenceSet set) {
  ValidityCheck out;
  out.printability = printability(ev, s, n);
  out.verdict = nm_truth(ev, s, n, m, eps, set);
  if (out.verdict.status == TruthStatus::Undefined) {
    out.valid = true;
    const ResolvedSentence r = resolve(s, set);
    const Projector qh_s = q_h_anywhere(s);
    const Projector& keeper =
        r.positive ? q_h_anywhere(r.target) : q_h_anywhere_not(r.target);
    SparseState evolved_all = apply_steps(ev.op(), ev.at(n), m);
    SparseState evolved_s = apply_steps(ev.op(), apply(qh_s, ev.at(n)), m);
    const double kept =
        inner_product(evolved_all, apply(keeper, evolved_s)).real();
    out.identity_sum = kept + (1.0 - out.printability);
  } else {
    out.valid = out.verdict.status == TruthStatus::True;
    const double kept = out.printability - out.verdict.witness_alt;
    out.identity_sum = kept + (1.0 - out.printability);
  }
  if (out.valid && std::abs(out.identity_sum - 1.0) > kEquivalenceTolerance) {
    std::ostringstream msg;
    msg << "validity identity violated for " << s.str() << ": sum "
        << out.identity_sum;
    throw EquivalenceViolationError(msg.str());
  }
  return out;
}

ConsistencyCheck consistency(const Evolution& ev, const Expression& x, int n,
                             double eps) {
  if (classify(x, SentenceSet::base_atomic()).is_sentence()) {
    throw NotApplicableError("consistency pair argument '" + x.str() +
                             "' is itself a sentence");
  }
  ConsistencyCheck out;
  const Projector both = combine(
      {q_h_anywhere(p_of(x)), q_h_anywhere(not_p_of(x))}, CombineMode::And);
  out.joint = expectation(ev.at(n), both);
  out.consistent = out.joint <= eps;
  return out;
}

bool completeness(const Evolution& ev, const Expression& s, int horizon,
                  double eps) {
  return printability(ev, s, horizon) > eps;
}

Correlation correlation(const Evolution& ev, const Expression& s, int n,
                        SentenceSet set) {
  const ResolvedSentence r = resolve(s, set);
  const SparseState& psi = ev.at(n);
  const Projector qh_s = q_h_anywhere(s);
  const Projector qh_x = q_h_anywhere(r.target);
  Correlation out;
  out.joint = expectation(psi, combine({qh_x, qh_s}, CombineMode::And));
  out.product = expectation(psi, qh_x) * expectation(psi, qh_s);
  out.deviation = out.joint - out.product;
  return out;
}

MeasurementOutcome measure(const Evolution& ev, const Expression& s, int n,
                           int m, SentenceSet set) {
  const ResolvedSentence r = resolve(s, set);
  const SparseState& psi = ev.at(n);
  const Projector qh_s = q_h_anywhere(s);

  SparseState with_s = apply_steps(ev.op(), apply(qh_s, psi), m);
  SparseState without_s = apply_steps(
      ev.op(), apply(combine({qh_s}, CombineMode::Not), psi), m);

  const Projector present = q_h_anywhere(r.target);
  const Projector absent = q_h_anywhere_not(r.target);

  MeasurementOutcome out;
  auto add_branch = [&out](std::vector<AncillaLabel> labels,
                           SparseState state) {
    MeasurementBranch b;
    b.probability = state.norm_squared();
    b.state = with_ancilla(state, labels);
    b.labels = std::move(labels);
    out.total_probability += b.probability;
    out.branches.push_back(std::move(b));
  };
  add_branch({AncillaLabel::One, AncillaLabel::One}, apply(present, with_s));
  add_branch({AncillaLabel::One, AncillaLabel::Zero}, apply(absent, with_s));
  add_branch({AncillaLabel::Zero, AncillaLabel::Init}, std::move(without_s));
  return out;
}

MeasurementOutcome measure_pair(const Evolution& ev, const Expression& s,
                                const Expression& s_prime, int n, int m,
                                SentenceSet set) {
  if (s == s_prime) {
    throw NotApplicableError("pair measurement needs two distinct sentences");
  }
  const ResolvedSentence r1 = resolve(s, set);
  const ResolvedSentence r2 = resolve(s_prime, set);
  const SparseState& psi = ev.at(n);

  const Projector qs = q_h_anywhere(s);
  const Projector qs_not = combine({qs}, CombineMode::Not);
  const Projector qsp = q_h_anywhere(s_prime);
  const Projector qsp_not = combine({qsp}, CombineMode::Not);

  const Projector x1 = q_h_anywhere(r1.target);
  const Projector x1_not = q_h_anywhere_not(r1.target);
  const Projector x2 = q_h_anywhere(r2.target);
  const Projector x2_not = q_h_anywhere_not(r2.target);

  MeasurementOutcome out;
  auto add_branch = [&out](std::vector<AncillaLabel> labels,
                           SparseState state) {
    MeasurementBranch b;
    b.probability = state.norm_squared();
    b.state = with_ancilla(state, labels);
    b.labels = std::move(labels);
    out.total_probability += b.probability;
    out.branches.push_back(std::move(b));
  };

  const AncillaLabel I = AncillaLabel::Init;
  const AncillaLabel Y = AncillaLabel::One;
  const AncillaLabel N = AncillaLabel::Zero;

  SparseState both = apply_steps(
      ev.op(), apply(combine({qs, qsp}, CombineMode::And), psi), m);
  SparseState only_s = apply_steps(
      ev.op(), apply(combine({qs, qsp_not}, CombineMode::And), psi), m);
  SparseState only_sp = apply_steps(
      ev.op(), apply(combine({qs_not, qsp}, CombineMode::And), psi), m);
  SparseState neither = apply_steps(
      ev.op(), apply(combine({qs_not, qsp_not}, CombineMode::And), psi), m);

  add_branch({Y, Y, Y, Y}, apply(x2, apply(x1, both)));
  add_branch({Y, Y, Y, N}, apply(x2_not, apply(x1, both)));
  add_branch({Y, Y, N, Y}, apply(x2, apply(x1_not, both)));
  add_branch({Y, Y, N, N}, apply(x2_not, apply(x1_not, both)));
  add_branch({Y, N, Y, I}, apply(x1, only_s));
  add_branch({Y, N, N, I}, apply(x1_not, only_s));
  add_branch({N, Y, I, Y}, apply(x2, only_sp));
  add_branch({N, Y, I, N}, apply(x2_not, only_sp));
  add_branch({N, N, I, I}, std::move(neither));
  return out;
}

TruthVerdict alt_truth(const Evolution& ev, const Expression& s, int horizon,
                       double eps, SentenceSet set) {
  const ResolvedSentence r = resolve(s, set);
  const double target_prob =
      expectation(ev.at(horizon), q_h_anywhere(r.target));
  TruthVerdict v;
  v.n = horizon;
  v.m = 0;
  v.witness = target_prob;
  v.witness_alt = target_prob;
  const bool target_printed = target_prob > eps;
  v.status = (target_printed == r.positive) ? TruthStatus::True
                                            : TruthStatus::False;
  // Printability of the referent is nondecreasing, so a positive value is
  // settled while a zero may still become positive.
  v.finality = target_printed ? Finality::Final : Finality::MayChangeWithN;
  return v;
}

AppendixCheck appendix_check(const Evolution& ev, const Expression& s, int n,
                             int m, SentenceSet set) {
  constexpr double kTol = 1e-10;
  const ResolvedSentence r = resolve(s, set);
  const SparseState& psi_n = ev.at(n);
  const SparseState& psi_nm = ev.at(n + m);
  const Projector qh_s = q_h_anywhere(s);

  AppendixCheck out;
  auto chain = [&](const Projector& q, double& at_n, double& delayed,
                   double& at_nm) {
    at_n = expectation(psi_n, combine({q, qh_s}, CombineMode::And));
    delayed = sandwich(psi_n, q, ev.op(), m, qh_s);
    at_nm = expectation(psi_nm, combine({q, qh_s}, CombineMode::And));
  };
  chain(q_h_anywhere(r.target), out.joint_at_n, out.delayed, out.joint_at_nm);
  chain(q_h_anywhere_not(r.target), out.joint_at_n_neg, out.delayed_neg,
        out.joint_at_nm_neg);
  // With the referent-absent projector the containment that drives the
  // chain reverses (absence over a region shrinks as the region grows), so
  // the delayed element bounds both joint elements from below instead of
  // sitting between them. The complement identity carries one form into the
  // other term by term.
  out.ok = out.joint_at_n <= out.delayed + kTol &&
           out.delayed <= out.joint_at_nm + kTol &&
           out.delayed_neg <= out.joint_at_n_neg + kTol &&
           out.delayed_neg <= out.joint_at_nm_neg + kTol;
  return out;
}

std::vector<Expression> non_sentence_arguments(int length) {
  static constexpr char kDigits[4] = {'~', 'P', '(', ')'};
  std::vector<Expression> out;
  std::string s(static_cast<std::size_t>(length), '~');
  const long long total = 1LL << (2 * length);
  for (long long v = 0; v < total; ++v) {
    long long t = v;
    for (int i = length - 1; i >= 0; --i) {
      s[static_cast<std::size_t>(i)] = kDigits[t & 3];
      t >>= 2;
    }
    Expression x(s);
    if (!classify(x, SentenceSet::base_atomic()).is_sentence()) {
      out.push_back(std::move(x));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

SentenceRecord make_sentence_record(const Evolution& ev, const Expression& s,
                                    int horizon, int m, double eps) {
  SentenceRecord rec{.sentence = s, .printability = 0.0, .verdict = {}, .valid = true, .complete = false, .identity_sum = 1.0};
  ValidityCheck check = validity(ev, s, horizon, m, eps);
  rec.printability = check.printability;
  rec.verdict = check.verdict;
  if (m == 0 && rec.verdict.status == TruthStatus::False &&
      classify(s, SentenceSet::with_pn()).negated()) {
    rec.verdict.finality = Finality::Final;
  }
  rec.valid = check.valid;
  rec.identity_sum = check.identity_sum;
  rec.complete = rec.printability > eps;
  return rec;
}

void finalize_report(SemanticsReport& rep, double eps) {
  std::sort(rep.sentences.begin(), rep.sentences.end(),
            [](const SentenceRecord& a, const SentenceRecord& b) {
              if (a.sentence.length() != b.sentence.length()) {
                return a.sentence.length() < b.sentence.length();
              }
              return a.sentence < b.sentence;
            });
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
  for (const auto& rec : rep.self_referential) {
    rep.maximally_complete =
        rep.maximally_complete &&
        (rec.consistency_excluded || rec.printability > eps);
  }
}

}  // namespace

SemanticsReport build_report(const StepOperator& op, int horizon, int m,
                             int max_sentence_length, double eps) {
  Evolution ev(op);
  SemanticsReport rep;
  rep.machine = op.tag;
  rep.horizon = horizon;
  rep.m = m;
  rep.epsilon = eps;
  rep.max_sentence_length = max_sentence_length;

  const int fit = std::min(max_sentence_length, horizon - 2);
  for (int arg_len = 1; arg_len + 3 <= fit; ++arg_len) {
    for (const Expression& x : non_sentence_arguments(arg_len)) {
      for (const Expression& s : {p_of(x), not_p_of(x)}) {
        if (s.length() > fit) continue;
        rep.sentences.push_back(make_sentence_record(ev, s, horizon, m, eps));
      }
      ConsistencyCheck pair = consistency(ev, x, horizon, eps);
      rep.pairs.push_back({x, pair.joint, pair.consistent});
    }
  }

  for (const Expression& s : self_referential_sentences()) {
    SelfRefRecord rec{.sentence = s, .printability = 0.0, .valid = true, .consistency_excluded = false};
    rec.printability = printability(ev, s, horizon);
    ValidityCheck check = validity(ev, s, horizon, m, eps);
    rec.valid = check.valid;
    rec.consistency_excluded = rec.valid && rec.printability <= eps;
    rep.self_referential.push_back(std::move(rec));
  }

  finalize_report(rep, eps);
  return rep;
}

SemanticsReport build_report(const StepOperator& op, int horizon, int m,
                             const std::vector<Expression>& sentences,
                             double eps) {
  Evolution ev(op);
  SemanticsReport rep;
  rep.machine = op.tag;
  rep.horizon = horizon;
  rep.m = m;
  rep.epsilon = eps;
  rep.max_sentence_length = 0;

  std::vector<Expression> pair_args;
  for (const Expression& s : sentences) {
    rep.sentences.push_back(make_sentence_record(ev, s, horizon, m, eps));
    SentenceForm form = classify(s, SentenceSet::with_pn());
    if (form.argument &&
        !classify(*form.argument, SentenceSet::base_atomic()).is_sentence()) {
      pair_args.push_back(*form.argument);
    }
  }
  std::sort(pair_args.begin(), pair_args.end());
  pair_args.erase(std::unique(pair_args.begin(), pair_args.end()),
                  pair_args.end());
  for (const Expression& x : pair_args) {
    ConsistencyCheck pair = consistency(ev, x, horizon, eps);
    rep.pairs.push_back({x, pair.joint, pair.consistent});
  }

  finalize_report(rep, eps);
  return rep;
}

namespace {

const char* status_name(TruthStatus s) {
  switch (s) {
    case TruthStatus::True: return "True";
    case TruthStatus::False: return "False";
    case TruthStatus::Undefined: return "Undefined";
  }
  return "?";
}

const char* finality_name(Finality f) {
  return f == Finality::Final ? "final" : "may_change_with_n";
}

}  // namespace

std::string SemanticsReport::to_text() const {
  std::ostringstream os;
  os << "# semantics report\n";
  os << "machine: " << machine << "\n";
  os << "horizon: " << horizon << "\n";
  os << "m: " << m << "\n";
  os << "epsilon: " << format_double(epsilon) << "\n";
  os << "max_sentence_length: " << max_sentence_length << "\n";
  os << "[sentences]\n";
  for (const auto& rec : sentences) {
    os << "sentence " << rec.sentence.str()
       << " printability=" << format_double(rec.printability)
       << " status=" << status_name(rec.verdict.status)
       << " witness=" << format_double(rec.verdict.witness)
       << " finality=" << finality_name(rec.verdict.finality)
       << " valid=" << (rec.valid ? "yes" : "no")
       << " complete=" << (rec.complete ? "yes" : "no")
       << " identity_sum=" << format_double(rec.identity_sum) << "\n";
  }
  os << "[consistency]\n";
  for (const auto& pair : pairs) {
    os << "pair X=" << pair.x.str() << " joint=" << format_double(pair.joint)
       << " consistent=" << (pair.consistent ? "yes" : "no") << "\n";
  }
  os << "[self-referential]\n";
  for (const auto& rec : self_referential) {
    os << "sentence " << rec.sentence.str()
       << " printability=" << format_double(rec.printability)
       << " valid=" << (rec.valid ? "yes" : "no") << " consistency_excluded="
       << (rec.consistency_excluded ? "yes" : "no") << "\n";
  }
  os << "[summary]\n";
  os << "sentences=" << sentences.size() << " printable=" << printable_count
     << " valid=" << valid_count << " complete=" << complete_count
     << " inconsistent_pairs=" << inconsistent_count << "\n";
  os << "aggregate_valid=" << (aggregate_valid ? "yes" : "no")
     << " aggregate_complete=" << (aggregate_complete ? "yes" : "no")
     << " maximally_complete=" << (maximally_complete ? "yes" : "no") << "\n";
  return os.str();
}

}  // namespace quenum

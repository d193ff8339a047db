#pragma once

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "quenum/dynamics.hpp"
#include "quenum/expression.hpp"
#include "quenum/projector.hpp"
#include "quenum/state.hpp"

namespace quenum {

/// Probabilities at or below this count as zero; structural zeros (pruned
/// terms) are exact and do not rely on it.
constexpr double kProbabilityEpsilon = 1e-10;

enum class TruthStatus { True, False, Undefined };

enum class Finality { Final, MayChangeWithN };

struct TruthVerdict {
  TruthStatus status = TruthStatus::Undefined;
  /// The defining matrix element: the falsifying amplitude-squared for the
  /// evaluated sentence (compared against epsilon).
  double witness = 0.0;
  /// The same quantity reached through the equivalent difference-form
  /// definition; kept for the internal cross-check.
  double witness_alt = 0.0;
  int n = 0;
  int m = 0;
  Finality finality = Finality::MayChangeWithN;
};

/// Memoizing view of T^n applied to the initial state. The cache hands out
/// references, so it lives in a deque to keep them stable as it grows.
class Evolution {
 public:
  explicit Evolution(const StepOperator& op) : op_(&op) {
    cache_.push_back(init_state(op.internal_dim));
  }
  const StepOperator& op() const { return *op_; }
  const SparseState& at(int n) const;

 private:
  const StepOperator* op_;
  mutable std::deque<SparseState> cache_;
};

/// <Psi(n)| Qh_S |Psi(n)>: probability of finding S delimited left of the
/// head. Positive means n-printable. Works for any expression.
double printability(const Evolution& ev, const Expression& s, int n);

/// Truth on the paths containing S at time n, with the referent checked m
/// steps later. Undefined when S is not n-printable. Both equivalent
/// definitions are evaluated; disagreement throws EquivalenceViolationError.
TruthVerdict nm_truth(const Evolution& ev, const Expression& s, int n, int m,
                      double eps = kProbabilityEpsilon,
                      SentenceSet set = SentenceSet::with_pn());

/// Horizon form of truth: nm_truth at m = 0 and n = horizon, with the
/// monotonicity-aware finality flag (a falsified nonprintability claim is
/// final; everything else may still change as n grows).
TruthVerdict truth(const Evolution& ev, const Expression& s, int horizon,
                   double eps = kProbabilityEpsilon,
                   SentenceSet set = SentenceSet::with_pn());

struct ValidityCheck {
  bool valid = true;
  double printability = 0.0;
  TruthVerdict verdict;
  /// Sum of the printed-and-true element and the not-printed probability;
  /// equals 1 exactly when the machine is valid at the sentence.
  double identity_sum = 1.0;
};

/// Valid at S: not printable, or printable and true.
ValidityCheck validity(const Evolution& ev, const Expression& s, int n, int m,
                       double eps = kProbabilityEpsilon,
                       SentenceSet set = SentenceSet::with_pn());

struct ConsistencyCheck {
  double joint = 0.0;  // <Psi(n)| Qh_{P(X) and ~P(X)} |Psi(n)>
  bool consistent = true;
};

/// No path carries both P(X) and ~P(X). X must not itself be a sentence.
ConsistencyCheck consistency(const Evolution& ev, const Expression& x, int n,
                             double eps = kProbabilityEpsilon);

/// Complete for S: S is printable by the horizon.
bool completeness(const Evolution& ev, const Expression& s, int horizon,
                  double eps = kProbabilityEpsilon);

struct Correlation {
  double joint = 0.0;      // <Qh_{X_S} Qh_S>
  double product = 0.0;    // <Qh_{X_S}> <Qh_S>
  double deviation = 0.0;  // joint - product
};

Correlation correlation(const Evolution& ev, const Expression& s, int n,
                        SentenceSet set = SentenceSet::with_pn());

struct MeasurementBranch {
  std::vector<AncillaLabel> labels;
  double probability = 0.0;
  SparseState state;
};

struct MeasurementOutcome {
  std::vector<MeasurementBranch> branches;
  double total_probability = 0.0;
};

/// Premeasurement of S at time n followed by its referent m steps later,
/// recorded on two ancilla qubytes: branches (1,1), (1,0), (0,i).
MeasurementOutcome measure(const Evolution& ev, const Expression& s, int n,
                           int m, SentenceSet set = SentenceSet::with_pn());

/// Two-sentence premeasurement with four ancilla qubytes and nine branches.
MeasurementOutcome measure_pair(const Evolution& ev, const Expression& s,
                                const Expression& s_prime, int n, int m,
                                SentenceSet set = SentenceSet::with_pn());

/// Alternative interpretation: P(X) is true iff its referent is printable,
/// and ~P(X) takes the opposite value. Defined everywhere.
TruthVerdict alt_truth(const Evolution& ev, const Expression& s, int horizon,
                       double eps = kProbabilityEpsilon,
                       SentenceSet set = SentenceSet::with_pn());

struct AppendixCheck {
  // Chain for the referent-present projector.
  double joint_at_n = 0.0;        // <Psi(n)| Qh_{X_S} Qh_S |Psi(n)>
  double delayed = 0.0;           // || Qh_{X_S} T^m Qh_S Psi(n) ||^2
  double joint_at_nm = 0.0;       // <Psi(n+m)| Qh_{X_S} Qh_S |Psi(n+m)>
  // Same elements with the referent-absent projector.
  double joint_at_n_neg = 0.0;
  double delayed_neg = 0.0;
  double joint_at_nm_neg = 0.0;
  bool ok = false;
};

/// Verifies the finite-size inequalities behind the m-independence of the
/// limit truth definitions, to 1e-10: for the referent-present projector
/// joint_at_n <= delayed <= joint_at_nm, and for the referent-absent one the
/// complement-transported directions delayed_neg <= joint_at_n_neg and
/// delayed_neg <= joint_at_nm_neg. At m = 0 every comparison is an equality.
AppendixCheck appendix_check(const Evolution& ev, const Expression& s, int n,
                             int m, SentenceSet set = SentenceSet::with_pn());

// ---------------------------------------------------------------------------
// Report assembly

struct SentenceRecord {
  Expression sentence;
  double printability = 0.0;
  TruthVerdict verdict;
  bool valid = true;
  bool complete = false;
  double identity_sum = 1.0;
};

struct PairRecord {
  Expression x;
  double joint = 0.0;
  bool consistent = true;
};

struct SelfRefRecord {
  Expression sentence;
  double printability = 0.0;
  bool valid = true;
  bool consistency_excluded = false;  // valid and therefore unprintable
};

struct SemanticsReport {
  std::string machine;
  int horizon = 0;
  int m = 0;
  double epsilon = kProbabilityEpsilon;
  int max_sentence_length = 0;
  std::vector<SentenceRecord> sentences;
  std::vector<PairRecord> pairs;
  std::vector<SelfRefRecord> self_referential;
  int printable_count = 0;
  int valid_count = 0;
  int complete_count = 0;
  int inconsistent_count = 0;
  bool aggregate_valid = true;
  bool aggregate_complete = true;
  bool maximally_complete = true;

  std::string to_text() const;
};

/// All non-sentence arguments of the base alphabet with the given length.
std::vector<Expression> non_sentence_arguments(int length);

/// Full semantic sweep over every base-atomic sentence that fits both the
/// printable region [0, horizon - 2] and the length cap, plus consistency
/// pairs and the self-referential pair.
SemanticsReport build_report(const StepOperator& op, int horizon, int m,
                             int max_sentence_length,
                             double eps = kProbabilityEpsilon);

/// Same report restricted to an explicit sentence list (classified under the
/// full sentence set, so the self-referential pair may be listed directly).
SemanticsReport build_report(const StepOperator& op, int horizon, int m,
                             const std::vector<Expression>& sentences,
                             double eps = kProbabilityEpsilon);

}  // namespace quenum

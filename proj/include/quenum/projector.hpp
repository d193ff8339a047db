#pragma once

#include <functional>
#include <string>
#include <vector>

#include "quenum/dynamics.hpp"
#include "quenum/expression.hpp"
#include "quenum/state.hpp"

namespace quenum {

/// A projector diagonal in the symbol/site/head basis: a predicate over basis
/// configurations. Idempotent by construction; any two commute.
class Projector {
 public:
  Projector() : pred_([](const BasisConfig&) { return true; }), desc_("1") {}
  Projector(std::function<bool(const BasisConfig&)> pred, std::string desc)
      : pred_(std::move(pred)), desc_(std::move(desc)) {}

  bool matches(const BasisConfig& c) const { return pred_(c); }
  const std::string& description() const { return desc_; }

 private:
  std::function<bool(const BasisConfig&)> pred_;
  std::string desc_;
};

/// X spelled over sites [b - len + 1, b] with blanks at both flanks. Sites off
/// the stored support (including negative ones) read as blank. Head and
/// internal state are unconstrained.
Projector q_at(const Expression& x, int b);

/// X delimited somewhere in [m, n] (the union over admissible end sites; the
/// zero projector when the region is too short). `negated` complements.
Projector q_region(const Expression& x, int m, int n, bool negated = false);

/// First occurrence: X ends exactly at site m + j, with no delimited X ending
/// earlier inside [m, m + j].
Projector q_first(const Expression& x, int m, int j);

/// q_region conjoined with the head at site n + k + 2 (any internal state).
Projector q_h(const Expression& x, int m, int n, int k = 0);

/// Head exactly at site j.
Projector q_head(int j);

/// Limit form: X delimited anywhere in [0, head - 2] of each configuration.
/// On a state reached after n steps this equals q_h(x, 0, n - 2, 0).
Projector q_h_anywhere(const Expression& x);

/// Complement of q_h_anywhere: no delimited X left of the head.
Projector q_h_anywhere_not(const Expression& x);

enum class CombineMode { And, Or, Not };

/// Pointwise boolean combination; Not expects exactly one operand.
Projector combine(const std::vector<Projector>& ops, CombineMode mode);

/// Keeps exactly the terms whose configuration satisfies the predicate.
SparseState apply(const Projector& p, const SparseState& psi);

/// <psi| P |psi> = ||apply(p, psi)||^2.
double expectation(const SparseState& psi, const Projector& p);

/// ||left T^m right |psi>||^2, the two-projector matrix element with m steps
/// of evolution between the projections.
double sandwich(const SparseState& psi, const Projector& left,
                const StepOperator& op, int m, const Projector& right);

}  // namespace quenum

#pragma once

#include <iosfwd>
#include <string>

#include "quenum/expression.hpp"
#include "quenum/state.hpp"

namespace quenum {

/// Line-oriented dump: one record per term with internal state, head, the
/// tape over a window, ancilla labels, and the amplitude at full precision.
/// Terms are emitted in configuration-sorted order, so the output is
/// deterministic for a given state.
void dump_state(std::ostream& os, const SparseState& psi);

/// Maximal non-blank runs strictly left of the head, in site order. The run
/// is marked incomplete when it touches the head (no committed blank yet).
struct PathItem {
  Expression expr;
  int start_site = 0;
  bool complete = true;
};

struct ExpressionPath {
  std::vector<PathItem> items;
  int head_site = 0;
  int internal_state = 0;
};

ExpressionPath tokenize_tape(const BasisConfig& config);

/// Inverse of tokenize_tape for complete paths: writes the expressions at
/// their start sites onto a blank tape.
BasisConfig config_from_path(const ExpressionPath& path);

/// Lists the distinct expression paths of a state with their probabilities,
/// sorted by descending probability then path text.
void dump_paths(std::ostream& os, const SparseState& psi);

}  // namespace quenum

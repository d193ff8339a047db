#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "quenum/expression.hpp"
#include "quenum/state.hpp"
#include "quenum/symbols.hpp"

namespace quenum {

/// Single-time-step unitary: an internal/two-cell unitary tensored with the
/// one-site right shift of the head. The matrix acts on (l, s_j, s_{j+1})
/// triples indexed as l*k^2 + code(s_j)*k + code(s_{j+1}) with k symbols.
struct StepOperator {
  int internal_dim = 1;
  int symbols = kBaseSymbolCount;
  Eigen::SparseMatrix<Complex> cell_unitary;
  /// Internal states a reachable term may hold only at time 0. Branching
  /// machines use finite chains; stepping out of them again would re-enter the
  /// branch rotation, so apply_step refuses.
  std::vector<std::int32_t> no_reentry;
  std::string tag;  // human-readable machine description

  int pair_dim() const { return symbols * symbols; }
  int dim() const { return internal_dim * pair_dim(); }
  int index(int l, Symbol s, Symbol t) const {
    return l * pair_dim() + code(s) * symbols + code(t);
  }
};

/// Machine description as loaded from a spec file or builtin name.
struct ProgramSpec {
  std::vector<Expression> expressions;
  int pad_blanks = 1;  // extra blanks after the final separator, per cycle
};

struct BranchSpec {
  double weight = 1.0;
  ProgramSpec program;
};

struct DenseMachine {
  int internal_dim = 1;
  Alphabet alphabet = Alphabet::Base;
  Eigen::MatrixXcd entries;
};

struct ProgramMachine {
  ProgramSpec program;
};

struct BranchingMachine {
  std::vector<BranchSpec> branches;
  int horizon = 160;  // chain length per branch; steps beyond this throw
};

struct RandomMachine {
  int internal_dim = 1;
  std::uint64_t seed = 0;
  Alphabet alphabet = Alphabet::Base;
};

/// Random permutation-with-phases unitary; evolves one term per term, so it
/// can be iterated to any horizon.
struct PhasedMachine {
  int internal_dim = 1;
  std::uint64_t seed = 0;
  Alphabet alphabet = Alphabet::Base;
};

struct MachineSpec {
  std::variant<DenseMachine, ProgramMachine, BranchingMachine, RandomMachine,
               PhasedMachine>
      kind;
  std::string tag;
};

/// Builds and validates the step operator; throws NotUnitaryError with the
/// max deviation if the cell unitary fails U†U = I to 1e-12.
StepOperator build_step(const MachineSpec& spec);

/// Unitarity deviation max |(U†U - I)_{ij}|.
double unitarity_deviation(const Eigen::SparseMatrix<Complex>& u);

/// One application of the step operator (head advances by one site).
SparseState apply_step(const StepOperator& op, const SparseState& psi);

/// T^n psi.
SparseState apply_steps(const StepOperator& op, const SparseState& psi, int n);

/// One step split by the symbol committed at the site the head just left:
/// first = blank-committed part, second = expression-symbol part. The two are
/// orthogonal and sum to apply_step(op, psi).
std::pair<SparseState, SparseState> split_apply(const StepOperator& op,
                                                const SparseState& psi);

/// Probability that the tape over [lo, lo + |pattern| - 1] spells `pattern`
/// ('0' matches blank). The head may be anywhere.
double region_expectation(const SparseState& psi, int lo,
                          std::string_view pattern);

/// Convenience builders.
MachineSpec blank_machine();
MachineSpec program_machine(const std::vector<std::string>& expressions,
                            int pad_blanks = 1);
MachineSpec branching_machine(
    const std::vector<std::pair<double, std::vector<std::string>>>& branches,
    int horizon = 160);

}  // namespace quenum

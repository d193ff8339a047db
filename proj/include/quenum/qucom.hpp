#pragma once

#include <cstdint>
#include <vector>

#include "quenum/semantics.hpp"
#include "quenum/state.hpp"

namespace quenum {

/// One enumerator block: for every length-n argument string X, a superposed
/// claim pair over the sign cell, with the payload region expanded to X in
/// the positive branch when X is not a sentence. The block's flag ancilla
/// records whether X is a sentence (those arguments keep a blank payload).
struct QucomBlock {
  int n = 0;              // argument length
  int start = 0;          // sign cell site a
  int sentence_end = 0;   // site of the closing ')' (a + n + 3)
  int payload_start = 0;  // sentence_end + 2
  int payload_end = 0;    // payload_start + n - 1
  SparseState state;      // 2 * 4^n terms, unit norm
};

struct QucomState {
  int n_max = 0;
  int head_site = 0;  // two sites past the last block, shared by every term
  std::vector<QucomBlock> blocks;
  long long script_ops = 0;  // elementary scripted operations used to build
};

/// Builds blocks n = 1..n_max (desk scale caps n_max at 6: beyond that the
/// block states get too large and argument strings could start colliding
/// with sentence runs from other blocks).
QucomState build_qucom(int n_max);

/// Tensor product of all blocks as one sparse state (term count is the
/// product of block term counts; throws ScaleExceededError above the cap).
SparseState qucom_full_state(const QucomState& q,
                             std::size_t max_terms = 2000000);

/// Checks validity, truth, completeness, and pair consistency of every
/// atomic sentence with argument length <= n_max against the built state.
/// Sentences of argument length n involve only block n's cells, so the
/// checks run block-locally; the result is exact for the full state.
SemanticsReport verify_qucom(const QucomState& q,
                             double eps = kProbabilityEpsilon);

struct QftRow {
  long long y = 0;
  double p_branch = 0.0;     // probability of reading the positive claim P(Y)
  double notp_branch = 0.0;  // probability of reading ~P(Y)
};

struct QftDistribution {
  int n = 0;
  std::vector<QftRow> rows;  // y = 0 .. 4^n - 1
  double p_branch_total = 0.0;
  double notp_branch_total = 0.0;
};

/// Fourier transform over the argument cells of block n (digits ~,P,(,) ->
/// 0,1,2,3, most significant leftmost), restricted to the non-sentence
/// arguments. The positive branch carries an X-dependent payload, so its
/// distribution is uniform; the negative branch interferes coherently.
QftDistribution qft_argument(const QucomState& q, int n);

struct EfficiencyReport {
  int n_max = 0;
  long long sentences_exact = 0;    // sum over n of 2 (4^n - exact count)
  double sentences_formula = 0.0;   // same with the closed-form count
  long long script_ops = 0;
};

EfficiencyReport qucom_efficiency_report(const QucomState& q);

}  // namespace quenum

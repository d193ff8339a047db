#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "quenum/symbols.hpp"

namespace quenum {

using Complex = std::complex<double>;

/// Ternary measurement-record label for one ancilla qubyte.
enum class AncillaLabel : std::uint8_t { Init = 0, Zero = 1, One = 2 };

char to_char(AncillaLabel l);

/// One classical configuration: internal head state, head site, and a
/// finitely supported tape. Blank entries are never stored, so equality and
/// hashing see the canonical form. Ancilla labels are part of the identity.
class BasisConfig {
 public:
  BasisConfig() = default;
  BasisConfig(int internal, int head) : internal_(internal), head_(head) {}

  int internal() const { return internal_; }
  int head() const { return head_; }
  void set_internal(int l) { internal_ = l; }
  void set_head(int j) { head_ = j; }

  Symbol symbol_at(int site) const;
  /// Writes a symbol; writing Blank erases the entry.
  void set_symbol(int site, Symbol s);

  /// Sorted (site, symbol) pairs of the non-blank support.
  const std::vector<std::pair<int, Symbol>>& support() const { return tape_; }
  int support_min() const { return tape_.empty() ? 0 : tape_.front().first; }
  int support_max() const { return tape_.empty() ? 0 : tape_.back().first; }

  const std::vector<AncillaLabel>& ancilla() const { return ancilla_; }
  void append_ancilla(AncillaLabel l) { ancilla_.push_back(l); }
  void set_ancilla(int i, AncillaLabel l) {
    ancilla_[static_cast<std::size_t>(i)] = l;
  }

  /// Tape rendered as characters over [lo, hi], blanks as '0'.
  std::string window(int lo, int hi) const;

  std::size_t hash() const;

  friend bool operator==(const BasisConfig& a, const BasisConfig& b) = default;
  friend auto operator<=>(const BasisConfig& a,
                          const BasisConfig& b) = default;

 private:
  int internal_ = 0;
  int head_ = 0;
  std::vector<std::pair<int, Symbol>> tape_;  // sorted by site, no blanks
  std::vector<AncillaLabel> ancilla_;
};

struct BasisConfigHash {
  std::size_t operator()(const BasisConfig& c) const { return c.hash(); }
};

/// Complex-amplitude map over basis configurations. Exact zeros are pruned on
/// write; nonzero but tiny amplitudes are kept. Immutable by convention once
/// built (the mutating interface exists for builders).
class SparseState {
 public:
  using TermMap = std::unordered_map<BasisConfig, Complex, BasisConfigHash>;

  explicit SparseState(int internal_dim = 1) : internal_dim_(internal_dim) {}

  int internal_dim() const { return internal_dim_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  Complex amplitude(const BasisConfig& c) const;
  /// Adds into the term for `c`, erasing it if the sum is exactly zero.
  void add_term(const BasisConfig& c, Complex amp);

  double norm_squared() const;

  /// Terms in a deterministic (configuration-sorted) order.
  std::vector<std::pair<BasisConfig, Complex>> sorted_terms() const;

 private:
  int internal_dim_;
  TermMap terms_;
};

/// |0, 0, all-blank>: internal state 0 of L, head at the origin, blank tape.
SparseState init_state(int internal_dim);

/// Sum over shared configurations of conj(a) * b. Dimensions must agree.
Complex inner_product(const SparseState& a, const SparseState& b);

/// Linear combination with exact-zero pruning.
SparseState superpose(
    const std::vector<std::pair<Complex, const SparseState*>>& parts);
SparseState superpose(const std::vector<std::pair<Complex, SparseState>>& parts);

/// Appends `count` ancilla qubytes in the no-measurement state to every term.
SparseState attach_ancilla(const SparseState& psi, int count);

/// Appends the given labels to every term (measurement-record bookkeeping).
SparseState with_ancilla(const SparseState& psi,
                         const std::vector<AncillaLabel>& labels);

}  // namespace quenum

#include "quenum/dynamics.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "quenum/errors.hpp"

namespace quenum {

namespace {

constexpr double kUnitarityTolerance = 1e-12;

Alphabet alphabet_of(const std::vector<Expression>& exprs) {
  for (const auto& e : exprs) {
    for (char c : e.str()) {
      if (c == 'N') return Alphabet::Extended;
    }
  }
  return Alphabet::Base;
}

/// Symbols one full program cycle emits: each expression followed by a blank
/// separator, then the configured extra padding blanks.
std::vector<Symbol> program_cycle(const ProgramSpec& p) {
  std::vector<Symbol> cycle;
  for (const auto& e : p.expressions) {
    for (int i = 0; i < e.length(); ++i) cycle.push_back(e.symbol(i));
    cycle.push_back(Symbol::Blank);
  }
  for (int i = 0; i < p.pad_blanks; ++i) cycle.push_back(Symbol::Blank);
  if (cycle.empty()) cycle.push_back(Symbol::Blank);
  return cycle;
}

using Triplet = Eigen::Triplet<Complex>;

/// Cell unitary for a per-internal-state write function and internal map:
/// |l, s, t> -> sum_l' R(l',l) |l', s (+) w(l), t>. The committed symbol is
/// added mod k onto the old head cell, which is a permutation in s and leaves
/// the look-ahead cell untouched, so unitarity reduces to that of R.
Eigen::SparseMatrix<Complex> lift_internal(
    const Eigen::SparseMatrix<Complex>& internal_map,
    const std::vector<Symbol>& write, int symbols) {
  const int L = static_cast<int>(internal_map.rows());
  const int k = symbols;
  const int dim = L * k * k;
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(internal_map.nonZeros()) *
               static_cast<std::size_t>(k * k));
  for (int l = 0; l < L; ++l) {
    const int w = code(write[static_cast<std::size_t>(l)]);
    for (Eigen::SparseMatrix<Complex>::InnerIterator it(internal_map, l); it;
         ++it) {
      const int lp = static_cast<int>(it.row());
      for (int s = 0; s < k; ++s) {
        const int sp = (s + w) % k;
        for (int t = 0; t < k; ++t) {
          trip.emplace_back(lp * k * k + sp * k + t, l * k * k + s * k + t,
                            it.value());
        }
      }
    }
  }
  Eigen::SparseMatrix<Complex> u(dim, dim);
  u.setFromTriplets(trip.begin(), trip.end());
  return u;
}

Eigen::SparseMatrix<Complex> cyclic_counter(int L) {
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(L));
  for (int l = 0; l < L; ++l) {
    trip.emplace_back((l + 1) % L, l, Complex(1.0, 0.0));
  }
  Eigen::SparseMatrix<Complex> m(L, L);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

StepOperator build_program(const ProgramMachine& m, const std::string& tag) {
  const Alphabet alphabet = alphabet_of(m.program.expressions);
  const std::vector<Symbol> cycle = program_cycle(m.program);
  const int L = static_cast<int>(cycle.size());
  StepOperator op;
  op.internal_dim = L;
  op.symbols = symbol_count(alphabet);
  op.cell_unitary = lift_internal(cyclic_counter(L), cycle, op.symbols);
  op.tag = tag;
  return op;
}

StepOperator build_branching(const BranchingMachine& m,
                             const std::string& tag) {
  if (m.branches.empty()) {
    throw ParseError("branching machine needs at least one branch");
  }
  const int B = static_cast<int>(m.branches.size());
  const int H = m.horizon;
  if (H < 2) throw ParseError("branching horizon must be at least 2");

  double total = 0.0;
  for (const auto& b : m.branches) {
    if (b.weight <= 0.0) throw ParseError("branch weights must be positive");
    total += b.weight;
  }

  Alphabet alphabet = Alphabet::Base;
  std::vector<std::vector<Symbol>> cycles;
  for (const auto& b : m.branches) {
    if (alphabet_of(b.program.expressions) == Alphabet::Extended) {
      alphabet = Alphabet::Extended;
    }
    cycles.push_back(program_cycle(b.program));
  }

  // Internal layout: state 0 starts; branch i owns the chain
  // [1 + i*H, 1 + i*H + H - 1]. Step one rotates 0 into the chain entries and
  // the single-cycle permutation then advances every chain state, so each
  // branch runs deterministically for H steps before the chain would re-enter
  // the rotation block.
  const int L = 1 + B * H;
  auto entry = [H](int i) { return 1 + i * H; };

  Eigen::MatrixXcd reflect = Eigen::MatrixXcd::Identity(B + 1, B + 1);
  {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(B + 1);
    for (int i = 0; i < B; ++i) {
      v(i + 1) = std::sqrt(m.branches[static_cast<std::size_t>(i)].weight /
                           total);
    }
    v.normalize();
    Eigen::VectorXcd u = Eigen::VectorXcd::Unit(B + 1, 0) - v;
    const double u2 = u.squaredNorm();
    if (u2 > 1e-30) reflect -= (2.0 / u2) * (u * u.adjoint());
    // Rounding can leave ~1e-16 residues where the reflection is an exact
    // zero; those residues would put amplitude on guarded states.
    for (int r = 0; r <= B; ++r) {
      for (int c = 0; c <= B; ++c) {
        if (std::abs(reflect(r, c)) < 1e-13) reflect(r, c) = Complex(0.0, 0.0);
      }
    }
  }
  std::vector<int> subspace(static_cast<std::size_t>(B) + 1, 0);
  for (int i = 0; i < B; ++i) subspace[static_cast<std::size_t>(i) + 1] = entry(i);

  std::vector<int> advance(static_cast<std::size_t>(L));
  advance[0] = entry(0);
  for (int i = 0; i < B; ++i) {
    for (int j = 0; j < H - 1; ++j) advance[static_cast<std::size_t>(entry(i) + j)] = entry(i) + j + 1;
    advance[static_cast<std::size_t>(entry(i) + H - 1)] =
        i + 1 < B ? entry(i + 1) : 0;
  }

  std::vector<Triplet> trip;
  std::vector<bool> in_subspace(static_cast<std::size_t>(L), false);
  for (int idx : subspace) in_subspace[static_cast<std::size_t>(idx)] = true;
  for (int l = 0; l < L; ++l) {
    if (!in_subspace[static_cast<std::size_t>(l)]) {
      trip.emplace_back(advance[static_cast<std::size_t>(l)], l,
                        Complex(1.0, 0.0));
    }
  }
  for (int c = 0; c <= B; ++c) {
    for (int r = 0; r <= B; ++r) {
      if (reflect(r, c) != Complex(0.0, 0.0)) {
        trip.emplace_back(
            advance[static_cast<std::size_t>(subspace[static_cast<std::size_t>(r)])],
            subspace[static_cast<std::size_t>(c)], reflect(r, c));
      }
    }
  }
  Eigen::SparseMatrix<Complex> internal_map(L, L);
  internal_map.setFromTriplets(trip.begin(), trip.end());

  // State 0 and chain entries write a blank; chain state entry(i)+j writes
  // branch i's cycle symbol j-1 (the rotation step itself emits the blank).
  std::vector<Symbol> write(static_cast<std::size_t>(L), Symbol::Blank);
  for (int i = 0; i < B; ++i) {
    const auto& cyc = cycles[static_cast<std::size_t>(i)];
    for (int j = 1; j < H; ++j) {
      write[static_cast<std::size_t>(entry(i) + j)] =
          cyc[static_cast<std::size_t>((j - 1) % static_cast<int>(cyc.size()))];
    }
  }

  StepOperator op;
  op.internal_dim = L;
  op.symbols = symbol_count(alphabet);
  op.cell_unitary = lift_internal(internal_map, write, op.symbols);
  op.no_reentry.assign(subspace.begin(), subspace.end());
  op.tag = tag;
  return op;
}

StepOperator build_dense(const DenseMachine& m, const std::string& tag) {
  const int k = symbol_count(m.alphabet);
  const int dim = m.internal_dim * k * k;
  if (m.entries.rows() != dim || m.entries.cols() != dim) {
    std::ostringstream msg;
    msg << "dense machine matrix must be " << dim << "x" << dim << " ("
        << k * k << "L with L=" << m.internal_dim << "), got "
        << m.entries.rows() << "x" << m.entries.cols();
    throw ParseError(msg.str());
  }
  StepOperator op;
  op.internal_dim = m.internal_dim;
  op.symbols = k;
  op.cell_unitary = m.entries.sparseView();
  op.tag = tag;
  return op;
}

StepOperator build_random(const RandomMachine& m, const std::string& tag) {
  const int k = symbol_count(m.alphabet);
  const int dim = m.internal_dim * k * k;
  std::mt19937_64 rng(m.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  StepOperator op;
  op.internal_dim = m.internal_dim;
  op.symbols = k;
  op.cell_unitary = q.sparseView();
  op.tag = tag;
  return op;
}

StepOperator build_phased(const PhasedMachine& m, const std::string& tag) {
  const int k = symbol_count(m.alphabet);
  const int dim = m.internal_dim * k * k;
  std::mt19937_64 rng(m.seed);
  std::vector<int> perm(static_cast<std::size_t>(dim));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(dim));
  for (int c = 0; c < dim; ++c) {
    const double a = angle(rng);
    trip.emplace_back(perm[static_cast<std::size_t>(c)], c,
                      Complex(std::cos(a), std::sin(a)));
  }
  StepOperator op;
  op.internal_dim = m.internal_dim;
  op.symbols = k;
  op.cell_unitary = Eigen::SparseMatrix<Complex>(dim, dim);
  op.cell_unitary.setFromTriplets(trip.begin(), trip.end());
  op.tag = tag;
  return op;
}

}  // namespace

double unitarity_deviation(const Eigen::SparseMatrix<Complex>& u) {
  if (u.rows() != u.cols()) return 1.0;
  Eigen::SparseMatrix<Complex> gram = u.adjoint() * u;
  double dev = 0.0;
  for (int c = 0; c < gram.outerSize(); ++c) {
    bool diag_seen = false;
    for (Eigen::SparseMatrix<Complex>::InnerIterator it(gram, c); it; ++it) {
      if (it.row() == c) {
        diag_seen = true;
        dev = std::max(dev, std::abs(it.value() - Complex(1.0, 0.0)));
      } else {
        dev = std::max(dev, std::abs(it.value()));
      }
    }
    if (!diag_seen) dev = std::max(dev, 1.0);
  }
  return dev;
}

StepOperator build_step(const MachineSpec& spec) {
  StepOperator op = std::visit(
      [&spec](const auto& m) -> StepOperator {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DenseMachine>) {
          return build_dense(m, spec.tag);
        } else if constexpr (std::is_same_v<T, ProgramMachine>) {
          return build_program(m, spec.tag);
        } else if constexpr (std::is_same_v<T, BranchingMachine>) {
          return build_branching(m, spec.tag);
        } else if constexpr (std::is_same_v<T, RandomMachine>) {
          return build_random(m, spec.tag);
        } else {
          return build_phased(m, spec.tag);
        }
      },
      spec.kind);
  const double dev = unitarity_deviation(op.cell_unitary);
  if (dev > kUnitarityTolerance) {
    std::ostringstream msg;
    msg << "cell unitary fails U†U = I: max deviation " << dev;
    throw NotUnitaryError(msg.str(), dev);
  }
  return op;
}

SparseState apply_step(const StepOperator& op, const SparseState& psi) {
  if (psi.internal_dim() != op.internal_dim) {
    throw DimensionMismatchError("state and step operator disagree on L");
  }
  SparseState out(op.internal_dim);
  const int k = op.symbols;
  for (const auto& [c, amp] : psi.terms()) {
    if (!op.no_reentry.empty() && c.head() > 0 &&
        std::find(op.no_reentry.begin(), op.no_reentry.end(), c.internal()) !=
            op.no_reentry.end()) {
      throw HorizonExceededError(
          "branching machine iterated past its chain horizon");
    }
    const int j = c.head();
    const Symbol s = c.symbol_at(j);
    const Symbol t = c.symbol_at(j + 1);
    if (code(s) >= k || code(t) >= k) {
      throw DimensionMismatchError("tape symbol outside machine alphabet");
    }
    const int col = op.index(c.internal(), s, t);
    for (Eigen::SparseMatrix<Complex>::InnerIterator it(op.cell_unitary, col);
         it; ++it) {
      const int row = static_cast<int>(it.row());
      BasisConfig next = c;
      next.set_internal(row / (k * k));
      next.set_symbol(j, symbol_from_code((row / k) % k));
      next.set_symbol(j + 1, symbol_from_code(row % k));
      next.set_head(j + 1);
      out.add_term(next, amp * it.value());
    }
  }
  return out;
}

SparseState apply_steps(const StepOperator& op, const SparseState& psi,
                        int n) {
  SparseState out = psi;
  for (int i = 0; i < n; ++i) out = apply_step(op, out);
  return out;
}

std::pair<SparseState, SparseState> split_apply(const StepOperator& op,
                                                const SparseState& psi) {
  SparseState stepped = apply_step(op, psi);
  SparseState blank_part(op.internal_dim);
  SparseState symbol_part(op.internal_dim);
  for (const auto& [c, amp] : stepped.terms()) {
    if (c.symbol_at(c.head() - 1) == Symbol::Blank) {
      blank_part.add_term(c, amp);
    } else {
      symbol_part.add_term(c, amp);
    }
  }
  return {std::move(blank_part), std::move(symbol_part)};
}

double region_expectation(const SparseState& psi, int lo,
                          std::string_view pattern) {
  if (pattern.empty()) throw BadRegionError("empty region pattern");
  std::vector<Symbol> want;
  want.reserve(pattern.size());
  for (char ch : pattern) {
    auto s = symbol_from_char(ch);
    if (!s) throw BadRegionError(std::string("bad region symbol '") + ch + "'");
    want.push_back(*s);
  }
  double prob = 0.0;
  for (const auto& [c, amp] : psi.terms()) {
    bool match = true;
    for (std::size_t i = 0; i < want.size(); ++i) {
      if (c.symbol_at(lo + static_cast<int>(i)) != want[i]) {
        match = false;
        break;
      }
    }
    if (match) prob += std::norm(amp);
  }
  return prob;
}

MachineSpec blank_machine() {
  MachineSpec spec;
  spec.kind = ProgramMachine{};
  spec.tag = "builtin:blank";
  return spec;
}

MachineSpec program_machine(const std::vector<std::string>& expressions,
                            int pad_blanks) {
  ProgramMachine m;
  m.program.pad_blanks = pad_blanks;
  std::string joined;
  for (const auto& text : expressions) {
    m.program.expressions.push_back(Expression(text));
    if (!joined.empty()) joined += ",";
    joined += text;
  }
  MachineSpec spec;
  spec.kind = std::move(m);
  spec.tag = expressions.empty() ? "builtin:blank" : "builtin:program:" + joined;
  return spec;
}

MachineSpec branching_machine(
    const std::vector<std::pair<double, std::vector<std::string>>>& branches,
    int horizon) {
  BranchingMachine m;
  m.horizon = horizon;
  std::string joined;
  for (const auto& [w, exprs] : branches) {
    BranchSpec b;
    b.weight = w;
    for (const auto& text : exprs) b.program.expressions.push_back(Expression(text));
    m.branches.push_back(std::move(b));
    if (!joined.empty()) joined += "|";
    joined += std::to_string(w);
    for (const auto& text : exprs) joined += "," + text;
  }
  MachineSpec spec;
  spec.kind = std::move(m);
  spec.tag = "builtin:branching:" + joined;
  return spec;
}

}  // namespace quenum

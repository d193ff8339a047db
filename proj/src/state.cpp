#include "quenum/state.hpp"

#include <algorithm>

#include "quenum/errors.hpp"

namespace quenum {

char to_char(AncillaLabel l) {
  switch (l) {
    case AncillaLabel::Init: return 'i';
    case AncillaLabel::Zero: return '0';
    case AncillaLabel::One: return '1';
  }
  return '?';
}

Symbol BasisConfig::symbol_at(int site) const {
  auto it = std::lower_bound(
      tape_.begin(), tape_.end(), site,
      [](const std::pair<int, Symbol>& e, int s) { return e.first < s; });
  if (it != tape_.end() && it->first == site) return it->second;
  return Symbol::Blank;
}

void BasisConfig::set_symbol(int site, Symbol s) {
  auto it = std::lower_bound(
      tape_.begin(), tape_.end(), site,
      [](const std::pair<int, Symbol>& e, int x) { return e.first < x; });
  if (it != tape_.end() && it->first == site) {
    if (s == Symbol::Blank) {
      tape_.erase(it);
    } else {
      it->second = s;
    }
  } else if (s != Symbol::Blank) {
    tape_.insert(it, {site, s});
  }
}

std::string BasisConfig::window(int lo, int hi) const {
  std::string out;
  out.reserve(static_cast<std::size_t>(hi >= lo ? hi - lo + 1 : 0));
  for (int site = lo; site <= hi; ++site) out.push_back(to_char(symbol_at(site)));
  return out;
}

std::size_t BasisConfig::hash() const {
  // FNV-1a over the canonical field bytes.
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::size_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(static_cast<std::size_t>(internal_));
  mix(static_cast<std::size_t>(head_) + 0x9e3779b97f4a7c15ull);
  for (const auto& [site, sym] : tape_) {
    mix(static_cast<std::size_t>(site) * 6364136223846793005ull);
    mix(static_cast<std::size_t>(sym));
  }
  for (AncillaLabel l : ancilla_) mix(static_cast<std::size_t>(l) + 17);
  return h;
}

Complex SparseState::amplitude(const BasisConfig& c) const {
  auto it = terms_.find(c);
  return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

void SparseState::add_term(const BasisConfig& c, Complex amp) {
  if (amp == Complex(0.0, 0.0)) {
    return;
  }
  auto [it, inserted] = terms_.try_emplace(c, amp);
  if (!inserted) {
    it->second += amp;
    if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
  }
}

double SparseState::norm_squared() const {
  double n2 = 0.0;
  for (const auto& [c, a] : terms_) n2 += std::norm(a);
  return n2;
}

std::vector<std::pair<BasisConfig, Complex>> SparseState::sorted_terms() const {
  std::vector<std::pair<BasisConfig, Complex>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

SparseState init_state(int internal_dim) {
  if (internal_dim < 1) {
    throw InvalidDimensionError("internal dimension must be at least 1");
  }
  SparseState psi(internal_dim);
  psi.add_term(BasisConfig(0, 0), Complex(1.0, 0.0));
  return psi;
}

Complex inner_product(const SparseState& a, const SparseState& b) {
  if (a.internal_dim() != b.internal_dim()) {
    throw DimensionMismatchError("inner product of states with different L");
  }
  const SparseState& small = a.term_count() <= b.term_count() ? a : b;
  const SparseState& large = a.term_count() <= b.term_count() ? b : a;
  Complex sum(0.0, 0.0);
  for (const auto& [c, amp] : small.terms()) {
    Complex other = large.amplitude(c);
    if (&small == &a) {
      sum += std::conj(amp) * other;
    } else {
      sum += std::conj(other) * amp;
    }
  }
  return sum;
}

SparseState superpose(
    const std::vector<std::pair<Complex, const SparseState*>>& parts) {
  if (parts.empty()) return SparseState(1);
  int dim = parts.front().second->internal_dim();
  SparseState out(dim);
  for (const auto& [coeff, psi] : parts) {
    if (psi->internal_dim() != dim) {
      throw DimensionMismatchError("superpose over states with different L");
    }
    if (coeff == Complex(0.0, 0.0)) continue;
    for (const auto& [c, amp] : psi->terms()) out.add_term(c, coeff * amp);
  }
  return out;
}

SparseState superpose(
    const std::vector<std::pair<Complex, SparseState>>& parts) {
  std::vector<std::pair<Complex, const SparseState*>> refs;
  refs.reserve(parts.size());
  for (const auto& [coeff, psi] : parts) refs.emplace_back(coeff, &psi);
  return superpose(refs);
}

SparseState attach_ancilla(const SparseState& psi, int count) {
  std::vector<AncillaLabel> labels(static_cast<std::size_t>(count),
                                   AncillaLabel::Init);
  return with_ancilla(psi, labels);
}

SparseState with_ancilla(const SparseState& psi,
                         const std::vector<AncillaLabel>& labels) {
  SparseState out(psi.internal_dim());
  for (const auto& [c, amp] : psi.terms()) {
    BasisConfig tagged = c;
    for (AncillaLabel l : labels) tagged.append_ancilla(l);
    out.add_term(tagged, amp);
  }
  return out;
}

}  // namespace quenum

#include "quenum/projector.hpp"

#include <cmath>

#include "quenum/errors.hpp"

namespace quenum {

namespace {

// Shared occurrence test with early exit on the first mismatching cell.
bool delimited_at(const BasisConfig& c, const Expression& x, int b) {
  const int len = x.length();
  const int a = b - len + 1;
  if (c.symbol_at(a - 1) != Symbol::Blank) return false;
  if (c.symbol_at(b + 1) != Symbol::Blank) return false;
  for (int i = 0; i < len; ++i) {
    if (c.symbol_at(a + i) != x.symbol(i)) return false;
  }
  return true;
}

bool delimited_in(const BasisConfig& c, const Expression& x, int m, int n) {
  for (int b = m + x.length() - 1; b <= n; ++b) {
    if (delimited_at(c, x, b)) return true;
  }
  return false;
}

std::string region_desc(const Expression& x, int m, int n) {
  return x.str() + ",[" + std::to_string(m) + "," + std::to_string(n) + "]";
}

}  // namespace

Projector q_at(const Expression& x, int b) {
  return Projector(
      [x, b](const BasisConfig& c) { return delimited_at(c, x, b); },
      "Q{" + x.str() + "@" + std::to_string(b) + "}");
}

Projector q_region(const Expression& x, int m, int n, bool negated) {
  auto pred = [x, m, n, negated](const BasisConfig& c) {
    return delimited_in(c, x, m, n) != negated;
  };
  return Projector(pred, std::string("Q{") + (negated ? "not " : "") +
                             region_desc(x, m, n) + "}");
}

Projector q_first(const Expression& x, int m, int j) {
  auto pred = [x, m, j](const BasisConfig& c) {
    if (!delimited_at(c, x, m + j)) return false;
    for (int b = m + x.length() - 1; b < m + j; ++b) {
      if (delimited_at(c, x, b)) return false;
    }
    return true;
  };
  return Projector(pred, "Q1st{" + x.str() + ",[" + std::to_string(m) + "," +
                             std::to_string(m + j) + "]}");
}

Projector q_h(const Expression& x, int m, int n, int k) {
  const int head = n + k + 2;
  auto pred = [x, m, n, head](const BasisConfig& c) {
    return c.head() == head && delimited_in(c, x, m, n);
  };
  return Projector(pred, "Qh{" + region_desc(x, m, n) + ",head=" +
                             std::to_string(head) + "}");
}

Projector q_head(int j) {
  return Projector([j](const BasisConfig& c) { return c.head() == j; },
                   "Qh{head=" + std::to_string(j) + "}");
}

Projector q_h_anywhere(const Expression& x) {
  auto pred = [x](const BasisConfig& c) {
    return delimited_in(c, x, 0, c.head() - 2);
  };
  return Projector(pred, "Qh{" + x.str() + "}");
}

Projector q_h_anywhere_not(const Expression& x) {
  auto pred = [x](const BasisConfig& c) {
    return !delimited_in(c, x, 0, c.head() - 2);
  };
  return Projector(pred, "Qh{not " + x.str() + "}");
}

Projector combine(const std::vector<Projector>& ops, CombineMode mode) {
  if (ops.empty()) throw BadRegionError("combine needs at least one projector");
  switch (mode) {
    case CombineMode::Not: {
      if (ops.size() != 1) {
        throw BadRegionError("combine(Not) takes exactly one projector");
      }
      Projector p = ops.front();
      return Projector([p](const BasisConfig& c) { return !p.matches(c); },
                       "not(" + p.description() + ")");
    }
    case CombineMode::And: {
      std::vector<Projector> all = ops;
      std::string desc;
      for (const auto& p : all) {
        if (!desc.empty()) desc += " and ";
        desc += p.description();
      }
      return Projector(
          [all](const BasisConfig& c) {
            for (const auto& p : all) {
              if (!p.matches(c)) return false;
            }
            return true;
          },
          desc);
    }
    case CombineMode::Or: {
      std::vector<Projector> all = ops;
      std::string desc;
      for (const auto& p : all) {
        if (!desc.empty()) desc += " or ";
        desc += p.description();
      }
      return Projector(
          [all](const BasisConfig& c) {
            for (const auto& p : all) {
              if (p.matches(c)) return true;
            }
            return false;
          },
          desc);
    }
  }
  throw BadRegionError("unknown combine mode");
}

SparseState apply(const Projector& p, const SparseState& psi) {
  SparseState out(psi.internal_dim());
  for (const auto& [c, amp] : psi.terms()) {
    if (p.matches(c)) out.add_term(c, amp);
  }
  return out;
}

double expectation(const SparseState& psi, const Projector& p) {
  double prob = 0.0;
  for (const auto& [c, amp] : psi.terms()) {
    if (p.matches(c)) prob += std::norm(amp);
  }
  return prob;
}

double sandwich(const SparseState& psi, const Projector& left,
                const StepOperator& op, int m, const Projector& right) {
  SparseState inner = apply(right, psi);
  inner = apply_steps(op, inner, m);
  return expectation(inner, left);
}

}  // namespace quenum

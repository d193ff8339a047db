#include "quenum/io.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "quenum/text.hpp"

namespace quenum {

void dump_state(std::ostream& os, const SparseState& psi) {
  os << "# state dump: terms=" << psi.term_count()
     << " L=" << psi.internal_dim()
     << " norm2=" << format_double(psi.norm_squared()) << "\n";
  for (const auto& [c, amp] : psi.sorted_terms()) {
    const int lo = std::min(0, c.support_min());
    const int hi = std::max(c.head() + 1, c.support_max());
    os << "term internal=" << c.internal() << " head=" << c.head()
       << " window=[" << lo << "," << hi << "] tape=" << c.window(lo, hi)
       << " ancilla=";
    if (c.ancilla().empty()) {
      os << "-";
    } else {
      for (AncillaLabel l : c.ancilla()) os << to_char(l);
    }
    os << " amp=" << format_complex(amp.real(), amp.imag()) << "\n";
  }
}

ExpressionPath tokenize_tape(const BasisConfig& config) {
  ExpressionPath path;
  path.head_site = config.head();
  path.internal_state = config.internal();

  std::string run;
  int run_start = 0;
  int prev_site = 0;
  auto flush = [&](int run_end) {
    if (run.empty()) return;
    path.items.push_back(
        {Expression(run), run_start, run_end < config.head() - 1});
    run.clear();
  };
  for (const auto& [site, sym] : config.support()) {
    if (site >= config.head()) break;
    if (!run.empty() && site != prev_site + 1) flush(prev_site);
    if (run.empty()) run_start = site;
    run.push_back(to_char(sym));
    prev_site = site;
  }
  flush(prev_site);
  return path;
}

BasisConfig config_from_path(const ExpressionPath& path) {
  BasisConfig c(path.internal_state, path.head_site);
  for (const auto& item : path.items) {
    for (int i = 0; i < item.expr.length(); ++i) {
      c.set_symbol(item.start_site + i, item.expr.symbol(i));
    }
  }
  return c;
}

void dump_paths(std::ostream& os, const SparseState& psi) {
  std::map<std::string, double> probs;
  for (const auto& [c, amp] : psi.terms()) {
    ExpressionPath path = tokenize_tape(c);
    std::string key;
    for (const auto& item : path.items) {
      if (!key.empty()) key += " ";
      key += item.expr.str() + "@" + std::to_string(item.start_site);
      if (!item.complete) key += "(incomplete)";
    }
    if (key.empty()) key = "(blank)";
    probs[key] += std::norm(amp);
  }
  std::vector<std::pair<std::string, double>> rows(probs.begin(), probs.end());
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  os << "# expression paths: " << rows.size() << "\n";
  for (const auto& [key, p] : rows) {
    os << "path prob=" << format_double(p) << " " << key << "\n";
  }
}

}  // namespace quenum

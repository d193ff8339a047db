// Command-line front door for the enumeration-machine simulator.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "quenum/dynamics.hpp"
#include "quenum/errors.hpp"
#include "quenum/expression.hpp"
#include "quenum/io.hpp"
#include "quenum/machine_io.hpp"
#include "quenum/qucom.hpp"
#include "quenum/semantics.hpp"
#include "quenum/text.hpp"

namespace {

using namespace quenum;

constexpr int kExitOk = 0;
constexpr int kExitBadConfig = 1;
constexpr int kExitMachineLoad = 2;
constexpr int kExitEquivalence = 3;

struct Output {
  std::string path;  // empty: stdout

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::string full = path;
    const char* dir = std::getenv("QUENUM_OUT_DIR");
    if (dir && *dir && path.front() != '/') {
      full = std::string(dir) + "/" + path;
    }
    std::ofstream out(full);
    if (!out) throw Error("cannot open output file '" + full + "'");
    out << text;
  }
};

StepOperator load_and_build(const std::string& machine) {
  return build_step(load_machine(machine));
}

void check_epsilon(double eps) {
  if (!(eps > 0.0 && eps <= 1e-3)) {
    throw CLI::ValidationError("epsilon must be in (0, 1e-3]");
  }
}

std::string measurement_text(const MeasurementOutcome& outcome) {
  std::ostringstream os;
  os << "# measurement branches: " << outcome.branches.size() << "\n";
  for (const auto& b : outcome.branches) {
    os << "branch labels=";
    for (AncillaLabel l : b.labels) os << to_char(l);
    os << " probability=" << format_double(b.probability) << "\n";
  }
  os << "total_probability=" << format_double(outcome.total_probability)
     << "\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quenum: sparse simulator and semantic checker for quantum "
               "expression-enumeration machines"};
  app.require_subcommand(1);

  std::string machine = "builtin:blank";
  int horizon = 10;
  int m = 0;
  double epsilon = kProbabilityEpsilon;
  int max_len = 8;
  Output out;

  auto add_common = [&](CLI::App* cmd, bool wants_machine) {
    if (wants_machine) {
      cmd->add_option("--machine", machine,
                      "builtin:... name or machine spec file");
    }
    cmd->add_option("--out", out.path, "output file (default stdout)");
  };

  auto* simulate = app.add_subcommand("simulate", "dump the state at a time");
  add_common(simulate, true);
  simulate->add_option("--horizon", horizon, "number of steps")->required();

  auto* paths = app.add_subcommand("paths", "list expression paths");
  add_common(paths, true);
  paths->add_option("--horizon", horizon, "number of steps")->required();

  std::string sentence_list;
  auto* check = app.add_subcommand(
      "check", "truth/validity/consistency/completeness report");
  add_common(check, true);
  check->add_option("--horizon", horizon, "evaluation time")->required();
  check->add_option("--m", m, "referent delay (default 0)");
  check->add_option("--epsilon", epsilon, "zero threshold for probabilities");
  check->add_option("--max-len", max_len, "sentence length cap (default 8)");
  check->add_option("--sentences", sentence_list,
                    "comma-separated explicit sentence list (overrides the "
                    "length sweep)");

  std::string sentence;
  std::string sentence2;
  auto* measure_cmd =
      app.add_subcommand("measure", "premeasurement branch amplitudes");
  add_common(measure_cmd, true);
  measure_cmd->add_option("--sentence", sentence, "sentence S")->required();
  measure_cmd->add_option("--sentence2", sentence2, "optional second sentence");
  measure_cmd->add_option("--n", horizon, "measurement time")->required();
  measure_cmd->add_option("--m", m, "referent delay");

  int nmax = 2;
  auto* construct = app.add_subcommand(
      "construct", "build the valid-and-complete enumerator state and verify");
  add_common(construct, false);
  construct->add_option("--nmax", nmax, "largest argument length")->required();
  construct->add_option("--epsilon", epsilon, "zero threshold");

  int block = 0;
  auto* qft = app.add_subcommand(
      "qft", "argument-register Fourier distribution of an enumerator block");
  qft->alias("qft-analyze");
  add_common(qft, false);
  qft->add_option("--nmax", nmax, "largest argument length")->required();
  qft->add_option("--block", block, "block to analyze (default nmax)");

  std::string chain_x;
  int steps = 8;
  auto* chain_cmd = app.add_subcommand("chain", "norm-sentence chains");
  add_common(chain_cmd, false);
  chain_cmd->add_option("--x", chain_x, "argument expression")->required();
  chain_cmd->add_option("--steps", steps, "maximum chain length");

  int count_from = 1;
  int count_to = 0;
  auto* count_cmd =
      app.add_subcommand("count", "sentence counts vs the closed formula");
  add_common(count_cmd, false);
  count_cmd->add_option("--n", count_from, "single length");
  count_cmd->add_option("--to", count_to, "sweep lengths --n .. --to");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadConfig;
  }

  try {
    check_epsilon(epsilon);
    std::ostringstream os;

    if (simulate->parsed()) {
      StepOperator op = load_and_build(machine);
      SparseState psi = apply_steps(op, init_state(op.internal_dim), horizon);
      os << "# machine: " << op.tag << " horizon: " << horizon << "\n";
      dump_state(os, psi);
    } else if (paths->parsed()) {
      StepOperator op = load_and_build(machine);
      SparseState psi = apply_steps(op, init_state(op.internal_dim), horizon);
      os << "# machine: " << op.tag << " horizon: " << horizon << "\n";
      dump_paths(os, psi);
    } else if (check->parsed()) {
      StepOperator op = load_and_build(machine);
      SemanticsReport rep;
      if (sentence_list.empty()) {
        rep = build_report(op, horizon, m, max_len, epsilon);
      } else {
        std::vector<Expression> sentences;
        std::string cur;
        for (char ch : sentence_list + ",") {
          if (ch == ',') {
            if (!cur.empty()) sentences.push_back(parse(cur, Alphabet::Extended));
            cur.clear();
          } else {
            cur.push_back(ch);
          }
        }
        rep = build_report(op, horizon, m, sentences, epsilon);
      }
      os << rep.to_text();
    } else if (measure_cmd->parsed()) {
      StepOperator op = load_and_build(machine);
      Evolution ev(op);
      Expression s = parse(sentence, Alphabet::Extended);
      MeasurementOutcome outcome =
          sentence2.empty()
              ? measure(ev, s, horizon, m)
              : measure_pair(ev, s, parse(sentence2, Alphabet::Extended),
                             horizon, m);
      os << "# machine: " << op.tag << " n: " << horizon << " m: " << m
         << "\n";
      os << measurement_text(outcome);
    } else if (construct->parsed()) {
      QucomState q = build_qucom(nmax);
      SemanticsReport rep = verify_qucom(q, epsilon);
      EfficiencyReport eff = qucom_efficiency_report(q);
      os << rep.to_text();
      os << "[efficiency]\n";
      os << "sentences_exact=" << eff.sentences_exact
         << " sentences_formula=" << format_double(eff.sentences_formula)
         << " script_ops=" << eff.script_ops << "\n";
    } else if (qft->parsed()) {
      if (block == 0) block = nmax;
      QucomState q = build_qucom(nmax);
      QftDistribution dist = qft_argument(q, block);
      os << "Y,branch,probability\n";
      for (const auto& row : dist.rows) {
        os << row.y << ",P," << format_double(row.p_branch) << "\n";
        os << row.y << ",~P," << format_double(row.notp_branch) << "\n";
      }
    } else if (chain_cmd->parsed()) {
      ChainResult result = chain(parse(chain_x, Alphabet::Extended), steps);
      os << "# chain for X=" << chain_x << "\n";
      for (const auto& s : result.sentences) {
        os << "sentence len=" << s.length()
           << " pn_count=" << pn_repetitions(s) << " " << s.str() << "\n";
      }
      switch (result.status) {
        case ChainStatus::TerminatedNonSentence:
          os << "status=terminated_non_sentence stopped_at="
             << result.stopped_at->str() << "\n";
          break;
        case ChainStatus::TerminatedNegative:
          os << "status=terminated_negative\n";
          break;
        case ChainStatus::Cutoff:
          os << "status=nonterminating_cutoff\n";
          break;
      }
    } else if (count_cmd->parsed()) {
      const int hi = count_to > 0 ? count_to : count_from;
      os << "n,exact,formula,match\n";
      for (int n = count_from; n <= hi; ++n) {
        SentenceCount c = count_sentences(n);
        const bool match = static_cast<double>(c.exact) == c.formula;
        os << n << "," << c.exact << "," << format_double(c.formula) << ","
           << (match ? "yes" : "MISMATCH") << "\n";
      }
    }

    out.write(os.str());
    return kExitOk;
  } catch (const EquivalenceViolationError& e) {
    std::cerr << "internal equivalence violation: " << e.what() << "\n";
    return kExitEquivalence;
  } catch (const ParseError& e) {
    std::cerr << "machine load failed: " << e.what() << "\n";
    return kExitMachineLoad;
  } catch (const UnknownBuiltinError& e) {
    std::cerr << "machine load failed: " << e.what() << "\n";
    return kExitMachineLoad;
  } catch (const NotUnitaryError& e) {
    std::cerr << "machine rejected: " << e.what() << "\n";
    return kExitMachineLoad;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitBadConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadConfig;
  }
}

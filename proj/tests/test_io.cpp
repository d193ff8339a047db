#include <doctest.h>

#include <random>
#include <sstream>

#include "quenum/dynamics.hpp"
#include "quenum/io.hpp"
#include "quenum/state.hpp"

using namespace quenum;

namespace {

BasisConfig config_from(const std::string& tape, int head) {
  BasisConfig c(0, head);
  for (std::size_t i = 0; i < tape.size(); ++i) {
    c.set_symbol(static_cast<int>(i), *symbol_from_char(tape[i]));
  }
  return c;
}

}  // namespace

TEST_CASE("tape tokenization") {
  SUBCASE("separated runs become expressions in site order") {
    ExpressionPath path = tokenize_tape(config_from("0P(~)0~0", 8));
    REQUIRE(path.items.size() == 2);
    CHECK(path.items[0].expr.str() == "P(~)");
    CHECK(path.items[0].start_site == 1);
    CHECK(path.items[0].complete);
    CHECK(path.items[1].expr.str() == "~");
    CHECK(path.items[1].start_site == 6);
    CHECK(path.items[1].complete);
    CHECK(path.head_site == 8);
  }
  SUBCASE("a blank tape tokenizes to the empty path") {
    CHECK(tokenize_tape(BasisConfig(0, 5)).items.empty());
  }
  SUBCASE("a run flush against the head is incomplete") {
    StepOperator op = build_step(program_machine({"P(~)"}));
    SparseState psi = apply_steps(op, init_state(op.internal_dim), 3);
    const BasisConfig c = psi.sorted_terms().front().first;
    ExpressionPath path = tokenize_tape(c);
    REQUIRE(path.items.size() == 1);
    CHECK(path.items[0].expr.str() == "P(~");
    CHECK_FALSE(path.items[0].complete);
  }
  SUBCASE("symbols at or past the head are not part of the path") {
    BasisConfig c = config_from("~0P", 2);
    ExpressionPath path = tokenize_tape(c);
    REQUIRE(path.items.size() == 1);
    CHECK(path.items[0].expr.str() == "~");
  }
  SUBCASE("round trip through rendering") {
    std::mt19937_64 rng(17);
    static constexpr char kChars[4] = {'~', 'P', '(', ')'};
    std::uniform_int_distribution<int> runs(0, 3);
    std::uniform_int_distribution<int> len(1, 4);
    std::uniform_int_distribution<int> pick(0, 3);
    for (int trial = 0; trial < 100; ++trial) {
      ExpressionPath path;
      int site = 0;
      const int k = runs(rng);
      for (int i = 0; i < k; ++i) {
        std::string text;
        const int l = len(rng);
        for (int j = 0; j < l; ++j) text.push_back(kChars[pick(rng)]);
        path.items.push_back({Expression(text), site, true});
        site += l + 1;  // single blank separator
      }
      path.head_site = site + 1;
      BasisConfig rendered = config_from_path(path);
      ExpressionPath back = tokenize_tape(rendered);
      REQUIRE(back.items.size() == path.items.size());
      for (std::size_t i = 0; i < path.items.size(); ++i) {
        CHECK(back.items[i].expr == path.items[i].expr);
        CHECK(back.items[i].start_site == path.items[i].start_site);
        CHECK(back.items[i].complete);
      }
    }
  }
}

TEST_CASE("state dumps are deterministic and complete") {
  StepOperator op = build_step(
      branching_machine({{0.5, {"P(~)", "~"}}, {0.5, {"~P(~)"}}}));
  SparseState psi = apply_steps(op, init_state(op.internal_dim), 9);
  std::ostringstream a;
  std::ostringstream b;
  dump_state(a, psi);
  dump_state(b, psi);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("terms=2") != std::string::npos);
  CHECK(a.str().find("head=9") != std::string::npos);
}

TEST_CASE("path dumps aggregate branch probabilities") {
  StepOperator op = build_step(
      branching_machine({{0.5, {"P(~)", "~"}}, {0.5, {"~P(~)"}}}));
  SparseState psi = apply_steps(op, init_state(op.internal_dim), 8);
  std::ostringstream os;
  dump_paths(os, psi);
  CHECK(os.str().find("paths: 2") != std::string::npos);
  CHECK(os.str().find("P(~)@1") != std::string::npos);
}

#include <doctest.h>

#include <cmath>
#include <vector>

#include "quenum/dynamics.hpp"
#include "quenum/errors.hpp"
#include "quenum/semantics.hpp"

using namespace quenum;

namespace {

Expression expr(const std::string& s) { return parse(s, Alphabet::Extended); }

StepOperator two_path_machine() {
  // Path A prints P(~) and its referent; path B prints the negation alone.
  return build_step(
      branching_machine({{0.5, {"P(~)", "~"}}, {0.5, {"~P(~)"}}}));
}

}  // namespace

TEST_CASE("printability") {
  SUBCASE("the blank machine never prints") {
    StepOperator op = build_step(blank_machine());
    Evolution ev(op);
    for (int n = 1; n <= 12; ++n) {
      CHECK(printability(ev, expr("P(~)"), n) == 0.0);
      CHECK(printability(ev, expr("~"), n) == 0.0);
    }
  }
  SUBCASE("a printed sentence saturates once the head clears it") {
    StepOperator op = build_step(program_machine({"P(~)", "~"}));
    Evolution ev(op);
    CHECK(printability(ev, expr("P(~)"), 4) == 0.0);
    for (int n = 5; n <= 14; ++n) {
      CHECK(printability(ev, expr("P(~)"), n) == doctest::Approx(1.0));
    }
  }
  SUBCASE("nondecreasing in time on branching machines") {
    StepOperator op = two_path_machine();
    Evolution ev(op);
    for (const Expression& s : {expr("P(~)"), expr("~P(~)"), expr("~")}) {
      double last = 0.0;
      for (int n = 1; n <= 20; ++n) {
        const double p = printability(ev, s, n);
        CHECK(p >= last - 1e-15);
        last = p;
      }
    }
  }
}

TEST_CASE("truth on the containing paths") {
  SUBCASE("a fulfilled positive claim is true") {
    StepOperator op = build_step(program_machine({"P(~)", "~"}));
    Evolution ev(op);
    TruthVerdict v = nm_truth(ev, expr("P(~)"), 10, 0);
    CHECK(v.status == TruthStatus::True);
    CHECK(v.witness <= 1e-15);
  }
  SUBCASE("a positive claim unfulfilled on its own path is false") {
    StepOperator op = build_step(program_machine({"P(~)"}));
    Evolution ev(op);
    TruthVerdict v = nm_truth(ev, expr("P(~)"), 10, 0);
    CHECK(v.status == TruthStatus::False);
    CHECK(v.witness == doctest::Approx(1.0));
  }
  SUBCASE("a negative claim is falsified once the referent lands") {
    StepOperator op = build_step(program_machine({"~P(()", "("}));
    Evolution ev(op);
    CHECK(nm_truth(ev, expr("~P(()"), 12, 0).status == TruthStatus::False);
  }
  SUBCASE("an unprinted sentence has no truth value") {
    StepOperator op = build_step(blank_machine());
    Evolution ev(op);
    CHECK(nm_truth(ev, expr("P(~)"), 8, 2).status == TruthStatus::Undefined);
    CHECK(truth(ev, expr("~P(~)"), 8).status == TruthStatus::Undefined);
  }
  SUBCASE("a sentence and its negation can both be true on separate paths") {
    StepOperator op = two_path_machine();
    Evolution ev(op);
    CHECK(truth(ev, expr("P(~)"), 14).status == TruthStatus::True);
    CHECK(truth(ev, expr("~P(~)"), 14).status == TruthStatus::True);
  }
  SUBCASE("the referent may arrive m steps later") {
    // P(~~~~~) prints first; the referent fits only after more steps.
    StepOperator op = build_step(program_machine({"P(~~~~~)", "~~~~~"}));
    Evolution ev(op);
    const int n = 10;  // sentence printed, referent not yet complete
    CHECK(nm_truth(ev, expr("P(~~~~~)"), n, 0).status == TruthStatus::False);
    CHECK(nm_truth(ev, expr("P(~~~~~)"), n, 7).status == TruthStatus::True);
  }
  SUBCASE("falsified nonprintability claims stay false") {
    StepOperator op = build_step(program_machine({"~P(()", "("}));
    Evolution ev(op);
    bool falsified = false;
    for (int n = 1; n <= 20; ++n) {
      TruthVerdict v = nm_truth(ev, expr("~P(()"), n, 0);
      if (v.status == TruthStatus::Undefined) continue;
      if (falsified) CHECK(v.status == TruthStatus::False);
      if (v.status == TruthStatus::False) falsified = true;
    }
    CHECK(falsified);
    TruthVerdict final_v = truth(ev, expr("~P(()"), 20);
    CHECK(final_v.status == TruthStatus::False);
    CHECK(final_v.finality == Finality::Final);
    CHECK(truth(ev, expr("P(()"), 20).finality == Finality::MayChangeWithN);
  }
}

TEST_CASE("validity ties printing to truth") {
  SUBCASE("never printing anything is vacuously valid") {
    StepOperator op = build_step(blank_machine());
    Evolution ev(op);
    for (const char* s : {"P(~)", "~P(~)", "P((()", "~P(PP)"}) {
      ValidityCheck check = validity(ev, expr(s), 10, 0);
      CHECK(check.valid);
      CHECK(check.identity_sum == doctest::Approx(1.0));
    }
  }
  SUBCASE("printing a claim without its referent is invalid") {
    StepOperator op = build_step(program_machine({"P(~)"}));
    Evolution ev(op);
    ValidityCheck check = validity(ev, expr("P(~)"), 10, 0);
    CHECK_FALSE(check.valid);
    CHECK(check.identity_sum < 1.0 - 1e-9);
  }
  SUBCASE("the identity sum is exact for a valid machine") {
    StepOperator op = build_step(program_machine({"P(~)", "~"}));
    Evolution ev(op);
    CHECK(validity(ev, expr("P(~)"), 12, 0).identity_sum == 1.0);
    CHECK(validity(ev, expr("P(~)"), 12, 3).identity_sum == 1.0);
  }
}

TEST_CASE("consistency of claim pairs") {
  SUBCASE("same-path contradiction is caught") {
    StepOperator op = build_step(program_machine({"P(~)", "~P(~)"}));
    Evolution ev(op);
    ConsistencyCheck check = consistency(ev, expr("~"), 12);
    CHECK_FALSE(check.consistent);
    CHECK(check.joint == doctest::Approx(1.0));
    CHECK_FALSE(validity(ev, expr("P(~)"), 12, 0).valid);
  }
  SUBCASE("separate paths are consistent") {
    StepOperator op = two_path_machine();
    Evolution ev(op);
    ConsistencyCheck check = consistency(ev, expr("~"), 14);
    CHECK(check.consistent);
    CHECK(check.joint == 0.0);
  }
  SUBCASE("arguments that are sentences are out of domain") {
    StepOperator op = build_step(blank_machine());
    Evolution ev(op);
    CHECK_THROWS_AS(consistency(ev, expr("P(~)"), 6), NotApplicableError);
  }
  SUBCASE("pair validity forces a vanishing joint element") {
    std::vector<StepOperator> machines;
    machines.push_back(two_path_machine());
    machines.push_back(build_step(program_machine({"P(~)", "~"})));
    machines.push_back(build_step(program_machine({"~P(~)"})));
    machines.push_back(build_step(program_machine({"P(~)", "~P(~)"})));
    machines.push_back(build_step(blank_machine()));
    const std::vector<Expression> args = {expr("~"), expr("("), expr("~~"),
                                          expr("P(")};
    for (const StepOperator& op : machines) {
      Evolution ev(op);
      for (const Expression& x : args) {
        const Expression pos("P(" + x.str() + ")");
        const Expression neg("~P(" + x.str() + ")");
        if (validity(ev, pos, 12, 0).valid && validity(ev, neg, 12, 0).valid) {
          CHECK(consistency(ev, x, 12).joint <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("the self-referential pair blocks validity or printability") {
  SUBCASE("printing the nonprintability fixed point is self-defeating") {
    StepOperator op = build_step(program_machine({"~PN(~PN)"}));
    Evolution ev(op);
    CHECK(printability(ev, expr("~PN(~PN)"), 14) > 0.0);
    CHECK_FALSE(validity(ev, expr("~PN(~PN)"), 14, 0).valid);
  }
  SUBCASE("printing its positive partner alone fails too") {
    StepOperator op = build_step(program_machine({"PN(~PN)"}));
    Evolution ev(op);
    CHECK_FALSE(validity(ev, expr("PN(~PN)"), 14, 0).valid);
  }
  SUBCASE("the blank machine is valid for both with zero printability") {
    StepOperator op = build_step(blank_machine());
    Evolution ev(op);
    for (const char* s : {"~PN(~PN)", "PN(~PN)", "PN(PN)"}) {
      CHECK(printability(ev, expr(s), 14) == 0.0);
      CHECK(validity(ev, expr(s), 14, 0).valid);
    }
  }
}

TEST_CASE("completeness is printability at the horizon") {
  StepOperator blank = build_step(blank_machine());
  Evolution ev(blank);
  CHECK_FALSE(completeness(ev, expr("P(~)"), 10));

  StepOperator prog = build_step(program_machine({"P(~)", "~"}));
  Evolution ev2(prog);
  CHECK(completeness(ev2, expr("P(~)"), 10));
  CHECK(completeness(ev2, expr("~"), 10));
  CHECK_FALSE(completeness(ev2, expr("~P(~)"), 10));
}

TEST_CASE("claim/referent correlations") {
  SUBCASE("deterministic fulfilment gives total positive correlation") {
    StepOperator op = build_step(program_machine({"P(~)", "~"}));
    Evolution ev(op);
    Correlation c = correlation(ev, expr("P(~)"), 12);
    CHECK(c.joint == doctest::Approx(1.0));
    CHECK(c.product == doctest::Approx(1.0));
    CHECK(c.deviation == doctest::Approx(0.0));
  }
  SUBCASE("a valid negation anticorrelates with its referent") {
    StepOperator op =
        build_step(branching_machine({{0.5, {"~P(~)"}}, {0.5, {"~"}}}));
    Evolution ev(op);
    Correlation c = correlation(ev, expr("~P(~)"), 14);
    CHECK(c.joint == 0.0);
    CHECK(c.product == doctest::Approx(0.25));
    CHECK(c.deviation == doctest::Approx(-0.25));
  }
  SUBCASE("the blank machine has no correlations at all") {
    StepOperator op = build_step(blank_machine());
    Evolution ev(op);
    Correlation c = correlation(ev, expr("P(~)"), 10);
    CHECK(c.joint == 0.0);
    CHECK(c.product == 0.0);
    CHECK(c.deviation == 0.0);
  }
}

TEST_CASE("single-sentence premeasurement") {
  SUBCASE("branch probabilities always sum to one") {
    for (int m = 0; m <= 3; ++m) {
      StepOperator op = two_path_machine();
      Evolution ev(op);
      MeasurementOutcome out = measure(ev, expr("P(~)"), 10, m);
      REQUIRE(out.branches.size() == 3);
      CHECK(out.total_probability == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("validity empties the claim-without-referent branch") {
    StepOperator op = build_step(program_machine({"P(~)", "~"}));
    Evolution ev(op);
    MeasurementOutcome out = measure(ev, expr("P(~)"), 10, 0);
    CHECK(out.branches[0].probability == doctest::Approx(1.0));  // (1,1)
    CHECK(out.branches[1].probability == 0.0);                   // (1,0)
    CHECK(out.branches[2].probability == 0.0);                   // (0,i)
  }
  SUBCASE("an unprinted sentence leaves only the no-measurement branch") {
    StepOperator op = build_step(blank_machine());
    Evolution ev(op);
    MeasurementOutcome out = measure(ev, expr("P(~)"), 10, 0);
    CHECK(out.branches[0].probability == 0.0);
    CHECK(out.branches[1].probability == 0.0);
    CHECK(out.branches[2].probability == doctest::Approx(1.0));
    const std::vector<AncillaLabel> want = {AncillaLabel::Zero,
                                            AncillaLabel::Init};
    CHECK(out.branches[2].labels == want);
  }
  SUBCASE("branch weights reproduce the truth witnesses") {
    StepOperator op = two_path_machine();
    Evolution ev(op);
    for (int m = 0; m <= 2; ++m) {
      TruthVerdict v = nm_truth(ev, expr("P(~)"), 12, m);
      MeasurementOutcome out = measure(ev, expr("P(~)"), 12, m);
      CHECK(out.branches[1].probability == doctest::Approx(v.witness));
    }
  }
}

TEST_CASE("two-sentence premeasurement") {
  StepOperator op = two_path_machine();
  Evolution ev(op);

  SUBCASE("nine branches summing to one") {
    MeasurementOutcome out =
        measure_pair(ev, expr("P(~)"), expr("~P((()"), 12, 1);
    CHECK(out.branches.size() == 9);
    CHECK(out.total_probability == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("pair validity leaves at most four branches occupied") {
    MeasurementOutcome out =
        measure_pair(ev, expr("P(~)"), expr("~P(~)"), 12, 0);
    int occupied = 0;
    for (const auto& b : out.branches) {
      if (b.probability > 1e-12) ++occupied;
    }
    CHECK(occupied <= 4);
  }
  SUBCASE("a shared referent zeroes the doubly-true joint branch") {
    MeasurementOutcome out =
        measure_pair(ev, expr("P(~)"), expr("~P(~)"), 12, 0);
    // both sentences present, referent present for S, absent for S'
    const std::vector<AncillaLabel> key = {AncillaLabel::One, AncillaLabel::One,
                                           AncillaLabel::One,
                                           AncillaLabel::Zero};
    bool found = false;
    for (const auto& b : out.branches) {
      if (b.labels == key) {
        CHECK(b.probability == 0.0);
        found = true;
      }
    }
    CHECK(found);
  }
  SUBCASE("identical sentences are rejected") {
    CHECK_THROWS_AS(measure_pair(ev, expr("P(~)"), expr("P(~)"), 10, 0),
                    NotApplicableError);
  }
}

TEST_CASE("second-order sentences check individually") {
  const SentenceSet second = SentenceSet::extended_orders(2);

  SUBCASE("a fulfilled nested claim chain is true at both levels") {
    StepOperator op =
        build_step(program_machine({"P(P(~))", "P(~)", "~"}));
    Evolution ev(op);
    CHECK(nm_truth(ev, expr("P(P(~))"), 16, 0, kProbabilityEpsilon, second)
              .status == TruthStatus::True);
    CHECK(nm_truth(ev, expr("P(~)"), 16, 0).status == TruthStatus::True);
  }
  SUBCASE("claiming both nested polarities forces a base contradiction") {
    // Any single path carrying P(P(~)) and P(~P(~)), made true, must carry
    // P(~) and ~P(~) together, which the base pair consistency rejects.
    StepOperator op = build_step(
        program_machine({"P(P(~))", "P(~P(~))", "P(~)", "~P(~)", "~"}));
    Evolution ev(op);
    CHECK(nm_truth(ev, expr("P(P(~))"), 24, 0, kProbabilityEpsilon, second)
              .status == TruthStatus::True);
    CHECK(nm_truth(ev, expr("P(~P(~))"), 24, 0, kProbabilityEpsilon, second)
              .status == TruthStatus::True);
    CHECK_FALSE(consistency(ev, expr("~"), 24).consistent);
    CHECK_FALSE(validity(ev, expr("~P(~)"), 24, 0).valid);
  }
  SUBCASE("both negated second-order claims may share a path") {
    // Neither P(~) nor ~P(~) is printed, so both negations hold together.
    StepOperator op =
        build_step(program_machine({"~P(P(~))", "~P(~P(~))"}));
    Evolution ev(op);
    CHECK(nm_truth(ev, expr("~P(P(~))"), 16, 0, kProbabilityEpsilon, second)
              .status == TruthStatus::True);
    CHECK(nm_truth(ev, expr("~P(~P(~))"), 16, 0, kProbabilityEpsilon, second)
              .status == TruthStatus::True);
    CHECK(consistency(ev, expr("~"), 16).consistent);
  }
}

TEST_CASE("the referent-only interpretation") {
  SUBCASE("defined everywhere with complementary values") {
    StepOperator op = build_step(blank_machine());
    Evolution ev(op);
    for (const char* x : {"~", "(", "PP"}) {
      TruthVerdict pos =
          alt_truth(ev, Expression("P(" + std::string(x) + ")"), 10);
      TruthVerdict neg =
          alt_truth(ev, Expression("~P(" + std::string(x) + ")"), 10);
      CHECK(pos.status == TruthStatus::False);
      CHECK(neg.status == TruthStatus::True);
      CHECK((pos.status == TruthStatus::True) !=
            (neg.status == TruthStatus::True));
    }
  }
  SUBCASE("can disagree with the path-sum interpretation") {
    StepOperator op =
        build_step(branching_machine({{0.5, {"~P(~)"}}, {0.5, {"~"}}}));
    Evolution ev(op);
    CHECK(truth(ev, expr("~P(~)"), 14).status == TruthStatus::True);
    CHECK(alt_truth(ev, expr("~P(~)"), 14).status == TruthStatus::False);
  }
}

TEST_CASE("delayed-referent inequality chains") {
  SUBCASE("m = 0 collapses both chains to equalities") {
    StepOperator op = two_path_machine();
    Evolution ev(op);
    AppendixCheck check = appendix_check(ev, expr("P(~)"), 8, 0);
    CHECK(check.ok);
    CHECK(check.joint_at_n == check.delayed);
    CHECK(check.delayed == check.joint_at_nm);
  }
  SUBCASE("holds across machines and delays") {
    std::vector<StepOperator> machines;
    machines.push_back(build_step(program_machine({"P(~)", "~"})));
    machines.push_back(build_step(program_machine({"~P(~)", "~"})));
    machines.push_back(two_path_machine());
    machines.push_back(build_step(blank_machine()));
    for (const StepOperator& op : machines) {
      Evolution ev(op);
      for (int n = 1; n <= 8; ++n) {
        for (int m = 0; n + m <= 12; ++m) {
          CHECK(appendix_check(ev, expr("P(~)"), n, m).ok);
          CHECK(appendix_check(ev, expr("~P(~)"), n, m).ok);
        }
      }
    }
  }
}

TEST_CASE("full reports") {
  SUBCASE("report text is deterministic") {
    StepOperator op = two_path_machine();
    SemanticsReport a = build_report(op, 12, 0, 6);
    SemanticsReport b = build_report(op, 12, 0, 6);
    CHECK(a.to_text() == b.to_text());
    CHECK(!a.to_text().empty());
  }
  SUBCASE("valid deterministic machine aggregates cleanly") {
    StepOperator op = build_step(program_machine({"P(~)", "~"}));
    SemanticsReport rep = build_report(op, 12, 0, 5);
    CHECK(rep.aggregate_valid);
    CHECK_FALSE(rep.aggregate_complete);
    CHECK(rep.printable_count == 1);
    CHECK(rep.inconsistent_count == 0);
    for (const auto& rec : rep.self_referential) {
      CHECK(rec.consistency_excluded);
    }
  }
  SUBCASE("the adversarial machine is flagged on both axes") {
    StepOperator op = build_step(program_machine({"P(~)", "~P(~)"}));
    SemanticsReport rep = build_report(op, 12, 0, 5);
    CHECK_FALSE(rep.aggregate_valid);
    CHECK(rep.inconsistent_count == 1);
  }
}

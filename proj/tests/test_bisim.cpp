#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "clb/bisim.hpp"
#include "clb/oracle.hpp"

using namespace clb;

namespace {
Term P(const std::string& s) { return parse_term(s); }
const char* kOmega = "(\\x.x x)(\\x.x x)";

CheckConfig fast_cfg(Strategy s = Strategy::CBN) {
  CheckConfig cfg;
  cfg.strategy = s;
  cfg.fuel = 50;
  cfg.closure_bound = 3;
  return cfg;
}

bool has_clause(const Report& rep, const std::string& name, Verdict v) {
  for (const auto& c : rep.clauses)
    if (c.clause == name && c.verdict == v) return true;
  return false;
}
}  // namespace

TEST_CASE("(I, Omega) is refuted at the convergence clause") {
  CoupledRelation r;
  r.r2.add(P("\\x.x"), P(kOmega));
  Report rep = check_clb(r, fast_cfg());
  CHECK(rep.verdict == Verdict::Refuted);
  CHECK(rep.coupled);
  bool found = false;
  for (const auto& c : rep.clauses)
    if (c.verdict == Verdict::Refuted) {
      found = true;
      // divergence claims are explicit about the fuel approximation
      CHECK(c.detail.find("verification fuel") != std::string::npos);
    }
  CHECK(found);
}

TEST_CASE("non-coupled input is flagged and refuted by check_clb") {
  CoupledRelation r;
  r.r1.add(P("\\x.x"), P("\\x.x"));
  r.r2.add(P("\\x.x"), P(kOmega));
  REQUIRE_FALSE(r.is_coupled());

  // the progression checker only reports the flag
  Report prog = check_progression(r, as_views(r), fast_cfg());
  CHECK_FALSE(prog.coupled);

  // the bisimulation checker folds it into the verdict
  Report rep = check_clb(r, fast_cfg());
  CHECK(rep.verdict == Verdict::Refuted);
  CHECK(has_clause(rep, "coupledness", Verdict::Refuted));
}

TEST_CASE("a self-looping diverging pair is a CLB") {
  CoupledRelation r;
  r.r2.add(P(kOmega), P(kOmega));
  Report rep = check_clb(r, fast_cfg());
  CHECK(rep.verdict == Verdict::HoldsUpToBound);

  // a chain that reaches the loop also works once the reduct pair is present
  CoupledRelation chain;
  chain.r2.add(P("(\\y.(\\x.x x)(\\x.x x))(\\z.z)"), P(kOmega));
  chain.r2.add(P(kOmega), P(kOmega));
  CHECK(check_clb(chain, fast_cfg()).verdict == Verdict::HoldsUpToBound);

  // without the reduct pair no match is ever found; since the responder's
  // chain is infinite this is Inconclusive, not Refuted
  CoupledRelation bare;
  bare.r2.add(P("(\\y.(\\x.x x)(\\x.x x))(\\z.z)"), P(kOmega));
  CHECK(check_clb(bare, fast_cfg()).verdict == Verdict::Inconclusive);
  // with a converging responder the chain completes and refutes
  CoupledRelation refuted;
  refuted.r2.add(P("(\\y.(\\x.x x)(\\x.x x))(\\z.z)"), P("(\\x.x)(\\z.z)"));
  CHECK(check_clb(refuted, fast_cfg()).verdict == Verdict::Refuted);
}

TEST_CASE("cbv requires the abstraction pair itself in R1*") {
  CoupledRelation r;
  r.r2.add(P("\\x.(\\y.y) x"), P("\\x.x"));
  Report rep = check_clb(r, fast_cfg(Strategy::CBV));
  CHECK(rep.verdict == Verdict::Refuted);
  bool abs_pairing = false;
  for (const auto& c : rep.clauses)
    if (c.clause.find("cbv-abs-pairing") != std::string::npos &&
        c.verdict == Verdict::Refuted)
      abs_pairing = true;
  CHECK(abs_pairing);
}

TEST_CASE("applicative bisimulation") {
  CheckConfig cfg = fast_cfg();
  cfg.closure_bound = 2;  // the only closed term of <= 2 nodes is \x.x

  FiniteRelation diverge({{P(kOmega), P(kOmega)}});
  CHECK(check_applicative_bisim(diverge, cfg).verdict ==
        Verdict::HoldsUpToBound);

  FiniteRelation bad({{P("\\x.x"), P(kOmega)}});
  CHECK(check_applicative_bisim(bad, cfg).verdict == Verdict::Refuted);

  // saturated relation pairing \x.x with \x.(\y.y) x
  FiniteRelation sat;
  sat.add(P("\\x.x"), P("\\x.(\\y.y) x"));
  sat.add(P("\\x.x"), P("(\\y.y)(\\x.x)"));
  sat.add(P("\\x.x"), P("\\x.x"));
  CHECK(check_applicative_bisim(sat, cfg).verdict == Verdict::HoldsUpToBound);

  // dropping the saturating pairs refutes it
  FiniteRelation unsat;
  unsat.add(P("\\x.x"), P("\\x.(\\y.y) x"));
  CHECK(check_applicative_bisim(unsat, cfg).verdict == Verdict::Refuted);
}

TEST_CASE("logical bisimulation agrees with the coupled encoding") {
  CheckConfig cfg = fast_cfg();

  LbReport ok = check_logical_bisim(FiniteRelation({{P(kOmega), P(kOmega)}}),
                                    cfg);
  CHECK(ok.verdict == Verdict::HoldsUpToBound);
  CHECK(ok.agree);

  LbReport bad = check_logical_bisim(FiniteRelation({{P("\\x.x"), P(kOmega)}}),
                                     cfg);
  CHECK(bad.verdict == Verdict::Refuted);
  CHECK(bad.agree);
}

TEST_CASE("logical bisimulation agreement on seeded random relations") {
  std::mt19937_64 rng(41);
  CheckConfig cfg = fast_cfg();
  for (int i = 0; i < 30; ++i) {
    CoupledRelation r = generate_relation(rng, 4, 4);
    LbReport lb = check_logical_bisim(r.r2, cfg);
    CHECK(lb.agree);
    CHECK(lb.direct.verdict == lb.via_clb.verdict);
  }
}

TEST_CASE("progression is monotone in the target") {
  CoupledRelation r;
  r.r2.add(P(kOmega), P(kOmega));
  CheckConfig cfg = fast_cfg();
  REQUIRE(check_progression(r, as_views(r), cfg).verdict ==
          Verdict::HoldsUpToBound);

  ViewPair base = as_views(r);
  ViewPair wider{union_view({base.first, identity_view()}),
                 union_view({base.second, identity_view()})};
  CHECK(check_progression(r, wider, cfg).verdict == Verdict::HoldsUpToBound);
}

TEST_CASE("view-level progression on an explicit support set") {
  CoupledRelation r;
  r.r2.add(P(kOmega), P(kOmega));
  ViewPair v = as_views(r);
  Report rep = check_view_progression(v, r.r2.pairs(), v, fast_cfg());
  CHECK(rep.verdict == Verdict::HoldsUpToBound);
}

TEST_CASE("refutation witnesses replay") {
  CoupledRelation r;
  r.r2.add(P("\\x.x"), P(kOmega));
  CheckConfig cfg = fast_cfg();
  Report rep = check_clb(r, cfg);
  REQUIRE(rep.verdict == Verdict::Refuted);
  // the claimed divergence is reproducible at the verification fuel
  EvalOutcome right = evaluate(P(kOmega), cfg.strategy,
                               cfg.verification_fuel());
  CHECK_FALSE(right.converged);
  EvalOutcome left = evaluate(P("\\x.x"), cfg.strategy, cfg.fuel);
  CHECK(left.converged);
}

TEST_CASE("reports serialize with verdict, coupledness and clauses") {
  CoupledRelation r;
  r.r2.add(P("\\x.x"), P(kOmega));
  Report rep = check_clb(r, fast_cfg());
  auto j = rep.to_json();
  CHECK(j["verdict"] == "refuted");
  CHECK(j["coupled"] == true);
  CHECK(j["clauses"].is_array());
  CHECK(!j["clauses"].empty());
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "clb/oracle.hpp"
#include "clb/semantics.hpp"

using namespace clb;

namespace {
Term P(const std::string& s) { return parse_term(s); }
const char* kOmega = "(\\x.x x)(\\x.x x)";
}

TEST_CASE("single steps match the printed rules") {
  Term omega = P(kOmega);
  CHECK(*step(omega, Strategy::CBN) == omega);
  CHECK(*step(omega, Strategy::CBV) == omega);

  // cbn contracts the head redex immediately
  Term t = P("(\\x.x)((\\y.y)(\\z.z))");
  CHECK(*step(t, Strategy::CBN) == P("(\\y.y)(\\z.z)"));
  // cbv reduces the argument first
  CHECK(*step(t, Strategy::CBV) == P("(\\x.x)(\\z.z)"));

  CHECK_FALSE(step(P("\\x.x x"), Strategy::CBN).has_value());
  CHECK_THROWS_AS(step(Term::free_var("x"), Strategy::CBN),
                  std::invalid_argument);
}

TEST_CASE("cbv fires the function side only once the argument is a value") {
  // M V with M reducible and V a value: cbv rule M -> M' / M V -> M' V
  Term t = P("((\\f.f) (\\x.x)) (\\z.z)");
  CHECK(*step(t, Strategy::CBV) == P("(\\x.x) (\\z.z)"));
}

TEST_CASE("evaluate") {
  EvalOutcome r = evaluate(P("(\\x.x)(\\x.x)"), Strategy::CBN, 10);
  CHECK(r.converged);
  CHECK(r.steps == 1);
  CHECK(r.term == P("\\x.x"));

  r = evaluate(P(kOmega), Strategy::CBV, 1000);
  CHECK_FALSE(r.converged);
  CHECK(r.steps == 1000);
  CHECK(r.term == P(kOmega));

  // a value evaluates to itself in 0 steps
  r = evaluate(P("\\x.(\\y.y) x"), Strategy::CBV, 10);
  CHECK(r.converged);
  CHECK(r.steps == 0);
}

TEST_CASE("reduction chains") {
  auto c = reduction_chain(P("(\\x.x)(\\x.x)"), Strategy::CBN, 5);
  REQUIRE(c.size() == 2);
  CHECK(c[1] == P("\\x.x"));

  c = reduction_chain(P(kOmega), Strategy::CBN, 3);
  CHECK(c.size() == 4);  // Omega -> Omega -> Omega -> Omega

  c = reduction_chain(P("(\\x.x)((\\x.x)(\\y.y))"), Strategy::CBV, 5);
  REQUIRE(c.size() == 3);
  CHECK(c[1] == P("(\\x.x)(\\y.y)"));
  CHECK(c[2] == P("\\y.y"));
}

TEST_CASE("determinism and progress on generated closed terms") {
  std::mt19937_64 rng(23);
  GenConfig g;
  g.max_size = 12;
  for (int i = 0; i < 400; ++i) {
    Term t = generate_term(rng, g);
    for (Strategy s : {Strategy::CBN, Strategy::CBV}) {
      auto n1 = step(t, s);
      auto n2 = step(t, s);
      // determinism: repeated stepping gives the identical successor
      CHECK(n1.has_value() == n2.has_value());
      if (n1) CHECK(*n1 == *n2);
      // progress: closed non-values always step
      if (!t.is_value()) CHECK(n1.has_value());
      if (n1) CHECK(n1->is_closed());
    }
  }
}

TEST_CASE("evaluate is monotone in fuel") {
  std::mt19937_64 rng(29);
  GenConfig g;
  g.max_size = 10;
  for (int i = 0; i < 200; ++i) {
    Term t = generate_term(rng, g);
    for (Strategy s : {Strategy::CBN, Strategy::CBV}) {
      EvalOutcome small = evaluate(t, s, 40);
      EvalOutcome big = evaluate(t, s, 200);
      if (small.converged) {
        CHECK(big.converged);
        CHECK(big.term == small.term);
      }
    }
  }
}

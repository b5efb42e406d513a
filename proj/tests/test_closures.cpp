#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "brute_oracle.hpp"
#include "clb/oracle.hpp"
#include "clb/views.hpp"

using namespace clb;

namespace {
Term P(const std::string& s) { return parse_term(s); }
const char* kOmega = "(\\x.x x)(\\x.x x)";

FiniteRelation rel(std::initializer_list<std::pair<const char*, const char*>>
                       pairs,
                   bool closed = true) {
  FiniteRelation r({}, closed);
  for (auto& p : pairs) r.add(P(p.first), P(p.second));
  return r;
}
}  // namespace

TEST_CASE("empty closure is the identity") {
  FiniteRelation empty;
  CHECK(member_open_closure(empty, P("\\x.x"), P("\\y.y")));
  CHECK(member_closed_closure(empty, P("\\x.x"), P("\\x.x")));
  CHECK_FALSE(member_closed_closure(empty, P("\\x.x"), P("\\y.\\z.z")));
  // open pairs are in the open closure but not the closed one
  Term open = Term::free_var("x");
  CHECK(member_open_closure(empty, open, open));
  CHECK_FALSE(member_closed_closure(empty, open, open));
}

TEST_CASE("closure membership on the I/Omega base") {
  FiniteRelation r = rel({{"\\x.x", kOmega}});
  Term I = P("\\x.x");
  Term omega = P(kOmega);
  // (I I, Omega Omega) via [1] [2]
  CHECK(member_open_closure(r, Term::app(I, I), Term::app(omega, omega)));
  // (I I, Omega I) via [1] I
  CHECK(member_open_closure(r, Term::app(I, I), Term::app(omega, I)));
  // (\x.I x, \x.Omega x) via \x.[1] x
  CHECK(member_closed_closure(r, P("\\x.(\\y.y) x"),
                              P("\\x.((\\y.y y)(\\y.y y)) x")));
  // direction matters
  CHECK_FALSE(member_closed_closure(r, omega, I));
}

TEST_CASE("eccn membership") {
  FiniteRelation r2 = rel({{kOmega, kOmega}});
  FiniteRelation empty;
  Term omega = P(kOmega);
  Term I = P("\\x.x");
  ViewPtr heads = finite_view(r2);
  CHECK(member_eccn(heads, empty, Term::app(omega, I), Term::app(omega, I)));
  CHECK(member_eccn(heads, empty, omega, omega));  // k = 0
  // head I is not r2-related to I
  CHECK_FALSE(member_eccn(heads, empty, Term::app(I, omega),
                          Term::app(I, omega)));
}

TEST_CASE("eccv membership follows the three rules") {
  Term A = P("\\a.a a");
  Term B = P("\\b.b");
  FiniteRelation r2({{A, B}});
  ViewPtr base = finite_view(r2);
  ViewPtr id = identity_view();
  Term M = P("(\\x.x)(\\y.y)");  // closed non-value
  Term V = P("\\v.v");           // value
  // rule 2: (M A, M B) with (M, M) in Id
  CHECK(member_eccv(base, id, Term::app(M, A), Term::app(M, B)));
  // rule 3: (A V, B V)
  CHECK(member_eccv(base, id, Term::app(A, V), Term::app(B, V)));
  // non-value in the right-extension position is rejected
  CHECK_FALSE(member_eccv(base, id, Term::app(A, M), Term::app(B, M)));
}

TEST_CASE("ctx closures") {
  // R^C of the empty coupled relation is (Id, Id)
  ViewPair idid = ctx_closure_cbn(as_views(CoupledRelation{}));
  CHECK(idid.first->member(P("\\x.x"), P("\\x.x")));
  CHECK(idid.second->member(P(kOmega), P(kOmega)));
  CHECK_FALSE(idid.second->member(P("\\x.x"), P(kOmega)));

  CoupledRelation r;
  r.r2.add(P(kOmega), P(kOmega));
  ViewPair cn = ctx_closure_cbn(as_views(r));
  CHECK(cn.second->member(Term::app(P(kOmega), P("\\x.x")),
                          Term::app(P(kOmega), P("\\x.x"))));
  ViewPair cv = ctx_closure_cbv(as_views(r));
  CHECK(cv.second->member(Term::app(P(kOmega), P("\\x.x")),
                          Term::app(P(kOmega), P("\\x.x"))));
}

TEST_CASE("enumerate_closure_pairs") {
  FiniteRelation empty;
  auto pairs = enumerate_closure_pairs(empty, 3, false);
  // exactly the identity pairs on closed terms of <= 3 nodes
  auto terms = enumerate_closed_terms(3);
  CHECK(pairs.size() == terms.size());
  for (const auto& p : pairs) CHECK(p.first == p.second);

  FiniteRelation r = rel({{"\\x.x", kOmega}});
  auto one = enumerate_closure_pairs(r, 9, false);
  bool has_base = false;
  for (const auto& p : one)
    if (p.first == P("\\x.x") && p.second == P(kOmega)) has_base = true;
  CHECK(has_base);

  // cbv value restriction keeps only abstraction pairs
  auto vr = enumerate_closure_pairs(empty, 4, true);
  std::size_t abs_count = 0;
  for (const auto& t : enumerate_closed_terms(4))
    if (t.is_value()) ++abs_count;
  CHECK(vr.size() == abs_count);
}

TEST_CASE("combination: related pairs stay related under application") {
  FiniteRelation r = rel({{"\\x.x", kOmega}, {"\\x.\\y.x", "\\x.\\y.y"}});
  auto members = enumerate_closure_pairs(r, 5, false);
  int checked = 0;
  for (std::size_t i = 0; i < members.size() && checked < 200; ++i) {
    for (std::size_t j = 0; j < members.size() && checked < 200; ++j) {
      Term ab = Term::app(members[i].first, members[j].first);
      Term cd = Term::app(members[i].second, members[j].second);
      CHECK(member_closed_closure(r, ab, cd));
      ++checked;
    }
  }
}

TEST_CASE("substitution property of the closed closure") {
  // If \x.C[P~] R* \x.C[Q~] and M R* N then the instantiated bodies are R*.
  FiniteRelation r = rel({{"\\x.x", kOmega}});
  Context c = parse_context("\\x.x [1]");
  Term lamP = fill(c, {P("\\x.x")});
  Term lamQ = fill(c, {P(kOmega)});
  REQUIRE(member_closed_closure(r, lamP, lamQ));
  for (const auto& mn : enumerate_closure_pairs(r, 5, false)) {
    Term lhs = apply_abs(lamP, mn.first);
    Term rhs = apply_abs(lamQ, mn.second);
    CHECK(member_closed_closure(r, lhs, rhs));
  }
}

TEST_CASE("monotonicity in the base relation") {
  FiniteRelation small = rel({{"\\x.x", kOmega}});
  FiniteRelation big = rel({{"\\x.x", kOmega}, {"\\x.\\y.y", "\\x.x"}});
  std::mt19937_64 rng(5);
  auto members = enumerate_closure_pairs(small, 5, false);
  for (const auto& p : members)
    CHECK(member_closed_closure(big, p.first, p.second));
}

TEST_CASE("agreement with the brute-force context oracle") {
  FiniteRelation r = rel({{"\\x.x", kOmega}, {"\\x.\\y.y", "\\x.\\y.y x"}});
  auto terms = enumerate_closed_terms(4);
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::size_t> pick(0, terms.size() - 1);
  int agree = 0, total = 0;
  auto members = enumerate_closure_pairs(r, 5, false);
  std::uniform_int_distribution<std::size_t> pickm(0, members.size() - 1);
  for (int i = 0; i < 120; ++i) {
    Term m = terms[pick(rng)], n = terms[pick(rng)];
    if (i % 2 == 0) {  // bias toward positives
      auto& p = members[pickm(rng)];
      m = p.first;
      n = p.second;
    }
    if (m.size() > 5 || n.size() > 5) continue;
    bool fast = member_closed_closure(r, m, n);
    bool slow = brute::member_closed(r, m, n, 5);
    CHECK(fast == slow);
    agree += (fast == slow);
    ++total;
  }
  CHECK(agree == total);
}

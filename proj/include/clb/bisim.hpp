#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "clb/views.hpp"

namespace clb {

struct CheckConfig {
  Strategy strategy = Strategy::CBN;
  int fuel = 1000;
  int closure_bound = 6;
  int verify_factor = 10;
  int verification_fuel() const { return fuel * verify_factor; }
};

enum class Verdict { HoldsUpToBound, Refuted, Inconclusive };
std::string to_string(Verdict v);
// Merge: Refuted dominates, then Inconclusive.
Verdict combine(Verdict a, Verdict b);

struct ClauseReport {
  ClauseReport() = default;
  ClauseReport(std::string l, std::string r, std::string c)
      : left(std::move(l)), right(std::move(r)), clause(std::move(c)) {}

  std::string left, right;  // the pair under test, printed
  std::string clause;       // 1 | 2 | converse-1 | converse-2 | coupledness |
                            // cbv-abs-pairing | converse-cbv-abs-pairing | ...
  Verdict verdict = Verdict::HoldsUpToBound;
  std::string detail;       // witness description / inconclusive reason
};

struct Report {
  Verdict verdict = Verdict::HoldsUpToBound;
  bool coupled = true;
  std::vector<ClauseReport> clauses;
  nlohmann::ordered_json to_json() const;
  // Append a clause and fold its verdict into the overall one.
  void record(ClauseReport c);
};

// Progression r ~> s: every pair of r2 (and its converse) must match
// reductions with results in s.second; abstractions must converge on the
// other side with bodies related in s.second under all closure-bound-sized
// instantiations drawn from r1* (value-restricted in cbv); cbv additionally
// requires the abstraction pair itself in s.first (dropped by the
// up-to-environment variant). Coupledness of r is reported as its own clause
// but does not veto the progression clauses.
Report check_progression(const CoupledRelation& r, const ViewPair& s,
                         const CheckConfig& cfg,
                         bool upto_environment = false);

// r is a CLB iff r ~> r; non-coupled input is Refuted at the coupledness
// clause (the progression clauses are still reported).
Report check_clb(const CoupledRelation& r, const CheckConfig& cfg);

// Big-step applicative bisimulation clauses; substitution results must land
// in r itself.
Report check_applicative_bisim(const FiniteRelation& r,
                               const CheckConfig& cfg);

// Logical bisimulation, decided both directly from the LB clauses and via
// check_clb((r, r)); the two verdicts are compared.
struct LbReport {
  Report direct;
  Report via_clb;
  bool agree = false;
  Verdict verdict = Verdict::HoldsUpToBound;
  nlohmann::ordered_json to_json() const;
};
LbReport check_logical_bisim(const FiniteRelation& r, const CheckConfig& cfg);

// Generalized progression used by the up-to validators: the left side is a
// pair of views whose R2-membership is sampled on an explicit support set;
// the clause-2 quantifier draws from candidate pairs filtered through the
// closure of left.first.
Report check_view_progression(const ViewPair& left,
                              const std::vector<TermPair>& support,
                              const ViewPair& target, const CheckConfig& cfg,
                              bool upto_environment = false);

}  // namespace clb

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "clb/bisim.hpp"
#include "clb/context.hpp"

namespace clb {

struct EquivVerdict {
  enum class Kind { EquivalentUpToBound, Distinguished, Inconclusive };
  Kind kind = Kind::EquivalentUpToBound;
  int contexts_tried = 0;
  std::optional<Context> witness;  // Distinguished: the separating context
  int converging_side = 0;         // 0 = left fill converges, 1 = right
  int steps = 0;                   // steps of the converging side
  std::string reason;
};
std::string to_string(EquivVerdict::Kind k);

// All single-hole contexts (hole written [1]) with at most max_size nodes
// whose variables are bound by context binders, in a deterministic
// size-ascending order.
std::vector<Context> enumerate_single_hole_contexts(int max_size);
// Evaluation contexts per strategy grammar: cbn  C := [.] | C M
//                                           cbv  C := [.] | M C | C V
std::vector<Context> enumerate_eval_contexts(Strategy s, int max_size);

// Bounded contextual equivalence: Distinguished requires one fill to
// converge within cfg.fuel while the other still diverges at verification
// fuel; the witness is minimal in the enumeration order.
EquivVerdict ctx_equiv(const Term& m, const Term& n, Strategy s, int ctx_bound,
                       const CheckConfig& cfg);
EquivVerdict evctx_equiv(const Term& m, const Term& n, Strategy s,
                         int ctx_bound, const CheckConfig& cfg);

// (\x.C[x])[.] with x fresh; for value fills this behaves as C[V] after one
// cbv step.
Context to_evaluation_context(const Context& c);

struct GenConfig {
  std::uint64_t seed = 0;
  int max_size = 8;
  int var_pool = 8;
  int abs_weight = 2;
  int app_weight = 3;
  int var_weight = 2;
};

// Seeded, well-scoped closed-term generation (λx.x at minimum size).
Term generate_term(std::mt19937_64& rng, const GenConfig& cfg);

// Random finite relation over enumerated closed terms of at most max_size
// nodes; r1 is a random subset of r2 (so the result is coupled).
CoupledRelation generate_relation(std::mt19937_64& rng, int max_size,
                                  int max_pairs);

struct SuiteReport {
  int tested = 0;
  int violations = 0;
  std::vector<std::string> failures;
  bool ok() const { return violations == 0; }
};

// For generated cbv-converging terms M with value V, asserts that ctx_equiv
// never distinguishes M from V.
SuiteReport convergence_value_equiv_suite(int count, const GenConfig& gen,
                                          int ctx_bound,
                                          const CheckConfig& cfg);

}  // namespace clb

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clb/term.hpp"

namespace clb {

enum class Strategy { CBN, CBV };

std::string to_string(Strategy s);
std::optional<Strategy> strategy_from_string(const std::string& s);

// One deterministic reduction step, or nullopt when m is a value.
// CBN:  M -> M' / M N -> M' N,  (\x.P) N -> P[N/x]
// CBV (argument first):  N -> N' / M N -> M N',
//      M -> M', V value / M V -> M' V,  (\x.P) V -> P[V/x]
// Rejects open terms.
std::optional<Term> step(const Term& m, Strategy s);

struct EvalOutcome {
  bool converged = false;
  Term term;       // the value, or the last term reached when fuel ran out
  int steps = 0;
};

// Iterates step at most `fuel` times.
EvalOutcome evaluate(const Term& m, Strategy s, int fuel);

// The chain m = m0 -> m1 -> ... , cut at a value or after `fuel` steps.
std::vector<Term> reduction_chain(const Term& m, Strategy s, int fuel);

}  // namespace clb

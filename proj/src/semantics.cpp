#include "clb/semantics.hpp"

namespace clb {

std::string to_string(Strategy s) { return s == Strategy::CBN ? "cbn" : "cbv"; }

std::optional<Strategy> strategy_from_string(const std::string& s) {
  if (s == "cbn") return Strategy::CBN;
  if (s == "cbv") return Strategy::CBV;
  return std::nullopt;
}

namespace {

// Step on closed subterms; the closedness of the whole term guarantees every
// redex position encountered is closed.
std::optional<Term> step_cbn(const Term& m) {
  if (m.is_abs()) return std::nullopt;
  // m is an application (closed variables cannot occur at redex position)
  Term f = m.fun();
  if (f.is_abs()) return apply_abs(f, m.arg());
  if (auto f2 = step_cbn(f)) return Term::app(*f2, m.arg());
  return std::nullopt;
}

std::optional<Term> step_cbv(const Term& m) {
  if (m.is_abs()) return std::nullopt;
  Term f = m.fun();
  Term a = m.arg();
  if (!a.is_abs()) {  // argument not yet a value: reduce it first
    if (auto a2 = step_cbv(a)) return Term::app(f, *a2);
    return std::nullopt;
  }
  if (!f.is_abs()) {
    if (auto f2 = step_cbv(f)) return Term::app(*f2, a);
    return std::nullopt;
  }
  return apply_abs(f, a);
}

}  // namespace

std::optional<Term> step(const Term& m, Strategy s) {
  if (!m.is_closed()) throw std::invalid_argument("step: open term");
  return s == Strategy::CBN ? step_cbn(m) : step_cbv(m);
}

EvalOutcome evaluate(const Term& m, Strategy s, int fuel) {
  if (!m.is_closed()) throw std::invalid_argument("evaluate: open term");
  Term cur = m;
  for (int i = 0; i <= fuel; ++i) {
    if (cur.is_abs()) return {true, cur, i == 0 ? 0 : i};
    if (i == fuel) break;
    auto next = step(cur, s);
    if (!next) return {true, cur, i};  // defensive; closed non-abs always steps
    cur = *next;
  }
  return {false, cur, fuel};
}

std::vector<Term> reduction_chain(const Term& m, Strategy s, int fuel) {
  if (!m.is_closed()) throw std::invalid_argument("reduction_chain: open term");
  std::vector<Term> chain{m};
  Term cur = m;
  for (int i = 0; i < fuel && !cur.is_abs(); ++i) {
    auto next = step(cur, s);
    if (!next) break;
    cur = *next;
    chain.push_back(cur);
  }
  return chain;
}

}  // namespace clb

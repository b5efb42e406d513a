#include "clb/bisim.hpp"

namespace clb {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::HoldsUpToBound: return "holds-up-to-bound";
    case Verdict::Refuted: return "refuted";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::Refuted || b == Verdict::Refuted) return Verdict::Refuted;
  if (a == Verdict::Inconclusive || b == Verdict::Inconclusive)
    return Verdict::Inconclusive;
  return Verdict::HoldsUpToBound;
}

void Report::record(ClauseReport c) {
  verdict = combine(verdict, c.verdict);
  clauses.push_back(std::move(c));
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["verdict"] = to_string(verdict);
  j["coupled"] = coupled;
  j["clauses"] = nlohmann::ordered_json::array();
  for (const auto& c : clauses) {
    nlohmann::ordered_json jc;
    jc["pair"] = {c.left, c.right};
    jc["clause"] = c.clause;
    jc["verdict"] = to_string(c.verdict);
    if (!c.detail.empty()) jc["detail"] = c.detail;
    j["clauses"].push_back(std::move(jc));
  }
  return j;
}

namespace {

// Runs the forward clauses for one oriented pair. `driver` is the component
// whose behavior must be matched by `responder`; when `swapped` is set the
// driver is the right-hand component, and every membership test below
// re-orients its arguments to canonical (left, right) order.
struct ClauseEngine {
  const ViewPair& s;
  const std::vector<TermPair>& quantifier;  // instantiations of R1*
  const CheckConfig& cfg;
  bool skip_abs_pairing;  // cbn, LB, or the up-to-environment variant
  Report& rep;

  bool s2_member(const Term& left, const Term& right) const {
    return s.second->member(left, right);
  }

  void run(const Term& driver, const Term& responder, bool swapped) {
    const std::string l = to_string(swapped ? responder : driver);
    const std::string r = to_string(swapped ? driver : responder);
    auto oriented = [&](const Term& d, const Term& re) {
      return swapped ? TermPair{re, d} : TermPair{d, re};
    };

    // Clause 1: a step of the driver must be matched by some reduct of the
    // responder related in S2.
    {
      ClauseReport c{l, r, swapped ? "converse-1" : "1"};
      if (auto d1 = step(driver, cfg.strategy)) {
        bool matched = false;
        bool complete = false;
        Term re = responder;
        for (int i = 0;; ++i) {
          auto p = oriented(*d1, re);
          if (s2_member(p.first, p.second)) {
            matched = true;
            break;
          }
          if (re.is_abs()) {
            complete = true;
            break;
          }
          if (i >= cfg.verification_fuel()) break;
          re = *step(re, cfg.strategy);
        }
        if (!matched) {
          c.verdict = complete ? Verdict::Refuted : Verdict::Inconclusive;
          c.detail = (swapped ? r : l) + " steps to " + to_string(*d1) +
                     " but no reduct of " + (swapped ? l : r) +
                     (complete ? " is S2-related (chain complete)"
                               : " is S2-related within verification fuel");
        }
      }
      rep.record(std::move(c));
    }

    // Clause 2: if the driver is a value, the responder must converge and the
    // bodies must stay related under every enumerated instantiation.
    if (!driver.is_abs()) return;
    EvalOutcome ev =
        evaluate(responder, cfg.strategy, cfg.verification_fuel());
    {
      ClauseReport c{l, r, swapped ? "converse-2" : "2"};
      if (!ev.converged) {
        c.verdict = Verdict::Refuted;
        c.detail = (swapped ? r : l) + " is a value but " +
                   (swapped ? l : r) +
                   " fails to converge at verification fuel (" +
                   std::to_string(cfg.verification_fuel()) + " steps)";
        rep.record(std::move(c));
        return;
      }
      rep.record(std::move(c));
    }
    const Term& dval = driver;
    const Term& rval = ev.term;

    if (cfg.strategy == Strategy::CBV && !skip_abs_pairing) {
      ClauseReport c{l, r,
                     swapped ? "converse-cbv-abs-pairing" : "cbv-abs-pairing"};
      auto p = oriented(dval, rval);
      if (!s.first->member(p.first, p.second)) {
        c.verdict = Verdict::Refuted;
        c.detail = "abstraction pair (" + to_string(p.first) + ", " +
                   to_string(p.second) + ") is not in S1 (" +
                   s.first->describe() + ")";
      }
      bool refuted = c.verdict == Verdict::Refuted;
      rep.record(std::move(c));
      if (refuted) return;
    }

    ClauseReport c{l, r, swapped ? "converse-2-subst" : "2-subst"};
    for (const auto& xy : quantifier) {
      // X instantiates the left component's body, Y the right one's.
      Term lb = swapped ? apply_abs(rval, xy.first) : apply_abs(dval, xy.first);
      Term rb =
          swapped ? apply_abs(dval, xy.second) : apply_abs(rval, xy.second);
      if (!s2_member(lb, rb)) {
        c.verdict = Verdict::Refuted;
        c.detail = "instantiation (" + to_string(xy.first) + ", " +
                   to_string(xy.second) + ") gives body pair (" +
                   to_string(lb) + ", " + to_string(rb) + ") outside S2";
        break;
      }
    }
    rep.record(std::move(c));
  }
};

void run_support(const std::vector<TermPair>& support,
                 const std::vector<TermPair>& quantifier, const ViewPair& s,
                 const CheckConfig& cfg, bool skip_abs_pairing, Report& rep) {
  ClauseEngine engine{s, quantifier, cfg, skip_abs_pairing, rep};
  for (const auto& p : support) {
    engine.run(p.first, p.second, false);
    engine.run(p.second, p.first, true);
  }
}

}  // namespace

Report check_progression(const CoupledRelation& r, const ViewPair& s,
                         const CheckConfig& cfg, bool upto_environment) {
  Report rep;
  rep.coupled = r.is_coupled();
  auto quantifier = enumerate_closure_pairs(r.r1, cfg.closure_bound,
                                            cfg.strategy == Strategy::CBV);
  bool skip_abs = cfg.strategy == Strategy::CBN || upto_environment;
  run_support(r.r2.pairs(), quantifier, s, cfg, skip_abs, rep);
  return rep;
}

Report check_clb(const CoupledRelation& r, const CheckConfig& cfg) {
  Report rep = check_progression(r, as_views(r), cfg);
  ClauseReport c{"", "", "coupledness"};
  if (!rep.coupled) {
    c.verdict = Verdict::Refuted;
    c.detail = "R1 is not a subset of R2";
  }
  rep.record(std::move(c));
  return rep;
}

Report check_applicative_bisim(const FiniteRelation& r,
                               const CheckConfig& cfg) {
  Report rep;
  std::vector<Term> ws;
  for (const auto& t : enumerate_closed_terms(cfg.closure_bound))
    if (cfg.strategy == Strategy::CBN || t.is_value()) ws.push_back(t);

  ViewPtr target = finite_view(r);
  auto run_side = [&](const Term& driver, const Term& responder,
                      bool swapped) {
    const std::string l = to_string(swapped ? responder : driver);
    const std::string rr = to_string(swapped ? driver : responder);
    ClauseReport c{l, rr, swapped ? "converse-big-step" : "big-step"};
    EvalOutcome dv = evaluate(driver, cfg.strategy, cfg.fuel);
    if (!dv.converged) {  // clause vacuous for this side
      rep.record(std::move(c));
      return;
    }
    EvalOutcome rv =
        evaluate(responder, cfg.strategy, cfg.verification_fuel());
    if (!rv.converged) {
      c.verdict = Verdict::Refuted;
      c.detail = (swapped ? rr : l) + " converges but " + (swapped ? l : rr) +
                 " fails to converge at verification fuel";
      rep.record(std::move(c));
      return;
    }
    for (const auto& w : ws) {
      Term lb = apply_abs(swapped ? rv.term : dv.term, w);
      Term rb = apply_abs(swapped ? dv.term : rv.term, w);
      if (!target->member(lb, rb)) {
        c.verdict = Verdict::Refuted;
        c.detail = "argument " + to_string(w) + " gives body pair (" +
                   to_string(lb) + ", " + to_string(rb) + ") outside R";
        break;
      }
    }
    rep.record(std::move(c));
  };

  for (const auto& p : r.pairs()) {
    run_side(p.first, p.second, false);
    run_side(p.second, p.first, true);
  }
  return rep;
}

nlohmann::ordered_json LbReport::to_json() const {
  nlohmann::ordered_json j;
  j["verdict"] = to_string(verdict);
  j["agree"] = agree;
  j["direct"] = direct.to_json();
  j["via_clb"] = via_clb.to_json();
  return j;
}

LbReport check_logical_bisim(const FiniteRelation& r, const CheckConfig& cfg) {
  LbReport out;
  // Direct route: clauses with quantifier over R* and results in R itself;
  // logical bisimulation has no abstraction-pairing requirement.
  auto quantifier = enumerate_closure_pairs(r, cfg.closure_bound,
                                            cfg.strategy == Strategy::CBV);
  ViewPair target{finite_view(r), finite_view(r)};
  run_support(r.pairs(), quantifier, target, cfg, /*skip_abs_pairing=*/true,
              out.direct);
  // Equivalence route: R is an LB iff (R, R) is a CLB.
  out.via_clb = check_clb(CoupledRelation{r, r}, cfg);
  out.agree = out.direct.verdict == out.via_clb.verdict;
  out.verdict = out.direct.verdict;
  return out;
}

Report check_view_progression(const ViewPair& left,
                              const std::vector<TermPair>& support,
                              const ViewPair& target, const CheckConfig& cfg,
                              bool upto_environment) {
  Report rep;
  // Quantifier: closure of the left first component, sampled over all closed
  // pairs within the bound.
  ViewPtr star = closed_closure_view(left.first);
  std::vector<TermPair> quantifier;
  auto terms = enumerate_closed_terms(cfg.closure_bound);
  bool vr = cfg.strategy == Strategy::CBV;
  for (const auto& a : terms) {
    if (vr && !a.is_value()) continue;
    for (const auto& b : terms) {
      if (vr && !b.is_value()) continue;
      if (star->member(a, b)) quantifier.emplace_back(a, b);
    }
  }
  std::vector<TermPair> members;
  for (const auto& p : support)
    if (left.second->member(p.first, p.second)) members.push_back(p);
  bool skip_abs = cfg.strategy == Strategy::CBN || upto_environment;
  run_support(members, quantifier, target, cfg, skip_abs, rep);
  return rep;
}

}  // namespace clb

#include "clb/oracle.hpp"

#include <functional>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

namespace clb {

std::string to_string(EquivVerdict::Kind k) {
  switch (k) {
    case EquivVerdict::Kind::EquivalentUpToBound: return "equivalent-up-to-bound";
    case EquivVerdict::Kind::Distinguished: return "distinguished";
    case EquivVerdict::Kind::Inconclusive: return "inconclusive";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Context enumeration

namespace {

std::string binder_name(int depth) { return "v" + std::to_string(depth); }

using CtxMemo = std::map<std::tuple<int, int, int>, std::vector<Context>>;

// Contexts under `depth` binders (named v0..v{depth-1}) with exactly `size`
// nodes and exactly `holes` (0 or 1) holes; all variables bound.
const std::vector<Context>& contexts_exact(int depth, int size, int holes,
                                           CtxMemo& memo) {
  auto key = std::make_tuple(depth, size, holes);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  std::vector<Context> out;
  if (size == 1) {
    if (holes == 1) {
      out.push_back(Context::hole(1));
    } else {
      for (int i = 0; i < depth; ++i) out.push_back(Context::var(binder_name(i)));
    }
  } else {
    for (const auto& b : contexts_exact(depth + 1, size - 1, holes, memo))
      out.push_back(Context::abs(binder_name(depth), b));
    for (int i = 1; i <= size - 2; ++i) {
      for (int hf = 0; hf <= holes; ++hf) {
        int ha = holes - hf;
        const auto& funs = contexts_exact(depth, i, hf, memo);
        if (funs.empty()) continue;
        const auto& args = contexts_exact(depth, size - 1 - i, ha, memo);
        for (const auto& f : funs)
          for (const auto& a : args) out.push_back(Context::app(f, a));
      }
    }
  }
  return memo.emplace(key, std::move(out)).first->second;
}

}  // namespace

std::vector<Context> enumerate_single_hole_contexts(int max_size) {
  CtxMemo memo;
  std::vector<Context> out;
  for (int s = 1; s <= max_size; ++s) {
    const auto& cs = contexts_exact(0, s, 1, memo);
    out.insert(out.end(), cs.begin(), cs.end());
  }
  return out;
}

namespace {

// Evaluation contexts have no binders above the hole; side terms are closed.
const std::vector<Context>& eval_contexts_exact(Strategy strat, int size,
                                                CtxMemo& term_memo,
                                                CtxMemo& memo) {
  auto key = std::make_tuple(static_cast<int>(strat), size, 1);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  std::vector<Context> out;
  if (size == 1) {
    out.push_back(Context::hole(1));
  } else {
    for (int i = 1; i <= size - 2; ++i) {
      const auto& evs = eval_contexts_exact(strat, i, term_memo, memo);
      const auto& terms = contexts_exact(0, size - 1 - i, 0, term_memo);
      if (strat == Strategy::CBN) {
        // C M
        for (const auto& e : evs)
          for (const auto& t : terms) out.push_back(Context::app(e, t));
      } else {
        // M C and C V (V a value: an abstraction)
        for (const auto& t : terms) {
          for (const auto& e : evs) out.push_back(Context::app(t, e));
          if (t.kind() == Context::Kind::Abs)
            for (const auto& e : evs) out.push_back(Context::app(e, t));
        }
      }
    }
  }
  return memo.emplace(key, std::move(out)).first->second;
}

}  // namespace

std::vector<Context> enumerate_eval_contexts(Strategy s, int max_size) {
  CtxMemo term_memo, memo;
  std::vector<Context> out;
  for (int sz = 1; sz <= max_size; ++sz) {
    const auto& cs = eval_contexts_exact(s, sz, term_memo, memo);
    out.insert(out.end(), cs.begin(), cs.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bounded equivalence

namespace {

enum class Behavior { ConvergesFast, ConvergesSlow, Diverges };

struct BehaviorCache {
  std::unordered_map<Term, std::pair<Behavior, int>, TermHash> map;
  Behavior get(const Term& t, Strategy s, const CheckConfig& cfg, int* steps) {
    auto it = map.find(t);
    if (it == map.end()) {
      EvalOutcome o = evaluate(t, s, cfg.verification_fuel());
      Behavior b = !o.converged ? Behavior::Diverges
                   : o.steps <= cfg.fuel ? Behavior::ConvergesFast
                                         : Behavior::ConvergesSlow;
      it = map.emplace(t, std::make_pair(b, o.steps)).first;
    }
    if (steps) *steps = it->second.second;
    return it->second.first;
  }
};

EquivVerdict run_equiv(const Term& m, const Term& n,
                       const std::vector<Context>& contexts, Strategy s,
                       const CheckConfig& cfg) {
  if (!m.is_closed() || !n.is_closed())
    throw std::invalid_argument("equivalence query on open term");
  BehaviorCache cache;
  EquivVerdict v;
  for (const auto& c : contexts) {
    ++v.contexts_tried;
    Term fm = fill(c, {m});
    Term fn = fill(c, {n});
    int sm = 0, sn = 0;
    Behavior bm = cache.get(fm, s, cfg, &sm);
    Behavior bn = cache.get(fn, s, cfg, &sn);
    bool left_conv = bm == Behavior::ConvergesFast && bn == Behavior::Diverges;
    bool right_conv = bn == Behavior::ConvergesFast && bm == Behavior::Diverges;
    if (left_conv || right_conv) {
      v.kind = EquivVerdict::Kind::Distinguished;
      v.witness = c;
      v.converging_side = left_conv ? 0 : 1;
      v.steps = left_conv ? sm : sn;
      return v;
    }
  }
  v.kind = EquivVerdict::Kind::EquivalentUpToBound;
  return v;
}

}  // namespace

EquivVerdict ctx_equiv(const Term& m, const Term& n, Strategy s, int ctx_bound,
                       const CheckConfig& cfg) {
  return run_equiv(m, n, enumerate_single_hole_contexts(ctx_bound), s, cfg);
}

EquivVerdict evctx_equiv(const Term& m, const Term& n, Strategy s,
                         int ctx_bound, const CheckConfig& cfg) {
  return run_equiv(m, n, enumerate_eval_contexts(s, ctx_bound), s, cfg);
}

Context to_evaluation_context(const Context& c) {
  if (c.hole_count() != 1)
    throw std::invalid_argument("to_evaluation_context: not single-hole");
  // Pick a variable name not used by the context.
  std::set<std::string> used;
  std::function<void(const Context&)> names = [&](const Context& k) {
    switch (k.kind()) {
      case Context::Kind::Var: used.insert(k.name()); break;
      case Context::Kind::Abs: used.insert(k.binder()); names(k.body()); break;
      case Context::Kind::App: names(k.fun()); names(k.arg()); break;
      default: break;
    }
  };
  names(c);
  std::string h = "h";
  for (int i = 1; used.count(h); ++i) h = "h" + std::to_string(i);
  Term filled = fill(c, {Term::free_var(h)});
  Term lam = clb::bind(h, filled);
  return Context::app(term_to_context(lam), Context::hole(1));
}

// ---------------------------------------------------------------------------
// Generation

namespace {

Term gen(std::mt19937_64& rng, const GenConfig& cfg, int depth, int budget) {
  int minsub = depth > 0 ? 1 : 2;  // smallest term constructible here
  bool can_var = depth > 0;
  bool can_abs = budget >= 2;
  bool can_app = budget >= 1 + 2 * minsub;
  int wv = can_var ? cfg.var_weight : 0;
  int wl = can_abs ? cfg.abs_weight : 0;
  int wa = can_app ? cfg.app_weight : 0;
  int total = wv + wl + wa;
  if (total == 0) {
    // budget 1 at depth 0 cannot happen for callers respecting min size 2
    return Term::abs("x", Term::bound(0));
  }
  std::uniform_int_distribution<int> d(0, total - 1);
  int roll = d(rng);
  if (roll < wv) {
    int pool = std::min(depth, cfg.var_pool);
    std::uniform_int_distribution<int> vi(0, pool - 1);
    return Term::bound(vi(rng));
  }
  if (roll < wv + wl) {
    return Term::abs("x", gen(rng, cfg, depth + 1, budget - 1));
  }
  std::uniform_int_distribution<int> split(minsub, budget - 1 - minsub);
  int left = split(rng);
  Term f = gen(rng, cfg, depth, left);
  Term a = gen(rng, cfg, depth, budget - 1 - f.size());
  return Term::app(f, a);
}

}  // namespace

Term generate_term(std::mt19937_64& rng, const GenConfig& cfg) {
  int budget = std::max(2, cfg.max_size);
  return gen(rng, cfg, 0, budget);
}

CoupledRelation generate_relation(std::mt19937_64& rng, int max_size,
                                  int max_pairs) {
  static std::map<int, std::vector<Term>> cache;
  auto it = cache.find(max_size);
  if (it == cache.end())
    it = cache.emplace(max_size, enumerate_closed_terms(max_size)).first;
  const auto& terms = it->second;
  std::uniform_int_distribution<std::size_t> pick(0, terms.size() - 1);
  std::uniform_int_distribution<int> npairs(1, max_pairs);
  CoupledRelation rel;
  int n = npairs(rng);
  for (int i = 0; i < n; ++i) rel.r2.add(terms[pick(rng)], terms[pick(rng)]);
  // r1: random subset of r2 keeps the relation coupled.
  std::uniform_int_distribution<int> coin(0, 2);
  for (const auto& p : rel.r2.pairs())
    if (coin(rng) == 0) rel.r1.add(p.first, p.second);
  return rel;
}

SuiteReport convergence_value_equiv_suite(int count, const GenConfig& gencfg,
                                          int ctx_bound,
                                          const CheckConfig& cfg) {
  SuiteReport rep;
  std::mt19937_64 rng(gencfg.seed);
  int attempts = 0;
  while (rep.tested < count && attempts < count * 100) {
    ++attempts;
    Term m = generate_term(rng, gencfg);
    EvalOutcome o = evaluate(m, Strategy::CBV, cfg.fuel);
    if (!o.converged || o.steps == 0) continue;  // want a real reduction
    ++rep.tested;
    EquivVerdict v = ctx_equiv(m, o.term, Strategy::CBV, ctx_bound, cfg);
    if (v.kind == EquivVerdict::Kind::Distinguished) {
      ++rep.violations;
      rep.failures.push_back("(" + to_string(m) + ", " + to_string(o.term) +
                             ") distinguished by " + to_string(*v.witness));
    }
  }
  return rep;
}

}  // namespace clb

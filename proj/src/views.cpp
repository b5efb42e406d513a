#include "clb/views.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace clb {

namespace {

struct TermPairEq {
  bool operator()(const TermPair& a, const TermPair& b) const {
    return a.first == b.first && a.second == b.second;
  }
};
using PairMemo = std::unordered_map<TermPair, bool, TermPairHash, TermPairEq>;
using PairSet = std::unordered_map<TermPair, char, TermPairHash, TermPairEq>;

class FiniteView : public RelationView {
 public:
  explicit FiniteView(FiniteRelation r) : r_(std::move(r)) {}
  bool member(const Term& m, const Term& n) const override {
    return r_.contains(m, n);
  }
  std::string describe() const override {
    return "finite(" + std::to_string(r_.size()) + " pairs)";
  }

 private:
  FiniteRelation r_;
};

class IdentityView : public RelationView {
 public:
  bool member(const Term& m, const Term& n) const override {
    return m.is_closed() && n.is_closed() && m == n;
  }
  std::string describe() const override { return "identity"; }
};

class UnionView : public RelationView {
 public:
  explicit UnionView(std::vector<ViewPtr> views) : views_(std::move(views)) {}
  bool member(const Term& m, const Term& n) const override {
    for (const auto& v : views_)
      if (v->member(m, n)) return true;
    return false;
  }
  std::string describe() const override {
    std::string s = "union(";
    for (std::size_t i = 0; i < views_.size(); ++i) {
      if (i) s += ", ";
      s += views_[i]->describe();
    }
    return s + ")";
  }

 private:
  std::vector<ViewPtr> views_;
};

// Contextual closure of a base relation on closed terms: (m, n) is in the
// closure iff it is a base pair, the same variable, or the two terms
// decompose congruently into related parts. This structural co-recursion is
// complete because the closure is generated by the term constructors plus
// base pairs; memoization keeps shared structure linear.
class ClosureView : public RelationView {
 public:
  ClosureView(ViewPtr base, bool closed) : base_(std::move(base)), closed_(closed) {}

  bool member(const Term& m, const Term& n) const override {
    if (closed_ && (!m.is_closed() || !n.is_closed())) return false;
    return decide(m, n);
  }
  std::string describe() const override {
    return (closed_ ? std::string("star(") : std::string("open-closure(")) +
           base_->describe() + ")";
  }

 private:
  bool decide(const Term& m, const Term& n) const {
    TermPair key{m, n};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    // Base pairs live on closed terms only.
    bool res = m.is_closed() && n.is_closed() && base_->member(m, n);
    if (!res && m.kind() == n.kind()) {
      switch (m.kind()) {
        case Term::Kind::BoundVar:
          res = m.index() == n.index();
          break;
        case Term::Kind::FreeVar:
          res = m.name() == n.name();
          break;
        case Term::Kind::Abs:
          res = decide(m.body(), n.body());
          break;
        case Term::Kind::App:
          res = decide(m.fun(), n.fun()) && decide(m.arg(), n.arg());
          break;
      }
    }
    memo_[key] = res;
    return res;
  }

  ViewPtr base_;
  bool closed_;
  mutable PairMemo memo_;
};

class EccNView : public RelationView {
 public:
  EccNView(ViewPtr heads, ViewPtr args)
      : heads_(std::move(heads)), args_(std::move(args)) {}
  bool member(const Term& m, const Term& n) const override {
    Term e = m, f = n;
    // Strip k outermost application arguments, k = 0, 1, ...
    for (;;) {
      if (heads_->member(e, f)) return true;
      if (!e.is_app() || !f.is_app()) return false;
      if (!args_->member(e.arg(), f.arg())) return false;
      e = e.fun();
      f = f.fun();
    }
  }
  std::string describe() const override {
    return "eccn(" + heads_->describe() + "; " + args_->describe() + ")";
  }

 private:
  ViewPtr heads_, args_;
};

class EccVView : public RelationView {
 public:
  EccVView(ViewPtr base, ViewPtr args)
      : base_(std::move(base)), args_(std::move(args)) {}
  bool member(const Term& m, const Term& n) const override {
    TermPair key{m, n};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    memo_[key] = false;  // cut cycles (none structurally, but be safe)
    bool res = base_->member(m, n);
    if (!res && m.is_app() && n.is_app()) {
      // left extension: (M X, N Y) with M args N
      res = args_->member(m.fun(), n.fun()) && member(m.arg(), n.arg());
      // right extension: (X V, Y W) with V, W values related by args
      if (!res)
        res = m.arg().is_value() && n.arg().is_value() &&
              args_->member(m.arg(), n.arg()) && member(m.fun(), n.fun());
    }
    memo_[key] = res;
    return res;
  }
  std::string describe() const override {
    return "eccv(" + base_->describe() + "; " + args_->describe() + ")";
  }

 private:
  ViewPtr base_, args_;
  mutable PairMemo memo_;
};

class EvExtensionView : public RelationView {
 public:
  EvExtensionView(ViewPtr heads, ViewPtr args)
      : heads_(std::move(heads)), args_(std::move(args)) {}
  bool member(const Term& m, const Term& n) const override {
    return m.is_app() && n.is_app() && heads_->member(m.fun(), n.fun()) &&
           args_->member(m.arg(), n.arg());
  }
  std::string describe() const override {
    return "ev-ext(" + heads_->describe() + "; " + args_->describe() + ")";
  }

 private:
  ViewPtr heads_, args_;
};

class ValueRestrictView : public RelationView {
 public:
  explicit ValueRestrictView(ViewPtr base) : base_(std::move(base)) {}
  bool member(const Term& m, const Term& n) const override {
    return m.is_value() && n.is_value() && base_->member(m, n);
  }
  std::string describe() const override {
    return "vr(" + base_->describe() + ")";
  }

 private:
  ViewPtr base_;
};

class ReductionViewImpl : public RelationView {
 public:
  ReductionViewImpl(ViewPtr base, Strategy s, int fuel)
      : base_(std::move(base)), strategy_(s), fuel_(fuel) {}
  bool member(const Term& m, const Term& n) const override {
    if (!m.is_closed() || !n.is_closed()) return false;
    auto cm = reduction_chain(m, strategy_, fuel_);
    auto cn = reduction_chain(n, strategy_, fuel_);
    for (const auto& a : cm)
      for (const auto& b : cn)
        if (base_->member(a, b)) return true;
    return false;
  }
  std::string describe() const override {
    return "reduce[" + to_string(strategy_) + "," + std::to_string(fuel_) +
           "](" + base_->describe() + ")";
  }

 private:
  ViewPtr base_;
  Strategy strategy_;
  int fuel_;
};

}  // namespace

ViewPtr finite_view(FiniteRelation r) {
  return std::make_shared<FiniteView>(std::move(r));
}
ViewPtr identity_view() { return std::make_shared<IdentityView>(); }
ViewPtr union_view(std::vector<ViewPtr> views) {
  return std::make_shared<UnionView>(std::move(views));
}
ViewPtr open_closure_view(ViewPtr base) {
  return std::make_shared<ClosureView>(std::move(base), false);
}
ViewPtr closed_closure_view(ViewPtr base) {
  return std::make_shared<ClosureView>(std::move(base), true);
}
ViewPtr eccn_view(ViewPtr heads, ViewPtr args) {
  return std::make_shared<EccNView>(std::move(heads), std::move(args));
}
ViewPtr eccv_view(ViewPtr base, ViewPtr args) {
  return std::make_shared<EccVView>(std::move(base), std::move(args));
}
ViewPtr ev_extension_view(ViewPtr heads, ViewPtr args) {
  return std::make_shared<EvExtensionView>(std::move(heads), std::move(args));
}
ViewPtr value_restrict_view(ViewPtr base) {
  return std::make_shared<ValueRestrictView>(std::move(base));
}
ViewPtr reduction_view(ViewPtr base, Strategy s, int fuel) {
  return std::make_shared<ReductionViewImpl>(std::move(base), s, fuel);
}

ViewPair as_views(const CoupledRelation& r) {
  return ViewPair{finite_view(r.r1), finite_view(r.r2)};
}

ViewPair ctx_closure_cbn(const ViewPair& r) {
  ViewPtr star = closed_closure_view(r.first);
  return ViewPair{star, union_view({eccn_view(r.second, star), star})};
}

ViewPair ctx_closure_cbv(const ViewPair& r) {
  ViewPtr star = closed_closure_view(r.first);
  return ViewPair{star, union_view({eccv_view(r.second, star), star})};
}

bool member_open_closure(const FiniteRelation& r, const Term& m,
                         const Term& n) {
  return open_closure_view(finite_view(r))->member(m, n);
}
bool member_closed_closure(const FiniteRelation& r, const Term& m,
                           const Term& n) {
  return closed_closure_view(finite_view(r))->member(m, n);
}
bool member_eccn(const ViewPtr& r2, const FiniteRelation& r1, const Term& m,
                 const Term& n) {
  return eccn_view(r2, closed_closure_view(finite_view(r1)))->member(m, n);
}
bool member_eccv(const ViewPtr& r2, const ViewPtr& r1star, const Term& m,
                 const Term& n) {
  return eccv_view(r2, r1star)->member(m, n);
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

// Closed terms with exactly `size` nodes under `depth` binders.
const std::vector<Term>& terms_exact(int depth, int size,
                                     std::map<std::pair<int, int>,
                                              std::vector<Term>>& memo) {
  auto key = std::make_pair(depth, size);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  std::vector<Term> out;
  if (size == 1) {
    for (int i = 0; i < depth; ++i) out.push_back(Term::bound(i));
  } else {
    for (const auto& b : terms_exact(depth + 1, size - 1, memo))
      out.push_back(Term::abs("x", b));
    for (int i = 1; i <= size - 2; ++i) {
      const auto& funs = terms_exact(depth, i, memo);
      const auto& args = terms_exact(depth, size - 1 - i, memo);
      for (const auto& f : funs)
        for (const auto& a : args) out.push_back(Term::app(f, a));
    }
  }
  return memo.emplace(key, std::move(out)).first->second;
}

}  // namespace

std::vector<Term> enumerate_closed_terms(int max_size) {
  std::map<std::pair<int, int>, std::vector<Term>> memo;
  std::vector<Term> out;
  for (int s = 1; s <= max_size; ++s) {
    const auto& ts = terms_exact(0, s, memo);
    out.insert(out.end(), ts.begin(), ts.end());
  }
  return out;
}

namespace {

struct PairKey {
  int depth, sl, sr;
  bool operator<(const PairKey& o) const {
    return std::tie(depth, sl, sr) < std::tie(o.depth, o.sl, o.sr);
  }
};

// Pairs of the contextual closure of r1 under `depth` shared binders with
// exact sizes (sl, sr). Every decomposition of (C[M~], C[N~]) corresponds to
// choosing a base pair, a shared variable, or a congruent constructor, so
// this enumeration is complete up to the size bound.
const std::vector<TermPair>& pairs_exact(
    const FiniteRelation& r1, int depth, int sl, int sr,
    std::map<PairKey, std::vector<TermPair>>& memo) {
  PairKey key{depth, sl, sr};
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  std::vector<TermPair> out;
  for (const auto& p : r1.pairs())
    if (p.first.size() == sl && p.second.size() == sr) out.push_back(p);
  if (sl == 1 && sr == 1) {
    for (int i = 0; i < depth; ++i)
      out.emplace_back(Term::bound(i), Term::bound(i));
  }
  if (sl >= 2 && sr >= 2) {
    for (const auto& p : pairs_exact(r1, depth + 1, sl - 1, sr - 1, memo))
      out.emplace_back(Term::abs("x", p.first), Term::abs("x", p.second));
  }
  if (sl >= 3 && sr >= 3) {
    for (int il = 1; il <= sl - 2; ++il) {
      for (int ir = 1; ir <= sr - 2; ++ir) {
        const auto& funs = pairs_exact(r1, depth, il, ir, memo);
        if (funs.empty()) continue;
        const auto& args = pairs_exact(r1, depth, sl - 1 - il, sr - 1 - ir, memo);
        for (const auto& f : funs)
          for (const auto& a : args)
            out.emplace_back(Term::app(f.first, a.first),
                             Term::app(f.second, a.second));
      }
    }
  }
  return memo.emplace(key, std::move(out)).first->second;
}

}  // namespace

std::vector<TermPair> enumerate_closure_pairs(const FiniteRelation& r1,
                                              int size_bound,
                                              bool value_restricted) {
  std::map<PairKey, std::vector<TermPair>> memo;
  PairSet seen;
  std::vector<TermPair> out;
  // Base pairs are members via the one-hole context regardless of their
  // size; only the composite fills are subject to the bound.
  for (const auto& p : r1.pairs()) {
    if (value_restricted && !(p.first.is_value() && p.second.is_value()))
      continue;
    if (seen.emplace(p, 0).second) out.push_back(p);
  }
  for (int sl = 1; sl <= size_bound; ++sl) {
    for (int sr = 1; sr <= size_bound; ++sr) {
      for (const auto& p : pairs_exact(r1, 0, sl, sr, memo)) {
        if (value_restricted && !(p.first.is_value() && p.second.is_value()))
          continue;
        if (seen.emplace(p, 0).second) out.push_back(p);
      }
    }
  }
  return out;
}

}  // namespace clb

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "clb/relation.hpp"
#include "clb/semantics.hpp"

namespace clb {

// A relation with a decidable membership test over pairs of closed terms.
// Views are immutable once built; membership may cache internally.
class RelationView {
 public:
  virtual ~RelationView() = default;
  virtual bool member(const Term& m, const Term& n) const = 0;
  virtual std::string describe() const = 0;
};

using ViewPtr = std::shared_ptr<const RelationView>;

// A pair of views standing for a paired/coupled relation (R1, R2).
struct ViewPair {
  ViewPtr first;
  ViewPtr second;
};

ViewPtr finite_view(FiniteRelation r);
// Alpha-equal closed pairs.
ViewPtr identity_view();
ViewPtr union_view(std::vector<ViewPtr> views);
// R-degree: contextual closure. Open variant relates open terms; closed
// variant additionally requires both sides closed.
ViewPtr open_closure_view(ViewPtr base);
ViewPtr closed_closure_view(ViewPtr base);
// cbn evaluation-context closure <R2>_{args}: spine heads related by `heads`,
// stripped argument pairs related by `args` (every strip depth k >= 0 tried).
ViewPtr eccn_view(ViewPtr heads, ViewPtr args);
// cbv evaluation-context closure: least relation closed under
//   (base), (M X, N Y) with M args N, (X V, Y W) with V,W values args-related.
ViewPtr eccv_view(ViewPtr base, ViewPtr args);
// Single-layer evaluation-context extension {(E M, F N) | E heads F, M args N}.
ViewPtr ev_extension_view(ViewPtr heads, ViewPtr args);
// Restriction to pairs of values.
ViewPtr value_restrict_view(ViewPtr base);
// (m, n) related iff some reducts m => m', n => n' within fuel are in base.
ViewPtr reduction_view(ViewPtr base, Strategy s, int fuel);

// Up-to-context closures R^C (cbn) and R^V (cbv):
//   (R1*, ecc(R2, R1*) ∪ R1*)
ViewPair ctx_closure_cbn(const ViewPair& r);
ViewPair ctx_closure_cbv(const ViewPair& r);
ViewPair as_views(const CoupledRelation& r);

// Convenience membership tests matching the closure definitions directly.
bool member_open_closure(const FiniteRelation& r, const Term& m, const Term& n);
bool member_closed_closure(const FiniteRelation& r, const Term& m,
                           const Term& n);
bool member_eccn(const ViewPtr& r2, const FiniteRelation& r1, const Term& m,
                 const Term& n);
bool member_eccv(const ViewPtr& r2, const ViewPtr& r1star, const Term& m,
                 const Term& n);

// All closed terms with at most max_size nodes, in a deterministic order.
std::vector<Term> enumerate_closed_terms(int max_size);
// All pairs of R1* = (contextual closure of r1 restricted to closed terms)
// whose sides each have at most size_bound nodes; with value_restricted,
// only abstraction pairs (the cbv quantifier vr{R1*}).
std::vector<TermPair> enumerate_closure_pairs(const FiniteRelation& r1,
                                              int size_bound,
                                              bool value_restricted);

}  // namespace clb

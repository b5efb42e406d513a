#pragma once

#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "clb/term.hpp"

namespace clb {

using TermPair = std::pair<Term, Term>;

// A finite set of term pairs with membership modulo alpha. Insertion order is
// preserved (minus duplicates) so reports are reproducible.
class FiniteRelation {
 public:
  FiniteRelation() = default;
  explicit FiniteRelation(std::vector<TermPair> pairs, bool closed_only = true);

  // Returns false (and does not add) on duplicates.
  bool add(const Term& m, const Term& n);
  bool contains(const Term& m, const Term& n) const;
  bool subset_of(const FiniteRelation& other) const;

  const std::vector<TermPair>& pairs() const { return pairs_; }
  bool empty() const { return pairs_.empty(); }
  std::size_t size() const { return pairs_.size(); }
  bool closed_only() const { return closed_only_; }

  static FiniteRelation union_of(const FiniteRelation& a,
                                 const FiniteRelation& b);

 private:
  std::vector<TermPair> pairs_;
  std::unordered_set<TermPair, TermPairHash> index_;
  bool closed_only_ = true;
};

// A pair of relations (R1, R2); coupled when R1 is a subset of R2.
struct CoupledRelation {
  FiniteRelation r1;
  FiniteRelation r2;
  bool is_coupled() const { return r1.subset_of(r2); }
};

// Relation file format: one pair per line as `term -- term`, `#` comments,
// optional `[R1]` / `[R2]` section headers. Without sections every pair goes
// to R2 and R1 is empty.
CoupledRelation parse_relation_file(const std::string& contents);
CoupledRelation load_relation_file(const std::string& path);

}  // namespace clb

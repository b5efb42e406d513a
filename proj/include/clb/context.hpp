#pragma once

#include <memory>
#include <string>
#include <vector>

#include "clb/term.hpp"

namespace clb {

// Multi-hole term template. Unlike substitution, filling a hole performs NO
// renaming: binders of the context capture free variables of the fillers
// (e.g. filling \x.[1] with x yields \x.x). Contexts therefore keep named
// binders and named variables; names are resolved to indices at fill time.
//
// Hole index 0 stands for the uniform hole `[]` (fill_uniform); positional
// holes are numbered 1..n and must each occur exactly once.
class Context {
 public:
  enum class Kind { Hole, Var, Abs, App };

  static Context hole(int index);
  static Context var(std::string name);
  static Context abs(std::string binder, Context body);
  static Context app(Context fun, Context arg);

  Kind kind() const { return node_->kind; }
  bool is_hole() const { return kind() == Kind::Hole; }
  int hole_index() const;
  const std::string& name() const;    // Var
  const std::string& binder() const;  // Abs
  Context body() const;
  Context fun() const;
  Context arg() const;

  int size() const { return node_->size; }        // node count, holes count 1
  int hole_count() const { return node_->holes; } // total hole occurrences

 private:
  struct Node {
    Kind kind;
    int index = 0;
    std::string name;
    std::shared_ptr<const Node> a, b;
    int size = 1;
    int holes = 0;
  };
  explicit Context(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Positional fill: hole i receives fillers[i-1]. Requires holes numbered
// 1..n, each exactly once, and fillers.size() == n. Fillers must not have
// dangling indices (any parsed term is fine).
Term fill(const Context& c, const std::vector<Term>& fillers);

// Uniform fill: every hole (any index) receives the same term.
Term fill_uniform(const Context& c, const Term& m);

// A zero-hole context read as a term.
Term context_to_term(const Context& c);
Context term_to_context(const Term& t);

std::string to_string(const Context& c);

// Context syntax = term syntax plus `[i]` for positional holes and `[]` for
// the uniform hole.
Context parse_context(const std::string& text);

}  // namespace clb

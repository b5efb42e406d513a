#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace clb {

// Immutable lambda term. Bound variables are de Bruijn indices (0 refers to
// the innermost enclosing binder); free variables carry a name. Binder name
// hints are kept for printing only and are ignored by equality and hashing,
// so structural equality coincides with alpha-equivalence.
class Term {
 public:
  enum class Kind { BoundVar, FreeVar, Abs, App };

  static Term bound(int index);
  static Term free_var(std::string name);
  static Term abs(std::string hint, Term body);
  static Term app(Term fun, Term arg);

  Kind kind() const { return node_->kind; }
  bool is_bound() const { return kind() == Kind::BoundVar; }
  bool is_free() const { return kind() == Kind::FreeVar; }
  bool is_abs() const { return kind() == Kind::Abs; }
  bool is_app() const { return kind() == Kind::App; }

  int index() const;                // BoundVar
  const std::string& name() const; // FreeVar
  const std::string& hint() const; // Abs
  Term body() const;               // Abs
  Term fun() const;                // App
  Term arg() const;                // App

  int size() const { return node_->size; }
  // Number of enclosing binders the term needs for all indices to resolve.
  int free_depth() const { return node_->free_depth; }
  bool has_free_names() const { return node_->has_free_names; }
  bool is_closed() const { return free_depth() == 0 && !has_free_names(); }
  // Values are closed abstractions.
  bool is_value() const { return is_abs() && is_closed(); }

  std::size_t hash() const { return node_->hash; }
  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }
  // Total order for deterministic containers; consistent with ==.
  static int compare(const Term& a, const Term& b);
  bool operator<(const Term& other) const { return compare(*this, other) < 0; }

  const void* id() const { return node_.get(); }

 private:
  struct Node {
    Kind kind;
    int index = 0;
    std::string name;  // FreeVar name or Abs hint
    std::shared_ptr<const Node> a, b;  // Abs: a = body; App: a = fun, b = arg
    int size = 1;
    int free_depth = 0;
    bool has_free_names = false;
    std::size_t hash = 0;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};
struct TermPairHash {
  std::size_t operator()(const std::pair<Term, Term>& p) const {
    return p.first.hash() * 1000003u ^ p.second.hash();
  }
};

// Alpha-equivalence (structural equality of the nameless representation).
inline bool alpha_eq(const Term& a, const Term& b) { return a == b; }

// Free variable names occurring in t.
std::set<std::string> free_vars(const Term& t);

// Capture-avoiding substitution of the free variable `var` by `arg`.
// Binders are indices, so names in `arg` can never be captured.
Term substitute(const Term& body, const std::string& var, const Term& arg);

// Beta-contraction helper: body of `lam` with the bound variable replaced by
// the closed term `arg`. Requires lam to be an abstraction and arg closed.
Term apply_abs(const Term& lam, const Term& arg);

// Wrap `t` in an abstraction binding every free occurrence of `name`.
Term bind(const std::string& name, const Term& t);

std::string to_string(const Term& t);

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Parses the concrete syntax: `\x. M` or unicode lambda for abstraction
// (body extends right), juxtaposition for application (left-associative),
// parentheses, identifiers [a-zA-Z_][a-zA-Z0-9_']*.
Term parse_term(const std::string& text);

}  // namespace clb

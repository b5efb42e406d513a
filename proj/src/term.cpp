#include "clb/term.hpp"

#include <functional>

namespace clb {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::bound(int index) {
  if (index < 0) throw std::invalid_argument("negative de Bruijn index");
  auto n = std::make_shared<Node>();
  n->kind = Kind::BoundVar;
  n->index = index;
  n->size = 1;
  n->free_depth = index + 1;
  n->hash = mix(0x1, static_cast<std::size_t>(index));
  return Term(std::move(n));
}

Term Term::free_var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::FreeVar;
  n->name = std::move(name);
  n->size = 1;
  n->has_free_names = true;
  n->hash = mix(0x2, std::hash<std::string>{}(n->name));
  return Term(std::move(n));
}

Term Term::abs(std::string hint, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Abs;
  n->name = std::move(hint);
  n->a = body.node_;
  n->size = 1 + body.size();
  n->free_depth = body.free_depth() > 0 ? body.free_depth() - 1 : 0;
  n->has_free_names = body.has_free_names();
  n->hash = mix(0x3, body.hash());
  return Term(std::move(n));
}

Term Term::app(Term fun, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::App;
  n->a = fun.node_;
  n->b = arg.node_;
  n->size = 1 + fun.size() + arg.size();
  n->free_depth = std::max(fun.free_depth(), arg.free_depth());
  n->has_free_names = fun.has_free_names() || arg.has_free_names();
  n->hash = mix(mix(0x4, fun.hash()), arg.hash());
  return Term(std::move(n));
}

int Term::index() const {
  if (!is_bound()) throw std::logic_error("index() on non-variable");
  return node_->index;
}
const std::string& Term::name() const {
  if (!is_free()) throw std::logic_error("name() on non-free-variable");
  return node_->name;
}
const std::string& Term::hint() const {
  if (!is_abs()) throw std::logic_error("hint() on non-abstraction");
  return node_->name;
}
Term Term::body() const {
  if (!is_abs()) throw std::logic_error("body() on non-abstraction");
  return Term(node_->a);
}
Term Term::fun() const {
  if (!is_app()) throw std::logic_error("fun() on non-application");
  return Term(node_->a);
}
Term Term::arg() const {
  if (!is_app()) throw std::logic_error("arg() on non-application");
  return Term(node_->b);
}

bool Term::operator==(const Term& other) const {
  const Node* x = node_.get();
  const Node* y = other.node_.get();
  if (x == y) return true;
  if (x->hash != y->hash || x->kind != y->kind || x->size != y->size)
    return false;
  switch (x->kind) {
    case Kind::BoundVar:
      return x->index == y->index;
    case Kind::FreeVar:
      return x->name == y->name;
    case Kind::Abs:
      return Term(x->a) == Term(y->a);
    case Kind::App:
      return Term(x->a) == Term(y->a) && Term(x->b) == Term(y->b);
  }
  return false;
}

int Term::compare(const Term& a, const Term& b) {
  if (a.node_.get() == b.node_.get()) return 0;
  if (a.kind() != b.kind())
    return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  switch (a.kind()) {
    case Kind::BoundVar:
      return a.node_->index - b.node_->index;
    case Kind::FreeVar:
      return a.node_->name.compare(b.node_->name);
    case Kind::Abs:
      return compare(Term(a.node_->a), Term(b.node_->a));
    case Kind::App: {
      int c = compare(Term(a.node_->a), Term(b.node_->a));
      if (c != 0) return c;
      return compare(Term(a.node_->b), Term(b.node_->b));
    }
  }
  return 0;
}

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  std::function<void(const Term&)> go = [&](const Term& u) {
    if (!u.has_free_names()) return;
    switch (u.kind()) {
      case Term::Kind::FreeVar:
        out.insert(u.name());
        break;
      case Term::Kind::Abs:
        go(u.body());
        break;
      case Term::Kind::App:
        go(u.fun());
        go(u.arg());
        break;
      default:
        break;
    }
  };
  go(t);
  return out;
}

Term substitute(const Term& body, const std::string& var, const Term& arg) {
  if (!body.has_free_names()) return body;
  switch (body.kind()) {
    case Term::Kind::FreeVar:
      return body.name() == var ? arg : body;
    case Term::Kind::Abs: {
      Term b = substitute(body.body(), var, arg);
      return b == body.body() ? body : Term::abs(body.hint(), b);
    }
    case Term::Kind::App: {
      Term f = substitute(body.fun(), var, arg);
      Term a = substitute(body.arg(), var, arg);
      return (f == body.fun() && a == body.arg()) ? body : Term::app(f, a);
    }
    default:
      return body;
  }
}

namespace {

// Replace BoundVar(level) by `value` (closed) inside `t`. Because the binder
// being opened is the only dangling index, no shifting is required.
Term open_at(const Term& t, int level, const Term& value) {
  if (t.free_depth() <= level) return t;  // index `level` cannot occur
  switch (t.kind()) {
    case Term::Kind::BoundVar:
      return t.index() == level ? value : t;
    case Term::Kind::Abs: {
      Term b = open_at(t.body(), level + 1, value);
      return b == t.body() ? t : Term::abs(t.hint(), b);
    }
    case Term::Kind::App: {
      Term f = open_at(t.fun(), level, value);
      Term a = open_at(t.arg(), level, value);
      return (f == t.fun() && a == t.arg()) ? t : Term::app(f, a);
    }
    default:
      return t;
  }
}

}  // namespace

Term apply_abs(const Term& lam, const Term& arg) {
  if (!lam.is_abs()) throw std::invalid_argument("apply_abs: not an abstraction");
  if (!arg.is_closed()) throw std::invalid_argument("apply_abs: open argument");
  if (lam.free_depth() != 0)
    throw std::invalid_argument("apply_abs: abstraction has dangling indices");
  return open_at(lam.body(), 0, arg);
}

namespace {

Term bind_at(const Term& t, const std::string& name, int level) {
  switch (t.kind()) {
    case Term::Kind::FreeVar:
      return t.name() == name ? Term::bound(level) : t;
    case Term::Kind::Abs: {
      Term b = bind_at(t.body(), name, level + 1);
      return b == t.body() ? t : Term::abs(t.hint(), b);
    }
    case Term::Kind::App: {
      Term f = bind_at(t.fun(), name, level);
      Term a = bind_at(t.arg(), name, level);
      return (f == t.fun() && a == t.arg()) ? t : Term::app(f, a);
    }
    default:
      return t;
  }
}

}  // namespace

Term bind(const std::string& name, const Term& t) {
  return Term::abs(name, bind_at(t, name, 0));
}

// ---------------------------------------------------------------------------
// Printing

namespace {

bool name_used(const std::vector<std::string>& stack,
               const std::set<std::string>& frees, const std::string& n) {
  if (frees.count(n)) return true;
  for (const auto& s : stack)
    if (s == n) return true;
  return false;
}

std::string fresh_name(const std::vector<std::string>& stack,
                       const std::set<std::string>& frees,
                       const std::string& hint) {
  std::string base = hint.empty() ? "x" : hint;
  if (!name_used(stack, frees, base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!name_used(stack, frees, cand)) return cand;
  }
}

void print(const Term& t, std::vector<std::string>& stack,
           const std::set<std::string>& frees, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::BoundVar: {
      int i = t.index();
      if (i < static_cast<int>(stack.size()))
        out += stack[stack.size() - 1 - i];
      else
        out += "?" + std::to_string(i);  // dangling index (subterm printing)
      break;
    }
    case Term::Kind::FreeVar:
      out += t.name();
      break;
    case Term::Kind::Abs: {
      std::string n = fresh_name(stack, frees, t.hint());
      out += "\\" + n + ".";
      stack.push_back(n);
      print(t.body(), stack, frees, out);
      stack.pop_back();
      break;
    }
    case Term::Kind::App: {
      // Left child: parenthesize abstractions (their body extends right).
      if (t.fun().is_abs()) {
        out += "(";
        print(t.fun(), stack, frees, out);
        out += ")";
      } else {
        print(t.fun(), stack, frees, out);
      }
      out += " ";
      // Right child: parenthesize applications and abstractions that are not
      // in tail position... abstractions at the end of the term need no
      // parens, but keep them for unambiguous re-parsing of applications.
      if (t.arg().is_app() || t.arg().is_abs()) {
        out += "(";
        print(t.arg(), stack, frees, out);
        out += ")";
      } else {
        print(t.arg(), stack, frees, out);
      }
      break;
    }
  }
}

}  // namespace

std::string to_string(const Term& t) {
  std::string out;
  std::vector<std::string> stack;
  auto frees = free_vars(t);
  print(t, stack, frees, out);
  return out;
}

}  // namespace clb

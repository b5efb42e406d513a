#include "clb/context.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>

namespace clb {

Context Context::hole(int index) {
  if (index < 0) throw std::invalid_argument("negative hole index");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Hole;
  n->index = index;
  n->holes = 1;
  return Context(std::move(n));
}

Context Context::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->name = std::move(name);
  return Context(std::move(n));
}

Context Context::abs(std::string binder, Context body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Abs;
  n->name = std::move(binder);
  n->a = body.node_;
  n->size = 1 + body.size();
  n->holes = body.hole_count();
  return Context(std::move(n));
}

Context Context::app(Context fun, Context arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::App;
  n->a = fun.node_;
  n->b = arg.node_;
  n->size = 1 + fun.size() + arg.size();
  n->holes = fun.hole_count() + arg.hole_count();
  return Context(std::move(n));
}

int Context::hole_index() const {
  if (!is_hole()) throw std::logic_error("hole_index() on non-hole");
  return node_->index;
}
const std::string& Context::name() const {
  if (kind() != Kind::Var) throw std::logic_error("name() on non-variable");
  return node_->name;
}
const std::string& Context::binder() const {
  if (kind() != Kind::Abs) throw std::logic_error("binder() on non-abstraction");
  return node_->name;
}
Context Context::body() const {
  if (kind() != Kind::Abs) throw std::logic_error("body() on non-abstraction");
  return Context(node_->a);
}
Context Context::fun() const {
  if (kind() != Kind::App) throw std::logic_error("fun() on non-application");
  return Context(node_->a);
}
Context Context::arg() const {
  if (kind() != Kind::App) throw std::logic_error("arg() on non-application");
  return Context(node_->b);
}

// ---------------------------------------------------------------------------
// Filling

namespace {

// Rebind the free names of a filler that coincide with context binders in
// scope at the hole. `binders` lists those binders outermost-first; `depth`
// counts binders inside the filler traversed so far.
Term capture(const Term& t, const std::vector<std::string>& binders,
             int depth) {
  switch (t.kind()) {
    case Term::Kind::FreeVar: {
      for (int k = static_cast<int>(binders.size()) - 1; k >= 0; --k) {
        if (binders[k] == t.name()) {
          int dist = static_cast<int>(binders.size()) - 1 - k;
          return Term::bound(depth + dist);
        }
      }
      return t;
    }
    case Term::Kind::Abs: {
      Term b = capture(t.body(), binders, depth + 1);
      return b == t.body() ? t : Term::abs(t.hint(), b);
    }
    case Term::Kind::App: {
      Term f = capture(t.fun(), binders, depth);
      Term a = capture(t.arg(), binders, depth);
      return (f == t.fun() && a == t.arg()) ? t : Term::app(f, a);
    }
    default:
      return t;
  }
}

Term do_fill(const Context& c, std::vector<std::string>& binders,
             const std::function<Term(int)>& filler_for) {
  switch (c.kind()) {
    case Context::Kind::Hole: {
      Term t = filler_for(c.hole_index());
      if (t.free_depth() != 0)
        throw std::invalid_argument("fill: filler has dangling indices");
      return t.has_free_names() ? capture(t, binders, 0) : t;
    }
    case Context::Kind::Var: {
      for (int k = static_cast<int>(binders.size()) - 1; k >= 0; --k)
        if (binders[k] == c.name())
          return Term::bound(static_cast<int>(binders.size()) - 1 - k);
      return Term::free_var(c.name());
    }
    case Context::Kind::Abs: {
      binders.push_back(c.binder());
      Term b = do_fill(c.body(), binders, filler_for);
      binders.pop_back();
      return Term::abs(c.binder(), b);
    }
    case Context::Kind::App:
      return Term::app(do_fill(c.fun(), binders, filler_for),
                       do_fill(c.arg(), binders, filler_for));
  }
  throw std::logic_error("unreachable");
}

void collect_hole_indices(const Context& c, std::vector<int>& out) {
  switch (c.kind()) {
    case Context::Kind::Hole:
      out.push_back(c.hole_index());
      break;
    case Context::Kind::Abs:
      collect_hole_indices(c.body(), out);
      break;
    case Context::Kind::App:
      collect_hole_indices(c.fun(), out);
      collect_hole_indices(c.arg(), out);
      break;
    default:
      break;
  }
}

}  // namespace

Term fill(const Context& c, const std::vector<Term>& fillers) {
  std::vector<int> idx;
  collect_hole_indices(c, idx);
  if (idx.size() != fillers.size())
    throw std::invalid_argument("fill: arity mismatch (" +
                                std::to_string(idx.size()) + " holes, " +
                                std::to_string(fillers.size()) + " fillers)");
  std::vector<int> sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != static_cast<int>(i) + 1)
      throw std::invalid_argument(
          "fill: positional holes must be numbered 1..n, each exactly once");
  }
  std::vector<std::string> binders;
  return do_fill(c, binders,
                 [&](int i) -> Term { return fillers.at(i - 1); });
}

Term fill_uniform(const Context& c, const Term& m) {
  std::vector<std::string> binders;
  return do_fill(c, binders, [&](int) -> Term { return m; });
}

Term context_to_term(const Context& c) {
  if (c.hole_count() != 0)
    throw std::invalid_argument("context with holes is not a term");
  std::vector<std::string> binders;
  return do_fill(c, binders, [](int) -> Term {
    throw std::logic_error("unreachable");
  });
}

namespace {

Context from_term(const Term& t, std::vector<std::string>& stack,
                  const std::set<std::string>& frees) {
  switch (t.kind()) {
    case Term::Kind::BoundVar: {
      int i = t.index();
      if (i >= static_cast<int>(stack.size()))
        throw std::invalid_argument("term_to_context: dangling index");
      return Context::var(stack[stack.size() - 1 - i]);
    }
    case Term::Kind::FreeVar:
      return Context::var(t.name());
    case Term::Kind::Abs: {
      // Reuse the printer's freshening discipline via a local scan.
      std::string base = t.hint().empty() ? "x" : t.hint();
      std::string n = base;
      auto used = [&](const std::string& s) {
        if (frees.count(s)) return true;
        return std::find(stack.begin(), stack.end(), s) != stack.end();
      };
      for (int i = 1; used(n); ++i) n = base + std::to_string(i);
      stack.push_back(n);
      Context b = from_term(t.body(), stack, frees);
      stack.pop_back();
      return Context::abs(n, b);
    }
    case Term::Kind::App: {
      Context f = from_term(t.fun(), stack, frees);
      Context a = from_term(t.arg(), stack, frees);
      return Context::app(f, a);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

Context term_to_context(const Term& t) {
  std::vector<std::string> stack;
  auto frees = free_vars(t);
  return from_term(t, stack, frees);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_ctx(const Context& c, std::string& out) {
  switch (c.kind()) {
    case Context::Kind::Hole:
      out += c.hole_index() == 0
                 ? std::string("[]")
                 : "[" + std::to_string(c.hole_index()) + "]";
      break;
    case Context::Kind::Var:
      out += c.name();
      break;
    case Context::Kind::Abs:
      out += "\\" + c.binder() + ".";
      print_ctx(c.body(), out);
      break;
    case Context::Kind::App: {
      if (c.fun().kind() == Context::Kind::Abs) {
        out += "(";
        print_ctx(c.fun(), out);
        out += ")";
      } else {
        print_ctx(c.fun(), out);
      }
      out += " ";
      if (c.arg().kind() == Context::Kind::App ||
          c.arg().kind() == Context::Kind::Abs) {
        out += "(";
        print_ctx(c.arg(), out);
        out += ")";
      } else {
        print_ctx(c.arg(), out);
      }
      break;
    }
  }
}

}  // namespace

std::string to_string(const Context& c) {
  std::string out;
  print_ctx(c, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing (shared by terms and contexts)

namespace {

struct Lexer {
  const std::string& src;
  std::size_t pos = 0;

  explicit Lexer(const std::string& s) : src(s) {}

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
      ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= src.size();
  }
  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }
  bool consume(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  // Unicode lambda (U+03BB, UTF-8 0xCE 0xBB).
  bool consume_lambda() {
    skip_ws();
    if (pos < src.size() && src[pos] == '\\') {
      ++pos;
      return true;
    }
    if (pos + 1 < src.size() && static_cast<unsigned char>(src[pos]) == 0xCE &&
        static_cast<unsigned char>(src[pos + 1]) == 0xBB) {
      pos += 2;
      return true;
    }
    return false;
  }
  std::optional<std::string> ident() {
    skip_ws();
    std::size_t start = pos;
    auto head = [](char c) {
      return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    };
    auto tail = [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
             c == '\'';
    };
    if (pos >= src.size() || !head(src[pos])) return std::nullopt;
    ++pos;
    while (pos < src.size() && tail(src[pos])) ++pos;
    return src.substr(start, pos - start);
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(what + " at position " + std::to_string(pos) + " in \"" +
                     src + "\"");
  }
};

Context parse_app(Lexer& lx);

Context parse_atom(Lexer& lx) {
  if (lx.consume('(')) {
    Context c = parse_app(lx);
    if (!lx.consume(')')) lx.fail("expected ')'");
    return c;
  }
  if (lx.consume('[')) {
    lx.skip_ws();
    int idx = 0;
    if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
      std::size_t start = lx.pos;
      while (lx.pos < lx.src.size() &&
             std::isdigit(static_cast<unsigned char>(lx.src[lx.pos])))
        ++lx.pos;
      idx = std::stoi(lx.src.substr(start, lx.pos - start));
      if (idx < 1) lx.fail("positional hole index must be >= 1");
    }
    if (!lx.consume(']')) lx.fail("expected ']'");
    return Context::hole(idx);
  }
  if (lx.consume_lambda()) {
    auto name = lx.ident();
    if (!name) lx.fail("expected binder name after lambda");
    if (!lx.consume('.')) lx.fail("expected '.' after binder");
    return Context::abs(*name, parse_app(lx));
  }
  if (auto name = lx.ident()) return Context::var(*name);
  lx.fail("expected term");
}

bool starts_atom(Lexer& lx) {
  char c = lx.peek();
  if (c == '(' || c == '[' || c == '\\' || c == '_') return true;
  if (std::isalpha(static_cast<unsigned char>(c))) return true;
  // unicode lambda
  return static_cast<unsigned char>(c) == 0xCE;
}

Context parse_app(Lexer& lx) {
  Context c = parse_atom(lx);
  while (!lx.eof() && lx.peek() != ')' && starts_atom(lx))
    c = Context::app(c, parse_atom(lx));
  return c;
}

}  // namespace

Context parse_context(const std::string& text) {
  Lexer lx(text);
  Context c = parse_app(lx);
  if (!lx.eof()) lx.fail("trailing input");
  return c;
}

}  // namespace clb

namespace clb {

Term parse_term(const std::string& text) {
  Context c = parse_context(text);
  if (c.hole_count() != 0)
    throw ParseError("holes are not allowed in a term: \"" + text + "\"");
  return context_to_term(c);
}

}  // namespace clb

#include "clb/relation.hpp"

#include <fstream>
#include <sstream>

namespace clb {

FiniteRelation::FiniteRelation(std::vector<TermPair> pairs, bool closed_only)
    : closed_only_(closed_only) {
  for (auto& p : pairs) add(p.first, p.second);
}

bool FiniteRelation::add(const Term& m, const Term& n) {
  if (closed_only_ && (!m.is_closed() || !n.is_closed()))
    throw std::invalid_argument("relation pair must be closed: " +
                                to_string(m) + " -- " + to_string(n));
  TermPair p{m, n};
  if (index_.count(p)) return false;
  index_.insert(p);
  pairs_.push_back(std::move(p));
  return true;
}

bool FiniteRelation::contains(const Term& m, const Term& n) const {
  return index_.count(TermPair{m, n}) > 0;
}

bool FiniteRelation::subset_of(const FiniteRelation& other) const {
  for (const auto& p : pairs_)
    if (!other.contains(p.first, p.second)) return false;
  return true;
}

FiniteRelation FiniteRelation::union_of(const FiniteRelation& a,
                                        const FiniteRelation& b) {
  FiniteRelation out = a;
  for (const auto& p : b.pairs()) out.add(p.first, p.second);
  return out;
}

namespace {

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

CoupledRelation parse_relation_file(const std::string& contents) {
  CoupledRelation rel;
  FiniteRelation* target = &rel.r2;
  bool saw_section = false;
  std::istringstream in(contents);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    if (line == "[R1]") {
      target = &rel.r1;
      saw_section = true;
      continue;
    }
    if (line == "[R2]") {
      target = &rel.r2;
      saw_section = true;
      continue;
    }
    auto sep = line.find("--");
    if (sep == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected `term -- term`");
    Term m = parse_term(strip(line.substr(0, sep)));
    Term n = parse_term(strip(line.substr(sep + 2)));
    target->add(m, n);
  }
  (void)saw_section;
  return rel;
}

CoupledRelation load_relation_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open relation file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_relation_file(ss.str());
}

}  // namespace clb

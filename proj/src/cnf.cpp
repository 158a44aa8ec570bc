#include "hamreduce/cnf.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "hamreduce/errors.hpp"

namespace hamreduce {

Assignment Assignment::from_index(std::uint64_t index, int num_vars) {
  Assignment a;
  a.bits.resize(num_vars);
  // Variable 1 is the most significant bit of the index.
  for (int i = 0; i < num_vars; ++i)
    a.bits[i] = static_cast<uint8_t>((index >> (num_vars - 1 - i)) & 1u);
  return a;
}

std::uint64_t Assignment::to_index() const {
  std::uint64_t idx = 0;
  for (uint8_t b : bits) idx = (idx << 1) | b;
  return idx;
}

void validate_clause(const Clause& clause, int num_vars, int arity_bound) {
  if (static_cast<int>(clause.literals.size()) > arity_bound)
    throw InputError("ClauseTooLong",
                     "clause has " + std::to_string(clause.literals.size()) +
                         " literals, arity bound is " +
                         std::to_string(arity_bound));
  std::set<int> seen_pos, seen_neg;
  for (const Literal& lit : clause.literals) {
    if (lit.variable_index < 1 || lit.variable_index > num_vars)
      throw InputError("LiteralOutOfRange",
                       "variable " + std::to_string(lit.variable_index) +
                           " outside 1.." + std::to_string(num_vars));
    auto& same = lit.negated ? seen_neg : seen_pos;
    auto& other = lit.negated ? seen_pos : seen_neg;
    if (other.count(lit.variable_index))
      throw InputError("TautologicalClause",
                       "variable " + std::to_string(lit.variable_index) +
                           " appears in both polarities");
    if (!same.insert(lit.variable_index).second)
      throw InputError("DuplicateLiteral",
                       "variable " + std::to_string(lit.variable_index) +
                           " repeated in clause");
  }
}

void validate_formula(const CnfFormula& phi) {
  for (const Clause& c : phi.clauses)
    validate_clause(c, phi.num_vars, phi.arity_bound);
}

CnfFormula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int declared_vars = -1, declared_clauses = -1;
  std::vector<Clause> clauses;
  Clause current;
  bool in_clause = false;
  int line_no = 0;

  auto fail = [&](const std::string& code, const std::string& msg) {
    throw InputError(code, "line " + std::to_string(line_no) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == 'c' || line[0] == '%') continue;
    if (line[0] == 'p') {
      std::istringstream hdr(line);
      std::string p, fmt;
      hdr >> p >> fmt >> declared_vars >> declared_clauses;
      if (p != "p" || fmt != "cnf" || hdr.fail() || declared_vars < 0 ||
          declared_clauses < 0)
        fail("MalformedHeader", "expected 'p cnf <vars> <clauses>'");
      continue;
    }
    if (declared_vars < 0) fail("MalformedHeader", "clause before header");
    std::istringstream body(line);
    long v;
    while (body >> v) {
      if (v == 0) {
        clauses.push_back(current);
        current.literals.clear();
        in_clause = false;
      } else {
        long av = std::labs(v);
        if (av > declared_vars)
          fail("LiteralOutOfRange", "literal " + std::to_string(v) +
                                        " exceeds declared variable count " +
                                        std::to_string(declared_vars));
        current.literals.push_back(
            Literal{static_cast<int>(av), v < 0});
        in_clause = true;
      }
    }
    if (!body.eof()) fail("MalformedHeader", "non-integer token in clause");
  }
  if (declared_vars < 0)
    throw InputError("MalformedHeader", "missing 'p cnf' header");
  if (in_clause)
    throw InputError("MalformedHeader", "unterminated clause at end of input");
  if (static_cast<int>(clauses.size()) != declared_clauses)
    throw InputError("ClauseCountMismatch",
                     "header declares " + std::to_string(declared_clauses) +
                         " clauses, found " + std::to_string(clauses.size()));

  CnfFormula phi;
  phi.num_vars = declared_vars;
  phi.clauses = std::move(clauses);
  int k = 0;
  for (const Clause& c : phi.clauses)
    k = std::max(k, static_cast<int>(c.literals.size()));
  phi.arity_bound = k;
  validate_formula(phi);
  return phi;
}

CnfFormula parse_dimacs_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InputError("FileNotReadable", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dimacs(buf.str());
}

std::string serialize_dimacs(const CnfFormula& phi) {
  std::ostringstream out;
  out << "c generated by hamreduce\n";
  out << "p cnf " << phi.num_vars << ' ' << phi.clauses.size() << '\n';
  for (const Clause& c : phi.clauses) {
    for (const Literal& lit : c.literals)
      out << (lit.negated ? -lit.variable_index : lit.variable_index) << ' ';
    out << "0\n";
  }
  return out.str();
}

bool eval_clause(const Clause& clause, const Assignment& x) {
  for (const Literal& lit : clause.literals) {
    bool value = x.bits[lit.variable_index - 1] != 0;
    if (value != lit.negated) return true;
  }
  return false;
}

bool eval_formula(const CnfFormula& phi, const Assignment& x) {
  if (static_cast<int>(x.bits.size()) != phi.num_vars)
    throw InputError("LengthMismatch",
                     "assignment has " + std::to_string(x.bits.size()) +
                         " bits, formula has " + std::to_string(phi.num_vars) +
                         " variables");
  for (const Clause& c : phi.clauses)
    if (!eval_clause(c, x)) return false;
  return true;
}

int count_violations(const CnfFormula& phi, const Assignment& x) {
  int count = 0;
  for (const Clause& c : phi.clauses)
    if (!eval_clause(c, x)) ++count;
  return count;
}

BruteForceResult brute_force_min_violations(const CnfFormula& phi,
                                            int oracle_cap) {
  if (phi.num_vars > oracle_cap)
    throw CapError("OracleCapExceeded",
                   std::to_string(phi.num_vars) + " variables exceeds cap " +
                       std::to_string(oracle_cap));
  const std::uint64_t total = std::uint64_t{1} << phi.num_vars;
  BruteForceResult best;
  best.min_count = static_cast<int>(phi.clauses.size()) + 1;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Assignment a = Assignment::from_index(idx, phi.num_vars);
    int violations = count_violations(phi, a);
    if (violations < best.min_count) {
      best.min_count = violations;
      best.witness = a;
      if (violations == 0) break;  // lexicographically first witness found
    }
  }
  return best;
}

}  // namespace hamreduce

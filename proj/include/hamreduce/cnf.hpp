#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hamreduce {

/// One literal of a CNF clause: a 1-based variable index plus polarity.
struct Literal {
  int variable_index = 0;  // >= 1
  bool negated = false;

  bool operator==(const Literal&) const = default;
};

/// A disjunction of literals. No variable may appear twice (neither
/// duplicated nor in both polarities).
struct Clause {
  std::vector<Literal> literals;

  bool operator==(const Clause&) const = default;
};

/// A k-CNF formula: clauses of length at most `arity_bound` over
/// variables 1..num_vars.
struct CnfFormula {
  int num_vars = 0;
  int arity_bound = 0;
  std::vector<Clause> clauses;

  bool operator==(const CnfFormula&) const = default;
};

/// Assignment to the variables of a formula; bits[i] assigns variable i+1.
struct Assignment {
  std::vector<uint8_t> bits;

  static Assignment from_index(std::uint64_t index, int num_vars);
  std::uint64_t to_index() const;

  bool operator==(const Assignment&) const = default;
};

/// Validates the clause invariants against an arity bound; throws on
/// violation with codes TautologicalClause / DuplicateLiteral /
/// LiteralOutOfRange / ClauseTooLong.
void validate_clause(const Clause& clause, int num_vars, int arity_bound);
void validate_formula(const CnfFormula& phi);

/// Parses DIMACS CNF text ("p cnf n m" header, 0-terminated clauses,
/// 'c' comment lines). The arity bound is set to the longest clause.
CnfFormula parse_dimacs(const std::string& text);
CnfFormula parse_dimacs_file(const std::string& path);

/// Canonical DIMACS emission; parse_dimacs(serialize_dimacs(phi)) == phi.
std::string serialize_dimacs(const CnfFormula& phi);

bool eval_clause(const Clause& clause, const Assignment& x);

/// True iff every clause contains a literal satisfied by x.
bool eval_formula(const CnfFormula& phi, const Assignment& x);

/// Number of clauses of phi that x leaves unsatisfied.
int count_violations(const CnfFormula& phi, const Assignment& x);

struct BruteForceResult {
  int min_count = 0;
  Assignment witness;
};

/// Exhaustive scan over all 2^n assignments; the lowest assignment in
/// lexicographic bit order wins ties. Requires num_vars <= oracle_cap.
BruteForceResult brute_force_min_violations(const CnfFormula& phi,
                                            int oracle_cap = 24);

}  // namespace hamreduce

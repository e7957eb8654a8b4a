#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pmedian/chromosome.hpp"
#include "pmedian/ordering.hpp"

namespace pmedian {

// One monomial over closed-site indicators: coefficient times the product of
// z_j over vars, where z_j = 1 iff site j is closed.
struct Term {
  std::int64_t coefficient = 0;
  std::vector<std::uint32_t> vars;  // ascending, 0-based site indices

  friend bool operator==(const Term&, const Term&) = default;
};

// Polynomial in closed-site variables. Evaluated at the assignment induced
// by a p-open chromosome it equals that open set's total service cost.
struct PseudoBooleanPolynomial {
  std::int64_t constant = 0;
  std::vector<Term> terms;

  friend bool operator==(const PseudoBooleanPolynomial&, const PseudoBooleanPolynomial&) = default;
};

// Expands the ordering tables: each client contributes its first increment to
// the constant and, for column k >= 1, one monomial whose variables are the
// client's k nearest sites. Zero coefficients are kept; nothing is merged.
PseudoBooleanPolynomial build_cost_polynomial(const OrderingTables& tables);

// Merges like terms by variable set, drops zero coefficients, folds
// variable-free terms into the constant. Terms come out in canonical order:
// ascending degree, then lexicographic variable lists.
PseudoBooleanPolynomial reduce_polynomial(const PseudoBooleanPolynomial& poly);

// Value at the assignment induced by the chromosome: z_j = 1 iff bit j is
// closed. Works on reduced and unreduced polynomials alike.
std::int64_t evaluate_polynomial(const PseudoBooleanPolynomial& poly, const Chromosome& c);

// Text form for diffing: "constant <c>" then one "<coeff> z<i> z<j>..." line
// per term in stored order, with 1-based site numbers.
std::string format_polynomial(const PseudoBooleanPolynomial& poly);

}  // namespace pmedian

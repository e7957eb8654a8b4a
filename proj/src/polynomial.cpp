#include "pmedian/polynomial.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "pmedian/errors.hpp"

namespace pmedian {

PseudoBooleanPolynomial build_cost_polynomial(const OrderingTables& t) {
  PseudoBooleanPolynomial poly;
  poly.terms.reserve(t.clients * (t.width - 1));
  for (std::size_t i = 0; i < t.clients; ++i) {
    const auto order = t.order_row(i);
    const auto inc = t.increment_row(i);
    poly.constant += inc[0];
    for (std::size_t k = 1; k < t.width; ++k) {
      Term term;
      term.coefficient = inc[k];
      term.vars.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
      std::sort(term.vars.begin(), term.vars.end());
      poly.terms.push_back(std::move(term));
    }
  }
  return poly;
}

namespace {

struct DegreeLexLess {
  bool operator()(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

}  // namespace

PseudoBooleanPolynomial reduce_polynomial(const PseudoBooleanPolynomial& poly) {
  std::map<std::vector<std::uint32_t>, std::int64_t, DegreeLexLess> merged;
  PseudoBooleanPolynomial out;
  out.constant = poly.constant;
  for (const Term& term : poly.terms) {
    // the variables are idempotent, so a term's variable list is a set:
    // duplicates collapse and order does not matter
    std::vector<std::uint32_t> key = term.vars;
    std::sort(key.begin(), key.end());
    key.erase(std::unique(key.begin(), key.end()), key.end());
    if (key.empty()) {
      out.constant += term.coefficient;
      continue;
    }
    merged[std::move(key)] += term.coefficient;
  }
  for (auto& [vars, coefficient] : merged) {
    if (coefficient == 0) continue;
    out.terms.push_back({coefficient, vars});
  }
  return out;
}

std::int64_t evaluate_polynomial(const PseudoBooleanPolynomial& poly, const Chromosome& c) {
  std::int64_t total = poly.constant;
  for (const Term& term : poly.terms) {
    bool all_closed = true;
    for (std::uint32_t v : term.vars) {
      if (v >= c.size()) throw StructuralError("polynomial variable out of range");
      if (c.test(v)) all_closed = false;
    }
    if (all_closed) total += term.coefficient;
  }
  return total;
}

std::string format_polynomial(const PseudoBooleanPolynomial& poly) {
  std::ostringstream out;
  out << "constant " << poly.constant << '\n';
  for (const Term& term : poly.terms) {
    out << term.coefficient;
    for (std::uint32_t v : term.vars) {
      out << " z" << (v + 1);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace pmedian

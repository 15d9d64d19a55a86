#ifndef NEJAC_GROEBNER_HPP
#define NEJAC_GROEBNER_HPP

#include "nejac/poly.hpp"

#include <compare>
#include <optional>
#include <span>
#include <vector>

namespace nejac {

enum class OrderKind { degrevlex, lex, deglex };

// Total monomial order. rank[k] is the variable that is k-th most significant.
class MonomialOrder {
 public:
  MonomialOrder(OrderKind kind, std::size_t nvars);
  MonomialOrder(OrderKind kind, std::vector<std::size_t> rank);

  static MonomialOrder degrevlex(std::size_t nvars) { return {OrderKind::degrevlex, nvars}; }
  static MonomialOrder lex(std::size_t nvars) { return {OrderKind::lex, nvars}; }
  static MonomialOrder deglex(std::size_t nvars) { return {OrderKind::deglex, nvars}; }

  OrderKind kind() const { return kind_; }
  const std::vector<std::size_t>& rank() const { return rank_; }
  std::size_t nvars() const { return rank_.size(); }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

 private:
  OrderKind kind_;
  std::vector<std::size_t> rank_;
};

Monomial leading_monomial(const Poly& p, const MonomialOrder& order);
Rational leading_coefficient(const Poly& p, const MonomialOrder& order);

// Reduced Groebner basis: monic generators, sorted by ascending leading monomial.
class GroebnerBasis {
 public:
  GroebnerBasis(MonomialOrder order, std::vector<Poly> generators);

  const MonomialOrder& order() const { return order_; }
  const std::vector<Poly>& generators() const { return gens_; }
  const std::vector<Monomial>& leading_monomials() const { return lms_; }
  std::size_t nvars() const { return order_.nvars(); }
  bool is_unit_ideal() const;

 private:
  MonomialOrder order_;
  std::vector<Poly> gens_;
  std::vector<Monomial> lms_;
};

// p = sum_k quotients[k] * basis[k] + remainder, remainder fully reduced.
struct Division {
  Poly remainder;
  std::vector<Poly> quotients;
};

Division divide(const Poly& p, std::span<const Poly> basis, const MonomialOrder& order, bool track_quotients);

GroebnerBasis buchberger(std::span<const Poly> gens, const MonomialOrder& order);

// Reduced basis together with representations gens_out[j] = sum_k reps[j][k] * gens_in[k].
struct TrackedBasis {
  GroebnerBasis basis;
  std::vector<std::vector<Poly>> representations;
};

TrackedBasis buchberger_tracked(std::span<const Poly> gens, const MonomialOrder& order);

Poly normal_form(const Poly& p, const GroebnerBasis& gb);

// Some cofactors A with sum A_i gens_i = p, or nothing when p is not in the ideal.
std::optional<std::vector<Poly>> membership_with_cofactors(const Poly& p, std::span<const Poly> gens,
                                                           const MonomialOrder& order);
std::optional<std::vector<Poly>> membership_with_cofactors(const Poly& p, const TrackedBasis& tb);

}  // namespace nejac

#endif

#pragma once

#include <memory>
#include <string>

#include "ringlab/lattice.hpp"

namespace ringlab {

// Ring and module elements are coordinate vectors, kept reduced modulo the
// additive orders of the ambient basis.
using Elem = Vec;

// Finite unital ring presented by an additive basis b_0..b_{k-1} with
// additive orders d_i, structure constants mult[i][j] = coords of b_i * b_j,
// and the coordinates of 1.  The additive group is Z/d_0 x ... x Z/d_{k-1}.
struct FiniteRing {
  std::string name;
  Vec orders;
  std::vector<std::vector<Vec>> mult;
  Vec unit;
  u64 size = 1;
  bool commutative = false;

  int k() const { return static_cast<int>(orders.size()); }
  Elem zero() const { return Elem(orders.size(), 0); }
  Elem reduce(const Vec& x) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem scalar(i64 n) const;  // n * 1
  bool is_zero(const Elem& a) const;
  u64 encode(const Elem& a) const;
  Elem decode(u64 code) const;
  std::string structure_key() const;
};

using RingPtr = std::shared_ptr<const FiniteRing>;

// Validates shape, additive-order compatibility of the structure constants,
// the unit laws, and associativity on all basis triples.
RingPtr make_ring(std::string name, Vec orders, std::vector<std::vector<Vec>> mult, Vec unit);

RingPtr zero_ring();
RingPtr opposite_ring(const RingPtr& r);
RingPtr product_ring(const RingPtr& a, const RingPtr& b);

bool same_ring(const RingPtr& a, const RingPtr& b);

}  // namespace ringlab

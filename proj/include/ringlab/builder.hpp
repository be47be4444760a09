#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ringlab/ring.hpp"

namespace ringlab {

// Parsed form of the ring-spec grammar:
//   spec := atom { 'x' atom }
//   atom := base { "[x]/(" poly ")" }
//   base := Z/<n> | GF(<q>) | Mat(<n>, <spec>) | Tri(<n>, <spec>) | op(<spec>)
//   poly := sum of <int>, x^<k>, <int>*x^<k> terms
struct RingSpecNode;
using SpecPtr = std::shared_ptr<const RingSpecNode>;

struct RingSpecNode {
  enum class Kind { Zmod, GaloisField, Matrix, Triangular, Opposite, Product, PolyQuotient };
  Kind kind;
  i64 n = 0;                // modulus, field order, or matrix size
  SpecPtr left, right;      // inner spec(s)
  std::vector<i64> poly;    // degree-indexed coefficients for PolyQuotient
  std::string str() const;  // canonical rendering
};

SpecPtr parse_ring_spec(const std::string& text);

RingPtr build_ring(const SpecPtr& spec);
RingPtr build_ring(const std::string& spec);

// Quotient of r by a two-sided ideal.  With close_under_products the ideal
// generated by gens is formed; otherwise gens must already span a two-sided
// ideal as an additive group.
RingPtr quotient_ring(const RingPtr& r, const std::vector<Elem>& gens,
                      bool close_under_products, const std::string& name);

// Monic irreducible polynomial of the requested degree over Z/p, smallest in
// the lexicographic order on coefficient vectors.
std::vector<i64> find_irreducible(i64 p, int degree);

}  // namespace ringlab

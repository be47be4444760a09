#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ringlab {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using Vec = std::vector<i64>;

i64 floordiv(i64 a, i64 b);
i64 imod(i64 a, i64 b);
i64 gcd_i64(i64 a, i64 b);
i64 lcm_i64(i64 a, i64 b);

// Positive integer kept in factored form, for counts that can exceed 64 bits
// (hom-group orders over many coordinates).
struct Factored {
  std::map<i64, int> exponents;

  static Factored one();
  static Factored of(i64 n);
  void multiply_by(i64 n);
  void multiply(const Factored& other);
  bool operator==(const Factored& other) const = default;
  bool is_one() const;
  bool fits_u64() const;
  u64 value_u64() const;
  std::string str() const;
};

// Subgroup of the finite abelian group Z/m_0 x ... x Z/m_{n-1}, stored as a
// lower-triangular column basis in Hermite normal form.  Column t has its
// first nonzero entry at row t; the pivot basis_[t][t] divides mods_[t] and
// entries above the pivot in later columns are reduced modulo the pivot of
// their row.  The integer span of the columns equals the full preimage
// lattice of the subgroup in Z^n, so membership and enumeration are exact.
class Sublattice {
 public:
  static Sublattice zero(Vec mods);
  static Sublattice full(Vec mods);
  static Sublattice span(Vec mods, const std::vector<Vec>& generators);

  const Vec& mods() const { return mods_; }
  int dim() const { return static_cast<int>(mods_.size()); }
  const std::vector<Vec>& basis() const { return cols_; }
  i64 pivot(int t) const { return cols_[t][t]; }

  u64 order() const;
  Factored order_factored() const;
  bool contains(const Vec& x) const;
  bool contains_all(const Sublattice& other) const;
  bool is_zero() const;
  bool is_full() const;
  Sublattice sum(const Sublattice& other) const;

  // Nonzero columns of the basis, reduced into the ambient box; generates the
  // subgroup (empty for the zero subgroup).
  std::vector<Vec> generators() const;

  // All subgroup elements in a fixed mixed-radix order; caller is responsible
  // for checking order() against any cutoff first.
  std::vector<Vec> elements() const;
  void for_each_element(const std::function<void(const Vec&)>& fn) const;
  // Same order; stops when fn returns false and reports whether it did.
  bool for_each_element_until(const std::function<bool(const Vec&)>& fn) const;

  // Mixed-radix digits of a member: x == sum_t digits[t] * basis[t] modulo the
  // ambient moduli, with digits[t] in [0, mods[t]/pivot(t)).
  Vec digits(const Vec& x) const;
  Vec element_from_digits(const Vec& digits) const;

  bool operator==(const Sublattice& other) const = default;
  std::string key() const;

 private:
  Vec mods_;
  std::vector<Vec> cols_;
};

// One homogeneous congruence: sum_t coef[t] * x_t == 0 (mod modulus).
// Solvers require modulus > 0 and mods[t] * coef[t] == 0 (mod modulus) for
// every coordinate, which makes the solution set well defined on the ambient
// group rather than on Z^n.
struct CongruenceRow {
  Vec coef;
  i64 modulus = 1;
};

// Subgroup of solutions common to all rows, intersected with `start` (the
// full ambient group when `start` is absent).
Sublattice solve_congruences(const Vec& mods, const std::vector<CongruenceRow>& rows);
Sublattice restrict_congruences(const Sublattice& start, const std::vector<CongruenceRow>& rows);

// One inhomogeneous congruence: sum_t coef[t] * x_t == rhs (mod modulus),
// under the same compatibility requirement as CongruenceRow.
struct AffineRow {
  Vec coef;
  i64 rhs = 0;
  i64 modulus = 1;
};

// A particular solution in the ambient box, or nullopt when the system has
// none.
std::optional<Vec> solve_affine(const Vec& mods, const std::vector<AffineRow>& rows);

// Smith normal form of a square integer matrix: U * A * V = diag(d) with
// d_0 | d_1 | ... and all d_t >= 0.  U and Uinv are returned row-major.
struct SnfResult {
  Vec diag;
  std::vector<Vec> U;
  std::vector<Vec> Uinv;
};
SnfResult smith_normal_form(std::vector<Vec> rows);

// Additive order of x in the ambient group.
i64 element_order(const Vec& mods, const Vec& x);

// Invariant factors (ascending divisibility chain, all > 1) of the quotient
// group V/U together with generator representatives and coordinate maps.
// Requires U to be contained in V.
class GroupPresentation {
 public:
  GroupPresentation(const Sublattice& V, const Sublattice& U);

  const Vec& orders() const { return orders_; }
  const std::vector<Vec>& generator_reps() const { return gens_; }
  u64 size() const;

  // Coordinates of a member of V in the presented quotient.
  Vec coords(const Vec& x) const;
  // Ambient representative of a coordinate vector.
  Vec lift(const Vec& coords) const;

 private:
  Vec ambient_mods_;
  std::vector<Vec> vbasis_;
  Vec col_orders_;
  Vec full_diag_;
  std::vector<Vec> umat_;
  std::vector<int> kept_;
  Vec orders_;
  std::vector<Vec> gens_;

  Vec solve_in_vbasis(const Vec& x) const;
};

}  // namespace ringlab

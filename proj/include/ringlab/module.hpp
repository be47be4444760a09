#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ringlab/limits.hpp"
#include "ringlab/ring.hpp"

namespace ringlab {

// Finite left module presented by generators m_0..m_{gens-1} with additive
// orders e_u and action table action[i][u] = coords of b_i * m_u.  The zero
// module has an empty generator list.
struct FinModule {
  RingPtr ring;
  Vec orders;
  std::vector<std::vector<Vec>> action;
  u64 size = 1;

  int gens() const { return static_cast<int>(orders.size()); }
  Elem zero() const { return Elem(orders.size(), 0); }
  Elem reduce(const Vec& x) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem act_basis(int i, const Elem& x) const;
  Elem act(const Elem& r, const Elem& x) const;
  u64 encode(const Elem& x) const;
  Elem decode(u64 code) const;
  // Identifies the module up to literal equality of presentations; two
  // modules with equal keys over the same ring are the same object for every
  // intrinsic computation.
  std::string structure_key() const;
};

// Validates shape, order compatibility in both arguments, the unit law, and
// compatibility of the action with the ring multiplication.
FinModule make_module(RingPtr ring, Vec orders, std::vector<std::vector<Vec>> action);

FinModule regular_module(const RingPtr& ring);
FinModule zero_module(const RingPtr& ring);

// Submodule of a fixed ambient module: an action-closed sublattice together
// with the sorted list of its element codes.
struct Submodule {
  Sublattice lat;
  std::vector<u64> elems;
  std::vector<Elem> gens;

  u64 size() const { return elems.size(); }
  bool contains_code(u64 code) const;
};

Submodule submodule_from_gens(const FinModule& m, const std::vector<Elem>& gens);
Submodule submodule_from_lattice(const FinModule& m, const Sublattice& lat);
Submodule zero_submodule(const FinModule& m);
Submodule full_submodule(const FinModule& m);
Submodule submodule_sum(const FinModule& m, const Submodule& a, const Submodule& b);
Submodule submodule_intersection(const FinModule& m, const Submodule& a, const Submodule& b);

// All submodules, seeded by cyclic closures and closed under pairwise sums,
// sorted by (size, element list).
struct SubmoduleSet {
  std::vector<Submodule> members;
  int index_of_key(const std::string& lattice_key) const;
  const Submodule& zero() const { return members.front(); }
  const Submodule& full() const { return members.back(); }

  std::vector<std::pair<std::string, int>> key_index;  // sorted by key
};

SubmoduleSet submodule_lattice(const FinModule& m, const Limits& limits);

struct ModuleMorphism {
  std::shared_ptr<const FinModule> source;
  std::shared_ptr<const FinModule> target;
  std::vector<Vec> mat;  // row u = image coordinates of source generator u

  Elem apply(const Elem& x) const;
};

ModuleMorphism make_morphism(std::shared_ptr<const FinModule> source,
                             std::shared_ptr<const FinModule> target,
                             std::vector<Vec> mat);
ModuleMorphism identity_morphism(const std::shared_ptr<const FinModule>& m);
ModuleMorphism zero_morphism(std::shared_ptr<const FinModule> source,
                             std::shared_ptr<const FinModule> target);
ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f);
// Inverse of a bijective morphism.
ModuleMorphism invert(const ModuleMorphism& f);
u64 image_size(const ModuleMorphism& f);
bool is_bijective(const ModuleMorphism& f);

std::pair<Submodule, Submodule> kernel_image(const ModuleMorphism& f);

// Largest submodule of m killed by every listed ring element.  The elements
// must generate a two-sided ideal or the result is not action-closed.
Submodule annihilator_submodule(const FinModule& m, const std::vector<Elem>& ring_elems);

// Congruence rows cutting out Hom_R(M, N) inside the grid of matrices,
// coordinates laid out source-generator major: entry (u, w) of a matrix sits
// at grid position u * N.gens() + w.
std::vector<CongruenceRow> hom_condition_rows(const FinModule& m, const FinModule& n);

// The abelian group Hom_R(M, N) as a sublattice of the grid of matrices,
// coordinates laid out source-generator major.
Sublattice hom_lattice(const FinModule& m, const FinModule& n);
Factored hom_count(const FinModule& m, const FinModule& n);
std::vector<ModuleMorphism> hom_set(const FinModule& m, const FinModule& n, const Limits& limits);
// Lazy scan in the canonical enumeration order; stops early when fn returns
// false.  Scans at most limits.hom_cutoff candidates and reports whether the
// scan was exhaustive.
bool for_each_hom(const FinModule& m, const FinModule& n, const Limits& limits,
                  const std::function<bool(const ModuleMorphism&)>& fn);

ModuleMorphism morphism_from_grid(const std::shared_ptr<const FinModule>& source,
                                  const std::shared_ptr<const FinModule>& target, const Vec& y);

struct DirectSum {
  FinModule module;
  ModuleMorphism inj_left, inj_right, proj_left, proj_right;
};
DirectSum direct_sum(const FinModule& a, const FinModule& b, const Limits& limits);

struct DirectSumMany {
  FinModule module;
  std::vector<ModuleMorphism> inj, proj;
};
DirectSumMany direct_sum_many(const RingPtr& ring, const std::vector<FinModule>& parts,
                              const Limits& limits);

std::optional<ModuleMorphism> find_isomorphism(const FinModule& m, const FinModule& n,
                                               const Limits& limits);
bool are_isomorphic(const FinModule& m, const FinModule& n, const Limits& limits);

// Additive invariant: per prime, the sorted exponents of the cyclic factors.
std::string additive_type(const Vec& orders);

// Subquotient V/U presented as a module in its own right, with coordinate
// maps relative to the ambient module.  V and U must be action-closed and
// nested.
struct PresentedModule {
  FinModule mod;
  std::vector<Elem> gen_reps;
  GroupPresentation pres;

  Elem to_coords(const Elem& ambient) const { return pres.coords(ambient); }
  Elem lift(const Elem& coords) const { return pres.lift(coords); }
};

PresentedModule subquotient_module(const FinModule& m, const Sublattice& v, const Sublattice& u);

struct QuotientResult {
  PresentedModule pres;
  ModuleMorphism projection;  // ambient -> quotient
};
QuotientResult quotient_module(const FinModule& m, const Submodule& n);

struct SubResult {
  PresentedModule pres;
  ModuleMorphism inclusion;  // submodule -> ambient
};
SubResult sub_module(const FinModule& m, const Submodule& n);

struct IndecomposablePart {
  FinModule part;
  ModuleMorphism inclusion;   // part -> ambient
  ModuleMorphism projection;  // ambient -> part
};
enum class DecomposeOrder { SmallestFirst, LargestFirst };
std::vector<IndecomposablePart> decompose_module(const FinModule& m, const Limits& limits,
                                                 DecomposeOrder order = DecomposeOrder::SmallestFirst);

}  // namespace ringlab

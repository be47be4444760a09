#pragma once

#include <map>
#include <memory>
#include <vector>

#include "ringlab/module.hpp"

namespace ringlab {

struct CoverResult {
  FinModule cover;
  ModuleMorphism onto;  // cover -> m, surjective with small kernel
};

struct HullResult {
  FinModule hull;
  ModuleMorphism into;  // m -> hull, injective with essential image
};

// Analysis context for one ring: caches the regular module, its submodule
// lattice, the Jacobson radical, the simple modules, the indecomposable
// projectives, and per-module verdicts keyed by presentation.
class RingAnalysis {
 public:
  RingAnalysis(RingPtr ring, Limits limits);

  const RingPtr& ring() const { return ring_; }
  const Limits& limits() const { return limits_; }
  const std::shared_ptr<const FinModule>& regular() const { return regular_; }
  const SubmoduleSet& regular_lattice();
  const Submodule& jacobson_radical();
  const Submodule& left_socle();  // socle of the regular module

  // Pairwise nonisomorphic simple modules, in a fixed order.
  const std::vector<FinModule>& simples();
  // Indecomposable direct summands of the regular module, aligned so that
  // projective_tops()[j] is the top of projective_parts()[j].
  const std::vector<IndecomposablePart>& projective_parts();
  const std::vector<FinModule>& projective_tops();

  // The analysis of the opposite ring; duals of left modules live over it.
  RingAnalysis& op();

  Submodule radical_of(const FinModule& m);
  Submodule socle_of(const FinModule& m);
  bool is_semisimple_module(const FinModule& m);
  bool is_simple(const FinModule& m);

  // n must be a submodule of m.
  bool is_essential(const FinModule& m, const Submodule& n);
  bool is_small_in(const FinModule& m, const Submodule& n);

  // Character dual: a left module over the opposite ring with the same
  // additive group, pairing the coordinates cyclically.
  FinModule dual(const FinModule& m);
  // Contravariant: for f : M -> N this is dual(N) -> dual(M).
  ModuleMorphism dual_map(const ModuleMorphism& f);

  bool is_injective(const FinModule& m);   // Baer's criterion over all left ideals
  bool is_projective(const FinModule& m);  // the projective cover map is bijective

  CoverResult projective_cover(const FinModule& m);
  HullResult injective_hull(const FinModule& m);

 private:
  void ensure_structure();

  RingPtr ring_;
  Limits limits_;
  std::shared_ptr<const FinModule> regular_;
  bool structure_ready_ = false;
  SubmoduleSet regular_lattice_;
  std::unique_ptr<Submodule> jacobson_;
  std::unique_ptr<Submodule> left_socle_;
  std::vector<FinModule> simples_;
  std::vector<IndecomposablePart> projective_parts_;
  std::vector<FinModule> projective_tops_;
  std::vector<ModuleMorphism> projective_top_maps_;
  std::unique_ptr<RingAnalysis> op_;
  RingAnalysis* op_back_ = nullptr;
  std::map<std::string, bool> injective_memo_;
  std::map<std::string, bool> projective_memo_;
};

}  // namespace ringlab

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ringlab/homological.hpp"

namespace ringlab {

enum class TheoryKind { Trivial, Improper, Proper };
std::string kind_name(TheoryKind kind);

struct FactorRings {
  RingPtr torsion_factor;      // almost small (or the zero ring)
  RingPtr torsionfree_factor;  // semisimple (or the zero ring)
};

// Verdict for the torsion theory generated by the small modules, over one
// ring.  The extensional booleans quantify over the module corpus only.
struct TorsionVerdict {
  Submodule radical_of_r;
  TheoryKind kind = TheoryKind::Proper;
  bool splits = false;
  bool cohereditary = false;
  bool stable = false;
  bool goldie_leq_cg = false;
  std::optional<FactorRings> factors;       // present when splits
  std::optional<FinModule> failing_simple;  // injective, not projective
  std::string witness;
};

struct RingReport {
  std::string name;
  u64 size = 0;
  bool semisimple = false;
  bool local = false;
  bool division = false;
  bool v_ring = false;
  bool kasch = false;
  bool qf = false;
  bool small_ring = false;
  bool almost_small = false;
  bool product_of_local_rings = false;
  bool socle_right_in_left = false;  // Soc(R as right module) inside Soc(R as left module)
  bool socle_left_in_right = false;
  bool double_annihilator = false;  // l(r(J)) = J
  u64 jacobson_size = 0;
  u64 left_socle_size = 0;
  u64 right_socle_size = 0;
  int simple_count = 0;
  bool corpus_fallback = false;  // corpus built from R instead of R + R
  TorsionVerdict verdict;
};

struct CorpusModule {
  std::string label;
  FinModule mod;
};

// Torsion-theoretic operations over a fixed finite ring.  All module
// arguments must live over that ring; results are memoized by module
// presentation, so repeated calls on the same presentation are cheap.
class TorsionAnalysis {
 public:
  TorsionAnalysis(RingPtr ring, Limits limits);

  RingAnalysis& homological() { return homs_; }
  const RingPtr& ring() const { return ring_; }
  const Limits& limits() const { return limits_; }

  // Elements whose annihilator left ideal is essential, i.e. contains the
  // left socle.
  Submodule singular_submodule(const FinModule& m);
  bool is_singular_module(const FinModule& m);

  // A module is small when its image inside its injective hull is a
  // superfluous submodule there.
  bool is_small_module(const FinModule& m);

  // Sum of all small submodules; computed both as that sum and as the
  // preimage of the hull radical, with the two results required to agree.
  Submodule zstar(const FinModule& m);

  // Idempotent closure of the singular submodule.
  Submodule goldie_radical(const FinModule& m);

  // Radical of the torsion theory generated by the small modules, by
  // iterated preimages of zstar along quotients.
  Submodule cg_radical(const FinModule& m);
  bool is_cg_torsion(const FinModule& m);
  bool is_cg_torsionfree(const FinModule& m);

  // Independent oracle: the largest submodule all of whose proper
  // subquotients have nonzero zstar, found by scanning the lattice.
  Submodule cg_radical_brute(const FinModule& m);

  // Intersection of all kernels of maps onto small modules, its iteration
  // to a fixpoint, and the associated torsion-class membership test.
  Submodule reject_small(const FinModule& m);
  Submodule reject_radical(const FinModule& m);
  bool is_perp_torsion(const FinModule& m);

  // Subquotients of R + R up to isomorphism (of R alone when R + R exceeds
  // a cutoff), plus all simples with their hulls and covers.
  const std::vector<CorpusModule>& module_corpus();
  bool corpus_fallback();

  const TorsionVerdict& cg_splitting();
  const RingReport& classify();

 private:
  bool zstar_nonzero(const FinModule& m);
  Submodule preimage_in(const FinModule& m, const Submodule& base, const QuotientResult& q,
                        const Submodule& in_quotient);
  void build_corpus();

  RingPtr ring_;
  Limits limits_;
  RingAnalysis homs_;

  std::map<std::string, bool> small_memo_, zstar_nz_memo_;
  std::map<std::string, Submodule> sing_memo_, zstar_memo_, goldie_memo_, cg_memo_, reject_memo_,
      rho_memo_;
  std::optional<std::vector<CorpusModule>> corpus_;
  bool corpus_fallback_ = false;
  std::optional<TorsionVerdict> verdict_;
  std::optional<RingReport> report_;
};

RingReport classify_ring(const RingPtr& ring, const Limits& limits);

// Every corpus module over the product splits into its component pieces and
// the cg radical is the sum of the component radicals.
bool product_decomposition_check(const RingPtr& a, const RingPtr& b, const Limits& limits);

std::vector<Elem> central_idempotents(const FiniteRing& r);
std::vector<Elem> primitive_central_idempotents(const FiniteRing& r);

// Ring structure carried by a two-sided ideal that is a unital direct
// factor, with the given element as its identity.
RingPtr ideal_ring(const RingPtr& ambient, const Submodule& ideal, const Elem& unit,
                   const std::string& name);

}  // namespace ringlab

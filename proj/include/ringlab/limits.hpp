#pragma once

#include <cstdint>

namespace ringlab {

// Size guards for enumerative computations.  All bounds are inclusive.
struct Limits {
  std::uint64_t module_cutoff = 4096;    // max elements of any handled module
  std::uint64_t hom_cutoff = 65536;      // max materialized or scanned homs
  std::uint64_t lattice_cutoff = 20000;  // max members of a submodule lattice
  int regular_copies = 2;                // corpus base is R^regular_copies

  // Environment overrides: RINGLAB_MODULE_CUTOFF, RINGLAB_HOM_CUTOFF,
  // RINGLAB_LATTICE_CUTOFF.
  static Limits from_env();
};

}  // namespace ringlab

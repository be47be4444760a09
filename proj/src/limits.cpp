#include "ringlab/limits.hpp"

#include <cstdlib>
#include <string>

namespace ringlab {

namespace {

void read_env(const char* var, std::uint64_t* out) {
  const char* raw = std::getenv(var);
  if (raw == nullptr || *raw == '\0') return;
  try {
    std::uint64_t v = std::stoull(raw);
    if (v > 0) *out = v;
  } catch (const std::exception&) {
    // Unparsable values keep the default.
  }
}

}  // namespace

Limits Limits::from_env() {
  Limits lim;
  read_env("RINGLAB_MODULE_CUTOFF", &lim.module_cutoff);
  read_env("RINGLAB_HOM_CUTOFF", &lim.hom_cutoff);
  read_env("RINGLAB_LATTICE_CUTOFF", &lim.lattice_cutoff);
  return lim;
}

}  // namespace ringlab

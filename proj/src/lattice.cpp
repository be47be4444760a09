#include "ringlab/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "ringlab/errors.hpp"

namespace ringlab {

i64 floordiv(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i64 imod(i64 a, i64 b) {
  i64 r = a % b;
  if (r < 0) r += (b < 0 ? -b : b);
  return r;
}

i64 gcd_i64(i64 a, i64 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i64 lcm_i64(i64 a, i64 b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_i64(a, b) * b;
}

Factored Factored::one() { return Factored{}; }

Factored Factored::of(i64 n) {
  Factored f;
  f.multiply_by(n);
  return f;
}

void Factored::multiply_by(i64 n) {
  check(n > 0, "Factored handles positive integers only");
  for (i64 p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      ++exponents[p];
      n /= p;
    }
  }
  if (n > 1) ++exponents[n];
}

void Factored::multiply(const Factored& other) {
  for (const auto& [p, e] : other.exponents) exponents[p] += e;
}

bool Factored::is_one() const { return exponents.empty(); }

bool Factored::fits_u64() const {
  long double acc = 1.0L;
  for (const auto& [p, e] : exponents) {
    for (int i = 0; i < e; ++i) {
      acc *= static_cast<long double>(p);
      if (acc > 1.8e19L) return false;
    }
  }
  return true;
}

u64 Factored::value_u64() const {
  check(fits_u64(), "factored value exceeds 64 bits");
  u64 acc = 1;
  for (const auto& [p, e] : exponents)
    for (int i = 0; i < e; ++i) acc *= static_cast<u64>(p);
  return acc;
}

std::string Factored::str() const {
  if (exponents.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, e] : exponents) {
    if (!first) os << "*";
    first = false;
    os << p;
    if (e > 1) os << "^" << e;
  }
  return os.str();
}

namespace {

Vec reduce_vec(const Vec& mods, const Vec& x) {
  check(x.size() == mods.size(), "coordinate vector has wrong length");
  Vec r(x.size());
  for (size_t t = 0; t < x.size(); ++t) r[t] = imod(x[t], mods[t]);
  return r;
}

void reduce_tail(const Vec& mods, Vec& col, size_t from) {
  for (size_t s = from; s < col.size(); ++s) col[s] = imod(col[s], mods[s]);
}

// Lower-triangular Hermite basis of span(pool) + diag(mods) Z^n, columns
// indexed by their pivot row.  Pool columns must already be reduced into the
// ambient box.
std::vector<Vec> hermite_basis(const Vec& mods, std::vector<Vec> pool) {
  const size_t n = mods.size();
  std::vector<Vec> result(n);
  for (size_t t = 0; t < n; ++t) {
    Vec diag_copy(n, 0);
    diag_copy[t] = mods[t];
    pool.push_back(std::move(diag_copy));
    size_t cur = pool.size();
    for (size_t j = 0; j < pool.size(); ++j) {
      if (pool[j][t] == 0) continue;
      if (cur == pool.size()) {
        cur = j;
        continue;
      }
      size_t a = cur, b = j;
      while (pool[b][t] != 0) {
        i64 q = floordiv(pool[a][t], pool[b][t]);
        if (q != 0) {
          for (size_t s = t; s < n; ++s) pool[a][s] -= q * pool[b][s];
          reduce_tail(mods, pool[a], t + 1);
        }
        std::swap(a, b);
      }
      cur = a;
    }
    check(cur < pool.size() && pool[cur][t] > 0, "hermite pivot extraction failed");
    result[t] = pool[cur];
    pool[cur] = Vec(n, 0);
  }
  for (size_t t = 0; t < n; ++t) {
    for (size_t s = t + 1; s < n; ++s) {
      i64 q = floordiv(result[t][s], result[s][s]);
      if (q != 0) {
        for (size_t r = s; r < n; ++r) result[t][r] -= q * result[s][r];
        reduce_tail(mods, result[t], s + 1);
      }
    }
  }
  return result;
}

}  // namespace

Sublattice Sublattice::zero(Vec mods) {
  Sublattice L;
  L.cols_.assign(mods.size(), Vec(mods.size(), 0));
  for (size_t t = 0; t < mods.size(); ++t) {
    check(mods[t] >= 1, "ambient modulus must be positive");
    L.cols_[t][t] = mods[t];
  }
  L.mods_ = std::move(mods);
  return L;
}

Sublattice Sublattice::full(Vec mods) {
  Sublattice L;
  L.cols_.assign(mods.size(), Vec(mods.size(), 0));
  for (size_t t = 0; t < mods.size(); ++t) {
    check(mods[t] >= 1, "ambient modulus must be positive");
    L.cols_[t][t] = 1;
  }
  L.mods_ = std::move(mods);
  return L;
}

Sublattice Sublattice::span(Vec mods, const std::vector<Vec>& generators) {
  for (i64 m : mods) check(m >= 1, "ambient modulus must be positive");
  std::vector<Vec> pool;
  pool.reserve(generators.size());
  for (const Vec& g : generators) {
    Vec r = reduce_vec(mods, g);
    bool nonzero = false;
    for (i64 v : r) nonzero |= (v != 0);
    if (nonzero) pool.push_back(std::move(r));
  }
  Sublattice L;
  L.cols_ = hermite_basis(mods, std::move(pool));
  L.mods_ = std::move(mods);
  return L;
}

u64 Sublattice::order() const {
  u64 acc = 1;
  for (int t = 0; t < dim(); ++t) {
    u64 f = static_cast<u64>(mods_[t] / cols_[t][t]);
    check(f == 0 || acc <= ~u64{0} / f, "subgroup order exceeds 64 bits");
    acc *= f;
  }
  return acc;
}

Factored Sublattice::order_factored() const {
  Factored f;
  for (int t = 0; t < dim(); ++t) f.multiply_by(mods_[t] / cols_[t][t]);
  return f;
}

bool Sublattice::contains(const Vec& x) const {
  Vec r = reduce_vec(mods_, x);
  for (int t = 0; t < dim(); ++t) {
    if (r[t] % cols_[t][t] != 0) return false;
    i64 q = r[t] / cols_[t][t];
    if (q != 0) {
      for (int s = t; s < dim(); ++s) r[s] -= q * cols_[t][s];
    }
    r[t] = 0;
    reduce_tail(mods_, r, t + 1);
  }
  return true;
}

bool Sublattice::contains_all(const Sublattice& other) const {
  check(mods_ == other.mods_, "sublattices live in different ambient groups");
  for (const Vec& g : other.generators())
    if (!contains(g)) return false;
  return true;
}

bool Sublattice::is_zero() const { return *this == Sublattice::zero(mods_); }

bool Sublattice::is_full() const {
  for (int t = 0; t < dim(); ++t)
    if (cols_[t][t] != 1) return false;
  return true;
}

Sublattice Sublattice::sum(const Sublattice& other) const {
  check(mods_ == other.mods_, "sublattices live in different ambient groups");
  std::vector<Vec> gens = generators();
  for (const Vec& g : other.generators()) gens.push_back(g);
  return span(mods_, gens);
}

std::vector<Vec> Sublattice::generators() const {
  std::vector<Vec> out;
  for (int t = 0; t < dim(); ++t) {
    Vec g = reduce_vec(mods_, cols_[t]);
    bool nonzero = false;
    for (i64 v : g) nonzero |= (v != 0);
    if (nonzero) out.push_back(std::move(g));
  }
  return out;
}

std::vector<Vec> Sublattice::elements() const {
  std::vector<Vec> out;
  out.reserve(order());
  for_each_element([&out](const Vec& x) { out.push_back(x); });
  return out;
}

void Sublattice::for_each_element(const std::function<void(const Vec&)>& fn) const {
  for_each_element_until([&fn](const Vec& x) {
    fn(x);
    return true;
  });
}

bool Sublattice::for_each_element_until(const std::function<bool(const Vec&)>& fn) const {
  const int n = dim();
  Vec ranges(n);
  for (int t = 0; t < n; ++t) ranges[t] = mods_[t] / cols_[t][t];
  std::function<bool(int, Vec)> rec = [&](int t, Vec x) -> bool {
    if (t == n) return fn(x);
    for (i64 d = 0; d < ranges[t]; ++d) {
      if (!rec(t + 1, x)) return false;
      if (d + 1 < ranges[t])
        for (int s = t; s < n; ++s) x[s] = imod(x[s] + cols_[t][s], mods_[s]);
    }
    return true;
  };
  return rec(0, Vec(n, 0));
}

Vec Sublattice::digits(const Vec& x) const {
  Vec r = reduce_vec(mods_, x);
  Vec d(dim(), 0);
  for (int t = 0; t < dim(); ++t) {
    check(r[t] % cols_[t][t] == 0, "vector is not a member of the sublattice");
    i64 q = r[t] / cols_[t][t];
    d[t] = q;
    if (q != 0) {
      for (int s = t; s < dim(); ++s) r[s] -= q * cols_[t][s];
    }
    r[t] = 0;
    reduce_tail(mods_, r, t + 1);
  }
  return d;
}

Vec Sublattice::element_from_digits(const Vec& d) const {
  check(d.size() == mods_.size(), "digit vector has wrong length");
  Vec x(dim(), 0);
  for (int t = 0; t < dim(); ++t) {
    if (d[t] == 0) continue;
    for (int s = t; s < dim(); ++s)
      x[s] = imod(x[s] + d[t] * cols_[t][s], mods_[s]);
  }
  return x;
}

std::string Sublattice::key() const {
  std::ostringstream os;
  for (i64 m : mods_) os << m << ",";
  os << "|";
  for (const Vec& c : cols_) {
    for (i64 v : c) os << v << ",";
    os << ";";
  }
  return os.str();
}

namespace {

void check_row_compat(const Vec& mods, const CongruenceRow& row) {
  check(row.modulus >= 1, "congruence modulus must be positive");
  check(row.coef.size() == mods.size(), "congruence row has wrong length");
  for (size_t t = 0; t < mods.size(); ++t)
    check(imod(mods[t] % row.modulus * (row.coef[t] % row.modulus), row.modulus) == 0,
          "congruence row is not compatible with the ambient group");
}

}  // namespace

Sublattice restrict_congruences(const Sublattice& start, const std::vector<CongruenceRow>& rows) {
  const Vec& mods = start.mods();
  const size_t n = mods.size();
  std::vector<Vec> W = start.generators();
  for (const CongruenceRow& row : rows) {
    check_row_compat(mods, row);
    const i64 Mr = row.modulus;
    if (Mr == 1) continue;
    std::vector<i64> w(W.size());
    for (size_t j = 0; j < W.size(); ++j) {
      i64 acc = 0;
      for (size_t t = 0; t < n; ++t)
        acc = imod(acc + imod(row.coef[t], Mr) * imod(W[j][t], Mr), Mr);
      w[j] = acc;
    }
    size_t cur = W.size();
    for (size_t j = 0; j < W.size(); ++j) {
      if (w[j] == 0) continue;
      if (cur == W.size()) {
        cur = j;
        continue;
      }
      size_t a = cur, b = j;
      while (w[b] != 0) {
        i64 q = floordiv(w[a], w[b]);
        if (q != 0) {
          for (size_t t = 0; t < n; ++t) W[a][t] = imod(W[a][t] - q * W[b][t], mods[t]);
          w[a] -= q * w[b];
        }
        std::swap(a, b);
      }
      cur = a;
    }
    if (cur == W.size()) continue;
    i64 g = gcd_i64(w[cur], Mr);
    i64 scale = Mr / g;
    for (size_t t = 0; t < n; ++t) W[cur][t] = imod(W[cur][t] * scale, mods[t]);
  }
  return Sublattice::span(mods, W);
}

Sublattice solve_congruences(const Vec& mods, const std::vector<CongruenceRow>& rows) {
  return restrict_congruences(Sublattice::full(mods), rows);
}

std::optional<Vec> solve_affine(const Vec& mods, const std::vector<AffineRow>& rows) {
  i64 L0 = 1;
  for (const AffineRow& row : rows) {
    check(row.modulus >= 1, "affine row modulus must be positive");
    L0 = lcm_i64(L0, row.modulus);
  }
  Vec ext_mods;
  ext_mods.reserve(mods.size() + 1);
  ext_mods.push_back(L0);
  for (i64 m : mods) ext_mods.push_back(m);
  std::vector<CongruenceRow> ext_rows;
  ext_rows.reserve(rows.size());
  for (const AffineRow& row : rows) {
    CongruenceRow r;
    r.modulus = row.modulus;
    r.coef.reserve(mods.size() + 1);
    r.coef.push_back(imod(-row.rhs, row.modulus));
    check(row.coef.size() == mods.size(), "affine row has wrong length");
    for (i64 c : row.coef) r.coef.push_back(c);
    ext_rows.push_back(std::move(r));
  }
  Sublattice K = solve_congruences(ext_mods, ext_rows);
  if (K.pivot(0) != 1) return std::nullopt;
  const Vec& col = K.basis()[0];
  Vec x(mods.size());
  for (size_t t = 0; t < mods.size(); ++t) x[t] = imod(col[t + 1], mods[t]);
  return x;
}

namespace {

constexpr i64 kEntryBound = i64{1} << 50;

void guard_entries(const std::vector<Vec>& m) {
  for (const Vec& row : m)
    for (i64 v : row)
      check(v < kEntryBound && v > -kEntryBound, "matrix entries grew out of safe range");
}

}  // namespace

SnfResult smith_normal_form(std::vector<Vec> a) {
  const size_t n = a.size();
  for (const Vec& row : a) check(row.size() == n, "smith_normal_form expects a square matrix");
  std::vector<Vec> U(n, Vec(n, 0)), Uinv(n, Vec(n, 0));
  for (size_t i = 0; i < n; ++i) U[i][i] = Uinv[i][i] = 1;

  auto row_sub = [&](size_t dst, size_t src, i64 q) {
    for (size_t j = 0; j < n; ++j) {
      a[dst][j] -= q * a[src][j];
      U[dst][j] -= q * U[src][j];
      Uinv[j][src] += q * Uinv[j][dst];
    }
  };
  auto row_swap = [&](size_t i, size_t j) {
    std::swap(a[i], a[j]);
    std::swap(U[i], U[j]);
    for (size_t r = 0; r < n; ++r) std::swap(Uinv[r][i], Uinv[r][j]);
  };
  auto col_sub = [&](size_t dst, size_t src, i64 q) {
    for (size_t i = 0; i < n; ++i) a[i][dst] -= q * a[i][src];
  };
  auto col_swap = [&](size_t i, size_t j) {
    for (size_t r = 0; r < n; ++r) std::swap(a[r][i], a[r][j]);
  };

  for (size_t p = 0; p < n; ++p) {
    while (true) {
      size_t br = n, bc = n;
      i64 best = 0;
      for (size_t i = p; i < n; ++i)
        for (size_t j = p; j < n; ++j) {
          i64 v = a[i][j] < 0 ? -a[i][j] : a[i][j];
          if (v != 0 && (best == 0 || v < best)) {
            best = v;
            br = i;
            bc = j;
          }
        }
      if (best == 0) break;
      if (br != p) row_swap(p, br);
      if (bc != p) col_swap(p, bc);
      bool clean = true;
      for (size_t i = p + 1; i < n; ++i) {
        if (a[i][p] == 0) continue;
        i64 q = floordiv(a[i][p], a[p][p]);
        row_sub(i, p, q);
        if (a[i][p] != 0) clean = false;
      }
      for (size_t j = p + 1; j < n; ++j) {
        if (a[p][j] == 0) continue;
        i64 q = floordiv(a[p][j], a[p][p]);
        col_sub(j, p, q);
        if (a[p][j] != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (size_t i = p + 1; i < n && divides; ++i)
        for (size_t j = p + 1; j < n && divides; ++j)
          if (a[i][j] % a[p][p] != 0) {
            row_sub(p, i, -1);
            divides = false;
          }
      guard_entries(a);
      guard_entries(U);
      guard_entries(Uinv);
      if (divides) break;
    }
    if (a[p][p] < 0) {
      for (size_t j = 0; j < n; ++j) {
        a[p][j] = -a[p][j];
        U[p][j] = -U[p][j];
        Uinv[j][p] = -Uinv[j][p];
      }
    }
  }
  SnfResult out;
  out.diag.resize(n);
  for (size_t t = 0; t < n; ++t) out.diag[t] = a[t][t];
  out.U = std::move(U);
  out.Uinv = std::move(Uinv);
  return out;
}

i64 element_order(const Vec& mods, const Vec& x) {
  check(x.size() == mods.size(), "coordinate vector has wrong length");
  i64 ord = 1;
  for (size_t t = 0; t < mods.size(); ++t)
    ord = lcm_i64(ord, mods[t] / gcd_i64(mods[t], imod(x[t], mods[t])));
  return ord;
}

GroupPresentation::GroupPresentation(const Sublattice& V, const Sublattice& U) {
  check(V.mods() == U.mods(), "presentation requires a common ambient group");
  check(V.contains_all(U), "presentation requires the denominator inside the numerator");
  ambient_mods_ = V.mods();
  vbasis_ = V.basis();
  const size_t n = ambient_mods_.size();
  col_orders_.resize(n);
  for (size_t j = 0; j < n; ++j) col_orders_[j] = element_order(ambient_mods_, vbasis_[j]);

  std::vector<CongruenceRow> rows(n);
  for (size_t s = 0; s < n; ++s) {
    rows[s].modulus = ambient_mods_[s];
    rows[s].coef.resize(n);
    for (size_t j = 0; j < n; ++j) rows[s].coef[j] = imod(vbasis_[j][s], ambient_mods_[s]);
  }
  Sublattice C = solve_congruences(col_orders_, rows);
  std::vector<Vec> rels = C.generators();
  for (const Vec& u : U.generators()) rels.push_back(solve_in_vbasis(u));
  Sublattice R = Sublattice::span(col_orders_, rels);

  std::vector<Vec> amat(n, Vec(n, 0));
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < n; ++c) amat[r][c] = R.basis()[c][r];
  SnfResult snf = smith_normal_form(std::move(amat));
  full_diag_ = snf.diag;
  umat_ = snf.U;
  for (size_t t = 0; t < n; ++t) {
    check(full_diag_[t] > 0, "relation lattice of a presentation must have full rank");
    if (full_diag_[t] == 1) continue;
    kept_.push_back(static_cast<int>(t));
    orders_.push_back(full_diag_[t]);
    Vec gen(n, 0);
    for (size_t r = 0; r < n; ++r) {
      __int128 acc = 0;
      for (size_t j = 0; j < n; ++j)
        acc += static_cast<__int128>(imod(snf.Uinv[j][t], ambient_mods_[r])) * vbasis_[j][r];
      gen[r] = static_cast<i64>(acc % ambient_mods_[r]);
    }
    gens_.push_back(reduce_vec(ambient_mods_, gen));
  }
}

u64 GroupPresentation::size() const {
  u64 acc = 1;
  for (i64 d : orders_) acc *= static_cast<u64>(d);
  return acc;
}

Vec GroupPresentation::solve_in_vbasis(const Vec& x) const {
  const size_t n = ambient_mods_.size();
  Vec r = reduce_vec(ambient_mods_, x);
  Vec a(n, 0);
  for (size_t t = 0; t < n; ++t) {
    i64 h = vbasis_[t][t];
    check(r[t] % h == 0, "vector is not a member of the presented subgroup");
    i64 q = r[t] / h;
    a[t] = q;
    if (q != 0) {
      for (size_t s = t; s < n; ++s) r[s] -= q * vbasis_[t][s];
    }
    r[t] = 0;
    reduce_tail(ambient_mods_, r, t + 1);
  }
  return a;
}

Vec GroupPresentation::coords(const Vec& x) const {
  Vec a = solve_in_vbasis(x);
  const size_t n = ambient_mods_.size();
  Vec y(kept_.size(), 0);
  for (size_t i = 0; i < kept_.size(); ++i) {
    const int t = kept_[i];
    __int128 acc = 0;
    for (size_t j = 0; j < n; ++j)
      acc += static_cast<__int128>(imod(umat_[t][j], full_diag_[t])) * imod(a[j], full_diag_[t]);
    y[i] = static_cast<i64>(acc % full_diag_[t]);
  }
  return y;
}

Vec GroupPresentation::lift(const Vec& c) const {
  check(c.size() == orders_.size(), "coordinate vector has wrong length");
  const size_t n = ambient_mods_.size();
  Vec x(n, 0);
  for (size_t i = 0; i < c.size(); ++i) {
    for (size_t s = 0; s < n; ++s)
      x[s] = imod(x[s] + imod(c[i], ambient_mods_[s]) * gens_[i][s], ambient_mods_[s]);
  }
  return x;
}

}  // namespace ringlab

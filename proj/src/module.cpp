#include "ringlab/module.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "ringlab/errors.hpp"

namespace ringlab {

Elem FinModule::reduce(const Vec& x) const {
  check(x.size() == orders.size(), "module element has wrong coordinate count");
  Elem r(x.size());
  for (size_t t = 0; t < x.size(); ++t) r[t] = imod(x[t], orders[t]);
  return r;
}

Elem FinModule::add(const Elem& a, const Elem& b) const {
  Elem r(orders.size());
  for (size_t t = 0; t < orders.size(); ++t) r[t] = imod(a[t] + b[t], orders[t]);
  return r;
}

Elem FinModule::sub(const Elem& a, const Elem& b) const {
  Elem r(orders.size());
  for (size_t t = 0; t < orders.size(); ++t) r[t] = imod(a[t] - b[t], orders[t]);
  return r;
}

Elem FinModule::act_basis(int i, const Elem& x) const {
  Elem out(orders.size(), 0);
  for (size_t u = 0; u < orders.size(); ++u) {
    if (x[u] == 0) continue;
    const Vec& row = action[i][u];
    for (size_t t = 0; t < orders.size(); ++t)
      out[t] = imod(out[t] + imod(x[u], orders[t]) * row[t], orders[t]);
  }
  return out;
}

Elem FinModule::act(const Elem& r, const Elem& x) const {
  Elem out(orders.size(), 0);
  for (int i = 0; i < ring->k(); ++i) {
    if (r[i] == 0) continue;
    Elem part = act_basis(i, x);
    for (size_t t = 0; t < orders.size(); ++t)
      out[t] = imod(out[t] + imod(r[i], orders[t]) * part[t], orders[t]);
  }
  return out;
}

u64 FinModule::encode(const Elem& x) const {
  u64 code = 0;
  for (size_t t = orders.size(); t-- > 0;)
    code = code * static_cast<u64>(orders[t]) + static_cast<u64>(x[t]);
  return code;
}

Elem FinModule::decode(u64 code) const {
  Elem x(orders.size());
  for (size_t t = 0; t < orders.size(); ++t) {
    x[t] = static_cast<i64>(code % static_cast<u64>(orders[t]));
    code /= static_cast<u64>(orders[t]);
  }
  return x;
}

std::string FinModule::structure_key() const {
  std::ostringstream os;
  for (i64 d : orders) os << d << ",";
  os << "|";
  for (const auto& row : action)
    for (const Vec& cell : row) {
      for (i64 v : cell) os << v << ",";
      os << ";";
    }
  return os.str();
}

FinModule make_module(RingPtr ring, Vec orders, std::vector<std::vector<Vec>> action) {
  FinModule m;
  const size_t kk = ring->orders.size();
  const size_t mm = orders.size();
  for (i64 e : orders)
    if (e < 1) fail(ErrorKind::OrderIncompatibility, "module orders must be positive");
  if (action.size() != kk)
    fail(ErrorKind::OrderIncompatibility, "module action table has wrong shape");
  for (auto& row : action) {
    if (row.size() != mm)
      fail(ErrorKind::OrderIncompatibility, "module action table has wrong shape");
    for (Vec& cell : row) {
      if (cell.size() != mm)
        fail(ErrorKind::OrderIncompatibility, "module action table has wrong shape");
      for (size_t t = 0; t < mm; ++t) cell[t] = imod(cell[t], orders[t]);
    }
  }
  m.ring = std::move(ring);
  m.orders = std::move(orders);
  m.action = std::move(action);
  m.size = 1;
  for (i64 e : m.orders) {
    check(m.size <= (u64{1} << 40) / static_cast<u64>(e), "module size exceeds supported range");
    m.size *= static_cast<u64>(e);
  }

  for (size_t i = 0; i < kk; ++i)
    for (size_t u = 0; u < mm; ++u)
      for (size_t t = 0; t < mm; ++t) {
        i64 v = m.action[i][u][t];
        bool ok = imod(m.orders[u] % m.orders[t] * v, m.orders[t]) == 0 &&
                  imod(m.ring->orders[i] % m.orders[t] * v, m.orders[t]) == 0;
        if (!ok) {
          std::ostringstream os;
          os << "order incompatibility at action[" << i << "][" << u << "]";
          fail(ErrorKind::OrderIncompatibility, os.str());
        }
      }

  for (size_t u = 0; u < mm; ++u) {
    Elem eu(mm, 0);
    eu[u] = imod(1, m.orders[u]);
    if (m.act(m.ring->unit, eu) != eu) {
      std::ostringstream os;
      os << "unit does not fix module generator " << u;
      fail(ErrorKind::UnitViolation, os.str());
    }
  }

  for (size_t i = 0; i < kk; ++i)
    for (size_t j = 0; j < kk; ++j)
      for (size_t u = 0; u < mm; ++u) {
        Elem eu(mm, 0);
        eu[u] = 1;
        Elem nested = m.act_basis(static_cast<int>(i), m.act_basis(static_cast<int>(j), eu));
        Elem direct = m.act(m.ring->mult[i][j], eu);
        if (nested != direct) {
          std::ostringstream os;
          os << "action is not compatible with ring multiplication at (b_" << i << ", b_" << j
             << ", m_" << u << ")";
          fail(ErrorKind::AssociativityViolation, os.str());
        }
      }

  return m;
}

FinModule regular_module(const RingPtr& ring) {
  return make_module(ring, ring->orders, ring->mult);
}

FinModule zero_module(const RingPtr& ring) {
  return make_module(ring, {}, std::vector<std::vector<Vec>>(ring->orders.size()));
}

bool Submodule::contains_code(u64 code) const {
  return std::binary_search(elems.begin(), elems.end(), code);
}

namespace {

Submodule finish_submodule(const FinModule& m, Sublattice lat, std::vector<Elem> gens) {
  Submodule n;
  n.elems.reserve(lat.order());
  lat.for_each_element([&](const Vec& x) { n.elems.push_back(m.encode(x)); });
  std::sort(n.elems.begin(), n.elems.end());
  n.lat = std::move(lat);
  n.gens = std::move(gens);
  return n;
}

}  // namespace

Submodule submodule_from_gens(const FinModule& m, const std::vector<Elem>& gens) {
  std::vector<Vec> group_gens;
  for (const Elem& g : gens)
    for (int i = 0; i < m.ring->k(); ++i) group_gens.push_back(m.act_basis(i, m.reduce(g)));
  return finish_submodule(m, Sublattice::span(m.orders, group_gens), gens);
}

Submodule submodule_from_lattice(const FinModule& m, const Sublattice& lat) {
  if (lat.mods() != m.orders)
    fail(ErrorKind::NotASubmodule, "sublattice does not live in the module's group");
  for (const Vec& g : lat.generators())
    for (int i = 0; i < m.ring->k(); ++i)
      if (!lat.contains(m.act_basis(i, g)))
        fail(ErrorKind::NotASubmodule, "subgroup is not closed under the ring action");
  return finish_submodule(m, lat, lat.generators());
}

Submodule zero_submodule(const FinModule& m) {
  return finish_submodule(m, Sublattice::zero(m.orders), {});
}

Submodule full_submodule(const FinModule& m) {
  std::vector<Elem> gens;
  for (int u = 0; u < m.gens(); ++u) {
    Elem e(m.gens(), 0);
    e[u] = 1;
    gens.push_back(e);
  }
  return finish_submodule(m, Sublattice::full(m.orders), gens);
}

Submodule submodule_sum(const FinModule& m, const Submodule& a, const Submodule& b) {
  std::vector<Elem> gens = a.gens;
  gens.insert(gens.end(), b.gens.begin(), b.gens.end());
  return finish_submodule(m, a.lat.sum(b.lat), std::move(gens));
}

Submodule submodule_intersection(const FinModule& m, const Submodule& a, const Submodule& b) {
  std::vector<u64> codes;
  std::set_intersection(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(),
                        std::back_inserter(codes));
  std::vector<Vec> gens;
  gens.reserve(codes.size());
  for (u64 c : codes) gens.push_back(m.decode(c));
  return finish_submodule(m, Sublattice::span(m.orders, gens), gens);
}

int SubmoduleSet::index_of_key(const std::string& lattice_key) const {
  auto it = std::lower_bound(key_index.begin(), key_index.end(),
                             std::make_pair(lattice_key, 0),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
  if (it == key_index.end() || it->first != lattice_key) return -1;
  return it->second;
}

SubmoduleSet submodule_lattice(const FinModule& m, const Limits& limits) {
  if (m.size > limits.module_cutoff)
    fail(ErrorKind::SizeCutoffExceeded,
         "module of size " + std::to_string(m.size) + " exceeds the module cutoff");

  std::vector<Sublattice> lats;
  std::vector<std::vector<Elem>> gen_lists;
  std::map<std::string, int> seen;
  std::vector<size_t> queue;

  auto add = [&](Sublattice lat, std::vector<Elem> gens) {
    std::string key = lat.key();
    if (seen.count(key)) return;
    if (lats.size() >= limits.lattice_cutoff)
      fail(ErrorKind::SizeCutoffExceeded, "submodule lattice exceeds the lattice cutoff");
    seen.emplace(std::move(key), static_cast<int>(lats.size()));
    queue.push_back(lats.size());
    lats.push_back(std::move(lat));
    gen_lists.push_back(std::move(gens));
  };

  for (u64 code = 0; code < m.size; ++code) {
    Elem x = m.decode(code);
    std::vector<Vec> group_gens;
    for (int i = 0; i < m.ring->k(); ++i) group_gens.push_back(m.act_basis(i, x));
    add(Sublattice::span(m.orders, group_gens), {x});
  }

  size_t qpos = 0;
  while (qpos < queue.size()) {
    size_t i = queue[qpos++];
    for (size_t j = 0; j < lats.size(); ++j) {
      if (j == i) continue;
      Sublattice s = lats[i].sum(lats[j]);
      if (seen.count(s.key())) continue;
      std::vector<Elem> gens = gen_lists[i];
      gens.insert(gens.end(), gen_lists[j].begin(), gen_lists[j].end());
      add(std::move(s), std::move(gens));
    }
  }

  SubmoduleSet out;
  out.members.reserve(lats.size());
  for (size_t i = 0; i < lats.size(); ++i)
    out.members.push_back(finish_submodule(m, lats[i], gen_lists[i]));
  std::sort(out.members.begin(), out.members.end(), [](const Submodule& a, const Submodule& b) {
    if (a.elems.size() != b.elems.size()) return a.elems.size() < b.elems.size();
    return a.elems < b.elems;
  });
  for (size_t i = 0; i < out.members.size(); ++i)
    out.key_index.emplace_back(out.members[i].lat.key(), static_cast<int>(i));
  std::sort(out.key_index.begin(), out.key_index.end());
  return out;
}

Elem ModuleMorphism::apply(const Elem& x) const {
  Elem out(target->orders.size(), 0);
  for (size_t u = 0; u < mat.size(); ++u) {
    if (x[u] == 0) continue;
    for (size_t t = 0; t < out.size(); ++t)
      out[t] = imod(out[t] + imod(x[u], target->orders[t]) * mat[u][t], target->orders[t]);
  }
  return out;
}

namespace {

ModuleMorphism raw_morphism(std::shared_ptr<const FinModule> source,
                            std::shared_ptr<const FinModule> target, std::vector<Vec> mat) {
  ModuleMorphism f;
  f.source = std::move(source);
  f.target = std::move(target);
  f.mat = std::move(mat);
  for (Vec& row : f.mat)
    for (size_t t = 0; t < row.size(); ++t) row[t] = imod(row[t], f.target->orders[t]);
  return f;
}

}  // namespace

ModuleMorphism make_morphism(std::shared_ptr<const FinModule> source,
                             std::shared_ptr<const FinModule> target, std::vector<Vec> mat) {
  check(same_ring(source->ring, target->ring), "morphism endpoints have different base rings");
  check(mat.size() == source->orders.size(), "morphism matrix has wrong shape");
  for (const Vec& row : mat)
    check(row.size() == target->orders.size(), "morphism matrix has wrong shape");
  ModuleMorphism f = raw_morphism(std::move(source), std::move(target), std::move(mat));

  for (size_t u = 0; u < f.mat.size(); ++u)
    for (size_t t = 0; t < f.mat[u].size(); ++t)
      check(imod(f.source->orders[u] % f.target->orders[t] * f.mat[u][t],
                 f.target->orders[t]) == 0,
            "morphism does not respect additive orders");

  for (int i = 0; i < f.source->ring->k(); ++i)
    for (int u = 0; u < f.source->gens(); ++u) {
      Elem eu(f.source->gens(), 0);
      eu[u] = 1;
      Elem lhs = f.apply(f.source->act_basis(i, eu));
      Elem rhs = f.target->act_basis(i, f.mat[u]);
      check(lhs == rhs, "morphism is not linear over the ring");
    }
  return f;
}

ModuleMorphism identity_morphism(const std::shared_ptr<const FinModule>& m) {
  std::vector<Vec> mat(m->gens(), Vec(m->gens(), 0));
  for (int u = 0; u < m->gens(); ++u) mat[u][u] = 1;
  return raw_morphism(m, m, std::move(mat));
}

ModuleMorphism zero_morphism(std::shared_ptr<const FinModule> source,
                             std::shared_ptr<const FinModule> target) {
  std::vector<Vec> mat(source->gens(), Vec(target->gens(), 0));
  return raw_morphism(std::move(source), std::move(target), std::move(mat));
}

ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f) {
  check(f.target->structure_key() == g.source->structure_key(),
        "morphism composition endpoints do not match");
  std::vector<Vec> mat(f.mat.size());
  for (size_t u = 0; u < f.mat.size(); ++u) mat[u] = g.apply(f.mat[u]);
  return raw_morphism(f.source, g.target, std::move(mat));
}

u64 image_size(const ModuleMorphism& f) {
  return Sublattice::span(f.target->orders, f.mat).order();
}

bool is_bijective(const ModuleMorphism& f) {
  return f.source->size == f.target->size && image_size(f) == f.target->size;
}

ModuleMorphism invert(const ModuleMorphism& f) {
  check(is_bijective(f), "only bijective morphisms can be inverted");
  std::vector<Vec> mat(f.target->gens());
  for (int w = 0; w < f.target->gens(); ++w) {
    std::vector<AffineRow> rows;
    for (int x = 0; x < f.target->gens(); ++x) {
      AffineRow row;
      row.modulus = f.target->orders[x];
      row.rhs = (x == w) ? 1 : 0;
      row.coef.resize(f.source->gens());
      for (int u = 0; u < f.source->gens(); ++u) row.coef[u] = f.mat[u][x];
      rows.push_back(std::move(row));
    }
    auto sol = solve_affine(f.source->orders, rows);
    check(sol.has_value(), "bijective morphism failed to invert");
    mat[w] = *sol;
  }
  ModuleMorphism inv = raw_morphism(f.target, f.source, std::move(mat));
  ModuleMorphism round = compose(f, inv);
  for (int u = 0; u < f.target->gens(); ++u)
    for (int t = 0; t < f.target->gens(); ++t)
      check(round.mat[u][t] == (u == t ? 1 : 0), "inverse verification failed");
  return inv;
}

std::pair<Submodule, Submodule> kernel_image(const ModuleMorphism& f) {
  std::vector<CongruenceRow> rows;
  for (int w = 0; w < f.target->gens(); ++w) {
    CongruenceRow row;
    row.modulus = f.target->orders[w];
    row.coef.resize(f.source->gens());
    for (int u = 0; u < f.source->gens(); ++u) row.coef[u] = f.mat[u][w];
    rows.push_back(std::move(row));
  }
  Sublattice ker = solve_congruences(f.source->orders, rows);
  Submodule kernel = submodule_from_lattice(*f.source, ker);
  Submodule image = submodule_from_gens(*f.target, f.mat);
  return {std::move(kernel), std::move(image)};
}

std::vector<CongruenceRow> hom_condition_rows(const FinModule& m, const FinModule& n) {
  check(same_ring(m.ring, n.ring), "hom requires a common base ring");
  const int mm = m.gens(), mn = n.gens(), kk = m.ring->k();
  const size_t grid = static_cast<size_t>(mm) * mn;

  std::vector<CongruenceRow> rows;
  for (int u = 0; u < mm; ++u)
    for (int w = 0; w < mn; ++w) {
      i64 coef = imod(m.orders[u], n.orders[w]);
      if (coef == 0) continue;
      CongruenceRow row;
      row.modulus = n.orders[w];
      row.coef.assign(grid, 0);
      row.coef[u * mn + w] = coef;
      rows.push_back(std::move(row));
    }
  for (int i = 0; i < kk; ++i)
    for (int u = 0; u < mm; ++u)
      for (int wp = 0; wp < mn; ++wp) {
        CongruenceRow row;
        row.modulus = n.orders[wp];
        row.coef.assign(grid, 0);
        const Vec& src = m.action[i][u];
        for (int v = 0; v < mm; ++v)
          row.coef[v * mn + wp] = imod(row.coef[v * mn + wp] + src[v], row.modulus);
        for (int w = 0; w < mn; ++w)
          row.coef[u * mn + w] =
              imod(row.coef[u * mn + w] - n.action[i][w][wp], row.modulus);
        bool trivial = true;
        for (i64 c : row.coef) trivial &= (c == 0);
        if (!trivial && row.modulus > 1) rows.push_back(std::move(row));
      }
  return rows;
}

Sublattice hom_lattice(const FinModule& m, const FinModule& n) {
  const int mn = n.gens();
  Vec mods(static_cast<size_t>(m.gens()) * mn);
  for (int u = 0; u < m.gens(); ++u)
    for (int w = 0; w < mn; ++w) mods[u * mn + w] = n.orders[w];
  return solve_congruences(mods, hom_condition_rows(m, n));
}

Submodule annihilator_submodule(const FinModule& m, const std::vector<Elem>& ring_elems) {
  std::vector<CongruenceRow> rows;
  for (const Elem& g : ring_elems) {
    std::vector<Elem> images(m.gens());
    for (int u = 0; u < m.gens(); ++u) {
      Elem eu(m.gens(), 0);
      eu[u] = imod(1, m.orders[u]);
      images[u] = m.act(m.ring->reduce(g), eu);
    }
    for (int t = 0; t < m.gens(); ++t) {
      CongruenceRow row;
      row.modulus = m.orders[t];
      row.coef.resize(m.gens());
      for (int u = 0; u < m.gens(); ++u) row.coef[u] = images[u][t];
      rows.push_back(std::move(row));
    }
  }
  return submodule_from_lattice(m, solve_congruences(m.orders, rows));
}

Factored hom_count(const FinModule& m, const FinModule& n) {
  return hom_lattice(m, n).order_factored();
}

ModuleMorphism morphism_from_grid(const std::shared_ptr<const FinModule>& source,
                                  const std::shared_ptr<const FinModule>& target, const Vec& y) {
  const int mn = target->gens();
  std::vector<Vec> mat(source->gens(), Vec(mn, 0));
  for (int u = 0; u < source->gens(); ++u)
    for (int w = 0; w < mn; ++w) mat[u][w] = y[u * mn + w];
  return raw_morphism(source, target, std::move(mat));
}

bool for_each_hom(const FinModule& m, const FinModule& n, const Limits& limits,
                  const std::function<bool(const ModuleMorphism&)>& fn) {
  Sublattice lat = hom_lattice(m, n);
  auto src = std::make_shared<const FinModule>(m);
  auto tgt = std::make_shared<const FinModule>(n);
  u64 budget = limits.hom_cutoff;
  bool clipped = false;
  lat.for_each_element_until([&](const Vec& y) {
    if (budget == 0) {
      clipped = true;
      return false;
    }
    --budget;
    return fn(morphism_from_grid(src, tgt, y));
  });
  return !clipped;
}

std::vector<ModuleMorphism> hom_set(const FinModule& m, const FinModule& n,
                                    const Limits& limits) {
  Factored count = hom_count(m, n);
  if (!count.fits_u64() || count.value_u64() > limits.hom_cutoff)
    fail(ErrorKind::EnumerationCutoffExceeded,
         "|Hom| = " + count.str() + " exceeds the hom cutoff");
  std::vector<ModuleMorphism> out;
  out.reserve(count.value_u64());
  for_each_hom(m, n, limits, [&out](const ModuleMorphism& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

DirectSum direct_sum(const FinModule& a, const FinModule& b, const Limits& limits) {
  check(same_ring(a.ring, b.ring), "direct sum requires a common base ring");
  if (a.size > limits.module_cutoff / b.size)
    fail(ErrorKind::SizeCutoffExceeded, "direct sum exceeds the module cutoff");
  const int ma = a.gens(), mb = b.gens(), kk = a.ring->k();
  Vec orders(ma + mb);
  for (int u = 0; u < ma; ++u) orders[u] = a.orders[u];
  for (int u = 0; u < mb; ++u) orders[ma + u] = b.orders[u];
  std::vector<std::vector<Vec>> action(kk, std::vector<Vec>(ma + mb, Vec(ma + mb, 0)));
  for (int i = 0; i < kk; ++i) {
    for (int u = 0; u < ma; ++u)
      for (int t = 0; t < ma; ++t) action[i][u][t] = a.action[i][u][t];
    for (int u = 0; u < mb; ++u)
      for (int t = 0; t < mb; ++t) action[i][ma + u][ma + t] = b.action[i][u][t];
  }
  DirectSum out{make_module(a.ring, std::move(orders), std::move(action)), {}, {}, {}, {}};
  auto sum = std::make_shared<const FinModule>(out.module);
  auto pa = std::make_shared<const FinModule>(a);
  auto pb = std::make_shared<const FinModule>(b);
  std::vector<Vec> ia(ma, Vec(ma + mb, 0)), ib(mb, Vec(ma + mb, 0));
  std::vector<Vec> qa(ma + mb, Vec(ma, 0)), qb(ma + mb, Vec(mb, 0));
  for (int u = 0; u < ma; ++u) ia[u][u] = qa[u][u] = 1;
  for (int u = 0; u < mb; ++u) ib[u][ma + u] = qb[ma + u][u] = 1;
  out.inj_left = raw_morphism(pa, sum, std::move(ia));
  out.inj_right = raw_morphism(pb, sum, std::move(ib));
  out.proj_left = raw_morphism(sum, pa, std::move(qa));
  out.proj_right = raw_morphism(sum, pb, std::move(qb));
  return out;
}

DirectSumMany direct_sum_many(const RingPtr& ring, const std::vector<FinModule>& parts,
                              const Limits& limits) {
  const int kk = ring->k();
  u64 size = 1;
  int total = 0;
  for (const FinModule& p : parts) {
    check(same_ring(ring, p.ring), "direct sum requires a common base ring");
    if (p.size != 0 && size > limits.module_cutoff / p.size)
      fail(ErrorKind::SizeCutoffExceeded, "direct sum exceeds the module cutoff");
    size *= p.size;
    total += p.gens();
  }

  Vec orders(total);
  std::vector<std::vector<Vec>> action(kk, std::vector<Vec>(total, Vec(total, 0)));
  int base = 0;
  for (const FinModule& p : parts) {
    for (int u = 0; u < p.gens(); ++u) orders[base + u] = p.orders[u];
    for (int i = 0; i < kk; ++i)
      for (int u = 0; u < p.gens(); ++u)
        for (int t = 0; t < p.gens(); ++t) action[i][base + u][base + t] = p.action[i][u][t];
    base += p.gens();
  }

  DirectSumMany out;
  out.module = make_module(ring, std::move(orders), std::move(action));
  auto sum = std::make_shared<const FinModule>(out.module);
  base = 0;
  for (const FinModule& p : parts) {
    auto pp = std::make_shared<const FinModule>(p);
    std::vector<Vec> inj(p.gens(), Vec(total, 0));
    std::vector<Vec> proj(total, Vec(p.gens(), 0));
    for (int u = 0; u < p.gens(); ++u) inj[u][base + u] = proj[base + u][u] = 1;
    out.inj.push_back(raw_morphism(pp, sum, std::move(inj)));
    out.proj.push_back(raw_morphism(sum, pp, std::move(proj)));
    base += p.gens();
  }
  return out;
}

std::string additive_type(const Vec& orders) {
  std::map<i64, std::multiset<int>> by_prime;
  for (i64 e : orders) {
    i64 n = e;
    for (i64 p = 2; p * p <= n; ++p) {
      int c = 0;
      while (n % p == 0) {
        ++c;
        n /= p;
      }
      if (c > 0) by_prime[p].insert(c);
    }
    if (n > 1) by_prime[n].insert(1);
  }
  std::ostringstream os;
  for (const auto& [p, exps] : by_prime) {
    os << p << ":";
    for (int e : exps) os << e << ",";
    os << ";";
  }
  return os.str();
}

namespace {

ModuleMorphism morphism_sum(const ModuleMorphism& a, const ModuleMorphism& b) {
  std::vector<Vec> mat(a.mat.size());
  for (size_t u = 0; u < a.mat.size(); ++u) {
    mat[u].resize(a.mat[u].size());
    for (size_t t = 0; t < a.mat[u].size(); ++t)
      mat[u][t] = imod(a.mat[u][t] + b.mat[u][t], a.target->orders[t]);
  }
  return raw_morphism(a.source, a.target, std::move(mat));
}

}  // namespace

std::optional<ModuleMorphism> find_isomorphism(const FinModule& m, const FinModule& n,
                                               const Limits& limits) {
  if (!same_ring(m.ring, n.ring)) return std::nullopt;
  if (m.size != n.size) return std::nullopt;
  if (additive_type(m.orders) != additive_type(n.orders)) return std::nullopt;
  auto src = std::make_shared<const FinModule>(m);
  auto tgt = std::make_shared<const FinModule>(n);
  if (m.size == 1) return zero_morphism(src, tgt);
  if (m.structure_key() == n.structure_key()) return identity_morphism(src);

  std::optional<ModuleMorphism> found;
  bool exhaustive = for_each_hom(m, n, limits, [&](const ModuleMorphism& f) {
    if (is_bijective(f)) {
      found = f;
      return false;
    }
    return true;
  });
  if (found) return found;
  if (exhaustive) return std::nullopt;

  auto parts_m = decompose_module(m, limits);
  auto parts_n = decompose_module(n, limits);
  if (parts_m.size() != parts_n.size()) return std::nullopt;
  if (parts_m.size() == 1)
    fail(ErrorKind::EnumerationCutoffExceeded,
         "isomorphism search between indecomposables exceeded the hom cutoff");
  std::vector<bool> used(parts_n.size(), false);
  ModuleMorphism total = zero_morphism(src, tgt);
  for (const IndecomposablePart& pm : parts_m) {
    bool matched = false;
    for (size_t j = 0; j < parts_n.size() && !matched; ++j) {
      if (used[j]) continue;
      auto piece = find_isomorphism(pm.part, parts_n[j].part, limits);
      if (!piece) continue;
      used[j] = true;
      matched = true;
      total = morphism_sum(
          total, compose(parts_n[j].inclusion, compose(*piece, pm.projection)));
    }
    if (!matched) return std::nullopt;
  }
  check(is_bijective(total), "assembled isomorphism is not bijective");
  return total;
}

bool are_isomorphic(const FinModule& m, const FinModule& n, const Limits& limits) {
  return find_isomorphism(m, n, limits).has_value();
}

PresentedModule subquotient_module(const FinModule& m, const Sublattice& v, const Sublattice& u) {
  GroupPresentation pres(v, u);
  std::vector<Elem> reps = pres.generator_reps();
  Vec orders = pres.orders();
  const int kk = m.ring->k();
  std::vector<std::vector<Vec>> action(kk, std::vector<Vec>(reps.size()));
  for (int i = 0; i < kk; ++i)
    for (size_t t = 0; t < reps.size(); ++t)
      action[i][t] = pres.coords(m.act_basis(i, reps[t]));
  PresentedModule out{make_module(m.ring, std::move(orders), std::move(action)), std::move(reps),
                      std::move(pres)};
  return out;
}

QuotientResult quotient_module(const FinModule& m, const Submodule& n) {
  PresentedModule pres = subquotient_module(m, Sublattice::full(m.orders), n.lat);
  std::vector<Vec> mat(m.gens());
  for (int u = 0; u < m.gens(); ++u) {
    Elem eu(m.gens(), 0);
    eu[u] = 1;
    mat[u] = pres.to_coords(eu);
  }
  auto src = std::make_shared<const FinModule>(m);
  auto tgt = std::make_shared<const FinModule>(pres.mod);
  ModuleMorphism proj = make_morphism(src, tgt, std::move(mat));
  return {std::move(pres), std::move(proj)};
}

SubResult sub_module(const FinModule& m, const Submodule& n) {
  PresentedModule pres = subquotient_module(m, n.lat, Sublattice::zero(m.orders));
  std::vector<Vec> mat = pres.gen_reps;
  auto src = std::make_shared<const FinModule>(pres.mod);
  auto tgt = std::make_shared<const FinModule>(m);
  ModuleMorphism incl = make_morphism(src, tgt, std::move(mat));
  return {std::move(pres), std::move(incl)};
}

namespace {

bool meet_is_trivial(const Submodule& a, const Submodule& b) {
  size_t i = 0, j = 0, common = 0;
  while (i < a.elems.size() && j < b.elems.size()) {
    if (a.elems[i] == b.elems[j]) {
      ++common;
      if (common > 1) return false;
      ++i;
      ++j;
    } else if (a.elems[i] < b.elems[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return common == 1;
}

}  // namespace

std::vector<IndecomposablePart> decompose_module(const FinModule& m, const Limits& limits,
                                                 DecomposeOrder order) {
  std::vector<IndecomposablePart> out;
  auto self = std::make_shared<const FinModule>(m);
  if (m.size == 1) return out;

  SubmoduleSet lattice = submodule_lattice(m, limits);
  const size_t count = lattice.members.size();
  int found_a = -1, found_b = -1;
  for (size_t ai = 0; ai < count && found_a < 0; ++ai) {
    size_t idx = (order == DecomposeOrder::SmallestFirst) ? ai : count - 1 - ai;
    const Submodule& a = lattice.members[idx];
    if (a.size() <= 1 || a.size() >= m.size) continue;
    for (size_t bi = 0; bi < count; ++bi) {
      const Submodule& b = lattice.members[bi];
      if (a.size() * b.size() != m.size) continue;
      if (!meet_is_trivial(a, b)) continue;
      if (a.lat.sum(b.lat).order() != m.size) continue;
      found_a = static_cast<int>(idx);
      found_b = static_cast<int>(bi);
      break;
    }
  }

  if (found_a < 0) {
    out.push_back({m, identity_morphism(self), identity_morphism(self)});
    return out;
  }

  const Submodule& a = lattice.members[found_a];
  const Submodule& b = lattice.members[found_b];
  auto split_part = [&](const Submodule& piece, const Submodule& complement) {
    SubResult sub = sub_module(m, piece);
    QuotientResult quot = quotient_module(m, complement);
    ModuleMorphism kappa = compose(quot.projection, sub.inclusion);
    ModuleMorphism proj = compose(invert(kappa), quot.projection);
    for (const IndecomposablePart& inner : decompose_module(sub.pres.mod, limits, order)) {
      out.push_back({inner.part, compose(sub.inclusion, inner.inclusion),
                     compose(inner.projection, proj)});
    }
  };
  split_part(a, b);
  split_part(b, a);

  std::stable_sort(out.begin(), out.end(),
                   [](const IndecomposablePart& x, const IndecomposablePart& y) {
                     if (x.part.size != y.part.size) return x.part.size < y.part.size;
                     return x.part.structure_key() < y.part.structure_key();
                   });
  return out;
}

}  // namespace ringlab

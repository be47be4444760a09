#include "ringlab/torsion.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "ringlab/errors.hpp"

namespace ringlab {

namespace {

Elem basis_elem(const Vec& orders, size_t u) {
  Elem e(orders.size(), 0);
  e[u] = imod(1, orders[u]);
  return e;
}

bool elems_subset(const std::vector<u64>& inner, const std::vector<u64>& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

}  // namespace

std::string kind_name(TheoryKind kind) {
  switch (kind) {
    case TheoryKind::Trivial: return "trivial";
    case TheoryKind::Improper: return "improper";
    default: return "proper";
  }
}

TorsionAnalysis::TorsionAnalysis(RingPtr ring, Limits limits)
    : ring_(std::move(ring)), limits_(limits), homs_(ring_, limits) {}

Submodule TorsionAnalysis::singular_submodule(const FinModule& m) {
  check(same_ring(m.ring, ring_), "singular submodule: module lives over a different ring");
  std::string key = m.structure_key();
  auto it = sing_memo_.find(key);
  if (it != sing_memo_.end()) return it->second;
  Submodule z = annihilator_submodule(m, homs_.left_socle().gens);
  sing_memo_.emplace(key, z);
  return z;
}

bool TorsionAnalysis::is_singular_module(const FinModule& m) {
  return singular_submodule(m).size() == m.size;
}

bool TorsionAnalysis::is_small_module(const FinModule& m) {
  check(same_ring(m.ring, ring_), "small module test: module lives over a different ring");
  std::string key = m.structure_key();
  auto it = small_memo_.find(key);
  if (it != small_memo_.end()) return it->second;
  HullResult h = homs_.injective_hull(m);
  Submodule image = kernel_image(h.into).second;
  bool small = homs_.is_small_in(h.hull, image);
  small_memo_.emplace(key, small);
  return small;
}

bool TorsionAnalysis::zstar_nonzero(const FinModule& m) {
  std::string key = m.structure_key();
  auto it = zstar_nz_memo_.find(key);
  if (it != zstar_nz_memo_.end()) return it->second;
  bool nonzero = false;
  if (m.size > 1) {
    HullResult h = homs_.injective_hull(m);
    Submodule rad = homs_.radical_of(h.hull);
    for (u64 code = 1; code < m.size && !nonzero; ++code)
      nonzero = rad.lat.contains(h.into.apply(m.decode(code)));
  }
  zstar_nz_memo_.emplace(key, nonzero);
  return nonzero;
}

Submodule TorsionAnalysis::zstar(const FinModule& m) {
  check(same_ring(m.ring, ring_), "zstar: module lives over a different ring");
  std::string key = m.structure_key();
  auto it = zstar_memo_.find(key);
  if (it != zstar_memo_.end()) return it->second;

  SubmoduleSet lat = submodule_lattice(m, limits_);
  Submodule tr = zero_submodule(m);
  for (const Submodule& n : lat.members) {
    if (n.size() <= 1) continue;
    SubResult sr = sub_module(m, n);
    if (is_small_module(sr.pres.mod)) tr = submodule_sum(m, tr, n);
  }

  HullResult h = homs_.injective_hull(m);
  Submodule rad = homs_.radical_of(h.hull);
  std::vector<Elem> hit;
  for (u64 code = 0; code < m.size; ++code) {
    Elem x = m.decode(code);
    if (rad.lat.contains(h.into.apply(x))) hit.push_back(x);
  }
  Sublattice pre = Sublattice::span(m.orders, hit);
  check(pre.order() == tr.size() && tr.lat.contains_all(pre),
        "zstar: the small-submodule sum differs from the hull-radical preimage");

  zstar_memo_.emplace(key, tr);
  return tr;
}

Submodule TorsionAnalysis::preimage_in(const FinModule& m, const Submodule& base,
                                       const QuotientResult& q, const Submodule& in_quotient) {
  std::vector<Elem> gens = base.gens;
  for (const Elem& g : in_quotient.gens) gens.push_back(q.pres.lift(g));
  return submodule_from_gens(m, gens);
}

Submodule TorsionAnalysis::goldie_radical(const FinModule& m) {
  check(same_ring(m.ring, ring_), "goldie radical: module lives over a different ring");
  std::string key = m.structure_key();
  auto it = goldie_memo_.find(key);
  if (it != goldie_memo_.end()) return it->second;
  Submodule z = singular_submodule(m);
  QuotientResult q = quotient_module(m, z);
  Submodule z2 = preimage_in(m, z, q, singular_submodule(q.pres.mod));
  QuotientResult q2 = quotient_module(m, z2);
  check(singular_submodule(q2.pres.mod).size() == 1, "goldie radical is not idempotent");
  goldie_memo_.emplace(key, z2);
  return z2;
}

Submodule TorsionAnalysis::cg_radical(const FinModule& m) {
  check(same_ring(m.ring, ring_), "cg radical: module lives over a different ring");
  std::string key = m.structure_key();
  auto it = cg_memo_.find(key);
  if (it != cg_memo_.end()) return it->second;
  Submodule t = zero_submodule(m);
  for (u64 guard = 0;; ++guard) {
    check(guard <= m.size, "cg radical iteration failed to stabilize");
    QuotientResult q = quotient_module(m, t);
    Submodule zs = zstar(q.pres.mod);
    if (zs.size() <= 1) break;
    t = preimage_in(m, t, q, zs);
  }
  cg_memo_.emplace(key, t);
  return t;
}

bool TorsionAnalysis::is_cg_torsion(const FinModule& m) {
  return cg_radical(m).size() == m.size;
}

bool TorsionAnalysis::is_cg_torsionfree(const FinModule& m) {
  return zstar(m).size() == 1;
}

Submodule TorsionAnalysis::cg_radical_brute(const FinModule& m) {
  check(same_ring(m.ring, ring_), "cg radical oracle: module lives over a different ring");
  SubmoduleSet lat = submodule_lattice(m, limits_);
  size_t count = lat.members.size();
  std::vector<std::vector<char>> nested(count, std::vector<char>(count, 0));
  std::vector<std::vector<char>> pair_ok(count, std::vector<char>(count, 1));
  for (size_t i = 0; i < count; ++i)
    for (size_t j = 0; j < count; ++j) {
      if (i == j || lat.members[i].size() > lat.members[j].size()) continue;
      if (!elems_subset(lat.members[i].elems, lat.members[j].elems)) continue;
      nested[i][j] = 1;
      PresentedModule sq = subquotient_module(m, lat.members[j].lat, lat.members[i].lat);
      pair_ok[i][j] = zstar_nonzero(sq.mod);
    }

  std::vector<char> member_ok(count, 1);
  for (size_t n = 0; n < count; ++n)
    for (size_t j = 0; j < count && member_ok[n]; ++j) {
      if (j != n && !nested[j][n]) continue;
      for (size_t i = 0; i < count; ++i)
        if (nested[i][j] && !pair_ok[i][j]) {
          member_ok[n] = 0;
          break;
        }
    }

  Submodule best = zero_submodule(m);
  for (size_t n = 0; n < count; ++n)
    if (member_ok[n]) best = submodule_sum(m, best, lat.members[n]);
  int idx = lat.index_of_key(best.lat.key());
  check(idx >= 0 && member_ok[idx], "torsion-class members do not close under sums");
  return best;
}

Submodule TorsionAnalysis::reject_small(const FinModule& m) {
  check(same_ring(m.ring, ring_), "reject: module lives over a different ring");
  std::string key = m.structure_key();
  auto it = reject_memo_.find(key);
  if (it != reject_memo_.end()) return it->second;
  SubmoduleSet lat = submodule_lattice(m, limits_);
  Submodule acc = full_submodule(m);
  for (const Submodule& k : lat.members) {
    QuotientResult q = quotient_module(m, k);
    if (is_small_module(q.pres.mod)) acc = submodule_intersection(m, acc, k);
  }
  reject_memo_.emplace(key, acc);
  return acc;
}

Submodule TorsionAnalysis::reject_radical(const FinModule& m) {
  check(same_ring(m.ring, ring_), "reject radical: module lives over a different ring");
  std::string key = m.structure_key();
  auto it = rho_memo_.find(key);
  if (it != rho_memo_.end()) return it->second;
  Submodule cur = full_submodule(m);
  for (u64 guard = 0;; ++guard) {
    check(guard <= m.size, "reject radical iteration failed to stabilize");
    SubResult sr = sub_module(m, cur);
    Submodule rej = reject_small(sr.pres.mod);
    if (rej.size() == cur.size()) break;
    std::vector<Elem> gens;
    for (const Elem& g : rej.gens) gens.push_back(sr.pres.lift(g));
    cur = submodule_from_gens(m, gens);
  }
  rho_memo_.emplace(key, cur);
  return cur;
}

bool TorsionAnalysis::is_perp_torsion(const FinModule& m) {
  return reject_small(m).size() == m.size;
}

const std::vector<CorpusModule>& TorsionAnalysis::module_corpus() {
  if (!corpus_) build_corpus();
  return *corpus_;
}

bool TorsionAnalysis::corpus_fallback() {
  if (!corpus_) build_corpus();
  return corpus_fallback_;
}

void TorsionAnalysis::build_corpus() {
  const FinModule& reg = *homs_.regular();
  corpus_fallback_ = reg.size > limits_.module_cutoff / std::max<u64>(reg.size, 1);
  FinModule base = corpus_fallback_ ? reg : direct_sum(reg, reg, limits_).module;
  SubmoduleSet lat;
  for (;;) {
    try {
      lat = submodule_lattice(base, limits_);
      homs_.injective_hull(base);
      break;
    } catch (const Error& e) {
      if (corpus_fallback_ || (e.kind() != ErrorKind::SizeCutoffExceeded &&
                               e.kind() != ErrorKind::EnumerationCutoffExceeded))
        throw;
      corpus_fallback_ = true;
      base = reg;
    }
  }

  std::vector<CorpusModule> out;
  std::map<std::string, size_t> seen;
  std::map<std::string, std::vector<size_t>> buckets;
  auto bucket_key = [&](const FinModule& m) {
    std::string k = std::to_string(m.size) + "|" + additive_type(m.orders);
    for (const FinModule& s : homs_.simples())
      k += "|" + hom_count(s, m).str() + "/" + hom_count(m, s).str();
    return k;
  };
  auto add = [&](const std::string& label, const FinModule& m) {
    if (m.size > limits_.module_cutoff) return;
    std::string key = m.structure_key();
    auto hit = seen.find(key);
    if (hit != seen.end()) return;
    std::string bk = bucket_key(m);
    for (size_t idx : buckets[bk])
      if (are_isomorphic(m, out[idx].mod, limits_)) {
        seen.emplace(key, idx);
        return;
      }
    seen.emplace(key, out.size());
    buckets[bk].push_back(out.size());
    out.push_back({label, m});
  };

  add("0", zero_module(ring_));
  add("R", reg);
  if (!corpus_fallback_) add("R+R", base);
  for (size_t i = 0; i < homs_.simples().size(); ++i) {
    std::string tag = "simple:" + std::to_string(i);
    add(tag, homs_.simples()[i]);
    add("hull(" + tag + ")", homs_.injective_hull(homs_.simples()[i]).hull);
    add("cover(" + tag + ")", homs_.projective_cover(homs_.simples()[i]).cover);
  }
  for (size_t j = 0; j < lat.members.size(); ++j)
    for (size_t i = 0; i < lat.members.size(); ++i) {
      if (i == j || lat.members[i].size() > lat.members[j].size()) continue;
      if (!elems_subset(lat.members[i].elems, lat.members[j].elems)) continue;
      PresentedModule sq = subquotient_module(base, lat.members[j].lat, lat.members[i].lat);
      add("subq:" + std::to_string(j) + "/" + std::to_string(i), sq.mod);
    }

  std::sort(out.begin(), out.end(), [](const CorpusModule& a, const CorpusModule& b) {
    if (a.mod.size != b.mod.size) return a.mod.size < b.mod.size;
    std::string ta = additive_type(a.mod.orders), tb = additive_type(b.mod.orders);
    if (ta != tb) return ta < tb;
    return a.mod.structure_key() < b.mod.structure_key();
  });
  corpus_ = std::move(out);
}

const TorsionVerdict& TorsionAnalysis::cg_splitting() {
  if (verdict_) return *verdict_;
  const FinModule& reg = *homs_.regular();
  TorsionVerdict v;
  v.radical_of_r = cg_radical(reg);
  if (v.radical_of_r.size() == ring_->size)
    v.kind = TheoryKind::Improper;
  else if (v.radical_of_r.size() == 1)
    v.kind = TheoryKind::Trivial;
  else
    v.kind = TheoryKind::Proper;

  Submodule zs = zstar(reg);
  QuotientResult top = quotient_module(reg, zs);
  check(homs_.is_semisimple_module(top.pres.mod),
        "quotient of the regular module by zstar is not semisimple");

  bool all_simple_injective = true;
  bool all_inj_projective = true;
  bool all_inj_embed = true;
  std::optional<FinModule> bad;
  for (const FinModule& s : homs_.simples()) {
    if (!homs_.is_injective(s)) {
      all_simple_injective = false;
      continue;
    }
    if (!homs_.is_projective(s)) {
      all_inj_projective = false;
      if (!bad) bad = s;
    }
    if (hom_count(s, reg).is_one()) all_inj_embed = false;
  }
  check(all_inj_projective == all_inj_embed,
        "projectivity and regular-embedding disagree on the injective simples");
  check((v.kind == TheoryKind::Trivial) == all_simple_injective,
        "trivial-theory verdict disagrees with injectivity of all simples");
  v.splits = all_inj_projective;

  if (v.splits) {
    const Submodule& t = v.radical_of_r;
    const Submodule* comp = nullptr;
    for (const Submodule& a : homs_.regular_lattice().members)
      if (submodule_intersection(reg, t, a).size() == 1 &&
          submodule_sum(reg, t, a).size() == ring_->size) {
        comp = &a;
        break;
      }
    check(comp != nullptr, "torsion part of the regular module has no complement");

    Elem unit = ring_->reduce(ring_->unit);
    std::optional<Elem> et;
    for (u64 code : t.elems) {
      Elem x = reg.decode(code);
      if (comp->lat.contains(ring_->sub(unit, x))) {
        et = x;
        break;
      }
    }
    check(et.has_value(), "unit does not split along the torsion decomposition");
    Elem es = ring_->sub(unit, *et);
    check(ring_->mul(*et, *et) == *et && ring_->mul(es, es) == es,
          "component identities are not idempotent");
    for (int i = 0; i < ring_->k(); ++i) {
      Elem b = basis_elem(ring_->orders, i);
      check(ring_->mul(*et, b) == ring_->mul(b, *et), "component identity is not central");
    }
    for (u64 tc : t.elems)
      for (u64 ac : comp->elems) {
        Elem tx = ring_->decode(tc), ax = ring_->decode(ac);
        check(ring_->is_zero(ring_->mul(tx, ax)) && ring_->is_zero(ring_->mul(ax, tx)),
              "factors do not annihilate each other");
      }
    for (u64 tc : t.elems)
      check(ring_->mul(ring_->decode(tc), *et) == ring_->decode(tc),
            "component identity does not fix the torsion factor");
    for (u64 code = 0; code < ring_->size; ++code)
      check(t.lat.contains(ring_->mul(ring_->decode(code), *et)),
            "torsion factor is not the principal ideal of its identity");

    RingPtr tr, sr;
    if (t.size() == ring_->size)
      tr = ring_;
    else
      tr = ideal_ring(ring_, t, *et, ring_->name + " torsion factor");
    if (comp->size() == ring_->size)
      sr = ring_;
    else
      sr = ideal_ring(ring_, *comp, es, ring_->name + " torsionfree factor");

    if (tr != ring_ && tr->size > 1) {
      TorsionAnalysis sub(tr, limits_);
      check(sub.is_cg_torsion(*sub.homological().regular()), "torsion factor is not almost small");
    }
    if (sr == ring_)
      check(homs_.jacobson_radical().size() == 1, "torsionfree factor is not semisimple");
    else if (sr->size > 1) {
      RingAnalysis sa(sr, limits_);
      check(sa.jacobson_radical().size() == 1, "torsionfree factor is not semisimple");
    }
    v.factors = FactorRings{tr, sr};
    v.witness = "R = T x S with |T| = " + std::to_string(t.size()) +
                " (almost small) and |S| = " + std::to_string(comp->size()) + " (semisimple)";
  } else {
    check(bad.has_value(), "splitting failed without a failing simple");
    check(is_cg_torsionfree(*bad) && !homs_.is_projective(*bad),
          "failing simple is not a torsionfree non-projective witness");
    check(is_singular_module(*bad) && !is_cg_torsion(*bad),
          "failing simple is not a singular non-torsion witness");
    v.failing_simple = *bad;
    v.witness = "injective simple of size " + std::to_string(bad->size) + " is not projective";
  }

  v.cohereditary = true;
  v.stable = true;
  v.goldie_leq_cg = true;
  for (const CorpusModule& cm : module_corpus()) {
    const FinModule& m = cm.mod;
    if (v.goldie_leq_cg &&
        !elems_subset(goldie_radical(m).elems, cg_radical(m).elems))
      v.goldie_leq_cg = false;
    if (v.stable && is_cg_torsion(m) && !is_cg_torsion(homs_.injective_hull(m).hull))
      v.stable = false;
    if (v.cohereditary && is_cg_torsionfree(m)) {
      SubmoduleSet mlat = submodule_lattice(m, limits_);
      for (const Submodule& k : mlat.members)
        if (zstar_nonzero(quotient_module(m, k).pres.mod)) {
          v.cohereditary = false;
          break;
        }
    }
  }

  verdict_ = std::move(v);
  return *verdict_;
}

const RingReport& TorsionAnalysis::classify() {
  if (report_) return *report_;
  const FinModule& reg = *homs_.regular();
  RingReport r;
  r.name = ring_->name;
  r.size = ring_->size;
  const Submodule& jac = homs_.jacobson_radical();
  r.jacobson_size = jac.size();
  r.semisimple = jac.size() == 1;

  const auto& members = homs_.regular_lattice().members;
  int maximal = 0;
  for (size_t i = 0; i < members.size(); ++i) {
    if (members[i].size() == ring_->size) continue;
    bool is_max = true;
    for (size_t j = 0; j < members.size() && is_max; ++j) {
      if (j == i || members[j].size() == ring_->size) continue;
      if (members[j].size() > members[i].size() &&
          elems_subset(members[i].elems, members[j].elems))
        is_max = false;
    }
    if (is_max) ++maximal;
  }
  r.local = maximal == 1;
  r.division = r.local && r.semisimple;

  r.v_ring = true;
  r.kasch = true;
  for (const FinModule& s : homs_.simples()) {
    if (!homs_.is_injective(s)) r.v_ring = false;
    if (hom_count(s, reg).is_one()) r.kasch = false;
  }
  r.simple_count = static_cast<int>(homs_.simples().size());

  r.qf = homs_.is_injective(reg);
  bool op_qf = homs_.op().is_injective(*homs_.op().regular());
  check(r.qf == op_qf, "self-injectivity differs between the ring and its opposite");

  HullResult h = homs_.injective_hull(reg);
  r.small_ring = homs_.radical_of(h.hull).size() == h.hull.size;
  r.almost_small = cg_radical(reg).size() == ring_->size;

  std::vector<Elem> jac_elems;
  for (u64 c : jac.elems) jac_elems.push_back(ring_->decode(c));
  auto collect = [&](auto&& keep) {
    std::vector<u64> out;
    for (u64 c = 0; c < ring_->size; ++c)
      if (keep(ring_->decode(c))) out.push_back(c);
    return out;
  };
  std::vector<u64> right_soc = collect([&](const Elem& x) {
    for (const Elem& j : jac_elems)
      if (!ring_->is_zero(ring_->mul(x, j))) return false;
    return true;
  });
  std::vector<u64> right_ann = collect([&](const Elem& x) {
    for (const Elem& j : jac_elems)
      if (!ring_->is_zero(ring_->mul(j, x))) return false;
    return true;
  });
  std::vector<Elem> right_ann_elems;
  for (u64 c : right_ann) right_ann_elems.push_back(ring_->decode(c));
  std::vector<u64> left_of_right = collect([&](const Elem& y) {
    for (const Elem& x : right_ann_elems)
      if (!ring_->is_zero(ring_->mul(y, x))) return false;
    return true;
  });
  r.left_socle_size = homs_.left_socle().size();
  r.right_socle_size = right_soc.size();
  check(right_ann == homs_.left_socle().elems,
        "annihilator of the radical differs from the left socle");
  r.socle_right_in_left = elems_subset(right_soc, homs_.left_socle().elems);
  r.socle_left_in_right = elems_subset(homs_.left_socle().elems, right_soc);
  r.double_annihilator = left_of_right == jac.elems;

  r.product_of_local_rings = true;
  for (const Elem& e : primitive_central_idempotents(*ring_)) {
    std::vector<Elem> gens;
    for (int i = 0; i < ring_->k(); ++i)
      gens.push_back(ring_->mul(basis_elem(ring_->orders, i), e));
    Submodule ideal = submodule_from_gens(reg, gens);
    RingPtr block = ideal_ring(ring_, ideal, e, ring_->name + " block");
    RingAnalysis ba(block, limits_);
    const auto& bm = ba.regular_lattice().members;
    int block_maximal = 0;
    for (size_t i = 0; i < bm.size(); ++i) {
      if (bm[i].size() == block->size) continue;
      bool is_max = true;
      for (size_t j = 0; j < bm.size() && is_max; ++j) {
        if (j == i || bm[j].size() == block->size) continue;
        if (bm[j].size() > bm[i].size() && elems_subset(bm[i].elems, bm[j].elems)) is_max = false;
      }
      if (is_max) ++block_maximal;
    }
    if (block_maximal != 1) {
      r.product_of_local_rings = false;
      break;
    }
  }

  r.corpus_fallback = corpus_fallback();
  r.verdict = cg_splitting();

  check(!r.division || r.v_ring, "division ring that is not a V-ring");
  check(!r.qf || r.kasch, "self-injective ring that is not Kasch");
  check(!r.almost_small || r.verdict.kind == TheoryKind::Improper,
        "almost small ring whose theory is not improper");
  report_ = std::move(r);
  return *report_;
}

RingReport classify_ring(const RingPtr& ring, const Limits& limits) {
  TorsionAnalysis ctx(ring, limits);
  return ctx.classify();
}

bool product_decomposition_check(const RingPtr& a, const RingPtr& b, const Limits& limits) {
  RingPtr r = product_ring(a, b);
  TorsionAnalysis ctx(r, limits);
  Elem e1 = r->zero(), e2 = r->zero();
  for (int i = 0; i < a->k(); ++i) e1[i] = a->unit[i];
  for (int i = 0; i < b->k(); ++i) e2[a->k() + i] = b->unit[i];
  for (const CorpusModule& cm : ctx.module_corpus()) {
    const FinModule& m = cm.mod;
    std::vector<Elem> g1, g2;
    for (int u = 0; u < m.gens(); ++u) {
      g1.push_back(m.act(e1, basis_elem(m.orders, u)));
      g2.push_back(m.act(e2, basis_elem(m.orders, u)));
    }
    Submodule m1 = submodule_from_gens(m, g1);
    Submodule m2 = submodule_from_gens(m, g2);
    if (submodule_intersection(m, m1, m2).size() != 1 ||
        submodule_sum(m, m1, m2).size() != m.size)
      return false;
    SubResult s1 = sub_module(m, m1), s2 = sub_module(m, m2);
    std::vector<Elem> rad_gens;
    for (const Elem& g : ctx.cg_radical(s1.pres.mod).gens) rad_gens.push_back(s1.pres.lift(g));
    for (const Elem& g : ctx.cg_radical(s2.pres.mod).gens) rad_gens.push_back(s2.pres.lift(g));
    if (submodule_from_gens(m, rad_gens).elems != ctx.cg_radical(m).elems) return false;
  }
  return true;
}

std::vector<Elem> central_idempotents(const FiniteRing& r) {
  std::vector<Elem> out;
  for (u64 code = 0; code < r.size; ++code) {
    Elem e = r.decode(code);
    if (r.mul(e, e) != e) continue;
    bool central = true;
    for (int i = 0; i < r.k() && central; ++i) {
      Elem b = basis_elem(r.orders, i);
      central = r.mul(e, b) == r.mul(b, e);
    }
    if (central) out.push_back(e);
  }
  return out;
}

std::vector<Elem> primitive_central_idempotents(const FiniteRing& r) {
  std::vector<Elem> all = central_idempotents(r);
  std::vector<Elem> out;
  for (const Elem& e : all) {
    if (r.is_zero(e)) continue;
    bool primitive = true;
    for (const Elem& f : all) {
      if (r.is_zero(f) || f == e) continue;
      if (r.mul(f, e) == f) {
        primitive = false;
        break;
      }
    }
    if (primitive) out.push_back(e);
  }
  Elem sum = r.zero();
  for (const Elem& e : out) sum = r.add(sum, e);
  check(sum == r.reduce(r.unit), "primitive central idempotents do not sum to the unit");
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = 0; j < out.size(); ++j)
      check(i == j || r.is_zero(r.mul(out[i], out[j])),
            "primitive central idempotents are not orthogonal");
  return out;
}

RingPtr ideal_ring(const RingPtr& ambient, const Submodule& ideal, const Elem& unit,
                   const std::string& name) {
  if (ideal.size() == 1) return zero_ring();
  check(ideal.lat.contains(unit), "identity element lies outside the ideal");
  GroupPresentation pres(ideal.lat, Sublattice::zero(ambient->orders));
  const std::vector<Vec>& gens = pres.generator_reps();
  int k = static_cast<int>(pres.orders().size());
  std::vector<std::vector<Vec>> mult(k, std::vector<Vec>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) mult[i][j] = pres.coords(ambient->mul(gens[i], gens[j]));
  return make_ring(name, pres.orders(), std::move(mult), pres.coords(ambient->reduce(unit)));
}

}  // namespace ringlab

#include "ringlab/homological.hpp"

#include <algorithm>

#include "ringlab/errors.hpp"

namespace ringlab {

RingAnalysis::RingAnalysis(RingPtr ring, Limits limits)
    : ring_(std::move(ring)),
      limits_(limits),
      regular_(std::make_shared<const FinModule>(regular_module(ring_))) {}

void RingAnalysis::ensure_structure() {
  if (structure_ready_) return;
  regular_lattice_ = submodule_lattice(*regular_, limits_);
  const auto& members = regular_lattice_.members;

  Submodule rad = full_submodule(*regular_);
  for (size_t i = 0; i < members.size(); ++i) {
    if (members[i].size() == regular_->size) continue;
    bool maximal = true;
    for (size_t j = 0; j < members.size() && maximal; ++j) {
      if (j == i || members[j].size() == regular_->size) continue;
      if (members[j].size() > members[i].size() &&
          std::includes(members[j].elems.begin(), members[j].elems.end(),
                        members[i].elems.begin(), members[i].elems.end()))
        maximal = false;
    }
    if (maximal) rad = submodule_intersection(*regular_, rad, members[i]);
  }
  jacobson_ = std::make_unique<Submodule>(std::move(rad));
  left_socle_ = std::make_unique<Submodule>(
      annihilator_submodule(*regular_, jacobson_->lat.generators()));
  structure_ready_ = true;

  QuotientResult top = quotient_module(*regular_, *jacobson_);
  for (const auto& part : decompose_module(top.pres.mod, limits_)) {
    check(is_simple(part.part), "top of the regular module is not semisimple");
    bool duplicate = false;
    for (const FinModule& s : simples_)
      if (are_isomorphic(s, part.part, limits_)) duplicate = true;
    if (!duplicate) simples_.push_back(part.part);
  }

  projective_parts_ = decompose_module(*regular_, limits_);
  for (const auto& part : projective_parts_) {
    QuotientResult t = quotient_module(part.part, radical_of(part.part));
    projective_tops_.push_back(t.pres.mod);
    projective_top_maps_.push_back(t.projection);
  }
}

const SubmoduleSet& RingAnalysis::regular_lattice() {
  ensure_structure();
  return regular_lattice_;
}

const Submodule& RingAnalysis::jacobson_radical() {
  ensure_structure();
  return *jacobson_;
}

const Submodule& RingAnalysis::left_socle() {
  ensure_structure();
  return *left_socle_;
}

const std::vector<FinModule>& RingAnalysis::simples() {
  ensure_structure();
  return simples_;
}

const std::vector<IndecomposablePart>& RingAnalysis::projective_parts() {
  ensure_structure();
  return projective_parts_;
}

const std::vector<FinModule>& RingAnalysis::projective_tops() {
  ensure_structure();
  return projective_tops_;
}

RingAnalysis& RingAnalysis::op() {
  if (op_back_ != nullptr) return *op_back_;
  if (!op_) {
    op_ = std::make_unique<RingAnalysis>(opposite_ring(ring_), limits_);
    op_->op_back_ = this;
  }
  return *op_;
}

Submodule RingAnalysis::radical_of(const FinModule& m) {
  ensure_structure();
  std::vector<Elem> gens;
  for (const Vec& j : jacobson_->lat.generators())
    for (int u = 0; u < m.gens(); ++u) {
      Elem eu(m.gens(), 0);
      eu[u] = imod(1, m.orders[u]);
      gens.push_back(m.act(j, eu));
    }
  return submodule_from_gens(m, gens);
}

Submodule RingAnalysis::socle_of(const FinModule& m) {
  ensure_structure();
  return annihilator_submodule(m, jacobson_->lat.generators());
}

bool RingAnalysis::is_semisimple_module(const FinModule& m) {
  return radical_of(m).size() == 1;
}

bool RingAnalysis::is_simple(const FinModule& m) {
  if (m.size <= 1) return false;
  for (u64 c = 1; c < m.size; ++c)
    if (submodule_from_gens(m, {m.decode(c)}).size() != m.size) return false;
  return true;
}

bool RingAnalysis::is_essential(const FinModule& m, const Submodule& n) {
  return n.lat.contains_all(socle_of(m).lat);
}

bool RingAnalysis::is_small_in(const FinModule& m, const Submodule& n) {
  return radical_of(m).lat.contains_all(n.lat);
}

FinModule RingAnalysis::dual(const FinModule& m) {
  RingPtr target;
  if (same_ring(m.ring, ring_)) {
    target = op().ring();
  } else if (same_ring(m.ring, op().ring())) {
    target = ring_;
  } else {
    fail(ErrorKind::DifferentBaseRings, "dual of a module over an unrelated ring");
  }
  const int kk = target->k();
  const int g = m.gens();
  std::vector<std::vector<Vec>> act(kk, std::vector<Vec>(g, Vec(g, 0)));
  for (int i = 0; i < kk; ++i)
    for (int t = 0; t < g; ++t)
      for (int u = 0; u < g; ++u)
        act[i][t][u] = imod(m.orders[u] * m.action[i][u][t] / m.orders[t], m.orders[u]);
  return make_module(target, m.orders, std::move(act));
}

ModuleMorphism RingAnalysis::dual_map(const ModuleMorphism& f) {
  auto dsrc = std::make_shared<const FinModule>(dual(*f.target));
  auto dtgt = std::make_shared<const FinModule>(dual(*f.source));
  std::vector<Vec> mat(f.target->gens(), Vec(f.source->gens(), 0));
  for (int w = 0; w < f.target->gens(); ++w)
    for (int u = 0; u < f.source->gens(); ++u)
      mat[w][u] = imod(
          f.source->orders[u] * f.mat[u][w] / f.target->orders[w], f.source->orders[u]);
  return make_morphism(std::move(dsrc), std::move(dtgt), std::move(mat));
}

bool RingAnalysis::is_injective(const FinModule& m) {
  check(same_ring(m.ring, ring_), "module is not over this ring");
  std::string key = m.structure_key();
  auto memo = injective_memo_.find(key);
  if (memo != injective_memo_.end()) return memo->second;
  ensure_structure();

  bool injective = true;
  for (const Submodule& ideal : regular_lattice_.members) {
    if (ideal.size() == regular_->size || ideal.size() == 1) continue;
    SubResult sub = sub_module(*regular_, ideal);
    Factored all_homs = hom_count(sub.pres.mod, m);

    // Image of the restriction Hom(R, M) -> Hom(I, M); a hom from R is the
    // right action of its value at 1.
    const int gi = sub.pres.mod.gens();
    const int mt = m.gens();
    Vec grid_mods(static_cast<size_t>(gi) * mt);
    for (int g = 0; g < gi; ++g)
      for (int t = 0; t < mt; ++t) grid_mods[g * mt + t] = m.orders[t];
    std::vector<Vec> restriction_gens;
    for (int u = 0; u < mt; ++u) {
      Elem eu(mt, 0);
      eu[u] = imod(1, m.orders[u]);
      Vec v(grid_mods.size());
      for (int g = 0; g < gi; ++g) {
        Elem img = m.act(sub.pres.gen_reps[g], eu);
        for (int t = 0; t < mt; ++t) v[g * mt + t] = img[t];
      }
      restriction_gens.push_back(std::move(v));
    }
    Factored extendable = Sublattice::span(grid_mods, restriction_gens).order_factored();
    if (!(extendable == all_homs)) {
      injective = false;
      break;
    }
  }
  injective_memo_[key] = injective;
  return injective;
}

CoverResult RingAnalysis::projective_cover(const FinModule& m) {
  check(same_ring(m.ring, ring_), "module is not over this ring");
  ensure_structure();
  auto mp = std::make_shared<const FinModule>(m);
  if (m.size == 1) {
    auto zp = std::make_shared<const FinModule>(zero_module(ring_));
    return {*zp, zero_morphism(zp, mp)};
  }

  Submodule rad = radical_of(m);
  QuotientResult top = quotient_module(m, rad);
  std::vector<FinModule> summands;
  std::vector<ModuleMorphism> targets;  // summand -> top of m
  for (const auto& tp : decompose_module(top.pres.mod, limits_)) {
    int match = -1;
    std::optional<ModuleMorphism> psi;
    for (size_t j = 0; j < projective_parts_.size() && match < 0; ++j) {
      psi = find_isomorphism(projective_tops_[j], tp.part, limits_);
      if (psi) match = static_cast<int>(j);
    }
    if (match < 0)
      fail(ErrorKind::TopDecompositionFailure,
           "no indecomposable projective matches a factor of the top");
    summands.push_back(projective_parts_[match].part);
    targets.push_back(
        compose(tp.inclusion, compose(*psi, projective_top_maps_[match])));
  }

  DirectSumMany cover = direct_sum_many(ring_, summands, limits_);
  const int mt = m.gens();
  const int wt = top.pres.mod.gens();
  std::vector<Vec> stacked;
  for (size_t idx = 0; idx < summands.size(); ++idx) {
    const FinModule& p = summands[idx];
    const int gp = p.gens();
    Vec grid_mods(static_cast<size_t>(gp) * mt);
    for (int g = 0; g < gp; ++g)
      for (int t = 0; t < mt; ++t) grid_mods[g * mt + t] = m.orders[t];

    std::vector<AffineRow> rows;
    for (CongruenceRow& hom_row : hom_condition_rows(p, m))
      rows.push_back({std::move(hom_row.coef), 0, hom_row.modulus});
    for (int g = 0; g < gp; ++g)
      for (int w = 0; w < wt; ++w) {
        AffineRow row;
        row.modulus = top.pres.mod.orders[w];
        row.rhs = targets[idx].mat[g][w];
        row.coef.assign(grid_mods.size(), 0);
        for (int t = 0; t < mt; ++t) row.coef[g * mt + t] = top.projection.mat[t][w];
        rows.push_back(std::move(row));
      }
    auto lift = solve_affine(grid_mods, rows);
    check(lift.has_value(), "lifting through the projective summand failed");
    for (int g = 0; g < gp; ++g) {
      Vec row(mt);
      for (int t = 0; t < mt; ++t) row[t] = (*lift)[g * mt + t];
      stacked.push_back(std::move(row));
    }
  }

  auto cp = std::make_shared<const FinModule>(cover.module);
  ModuleMorphism onto = make_morphism(cp, mp, std::move(stacked));
  check(image_size(onto) == m.size, "cover map is not surjective");
  auto [kernel, image] = kernel_image(onto);
  check(radical_of(cover.module).lat.contains_all(kernel.lat),
        "cover kernel is not small");
  return {cover.module, std::move(onto)};
}

HullResult RingAnalysis::injective_hull(const FinModule& m) {
  check(same_ring(m.ring, ring_), "module is not over this ring");
  auto mp = std::make_shared<const FinModule>(m);
  FinModule md = dual(m);
  CoverResult c = op().projective_cover(md);
  ModuleMorphism emb = dual_map(c.onto);
  check(emb.source->structure_key() == m.structure_key(),
        "double dual does not reproduce the original presentation");
  ModuleMorphism into = make_morphism(mp, emb.target, emb.mat);

  auto [kernel, image] = kernel_image(into);
  check(kernel.size() == 1, "hull embedding is not injective");
  check(is_injective(*emb.target), "hull is not injective");
  check(image.lat.contains_all(socle_of(*emb.target).lat),
        "hull embedding is not essential");
  return {*emb.target, std::move(into)};
}

bool RingAnalysis::is_projective(const FinModule& m) {
  check(same_ring(m.ring, ring_), "module is not over this ring");
  std::string key = m.structure_key();
  auto memo = projective_memo_.find(key);
  if (memo != projective_memo_.end()) return memo->second;
  bool projective = is_bijective(projective_cover(m).onto);
  projective_memo_[key] = projective;
  return projective;
}

}  // namespace ringlab

#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "ringlab/builder.hpp"
#include "ringlab/torsion.hpp"

using namespace ringlab;

namespace {

Limits lim;

Elem gen_elem(const FinModule& m, int u) {
  Elem e(m.orders.size(), 0);
  e[u] = imod(1, m.orders[u]);
  return e;
}

bool subset(const std::vector<u64>& inner, const std::vector<u64>& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

Submodule minimal_member_sum(const FinModule& m, const SubmoduleSet& lat) {
  Submodule acc = zero_submodule(m);
  for (const Submodule& n : lat.members) {
    if (n.size() <= 1) continue;
    bool minimal = true;
    for (const Submodule& k : lat.members) {
      if (k.size() <= 1 || k.size() >= n.size()) continue;
      if (subset(k.elems, n.elems)) {
        minimal = false;
        break;
      }
    }
    if (minimal) acc = submodule_sum(m, acc, n);
  }
  return acc;
}

std::vector<u64> annihilated_by_socle(TorsionAnalysis& ctx, const FinModule& m) {
  const FinModule& reg = *ctx.homological().regular();
  Submodule soc = minimal_member_sum(reg, submodule_lattice(reg, lim));
  std::vector<u64> out;
  for (u64 c = 0; c < m.size; ++c) {
    Elem x = m.decode(c);
    bool killed = true;
    for (u64 sc : soc.elems)
      if (m.act(ctx.ring()->decode(sc), x) != m.zero()) {
        killed = false;
        break;
      }
    if (killed) out.push_back(c);
  }
  return out;
}

std::vector<u64> trace_of_singulars(TorsionAnalysis& ctx, const FinModule& target) {
  std::vector<Elem> gens;
  for (const CorpusModule& cm : ctx.module_corpus()) {
    if (!ctx.is_singular_module(cm.mod)) continue;
    bool exhaustive = for_each_hom(cm.mod, target, lim, [&](const ModuleMorphism& f) {
      for (int u = 0; u < cm.mod.gens(); ++u) gens.push_back(f.apply(gen_elem(cm.mod, u)));
      return true;
    });
    REQUIRE(exhaustive);
  }
  return submodule_from_gens(target, gens).elems;
}

FinModule tri_socle_simple(TorsionAnalysis& ctx) {
  for (const FinModule& s : ctx.homological().simples())
    if (ctx.homological().injective_hull(s).hull.size > s.size) return s;
  REQUIRE(false);
  return zero_module(ctx.ring());
}

FinModule tri_top_simple(TorsionAnalysis& ctx) {
  for (const FinModule& s : ctx.homological().simples())
    if (ctx.homological().injective_hull(s).hull.size == s.size) return s;
  REQUIRE(false);
  return zero_module(ctx.ring());
}

}  // namespace

TEST_CASE("singular submodule matches the elementwise annihilator oracle") {
  for (const char* spec : {"Z/4", "Z/12", "Tri(2, GF(2))", "GF(4)", "Z/6"}) {
    CAPTURE(spec);
    TorsionAnalysis ctx(build_ring(spec), lim);
    const FinModule& reg = *ctx.homological().regular();
    CHECK(ctx.singular_submodule(reg).elems == annihilated_by_socle(ctx, reg));
    for (const FinModule& s : ctx.homological().simples())
      CHECK(ctx.singular_submodule(s).elems == annihilated_by_socle(ctx, s));
  }
}

TEST_CASE("singular elements are exactly those with essential annihilator") {
  TorsionAnalysis ctx(build_ring("Tri(2, GF(2))"), lim);
  const RingPtr& r = ctx.ring();
  const FinModule& reg = *ctx.homological().regular();
  FinModule p2 = ctx.homological().injective_hull(tri_socle_simple(ctx)).hull;
  SubmoduleSet rlat = submodule_lattice(reg, lim);
  for (const FinModule& m : {reg, p2}) {
    Submodule z = ctx.singular_submodule(m);
    for (u64 c = 0; c < m.size; ++c) {
      Elem x = m.decode(c);
      std::vector<Elem> ann;
      for (u64 rc = 0; rc < r->size; ++rc) {
        Elem a = r->decode(rc);
        if (m.act(a, x) == m.zero()) ann.push_back(a);
      }
      Submodule ideal = submodule_from_gens(reg, ann);
      bool essential = true;
      for (const Submodule& n : rlat.members) {
        if (n.size() <= 1) continue;
        if (submodule_intersection(reg, ideal, n).size() <= 1) essential = false;
      }
      CHECK(essential == z.contains_code(c));
    }
  }
}

TEST_CASE("frozen singular submodules") {
  TorsionAnalysis z4(build_ring("Z/4"), lim);
  CHECK(z4.singular_submodule(*z4.homological().regular()).elems == std::vector<u64>{0, 2});
  CHECK(z4.is_singular_module(z4.homological().simples()[0]));

  TorsionAnalysis z12(build_ring("Z/12"), lim);
  CHECK(z12.singular_submodule(*z12.homological().regular()).elems == std::vector<u64>{0, 6});

  TorsionAnalysis t2(build_ring("Tri(2, GF(2))"), lim);
  CHECK(t2.singular_submodule(*t2.homological().regular()).size() == 1);
  CHECK(t2.is_singular_module(tri_top_simple(t2)));
  CHECK_FALSE(t2.is_singular_module(tri_socle_simple(t2)));

  TorsionAnalysis gf(build_ring("GF(4)"), lim);
  CHECK(gf.singular_submodule(*gf.homological().regular()).size() == 1);
}

TEST_CASE("small module membership matches the frozen inventory") {
  TorsionAnalysis z4(build_ring("Z/4"), lim);
  CHECK(z4.is_small_module(zero_module(z4.ring())));
  CHECK(z4.is_small_module(z4.homological().simples()[0]));
  CHECK_FALSE(z4.is_small_module(*z4.homological().regular()));

  TorsionAnalysis z12(build_ring("Z/12"), lim);
  for (const FinModule& s : z12.homological().simples())
    CHECK(z12.is_small_module(s) == (s.size == 2));
  CHECK_FALSE(z12.is_small_module(*z12.homological().regular()));

  TorsionAnalysis t2(build_ring("Tri(2, GF(2))"), lim);
  CHECK(t2.is_small_module(tri_socle_simple(t2)));
  CHECK_FALSE(t2.is_small_module(tri_top_simple(t2)));
  CHECK_FALSE(t2.is_small_module(t2.homological().injective_hull(tri_socle_simple(t2)).hull));
  CHECK_FALSE(t2.is_small_module(*t2.homological().regular()));

  TorsionAnalysis gf(build_ring("GF(4)"), lim);
  CHECK_FALSE(gf.is_small_module(*gf.homological().regular()));
}

TEST_CASE("small modules are closed under submodules, quotients, and sums") {
  for (const char* spec : {"Z/12", "Tri(2, GF(2))"}) {
    CAPTURE(spec);
    TorsionAnalysis ctx(build_ring(spec), lim);
    std::vector<FinModule> smalls;
    for (const CorpusModule& cm : ctx.module_corpus())
      if (cm.mod.size <= 16 && ctx.is_small_module(cm.mod)) smalls.push_back(cm.mod);
    REQUIRE(smalls.size() >= 2);
    for (const FinModule& m : smalls) {
      CHECK(ctx.zstar(m).size() == m.size);
      for (const Submodule& n : submodule_lattice(m, lim).members) {
        CHECK(ctx.is_small_module(sub_module(m, n).pres.mod));
        CHECK(ctx.is_small_module(quotient_module(m, n).pres.mod));
      }
    }
    CHECK(ctx.is_small_module(direct_sum(smalls[0], smalls.back(), lim).module));
  }
}

TEST_CASE("zstar matches the frozen values") {
  TorsionAnalysis z4(build_ring("Z/4"), lim);
  CHECK(z4.zstar(*z4.homological().regular()).elems == std::vector<u64>{0, 2});
  CHECK(z4.zstar(z4.homological().simples()[0]).size() == 2);

  TorsionAnalysis z12(build_ring("Z/12"), lim);
  CHECK(z12.zstar(*z12.homological().regular()).elems == std::vector<u64>{0, 6});

  TorsionAnalysis t2(build_ring("Tri(2, GF(2))"), lim);
  CHECK(t2.zstar(*t2.homological().regular()).elems == std::vector<u64>{0, 1, 2, 3});
  FinModule p2 = t2.homological().injective_hull(tri_socle_simple(t2)).hull;
  Submodule zp = t2.zstar(p2);
  CHECK(zp.size() == 2);
  CHECK(are_isomorphic(sub_module(p2, zp).pres.mod, tri_socle_simple(t2), lim));

  TorsionAnalysis gf(build_ring("GF(4)"), lim);
  CHECK(gf.zstar(*gf.homological().regular()).size() == 1);

  TorsionAnalysis prod(build_ring("GF(2) x Z/4"), lim);
  CHECK(prod.zstar(*prod.homological().regular()).elems == std::vector<u64>{0, 4});
}

TEST_CASE("goldie radical is the idempotent closure of the singular submodule") {
  struct Row {
    const char* spec;
    std::vector<u64> regular_goldie;
  };
  for (const Row& row : {Row{"Z/4", {0, 1, 2, 3}}, Row{"Z/12", {0, 3, 6, 9}},
                         Row{"Tri(2, GF(2))", {0}}, Row{"GF(4)", {0}}}) {
    CAPTURE(row.spec);
    TorsionAnalysis ctx(build_ring(row.spec), lim);
    const FinModule& reg = *ctx.homological().regular();
    Submodule g = ctx.goldie_radical(reg);
    CHECK(g.elems == row.regular_goldie);
    CHECK(subset(ctx.singular_submodule(reg).elems, g.elems));
    CHECK(ctx.singular_submodule(quotient_module(reg, g).pres.mod).size() == 1);
  }
}

TEST_CASE("cg radical matches the frozen values and the subquotient-scan oracle") {
  struct Row {
    const char* spec;
    std::vector<u64> regular_cg;
  };
  for (const Row& row :
       {Row{"Z/4", {0, 1, 2, 3}}, Row{"Z/12", {0, 3, 6, 9}}, Row{"Tri(2, GF(2))", {0, 1, 2, 3}},
        Row{"GF(4)", {0}}, Row{"GF(2) x Z/4", {0, 2, 4, 6}}}) {
    CAPTURE(row.spec);
    TorsionAnalysis ctx(build_ring(row.spec), lim);
    const FinModule& reg = *ctx.homological().regular();
    Submodule t = ctx.cg_radical(reg);
    CHECK(t.elems == row.regular_cg);
    CHECK(ctx.cg_radical_brute(reg).elems == t.elems);
    CHECK(subset(ctx.zstar(reg).elems, t.elems));
    CHECK(ctx.is_cg_torsion(sub_module(reg, t).pres.mod));
    CHECK(ctx.is_cg_torsionfree(quotient_module(reg, t).pres.mod));
  }

  TorsionAnalysis t2(build_ring("Tri(2, GF(2))"), lim);
  FinModule p2 = t2.homological().injective_hull(tri_socle_simple(t2)).hull;
  CHECK(t2.cg_radical(p2).size() == 2);
  CHECK(t2.cg_radical_brute(p2).elems == t2.cg_radical(p2).elems);

  TorsionAnalysis z4(build_ring("Z/4"), lim);
  FinModule rr = direct_sum(*z4.homological().regular(), *z4.homological().regular(), lim).module;
  CHECK(z4.cg_radical(rr).size() == 16);
  CHECK(z4.cg_radical_brute(rr).elems == z4.cg_radical(rr).elems);
}

TEST_CASE("zstar is essential in the cg radical when nonzero") {
  for (const char* spec : {"Z/4", "Z/12", "Tri(2, GF(2))", "GF(2) x Z/4"}) {
    CAPTURE(spec);
    TorsionAnalysis ctx(build_ring(spec), lim);
    for (const CorpusModule& cm : ctx.module_corpus()) {
      if (cm.mod.size > 64) continue;
      Submodule zs = ctx.zstar(cm.mod);
      if (zs.size() <= 1) continue;
      SubResult inside = sub_module(cm.mod, ctx.cg_radical(cm.mod));
      std::vector<Elem> gens;
      for (const Elem& g : zs.gens) gens.push_back(inside.pres.to_coords(g));
      CHECK(ctx.homological().is_essential(inside.pres.mod,
                                           submodule_from_gens(inside.pres.mod, gens)));
    }
  }
}

TEST_CASE("cg torsion membership agrees with the scan oracle on a whole corpus") {
  TorsionAnalysis ctx(build_ring("Z/4"), lim);
  for (const CorpusModule& cm : ctx.module_corpus()) {
    CAPTURE(cm.label);
    CHECK(ctx.is_cg_torsion(cm.mod) == (ctx.cg_radical_brute(cm.mod).size() == cm.mod.size));
  }
}

TEST_CASE("preradicals are additive across direct sums") {
  TorsionAnalysis z12(build_ring("Z/12"), lim);
  const FinModule& reg = *z12.homological().regular();
  for (const FinModule& s : z12.homological().simples()) {
    DirectSum ds = direct_sum(reg, s, lim);
    CHECK(z12.zstar(ds.module).size() == z12.zstar(reg).size() * z12.zstar(s).size());
    CHECK(z12.cg_radical(ds.module).size() == z12.cg_radical(reg).size() * z12.cg_radical(s).size());
    CHECK(z12.goldie_radical(ds.module).size() ==
          z12.goldie_radical(reg).size() * z12.goldie_radical(s).size());
    CHECK(z12.singular_submodule(ds.module).size() ==
          z12.singular_submodule(reg).size() * z12.singular_submodule(s).size());
    CHECK(z12.reject_small(ds.module).size() ==
          z12.reject_small(reg).size() * z12.reject_small(s).size());
  }
}

TEST_CASE("reject of the small class and its fixpoint match the frozen values") {
  TorsionAnalysis z4(build_ring("Z/4"), lim);
  const FinModule& z4reg = *z4.homological().regular();
  CHECK(z4.reject_small(z4reg).elems == std::vector<u64>{0, 2});
  CHECK(z4.reject_radical(z4reg).size() == 1);
  CHECK(z4.reject_small(z4.homological().simples()[0]).size() == 1);
  CHECK_FALSE(z4.is_perp_torsion(z4reg));
  CHECK_FALSE(z4.is_perp_torsion(z4.homological().simples()[0]));

  TorsionAnalysis z12(build_ring("Z/12"), lim);
  const FinModule& z12reg = *z12.homological().regular();
  CHECK(z12.reject_small(z12reg).elems == std::vector<u64>{0, 2, 4, 6, 8, 10});
  CHECK(z12.reject_radical(z12reg).elems == std::vector<u64>{0, 4, 8});
  for (const FinModule& s : z12.homological().simples())
    CHECK(z12.is_perp_torsion(s) == (s.size == 3));

  TorsionAnalysis t2(build_ring("Tri(2, GF(2))"), lim);
  const FinModule& t2reg = *t2.homological().regular();
  FinModule p2 = t2.homological().injective_hull(tri_socle_simple(t2)).hull;
  CHECK(t2.reject_small(t2reg).elems == std::vector<u64>{0, 2, 4, 6});
  CHECK(t2.reject_radical(t2reg).elems == std::vector<u64>{0, 2, 4, 6});
  CHECK(are_isomorphic(sub_module(t2reg, t2.reject_small(t2reg)).pres.mod, p2, lim));
  CHECK(t2.is_perp_torsion(p2));
  CHECK_FALSE(t2.is_perp_torsion(t2reg));
  CHECK(t2.is_perp_torsion(tri_top_simple(t2)));
  CHECK_FALSE(t2.is_perp_torsion(tri_socle_simple(t2)));

  TorsionAnalysis prod(build_ring("GF(2) x Z/4"), lim);
  const FinModule& preg = *prod.homological().regular();
  CHECK(prod.reject_small(preg).elems == std::vector<u64>{0, 1, 4, 5});
  CHECK(prod.reject_radical(preg).elems == std::vector<u64>{0, 1});
}

TEST_CASE("reject fixpoint is idempotent and sits inside the reject") {
  for (const char* spec : {"Z/4", "Z/12", "Tri(2, GF(2))", "GF(2) x Z/4", "GF(4)"}) {
    CAPTURE(spec);
    TorsionAnalysis ctx(build_ring(spec), lim);
    const FinModule& reg = *ctx.homological().regular();
    Submodule rho = ctx.reject_radical(reg);
    CHECK(subset(rho.elems, ctx.reject_small(reg).elems));
    if (rho.size() > 1) {
      FinModule inner = sub_module(reg, rho).pres.mod;
      CHECK(ctx.reject_radical(inner).size() == inner.size);
      CHECK(ctx.is_perp_torsion(inner));
    }
  }
}

TEST_CASE("perp torsion means no nonzero quotient is small") {
  for (const char* spec : {"Z/4", "Z/12", "Tri(2, GF(2))"}) {
    CAPTURE(spec);
    TorsionAnalysis ctx(build_ring(spec), lim);
    for (const CorpusModule& cm : ctx.module_corpus()) {
      if (cm.mod.size > 16) continue;
      bool no_small_quotient = true;
      for (const Submodule& k : submodule_lattice(cm.mod, lim).members) {
        QuotientResult q = quotient_module(cm.mod, k);
        if (q.pres.mod.size > 1 && ctx.is_small_module(q.pres.mod)) no_small_quotient = false;
      }
      CHECK(ctx.is_perp_torsion(cm.mod) == no_small_quotient);
    }
  }
}

TEST_CASE("torsion modules admit only zero maps into torsionfree modules") {
  for (const char* spec : {"Z/12", "Tri(2, GF(2))"}) {
    CAPTURE(spec);
    TorsionAnalysis ctx(build_ring(spec), lim);
    for (const CorpusModule& a : ctx.module_corpus()) {
      if (!ctx.is_cg_torsion(a.mod)) continue;
      for (const CorpusModule& b : ctx.module_corpus()) {
        if (!ctx.is_cg_torsionfree(b.mod)) continue;
        CAPTURE(a.label);
        CAPTURE(b.label);
        CHECK(hom_count(a.mod, b.mod).is_one());
      }
    }
  }
}

TEST_CASE("singular submodule equals the trace of the singular corpus modules") {
  for (const char* spec : {"Z/4", "Z/12", "Tri(2, GF(2))"}) {
    CAPTURE(spec);
    TorsionAnalysis ctx(build_ring(spec), lim);
    const FinModule& reg = *ctx.homological().regular();
    CHECK(ctx.singular_submodule(reg).elems == trace_of_singulars(ctx, reg));
  }
}

TEST_CASE("ring classification matches the frozen catalogue") {
  RingReport r = classify_ring(build_ring("Z/4"), lim);
  CHECK_FALSE(r.semisimple);
  CHECK(r.local);
  CHECK_FALSE(r.division);
  CHECK_FALSE(r.v_ring);
  CHECK(r.kasch);
  CHECK(r.qf);
  CHECK_FALSE(r.small_ring);
  CHECK(r.almost_small);
  CHECK(r.product_of_local_rings);
  CHECK(r.socle_right_in_left);
  CHECK(r.socle_left_in_right);
  CHECK(r.double_annihilator);
  CHECK(r.jacobson_size == 2);
  CHECK(r.left_socle_size == 2);
  CHECK(r.right_socle_size == 2);
  CHECK(r.simple_count == 1);
  CHECK(r.verdict.kind == TheoryKind::Improper);
  CHECK(r.verdict.splits);

  r = classify_ring(build_ring("GF(4)"), lim);
  CHECK(r.semisimple);
  CHECK(r.division);
  CHECK(r.v_ring);
  CHECK(r.verdict.kind == TheoryKind::Trivial);
  CHECK(r.verdict.splits);

  r = classify_ring(build_ring("Z/6"), lim);
  CHECK(r.semisimple);
  CHECK_FALSE(r.local);
  CHECK(r.v_ring);
  CHECK(r.product_of_local_rings);
  CHECK(r.verdict.kind == TheoryKind::Trivial);

  r = classify_ring(build_ring("Z/12"), lim);
  CHECK_FALSE(r.semisimple);
  CHECK_FALSE(r.local);
  CHECK(r.kasch);
  CHECK(r.qf);
  CHECK(r.product_of_local_rings);
  CHECK(r.double_annihilator);
  CHECK(r.jacobson_size == 2);
  CHECK(r.left_socle_size == 6);
  CHECK(r.right_socle_size == 6);
  CHECK(r.simple_count == 2);
  CHECK(r.verdict.kind == TheoryKind::Proper);
  CHECK(r.verdict.splits);

  r = classify_ring(build_ring("Tri(2, GF(2))"), lim);
  CHECK_FALSE(r.semisimple);
  CHECK_FALSE(r.local);
  CHECK_FALSE(r.v_ring);
  CHECK_FALSE(r.kasch);
  CHECK_FALSE(r.qf);
  CHECK_FALSE(r.small_ring);
  CHECK_FALSE(r.almost_small);
  CHECK_FALSE(r.product_of_local_rings);
  CHECK_FALSE(r.socle_right_in_left);
  CHECK_FALSE(r.socle_left_in_right);
  CHECK_FALSE(r.double_annihilator);
  CHECK(r.jacobson_size == 2);
  CHECK(r.left_socle_size == 4);
  CHECK(r.right_socle_size == 4);
  CHECK(r.simple_count == 2);
  CHECK(r.verdict.kind == TheoryKind::Proper);
  CHECK_FALSE(r.verdict.splits);

  r = classify_ring(build_ring("Mat(2, GF(2))"), lim);
  CHECK(r.semisimple);
  CHECK(r.v_ring);
  CHECK(r.qf);
  CHECK_FALSE(r.product_of_local_rings);
  CHECK(r.verdict.kind == TheoryKind::Trivial);

  r = classify_ring(build_ring("Z/8"), lim);
  CHECK(r.local);
  CHECK(r.almost_small);
  CHECK(r.verdict.kind == TheoryKind::Improper);
}

TEST_CASE("splitting verdicts carry verified factor rings") {
  TorsionAnalysis z4(build_ring("Z/4"), lim);
  const TorsionVerdict& v4 = z4.cg_splitting();
  REQUIRE(v4.factors.has_value());
  CHECK(v4.factors->torsion_factor.get() == z4.ring().get());
  CHECK(v4.factors->torsionfree_factor->size == 1);

  TorsionAnalysis z12(build_ring("Z/12"), lim);
  const TorsionVerdict& v12 = z12.cg_splitting();
  REQUIRE(v12.factors.has_value());
  CHECK(v12.factors->torsion_factor->size == 4);
  CHECK(additive_type(v12.factors->torsion_factor->orders) == additive_type(Vec{4}));
  CHECK(v12.factors->torsionfree_factor->size == 3);
  CHECK(classify_ring(v12.factors->torsion_factor, lim).almost_small);
  CHECK(classify_ring(v12.factors->torsionfree_factor, lim).semisimple);

  TorsionAnalysis prod(build_ring("GF(2) x Z/4"), lim);
  const TorsionVerdict& vp = prod.cg_splitting();
  REQUIRE(vp.factors.has_value());
  CHECK(vp.factors->torsion_factor->size == 4);
  CHECK(additive_type(vp.factors->torsion_factor->orders) == additive_type(Vec{4}));
  CHECK(vp.factors->torsionfree_factor->size == 2);
  CHECK(classify_ring(vp.factors->torsion_factor, lim).almost_small);
  CHECK(classify_ring(vp.factors->torsionfree_factor, lim).semisimple);

  TorsionAnalysis mat(build_ring("Mat(2, GF(2))"), lim);
  const TorsionVerdict& vm = mat.cg_splitting();
  REQUIRE(vm.factors.has_value());
  CHECK(vm.factors->torsion_factor->size == 1);
  CHECK(vm.factors->torsionfree_factor.get() == mat.ring().get());
}

TEST_CASE("non-splitting rings expose an injective non-projective simple") {
  TorsionAnalysis t2(build_ring("Tri(2, GF(2))"), lim);
  const TorsionVerdict& v = t2.cg_splitting();
  CHECK_FALSE(v.splits);
  CHECK_FALSE(v.factors.has_value());
  REQUIRE(v.failing_simple.has_value());
  CHECK(t2.homological().is_injective(*v.failing_simple));
  CHECK_FALSE(t2.homological().is_projective(*v.failing_simple));
  CHECK(t2.is_cg_torsionfree(*v.failing_simple));
  CHECK(t2.is_singular_module(*v.failing_simple));
  CHECK_FALSE(t2.is_cg_torsion(*v.failing_simple));
  const FinModule& reg = *t2.homological().regular();
  FinModule top = quotient_module(reg, t2.homological().left_socle()).pres.mod;
  CHECK(are_isomorphic(*v.failing_simple, top, lim));
  CHECK_FALSE(v.witness.empty());
  CHECK(v.cohereditary);
  CHECK_FALSE(v.stable);
  CHECK_FALSE(v.goldie_leq_cg);

  const TorsionVerdict& vz = TorsionAnalysis(build_ring("Z/12"), lim).cg_splitting();
  CHECK(vz.cohereditary);
  CHECK(vz.stable);
  CHECK(vz.goldie_leq_cg);
}

TEST_CASE("module corpus enumerates the subquotient classes once each") {
  struct Row {
    const char* spec;
    size_t classes;
  };
  for (const Row& row : {Row{"Z/4", 6}, Row{"GF(2)", 3}, Row{"Z/6", 9}, Row{"Z/12", 18},
                         Row{"Tri(2, GF(2))", 22}, Row{"Mat(2, GF(2))", 5}}) {
    CAPTURE(row.spec);
    TorsionAnalysis ctx(build_ring(row.spec), lim);
    const std::vector<CorpusModule>& corpus = ctx.module_corpus();
    CHECK(corpus.size() == row.classes);
    CHECK_FALSE(ctx.corpus_fallback());
    std::set<std::string> labels;
    for (const CorpusModule& cm : corpus) labels.insert(cm.label);
    CHECK(labels.size() == corpus.size());
    CHECK(labels.count("0") == 1);
    CHECK(labels.count("R") == 1);
    CHECK(labels.count("R+R") == 1);
  }

  TorsionAnalysis z4(build_ring("Z/4"), lim);
  const auto& corpus = z4.module_corpus();
  for (size_t i = 0; i < corpus.size(); ++i)
    for (size_t j = i + 1; j < corpus.size(); ++j)
      CHECK_FALSE(are_isomorphic(corpus[i].mod, corpus[j].mod, lim));
}

TEST_CASE("corpus falls back to the regular module when hulls outgrow the cutoff") {
  TorsionAnalysis ctx(build_ring("Tri(2, GF(3))"), lim);
  const std::vector<CorpusModule>& corpus = ctx.module_corpus();
  CHECK(ctx.corpus_fallback());
  std::set<std::string> labels;
  for (const CorpusModule& cm : corpus) labels.insert(cm.label);
  CHECK(labels.count("R") == 1);
  CHECK(labels.count("R+R") == 0);
}

TEST_CASE("product rings decompose every corpus module componentwise") {
  CHECK(product_decomposition_check(build_ring("GF(2)"), build_ring("Z/4"), lim));
  CHECK(product_decomposition_check(build_ring("Z/4"), build_ring("Z/9"), lim));
  CHECK(product_decomposition_check(build_ring("Z/2"), build_ring("Z/3"), lim));
}

TEST_CASE("central idempotents split rings into blocks") {
  RingPtr z6 = build_ring("Z/6");
  std::vector<Elem> cents = central_idempotents(*z6);
  CHECK(cents.size() == 4);
  std::vector<Elem> prims = primitive_central_idempotents(*z6);
  CHECK(prims.size() == 2);

  CHECK(central_idempotents(*build_ring("Mat(2, GF(2))")).size() == 2);
  CHECK(primitive_central_idempotents(*build_ring("Mat(2, GF(2))")).size() == 1);
  CHECK(primitive_central_idempotents(*build_ring("Tri(2, GF(2))")).size() == 1);
  CHECK(primitive_central_idempotents(*build_ring("GF(2) x Z/4")).size() == 2);

  RingPtr prod = build_ring("GF(2) x Z/4");
  TorsionAnalysis ctx(prod, lim);
  const FinModule& reg = *ctx.homological().regular();
  for (const Elem& e : primitive_central_idempotents(*prod)) {
    std::vector<Elem> gens;
    for (int i = 0; i < prod->k(); ++i) gens.push_back(prod->mul(gen_elem(reg, i), e));
    Submodule ideal = submodule_from_gens(reg, gens);
    RingPtr block = ideal_ring(prod, ideal, e, "block");
    CHECK(block->size == ideal.size());
    CHECK(classify_ring(block, lim).local);
  }
}

#include "ringlab/labcli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

#include "json.hpp"

#include "ringlab/builder.hpp"
#include "ringlab/errors.hpp"

namespace ringlab {

namespace {

using nlohmann::json;

const char* yn(bool b) { return b ? "yes" : "no"; }

std::string trimmed(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string mod_desc(const FinModule& m) {
  return "size " + std::to_string(m.size) + ", additive " + additive_desc(m.orders);
}

// One lazily constructed analysis per corpus ring, shared by every suite.
struct Lab {
  const Corpus* corpus = nullptr;
  Limits limits;
  std::vector<std::shared_ptr<TorsionAnalysis>> ctxs;

  size_t size() const { return corpus->rings.size(); }
  const std::string& spec(size_t i) const { return corpus->specs[i]; }
  const RingPtr& ring(size_t i) const { return corpus->rings[i]; }
  TorsionAnalysis& at(size_t i) {
    if (!ctxs[i]) ctxs[i] = std::make_shared<TorsionAnalysis>(corpus->rings[i], limits);
    return *ctxs[i];
  }
};

bool is_cutoff(ErrorKind k) {
  return k == ErrorKind::SizeCutoffExceeded || k == ErrorKind::EnumerationCutoffExceeded ||
         k == ErrorKind::IterationGuardExceeded;
}

template <typename F>
void run_one(SuiteResult& out, const std::string& ring, F&& body) {
  SuiteCheck c;
  c.ring = ring;
  try {
    body(c);
  } catch (const Error& e) {
    c.outcome = is_cutoff(e.kind()) ? Outcome::Skipped : Outcome::Failed;
    c.detail = e.what();
  }
  out.checks.push_back(std::move(c));
}

void failed(SuiteCheck& c, const std::string& witness) {
  c.outcome = Outcome::Failed;
  c.detail = witness;
}

int find_spec(const Corpus& corpus, const std::string& spec) {
  for (size_t i = 0; i < corpus.specs.size(); ++i)
    if (corpus.specs[i] == spec) return static_cast<int>(i);
  return -1;
}

void suite_t11(Lab& lab, SuiteResult& out) {
  for (size_t i = 0; i < lab.size(); ++i) {
    run_one(out, lab.spec(i), [&](SuiteCheck& c) {
      TorsionAnalysis& ctx = lab.at(i);
      const RingReport& rep = ctx.classify();
      RingAnalysis& homs = ctx.homological();
      auto side = [&](const FinModule& part, bool& ps, bool& is) {
        ps = homs.is_projective(part) || ctx.is_small_module(part);
        is = homs.is_injective(part) || ctx.is_singular_module(part);
      };
      if (rep.qf) {
        int parts = 0;
        for (const CorpusModule& cm : ctx.module_corpus()) {
          for (const IndecomposablePart& p : decompose_module(cm.mod, lab.limits)) {
            bool ps = false, is = false;
            side(p.part, ps, is);
            ++parts;
            if (!ps)
              return failed(c, "qf ring, yet " + cm.label + " has an indecomposable part (" +
                                   mod_desc(p.part) + ") that is neither projective nor small");
            if (!is)
              return failed(c, "qf ring, yet " + cm.label + " has an indecomposable part (" +
                                   mod_desc(p.part) + ") that is neither injective nor singular");
          }
        }
        c.detail = "qf: all " + std::to_string(parts) +
                   " indecomposable parts across the corpus are projective or small and "
                   "injective or singular";
      } else {
        for (const CorpusModule& cm : ctx.module_corpus()) {
          for (const IndecomposablePart& p : decompose_module(cm.mod, lab.limits)) {
            bool ps = false, is = false;
            side(p.part, ps, is);
            if (!ps || !is) {
              c.detail = "not qf, witnessed by " + cm.label + ": an indecomposable part (" +
                         mod_desc(p.part) + ") is neither " +
                         (!ps ? "projective nor small" : "injective nor singular");
              return;
            }
          }
        }
        failed(c, "ring is not qf, but every corpus module still splits as projective + small "
                  "and injective + singular");
      }
    });
  }
}

void suite_p23(Lab& lab, SuiteResult& out) {
  for (size_t i = 0; i < lab.size(); ++i) {
    run_one(out, lab.spec(i), [&](SuiteCheck& c) {
      TorsionAnalysis& ctx = lab.at(i);
      int agreed = 0;
      for (const CorpusModule& cm : ctx.module_corpus()) {
        bool perp = ctx.is_perp_torsion(cm.mod);
        bool clean = true;
        std::string how;
        SubmoduleSet lat = submodule_lattice(cm.mod, lab.limits);
        for (const Submodule& k : lat.members) {
          if (k.size() == cm.mod.size) continue;
          QuotientResult q = quotient_module(cm.mod, k);
          if (ctx.is_small_module(q.pres.mod)) {
            clean = false;
            how = "a kernel of size " + std::to_string(k.size()) +
                  " gives a small quotient of size " + std::to_string(q.pres.mod.size);
            break;
          }
        }
        if (perp != clean)
          return failed(c, cm.label + ": perp-torsion=" + yn(perp) + " but " +
                               (clean ? "no nonzero small quotient exists" : how));
        ++agreed;
      }
      c.detail = std::to_string(agreed) + " corpus modules agree";
    });
  }
}

void suite_l24(Lab& lab, SuiteResult& out) {
  for (size_t i = 0; i < lab.size(); ++i) {
    run_one(out, lab.spec(i), [&](SuiteCheck& c) {
      TorsionAnalysis& ctx = lab.at(i);
      const RingReport& rep = ctx.classify();
      bool lhs = true;
      std::string lhs_w;
      for (const CorpusModule& cm : ctx.module_corpus()) {
        bool tf = ctx.is_cg_torsionfree(cm.mod);
        bool perp = ctx.is_perp_torsion(cm.mod);
        if (tf != perp) {
          lhs = false;
          lhs_w = cm.label + " is torsionfree=" + yn(tf) + " but perp=" + yn(perp);
          break;
        }
      }
      bool hereditary = true;
      std::string her_w;
      for (const CorpusModule& cm : ctx.module_corpus()) {
        if (!ctx.is_perp_torsion(cm.mod)) continue;
        SubmoduleSet lat = submodule_lattice(cm.mod, lab.limits);
        for (const Submodule& k : lat.members) {
          if (!ctx.is_perp_torsion(sub_module(cm.mod, k).pres.mod)) {
            hereditary = false;
            her_w = "a size " + std::to_string(k.size()) + " submodule of the perp module " +
                    cm.label + " is not perp";
            break;
          }
        }
        if (!hereditary) break;
      }
      bool rhs = rep.verdict.cohereditary && hereditary;
      if (lhs != rhs)
        return failed(c, "torsionfree-equals-perp is " + std::string(yn(lhs)) +
                             (lhs_w.empty() ? "" : " (" + lhs_w + ")") +
                             ", but cohereditary=" + yn(rep.verdict.cohereditary) +
                             " with hereditary perp class=" + yn(hereditary));
      c.detail = lhs ? "both sides hold"
                     : "both sides fail (" + (lhs_w.empty() ? her_w : lhs_w) + ")";
    });
  }
}

void suite_p31(Lab& lab, SuiteResult& out) {
  for (size_t i = 0; i < lab.size(); ++i) {
    run_one(out, lab.spec(i), [&](SuiteCheck& c) {
      TorsionAnalysis& ctx = lab.at(i);
      const RingReport& rep = ctx.classify();
      bool a = rep.v_ring;
      bool b = rep.verdict.kind == TheoryKind::Trivial;
      bool d = ctx.is_perp_torsion(*ctx.homological().regular());
      if (a != b || b != d)
        return failed(c, "v_ring=" + std::string(yn(a)) + ", trivial theory=" + yn(b) +
                             ", regular module perp-torsion=" + yn(d));
      c.detail = std::string("all three ") + (a ? "hold" : "fail together");
    });
  }
}

void suite_p33(Lab& lab, SuiteResult& out) {
  for (size_t i = 0; i < lab.size(); ++i) {
    run_one(out, lab.spec(i), [&](SuiteCheck& c) {
      TorsionAnalysis& ctx = lab.at(i);
      const RingReport& rep = ctx.classify();
      RingAnalysis& homs = ctx.homological();
      HullResult h = homs.injective_hull(*homs.regular());
      bool hull_full_radical = homs.radical_of(h.hull).size() == h.hull.size;
      bool all_inj_full = true;
      std::string w;
      for (const CorpusModule& cm : ctx.module_corpus()) {
        if (cm.mod.size == 1 || !homs.is_injective(cm.mod)) continue;
        if (homs.radical_of(cm.mod).size() != cm.mod.size) {
          all_inj_full = false;
          w = cm.label;
          break;
        }
      }
      if (rep.small_ring != hull_full_radical || hull_full_radical != all_inj_full)
        return failed(c, "small_ring=" + std::string(yn(rep.small_ring)) +
                             ", hull of R has full radical=" + yn(hull_full_radical) +
                             ", every nonzero injective has full radical=" + yn(all_inj_full));
      c.detail = rep.small_ring
                     ? "all three characterizations hold"
                     : "all three characterizations fail" + (w.empty() ? "" : ", e.g. " + w +
                           " is injective with a proper radical");
    });
  }
}

void suite_p38(Lab& lab, SuiteResult& out) {
  for (size_t i = 0; i < lab.size(); ++i) {
    run_one(out, lab.spec(i), [&](SuiteCheck& c) {
      const RingReport& rep = lab.at(i).classify();
      if (!rep.local) {
        c.detail = "not local, vacuous";
        return;
      }
      if (rep.division) {
        c.detail = "local division ring";
        return;
      }
      TorsionAnalysis opctx(opposite_ring(lab.ring(i)), lab.limits);
      bool right = opctx.classify().almost_small;
      if (!rep.almost_small || !right)
        return failed(c, "local non-division ring, almost small on the left=" +
                             std::string(yn(rep.almost_small)) + " and on the right=" + yn(right));
      c.detail = "local non-division ring, almost small on both sides";
    });
  }
}

struct ProductCase {
  const char* left;
  const char* right;
  const char* prod;
};

const ProductCase kProducts[] = {
    {"GF(2)", "Z/4", "GF(2) x Z/4"},
    {"Z/4", "Z/9", "Z/4 x Z/9"},
    {"Tri(2, GF(2))", "GF(2)", "Tri(2, GF(2)) x GF(2)"},
};

RingReport component_report(Lab& lab, const std::string& spec) {
  int idx = find_spec(*lab.corpus, spec);
  if (idx >= 0) return lab.at(static_cast<size_t>(idx)).classify();
  TorsionAnalysis tmp(build_ring(spec), lab.limits);
  return tmp.classify();
}

void suite_l42(Lab& lab, SuiteResult& out) {
  bool any = false;
  for (const ProductCase& pc : kProducts) {
    if (find_spec(*lab.corpus, pc.prod) < 0) continue;
    any = true;
    run_one(out, pc.prod, [&](SuiteCheck& c) {
      int il = find_spec(*lab.corpus, pc.left);
      int ir = find_spec(*lab.corpus, pc.right);
      RingPtr a = il >= 0 ? lab.ring(static_cast<size_t>(il)) : build_ring(pc.left);
      RingPtr b = ir >= 0 ? lab.ring(static_cast<size_t>(ir)) : build_ring(pc.right);
      check(product_decomposition_check(a, b, lab.limits),
            "componentwise radical comparison failed");
      c.detail = "corpus modules over the product split componentwise with matching radicals";
    });
  }
  if (!any)
    run_one(out, "-", [](SuiteCheck& c) { c.detail = "no product rings in corpus, vacuous"; });
}

void suite_c43(Lab& lab, SuiteResult& out) {
  bool any = false;
  for (const ProductCase& pc : kProducts) {
    int ip = find_spec(*lab.corpus, pc.prod);
    if (ip < 0) continue;
    any = true;
    run_one(out, pc.prod, [&](SuiteCheck& c) {
      const RingReport& rp = lab.at(static_cast<size_t>(ip)).classify();
      RingReport ra = component_report(lab, pc.left);
      RingReport rb = component_report(lab, pc.right);
      bool splits_ok = rp.verdict.splits == (ra.verdict.splits && rb.verdict.splits);
      u64 rad = rp.verdict.radical_of_r.size();
      u64 rad_a = ra.verdict.radical_of_r.size(), rad_b = rb.verdict.radical_of_r.size();
      bool rad_ok = rad == rad_a * rad_b;
      TheoryKind want = TheoryKind::Proper;
      if (rad == rp.size)
        want = TheoryKind::Improper;
      else if (rad == 1)
        want = TheoryKind::Trivial;
      bool kind_ok = rp.verdict.kind == want;
      bool factors_ok = true;
      if (rp.verdict.splits) {
        factors_ok = rp.verdict.factors && ra.verdict.factors && rb.verdict.factors &&
                     rp.verdict.factors->torsion_factor->size ==
                         ra.verdict.factors->torsion_factor->size *
                             rb.verdict.factors->torsion_factor->size &&
                     rp.verdict.factors->torsionfree_factor->size ==
                         ra.verdict.factors->torsionfree_factor->size *
                             rb.verdict.factors->torsionfree_factor->size;
      }
      if (!(splits_ok && rad_ok && kind_ok && factors_ok))
        return failed(c, "splits matches=" + std::string(yn(splits_ok)) +
                             ", radical size matches=" + yn(rad_ok) + " (" +
                             std::to_string(rad) + " vs " + std::to_string(rad_a) + "*" +
                             std::to_string(rad_b) + "), kind matches=" + yn(kind_ok) +
                             ", factor sizes match=" + yn(factors_ok));
      c.detail = "splits, kind, radical size, and factor sizes all match the components";
    });
  }
  if (!any)
    run_one(out, "-", [](SuiteCheck& c) { c.detail = "no product rings in corpus, vacuous"; });
}

void suite_c44(Lab& lab, SuiteResult& out) {
  for (size_t i = 0; i < lab.size(); ++i) {
    run_one(out, lab.spec(i), [&](SuiteCheck& c) {
      if (!lab.ring(i)->commutative) {
        c.detail = "not commutative, vacuous";
        return;
      }
      TorsionAnalysis& ctx = lab.at(i);
      const RingReport& rep = ctx.classify();
      const FinModule& reg = *ctx.homological().regular();
      u64 t_expect = 1, s_expect = 1;
      bool all_local = true;
      int blocks = 0;
      for (const Elem& e : primitive_central_idempotents(*lab.ring(i))) {
        Submodule ideal = submodule_from_gens(reg, {e});
        RingPtr block = ideal_ring(lab.ring(i), ideal, e,
                                   rep.name + " block " + std::to_string(blocks));
        ++blocks;
        TorsionAnalysis bctx(block, lab.limits);
        const RingReport& br = bctx.classify();
        if (!br.local) all_local = false;
        if (br.jacobson_size > 1)
          t_expect *= br.size;
        else
          s_expect *= br.size;
      }
      bool sizes_ok = rep.verdict.splits && rep.verdict.factors &&
                      rep.verdict.factors->torsion_factor->size == t_expect &&
                      rep.verdict.factors->torsionfree_factor->size == s_expect;
      if (!all_local || !rep.product_of_local_rings || !sizes_ok)
        return failed(c, "blocks all local=" + std::string(yn(all_local)) +
                             ", classifier product_of_local_rings=" +
                             yn(rep.product_of_local_rings) + ", splits with factor sizes " +
                             std::to_string(t_expect) + "/" + std::to_string(s_expect) + "=" +
                             yn(sizes_ok));
      c.detail = std::to_string(blocks) + " local block(s); torsion factor size " +
                 std::to_string(t_expect) + ", torsionfree factor size " +
                 std::to_string(s_expect);
    });
  }
}

void suite_t45(Lab& lab, SuiteResult& out) {
  for (size_t i = 0; i < lab.size(); ++i) {
    run_one(out, lab.spec(i), [&](SuiteCheck& c) {
      TorsionAnalysis& ctx = lab.at(i);
      const RingReport& rep = ctx.classify();
      const FinModule& reg = *ctx.homological().regular();
      const RingPtr& r = lab.ring(i);
      bool lhs = rep.verdict.splits && rep.verdict.cohereditary;
      bool rhs = false;
      std::string which;
      for (const Elem& e : central_idempotents(*r)) {
        Submodule re = submodule_from_gens(reg, {e});
        Elem f = r->sub(r->unit, e);
        Submodule rf = submodule_from_gens(reg, {f});
        bool okt, oks;
        if (re.size() == 1)
          okt = true;
        else if (re.size() == rep.size)
          okt = rep.almost_small;
        else
          okt = TorsionAnalysis(ideal_ring(r, re, e, rep.name + " torsion part"), lab.limits)
                    .classify()
                    .almost_small;
        if (!okt) continue;
        if (rf.size() == 1)
          oks = true;
        else if (rf.size() == rep.size)
          oks = rep.semisimple;
        else
          oks = RingAnalysis(ideal_ring(r, rf, f, rep.name + " semisimple part"), lab.limits)
                    .jacobson_radical()
                    .size() == 1;
        if (oks) {
          rhs = true;
          which = "a central idempotent cuts R into an almost small part of size " +
                  std::to_string(re.size()) + " and a semisimple part of size " +
                  std::to_string(rf.size());
          break;
        }
      }
      if (lhs != rhs)
        return failed(c, "splits-and-cohereditary=" + std::string(yn(lhs)) +
                             " but almost-small-by-semisimple decomposition exists=" + yn(rhs));
      c.detail = lhs ? which : "neither side holds";
    });
  }
}

void suite_p46(Lab& lab, SuiteResult& out) {
  for (size_t i = 0; i < lab.size(); ++i) {
    run_one(out, lab.spec(i), [&](SuiteCheck& c) {
      TorsionAnalysis& ctx = lab.at(i);
      const RingReport& rep = ctx.classify();
      RingAnalysis& homs = ctx.homological();
      bool clean = true;
      std::string w;
      int scanned = 0;
      for (const CorpusModule& cm : ctx.module_corpus()) {
        if (!ctx.is_cg_torsionfree(cm.mod)) continue;
        HullResult h = homs.injective_hull(cm.mod);
        Submodule image = kernel_image(h.into).second;
        QuotientResult q = quotient_module(h.hull, image);
        ++scanned;
        if (ctx.zstar(q.pres.mod).size() != 1) {
          clean = false;
          w = cm.label + ": the quotient of the hull by the module has nonzero zstar";
          break;
        }
      }
      if (rep.verdict.cohereditary != clean)
        return failed(c, "cohereditary=" + std::string(yn(rep.verdict.cohereditary)) +
                             " but hull quotients of torsionfree modules are zstar-free=" +
                             yn(clean) + (w.empty() ? "" : " (" + w + ")"));
      c.detail = std::to_string(scanned) + " torsionfree corpus modules scanned, both sides " +
                 (clean ? "hold" : "fail");
    });
  }
}

void suite_t47(Lab& lab, SuiteResult& out) {
  for (size_t i = 0; i < lab.size(); ++i) {
    run_one(out, lab.spec(i), [&](SuiteCheck& c) {
      TorsionAnalysis& ctx = lab.at(i);
      const RingReport& rep = ctx.classify();
      RingAnalysis& homs = ctx.homological();
      bool e_all = true, h_all = true;
      for (const FinModule& s : homs.simples()) {
        if (!homs.is_injective(s)) continue;
        if (!homs.is_projective(s)) e_all = false;
        if (hom_count(s, *homs.regular()).is_one()) h_all = false;
      }
      if (e_all != h_all)
        return failed(c, "injective simples all projective=" + std::string(yn(e_all)) +
                             " but injective simples all embed in R=" + yn(h_all));
      if (e_all != rep.verdict.splits)
        return failed(c, "verdict splits=" + std::string(yn(rep.verdict.splits)) +
                             " but the injective simple scan says " + yn(e_all));
      if (rep.verdict.splits) {
        if (!rep.verdict.stable)
          return failed(c, "splits but the torsion class is not closed under injective hulls");
        if (!rep.verdict.goldie_leq_cg)
          return failed(c, "splits but some corpus module has goldie radical outside the "
                           "cg radical");
        for (const CorpusModule& cm : ctx.module_corpus()) {
          Submodule t = ctx.cg_radical(cm.mod);
          SubmoduleSet lat = submodule_lattice(cm.mod, lab.limits);
          bool has_complement = false;
          for (const Submodule& k : lat.members) {
            if (k.size() * t.size() != cm.mod.size) continue;
            if (submodule_intersection(cm.mod, t, k).size() != 1) continue;
            if (submodule_sum(cm.mod, t, k).size() != cm.mod.size) continue;
            has_complement = true;
            break;
          }
          if (!has_complement)
            return failed(c, cm.label + ": the cg radical of size " + std::to_string(t.size()) +
                                 " is not a direct summand");
          if (ctx.is_cg_torsionfree(cm.mod) && !homs.is_projective(cm.mod))
            return failed(c, cm.label + ": torsionfree but not projective");
          if (ctx.is_singular_module(cm.mod) && !ctx.is_cg_torsion(cm.mod))
            return failed(c, cm.label + ": singular but not torsion");
        }
        c.detail = "splits: radicals are summands, the theory is stable, torsionfree corpus "
                   "modules are projective, singular ones are torsion";
      } else {
        if (rep.verdict.stable)
          return failed(c, "does not split but the torsion class is closed under hulls");
        if (rep.verdict.goldie_leq_cg)
          return failed(c, "does not split but the goldie radical stays inside the cg radical");
        if (!rep.verdict.failing_simple)
          return failed(c, "does not split but no failing simple was recorded");
        const FinModule& fs = *rep.verdict.failing_simple;
        bool inj = homs.is_injective(fs);
        bool proj = homs.is_projective(fs);
        bool tf_not_proj = ctx.is_cg_torsionfree(fs) && !proj;
        bool sing_not_tor = ctx.is_singular_module(fs) && !ctx.is_cg_torsion(fs);
        if (!inj || proj || !tf_not_proj || !sing_not_tor)
          return failed(c, "failing simple: injective=" + std::string(yn(inj)) +
                               ", projective=" + yn(proj) +
                               ", torsionfree-not-projective=" + yn(tf_not_proj) +
                               ", singular-not-torsion=" + yn(sing_not_tor));
        c.detail = "does not split: an injective non-projective simple refutes summand "
                   "splitting, torsionfree implies projective, and singular implies torsion";
      }
    });
  }
}

void suite_p410(Lab& lab, SuiteResult& out) {
  for (size_t i = 0; i < lab.size(); ++i) {
    run_one(out, lab.spec(i), [&](SuiteCheck& c) {
      const RingReport& rep = lab.at(i).classify();
      if (rep.double_annihilator && !rep.kasch)
        return failed(c, "the radical is a double annihilator but the ring is not kasch");
      c.detail = std::string("double_annihilator=") + yn(rep.double_annihilator) +
                 ", kasch=" + yn(rep.kasch);
    });
  }
}

void suite_p412(Lab& lab, SuiteResult& out) {
  for (size_t i = 0; i < lab.size(); ++i) {
    run_one(out, lab.spec(i), [&](SuiteCheck& c) {
      const RingReport& rep = lab.at(i).classify();
      if (rep.socle_right_in_left && !rep.verdict.splits)
        return failed(c, "the right socle sits inside the left socle but the theory does "
                         "not split");
      c.detail = std::string("socle_right_in_left=") + yn(rep.socle_right_in_left) +
                 ", splits=" + yn(rep.verdict.splits);
    });
  }
}

void suite_r411(Lab& lab, SuiteResult& out) {
  const std::string canon = parse_ring_spec("Tri(2, GF(2))")->str();
  bool found = false;
  for (size_t i = 0; i < lab.size(); ++i) {
    bool match = false;
    try {
      match = parse_ring_spec(lab.spec(i))->str() == canon;
    } catch (const Error&) {
    }
    if (!match) continue;
    found = true;
    run_one(out, lab.spec(i), [&](SuiteCheck& c) {
      TorsionAnalysis& ctx = lab.at(i);
      const RingReport& rep = ctx.classify();
      RingAnalysis& homs = ctx.homological();
      if (rep.verdict.splits) return failed(c, "expected the theory not to split");
      if (!rep.verdict.failing_simple) return failed(c, "no failing simple was recorded");
      const FinModule& fs = *rep.verdict.failing_simple;
      bool inj = homs.is_injective(fs);
      bool proj = homs.is_projective(fs);
      QuotientResult q = quotient_module(*homs.regular(), homs.left_socle());
      bool iso = are_isomorphic(fs, q.pres.mod, lab.limits);
      if (!inj || proj || !iso)
        return failed(c, "witness simple: injective=" + std::string(yn(inj)) +
                             ", projective=" + yn(proj) +
                             ", isomorphic to R/soc(R)=" + yn(iso));
      c.detail = "does not split; the witness simple is injective, not projective, and "
                 "isomorphic to R/soc(R)";
    });
  }
  if (!found)
    run_one(out, "Tri(2, GF(2))", [](SuiteCheck& c) {
      c.outcome = Outcome::Skipped;
      c.detail = "ring not in corpus";
    });
}

void suite_openq(Lab& lab, SuiteResult& out) {
  for (size_t i = 0; i < lab.size(); ++i) {
    run_one(out, lab.spec(i), [&](SuiteCheck& c) {
      const RingReport& rep = lab.at(i).classify();
      if (rep.verdict.splits && !rep.verdict.cohereditary)
        return failed(c, "splits without being cohereditary");
      c.detail = std::string("splits=") + yn(rep.verdict.splits) +
                 ", cohereditary=" + yn(rep.verdict.cohereditary);
    });
  }
}

struct SuiteDef {
  const char* id;
  const char* title;
  void (*run)(Lab&, SuiteResult&);
};

const SuiteDef kSuites[] = {
    {"T1.1", "qf rings: modules split as projective + small and injective + singular",
     suite_t11},
    {"P2.3ab", "perp-torsion modules are exactly those without nonzero small quotients",
     suite_p23},
    {"L2.4",
     "torsionfree coincides with the perp class iff cohereditary with a hereditary perp class",
     suite_l24},
    {"P3.1", "trivial theory, v-ring, and perp-torsion regular module agree", suite_p31},
    {"P3.3", "no nonzero finite ring is a small ring", suite_p33},
    {"P3.8", "local rings are division rings or almost small on both sides", suite_p38},
    {"L4.2", "modules over a product ring decompose componentwise", suite_l42},
    {"C4.3", "product ring verdicts match the component verdicts", suite_c43},
    {"C4.4", "commutative rings split along their local block decomposition", suite_c44},
    {"T4.5", "splitting with cohereditary equals an almost-small by semisimple decomposition",
     suite_t45},
    {"P4.6", "cohereditary iff hull quotients of torsionfree modules have zero zstar",
     suite_p46},
    {"T4.7",
     "splitting equivalences: injective simples, summands, stability, projectivity, singularity",
     suite_t47},
    {"P4.10", "a double-annihilator radical forces a kasch ring", suite_p410},
    {"P4.12", "right socle inside left socle forces splitting", suite_p412},
    {"R4.11", "upper triangular 2x2 over GF(2) does not split", suite_r411},
    {"OPEN-Q", "no ring splits without being cohereditary", suite_openq},
};

Outcome aggregate_outcome(const std::vector<SuiteCheck>& checks) {
  Outcome out = Outcome::Passed;
  for (const SuiteCheck& c : checks) {
    if (c.outcome == Outcome::Failed) return Outcome::Failed;
    if (c.outcome == Outcome::Skipped) out = Outcome::Skipped;
  }
  return out;
}

json classifiers_json(const RingReport& r) {
  return json{{"almost_small", r.almost_small},
              {"corpus_fallback", r.corpus_fallback},
              {"division", r.division},
              {"double_annihilator", r.double_annihilator},
              {"jacobson_size", r.jacobson_size},
              {"kasch", r.kasch},
              {"left_socle_size", r.left_socle_size},
              {"local", r.local},
              {"product_of_local_rings", r.product_of_local_rings},
              {"qf", r.qf},
              {"right_socle_size", r.right_socle_size},
              {"semisimple", r.semisimple},
              {"simple_count", r.simple_count},
              {"size", r.size},
              {"small_ring", r.small_ring},
              {"socle_left_in_right", r.socle_left_in_right},
              {"socle_right_in_left", r.socle_right_in_left},
              {"v_ring", r.v_ring}};
}

json verdict_json(const TorsionVerdict& v) {
  json j{{"cohereditary", v.cohereditary}, {"goldie_leq_cg", v.goldie_leq_cg},
         {"kind", kind_name(v.kind)},      {"radical_size", v.radical_of_r.size()},
         {"splits", v.splits},             {"stable", v.stable},
         {"witness", v.witness}};
  if (v.factors)
    j["factors"] = json{{"torsion", json{{"name", v.factors->torsion_factor->name},
                                         {"size", v.factors->torsion_factor->size}}},
                        {"torsionfree", json{{"name", v.factors->torsionfree_factor->name},
                                             {"size", v.factors->torsionfree_factor->size}}}};
  else
    j["factors"] = nullptr;
  if (v.failing_simple)
    j["failing_simple"] = json{{"additive", additive_desc(v.failing_simple->orders)},
                               {"size", v.failing_simple->size}};
  else
    j["failing_simple"] = nullptr;
  return j;
}

std::string pad(const std::string& s, size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

const char* outcome_tag(Outcome o) {
  switch (o) {
    case Outcome::Passed: return "ok  ";
    case Outcome::Failed: return "FAIL";
    case Outcome::Skipped: return "skip";
  }
  return "?";
}

}  // namespace

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Passed: return "passed";
    case Outcome::Failed: return "failed";
    case Outcome::Skipped: return "skipped";
  }
  return "unknown";
}

Corpus default_corpus() {
  static const char* kSpecs[] = {
      "Z/2",
      "Z/3",
      "Z/4",
      "Z/5",
      "Z/6",
      "Z/8",
      "Z/9",
      "Z/12",
      "Z/16",
      "GF(2)",
      "GF(3)",
      "GF(4)",
      "GF(8)",
      "GF(9)",
      "GF(2)[x]/(x^2)",
      "GF(2)[x]/(x^3)",
      "GF(3)[x]/(x^2)",
      "Mat(2, GF(2))",
      "Tri(2, GF(2))",
      "Tri(2, GF(3))",
      "op(Tri(2, GF(2)))",
      "GF(2) x Z/4",
      "Z/4 x Z/9",
      "Tri(2, GF(2)) x GF(2)",
  };
  Corpus corpus;
  for (const char* spec : kSpecs) {
    corpus.specs.emplace_back(spec);
    corpus.rings.push_back(build_ring(spec));
  }
  return corpus;
}

Corpus corpus_from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot read corpus file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = trimmed(buf.str());
  if (text.empty()) fail(ErrorKind::ParseError, "corpus file '" + path + "' is empty");

  Corpus corpus;
  if (text[0] == '[' || text[0] == '{') {
    try {
      json doc = json::parse(text);
      if (!doc.is_array()) doc = json::array({doc});
      for (const json& entry : doc) {
        if (entry.is_string()) {
          std::string spec = entry.get<std::string>();
          corpus.specs.push_back(spec);
          corpus.rings.push_back(build_ring(spec));
          continue;
        }
        std::string name = entry.at("name").get<std::string>();
        Vec orders = entry.at("orders").get<Vec>();
        Vec unit = entry.at("unit").get<Vec>();
        auto mult = entry.at("mult").get<std::vector<std::vector<Vec>>>();
        corpus.rings.push_back(make_ring(name, std::move(orders), std::move(mult),
                                         std::move(unit)));
        corpus.specs.push_back(name);
      }
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      fail(ErrorKind::ParseError, "corpus file '" + path + "': " + e.what());
    }
  } else {
    std::istringstream lines(buf.str());
    std::string line;
    while (std::getline(lines, line)) {
      std::string spec = trimmed(line);
      if (spec.empty() || spec[0] == '#') continue;
      corpus.specs.push_back(spec);
      corpus.rings.push_back(build_ring(spec));
    }
  }
  if (corpus.rings.empty())
    fail(ErrorKind::ParseError, "corpus file '" + path + "' contains no rings");
  return corpus;
}

const std::vector<std::string>& all_suite_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const SuiteDef& def : kSuites) v.emplace_back(def.id);
    return v;
  }();
  return ids;
}

CheckRun run_suites(const Corpus& corpus, const std::vector<std::string>& suite_ids,
                    const Limits& limits) {
  std::vector<const SuiteDef*> chosen;
  for (const std::string& id : suite_ids) {
    const SuiteDef* hit = nullptr;
    for (const SuiteDef& def : kSuites)
      if (id == def.id) hit = &def;
    if (!hit) {
      std::string valid;
      for (const SuiteDef& def : kSuites) valid += std::string(valid.empty() ? "" : ", ") + def.id;
      fail(ErrorKind::UnknownSuite, "unknown suite '" + id + "' (valid ids: " + valid + ")");
    }
    if (std::find(chosen.begin(), chosen.end(), hit) == chosen.end()) chosen.push_back(hit);
  }

  CheckRun run;
  Lab lab;
  lab.corpus = &corpus;
  lab.limits = limits;
  lab.ctxs.resize(corpus.rings.size());

  for (size_t i = 0; i < corpus.rings.size(); ++i) {
    run.rings.push_back(corpus.specs[i]);
    auto t0 = std::chrono::steady_clock::now();
    RingReport rep;
    try {
      rep = lab.at(i).classify();
    } catch (const Error& e) {
      rep.name = corpus.specs[i];
      rep.size = corpus.rings[i]->size;
      rep.verdict.witness = std::string("classification incomplete: ") + e.what();
    }
    auto dt = std::chrono::steady_clock::now() - t0;
    run.ring_millis.push_back(
        std::chrono::duration_cast<std::chrono::milliseconds>(dt).count());
    run.reports.push_back(std::move(rep));
  }

  for (const SuiteDef* def : chosen) {
    SuiteResult res;
    res.id = def->id;
    res.title = def->title;
    def->run(lab, res);
    res.outcome = aggregate_outcome(res.checks);
    run.suites.push_back(std::move(res));
  }

  bool any_fail = false, any_skip = false;
  for (const SuiteResult& res : run.suites)
    for (const SuiteCheck& c : res.checks) {
      any_fail = any_fail || c.outcome == Outcome::Failed;
      any_skip = any_skip || c.outcome == Outcome::Skipped;
    }
  run.exit_code = any_fail ? 1 : any_skip ? 3 : 0;
  return run;
}

RingReport analyze_ring(const std::string& spec, const Limits& limits) {
  TorsionAnalysis ctx(build_ring(spec), limits);
  return ctx.classify();
}

std::string additive_desc(const Vec& orders) {
  std::multiset<i64> cyclic;
  for (i64 n : orders) {
    i64 m = n;
    for (i64 p = 2; p * p <= m; ++p) {
      if (m % p) continue;
      i64 q = 1;
      while (m % p == 0) {
        q *= p;
        m /= p;
      }
      cyclic.insert(q);
    }
    if (m > 1) cyclic.insert(m);
  }
  if (cyclic.empty()) return "0";
  std::string out;
  for (i64 q : cyclic) out += (out.empty() ? "Z/" : " x Z/") + std::to_string(q);
  return out;
}

std::string report_text(const RingReport& r) {
  std::ostringstream out;
  const TorsionVerdict& v = r.verdict;
  out << r.name << "\n";
  out << "  size " << r.size << ", " << r.simple_count << " simple module(s), jacobson radical "
      << r.jacobson_size << ", left socle " << r.left_socle_size << ", right socle "
      << r.right_socle_size << "\n";
  out << "  classifiers: semisimple=" << yn(r.semisimple) << " local=" << yn(r.local)
      << " division=" << yn(r.division) << " v_ring=" << yn(r.v_ring)
      << " kasch=" << yn(r.kasch) << " qf=" << yn(r.qf) << "\n";
  out << "               small_ring=" << yn(r.small_ring)
      << " almost_small=" << yn(r.almost_small)
      << " product_of_local_rings=" << yn(r.product_of_local_rings) << "\n";
  out << "               socle_right_in_left=" << yn(r.socle_right_in_left)
      << " socle_left_in_right=" << yn(r.socle_left_in_right)
      << " double_annihilator=" << yn(r.double_annihilator) << "\n";
  out << "  torsion theory: kind=" << kind_name(v.kind) << " splits=" << yn(v.splits)
      << " cohereditary=" << yn(v.cohereditary) << " stable=" << yn(v.stable)
      << " goldie_leq_cg=" << yn(v.goldie_leq_cg) << "\n";
  out << "  radical of R: size " << v.radical_of_r.size() << "\n";
  if (v.factors)
    out << "  factors: torsion " << v.factors->torsion_factor->name << " (size "
        << v.factors->torsion_factor->size << "), torsionfree "
        << v.factors->torsionfree_factor->name << " (size "
        << v.factors->torsionfree_factor->size << ")\n";
  if (v.failing_simple) out << "  failing simple: " << mod_desc(*v.failing_simple) << "\n";
  if (r.corpus_fallback) out << "  corpus built from R alone (R + R exceeded a cutoff)\n";
  if (!v.witness.empty()) out << "  witness: " << v.witness << "\n";
  return out.str();
}

std::string report_json(const RingReport& report, i64 millis) {
  json j{{"classifiers", classifiers_json(report)},
         {"ring", report.name},
         {"verdict", verdict_json(report.verdict)}};
  j["timing"] = json{{"millis", millis}};
  return j.dump(2) + "\n";
}

std::string check_text(const CheckRun& run) {
  std::ostringstream out;
  int passed = 0, failures = 0, skipped = 0;
  for (const SuiteResult& res : run.suites)
    for (const SuiteCheck& c : res.checks) {
      out << outcome_tag(c.outcome) << "  " << pad(res.id, 7) << "  " << c.ring << "\n";
      if (c.outcome == Outcome::Passed) ++passed;
      if (c.outcome == Outcome::Failed) ++failures;
      if (c.outcome == Outcome::Skipped) ++skipped;
    }
  bool header = false;
  for (const SuiteResult& res : run.suites)
    for (const SuiteCheck& c : res.checks) {
      if (c.outcome == Outcome::Passed) continue;
      if (!header) {
        out << "\nwitnesses:\n";
        header = true;
      }
      out << "  [" << res.id << "] " << c.ring << ": " << c.detail << "\n";
    }
  out << "\n" << (passed + failures + skipped) << " checks: " << passed << " passed, "
      << failures << " failed, " << skipped << " skipped\n";
  return out.str();
}

std::string check_json(const CheckRun& run) {
  json rings = json::array();
  for (size_t i = 0; i < run.rings.size(); ++i)
    rings.push_back(json{{"classifiers", classifiers_json(run.reports[i])},
                         {"ring", run.rings[i]},
                         {"verdict", verdict_json(run.reports[i].verdict)}});
  json theorems = json::array();
  json witnesses = json::array();
  int passed = 0, failures = 0, skipped = 0;
  for (const SuiteResult& res : run.suites) {
    json checks = json::array();
    for (const SuiteCheck& c : res.checks) {
      checks.push_back(json{{"detail", c.detail},
                            {"outcome", outcome_name(c.outcome)},
                            {"ring", c.ring}});
      if (c.outcome == Outcome::Passed) ++passed;
      if (c.outcome == Outcome::Failed) ++failures;
      if (c.outcome == Outcome::Skipped) ++skipped;
      if (c.outcome != Outcome::Passed)
        witnesses.push_back(json{{"detail", c.detail},
                                 {"outcome", outcome_name(c.outcome)},
                                 {"ring", c.ring},
                                 {"theorem", res.id}});
    }
    theorems.push_back(json{{"checks", checks},
                            {"id", res.id},
                            {"outcome", outcome_name(res.outcome)},
                            {"title", res.title}});
  }
  json j{{"rings", rings},
         {"summary", json{{"exit_code", run.exit_code},
                          {"failed", failures},
                          {"passed", passed},
                          {"skipped", skipped}}},
         {"theorems", theorems},
         {"witnesses", witnesses}};
  json millis = json::object();
  i64 total = 0;
  for (size_t i = 0; i < run.rings.size(); ++i) {
    millis[run.rings[i]] = run.ring_millis[i];
    total += run.ring_millis[i];
  }
  j["timing"] = json{{"ring_millis", millis}, {"total_millis", total}};
  return j.dump(2) + "\n";
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out.good()) fail(ErrorKind::IoError, "failed while writing '" + path + "'");
}

namespace {

FinModule build_module_term(TorsionAnalysis& ctx, const std::string& raw) {
  std::string t = trimmed(raw);
  RingAnalysis& homs = ctx.homological();
  if (t == "R") return *homs.regular();
  if (t == "R/rad") return quotient_module(*homs.regular(), homs.jacobson_radical()).pres.mod;
  if (t == "R/soc") return quotient_module(*homs.regular(), homs.left_socle()).pres.mod;
  if (t.rfind("simple:", 0) == 0) {
    const std::string digits = t.substr(7);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      fail(ErrorKind::ParseError, "bad simple index in module spec '" + t + "'");
    int idx = std::stoi(digits);
    const std::vector<FinModule>& sims = homs.simples();
    if (idx >= static_cast<int>(sims.size()))
      fail(ErrorKind::ParseError, "module spec '" + t + "' out of range: the ring has " +
                                      std::to_string(sims.size()) + " simple module(s)");
    return sims[static_cast<size_t>(idx)];
  }
  if (t.rfind("hull(", 0) == 0 && t.back() == ')')
    return homs.injective_hull(build_module(ctx, t.substr(5, t.size() - 6))).hull;
  fail(ErrorKind::ParseError, "unrecognized module spec '" + t +
                                  "' (expected R, R/rad, R/soc, simple:<i>, hull(...), or a "
                                  "sum of those)");
}

}  // namespace

FinModule build_module(TorsionAnalysis& ctx, const std::string& spec) {
  std::vector<std::string> terms;
  std::string cur;
  int depth = 0;
  for (char ch : spec) {
    if (ch == '(') ++depth;
    if (ch == ')') {
      --depth;
      if (depth < 0) fail(ErrorKind::ParseError, "unbalanced parentheses in module spec");
    }
    if (ch == '+' && depth == 0) {
      terms.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (depth != 0) fail(ErrorKind::ParseError, "unbalanced parentheses in module spec");
  terms.push_back(cur);
  std::vector<FinModule> parts;
  for (const std::string& t : terms) {
    if (trimmed(t).empty()) fail(ErrorKind::ParseError, "empty summand in module spec");
    parts.push_back(build_module_term(ctx, t));
  }
  if (parts.size() == 1) return parts[0];
  return direct_sum_many(ctx.ring(), parts, ctx.limits()).module;
}

namespace {

struct PredicateParser {
  const RingReport& rep;
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  bool peek(char ch) {
    skip_ws();
    return pos < s.size() && s[pos] == ch;
  }
  bool eat(char ch) {
    if (!peek(ch)) return false;
    ++pos;
    return true;
  }

  bool lookup(const std::string& name) {
    const TorsionVerdict& v = rep.verdict;
    if (name == "semisimple") return rep.semisimple;
    if (name == "local") return rep.local;
    if (name == "division") return rep.division;
    if (name == "v_ring") return rep.v_ring;
    if (name == "kasch") return rep.kasch;
    if (name == "qf") return rep.qf;
    if (name == "small_ring") return rep.small_ring;
    if (name == "almost_small") return rep.almost_small;
    if (name == "product_of_local_rings") return rep.product_of_local_rings;
    if (name == "socle_right_in_left") return rep.socle_right_in_left;
    if (name == "socle_left_in_right") return rep.socle_left_in_right;
    if (name == "double_annihilator") return rep.double_annihilator;
    if (name == "corpus_fallback") return rep.corpus_fallback;
    if (name == "splits") return v.splits;
    if (name == "cohereditary") return v.cohereditary;
    if (name == "stable") return v.stable;
    if (name == "goldie_leq_cg") return v.goldie_leq_cg;
    if (name == "trivial") return v.kind == TheoryKind::Trivial;
    if (name == "improper") return v.kind == TheoryKind::Improper;
    if (name == "proper") return v.kind == TheoryKind::Proper;
    std::string known;
    for (const std::string& n : predicate_names())
      known += (known.empty() ? "" : ", ") + n;
    fail(ErrorKind::ParseError, "unknown classifier '" + name + "' (known: " + known + ")");
  }

  bool parse_atom() {
    skip_ws();
    if (eat('!')) return !parse_atom();
    if (eat('(')) {
      bool v = parse_or();
      if (!eat(')')) fail(ErrorKind::ParseError, "expected ')' in predicate");
      return v;
    }
    size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' || s[pos] == '.'))
      ++pos;
    if (pos == start) fail(ErrorKind::ParseError, "expected a classifier name in predicate");
    return lookup(s.substr(start, pos - start));
  }

  bool parse_and() {
    bool v = parse_atom();
    while (eat('&')) {
      bool w = parse_atom();
      v = v && w;
    }
    return v;
  }

  bool parse_or() {
    bool v = parse_and();
    while (eat('|')) {
      bool w = parse_and();
      v = v || w;
    }
    return v;
  }
};

}  // namespace

bool eval_predicate(const RingReport& report, const std::string& expr) {
  PredicateParser parser{report, expr};
  bool v = parser.parse_or();
  if (!parser.done())
    fail(ErrorKind::ParseError, "trailing input in predicate at position " +
                                    std::to_string(parser.pos));
  return v;
}

const std::vector<std::string>& predicate_names() {
  static const std::vector<std::string> names = {
      "almost_small",        "cohereditary",
      "corpus_fallback",     "division",
      "double_annihilator",  "goldie_leq_cg",
      "improper",            "kasch",
      "local",               "product_of_local_rings",
      "proper",              "qf",
      "semisimple",          "small_ring",
      "socle_left_in_right", "socle_right_in_left",
      "splits",              "stable",
      "trivial",             "v_ring",
  };
  return names;
}

}  // namespace ringlab

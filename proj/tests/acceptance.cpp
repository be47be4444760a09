#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ringlab/builder.hpp"
#include "ringlab/errors.hpp"
#include "ringlab/labcli.hpp"
#include "ringlab/torsion.hpp"

using namespace ringlab;

namespace {

#ifndef RINGLAB_CLI_PATH
#define RINGLAB_CLI_PATH ""
#endif
constexpr const char* kCli = RINGLAB_CLI_PATH;

void req(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

int run_cli(const std::string& args) {
  req(kCli[0] != '\0', "cli path not configured");
  std::string cmd = std::string(kCli) + " " + args;
  int st = std::system(cmd.c_str());
  req(st != -1, "failed to launch " + cmd);
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  req(static_cast<bool>(in), "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Ctx {
  Corpus corpus = default_corpus();
  Limits lim;
  std::vector<std::shared_ptr<TorsionAnalysis>> slots;

  Ctx() : slots(corpus.rings.size()) {}

  TorsionAnalysis& at(size_t i) {
    if (!slots[i]) slots[i] = std::make_shared<TorsionAnalysis>(corpus.rings[i], lim);
    return *slots[i];
  }

  size_t index_of(const std::string& spec) const {
    for (size_t i = 0; i < corpus.specs.size(); ++i)
      if (corpus.specs[i] == spec) return i;
    throw std::runtime_error("spec not in default corpus: " + spec);
  }

  TorsionAnalysis& named(const std::string& spec) { return at(index_of(spec)); }
};

struct Gate {
  Ctx ctx;
  int failures = 0;

  void criterion(int num, const char* title, const std::function<std::string(Ctx&)>& body,
                 double budget_secs = 0.0) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = body(ctx);
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && budget_secs > 0.0 && secs > budget_secs) {
      ok = false;
      detail = "exceeded the " + std::to_string(static_cast<int>(budget_secs)) + "s budget";
    }
    std::printf("%s %2d  %-58s %6.1fs  %s\n", ok ? "pass" : "FAIL", num, title, secs,
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

bool module_has_summand(const FinModule& m, const Submodule& t, const Limits& lim) {
  if (t.size() == 1 || t.size() == m.size) return true;
  SubmoduleSet lat = submodule_lattice(m, lim);
  for (const Submodule& k : lat.members) {
    if (k.size() * t.size() != m.size) continue;
    if (submodule_intersection(m, k, t).size() == 1 &&
        submodule_sum(m, k, t).size() == m.size)
      return true;
  }
  return false;
}

std::string c1_witness_ring(Ctx& ctx) {
  const std::string out = "acceptance_c1.json";
  int rc = run_cli("analyze \"Tri(2,GF(2))\" --format json --out " + out);
  req(rc == 0, "analyze exited with " + std::to_string(rc));
  nlohmann::json j = nlohmann::json::parse(slurp(out));
  std::remove(out.c_str());
  req(j["verdict"]["splits"] == false, "cli reports splits != false");
  req(!j["verdict"]["failing_simple"].is_null(), "cli reports no failing simple");

  TorsionAnalysis& t = ctx.named("Tri(2, GF(2))");
  const TorsionVerdict& v = t.cg_splitting();
  req(!v.splits, "in-process verdict splits");
  req(v.failing_simple.has_value(), "no failing simple recorded");
  RingAnalysis& h = t.homological();
  FinModule rsoc = quotient_module(*h.regular(), h.left_socle()).pres.mod;
  req(are_isomorphic(*v.failing_simple, rsoc, ctx.lim),
      "failing simple is not isomorphic to R/soc(R)");
  req(h.is_injective(*v.failing_simple), "failing simple is not injective");
  req(!h.is_projective(*v.failing_simple), "failing simple is projective");
  return "splits=no; failing simple of size " + std::to_string(v.failing_simple->size) +
         " is R/soc(R), injective and not projective";
}

u64 unit_count(const FiniteRing& r) {
  u64 units = 0;
  for (u64 a = 0; a < r.size; ++a) {
    Elem x = r.decode(a);
    for (u64 b = 0; b < r.size; ++b) {
      Elem y = r.decode(b);
      if (r.mul(x, y) == r.unit && r.mul(y, x) == r.unit) {
        ++units;
        break;
      }
    }
  }
  return units;
}

std::string c2_local_rings(Ctx& ctx) {
  const std::set<std::string> expected = {"Z/4",  "Z/8", "Z/9", "Z/16", "GF(2)[x]/(x^2)",
                                          "GF(2)[x]/(x^3)", "GF(3)[x]/(x^2)"};
  std::set<std::string> found;
  for (size_t i = 0; i < ctx.corpus.rings.size(); ++i) {
    const FiniteRing& r = *ctx.corpus.rings[i];
    u64 units = unit_count(r);
    bool division = units == r.size - 1;
    bool local = units == r.size - ctx.at(i).homological().jacobson_radical().size();
    if (!local || division) continue;
    found.insert(ctx.corpus.specs[i]);
    const RingReport& rep = ctx.at(i).classify();
    req(rep.local && !rep.division, ctx.corpus.specs[i] + ": classifier disagrees on local");
    req(rep.verdict.kind == TheoryKind::Improper, ctx.corpus.specs[i] + ": kind is not improper");
    req(rep.verdict.radical_of_r.size() == rep.size,
        ctx.corpus.specs[i] + ": radical of R is proper");
  }
  req(found == expected, "local non-division set differs from the expected seven");
  return std::to_string(found.size()) + " local non-division rings, all with improper theory";
}

std::string c3_semisimple_rings(Ctx& ctx) {
  const std::set<std::string> expected = {"Z/2",   "Z/3",   "Z/5",   "Z/6",  "GF(2)",
                                          "GF(3)", "GF(4)", "GF(8)", "GF(9)", "Mat(2, GF(2))"};
  std::set<std::string> found;
  for (size_t i = 0; i < ctx.corpus.rings.size(); ++i) {
    TorsionAnalysis& t = ctx.at(i);
    const RingReport& rep = t.classify();
    bool trivial = rep.verdict.kind == TheoryKind::Trivial;
    bool perp = t.is_perp_torsion(*t.homological().regular());
    req(rep.v_ring == trivial && trivial == perp,
        ctx.corpus.specs[i] + ": the three trivial-theory predicates disagree");
    if (rep.semisimple) {
      found.insert(ctx.corpus.specs[i]);
      req(trivial, ctx.corpus.specs[i] + ": semisimple but theory not trivial");
    }
  }
  req(found == expected, "semisimple set differs from the expected ten");
  return std::to_string(found.size()) +
         " semisimple rings trivial; predicates agree on all " +
         std::to_string(ctx.corpus.rings.size()) + " rings";
}

std::string c4_zstar_identity(Ctx& ctx) {
  int modules = 0;
  for (size_t i = 0; i < ctx.corpus.rings.size(); ++i) {
    TorsionAnalysis& t = ctx.at(i);
    RingAnalysis& h = t.homological();
    for (const CorpusModule& cm : t.module_corpus()) {
      const FinModule& m = cm.mod;
      Submodule zs = t.zstar(m);
      HullResult hr = h.injective_hull(m);
      Submodule rad = h.radical_of(hr.hull);
      std::vector<u64> hull_route;
      for (u64 c = 0; c < m.size; ++c)
        if (rad.contains_code(hr.hull.encode(hr.into.apply(m.decode(c)))))
          hull_route.push_back(c);
      req(hull_route == zs.elems,
          ctx.corpus.specs[i] + " / " + cm.label + ": hull route disagrees with small-sum route");
      Submodule cg = t.cg_radical(m);
      if (cg.size() > 1) {
        SubResult inside = sub_module(m, cg);
        std::vector<Elem> gens;
        for (const Elem& g : zs.gens) gens.push_back(inside.pres.to_coords(g));
        req(h.is_essential(inside.pres.mod, submodule_from_gens(inside.pres.mod, gens)),
            ctx.corpus.specs[i] + " / " + cm.label + ": zstar not essential in the radical");
      }
      ++modules;
    }
  }
  return std::to_string(modules) + " corpus modules, zero mismatches";
}

std::string c5_radical_oracles(Ctx& ctx) {
  int modules = 0;
  for (size_t i = 0; i < ctx.corpus.rings.size(); ++i) {
    TorsionAnalysis& t = ctx.at(i);
    for (const CorpusModule& cm : t.module_corpus()) {
      const FinModule& m = cm.mod;
      req(t.cg_radical(m).elems == t.cg_radical_brute(m).elems,
          ctx.corpus.specs[i] + " / " + cm.label + ": fixpoint differs from lattice oracle");
      Submodule rho = t.reject_radical(m);
      if (rho.size() > 1)
        req(t.is_perp_torsion(sub_module(m, rho).pres.mod),
            ctx.corpus.specs[i] + " / " + cm.label + ": reject radical not idempotent");
      bool in_class = t.reject_small(m).size() == m.size;
      req(in_class == (rho.size() == m.size),
          ctx.corpus.specs[i] + " / " + cm.label + ": torsion class mismatch");
      ++modules;
    }
  }
  return std::to_string(modules) + " corpus modules, zero mismatches";
}

std::string c6_splitting_coherence(Ctx& ctx) {
  int split_count = 0;
  for (size_t i = 0; i < ctx.corpus.rings.size(); ++i) {
    const std::string& spec = ctx.corpus.specs[i];
    TorsionAnalysis& t = ctx.at(i);
    RingAnalysis& h = t.homological();
    const TorsionVerdict& v = t.cg_splitting();

    bool every_inj_simple_proj = true, every_inj_simple_embeds = true;
    for (const FinModule& s : h.simples()) {
      if (!h.is_injective(s)) continue;
      if (!h.is_projective(s)) every_inj_simple_proj = false;
      if (hom_count(s, *h.regular()).is_one()) every_inj_simple_embeds = false;
    }
    req(every_inj_simple_proj == every_inj_simple_embeds,
        spec + ": the two simple-module criteria disagree");
    req(every_inj_simple_proj == v.splits, spec + ": verdict disagrees with the criteria");

    if (v.splits) {
      req(v.stable && v.goldie_leq_cg, spec + ": splits but stability evidence fails");
      for (const CorpusModule& cm : t.module_corpus()) {
        req(module_has_summand(cm.mod, t.cg_radical(cm.mod), ctx.lim),
            spec + " / " + cm.label + ": radical is not a summand");
        if (t.is_cg_torsionfree(cm.mod))
          req(h.is_projective(cm.mod), spec + " / " + cm.label + ": torsionfree not projective");
        if (t.is_singular_module(cm.mod))
          req(t.is_cg_torsion(cm.mod), spec + " / " + cm.label + ": singular not torsion");
      }
      ++split_count;
    } else {
      req(!v.stable && !v.goldie_leq_cg, spec + ": fails to split yet looks stable");
      req(v.failing_simple.has_value(), spec + ": no failing simple");
      const FinModule& s = *v.failing_simple;
      req(h.is_injective(s) && !h.is_projective(s), spec + ": failing simple shape wrong");
      req(t.is_cg_torsionfree(s), spec + ": failing simple is not torsionfree");
      req(t.is_singular_module(s) && !t.is_cg_torsion(s),
          spec + ": failing simple is not singular-non-torsion");
    }
  }
  int total = static_cast<int>(ctx.corpus.rings.size());
  return std::to_string(total) + " rings cohere; " + std::to_string(split_count) + " split, " +
         std::to_string(total - split_count) + " do not";
}

std::string c7_self_injective_shadow(Ctx& ctx) {
  const std::set<std::string> expected = {"Z/4", "Z/8", "Z/9", "Z/16", "GF(2)[x]/(x^2)"};
  int qf_count = 0;
  for (size_t i = 0; i < ctx.corpus.rings.size(); ++i) {
    const std::string& spec = ctx.corpus.specs[i];
    TorsionAnalysis& t = ctx.at(i);
    RingAnalysis& h = t.homological();
    if (!t.classify().qf) continue;
    ++qf_count;
    if (expected.count(spec))
      req(h.op().is_injective(*h.op().regular()), spec + ": opposite ring is not self-injective");
    for (const CorpusModule& cm : t.module_corpus())
      for (const IndecomposablePart& p : decompose_module(cm.mod, ctx.lim)) {
        req(h.is_projective(p.part) || t.is_small_module(p.part),
            spec + " / " + cm.label + ": part neither projective nor small");
        req(h.is_injective(p.part) || t.is_singular_module(p.part),
            spec + " / " + cm.label + ": part neither injective nor singular");
      }
  }
  for (const std::string& spec : expected)
    req(ctx.named(spec).classify().qf, spec + ": expected self-injective");

  TorsionAnalysis& tri = ctx.named("Tri(2, GF(2))");
  req(!tri.classify().qf, "witness ring reports self-injective");
  std::string violator;
  for (const CorpusModule& cm : tri.module_corpus()) {
    for (const IndecomposablePart& p : decompose_module(cm.mod, ctx.lim)) {
      bool ps = tri.homological().is_projective(p.part) || tri.is_small_module(p.part);
      bool is = tri.homological().is_injective(p.part) || tri.is_singular_module(p.part);
      if (!ps || !is) {
        violator = cm.label + (ps ? " breaks the injective + singular split"
                                  : " breaks the projective + small split");
        break;
      }
    }
    if (!violator.empty()) break;
  }
  req(!violator.empty(), "no violating module found over the witness ring");
  return std::to_string(qf_count) + " self-injective rings split every module both ways; " +
         "witness violator: " + violator;
}

std::string c8_annihilator_socle(Ctx& ctx) {
  int dblann = 0, socle = 0;
  for (size_t i = 0; i < ctx.corpus.rings.size(); ++i) {
    const std::string& spec = ctx.corpus.specs[i];
    TorsionAnalysis& t = ctx.at(i);
    const RingReport& rep = t.classify();
    if (rep.double_annihilator) {
      ++dblann;
      req(rep.kasch, spec + ": double annihilator holds but not Kasch");
    }
    if (rep.socle_right_in_left) {
      ++socle;
      RingAnalysis& h = t.homological();
      for (const FinModule& s : h.simples())
        if (h.is_injective(s))
          req(h.is_projective(s), spec + ": socle condition holds but an injective simple is not projective");
    }
  }
  return "double annihilator on " + std::to_string(dblann) + ", socle condition on " +
         std::to_string(socle) + " rings, zero violations";
}

std::string c9_products(Ctx& ctx) {
  struct Triple {
    const char *a, *b, *p;
  };
  const Triple triples[] = {{"GF(2)", "Z/4", "GF(2) x Z/4"},
                            {"Z/4", "Z/9", "Z/4 x Z/9"},
                            {"Tri(2, GF(2))", "GF(2)", "Tri(2, GF(2)) x GF(2)"}};
  for (const Triple& tr : triples) {
    TorsionAnalysis& ta = ctx.named(tr.a);
    TorsionAnalysis& tb = ctx.named(tr.b);
    TorsionAnalysis& tp = ctx.named(tr.p);
    req(product_decomposition_check(ta.ring(), tb.ring(), ctx.lim),
        std::string(tr.p) + ": componentwise decomposition fails");
    const TorsionVerdict& va = ta.cg_splitting();
    const TorsionVerdict& vb = tb.cg_splitting();
    const TorsionVerdict& vp = tp.cg_splitting();
    req(vp.splits == (va.splits && vb.splits), std::string(tr.p) + ": verdict mismatch");
    req(vp.radical_of_r.size() == va.radical_of_r.size() * vb.radical_of_r.size(),
        std::string(tr.p) + ": radical size does not multiply");
  }
  return "3 products decompose componentwise with matching verdicts";
}

std::string c10_homological_kernel(Ctx& ctx) {
  int modules = 0;
  for (size_t i = 0; i < ctx.corpus.rings.size(); ++i) {
    const std::string& spec = ctx.corpus.specs[i];
    TorsionAnalysis& t = ctx.at(i);
    RingAnalysis& h = t.homological();
    req(!t.classify().small_ring, spec + ": nonzero finite ring reported small");
    for (const CorpusModule& cm : t.module_corpus()) {
      const FinModule& m = cm.mod;
      FinModule d = h.dual(m);
      req(h.is_injective(m) == h.op().is_projective(d),
          spec + " / " + cm.label + ": Baer route disagrees with the dual route");
      req(h.dual(d).structure_key() == m.structure_key(),
          spec + " / " + cm.label + ": double dual differs from the original");
      HullResult hr = h.injective_hull(m);
      req(h.is_injective(hr.hull), spec + " / " + cm.label + ": hull is not injective");
      auto [ker, img] = kernel_image(hr.into);
      req(ker.size() == 1, spec + " / " + cm.label + ": hull embedding is not injective");
      req(h.is_essential(hr.hull, img), spec + " / " + cm.label + ": hull image not essential");
      ++modules;
    }
  }
  return std::to_string(modules) + " corpus modules self-consistent; no ring is small";
}

std::string c11_open_scan(Ctx&) {
  const std::string out = "acceptance_c11.txt";
  int rc = run_cli("scan --predicate \"splits & !cohereditary\" > " + out + " 2>&1");
  std::string text = slurp(out);
  std::remove(out.c_str());
  req(rc == 0, "scan exited with " + std::to_string(rc));
  req(text.find("0 of 24 rings match") != std::string::npos,
      "scan reported matches: " + text);
  return "0 of 24 rings match, exit code 0";
}

}  // namespace

int main() {
  std::printf("acceptance: 11 criteria over the %zu-ring default corpus\n\n",
              default_corpus().rings.size());
  Gate gate;
  gate.criterion(1, "witness ring fails to split with the predicted simple", c1_witness_ring,
                 5.0);
  gate.criterion(2, "local non-division rings carry the improper theory", c2_local_rings, 30.0);
  gate.criterion(3, "semisimple rings carry the trivial theory, three routes", c3_semisimple_rings);
  gate.criterion(4, "small-sum and hull routes to zstar agree, essential in radical",
                 c4_zstar_identity);
  gate.criterion(5, "fixpoint radical matches the lattice oracle, reject idempotent",
                 c5_radical_oracles, 600.0);
  gate.criterion(6, "splitting criteria cohere with the module-level evidence",
                 c6_splitting_coherence);
  gate.criterion(7, "self-injective rings split every module both ways", c7_self_injective_shadow);
  gate.criterion(8, "annihilator and socle conditions imply their consequences",
                 c8_annihilator_socle);
  gate.criterion(9, "product rings decompose componentwise", c9_products);
  gate.criterion(10, "duality, hulls, and double duals are self-consistent",
                 c10_homological_kernel);
  gate.criterion(11, "no ring splits without being cohereditary", c11_open_scan);
  std::printf("\nacceptance: %d passed, %d failed\n", 11 - gate.failures, gate.failures);
  return gate.failures == 0 ? 0 : 1;
}

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ringlab/builder.hpp"
#include "ringlab/errors.hpp"
#include "ringlab/labcli.hpp"

namespace {

using namespace ringlab;

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::ParseError:
    case ErrorKind::IoError:
    case ErrorKind::UnknownSuite:
    case ErrorKind::AssociativityViolation:
    case ErrorKind::UnitViolation:
    case ErrorKind::OrderIncompatibility:
    case ErrorKind::NotIrreducible:
    case ErrorKind::NotTwoSidedIdeal:
    case ErrorKind::NotASubmodule:
    case ErrorKind::DifferentBaseRings:
      return 2;
    case ErrorKind::SizeCutoffExceeded:
    case ErrorKind::EnumerationCutoffExceeded:
    case ErrorKind::IterationGuardExceeded:
      return 3;
    default:
      return 1;
  }
}

struct Common {
  std::uint64_t module_cutoff = 0;
  std::uint64_t hom_cutoff = 0;
  std::uint64_t lattice_cutoff = 0;
  std::string format = "text";
  std::string out;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--module-cutoff", c.module_cutoff, "max elements of any handled module");
  sub->add_option("--hom-cutoff", c.hom_cutoff, "max enumerated homomorphisms");
  sub->add_option("--lattice-cutoff", c.lattice_cutoff, "max submodule lattice members");
  sub->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--out", c.out, "write the report to this path instead of stdout");
}

Limits limits_from(const Common& c) {
  Limits lim = Limits::from_env();
  if (c.module_cutoff) lim.module_cutoff = c.module_cutoff;
  if (c.hom_cutoff) lim.hom_cutoff = c.hom_cutoff;
  if (c.lattice_cutoff) lim.lattice_cutoff = c.lattice_cutoff;
  return lim;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    write_text(out_path, text);
}

std::vector<std::string> split_ids(const std::string& csv) {
  std::vector<std::string> ids;
  std::string cur;
  for (char ch : csv + ",") {
    if (ch == ',') {
      size_t a = cur.find_first_not_of(" \t");
      size_t b = cur.find_last_not_of(" \t");
      if (a != std::string::npos) ids.push_back(cur.substr(a, b - a + 1));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  return ids;
}

i64 elapsed_ms(std::chrono::steady_clock::time_point t0) {
  auto dt = std::chrono::steady_clock::now() - t0;
  return std::chrono::duration_cast<std::chrono::milliseconds>(dt).count();
}

int run_analyze(const std::string& spec, const Common& common) {
  auto t0 = std::chrono::steady_clock::now();
  RingReport rep = analyze_ring(spec, limits_from(common));
  i64 ms = elapsed_ms(t0);
  emit(common.format == "json" ? report_json(rep, ms) : report_text(rep), common.out);
  return 0;
}

int run_check(const std::string& suites_csv, const std::string& corpus_arg,
              const Common& common) {
  Corpus corpus = corpus_arg == "default" ? default_corpus() : corpus_from_file(corpus_arg);
  std::vector<std::string> ids = split_ids(suites_csv);
  bool want_all = ids.empty();
  for (const std::string& id : ids)
    if (id == "all") want_all = true;
  if (want_all) ids = all_suite_ids();
  CheckRun run = run_suites(corpus, ids, limits_from(common));
  emit(common.format == "json" ? check_json(run) : check_text(run), common.out);
  return run.exit_code;
}

int run_hull(const std::string& ring_spec, const std::string& module_spec,
             const Common& common) {
  auto t0 = std::chrono::steady_clock::now();
  Limits lim = limits_from(common);
  TorsionAnalysis ctx(build_ring(ring_spec), lim);
  FinModule m = build_module(ctx, module_spec);
  HullResult h = ctx.homological().injective_hull(m);
  Submodule rad = ctx.homological().radical_of(h.hull);
  bool small = ctx.is_small_module(m);
  i64 ms = elapsed_ms(t0);
  if (common.format == "json") {
    nlohmann::json j{
        {"hull", nlohmann::json{{"additive", additive_desc(h.hull.orders)},
                                {"radical_size", rad.size()},
                                {"size", h.hull.size}}},
        {"module", nlohmann::json{{"additive", additive_desc(m.orders)},
                                  {"size", m.size},
                                  {"small", small},
                                  {"spec", module_spec}}},
        {"ring", ctx.ring()->name}};
    j["timing"] = nlohmann::json{{"millis", ms}};
    emit(j.dump(2) + "\n", common.out);
  } else {
    std::ostringstream out;
    out << "ring " << ctx.ring()->name << "\n";
    out << "module " << module_spec << ": size " << m.size << ", additive "
        << additive_desc(m.orders) << "\n";
    out << "hull: size " << h.hull.size << ", additive " << additive_desc(h.hull.orders)
        << "\n";
    out << "hull radical: size " << rad.size() << "\n";
    out << "module is small: " << (small ? "yes" : "no") << "\n";
    emit(out.str(), common.out);
  }
  return 0;
}

int run_scan(const std::string& predicate, const std::string& corpus_arg,
             const Common& common) {
  {
    RingReport dummy;
    eval_predicate(dummy, predicate);
  }
  Corpus corpus = corpus_arg == "default" ? default_corpus() : corpus_from_file(corpus_arg);
  Limits lim = limits_from(common);
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> matches;
  int scanned = 0;
  for (size_t i = 0; i < corpus.rings.size(); ++i) {
    TorsionAnalysis ctx(corpus.rings[i], lim);
    ++scanned;
    if (eval_predicate(ctx.classify(), predicate)) matches.push_back(corpus.specs[i]);
  }
  i64 ms = elapsed_ms(t0);
  if (common.format == "json") {
    nlohmann::json j{{"matches", matches},
                     {"predicate", predicate},
                     {"rings_scanned", scanned}};
    j["timing"] = nlohmann::json{{"millis", ms}};
    emit(j.dump(2) + "\n", common.out);
  } else {
    std::ostringstream out;
    for (const std::string& spec : matches) out << spec << "\n";
    out << matches.size() << " of " << scanned << " rings match\n";
    emit(out.str(), common.out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact splitting laboratory for torsion theories over finite rings"};
  app.require_subcommand(1);

  Common analyze_common, check_common, hull_common, scan_common;

  CLI::App* analyze =
      app.add_subcommand("analyze", "classify one ring and report its splitting verdict");
  std::string analyze_spec;
  analyze->add_option("spec", analyze_spec, "ring spec, e.g. 'Tri(2, GF(2))'")->required();
  add_common(analyze, analyze_common);

  CLI::App* check = app.add_subcommand("check", "run theorem suites over a ring corpus");
  std::string suites_csv = "all";
  std::string check_corpus = "default";
  check->add_option("--suite", suites_csv, "comma separated suite ids, or 'all'");
  check->add_option("--corpus", check_corpus, "'default' or a corpus file path");
  add_common(check, check_common);

  CLI::App* hull = app.add_subcommand("hull", "compute the injective hull of a module");
  std::string hull_ring, hull_module;
  hull->add_option("spec", hull_ring, "ring spec")->required();
  hull->add_option("--module", hull_module,
                   "module spec: R, R/rad, R/soc, simple:<i>, hull(...), sums with +")
      ->required();
  add_common(hull, hull_common);

  CLI::App* scan =
      app.add_subcommand("scan", "list corpus rings matching a classifier predicate");
  std::string predicate;
  std::string scan_corpus = "default";
  scan->add_option("--predicate", predicate, "boolean expression, e.g. 'splits & !qf'")
      ->required();
  scan->add_option("--corpus", scan_corpus, "'default' or a corpus file path");
  add_common(scan, scan_common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*analyze) return run_analyze(analyze_spec, analyze_common);
    if (*check) return run_check(suites_csv, check_corpus, check_common);
    if (*hull) return run_hull(hull_ring, hull_module, hull_common);
    if (*scan) return run_scan(predicate, scan_corpus, scan_common);
  } catch (const ringlab::Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

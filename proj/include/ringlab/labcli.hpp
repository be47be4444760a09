#pragma once

#include <string>
#include <vector>

#include "ringlab/torsion.hpp"

namespace ringlab {

struct Corpus {
  std::vector<std::string> specs;
  std::vector<RingPtr> rings;
};

// The built-in test bed: commutative chain rings, fields, matrix and
// triangular rings, an opposite ring, and a few direct products.
Corpus default_corpus();

// Either one ring spec per line (blank lines and # comments ignored) or a
// JSON array of {name, orders, mult, unit} tables.
Corpus corpus_from_file(const std::string& path);

enum class Outcome { Passed, Failed, Skipped };
const char* outcome_name(Outcome o);

struct SuiteCheck {
  std::string ring;
  Outcome outcome = Outcome::Passed;
  std::string detail;
};

struct SuiteResult {
  std::string id;
  std::string title;
  Outcome outcome = Outcome::Passed;
  std::vector<SuiteCheck> checks;
};

struct CheckRun {
  std::vector<std::string> rings;
  std::vector<RingReport> reports;
  std::vector<i64> ring_millis;
  std::vector<SuiteResult> suites;
  int exit_code = 0;
};

const std::vector<std::string>& all_suite_ids();

// Runs the named suites over the corpus, sharing one analysis per ring.
// Cutoff overruns inside a single check mark it Skipped; genuine theorem
// violations mark it Failed.  Exit code: 0 all passed, 1 any failure,
// 3 skips but no failures.
CheckRun run_suites(const Corpus& corpus, const std::vector<std::string>& suite_ids,
                    const Limits& limits);

RingReport analyze_ring(const std::string& spec, const Limits& limits);

// Underlying abelian group as a product of cyclic prime-power factors,
// e.g. "Z/2 x Z/4"; "0" for the zero module.
std::string additive_desc(const Vec& orders);

std::string report_text(const RingReport& report);
std::string report_json(const RingReport& report, i64 millis);
std::string check_text(const CheckRun& run);
std::string check_json(const CheckRun& run);

void write_text(const std::string& path, const std::string& text);

// Module-spec grammar:
//   modspec := term { '+' term }
//   term    := R | R/rad | R/soc | simple:<index> | hull(<modspec>)
FinModule build_module(TorsionAnalysis& ctx, const std::string& spec);

// Boolean expressions over the classifier names of a ring report:
//   expr := or ; or := and { '|' and } ; and := atom { '&' atom }
//   atom := '!' atom | '(' expr ')' | name
bool eval_predicate(const RingReport& report, const std::string& expr);
const std::vector<std::string>& predicate_names();

}  // namespace ringlab

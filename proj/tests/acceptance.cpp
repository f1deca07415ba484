// Acceptance suite: one pass/fail line per criterion, at the stated bounds
// and tolerances.  Exits nonzero if any criterion fails.

#include <cstdio>

#include "quadrank/verify.hpp"

using namespace quadrank;

namespace {

int g_failures = 0;

void report(const char* id, const char* title, const SuiteResult& r) {
  std::printf("%-3s %-18s %s  (checked=%lld failures=%lld %.1fs)\n", id, title,
              r.pass() ? "PASS" : "FAIL", (long long)r.checked, (long long)r.failures, r.seconds);
  if (!r.detail.empty()) std::printf("    %s\n", r.detail.c_str());
  for (const auto& n : r.notes) std::printf("    witness: %s\n", n.c_str());
  if (!r.pass()) ++g_failures;
  std::fflush(stdout);
}

void merge_into(SuiteResult& dst, const SuiteResult& src) {
  dst.checked += src.checked;
  dst.failures += src.failures;
  dst.seconds += src.seconds;
  for (const auto& n : src.notes)
    if (dst.notes.size() < 5) dst.notes.push_back(n);
  if (!src.detail.empty()) dst.detail += (dst.detail.empty() ? "" : "; ") + src.detail;
}

}  // namespace

int main() {
  VerifyConfig cfg;
  cfg.rings = {kGauss, kRoot2};
  cfg.keycancel_norm = 150;
  cfg.keycancel_random_norm = 1000;
  cfg.keycancel_random_pairs = 1000;
  cfg.max_norm = 500;
  cfg.prime_bound = 100000;
  cfg.pq_max_oracle = 20000;
  cfg.pq_max_dual = 100000;
  cfg.pq_max_choice = 10000;
  cfg.decomposition_X = 100000;
  cfg.sample_pq_max = 1000000;
  cfg.samples = 1000;
  cfg.census_x = 10000000;
  cfg.seed = 20250809;

  std::printf("acceptance run: d in {-4, 8}\n");

  report("C1", "keycancellation", suite_keycancellation(cfg));
  report("C2", "reciprocitylem", suite_reciprocity(cfg));
  report("C3", "SteResult", suite_steresult(cfg));
  report("C4", "prop4rank", suite_prop4rank(cfg));
  report("C5", "algebra", suite_algebra_soundness(cfg));
  report("C6", "deffpqbrbsbe", suite_decomposition(cfg));
  report("C7", "autweights", suite_autweights(cfg));
  report("C8", "censustargets", suite_census_targets(cfg));
  {
    SuiteResult c9 = suite_choice_independence(cfg);
    merge_into(c9, suite_psi_independence(cfg));
    report("C9", "choiceindependence", c9);
  }
  report("C10", "bilineardecay", suite_bilinear_decay(cfg));
  report("C11", "determinism", suite_determinism(cfg));

  if (g_failures == 0) {
    std::printf("ACCEPTANCE: 11/11 criteria PASS\n");
    return 0;
  }
  std::printf("ACCEPTANCE: %d criteria FAILED\n", g_failures);
  return 1;
}

// Command-line front end: verification suites, single-pair inspection, the
// census, the character-sum lab, and the class-group oracle.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "quadrank/verify.hpp"

using namespace quadrank;

namespace {

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "cannot open output file: " << out_path << "\n";
    std::exit(1);
  }
  f << payload;
}

std::vector<RingTag> rings_from_flag(int d) {
  if (d == -4) return {kGauss};
  if (d == 8) return {kRoot2};
  return {kGauss, kRoot2};
}

RingTag ring_from_flag(int d) { return RingTag::from_d(d); }

bool parse_quadint(const std::string& s, RingTag ring, QuadInt& out) {
  auto comma = s.find(',');
  if (comma == std::string::npos) return false;
  try {
    out = QuadInt(std::stoll(s.substr(0, comma)), std::stoll(s.substr(comma + 1)), ring);
  } catch (...) {
    return false;
  }
  return true;
}

std::string render_verify_text(const std::vector<SuiteResult>& results) {
  std::ostringstream os;
  i64 failed = 0;
  for (const auto& r : results) {
    os << (r.pass() ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.checked << " checks, "
       << r.failures << " failures (" << fixed9(r.seconds) << "s)\n";
    if (!r.detail.empty()) os << "       " << r.detail << "\n";
    for (const auto& n : r.notes) os << "       witness: " << n << "\n";
    if (!r.pass()) ++failed;
  }
  os << (failed == 0 ? "VERIFY: all suites passed\n"
                     : "VERIFY: " + std::to_string(failed) + " suite(s) failed\n");
  return os.str();
}

nlohmann::json render_verify_json(const std::vector<SuiteResult>& results) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json s;
    s["suite"] = r.name;
    s["pass"] = r.pass();
    s["checked"] = r.checked;
    s["failures"] = r.failures;
    s["detail"] = r.detail;
    s["witnesses"] = r.notes;
    j.push_back(s);
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-power ranks of narrow class groups of Q(sqrt(d p q)), d in {-4, 8}"};
  app.require_subcommand(1);

  // ---- verify ----
  auto* sc_verify = app.add_subcommand("verify", "run invariant suites");
  int v_d = 0;
  std::vector<std::string> v_suites;
  VerifyConfig vcfg;
  bool v_oracle = false;
  std::string v_format = "text", v_out;
  sc_verify->add_option("--d", v_d, "restrict to one ring (-4 or 8); default both");
  sc_verify->add_option("--suite", v_suites, "run only the named suites");
  sc_verify->add_option("--max-norm", vcfg.max_norm, "norm bound for the reciprocity suite");
  sc_verify->add_option("--keycancel-norm", vcfg.keycancel_norm,
                        "exhaustive norm bound for the key cancellation suite");
  sc_verify->add_option("--prime-bound", vcfg.prime_bound, "prime bound for symbol suites");
  sc_verify->add_option("--pqmax", vcfg.pq_max_oracle, "pq bound for oracle comparisons");
  sc_verify->add_option("--xmax", vcfg.census_x, "census bound for the censustargets suite");
  sc_verify->add_option("--decomposition-x", vcfg.decomposition_X,
                        "X for the decomposition identity");
  sc_verify->add_option("--lemfd-u", vcfg.lemfd_u, "coordinate bound for the lemFD suite");
  sc_verify->add_option("--samples", vcfg.samples, "sample count for randomized suites");
  sc_verify->add_option("--seed", vcfg.seed, "seed for randomized suites");
  sc_verify->add_option("--threads", vcfg.threads, "worker threads (0 = hardware)");
  sc_verify->add_flag("--oracle", v_oracle, "accepted for compatibility; oracle suites always run");
  sc_verify->add_option("--format", v_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  sc_verify->add_option("--out", v_out, "output path (default stdout)");

  // ---- pair ----
  auto* sc_pair = app.add_subcommand("pair", "inspect a single pair (p, q)");
  int p_d = -4;
  i64 p_p = 0, p_q = 0;
  std::string p_out;
  sc_pair->add_option("--d", p_d, "-4 or 8")->required();
  sc_pair->add_option("-p", p_p, "first prime")->required();
  sc_pair->add_option("-q", p_q, "second prime")->required();
  sc_pair->add_option("--out", p_out, "output path (default stdout)");

  // ---- census ----
  auto* sc_census = app.add_subcommand("census", "pair census with density counters");
  int c_d = -4;
  CensusConfig ccfg;
  std::string c_format = "csv", c_out, c_cells_out;
  sc_census->add_option("--d", c_d, "-4 or 8")->required();
  sc_census->add_option("--xmax", ccfg.x_max, "bound on pq")->required();
  sc_census->add_option("--checkpoints", ccfg.checkpoints, "number of census rows");
  sc_census->add_option("--oracle-cutoff", ccfg.oracle_cutoff, "oracle column bound");
  sc_census->add_flag("--oracle", ccfg.with_oracle, "populate the oracle column");
  sc_census->add_option("--threads", ccfg.threads, "worker threads (0 = hardware)");
  sc_census->add_option("--format", c_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sc_census->add_option("--out", c_out, "output path (default stdout)");
  sc_census->add_option("--cells-out", c_cells_out, "per-(r,s) cell counts CSV path");

  // ---- charsum ----
  auto* sc_charsum = app.add_subcommand("charsum", "character-sum laboratory");
  sc_charsum->require_subcommand(1);
  auto* sc_key = sc_charsum->add_subcommand("key", "key cancellation sum for one pair");
  int k_d = -4;
  std::string k_w1, k_w2, k_out;
  i64 k_grid_cap = kDefaultGridCap;
  sc_key->add_option("--d", k_d, "-4 or 8")->required();
  sc_key->add_option("--w1", k_w1, "first element as a,b")->required();
  sc_key->add_option("--w2", k_w2, "second element as a,b")->required();
  sc_key->add_option("--grid-cap", k_grid_cap, "use the full grid below this many points");
  sc_key->add_option("--out", k_out, "output path (default stdout)");

  auto* sc_scan = sc_charsum->add_subcommand("scan", "bilinear sums over dyadic windows");
  int s_d = -4;
  std::vector<i64> s_m;
  std::string s_mode = "b0", s_delta = "1/8", s_out;
  bool s_all_coeffs = false;
  sc_scan->add_option("--d", s_d, "-4 or 8")->required();
  sc_scan->add_option("--m", s_m, "window starts M = N (repeatable)")->required();
  sc_scan->add_option("--delta", s_delta, "window width Delta as a fraction, e.g. 1/8");
  sc_scan->add_option("--mode", s_mode, "b0 (primitive z) or q (unrestricted z)")
      ->check(CLI::IsMember({"b0", "q"}));
  sc_scan->add_flag("--all-coeffs", s_all_coeffs,
                    "all-ones coefficients on every element (default: primes with norm 1 mod 8)");
  sc_scan->add_option("--out", s_out, "output path (default stdout)");

  auto* sc_delta = sc_charsum->add_subcommand("delta-table", "reciprocity sign table for d = 8");
  std::string d_out;
  i64 d_samples = 1000;
  sc_delta->add_option("--samples", d_samples, "verified samples per class");
  sc_delta->add_option("--out", d_out, "output path (default stdout)");

  // ---- oracle ----
  auto* sc_oracle = app.add_subcommand("oracle", "narrow class group of a discriminant");
  i64 o_disc = 0;
  int o_d = 0;
  i64 o_p = 0, o_q = 0;
  std::string o_out;
  sc_oracle->add_option("--disc", o_disc, "fundamental discriminant");
  sc_oracle->add_option("--d", o_d, "-4 or 8 (with -p and -q)");
  sc_oracle->add_option("-p", o_p, "first prime");
  sc_oracle->add_option("-q", o_q, "second prime");
  sc_oracle->add_option("--out", o_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors exit 2
  }

  try {
    if (sc_verify->parsed()) {
      if (v_d != 0) vcfg.rings = rings_from_flag(v_d);
      auto results = verify_all(vcfg, v_suites);
      std::string payload = v_format == "json" ? render_verify_json(results).dump(2) + "\n"
                                               : render_verify_text(results);
      emit(payload, v_out);
      for (const auto& r : results)
        if (!r.pass()) return 1;
      return 0;
    }

    if (sc_pair->parsed()) {
      PairRecord rec = build_pair(p_p, p_q, ring_from_flag(p_d));
      emit(to_json(rec).dump(2) + "\n", p_out);
      return 0;
    }

    if (sc_census->parsed()) {
      ccfg.ring = ring_from_flag(c_d);
      auto res = run_census(ccfg);
      std::string payload = c_format == "json" ? census_json(res).dump(2) + "\n" : census_csv(res);
      emit(payload, c_out);
      if (!c_cells_out.empty()) emit(census_cells_csv(res), c_cells_out);
      return 0;
    }

    if (sc_key->parsed()) {
      RingTag ring = ring_from_flag(k_d);
      QuadInt w1, w2;
      if (!parse_quadint(k_w1, ring, w1) || !parse_quadint(k_w2, ring, w2)) {
        std::cerr << "expected --w1/--w2 as a,b\n";
        return 2;
      }
      auto res = key_cancellation_sum(w1, w2, k_grid_cap);
      emit(charsum_json(res).dump(2) + "\n", k_out);
      i64 m = res.measured < 0 ? -res.measured : res.measured;
      return m == res.predicted_abs ? 0 : 1;
    }

    if (sc_scan->parsed()) {
      BilinearConfig bc;
      bc.ring = ring_from_flag(s_d);
      bc.m_values = s_m;
      bc.mode = s_mode == "q" ? ScanMode::UnrestrictedZ_Q : ScanMode::PrimitiveZ_B0;
      if (s_all_coeffs) {
        bc.primes_only = false;
        bc.norm_1_mod_8_only = false;
      }
      auto slash = s_delta.find('/');
      i64 num = std::stoll(s_delta.substr(0, slash));
      i64 den = slash == std::string::npos ? 1 : std::stoll(s_delta.substr(slash + 1));
      bc.delta = Rat(num, den);
      emit(scan_csv(bilinear_scan(bc)), s_out);
      return 0;
    }

    if (sc_delta->parsed()) {
      DeltaTable tbl = build_delta_table(100, d_samples);
      std::ostringstream os;
      os << "w_a_mod8,w_b_mod8,z_a_mod8,z_b_mod8,sign_w,sign_z,delta,samples\n";
      for (int cw = 0; cw < 64; ++cw)
        for (int cz = 0; cz < 64; ++cz)
          for (int sw = 0; sw < 2; ++sw)
            for (int sz = 0; sz < 2; ++sz) {
              int8_t v =
                  tbl.delta[std::size_t(cw)][std::size_t(cz)][std::size_t(sw)][std::size_t(sz)];
              if (v == 0) continue;
              os << cw / 8 << ',' << cw % 8 << ',' << cz / 8 << ',' << cz % 8 << ','
                 << (sw == 0 ? 1 : -1) << ',' << (sz == 0 ? 1 : -1) << ',' << int(v) << ','
                 << tbl.samples[std::size_t(cw)][std::size_t(cz)][std::size_t(sw)][std::size_t(sz)]
                 << '\n';
            }
      emit(os.str(), d_out);
      return 0;
    }

    if (sc_oracle->parsed()) {
      i64 D = o_disc;
      if (D == 0) {
        if (o_d == 0 || o_p == 0 || o_q == 0) {
          std::cerr << "oracle needs --disc or all of --d, -p, -q\n";
          return 2;
        }
        D = i64(o_d) * o_p * o_q;
      }
      SpfTable spf(u64(std::min<i64>((D < 0 ? -D : D) / 2 + 16, 50000000)));
      auto s = narrow_class_group(D, &spf);
      auto prof = rank_profile(D, &spf);
      nlohmann::json j;
      j["discriminant"] = s.discriminant;
      j["order"] = s.order;
      j["elementary_divisors"] = s.elementary_divisors;
      j["rk2"] = prof.rk2;
      j["rk4"] = prof.rk4;
      j["rk8"] = prof.rk8;
      emit(j.dump(2) + "\n", o_out);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

#pragma once

// Deterministic CSV/JSON rendering for census, charsum, and pair artifacts.
// All numeric output is exact integers or exact rationals rendered as
// strings; decimal columns are fixed-precision prints of exact quantities.

#include <cstdio>
#include <sstream>
#include <string>

#include "json.hpp"
#include "quadrank/census.hpp"
#include "quadrank/charsum.hpp"

namespace quadrank {

inline std::string fixed9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Census
// ---------------------------------------------------------------------------

inline std::string census_csv(const CensusResult& res) {
  std::ostringstream os;
  os << "X,n_pairs_mod4,n_rk4_2,n_pred_yes,n_oracle_rk8,ratio_pred,ratio_vs_scale\n";
  for (const auto& r : res.rows) {
    os << r.X << ',' << r.n_pairs_mod4 << ',' << r.n_rk4_2 << ',' << r.n_pred_yes << ',';
    if (r.n_oracle_rk8 >= 0) os << r.n_oracle_rk8;
    os << ',';
    if (r.n_rk4_2 > 0) os << fixed9(r.ratio_pred.to_double());
    os << ',' << fixed9(r.ratio_vs_scale) << '\n';
  }
  return os.str();
}

inline std::string census_cells_csv(const CensusResult& res) {
  std::ostringstream os;
  os << "X,r1,r2,s1,s2,n_cell,n_cell_thm1\n";
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    for (const auto& [k, v] : res.cells[i]) {
      os << res.rows[i].X << ',' << k.r1 << ',' << k.r2 << ',' << k.s1 << ',' << k.s2 << ','
         << v.n_cell << ',' << v.n_cell_thm1 << '\n';
    }
  }
  return os.str();
}

inline nlohmann::json census_json(const CensusResult& res) {
  nlohmann::json j;
  j["d"] = res.config.ring.d;
  j["x_max"] = res.config.x_max;
  j["oracle_cutoff"] = res.config.oracle_cutoff;
  j["ratio_window_note"] =
      "ratio targets carry artifact tolerances of +-0.05 around 1/4 (d=-4) and 1/8 (d=8)";
  auto rows = nlohmann::json::array();
  for (const auto& r : res.rows) {
    nlohmann::json row;
    row["X"] = r.X;
    row["n_pairs_mod4"] = r.n_pairs_mod4;
    row["n_rk4_2"] = r.n_rk4_2;
    row["n_pred_yes"] = r.n_pred_yes;
    if (r.n_oracle_rk8 >= 0) row["n_oracle_rk8"] = r.n_oracle_rk8;
    if (r.n_rk4_2 > 0) row["ratio_pred"] = r.ratio_pred.str();  // exact rational as string
    row["ratio_vs_scale"] = fixed9(r.ratio_vs_scale);
    rows.push_back(row);
  }
  j["rows"] = rows;
  auto cells = nlohmann::json::array();
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    for (const auto& [k, v] : res.cells[i]) {
      nlohmann::json c;
      c["X"] = res.rows[i].X;
      c["r1"] = k.r1;
      c["r2"] = k.r2;
      c["s1"] = k.s1;
      c["s2"] = k.s2;
      c["n_cell"] = v.n_cell;
      c["n_cell_thm1"] = v.n_cell_thm1;
      cells.push_back(c);
    }
  }
  j["cells"] = cells;
  return j;
}

// ---------------------------------------------------------------------------
// Charsum
// ---------------------------------------------------------------------------

inline nlohmann::json charsum_json(const CharSumResult& r) {
  nlohmann::json j;
  j["d"] = r.w1.ring.d;
  j["w1_a"] = r.w1.a;
  j["w1_b"] = r.w1.b;
  j["w2_a"] = r.w2.a;
  j["w2_b"] = r.w2.b;
  j["W"] = r.W;
  j["r"] = r.r;
  j["measured"] = r.measured;
  j["predicted_abs"] = r.predicted_abs;
  j["route"] = r.route == SumRoute::Grid ? "grid" : "reduced";
  return j;
}

inline std::string scan_csv(const std::vector<BilinearScanResult>& rows) {
  std::ostringstream os;
  os << "d,M,N,Delta,mode,value,normalized\n";
  for (const auto& r : rows) {
    os << r.ring.d << ',' << r.M << ',' << r.N << ',' << r.Delta.str() << ','
       << (r.mode == ScanMode::PrimitiveZ_B0 ? "B0" : "Q") << ',' << r.value << ','
       << fixed9(r.normalized) << '\n';
  }
  return os.str();
}

}  // namespace quadrank

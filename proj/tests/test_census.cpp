#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "quadrank/census.hpp"

using namespace quadrank;

namespace {

// direct automorphism count of Z/2^m x Z/2^n by enumerating endomorphisms
i64 aut_oracle(int m, int n) {
  i64 om = i64(1) << m, on = i64(1) << n;
  i64 size = om * on;
  std::vector<std::pair<i64, i64>> elems;
  for (i64 a = 0; a < om; ++a)
    for (i64 b = 0; b < on; ++b) elems.push_back({a, b});
  i64 count = 0;
  // images of the generators (1,0) and (0,1)
  for (const auto& g1 : elems) {
    // (1,0) has order 2^m: need 2^m * g1 = 0: om*a ≡ 0 mod om auto; om*b ≡ 0 mod on
    if ((om * g1.second) % on != 0) continue;
    for (const auto& g2 : elems) {
      if ((on * g2.first) % om != 0) continue;
      std::set<std::pair<i64, i64>> image;
      for (i64 x = 0; x < om; ++x)
        for (i64 y = 0; y < on; ++y)
          image.insert({(x * g1.first + y * g2.first) % om, (x * g1.second + y * g2.second) % on});
      if (i64(image.size()) == size) ++count;
    }
  }
  return count;
}

}  // namespace

TEST_CASE("pair enumeration worked examples") {
  {
    std::vector<std::pair<i64, i64>> got;
    enumerate_pairs(100, [&](i64 p, i64 q) {
      if (p % 4 == 1 && q % 4 == 1) got.push_back({p, q});
    });
    std::vector<std::pair<i64, i64>> want = {{5, 13}, {5, 17}};
    CHECK(got == want);
  }
  {
    std::vector<std::pair<i64, i64>> got;
    enumerate_pairs(2500, [&](i64 p, i64 q) {
      if (p % 4 == 1 && q % 4 == 1 && rk4_is_two(p, q)) got.push_back({p, q});
    });
    std::vector<std::pair<i64, i64>> want = {{17, 89}, {17, 137}};
    CHECK(got == want);
  }
  {
    int count = 0;
    enumerate_pairs(6, [&](i64 p, i64 q) {
      if (p % 4 == 1 && q % 4 == 1) ++count;
    });
    CHECK(count == 0);  // no pair of primes ≡ 1 (mod 4) fits under 6
    int raw = 0;
    enumerate_pairs(6, [&](i64, i64) { ++raw; });
    CHECK(raw == 1);  // (2, 3)
  }
  {
    // each admissible pair exactly once
    std::set<std::pair<i64, i64>> seen;
    i64 total = 0;
    enumerate_pairs(3000, [&](i64 p, i64 q) {
      CHECK(p < q);
      CHECK(p * q <= 3000);
      CHECK(is_prime_u64(u64(p)));
      CHECK(is_prime_u64(u64(q)));
      seen.insert({p, q});
      ++total;
    });
    CHECK(total == i64(seen.size()));
  }
}

TEST_CASE("aut_count matches brute force for m <= n <= 3") {
  CHECK(aut_count(1, 1) == 6);
  CHECK(aut_count(1, 2) == 8);
  for (int m = 1; m <= 3; ++m)
    for (int n = m; n <= 3; ++n) CHECK(aut_count(m, n) == aut_oracle(m, n));
  CHECK_THROWS_AS(aut_count(2, 1), Error);
}

TEST_CASE("Cohen-Lenstra weights") {
  auto wi = cl_weights(kGauss);
  CHECK(wi.total_weight == Rat(4, 9));
  CHECK(wi.ratio == Rat(5, 8));
  auto wr = cl_weights(kRoot2);
  CHECK(wr.total_weight == Rat(4, 63));
  CHECK(wr.ratio == Rat(11, 32));
}

TEST_CASE("census counters at a small scale against direct counting") {
  for (RingTag ring : {kGauss, kRoot2}) {
    CensusConfig cfg;
    cfg.ring = ring;
    cfg.x_max = 30000;
    cfg.checkpoints = 3;
    cfg.with_oracle = true;
    cfg.oracle_cutoff = 20000;
    auto res = run_census(cfg);
    REQUIRE(res.rows.size() == 3);

    // recount directly
    i64 pairs = 0, rk4 = 0, yes = 0, oracle8 = 0;
    enumerate_pairs(30000, [&](i64 p, i64 q) {
      if (p % 4 != 1 || q % 4 != 1) return;
      ++pairs;
      if (p % 8 != 1 || q % 8 != 1 || jacobi(p, u64(q)) != 1) return;
      ++rk4;
      if (build_pair(p, q, ring).prediction == Rk8Prediction::Yes) ++yes;
    });
    SpfTable spf(60000);
    enumerate_pairs(20000, [&](i64 p, i64 q) {
      if (p % 8 != 1 || q % 8 != 1 || jacobi(p, u64(q)) != 1) return;
      if (rank_profile(i64(ring.d) * p * q, &spf).rk8 >= 1) ++oracle8;
    });
    const CensusRow& last = res.rows.back();
    CHECK(last.n_pairs_mod4 == pairs);
    CHECK(last.n_rk4_2 == rk4);
    CHECK(last.n_pred_yes == yes);
    CHECK(last.n_oracle_rk8 == -1);  // 30000 > cutoff: not populated
    CHECK(res.rows[1].X == 20000);
    CHECK(res.rows[1].n_oracle_rk8 == oracle8);
    // predictions are sound: every predicted pair is counted by the oracle
    CHECK(res.rows[1].n_pred_yes <= res.rows[1].n_oracle_rk8);

    // monotone in X
    for (std::size_t i = 1; i < res.rows.size(); ++i) {
      CHECK(res.rows[i].n_pairs_mod4 >= res.rows[i - 1].n_pairs_mod4);
      CHECK(res.rows[i].n_rk4_2 >= res.rows[i - 1].n_rk4_2);
      CHECK(res.rows[i].n_pred_yes >= res.rows[i - 1].n_pred_yes);
    }
    // counter sanity
    CHECK(last.n_pred_yes <= last.n_rk4_2);
    CHECK(last.n_rk4_2 <= last.n_pairs_mod4);
  }
}

TEST_CASE("census is deterministic across thread counts") {
  CensusConfig cfg;
  cfg.ring = kRoot2;
  cfg.x_max = 40000;
  cfg.checkpoints = 4;
  cfg.threads = 1;
  auto a = run_census(cfg);
  cfg.threads = 4;
  auto b = run_census(cfg);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].n_pairs_mod4 == b.rows[i].n_pairs_mod4);
    CHECK(a.rows[i].n_rk4_2 == b.rows[i].n_rk4_2);
    CHECK(a.rows[i].n_pred_yes == b.rows[i].n_pred_yes);
  }
  REQUIRE(a.cells.size() == b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    CHECK(a.cells[i].size() == b.cells[i].size());
    for (const auto& [k, v] : a.cells[i]) {
      auto it = b.cells[i].find(k);
      REQUIRE(it != b.cells[i].end());
      CHECK(v.n_cell == it->second.n_cell);
      CHECK(v.n_cell_thm1 == it->second.n_cell_thm1);
    }
  }
}

TEST_CASE("decomposition identity on all admissible cells") {
  for (RingTag ring : {kGauss, kRoot2}) {
    int cells = 0;
    for (int r1 : {1, 9})
      for (int r2 : {1, 9})
        for (int s1 : {-1, 1})
          for (int s2 : {-1, 1}) {
            IndicatorConfig cfg;
            cfg.r1 = r1;
            cfg.r2 = r2;
            cfg.s1 = s1;
            cfg.s2 = s2;
            if (!admissible_cell(cfg, ring)) continue;
            ++cells;
            auto rep = decomposition_check(10000, cfg, ring);
            CHECK(rep.equal);
          }
    CHECK(cells == (ring.d0 == -1 ? 8 : 4));
  }
}

TEST_CASE("inadmissible cells are rejected") {
  IndicatorConfig cfg;
  cfg.s1 = 1;
  cfg.s2 = -1;
  CHECK_THROWS_AS(decomposition_check(1000, cfg, kGauss), Error);
  IndicatorConfig cfg2;
  cfg2.r1 = 1;
  cfg2.r2 = 9;  // r1 r2 = 9 not 1 mod 16: inadmissible for d = 8
  CHECK_FALSE(admissible_cell(cfg2, kRoot2));
  CHECK(admissible_cell(cfg2, kGauss));
}

TEST_CASE("census cells line up with the thm1 accounting") {
  CensusConfig cfg;
  cfg.ring = kGauss;
  cfg.x_max = 20000;
  cfg.checkpoints = 1;
  auto res = run_census(cfg);
  REQUIRE(res.cells.size() == 1);
  // direct recount of one cell
  IndicatorConfig cell;
  cell.r1 = 1;
  cell.r2 = 9;
  cell.s1 = -1;
  cell.s2 = -1;
  i64 n_cell = 0, n_thm1 = 0;
  enumerate_pairs(20000, [&](i64 p, i64 q) {
    if (p % 16 != 1 || q % 16 != 9) return;
    if (chi2(p, kGauss) != -1 || chi2(q, kGauss) != -1) return;
    ++n_cell;
    if (jacobi(p, u64(q)) == 1 && epsilon_of(p, q, kGauss) == 1) ++n_thm1;
  });
  CellKey key{1, 9, -1, -1};
  auto it = res.cells[0].find(key);
  REQUIRE(it != res.cells[0].end());
  CHECK(it->second.n_cell == n_cell);
  CHECK(it->second.n_cell_thm1 == n_thm1);
}

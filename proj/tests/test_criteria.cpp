#include <catch2/catch_amalgamated.hpp>

#include "quadrank/census.hpp"
#include "quadrank/criteria.hpp"

using namespace quadrank;

TEST_CASE("rk4_is_two") {
  CHECK(rk4_is_two(17, 89));
  CHECK_FALSE(rk4_is_two(5, 13));
  CHECK_FALSE(rk4_is_two(17, 41));  // jacobi(17,41) = -1
  CHECK_THROWS_AS(rk4_is_two(17, 17), Error);
  CHECK_THROWS_AS(rk4_is_two(7, 17), Error);
}

TEST_CASE("build_pair (17, 89) in Z[i]") {
  PairRecord r = build_pair(17, 89, kGauss);
  CHECK(r.w.value == QuadInt(1, 4, kGauss));
  CHECK(r.z.value == QuadInt(5, 8, kGauss));
  CHECK(r.alpha == QuadInt(-27, 28, kGauss));
  CHECK(r.x == -27);
  CHECK(r.flag_square_mod4);
  CHECK(r.flag_split2);
  CHECK_FALSE(r.flag_xpos);
  CHECK(r.chi_t_w == -1);
  CHECK(r.chi_t_z == -1);
  CHECK(r.epsilon == -1);
  CHECK(r.prediction == Rk8Prediction::No);
  // pq = x^2 - d0 y^2
  CHECK(i64(17) * 89 == r.x * r.x + r.y * r.y);
}

TEST_CASE("build_pair (17, 89) in Z[sqrt 2]") {
  PairRecord r = build_pair(17, 89, kRoot2);
  CHECK(r.alpha == QuadInt(71, 42, kRoot2));
  CHECK_FALSE(r.flag_split2);
  CHECK(r.flag_xpos);
  CHECK(r.chi_t_w == -1);
  CHECK(r.chi_t_z == 1);
  CHECK((i64(17) * 89) % 16 == 9);
  CHECK(r.prediction == Rk8Prediction::Inapplicable);
  CHECK(i64(17) * 89 == r.x * r.x - 2 * r.y * r.y);
}

TEST_CASE("build_pair (73, 89) in Z[i]: a positive prediction") {
  PairRecord r = build_pair(73, 89, kGauss);
  CHECK(r.epsilon == 1);
  CHECK(r.flag_split2);
  CHECK(r.prediction == Rk8Prediction::Yes);
  // the oracle must confirm rk8 >= 1 for D = -4*73*89 = -25988
  auto prof = rank_profile(-25988);
  CHECK(prof.rk4 == 2);
  CHECK(prof.rk8 >= 1);
}

TEST_CASE("epsilon symmetry (Eq. samecond) holds unconditionally for d = -4") {
  PrimeSieve sieve(600);
  std::vector<i64> ps;
  sieve.for_primes(17, 600, [&](i64 p) {
    if (p % 8 == 1) ps.push_back(p);
  });
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      // equality of (conj a/(w)) and (conj a/(z)) regardless of jacobi(p, q)
      QuadInt w = split_prime(ps[i], kGauss).value;
      QuadInt z = split_prime(ps[j], kGauss).value;
      QuadInt ab = conj(w * z);
      ResidueSystem rw = ResidueSystem::make(w);
      ResidueSystem rz = ResidueSystem::make(z);
      CHECK(jacobi(rw.rational_image(ab), u64(rw.count)) ==
            jacobi(rz.rational_image(ab), u64(rz.count)));
    }
}

TEST_CASE("choice independence of epsilon and the prediction") {
  // all admissible generator choices for qualifying pairs with pq <= 10^4
  PrimeSieve sieve(600);
  std::vector<i64> ps;
  sieve.for_primes(17, 600, [&](i64 p) {
    if (p % 8 == 1) ps.push_back(p);
  });
  int pairs_checked = 0;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      i64 p = ps[i], q = ps[j];
      if (p * q > 10000 || !rk4_is_two(p, q)) continue;
      ++pairs_checked;
      for (RingTag ring : {kGauss, kRoot2}) {
        PairRecord base = build_pair(p, q, ring);
        if (ring.d0 == 2 && !(base.flag_split2 && base.flag_xpos)) continue;
        auto gens = [&](i64 pr) {
          std::vector<QuadInt> out;
          QuadInt w0 = split_prime(pr, ring).value;
          if (ring.d0 == -1) {
            for (QuadInt s : {w0, conj(w0)}) {
              QuadInt cur = s;
              for (int k = 0; k < 4; ++k) {
                if (square_class_mod4(cur)) out.push_back(cur);
                cur = QuadInt(-cur.b, cur.a, ring);
              }
            }
          } else {
            for (QuadInt s : {w0, conj(w0)}) {
              for (int k = -2; k <= 2; ++k) {
                QuadInt cur = s;
                for (int t = 0; t < (k < 0 ? -k : k); ++t)
                  cur = cur * (k < 0 ? unit_eps_sq_inv() : unit_eps_sq());
                if (square_class_mod4(cur)) out.push_back(cur);
                if (square_class_mod4(QuadInt(-cur.a, -cur.b, ring)))
                  out.push_back(QuadInt(-cur.a, -cur.b, ring));
              }
            }
          }
          return out;
        };
        for (const QuadInt& w : gens(p)) {
          for (const QuadInt& z : gens(q)) {
            QuadInt alpha = w * z;
            if (ring.d0 == 2 && alpha.a < 0) continue;  // xpos selects the choice for d = 8
            QuadInt ab = conj(alpha);
            ResidueSystem rw = ResidueSystem::make(w);
            Sym eps = jacobi(rw.rational_image(ab), u64(rw.count));
            CHECK(eps == base.epsilon);
          }
        }
        // conjugating both generators globally also fixes epsilon
        QuadInt wc = conj(base.w.value), zc = conj(base.z.value);
        ResidueSystem rw = ResidueSystem::make(wc);
        CHECK(jacobi(rw.rational_image(conj(wc * zc)), u64(rw.count)) == base.epsilon);
      }
    }
  CHECK(pairs_checked >= 5);
}

TEST_CASE("dual split2 accounting with the sign of x (d = 8)") {
  // [alpha = square mod t^5] equals chi_t(w) chi_t(z) * sign(x) for d = 8,
  // and chi_t(w) chi_t(z) alone for d = -4; (17,137) and (17,257) pin the
  // sign-carrying cases
  {
    PairRecord r = build_pair(17, 137, kRoot2);
    CHECK(r.chi_t_w * r.chi_t_z == 1);
    CHECK_FALSE(r.flag_split2);  // x = -81 < 0
    CHECK(r.x < 0);
    CHECK(r.prediction == Rk8Prediction::Inapplicable);
  }
  {
    PairRecord r = build_pair(17, 257, kRoot2);
    CHECK(r.chi_t_w * r.chi_t_z == -1);
    CHECK(r.flag_split2);
    CHECK(r.x < 0);
    CHECK((i64(17) * 257) % 16 == 1);
    CHECK(r.prediction == Rk8Prediction::Inapplicable);
  }
  PrimeSieve sieve(800);
  std::vector<i64> ps;
  sieve.for_primes(17, 800, [&](i64 p) {
    if (p % 8 == 1) ps.push_back(p);
  });
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      if (ps[i] * ps[j] > 100000 || !rk4_is_two(ps[i], ps[j])) continue;
      for (RingTag ring : {kGauss, kRoot2}) {
        PairRecord r = build_pair(ps[i], ps[j], ring);  // internal consistency asserts
        // xpos bridge: given the character condition, x > 0 iff pq = 1 (mod 16)
        if (ring.d0 == 2 && r.chi_t_w * r.chi_t_z == 1)
          CHECK((r.x > 0) == (ps[i] * ps[j] % 16 == 1));
      }
    }
}

TEST_CASE("f_indicator on worked pairs") {
  // chi_2 in the d = -4 ring: chi2(17) = -1 and chi2(89) = -1, so the cell
  // (r, s) = ((1, 9), (-1, -1)) matches and f = jacobi(17, 89) = +1
  IndicatorConfig cfg;
  cfg.r1 = 1;
  cfg.r2 = 9;
  cfg.s1 = -1;
  cfg.s2 = -1;
  cfg.e1 = 1;
  cfg.e2 = 0;
  CHECK(chi2(89, kGauss) == -1);
  CHECK(f_indicator(17, 89, cfg, kGauss) == 1);

  // mismatched s kills the indicator
  cfg.s2 = 1;
  cfg.e2 = 1;
  CHECK(f_indicator(17, 89, cfg, kGauss) == 0);

  // e = (0,0) gives the plain cell indicator
  cfg.s2 = -1;
  cfg.e1 = cfg.e2 = 0;
  CHECK(f_indicator(17, 89, cfg, kGauss) == 1);
}

TEST_CASE("pair record JSON is flat and complete") {
  PairRecord r = build_pair(73, 89, kGauss);
  auto j = to_json(r);
  CHECK(j["d"] == -4);
  CHECK(j["p"] == 73);
  CHECK(j["q"] == 89);
  CHECK(j["epsilon"] == 1);
  CHECK(j["predicts_rk8"] == "yes");
  for (const char* key : {"w_a", "w_b", "z_a", "z_b", "alpha_a", "alpha_b", "x", "y",
                          "flag_pqcong", "flag_pqjac", "flag_square_mod4", "flag_split2",
                          "flag_xpos", "chi_t_w", "chi_t_z"})
    CHECK(j.contains(key));
}

TEST_CASE("predicted yes pairs are sound against the oracle (small range)") {
  PrimeSieve sieve(700);
  SpfTable spf(2 * 10000);
  std::vector<i64> ps;
  sieve.for_primes(17, 700, [&](i64 p) {
    if (p % 8 == 1) ps.push_back(p);
  });
  int yes_seen = 0;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      i64 p = ps[i], q = ps[j];
      if (p * q > 10000 || !rk4_is_two(p, q)) continue;
      for (RingTag ring : {kGauss, kRoot2}) {
        PairRecord r = build_pair(p, q, ring);
        if (r.prediction != Rk8Prediction::Yes) continue;
        ++yes_seen;
        auto prof = rank_profile(i64(ring.d) * p * q, &spf);
        CHECK(prof.rk8 >= 1);
      }
    }
  CHECK(yes_seen >= 1);
}

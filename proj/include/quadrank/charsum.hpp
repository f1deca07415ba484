#pragma once

// Character-sum laboratory: exact verification of the key cancellation
// identity |sum_z gamma(w1,z) gamma(w2,z)| = W phi(r) phi(W/r), the d = 8
// reciprocity sign table delta(w mod 8, z mod 8, sgn, sgn), and exact
// evaluation of the bilinear sums B0 and Q over dyadic norm windows.

#include <map>
#include <random>

#include "quadrank/symbols.hpp"

namespace quadrank {

// ---------------------------------------------------------------------------
// Key cancellation identity
// ---------------------------------------------------------------------------

enum class SumRoute { Grid, Reduced };

struct CharSumResult {
  QuadInt w1, w2;
  i64 W = 0;           // norm(w1 w2), signed
  i64 r = 0;           // norm(gcd((w1), (conj w2)))
  i64 measured = 0;    // sum over Z[sqrt d0]/(W) of gamma(w1,z) gamma(w2,z)
  i64 predicted_abs = 0;
  SumRoute route = SumRoute::Grid;
};

namespace detail {

// per-element data for fast gamma evaluation against a fixed primitive w
struct GammaEvaluator {
  i64 N = 1;       // |norm(w)|
  i64 root = 0;    // image of sqrt(d0) mod (w)
  i64 cbar = 0;    // image of conj(w) = 2a mod N
  std::vector<int8_t> jac;  // jacobi(x, N) for x in [0, N)

  explicit GammaEvaluator(const QuadInt& w) {
    if (!is_primitive(w)) fail(Errc::BadInput, "GammaEvaluator requires primitive w");
    ResidueSystem rs = ResidueSystem::make(w);
    N = rs.count;
    root = rs.root;
    cbar = i64(mod_u64(2 * i128(w.a), u64(N)));
    jac.resize(std::size_t(N));
    for (i64 x = 0; x < N; ++x) jac[std::size_t(x)] = int8_t(jacobi(x, u64(N)));
  }

  // gamma(w, u + v sqrt(d0)) = jacobi(img(conj w) * img(conj z), N)
  int operator()(i64 u, i64 v) const {
    i64 zbar = i64(mod_u64(i128(u) - i128(v) * root, u64(N)));
    return jac[std::size_t(i64(mulmod_u64(u64(cbar), u64(zbar), u64(N))))];
  }
};

}  // namespace detail

inline constexpr i64 kGridPointCap = i64(1) << 24;   // materialization cap on W*W grids
inline constexpr i64 kDefaultGridCap = i64(1) << 20; // direct-grid route below this

// Exact evaluation.  Uses the full |W| x |W| grid when it fits under
// grid_cap points; otherwise enumerates Z[sqrt d0]/(conj(w1) conj(w2)) once
// and scales by the exact fiber size |W|.  Throws BoundExceeded when |W|
// itself is past the materialization cap.
inline CharSumResult key_cancellation_sum(const QuadInt& w1, const QuadInt& w2,
                                          i64 grid_cap = kDefaultGridCap) {
  if (!is_primitive(w1) || !is_primitive(w2))
    fail(Errc::BadInput, "key cancellation requires primitive arguments");
  CharSumResult res;
  res.w1 = w1;
  res.w2 = w2;
  i128 Wwide = norm128(w1) * norm128(w2);
  if (iabs(Wwide) > kGridPointCap) fail(Errc::BoundExceeded, "norm(w1 w2) exceeds enumeration bound");
  res.W = narrow(Wwide, "W");
  i64 Wabs = res.W < 0 ? -res.W : res.W;
  res.r = abs_norm(gcd_ideal(w1, conj(w2)));

  // classification by the ideal norm |W| (the element norm can be negative
  // in Z[sqrt 2]; the quotient ring only sees its absolute value)
  u64 wroot, rroot;
  bool w_sq = is_square_u64(u64(Wabs), &wroot);
  bool r_sq = is_square_u64(u64(res.r), &rroot);
  res.predicted_abs =
      (w_sq && r_sq) ? narrow(i128(Wabs) * euler_phi(u64(res.r)) * euler_phi(u64(Wabs / res.r)),
                              "predicted value")
                     : 0;

  detail::GammaEvaluator g1(w1), g2(w2);
  i64 total = 0;
  if (i128(Wabs) * Wabs <= grid_cap) {
    res.route = SumRoute::Grid;
    for (i64 u = 0; u < Wabs; ++u)
      for (i64 v = 0; v < Wabs; ++v) total += i64(g1(u, v)) * g2(u, v);
  } else {
    res.route = SumRoute::Reduced;
    QuadInt m = conj(w1) * conj(w2);
    ResidueSystem rs = ResidueSystem::make(m);
    i64 sub = 0;
    for (i64 t = 0; t < rs.e2; ++t)
      for (i64 s = 0; s < rs.e1; ++s) sub += i64(g1(s, t)) * g2(s, t);
    total = checked_mul(sub, Wabs);
  }
  res.measured = total;
  return res;
}

// Smoke estimate on a random residue subset, for moduli past the cap: checks
// nothing exactly, reports the sampled partial sum.
inline i64 key_cancellation_sampled(const QuadInt& w1, const QuadInt& w2, i64 samples, u64 seed) {
  detail::GammaEvaluator g1(w1), g2(w2);
  i128 Wwide = iabs(norm128(w1) * norm128(w2));
  std::mt19937_64 rng(seed);
  i64 total = 0;
  for (i64 i = 0; i < samples; ++i) {
    i64 u = i64(rng() % u64(Wwide > i128(INT64_MAX) ? u64(INT64_MAX) : u64(Wwide)));
    i64 v = i64(rng() % u64(Wwide > i128(INT64_MAX) ? u64(INT64_MAX) : u64(Wwide)));
    total += i64(g1(u, v)) * g2(u, v);
  }
  return total;
}

// ---------------------------------------------------------------------------
// delta(w mod 8, z mod 8, sign w, sign z) for d = 8:
// gamma(w,z) = delta * gamma(z,w) on classes with norm ≡ 1 (mod 8)
// ---------------------------------------------------------------------------

struct DeltaTable {
  // index: (a mod 8)*8 + (b mod 8) for w and z, then sign bits (a>0 ? 0 : 1)
  std::array<std::array<std::array<std::array<int8_t, 2>, 2>, 64>, 64> delta{};
  std::array<std::array<std::array<std::array<i64, 2>, 2>, 64>, 64> samples{};

  static int class_index(const QuadInt& w) {
    return int(((w.a % 8 + 8) % 8) * 8 + (w.b % 8 + 8) % 8);
  }
};

// Builds the table by sampling pairs of primitive elements of positive norm
// ≡ 1 (mod 8) from a coefficient box, and verifies the ratio is constant on
// each congruence/sign class.
inline DeltaTable build_delta_table(i64 coeff_bound = 120, i64 min_samples = 1000) {
  DeltaTable tbl;
  std::vector<QuadInt> pool;
  for (i64 a = -coeff_bound; a <= coeff_bound; ++a) {
    if ((a & 1) == 0) continue;
    for (i64 b = -coeff_bound; b <= coeff_bound; ++b) {
      QuadInt w(a, b, kRoot2);
      i128 n = norm128(w);
      if (n <= 0 || mod_u64(n, 8) != 1) continue;
      if (!is_primitive(w)) continue;
      pool.push_back(w);
    }
  }
  // bucket the pool by class index to balance coverage
  std::map<std::pair<int, int>, std::vector<const QuadInt*>> buckets;
  for (const auto& w : pool) buckets[{DeltaTable::class_index(w), w.a > 0 ? 0 : 1}].push_back(&w);

  for (auto& [kw, ws] : buckets) {
    for (auto& [kz, zs] : buckets) {
      i64 got = 0;
      int8_t& cell = tbl.delta[std::size_t(kw.first)][std::size_t(kz.first)][std::size_t(kw.second)]
                              [std::size_t(kz.second)];
      i64& cnt = tbl.samples[std::size_t(kw.first)][std::size_t(kz.first)][std::size_t(kw.second)]
                            [std::size_t(kz.second)];
      for (std::size_t i = 0; i < ws.size() && got < min_samples; ++i) {
        for (std::size_t j = 0; j < zs.size() && got < min_samples; ++j) {
          const QuadInt &w = *ws[i], &z = *zs[j];
          Sym g1 = gamma_sym(w, z);
          if (g1 == 0) continue;
          Sym g2 = gamma_sym(z, w);
          if (g2 == 0) continue;
          int d = g1 * g2;  // equals mu(wz) by reciprocity; also gamma ratio
          if (cell == 0) cell = int8_t(d);
          else if (cell != d)
            fail(Errc::NonConstantClass, "delta is not constant on a congruence class");
          ++got;
        }
      }
      cnt = got;
    }
  }
  return tbl;
}

// ---------------------------------------------------------------------------
// Bilinear sums B0 (primitive-restricted z) and Q (unrestricted z)
// ---------------------------------------------------------------------------

enum class ScanMode { PrimitiveZ_B0, UnrestrictedZ_Q };

struct BilinearScanResult {
  RingTag ring = kGauss;
  i64 M = 0, N = 0;
  Rat Delta;
  ScanMode mode = ScanMode::PrimitiveZ_B0;
  i64 value = 0;        // exact integer sum with all-ones coefficients
  double normalized = 0;  // |value| / (Delta^2 M N)
  i64 terms_w = 0, terms_z = 0;
};

// w is a prime element: degree one (|norm| prime) or a unit multiple of an
// inert rational prime.
inline bool is_prime_element(const QuadInt& w) {
  i128 n = iabs(norm128(w));
  if (n < 2) return false;
  if (n <= i128(INT64_MAX) && is_prime_u64(u64(n))) return true;
  i128 root;
  if (!is_square_i128(n, &root) || root > i128(INT64_MAX)) return false;
  u64 p = u64(root);
  if (!is_prime_u64(p)) return false;
  if (jacobi(i128(w.ring.d0), p) != -1) return false;  // must be inert
  return w.a % i64(p) == 0 && w.b % i64(p) == 0;
}

// Window R_d(M): norms in (M, M + M*Delta]; normalized representatives
// (primary for Z[i]; w or -w in the fundamental domain for Z[sqrt 2], both
// signs included).
inline std::vector<QuadInt> window_elements(RingTag ring, i64 M, const Rat& delta) {
  i64 span = narrow(i128(M) * delta.num / delta.den, "window span");
  i64 hi = checked_add(M, span);
  std::vector<QuadInt> out;
  if (ring.d0 == -1) {
    i64 amax = i64(isqrt_u64(u64(hi)));
    for (i64 a = -amax; a <= amax; ++a) {
      i64 rem_hi = hi - a * a;
      if (rem_hi < 0) continue;
      i64 bmax = i64(isqrt_u64(u64(rem_hi)));
      i64 rem_lo = M - a * a;  // need b^2 > rem_lo
      i64 bmin = rem_lo >= 0 ? i64(isqrt_u64(u64(rem_lo))) : 0;
      for (i64 b = -bmax; b <= bmax; ++b) {
        if (i128(a) * a + i128(b) * b <= M) continue;
        (void)bmin;
        QuadInt w(a, b, ring);
        if (!is_odd(w)) continue;
        if (!is_primary_zi(w)) continue;
        out.push_back(w);
      }
    }
  } else {
    i64 umax = i64(isqrt_u64(u64(2) * u64(hi)));
    for (i64 u = 1; u <= umax; ++u) {
      for (i64 v = -(u - 1) / 2 - 1; 2 * v <= u; ++v) {
        if (!(-u < 2 * v)) continue;
        i128 n = i128(u) * u - 2 * i128(v) * v;
        if (n <= M || n > hi) continue;
        QuadInt w(u, v, ring);
        if (!is_odd(w)) continue;
        out.push_back(w);
        out.push_back(-w);
      }
    }
  }
  return out;
}

struct BilinearConfig {
  RingTag ring = kGauss;
  std::vector<i64> m_values;  // M = N per scan point
  Rat delta = Rat(1, 8);
  ScanMode mode = ScanMode::PrimitiveZ_B0;
  bool primes_only = true;          // all-ones coefficients supported on primes
  bool norm_1_mod_8_only = true;    // support restriction Norm ≡ 1 (mod 8)
};

inline BilinearScanResult bilinear_sum(const BilinearConfig& cfg, i64 M, i64 N) {
  auto ws = window_elements(cfg.ring, M, cfg.delta);
  auto zs = (M == N) ? ws : window_elements(cfg.ring, N, cfg.delta);
  auto supported = [&](const QuadInt& w) {
    if (cfg.norm_1_mod_8_only && mod_u64(norm128(w), 8) != 1) return false;
    if (cfg.primes_only && !is_prime_element(w)) return false;
    return true;
  };
  BilinearScanResult res;
  res.ring = cfg.ring;
  res.M = M;
  res.N = N;
  res.Delta = cfg.delta;
  res.mode = cfg.mode;
  std::vector<QuadInt> wlist, zlist;
  for (const auto& w : ws)
    if (is_primitive(w) && supported(w)) wlist.push_back(w);
  for (const auto& z : zs) {
    if (!supported(z)) continue;
    if (cfg.mode == ScanMode::PrimitiveZ_B0 && !is_primitive(z)) continue;
    zlist.push_back(z);
  }
  res.terms_w = i64(wlist.size());
  res.terms_z = i64(zlist.size());
  i64 total = 0;
  for (const auto& w : wlist) {
    detail::GammaEvaluator g(w);
    for (const auto& z : zlist) total += g(z.a, z.b);
  }
  res.value = total;
  double denom = double(cfg.delta.num) * double(cfg.delta.num) / double(cfg.delta.den) /
                 double(cfg.delta.den) * double(M) * double(N);
  res.normalized = denom > 0 ? double(total < 0 ? -total : total) / denom : 0.0;
  return res;
}

inline std::vector<BilinearScanResult> bilinear_scan(const BilinearConfig& cfg) {
  std::vector<BilinearScanResult> rows;
  for (i64 m : cfg.m_values) rows.push_back(bilinear_sum(cfg, m, m));
  return rows;
}

}  // namespace quadrank

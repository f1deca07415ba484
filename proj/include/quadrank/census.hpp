#pragma once

// Large-scale enumeration of semiprime pairs p < q with pq <= X and the
// density bookkeeping: rk4 = 2 counts, predicted 8-rank counts, per-(r,s)
// cells, the exact decomposition identity, and the Cohen-Lenstra weights.

#include <cmath>
#include <functional>
#include <map>

#include "quadrank/classgroup.hpp"
#include "quadrank/criteria.hpp"
#include "quadrank/sieve.hpp"

namespace quadrank {

// ---------------------------------------------------------------------------
// Pair enumeration: every pair of distinct primes p < q with pq <= X exactly
// once, ascending in p then q.
// ---------------------------------------------------------------------------

template <typename F>
inline void enumerate_pairs(i64 X, const PrimeSieve& sieve, F&& visit) {
  if (X < 6) return;
  i64 pmax = i64(isqrt_u64(u64(X)));
  sieve.for_primes(2, pmax, [&](i64 p) {
    sieve.for_primes(p + 1, X / p, [&](i64 q) { visit(p, q); });
  });
}

template <typename F>
inline void enumerate_pairs(i64 X, F&& visit) {
  PrimeSieve sieve(X < 6 ? 6 : X / 2);
  enumerate_pairs(X, sieve, visit);
}

// ---------------------------------------------------------------------------
// Census rows and cells
// ---------------------------------------------------------------------------

struct CensusRow {
  i64 X = 0;
  i64 n_pairs_mod4 = 0;  // p ≡ q ≡ 1 (mod 4), p < q, pq <= X
  i64 n_rk4_2 = 0;
  i64 n_pred_yes = 0;
  i64 n_oracle_rk8 = -1;  // populated only for X <= oracle_cutoff
  Rat ratio_pred;         // n_pred_yes / n_rk4_2 when defined
  double ratio_vs_scale = 0.0;  // n_rk4_2 / (X log log X / log X)
};

struct CellKey {
  int r1, r2, s1, s2;
  bool operator<(const CellKey& o) const {
    return std::tie(r1, r2, s1, s2) < std::tie(o.r1, o.r2, o.s1, o.s2);
  }
};

struct CellCounts {
  i64 n_cell = 0;       // pairs matching (r, s)
  i64 n_cell_thm1 = 0;  // additionally (p/q) = 1 and eps(p,q) = 1 (admissible cells)
};

struct CensusConfig {
  RingTag ring = kGauss;
  i64 x_max = 1000000;
  int checkpoints = 10;
  i64 oracle_cutoff = 20000;
  bool with_oracle = false;
  int threads = 0;
  int verify_stride = 64;  // cross-check the fast prediction against build_pair
};

struct CensusResult {
  CensusConfig config;
  std::vector<CensusRow> rows;
  std::vector<std::map<CellKey, CellCounts>> cells;  // per checkpoint, cumulative
};

// ---------------------------------------------------------------------------
// Per-prime caches (chi_2 and the normalized generator), precomputed
// deterministically before the pair loop.
// ---------------------------------------------------------------------------

struct PrimeData {
  std::vector<i64> primes;             // primes ≡ 1 (mod 4) ascending
  std::vector<int8_t> chi;             // chi_2(p), 0 when not cached
  std::vector<i64> wa, wb;             // split generator for p ≡ 1 (mod 8)
  std::vector<int32_t> index_of_all;   // prime -> index (keyed by (p-1)/4 ... sparse)
};

inline PrimeData build_prime_data(const PrimeSieve& sieve, i64 prime_bound, i64 symbol_bound,
                                  RingTag ring, int threads) {
  PrimeData pd;
  sieve.for_primes(5, prime_bound, [&](i64 p) {
    if (p % 4 == 1) pd.primes.push_back(p);
  });
  std::size_t n = pd.primes.size();
  pd.chi.assign(n, 0);
  pd.wa.assign(n, 0);
  pd.wb.assign(n, 0);
  const std::size_t blocks = 64;
  run_blocks(blocks, threads, [&](std::size_t blk) {
    for (std::size_t i = blk; i < n; i += blocks) {
      i64 p = pd.primes[i];
      if (p % 8 != 1 || p > symbol_bound) continue;
      NormalizedGenerator g = split_prime(p, ring);
      pd.wa[i] = g.value.a;
      pd.wb[i] = g.value.b;
      ResidueSystem rs = ResidueSystem::make(g.value);
      pd.chi[i] = int8_t(jacobi(rs.rational_image(t_generator(ring)), u64(p)));
    }
  });
  return pd;
}

// epsilon from cached generators
inline Sym epsilon_cached(const PrimeData& pd, std::size_t ip, std::size_t iq, RingTag ring) {
  QuadInt w(pd.wa[ip], pd.wb[ip], ring);
  QuadInt z(pd.wa[iq], pd.wb[iq], ring);
  QuadInt alpha_bar = conj(w * z);
  ResidueSystem rs = ResidueSystem::make(w);
  return jacobi(rs.rational_image(alpha_bar), u64(rs.count));
}

// ---------------------------------------------------------------------------
// run_census
// ---------------------------------------------------------------------------

inline CensusResult run_census(const CensusConfig& cfg) {
  if (cfg.x_max < 6 || cfg.x_max > kOracleDiscriminantCap)
    fail(Errc::BoundExceeded, "census bound out of range");
  CensusResult result;
  result.config = cfg;

  std::vector<i64> xs;
  for (int i = 1; i <= cfg.checkpoints; ++i)
    xs.push_back(cfg.x_max / cfg.checkpoints * i);
  xs.back() = cfg.x_max;

  PrimeSieve sieve(std::max<i64>(cfg.x_max / 5, 64));
  PrimeData pd = build_prime_data(sieve, cfg.x_max / 5, cfg.x_max / 17 + 1, cfg.ring, cfg.threads);
  const auto& P = pd.primes;
  std::size_t np = P.size();

  struct BlockOut {
    std::vector<i64> pairs, rk4, yes;
    std::map<CellKey, std::vector<i64>> cell, cell_thm1;
  };
  std::size_t nbins = xs.size();
  const std::size_t blocks = 64;
  std::vector<BlockOut> outs(blocks);

  auto bin_of = [&](i64 pq) {
    return std::size_t(std::lower_bound(xs.begin(), xs.end(), pq) - xs.begin());
  };

  run_blocks(blocks, cfg.threads, [&](std::size_t blk) {
    BlockOut& out = outs[blk];
    out.pairs.assign(nbins, 0);
    out.rk4.assign(nbins, 0);
    out.yes.assign(nbins, 0);
    for (std::size_t ip = blk; ip < np; ip += blocks) {
      i64 p = P[ip];
      if (i128(p) * p >= cfg.x_max) break;  // p < q forces p < sqrt(X)
      i64 qmax = cfg.x_max / p;
      for (std::size_t iq = ip + 1; iq < np && P[iq] <= qmax; ++iq) {
        i64 q = P[iq];
        i64 pq = p * q;
        std::size_t bin = bin_of(pq);
        ++out.pairs[bin];
        if (p % 8 != 1 || q % 8 != 1) continue;
        int j = jacobi(p, u64(q));
        int s1 = pd.chi[ip], s2 = pd.chi[iq];
        i64 r1 = p % 16, r2 = q % 16;
        bool cell_classes = (r1 == 1 || r1 == 9) && (r2 == 1 || r2 == 9);
        bool admissible = s1 * s2 == 1 && (cfg.ring.d0 == -1 || (r1 * r2) % 16 == 1);
        Sym eps = 0;
        bool eps_known = false;
        if (cell_classes) {
          CellKey key{int(r1), int(r2), s1, s2};
          auto& vec = out.cell[key];
          if (vec.empty()) vec.assign(nbins, 0);
          ++vec[bin];
          if (admissible && j == 1) {
            eps = epsilon_cached(pd, ip, iq, cfg.ring);
            eps_known = true;
            if (eps == 1) {
              auto& tv = out.cell_thm1[key];
              if (tv.empty()) tv.assign(nbins, 0);
              ++tv[bin];
            }
          }
        }
        if (j != 1) continue;
        ++out.rk4[bin];
        // predicted 8-rank: character product and (d = 8) pq ≡ 1 (mod 16)
        bool applicable = s1 * s2 == 1 && (cfg.ring.d0 == -1 || pq % 16 == 1);
        bool yes = false;
        if (applicable) {
          if (!eps_known) eps = epsilon_cached(pd, ip, iq, cfg.ring);
          yes = (eps == 1);
        }
        if (yes) ++out.yes[bin];
        if (cfg.verify_stride > 0 && (ip + iq) % std::size_t(cfg.verify_stride) == 0) {
          PairRecord rec = build_pair(p, q, cfg.ring);
          bool rec_yes = rec.prediction == Rk8Prediction::Yes;
          if (rec_yes != yes)
            fail(Errc::ConsistencyViolation, "fast census prediction disagrees with build_pair");
        }
      }
    }
  });

  // merge blocks and accumulate cumulative counters
  std::vector<i64> pairs(nbins, 0), rk4(nbins, 0), yes(nbins, 0);
  std::map<CellKey, std::vector<i64>> cell, cell_thm1;
  for (const auto& out : outs) {
    for (std::size_t b = 0; b < nbins; ++b) {
      if (!out.pairs.empty()) {
        pairs[b] += out.pairs[b];
        rk4[b] += out.rk4[b];
        yes[b] += out.yes[b];
      }
    }
    auto merge = [&](const std::map<CellKey, std::vector<i64>>& src,
                     std::map<CellKey, std::vector<i64>>& dst) {
      for (const auto& [k, v] : src) {
        auto& d = dst[k];
        if (d.empty()) d.assign(nbins, 0);
        for (std::size_t b = 0; b < nbins; ++b) d[b] += v[b];
      }
    };
    merge(out.cell, cell);
    merge(out.cell_thm1, cell_thm1);
  }
  auto cumulate = [&](std::vector<i64>& v) {
    for (std::size_t b = 1; b < nbins; ++b) v[b] += v[b - 1];
  };
  cumulate(pairs);
  cumulate(rk4);
  cumulate(yes);
  for (auto& [k, v] : cell) cumulate(v);
  for (auto& [k, v] : cell_thm1) cumulate(v);

  // optional oracle column: pairs with rk4 = 2 and oracle rk8 >= 1
  std::vector<i64> oracle_counts(nbins, -1);
  if (cfg.with_oracle) {
    i64 cut = std::min(cfg.oracle_cutoff, cfg.x_max);
    SpfTable spf(u64(std::max<i64>(2 * cut, 64)));
    std::vector<i64> ocount(nbins, 0);
    enumerate_pairs(cut, sieve, [&](i64 p, i64 q) {
      if (p % 8 != 1 || q % 8 != 1 || jacobi(p, u64(q)) != 1) return;
      i64 D = i64(cfg.ring.d) * p * q;
      if (rank_profile(D, &spf).rk8 >= 1) ++ocount[bin_of(p * q)];
    });
    cumulate(ocount);
    for (std::size_t b = 0; b < nbins; ++b)
      if (xs[b] <= cfg.oracle_cutoff) oracle_counts[b] = ocount[b];
  }

  for (std::size_t b = 0; b < nbins; ++b) {
    CensusRow row;
    row.X = xs[b];
    row.n_pairs_mod4 = pairs[b];
    row.n_rk4_2 = rk4[b];
    row.n_pred_yes = yes[b];
    row.n_oracle_rk8 = oracle_counts[b];
    if (rk4[b] > 0) row.ratio_pred = Rat(yes[b], rk4[b]);
    double lx = std::log(double(row.X));
    double scale = double(row.X) * std::log(lx) / lx;
    row.ratio_vs_scale = scale > 0 ? double(rk4[b]) / scale : 0.0;
    result.rows.push_back(row);
    std::map<CellKey, CellCounts> snap;
    for (const auto& [k, v] : cell) snap[k].n_cell = v[b];
    for (const auto& [k, v] : cell_thm1) snap[k].n_cell_thm1 = v[b];
    result.cells.push_back(std::move(snap));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Exact decomposition identity at level X for an admissible cell (r, s):
//   #{constrained pairs} = (1/4) sum_e sum_{pq<=X} f(p,q; r,s,e)
// ---------------------------------------------------------------------------

struct DecompositionReport {
  i64 lhs = 0;
  i64 rhs_times_4 = 0;
  bool equal = false;
};

inline DecompositionReport decomposition_check(i64 X, const IndicatorConfig& cfg, RingTag ring) {
  if (!admissible_cell(cfg, ring)) fail(Errc::BadInput, "decomposition_check requires an admissible cell");
  PrimeSieve sieve(std::max<i64>(X / 2, 64));
  PrimeData pd = build_prime_data(sieve, X / 2, X / 17 + 1, ring, 0);
  const auto& P = pd.primes;
  DecompositionReport rep;
  for (std::size_t ip = 0; ip < P.size(); ++ip) {
    i64 p = P[ip];
    if (i128(p) * p >= X) break;
    if (p % 16 != cfg.r1 || pd.chi[ip] != cfg.s1) continue;
    i64 qmax = X / p;
    for (std::size_t iq = ip + 1; iq < P.size() && P[iq] <= qmax; ++iq) {
      i64 q = P[iq];
      if (q % 16 != cfg.r2 || pd.chi[iq] != cfg.s2) continue;
      int j = jacobi(p, u64(q));
      Sym eps = epsilon_cached(pd, ip, iq, ring);
      if (j == 1 && eps == 1) ++rep.lhs;
      rep.rhs_times_4 += (1 + j) * (1 + eps);
    }
  }
  rep.equal = (4 * rep.lhs == rep.rhs_times_4);
  return rep;
}

// ---------------------------------------------------------------------------
// Cohen-Lenstra bookkeeping
// ---------------------------------------------------------------------------

// #Aut(Z/2^m x Z/2^n), 1 <= m <= n
inline i64 aut_count(int m, int n) {
  if (m < 1 || m > n) fail(Errc::BadInput, "aut_count requires 1 <= m <= n");
  if (m == n) return checked_mul(3, i64(1) << (4 * m - 3));
  return i64(1) << (3 * m + n - 2);
}

struct CLWeights {
  RingTag ring = kGauss;
  Rat total_weight;
  Rat rk8_weight;
  Rat ratio;
};

// Exact closed-form evaluation of the weight series (geometric sums).
inline CLWeights cl_weights(RingTag ring) {
  auto geo = [](const Rat& x) { return x / (Rat(1) - x); };  // sum_{m>=1} x^m
  CLWeights w;
  w.ring = ring;
  Rat total, w11;
  if (ring.d0 == -1) {
    // sum 1/(3*2^{4m-3}) + sum_{m<n} 2^{-(3m+n-2)} = (8/3) g(1/16) + 4 g(1/16)
    total = Rat(8, 3) * geo(Rat(1, 16)) + Rat(4) * geo(Rat(1, 16));
    w11 = Rat(1, 6);
  } else {
    // sum 1/(3*2^{6m-3}) + sum_{m<n} 2^{-(4m+2n-2)} = (8/3) g(1/64) + (4/3) g(1/64)
    total = Rat(8, 3) * geo(Rat(1, 64)) + Rat(4, 3) * geo(Rat(1, 64));
    w11 = Rat(1, 24);
  }
  w.total_weight = total;
  w.rk8_weight = total - w11;
  w.ratio = w.rk8_weight / total;
  return w;
}

}  // namespace quadrank

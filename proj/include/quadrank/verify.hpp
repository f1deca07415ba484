#pragma once

// The invariant suites behind `verify` and the acceptance runner.  Each suite
// checks one identity or contract at configurable bounds and reports the
// number of cases checked and the failures with witnesses.

#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "quadrank/census.hpp"
#include "quadrank/charsum.hpp"
#include "quadrank/criteria.hpp"
#include "quadrank/io.hpp"

namespace quadrank {

struct SuiteResult {
  std::string name;
  std::string detail;
  i64 checked = 0;
  i64 failures = 0;
  double seconds = 0;
  std::vector<std::string> notes;  // first few failure witnesses

  bool pass() const { return failures == 0 && checked > 0; }
  void fail_note(const std::string& s) {
    ++failures;
    if (notes.size() < 5) notes.push_back(s);
  }
};

struct VerifyConfig {
  std::vector<RingTag> rings = {kGauss, kRoot2};
  i64 max_norm = 500;            // reciprocity bound
  i64 keycancel_norm = 150;      // exhaustive key-identity bound
  i64 keycancel_random_norm = 1000;
  i64 keycancel_random_pairs = 1000;
  i64 prime_bound = 100000;      // chi_t dual-path prime bound
  i64 pq_max_oracle = 20000;     // oracle comparison bound
  i64 pq_max_dual = 100000;      // split2/xpos dual-path bound
  i64 pq_max_choice = 10000;     // choice-independence bound
  i64 decomposition_X = 100000;
  i64 sample_pq_max = 1000000;   // random oracle-soundness samples
  i64 samples = 1000;
  i64 lemfd_u = 10000;
  i64 census_x = 10000000;
  u64 seed = 20250809;
  int threads = 0;
  i64 grid_cap = kDefaultGridCap;
};

namespace detail_verify {

inline double now_seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

inline std::string show(const QuadInt& w) {
  std::ostringstream os;
  os << w;
  return os.str();
}

// canonical generators of the odd primitive ideals with norm <= bound
inline std::vector<QuadInt> primitive_ideal_reps(RingTag ring, i64 bound) {
  std::vector<QuadInt> out;
  if (ring.d0 == -1) {
    for (i64 a = 1; i128(a) * a <= bound; ++a)
      for (i64 b = -a + 1; b <= a; ++b) {
        QuadInt w(a, b, ring);
        if (norm128(w) > bound) continue;
        if (!is_primitive(w)) continue;
        out.push_back(w);
      }
  } else {
    for (i64 u = 1; i128(u) * u <= 2 * bound; ++u)
      for (i64 v = -(u / 2); 2 * v <= u; ++v) {
        if (!(-u < 2 * v)) continue;
        QuadInt w(u, v, ring);
        i128 n = norm128(w);
        if (n <= 0 || n > bound) continue;  // canonical reps have positive norm
        if (!is_primitive(w)) continue;
        out.push_back(w);
      }
  }
  return out;
}

// all odd elements of a ring within a coefficient box and a norm bound
inline std::vector<QuadInt> odd_box(RingTag ring, i64 norm_bound, i64 coeff_bound) {
  std::vector<QuadInt> out;
  for (i64 a = -coeff_bound; a <= coeff_bound; ++a)
    for (i64 b = -coeff_bound; b <= coeff_bound; ++b) {
      QuadInt w(a, b, ring);
      if (w.is_zero() || !is_odd(w)) continue;
      if (iabs(norm128(w)) > norm_bound) continue;
      out.push_back(w);
    }
  return out;
}

inline std::vector<i64> primes_1mod8(const PrimeSieve& sieve, i64 lo, i64 hi) {
  std::vector<i64> v;
  sieve.for_primes(std::max<i64>(lo, 17), hi, [&](i64 p) {
    if (p % 8 == 1) v.push_back(p);
  });
  return v;
}

template <typename Fn>
inline SuiteResult timed(const std::string& name, Fn&& fn) {
  SuiteResult r;
  r.name = name;
  double t0 = now_seconds();
  fn(r);
  r.seconds = now_seconds() - t0;
  return r;
}

}  // namespace detail_verify

// ---------------------------------------------------------------------------
// quadring suites
// ---------------------------------------------------------------------------

inline SuiteResult suite_normmult(const VerifyConfig& cfg) {
  using namespace detail_verify;
  return timed("normmult", [&](SuiteResult& r) {
    std::mt19937_64 rng(cfg.seed);
    for (int it = 0; it < 20000; ++it) {
      RingTag ring = (it & 1) ? kRoot2 : kGauss;
      QuadInt w(i64(rng() % 2001) - 1000, i64(rng() % 2001) - 1000, ring);
      QuadInt z(i64(rng() % 2001) - 1000, i64(rng() % 2001) - 1000, ring);
      if (iabs(norm128(w)) > 1000000 || iabs(norm128(z)) > 1000000) continue;
      ++r.checked;
      if (norm128(w * z) != norm128(w) * norm128(z))
        r.fail_note("norm not multiplicative at " + show(w) + ", " + show(z));
    }
    r.detail = "sampled pairs with norms <= 10^6";
  });
}

inline SuiteResult suite_primitive4(const VerifyConfig& cfg) {
  using namespace detail_verify;
  return timed("primitive4", [&](SuiteResult& r) {
    for (RingTag ring : cfg.rings) {
      i64 coeff = ring.d0 == -1 ? i64(isqrt_u64(100000)) + 1 : 450;
      for (i64 a = -coeff; a <= coeff; ++a)
        for (i64 b = -coeff; b <= coeff; ++b) {
          QuadInt w(a, b, ring);
          if (w.is_zero() || !is_odd(w)) continue;
          if (iabs(norm128(w)) > 100000) continue;
          ++r.checked;
          if (is_primitive(w) != is_unit(gcd_ideal(w, conj(w))))
            r.fail_note("primitive4 mismatch at " + show(w));
        }
    }
    r.detail = "odd elements with |norm| <= 10^5 (Z[sqrt2]: coefficient box |a|,|b| <= 450)";
  });
}

inline SuiteResult suite_primitive5(const VerifyConfig& cfg) {
  using namespace detail_verify;
  return timed("primitive5", [&](SuiteResult& r) {
    std::mt19937_64 rng(cfg.seed + 5);
    while (r.checked < 2000) {
      RingTag ring = (r.checked & 1) ? kRoot2 : kGauss;
      QuadInt w(i64(rng() % 161) - 80, i64(rng() % 161) - 80, ring);
      QuadInt z(i64(rng() % 161) - 80, i64(rng() % 161) - 80, ring);
      if (w.is_zero() || z.is_zero() || !is_primitive(w) || !is_primitive(z)) continue;
      i64 rr = abs_norm(gcd_ideal(w, conj(z)));
      QuadInt prod = w * z;
      ++r.checked;
      if (prod.a % rr != 0 || prod.b % rr != 0) {
        r.fail_note("rational factor does not divide at " + show(w) + ", " + show(z));
        continue;
      }
      if (!is_primitive(QuadInt(prod.a / rr, prod.b / rr, ring)))
        r.fail_note("wz/r not primitive at " + show(w) + ", " + show(z));
    }
    r.detail = "random primitive pairs, extraction of the rational factor r";
  });
}

inline SuiteResult suite_lemfd(const VerifyConfig& cfg) {
  using namespace detail_verify;
  return timed("lemFD", [&](SuiteResult& r) {
    std::vector<i64> fails(64, 0);
    const std::size_t blocks = 64;
    std::vector<i64> counts(blocks, 0);
    run_blocks(blocks, cfg.threads, [&](std::size_t blk) {
      for (i64 u = 1 + i64(blk); u <= cfg.lemfd_u; u += i64(blocks)) {
        for (i64 v = -u; v <= u; ++v) {
          QuadInt w(u, v, kRoot2);
          if (norm128(w) <= 0) continue;
          ++counts[blk];
          auto [fd, k] = to_fundamental_domain(w);
          (void)k;
          bool ok = in_fundamental_domain(fd);
          // neighbors must be outside
          try {
            ok = ok && !in_fundamental_domain(fd * unit_eps_sq());
            ok = ok && !in_fundamental_domain(fd * unit_eps_sq_inv());
          } catch (const Error&) {
          }
          if (!ok) ++fails[blk];
        }
      }
    });
    for (std::size_t b = 0; b < blocks; ++b) {
      r.checked += counts[b];
      r.failures += fails[b];
    }
    r.detail = "totally positive u+v sqrt2, 0 < u <= " + std::to_string(cfg.lemfd_u);
  });
}

inline SuiteResult suite_splitprime(const VerifyConfig& cfg) {
  using namespace detail_verify;
  return timed("splitprime", [&](SuiteResult& r) {
    PrimeSieve sieve(cfg.prime_bound);
    for (RingTag ring : cfg.rings) {
      sieve.for_primes(3, cfg.prime_bound, [&](i64 p) {
        if (!splits_in(p, ring)) return;
        ++r.checked;
        NormalizedGenerator g = split_prime(p, ring);
        bool ok = abs_norm(g.value) == p && is_primitive(g.value);
        if (p % 8 == 1) ok = ok && square_class_mod4(g.value);
        if (!ok) r.fail_note("split_prime contract broken at p = " + std::to_string(p));
      });
    }
    r.detail = "norm, primitivity and square class over split primes <= " +
               std::to_string(cfg.prime_bound);
  });
}

// ---------------------------------------------------------------------------
// symbol suites
// ---------------------------------------------------------------------------

inline SuiteResult suite_factorgamma(const VerifyConfig& cfg) {
  using namespace detail_verify;
  return timed("factorgamma", [&](SuiteResult& r) {
    std::mt19937_64 rng(cfg.seed + 11);
    while (r.checked < 40000) {
      RingTag ring = (r.checked & 1) ? kRoot2 : kGauss;
      QuadInt w(i64(rng() % 201) - 100, i64(rng() % 201) - 100, ring);
      QuadInt z(i64(rng() % 201) - 100, i64(rng() % 201) - 100, ring);
      if (w.is_zero() || !is_odd(w)) continue;
      if (iabs(norm128(w)) > 10000 || iabs(norm128(z)) > 10000) continue;
      ++r.checked;
      Sym lhs = gamma_sym(w, z);
      Sym rhs = is_primitive(w) ? mu(w) * chi_w(w, z) : 0;
      if (lhs != rhs) r.fail_note("factorization fails at " + show(w) + ", " + show(z));
    }
    r.detail = "gamma = mu * chi_w on sampled pairs, |norms| <= 10^4";
  });
}

inline SuiteResult suite_gmult(const VerifyConfig& cfg) {
  using namespace detail_verify;
  return timed("gmult", [&](SuiteResult& r) {
    std::mt19937_64 rng(cfg.seed + 13);
    while (r.checked < 30000) {
      RingTag ring = (r.checked & 1) ? kRoot2 : kGauss;
      QuadInt w(i64(rng() % 61) - 30, i64(rng() % 61) - 30, ring);
      QuadInt z1(i64(rng() % 61) - 30, i64(rng() % 61) - 30, ring);
      QuadInt z2(i64(rng() % 61) - 30, i64(rng() % 61) - 30, ring);
      if (w.is_zero() || !is_odd(w)) continue;
      ++r.checked;
      if (gamma_sym(w, z1) * gamma_sym(w, z2) != gamma_sym(w, z1 * z2) * mu(w))
        r.fail_note("twisted multiplicativity fails at " + show(w));
    }
    r.detail = "gamma(w,z1) gamma(w,z2) = gamma(w,z1z2) mu(w), sampled";
  });
}

inline SuiteResult suite_reciprocity(const VerifyConfig& cfg) {
  using namespace detail_verify;
  return timed("reciprocitylem", [&](SuiteResult& r) {
    for (RingTag ring : cfg.rings) {
      i64 coeff = ring.d0 == -1 ? i64(isqrt_u64(u64(cfg.max_norm))) + 1 : 64;
      auto pool = odd_box(ring, cfg.max_norm, coeff);
      const std::size_t blocks = 64;
      std::vector<i64> fails(blocks, 0), counts(blocks, 0);
      run_blocks(blocks, cfg.threads, [&](std::size_t blk) {
        for (std::size_t i = blk; i < pool.size(); i += blocks) {
          for (std::size_t j = 0; j < pool.size(); ++j) {
            ++counts[blk];
            if (gamma_sym(pool[i], pool[j]) * gamma_sym(pool[j], pool[i]) !=
                mu(pool[i] * pool[j]))
              ++fails[blk];
          }
        }
      });
      for (std::size_t b = 0; b < blocks; ++b) {
        r.checked += counts[b];
        r.failures += fails[b];
      }
    }
    r.detail = "exhaustive over odd |norm| <= " + std::to_string(cfg.max_norm) +
               " (Z[sqrt2] coefficient box |a|,|b| <= 64)";
  });
}

inline SuiteResult suite_linkjacgamma(const VerifyConfig& cfg) {
  using namespace detail_verify;
  return timed("linkjacgamma", [&](SuiteResult& r) {
    std::mt19937_64 rng(cfg.seed + 17);
    PrimeSieve sieve(10000);
    auto ps = primes_1mod8(sieve, 17, 10000);
    for (RingTag ring : cfg.rings) {
      for (i64 p : ps) {
        QuadInt w = split_prime(p, ring).value;
        for (int it = 0; it < 20; ++it) {
          QuadInt z(i64(rng() % 201) - 100, i64(rng() % 201) - 100, ring);
          if (z.is_zero()) continue;
          ++r.checked;
          if (gamma_sym(w, z) * gamma_sym(conj(w), z) != jacobi(norm128(z), u64(p)))
            r.fail_note("link fails at p = " + std::to_string(p) + ", z = " + show(z));
        }
      }
    }
    r.detail = "gamma(w,z) gamma(conj w,z) = (norm z/p), degree-one primes <= 10^4";
  });
}

inline SuiteResult suite_steresult(const VerifyConfig& cfg) {
  using namespace detail_verify;
  return timed("SteResult", [&](SuiteResult& r) {
    PrimeSieve sieve(cfg.prime_bound);
    std::vector<i64> primes = sieve.primes();
    for (RingTag ring : cfg.rings) {
      const std::size_t blocks = 64;
      std::vector<i64> fails(blocks, 0), counts(blocks, 0);
      run_blocks(blocks, cfg.threads, [&](std::size_t blk) {
        for (std::size_t i = blk; i < primes.size(); i += blocks) {
          i64 p = primes[i];
          if (!splits_in(p, ring)) continue;
          QuadInt w = split_prime(p, ring).value;
          counts[blk] += 2;
          if (chi_t_symbol(w) != chi_t_congruence(w)) ++fails[blk];
          if (chi_t_symbol(conj(w)) != chi_t_congruence(conj(w))) ++fails[blk];
        }
      });
      for (std::size_t b = 0; b < blocks; ++b) {
        r.checked += counts[b];
        r.failures += fails[b];
      }
    }
    r.detail = "symbol path = congruence path on every split prime <= " +
               std::to_string(cfg.prime_bound);
  });
}

inline SuiteResult suite_quarticbridge(const VerifyConfig& cfg) {
  using namespace detail_verify;
  return timed("quarticbridge", [&](SuiteResult& r) {
    PrimeSieve sieve(cfg.prime_bound);
    auto ps = primes_1mod8(sieve, 17, cfg.prime_bound);
    const std::size_t blocks = 64;
    std::vector<i64> fails(blocks, 0), counts(blocks, 0);
    run_blocks(blocks, cfg.threads, [&](std::size_t blk) {
      for (std::size_t i = blk; i < ps.size(); i += blocks) {
        i64 p = ps[i];
        // d = 8: [2,p]_4 equals chi_t of a prime above p
        ++counts[blk];
        if (quartic_2p(p) != chi_t_symbol(split_prime(p, kRoot2).value)) ++fails[blk];
        // d = -4 closed form on the primary generator: a + b ≡ ±1 (mod 8)
        ++counts[blk];
        QuadInt w =
            normalize_generator(split_prime(p, kGauss).value, Convention::PrimaryZi).value;
        i64 s = ((w.a + w.b) % 8 + 8) % 8;
        if (chi_t_symbol(w) != ((s == 1 || s == 7) ? 1 : -1)) ++fails[blk];
      }
    });
    for (std::size_t b = 0; b < blocks; ++b) {
      r.checked += counts[b];
      r.failures += fails[b];
    }
    r.detail = "[2,p]_4 = chi_t (d = 8) and the primary congruence form (d = -4), p <= " +
               std::to_string(cfg.prime_bound);
  });
}

inline SuiteResult suite_primitive3(const VerifyConfig& cfg) {
  using namespace detail_verify;
  return timed("primitive3", [&](SuiteResult& r) {
    for (RingTag ring : cfg.rings) {
      for (const auto& m : primitive_ideal_reps(ring, 1000)) {
        if (is_unit(m)) continue;
        ResidueSystem rs = ResidueSystem::make(m);
        i64 lhs = 0;
        for (i64 s = 0; s < rs.e1; ++s)
          for (i64 t = 0; t < rs.e2; ++t) lhs += qr_symbol(QuadInt(s, t, ring), m);
        i64 rhs = 0;
        for (i64 n = 0; n < rs.count; ++n) rhs += jacobi(n, u64(rs.count));
        ++r.checked;
        if (lhs != rhs) r.fail_note("symbol sum mismatch at " + show(m));
      }
    }
    r.detail = "sum of (z/a) over Z[sqrt d0]/a equals the rational Jacobi sum, norm <= 10^3";
  });
}

inline SuiteResult suite_psi_independence(const VerifyConfig& cfg) {
  using namespace detail_verify;
  return timed("psiindependence", [&](SuiteResult& r) {
    std::mt19937_64 rng(cfg.seed + 23);
    PrimeSieve sieve(2000);
    auto ps = primes_1mod8(sieve, 17, 2000);
    for (RingTag ring : cfg.rings) {
      for (i64 p : ps) {
        QuadInt w = split_prime(p, ring).value;
        for (int it = 0; it < 10; ++it) {
          QuadInt z(i64(rng() % 61) - 30, i64(rng() % 61) - 30, ring);
          if (z.is_zero() || !is_odd(z)) continue;
          if (qr_symbol(z, conj(w)) == 0) continue;
          Sym base = psi_w(w, z);
          bool ok = true;
          if (ring.d0 == -1) {
            QuadInt u = z;
            for (int k = 0; k < 4; ++k) {
              ok = ok && psi_w(w, u) == base;
              u = QuadInt(-u.b, u.a, ring);
            }
          } else {
            for (int k = -3; k <= 3; ++k) {
              QuadInt u = z;
              for (int i = 0; i < (k < 0 ? -k : k); ++i)
                u = u * (k < 0 ? unit_eps_sq_inv() : unit_eps_sq());
              ok = ok && psi_w(w, u) == base && psi_w(w, -u) == base &&
                   psi_w(w, u * unit_eps()) == base;
            }
          }
          ++r.checked;
          if (!ok) r.fail_note("psi_w depends on the generator at p = " + std::to_string(p));
        }
      }
    }
    r.detail = "psi_w constant over unit multiples of z (signs, eps powers)";
  });
}

// ---------------------------------------------------------------------------
// criteria suites
// ---------------------------------------------------------------------------

inline SuiteResult suite_prop4rank(const VerifyConfig& cfg) {
  using namespace detail_verify;
  return timed("prop4rank", [&](SuiteResult& r) {
    PrimeSieve sieve(cfg.pq_max_oracle / 5 + 16);
    SpfTable spf(u64(std::max<i64>(2 * cfg.pq_max_oracle, 64)));
    std::vector<std::pair<i64, i64>> pairs;
    enumerate_pairs(cfg.pq_max_oracle, sieve, [&](i64 p, i64 q) {
      if (p % 4 == 1 && q % 4 == 1) pairs.push_back({p, q});
    });
    const std::size_t blocks = 64;
    std::vector<i64> fails(blocks, 0), counts(blocks, 0);
    run_blocks(blocks, cfg.threads, [&](std::size_t blk) {
      for (std::size_t i = blk; i < pairs.size(); i += blocks) {
        auto [p, q] = pairs[i];
        bool crit = rk4_is_two(p, q);
        for (RingTag ring : cfg.rings) {
          ++counts[blk];
          RankProfile prof = rank_profile(i64(ring.d) * p * q, &spf);
          if (prof.rk2 != 2 || (prof.rk4 == 2) != crit) ++fails[blk];
        }
      }
    });
    for (std::size_t b = 0; b < blocks; ++b) {
      r.checked += counts[b];
      r.failures += fails[b];
    }
    r.detail = "rk4 = 2 iff (p ≡ q ≡ 1 mod 8 and (p/q) = 1), rk2 = 2, vs the form oracle, pq <= " +
               std::to_string(cfg.pq_max_oracle);
  });
}

inline SuiteResult suite_algebra_soundness(const VerifyConfig& cfg) {
  using namespace detail_verify;
  return timed("algebra", [&](SuiteResult& r) {
    PrimeSieve sieve(cfg.sample_pq_max / 17 + 16);
    SpfTable spf(u64(std::max<i64>(cfg.sample_pq_max / 2, 2 * cfg.pq_max_oracle)));
    // exhaustive below the oracle bound
    std::vector<std::pair<i64, i64>> small_yes[2];
    enumerate_pairs(cfg.pq_max_oracle, sieve, [&](i64 p, i64 q) {
      if (p % 8 != 1 || q % 8 != 1 || jacobi(p, u64(q)) != 1) return;
      for (RingTag ring : cfg.rings)
        if (build_pair(p, q, ring).prediction == Rk8Prediction::Yes)
          small_yes[ring.d0 == -1 ? 0 : 1].push_back({p, q});
    });
    // random predicted-yes pairs up to the sample bound
    std::vector<std::pair<i64, i64>> big_yes[2];
    enumerate_pairs(cfg.sample_pq_max, sieve, [&](i64 p, i64 q) {
      if (p * q <= cfg.pq_max_oracle) return;
      if (p % 8 != 1 || q % 8 != 1 || jacobi(p, u64(q)) != 1) return;
      for (RingTag ring : cfg.rings)
        if (build_pair(p, q, ring).prediction == Rk8Prediction::Yes)
          big_yes[ring.d0 == -1 ? 0 : 1].push_back({p, q});
    });
    std::mt19937_64 rng(cfg.seed + 31);
    for (RingTag ring : cfg.rings) {
      int idx = ring.d0 == -1 ? 0 : 1;
      std::vector<std::pair<i64, i64>> work = small_yes[idx];
      auto& big = big_yes[idx];
      std::shuffle(big.begin(), big.end(), rng);
      std::size_t take = std::min<std::size_t>(big.size(), std::size_t(cfg.samples / 2));
      work.insert(work.end(), big.begin(), big.begin() + take);
      const std::size_t blocks = 64;
      std::vector<i64> fails(blocks, 0), counts(blocks, 0);
      run_blocks(blocks, cfg.threads, [&](std::size_t blk) {
        for (std::size_t i = blk; i < work.size(); i += blocks) {
          auto [p, q] = work[i];
          ++counts[blk];
          if (rank_profile(i64(ring.d) * p * q, &spf).rk8 < 1) ++fails[blk];
        }
      });
      for (std::size_t b = 0; b < blocks; ++b) {
        r.checked += counts[b];
        r.failures += fails[b];
      }
    }
    r.detail = "every predicted pair has oracle rk8 >= 1 (exhaustive pq <= " +
               std::to_string(cfg.pq_max_oracle) + " plus sampled pq <= " +
               std::to_string(cfg.sample_pq_max) + ")";
  });
}

inline SuiteResult suite_split22(const VerifyConfig& cfg) {
  using namespace detail_verify;
  return timed("split22", [&](SuiteResult& r) {
    PrimeSieve sieve(cfg.pq_max_dual / 17 + 16);
    auto ps = primes_1mod8(sieve, 17, cfg.pq_max_dual / 17);
    for (RingTag ring : cfg.rings) {
      for (std::size_t i = 0; i < ps.size(); ++i) {
        if (i128(ps[i]) * ps[i] >= cfg.pq_max_dual) break;
        QuadInt w = split_prime(ps[i], ring).value;
        Sym cw = chi_t_symbol(w);
        for (std::size_t j = i + 1; j < ps.size() && ps[i] * ps[j] <= cfg.pq_max_dual; ++j) {
          QuadInt z = split_prime(ps[j], ring).value;
          QuadInt alpha = w * z;
          Sym cz = chi_t_symbol(z);
          bool local_square = detail::t5_square_class(alpha);
          Sym expected = ring.d0 == -1 ? (local_square ? 1 : -1)
                                       : Sym((local_square ? 1 : -1) * (alpha.a > 0 ? 1 : -1));
          ++r.checked;
          if (cw * cz != expected)
            r.fail_note("character product disagrees at (" + std::to_string(ps[i]) + ", " +
                        std::to_string(ps[j]) + ")");
        }
      }
    }
    r.detail =
        "chi_t(w) chi_t(z) = [alpha ≡ square mod t^5] (times sign(x) for d = 8), pq <= " +
        std::to_string(cfg.pq_max_dual);
  });
}

inline SuiteResult suite_xpos2(const VerifyConfig& cfg) {
  using namespace detail_verify;
  return timed("xpos2", [&](SuiteResult& r) {
    PrimeSieve sieve(cfg.pq_max_dual / 17 + 16);
    auto ps = primes_1mod8(sieve, 17, cfg.pq_max_dual / 17);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (i128(ps[i]) * ps[i] >= cfg.pq_max_dual) break;
      QuadInt w = split_prime(ps[i], kRoot2).value;
      Sym cw = chi_t_symbol(w);
      for (std::size_t j = i + 1; j < ps.size() && ps[i] * ps[j] <= cfg.pq_max_dual; ++j) {
        QuadInt z = split_prime(ps[j], kRoot2).value;
        if (cw * chi_t_symbol(z) != 1) continue;  // the bridge presumes the character condition
        QuadInt alpha = w * z;
        ++r.checked;
        if ((alpha.a > 0) != ((ps[i] * ps[j]) % 16 == 1))
          r.fail_note("x-positivity bridge fails at (" + std::to_string(ps[i]) + ", " +
                      std::to_string(ps[j]) + ")");
      }
    }
    r.detail = "given chi_t(w) chi_t(z) = 1: x > 0 iff pq ≡ 1 (mod 16), d = 8, pq <= " +
               std::to_string(cfg.pq_max_dual);
  });
}

inline SuiteResult suite_choice_independence(const VerifyConfig& cfg) {
  using namespace detail_verify;
  return timed("choiceindependence", [&](SuiteResult& r) {
    PrimeSieve sieve(cfg.pq_max_choice / 17 + 16);
    auto ps = primes_1mod8(sieve, 17, cfg.pq_max_choice / 17);
    for (RingTag ring : cfg.rings) {
      for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
          i64 p = ps[i], q = ps[j];
          if (p * q > cfg.pq_max_choice) break;
          if (!rk4_is_two(p, q)) continue;
          PairRecord base = build_pair(p, q, ring);
          if (ring.d0 == 2 && !(base.flag_split2 && base.flag_xpos)) continue;
          auto gens = [&](i64 pr) {
            std::vector<QuadInt> out;
            QuadInt w0 = split_prime(pr, ring).value;
            for (QuadInt s : {w0, conj(w0)}) {
              if (ring.d0 == -1) {
                QuadInt cur = s;
                for (int k = 0; k < 4; ++k) {
                  if (square_class_mod4(cur)) out.push_back(cur);
                  cur = QuadInt(-cur.b, cur.a, ring);
                }
              } else {
                for (int k = -2; k <= 2; ++k) {
                  QuadInt cur = s;
                  for (int t = 0; t < (k < 0 ? -k : k); ++t)
                    cur = cur * (k < 0 ? unit_eps_sq_inv() : unit_eps_sq());
                  if (square_class_mod4(cur)) out.push_back(cur);
                  if (square_class_mod4(-cur)) out.push_back(-cur);
                }
              }
            }
            return out;
          };
          bool ok = true;
          for (const QuadInt& w : gens(p))
            for (const QuadInt& z : gens(q)) {
              QuadInt alpha = w * z;
              if (ring.d0 == 2 && alpha.a < 0) continue;
              ResidueSystem rw = ResidueSystem::make(w);
              if (jacobi(rw.rational_image(conj(alpha)), u64(rw.count)) != base.epsilon)
                ok = false;
            }
          ++r.checked;
          if (!ok)
            r.fail_note("epsilon depends on the generators at (" + std::to_string(p) + ", " +
                        std::to_string(q) + ")");
        }
      }
    }
    r.detail = "epsilon and the prediction under all admissible generator choices, pq <= " +
               std::to_string(cfg.pq_max_choice);
  });
}

// ---------------------------------------------------------------------------
// charsum suites
// ---------------------------------------------------------------------------

inline SuiteResult suite_keycancellation(const VerifyConfig& cfg) {
  using namespace detail_verify;
  return timed("keycancellation", [&](SuiteResult& r) {
    for (RingTag ring : cfg.rings) {
      auto reps = primitive_ideal_reps(ring, cfg.keycancel_norm);
      const std::size_t blocks = 64;
      std::vector<i64> fails(blocks, 0), counts(blocks, 0);
      run_blocks(blocks, cfg.threads, [&](std::size_t blk) {
        for (std::size_t i = blk; i < reps.size(); i += blocks) {
          for (std::size_t j = 0; j < reps.size(); ++j) {
            auto res = key_cancellation_sum(reps[i], reps[j], cfg.grid_cap);
            ++counts[blk];
            i64 m = res.measured < 0 ? -res.measured : res.measured;
            if (m != res.predicted_abs) ++fails[blk];
          }
        }
      });
      for (std::size_t b = 0; b < blocks; ++b) {
        r.checked += counts[b];
        r.failures += fails[b];
      }
    }
    // random larger pairs
    std::mt19937_64 rng(cfg.seed + 41);
    for (RingTag ring : cfg.rings) {
      auto reps = primitive_ideal_reps(ring, cfg.keycancel_random_norm);
      for (i64 it = 0; it < cfg.keycancel_random_pairs / 2; ++it) {
        const auto& w1 = reps[rng() % reps.size()];
        const auto& w2 = reps[rng() % reps.size()];
        auto res = key_cancellation_sum(w1, w2, cfg.grid_cap);
        ++r.checked;
        i64 m = res.measured < 0 ? -res.measured : res.measured;
        if (m != res.predicted_abs)
          r.fail_note("identity fails at " + show(w1) + ", " + show(w2));
      }
    }
    r.detail = "|sum| = W phi(r) phi(W/r): exhaustive ideal pairs with norms <= " +
               std::to_string(cfg.keycancel_norm) + " plus " +
               std::to_string(cfg.keycancel_random_pairs) + " random pairs with norms <= " +
               std::to_string(cfg.keycancel_random_norm);
  });
}

inline SuiteResult suite_keycancel_conjugate(const VerifyConfig& cfg) {
  using namespace detail_verify;
  return timed("keycancelconjugate", [&](SuiteResult& r) {
    std::mt19937_64 rng(cfg.seed + 43);
    for (RingTag ring : cfg.rings) {
      auto reps = primitive_ideal_reps(ring, 200);
      for (int it = 0; it < 200; ++it) {
        const auto& w1 = reps[rng() % reps.size()];
        const auto& w2 = reps[rng() % reps.size()];
        auto a = key_cancellation_sum(w1, w2, cfg.grid_cap);
        auto b = key_cancellation_sum(conj(w1), conj(w2), cfg.grid_cap);
        ++r.checked;
        i64 ma = a.measured < 0 ? -a.measured : a.measured;
        i64 mb = b.measured < 0 ? -b.measured : b.measured;
        if (ma != mb || a.predicted_abs != b.predicted_abs)
          r.fail_note("conjugate variant differs at " + show(w1) + ", " + show(w2));
      }
    }
    r.detail = "replacing (w1, w2) by their conjugates preserves |measured|";
  });
}

inline SuiteResult suite_deltatable(const VerifyConfig& cfg) {
  using namespace detail_verify;
  return timed("deltatable", [&](SuiteResult& r) {
    // build: throws NonConstantClass on an inconsistent class
    DeltaTable tbl = build_delta_table(100, 1000);
    i64 populated = 0;
    for (std::size_t cw = 0; cw < 64; ++cw)
      for (std::size_t cz = 0; cz < 64; ++cz)
        for (int sw = 0; sw < 2; ++sw)
          for (int sz = 0; sz < 2; ++sz)
            if (tbl.delta[cw][cz][std::size_t(sw)][std::size_t(sz)] != 0) ++populated;
    // closed form: the entry is mu(wz) = (-2/|a(wz)|)
    std::mt19937_64 rng(cfg.seed + 47);
    auto pool = primitive_ideal_reps(kRoot2, 3000);
    i64 spot = 0;
    while (spot < 3000) {
      QuadInt w = pool[rng() % pool.size()];
      QuadInt z = pool[rng() % pool.size()];
      if (rng() & 1) w = -w;
      if (rng() & 1) z = -z;
      if (mod_u64(norm128(w), 8) != 1 || mod_u64(norm128(z), 8) != 1) continue;
      Sym g1 = gamma_sym(w, z), g2 = gamma_sym(z, w);
      ++spot;
      if (g1 == 0 || g2 == 0) continue;
      ++r.checked;
      int8_t cell = tbl.delta[std::size_t(DeltaTable::class_index(w))]
                             [std::size_t(DeltaTable::class_index(z))][w.a > 0 ? 0 : 1]
                             [z.a > 0 ? 0 : 1];
      QuadInt prod = w * z;
      i64 aa = prod.a < 0 ? -prod.a : prod.a;
      bool ok = g1 == i64(cell == 0 ? g1 : cell * g2);
      ok = ok && g1 * g2 == jacobi(-2, u64(aa));
      if (!ok) r.fail_note("delta entry wrong at " + show(w) + ", " + show(z));
    }
    // d = -4 analogue: gamma symmetric
    for (int it = 0; it < 2000; ++it) {
      QuadInt w(i64(rng() % 81) - 40, i64(rng() % 81) - 40, kGauss);
      QuadInt z(i64(rng() % 81) - 40, i64(rng() % 81) - 40, kGauss);
      if (w.is_zero() || z.is_zero()) continue;
      if (!is_odd(w) || !is_odd(z)) continue;
      if (mod_u64(norm128(w), 8) != 1 || mod_u64(norm128(z), 8) != 1) continue;
      ++r.checked;
      if (gamma_sym(w, z) != gamma_sym(z, w))
        r.fail_note("gamma not symmetric in Z[i] at " + show(w) + ", " + show(z));
    }
    r.detail = "delta constant per congruence/sign class (" + std::to_string(populated) +
               " populated cells), equal to mu(wz); d = -4 analogue is trivial";
  });
}

inline SuiteResult suite_q_vs_b0(const VerifyConfig& cfg) {
  using namespace detail_verify;
  return timed("QvsB0", [&](SuiteResult& r) {
    for (RingTag ring : cfg.rings) {
      BilinearConfig bc;
      bc.ring = ring;
      bc.delta = Rat(1, 4);
      bc.primes_only = false;
      bc.norm_1_mod_8_only = false;
      for (i64 M : {400, 900}) {
        bc.mode = ScanMode::PrimitiveZ_B0;
        auto b0 = bilinear_sum(bc, M, M);
        bc.mode = ScanMode::UnrestrictedZ_Q;
        auto q = bilinear_sum(bc, M, M);
        auto ws = window_elements(ring, M, bc.delta);
        i64 extra = 0;
        for (const auto& w : ws) {
          if (!is_primitive(w)) continue;
          for (const auto& z : ws)
            if (!is_primitive(z)) extra += gamma_sym(w, z);
        }
        ++r.checked;
        if (q.value - b0.value != extra) r.fail_note("Q - B0 mismatch at M = " + std::to_string(M));
      }
    }
    r.detail = "Q - B0 equals the non-primitive z contribution, recomputed independently";
  });
}

inline SuiteResult suite_b0_symmetry(const VerifyConfig& cfg) {
  using namespace detail_verify;
  return timed("B0symmetry", [&](SuiteResult& r) {
    DeltaTable tbl = build_delta_table(60, 50);
    i64 M = 2000, N = 3100;
    Rat delta(1, 2);
    auto ws_all = window_elements(kRoot2, M, delta);
    auto zs_all = window_elements(kRoot2, N, delta);
    for (int cw = 0; cw < 64; ++cw) {
      for (int cz = 0; cz < 64; ++cz) {
        std::vector<QuadInt> ws, zs;
        for (const auto& w : ws_all)
          if (is_primitive(w) && mod_u64(norm128(w), 8) == 1 &&
              DeltaTable::class_index(w) == cw && w.a > 0)
            ws.push_back(w);
        for (const auto& z : zs_all)
          if (is_primitive(z) && mod_u64(norm128(z), 8) == 1 &&
              DeltaTable::class_index(z) == cz && z.a > 0)
            zs.push_back(z);
        if (ws.size() < 2 || zs.size() < 2) continue;
        int8_t d = tbl.delta[std::size_t(cw)][std::size_t(cz)][0][0];
        if (d == 0) continue;
        i64 fwd = 0, rev = 0;
        for (const auto& w : ws)
          for (const auto& z : zs) {
            fwd += gamma_sym(w, z);
            rev += gamma_sym(z, w);
          }
        ++r.checked;
        if (fwd != i64(d) * rev) r.fail_note("window symmetry fails on a class pair");
      }
    }
    r.detail = "B0(M,N) = delta * B0(N,M) per congruence/sign class on small windows";
  });
}

inline SuiteResult suite_bilinear_decay(const VerifyConfig& cfg) {
  using namespace detail_verify;
  return timed("bilineardecay", [&](SuiteResult& r) {
    for (RingTag ring : cfg.rings) {
      BilinearConfig bc;
      bc.ring = ring;
      bc.delta = Rat(1, 8);
      bc.m_values = {i64(1) << 10, i64(1) << 12, i64(1) << 14, i64(1) << 16};
      auto rows = bilinear_scan(bc);
      for (std::size_t i = 1; i < rows.size(); ++i) {
        ++r.checked;
        if (!(rows[i].normalized < rows[i - 1].normalized))
          r.fail_note("no decay from M = " + std::to_string(rows[i - 1].M) + " to " +
                      std::to_string(rows[i].M) + " (d = " + std::to_string(ring.d) + ")");
      }
    }
    r.detail = "normalized |B0|/(Delta^2 MN) strictly decreases over M = N in {2^10..2^16}";
  });
}

// ---------------------------------------------------------------------------
// census suites
// ---------------------------------------------------------------------------

inline SuiteResult suite_autweights(const VerifyConfig&) {
  using namespace detail_verify;
  return timed("autweights", [&](SuiteResult& r) {
    auto aut_oracle = [](int m, int n) {
      i64 om = i64(1) << m, on = i64(1) << n;
      i64 size = om * on;
      i64 count = 0;
      for (i64 a1 = 0; a1 < om; ++a1)
        for (i64 b1 = 0; b1 < on; ++b1) {
          if ((om * b1) % on != 0) continue;
          for (i64 a2 = 0; a2 < om; ++a2)
            for (i64 b2 = 0; b2 < on; ++b2) {
              if ((on * a2) % om != 0) continue;
              std::vector<char> hit(std::size_t(size), 0);
              i64 seen = 0;
              for (i64 x = 0; x < om; ++x)
                for (i64 y = 0; y < on; ++y) {
                  i64 u = (x * a1 + y * a2) % om, v = (x * b1 + y * b2) % on;
                  char& h = hit[std::size_t(u * on + v)];
                  if (!h) {
                    h = 1;
                    ++seen;
                  }
                }
              if (seen == size) ++count;
            }
        }
      return count;
    };
    for (int m = 1; m <= 3; ++m)
      for (int n = m; n <= 3; ++n) {
        ++r.checked;
        if (aut_count(m, n) != aut_oracle(m, n))
          r.fail_note("aut count differs at (" + std::to_string(m) + "," + std::to_string(n) + ")");
      }
    auto wi = cl_weights(kGauss);
    auto wr = cl_weights(kRoot2);
    ++r.checked;
    if (!(wi.total_weight == Rat(4, 9) && wi.ratio == Rat(5, 8))) r.fail_note("d=-4 weights wrong");
    ++r.checked;
    if (!(wr.total_weight == Rat(4, 63) && wr.ratio == Rat(11, 32))) r.fail_note("d=8 weights wrong");
    r.detail = "aut counts vs brute force (m <= n <= 3); exact weight sums 4/9, 5/8 and 4/63, 11/32";
  });
}

inline SuiteResult suite_decomposition(const VerifyConfig& cfg) {
  using namespace detail_verify;
  return timed("deffpqbrbsbe", [&](SuiteResult& r) {
    for (RingTag ring : cfg.rings) {
      for (int r1 : {1, 9})
        for (int r2 : {1, 9})
          for (int s1 : {-1, 1})
            for (int s2 : {-1, 1}) {
              IndicatorConfig cell;
              cell.r1 = r1;
              cell.r2 = r2;
              cell.s1 = s1;
              cell.s2 = s2;
              if (!admissible_cell(cell, ring)) continue;
              ++r.checked;
              auto rep = decomposition_check(cfg.decomposition_X, cell, ring);
              if (!rep.equal)
                r.fail_note("decomposition fails in cell (" + std::to_string(r1) + "," +
                            std::to_string(r2) + "," + std::to_string(s1) + "," +
                            std::to_string(s2) + "), d = " + std::to_string(ring.d));
            }
    }
    r.detail = "constrained count = (1/4) sum_e sum f(p,q;r,s,e) for all admissible cells at X = " +
               std::to_string(cfg.decomposition_X);
  });
}

inline SuiteResult suite_census_oracle(const VerifyConfig& cfg) {
  using namespace detail_verify;
  return timed("censusoracle", [&](SuiteResult& r) {
    SpfTable spf(u64(std::max<i64>(2 * cfg.pq_max_oracle, 64)));
    PrimeSieve sieve(cfg.pq_max_oracle);
    for (RingTag ring : cfg.rings) {
      i64 rk4_crit = 0, rk4_oracle = 0, yes_unsound = 0;
      enumerate_pairs(cfg.pq_max_oracle, sieve, [&](i64 p, i64 q) {
        if (p % 4 != 1 || q % 4 != 1) return;
        bool crit = rk4_is_two(p, q);
        if (crit) ++rk4_crit;
        RankProfile prof = rank_profile(i64(ring.d) * p * q, &spf);
        if (prof.rk4 == 2) ++rk4_oracle;
        if (crit && build_pair(p, q, ring).prediction == Rk8Prediction::Yes && prof.rk8 < 1)
          ++yes_unsound;
      });
      ++r.checked;
      if (rk4_crit != rk4_oracle || yes_unsound != 0)
        r.fail_note("census/oracle mismatch for d = " + std::to_string(ring.d));
    }
    r.detail = "criterion rk4 count equals the oracle count exactly; predicted pairs sound, pq <= " +
               std::to_string(cfg.pq_max_oracle);
  });
}

inline SuiteResult suite_census_targets(const VerifyConfig& cfg) {
  using namespace detail_verify;
  return timed("censustargets", [&](SuiteResult& r) {
    for (RingTag ring : cfg.rings) {
      CensusConfig cc;
      cc.ring = ring;
      cc.x_max = cfg.census_x;
      cc.checkpoints = 10;
      cc.threads = cfg.threads;
      auto res = run_census(cc);
      const CensusRow& last = res.rows.back();
      double ratio = last.n_rk4_2 > 0 ? last.ratio_pred.to_double() : 0.0;
      double lo = ring.d0 == -1 ? 0.20 : 0.08;
      double hi = ring.d0 == -1 ? 0.30 : 0.17;
      ++r.checked;
      if (!(ratio >= lo && ratio <= hi))
        r.fail_note("ratio_pred " + fixed9(ratio) + " outside [" + fixed9(lo) + ", " + fixed9(hi) +
                    "] for d = " + std::to_string(ring.d));
      ++r.checked;
      if (!(last.ratio_vs_scale >= 1.0 / 64 && last.ratio_vs_scale <= 1.0 / 16))
        r.fail_note("rk4 density scale " + fixed9(last.ratio_vs_scale) +
                    " outside a factor 2 of 1/32 for d = " + std::to_string(ring.d));
      ++r.checked;
      double bound = 1.0 / double(ring.d < 0 ? -ring.d : ring.d);
      if (!(ratio >= bound))
        r.fail_note("ratio_pred " + fixed9(ratio) + " below the lower-density bound " +
                    fixed9(bound) + " for d = " + std::to_string(ring.d));
      r.detail += (r.detail.empty() ? "" : "; ") + std::string("d = ") +
                  std::to_string(ring.d) + ": ratio_pred = " + fixed9(ratio) +
                  " (n = " + std::to_string(last.n_pred_yes) + "/" + std::to_string(last.n_rk4_2) +
                  "), scale = " + fixed9(last.ratio_vs_scale);
    }
    r.detail += "; X = " + std::to_string(cfg.census_x);
  });
}

inline SuiteResult suite_determinism(const VerifyConfig& cfg) {
  using namespace detail_verify;
  return timed("determinism", [&](SuiteResult& r) {
    for (RingTag ring : cfg.rings) {
      CensusConfig cc;
      cc.ring = ring;
      cc.x_max = 200000;
      cc.checkpoints = 5;
      cc.with_oracle = true;
      std::vector<std::string> outputs;
      for (int threads : {1, 2, 4}) {
        cc.threads = threads;
        auto res = run_census(cc);
        outputs.push_back(census_csv(res) + census_cells_csv(res));
      }
      ++r.checked;
      if (outputs[0] != outputs[1] || outputs[0] != outputs[2])
        r.fail_note("census output differs across thread counts for d = " + std::to_string(ring.d));
      // charsum scan reruns bit-exactly
      BilinearConfig bc;
      bc.ring = ring;
      bc.delta = Rat(1, 8);
      bc.m_values = {1 << 10, 1 << 11};
      auto s1 = scan_csv(bilinear_scan(bc));
      auto s2 = scan_csv(bilinear_scan(bc));
      ++r.checked;
      if (s1 != s2) r.fail_note("bilinear scan output not reproducible");
    }
    r.detail = "byte-identical census and scan payloads across thread counts and reruns";
  });
}

// ---------------------------------------------------------------------------
// registry
// ---------------------------------------------------------------------------

using SuiteFn = SuiteResult (*)(const VerifyConfig&);

inline const std::vector<std::pair<std::string, SuiteFn>>& suite_registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> reg = {
      {"normmult", suite_normmult},
      {"primitive4", suite_primitive4},
      {"primitive5", suite_primitive5},
      {"lemFD", suite_lemfd},
      {"splitprime", suite_splitprime},
      {"factorgamma", suite_factorgamma},
      {"gmult", suite_gmult},
      {"reciprocitylem", suite_reciprocity},
      {"linkjacgamma", suite_linkjacgamma},
      {"SteResult", suite_steresult},
      {"quarticbridge", suite_quarticbridge},
      {"primitive3", suite_primitive3},
      {"psiindependence", suite_psi_independence},
      {"prop4rank", suite_prop4rank},
      {"algebra", suite_algebra_soundness},
      {"split22", suite_split22},
      {"xpos2", suite_xpos2},
      {"choiceindependence", suite_choice_independence},
      {"keycancellation", suite_keycancellation},
      {"keycancelconjugate", suite_keycancel_conjugate},
      {"deltatable", suite_deltatable},
      {"QvsB0", suite_q_vs_b0},
      {"B0symmetry", suite_b0_symmetry},
      {"bilineardecay", suite_bilinear_decay},
      {"autweights", suite_autweights},
      {"deffpqbrbsbe", suite_decomposition},
      {"censusoracle", suite_census_oracle},
      {"determinism", suite_determinism},
  };
  return reg;
}

// Heavy suites excluded from the default run (available by name).
inline const std::vector<std::pair<std::string, SuiteFn>>& heavy_suite_registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> reg = {
      {"censustargets", suite_census_targets},
  };
  return reg;
}

inline std::vector<SuiteResult> verify_all(const VerifyConfig& cfg,
                                           const std::vector<std::string>& only = {}) {
  std::vector<SuiteResult> out;
  auto want = [&](const std::string& name) {
    if (only.empty()) return true;
    for (const auto& s : only)
      if (s == name) return true;
    return false;
  };
  for (const auto& [name, fn] : suite_registry())
    if (want(name)) out.push_back(fn(cfg));
  for (const auto& [name, fn] : heavy_suite_registry())
    if (!only.empty() && want(name)) out.push_back(fn(cfg));
  return out;
}

}  // namespace quadrank

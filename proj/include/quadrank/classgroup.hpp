#pragma once

// Brute-force narrow class groups of fundamental discriminants via binary
// quadratic forms: reduced-form enumeration, Gauss/Dirichlet composition
// through concordant representatives, reduction cycles for indefinite forms,
// and elementary-divisor extraction by greedy peeling.

#include <map>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "quadrank/numeric.hpp"

namespace quadrank {

struct BQForm {
  i64 a = 0, b = 0, c = 0;
  bool operator==(const BQForm& o) const { return a == o.a && b == o.b && c == o.c; }
};

struct RankProfile {
  int rk2 = 0, rk4 = 0, rk8 = 0;
};

struct ClassGroupStructure {
  i64 discriminant = 0;
  std::vector<i64> elementary_divisors;  // ascending divisibility chain d1 | d2 | ...
  i64 order = 1;
};

// ---------------------------------------------------------------------------
// Smallest-prime-factor sieve (shared across oracle calls)
// ---------------------------------------------------------------------------

struct SpfTable {
  std::vector<int32_t> spf;

  explicit SpfTable(u64 n) {
    spf.assign(n + 1, 0);
    for (u64 i = 2; i <= n; ++i) {
      if (spf[i] == 0) {
        for (u64 j = i; j <= n; j += i)
          if (spf[j] == 0) spf[j] = int32_t(i);
      }
    }
  }

  bool covers(u64 n) const { return n < spf.size(); }

  std::vector<std::pair<u64, int>> factorize(u64 n) const {
    std::vector<std::pair<u64, int>> f;
    while (n > 1) {
      u64 p = u64(spf[n]);
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      f.push_back({p, e});
    }
    return f;
  }
};

inline std::vector<std::pair<u64, int>> factorize_maybe_spf(u64 n, const SpfTable* spf) {
  if (spf && spf->covers(n)) return spf->factorize(n);
  return factorize_u64(n);
}

inline bool is_fundamental_discriminant(i64 D, const SpfTable* spf = nullptr) {
  if (D == 0 || D == 1) return false;
  auto squarefree = [&](i64 n) {
    u64 m = u64(n < 0 ? -n : n);
    for (auto [p, e] : factorize_maybe_spf(m, spf))
      if (e > 1) return false;
    return true;
  };
  i64 r = ((D % 4) + 4) % 4;
  if (r == 1) return squarefree(D);
  if (r == 0) {
    i64 m = D / 4;
    i64 rm = ((m % 4) + 4) % 4;
    return (rm == 2 || rm == 3) && squarefree(m);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Form-level helpers
// ---------------------------------------------------------------------------

namespace detail_cg {

struct FormKey {
  i64 a, b;
  bool operator==(const FormKey& o) const { return a == o.a && b == o.b; }
};
struct FormKeyHash {
  std::size_t operator()(const FormKey& k) const {
    u64 h = u64(k.a) * 0x9e3779b97f4a7c15ull ^ (u64(k.b) + 0x7f4a7c15u);
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
    return std::size_t(h);
  }
};

inline BQForm normalize_definite(BQForm f, i64 D) {
  // b into (-a, a]
  i64 a2 = 2 * f.a;
  i64 r = ((f.b % a2) + a2) % a2;  // [0, 2a)
  if (r > f.a) r -= a2;
  f.b = r;
  f.c = narrow((i128(f.b) * f.b - D) / (4 * i128(f.a)), "form coefficient");
  return f;
}

inline BQForm reduce_definite(BQForm f, i64 D) {
  f = normalize_definite(f, D);
  while (f.a > f.c) {
    f = BQForm{f.c, -f.b, f.a};
    f = normalize_definite(f, D);
  }
  if (f.a == f.c && f.b < 0) f.b = -f.b;
  return f;
}

inline bool indef_reduced(const BQForm& f, i64 D, i64 m) {
  if (f.b <= 0 || f.b > m) return false;
  i64 ta = 2 * (f.a < 0 ? -f.a : f.a);
  // 2|a| + b > sqrt(D)
  if (i128(ta + f.b) * (ta + f.b) <= D) return false;
  // 2|a| - b < sqrt(D)
  if (ta > f.b && i128(ta - f.b) * (ta - f.b) >= D) return false;
  return true;
}

inline i64 floor_div(i64 n, i64 d) {
  i64 q = n / d;
  if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
  return q;
}

inline BQForm rho_step(const BQForm& f, i64 D, i64 m) {
  i64 cc = f.c < 0 ? -f.c : f.c;
  i64 period = 2 * cc;
  i64 r = ((-f.b) % period + period) % period;  // in [0, 2|c|)
  i64 b2;
  if (cc > m) {
    b2 = (r > cc) ? r - period : r;
  } else {
    b2 = r + period * floor_div(m - r, period);
  }
  i64 c2 = narrow((i128(b2) * b2 - D) / (4 * i128(f.c)), "form coefficient");
  return BQForm{f.c, b2, c2};
}

inline BQForm reduce_indefinite(BQForm f, i64 D, i64 m) {
  for (int guard = 0; guard < 100000; ++guard) {
    if (indef_reduced(f, D, m)) return f;
    f = rho_step(f, D, m);
  }
  fail(Errc::ConsistencyViolation, "indefinite reduction did not terminate");
}

}  // namespace detail_cg

// ---------------------------------------------------------------------------
// FormClassGroup: the narrow class group of a fundamental discriminant as an
// explicit finite abelian group on reduced-form representatives.
// ---------------------------------------------------------------------------

class FormClassGroup {
 public:
  FormClassGroup(i64 D, const SpfTable* spf = nullptr) : D_(D), spf_(spf) {
    if (!is_fundamental_discriminant(D, spf)) fail(Errc::NotFundamental, "discriminant is not fundamental");
    sqrt_floor_ = D > 0 ? i64(isqrt_u64(u64(D))) : 0;
    if (D < 0)
      build_definite();
    else
      build_indefinite();
    identity_ = class_of(reduce_any(principal_form()));
  }

  i64 discriminant() const { return D_; }
  i64 order() const { return i64(reps_.size()); }
  int identity() const { return identity_; }
  const BQForm& rep(int id) const { return reps_[std::size_t(id)]; }

  int compose(int i, int j) const {
    BQForm f = compose_forms(reps_[std::size_t(i)], reps_[std::size_t(j)]);
    return class_of(reduce_any(f));
  }

  int inverse(int i) const {
    const BQForm& f = reps_[std::size_t(i)];
    return class_of(reduce_any(BQForm{f.a, -f.b, f.c}));
  }

  int power(int g, u64 e) const {
    int r = identity_;
    int base = g;
    while (e > 0) {
      if (e & 1) r = compose(r, base);
      base = compose(base, base);
      e >>= 1;
    }
    return r;
  }

  // Elementary divisors as an ascending divisibility chain (trivial group:
  // empty list).  Greedy peeling by maximal order in the running quotient.
  std::vector<i64> elementary_divisors() const {
    i64 h = order();
    std::vector<char> in_H(std::size_t(h), 0);
    in_H[std::size_t(identity_)] = 1;
    i64 h_count = 1;
    std::vector<i64> divisors;
    while (h_count < h) {
      int best_g = -1;
      i64 best_ord = 0;
      for (int g = 0; g < h; ++g) {
        i64 k = order_mod(g, in_H);
        if (k > best_ord) {
          best_ord = k;
          best_g = g;
        }
      }
      divisors.push_back(best_ord);
      // H <- H * <best_g>
      std::vector<int> members;
      for (int x = 0; x < h; ++x)
        if (in_H[std::size_t(x)]) members.push_back(x);
      int gp = identity_;
      for (i64 j = 1; j < best_ord; ++j) {
        gp = compose(gp, best_g);
        for (int x : members) {
          int y = compose(x, gp);
          if (!in_H[std::size_t(y)]) {
            in_H[std::size_t(y)] = 1;
            ++h_count;
          }
        }
      }
    }
    std::reverse(divisors.begin(), divisors.end());
    return divisors;
  }

  // 2-Sylow elementary divisors (ascending), without touching the odd part.
  std::vector<i64> sylow2_divisors() const {
    i64 h = order();
    u64 m = u64(h);
    int t = 0;
    while ((m & 1) == 0) {
      m >>= 1;
      ++t;
    }
    if (t == 0) return {};
    // image of the power map x -> x^m is the 2-Sylow subgroup
    std::unordered_set<int> sylow;
    for (int g = 0; g < h; ++g) sylow.insert(power(g, m));
    std::vector<int> elems(sylow.begin(), sylow.end());
    std::sort(elems.begin(), elems.end());
    // peel inside the sylow subgroup
    std::unordered_set<int> H{identity_};
    std::vector<i64> divisors;
    while (i64(H.size()) < i64(elems.size())) {
      int best_g = -1;
      i64 best_ord = 0;
      for (int g : elems) {
        i64 k = 1;
        int y = g;
        while (!H.count(y)) {
          y = compose(y, g);
          ++k;
        }
        if (k > best_ord) {
          best_ord = k;
          best_g = g;
        }
      }
      divisors.push_back(best_ord);
      std::vector<int> members(H.begin(), H.end());
      int gp = identity_;
      for (i64 j = 1; j < best_ord; ++j) {
        gp = compose(gp, best_g);
        for (int x : members) H.insert(compose(x, gp));
      }
    }
    std::reverse(divisors.begin(), divisors.end());
    return divisors;
  }

  ClassGroupStructure structure() const {
    return ClassGroupStructure{D_, elementary_divisors(), order()};
  }

  RankProfile rank_profile() const {
    auto div2 = sylow2_divisors();
    RankProfile r;
    for (i64 d : div2) {
      if (d % 2 == 0) ++r.rk2;
      if (d % 4 == 0) ++r.rk4;
      if (d % 8 == 0) ++r.rk8;
    }
    return r;
  }

 private:
  i64 D_;
  const SpfTable* spf_;
  i64 sqrt_floor_;
  std::vector<BQForm> reps_;
  std::unordered_map<detail_cg::FormKey, int, detail_cg::FormKeyHash> class_map_;
  int identity_ = 0;

  BQForm principal_form() const {
    if (((D_ % 2) + 2) % 2 == 0) return BQForm{1, 0, narrow(-i128(D_) / 4, "form coefficient")};
    return BQForm{1, 1, narrow((1 - i128(D_)) / 4, "form coefficient")};
  }

  BQForm reduce_any(const BQForm& f) const {
    return D_ < 0 ? detail_cg::reduce_definite(f, D_)
                  : detail_cg::reduce_indefinite(f, D_, sqrt_floor_);
  }

  int class_of(const BQForm& reduced) const {
    auto it = class_map_.find(detail_cg::FormKey{reduced.a, reduced.b});
    if (it == class_map_.end()) fail(Errc::ConsistencyViolation, "reduced form missing from table");
    return it->second;
  }

  void build_definite() {
    i64 A = D_ / -4 >= 0 ? i64(isqrt_u64(u64(-D_ / 3))) : 0;
    for (i64 a = 1; a <= std::max<i64>(A, 1); ++a) {
      for (i64 b = -a + 1; b <= a; ++b) {
        i128 num = i128(b) * b - D_;
        if (num % (4 * a) != 0) continue;
        i64 c = narrow(num / (4 * a), "form coefficient");
        if (c < a) continue;
        if (a == c && b < 0) continue;
        if (gcd_i64(gcd_i64(a, b), c) != 1) continue;
        int id = int(reps_.size());
        reps_.push_back(BQForm{a, b, c});
        class_map_[detail_cg::FormKey{a, b}] = id;
      }
    }
  }

  void build_indefinite() {
    i64 m = sqrt_floor_;
    std::vector<BQForm> all;
    i64 start = (D_ % 2 == 0) ? 2 : 1;
    for (i64 b = start; b <= m; b += 2) {
      i64 N = narrow((i128(D_) - i128(b) * b) / 4, "form coefficient");
      if (N <= 0) continue;
      // all divisors a' of N; forms (a, b, -N/a) for a = ±a'
      std::vector<u64> divs{1};
      for (auto [p, e] : factorize_maybe_spf(u64(N), spf_)) {
        std::size_t sz = divs.size();
        u64 pe = 1;
        for (int i = 0; i < e; ++i) {
          pe *= p;
          for (std::size_t j = 0; j < sz; ++j) divs.push_back(divs[j] * pe);
        }
      }
      for (u64 d : divs) {
        i64 a = i64(d);
        i64 c = -(N / a);
        for (int sign = 0; sign < 2; ++sign) {
          BQForm f{sign ? -a : a, b, sign ? -c : c};
          if (!detail_cg::indef_reduced(f, D_, m)) continue;
          if (gcd_i64(gcd_i64(f.a, f.b), f.c) != 1) continue;
          all.push_back(f);
        }
      }
    }
    // partition into rho-cycles; each cycle is one narrow class
    std::unordered_map<detail_cg::FormKey, int, detail_cg::FormKeyHash> seen;
    for (const auto& f : all) seen[detail_cg::FormKey{f.a, f.b}] = -1;
    for (const auto& f : all) {
      detail_cg::FormKey k{f.a, f.b};
      if (seen[k] >= 0) continue;
      int id = int(reps_.size());
      reps_.push_back(f);
      BQForm cur = f;
      int guard = 0;
      do {
        seen[detail_cg::FormKey{cur.a, cur.b}] = id;
        cur = detail_cg::rho_step(cur, D_, m);
        if (++guard > 2000000) fail(Errc::ConsistencyViolation, "cycle walk did not close");
      } while (!(cur == f));
    }
    class_map_ = std::move(seen);
  }

  // Dirichlet composition through concordant representatives:
  // bring f2 to a leading coefficient coprime to a1, then CRT the middle
  // coefficients and multiply the outer ones.
  BQForm compose_forms(const BQForm& f1, const BQForm& f2) const {
    i64 a1 = f1.a, b1 = f1.b;
    // find primitive (x, y) with gcd(f2(x,y), a1) = 1
    i64 A2 = 0, B2 = 0;
    bool found = false;
    for (i64 bound = 1; bound <= 64 && !found; ++bound) {
      for (i64 x = -bound; x <= bound && !found; ++x) {
        for (i64 y = -bound; y <= bound && !found; ++y) {
          if (std::max(x < 0 ? -x : x, y < 0 ? -y : y) != bound && bound > 1) continue;
          if (gcd_i64(x, y) != 1) continue;
          i128 val = i128(f2.a) * x * x + i128(f2.b) * x * y + i128(f2.c) * y * y;
          if (val == 0) continue;
          i64 v = narrow(val, "represented value");
          if (gcd_i64(v, a1) != 1) continue;
          // complete (x, y) to a unimodular matrix [[x, u],[y, w]]
          i64 s, t;
          ext_gcd(x, y, s, t);  // x*s + y*t = 1
          i64 u = -t, w = s;
          A2 = v;
          B2 = narrow(2 * (i128(f2.a) * x * u + i128(f2.c) * y * w) +
                          i128(f2.b) * (i128(x) * w + i128(y) * u),
                      "form coefficient");
          found = true;
        }
      }
    }
    if (!found) fail(Errc::ConsistencyViolation, "no concordant representative found");
    // B ≡ b1 (mod 2 a1), B ≡ B2 (mod 2 A2); gcd(a1, A2) = 1
    i64 M = A2 < 0 ? -A2 : A2;
    u64 k = 0;
    if (M > 1) {
      i64 aa = ((a1 % M) + M) % M;
      i64 rhs = narrow(((i128(B2) - b1) / 2) % M, "crt residue");
      rhs = ((rhs % M) + M) % M;
      k = mulmod_u64(u64(rhs), invmod_u64(u64(aa), u64(M)), u64(M));
    }
    i128 B = i128(b1) + 2 * i128(a1) * i128(k);
    i128 A = i128(a1) * A2;
    i128 C = (B * B - D_) / (4 * A);
    return BQForm{narrow(A, "form coefficient"), narrow(B, "form coefficient"),
                  narrow(C, "form coefficient")};
  }

  i64 order_mod(int g, const std::vector<char>& in_H) const {
    i64 k = 1;
    int y = g;
    while (!in_H[std::size_t(y)]) {
      y = compose(y, g);
      ++k;
    }
    return k;
  }
};

// ---------------------------------------------------------------------------
// Public oracle entry points
// ---------------------------------------------------------------------------

inline constexpr i64 kOracleDiscriminantCap = 100000000;

inline ClassGroupStructure narrow_class_group(i64 D, const SpfTable* spf = nullptr,
                                              i64 cap = kOracleDiscriminantCap) {
  if ((D < 0 ? -D : D) > cap) fail(Errc::BoundExceeded, "discriminant exceeds oracle bound");
  return FormClassGroup(D, spf).structure();
}

inline RankProfile rank_profile(i64 D, const SpfTable* spf = nullptr,
                                i64 cap = kOracleDiscriminantCap) {
  if ((D < 0 ? -D : D) > cap) fail(Errc::BoundExceeded, "discriminant exceeds oracle bound");
  FormClassGroup g(D, spf);
  RankProfile r = g.rank_profile();
  return r;
}

}  // namespace quadrank

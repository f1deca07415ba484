#pragma once

// Exact arithmetic in the principal ideal domains Z[i] and Z[sqrt(2)]:
// norms, conjugation, primitivity, ideal gcd, prime splitting, canonical
// generator normalization, and residue systems modulo an element.

#include <array>
#include <cassert>
#include <optional>
#include <ostream>

#include "quadrank/numeric.hpp"

namespace quadrank {

// ---------------------------------------------------------------------------
// RingTag: d in {-4, 8}, d0 = d/4 in {-1, 2}
// ---------------------------------------------------------------------------

struct RingTag {
  int d;   // field discriminant label (-4 or 8)
  int d0;  // radicand of the coefficient ring Z[sqrt(d0)]

  static RingTag from_d(int d) {
    if (d != -4 && d != 8) fail(Errc::BadInput, "RingTag: d must be -4 or 8");
    return RingTag{d, d / 4};
  }
  bool operator==(const RingTag& o) const { return d == o.d; }
};

inline const RingTag kGauss = RingTag{-4, -1};   // Z[i]
inline const RingTag kRoot2 = RingTag{8, 2};     // Z[sqrt 2]

// ---------------------------------------------------------------------------
// QuadInt: a + b*sqrt(d0)
// ---------------------------------------------------------------------------

struct QuadInt {
  i64 a = 0;
  i64 b = 0;
  RingTag ring = kGauss;

  QuadInt() = default;
  QuadInt(i64 a_, i64 b_, RingTag r) : a(a_), b(b_), ring(r) {}

  bool operator==(const QuadInt& o) const { return a == o.a && b == o.b && ring == o.ring; }
  bool operator!=(const QuadInt& o) const { return !(*this == o); }

  QuadInt operator+(const QuadInt& o) const {
    return QuadInt(checked_add(a, o.a), checked_add(b, o.b), ring);
  }
  QuadInt operator-(const QuadInt& o) const {
    return QuadInt(checked_sub(a, o.a), checked_sub(b, o.b), ring);
  }
  QuadInt operator-() const { return QuadInt(-a, -b, ring); }
  QuadInt operator*(const QuadInt& o) const {
    i128 na = i128(a) * o.a + i128(ring.d0) * o.b * b;
    i128 nb = i128(a) * o.b + i128(b) * o.a;
    return QuadInt(narrow(na, "product coordinate"), narrow(nb, "product coordinate"), ring);
  }
  QuadInt operator*(i64 k) const { return QuadInt(checked_mul(a, k), checked_mul(b, k), ring); }

  bool is_zero() const { return a == 0 && b == 0; }
};

inline QuadInt conj(const QuadInt& w) { return QuadInt(w.a, -w.b, w.ring); }

// Exact norm a^2 - d0*b^2; always representable in 128 bits.
inline i128 norm128(const QuadInt& w) {
  return i128(w.a) * w.a - i128(w.ring.d0) * w.b * w.b;
}

inline i64 norm(const QuadInt& w) { return narrow(norm128(w), "norm"); }

inline i64 abs_norm(const QuadInt& w) { return narrow(iabs(norm128(w)), "norm"); }

inline bool is_odd(const QuadInt& w) { return (norm128(w) & 1) != 0; }

inline bool is_unit(const QuadInt& w) { return iabs(norm128(w)) == 1; }

// odd and gcd(a, b) = 1
inline bool is_primitive(const QuadInt& w) {
  return is_odd(w) && gcd_i64(w.a, w.b) == 1;
}

inline std::ostream& operator<<(std::ostream& os, const QuadInt& w) {
  os << w.a;
  if (w.b >= 0)
    os << "+" << w.b;
  else
    os << w.b;
  os << (w.ring.d0 == -1 ? "i" : "*sqrt2");
  return os;
}

// Fundamental unit of Z[sqrt 2] and its square.
inline QuadInt unit_eps() { return QuadInt(1, 1, kRoot2); }
inline QuadInt unit_eps_sq() { return QuadInt(3, 2, kRoot2); }
inline QuadInt unit_eps_sq_inv() { return QuadInt(3, -2, kRoot2); }

// ---------------------------------------------------------------------------
// Euclidean division and ideal gcd (both rings are norm-Euclidean)
// ---------------------------------------------------------------------------

inline i64 round_div(i128 n, i128 d) {
  // nearest integer to n/d, ties toward +inf; d != 0
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 q = (n >= 0) ? (2 * n + d) / (2 * d) : -((-2 * n + d - 1) / (2 * d));
  // adjust so that |n - q*d| <= d/2
  while (2 * (n - q * d) > d) ++q;
  while (2 * (n - q * d) < -d) --q;
  return narrow(q, "quotient");
}

inline QuadInt euclid_div(const QuadInt& w, const QuadInt& z) {
  // quotient q with |norm(w - q*z)| < |norm(z)|
  i128 nz = norm128(z);
  if (nz == 0) fail(Errc::BadInput, "division by zero element");
  QuadInt wc = w * conj(z);
  i64 qa = round_div(i128(wc.a), nz);
  i64 qb = round_div(i128(wc.b), nz);
  return QuadInt(qa, qb, w.ring);
}

// Generator of the ideal gcd, NOT canonicalized (caller normalizes).
inline QuadInt gcd_raw(QuadInt w, QuadInt z) {
  if (w.is_zero() && z.is_zero()) fail(Errc::BadInput, "gcd of two zero elements");
  while (!z.is_zero()) {
    QuadInt q = euclid_div(w, z);
    QuadInt r = w - q * z;
    assert(iabs(norm128(r)) < iabs(norm128(z)));
    w = z;
    z = r;
  }
  return w;
}

// ---------------------------------------------------------------------------
// Fundamental domain D = {(u,v): u > 0, -u < 2v <= u} for the action of
// eps^2 on totally positive elements of Z[sqrt 2]
// ---------------------------------------------------------------------------

inline bool in_fundamental_domain(const QuadInt& w) {
  i128 tb = 2 * i128(w.b);
  return w.ring.d0 == 2 && w.a > 0 && -i128(w.a) < tb && tb <= i128(w.a);
}

// For totally positive w (norm > 0, a > 0), returns (w * eps^{2k}, k) with the
// value in D. Exactly one such k exists.
inline std::pair<QuadInt, int> to_fundamental_domain(QuadInt w) {
  if (w.ring.d0 != 2) fail(Errc::BadInput, "fundamental domain requires Z[sqrt 2]");
  if (norm128(w) <= 0 || w.a <= 0) fail(Errc::BadInput, "fundamental domain requires totally positive input");
  int k = 0;
  while (!in_fundamental_domain(w)) {
    if (2 * i128(w.b) > i128(w.a)) {
      w = w * unit_eps_sq_inv();
      --k;
    } else {
      w = w * unit_eps_sq();
      ++k;
    }
    if (k > 256 || k < -256) fail(Errc::ConsistencyViolation, "fundamental domain walk diverged");
  }
  return {w, k};
}

// ---------------------------------------------------------------------------
// Canonical associates.  Z[i]: rotate into {a > 0, -a < b <= a} (0 stays 0).
// Z[sqrt 2]: make the norm positive (multiply by eps if needed), then pick
// the representative of {+-eps^{2k} w} inside D.
// ---------------------------------------------------------------------------

inline QuadInt canonical_associate(QuadInt w) {
  if (w.is_zero()) return w;
  if (w.ring.d0 == -1) {
    for (int r = 0; r < 4; ++r) {
      if (w.a > 0 && -w.a < w.b && w.b <= w.a) return w;
      w = QuadInt(-w.b, w.a, w.ring);  // multiply by i
    }
    fail(Errc::ConsistencyViolation, "no canonical associate found in Z[i]");
  }
  if (norm128(w) < 0) w = w * unit_eps();
  if (w.a < 0 || (w.a == 0 && w.b < 0)) w = -w;
  if (w.a == 0) {
    // pure sqrt2 multiple: norm < 0 was excluded above, so b*sqrt2 has
    // norm -2b^2 < 0: unreachable here
    return w;
  }
  return to_fundamental_domain(w).first;
}

inline QuadInt gcd_ideal(const QuadInt& w, const QuadInt& z) {
  return canonical_associate(gcd_raw(w, z));
}

// ---------------------------------------------------------------------------
// NormalizedGenerator
// ---------------------------------------------------------------------------

enum class Convention { PrimaryZi, FundamentalDomainZsqrt2, SquareClassMod4 };

struct NormalizedGenerator {
  QuadInt value;
  int unit_exponent = 0;  // exponent k of the unit power applied
  Convention convention = Convention::PrimaryZi;
};

// w == square mod 4Z[sqrt d0], i.e. w ≡ ±1 (mod 4) for Z[i] and
// w ≡ 1 or 3+2sqrt2 (mod 4) for Z[sqrt 2].
inline bool square_class_mod4(const QuadInt& w) {
  auto m4 = [](i64 x) { return ((x % 4) + 4) % 4; };
  i64 am = m4(w.a), bm = m4(w.b);
  if (w.ring.d0 == -1) return bm == 0 && (am == 1 || am == 3);
  return (am == 1 && bm == 0) || (am == 3 && bm == 2);
}

// a odd and a + b ≡ 1 (mod 4): the primary elements of Z[i]
inline bool is_primary_zi(const QuadInt& w) {
  if (w.ring.d0 != -1) return false;
  if ((w.a & 1) == 0) return false;
  return (((w.a + w.b) % 4) + 4) % 4 == 1;
}

namespace detail {

// Deterministic tie-break: minimize (|b|, |a|), then prefer a*b > 0, then
// a > 0. Matches the worked examples for split_prime.
inline bool tie_break_less(const QuadInt& x, const QuadInt& y) {
  auto key = [](const QuadInt& w) {
    i64 ab = (w.a != 0 && w.b != 0) ? (((w.a > 0) == (w.b > 0)) ? 0 : 1) : 1;
    return std::array<i64, 4>{w.b < 0 ? -w.b : w.b, w.a < 0 ? -w.a : w.a, ab, w.a > 0 ? 0 : 1};
  };
  return key(x) < key(y);
}

// Collect the generators of the ideal (w0) in Z[sqrt 2] (and nothing else)
// that satisfy `pred`, scanning +-eps^{2k} w0 for k in a window around the
// fundamental-domain representative.  Coefficient growth is exponential in k
// so a short window suffices for the minimizer.
template <typename Pred>
inline std::vector<QuadInt> scan_orbit_zsqrt2(QuadInt w0, Pred pred) {
  std::vector<QuadInt> out;
  if (norm128(w0) < 0) w0 = w0 * unit_eps();
  if (w0.a < 0) w0 = -w0;
  QuadInt base = to_fundamental_domain(w0).first;
  for (int k = -3; k <= 3; ++k) {
    QuadInt cur = base;
    bool ok = true;
    for (int i = 0; i < (k < 0 ? -k : k); ++i) {
      try {
        cur = cur * (k < 0 ? unit_eps_sq_inv() : unit_eps_sq());
      } catch (const Error&) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    if (pred(cur)) out.push_back(cur);
    QuadInt neg = -cur;
    if (pred(neg)) out.push_back(neg);
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// normalize_generator
// ---------------------------------------------------------------------------

inline NormalizedGenerator normalize_generator(const QuadInt& w, Convention conv) {
  if (w.is_zero() || !is_odd(w)) fail(Errc::NotOdd, "normalize_generator requires an odd element");
  switch (conv) {
    case Convention::PrimaryZi: {
      if (w.ring.d0 != -1) fail(Errc::BadInput, "PrimaryZi requires Z[i]");
      QuadInt cur = w;
      for (int k = 0; k < 4; ++k) {
        if (is_primary_zi(cur)) return {cur, k, conv};
        cur = QuadInt(-cur.b, cur.a, cur.ring);
      }
      fail(Errc::ConsistencyViolation, "odd Z[i] element has no primary associate");
    }
    case Convention::FundamentalDomainZsqrt2: {
      if (w.ring.d0 != 2) fail(Errc::BadInput, "FundamentalDomainZsqrt2 requires Z[sqrt 2]");
      if (norm128(w) < 0)
        fail(Errc::BadInput, "fundamental domain normalization requires positive norm");
      QuadInt v = w.a > 0 || (w.a == 0 && w.b > 0) ? w : -w;
      auto [val, k] = to_fundamental_domain(v);
      return {val, k, conv};
    }
    case Convention::SquareClassMod4: {
      if (w.ring.d0 == -1) {
        QuadInt cur = w;
        for (int k = 0; k < 4; ++k) {
          if (square_class_mod4(cur)) return {cur, k, conv};
          cur = QuadInt(-cur.b, cur.a, cur.ring);
        }
        fail(Errc::NoSquareClass, "no associate is a square class mod 4");
      }
      auto cands = detail::scan_orbit_zsqrt2(w, square_class_mod4);
      if (cands.empty()) fail(Errc::NoSquareClass, "no associate is a square class mod 4");
      QuadInt best = cands.front();
      for (const auto& c : cands)
        if (detail::tie_break_less(c, best)) best = c;
      return {best, 0, conv};
    }
  }
  fail(Errc::BadInput, "unknown convention");
}

// ---------------------------------------------------------------------------
// split_prime: p odd prime splitting in Z[sqrt d0].  Finds |norm(w)| = p via
// a modular square root of d0 and Gauss lattice reduction, then applies the
// ring's normalization convention and the deterministic tie-break.
// ---------------------------------------------------------------------------

namespace detail {

// Shortest vector of the lattice {(x, y): x ≡ r*y (mod p)} with respect to
// the positive definite form x^2 + c*y^2 (c = |d0|).  The minimum satisfies
// Q < 2p, so x^2 - d0 y^2 = ±p exactly.
inline std::pair<i64, i64> lattice_split(u64 p, u64 r, int c) {
  i128 u0 = i128(p), u1 = 0;
  i128 v0 = i128(r), v1 = 1;
  auto Q = [&](i128 x, i128 y) { return x * x + i128(c) * y * y; };
  auto dot = [&](i128 x0, i128 y0, i128 x1, i128 y1) { return x0 * x1 + i128(c) * y0 * y1; };
  if (Q(u0, u1) < Q(v0, v1)) {
    std::swap(u0, v0);
    std::swap(u1, v1);
  }
  while (true) {
    i128 qv = Q(v0, v1);
    i128 d = dot(u0, u1, v0, v1);
    // nearest integer of d / qv
    i128 m = (2 * d + (d >= 0 ? qv : -qv)) / (2 * qv);
    u0 -= m * v0;
    u1 -= m * v1;
    if (Q(u0, u1) >= qv) break;
    std::swap(u0, v0);
    std::swap(u1, v1);
  }
  return {narrow(v0, "split coordinate"), narrow(v1, "split coordinate")};
}

}  // namespace detail

inline bool splits_in(i64 p, RingTag ring) {
  if (p == 2 || p < 2) return false;
  if (ring.d0 == -1) return p % 4 == 1;
  i64 m8 = p % 8;
  return m8 == 1 || m8 == 7;
}

inline NormalizedGenerator split_prime(i64 p, RingTag ring) {
  if (p < 3 || !is_prime_u64(u64(p))) fail(Errc::BadInput, "split_prime requires an odd prime");
  if (!splits_in(p, ring)) fail(Errc::NotSplit, "prime is inert or ramified in this ring");
  u64 r = sqrt_mod_prime(mod_u64(ring.d0, u64(p)), u64(p));
  auto [x, y] = detail::lattice_split(u64(p), r, ring.d0 == -1 ? 1 : 2);
  QuadInt w0(x, y, ring);
  if (iabs(norm128(w0)) != p) fail(Errc::ConsistencyViolation, "lattice split missed the prime");

  std::vector<QuadInt> cands;
  if (ring.d0 == -1) {
    QuadInt seeds[2] = {w0, conj(w0)};
    for (const QuadInt& s : seeds) {
      QuadInt cur = s;
      for (int k = 0; k < 4; ++k) {
        if (p % 8 == 1 ? square_class_mod4(cur) : is_primary_zi(cur)) cands.push_back(cur);
        cur = QuadInt(-cur.b, cur.a, cur.ring);
      }
    }
  } else {
    auto pred_sq = [](const QuadInt& v) { return square_class_mod4(v); };
    auto pred_fd = [](const QuadInt& v) { return in_fundamental_domain(v); };
    for (const QuadInt& s : {w0, conj(w0)}) {
      auto part = (p % 8 == 1) ? detail::scan_orbit_zsqrt2(s, pred_sq)
                               : detail::scan_orbit_zsqrt2(s, pred_fd);
      cands.insert(cands.end(), part.begin(), part.end());
    }
  }
  if (cands.empty()) fail(Errc::NoSquareClass, "split_prime: no admissible generator found");
  QuadInt best = cands.front();
  for (const auto& c : cands)
    if (detail::tie_break_less(c, best)) best = c;
  Convention conv = Convention::SquareClassMod4;
  if (p % 8 != 1) conv = ring.d0 == -1 ? Convention::PrimaryZi : Convention::FundamentalDomainZsqrt2;
  return {best, 0, conv};
}

// ---------------------------------------------------------------------------
// Residue system of Z[sqrt d0]/(m).  The ideal lattice (m) has the Z-basis
// m*(1,0) = (a, b) and m*sqrt(d0) = (d0 b, a); we store a triangular basis
//   (e1, 0), (f, e2)   with |e1|*e2 = |norm(m)|, e2 = gcd(a, b).
// Residues are {(s, t): 0 <= s < |e1|, 0 <= t < e2}.
// For primitive m, e2 = 1 and the system is rational: {0..N-1}.
// ---------------------------------------------------------------------------

struct ResidueSystem {
  QuadInt modulus;
  i64 e1 = 1;          // u-period (positive)
  i64 e2 = 1;          // v-period (= gcd(a, b), positive)
  i64 f = 0;           // u-component of the second basis vector (f, e2)
  i64 count = 1;       // |norm(m)| = e1 * e2
  // image of sqrt(d0) for primitive m (e2 == 1): sqrt(d0) ≡ root (mod N)
  i64 root = 0;

  static constexpr i64 kMaterializeCap = i64(1) << 24;

  static ResidueSystem make(const QuadInt& m) {
    if (m.is_zero()) fail(Errc::BadInput, "residue system modulo zero");
    ResidueSystem rs;
    rs.modulus = m;
    i64 N = narrow(iabs(norm128(m)), "residue count");
    rs.count = N;
    i64 a = m.a, b = m.b;
    if (b == 0) {
      rs.e1 = a < 0 ? -a : a;
      rs.e2 = rs.e1;
      rs.f = 0;
    } else {
      i64 x0, y0;
      i64 g = ext_gcd(b, a, x0, y0);  // x0*b + y0*a = g = gcd(a,b)
      rs.e2 = g;
      // second basis vector u2 = x0*(a,b) + y0*(d0 b, a) = (x0 a + y0 d0 b, g)
      rs.f = narrow(i128(x0) * a + i128(y0) * m.ring.d0 * b, "residue basis");
      rs.e1 = N / g;
      rs.f = ((rs.f % rs.e1) + rs.e1) % rs.e1;
    }
    if (rs.e2 == 1 && (N & 1)) {
      // primitive odd modulus: sqrt(d0) ≡ -a * b^{-1} (mod N)
      if (gcd_i64(b, N) == 1 && N > 1) {
        u64 binv = invmod_u64(mod_u64(b, u64(N)), u64(N));
        rs.root = i64(mulmod_u64(mod_u64(-i128(a), u64(N)), binv, u64(N)));
      }
    }
    return rs;
  }

  // reduce u + v*sqrt(d0) to its canonical representative (s, t)
  std::pair<i64, i64> reduce(i128 u, i128 v) const {
    i64 t = i64(((v % e2) + e2) % e2);
    i128 k = (v - t) / e2;  // subtract k * (f, e2)
    i128 s = u - k * f;
    s %= e1;
    if (s < 0) s += e1;
    return {i64(s), t};
  }

  std::pair<i64, i64> reduce(const QuadInt& z) const { return reduce(z.a, z.b); }

  // the conjugation map on representatives
  std::pair<i64, i64> conj_reduce(i64 s, i64 t) const { return reduce(s, -i64(t)); }

  // rational image for primitive odd moduli (e2 == 1)
  i64 rational_image(const QuadInt& z) const {
    return i64(mod_u64(i128(z.a) + i128(z.b) * root, u64(count)));
  }
};

}  // namespace quadrank

#pragma once

// Quadratic residue symbols and characters over Z[i] and Z[sqrt 2]:
// the Jacobi symbol, the two-power residue symbol (n/(m)), mu, the
// generalized Dirichlet symbol gamma(w,z), chi_t with its congruence-only
// second path, chi_2 on rational primes, the quartic symbols [2,p]_4 and
// [pq,2]_4, and the Hecke character psi_w.

#include <array>

#include "quadrank/quadring.hpp"

namespace quadrank {

using Sym = int;  // values in {-1, 0, +1}

// ---------------------------------------------------------------------------
// Arithmetic in F_p[sqrt d0] (used for inert primes, where the quotient is
// the field with p^2 elements)
// ---------------------------------------------------------------------------

namespace detail {

struct Fp2 {
  u64 x, y;  // x + y*sqrt(d0)
};

inline Fp2 fp2_mul(const Fp2& a, const Fp2& b, u64 p, int d0) {
  u64 x = mod_u64(i128(a.x) * b.x + i128(d0) * a.y % i128(p) * b.y, p);
  u64 y = mod_u64(i128(a.x) * b.y + i128(a.y) * b.x, p);
  return {x, y};
}

inline Fp2 fp2_pow(Fp2 base, u64 exp, u64 p, int d0) {
  Fp2 r{1, 0};
  while (exp > 0) {
    if (exp & 1) r = fp2_mul(r, base, p, d0);
    base = fp2_mul(base, base, p, d0);
    exp >>= 1;
  }
  return r;
}

}  // namespace detail

// Symbol (n/(p)) for a rational prime p inert in Z[sqrt d0]: the square test
// in the field of p^2 elements, via n^((p^2-1)/2).
inline Sym inert_prime_symbol(const QuadInt& n, i64 p) {
  u64 up = u64(p);
  detail::Fp2 img{mod_u64(n.a, up), mod_u64(n.b, up)};
  if (img.x == 0 && img.y == 0) return 0;
  u64 e = (u64(p) * u64(p) - 1) / 2;
  detail::Fp2 r = detail::fp2_pow(img, e, up, n.ring.d0);
  if (r.y != 0) fail(Errc::ConsistencyViolation, "inert symbol: nonscalar power");
  if (r.x == 1) return 1;
  if (r.x == up - 1) return -1;
  fail(Errc::ConsistencyViolation, "inert symbol: unexpected power value");
}

// ---------------------------------------------------------------------------
// The two-power residue symbol (n/(m)) = prod over prime ideals of (m),
// with multiplicity.  Total on odd m.
// ---------------------------------------------------------------------------

inline Sym qr_symbol(const QuadInt& n, const QuadInt& m) {
  if (m.ring.d0 != n.ring.d0) fail(Errc::BadInput, "qr_symbol: mixed rings");
  if (m.is_zero() || !is_odd(m)) fail(Errc::EvenModulus, "qr_symbol: modulus must be odd");
  if (is_unit(m)) return 1;
  i64 c = gcd_i64(m.a, m.b);
  QuadInt m0(m.a / c, m.b / c, m.ring);
  int result = 1;
  // primitive part: rational isomorphism
  i64 n0 = abs_norm(m0);
  if (n0 > 1) {
    ResidueSystem rs = ResidueSystem::make(m0);
    result = jacobi(rs.rational_image(n), u64(n0));
    if (result == 0) return 0;
  }
  // rational content: split each prime
  if (c > 1) {
    for (auto [p, e] : factorize_u64(u64(c))) {
      Sym sp;
      if (jacobi(i128(m.ring.d0), p) == 1) {
        // split prime: (n/pp) * (n/conj(pp)) = jacobi(norm(n), p)
        sp = jacobi(norm128(n), p);
      } else {
        sp = inert_prime_symbol(n, i64(p));
      }
      if (sp == 0) return 0;
      if (e & 1) result *= sp;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// mu(w) = gamma(w, 1) = (conj(w)/(w)); zero iff w is not primitive
// ---------------------------------------------------------------------------

inline Sym mu(const QuadInt& w) {
  if (w.is_zero() || !is_odd(w)) fail(Errc::EvenArgument, "mu: argument must be odd");
  if (!is_primitive(w)) return 0;
  i64 N = abs_norm(w);
  return jacobi(2 * i128(w.a), u64(N));
}

// ---------------------------------------------------------------------------
// gamma(w, z) = (conj(w) conj(z) / (w)) for odd w
// ---------------------------------------------------------------------------

inline Sym gamma_sym(const QuadInt& w, const QuadInt& z) {
  if (w.is_zero() || !is_odd(w)) fail(Errc::EvenArgument, "gamma: first argument must be odd");
  if (!is_primitive(w)) return 0;
  i64 N = abs_norm(w);
  if (N == 1) return 1;
  ResidueSystem rs = ResidueSystem::make(w);
  i128 img_wbar = 2 * i128(w.a);
  i128 img_zbar = i128(z.a) - i128(z.b) * rs.root;
  return jacobi(img_wbar % N * (img_zbar % N), u64(N));
}

// chi_w(z) = (z/(conj(w))) for primitive odd w
inline Sym chi_w(const QuadInt& w, const QuadInt& z) {
  if (!is_primitive(w)) fail(Errc::BadInput, "chi_w: w must be primitive");
  return qr_symbol(z, conj(w));
}

// ---------------------------------------------------------------------------
// chi_t: the quadratic character a -> (t/a) with t = 1+i resp. sqrt 2.
//
// Symbol path: evaluate the residue symbol directly on the factorization of
// (w).
//
// Congruence path: by the product formula over all places, for odd w
//   (t/(w)) = (t, w)_t  *  (t, w)_infty2        (the latter only for d = 8),
// where (t, w)_t depends only on w modulo t^5.  The local factor is +1
// exactly when w is represented by the norm form x^2 - t y^2 modulo t^5
// (a finite solvability test; squares are the y = 0 case), and the infinite
// factor is the sign of the conjugate embedding of w.  On generators
// normalized as squares mod 4 this reduces to the plain square-class test
// against {±1 mod 4(1+i)} resp. {1, 3+2sqrt2 mod 4 sqrt2}.
// ---------------------------------------------------------------------------

inline QuadInt t_generator(RingTag ring) {
  return ring.d0 == -1 ? QuadInt(1, 1, ring) : QuadInt(0, 1, ring);
}

namespace detail {

// canonical class index of w modulo t^5 (32 residues, indexed u0*4 + v0)
inline int t5_class(const QuadInt& w) {
  i64 u = w.a, v = w.b;
  i64 v0 = ((v % 4) + 4) % 4;
  i64 u0;
  if (w.ring.d0 == -1) {
    i64 k = (v - v0) / 4;
    u0 = (((u + 4 * k) % 8) + 8) % 8;
  } else {
    u0 = ((u % 8) + 8) % 8;
  }
  return int(u0 * 4 + v0);
}

// mod-t^5 squares: w ≡ ±1 (mod 4(1+i)) resp. w ≡ 1, 3+2sqrt2 (mod 4 sqrt2)
inline bool t5_square_class(const QuadInt& w) {
  static const int sq_gauss[2] = {t5_class(QuadInt(1, 0, kGauss)), t5_class(QuadInt(-1, 0, kGauss))};
  static const int sq_root2[2] = {t5_class(QuadInt(1, 0, kRoot2)), t5_class(QuadInt(3, 2, kRoot2))};
  int c = t5_class(w);
  if (w.ring.d0 == -1) return c == sq_gauss[0] || c == sq_gauss[1];
  return c == sq_root2[0] || c == sq_root2[1];
}

// solvability of w ≡ x^2 - t y^2 (mod t^5); table indexed by t5_class
inline const std::array<bool, 32>& t5_norm_form_table(RingTag ring) {
  static const std::array<bool, 32> tbl_gauss = [] {
    std::array<bool, 32> t{};
    QuadInt tg = t_generator(kGauss);
    for (i64 xu = 0; xu < 8; ++xu)
      for (i64 xv = 0; xv < 4; ++xv)
        for (i64 yu = 0; yu < 8; ++yu)
          for (i64 yv = 0; yv < 4; ++yv) {
            QuadInt x(xu, xv, kGauss), y(yu, yv, kGauss);
            QuadInt val = x * x - tg * (y * y);
            t[t5_class(val)] = true;
          }
    return t;
  }();
  static const std::array<bool, 32> tbl_root2 = [] {
    std::array<bool, 32> t{};
    QuadInt tg = t_generator(kRoot2);
    for (i64 xu = 0; xu < 8; ++xu)
      for (i64 xv = 0; xv < 4; ++xv)
        for (i64 yu = 0; yu < 8; ++yu)
          for (i64 yv = 0; yv < 4; ++yv) {
            QuadInt x(xu, xv, kRoot2), y(yu, yv, kRoot2);
            QuadInt val = x * x - tg * (y * y);
            t[t5_class(val)] = true;
          }
    return t;
  }();
  return ring.d0 == -1 ? tbl_gauss : tbl_root2;
}

// sign of the conjugate real embedding a - b*sqrt(2)
inline int conj_embedding_sign(const QuadInt& w) {
  i128 n = norm128(w);
  if (n > 0) return w.a > 0 ? 1 : -1;
  if (n < 0) return w.b > 0 ? -1 : 1;
  fail(Errc::BadInput, "sign of zero embedding");
}

}  // namespace detail

// Symbol path of chi_t on an element: (t/(w)) over the factorization of (w).
inline Sym chi_t_symbol(const QuadInt& w) {
  if (w.is_zero() || !is_odd(w)) fail(Errc::EvenArgument, "chi_t: argument must be odd");
  return qr_symbol(t_generator(w.ring), w);
}

// Congruence-only path of chi_t: local norm-form class times the sign of the
// conjugate embedding (for d = 8).
inline Sym chi_t_congruence(const QuadInt& w) {
  if (w.is_zero() || !is_odd(w)) fail(Errc::EvenArgument, "chi_t: argument must be odd");
  Sym local = detail::t5_norm_form_table(w.ring)[detail::t5_class(w)] ? 1 : -1;
  if (w.ring.d0 == 2) local *= detail::conj_embedding_sign(w);
  return local;
}

inline Sym chi_t(const QuadInt& w) { return chi_t_symbol(w); }

// ---------------------------------------------------------------------------
// chi_2 on rational primes: the average of chi_t over the primes above p.
// ---------------------------------------------------------------------------

inline Sym chi2(i64 p, RingTag ring) {
  if (p == 2) fail(Errc::RamifiedPrime, "chi2 is undefined at the ramified prime 2");
  if (p < 3 || !is_prime_u64(u64(p))) fail(Errc::BadInput, "chi2 requires an odd prime");
  if (splits_in(p, ring)) {
    QuadInt w = split_prime(p, ring).value;
    ResidueSystem rw = ResidueSystem::make(w);
    ResidueSystem rwc = ResidueSystem::make(conj(w));
    QuadInt t = t_generator(ring);
    Sym s1 = jacobi(rw.rational_image(t), u64(p));
    Sym s2 = jacobi(rwc.rational_image(t), u64(p));
    return s1 == s2 ? s1 : 0;
  }
  return inert_prime_symbol(t_generator(ring), p);
}

// ---------------------------------------------------------------------------
// Quartic symbols
// ---------------------------------------------------------------------------

// [2,p]_4: +1 if 2 is a fourth power mod p, -1 if a square but not a fourth
// power, 0 if 2 is a non-residue.
inline Sym quartic_2p(i64 p) {
  if (p < 3 || !is_prime_u64(u64(p))) fail(Errc::BadInput, "[2,p]_4 requires an odd prime");
  if (jacobi(2, u64(p)) != 1) return 0;
  if (p % 4 == 3) return 1;  // squaring permutes the residues
  u64 r = powmod_u64(2, u64(p - 1) / 4, u64(p));
  if (r == 1) return 1;
  if (r == u64(p - 1)) return -1;
  fail(Errc::ConsistencyViolation, "[2,p]_4: unexpected fourth-power test value");
}

// [n,2]_4: +1 if n ≡ 1 (mod 16), -1 if n ≡ 9 (mod 16), 0 otherwise.
inline Sym quartic_n2(i64 n) {
  i64 m = ((n % 16) + 16) % 16;
  if (m == 1) return 1;
  if (m == 9) return -1;
  return 0;
}

// ---------------------------------------------------------------------------
// psi_w: the Hecke character attached to a degree-one prime w with
// norm(w) = p ≡ 1 (mod 8), evaluated on the principal ideal (z).
// ---------------------------------------------------------------------------

// chi_w(1+sqrt2) = (-1/|a+b|), the obstruction deciding the twisted branch.
inline Sym chi_w_eps(const QuadInt& w) {
  if (w.ring.d0 != 2) fail(Errc::BadInput, "chi_w_eps requires Z[sqrt 2]");
  i64 s = w.a + w.b;
  return jacobi(-1, u64(s < 0 ? -s : s));
}

inline Sym psi_w(const QuadInt& w, const QuadInt& z) {
  i128 nw = norm128(w);
  if (nw < 3 || !is_prime_u64(u64(nw)) || nw % 8 != 1)
    fail(Errc::BadInput, "psi_w requires norm(w) = p ≡ 1 (mod 8)");
  if (z.is_zero() || !is_odd(z)) fail(Errc::BadConductor, "psi_w requires an odd argument");
  Sym v = chi_w(w, z);
  if (v == 0) fail(Errc::BadConductor, "psi_w: argument shares a factor with the conductor");
  if (w.ring.d0 == 2 && chi_w_eps(w) == -1 && norm128(z) < 0) v = -v;
  return v;
}

}  // namespace quadrank

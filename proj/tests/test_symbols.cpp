#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "quadrank/symbols.hpp"

using namespace quadrank;

namespace {

QuadInt gi(i64 a, i64 b) { return QuadInt(a, b, kGauss); }
QuadInt r2(i64 a, i64 b) { return QuadInt(a, b, kRoot2); }

// brute-force Legendre oracle by enumerating squares mod p
int legendre_oracle(i64 n, i64 p) {
  n %= p;
  if (n < 0) n += p;
  if (n == 0) return 0;
  for (i64 x = 1; x <= p / 2; ++x)
    if ((x * x) % p == n) return 1;
  return -1;
}

// is n a fourth power mod p (enumeration oracle)
bool fourth_power_oracle(i64 n, i64 p) {
  n %= p;
  if (n < 0) n += p;
  for (i64 x = 1; x < p; ++x) {
    i64 x2 = (x * x) % p;
    if ((x2 * x2) % p == n) return true;
  }
  return false;
}

std::vector<QuadInt> odd_elements(RingTag ring, i64 bound_norm, i64 coeff) {
  std::vector<QuadInt> v;
  for (i64 a = -coeff; a <= coeff; ++a)
    for (i64 b = -coeff; b <= coeff; ++b) {
      QuadInt w(a, b, ring);
      if (w.is_zero() || !is_odd(w)) continue;
      if (iabs(norm128(w)) > bound_norm) continue;
      v.push_back(w);
    }
  return v;
}

}  // namespace

TEST_CASE("jacobi worked values and oracle") {
  CHECK(jacobi(2, 7) == 1);    // 3^2 = 9 ≡ 2
  CHECK(jacobi(5, 17) == -1);  // squares mod 17: 1,2,4,8,9,13,15,16
  CHECK(jacobi(1, 997) == 1);
  for (i64 p : {3, 5, 7, 11, 13, 17, 19, 23, 97, 101}) {
    for (i64 n = -p; n <= p; ++n) CHECK(jacobi(n, u64(p)) == legendre_oracle(n, p));
  }
  for (i64 n = 0; n < 15; ++n) CHECK(jacobi(n, 15) == jacobi(n, 3) * jacobi(n, 5));
}

TEST_CASE("qr_symbol worked values") {
  CHECK(qr_symbol(gi(-27, -28), gi(1, 4)) == -1);  // image 14 mod 17
  CHECK(qr_symbol(gi(3, 0), gi(1, 4)) == -1);      // jacobi(3,17) = -1
  CHECK(qr_symbol(gi(7, 3), gi(1, 0)) == 1);       // unit modulus
  CHECK(qr_symbol(r2(3, 0), r2(1, 0)) == 1);
  CHECK_THROWS_AS(qr_symbol(gi(1, 0), gi(1, 1)), Error);  // even modulus
}

TEST_CASE("qr_symbol on primitive moduli matches the rational Jacobi symbol") {
  for (RingTag ring : {kGauss, kRoot2}) {
    for (const auto& m : odd_elements(ring, 400, 25)) {
      if (!is_primitive(m) || is_unit(m)) continue;
      ResidueSystem rs = ResidueSystem::make(m);
      for (i64 n = 0; n < 20; ++n) {
        QuadInt nn(n, 0, ring);
        CHECK(qr_symbol(nn, m) == jacobi(n, u64(rs.count)));
      }
    }
  }
}

TEST_CASE("inert prime symbol equals jacobi of the norm") {
  for (RingTag ring : {kGauss, kRoot2}) {
    for (i64 p : {3, 7, 11, 19, 23, 43}) {
      if (splits_in(p, ring) || p == 2) continue;
      for (i64 a = -6; a <= 6; ++a)
        for (i64 b = -6; b <= 6; ++b) {
          QuadInt n(a, b, ring);
          if (n.is_zero()) continue;
          CHECK(inert_prime_symbol(n, p) == jacobi(norm128(n), u64(p)));
        }
    }
  }
}

TEST_CASE("sum of symbols over a primitive residue system (Eq. primitive3)") {
  for (RingTag ring : {kGauss, kRoot2}) {
    for (const auto& m : odd_elements(ring, 401, 21)) {
      if (!is_primitive(m) || is_unit(m)) continue;
      ResidueSystem rs = ResidueSystem::make(m);
      i64 lhs = 0;
      for (i64 s = 0; s < rs.e1; ++s)
        for (i64 t = 0; t < rs.e2; ++t) lhs += qr_symbol(QuadInt(s, t, ring), m);
      i64 rhs = 0;
      for (i64 n = 0; n < rs.count; ++n) rhs += jacobi(n, u64(rs.count));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("mu worked values") {
  CHECK(mu(gi(1, 4)) == 1);
  CHECK(mu(gi(5, 0)) == 0);  // not primitive
  CHECK(mu(r2(7, 2)) == -1);
  CHECK_THROWS_AS(mu(gi(1, 1)), Error);  // even
}

TEST_CASE("mu closed form (-d0/|a|) for positive norm ≡ 1 mod 8") {
  for (RingTag ring : {kGauss, kRoot2}) {
    for (const auto& w : odd_elements(ring, 2000, 45)) {
      if (!is_primitive(w)) continue;
      if ((w.a & 1) == 0) continue;  // the closed form needs odd a
      i128 n = norm128(w);
      if (n <= 0 || mod_u64(n, 8) != 1) continue;
      i64 aa = w.a < 0 ? -w.a : w.a;
      CHECK(mu(w) == jacobi(-i128(ring.d0), u64(aa)));
    }
  }
}

TEST_CASE("gamma worked values") {
  CHECK(gamma_sym(gi(1, 4), gi(5, 8)) == -1);
  CHECK(gamma_sym(gi(1, 4), gi(1, 0)) == mu(gi(1, 4)));
  CHECK(gamma_sym(gi(5, 0), gi(2, 3)) == 0);  // non-primitive first argument
}

TEST_CASE("gamma factorization gamma(w,z) = mu(w) chi_w(z) (Eq. factorgamma)") {
  std::mt19937_64 rng(4242);
  for (int it = 0; it < 4000; ++it) {
    RingTag ring = (it & 1) ? kRoot2 : kGauss;
    QuadInt w(i64(rng() % 41) - 20, i64(rng() % 41) - 20, ring);
    QuadInt z(i64(rng() % 41) - 20, i64(rng() % 41) - 20, ring);
    if (w.is_zero() || !is_odd(w)) continue;
    if (!is_primitive(w)) {
      CHECK(gamma_sym(w, z) == 0);
      continue;
    }
    CHECK(gamma_sym(w, z) == mu(w) * chi_w(w, z));
  }
}

TEST_CASE("twisted multiplicativity (Eq. gmult)") {
  std::mt19937_64 rng(555);
  for (int it = 0; it < 3000; ++it) {
    RingTag ring = (it & 1) ? kRoot2 : kGauss;
    QuadInt w(i64(rng() % 31) - 15, i64(rng() % 31) - 15, ring);
    QuadInt z1(i64(rng() % 31) - 15, i64(rng() % 31) - 15, ring);
    QuadInt z2(i64(rng() % 31) - 15, i64(rng() % 31) - 15, ring);
    if (w.is_zero() || !is_odd(w)) continue;
    CHECK(gamma_sym(w, z1) * gamma_sym(w, z2) == gamma_sym(w, z1 * z2) * mu(w));
  }
}

TEST_CASE("reciprocity gamma(w,z) gamma(z,w) = mu(wz) on a small exhaustive box") {
  for (RingTag ring : {kGauss, kRoot2}) {
    auto pool = odd_elements(ring, 60, 12);
    for (const auto& w : pool)
      for (const auto& z : pool) CHECK(gamma_sym(w, z) * gamma_sym(z, w) == mu(w * z));
  }
}

TEST_CASE("link with the rational Jacobi symbol (Lemma linkjacgamma)") {
  std::mt19937_64 rng(808);
  for (i64 p : {17, 41, 73, 89, 97, 113, 137, 193, 233, 257}) {
    for (RingTag ring : {kGauss, kRoot2}) {
      QuadInt w = split_prime(p, ring).value;
      for (int it = 0; it < 60; ++it) {
        QuadInt z(i64(rng() % 61) - 30, i64(rng() % 61) - 30, ring);
        if (z.is_zero()) continue;
        CHECK(gamma_sym(w, z) * gamma_sym(conj(w), z) == jacobi(norm128(z), u64(p)));
      }
    }
  }
}

TEST_CASE("chi_t worked values") {
  CHECK(chi_t(gi(1, 4)) == -1);
  CHECK(chi_t(r2(-5, -2)) == -1);
  for (i64 p : {17, 73, 89, 97, 113}) {
    for (RingTag ring : {kGauss, kRoot2}) {
      QuadInt w = split_prime(p, ring).value;
      CHECK(chi_t(w) == chi_t(conj(w)));  // p ≡ 1 (mod 8)
    }
  }
}

TEST_CASE("chi_t dual path: symbol equals the congruence test") {
  for (i64 p = 3; p < 5000; p += 2) {
    if (!is_prime_u64(u64(p))) continue;
    for (RingTag ring : {kGauss, kRoot2}) {
      if (!splits_in(p, ring)) continue;
      QuadInt w = split_prime(p, ring).value;
      CHECK(chi_t_symbol(w) == chi_t_congruence(w));
      CHECK(chi_t_symbol(conj(w)) == chi_t_congruence(conj(w)));
    }
  }
}

TEST_CASE("chi_t congruence path is generator independent and total") {
  std::mt19937_64 rng(91);
  for (int it = 0; it < 1500; ++it) {
    RingTag ring = (it & 1) ? kRoot2 : kGauss;
    QuadInt w(i64(rng() % 61) - 30, i64(rng() % 61) - 30, ring);
    if (w.is_zero() || !is_odd(w)) continue;
    Sym direct = chi_t_symbol(w);
    CHECK(chi_t_congruence(w) == direct);
    if (ring.d0 == -1) {
      CHECK(chi_t_congruence(QuadInt(-w.b, w.a, ring)) == direct);
    } else {
      CHECK(chi_t_congruence(-w) == direct);
      CHECK(chi_t_congruence(w * unit_eps_sq()) == direct);
    }
  }
}

TEST_CASE("chi_t square-class test on normalized generators (Eq. SteResult)") {
  // on w ≡ square (mod 4) with p ≡ 1 (mod 8): the plain square-class test
  // against the classes of Eq. (split2), times the conjugate-embedding sign
  // for d = 8
  for (i64 p = 17; p < 4000; p += 8) {
    if (!is_prime_u64(u64(p))) continue;
    for (RingTag ring : {kGauss, kRoot2}) {
      QuadInt w = split_prime(p, ring).value;
      int sq = detail::t5_square_class(w) ? 1 : -1;
      int sign = ring.d0 == 2 ? detail::conj_embedding_sign(w) : 1;
      CHECK(chi_t_symbol(w) == sq * sign);
    }
  }
}

TEST_CASE("chi2 worked values") {
  CHECK(chi2(17, kGauss) == -1);
  CHECK(chi2(97, kGauss) == -1);
  CHECK_THROWS_AS(chi2(2, kGauss), Error);
  for (i64 p = 17; p < 2000; p += 8) {
    if (!is_prime_u64(u64(p))) continue;
    CHECK(chi2(p, kGauss) != 0);
    CHECK(chi2(p, kRoot2) != 0);
  }
  for (i64 p : {5, 13, 29, 37, 53, 61}) CHECK(chi2(p, kGauss) == 0);
  for (i64 p : {7, 23, 31, 47, 71}) CHECK(chi2(p, kRoot2) == 0);
}

TEST_CASE("quartic symbols") {
  CHECK(quartic_2p(17) == -1);  // fourth powers mod 17: {1,4,13,16}
  CHECK_FALSE(fourth_power_oracle(2, 17));
  CHECK(quartic_2p(73) == 1);  // 73 = 3^2 + 64
  CHECK(fourth_power_oracle(2, 73));
  CHECK(quartic_n2(1513) == -1);  // 1513 ≡ 9 (mod 16)
  CHECK(quartic_n2(6497) == 1);
  CHECK(quartic_n2(21) == 0);
  for (i64 p = 17; p < 700; p += 8) {
    if (!is_prime_u64(u64(p))) continue;
    int oracle = fourth_power_oracle(2, p) ? 1 : (legendre_oracle(2, p) == 1 ? -1 : 0);
    CHECK(quartic_2p(p) == oracle);
  }
}

TEST_CASE("quartic bridge [2,p]_4 = chi_t for d = 8") {
  for (i64 p = 17; p < 5000; p += 8) {
    if (!is_prime_u64(u64(p))) continue;
    QuadInt w = split_prime(p, kRoot2).value;
    CHECK(quartic_2p(p) == chi_t(w));
  }
}

TEST_CASE("chi_t closed form for d = -4 primary generators") {
  // chi_t = +1 exactly when a + b ≡ ±1 (mod 8) on primary a+bi over p ≡ 1 mod 8
  for (i64 p = 17; p < 5000; p += 8) {
    if (!is_prime_u64(u64(p))) continue;
    QuadInt w = normalize_generator(split_prime(p, kGauss).value, Convention::PrimaryZi).value;
    i64 s = ((w.a + w.b) % 8 + 8) % 8;
    CHECK(chi_t(w) == ((s == 1 || s == 7) ? 1 : -1));
  }
}

TEST_CASE("psi_w worked values") {
  CHECK(psi_w(gi(1, 4), gi(5, 8)) == -1);
  CHECK(psi_w(gi(1, 4), gi(1, 0)) == 1);
  CHECK(chi_w_eps(r2(-5, -2)) == -1);  // |a+b| = 7 ≡ 3 (mod 4): twisted branch
  CHECK_THROWS_AS(psi_w(gi(1, 4), gi(1, -4)), Error);  // shares the conductor
}

TEST_CASE("psi_w is independent of the generator of (z)") {
  std::mt19937_64 rng(1618);
  for (i64 p : {17, 73, 89, 97, 113, 137}) {
    {
      QuadInt w = split_prime(p, kGauss).value;
      for (int it = 0; it < 80; ++it) {
        QuadInt z(i64(rng() % 41) - 20, i64(rng() % 41) - 20, kGauss);
        if (z.is_zero() || !is_odd(z)) continue;
        if (qr_symbol(z, conj(w)) == 0) continue;
        Sym base = psi_w(w, z);
        QuadInt u = z;
        for (int k = 0; k < 4; ++k) {
          CHECK(psi_w(w, u) == base);
          u = QuadInt(-u.b, u.a, kGauss);
        }
      }
    }
    {
      QuadInt w = split_prime(p, kRoot2).value;
      for (int it = 0; it < 60; ++it) {
        QuadInt z(i64(rng() % 31) - 15, i64(rng() % 31) - 15, kRoot2);
        if (z.is_zero() || !is_odd(z)) continue;
        if (qr_symbol(z, conj(w)) == 0) continue;
        Sym base = psi_w(w, z);
        for (int k = -3; k <= 3; ++k) {
          QuadInt u = z;
          for (int i = 0; i < (k < 0 ? -k : k); ++i)
            u = u * (k < 0 ? unit_eps_sq_inv() : unit_eps_sq());
          CHECK(psi_w(w, u) == base);
          CHECK(psi_w(w, -u) == base);
          // odd unit exponents flip the sign of the norm
          CHECK(psi_w(w, u * unit_eps()) == base);
        }
      }
    }
  }
}

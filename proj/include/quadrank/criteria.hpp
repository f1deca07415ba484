#pragma once

// The explicit symbol-level criteria: the 4-rank criterion for CL(dpq),
// construction of alpha = wz with its condition flags, the one-sided 8-rank
// predicate, and the indicator function f(p,q; r,s,e) driving the census.

#include <string>

#include "json.hpp"
#include "quadrank/symbols.hpp"

namespace quadrank {

enum class Rk8Prediction { Yes, No, Inapplicable };

inline const char* to_string(Rk8Prediction p) {
  switch (p) {
    case Rk8Prediction::Yes: return "yes";
    case Rk8Prediction::No: return "no";
    case Rk8Prediction::Inapplicable: return "inapplicable";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// rk4 criterion: rk4 CL(dpq) = 2  <=>  p ≡ q ≡ 1 (mod 8) and (p/q) = 1
// ---------------------------------------------------------------------------

inline bool rk4_is_two(i64 p, i64 q) {
  if (p == q) fail(Errc::BadInput, "rk4_is_two requires distinct primes");
  if (p % 4 != 1 || q % 4 != 1) fail(Errc::BadInput, "rk4_is_two requires p ≡ q ≡ 1 (mod 4)");
  return p % 8 == 1 && q % 8 == 1 && jacobi(p, u64(q)) == 1;
}

// ---------------------------------------------------------------------------
// PairRecord
// ---------------------------------------------------------------------------

struct PairRecord {
  i64 p = 0, q = 0;
  RingTag ring = kGauss;
  NormalizedGenerator w, z;
  QuadInt alpha;
  i64 x = 0, y = 0;
  bool flag_pqcong = false;
  bool flag_pqjac = false;
  bool flag_square_mod4 = false;
  bool flag_split2 = false;  // the local splitting condition alpha ≡ square mod t^5
  bool flag_xpos = false;
  Sym chi_t_w = 0, chi_t_z = 0;
  Sym epsilon = 0;  // (conj(alpha)/(w)); diagnostic when the preconditions fail
  Rk8Prediction prediction = Rk8Prediction::Inapplicable;
};

namespace detail {

// (conj(alpha)/(w)) for a degree-one prime w over p, via the rational image.
inline Sym symbol_mod_prime(const QuadInt& alpha_bar, const QuadInt& w, i64 p) {
  ResidueSystem rs = ResidueSystem::make(w);
  (void)p;
  return jacobi(rs.rational_image(alpha_bar), u64(rs.count));
}

}  // namespace detail

// epsilon(p,q) = (conj(alpha)/(w)) for alpha = wz built from the normalized
// generators.  Callers are responsible for the domain; build_pair checks the
// proven symbol equality (conj(alpha)/(w)) = (conj(alpha)/(z)).
inline Sym epsilon_of(i64 p, i64 q, RingTag ring) {
  QuadInt w = split_prime(p, ring).value;
  QuadInt z = split_prime(q, ring).value;
  QuadInt alpha_bar = conj(w * z);
  return detail::symbol_mod_prime(alpha_bar, w, p);
}

inline PairRecord build_pair(i64 p, i64 q, RingTag ring) {
  if (!rk4_is_two(p, q)) fail(Errc::BadInput, "build_pair requires the rk4 = 2 criterion");
  PairRecord rec;
  rec.p = p;
  rec.q = q;
  rec.ring = ring;
  rec.w = split_prime(p, ring);
  rec.z = split_prime(q, ring);
  rec.alpha = rec.w.value * rec.z.value;
  rec.x = rec.alpha.a;
  rec.y = rec.alpha.b;
  rec.flag_pqcong = (p % 8 == 1 && q % 8 == 1);
  rec.flag_pqjac = jacobi(p, u64(q)) == 1;
  rec.flag_square_mod4 = square_class_mod4(rec.alpha);
  if (!rec.flag_square_mod4)
    fail(Errc::ConsistencyViolation, "alpha is not a square class mod 4");
  rec.flag_xpos = rec.x > 0;
  rec.flag_split2 = detail::t5_square_class(rec.alpha);
  rec.chi_t_w = chi_t_symbol(rec.w.value);
  rec.chi_t_z = chi_t_symbol(rec.z.value);

  // character product route: for d = -4 the product equals the local flag;
  // for d = 8 it carries the sign of x
  Sym product = rec.chi_t_w * rec.chi_t_z;
  Sym expected = ring.d0 == -1 ? (rec.flag_split2 ? 1 : -1)
                               : (rec.flag_split2 ? 1 : -1) * (rec.x > 0 ? 1 : -1);
  if (product != expected)
    fail(Errc::ConsistencyViolation, "chi_t product disagrees with the mod-t^5 class of alpha");

  QuadInt alpha_bar = conj(rec.alpha);
  Sym eps_w = detail::symbol_mod_prime(alpha_bar, rec.w.value, p);
  Sym eps_z = detail::symbol_mod_prime(alpha_bar, rec.z.value, q);
  bool equality_proven = ring.d0 == -1 || (rec.flag_split2 && rec.flag_xpos);
  if (equality_proven && eps_w != eps_z)
    fail(Errc::ConsistencyViolation, "epsilon symbols disagree on (w) and (z)");
  rec.epsilon = eps_w;

  bool applicable = rec.flag_split2 && (ring.d0 == -1 || rec.flag_xpos);
  rec.prediction = !applicable ? Rk8Prediction::Inapplicable
                               : (rec.epsilon == 1 ? Rk8Prediction::Yes : Rk8Prediction::No);
  return rec;
}

inline Rk8Prediction predicts_rk8(i64 p, i64 q, RingTag ring) {
  return build_pair(p, q, ring).prediction;
}

// ---------------------------------------------------------------------------
// Indicator function f(p, q; r, s, e) = c(p,q; r,s) * chi_p(q)^e1 * eps^e2
// ---------------------------------------------------------------------------

struct IndicatorConfig {
  int r1 = 1, r2 = 1;  // in {1, 9}
  int s1 = 1, s2 = 1;  // in {-1, +1}
  int e1 = 0, e2 = 0;  // in {0, 1}
};

// admissibility for Thm1-style cells: s1 s2 = 1, and r1 r2 ≡ 1 (mod 16) for d=8
inline bool admissible_cell(const IndicatorConfig& cfg, RingTag ring) {
  if (cfg.s1 * cfg.s2 != 1) return false;
  if (ring.d0 == 2 && (cfg.r1 * cfg.r2) % 16 != 1) return false;
  return true;
}

inline int f_indicator(i64 p, i64 q, const IndicatorConfig& cfg, RingTag ring) {
  if (p == q) fail(Errc::BadInput, "f_indicator requires distinct primes");
  if (p % 16 != cfg.r1 || q % 16 != cfg.r2) return 0;
  if (chi2(p, ring) != cfg.s1 || chi2(q, ring) != cfg.s2) return 0;
  int val = 1;
  if (cfg.e1) val *= jacobi(p, u64(q));
  if (cfg.e2) val *= epsilon_of(p, q, ring);
  return val;
}

// ---------------------------------------------------------------------------
// Flat JSON serialization of PairRecord
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const PairRecord& r) {
  nlohmann::json j;
  j["d"] = r.ring.d;
  j["p"] = r.p;
  j["q"] = r.q;
  j["w_a"] = r.w.value.a;
  j["w_b"] = r.w.value.b;
  j["z_a"] = r.z.value.a;
  j["z_b"] = r.z.value.b;
  j["alpha_a"] = r.alpha.a;
  j["alpha_b"] = r.alpha.b;
  j["x"] = r.x;
  j["y"] = r.y;
  j["flag_pqcong"] = r.flag_pqcong;
  j["flag_pqjac"] = r.flag_pqjac;
  j["flag_square_mod4"] = r.flag_square_mod4;
  j["flag_split2"] = r.flag_split2;
  j["flag_xpos"] = r.flag_xpos;
  j["chi_t_w"] = r.chi_t_w;
  j["chi_t_z"] = r.chi_t_z;
  j["epsilon"] = r.epsilon;
  j["predicts_rk8"] = to_string(r.prediction);
  return j;
}

}  // namespace quadrank

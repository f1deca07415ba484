#pragma once

// Exact integer utilities shared across the library: overflow-checked
// arithmetic, Jacobi symbols, modular square roots, primality, small
// factorization, exact rationals, and a deterministic block scheduler.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace quadrank {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class Errc {
  Overflow,
  NotSplit,
  NotOdd,
  NoSquareClass,
  EvenModulus,
  EvenArgument,
  RamifiedPrime,
  BadConductor,
  BadInput,
  ConsistencyViolation,
  NotFundamental,
  BoundExceeded,
  NonConstantClass,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

// ---------------------------------------------------------------------------
// Checked 64-bit arithmetic (promotes through __int128 internally)
// ---------------------------------------------------------------------------

inline i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) fail(Errc::Overflow, "integer add overflow");
  return r;
}

inline i64 checked_sub(i64 a, i64 b) {
  i64 r;
  if (__builtin_sub_overflow(a, b, &r)) fail(Errc::Overflow, "integer sub overflow");
  return r;
}

inline i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) fail(Errc::Overflow, "integer mul overflow");
  return r;
}

inline i64 narrow(i128 v, const char* what = "value") {
  if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
    fail(Errc::Overflow, std::string(what) + " exceeds 63-bit range");
  return static_cast<i64>(v);
}

inline i128 iabs(i128 v) { return v < 0 ? -v : v; }

inline std::string to_string_i128(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  u128 u = neg ? u128(-(v + 1)) + 1 : u128(v);
  std::string s;
  while (u > 0) {
    s.push_back(char('0' + int(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

// ---------------------------------------------------------------------------
// Integer square roots
// ---------------------------------------------------------------------------

inline u64 isqrt_u64(u64 n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline bool is_square_u64(u64 n, u64* root = nullptr) {
  u64 r = isqrt_u64(n);
  if (root) *root = r;
  return r * r == n;
}

inline bool is_square_i128(i128 n, i128* root = nullptr) {
  if (n < 0) return false;
  u128 u = u128(n);
  u128 r = u128(std::sqrt(static_cast<double>(u)));
  while (r > 0 && r * r > u) --r;
  while ((r + 1) * (r + 1) <= u) ++r;
  if (root) *root = i128(r);
  return r * r == u;
}

// ---------------------------------------------------------------------------
// gcd / modular arithmetic
// ---------------------------------------------------------------------------

inline i64 gcd_i64(i64 a, i64 b) {
  return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

// returns g and x,y with a*x + b*y = g
inline i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return a >= 0 ? a : -a;
  }
  i64 x1, y1;
  i64 g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

inline u64 mod_u64(i128 a, u64 m) {
  i128 r = a % i128(m);
  if (r < 0) r += m;
  return static_cast<u64>(r);
}

inline u64 mulmod_u64(u64 a, u64 b, u64 m) { return u64((u128(a) * b) % m); }

inline u64 powmod_u64(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mulmod_u64(r, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return r;
}

inline u64 invmod_u64(u64 a, u64 m) {
  i64 x, y;
  i64 g = ext_gcd(i64(a % m), i64(m), x, y);
  if (g != 1) fail(Errc::BadInput, "invmod: arguments not coprime");
  i64 r = x % i64(m);
  if (r < 0) r += i64(m);
  return u64(r);
}

// ---------------------------------------------------------------------------
// Jacobi symbol (binary algorithm); m odd positive
// ---------------------------------------------------------------------------

inline int jacobi(i128 a, u64 m) {
  if (m == 0 || (m & 1) == 0) fail(Errc::EvenModulus, "jacobi: modulus must be odd positive");
  u64 n = mod_u64(a, m);
  if (m == 1) return 1;
  int t = 1;
  while (n != 0) {
    int z = __builtin_ctzll(n);
    n >>= z;
    if (z & 1) {
      u64 r = m & 7;
      if (r == 3 || r == 5) t = -t;
    }
    if ((n & 3) == 3 && (m & 3) == 3) t = -t;
    std::swap(n, m);
    n %= m;
  }
  return m == 1 ? t : 0;
}

// ---------------------------------------------------------------------------
// Deterministic Miller-Rabin for 64-bit inputs
// ---------------------------------------------------------------------------

inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = __builtin_ctzll(d);
  d >>= s;
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod_u64(a % n, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i + 1 < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Square roots modulo an odd prime (Tonelli-Shanks, deterministic walk for
// the auxiliary non-residue)
// ---------------------------------------------------------------------------

inline u64 sqrt_mod_prime(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  if (p == 2) return a;
  if (jacobi(a, p) != 1) fail(Errc::BadInput, "sqrt_mod_prime: not a residue");
  if ((p & 3) == 3) return powmod_u64(a, (p + 1) / 4, p);
  // Tonelli-Shanks
  u64 q = p - 1;
  int s = __builtin_ctzll(q);
  q >>= s;
  u64 z = 2;
  while (jacobi(z, p) != -1) ++z;
  u64 m = s;
  u64 c = powmod_u64(z, q, p);
  u64 t = powmod_u64(a, q, p);
  u64 r = powmod_u64(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 t2 = t;
    u64 i = 0;
    while (t2 != 1) {
      t2 = mulmod_u64(t2, t2, p);
      ++i;
      if (i == m) fail(Errc::BadInput, "sqrt_mod_prime: internal failure");
    }
    u64 b = powmod_u64(c, u64(1) << (m - i - 1), p);
    m = i;
    c = mulmod_u64(b, b, p);
    t = mulmod_u64(t, c, p);
    r = mulmod_u64(r, b, p);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Small factorization and Euler phi (trial division; inputs stay modest)
// ---------------------------------------------------------------------------

inline std::vector<std::pair<u64, int>> factorize_u64(u64 n) {
  std::vector<std::pair<u64, int>> f;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      f.push_back({p, e});
    }
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

inline u64 euler_phi(u64 n) {
  u64 r = n;
  for (auto [p, e] : factorize_u64(n)) {
    (void)e;
    r -= r / p;
  }
  return r;
}

inline int omega_u64(u64 n) { return int(factorize_u64(n).size()); }

// ---------------------------------------------------------------------------
// Exact rationals (64-bit numerator/denominator, overflow-checked)
// ---------------------------------------------------------------------------

struct Rat {
  i64 num = 0;
  i64 den = 1;

  Rat() = default;
  Rat(i64 n) : num(n), den(1) {}
  Rat(i64 n, i64 d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) fail(Errc::BadInput, "rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i64 g = gcd_i64(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  Rat operator+(const Rat& o) const {
    return Rat(checked_add(checked_mul(num, o.den), checked_mul(o.num, den)),
               checked_mul(den, o.den));
  }
  Rat operator-(const Rat& o) const {
    return Rat(checked_sub(checked_mul(num, o.den), checked_mul(o.num, den)),
               checked_mul(den, o.den));
  }
  Rat operator*(const Rat& o) const {
    return Rat(checked_mul(num, o.num), checked_mul(den, o.den));
  }
  Rat operator/(const Rat& o) const {
    if (o.num == 0) fail(Errc::BadInput, "rational division by zero");
    return Rat(checked_mul(num, o.den), checked_mul(den, o.num));
  }
  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rat& o) const { return !(*this == o); }

  double to_double() const { return double(num) / double(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

// ---------------------------------------------------------------------------
// Deterministic parallel blocks: work is split into a fixed number of blocks
// independent of the worker count, each block writes only its own slot, and
// callers merge slots in block order. Results are identical for any thread
// count.
// ---------------------------------------------------------------------------

inline void run_blocks(std::size_t n_blocks, int threads, const std::function<void(std::size_t)>& fn) {
  if (n_blocks == 0) return;
  unsigned hw = std::thread::hardware_concurrency();
  if (threads <= 0) threads = hw ? int(hw) : 1;
  threads = int(std::min<std::size_t>(std::size_t(threads), n_blocks));
  if (threads <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) fn(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr first_error = nullptr;
  std::mutex err_mutex;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      while (true) {
        std::size_t b = next.fetch_add(1);
        if (b >= n_blocks) break;
        try {
          fn(b);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace quadrank

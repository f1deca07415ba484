#pragma once

// Segmented bit-packed sieve of Eratosthenes.

#include <vector>

#include "quadrank/numeric.hpp"

namespace quadrank {

class PrimeSieve {
 public:
  explicit PrimeSieve(i64 n) : n_(n < 2 ? 2 : n), bits_((std::size_t(n_) >> 7) + 2, ~u64(0)) {
    // bits_ holds odd numbers only: bit i <-> 2i+1
    clear_bit(0);  // 1 is not prime
    i64 root = i64(isqrt_u64(u64(n_)));
    std::vector<i64> base;
    for (i64 p = 3; p <= root; p += 2) {
      if (test_bit((p - 1) / 2)) {
        base.push_back(p);
        for (i64 m = p * p; m <= std::min<i64>(root * root, n_); m += 2 * p) clear_bit((m - 1) / 2);
      }
    }
    const i64 seg = 1 << 20;
    for (i64 lo = root * root + 1; lo <= n_; lo += seg) {
      i64 hi = std::min<i64>(lo + seg - 1, n_);
      for (i64 p : base) {
        i64 start = ((lo + p - 1) / p) * p;
        if (start < p * p) start = p * p;
        if ((start & 1) == 0) start += p;
        for (i64 m = start; m <= hi; m += 2 * p) clear_bit((m - 1) / 2);
      }
    }
  }

  bool is_prime(i64 x) const {
    if (x == 2) return true;
    if (x < 2 || (x & 1) == 0) return false;
    return test_bit((x - 1) / 2);
  }

  i64 limit() const { return n_; }

  std::vector<i64> primes() const {
    std::vector<i64> out;
    if (n_ >= 2) out.push_back(2);
    for (i64 x = 3; x <= n_; x += 2)
      if (test_bit((x - 1) / 2)) out.push_back(x);
    return out;
  }

  template <typename F>
  void for_primes(i64 lo, i64 hi, F&& f) const {
    hi = std::min(hi, n_);
    if (lo <= 2 && hi >= 2) f(i64(2));
    i64 x = std::max<i64>(3, lo | 1);
    for (; x <= hi; x += 2)
      if (test_bit((x - 1) / 2)) f(x);
  }

 private:
  i64 n_;
  std::vector<u64> bits_;

  bool test_bit(i64 i) const { return (bits_[std::size_t(i >> 6)] >> (i & 63)) & 1; }
  void clear_bit(i64 i) { bits_[std::size_t(i >> 6)] &= ~(u64(1) << (i & 63)); }
};

}  // namespace quadrank

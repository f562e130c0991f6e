#include "catsolve/fp.hpp"

#include <mutex>
#include <vector>

namespace catsolve {

namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d : {2u, 3u, 5u, 7u})
    if (n % d == 0) return n == d;
  // deterministic Miller-Rabin for 32-bit inputs
  std::uint32_t d = n - 1;
  int s = 0;
  while ((d & 1u) == 0) {
    d >>= 1u;
    ++s;
  }
  auto powmod = [n](std::uint64_t b, std::uint32_t e) {
    std::uint64_t r = 1;
    b %= n;
    while (e) {
      if (e & 1u) r = r * b % n;
      b = b * b % n;
      e >>= 1u;
    }
    return r;
  };
  for (std::uint64_t a : {2u, 7u, 61u}) {
    std::uint64_t x = powmod(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace

std::uint32_t nth_large_prime(std::size_t index) {
  static std::mutex mu;
  static std::vector<std::uint32_t> primes;
  std::lock_guard<std::mutex> lock(mu);
  std::uint32_t next = primes.empty() ? (1u << 31) - 1 : primes.back() - 2;
  while (primes.size() <= index) {
    while (!is_prime(next)) next -= 2;
    primes.push_back(next);
    next -= 2;
  }
  return primes[index];
}

}  // namespace catsolve

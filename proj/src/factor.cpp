#include <algorithm>

#include "adelic/error.hpp"
#include "adelic/padic.hpp"

namespace adelic {

namespace {

constexpr unsigned long kTrialBound = 2000;

bool probably_prime(const Integer& n) { return mpz_probab_prime_p(n.get_mpz_t(), 24) > 0; }

// Brent's variant of Pollard rho; returns a nontrivial factor of composite n.
Integer pollard_brent(const Integer& n) {
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, q = 1, g = 1, ys;
    unsigned long r = 1;
    constexpr unsigned long m = 128;
    auto f = [&](const Integer& v) { return Integer((v * v + c) % n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = (q * abs(Integer(x - y))) % n;
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(abs(Integer(x - ys)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split(const Integer& n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (probably_prime(n)) {
    out.push_back(n);
    return;
  }
  Integer d = pollard_brent(n);
  split(d, out);
  split(Integer(n / d), out);
}

}  // namespace

std::vector<Prime> prime_factors(const Integer& value) {
  Integer n = abs(value);
  std::vector<Integer> found;
  if (n == 0) return {};
  for (unsigned long p = 2; p <= kTrialBound && p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      found.emplace_back(p);
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) n /= p;
    }
  }
  if (n > 1) split(n, found);

  std::vector<Prime> primes;
  primes.reserve(found.size());
  for (const Integer& f : found) {
    if (probably_prime(f) && mpz_sizeinbase(f.get_mpz_t(), 2) <= 64) {
      primes.push_back(Prime::from_integer(f));
    } else {
      fail(ErrorCode::InvalidArgument,
           "prime factor " + f.get_str() + " of " + value.get_str() + " exceeds 2^64");
    }
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

std::vector<Prime> prime_support(const Rational& q) {
  std::vector<Prime> out = prime_factors(q.get_num());
  std::vector<Prime> den = prime_factors(q.get_den());
  out.insert(out.end(), den.begin(), den.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace adelic

// Deterministic samplers for property trials. Raw mt19937_64 draws with
// modular reduction (no std distributions) so that a fixed seed yields the
// same stream on every platform.
#pragma once

#include "relchev/rel_subschemes.hpp"

#include <functional>
#include <random>

namespace relchev {

struct Sampler {
  std::mt19937_64 rng;

  explicit Sampler(std::uint64_t seed) : rng(seed) {}

  long long int_in(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  Rat rational(long long max_num, long long max_den) {
    long long n = int_in(-max_num, max_num);
    long long d = int_in(1, max_den);
    return Rat(n, d);
  }

  RingElement rational_elem(long long max_num = 9, long long max_den = 5) {
    return make_rat(rational(max_num, max_den));
  }

  // small polynomial over Q
  RingElement poly_elem(const RingPtr& r, int max_deg = 2, long long max_num = 4) {
    std::vector<RingElement> cs;
    int deg = static_cast<int>(int_in(0, max_deg));
    for (int i = 0; i <= deg; ++i)
      cs.push_back(make_rat(Rat(int_in(-max_num, max_num), int_in(1, 3))));
    return make_poly(r, cs);
  }
};

// random word over Phi_P (or U_P only), coefficients drawn from `coeff`
inline RelWord sample_word(Sampler& s, const RelGroupContext& ctx, int max_len,
                           bool positive_only, const std::function<RingElement()>& coeff) {
  std::vector<int> pool;
  for (int a = 0; a < ctx.rel_count(); ++a)
    if (!positive_only || ctx.rel_height(a) > 0) pool.push_back(a);
  RelWord w;
  int len = static_cast<int>(s.int_in(1, max_len));
  for (int i = 0; i < len; ++i) {
    int a = pool[static_cast<size_t>(s.int_in(0, static_cast<long long>(pool.size()) - 1))];
    std::vector<RingElement> u;
    for (int j = 0; j < ctx.fiber_rank(a); ++j) u.push_back(coeff());
    w.push_back({a, u});
  }
  return w;
}

// random SL_n element over a field ring K as a product of elementary
// transvections with coefficients from `coeff` (always det 1)
inline Matrix sample_sl(Sampler& s, int n, const RingPtr& K, int factors,
                        const std::function<RingElement()>& coeff) {
  Matrix m = identity_matrix(K, n);
  for (int k = 0; k < factors; ++k) {
    int i = static_cast<int>(s.int_in(0, n - 1));
    int j = static_cast<int>(s.int_in(0, n - 2));
    if (j >= i) ++j;
    Matrix e = identity_matrix(K, n);
    e.at(i, j) = coeff();
    m = mat_mul(m, e);
  }
  return m;
}

// rational with denominator supported on the given primes, exponents <= maxe
inline RingElement sample_supported_rational(Sampler& s, const std::vector<long long>& primes,
                                             unsigned maxe, long long max_num = 9) {
  Int den = 1;
  for (long long p : primes) {
    unsigned e = static_cast<unsigned>(s.int_in(0, maxe));
    for (unsigned i = 0; i < e; ++i) den *= p;
  }
  return make_rat(Rat(Int(s.int_in(-max_num, max_num)), den));
}

}  // namespace relchev

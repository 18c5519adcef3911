// Nisnevich-patching trivialization over semi-local Dedekind desk bases:
// choose a uniformizer f at a maximal ideal m, decompose the cocycle over the
// DVR at m, push the elementary part across the localization with the
// factorization lemma, and certify the resulting splitting x = g1 * ep(g2).
#pragma once

#include "relchev/dvr.hpp"
#include "relchev/factorization.hpp"

namespace relchev {

struct PatchingDatum {
  RingPtr base;                      // Z or Q[t]
  std::vector<RingElement> primes;   // maximal-ideal generators, in base
  size_t m_index = 0;
  RingPtr B;                         // semi-local Dedekind ring
  RingElement f;                     // uniformizer at m, in B
  RingPtr A;                         // DVR at m (the henselization surrogate)
  DvrContext dvr;
  RingPtr K;                         // fraction field
};

// f generating m and a unit at every other maximal ideal
inline RingElement choose_uniformizer(const RingPtr& base, const std::vector<RingElement>& primes,
                                      size_t m_index, const RingPtr& B) {
  const RingElement& p = primes[m_index];
  for (size_t i = 0; i < primes.size(); ++i) {
    if (i == m_index) continue;
    RingElement g = detail::base_gcd(p, primes[i]);
    if (!detail::is_unit_in_base(g))
      fail(RingError::Code::UnsupportedType, "uniformizer: maximal ideals not coprime");
  }
  (void)base;
  return embed(p, B);
}

inline PatchingDatum make_patching_datum(const RingPtr& base,
                                         const std::vector<RingElement>& primes,
                                         size_t m_index) {
  if (primes.empty() || m_index >= primes.size())
    fail(RingError::Code::UnsupportedType, "patching: bad prime selection");
  PatchingDatum d;
  d.base = base;
  d.primes = primes;
  d.m_index = m_index;
  d.B = restricted_fractions(base, primes, false);
  d.f = choose_uniformizer(base, primes, m_index, d.B);
  if (base->kind == RingKind::Integers) {
    d.dvr = dvr_integers(std::get<Int>(primes[m_index].v));
  } else if (base->kind == RingKind::Polynomials) {
    d.dvr = dvr_polynomials(primes[m_index]);
  } else {
    fail(RingError::Code::UnsupportedType, "patching: unsupported base ring");
  }
  d.A = d.dvr.O;
  d.K = d.dvr.K;
  return d;
}

struct Trivialization {
  Matrix g1;      // over A
  RelWord g2;     // over B_f
  bool certificate = false;
};

// independent checker: memberships plus the exact product identity, with no
// shared state with the producer
inline bool verify_trivialization(const PatchingDatum& d, const RelGroupContext& ctx,
                                  const Trivialization& t, const Matrix& x) {
  RingPtr Bf = localization(d.B, d.f);
  auto g1K = mat_try_convert(t.g1, d.K);
  if (!g1K) return false;
  for (const auto& e : g1K->a)
    if (!try_convert(e, d.A)) return false;
  for (const auto& letter : t.g2)
    for (const auto& u : letter.u)
      if (!try_convert(u, Bf)) return false;
  try {
    Matrix prod = mat_mul(*g1K, ep_eval(ctx, t.g2, d.K));
    return mat_equal(prod, x);
  } catch (const RingError&) {
    return false;
  }
}

inline Trivialization trivialize_cocycle(const PatchingDatum& d, const RelGroupContext& ctx,
                                         const Matrix& x) {
  if (!same_ring(x.ring, d.K)) fail(RingError::Code::RingMismatch, "patching: cocycle not over K");
  if (!membership(ctx.G, x)) fail(RingError::Code::NotInGroup, "patching: cocycle not in G(K)");
  Trivialization out{identity_matrix(d.A, ctx.G.size), {}, false};
  if (mat_try_convert(x, d.B)) {
    out.g1 = mat_convert(x, d.A);
  } else {
    auto [y, z] = decompose_GK(d.dvr, ctx, x);
    Matrix yA = mat_convert(y, d.A);
    SubringPair pair = make_subring_pair(d.B, d.A, d.f);
    FactorizationResult fr = factor_ep_word(pair, ctx, z);
    out.g1 = mat_mul(yA, fr.y);
    out.g2 = fr.z;
  }
  out.certificate = verify_trivialization(d, ctx, out, x);
  if (!out.certificate) fail(RingError::Code::Internal, "patching: certificate failed");
  return out;
}

// ---------------------------------------------------------------------------
// induction mirror: peel one maximal ideal per pass

struct SemilocalTrivialization {
  std::vector<Matrix> locals;  // locals[i] over the DVR at primes[i]
  RelWord tail;                // over K
};

inline SemilocalTrivialization trivialize_semilocal(const RingPtr& base,
                                                    std::vector<RingElement> primes,
                                                    const RelGroupContext& ctx, const Matrix& x) {
  if (primes.empty()) fail(RingError::Code::UnsupportedType, "semilocal: no primes");
  SemilocalTrivialization out;
  if (primes.size() == 1) {
    DvrContext d = (base->kind == RingKind::Integers)
                       ? dvr_integers(std::get<Int>(primes[0].v))
                       : dvr_polynomials(primes[0]);
    auto [y, z] = decompose_GK(d, ctx, x);
    out.locals.push_back(mat_convert(y, d.O));
    out.tail = z;
    return out;
  }
  PatchingDatum d = make_patching_datum(base, primes, 0);
  Trivialization t = trivialize_cocycle(d, ctx, x);
  // ep(g2) has coefficients in B_f, the semi-local ring at the remaining primes
  Matrix rest = ep_eval(ctx, t.g2, d.K);
  std::vector<RingElement> remaining(primes.begin() + 1, primes.end());
  SemilocalTrivialization inner = trivialize_semilocal(base, remaining, ctx, rest);
  out.locals.push_back(t.g1);
  out.locals.insert(out.locals.end(), inner.locals.begin(), inner.locals.end());
  out.tail = inner.tail;
  return out;
}

// checker for the induction mirror: product identity over K plus one
// integrality certificate per peeled ideal
inline bool verify_semilocal(const RingPtr& base, const std::vector<RingElement>& primes,
                             const RelGroupContext& ctx, const Matrix& x,
                             const SemilocalTrivialization& t) {
  if (t.locals.size() != primes.size()) return false;
  const RingPtr& K = x.ring;
  Matrix prod = identity_matrix(K, x.n);
  for (size_t i = 0; i < t.locals.size(); ++i) {
    RingPtr Oi = restricted_fractions(base, {primes[i]}, false);
    auto li = mat_try_convert(t.locals[i], Oi);
    if (!li) return false;
    prod = mat_mul(prod, mat_convert(t.locals[i], K));
  }
  prod = mat_mul(prod, ep_eval(ctx, t.tail, K));
  return mat_equal(prod, x);
}

}  // namespace relchev

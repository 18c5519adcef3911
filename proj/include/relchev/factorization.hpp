// Height-induction factorization of E_P-words across a localization: given a
// subring B of A with h in B such that B -> A/hA is surjective, any word over
// A_h factors as F_h(y) * z with y a matrix over A and z a word over B_h.
// The clearing exponent N is computed from denominator exponents instead of
// being posited, and every result is verified before it is returned.
#pragma once

#include "relchev/rel_subschemes.hpp"

namespace relchev {

struct SubringPair {
  RingPtr B, A;
  RingElement h;    // in B
  RingElement hA;   // image in A
  RingPtr Bh, Ah;   // localizations at h
  bool h_unit_in_A = false;
};

inline SubringPair make_subring_pair(const RingPtr& B, const RingPtr& A, const RingElement& h) {
  if (!same_ring(h.ring, B)) fail(RingError::Code::RingMismatch, "pair: h not in B");
  if (is_zero(h)) fail(RingError::Code::DivisionError, "pair: h must be nonzero");
  SubringPair p;
  p.B = B;
  p.A = A;
  p.h = h;
  p.hA = embed(h, A);
  p.Bh = localization(B, h);
  p.Ah = localization(A, p.hA);
  p.h_unit_in_A = try_div(one(A), p.hA).has_value();
  // surjectivity probes: small elements of B must round-trip through A/hA
  if (!p.h_unit_in_A) {
    for (long long v : {0LL, 1LL}) {
      RingElement b = from_int(B, v);
      RingElement lift = residue_lift(embed(b, A), h, 1, B);
      if (!try_div(sub(lift, b), h))
        fail(RingError::Code::NotSurjective, "pair: residue_lift probe failed");
    }
  }
  return p;
}

struct FactorizationResult {
  Matrix y;                             // over A
  RelWord z;                            // coefficients over B_h
  std::vector<std::string> transcript;
};

// c = a*h^N + h^{-M}*b with a over A, b over B, M = denominator exponent of c
struct CoefficientSplit {
  std::vector<RingElement> a;  // over A
  std::vector<RingElement> b;  // over B
  unsigned M = 0;
};

inline CoefficientSplit split_coefficient(const SubringPair& pair,
                                          const std::vector<RingElement>& c, unsigned N) {
  CoefficientSplit out;
  for (const auto& ci : c) out.M = std::max(out.M, denom_exponent(ci));
  RingElement hAh = embed(pair.hA, pair.Ah);
  RingElement hM = pow_nat(hAh, out.M);
  RingElement hN = pow_nat(hAh, N);
  for (const auto& ci : c) {
    // h^M * c_i lives in A; lift its class mod h^{N+M} back to B
    RingElement scaled = mul(ci, hM);
    auto in_A = try_convert(scaled, pair.A);
    if (!in_A) fail(RingError::Code::Internal, "split: h^M c not in A");
    RingElement bi = residue_lift(*in_A, pair.h, N + out.M, pair.B);
    RingElement b_over = div_exact(embed(bi, pair.Ah), hM);
    RingElement ai_h = div_exact(sub(ci, b_over), hN);
    auto ai = try_convert(ai_h, pair.A);
    if (!ai) fail(RingError::Code::Internal, "split: a component not in A");
    // identity check: c = a h^N + h^{-M} b
    if (!equal(ci, add(mul(embed(*ai, pair.Ah), hN), b_over)))
      fail(RingError::Code::Internal, "split: identity violated");
    out.a.push_back(*ai);
    out.b.push_back(bi);
  }
  return out;
}

namespace detail {

// Z-degree slices C_j of zm * X_beta(Z e_i) * zm^{-1}: the conjugate equals
// sum_j Z^j C_j with C_j matrices over the scalar ring of zm
inline std::vector<Matrix> conj_z_slices(const RelGroupContext& ctx, const Matrix& zm,
                                         const Matrix& zminv, int beta, int i) {
  const RingPtr& R = zm.ring;
  RingPtr PZ = polynomials(R, "Z");
  int k = ctx.fiber_rank(beta);
  std::vector<RingElement> e(static_cast<size_t>(k), zero(PZ));
  e[static_cast<size_t>(i)] = var_elem(PZ);
  Matrix X = X_alpha(ctx, beta, e, PZ);
  size_t maxdeg = 0;
  for (const auto& entry : X.a)
    maxdeg = std::max(maxdeg, std::get<PolyPayload>(entry.v).coeffs.size());
  std::vector<Matrix> out;
  for (size_t d = 0; d < maxdeg; ++d) {
    Matrix D = zero_matrix(R, X.n);
    for (int r = 0; r < X.n; ++r)
      for (int c = 0; c < X.n; ++c) {
        const auto& cs = std::get<PolyPayload>(X.at(r, c).v).coeffs;
        if (d < cs.size()) D.at(r, c) = cs[d];
      }
    out.push_back(mat_mul(mat_mul(zm, D), zminv));
  }
  return out;
}

inline unsigned clearance_from_slices(const SubringPair& pair, const std::vector<Matrix>& C) {
  unsigned N = 0;
  for (size_t j = 1; j < C.size(); ++j)
    for (const auto& entry : C[j].a) {
      unsigned dex = denom_exponent(entry);
      N = std::max(N, (dex + static_cast<unsigned>(j) - 1) / static_cast<unsigned>(j));
    }
  // recheck: Z -> h^N Z clears every denominator and Z = 0 gives the identity
  if (C.empty() || !mat_is_identity(C[0]))
    fail(RingError::Code::Internal, "clearance: conjugate not congruent to identity");
  RingElement hAh = embed(pair.hA, pair.Ah);
  for (size_t j = 1; j < C.size(); ++j) {
    RingElement hNj = pow_nat(hAh, N * static_cast<unsigned>(j));
    for (const auto& entry : C[j].a)
      if (!try_convert(mul(entry, hNj), pair.A))
        fail(RingError::Code::Internal, "clearance: rescaled coefficient not in A");
  }
  return N;
}

}  // namespace detail

// minimal N such that ep(z) X_beta(h^N Z e_i) ep(z)^{-1} has entries in A[Z]
inline unsigned conjugation_clearance(const SubringPair& pair, const RelGroupContext& ctx,
                                      const RelWord& z, int beta, int i) {
  Matrix zm = ep_eval(ctx, z, pair.Ah);
  return detail::clearance_from_slices(pair,
                                       detail::conj_z_slices(ctx, zm, mat_inverse(zm), beta, i));
}

namespace detail {

struct FactorState {
  const SubringPair& pair;
  const RelGroupContext& ctx;
  Matrix y;      // over A
  RelWord z;     // over B_h
  Matrix zm, zminv;  // ep(z) and its inverse over A_h, maintained incrementally
  std::vector<std::string>& transcript;

  // append a letter to z; uAh are the coefficients viewed in A_h
  void push_z(int beta, const std::vector<RingElement>& uBh,
              const std::vector<RingElement>& uAh) {
    z.push_back({beta, uBh});
    Matrix X = X_alpha(ctx, beta, uAh, pair.Ah);
    zm = mat_mul(zm, X);
    zminv = mat_mul(mat_inverse(X), zminv);
  }
};

inline void absorb_letter(FactorState& st, int beta, const std::vector<RingElement>& c,
                          int depth);

inline void absorb_general(FactorState& st, int beta, const std::vector<RingElement>& c,
                           int depth) {
  const SubringPair& pair = st.pair;
  const RelGroupContext& ctx = st.ctx;
  unsigned N = 1;
  int k = ctx.fiber_rank(beta);
  for (int i = 0; i < k; ++i)
    N = std::max(N, clearance_from_slices(pair, conj_z_slices(ctx, st.zm, st.zminv, beta, i)));
  CoefficientSplit sp = split_coefficient(pair, c, N);
  st.transcript.push_back("split depth=" + std::to_string(depth) + " beta=" +
                          std::to_string(beta) + " N=" + std::to_string(N) + " M=" +
                          std::to_string(sp.M));
  RingElement hAh = embed(pair.hA, pair.Ah);
  RingElement hN = pow_nat(hAh, N);
  RingElement hMinv = div_exact(one(pair.Ah), pow_nat(hAh, sp.M));
  // P = prod_i X_beta(a_i h^N e_i); by the clearance choice z P z^{-1} is over A
  Matrix P = identity_matrix(pair.Ah, ctx.G.size);
  std::vector<RingElement> ahN;
  for (int i = 0; i < k; ++i) {
    RingElement ai = mul(embed(sp.a[static_cast<size_t>(i)], pair.Ah), hN);
    ahN.push_back(ai);
    std::vector<RingElement> e(static_cast<size_t>(k), zero(pair.Ah));
    e[static_cast<size_t>(i)] = ai;
    P = mat_mul(P, X_alpha(ctx, beta, e, pair.Ah));
  }
  Matrix conj = mat_mul(mat_mul(st.zm, P), st.zminv);
  auto conjA = mat_try_convert(conj, pair.A);
  if (!conjA) fail(RingError::Code::Internal, "factor: conjugate bracket not over A");
  st.y = mat_mul(st.y, *conjA);
  // remaining tail: X_beta(a h^N) = P * tail1; X_beta(c) = X(a h^N) X(h^{-M} b) * tail3
  std::vector<int> multiples;
  for (int j = 2; j <= ctx.max_multiple[static_cast<size_t>(beta)]; ++j)
    multiples.push_back(ctx.multiple_index(beta, j));
  Matrix Xa = X_alpha(ctx, beta, ahN, pair.Ah);
  std::vector<RingElement> bvec;
  for (const auto& bi : sp.b) bvec.push_back(mul(embed(bi, pair.Ah), hMinv));
  Matrix Xb = X_alpha(ctx, beta, bvec, pair.Ah);
  Matrix Xc = X_alpha(ctx, beta, c, pair.Ah);
  RelWord tail1 = extract_coordinates(ctx, multiples, mat_mul(mat_inverse(P), Xa));
  RelWord tail3 = extract_coordinates(
      ctx, multiples, mat_mul(mat_inverse(Xb), mat_mul(mat_inverse(Xa), Xc)));
  for (const auto& t : tail1) absorb_letter(st, t.alpha, t.u, depth + 1);
  // the b-part: coefficients h^{-M} b live in B_h
  {
    std::vector<RingElement> bBh;
    RingElement hBh = embed(st.pair.h, pair.Bh);
    RingElement hMB = div_exact(one(pair.Bh), pow_nat(hBh, sp.M));
    for (const auto& bi : sp.b) bBh.push_back(mul(embed(bi, pair.Bh), hMB));
    st.push_z(beta, bBh, bvec);
    st.transcript.push_back("emit depth=" + std::to_string(depth) + " beta=" +
                            std::to_string(beta));
  }
  for (const auto& t : tail3) absorb_letter(st, t.alpha, t.u, depth + 1);
}

inline void absorb_letter(FactorState& st, int beta, const std::vector<RingElement>& c,
                          int depth) {
  // already over B_h: append to z
  std::vector<RingElement> cB;
  bool allB = true;
  for (const auto& ci : c) {
    auto v = try_convert(ci, st.pair.Bh);
    if (!v) { allB = false; break; }
    cB.push_back(*v);
  }
  if (allB) {
    st.push_z(beta, cB, c);
    st.transcript.push_back("append depth=" + std::to_string(depth) + " beta=" +
                            std::to_string(beta));
    return;
  }
  // z empty and c over A: fold the factor directly into y
  if (st.z.empty()) {
    bool allA = true;
    for (const auto& ci : c)
      if (!try_convert(ci, st.pair.A)) { allA = false; break; }
    if (allA) {
      Matrix x = X_alpha(st.ctx, beta, c, st.pair.Ah);
      st.y = mat_mul(st.y, mat_convert(x, st.pair.A));
      st.transcript.push_back("absorb depth=" + std::to_string(depth) + " beta=" +
                              std::to_string(beta));
      return;
    }
  }
  absorb_general(st, beta, c, depth);
}

}  // namespace detail

inline FactorizationResult factor_ep_word(const SubringPair& pair, const RelGroupContext& ctx,
                                          const RelWord& x) {
  if (ctx.datum.rel_roots.empty())
    fail(RingError::Code::NonProperParabolic, "factor: empty relative root system");
  std::vector<std::string> transcript;
  // coerce the input over A_h
  RelWord xa;
  for (const auto& letter : x) {
    std::vector<RingElement> u;
    for (const auto& ui : letter.u) u.push_back(embed(ui, pair.Ah));
    xa.push_back({letter.alpha, u});
  }
  FactorizationResult out{identity_matrix(pair.A, ctx.G.size), {}, {}};
  if (pair.h_unit_in_A) {
    // degenerate: A_h == A, the whole word evaluates over A
    out.y = mat_convert(ep_eval(ctx, xa, pair.Ah), pair.A);
    out.transcript.push_back("degenerate: h is a unit in A");
    return out;
  }
  Matrix id_ah = identity_matrix(pair.Ah, ctx.G.size);
  detail::FactorState st{pair, ctx, out.y, {}, id_ah, id_ah, transcript};
  for (const auto& letter : xa) detail::absorb_letter(st, letter.alpha, letter.u, 0);
  out.y = st.y;
  out.z = st.z;
  out.transcript = transcript;
  // soundness: never returned unverified; st.zm is ep(z) by construction
  Matrix lhs = ep_eval(ctx, xa, pair.Ah);
  Matrix rhs = mat_mul(mat_convert(out.y, pair.Ah), st.zm);
  if (!mat_equal(lhs, rhs))
    fail(RingError::Code::Internal, "factor: product identity violated");
  return out;
}

}  // namespace relchev

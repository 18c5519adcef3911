// Discrete valuation rings at desk scale (Z at a prime, Q[t] at an
// irreducible) and the decomposition G(K) = G(O) * E_P(K): valuation-pivot
// elimination for the integral part, elementary-word synthesis over the
// fraction field for the rest.
#pragma once

#include "relchev/rel_subschemes.hpp"

#include <climits>

namespace relchev {

struct DvrContext {
  RingPtr O;              // the DVR (fractions with denominator coprime to pi)
  RingPtr K;              // fraction field
  RingElement pi_base;    // uniformizer as an element of the flat base (Z or Q[t])
  RingElement uniformizer;  // same, as an element of O
};

inline DvrContext dvr_integers(const Int& p) {
  DvrContext d;
  RingPtr Z = integers();
  d.pi_base = make_int(p);
  d.O = restricted_fractions(Z, {d.pi_base}, false);
  d.K = rationals();
  d.uniformizer = embed(d.pi_base, d.O);
  return d;
}

inline DvrContext dvr_polynomials(const RingElement& pi) {
  if (pi.ring->kind != RingKind::Polynomials)
    fail(RingError::Code::UnsupportedType, "dvr: uniformizer must be a polynomial");
  DvrContext d;
  d.pi_base = pi;
  d.O = restricted_fractions(pi.ring, {pi}, false);
  d.K = fraction_field(pi.ring);
  d.uniformizer = embed(pi, d.O);
  return d;
}

// pi-adic valuation; LONG_MAX for zero
inline long valuation(const DvrContext& d, const RingElement& x) {
  if (is_zero(x)) return LONG_MAX;
  auto f = detail::try_flatten(x);
  if (!f) fail(RingError::Code::UnsupportedType, "valuation: cannot flatten");
  auto divs = [&](RingElement v) {
    long c = 0;
    while (true) {
      auto q = try_div(v, d.pi_base);
      if (!q) break;
      v = *q;
      ++c;
    }
    return c;
  };
  return divs(f->num) - divs(f->den);
}

// x = y * t with y in G(O) (det 1, entries valuation-nonnegative) and t
// upper triangular; minimal-valuation pivoting. SL only; Sp callers fall
// back to a pure field word (y = identity).
inline std::pair<Matrix, Matrix> iwasawa_decompose(const DvrContext& d,
                                                   const GroupDescriptor& g, const Matrix& x) {
  if (!membership(g, x)) fail(RingError::Code::NotInGroup, "iwasawa: not a group element");
  if (g.family != Family::SL) return {identity_matrix(x.ring, x.n), x};
  const RingPtr& K = x.ring;
  int n = x.n;
  Matrix t = x;
  Matrix y = identity_matrix(K, n);
  for (int j = 0; j < n; ++j) {
    // pivot: minimal valuation among rows >= j
    int piv = -1;
    long best = LONG_MAX;
    for (int i = j; i < n; ++i) {
      long v = valuation(d, t.at(i, j));
      if (v < best) { best = v; piv = i; }
    }
    if (piv < 0 || best == LONG_MAX)
      fail(RingError::Code::NotInGroup, "iwasawa: singular column");
    if (piv != j) {
      // signed swap keeps det 1: row_j <- row_piv, row_piv <- -row_j
      for (int c = 0; c < n; ++c) {
        RingElement tmp = t.at(j, c);
        t.at(j, c) = t.at(piv, c);
        t.at(piv, c) = neg(tmp);
      }
      // y *= inverse swap
      for (int r = 0; r < n; ++r) {
        RingElement tmp = y.at(r, j);
        y.at(r, j) = y.at(r, piv);
        y.at(r, piv) = neg(tmp);
      }
    }
    for (int i = j + 1; i < n; ++i) {
      if (is_zero(t.at(i, j))) continue;
      RingElement f = div_exact(t.at(i, j), t.at(j, j));
      if (valuation(d, f) < 0) fail(RingError::Code::Internal, "iwasawa: pivot not minimal");
      // row_i -= f * row_j; y *= (I + f E_ij)
      for (int c = 0; c < n; ++c) t.at(i, c) = sub(t.at(i, c), mul(f, t.at(j, c)));
      for (int r = 0; r < n; ++r) y.at(r, j) = add(y.at(r, j), mul(f, y.at(r, i)));
    }
  }
  if (!mat_equal(x, mat_mul(y, t))) fail(RingError::Code::Internal, "iwasawa: identity violated");
  for (const auto& e : y.a)
    if (!try_convert(e, d.O)) fail(RingError::Code::Internal, "iwasawa: y entry not in O");
  return {y, t};
}

namespace detail {

// relative root index whose single-entry fiber realizes matrix position (r, c)
inline int letter_at(const RelGroupContext& ctx, int r, int c) {
  for (int a = 0; a < ctx.rel_count(); ++a) {
    const auto& fib = ctx.fibers[static_cast<size_t>(a)][0];
    if (fib.size() != 1) continue;
    const auto& real = ctx.G.realization[static_cast<size_t>(fib[0])];
    if (real.size() == 1 && real[0].r == r && real[0].c == c && real[0].s == 1) return a;
  }
  return -1;
}

inline void push_letter(const RelGroupContext& ctx, RelWord& w, int a, const RingElement& u) {
  if (!is_zero(u)) w.push_back({a, {u}});
}

// h_delta(u) = w_delta(u) w_delta(1)^{-1} as a 6-letter word on positions
// (r, c) and (c, r); realizes diag(u, u^{-1}) in the rank-1 subgroup
inline void push_h_word(const RelGroupContext& ctx, RelWord& w, int r, int c,
                        const RingElement& u) {
  const RingPtr& K = u.ring;
  if (equal(u, one(K))) return;
  int up = letter_at(ctx, r, c), dn = letter_at(ctx, c, r);
  if (up < 0 || dn < 0)
    fail(RingError::Code::UnsupportedType, "field word: missing rank-1 letters");
  RingElement ui = div_exact(one(K), u);
  // w(u) = x_+(u) x_-(-1/u) x_+(u);  w(1)^{-1} = x_+(-1) x_-(1) x_+(-1)
  push_letter(ctx, w, up, u);
  push_letter(ctx, w, dn, neg(ui));
  push_letter(ctx, w, up, u);
  push_letter(ctx, w, up, neg(one(K)));
  push_letter(ctx, w, dn, one(K));
  push_letter(ctx, w, up, neg(one(K)));
}

}  // namespace detail

// word w over the field K with ep_eval(w) = g, by transvection elimination;
// needs a context whose singleton fibers cover all off-diagonal positions
// (SL_n with the Borel) — verified by the final exact assertion
inline RelWord field_elementary_word(const RelGroupContext& ctx, const Matrix& g) {
  if (!membership(ctx.G, g)) fail(RingError::Code::NotInGroup, "field word: not in the group");
  const RingPtr& K = g.ring;
  int n = g.n;
  Matrix t = g;
  RelWord w;  // letters whose product (in order) equals g
  auto apply_left = [&](int i, int j, const RingElement& c) {
    // t <- (I + c E_ij) t; record the inverse letter
    for (int col = 0; col < n; ++col) t.at(i, col) = add(t.at(i, col), mul(c, t.at(j, col)));
    int a = detail::letter_at(ctx, i, j);
    if (a < 0) fail(RingError::Code::UnsupportedType, "field word: missing transvection letter");
    detail::push_letter(ctx, w, a, neg(c));
  };
  for (int j = 0; j < n; ++j) {
    if (is_zero(t.at(j, j))) {
      int src = -1;
      for (int i = j + 1; i < n; ++i)
        if (!is_zero(t.at(i, j))) { src = i; break; }
      if (src < 0) fail(RingError::Code::NotInGroup, "field word: singular matrix");
      apply_left(j, src, one(K));
    }
    for (int i = j + 1; i < n; ++i)
      if (!is_zero(t.at(i, j))) apply_left(i, j, neg(div_exact(t.at(i, j), t.at(j, j))));
  }
  for (int j = n - 1; j >= 1; --j)
    for (int i = j - 1; i >= 0; --i)
      if (!is_zero(t.at(i, j))) apply_left(i, j, neg(div_exact(t.at(i, j), t.at(j, j))));
  // diagonal remainder diag(d_0, ..., d_{n-1}), det 1: chain of h-words
  // diag(d) = prod_i h_{i,i+1}(u_i) with u_i = d_0 ... d_i
  RingElement u = one(K);
  RelWord diag;
  for (int i = 0; i < n - 1; ++i) {
    u = mul(u, t.at(i, i));
    detail::push_h_word(ctx, diag, i, i + 1, u);
  }
  w.insert(w.end(), diag.begin(), diag.end());
  if (!mat_equal(ep_eval(ctx, w, K), g))
    fail(RingError::Code::Internal, "field word: product check failed");
  return w;
}

// x = y * ep_eval(z) with y in G(O)
inline std::pair<Matrix, RelWord> decompose_GK(const DvrContext& d, const RelGroupContext& ctx,
                                               const Matrix& x) {
  if (mat_try_convert(x, d.O)) return {x, {}};
  auto [y, t] = iwasawa_decompose(d, ctx.G, x);
  RelWord z = field_elementary_word(ctx, t);
  if (!mat_equal(x, mat_mul(y, ep_eval(ctx, z, x.ring))))
    fail(RingError::Code::Internal, "decompose_GK: identity violated");
  return {y, z};
}

}  // namespace relchev

// Relative root subschemes: word evaluation, coordinate extraction, and the
// machine-derived q / N / phi tables checked against hand multiplication.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "relchev/rel_subschemes.hpp"
#include "relchev/sampling.hpp"
#include "relchev/selftest.hpp"

using namespace relchev;

namespace {

int positive_simple(const RelGroupContext& ctx, int k) {
  // k-th coordinate vector among the positive relative roots
  for (int a = 0; a < ctx.rel_count(); ++a) {
    const IVec& v = ctx.rel_root(a);
    if (ctx.rel_height(a) != 1) continue;
    if (v[static_cast<size_t>(k)] == 1) return a;
  }
  return -1;
}

}  // namespace

TEST_CASE("X_alpha: single-root fiber in the SL_3 Borel") {
  const RelGroupContext& ctx = standard_contexts().sl3;
  RingPtr Q = rationals();
  int a1 = positive_simple(ctx, 0);
  REQUIRE(a1 >= 0);
  REQUIRE(ctx.fiber_rank(a1) == 1);
  RingElement a = make_rat(Rat(9, 4));
  Matrix m = X_alpha(ctx, a1, {a}, Q);
  Matrix expect = identity_matrix(Q, 3);
  expect.at(0, 1) = a;
  CHECK(mat_equal(m, expect));
}

TEST_CASE("X_alpha: SL_4 (2,2)-block fills the upper-right block") {
  const RelGroupContext& ctx = standard_contexts().sl4_22;
  RingPtr Q = rationals();
  int pos = -1;
  for (int a = 0; a < ctx.rel_count(); ++a)
    if (ctx.rel_height(a) > 0) pos = a;
  REQUIRE(pos >= 0);
  REQUIRE(ctx.fiber_rank(pos) == 4);
  std::vector<RingElement> u;
  for (int i = 0; i < 4; ++i) u.push_back(make_rat(Rat(i + 1, 3)));
  Matrix m = X_alpha(ctx, pos, u, Q);
  // oracle: multiply the four commuting root elements directly
  Matrix expect = identity_matrix(Q, 4);
  const auto& fib = ctx.fibers[static_cast<size_t>(pos)][0];
  for (size_t i = 0; i < fib.size(); ++i)
    expect = mat_mul(expect, root_element(ctx.G, fib[i], u[i]));
  CHECK(mat_equal(m, expect));
  // the block really is the upper-right 2x2, one coefficient per cell
  int filled = 0;
  for (int r = 0; r < 2; ++r)
    for (int c = 2; c < 4; ++c)
      if (!is_zero(m.at(r, c))) ++filled;
  CHECK(filled == 4);
  for (int r = 2; r < 4; ++r)
    for (int c = 0; c < 2; ++c) CHECK(is_zero(m.at(r, c)));
}

TEST_CASE("X_alpha: Sp_4 short relative root, hand-multiplied oracle") {
  const RelGroupContext& ctx = standard_contexts().sp4;
  RingPtr Q = rationals();
  int sh = -1;
  for (int a = 0; a < ctx.rel_count(); ++a)
    if (ctx.rel_height(a) == 1) sh = a;
  REQUIRE(sh >= 0);
  REQUIRE(ctx.fiber_rank(sh) == 2);
  RingElement a = make_rat(Rat(2)), b = make_rat(Rat(5));
  Matrix m = X_alpha(ctx, sh, {a, b}, Q);
  // oracle: (I + a e1)(I + b e2) expanded entrywise by plain loops
  const auto& fib = ctx.fibers[static_cast<size_t>(sh)][0];
  Matrix m1 = identity_matrix(Q, 4), m2 = identity_matrix(Q, 4);
  for (const RootPos& p : ctx.G.realization[static_cast<size_t>(fib[0])])
    m1.at(p.r, p.c) = add(m1.at(p.r, p.c), p.s == 1 ? a : neg(a));
  for (const RootPos& p : ctx.G.realization[static_cast<size_t>(fib[1])])
    m2.at(p.r, p.c) = add(m2.at(p.r, p.c), p.s == 1 ? b : neg(b));
  Matrix expect = zero_matrix(Q, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      for (int k = 0; k < 4; ++k)
        expect.at(r, c) = add(expect.at(r, c), mul(m1.at(r, k), m2.at(k, c)));
  CHECK(mat_equal(m, expect));
  CHECK(membership(ctx.G, m));
}

TEST_CASE("ep_eval: words") {
  const RelGroupContext& ctx = standard_contexts().sl2;
  RingPtr Q = rationals();
  CHECK(mat_is_identity(ep_eval(ctx, {}, Q)));
  int up = -1, dn = -1;
  for (int a = 0; a < ctx.rel_count(); ++a) (ctx.rel_height(a) > 0 ? up : dn) = a;
  RelWord weyl{{up, {one(Q)}}, {dn, {neg(one(Q))}}, {up, {one(Q)}}};
  Matrix w = ep_eval(ctx, weyl, Q);
  Matrix expect = zero_matrix(Q, 2);
  expect.at(0, 1) = one(Q);
  expect.at(1, 0) = neg(one(Q));
  CHECK(mat_equal(w, expect));
}

TEST_CASE("extract_coordinates: SL_3 upper unipotent, closed-form oracle") {
  const RelGroupContext& ctx = standard_contexts().sl3;
  RingPtr Q = rationals();
  RingElement a = make_rat(Rat(3, 2)), b = make_rat(Rat(-5)), c = make_rat(Rat(7, 4));
  Matrix g = identity_matrix(Q, 3);
  g.at(0, 1) = a;
  g.at(1, 2) = b;
  g.at(0, 2) = c;
  int a1 = positive_simple(ctx, 0), a2 = positive_simple(ctx, 1);
  int a12 = ctx.datum.rel_index_of({1, 1});
  RelWord w = extract_coordinates(ctx, {a1, a2, a12}, g);
  REQUIRE(w.size() == 3);
  CHECK(mat_equal(ep_eval(ctx, w, Q), g));
  CHECK(w[2].alpha == a12);
  // in the (a1, a2, a1+a2) order the corner coordinate is c - ab:
  // oracle by direct multiplication
  RelWord ordered{{a1, {a}}, {a2, {b}}, {a12, {sub(c, mul(a, b))}}};
  CHECK(mat_equal(ep_eval(ctx, ordered, Q), g));
  // identity peels to all-zero coordinates
  RelWord z = extract_coordinates(ctx, {a1, a2, a12}, identity_matrix(Q, 3));
  for (const auto& letter : z)
    for (const auto& u : letter.u) CHECK(is_zero(u));
  // single factor round-trips
  RelWord s = extract_coordinates(ctx, {a1}, X_alpha(ctx, a1, {a}, Q));
  REQUIRE(s.size() == 1);
  CHECK(equal(s[0].u[0], a));
}

TEST_CASE("extract_coordinates: 120 random round-trips over all contexts") {
  Sampler s(31);
  const auto& C = standard_contexts();
  RingPtr Q = rationals();
  int count = 0;
  for (const RelGroupContext* ctxp : {&C.sl2, &C.sl3, &C.sl4_22, &C.sp4}) {
    const RelGroupContext& ctx = *ctxp;
    std::vector<int> psi;
    for (int a = 0; a < ctx.rel_count(); ++a)
      if (ctx.rel_height(a) > 0) psi.push_back(a);
    for (int t = 0; t < 30; ++t) {
      RelWord in;
      for (int a : psi) {
        std::vector<RingElement> u;
        for (int j = 0; j < ctx.fiber_rank(a); ++j) u.push_back(s.rational_elem());
        in.push_back({a, u});
      }
      RelWord out = extract_coordinates(ctx, psi, ep_eval(ctx, in, Q));
      REQUIRE(out.size() == in.size());
      for (size_t i = 0; i < in.size(); ++i) {
        CHECK(out[i].alpha == in[i].alpha);
        for (size_t j = 0; j < in[i].u.size(); ++j) CHECK(equal(out[i].u[j], in[i].u[j]));
      }
      ++count;
    }
  }
  CHECK(count == 120);
}

TEST_CASE("derive_q: SL cases are empty, Sp_4 matches the structure constant") {
  const auto& C = standard_contexts();
  for (const RelGroupContext* ctxp : {&C.sl2, &C.sl3, &C.sl4_22}) {
    for (int a = 0; a < ctxp->rel_count(); ++a) CHECK(derive_q(*ctxp, a).empty());
  }
  const RelGroupContext& sp = C.sp4;
  int sh = -1;
  for (int a = 0; a < sp.rel_count(); ++a)
    if (sp.rel_height(a) == 1) sh = a;
  auto q = derive_q(sp, sh);
  REQUIRE(q.count(2) == 1);
  // oracle: X(v+w)^-1 X(v) X(w) at v=(0,1), w=(1,0) lands on the doubled root
  // (the fixed-order product makes the swapped basis pair the nonzero probe);
  // read its coefficient straight off the designated matrix entry
  RingPtr Q = rationals();
  std::vector<RingElement> v{zero(Q), one(Q)}, w{one(Q), zero(Q)}, vw{one(Q), one(Q)};
  Matrix rest = mat_mul(mat_inverse(X_alpha(sp, sh, vw, Q)),
                        mat_mul(X_alpha(sp, sh, v, Q), X_alpha(sp, sh, w, Q)));
  int dbl = sp.multiple_index(sh, 2);
  const RootPos& p = sp.G.realization[static_cast<size_t>(sp.fibers[static_cast<size_t>(dbl)][0][0])][0];
  RingElement expect = p.s == 1 ? rest.at(p.r, p.c) : neg(rest.at(p.r, p.c));
  std::vector<RingElement> args{zero(Q), one(Q), one(Q), zero(Q)};
  auto vals = evaluate(q.at(2), args, Q);
  REQUIRE(vals.size() == 1);
  CHECK(equal(vals[0], expect));
  CHECK(!is_zero(vals[0]));
  // q(v, 0) = 0
  std::vector<RingElement> args0{one(Q), one(Q), zero(Q), zero(Q)};
  for (const auto& x : evaluate(q.at(2), args0, Q)) CHECK(is_zero(x));
}

TEST_CASE("derive_N: SL_3 Borel gives N(u,v) = uv on the corner entry") {
  const RelGroupContext& ctx = standard_contexts().sl3;
  int a1 = positive_simple(ctx, 0), a2 = positive_simple(ctx, 1);
  auto N = derive_N(ctx, a1, a2);
  REQUIRE(N.size() == 1);
  REQUIRE(N.count({1, 1}) == 1);
  RingPtr Q = rationals();
  RingElement u = make_rat(Rat(2)), v = make_rat(Rat(3));
  auto vals = evaluate(N.at({1, 1}), {u, v}, Q);
  REQUIRE(vals.size() == 1);
  // oracle: [I + uE12, I + vE23] = I + uv E13 by direct multiplication
  Matrix xu = identity_matrix(Q, 3), xv = identity_matrix(Q, 3);
  xu.at(0, 1) = u;
  xv.at(1, 2) = v;
  Matrix comm = mat_mul(mat_mul(xu, xv), mat_mul(mat_inverse(xu), mat_inverse(xv)));
  CHECK(equal(vals[0], comm.at(0, 2)));
  CHECK(equal(vals[0], mul(u, v)));
}

TEST_CASE("derive_N: empty closed set and same-ray pairs") {
  const RelGroupContext& ctx = standard_contexts().sl4_22;
  int pos = -1, ne = -1;
  for (int a = 0; a < ctx.rel_count(); ++a) (ctx.rel_height(a) > 0 ? pos : ne) = a;
  // opposite rays are rejected
  CHECK_THROWS_AS(derive_N(ctx, pos, ne), RingError);
  // Sp_4: alpha and its double commute, table empty
  const RelGroupContext& sp = standard_contexts().sp4;
  int sh = -1;
  for (int a = 0; a < sp.rel_count(); ++a)
    if (sp.rel_height(a) == 1) sh = a;
  int dbl = sp.multiple_index(sh, 2);
  CHECK(derive_N(sp, sh, dbl).empty());
}

TEST_CASE("conj_phi: identity, block Levi action, torus scalar") {
  const RelGroupContext& ctx = standard_contexts().sl4_22;
  RingPtr Q = rationals();
  int pos = -1;
  for (int a = 0; a < ctx.rel_count(); ++a)
    if (ctx.rel_height(a) > 0) pos = a;
  // g = identity: phi^1 is the identity map
  auto phi_id = conj_phi(ctx, identity_matrix(Q, 4), pos);
  std::vector<RingElement> v{make_rat(Rat(1)), make_rat(Rat(2)), make_rat(Rat(3)), make_rat(Rat(4))};
  auto out = evaluate(phi_id.at(1), v, Q);
  for (size_t i = 0; i < v.size(); ++i) CHECK(equal(out[i], v[i]));
  CHECK(phi_id.count(2) == 0);
  // block-diagonal g = (A, B): phi^1(V) = A V B^{-1} on the 2x2 block
  Matrix g = identity_matrix(Q, 4);
  g.at(0, 1) = make_rat(Rat(1));            // A = [[1,1],[0,1]]
  g.at(2, 2) = make_rat(Rat(2));            // B = [[2,0],[0,1/2]]
  g.at(3, 3) = make_rat(Rat(1, 2));
  auto phi = conj_phi(ctx, g, pos);
  auto img = evaluate(phi.at(1), v, Q);
  // oracle: place v into the block via X_alpha, conjugate by hand, read back
  Matrix xa = X_alpha(ctx, pos, v, Q);
  Matrix conj = mat_mul(mat_mul(g, xa), mat_inverse(g));
  Matrix xb = X_alpha(ctx, pos, img, Q);
  CHECK(mat_equal(conj, xb));
  // the torus acts by the relative-root character
  const RelGroupContext& sl2 = standard_contexts().sl2;
  Matrix s = zero_matrix(Q, 2);
  s.at(0, 0) = make_rat(Rat(3));
  s.at(1, 1) = make_rat(Rat(1, 3));
  int up = -1;
  for (int a = 0; a < sl2.rel_count(); ++a)
    if (sl2.rel_height(a) > 0) up = a;
  auto tphi = conj_phi(sl2, s, up);
  auto tout = evaluate(tphi.at(1), {make_rat(Rat(5))}, Q);
  CHECK(equal(tout[0], make_rat(Rat(45))));  // u * 3^2
}

TEST_CASE("S-equivariance holds symbolically in every context") {
  const auto& C = standard_contexts();
  for (const RelGroupContext* ctxp : {&C.sl2, &C.sl3, &C.sl4_22, &C.sp4})
    for (int a = 0; a < ctxp->rel_count(); ++a) CHECK(check_s_equivariance(*ctxp, a));
}

TEST_CASE("make_context rejects degenerate parabolics") {
  CHECK_THROWS_AS(make_context(make_sl(3), {}), RingError);
}

// DVR decompositions: valuations, the pivoted triangularization, field
// elementary words, and G(K) = G(O) E_P(K).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "relchev/dvr.hpp"
#include "relchev/sampling.hpp"
#include "relchev/selftest.hpp"

using namespace relchev;

TEST_CASE("valuation at an integer prime") {
  DvrContext d = dvr_integers(2);
  CHECK(valuation(d, make_rat(Rat(8))) == 3);
  CHECK(valuation(d, make_rat(Rat(3, 4))) == -2);
  CHECK(valuation(d, make_rat(Rat(5))) == 0);
  CHECK(valuation(d, make_rat(Rat(0))) == LONG_MAX);
}

TEST_CASE("valuation at a polynomial prime") {
  RingPtr Qt = polynomials(rationals(), "t");
  RingElement tv = var_elem(Qt);
  DvrContext d = dvr_polynomials(tv);
  RingElement t2 = mul(tv, tv);
  CHECK(valuation(d, embed(t2, d.K)) == 2);
  CHECK(valuation(d, make_frac(d.K, one(Qt), tv)) == -1);
  CHECK(valuation(d, embed(add(tv, one(Qt)), d.K)) == 0);
}

TEST_CASE("iwasawa: triangular input needs no work") {
  DvrContext d = dvr_integers(2);
  GroupDescriptor g = make_sl(2);
  Matrix x = zero_matrix(d.K, 2);
  x.at(0, 0) = make_rat(Rat(1, 2));
  x.at(1, 1) = make_rat(Rat(2));
  auto [y, t] = iwasawa_decompose(d, g, x);
  CHECK(mat_is_identity(y));
  CHECK(mat_equal(t, x));
}

TEST_CASE("iwasawa: pivot swaps recorded in y") {
  DvrContext d = dvr_integers(2);
  GroupDescriptor g = make_sl(2);
  Matrix x = zero_matrix(d.K, 2);
  x.at(0, 1) = make_rat(Rat(1));
  x.at(1, 0) = make_rat(Rat(-1));
  auto [y, t] = iwasawa_decompose(d, g, x);
  CHECK(mat_equal(x, mat_mul(y, t)));
  for (const auto& e : y.a) CHECK(try_convert(e, d.O).has_value());
  // t is upper triangular
  CHECK(is_zero(t.at(1, 0)));
}

TEST_CASE("iwasawa: 100 random SL_3 samples, exact identity") {
  Sampler s(53);
  DvrContext d = dvr_integers(2);
  GroupDescriptor g = make_sl(3);
  for (int trial = 0; trial < 100; ++trial) {
    Matrix x = sample_sl(s, 3, d.K, 6, [&] { return sample_supported_rational(s, {2}, 3); });
    auto [y, t] = iwasawa_decompose(d, g, x);
    CHECK(mat_equal(x, mat_mul(y, t)));
    for (const auto& e : y.a) CHECK(try_convert(e, d.O).has_value());
    for (int i = 1; i < 3; ++i)
      for (int j = 0; j < i; ++j) CHECK(is_zero(t.at(i, j)));
  }
}

TEST_CASE("field_elementary_word: identity and a diagonal") {
  const RelGroupContext& ctx = standard_contexts().sl2;
  RingPtr Q = rationals();
  CHECK(field_elementary_word(ctx, identity_matrix(Q, 2)).empty());
  Matrix diag = zero_matrix(Q, 2);
  diag.at(0, 0) = make_rat(Rat(1, 2));
  diag.at(1, 1) = make_rat(Rat(2));
  RelWord w = field_elementary_word(ctx, diag);
  CHECK(!w.empty());
  CHECK(mat_equal(ep_eval(ctx, w, Q), diag));
}

TEST_CASE("field_elementary_word: random SL_3 elements") {
  Sampler s(59);
  const RelGroupContext& ctx = standard_contexts().sl3;
  RingPtr Q = rationals();
  for (int trial = 0; trial < 40; ++trial) {
    Matrix g = sample_sl(s, 3, Q, 6, [&] { return s.rational_elem(); });
    RelWord w = field_elementary_word(ctx, g);
    CHECK(mat_equal(ep_eval(ctx, w, Q), g));
  }
}

TEST_CASE("decompose_GK: integral input and an elementary one") {
  DvrContext d = dvr_integers(2);
  const RelGroupContext& ctx = standard_contexts().sl2;
  Matrix g0 = identity_matrix(d.K, 2);
  g0.at(0, 1) = make_rat(Rat(3));
  auto [y0, z0] = decompose_GK(d, ctx, g0);
  CHECK(mat_equal(y0, g0));
  CHECK(z0.empty());
  Matrix g1 = identity_matrix(d.K, 2);
  g1.at(0, 1) = make_rat(Rat(1, 2));
  auto [y1, z1] = decompose_GK(d, ctx, g1);
  CHECK(mat_is_identity(y1));
  REQUIRE(z1.size() == 1);
  CHECK(equal(z1[0].u[0], make_rat(Rat(1, 2))));
}

TEST_CASE("decompose_GK: 100 random SL_3(Q) samples with 2-power denominators") {
  Sampler s(61);
  DvrContext d = dvr_integers(2);
  const RelGroupContext& ctx = standard_contexts().sl3;
  RingPtr Q = rationals();
  for (int trial = 0; trial < 100; ++trial) {
    Matrix x = sample_sl(s, 3, Q, 6, [&] { return sample_supported_rational(s, {2}, 3); });
    auto [y, z] = decompose_GK(d, ctx, x);
    CHECK(mat_equal(x, mat_mul(y, ep_eval(ctx, z, Q))));
    for (const auto& e : y.a)
      if (!is_zero(e)) CHECK(valuation(d, e) >= 0);
  }
}

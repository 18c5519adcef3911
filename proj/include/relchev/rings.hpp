// Exact commutative ring arithmetic: integers, rationals, polynomial and
// Laurent rings, one-element localizations, residue rings, fraction fields,
// and rings of fractions with constrained denominator support.
//
// All elements are kept in a canonical form so that structural equality of
// payloads coincides with equality in the ring. Division is never total:
// exact division either succeeds or fails loudly.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace relchev {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

class RingError : public std::runtime_error {
public:
  enum class Code {
    NoEmbedding,
    NotSurjective,
    RingMismatch,
    DivisionError,
    NotARoot,
    NotARelativeRoot,
    JNotInvariant,
    RankMismatch,
    NotInUnipotent,
    NotInLevi,
    NotInGroup,
    OppositeRay,
    NonProperParabolic,
    UnsupportedType,
    ParseError,
    Internal
  };
  RingError(Code c, const std::string& msg) : std::runtime_error(msg), code(c) {}
  Code code;
};

[[noreturn]] inline void fail(RingError::Code c, const std::string& msg) {
  throw RingError(c, msg);
}

enum class RingKind {
  Integers,
  Rationals,
  Polynomials,
  Laurent,
  Localization,
  Residue,
  FractionField,
  RestrictedFractions
};

struct Ring;
using RingPtr = std::shared_ptr<const Ring>;

struct RingElement;

struct PolyPayload {
  std::vector<RingElement> coeffs;  // dense, index = degree, trailing zeros trimmed
};
struct LaurentPayload {
  int shift = 0;                    // value = sum coeffs[i] * X^(shift+i)
  std::vector<RingElement> coeffs;  // trimmed at both ends; zero => empty, shift 0
};
struct LocPayload {
  std::vector<RingElement> num;  // exactly one element of the base ring
  unsigned hexp = 0;             // value = num / h^hexp, hexp minimal
};
struct FracPayload {
  std::vector<RingElement> nd;  // {num, den} in the base, reduced, den normalized
};
struct ResiduePayload {
  std::vector<RingElement> rep;  // canonical representative in the base
};

using Payload =
    std::variant<Int, Rat, PolyPayload, LaurentPayload, LocPayload, FracPayload, ResiduePayload>;

struct RingElement {
  RingPtr ring;
  Payload v;
};

struct Ring {
  RingKind kind;
  RingPtr base;                       // Polynomials/Laurent/Localization/Residue/FractionField/Restricted
  std::string var;                    // Polynomials/Laurent
  std::vector<RingElement> special;   // Localization: {h}; Residue: {modulus}
  std::vector<RingElement> primes;    // RestrictedFractions
  bool allowed_mode = false;          // RestrictedFractions: true = support subset of primes
};

// ---------------------------------------------------------------------------
// ring constructors and identity

inline bool same_ring(const RingPtr& a, const RingPtr& b);
inline bool equal(const RingElement& x, const RingElement& y);
inline bool is_zero(const RingElement& x);
inline RingElement zero(const RingPtr& r);
inline RingElement one(const RingPtr& r);
inline RingElement add(const RingElement& x, const RingElement& y);
inline RingElement mul(const RingElement& x, const RingElement& y);
inline RingElement neg(const RingElement& x);
inline std::optional<RingElement> try_div(const RingElement& x, const RingElement& y);
inline std::string to_string(const RingElement& x);

inline RingPtr integers() {
  static RingPtr z = std::make_shared<Ring>(Ring{RingKind::Integers, nullptr, "", {}, {}, false});
  return z;
}

inline RingPtr rationals() {
  static RingPtr q = std::make_shared<Ring>(Ring{RingKind::Rationals, nullptr, "", {}, {}, false});
  return q;
}

inline RingPtr polynomials(RingPtr base, std::string var) {
  return std::make_shared<Ring>(Ring{RingKind::Polynomials, std::move(base), std::move(var), {}, {}, false});
}

inline RingPtr laurent_polynomials(RingPtr base, std::string var) {
  return std::make_shared<Ring>(Ring{RingKind::Laurent, std::move(base), std::move(var), {}, {}, false});
}

inline RingPtr localization(RingPtr base, RingElement h) {
  if (!same_ring(h.ring, base)) fail(RingError::Code::RingMismatch, "localization: h not in base");
  if (is_zero(h)) fail(RingError::Code::DivisionError, "localization: h must be nonzero");
  return std::make_shared<Ring>(
      Ring{RingKind::Localization, std::move(base), "", {std::move(h)}, {}, false});
}

inline RingPtr residue_ring(RingPtr base, RingElement m) {
  if (!same_ring(m.ring, base)) fail(RingError::Code::RingMismatch, "residue: modulus not in base");
  if (is_zero(m)) fail(RingError::Code::DivisionError, "residue: modulus must be nonzero");
  return std::make_shared<Ring>(
      Ring{RingKind::Residue, std::move(base), "", {std::move(m)}, {}, false});
}

inline RingPtr fraction_field(RingPtr base) {
  return std::make_shared<Ring>(Ring{RingKind::FractionField, std::move(base), "", {}, {}, false});
}

// allowed=true: denominator support contained in `primes` (e.g. Z[1/3]).
// allowed=false: denominator coprime to every prime in `primes` (e.g. Z_(2,3)).
inline RingPtr restricted_fractions(RingPtr base, std::vector<RingElement> primes, bool allowed) {
  for (const auto& p : primes)
    if (!same_ring(p.ring, base)) fail(RingError::Code::RingMismatch, "restricted: prime not in base");
  return std::make_shared<Ring>(
      Ring{RingKind::RestrictedFractions, std::move(base), "", {}, std::move(primes), allowed});
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case RingKind::Integers:
    case RingKind::Rationals:
      return true;
    case RingKind::Polynomials:
    case RingKind::Laurent:
      return a->var == b->var && same_ring(a->base, b->base);
    case RingKind::Localization:
    case RingKind::Residue:
      return same_ring(a->base, b->base) && equal(a->special[0], b->special[0]);
    case RingKind::FractionField:
      return same_ring(a->base, b->base);
    case RingKind::RestrictedFractions: {
      if (!same_ring(a->base, b->base)) return false;
      if (a->allowed_mode != b->allowed_mode) return false;
      if (a->primes.size() != b->primes.size()) return false;
      for (size_t i = 0; i < a->primes.size(); ++i)
        if (!equal(a->primes[i], b->primes[i])) return false;
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// canonical constructors

inline RingElement make_int(const Int& n) { return RingElement{integers(), n}; }
inline RingElement make_rat(const Rat& q) { return RingElement{rationals(), q}; }

inline RingElement make_poly(const RingPtr& r, std::vector<RingElement> cs) {
  while (!cs.empty() && is_zero(cs.back())) cs.pop_back();
  return RingElement{r, PolyPayload{std::move(cs)}};
}

inline RingElement make_laurent(const RingPtr& r, int shift, std::vector<RingElement> cs) {
  while (!cs.empty() && is_zero(cs.back())) cs.pop_back();
  size_t lead = 0;
  while (lead < cs.size() && is_zero(cs[lead])) ++lead;
  if (lead > 0) {
    cs.erase(cs.begin(), cs.begin() + static_cast<long>(lead));
    shift += static_cast<int>(lead);
  }
  if (cs.empty()) shift = 0;
  return RingElement{r, LaurentPayload{shift, std::move(cs)}};
}

inline RingElement make_loc(const RingPtr& r, RingElement num, unsigned hexp) {
  const RingElement& h = r->special[0];
  if (is_zero(num)) return RingElement{r, LocPayload{{zero(r->base)}, 0}};
  while (hexp > 0) {
    auto d = try_div(num, h);
    if (!d) break;
    num = *d;
    --hexp;
  }
  return RingElement{r, LocPayload{{std::move(num)}, hexp}};
}

namespace detail {

inline Int int_gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

// extended gcd: returns (g, s) with s*a == g (mod m), g = gcd(a, m)
inline std::pair<Int, Int> ext_gcd_mod(const Int& a, const Int& m) {
  Int r0 = m, r1 = a % m;
  if (r1 < 0) r1 += m;
  Int s0 = 0, s1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int s2 = s0 - q * s1;
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
  }
  Int s = s0 % m;
  if (s < 0) s += m;
  return {r0, s};
}

inline Int mod_inverse(const Int& a, const Int& m) {
  auto [g, s] = ext_gcd_mod(a, m);
  if (g != 1) fail(RingError::Code::NotSurjective, "mod_inverse: element not invertible");
  return s;
}

bool is_unit_in_base(const RingElement& x);

}  // namespace detail

// reduced fraction over base Z or polynomial-over-field; den normalized
// (positive for Z, monic for polynomials)
inline RingElement poly_divmod_quot(const RingElement& a, const RingElement& b,
                                    RingElement* rem_out);
inline RingElement make_frac(const RingPtr& r, RingElement num, RingElement den);

inline RingElement zero(const RingPtr& r) {
  switch (r->kind) {
    case RingKind::Integers: return RingElement{r, Int(0)};
    case RingKind::Rationals: return RingElement{r, Rat(0)};
    case RingKind::Polynomials: return RingElement{r, PolyPayload{}};
    case RingKind::Laurent: return RingElement{r, LaurentPayload{}};
    case RingKind::Localization: return RingElement{r, LocPayload{{zero(r->base)}, 0}};
    case RingKind::Residue: return RingElement{r, ResiduePayload{{zero(r->base)}}};
    case RingKind::FractionField:
    case RingKind::RestrictedFractions:
      return RingElement{r, FracPayload{{zero(r->base), one(r->base)}}};
  }
  fail(RingError::Code::Internal, "zero: bad kind");
}

inline RingElement one(const RingPtr& r) {
  switch (r->kind) {
    case RingKind::Integers: return RingElement{r, Int(1)};
    case RingKind::Rationals: return RingElement{r, Rat(1)};
    case RingKind::Polynomials: return RingElement{r, PolyPayload{{one(r->base)}}};
    case RingKind::Laurent: return RingElement{r, LaurentPayload{0, {one(r->base)}}};
    case RingKind::Localization: return RingElement{r, LocPayload{{one(r->base)}, 0}};
    case RingKind::Residue: {
      RingElement o = one(r->base);
      // modulus could be a unit; reduce
      RingElement rem;
      if (r->base->kind == RingKind::Integers) {
        Int m = std::get<Int>(r->special[0].v);
        Int n = std::get<Int>(o.v) % boost::multiprecision::abs(m);
        return RingElement{r, ResiduePayload{{make_int(n)}}};
      }
      poly_divmod_quot(o, r->special[0], &rem);
      return RingElement{r, ResiduePayload{{rem}}};
    }
    case RingKind::FractionField:
    case RingKind::RestrictedFractions:
      return RingElement{r, FracPayload{{one(r->base), one(r->base)}}};
  }
  fail(RingError::Code::Internal, "one: bad kind");
}

inline bool is_zero(const RingElement& x) {
  switch (x.ring->kind) {
    case RingKind::Integers: return std::get<Int>(x.v) == 0;
    case RingKind::Rationals: return std::get<Rat>(x.v) == 0;
    case RingKind::Polynomials: return std::get<PolyPayload>(x.v).coeffs.empty();
    case RingKind::Laurent: return std::get<LaurentPayload>(x.v).coeffs.empty();
    case RingKind::Localization: return is_zero(std::get<LocPayload>(x.v).num[0]);
    case RingKind::Residue: return is_zero(std::get<ResiduePayload>(x.v).rep[0]);
    case RingKind::FractionField:
    case RingKind::RestrictedFractions:
      return is_zero(std::get<FracPayload>(x.v).nd[0]);
  }
  fail(RingError::Code::Internal, "is_zero: bad kind");
}

inline bool equal(const RingElement& x, const RingElement& y) {
  if (!same_ring(x.ring, y.ring)) return false;
  switch (x.ring->kind) {
    case RingKind::Integers: return std::get<Int>(x.v) == std::get<Int>(y.v);
    case RingKind::Rationals: return std::get<Rat>(x.v) == std::get<Rat>(y.v);
    case RingKind::Polynomials: {
      const auto& a = std::get<PolyPayload>(x.v).coeffs;
      const auto& b = std::get<PolyPayload>(y.v).coeffs;
      if (a.size() != b.size()) return false;
      for (size_t i = 0; i < a.size(); ++i)
        if (!equal(a[i], b[i])) return false;
      return true;
    }
    case RingKind::Laurent: {
      const auto& a = std::get<LaurentPayload>(x.v);
      const auto& b = std::get<LaurentPayload>(y.v);
      if (a.shift != b.shift || a.coeffs.size() != b.coeffs.size()) return false;
      for (size_t i = 0; i < a.coeffs.size(); ++i)
        if (!equal(a.coeffs[i], b.coeffs[i])) return false;
      return true;
    }
    case RingKind::Localization: {
      const auto& a = std::get<LocPayload>(x.v);
      const auto& b = std::get<LocPayload>(y.v);
      return a.hexp == b.hexp && equal(a.num[0], b.num[0]);
    }
    case RingKind::Residue:
      return equal(std::get<ResiduePayload>(x.v).rep[0], std::get<ResiduePayload>(y.v).rep[0]);
    case RingKind::FractionField:
    case RingKind::RestrictedFractions: {
      const auto& a = std::get<FracPayload>(x.v).nd;
      const auto& b = std::get<FracPayload>(y.v).nd;
      return equal(a[0], b[0]) && equal(a[1], b[1]);
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// polynomial helpers (generic over base)

namespace detail {

inline std::vector<RingElement> vec_add(const RingPtr& base, const std::vector<RingElement>& a,
                                        const std::vector<RingElement>& b) {
  std::vector<RingElement> out;
  size_t n = std::max(a.size(), b.size());
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    if (i < a.size() && i < b.size()) out.push_back(add(a[i], b[i]));
    else if (i < a.size()) out.push_back(a[i]);
    else out.push_back(b[i]);
  }
  return out;
}

inline std::vector<RingElement> vec_mul(const RingPtr& base, const std::vector<RingElement>& a,
                                        const std::vector<RingElement>& b) {
  if (a.empty() || b.empty()) return {};
  if (base->kind == RingKind::Rationals) {
    // clear denominators and convolve over Z: one gcd per output coefficient
    // instead of one per product
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    Int da = 1, db = 1;
    for (const auto& c : a) da = lcm(da, Int(denominator(std::get<Rat>(c.v))));
    for (const auto& c : b) db = lcm(db, Int(denominator(std::get<Rat>(c.v))));
    std::vector<Int> A(a.size()), B(b.size());
    for (size_t i = 0; i < a.size(); ++i) {
      const Rat& q = std::get<Rat>(a[i].v);
      A[i] = Int(numerator(q)) * (da / Int(denominator(q)));
    }
    for (size_t j = 0; j < b.size(); ++j) {
      const Rat& q = std::get<Rat>(b[j].v);
      B[j] = Int(numerator(q)) * (db / Int(denominator(q)));
    }
    std::vector<Int> C(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < A.size(); ++i) {
      if (A[i] == 0) continue;
      for (size_t j = 0; j < B.size(); ++j)
        if (B[j] != 0) C[i + j] += A[i] * B[j];
    }
    Int d = da * db;
    std::vector<RingElement> out;
    out.reserve(C.size());
    for (auto& c : C) out.push_back(make_rat(Rat(c, d)));
    return out;
  }
  std::vector<RingElement> out(a.size() + b.size() - 1, zero(base));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      out[i + j] = add(out[i + j], mul(a[i], b[j]));
  return out;
}

inline std::vector<RingElement> vec_neg(const std::vector<RingElement>& a) {
  std::vector<RingElement> out;
  out.reserve(a.size());
  for (const auto& c : a) out.push_back(neg(c));
  return out;
}

// long division of coefficient vectors; succeeds only when every leading
// coefficient division is exact. Returns quotient, sets rem.
inline std::optional<std::vector<RingElement>> vec_divmod(const RingPtr& base,
                                                          std::vector<RingElement> r,
                                                          const std::vector<RingElement>& b,
                                                          std::vector<RingElement>* rem) {
  if (b.empty()) return std::nullopt;
  if (base->kind == RingKind::Rationals) {
    // linear divisor: synthetic division at the root, one pass, no divides
    if (b.size() == 2 && r.size() >= 2) {
      const Rat& d0 = std::get<Rat>(b[0].v);
      const Rat& d1 = std::get<Rat>(b[1].v);
      Rat root = -d0 / d1;
      std::vector<Rat> q(r.size() - 1);
      Rat acc = std::get<Rat>(r.back().v);
      bool scale = (d1 != 1);
      for (size_t i = r.size() - 1; i-- > 0;) {
        q[i] = scale ? Rat(acc / d1) : acc;
        if (root == 0) acc = std::get<Rat>(r[i].v);
        else acc = std::get<Rat>(r[i].v) + root * acc;
      }
      std::vector<RingElement> qe;
      qe.reserve(q.size());
      for (auto& c : q) qe.push_back(make_rat(c));
      if (rem) {
        rem->clear();
        if (acc != 0) rem->push_back(make_rat(acc));
      }
      return qe;
    }
    // raw long division over Q, skipping element wrappers
    std::vector<Rat> R(r.size()), D(b.size());
    for (size_t i = 0; i < r.size(); ++i) R[i] = std::get<Rat>(r[i].v);
    for (size_t i = 0; i < b.size(); ++i) D[i] = std::get<Rat>(b[i].v);
    std::vector<Rat> Q;
    if (R.size() >= D.size()) Q.assign(R.size() - D.size() + 1, Rat(0));
    while (R.size() >= D.size()) {
      Rat c = R.back() / D.back();
      size_t off = R.size() - D.size();
      Q[off] = c;
      for (size_t i = 0; i + 1 < D.size(); ++i) R[off + i] -= c * D[i];
      R.pop_back();
      while (!R.empty() && R.back() == 0) R.pop_back();
    }
    std::vector<RingElement> qe, re;
    qe.reserve(Q.size());
    re.reserve(R.size());
    for (auto& c : Q) qe.push_back(make_rat(c));
    for (auto& c : R) re.push_back(make_rat(c));
    if (rem) *rem = re;
    return qe;
  }
  std::vector<RingElement> q;
  if (r.size() >= b.size()) q.assign(r.size() - b.size() + 1, zero(base));
  while (r.size() >= b.size()) {
    auto c = try_div(r.back(), b.back());
    if (!c) return std::nullopt;
    size_t off = r.size() - b.size();
    q[off] = *c;
    for (size_t i = 0; i < b.size(); ++i)
      r[off + i] = add(r[off + i], neg(mul(*c, b[i])));
    while (!r.empty() && is_zero(r.back())) r.pop_back();
    if (!r.empty() && r.size() >= b.size() && is_zero(r.back()))
      break;  // unreachable; defensive trim above handles it
  }
  if (rem) *rem = r;
  return q;
}

}  // namespace detail

// quotient of polynomial division (field coefficients expected); remainder in rem_out
inline RingElement poly_divmod_quot(const RingElement& a, const RingElement& b,
                                    RingElement* rem_out) {
  const RingPtr& r = a.ring;
  if (r->kind != RingKind::Polynomials || !same_ring(r, b.ring))
    fail(RingError::Code::RingMismatch, "poly_divmod: not a polynomial pair");
  std::vector<RingElement> rem;
  auto q = detail::vec_divmod(r->base, std::get<PolyPayload>(a.v).coeffs,
                              std::get<PolyPayload>(b.v).coeffs, &rem);
  if (!q) fail(RingError::Code::DivisionError, "poly_divmod: leading coefficient not invertible");
  if (rem_out) *rem_out = make_poly(r, rem);
  return make_poly(r, *q);
}

// ---------------------------------------------------------------------------
// arithmetic

inline RingElement make_frac(const RingPtr& r, RingElement num, RingElement den);

inline RingElement add(const RingElement& x, const RingElement& y) {
  if (!same_ring(x.ring, y.ring)) fail(RingError::Code::RingMismatch, "add: ring mismatch");
  const RingPtr& r = x.ring;
  switch (r->kind) {
    case RingKind::Integers: return RingElement{r, Int(std::get<Int>(x.v) + std::get<Int>(y.v))};
    case RingKind::Rationals: return RingElement{r, Rat(std::get<Rat>(x.v) + std::get<Rat>(y.v))};
    case RingKind::Polynomials:
      return make_poly(r, detail::vec_add(r->base, std::get<PolyPayload>(x.v).coeffs,
                                          std::get<PolyPayload>(y.v).coeffs));
    case RingKind::Laurent: {
      const auto& a = std::get<LaurentPayload>(x.v);
      const auto& b = std::get<LaurentPayload>(y.v);
      if (a.coeffs.empty()) return y;
      if (b.coeffs.empty()) return x;
      int shift = std::min(a.shift, b.shift);
      std::vector<RingElement> av(static_cast<size_t>(a.shift - shift), zero(r->base));
      av.insert(av.end(), a.coeffs.begin(), a.coeffs.end());
      std::vector<RingElement> bv(static_cast<size_t>(b.shift - shift), zero(r->base));
      bv.insert(bv.end(), b.coeffs.begin(), b.coeffs.end());
      return make_laurent(r, shift, detail::vec_add(r->base, av, bv));
    }
    case RingKind::Localization: {
      const auto& a = std::get<LocPayload>(x.v);
      const auto& b = std::get<LocPayload>(y.v);
      const RingElement& h = r->special[0];
      unsigned e = std::max(a.hexp, b.hexp);
      RingElement na = a.num[0], nb = b.num[0];
      for (unsigned i = a.hexp; i < e; ++i) na = mul(na, h);
      for (unsigned i = b.hexp; i < e; ++i) nb = mul(nb, h);
      return make_loc(r, add(na, nb), e);
    }
    case RingKind::Residue: {
      RingElement s = add(std::get<ResiduePayload>(x.v).rep[0], std::get<ResiduePayload>(y.v).rep[0]);
      // reduce
      if (r->base->kind == RingKind::Integers) {
        Int m = boost::multiprecision::abs(std::get<Int>(r->special[0].v));
        Int n = std::get<Int>(s.v) % m;
        if (n < 0) n += m;
        return RingElement{r, ResiduePayload{{make_int(n)}}};
      }
      RingElement rem;
      poly_divmod_quot(s, r->special[0], &rem);
      return RingElement{r, ResiduePayload{{rem}}};
    }
    case RingKind::FractionField:
    case RingKind::RestrictedFractions: {
      const auto& a = std::get<FracPayload>(x.v).nd;
      const auto& b = std::get<FracPayload>(y.v).nd;
      return make_frac(r, add(mul(a[0], b[1]), mul(b[0], a[1])), mul(a[1], b[1]));
    }
  }
  fail(RingError::Code::Internal, "add: bad kind");
}

inline RingElement neg(const RingElement& x) {
  const RingPtr& r = x.ring;
  switch (r->kind) {
    case RingKind::Integers: return RingElement{r, Int(-std::get<Int>(x.v))};
    case RingKind::Rationals: return RingElement{r, Rat(-std::get<Rat>(x.v))};
    case RingKind::Polynomials:
      return RingElement{r, PolyPayload{detail::vec_neg(std::get<PolyPayload>(x.v).coeffs)}};
    case RingKind::Laurent: {
      const auto& a = std::get<LaurentPayload>(x.v);
      return RingElement{r, LaurentPayload{a.shift, detail::vec_neg(a.coeffs)}};
    }
    case RingKind::Localization: {
      const auto& a = std::get<LocPayload>(x.v);
      return RingElement{r, LocPayload{{neg(a.num[0])}, a.hexp}};
    }
    case RingKind::Residue: {
      RingElement n = neg(std::get<ResiduePayload>(x.v).rep[0]);
      RingElement z = zero(r);
      return add(RingElement{r, ResiduePayload{{n}}}, z);  // re-reduce via add
    }
    case RingKind::FractionField:
    case RingKind::RestrictedFractions: {
      const auto& a = std::get<FracPayload>(x.v).nd;
      return RingElement{r, FracPayload{{neg(a[0]), a[1]}}};
    }
  }
  fail(RingError::Code::Internal, "neg: bad kind");
}

inline RingElement sub(const RingElement& x, const RingElement& y) { return add(x, neg(y)); }

inline RingElement mul(const RingElement& x, const RingElement& y) {
  if (!same_ring(x.ring, y.ring)) fail(RingError::Code::RingMismatch, "mul: ring mismatch");
  const RingPtr& r = x.ring;
  switch (r->kind) {
    case RingKind::Integers: return RingElement{r, Int(std::get<Int>(x.v) * std::get<Int>(y.v))};
    case RingKind::Rationals: return RingElement{r, Rat(std::get<Rat>(x.v) * std::get<Rat>(y.v))};
    case RingKind::Polynomials:
      return make_poly(r, detail::vec_mul(r->base, std::get<PolyPayload>(x.v).coeffs,
                                          std::get<PolyPayload>(y.v).coeffs));
    case RingKind::Laurent: {
      const auto& a = std::get<LaurentPayload>(x.v);
      const auto& b = std::get<LaurentPayload>(y.v);
      return make_laurent(r, a.shift + b.shift, detail::vec_mul(r->base, a.coeffs, b.coeffs));
    }
    case RingKind::Localization: {
      const auto& a = std::get<LocPayload>(x.v);
      const auto& b = std::get<LocPayload>(y.v);
      return make_loc(r, mul(a.num[0], b.num[0]), a.hexp + b.hexp);
    }
    case RingKind::Residue: {
      RingElement s = mul(std::get<ResiduePayload>(x.v).rep[0], std::get<ResiduePayload>(y.v).rep[0]);
      if (r->base->kind == RingKind::Integers) {
        Int m = boost::multiprecision::abs(std::get<Int>(r->special[0].v));
        Int n = std::get<Int>(s.v) % m;
        if (n < 0) n += m;
        return RingElement{r, ResiduePayload{{make_int(n)}}};
      }
      RingElement rem;
      poly_divmod_quot(s, r->special[0], &rem);
      return RingElement{r, ResiduePayload{{rem}}};
    }
    case RingKind::FractionField:
    case RingKind::RestrictedFractions: {
      const auto& a = std::get<FracPayload>(x.v).nd;
      const auto& b = std::get<FracPayload>(y.v).nd;
      return make_frac(r, mul(a[0], b[0]), mul(a[1], b[1]));
    }
  }
  fail(RingError::Code::Internal, "mul: bad kind");
}

inline RingElement pow_nat(const RingElement& x, unsigned e) {
  RingElement acc = one(x.ring);
  RingElement base = x;
  while (e) {
    if (e & 1u) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1u;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// fraction normalization

namespace detail {

// gcd in base ring Z or polynomials over a field (monic result)
inline RingElement base_gcd(const RingElement& a, const RingElement& b) {
  const RingPtr& r = a.ring;
  if (r->kind == RingKind::Integers)
    return make_int(int_gcd(std::get<Int>(a.v), std::get<Int>(b.v)));
  if (r->kind == RingKind::Polynomials && r->base->kind == RingKind::Rationals) {
    // primitive pseudo-remainder sequence over Z: naive Euclid over Q blows
    // up coefficient sizes catastrophically on high-degree inputs
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    auto to_primitive = [](const std::vector<RingElement>& cs) {
      std::vector<Int> p(cs.size());
      Int den = 1;
      for (const auto& c : cs) den = lcm(den, Int(denominator(std::get<Rat>(c.v))));
      Int content = 0;
      for (size_t i = 0; i < cs.size(); ++i) {
        const Rat& q = std::get<Rat>(cs[i].v);
        p[i] = Int(numerator(q)) * (den / Int(denominator(q)));
        content = gcd(content, p[i]);
      }
      if (content > 1)
        for (auto& c : p) c /= content;
      return p;
    };
    std::vector<Int> P0 = to_primitive(std::get<PolyPayload>(a.v).coeffs);
    std::vector<Int> P1 = to_primitive(std::get<PolyPayload>(b.v).coeffs);
    if (P0.size() < P1.size()) std::swap(P0, P1);
    while (!P1.empty()) {
      // pseudo-remainder of P0 by P1, then strip content
      std::vector<Int> R = P0;
      const Int& l1 = P1.back();
      while (R.size() >= P1.size()) {
        Int lr = R.back();
        size_t off = R.size() - P1.size();
        for (size_t i = 0; i + 1 < R.size(); ++i) {
          R[i] *= l1;
          if (i >= off && i - off < P1.size()) R[i] -= lr * P1[i - off];
        }
        R.pop_back();
        while (!R.empty() && R.back() == 0) R.pop_back();
      }
      Int content = 0;
      for (const auto& c : R) content = gcd(content, c);
      if (content > 1)
        for (auto& c : R) c /= content;
      P0 = std::move(P1);
      P1 = std::move(R);
    }
    if (P0.empty()) return zero(r);
    std::vector<RingElement> out;
    out.reserve(P0.size());
    Int lead = P0.back();
    if (lead < 0) lead = -lead;
    for (const auto& c : P0)
      out.push_back(make_rat(P0.back() < 0 ? Rat(-c, lead) : Rat(c, lead)));
    return make_poly(r, std::move(out));
  }
  if (r->kind == RingKind::Polynomials) {
    RingElement x = a, y = b;
    while (!is_zero(y)) {
      RingElement rem;
      poly_divmod_quot(x, y, &rem);
      x = y;
      y = rem;
    }
    if (is_zero(x)) return x;
    // make monic
    const auto& cs = std::get<PolyPayload>(x.v).coeffs;
    RingElement lead = cs.back();
    auto inv = try_div(one(lead.ring), lead);
    if (!inv) fail(RingError::Code::DivisionError, "base_gcd: non-field coefficients");
    RingElement scaled = mul(x, make_poly(r, {*inv}));
    return scaled;
  }
  fail(RingError::Code::UnsupportedType, "base_gcd: unsupported base");
}

inline bool den_support_ok(const RingPtr& r, const RingElement& den) {
  if (r->kind != RingKind::RestrictedFractions) return true;
  RingElement d = den;
  if (r->allowed_mode) {
    for (const auto& p : r->primes) {
      while (true) {
        auto q = try_div(d, p);
        if (!q) break;
        d = *q;
      }
    }
    return is_unit_in_base(d);
  }
  for (const auto& p : r->primes) {
    RingElement g = base_gcd(d, p);
    if (!is_unit_in_base(g)) return false;
  }
  return true;
}

inline bool is_unit_in_base(const RingElement& x) {
  const RingPtr& r = x.ring;
  if (r->kind == RingKind::Integers) {
    Int n = std::get<Int>(x.v);
    return n == 1 || n == -1;
  }
  if (r->kind == RingKind::Polynomials) {
    const auto& cs = std::get<PolyPayload>(x.v).coeffs;
    if (cs.size() != 1) return false;
    return try_div(one(cs[0].ring), cs[0]).has_value();
  }
  if (r->kind == RingKind::Rationals) return std::get<Rat>(x.v) != 0;
  return false;
}

}  // namespace detail

inline RingElement make_frac(const RingPtr& r, RingElement num, RingElement den) {
  if (is_zero(den)) fail(RingError::Code::DivisionError, "make_frac: zero denominator");
  if (is_zero(num)) return RingElement{r, FracPayload{{zero(r->base), one(r->base)}}};
  RingElement g = detail::base_gcd(num, den);
  if (!detail::is_unit_in_base(g)) {
    num = *try_div(num, g);
    den = *try_div(den, g);
  }
  // normalize denominator: positive for Z, monic for polynomials
  if (r->base->kind == RingKind::Integers) {
    if (std::get<Int>(den.v) < 0) {
      num = neg(num);
      den = neg(den);
    }
  } else if (r->base->kind == RingKind::Polynomials) {
    const auto& cs = std::get<PolyPayload>(den.v).coeffs;
    RingElement lead = cs.back();
    auto inv = try_div(one(lead.ring), lead);
    if (inv && !equal(lead, one(lead.ring))) {
      RingElement scale = make_poly(den.ring, {*inv});
      num = mul(num, scale);
      den = mul(den, scale);
    }
  }
  if (!detail::den_support_ok(r, den))
    fail(RingError::Code::DivisionError, "make_frac: denominator outside allowed support");
  return RingElement{r, FracPayload{{std::move(num), std::move(den)}}};
}

// ---------------------------------------------------------------------------
// exact division

inline std::optional<RingElement> try_div(const RingElement& x, const RingElement& y) {
  if (!same_ring(x.ring, y.ring)) return std::nullopt;
  const RingPtr& r = x.ring;
  if (is_zero(y)) return std::nullopt;
  if (is_zero(x)) return zero(r);
  switch (r->kind) {
    case RingKind::Integers: {
      const Int& a = std::get<Int>(x.v);
      const Int& b = std::get<Int>(y.v);
      if (a % b != 0) return std::nullopt;
      return make_int(a / b);
    }
    case RingKind::Rationals:
      return make_rat(std::get<Rat>(x.v) / std::get<Rat>(y.v));
    case RingKind::Polynomials: {
      std::vector<RingElement> rem;
      auto q = detail::vec_divmod(r->base, std::get<PolyPayload>(x.v).coeffs,
                                  std::get<PolyPayload>(y.v).coeffs, &rem);
      if (!q || !rem.empty()) return std::nullopt;
      return make_poly(r, *q);
    }
    case RingKind::Laurent: {
      const auto& a = std::get<LaurentPayload>(x.v);
      const auto& b = std::get<LaurentPayload>(y.v);
      std::vector<RingElement> rem;
      auto q = detail::vec_divmod(r->base, a.coeffs, b.coeffs, &rem);
      if (!q || !rem.empty()) return std::nullopt;
      return make_laurent(r, a.shift - b.shift, *q);
    }
    case RingKind::Localization: {
      const auto& a = std::get<LocPayload>(x.v);
      const auto& b = std::get<LocPayload>(y.v);
      const RingElement& h = r->special[0];
      RingElement n = a.num[0];
      // x/y = (n / bn) * h^(b.hexp - a.hexp); allow multiplying n by powers of h
      for (unsigned m = 0; m <= 64; ++m) {
        auto q = try_div(n, b.num[0]);
        if (q) {
          long e = static_cast<long>(a.hexp) + static_cast<long>(m) - static_cast<long>(b.hexp);
          if (e >= 0) return make_loc(r, *q, static_cast<unsigned>(e));
          RingElement num = *q;
          for (long i = 0; i < -e; ++i) num = mul(num, h);
          return make_loc(r, num, 0);
        }
        n = mul(n, h);
      }
      return std::nullopt;
    }
    case RingKind::Residue:
      return std::nullopt;  // not needed
    case RingKind::FractionField:
    case RingKind::RestrictedFractions: {
      const auto& a = std::get<FracPayload>(x.v).nd;
      const auto& b = std::get<FracPayload>(y.v).nd;
      try {
        return make_frac(r, mul(a[0], b[1]), mul(a[1], b[0]));
      } catch (const RingError&) {
        return std::nullopt;  // restricted support violated
      }
    }
  }
  return std::nullopt;
}

inline RingElement div_exact(const RingElement& x, const RingElement& y) {
  auto q = try_div(x, y);
  if (!q) fail(RingError::Code::DivisionError, "div_exact: not exactly divisible");
  return *q;
}

// ---------------------------------------------------------------------------
// element constructors from machine ints / variable access

inline RingElement from_int(const RingPtr& r, const Int& n);

namespace detail {
inline RingElement scale_int(const RingPtr& r, const Int& n) {
  switch (r->kind) {
    case RingKind::Integers: return make_int(n);
    case RingKind::Rationals: return make_rat(Rat(n));
    case RingKind::Polynomials:
      if (n == 0) return zero(r);
      return make_poly(r, {from_int(r->base, n)});
    case RingKind::Laurent:
      if (n == 0) return zero(r);
      return make_laurent(r, 0, {from_int(r->base, n)});
    case RingKind::Localization: return make_loc(r, from_int(r->base, n), 0);
    case RingKind::Residue: {
      RingElement b = from_int(r->base, n);
      RingElement e{r, ResiduePayload{{b}}};
      return add(e, zero(r));  // reduce
    }
    case RingKind::FractionField:
    case RingKind::RestrictedFractions:
      return make_frac(r, from_int(r->base, n), one(r->base));
  }
  fail(RingError::Code::Internal, "from_int: bad kind");
}
}  // namespace detail

inline RingElement from_int(const RingPtr& r, const Int& n) { return detail::scale_int(r, n); }
inline RingElement from_int(const RingPtr& r, long long n) { return detail::scale_int(r, Int(n)); }

// the variable of a polynomial or Laurent ring, as an element of that ring
inline RingElement var_elem(const RingPtr& r) {
  if (r->kind == RingKind::Polynomials)
    return make_poly(r, {zero(r->base), one(r->base)});
  if (r->kind == RingKind::Laurent)
    return make_laurent(r, 1, {one(r->base)});
  fail(RingError::Code::UnsupportedType, "var_elem: not a polynomial ring");
}

inline RingElement laurent_monomial(const RingPtr& r, int e) {
  if (r->kind != RingKind::Laurent) fail(RingError::Code::UnsupportedType, "laurent_monomial");
  return make_laurent(r, e, {one(r->base)});
}

// ---------------------------------------------------------------------------
// conversion between rings

inline std::optional<RingElement> try_convert(const RingElement& x, const RingPtr& target);

namespace detail {

struct Frac2 {
  RingElement num, den;  // over the tower base
};

// The "tower base" of a scalar-like ring: Integers for the Z/Q tower,
// the polynomial ring itself for towers over Q[t].
inline RingPtr tower_base(const RingPtr& r) {
  switch (r->kind) {
    case RingKind::Integers:
    case RingKind::Rationals:
      return integers();
    case RingKind::Polynomials:
      if (r->base->kind == RingKind::Rationals) return r;
      return nullptr;
    case RingKind::FractionField:
    case RingKind::RestrictedFractions: {
      RingPtr b = r->base;
      if (b->kind == RingKind::Integers) return b;
      if (b->kind == RingKind::Polynomials && b->base->kind == RingKind::Rationals) return b;
      return nullptr;
    }
    case RingKind::Localization:
      return tower_base(r->base);
    default:
      return nullptr;
  }
}

inline std::optional<Frac2> try_flatten(const RingElement& x) {
  const RingPtr& r = x.ring;
  RingPtr b0 = tower_base(r);
  if (!b0) return std::nullopt;
  switch (r->kind) {
    case RingKind::Integers:
      return Frac2{x, one(b0)};
    case RingKind::Rationals: {
      const Rat& q = std::get<Rat>(x.v);
      return Frac2{make_int(Int(boost::multiprecision::numerator(q))),
                   make_int(Int(boost::multiprecision::denominator(q)))};
    }
    case RingKind::Polynomials:
      return Frac2{x, one(b0)};
    case RingKind::FractionField:
    case RingKind::RestrictedFractions: {
      const auto& nd = std::get<FracPayload>(x.v).nd;
      return Frac2{nd[0], nd[1]};
    }
    case RingKind::Localization: {
      const auto& p = std::get<LocPayload>(x.v);
      auto fn = try_flatten(p.num[0]);
      auto fh = try_flatten(r->special[0]);
      if (!fn || !fh) return std::nullopt;
      RingElement num = fn->num;
      RingElement den = fn->den;
      for (unsigned i = 0; i < p.hexp; ++i) {
        num = mul(num, fh->den);
        den = mul(den, fh->num);
      }
      return Frac2{num, den};
    }
    default:
      return std::nullopt;
  }
}

// promote a fraction over Z to a fraction over a polynomial tower base
inline std::optional<Frac2> promote_frac(const Frac2& f, const RingPtr& b0_target) {
  if (same_ring(f.num.ring, b0_target)) return f;
  if (f.num.ring->kind == RingKind::Integers && b0_target->kind == RingKind::Polynomials) {
    auto n = try_convert(f.num, b0_target);
    auto d = try_convert(f.den, b0_target);
    if (!n || !d) return std::nullopt;
    return Frac2{*n, *d};
  }
  return std::nullopt;
}

inline std::optional<RingElement> build_from_frac(const Frac2& f0, const RingPtr& target) {
  RingPtr b0t = tower_base(target);
  if (!b0t) return std::nullopt;
  auto fp = promote_frac(f0, b0t);
  if (!fp) return std::nullopt;
  const Frac2& f = *fp;
  switch (target->kind) {
    case RingKind::Integers: {
      auto q = try_div(f.num, f.den);
      if (!q) return std::nullopt;
      return *q;
    }
    case RingKind::Rationals: {
      return make_rat(Rat(std::get<Int>(f.num.v), std::get<Int>(f.den.v)));
    }
    case RingKind::Polynomials: {
      auto q = try_div(f.num, f.den);
      if (!q) return std::nullopt;
      return *q;
    }
    case RingKind::FractionField:
      return make_frac(target, f.num, f.den);
    case RingKind::RestrictedFractions: {
      try {
        return make_frac(target, f.num, f.den);
      } catch (const RingError&) {
        return std::nullopt;
      }
    }
    case RingKind::Localization: {
      auto fh = try_flatten(target->special[0]);
      if (!fh) return std::nullopt;
      // find minimal e with x*h^e in the base
      Frac2 cur = f;
      for (unsigned e = 0; e <= 64; ++e) {
        RingElement g = base_gcd(cur.num, cur.den);
        Frac2 red{*try_div(cur.num, g), *try_div(cur.den, g)};
        auto inbase = build_from_frac(red, target->base);
        if (inbase) return make_loc(target, *inbase, e);
        cur = Frac2{mul(cur.num, fh->num), mul(cur.den, fh->den)};
      }
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

}  // namespace detail

// Attempts to realize x as an element of `target` along the canonical maps
// (base ring into localization / fraction ring, Z into Q, coefficientwise for
// polynomial rings, and retractions where the element happens to lie in the
// smaller ring). Returns nullopt when x has no image in `target`.
inline std::optional<RingElement> try_convert(const RingElement& x, const RingPtr& target) {
  if (same_ring(x.ring, target)) return x;
  const RingPtr& r = x.ring;
  // polynomial/Laurent targets: map coefficientwise or embed as constant
  if (target->kind == RingKind::Polynomials || target->kind == RingKind::Laurent) {
    if (r->kind == RingKind::Polynomials && r->var == target->var) {
      const auto& cs = std::get<PolyPayload>(x.v).coeffs;
      std::vector<RingElement> out;
      out.reserve(cs.size());
      for (const auto& c : cs) {
        auto cc = try_convert(c, target->base);
        if (!cc) return std::nullopt;
        out.push_back(*cc);
      }
      if (target->kind == RingKind::Polynomials) return make_poly(target, out);
      return make_laurent(target, 0, out);
    }
    if (r->kind == RingKind::Laurent && r->var == target->var) {
      const auto& lp = std::get<LaurentPayload>(x.v);
      std::vector<RingElement> out;
      out.reserve(lp.coeffs.size());
      for (const auto& c : lp.coeffs) {
        auto cc = try_convert(c, target->base);
        if (!cc) return std::nullopt;
        out.push_back(*cc);
      }
      if (target->kind == RingKind::Laurent) return make_laurent(target, lp.shift, out);
      if (lp.shift < 0) return std::nullopt;
      std::vector<RingElement> padded(static_cast<size_t>(lp.shift), zero(target->base));
      padded.insert(padded.end(), out.begin(), out.end());
      return make_poly(target, padded);
    }
    // constant embedding; avoid swallowing a same-variable tower base:
    // Q[t] scalars embed into Q[t]-coefficient rings only coefficientwise above.
    auto c = try_convert(x, target->base);
    if (c) {
      if (target->kind == RingKind::Polynomials) return make_poly(target, {*c});
      return make_laurent(target, 0, {*c});
    }
    return std::nullopt;
  }
  // localization target with structurally matching base/h: keep the exponent
  if (target->kind == RingKind::Localization && r->kind == RingKind::Localization) {
    auto hh = try_convert(r->special[0], target->base);
    if (hh && equal(*hh, target->special[0])) {
      auto n = try_convert(std::get<LocPayload>(x.v).num[0], target->base);
      if (n) return make_loc(target, *n, std::get<LocPayload>(x.v).hexp);
    }
  }
  if (target->kind == RingKind::Localization) {
    auto n = try_convert(x, target->base);
    if (n) return make_loc(target, *n, 0);
  }
  // scalar tower fallback
  auto f = detail::try_flatten(x);
  if (f) {
    auto out = detail::build_from_frac(*f, target);
    if (out) return out;
  }
  // residue target: reduce an element of the base
  if (target->kind == RingKind::Residue) {
    auto b = try_convert(x, target->base);
    if (b) {
      RingElement e{target, ResiduePayload{{*b}}};
      return add(e, zero(target));
    }
  }
  return std::nullopt;
}

inline RingElement embed(const RingElement& x, const RingPtr& target) {
  auto y = try_convert(x, target);
  if (!y) fail(RingError::Code::NoEmbedding, "embed: no canonical image in target ring");
  return *y;
}

// ---------------------------------------------------------------------------
// localization-specific operations

// minimal M with h^M * x in the image of the base ring
inline unsigned denom_exponent(const RingElement& x) {
  if (x.ring->kind != RingKind::Localization)
    fail(RingError::Code::RingMismatch, "denom_exponent: not a localization element");
  return std::get<LocPayload>(x.v).hexp;
}

// Returns b in B with embed(b, A) == c modulo h^k A.
// Throws NotSurjective when no lift exists for this c.
inline RingElement residue_lift(const RingElement& c, const RingElement& h_in_B, unsigned k,
                                const RingPtr& B) {
  const RingPtr& A = c.ring;
  RingPtr b0A = detail::tower_base(A);
  // special case: polynomials over Z modulo an integer
  if (A->kind == RingKind::Polynomials && A->base->kind == RingKind::Integers) {
    Int m = 1;
    Int hz = std::get<Int>(h_in_B.v);
    for (unsigned i = 0; i < k; ++i) m *= hz;
    const auto& cs = std::get<PolyPayload>(c.v).coeffs;
    Int c0 = 0;
    for (size_t i = 0; i < cs.size(); ++i) {
      Int ci = std::get<Int>(cs[i].v) % m;
      if (ci < 0) ci += m;
      if (i == 0) c0 = ci;
      else if (ci != 0)
        fail(RingError::Code::NotSurjective, "residue_lift: nonconstant residue class");
    }
    return embed(make_int(c0), B);
  }
  if (!b0A) fail(RingError::Code::UnsupportedType, "residue_lift: unsupported ring");
  auto f = detail::try_flatten(c);
  if (!f) fail(RingError::Code::UnsupportedType, "residue_lift: cannot flatten");
  auto fh = detail::try_flatten(embed(h_in_B, A));
  if (!fh || !detail::is_unit_in_base(fh->den))
    fail(RingError::Code::UnsupportedType, "residue_lift: h must be in the tower base");
  RingElement hb = fh->num;
  if (!detail::is_unit_in_base(fh->den)) hb = div_exact(hb, fh->den);
  if (b0A->kind == RingKind::Integers) {
    Int m = 1;
    Int hz = std::get<Int>(hb.v);
    for (unsigned i = 0; i < k; ++i) m *= hz;
    m = boost::multiprecision::abs(m);
    Int p = std::get<Int>(f->num.v);
    Int q = std::get<Int>(f->den.v);
    if (detail::int_gcd(q, m) != 1)
      fail(RingError::Code::NotSurjective, "residue_lift: denominator not invertible mod h^k");
    Int b = (p % m) * detail::mod_inverse(q, m) % m;
    if (b < 0) b += m;
    return embed(make_int(b), B);
  }
  // polynomial tower base over Q
  RingElement m = pow_nat(hb, k);
  // inverse of den modulo m via extended Euclid
  RingElement r0 = m, r1 = f->den;
  {
    RingElement rem;
    poly_divmod_quot(r1, m, &rem);
    r1 = rem;
  }
  RingElement s0 = zero(b0A), s1 = one(b0A);
  while (!is_zero(r1)) {
    RingElement rem;
    RingElement q = poly_divmod_quot(r0, r1, &rem);
    RingElement s2 = sub(s0, mul(q, s1));
    r0 = r1; r1 = rem;
    s0 = s1; s1 = s2;
  }
  if (!detail::is_unit_in_base(r0))
    fail(RingError::Code::NotSurjective, "residue_lift: denominator not invertible mod h^k");
  RingElement inv = div_exact(s0, r0);  // scale so that inv*den == 1 mod m
  RingElement b = mul(f->num, inv);
  RingElement rem;
  poly_divmod_quot(b, m, &rem);
  return embed(rem, B);
}

// exact evaluation of a univariate polynomial at a value in a compatible ring
inline RingElement substitute(const RingElement& p, const RingElement& value) {
  if (p.ring->kind != RingKind::Polynomials)
    fail(RingError::Code::RingMismatch, "substitute: not a polynomial");
  const RingPtr& W = value.ring;
  const auto& cs = std::get<PolyPayload>(p.v).coeffs;
  RingElement acc = zero(W);
  for (size_t i = cs.size(); i-- > 0;) {
    auto c = try_convert(cs[i], W);
    if (!c) fail(RingError::Code::RingMismatch, "substitute: coefficient not convertible");
    acc = add(mul(acc, value), *c);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// deterministic textual form

inline std::string to_string(const RingElement& x) {
  std::ostringstream os;
  switch (x.ring->kind) {
    case RingKind::Integers:
      os << std::get<Int>(x.v);
      break;
    case RingKind::Rationals: {
      const Rat& q = std::get<Rat>(x.v);
      os << boost::multiprecision::numerator(q);
      if (boost::multiprecision::denominator(q) != 1)
        os << "/" << boost::multiprecision::denominator(q);
      break;
    }
    case RingKind::Polynomials: {
      const auto& cs = std::get<PolyPayload>(x.v).coeffs;
      os << "[";
      for (size_t i = 0; i < cs.size(); ++i) {
        if (i) os << ",";
        os << to_string(cs[i]);
      }
      os << "]";
      break;
    }
    case RingKind::Laurent: {
      const auto& lp = std::get<LaurentPayload>(x.v);
      os << "{shift:" << lp.shift << ",coeffs:[";
      for (size_t i = 0; i < lp.coeffs.size(); ++i) {
        if (i) os << ",";
        os << to_string(lp.coeffs[i]);
      }
      os << "]}";
      break;
    }
    case RingKind::Localization: {
      const auto& p = std::get<LocPayload>(x.v);
      os << "{num:" << to_string(p.num[0]) << ",hexp:" << p.hexp << "}";
      break;
    }
    case RingKind::Residue:
      os << to_string(std::get<ResiduePayload>(x.v).rep[0]);
      break;
    case RingKind::FractionField:
    case RingKind::RestrictedFractions: {
      const auto& nd = std::get<FracPayload>(x.v).nd;
      os << to_string(nd[0]);
      if (!equal(nd[1], one(x.ring->base))) os << "/" << to_string(nd[1]);
      break;
    }
  }
  return os.str();
}

}  // namespace relchev

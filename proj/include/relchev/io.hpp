// JSON-backed serialization for CLI documents. Exact values only: integers
// and rationals travel as decimal strings ("p/q"), polynomials as coefficient
// lists, localization payloads as {num, hexp}. Field order is fixed
// (ordered_json) so identical inputs produce byte-identical outputs.
#pragma once

#include "relchev/rel_subschemes.hpp"

#include <json.hpp>

namespace relchev {

using Json = nlohmann::ordered_json;

inline Rat parse_rational(const std::string& s) {
  try {
    size_t slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) fail(RingError::Code::ParseError, "rational with zero denominator");
    return Rat(num, den);
  } catch (const RingError&) {
    throw;
  } catch (const std::exception&) {
    fail(RingError::Code::ParseError, "bad rational literal: " + s);
  }
}

inline std::string rat_to_string(const Rat& q) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(q);
  if (boost::multiprecision::denominator(q) != 1)
    os << "/" << boost::multiprecision::denominator(q);
  return os.str();
}

// polynomial over Q from a JSON list of rational strings
inline RingElement parse_poly(const Json& j, const RingPtr& r) {
  if (!j.is_array()) fail(RingError::Code::ParseError, "polynomial must be a list");
  std::vector<RingElement> cs;
  for (const auto& c : j) {
    if (!c.is_string()) fail(RingError::Code::ParseError, "polynomial coefficient must be a string");
    cs.push_back(make_rat(parse_rational(c.get<std::string>())));
  }
  return make_poly(r, cs);
}

// flat serialization of any scalar-tower element: rational string over the
// Z-tower, {num, den} coefficient lists over the Q[t]-tower
inline Json element_to_json(const RingElement& x) {
  auto f = detail::try_flatten(x);
  if (!f) fail(RingError::Code::UnsupportedType, "serialize: cannot flatten element");
  if (f->num.ring->kind == RingKind::Integers) {
    Rat q(std::get<Int>(f->num.v), std::get<Int>(f->den.v));
    return Json(rat_to_string(q));
  }
  auto poly_list = [](const RingElement& p) {
    Json out = Json::array();
    for (const auto& c : std::get<PolyPayload>(p.v).coeffs)
      out.push_back(Json(rat_to_string(std::get<Rat>(c.v))));
    return out;
  };
  Json out;
  out["num"] = poly_list(f->num);
  out["den"] = poly_list(f->den);
  return out;
}

inline RingElement element_from_json(const Json& j, const RingPtr& target) {
  if (j.is_string()) {
    RingElement q = make_rat(parse_rational(j.get<std::string>()));
    auto v = try_convert(q, target);
    if (!v) fail(RingError::Code::NoEmbedding, "value has no image in the expected ring");
    return *v;
  }
  if (j.is_object() && j.contains("num") && j.contains("den")) {
    RingPtr Qt = polynomials(rationals(), "t");
    RingElement num = parse_poly(j.at("num"), Qt);
    RingElement den = parse_poly(j.at("den"), Qt);
    RingElement q = make_frac(fraction_field(Qt), num, den);
    auto v = try_convert(q, target);
    if (!v) fail(RingError::Code::NoEmbedding, "value has no image in the expected ring");
    return *v;
  }
  fail(RingError::Code::ParseError, "expected a rational string or {num, den} object");
}

inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.n; ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.n; ++j) row.push_back(element_to_json(m.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline Matrix matrix_from_json(const Json& j, const RingPtr& ring) {
  if (!j.is_array() || j.empty()) fail(RingError::Code::ParseError, "matrix must be a list of rows");
  int n = static_cast<int>(j.size());
  Matrix m = zero_matrix(ring, n);
  for (int i = 0; i < n; ++i) {
    if (!j[static_cast<size_t>(i)].is_array() ||
        static_cast<int>(j[static_cast<size_t>(i)].size()) != n)
      fail(RingError::Code::ParseError, "matrix must be square");
    for (int c = 0; c < n; ++c)
      m.at(i, c) = element_from_json(j[static_cast<size_t>(i)][static_cast<size_t>(c)], ring);
  }
  return m;
}

inline Json word_to_json(const RelWord& w) {
  Json out = Json::array();
  for (const auto& letter : w) {
    Json u = Json::array();
    for (const auto& c : letter.u) u.push_back(element_to_json(c));
    Json entry;
    entry["alpha"] = letter.alpha;
    entry["u"] = u;
    out.push_back(entry);
  }
  return out;
}

inline RelWord word_from_json(const Json& j, const RelGroupContext& ctx, const RingPtr& ring) {
  if (!j.is_array()) fail(RingError::Code::ParseError, "word must be a list");
  RelWord w;
  for (const auto& entry : j) {
    if (!entry.is_object() || !entry.contains("alpha") || !entry.contains("u"))
      fail(RingError::Code::ParseError, "word letter needs {alpha, u}");
    int a = entry.at("alpha").get<int>();
    if (a < 0 || a >= ctx.rel_count())
      fail(RingError::Code::NotARelativeRoot, "letter alpha out of range");
    std::vector<RingElement> u;
    for (const auto& c : entry.at("u")) u.push_back(element_from_json(c, ring));
    if (static_cast<int>(u.size()) != ctx.fiber_rank(a))
      fail(RingError::Code::RankMismatch, "letter coefficient rank mismatch");
    w.push_back({a, u});
  }
  return w;
}

inline Json polyfun_to_json(const PolyMapFun& f) {
  Json comps = Json::array();
  for (const auto& comp : f.comps) {
    Json terms = Json::array();
    for (const auto& t : comp) {
      Json term;
      term["exps"] = t.exps;
      term["coeff"] = element_to_json(t.c);
      terms.push_back(term);
    }
    comps.push_back(terms);
  }
  Json out;
  out["nvars"] = f.nvars;
  out["comps"] = comps;
  return out;
}

inline GroupDescriptor group_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("family") || !j.contains("size"))
    fail(RingError::Code::ParseError, "group needs {family, size}");
  std::string fam = j.at("family").get<std::string>();
  int size = j.at("size").get<int>();
  if (fam == "SL") return make_sl(size);
  if (fam == "Sp") return make_sp(size);
  fail(RingError::Code::ParseError, "family must be SL or Sp");
}

inline std::vector<int> jset_from_json(const Json& j) {
  if (!j.is_array()) fail(RingError::Code::ParseError, "J must be a list");
  std::vector<int> out;
  for (const auto& e : j) {
    if (e.is_number_integer()) {
      out.push_back(e.get<int>());
    } else if (e.is_string()) {
      // accept "a2"-style labels (1-based)
      std::string s = e.get<std::string>();
      if (s.size() < 2 || (s[0] != 'a' && s[0] != 'b' && s[0] != 'c' && s[0] != 'd'))
        fail(RingError::Code::ParseError, "bad simple-root label: " + s);
      try {
        out.push_back(std::stoi(s.substr(1)) - 1);
      } catch (const std::exception&) {
        fail(RingError::Code::ParseError, "bad simple-root label: " + s);
      }
    } else {
      fail(RingError::Code::ParseError, "J entries must be indices or labels");
    }
  }
  return out;
}

}  // namespace relchev

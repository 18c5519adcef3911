// Dense square matrices over an exact ring. Sizes are small (n <= 8);
// determinants and adjugates use cofactor expansion, which only needs
// ring addition and multiplication.
#pragma once

#include "relchev/rings.hpp"

namespace relchev {

struct Matrix {
  RingPtr ring;
  int n = 0;
  std::vector<RingElement> a;  // row-major

  RingElement& at(int r, int c) { return a[static_cast<size_t>(r * n + c)]; }
  const RingElement& at(int r, int c) const { return a[static_cast<size_t>(r * n + c)]; }
};

inline Matrix identity_matrix(const RingPtr& r, int n) {
  Matrix m{r, n, {}};
  m.a.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.a.push_back(i == j ? one(r) : zero(r));
  return m;
}

inline Matrix zero_matrix(const RingPtr& r, int n) {
  Matrix m{r, n, std::vector<RingElement>(static_cast<size_t>(n) * n, zero(r))};
  return m;
}

inline Matrix mat_mul(const Matrix& x, const Matrix& y) {
  if (x.n != y.n || !same_ring(x.ring, y.ring))
    fail(RingError::Code::RingMismatch, "mat_mul: incompatible matrices");
  Matrix out = zero_matrix(x.ring, x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      if (is_zero(x.at(i, k))) continue;
      for (int j = 0; j < x.n; ++j) {
        if (is_zero(y.at(k, j))) continue;
        out.at(i, j) = add(out.at(i, j), mul(x.at(i, k), y.at(k, j)));
      }
    }
  return out;
}

inline Matrix mat_transpose(const Matrix& x) {
  Matrix out = x;
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) out.at(i, j) = x.at(j, i);
  return out;
}

inline bool mat_equal(const Matrix& x, const Matrix& y) {
  if (x.n != y.n || !same_ring(x.ring, y.ring)) return false;
  for (size_t i = 0; i < x.a.size(); ++i)
    if (!equal(x.a[i], y.a[i])) return false;
  return true;
}

inline bool mat_is_identity(const Matrix& x) {
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) {
      if (i == j && !equal(x.at(i, j), one(x.ring))) return false;
      if (i != j && !is_zero(x.at(i, j))) return false;
    }
  return true;
}

namespace detail {
inline RingElement det_rec(const Matrix& m, std::vector<int>& cols, int row) {
  const RingPtr& r = m.ring;
  if (cols.size() == 1) return m.at(row, cols[0]);
  RingElement acc = zero(r);
  for (size_t k = 0; k < cols.size(); ++k) {
    const RingElement& pivot = m.at(row, cols[k]);
    if (is_zero(pivot)) continue;
    int c = cols[k];
    cols.erase(cols.begin() + static_cast<long>(k));
    RingElement sub = det_rec(m, cols, row + 1);
    cols.insert(cols.begin() + static_cast<long>(k), c);
    RingElement term = mul(pivot, sub);
    acc = (k % 2 == 0) ? add(acc, term) : add(acc, neg(term));
  }
  return acc;
}
}  // namespace detail

inline RingElement mat_det(const Matrix& m) {
  std::vector<int> cols(static_cast<size_t>(m.n));
  for (int i = 0; i < m.n; ++i) cols[static_cast<size_t>(i)] = i;
  return detail::det_rec(m, cols, 0);
}

// minor determinant with one row/column removed
namespace detail {
inline RingElement minor_det(const Matrix& m, int dr, int dc) {
  Matrix s{m.ring, m.n - 1, {}};
  s.a.reserve(static_cast<size_t>(s.n) * s.n);
  for (int i = 0; i < m.n; ++i) {
    if (i == dr) continue;
    for (int j = 0; j < m.n; ++j) {
      if (j == dc) continue;
      s.a.push_back(m.at(i, j));
    }
  }
  return mat_det(s);
}
}  // namespace detail

inline Matrix mat_adjugate(const Matrix& m) {
  Matrix out = zero_matrix(m.ring, m.n);
  if (m.n == 1) {
    out.at(0, 0) = one(m.ring);
    return out;
  }
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) {
      RingElement c = detail::minor_det(m, j, i);
      out.at(i, j) = ((i + j) % 2 == 0) ? c : neg(c);
    }
  return out;
}

// inverse via adjugate; requires det to be a unit (always true for det == 1)
inline Matrix mat_inverse(const Matrix& m) {
  RingElement d = mat_det(m);
  Matrix adj = mat_adjugate(m);
  if (equal(d, one(m.ring))) return adj;
  for (auto& e : adj.a) {
    auto q = try_div(e, d);
    if (!q) fail(RingError::Code::DivisionError, "mat_inverse: determinant not a unit");
    e = *q;
  }
  return adj;
}

inline std::optional<Matrix> mat_try_convert(const Matrix& m, const RingPtr& target) {
  Matrix out{target, m.n, {}};
  out.a.reserve(m.a.size());
  for (const auto& e : m.a) {
    auto c = try_convert(e, target);
    if (!c) return std::nullopt;
    out.a.push_back(*c);
  }
  return out;
}

inline Matrix mat_convert(const Matrix& m, const RingPtr& target) {
  auto out = mat_try_convert(m, target);
  if (!out) fail(RingError::Code::NoEmbedding, "mat_convert: entry not convertible");
  return *out;
}

inline std::string to_string(const Matrix& m) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < m.n; ++i) {
    if (i) os << ",";
    os << "[";
    for (int j = 0; j < m.n; ++j) {
      if (j) os << ",";
      os << to_string(m.at(i, j));
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace relchev

// Finite root systems of classical types A, B, C, D in their standard
// integer realizations, with heights, a fixed total order, and Dynkin
// diagram automorphisms.
#pragma once

#include "relchev/rings.hpp"

#include <array>
#include <numeric>

namespace relchev {

using IVec = std::vector<int>;

struct RootSystem {
  char type = 'A';
  int rank = 0;
  int dim = 0;                       // dimension of the ambient realization
  std::vector<IVec> roots;           // fixed order: by (height, lex), ascending
  std::vector<int> simple;           // indices into roots of the simple base D
  std::vector<IVec> simple_coeffs;   // per root: coefficients over the simple base
  std::vector<int> heights;          // per root

  int index_of(const IVec& v) const {
    for (size_t i = 0; i < roots.size(); ++i)
      if (roots[i] == v) return static_cast<int>(i);
    return -1;
  }
  bool is_positive(int idx) const { return heights[static_cast<size_t>(idx)] > 0; }
};

// permutation of the simple base preserving the Cartan pairing
struct DiagramAutomorphism {
  IVec perm;  // perm[i] = image index of simple root i
};

namespace detail {

inline long ip(const IVec& a, const IVec& b) {
  long s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += static_cast<long>(a[i]) * b[i];
  return s;
}

// solve S * c = v for c over Q, S given by columns (the simple roots);
// returns integer solution or fails
inline IVec solve_simple_coeffs(const std::vector<IVec>& simples, const IVec& v) {
  size_t rows = v.size(), cols = simples.size();
  std::vector<std::vector<Rat>> m(rows, std::vector<Rat>(cols + 1));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) m[i][j] = simples[j][i];
    m[i][cols] = v[i];
  }
  size_t lead = 0;
  std::vector<int> pivot_col(rows, -1);
  for (size_t c = 0; c < cols && lead < rows; ++c) {
    size_t piv = lead;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[lead]);
    Rat p = m[lead][c];
    for (size_t j = 0; j <= cols; ++j) m[lead][j] /= p;
    for (size_t i = 0; i < rows; ++i) {
      if (i == lead || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (size_t j = 0; j <= cols; ++j) m[i][j] -= f * m[lead][j];
    }
    pivot_col[lead] = static_cast<int>(c);
    ++lead;
  }
  IVec out(cols, 0);
  for (size_t i = 0; i < lead; ++i) {
    Rat val = m[i][cols];
    if (boost::multiprecision::denominator(val) != 1)
      fail(RingError::Code::Internal, "simple coefficients not integral");
    out[static_cast<size_t>(pivot_col[i])] =
        static_cast<int>(Int(boost::multiprecision::numerator(val)));
  }
  // consistency rows
  for (size_t i = lead; i < rows; ++i)
    if (m[i][cols] != 0) fail(RingError::Code::NotARoot, "vector not in the root lattice span");
  return out;
}

}  // namespace detail

inline RootSystem build_root_system(char type, int rank) {
  RootSystem rs;
  rs.type = type;
  rs.rank = rank;
  std::vector<IVec> simples;
  std::vector<IVec> all;
  auto unit = [](int dim, int i, int s) {
    IVec v(static_cast<size_t>(dim), 0);
    v[static_cast<size_t>(i)] = s;
    return v;
  };
  auto two_unit = [](int dim, int i, int si, int j, int sj) {
    IVec v(static_cast<size_t>(dim), 0);
    v[static_cast<size_t>(i)] = si;
    v[static_cast<size_t>(j)] += sj;
    return v;
  };
  switch (type) {
    case 'A': {
      if (rank < 1) fail(RingError::Code::UnsupportedType, "A_n needs rank >= 1");
      rs.dim = rank + 1;
      for (int i = 0; i < rs.dim; ++i)
        for (int j = 0; j < rs.dim; ++j)
          if (i != j) all.push_back(two_unit(rs.dim, i, 1, j, -1));
      for (int i = 0; i < rank; ++i) simples.push_back(two_unit(rs.dim, i, 1, i + 1, -1));
      break;
    }
    case 'B': {
      if (rank < 2) fail(RingError::Code::UnsupportedType, "B_n needs rank >= 2");
      rs.dim = rank;
      for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j)
          for (int si : {1, -1})
            for (int sj : {1, -1}) all.push_back(two_unit(rs.dim, i, si, j, sj));
      for (int i = 0; i < rank; ++i)
        for (int s : {1, -1}) all.push_back(unit(rs.dim, i, s));
      for (int i = 0; i < rank - 1; ++i) simples.push_back(two_unit(rs.dim, i, 1, i + 1, -1));
      simples.push_back(unit(rs.dim, rank - 1, 1));
      break;
    }
    case 'C': {
      if (rank < 2) fail(RingError::Code::UnsupportedType, "C_n needs rank >= 2");
      rs.dim = rank;
      for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j)
          for (int si : {1, -1})
            for (int sj : {1, -1}) all.push_back(two_unit(rs.dim, i, si, j, sj));
      for (int i = 0; i < rank; ++i)
        for (int s : {2, -2}) all.push_back(unit(rs.dim, i, s));
      for (int i = 0; i < rank - 1; ++i) simples.push_back(two_unit(rs.dim, i, 1, i + 1, -1));
      simples.push_back(unit(rs.dim, rank - 1, 2));
      break;
    }
    case 'D': {
      if (rank < 3) fail(RingError::Code::UnsupportedType, "D_n needs rank >= 3");
      rs.dim = rank;
      for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j)
          for (int si : {1, -1})
            for (int sj : {1, -1}) all.push_back(two_unit(rs.dim, i, si, j, sj));
      for (int i = 0; i < rank - 1; ++i) simples.push_back(two_unit(rs.dim, i, 1, i + 1, -1));
      simples.push_back(two_unit(rs.dim, rank - 2, 1, rank - 1, 1));
      break;
    }
    default:
      fail(RingError::Code::UnsupportedType, "unsupported root system type");
  }
  // coefficients and heights, then the fixed total order
  struct Entry {
    IVec root, coeffs;
    int height;
  };
  std::vector<Entry> entries;
  entries.reserve(all.size());
  for (const auto& v : all) {
    IVec c = detail::solve_simple_coeffs(simples, v);
    int h = std::accumulate(c.begin(), c.end(), 0);
    bool nonneg = std::all_of(c.begin(), c.end(), [](int x) { return x >= 0; });
    bool nonpos = std::all_of(c.begin(), c.end(), [](int x) { return x <= 0; });
    if (!nonneg && !nonpos) fail(RingError::Code::Internal, "root with mixed-sign coefficients");
    entries.push_back({v, c, h});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.height != b.height) return a.height < b.height;
    return a.root < b.root;
  });
  for (auto& e : entries) {
    rs.roots.push_back(e.root);
    rs.simple_coeffs.push_back(e.coeffs);
    rs.heights.push_back(e.height);
  }
  for (const auto& s : simples) rs.simple.push_back(rs.index_of(s));
  return rs;
}

inline int height(const RootSystem& rs, const IVec& root) {
  int idx = rs.index_of(root);
  if (idx < 0) fail(RingError::Code::NotARoot, "height: not a root");
  return rs.heights[static_cast<size_t>(idx)];
}

namespace detail {
// Cartan integers c[i][j] = 2(ai,aj)/(aj,aj)
inline std::vector<IVec> cartan_matrix(const RootSystem& rs) {
  size_t n = rs.simple.size();
  std::vector<IVec> c(n, IVec(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      const IVec& ai = rs.roots[static_cast<size_t>(rs.simple[i])];
      const IVec& aj = rs.roots[static_cast<size_t>(rs.simple[j])];
      long num = 2 * ip(ai, aj), den = ip(aj, aj);
      if (num % den != 0) fail(RingError::Code::Internal, "cartan entry not integral");
      c[i][j] = static_cast<int>(num / den);
    }
  return c;
}
}  // namespace detail

// every nontrivial Cartan-preserving permutation of the simple base,
// in lexicographic order (a generating set of the full automorphism group)
inline std::vector<DiagramAutomorphism> automorphism_group(const RootSystem& rs) {
  auto c = detail::cartan_matrix(rs);
  size_t n = rs.simple.size();
  IVec perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<DiagramAutomorphism> out;
  IVec p = perm;
  do {
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i)
      for (size_t j = 0; j < n && ok; ++j)
        if (c[static_cast<size_t>(p[i])][static_cast<size_t>(p[j])] != c[i][j]) ok = false;
    if (ok && p != perm) out.push_back({p});
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace relchev

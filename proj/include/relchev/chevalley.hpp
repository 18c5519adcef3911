// Split classical matrix groups SL_n and Sp_2n: the fixed Chevalley
// realization of root elements, torus weight decompositions, parabolic
// block shapes, and membership predicates. Descriptors carry only integer
// structure; group elements are matrices over any supported ring.
#pragma once

#include "relchev/matrix.hpp"
#include "relchev/relative_roots.hpp"

#include <map>

namespace relchev {

enum class Family { SL, Sp };

// one nonzero entry of a Chevalley basis element
struct RootPos {
  int r, c, s;  // e_delta has entry s at (r, c)
};

struct GroupDescriptor {
  Family family = Family::SL;
  int size = 0;  // matrix size n
  RootSystem phi;
  std::vector<std::vector<RootPos>> realization;  // per root index in phi order
  std::vector<IVec> form;                         // Sp: bilinear form entries (integers); empty for SL
};

namespace detail {

// ambient torus weight vector of matrix index a (in Z^dim of the root system)
inline IVec position_weight_vec(const GroupDescriptor& g, int a) {
  IVec w(static_cast<size_t>(g.phi.dim), 0);
  if (g.family == Family::SL) {
    w[static_cast<size_t>(a)] = 1;
  } else {
    int n = g.size / 2;
    if (a < n) w[static_cast<size_t>(a)] = 1;
    else w[static_cast<size_t>(2 * n - 1 - a)] = -1;
  }
  return w;
}

inline IVec weight_of_position(const GroupDescriptor& g, int a, int b) {
  IVec wa = position_weight_vec(g, a), wb = position_weight_vec(g, b);
  for (size_t i = 0; i < wa.size(); ++i) wa[i] -= wb[i];
  return wa;
}

}  // namespace detail

inline GroupDescriptor make_sl(int n) {
  if (n < 2) fail(RingError::Code::UnsupportedType, "SL_n needs n >= 2");
  GroupDescriptor g;
  g.family = Family::SL;
  g.size = n;
  g.phi = build_root_system('A', n - 1);
  g.realization.resize(g.phi.roots.size());
  for (size_t r = 0; r < g.phi.roots.size(); ++r) {
    const IVec& root = g.phi.roots[r];
    int i = -1, j = -1;
    for (int k = 0; k < n; ++k) {
      if (root[static_cast<size_t>(k)] == 1) i = k;
      if (root[static_cast<size_t>(k)] == -1) j = k;
    }
    g.realization[r] = {{i, j, 1}};
  }
  return g;
}

inline GroupDescriptor make_sp(int size) {
  if (size < 4 || size % 2 != 0) fail(RingError::Code::UnsupportedType, "Sp_2n needs even size >= 4");
  GroupDescriptor g;
  g.family = Family::Sp;
  g.size = size;
  int n = size / 2;
  g.phi = build_root_system('C', n);
  // antidiagonal form: J[i][size-1-i] = +1 for i < n, -1 for i >= n
  g.form.assign(static_cast<size_t>(size), IVec(static_cast<size_t>(size), 0));
  for (int i = 0; i < size; ++i)
    g.form[static_cast<size_t>(i)][static_cast<size_t>(size - 1 - i)] = (i < n) ? 1 : -1;
  // positions carrying each root weight
  g.realization.resize(g.phi.roots.size());
  for (size_t r = 0; r < g.phi.roots.size(); ++r) {
    const IVec& root = g.phi.roots[r];
    std::vector<std::pair<int, int>> pos;
    for (int a = 0; a < size; ++a)
      for (int b = 0; b < size; ++b)
        if (a != b && detail::weight_of_position(g, a, b) == root) pos.emplace_back(a, b);
    if (pos.empty()) fail(RingError::Code::Internal, "Sp realization: no position for root");
    // solve signs so that e^T J + J e = 0, first coefficient +1
    auto lie_ok = [&](const std::vector<RootPos>& e) {
      // compute e^T J + J e over integers
      std::vector<IVec> m(static_cast<size_t>(size), IVec(static_cast<size_t>(size), 0));
      for (const auto& p : e) {
        for (int k = 0; k < size; ++k) {
          // (e^T J)[c][k] += s * J[r][k]
          m[static_cast<size_t>(p.c)][static_cast<size_t>(k)] +=
              p.s * g.form[static_cast<size_t>(p.r)][static_cast<size_t>(k)];
          // (J e)[k][c] += J[k][r] * s
          m[static_cast<size_t>(k)][static_cast<size_t>(p.c)] +=
              g.form[static_cast<size_t>(k)][static_cast<size_t>(p.r)] * p.s;
        }
      }
      for (const auto& row : m)
        for (int v : row)
          if (v != 0) return false;
      return true;
    };
    std::sort(pos.begin(), pos.end());
    bool found = false;
    if (pos.size() == 1) {
      for (int s : {1, -1}) {
        std::vector<RootPos> e{{pos[0].first, pos[0].second, s}};
        if (lie_ok(e)) {
          if (s == -1) e[0].s = 1;  // normalize: single entry, sign convention +1
          if (!lie_ok(e)) e[0].s = -1;
          g.realization[r] = e;
          found = true;
          break;
        }
      }
    } else if (pos.size() == 2) {
      for (int s : {1, -1}) {
        std::vector<RootPos> e{{pos[0].first, pos[0].second, 1},
                               {pos[1].first, pos[1].second, s}};
        if (lie_ok(e)) {
          g.realization[r] = e;
          found = true;
          break;
        }
      }
    }
    if (!found) fail(RingError::Code::Internal, "Sp realization: no consistent sign choice");
  }
  return g;
}

inline Matrix form_matrix(const GroupDescriptor& g, const RingPtr& ring) {
  Matrix f = zero_matrix(ring, g.size);
  for (int i = 0; i < g.size; ++i)
    for (int j = 0; j < g.size; ++j)
      if (g.form[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0)
        f.at(i, j) = from_int(ring, g.form[static_cast<size_t>(i)][static_cast<size_t>(j)]);
  return f;
}

// x_delta(t) = I + t * e_delta (every e_delta squares to zero in these
// realizations; verified by tests)
inline Matrix root_element(const GroupDescriptor& g, int root_idx, const RingElement& t) {
  const RingPtr& W = t.ring;
  Matrix m = identity_matrix(W, g.size);
  for (const auto& p : g.realization[static_cast<size_t>(root_idx)]) {
    RingElement v = (p.s == 1) ? t : neg(t);
    m.at(p.r, p.c) = add(m.at(p.r, p.c), v);
  }
  return m;
}

inline bool membership(const GroupDescriptor& g, const Matrix& m) {
  if (m.n != g.size) return false;
  if (!equal(mat_det(m), one(m.ring))) return false;
  if (g.family == Family::Sp) {
    Matrix f = form_matrix(g, m.ring);
    Matrix lhs = mat_mul(mat_mul(mat_transpose(m), f), m);
    if (!mat_equal(lhs, f)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// torus weight decomposition

struct TorusWeightDatum {
  std::vector<IVec> cochars;                  // diagonal weight vectors, length = size
  std::map<IVec, std::vector<int>> graded;    // weight -> root indices with that weight
  int dim_zero = 0;                           // dimension of Lie(G)_0
  int dim_total = 0;
  std::vector<IVec> nonzero_weights;          // Phi(S, G), sorted
};

// S-weight of a root under the given diagonal cocharacters
inline IVec s_weight(const GroupDescriptor& g, const std::vector<IVec>& cochars, int root_idx) {
  const RootPos& p = g.realization[static_cast<size_t>(root_idx)][0];
  IVec w;
  w.reserve(cochars.size());
  for (const auto& cc : cochars)
    w.push_back(cc[static_cast<size_t>(p.r)] - cc[static_cast<size_t>(p.c)]);
  return w;
}

inline TorusWeightDatum weight_decomposition(const GroupDescriptor& g,
                                             const std::vector<IVec>& cochars) {
  TorusWeightDatum d;
  d.cochars = cochars;
  int rank_torus = (g.family == Family::SL) ? g.size - 1 : g.size / 2;
  d.dim_zero = rank_torus;
  d.dim_total = rank_torus;
  IVec zero_w(cochars.size(), 0);
  for (size_t r = 0; r < g.phi.roots.size(); ++r) {
    IVec w = s_weight(g, cochars, static_cast<int>(r));
    d.graded[w].push_back(static_cast<int>(r));
    ++d.dim_total;
    if (w == zero_w) ++d.dim_zero;
  }
  for (const auto& [w, v] : d.graded)
    if (w != zero_w) d.nonzero_weights.push_back(w);
  return d;
}

// ---------------------------------------------------------------------------
// block shapes induced by a torus

struct ShapeMask {
  int n = 0;
  std::vector<char> allow;  // row-major; 1 = entry may be nonzero
  bool proper = false;      // false when the induced parabolic is all of G

  bool allowed(int r, int c) const { return allow[static_cast<size_t>(r * n + c)] != 0; }
};

struct ParabolicShapes {
  ShapeMask p_plus, p_minus, levi, u_plus, u_minus;
};

namespace detail {
inline int lex_sign(const IVec& w) {
  for (int x : w) {
    if (x > 0) return 1;
    if (x < 0) return -1;
  }
  return 0;
}
}  // namespace detail

inline ParabolicShapes parabolic_from_torus(const GroupDescriptor& g,
                                            const std::vector<IVec>& cochars) {
  ParabolicShapes out;
  int n = g.size;
  auto init = [&](ShapeMask& m) {
    m.n = n;
    m.allow.assign(static_cast<size_t>(n) * n, 0);
  };
  init(out.p_plus);
  init(out.p_minus);
  init(out.levi);
  init(out.u_plus);
  init(out.u_minus);
  bool any_nonzero = false;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      IVec w;
      w.reserve(cochars.size());
      for (const auto& cc : cochars)
        w.push_back(cc[static_cast<size_t>(a)] - cc[static_cast<size_t>(b)]);
      int s = detail::lex_sign(w);
      if (a != b && s != 0) any_nonzero = true;
      size_t idx = static_cast<size_t>(a * n + b);
      if (s >= 0) out.p_plus.allow[idx] = 1;
      if (s <= 0) out.p_minus.allow[idx] = 1;
      if (s == 0) out.levi.allow[idx] = 1;
      if (s > 0 || a == b) out.u_plus.allow[idx] = 1;
      if (s < 0 || a == b) out.u_minus.allow[idx] = 1;
    }
  out.p_plus.proper = out.p_minus.proper = out.levi.proper = out.u_plus.proper =
      out.u_minus.proper = any_nonzero;
  return out;
}

// block-triangular membership: zero outside the mask
inline bool shape_membership(const ShapeMask& mask, const Matrix& m) {
  if (m.n != mask.n) return false;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      if (!mask.allowed(i, j) && !is_zero(m.at(i, j))) return false;
  return true;
}

// unipotent shape: identity diagonal plus the strict mask pattern
inline bool unipotent_shape_membership(const ShapeMask& mask, const Matrix& m) {
  if (m.n != mask.n) return false;
  for (int i = 0; i < m.n; ++i) {
    if (!equal(m.at(i, i), one(m.ring))) return false;
    for (int j = 0; j < m.n; ++j) {
      if (i == j) continue;
      if (!mask.allowed(i, j) && !is_zero(m.at(i, j))) return false;
    }
  }
  return true;
}

}  // namespace relchev

// Relative root subschemes X_alpha for a split matrix group with a chosen
// parabolic: evaluation of words, coordinate extraction inverse to the
// product parametrization, and machine derivation of the structure maps
// q^i_alpha, N_{alpha beta i j}, and phi^i_{g,alpha} by symbolic computation
// over polynomial towers.
#pragma once

#include "relchev/chevalley.hpp"

#include <functional>

namespace relchev {

// ---------------------------------------------------------------------------
// polynomial maps between coordinate modules (exact coefficient tables)

struct PolyTerm {
  IVec exps;       // exponent per variable
  RingElement c;   // coefficient (usually rational)
};

struct PolyMapFun {
  int nvars = 0;
  std::vector<std::vector<PolyTerm>> comps;  // one polynomial per target coordinate

  bool empty_map() const {
    for (const auto& comp : comps)
      if (!comp.empty()) return false;
    return true;
  }
};

inline std::vector<RingElement> evaluate(const PolyMapFun& f, const std::vector<RingElement>& args,
                                         const RingPtr& W) {
  if (static_cast<int>(args.size()) != f.nvars)
    fail(RingError::Code::RankMismatch, "evaluate: wrong argument count");
  std::vector<RingElement> out;
  out.reserve(f.comps.size());
  for (const auto& comp : f.comps) {
    RingElement acc = zero(W);
    for (const auto& term : comp) {
      auto c = try_convert(term.c, W);
      if (!c) fail(RingError::Code::RingMismatch, "evaluate: coefficient not convertible");
      RingElement t = *c;
      for (size_t i = 0; i < term.exps.size(); ++i)
        for (int e = 0; e < term.exps[i]; ++e) t = mul(t, args[i]);
      acc = add(acc, t);
    }
    out.push_back(acc);
  }
  return out;
}

// ---------------------------------------------------------------------------
// symbolic towers: nested univariate polynomial rings for multivariate work

struct PolyTower {
  RingPtr base;                     // coefficient ring at the bottom
  RingPtr top;                      // outermost ring
  std::vector<RingPtr> levels;      // levels[i] = ring with variable i outermost
  std::vector<RingElement> vars;    // each variable as an element of `top`
};

inline PolyTower make_tower(const RingPtr& base, int nvars) {
  PolyTower t;
  t.base = base;
  RingPtr cur = base;
  for (int i = 0; i < nvars; ++i) {
    cur = polynomials(cur, "x" + std::to_string(i));
    t.levels.push_back(cur);
  }
  t.top = cur;
  for (int i = 0; i < nvars; ++i) {
    RingElement v = var_elem(t.levels[static_cast<size_t>(i)]);
    t.vars.push_back(embed(v, t.top));
  }
  return t;
}

namespace detail {

inline void collect_rec(const RingElement& x, int depth, IVec& exps,
                        std::vector<PolyTerm>& out) {
  if (depth < 0) {
    if (!is_zero(x)) out.push_back({exps, x});
    return;
  }
  if (x.ring->kind != RingKind::Polynomials)
    fail(RingError::Code::Internal, "collect: tower structure mismatch");
  const auto& cs = std::get<PolyPayload>(x.v).coeffs;
  for (size_t d = 0; d < cs.size(); ++d) {
    exps[static_cast<size_t>(depth)] = static_cast<int>(d);
    collect_rec(cs[d], depth - 1, exps, out);
  }
  exps[static_cast<size_t>(depth)] = 0;
}

}  // namespace detail

// monomial expansion of an element of tower.top, exponents indexed by variable
inline std::vector<PolyTerm> collect_monomials(const PolyTower& t, const RingElement& x) {
  std::vector<PolyTerm> out;
  IVec exps(t.vars.size(), 0);
  detail::collect_rec(x, static_cast<int>(t.vars.size()) - 1, exps, out);
  std::sort(out.begin(), out.end(),
            [](const PolyTerm& a, const PolyTerm& b) { return a.exps < b.exps; });
  return out;
}

// ---------------------------------------------------------------------------
// relative group context

struct RelLetter {
  int alpha = 0;                 // index into datum.rel_roots
  std::vector<RingElement> u;    // coefficient vector, length = rank V_alpha
};
using RelWord = std::vector<RelLetter>;

struct RelGroupContext {
  GroupDescriptor G;
  RelativeRootDatum datum;
  std::vector<IVec> cochars;                      // diagonal S realizing the datum
  ParabolicShapes shapes;
  std::vector<std::vector<std::vector<int>>> fibers;  // [rel idx][i-1] = source root indices
  std::vector<int> max_multiple;                  // per rel idx: largest i with i*alpha in Phi_P

  int rel_count() const { return static_cast<int>(datum.rel_roots.size()); }
  const IVec& rel_root(int a) const { return datum.rel_roots[static_cast<size_t>(a)]; }
  int fiber_rank(int a) const { return static_cast<int>(fibers[static_cast<size_t>(a)][0].size()); }
  int rel_height(int a) const {
    const IVec& v = rel_root(a);
    return std::accumulate(v.begin(), v.end(), 0);
  }
  // index of i*alpha in Phi_P, or -1
  int multiple_index(int a, int i) const {
    IVec v = rel_root(a);
    for (auto& x : v) x *= i;
    return datum.rel_index_of(v);
  }
};

namespace detail {

inline std::vector<IVec> solve_cochars(const GroupDescriptor& g, const RelativeRootDatum& d) {
  std::vector<IVec> out;
  int n = g.size;
  int rank = static_cast<int>(d.source.simple.size());
  for (int k = 0; k < d.rel_rank; ++k) {
    // target weight of simple root i under cocharacter k
    auto target = [&](int i) {
      return d.projected[static_cast<size_t>(d.source.simple[static_cast<size_t>(i)])]
                        [static_cast<size_t>(k)];
    };
    IVec w(static_cast<size_t>(n), 0);
    if (g.family == Family::SL) {
      // w_i - w_{i+1} = target(i), normalize w_{n-1} = 0
      for (int i = n - 2; i >= 0; --i)
        w[static_cast<size_t>(i)] = w[static_cast<size_t>(i + 1)] + target(i);
    } else {
      int half = n / 2;
      std::vector<int> u(static_cast<size_t>(half), 0);
      int c_long = target(rank - 1);
      if (c_long % 2 != 0)
        fail(RingError::Code::UnsupportedType,
             "context: torus weights not integral for this (group, J)");
      u[static_cast<size_t>(half - 1)] = c_long / 2;
      for (int i = half - 2; i >= 0; --i)
        u[static_cast<size_t>(i)] = u[static_cast<size_t>(i + 1)] + target(i);
      for (int a = 0; a < half; ++a) {
        w[static_cast<size_t>(a)] = u[static_cast<size_t>(a)];
        w[static_cast<size_t>(n - 1 - a)] = -u[static_cast<size_t>(a)];
      }
    }
    out.push_back(w);
  }
  return out;
}

}  // namespace detail

inline RelGroupContext make_context(const GroupDescriptor& G, const std::vector<int>& J) {
  RelGroupContext ctx;
  ctx.G = G;
  ctx.datum = relative_projection(G.phi, J, {});
  if (ctx.datum.rel_roots.empty())
    fail(RingError::Code::NonProperParabolic, "context: empty relative root system");
  ctx.cochars = detail::solve_cochars(G, ctx.datum);
  // consistency: S-weight of every root equals its projection
  for (size_t r = 0; r < G.phi.roots.size(); ++r) {
    IVec sw = s_weight(G, ctx.cochars, static_cast<int>(r));
    if (sw != ctx.datum.projected[r])
      fail(RingError::Code::Internal, "context: torus weights disagree with projection");
  }
  ctx.shapes = parabolic_from_torus(G, ctx.cochars);
  if (!ctx.shapes.p_plus.proper)
    fail(RingError::Code::NonProperParabolic, "context: induced parabolic is not proper");
  ctx.fibers.resize(ctx.datum.rel_roots.size());
  ctx.max_multiple.resize(ctx.datum.rel_roots.size(), 1);
  for (size_t a = 0; a < ctx.datum.rel_roots.size(); ++a) {
    int maxi = 1;
    for (int i = 2; i <= 4; ++i) {
      IVec v = ctx.datum.rel_roots[a];
      for (auto& x : v) x *= i;
      if (ctx.datum.rel_index_of(v) >= 0) maxi = i;
    }
    ctx.max_multiple[a] = maxi;
    for (int i = 1; i <= maxi; ++i)
      ctx.fibers[a].push_back(fiber(ctx.datum, ctx.datum.rel_roots[a], i));
  }
  return ctx;
}

// ---------------------------------------------------------------------------
// word evaluation

// X_alpha(u): fixed-order product of x_delta(u_delta) over the fiber of alpha
inline Matrix X_alpha(const RelGroupContext& ctx, int a, const std::vector<RingElement>& u,
                      const RingPtr& W) {
  if (a < 0 || a >= ctx.rel_count())
    fail(RingError::Code::NotARelativeRoot, "X_alpha: bad relative root index");
  const auto& fib = ctx.fibers[static_cast<size_t>(a)][0];
  if (u.size() != fib.size()) fail(RingError::Code::RankMismatch, "X_alpha: wrong rank");
  Matrix m = identity_matrix(W, ctx.G.size);
  for (size_t i = 0; i < fib.size(); ++i) {
    auto c = try_convert(u[i], W);
    if (!c) fail(RingError::Code::RingMismatch, "X_alpha: coefficient not convertible");
    m = mat_mul(m, root_element(ctx.G, fib[i], *c));
  }
  return m;
}

inline Matrix ep_eval(const RelGroupContext& ctx, const RelWord& w, const RingPtr& W) {
  Matrix m = identity_matrix(W, ctx.G.size);
  for (const auto& letter : w) m = mat_mul(m, X_alpha(ctx, letter.alpha, letter.u, W));
  return m;
}

inline std::string ep_generator_summary(const RelGroupContext& ctx) {
  std::ostringstream os;
  os << "E_P generated by X_alpha(V_alpha) for " << ctx.rel_count()
     << " relative roots; ranks:";
  for (int a = 0; a < ctx.rel_count(); ++a) os << " " << ctx.fiber_rank(a);
  return os.str();
}

// ---------------------------------------------------------------------------
// coordinate extraction (inverse of the product parametrization X_Psi)

namespace detail {

// true when target is a sum of >= min_parts elements of gens (with repetition)
inline bool sum_expressible(const IVec& target, const std::vector<IVec>& gens, size_t idx,
                            int parts, int min_parts, int budget) {
  bool zero = std::all_of(target.begin(), target.end(), [](int x) { return x == 0; });
  if (zero && parts >= min_parts) return true;
  if (idx >= gens.size() || budget <= 0) return false;
  // skip
  if (sum_expressible(target, gens, idx + 1, parts, min_parts, budget)) return true;
  // take one copy and stay
  IVec rest = target;
  for (size_t k = 0; k < rest.size(); ++k) rest[k] -= gens[idx][k];
  return sum_expressible(rest, gens, idx, parts + 1, min_parts, budget - 1);
}

}  // namespace detail

// Peels g in U_Psi into its unique fixed-order coordinates. Psi is a list of
// relative root indices; roots are read in semigroup-minimal order (for
// uniform-sign Psi this is ascending |height|), which keeps every read
// linear in the designated matrix entries.
inline RelWord extract_coordinates(const RelGroupContext& ctx, std::vector<int> psi,
                                   const Matrix& g) {
  std::sort(psi.begin(), psi.end());
  psi.erase(std::unique(psi.begin(), psi.end()), psi.end());
  const RingPtr& W = g.ring;
  Matrix r = g;
  RelWord out;
  std::vector<int> remaining = psi;
  while (!remaining.empty()) {
    std::vector<IVec> gens;
    gens.reserve(remaining.size());
    for (int a : remaining) gens.push_back(ctx.rel_root(a));
    std::vector<int> minimal;
    for (int a : remaining)
      if (!detail::sum_expressible(ctx.rel_root(a), gens, 0, 0, 2, 12)) minimal.push_back(a);
    if (minimal.empty())
      fail(RingError::Code::Internal, "extract: no semigroup-minimal root (unsupported Psi)");
    for (int a : minimal) {
      const auto& fib = ctx.fibers[static_cast<size_t>(a)][0];
      std::vector<RingElement> u;
      u.reserve(fib.size());
      for (int delta : fib) {
        const RootPos& p = ctx.G.realization[static_cast<size_t>(delta)][0];
        RingElement e = r.at(p.r, p.c);
        u.push_back(p.s == 1 ? e : neg(e));
      }
      r = mat_mul(mat_inverse(X_alpha(ctx, a, u, W)), r);
      out.push_back({a, u});
    }
    std::vector<int> next;
    for (int a : remaining)
      if (std::find(minimal.begin(), minimal.end(), a) == minimal.end()) next.push_back(a);
    remaining = next;
  }
  if (!mat_is_identity(r))
    fail(RingError::Code::NotInUnipotent, "extract: residue after peeling is not the identity");
  return out;
}

// ---------------------------------------------------------------------------
// derived structure maps

// q^i_alpha for i >= 2, from X_alpha(v) X_alpha(w) = X_alpha(v+w) prod X_{i alpha}(q^i)
inline std::map<int, PolyMapFun> derive_q(const RelGroupContext& ctx, int a) {
  int k = ctx.fiber_rank(a);
  PolyTower t = make_tower(rationals(), 2 * k);
  std::vector<RingElement> v(t.vars.begin(), t.vars.begin() + k);
  std::vector<RingElement> w(t.vars.begin() + k, t.vars.end());
  std::vector<RingElement> vw;
  for (int i = 0; i < k; ++i) vw.push_back(add(v[static_cast<size_t>(i)], w[static_cast<size_t>(i)]));
  Matrix prod = mat_mul(X_alpha(ctx, a, v, t.top), X_alpha(ctx, a, w, t.top));
  Matrix rest = mat_mul(mat_inverse(X_alpha(ctx, a, vw, t.top)), prod);
  std::vector<int> psi;
  for (int i = 2; i <= ctx.max_multiple[static_cast<size_t>(a)]; ++i)
    psi.push_back(ctx.multiple_index(a, i));
  std::map<int, PolyMapFun> out;
  if (psi.empty()) {
    if (!mat_is_identity(rest))
      fail(RingError::Code::Internal, "derive_q: nontrivial rest without multiples");
    return out;
  }
  RelWord coords = extract_coordinates(ctx, psi, rest);
  for (const auto& letter : coords) {
    int i = 0;
    for (int m = 2; m <= ctx.max_multiple[static_cast<size_t>(a)]; ++m)
      if (ctx.multiple_index(a, m) == letter.alpha) i = m;
    PolyMapFun f;
    f.nvars = 2 * k;
    for (const auto& c : letter.u) {
      auto terms = collect_monomials(t, c);
      for (const auto& term : terms) {
        int deg = std::accumulate(term.exps.begin(), term.exps.end(), 0);
        if (deg != i) fail(RingError::Code::Internal, "derive_q: non-homogeneous table");
      }
      f.comps.push_back(terms);
    }
    out[i] = std::move(f);
  }
  return out;
}

// true when alpha and beta lie on opposite rays (m*alpha == -k*beta)
inline bool opposite_ray(const IVec& alpha, const IVec& beta) {
  long cross_ok = true;
  for (size_t i = 0; i < alpha.size() && cross_ok; ++i)
    for (size_t j = 0; j < alpha.size() && cross_ok; ++j)
      if (static_cast<long>(alpha[i]) * beta[j] != static_cast<long>(alpha[j]) * beta[i])
        cross_ok = false;
  if (!cross_ok) return false;
  long dot = 0, na = 0;
  for (size_t i = 0; i < alpha.size(); ++i) {
    dot += static_cast<long>(alpha[i]) * beta[i];
    na += static_cast<long>(alpha[i]) * alpha[i];
  }
  (void)na;
  return dot < 0;
}

inline bool same_ray(const IVec& alpha, const IVec& beta) {
  for (size_t i = 0; i < alpha.size(); ++i)
    for (size_t j = 0; j < alpha.size(); ++j)
      if (static_cast<long>(alpha[i]) * beta[j] != static_cast<long>(alpha[j]) * beta[i])
        return false;
  long dot = 0;
  for (size_t i = 0; i < alpha.size(); ++i) dot += static_cast<long>(alpha[i]) * beta[i];
  return dot > 0;
}

// N_{alpha beta i j} from the generalized Chevalley commutator formula
inline std::map<std::pair<int, int>, PolyMapFun> derive_N(const RelGroupContext& ctx, int a,
                                                          int b) {
  const IVec& alpha = ctx.rel_root(a);
  const IVec& beta = ctx.rel_root(b);
  if (opposite_ray(alpha, beta))
    fail(RingError::Code::OppositeRay, "derive_N: roots on opposite rays");
  int ka = ctx.fiber_rank(a), kb = ctx.fiber_rank(b);
  PolyTower t = make_tower(rationals(), ka + kb);
  std::vector<RingElement> u(t.vars.begin(), t.vars.begin() + ka);
  std::vector<RingElement> v(t.vars.begin() + ka, t.vars.end());
  Matrix xa = X_alpha(ctx, a, u, t.top);
  Matrix xb = X_alpha(ctx, b, v, t.top);
  Matrix comm = mat_mul(mat_mul(xa, xb), mat_mul(mat_inverse(xa), mat_inverse(xb)));
  std::map<std::pair<int, int>, PolyMapFun> out;
  if (same_ray(alpha, beta)) {
    // same-ray pairs (e.g. alpha and 2*alpha) commute in these realizations
    if (!mat_is_identity(comm))
      fail(RingError::Code::Internal, "derive_N: same-ray pair does not commute");
    return out;
  }
  // closed set {i*alpha + j*beta} inside Phi_P
  std::map<int, std::pair<int, int>> which;  // rel index -> (i, j)
  std::vector<int> psi;
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      IVec s(alpha.size());
      for (size_t k = 0; k < s.size(); ++k) s[k] = i * alpha[k] + j * beta[k];
      int idx = ctx.datum.rel_index_of(s);
      if (idx >= 0 && !which.count(idx)) {
        which[idx] = {i, j};
        psi.push_back(idx);
      }
    }
  if (psi.empty()) {
    if (!mat_is_identity(comm))
      fail(RingError::Code::Internal, "derive_N: nontrivial commutator with empty closed set");
    return out;
  }
  RelWord coords = extract_coordinates(ctx, psi, comm);
  for (const auto& letter : coords) {
    auto [i, j] = which.at(letter.alpha);
    PolyMapFun f;
    f.nvars = ka + kb;
    for (const auto& c : letter.u) {
      auto terms = collect_monomials(t, c);
      for (const auto& term : terms) {
        int du = 0, dv = 0;
        for (int x = 0; x < ka; ++x) du += term.exps[static_cast<size_t>(x)];
        for (int x = ka; x < ka + kb; ++x) dv += term.exps[static_cast<size_t>(x)];
        if (du != i || dv != j)
          fail(RingError::Code::Internal, "derive_N: table not bihomogeneous");
      }
      f.comps.push_back(terms);
    }
    out[{i, j}] = std::move(f);
  }
  return out;
}

// phi^i_{g,alpha} for g in the Levi: g X_alpha(v) g^{-1} = prod X_{i alpha}(phi^i(v))
inline std::map<int, PolyMapFun> conj_phi(const RelGroupContext& ctx, const Matrix& g, int a) {
  if (!shape_membership(ctx.shapes.levi, g))
    fail(RingError::Code::NotInLevi, "conj_phi: g not in the Levi block shape");
  int k = ctx.fiber_rank(a);
  PolyTower t = make_tower(g.ring, k);
  Matrix gt = mat_convert(g, t.top);
  Matrix m = mat_mul(mat_mul(gt, X_alpha(ctx, a, t.vars, t.top)), mat_inverse(gt));
  std::vector<int> psi;
  for (int i = 1; i <= ctx.max_multiple[static_cast<size_t>(a)]; ++i)
    psi.push_back(ctx.multiple_index(a, i));
  RelWord coords = extract_coordinates(ctx, psi, m);
  std::map<int, PolyMapFun> out;
  for (const auto& letter : coords) {
    int i = 0;
    for (int mm = 1; mm <= ctx.max_multiple[static_cast<size_t>(a)]; ++mm)
      if (ctx.multiple_index(a, mm) == letter.alpha) i = mm;
    PolyMapFun f;
    f.nvars = k;
    for (const auto& c : letter.u) f.comps.push_back(collect_monomials(t, c));
    out[i] = std::move(f);
  }
  return out;
}

// ---------------------------------------------------------------------------
// symbolic S-equivariance: s X_alpha(u) s^{-1} == X_alpha(alpha(s) u)

inline bool check_s_equivariance(const RelGroupContext& ctx, int a) {
  int k = ctx.fiber_rank(a);
  int r = ctx.datum.rel_rank;
  // tower: Q -> poly u_0..u_{k-1} -> laurent Z_0..Z_{r-1}
  RingPtr cur = rationals();
  std::vector<RingPtr> polys;
  for (int i = 0; i < k; ++i) {
    cur = polynomials(cur, "u" + std::to_string(i));
    polys.push_back(cur);
  }
  std::vector<RingPtr> laurents;
  for (int i = 0; i < r; ++i) {
    cur = laurent_polynomials(cur, "Z" + std::to_string(i));
    laurents.push_back(cur);
  }
  RingPtr W = cur;
  std::vector<RingElement> u;
  for (int i = 0; i < k; ++i) u.push_back(embed(var_elem(polys[static_cast<size_t>(i)]), W));
  auto torus_monomial = [&](const IVec& exps) {
    RingElement acc = one(W);
    for (int i = 0; i < r; ++i) {
      RingElement z = embed(laurent_monomial(laurents[static_cast<size_t>(i)],
                                             exps[static_cast<size_t>(i)]),
                            W);
      acc = mul(acc, z);
    }
    return acc;
  };
  // s = diag(prod_k Z_k^{cochar_k[a]})
  Matrix s = zero_matrix(W, ctx.G.size), sinv = zero_matrix(W, ctx.G.size);
  for (int d = 0; d < ctx.G.size; ++d) {
    IVec e(static_cast<size_t>(r), 0), en(static_cast<size_t>(r), 0);
    for (int i = 0; i < r; ++i) {
      e[static_cast<size_t>(i)] = ctx.cochars[static_cast<size_t>(i)][static_cast<size_t>(d)];
      en[static_cast<size_t>(i)] = -e[static_cast<size_t>(i)];
    }
    s.at(d, d) = torus_monomial(e);
    sinv.at(d, d) = torus_monomial(en);
  }
  Matrix lhs = mat_mul(mat_mul(s, X_alpha(ctx, a, u, W)), sinv);
  RingElement scale = torus_monomial(ctx.rel_root(a));
  std::vector<RingElement> su;
  for (const auto& ui : u) su.push_back(mul(scale, ui));
  Matrix rhs = X_alpha(ctx, a, su, W);
  return mat_equal(lhs, rhs);
}

}  // namespace relchev

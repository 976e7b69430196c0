#include "torgamma/fan.hpp"

#include <algorithm>
#include <set>

namespace torgamma {

namespace {

// primitive integer vector proportional to a rational one (sign preserved)
IVec primitive(const QVec& q) {
  Int l = 1;
  for (const auto& x : q) l = int_lcm(l, rat_den(x));
  IVec v(q.size());
  Int g = 0;
  for (size_t i = 0; i < q.size(); ++i) {
    v[i] = rat_num(q[i]) * (l / rat_den(q[i]));
    g = int_gcd(g, v[i]);
  }
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

bool contains_all(const std::vector<int>& big, const std::vector<int>& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// exact feasibility of {rows · mu >= 1} by Fourier-Motzkin; returns a point
// or nullopt.  Each row is (a_1..a_m | rhs) meaning sum a_i mu_i >= rhs.
std::optional<QVec> fourier_motzkin(std::vector<QVec> rows, int nvars) {
  if (nvars == 0) {
    for (auto& r : rows)
      if (r.back() > 0) return std::nullopt;
    return QVec{};
  }
  std::vector<std::vector<QVec>> systems(nvars + 1);
  systems[nvars] = std::move(rows);
  for (int v = nvars; v > 0; --v) {
    const int x = v - 1;  // eliminate variable x
    std::vector<QVec> pos, neg, rest;
    for (auto& r : systems[v]) {
      if (r[x] > 0) pos.push_back(r);
      else if (r[x] < 0) neg.push_back(r);
      else rest.push_back(r);
    }
    for (const auto& p : pos)
      for (const auto& n : neg) {
        // p: a·mu_x + ... >= c (a>0)  ->  mu_x >= (c - ...)/a
        // n: b·mu_x + ... >= d (b<0)  ->  mu_x <= (d - ...)/b
        QVec comb(static_cast<size_t>(nvars) + 1, Rational(0));
        for (int j = 0; j <= nvars; ++j)
          comb[j] = p[j] * (-n[x]) + n[j] * p[x];
        rest.push_back(std::move(comb));
      }
    for (auto& r : rest) r[x] = 0;
    systems[v - 1] = std::move(rest);
  }
  for (const auto& r : systems[0])
    if (r.back() > 0) return std::nullopt;
  // back-substitute: choose each variable inside its interval
  QVec mu(nvars, Rational(0));
  for (int v = 1; v <= nvars; ++v) {
    const int x = v - 1;
    std::optional<Rational> lo, hi;
    for (const auto& r : systems[v]) {
      Rational rest = r.back();
      for (int j = 0; j < x; ++j) rest -= r[j] * mu[j];
      if (r[x] > 0) {
        Rational bound = rest / r[x];
        if (!lo || bound > *lo) lo = bound;
      } else if (r[x] < 0) {
        Rational bound = rest / r[x];
        if (!hi || bound < *hi) hi = bound;
      } else if (rest > 0) {
        return std::nullopt;  // should not happen after elimination
      }
    }
    if (lo && hi) mu[x] = (*lo + *hi) / 2;
    else if (lo) mu[x] = *lo + 1;
    else if (hi) mu[x] = *hi - 1;
  }
  return mu;
}

}  // namespace

std::shared_ptr<Fan> make_fan(FanData d) { return std::make_shared<Fan>(std::move(d)); }

Fan::Fan(FanData d) : data_(std::move(d)) {
  validate_and_analyze();
  find_or_check_weights();
  compute_box();
}

void Fan::validate_and_analyze() {
  const int r = data_.rank;
  const int n = npoints();
  if (r < 0) throw ToricError("BadInput", "negative rank");
  if (r == 0) {
    // internal degenerate case: the quotient of a top-dimensional sector
    if (n != 0 || data_.max_simplices != std::vector<std::vector<int>>{{}})
      throw ToricError("BadInput", "rank-0 fan must be trivial");
    all_simplices_ = {{}};
    interior_ = {{}};
    return;
  }
  if (n == 0) throw ToricError("BadInput", "no points");
  for (const auto& p : data_.points)
    if (static_cast<int>(p.size()) != r)
      throw ToricError("BadInput", "point dimension != rank");
  if (data_.max_simplices.empty()) throw ToricError("BadInput", "no maximal simplices");
  for (auto& J : data_.max_simplices) {
    if (static_cast<int>(J.size()) != r)
      throw ToricError("NonSimplicial", "maximal simplex size != rank");
    if (!std::is_sorted(J.begin(), J.end()) ||
        std::adjacent_find(J.begin(), J.end()) != J.end())
      throw ToricError("BadInput", "simplex indices must be strictly increasing");
    for (int i : J)
      if (i < 0 || i >= n) throw ToricError("BadInput", "simplex index out of range");
    IMat m;
    for (int i : J) m.push_back(data_.points[i]);
    if (det_int(m) == 0)
      throw ToricError("NonSimplicial", "degenerate maximal simplex");
  }
  {
    std::set<std::vector<int>> seen(data_.max_simplices.begin(), data_.max_simplices.end());
    if (seen.size() != data_.max_simplices.size())
      throw ToricError("BadInput", "duplicate maximal simplex");
  }

  // all faces of the complex
  std::set<std::vector<int>> faces;
  for (const auto& J : data_.max_simplices) {
    const size_t m = J.size();
    for (size_t mask = 0; mask < (size_t(1) << m); ++mask) {
      std::vector<int> f;
      for (size_t b = 0; b < m; ++b)
        if (mask & (size_t(1) << b)) f.push_back(J[b]);
      faces.insert(std::move(f));
    }
  }
  all_simplices_.assign(faces.begin(), faces.end());
  std::sort(all_simplices_.begin(), all_simplices_.end(),
            [](const auto& a, const auto& b) {
              return a.size() != b.size() ? a.size() < b.size() : a < b;
            });

  // wall pass: every codim-1 face of a maximal cone is either a boundary wall
  // (no point strictly on its negative side) or shared by exactly two maximal
  // cones lying on opposite sides.
  std::set<IVec> facet_set;
  for (const auto& J : data_.max_simplices) {
    auto duals = dual_covectors(J);
    for (int p : J) {
      std::vector<int> W;
      for (int i : J)
        if (i != p) W.push_back(i);
      const QVec& h = duals.at(p);  // vanishes on W, positive on v_p
      bool negative_side = false;
      for (int j = 0; j < npoints(); ++j)
        if (dot(h, data_.points[j]) < 0) negative_side = true;
      if (!negative_side) {
        facet_set.insert(primitive(h));  // supporting facet of C
        continue;
      }
      int sharers = 0;
      for (const auto& J2 : data_.max_simplices) {
        if (J2 == J || !contains_all(J2, W)) continue;
        ++sharers;
        int q = -1;
        for (int i : J2)
          if (std::find(W.begin(), W.end(), i) == W.end()) q = i;
        if (dot(h, data_.points[q]) >= 0)
          throw ToricError("NotCovering",
                           "adjacent cones on the same side of a wall");
      }
      if (sharers != 1)
        throw ToricError("NotCovering", "interior wall shared by " +
                                            std::to_string(sharers + 1) +
                                            " maximal cones");
    }
  }
  facet_normals_.assign(facet_set.begin(), facet_set.end());

  // multiplicity pass: a point strictly inside the first maximal cone must lie
  // in exactly one maximal cone; catches double covers whose sheets present
  // only boundary walls to the wall pass (possible with repeated points)
  if (rank() > 0) {
    QVec g(rank(), Rational(0));
    Rational w(1);
    for (int i : data_.max_simplices.front()) {
      for (int k = 0; k < rank(); ++k) g[k] += w * Rational(data_.points[i][k]);
      w += 1;
    }
    int hits = 0;
    for (const auto& J : data_.max_simplices) {
      auto duals = dual_covectors(J);
      bool inside = true;
      for (int i : J)
        if (dot(duals.at(i), g) < 0) inside = false;
      if (inside) ++hits;
    }
    if (hits != 1)
      throw ToricError("NotCovering",
                       "maximal cones cover an interior point " +
                           std::to_string(hits) + " times");
  }

  // every point must lie in the cone of some maximal simplex
  for (int j = 0; j < npoints(); ++j) {
    bool covered = false;
    for (const auto& J : data_.max_simplices) {
      auto duals = dual_covectors(J);
      bool inside = true;
      for (int i : J)
        if (dot(duals.at(i), data_.points[j]) < 0) inside = false;
      if (inside) {
        covered = true;
        break;
      }
    }
    if (!covered)
      throw ToricError("NotCovering", "point " + std::to_string(j + 1) +
                                          " outside the triangulated cone");
  }

  // interior simplices: faces not contained in any facet of C
  for (const auto& I : all_simplices_) {
    bool interior = true;
    for (const auto& h : facet_normals_) {
      bool on_facet = true;
      for (int i : I)
        if (dot(to_qvec(h), data_.points[i]) != 0) on_facet = false;
      if (on_facet) {
        interior = false;
        break;
      }
    }
    if (interior) interior_.push_back(I);
  }

  // Gorenstein degree: the covector with <m, v_i> = 1 for all i, if integral
  {
    QMat a = to_qmat(IMat(data_.points.begin(), data_.points.end()));
    QVec b(n, Rational(1));
    auto m = solve_qmat(a, b);
    if (m) {
      bool ok = true;
      for (int j = 0; j < npoints(); ++j)
        if (dot(*m, data_.points[j]) != 1) ok = false;
      for (const auto& x : *m)
        if (!is_integer(x)) ok = false;
      if (ok) {
        IVec mi(m->size());
        for (size_t i = 0; i < m->size(); ++i) mi[i] = rat_num((*m)[i]);
        m_deg_ = std::move(mi);
      }
    }
  }
}

void Fan::find_or_check_weights() {
  if (rank() == 0) return;
  // strict convexity constraints, normalized to "expr >= 1" (homogeneous):
  //   walls: mu_q - sum_i a_i mu_i where v_q = sum_{i in J} a_i v_i
  //   non-ray points: same expression for v_j inside any containing cone
  std::vector<QVec> rows;
  const int n = npoints();
  auto add_constraint = [&](const std::vector<int>& J, int q) {
    QMat a;  // solve v_q = sum a_i v_i over i in J
    for (int c = 0; c < rank(); ++c) {
      QVec row;
      for (int i : J) row.push_back(Rational(data_.points[i][c]));
      a.push_back(std::move(row));
    }
    QVec b = to_qvec(data_.points[q]);
    auto sol = solve_qmat(a, b);
    if (!sol) throw ToricError("Internal", "barycentric solve failed");
    QVec row(static_cast<size_t>(n) + 1, Rational(0));
    row[q] += 1;
    for (size_t k = 0; k < J.size(); ++k) row[J[k]] -= (*sol)[k];
    row[n] = 1;  // rhs: strict inequality, scaled
    rows.push_back(std::move(row));
  };

  // wall constraints
  std::set<std::pair<std::vector<int>, int>> done;
  for (const auto& J : data_.max_simplices) {
    auto duals = dual_covectors(J);
    for (int p : J) {
      std::vector<int> W;
      for (int i : J)
        if (i != p) W.push_back(i);
      const QVec& h = duals.at(p);
      for (const auto& J2 : data_.max_simplices) {
        if (J2 == J || !contains_all(J2, W)) continue;
        int q = -1;
        for (int i : J2)
          if (std::find(W.begin(), W.end(), i) == W.end()) q = i;
        if (dot(h, data_.points[q]) < 0 && done.insert({J, q}).second)
          add_constraint(J, q);
      }
    }
  }
  // strictness at points that are not rays of the triangulation
  std::set<int> rays;
  for (const auto& J : data_.max_simplices) rays.insert(J.begin(), J.end());
  for (int j = 0; j < n; ++j) {
    if (rays.count(j)) continue;
    for (const auto& J : data_.max_simplices) {
      auto duals = dual_covectors(J);
      bool inside = true;
      for (int i : J)
        if (dot(duals.at(i), data_.points[j]) < 0) inside = false;
      if (inside) add_constraint(J, j);
    }
  }

  if (data_.weights) {
    if (static_cast<int>(data_.weights->size()) != n)
      throw ToricError("BadInput", "weights length != number of points");
    for (const auto& row : rows) {
      Rational lhs = 0;
      for (int i = 0; i < n; ++i) lhs += row[i] * (*data_.weights)[i];
      if (lhs <= 0)
        throw ToricError("NotProjective", "weights do not certify convexity");
    }
    return;
  }
  auto mu = fourier_motzkin(rows, n);
  if (!mu) throw ToricError("NotProjective", "no strictly convex weights exist");
  data_.weights = std::move(*mu);
}

bool Fan::is_simplex(const std::vector<int>& I) const {
  return std::binary_search(
      all_simplices_.begin(), all_simplices_.end(), I,
      [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
      });
}

bool Fan::is_interior(const std::vector<int>& I) const {
  return std::find(interior_.begin(), interior_.end(), I) != interior_.end();
}

Int Fan::simplex_volume(const std::vector<int>& I) const {
  if (I.empty()) return 1;
  IMat a(rank());  // columns v_i, i in I
  for (int c = 0; c < rank(); ++c) {
    a[c].resize(I.size());
    for (size_t k = 0; k < I.size(); ++k) a[c][k] = data_.points[I[k]][c];
  }
  Smith sm = smith_form(a);
  if (sm.diag.size() != I.size())
    throw ToricError("NonSimplicial", "dependent points in simplex");
  Int vol = 1;
  for (const auto& d : sm.diag) vol *= d;
  return vol;
}

std::map<int, QVec> Fan::dual_covectors(const std::vector<int>& J) const {
  QMat m;  // rows v_j
  for (int j : J) m.push_back(to_qvec(data_.points[j]));
  QMat inv = inverse_qmat(m);
  std::map<int, QVec> out;
  for (size_t k = 0; k < J.size(); ++k) {
    QVec u(rank());
    for (int c = 0; c < rank(); ++c) u[c] = inv[c][k];
    out[J[k]] = std::move(u);
  }
  return out;
}

void Fan::compute_box() {
  if (rank() == 0) {
    box_.push_back(BoxElement{IVec{}, QVec{}, {}, 1});
    return;
  }
  std::map<IVec, BoxElement> seen;
  for (const auto& J : data_.max_simplices) {
    for (auto& bp : box_of(J)) {
      if (seen.count(bp.gamma)) continue;
      BoxElement e;
      e.gamma = bp.gamma;
      e.coords.assign(npoints(), Rational(0));
      Int ph = 1;
      for (size_t k = 0; k < J.size(); ++k) {
        e.coords[J[k]] = bp.coords_on[k];
        if (bp.coords_on[k] != 0) e.sigma.push_back(J[k]);
        ph = int_lcm(ph, rat_den(bp.coords_on[k]));
      }
      std::sort(e.sigma.begin(), e.sigma.end());
      e.phase_order = to_long(ph);
      seen.emplace(e.gamma, std::move(e));
    }
  }
  for (auto& [g, e] : seen) box_.push_back(std::move(e));
  // already sorted lexicographically via the map key
}

std::vector<Fan::BoxPoint> Fan::box_of(const std::vector<int>& J) const {
  const int r = rank();
  IMat a(r, IVec(J.size()));  // columns v_j
  for (int c = 0; c < r; ++c)
    for (size_t k = 0; k < J.size(); ++k) a[c][k] = data_.points[J[k]][c];
  Smith sm = smith_form(a);
  if (static_cast<int>(sm.diag.size()) != r)
    throw ToricError("NonSimplicial", "box of a degenerate simplex");
  QMat ainv = inverse_qmat(to_qmat(a));

  std::vector<BoxPoint> out;
  std::vector<Int> k(r, Int(0));
  while (true) {
    // class representative U·k, then normalize into the fundamental domain
    IVec rep(r, Int(0));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) rep[i] += sm.u[i][j] * k[j];
    QVec g = mat_apply(ainv, to_qvec(rep));
    IVec gamma = rep;
    QVec frac(g.size());
    for (size_t i = 0; i < g.size(); ++i) frac[i] = frac_part(g[i]);
    // gamma = rep - a·floor(g)
    for (int c = 0; c < r; ++c) {
      Int adj = 0;
      for (size_t i = 0; i < g.size(); ++i) adj += a[c][i] * rat_floor(g[i]);
      gamma[c] -= adj;
    }
    out.push_back(BoxPoint{std::move(gamma), std::move(frac)});
    // next multi-index
    int pos = r - 1;
    while (pos >= 0) {
      k[pos] += 1;
      if (k[pos] < sm.diag[pos]) break;
      k[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  Int vol = 1;
  for (const auto& d : sm.diag) vol *= d;
  if (Int(out.size()) != vol)
    throw ToricError("Internal", "box enumeration count mismatch");
  return out;
}

int Fan::box_index(const IVec& gamma) const {
  for (size_t i = 0; i < box_.size(); ++i)
    if (box_[i].gamma == gamma) return static_cast<int>(i);
  return -1;
}

std::vector<std::vector<int>> Fan::star(const std::vector<int>& sigma) const {
  std::vector<std::vector<int>> out;
  for (const auto& J : data_.max_simplices)
    if (contains_all(J, sigma)) out.push_back(J);
  return out;
}

QuotientFan Fan::star_quotient(const BoxElement& g) const {
  QuotientFan q;
  q.sigma = g.sigma;
  const int r = rank();
  const int s = static_cast<int>(g.sigma.size());

  if (s == 0) {
    q.box_order = 1;
    q.proj = identity_mat(r);
    std::set<int> rays;
    for (const auto& J : data_.max_simplices) rays.insert(J.begin(), J.end());
    q.ray_labels.assign(rays.begin(), rays.end());
  } else {
    IMat a(r, IVec(s));  // columns v_i, i in sigma
    for (int c = 0; c < r; ++c)
      for (int k = 0; k < s; ++k) a[c][k] = data_.points[g.sigma[k]][c];
    Smith sm = smith_form(a);
    if (static_cast<int>(sm.diag.size()) != s)
      throw ToricError("NonSimplicial", "degenerate sector support");
    q.box_order = 1;
    for (const auto& d : sm.diag) q.box_order *= d;
    // quotient coordinates: last r-s rows of U^{-1}
    q.proj.assign(r - s, IVec(r));
    for (int i = 0; i < r - s; ++i)
      for (int j = 0; j < r; ++j) q.proj[i][j] = sm.uinv[s + i][j];
    std::set<int> rays;
    for (const auto& J : star(g.sigma))
      for (int i : J)
        if (std::find(g.sigma.begin(), g.sigma.end(), i) == g.sigma.end()) rays.insert(i);
    q.ray_labels.assign(rays.begin(), rays.end());
  }

  FanData qd;
  qd.rank = r - s;
  for (int i : q.ray_labels) qd.points.push_back(mat_apply(q.proj, data_.points[i]));
  for (const auto& J : star(g.sigma)) {
    std::vector<int> img;
    for (int i : J)
      if (std::find(g.sigma.begin(), g.sigma.end(), i) == g.sigma.end())
        img.push_back(q.local_index(i));
    std::sort(img.begin(), img.end());
    qd.max_simplices.push_back(std::move(img));
  }
  std::sort(qd.max_simplices.begin(), qd.max_simplices.end());
  qd.max_simplices.erase(std::unique(qd.max_simplices.begin(), qd.max_simplices.end()),
                         qd.max_simplices.end());
  q.fan = make_fan(std::move(qd));
  return q;
}

int QuotientFan::local_index(int original) const {
  auto it = std::find(ray_labels.begin(), ray_labels.end(), original);
  return it == ray_labels.end() ? -1 : static_cast<int>(it - ray_labels.begin());
}

Int Fan::height(const IVec& p) const {
  if (!m_deg_) throw ToricError("NotGorenstein", "no degree covector <m, v_i> = 1");
  return dot(*m_deg_, p);
}

bool Fan::in_cone(const IVec& p) const {
  for (const auto& h : facet_normals_)
    if (dot(h, p) < 0) return false;
  // facet description is complete for a full-dimensional cone, but guard the
  // no-boundary case by construction: C is then all of N
  return true;
}

bool Fan::in_interior(const IVec& p) const {
  for (const auto& h : facet_normals_)
    if (dot(h, p) <= 0) return false;
  return true;
}

Int Fan::total_volume() const {
  Int v = 0;
  for (const auto& J : data_.max_simplices) v += simplex_volume(J);
  return v;
}

}  // namespace torgamma

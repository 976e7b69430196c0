#include "torgamma/gamma_series.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace torgamma {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double sup_norm(const std::vector<Cx>& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

Rational rat_ceil(const Rational& a) { return -rat_floor(-a); }

}  // namespace

GammaSeries::GammaSeries(std::shared_ptr<SectorSet> ss, std::shared_ptr<KTheory> kt)
    : ss_(std::move(ss)), kt_(std::move(kt)) {
  const Fan& f = *ss_->fan;
  const int r = f.rank();
  const int n = f.npoints();
  points_.assign(r, IVec(n, Int(0)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < r; ++k) points_[k][i] = f.point(i)[k];
  kerbasis_ = kernel_int(points_);
  const int m = static_cast<int>(kerbasis_.size());
  if (m > 0) {
    QMat kt_rows(m, QVec(n, Rational(0)));
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < n; ++i) kt_rows[j][i] = Rational(kerbasis_[j][i]);
    QMat work = kt_rows;
    pivot_rows_ = rref_qmat(work);
    if (static_cast<int>(pivot_rows_.size()) != m)
      throw ToricError("Internal", "kernel basis is not independent");
    QMat block(m, QVec(m, Rational(0)));
    for (int t = 0; t < m; ++t)
      for (int j = 0; j < m; ++j) block[t][j] = Rational(kerbasis_[j][pivot_rows_[t]]);
    kinv_ = inverse_qmat(block);
  }
  dpow_.resize(ss_->sectors.size());
  for (size_t s = 0; s < ss_->sectors.size(); ++s) {
    const Sector& sec = ss_->sectors[s];
    const int dim = sec.dim();
    const int top = sec.rank_q();
    dpow_[s].resize(n);
    for (int i = 0; i < n; ++i) {
      QVec one(dim, Rational(0));
      one[0] = 1;
      dpow_[s][i].push_back(one);
      std::vector<Rational> d = kt_->dlog(static_cast<int>(s), i);
      for (int k = 1; k <= top; ++k)
        dpow_[s][i].push_back(apply_table(sec.mult_table(), 1, dpow_[s][i][k - 1], d, dim));
    }
  }
}

std::vector<Cx> GammaSeries::alg_mul(int s, const std::vector<Cx>& a,
                                     const std::vector<Cx>& b) const {
  const Sector& sec = ss_->sectors[s];
  return apply_table(sec.mult_table(), 1, a, b, sec.dim());
}

std::vector<Cx> GammaSeries::mod_act(int s, const std::vector<Cx>& a,
                                     const std::vector<Cx>& m) const {
  const Sector& sec = ss_->sectors[s];
  return apply_table(sec.action_table(), 1, a, m, sec.mdim());
}

std::vector<Cx> GammaSeries::dhat(int s, int i) const {
  const QVec& d = kt_->dlog(s, i);
  std::vector<Cx> out(d.size());
  const Cx c2(0.0, -1.0 / kTwoPi);  // 1 / (2 pi i)
  for (size_t k = 0; k < d.size(); ++k) out[k] = c2 * to_double(d[k]);
  return out;
}

std::optional<QVec> GammaSeries::lattice_offset(const IVec& c, int sector) const {
  const Fan& f = *ss_->fan;
  const int r = f.rank();
  const int n = f.npoints();
  const BoxElement& g = f.box_element(sector);
  IVec rhs(r, Int(0));
  for (int k = 0; k < r; ++k) {
    Rational acc(0);
    for (int i = 0; i < n; ++i) acc += g.coords[i] * Rational(f.point(i)[k]);
    if (!is_integer(acc)) throw ToricError("Internal", "box element is not a lattice point");
    rhs[k] = -c[k] - rat_num(acc);
  }
  auto z = solve_int(points_, rhs);
  if (!z) return std::nullopt;
  QVec base(n);
  for (int i = 0; i < n; ++i) base[i] = g.coords[i] + Rational((*z)[i]);
  return base;
}

std::vector<QVec> GammaSeries::enumerate_terms(const IVec& c, int sector, int truncation) const {
  const Fan& f = *ss_->fan;
  const int n = f.npoints();
  auto base_opt = lattice_offset(c, sector);
  if (!base_opt) return {};
  const QVec& base = *base_opt;
  const Rational hi(truncation);
  // sum l_i = -<m_deg, c> pins the lower bound once every other l_j <= K
  const Rational total(-f.height(c));
  const Rational lo = total - Rational(n - 1) * hi;

  auto in_box = [&](const QVec& l) {
    for (const auto& v : l)
      if (v < lo || v > hi) return false;
    return true;
  };

  std::vector<QVec> out;
  const int m = static_cast<int>(kerbasis_.size());
  if (m == 0) {
    if (in_box(base)) out.push_back(base);
    return out;
  }
  // k_j is an affine function of the pivot coordinates of l; bound it by
  // interval arithmetic over [lo, hi]
  std::vector<long> klo(m), khi(m);
  for (int j = 0; j < m; ++j) {
    Rational mn(0), mx(0);
    for (int t = 0; t < m; ++t) {
      const Rational& a = kinv_[j][t];
      if (a == 0) continue;
      Rational c1 = a * (lo - base[pivot_rows_[t]]);
      Rational c2 = a * (hi - base[pivot_rows_[t]]);
      mn += (c1 < c2 ? c1 : c2);
      mx += (c1 < c2 ? c2 : c1);
    }
    klo[j] = to_long(rat_num(rat_ceil(mn)));
    khi[j] = to_long(rat_num(rat_floor(mx)));
  }
  std::vector<long> k(m);
  for (int j = 0; j < m; ++j) k[j] = klo[j];
  while (true) {
    QVec l = base;
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < n; ++i) l[i] += Rational(kerbasis_[j][i]) * Rational(k[j]);
    if (in_box(l)) out.push_back(l);
    int j = 0;
    while (j < m && k[j] == khi[j]) {
      k[j] = klo[j];
      ++j;
    }
    if (j == m) break;
    ++k[j];
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Cx> GammaSeries::term_core(int sector, const QVec& l, const std::vector<Cx>& log_x,
                                       bool compact) const {
  const Sector& sec = ss_->sectors[sector];
  const Fan& f = *ss_->fan;
  const int n = f.npoints();
  const int dim = sec.dim();
  const int top = sec.rank_q();
  if (static_cast<int>(l.size()) != n || static_cast<int>(log_x.size()) != n)
    throw ToricError("BadInput", "exponent or sample length != number of points");

  std::vector<int> sigma;
  if (compact) {
    for (int i = 0; i < n; ++i)
      if (is_integer(l[i]) && l[i] < 0) sigma.push_back(i);
    std::vector<int> u = sigma;
    u.insert(u.end(), sec.element().sigma.begin(), sec.element().sigma.end());
    std::sort(u.begin(), u.end());
    if (!f.is_simplex(u)) return std::vector<Cx>(sec.mdim(), Cx(0.0, 0.0));
  }

  const Cx c2(0.0, -1.0 / kTwoPi);  // 1 / (2 pi i)
  // scalar x^l and nilpotent x^{D/2 pi i}
  Cx expo(0.0, 0.0);
  std::vector<Cx> nil(dim, Cx(0.0, 0.0));
  for (int i = 0; i < n; ++i) {
    expo += to_double(l[i]) * log_x[i];
    const QVec& d = kt_->dlog(sector, i);
    for (int a = 0; a < dim; ++a)
      if (d[a] != 0) nil[a] += log_x[i] * c2 * to_double(d[a]);
  }
  std::vector<Cx> acc(dim, Cx(0.0, 0.0));
  acc[0] = std::exp(expo);
  std::vector<Cx> pw = acc;
  for (int k = 1; k <= top; ++k) {
    pw = alg_mul(sector, pw, nil);
    for (int a = 0; a < dim; ++a) {
      pw[a] /= static_cast<double>(k);
      acc[a] += pw[a];
    }
  }

  for (int i = 0; i < n; ++i) {
    const bool reduced = compact && std::binary_search(sigma.begin(), sigma.end(), i);
    auto jet = recip_gamma_jet(Rational(1) + l[i], top + (reduced ? 1 : 0));
    std::vector<Cx> fac(dim, Cx(0.0, 0.0));
    Cx p(1.0, 0.0);
    for (int k = 0; k <= top; ++k) {
      const double coeff = reduced ? jet[k + 1] : jet[k];
      if (coeff != 0.0) {
        const QVec& dp = dpow_[sector][i][k];
        for (int a = 0; a < dim; ++a)
          if (dp[a] != 0) fac[a] += p * coeff * to_double(dp[a]);
      }
      p *= c2;
    }
    if (reduced)
      for (auto& z : fac) z *= c2;
    acc = alg_mul(sector, acc, fac);
  }
  if (!compact) return acc;

  std::vector<int> locals;
  for (int i : sigma) {
    int loc = sec.quotient().local_index(i);
    if (loc < 0) throw ToricError("Internal", "compact term support escapes the star");
    locals.push_back(loc);
  }
  std::sort(locals.begin(), locals.end());
  if (!sec.qfan().is_interior(locals))
    throw ToricError("Internal", "compact series term generated a boundary simplex");
  const QVec fq = sec.f_gen(locals);
  std::vector<Cx> fcx(fq.size());
  for (size_t a = 0; a < fq.size(); ++a) fcx[a] = to_double(fq[a]);
  return mod_act(sector, acc, fcx);
}

std::vector<Cx> GammaSeries::term(int sector, const QVec& l, const std::vector<Cx>& log_x) const {
  return term_core(sector, l, log_x, false);
}

std::vector<Cx> GammaSeries::term_circ(int sector, const QVec& l,
                                       const std::vector<Cx>& log_x) const {
  return term_core(sector, l, log_x, true);
}

GammaValue GammaSeries::gamma(const IVec& c, const SeriesConfig& cfg) const {
  const Fan& f = *ss_->fan;
  if (!f.in_cone(c)) throw ToricError("BadInput", "gamma requires c in the cone");
  if (static_cast<int>(cfg.log_x.size()) != f.npoints())
    throw ToricError("BadInput", "sample length != number of points");
  GammaValue v;
  v.c = c;
  v.compact = false;
  const Rational edge(cfg.truncation - 1);
  for (size_t s = 0; s < ss_->sectors.size(); ++s) {
    std::vector<Cx> acc(ss_->sectors[s].dim(), Cx(0.0, 0.0));
    for (const QVec& l : enumerate_terms(c, static_cast<int>(s), cfg.truncation)) {
      auto t = term_core(static_cast<int>(s), l, cfg.log_x, false);
      for (size_t a = 0; a < acc.size(); ++a) acc[a] += t[a];
      ++v.terms;
      if (*std::max_element(l.begin(), l.end()) > edge) v.tail = std::max(v.tail, sup_norm(t));
    }
    v.comp.push_back(std::move(acc));
  }
  return v;
}

GammaValue GammaSeries::gamma_circ(const IVec& c, const SeriesConfig& cfg) const {
  const Fan& f = *ss_->fan;
  if (!f.in_interior(c))
    throw ToricError("InteriorRequired", "the compact series needs c in the interior");
  if (static_cast<int>(cfg.log_x.size()) != f.npoints())
    throw ToricError("BadInput", "sample length != number of points");
  GammaValue v;
  v.c = c;
  v.compact = true;
  const Rational edge(cfg.truncation - 1);
  for (size_t s = 0; s < ss_->sectors.size(); ++s) {
    std::vector<Cx> acc(ss_->sectors[s].mdim(), Cx(0.0, 0.0));
    for (const QVec& l : enumerate_terms(c, static_cast<int>(s), cfg.truncation)) {
      auto t = term_core(static_cast<int>(s), l, cfg.log_x, true);
      for (size_t a = 0; a < acc.size(); ++a) acc[a] += t[a];
      ++v.terms;
      if (*std::max_element(l.begin(), l.end()) > edge) v.tail = std::max(v.tail, sup_norm(t));
    }
    v.comp.push_back(std::move(acc));
  }
  return v;
}

Cx GammaSeries::rank_functional(const GammaValue& v) const {
  const Fan& f = *ss_->fan;
  int s0 = f.box_index(IVec(f.rank(), Int(0)));
  if (s0 < 0) throw ToricError("Internal", "missing untwisted sector");
  return v.comp[s0][0];
}

GkzReport check_gkz(const GammaSeries& gs, const std::vector<IVec>& cs, bool compact,
                    const SeriesConfig& cfg) {
  const Fan& f = *gs.sectors().fan;
  const int n = f.npoints();
  const int r = f.rank();
  const int nsec = static_cast<int>(gs.sectors().sectors.size());
  GkzReport rep;

  auto term_of = [&](int s, const QVec& l) {
    return compact ? gs.term_circ(s, l, cfg.log_x) : gs.term(s, l, cfg.log_x);
  };
  auto apply = [&](int s, const std::vector<Cx>& a, const std::vector<Cx>& t) {
    return compact ? gs.mod_act(s, a, t) : gs.alg_mul(s, a, t);
  };

  for (const IVec& c : cs) {
    if (compact && !f.in_interior(c))
      throw ToricError("BadInput", "compact GKZ check needs interior c");
    if (!compact && !f.in_cone(c)) throw ToricError("BadInput", "GKZ check needs c in the cone");
    for (int s = 0; s < nsec; ++s) {
      const int dim = gs.sectors().sectors[s].dim();
      auto terms = gs.enumerate_terms(c, s, cfg.truncation);

      // homogeneity: (sum_i <m,v_i> (l_i + Dhat_i) + <m,c>) Phi = 0 termwise;
      // the scalar part vanishes exactly on L, leaving the D-relations
      for (int k = 0; k < r; ++k) {
        std::vector<Cx> nil(dim, Cx(0.0, 0.0));
        for (int i = 0; i < n; ++i) {
          auto d = gs.dhat(s, i);
          const double w = to_double(Rational(f.point(i)[k]));
          for (int a = 0; a < dim; ++a) nil[a] += w * d[a];
        }
        for (const QVec& l : terms) {
          auto t = term_of(s, l);
          double tn = sup_norm(t);
          if (tn < 1e-250) continue;
          rep.euler_residual = std::max(rep.euler_residual, sup_norm(apply(s, nil, t)) / tn);
        }
      }

      // derivative relation towards each c + v_i
      for (int i = 0; i < n; ++i) {
        IVec c2 = c;
        for (int k = 0; k < r; ++k) c2[k] += f.point(i)[k];
        std::map<QVec, std::vector<Cx>> rhs;
        for (const QVec& l2 : gs.enumerate_terms(c2, s, cfg.truncation))
          rhs.emplace(l2, term_of(s, l2));
        for (const QVec& l : terms) {
          QVec l2 = l;
          l2[i] -= 1;
          auto it = rhs.find(l2);
          if (it == rhs.end()) continue;
          auto t = term_of(s, l);
          std::vector<Cx> mult(dim, Cx(0.0, 0.0));
          mult[0] = to_double(l[i]);
          auto d = gs.dhat(s, i);
          for (int a = 0; a < dim; ++a) mult[a] += d[a];
          auto lhs = apply(s, mult, t);
          const Cx xinv = std::exp(-cfg.log_x[i]);
          for (auto& z : lhs) z *= xinv;
          double sc = std::max(sup_norm(lhs), sup_norm(it->second));
          ++rep.compared;
          if (sc < 1e-250) continue;
          double diff = 0.0;
          for (size_t a = 0; a < lhs.size(); ++a)
            diff = std::max(diff, std::abs(lhs[a] - it->second[a]));
          rep.shift_residual = std::max(rep.shift_residual, diff / sc);
        }
      }
    }
  }
  return rep;
}

std::vector<Cx> sample_log_x(const Fan& f, double lambda, double theta, bool large_side) {
  const QVec& mu = f.weights();
  const int n = f.npoints();
  std::vector<double> m(n);
  for (int i = 0; i < n; ++i) m[i] = to_double(mu[i]);
  double lo = *std::min_element(m.begin(), m.end());
  double hi = *std::max_element(m.begin(), m.end());
  std::vector<Cx> out(n);
  for (int i = 0; i < n; ++i) {
    double shifted = large_side ? m[i] - hi - 1.0 : m[i] - lo + 1.0;
    out[i] = Cx(-lambda * shifted, theta * (i + 1));
  }
  return out;
}

}  // namespace torgamma

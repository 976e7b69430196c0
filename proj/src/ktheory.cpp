#include "torgamma/ktheory.hpp"

#include "torgamma/eps_series.hpp"
#include "torgamma/linalg.hpp"

#include <algorithm>

namespace torgamma {

namespace {

std::vector<Cyclotomic> to_cyclo(const QVec& v, long n) {
  std::vector<Cyclotomic> out;
  out.reserve(v.size());
  for (const auto& c : v) out.emplace_back(c, n);
  return out;
}

std::vector<Cyclotomic> alg_mul(const Sector& s, long n, const std::vector<Cyclotomic>& a,
                                const std::vector<Cyclotomic>& b) {
  return apply_table(s.mult_table(), n, a, b, s.dim());
}

// inverse of a unit c*(1 + nilpotent) in the sector algebra
std::vector<Cyclotomic> invert_unit(const Sector& s, long n, const std::vector<Cyclotomic>& a) {
  Cyclotomic c = a[0];
  if (c.is_zero()) throw ToricError("DivideByZero", "non-unit in sector algebra");
  Cyclotomic cinv = c.inverse();
  std::vector<Cyclotomic> nil(a.size(), Cyclotomic::zero(n));
  for (size_t k = 1; k < a.size(); ++k) nil[k] = a[k] * cinv;
  std::vector<Cyclotomic> out(a.size(), Cyclotomic::zero(n)), pw = nil;
  out[0] = Cyclotomic::one(n);
  int sign = -1;
  for (int k = 1; k <= s.rank_q(); ++k, sign = -sign) {
    for (size_t t = 0; t < out.size(); ++t)
      out[t] += pw[t] * Rational(sign);
    if (k < s.rank_q()) pw = alg_mul(s, n, pw, nil);
  }
  for (auto& c0 : out) c0 *= cinv;
  return out;
}

// (1 - e^{-Dbar_i})/Dbar_i as a rational class
QVec one_minus_exp_over(const Sector& s, int local) {
  QVec d = s.d_class(local);
  QVec out(d.size(), Rational(0)), pw(d.size(), Rational(0));
  out[0] = 1;
  pw = out;
  Rational fact(1);
  int sign = -1;
  for (int k = 1; k <= s.rank_q(); ++k, sign = -sign) {
    pw = s.mul(pw, d);
    fact *= (k + 1);
    for (size_t t = 0; t < out.size(); ++t) out[t] += Rational(sign) * pw[t] / fact;
  }
  return out;
}

// incremental row space over Q(zeta_n) for basis-independence checks
struct CycloSpace {
  long n;
  std::vector<std::vector<Cyclotomic>> rows;
  std::vector<size_t> pivots;

  explicit CycloSpace(long order) : n(order) {}

  bool add(std::vector<Cyclotomic> v) {
    for (size_t r = 0; r < rows.size(); ++r) {
      Cyclotomic f = v[pivots[r]];
      if (f.is_zero()) continue;
      for (size_t j = 0; j < v.size(); ++j) v[j] -= f * rows[r][j];
    }
    size_t p = 0;
    while (p < v.size() && v[p].is_zero()) ++p;
    if (p == v.size()) return false;
    Cyclotomic inv = v[p].inverse();
    for (auto& c : v) c *= inv;
    pivots.push_back(p);
    rows.push_back(std::move(v));
    return true;
  }
};

}  // namespace

KTheory::KTheory(std::shared_ptr<SectorSet> ss) : ss_(std::move(ss)) {
  const Fan& f = *ss_->fan;
  const int n = f.npoints(), r = f.rank();
  dlog_.resize(ss_->sectors.size());
  for (size_t s = 0; s < ss_->sectors.size(); ++s) {
    const Sector& sec = ss_->sectors[s];
    const QuotientFan& q = sec.quotient();
    dlog_[s].assign(n, QVec(sec.dim(), Rational(0)));
    for (int local = 0; local < sec.nrays(); ++local)
      dlog_[s][q.ray_labels[local]] = sec.d_class(local);
    if (q.sigma.empty()) continue;
    // for i in sigma: D_i = sum_j (m_i . v_j) Dbar_j with m_i . v_k = -delta_ik
    // on the points of sigma; any rational solution gives the same class
    QMat a(q.sigma.size(), QVec(r));
    for (size_t k = 0; k < q.sigma.size(); ++k)
      for (int c = 0; c < r; ++c) a[k][c] = Rational(f.point(q.sigma[k])[c]);
    for (size_t t = 0; t < q.sigma.size(); ++t) {
      QVec b(q.sigma.size(), Rational(0));
      b[t] = -1;
      auto m = solve_qmat(a, b);
      if (!m) throw ToricError("Internal", "dependent sector support");
      QVec acc(sec.dim(), Rational(0));
      for (int local = 0; local < sec.nrays(); ++local) {
        Rational c = dot(*m, f.point(q.ray_labels[local]));
        if (c == 0) continue;
        for (size_t j = 0; j < acc.size(); ++j) acc[j] += c * sec.d_class(local)[j];
      }
      dlog_[s][q.sigma[t]] = std::move(acc);
    }
  }
}

int KTheory::total_dim() const {
  int d = 0;
  for (const auto& s : ss_->sectors) d += s.dim();
  return d;
}

std::vector<Cyclotomic> KTheory::exp_class(int sector, const QVec& nil,
                                           const Rational& turns) const {
  const Sector& sec = ss_->sectors[sector];
  QVec acc(sec.dim(), Rational(0)), pw(sec.dim(), Rational(0));
  acc[0] = 1;
  pw = acc;
  Rational fact(1);
  for (int k = 1; k <= sec.rank_q(); ++k) {
    pw = sec.mul(pw, nil);
    fact *= k;
    for (size_t t = 0; t < acc.size(); ++t) acc[t] += pw[t] / fact;
  }
  Cyclotomic phase = Cyclotomic::root_phase(turns, order());
  std::vector<Cyclotomic> out;
  out.reserve(acc.size());
  for (const auto& c : acc) out.push_back(phase * Rational(c));
  return out;
}

std::vector<Cyclotomic> KTheory::ch_monomial(int sector, const IVec& alpha) const {
  const Sector& sec = ss_->sectors[sector];
  if (static_cast<int>(alpha.size()) != fan().npoints())
    throw ToricError("BadInput", "exponent vector length != number of points");
  QVec nil(sec.dim(), Rational(0));
  Rational turns(0);
  for (size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0) continue;
    Rational c(alpha[i]);
    turns += c * sec.element().coords[i];
    const QVec& d = dlog_[sector][i];
    for (size_t j = 0; j < nil.size(); ++j) nil[j] += c * d[j];
  }
  return exp_class(sector, nil, turns);
}

std::vector<Cyclotomic> KTheory::chc_monomial(int sector, const KcMonomial& m) const {
  const Sector& sec = ss_->sectors[sector];
  const QuotientFan& q = sec.quotient();
  const long n = order();
  if (!fan().is_interior(m.simplex))
    throw ToricError("BadInput", "G_I requires an interior simplex");
  std::vector<Cyclotomic> zero(sec.mdim(), Cyclotomic::zero(n));

  std::vector<int> ibar;
  std::vector<int> in_sigma;
  for (int i : m.simplex) {
    if (std::binary_search(q.sigma.begin(), q.sigma.end(), i)) {
      in_sigma.push_back(i);
      continue;
    }
    int local = q.local_index(i);
    if (local < 0) return zero;  // I is not inside Star(sigma)
    ibar.push_back(local);
  }
  std::sort(ibar.begin(), ibar.end());

  auto acc = ch_monomial(sector, m.alpha);
  for (int local : ibar)
    acc = alg_mul(sec, n, acc, to_cyclo(one_minus_exp_over(sec, local), n));
  for (int i : in_sigma) {
    IVec e(fan().npoints(), Int(0));
    e[i] = -1;
    auto inv = ch_monomial(sector, e);
    std::vector<Cyclotomic> f(sec.dim(), Cyclotomic::zero(n));
    f[0] = Cyclotomic::one(n);
    for (size_t t = 0; t < f.size(); ++t) f[t] -= inv[t];
    acc = alg_mul(sec, n, acc, f);
  }
  return apply_table(sec.action_table(), n, acc, to_cyclo(sec.f_gen(ibar), n), sec.mdim());
}

KImage KTheory::ch(const KMonomial& m) const {
  KImage v;
  for (size_t s = 0; s < ss_->sectors.size(); ++s)
    v.comp.push_back(ch_monomial(static_cast<int>(s), m.alpha));
  return v;
}

KcImage KTheory::chc(const KcMonomial& m) const {
  KcImage v;
  for (size_t s = 0; s < ss_->sectors.size(); ++s)
    v.comp.push_back(chc_monomial(static_cast<int>(s), m));
  return v;
}

KcImage KTheory::mul(const KImage& w, const KcImage& v) const {
  KcImage out;
  for (size_t s = 0; s < ss_->sectors.size(); ++s) {
    const Sector& sec = ss_->sectors[s];
    out.comp.push_back(
        apply_table(sec.action_table(), order(), w.comp[s], v.comp[s], sec.mdim()));
  }
  return out;
}

Int KTheory::chi(const IVec& alpha, const std::vector<int>& I) const {
  const Fan& f = fan();
  if (static_cast<int>(alpha.size()) != f.npoints())
    throw ToricError("BadInput", "exponent vector length != number of points");
  if (!f.is_interior(I)) throw ToricError("BadInput", "G_I requires an interior simplex");
  const long n = order();
  const int valid = 2 * f.rank() + 6;

  int retries = 0;
  for (long t = 1; t <= 4096; ++t) {
    QVec w(f.rank());
    Rational p(1);
    for (int k = 0; k < f.rank(); ++k, p *= t) w[k] = p;

    // the direction must miss every dual covector hyperplane
    bool generic = true;
    std::vector<std::pair<const std::vector<int>*, std::map<int, QVec>>> charts;
    for (const auto& J : f.max_simplices()) {
      if (!std::includes(J.begin(), J.end(), I.begin(), I.end())) continue;
      auto duals = f.dual_covectors(J);
      for (const auto& [i, u] : duals)
        if (dot(u, w) == 0) generic = false;
      if (!generic) break;
      charts.emplace_back(&J, std::move(duals));
    }
    if (!generic) continue;

    try {
      EpsSeries total(n, valid);
      for (const auto& [jp, duals] : charts) {
        const auto& J = *jp;
        auto boxJ = f.box_of(J);
        Rational pref = Rational(1) / Rational(Int(boxJ.size()));
        for (const auto& bp : boxJ) {
          EpsSeries term = EpsSeries::constant(Cyclotomic(pref, n), valid);
          for (size_t idx = 0; idx < J.size(); ++idx) {
            const int i = J[idx];
            Rational h = dot(duals.at(i), w);
            const Rational& gi = bp.coords_on[idx];
            term *= EpsSeries::exp_rational(-Rational(alpha[i]) * h, n, valid);
            term *= Cyclotomic::root_phase(-gi * Rational(alpha[i]), n);
            if (!std::binary_search(I.begin(), I.end(), i)) {
              EpsSeries den = EpsSeries::constant(Cyclotomic::one(n), valid);
              EpsSeries ex = EpsSeries::exp_rational(h, n, valid);
              ex *= Cyclotomic::root_phase(gi, n);
              den -= ex;
              term *= den.inverse();
            }
          }
          total += term;
        }
      }
      Cyclotomic c0 = total.constant_term();
      if (!c0.is_rational()) throw ToricError("NonInteger", "chi is not rational");
      Rational r = c0.rational_part();
      if (!is_integer(r)) throw ToricError("NonInteger", "chi is not an integer");
      return rat_num(r);
    } catch (const ToricError& e) {
      if (e.code == "PoleRemains" && retries < 4) {
        ++retries;
        continue;
      }
      if (e.code == "PoleRemains")
        throw ToricError("NonGenericDirection", "pole survived repeated retries");
      throw;
    }
  }
  throw ToricError("NonGenericDirection", "no generic direction found");
}

Cyclotomic KTheory::chi_hrr(const KcImage& v) const {
  const long n = order();
  Cyclotomic total = Cyclotomic::zero(n);
  for (size_t s = 0; s < ss_->sectors.size(); ++s) {
    const Sector& sec = ss_->sectors[s];
    const QuotientFan& q = sec.quotient();
    std::vector<Cyclotomic> fac(sec.dim(), Cyclotomic::zero(n));
    fac[0] = Cyclotomic::one(n);
    for (int i : q.sigma) {
      IVec e(fan().npoints(), Int(0));
      e[i] = -1;
      auto inv = ch_monomial(static_cast<int>(s), e);
      std::vector<Cyclotomic> f(sec.dim(), Cyclotomic::zero(n));
      f[0] = Cyclotomic::one(n);
      for (size_t t = 0; t < f.size(); ++t) f[t] -= inv[t];
      fac = alg_mul(sec, n, fac, invert_unit(sec, n, f));
    }
    for (int local = 0; local < sec.nrays(); ++local)
      fac = alg_mul(sec, n, fac,
                    invert_unit(sec, n, to_cyclo(one_minus_exp_over(sec, local), n)));
    auto w = apply_table(sec.action_table(), n, fac, v.comp[s], sec.mdim());
    Cyclotomic part = Cyclotomic::zero(n);
    for (size_t k = 0; k < w.size(); ++k) part += w[k] * sec.integrals()[k];
    total += part * (Rational(1) / Rational(q.box_order));
  }
  return total;
}

Int KTheory::euler_pairing(const KMonomial& w, const KcMonomial& v) const {
  return chi(ivec_sub(v.alpha, w.alpha), v.simplex);
}

std::vector<Cyclotomic> KTheory::flatten(const KImage& v) const {
  std::vector<Cyclotomic> out;
  for (const auto& c : v.comp) out.insert(out.end(), c.begin(), c.end());
  return out;
}

std::vector<Cyclotomic> KTheory::flatten(const KcImage& v) const {
  std::vector<Cyclotomic> out;
  for (const auto& c : v.comp) out.insert(out.end(), c.begin(), c.end());
  return out;
}

std::vector<KMonomial> KTheory::default_k_basis() const {
  const int d = total_dim(), n = fan().npoints();
  const long kmax = 2L * d * order() + 4;
  CycloSpace space(order());
  std::vector<KMonomial> out;
  auto try_add = [&](IVec alpha) {
    KMonomial m{std::move(alpha)};
    if (space.add(flatten(ch(m)))) out.push_back(std::move(m));
  };
  try_add(IVec(n, Int(0)));
  for (int i = n - 1; i >= 0 && static_cast<int>(out.size()) < d; --i)
    for (long k = 1; k <= kmax && static_cast<int>(out.size()) < d; ++k) {
      IVec a(n, Int(0));
      a[i] = k;
      try_add(std::move(a));
    }
  if (static_cast<int>(out.size()) != d)
    throw ToricError("Internal", "no monomial basis of K found");
  return out;
}

std::vector<KcMonomial> KTheory::default_kc_basis() const {
  const int d = total_dim(), n = fan().npoints();
  const long kmax = 2L * d * order() + 4;
  CycloSpace space(order());
  std::vector<KcMonomial> out;
  auto try_add = [&](KcMonomial m) {
    if (space.add(flatten(chc(m)))) out.push_back(std::move(m));
  };
  for (const auto& I : fan().interior_simplices()) {
    if (static_cast<int>(out.size()) == d) break;
    try_add(KcMonomial{IVec(n, Int(0)), I});
    for (int i = n - 1; i >= 0 && static_cast<int>(out.size()) < d; --i)
      for (long k = 1; k <= kmax && static_cast<int>(out.size()) < d; ++k) {
        IVec a(n, Int(0));
        a[i] = k;
        try_add(KcMonomial{std::move(a), I});
      }
  }
  if (static_cast<int>(out.size()) != d)
    throw ToricError("Internal", "no monomial basis of K^c found");
  return out;
}

PairingMatrix KTheory::pairing_matrix(std::vector<KMonomial> kb,
                                      std::vector<KcMonomial> kcb) const {
  const int d = total_dim();
  if (kb.empty()) kb = default_k_basis();
  if (kcb.empty()) kcb = default_kc_basis();
  if (static_cast<int>(kb.size()) != d || static_cast<int>(kcb.size()) != d)
    throw ToricError("NotABasis", "basis size must equal the total sector dimension");
  CycloSpace ks(order()), kcs(order());
  for (const auto& m : kb)
    if (!ks.add(flatten(ch(m)))) throw ToricError("NotABasis", "dependent K monomials");
  for (const auto& m : kcb)
    if (!kcs.add(flatten(chc(m)))) throw ToricError("NotABasis", "dependent K^c monomials");

  PairingMatrix pm;
  pm.entries.assign(d, IVec(d, Int(0)));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) pm.entries[a][b] = euler_pairing(kb[b], kcb[a]);
  pm.det = det_int(pm.entries);
  if (pm.det == 0) throw ToricError("Internal", "singular pairing matrix");
  pm.kbasis = std::move(kb);
  pm.kcbasis = std::move(kcb);
  return pm;
}

}  // namespace torgamma

#include "torgamma/pairing.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>

namespace torgamma {

namespace {

double sup_norm(const std::vector<Cx>& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

std::vector<Cx> flatten_mod(const SectorSet& ss, const std::vector<std::vector<Cx>>& comp) {
  std::vector<Cx> out;
  for (size_t s = 0; s < ss.sectors.size(); ++s)
    out.insert(out.end(), comp[s].begin(), comp[s].end());
  return out;
}

Cx poly_value(const std::vector<std::pair<Rational, std::vector<int>>>& poly,
              const std::vector<Cx>& log_x) {
  Cx acc(0.0, 0.0);
  for (const auto& [coeff, mono] : poly) {
    Cx e(0.0, 0.0);
    for (size_t i = 0; i < mono.size(); ++i)
      e += static_cast<double>(mono[i]) * log_x[i];
    acc += to_double(coeff) * std::exp(e);
  }
  return acc;
}

}  // namespace

std::vector<HessianTerm> hessian_terms(const Fan& f) {
  const int n = f.npoints();
  const int r = f.rank();
  std::vector<HessianTerm> out;
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  if (r > n) return out;
  while (true) {
    IMat m(r, IVec(r, Int(0)));
    for (int a = 0; a < r; ++a)
      for (int k = 0; k < r; ++k) m[k][a] = f.point(idx[a])[k];
    Int det = det_int(m);
    if (det != 0) {
      HessianTerm t;
      t.simplex = idx;
      t.vol2 = det * det;
      t.d.assign(r, Int(0));
      for (int a = 0; a < r; ++a)
        for (int k = 0; k < r; ++k) t.d[k] += f.point(idx[a])[k];
      out.push_back(std::move(t));
    }
    int j = r - 1;
    while (j >= 0 && idx[j] == n - r + j) --j;
    if (j < 0) break;
    ++idx[j];
    for (int t2 = j + 1; t2 < r; ++t2) idx[t2] = idx[t2 - 1] + 1;
  }
  return out;
}

OneReport pair_with_one(const GammaSeries& gs, const std::vector<SeriesConfig>& samples) {
  if (samples.empty()) throw ToricError("BadInput", "no sample points");
  const SectorSet& ss = gs.sectors();
  const Fan& f = *ss.fan;
  std::map<IVec, std::vector<const HessianTerm*>> by_d;
  auto terms = hessian_terms(f);
  for (const auto& t : terms) by_d[t.d].push_back(&t);

  OneReport rep;
  std::vector<std::vector<Cx>> values;
  for (const auto& cfg : samples) {
    std::vector<Cx> acc;
    double tail = 0.0;
    for (const auto& [d, list] : by_d) {
      Cx coef(0.0, 0.0);
      for (const HessianTerm* t : list) {
        Cx e(0.0, 0.0);
        for (int i : t->simplex) e += cfg.log_x[i];
        coef += to_double(Rational(t->vol2)) * std::exp(e);
      }
      GammaValue gv = gs.gamma_circ(d, cfg);
      tail = std::max(tail, gv.tail);
      auto flat = flatten_mod(ss, gv.comp);
      if (acc.empty()) acc.assign(flat.size(), Cx(0.0, 0.0));
      for (size_t a = 0; a < flat.size(); ++a) acc[a] += coef * flat[a];
    }
    rep.tail = std::max(rep.tail, tail);
    values.push_back(std::move(acc));
  }
  rep.value = values[0];
  const double scale = std::max(sup_norm(rep.value), 1e-300);
  for (size_t s = 1; s < values.size(); ++s) {
    double diff = 0.0;
    for (size_t a = 0; a < rep.value.size(); ++a)
      diff = std::max(diff, std::abs(values[s][a] - rep.value[a]));
    rep.deviation = std::max(rep.deviation, diff / scale);
  }
  return rep;
}

VolumeReport verify_volume_identity(const GammaSeries& gs,
                                    const std::vector<SeriesConfig>& samples) {
  const SectorSet& ss = gs.sectors();
  const Fan& f = *ss.fan;
  const int r = f.rank();
  VolumeReport rep;
  rep.one = pair_with_one(gs, samples);

  const int s0 = f.box_index(IVec(r, Int(0)));
  if (s0 < 0) throw ToricError("Internal", "missing untwisted sector");
  const Sector& sec = ss.sectors[s0];
  // the class of a generic point: Vol_J F_J, identical for every maximal J
  QVec op;
  for (const auto& J : f.max_simplices()) {
    std::vector<int> locals;
    for (int i : J) {
      int loc = sec.quotient().local_index(i);
      if (loc < 0) throw ToricError("Internal", "maximal simplex escapes the untwisted star");
      locals.push_back(loc);
    }
    std::sort(locals.begin(), locals.end());
    QVec w = sec.f_gen(locals);
    Rational vol(f.simplex_volume(J));
    for (auto& x : w) x *= vol;
    if (op.empty())
      op = w;
    else if (op != w)
      throw ToricError("Internal", "point class differs between charts");
  }

  // expected = Vol(conv) / (2 pi i)^rank * [O_p]
  Cx pref(1.0, 0.0);
  const Cx twopii(0.0, 6.283185307179586476925286766559);
  for (int k = 0; k < r; ++k) pref /= twopii;
  pref *= to_double(Rational(f.total_volume()));

  size_t total = 0;
  for (const auto& s : ss.sectors) total += static_cast<size_t>(s.mdim());
  rep.expected.assign(total, Cx(0.0, 0.0));
  size_t off = 0;
  for (int s = 0; s < static_cast<int>(ss.sectors.size()); ++s) {
    if (s == s0)
      for (int a = 0; a < sec.mdim(); ++a) rep.expected[off + a] = pref * to_double(op[a]);
    off += static_cast<size_t>(ss.sectors[s].mdim());
  }

  double diff = 0.0;
  for (size_t a = 0; a < rep.expected.size(); ++a)
    diff = std::max(diff, std::abs(rep.one.value[a] - rep.expected[a]));
  rep.error = diff / std::max(sup_norm(rep.expected), 1e-300);
  return rep;
}

PairingReport evaluate_candidate_pairing(const GammaSeries& gs,
                                         const std::vector<PairingEntry>& entries,
                                         const std::vector<SeriesConfig>& samples,
                                         int degree_bound) {
  if (samples.empty()) throw ToricError("BadInput", "no sample points");
  const SectorSet& ss = gs.sectors();
  const Fan& f = *ss.fan;
  if (degree_bound < 0) degree_bound = 2 * f.rank();

  std::vector<const PairingEntry*> used;
  PairingReport rep;
  for (const auto& e : entries) {
    if (!f.in_cone(e.c)) throw ToricError("BadInput", "pairing entry c outside the cone");
    if (!f.in_interior(e.d)) throw ToricError("BadInput", "pairing entry d not interior");
    Int deg = f.height(e.c) + f.height(e.d);
    if (deg > degree_bound) {
      rep.warnings.push_back("entry of degree " + deg.str() + " exceeds the bound " +
                             std::to_string(degree_bound) + "; skipped");
      continue;
    }
    used.push_back(&e);
  }
  rep.used = static_cast<int>(used.size());

  size_t adim = 0, mdim = 0;
  for (const auto& s : ss.sectors) {
    adim += static_cast<size_t>(s.dim());
    mdim += static_cast<size_t>(s.mdim());
  }

  std::vector<std::vector<std::vector<Cx>>> values;
  for (const auto& cfg : samples) {
    std::map<IVec, std::vector<Cx>> plain, circ;
    for (const PairingEntry* e : used) {
      if (!plain.count(e->c)) plain[e->c] = flatten_mod(ss, gs.gamma(e->c, cfg).comp);
      if (!circ.count(e->d)) circ[e->d] = flatten_mod(ss, gs.gamma_circ(e->d, cfg).comp);
    }
    std::vector<std::vector<Cx>> t(adim, std::vector<Cx>(mdim, Cx(0.0, 0.0)));
    for (const PairingEntry* e : used) {
      Cx pv = poly_value(e->poly, cfg.log_x);
      const auto& u = plain[e->c];
      const auto& v = circ[e->d];
      for (size_t a = 0; a < adim; ++a) {
        if (u[a] == Cx(0.0, 0.0)) continue;
        const Cx ua = pv * u[a];
        for (size_t b = 0; b < mdim; ++b) t[a][b] += ua * v[b];
      }
    }
    values.push_back(std::move(t));
  }

  rep.tensor = values[0];
  double scale = 1e-300;
  for (const auto& row : rep.tensor) scale = std::max(scale, sup_norm(row));
  for (size_t s = 1; s < values.size(); ++s) {
    double diff = 0.0;
    for (size_t a = 0; a < adim; ++a)
      for (size_t b = 0; b < mdim; ++b)
        diff = std::max(diff, std::abs(values[s][a][b] - rep.tensor[a][b]));
    rep.deviation = std::max(rep.deviation, diff / scale);
  }
  return rep;
}

InverseEulerReport inverse_euler_check(const KTheory& kt, const PairingReport& rep,
                                       std::optional<Cx> scale) {
  const int d = kt.total_dim();
  PairingMatrix pm = kt.pairing_matrix({}, {});
  if (static_cast<int>(rep.tensor.size()) != d)
    throw ToricError("BadInput", "tensor size differs from the K-theory dimension");

  Eigen::MatrixXcd mch(d, d), mchc(d, d), t(d, d);
  for (int j = 0; j < d; ++j) {
    auto cv = kt.flatten(kt.ch(pm.kbasis[j]));
    auto ccv = kt.flatten(kt.chc(pm.kcbasis[j]));
    for (int a = 0; a < d; ++a) {
      mch(a, j) = cv[a].complex_value();
      mchc(a, j) = ccv[a].complex_value();
    }
  }
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) t(a, b) = rep.tensor[a][b];

  // tensor = Mch * S * Mchc^T  =>  S = Mch^-1 * tensor * Mchc^-T
  Eigen::MatrixXcd s = mch.partialPivLu().solve(t);
  s = mchc.partialPivLu().solve(s.transpose()).transpose();

  QMat pq(d, QVec(d, Rational(0)));
  for (int b = 0; b < d; ++b)
    for (int a = 0; a < d; ++a) pq[b][a] = Rational(pm.entries[b][a]);
  QMat pinv = inverse_qmat(pq);  // indexed [K][Kc]

  InverseEulerReport out;
  out.coeffs.assign(d, std::vector<Cx>(d));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) out.coeffs[a][b] = s(a, b);

  Cx num(0.0, 0.0);
  double den = 0.0, emax = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const Cx e(to_double(pinv[a][b]), 0.0);
      num += s(a, b) * std::conj(e);
      den += std::norm(e);
      emax = std::max(emax, std::abs(e));
    }
  out.scale = scale ? *scale : (den > 0 ? num / den : Cx(0.0, 0.0));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const Cx e(to_double(pinv[a][b]), 0.0);
      out.residual = std::max(out.residual, std::abs(s(a, b) - out.scale * e));
    }
  out.residual /= std::max(emax * std::abs(out.scale), 1e-300);
  return out;
}

}  // namespace torgamma

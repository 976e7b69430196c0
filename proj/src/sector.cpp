#include "torgamma/sector.hpp"

#include "torgamma/linalg.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace torgamma {

namespace {

std::vector<int> support(const Mono& m) {
  std::vector<int> s;
  for (size_t i = 0; i < m.size(); ++i)
    if (m[i] > 0) s.push_back(static_cast<int>(i));
  return s;
}

std::vector<int> simplex_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

int degree_of(const Mono& m) { return std::accumulate(m.begin(), m.end(), 0); }

// all exponent vectors of the given total degree, lexicographically descending
// (low-index monomials first, so elimination removes them first)
std::vector<Mono> all_monomials(int nrays, int degree) {
  std::vector<Mono> out;
  Mono cur(nrays, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == nrays) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[i] = e;
      rec(i + 1, left - e);
    }
    cur[i] = 0;
  };
  if (nrays == 0) {
    if (degree == 0) out.push_back(cur);
    return out;
  }
  rec(0, degree);
  return out;
}

QVec unit_vec(size_t n, size_t k) {
  QVec v(n, Rational(0));
  v[k] = 1;
  return v;
}

}  // namespace

Sector::Sector(const Fan& ambient, const BoxElement& g)
    : elem_(g), quot_(ambient.star_quotient(g)) {
  nrays_ = quot_.fan->npoints();
  rank_q_ = quot_.fan->rank();
  build_algebra();
  build_module();
  compute_integrals();
  build_tables();
}

void Sector::build_algebra() {
  const Fan& q = qfan();
  basis_.push_back(Mono(nrays_, 0));
  nf_[basis_[0]] = unit_vec(1, 0);
  alg_top_ = 0;

  std::vector<Mono> prev{Mono(nrays_, 0)};
  for (int d = 1; d <= rank_q_ + 1; ++d) {
    std::vector<Mono> cols;
    for (auto& m : all_monomials(nrays_, d))
      if (q.is_simplex(support(m))) cols.push_back(std::move(m));
    std::map<Mono, int> col_index;
    for (size_t j = 0; j < cols.size(); ++j) col_index[cols[j]] = static_cast<int>(j);

    QMat rel;
    for (const auto& mu : prev) {
      for (int k = 0; k < rank_q_; ++k) {
        QVec row(cols.size(), Rational(0));
        bool nonzero = false;
        for (int i = 0; i < nrays_; ++i) {
          const Int& c = q.point(i)[k];
          if (c == 0) continue;
          Mono nu = mu;
          nu[i] += 1;
          auto it = col_index.find(nu);
          if (it == col_index.end()) continue;  // monomial dies in the ideal
          row[it->second] += Rational(c);
          nonzero = true;
        }
        if (nonzero) rel.push_back(std::move(row));
      }
    }
    auto pivots = rref_qmat(rel);

    std::vector<char> is_pivot(cols.size(), 0);
    for (int p : pivots) is_pivot[p] = 1;
    std::vector<int> pos(cols.size(), -1);
    bool any = false;
    for (size_t j = 0; j < cols.size(); ++j) {
      if (is_pivot[j]) continue;
      pos[j] = static_cast<int>(basis_.size());
      basis_.push_back(cols[j]);
      nf_[cols[j]] = unit_vec(basis_.size(), basis_.size() - 1);
      any = true;
    }
    for (size_t r = 0; r < rel.size(); ++r) {
      QVec v(basis_.size(), Rational(0));
      for (size_t j = 0; j < cols.size(); ++j)
        if (pos[j] >= 0 && rel[r][j] != 0) v[pos[j]] = -rel[r][j];
      nf_[cols[pivots[r]]] = std::move(v);
    }
    if (any) {
      if (d > rank_q_)
        throw ToricError("Internal", "algebra does not vanish past the socle degree");
      alg_top_ = d;
    }
    prev = std::move(cols);
  }
  for (auto& [m, v] : nf_) v.resize(basis_.size(), Rational(0));

  d_classes_.resize(nrays_);
  for (int i = 0; i < nrays_; ++i) {
    Mono e(nrays_, 0);
    e[i] = 1;
    d_classes_[i] = nf(e);
  }
  // the global linear forms must be exactly zero in the quotient
  for (int k = 0; k < rank_q_; ++k) {
    QVec acc(basis_.size(), Rational(0));
    for (int i = 0; i < nrays_; ++i)
      for (size_t t = 0; t < acc.size(); ++t) acc[t] += Rational(q.point(i)[k]) * d_classes_[i][t];
    for (const auto& c : acc)
      if (c != 0) throw ToricError("Internal", "linear relation fails in sector algebra");
  }
}

void Sector::build_module() {
  const Fan& q = qfan();
  mod_top_ = 0;

  std::vector<ModGen> prev;
  for (int d = 0; d <= rank_q_ + 1; ++d) {
    std::vector<ModGen> cols;
    for (const auto& I : q.interior_simplices()) {
      int md = d - static_cast<int>(I.size());
      if (md < 0) continue;
      for (auto& mu : all_monomials(nrays_, md))
        if (q.is_simplex(simplex_union(support(mu), I))) cols.push_back({std::move(mu), I});
    }
    std::sort(cols.begin(), cols.end());
    std::map<ModGen, int> col_index;
    for (size_t j = 0; j < cols.size(); ++j) col_index[cols[j]] = static_cast<int>(j);

    QMat rel;
    // absorption: D_i F_I = F_{I + i} whenever I + i stays a simplex
    for (const auto& I : q.interior_simplices()) {
      int md = d - 1 - static_cast<int>(I.size());
      if (md < 0) continue;
      for (int i = 0; i < nrays_; ++i) {
        if (std::binary_search(I.begin(), I.end(), i)) continue;
        auto Ii = simplex_union(I, {i});
        if (!q.is_simplex(Ii)) continue;
        if (!q.is_interior(Ii))
          throw ToricError("Internal", "simplex extension left the interior");
        for (const auto& mu : all_monomials(nrays_, md)) {
          if (!q.is_simplex(simplex_union(support(mu), Ii))) continue;
          Mono nu = mu;
          nu[i] += 1;
          QVec row(cols.size(), Rational(0));
          row[col_index.at({nu, I})] += 1;
          row[col_index.at({mu, Ii})] -= 1;
          rel.push_back(std::move(row));
        }
      }
    }
    // global linear forms acting on the previous degree
    for (const auto& g : prev) {
      for (int k = 0; k < rank_q_; ++k) {
        QVec row(cols.size(), Rational(0));
        bool nonzero = false;
        for (int i = 0; i < nrays_; ++i) {
          const Int& c = q.point(i)[k];
          if (c == 0) continue;
          ModGen ng = g;
          ng.mu[i] += 1;
          auto it = col_index.find(ng);
          if (it == col_index.end()) continue;
          row[it->second] += Rational(c);
          nonzero = true;
        }
        if (nonzero) rel.push_back(std::move(row));
      }
    }
    auto pivots = rref_qmat(rel);

    std::vector<char> is_pivot(cols.size(), 0);
    for (int p : pivots) is_pivot[p] = 1;
    std::vector<int> pos(cols.size(), -1);
    bool any = false;
    for (size_t j = 0; j < cols.size(); ++j) {
      if (is_pivot[j]) continue;
      pos[j] = static_cast<int>(mbasis_.size());
      mbasis_.push_back(cols[j]);
      mnf_[cols[j]] = unit_vec(mbasis_.size(), mbasis_.size() - 1);
      any = true;
    }
    for (size_t r = 0; r < rel.size(); ++r) {
      QVec v(mbasis_.size(), Rational(0));
      for (size_t j = 0; j < cols.size(); ++j)
        if (pos[j] >= 0 && rel[r][j] != 0) v[pos[j]] = -rel[r][j];
      mnf_[cols[pivots[r]]] = std::move(v);
    }
    if (any) {
      if (d > rank_q_)
        throw ToricError("Internal", "module does not vanish past the socle degree");
      mod_top_ = d;
    }
    prev = std::move(cols);
  }
  for (auto& [g, v] : mnf_) v.resize(mbasis_.size(), Rational(0));

  if (mbasis_.size() != basis_.size())
    throw ToricError("DualityMismatch", "sector module and algebra dimensions differ");
}

void Sector::compute_integrals() {
  const Fan& q = qfan();
  std::vector<std::pair<std::vector<int>, std::map<int, QVec>>> duals;
  for (const auto& J : q.max_simplices()) duals.emplace_back(J, q.dual_covectors(J));

  // generic evaluation point: no dual covector may vanish on it
  QVec w(rank_q_, Rational(0));
  for (long t = 1;; ++t) {
    if (t > 4096) throw ToricError("Internal", "no generic direction found");
    Rational p(1);
    for (int k = 0; k < rank_q_; ++k, p *= t) w[k] = p;
    bool good = true;
    for (const auto& [J, dual] : duals)
      for (const auto& [i, u] : dual)
        if (dot(u, w) == 0) good = false;
    if (good) break;
  }

  integ_.assign(mbasis_.size(), Rational(0));
  for (size_t idx = 0; idx < mbasis_.size(); ++idx) {
    Mono e = mbasis_[idx].mu;
    for (int i : mbasis_[idx].simplex) e[i] += 1;
    if (degree_of(e) != rank_q_) continue;  // below or above top degree: zero
    auto se = support(e);
    Rational total(0);
    for (const auto& [J, dual] : duals) {
      if (!std::includes(J.begin(), J.end(), se.begin(), se.end())) continue;
      Rational term = Rational(1) / Rational(q.simplex_volume(J));
      for (int i : J) term *= rat_pow(dot(dual.at(i), w), e[i] - 1);
      total += term;
    }
    integ_[idx] = total;
  }
}

void Sector::build_tables() {
  const size_t d = basis_.size(), md = mbasis_.size();
  mult_.assign(d, std::vector<QVec>(d));
  for (size_t a = 0; a < d; ++a)
    for (size_t b = 0; b < d; ++b) {
      Mono m = basis_[a];
      for (int i = 0; i < nrays_; ++i) m[i] += basis_[b][i];
      mult_[a][b] = nf(m);
    }
  act_.assign(d, std::vector<QVec>(md));
  for (size_t a = 0; a < d; ++a)
    for (size_t j = 0; j < md; ++j) {
      ModGen g = mbasis_[j];
      for (int i = 0; i < nrays_; ++i) g.mu[i] += basis_[a][i];
      act_[a][j] = mnf(std::move(g));
    }
  // the multiplication/evaluation pairing must be perfect on every sector
  QMat gram(d, QVec(md, Rational(0)));
  for (size_t a = 0; a < d; ++a)
    for (size_t j = 0; j < md; ++j) gram[a][j] = integrate(act_[a][j]);
  if (rank_qmat(gram) != static_cast<int>(d))
    throw ToricError("Internal", "degenerate sector pairing");
}

QVec Sector::nf(const Mono& m) const {
  QVec zero(basis_.size(), Rational(0));
  if (degree_of(m) > alg_top_) return zero;
  if (!qfan().is_simplex(support(m))) return zero;
  auto it = nf_.find(m);
  if (it == nf_.end()) throw ToricError("Internal", "missing normal form");
  return it->second;
}

QVec Sector::mul(const QVec& a, const QVec& b) const {
  QVec out(basis_.size(), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      Rational c = a[i] * b[j];
      const QVec& t = mult_[i][j];
      for (size_t k = 0; k < out.size(); ++k)
        if (t[k] != 0) out[k] += c * t[k];
    }
  }
  return out;
}

QVec Sector::mnf(ModGen g) const {
  std::sort(g.simplex.begin(), g.simplex.end());
  QVec zero(mbasis_.size(), Rational(0));
  if (!qfan().is_interior(g.simplex))
    throw ToricError("BadInput", "module generator index is not an interior simplex");
  if (degree_of(g.mu) + static_cast<int>(g.simplex.size()) > mod_top_) return zero;
  if (!qfan().is_simplex(simplex_union(support(g.mu), g.simplex))) return zero;
  auto it = mnf_.find(g);
  if (it == mnf_.end()) throw ToricError("Internal", "missing module normal form");
  return it->second;
}

QVec Sector::f_gen(std::vector<int> local_simplex) const {
  return mnf(ModGen{Mono(nrays_, 0), std::move(local_simplex)});
}

QVec Sector::maction(const QVec& a, const QVec& m) const {
  QVec out(mbasis_.size(), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < m.size(); ++j) {
      if (m[j] == 0) continue;
      Rational c = a[i] * m[j];
      const QVec& t = act_[i][j];
      for (size_t k = 0; k < out.size(); ++k)
        if (t[k] != 0) out[k] += c * t[k];
    }
  }
  return out;
}

Rational Sector::integrate(const QVec& m) const {
  Rational s(0);
  for (size_t k = 0; k < m.size(); ++k) s += m[k] * integ_[k];
  return s;
}

Rational Sector::pair(const QVec& a, const QVec& m) const { return integrate(maction(a, m)); }

namespace {

std::string mono_label(const Sector& s, const Mono& m) {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!first) os << "*";
    os << "D" << s.original_label(static_cast<int>(i));
    if (m[i] > 1) os << "^" << m[i];
    first = false;
  }
  return os.str();
}

}  // namespace

std::string Sector::basis_label(int k) const {
  std::string m = mono_label(*this, basis_[k]);
  return m.empty() ? "1" : m;
}

std::string Sector::mbasis_label(int k) const {
  const ModGen& g = mbasis_[k];
  std::ostringstream os;
  std::string m = mono_label(*this, g.mu);
  if (!m.empty()) os << m << "*";
  os << "F(";
  for (size_t t = 0; t < g.simplex.size(); ++t) {
    if (t) os << ",";
    os << original_label(g.simplex[t]);
  }
  os << ")";
  return os.str();
}

SectorSet::SectorSet(std::shared_ptr<Fan> f) : fan(std::move(f)) {
  sectors.reserve(fan->box().size());
  long ord = 1;
  for (const auto& g : fan->box()) {
    sectors.emplace_back(*fan, g);
    ord = std::lcm(ord, g.phase_order);
  }
  cyclo_order = ord;
}

const Sector& SectorSet::sector_of(const IVec& gamma) const {
  int i = fan->box_index(gamma);
  if (i < 0) throw ToricError("BadInput", "not a box element of the fan");
  return sectors[i];
}

}  // namespace torgamma

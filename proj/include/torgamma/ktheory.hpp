#pragma once

#include "torgamma/sector.hpp"

namespace torgamma {

// Laurent monomial R^alpha in K_0
struct KMonomial {
  IVec alpha;
};

// the dual line bundle R^{-alpha}
inline KMonomial dual(const KMonomial& w) {
  KMonomial out;
  for (const auto& a : w.alpha) out.alpha.push_back(-a);
  return out;
}

// R^alpha G_I in K_0^c; the simplex is 0-based and must be interior
struct KcMonomial {
  IVec alpha;
  std::vector<int> simplex;
};

// images under ch / ch^c: exact cyclotomic coordinates per sector
struct KImage {
  std::vector<std::vector<Cyclotomic>> comp;
};
struct KcImage {
  std::vector<std::vector<Cyclotomic>> comp;
};

struct PairingMatrix {
  std::vector<KMonomial> kbasis;
  std::vector<KcMonomial> kcbasis;
  IMat entries;  // rows indexed by the Kc basis, columns by the K basis
  Int det;
};

// K_0 and K_0^c in their sector decompositions: the ch/ch^c maps, the Euler
// characteristic chi, the Riemann-Roch form of chi, and the pairing matrix.
class KTheory {
 public:
  explicit KTheory(std::shared_ptr<SectorSet> ss);

  const SectorSet& sectors() const { return *ss_; }
  const Fan& fan() const { return *ss_->fan; }
  long order() const { return ss_->cyclo_order; }
  int total_dim() const;

  // nilpotent logarithm of ch_gamma(R_i e^{-2 pi i gamma_i}) in H_gamma
  const QVec& dlog(int sector, int i) const { return dlog_[sector][i]; }

  std::vector<Cyclotomic> ch_monomial(int sector, const IVec& alpha) const;
  std::vector<Cyclotomic> chc_monomial(int sector, const KcMonomial& m) const;
  KImage ch(const KMonomial& m) const;
  KcImage chc(const KcMonomial& m) const;

  // Euler characteristic of R^alpha G_I from the character sum, evaluated as
  // an eps-series along a generic direction; exact integer
  Int chi(const IVec& alpha, const std::vector<int>& I) const;
  // the fixed-point/Riemann-Roch evaluation of chi on a sector image
  Cyclotomic chi_hrr(const KcImage& v) const;

  Int euler_pairing(const KMonomial& w, const KcMonomial& v) const;

  // module product ch(w) * ch^c(v), sector by sector
  KcImage mul(const KImage& w, const KcImage& v) const;

  std::vector<KMonomial> default_k_basis() const;
  std::vector<KcMonomial> default_kc_basis() const;
  // empty bases select the defaults
  PairingMatrix pairing_matrix(std::vector<KMonomial> kb, std::vector<KcMonomial> kcb) const;

  std::vector<Cyclotomic> flatten(const KImage& v) const;
  std::vector<Cyclotomic> flatten(const KcImage& v) const;

 private:
  std::shared_ptr<SectorSet> ss_;
  std::vector<std::vector<QVec>> dlog_;  // [sector][original point index]

  std::vector<Cyclotomic> exp_class(int sector, const QVec& nil, const Rational& turns) const;
};

}  // namespace torgamma

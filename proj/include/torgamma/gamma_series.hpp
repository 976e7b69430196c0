#pragma once

#include "torgamma/jets.hpp"
#include "torgamma/ktheory.hpp"

#include <complex>
#include <memory>
#include <optional>

namespace torgamma {

using Cx = std::complex<double>;

struct SeriesConfig {
  int truncation = 16;
  std::vector<Cx> log_x;  // chosen branch of log x_i, one per point
};

// value of a Gamma series at one x: coordinates per sector (algebra
// coordinates for the plain series, module coordinates for the compact one),
// plus the magnitude of the outermost enumeration shell as a tail estimate
struct GammaValue {
  IVec c;
  bool compact = false;
  std::vector<std::vector<Cx>> comp;
  double tail = 0.0;
  int terms = 0;
};

struct GkzReport {
  double shift_residual = 0.0;  // derivative relation d_i Phi_c = Phi_{c+v_i}
  double euler_residual = 0.0;  // homogeneity relations
  int compared = 0;
};

// evaluator for the Gamma and compact Gamma series of the better-behaved GKZ
// system attached to the fan
class GammaSeries {
 public:
  GammaSeries(std::shared_ptr<SectorSet> ss, std::shared_ptr<KTheory> kt);

  const SectorSet& sectors() const { return *ss_; }
  const KTheory& ktheory() const { return *kt_; }

  // smallest representative of L_{c,gamma}: gamma coordinates plus an integer
  // solution of V z = -c - gamma; nullopt when the coset is empty
  std::optional<QVec> lattice_offset(const IVec& c, int sector) const;
  // all exponent vectors of L_{c,gamma} with every coordinate <= K (and the
  // forced lower bound), sorted lexicographically
  std::vector<QVec> enumerate_terms(const IVec& c, int sector, int truncation) const;

  // one term of the plain series, in sector algebra coordinates
  std::vector<Cx> term(int sector, const QVec& l, const std::vector<Cx>& log_x) const;
  // one term of the compact series, in sector module coordinates
  std::vector<Cx> term_circ(int sector, const QVec& l, const std::vector<Cx>& log_x) const;

  GammaValue gamma(const IVec& c, const SeriesConfig& cfg) const;
  GammaValue gamma_circ(const IVec& c, const SeriesConfig& cfg) const;

  // coefficient of the identity class of the untwisted sector
  Cx rank_functional(const GammaValue& v) const;

  // complex-coefficient structure constants of sector s
  std::vector<Cx> alg_mul(int s, const std::vector<Cx>& a, const std::vector<Cx>& b) const;
  std::vector<Cx> mod_act(int s, const std::vector<Cx>& a, const std::vector<Cx>& m) const;
  std::vector<Cx> dhat(int s, int i) const;  // D_i / (2 pi i), algebra coordinates

 private:
  std::shared_ptr<SectorSet> ss_;
  std::shared_ptr<KTheory> kt_;
  IMat points_;                 // rank x n, columns v_i
  std::vector<IVec> kerbasis_;  // basis of the integer kernel of points_
  std::vector<int> pivot_rows_;
  QMat kinv_;  // inverse of the kernel block on pivot_rows_

  // dpow_[s][i][k]: rational algebra coordinates of D_i^k
  std::vector<std::vector<std::vector<QVec>>> dpow_;

  std::vector<Cx> term_core(int sector, const QVec& l, const std::vector<Cx>& log_x,
                            bool compact) const;
};

// termwise verification of the GKZ relations on the enumerated series
GkzReport check_gkz(const GammaSeries& gs, const std::vector<IVec>& cs, bool compact,
                    const SeriesConfig& cfg);

// deterministic sample point from the convexity certificate: log x_i =
// -lambda mu'_i + i theta (i+1), with mu' the weights shifted to min 1
// (small side) or max -1 (large side)
std::vector<Cx> sample_log_x(const Fan& f, double lambda, double theta, bool large_side);

}  // namespace torgamma

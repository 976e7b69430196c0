#pragma once

#include "torgamma/gamma_series.hpp"

#include <optional>
#include <string>

namespace torgamma {

// one monomial of the Hessian determinant of sum_i x_i t^{v_i}: an
// independent subset I of size rank contributes Vol_I^2 prod_{i in I} x_i
// in degree d = sum_{i in I} v_i
struct HessianTerm {
  std::vector<int> simplex;
  Int vol2;
  IVec d;
};
std::vector<HessianTerm> hessian_terms(const Fan& f);

// sum_d Coeff_d(Hessian) GammaCirc_d evaluated across samples; the value is
// the flattened module-coordinate vector at the first sample
struct OneReport {
  std::vector<Cx> value;
  double deviation = 0.0;
  double tail = 0.0;
};
OneReport pair_with_one(const GammaSeries& gs, const std::vector<SeriesConfig>& samples);

// comparison of pair_with_one against Vol(conv) / (2 pi i)^rank * [O_p]
struct VolumeReport {
  OneReport one;
  std::vector<Cx> expected;
  double error = 0.0;
};
VolumeReport verify_volume_identity(const GammaSeries& gs,
                                    const std::vector<SeriesConfig>& samples);

// candidate duality pairing: sum over entries of poly(x) Gamma_c (x) Gamma-circ_d
struct PairingEntry {
  IVec c, d;
  std::vector<std::pair<Rational, std::vector<int>>> poly;  // coeff, exponents
};

struct PairingReport {
  std::vector<std::vector<Cx>> tensor;  // [flat algebra index][flat module index]
  double deviation = 0.0;
  int used = 0;
  std::vector<std::string> warnings;
};
PairingReport evaluate_candidate_pairing(const GammaSeries& gs,
                                         const std::vector<PairingEntry>& entries,
                                         const std::vector<SeriesConfig>& samples,
                                         int degree_bound = -1);

// rewrite the tensor over the monomial bases via ch/ch^c and compare with
// scale * inverse of the Euler pairing matrix; a missing scale is fitted
struct InverseEulerReport {
  std::vector<std::vector<Cx>> coeffs;
  Cx scale{0.0, 0.0};
  double residual = 0.0;
};
InverseEulerReport inverse_euler_check(const KTheory& kt, const PairingReport& rep,
                                       std::optional<Cx> scale);

}  // namespace torgamma

#pragma once

#include "torgamma/linalg.hpp"

#include <map>
#include <memory>
#include <optional>

namespace torgamma {

// input data for a simplicial triangulation of a full-dimensional cone:
// lattice points v_1..v_n (1-based in files, 0-based internally) and the
// maximal simplices of the triangulation.
struct FanData {
  int rank = 0;
  std::vector<IVec> points;
  std::vector<std::vector<int>> max_simplices;  // 0-based, sorted
  std::optional<QVec> weights;                  // convexity certificate
};

struct BoxElement {
  IVec gamma;              // lattice point
  QVec coords;             // gamma_i over all points (0 off the support)
  std::vector<int> sigma;  // support = minimal cone containing gamma
  long phase_order = 1;    // lcm of coordinate denominators
};

class Fan;

// star quotient data for one box element: the fan Star(sigma)/sigma in the
// quotient lattice N_gamma = N / Span(sigma), which is again a valid fan.
struct QuotientFan {
  std::vector<int> sigma;       // original point indices
  Int box_order = 1;            // |Box(sigma)| = volume of sigma inside its span
  std::vector<int> ray_labels;  // original indices of the quotient rays
  IMat proj;                    // (rank - |sigma|) x rank projection N -> N_gamma
  std::shared_ptr<Fan> fan;     // fan structure over N_gamma (points = images)
  int local_index(int original) const;  // -1 if not a quotient ray
};

class Fan {
 public:
  explicit Fan(FanData d);

  const FanData& data() const { return data_; }
  int rank() const { return data_.rank; }
  int npoints() const { return static_cast<int>(data_.points.size()); }
  const IVec& point(int i) const { return data_.points[i]; }
  const std::vector<std::vector<int>>& max_simplices() const { return data_.max_simplices; }

  bool is_simplex(const std::vector<int>& I) const;  // member of the complex
  bool is_interior(const std::vector<int>& I) const;
  const std::vector<std::vector<int>>& all_simplices() const { return all_simplices_; }
  const std::vector<std::vector<int>>& interior_simplices() const { return interior_; }

  // index of the sublattice generated by v_i, i in I, inside its saturation;
  // throws NonSimplicial if the points are dependent
  Int simplex_volume(const std::vector<int>& I) const;

  // dual covectors of a maximal simplex: u_i with <u_i, v_j> = delta_ij
  std::map<int, QVec> dual_covectors(const std::vector<int>& J) const;

  const std::vector<BoxElement>& box() const { return box_; }
  const BoxElement& box_element(size_t k) const { return box_[k]; }
  int box_index(const IVec& gamma) const;  // -1 if absent

  // box elements of one maximal cone, with fractional coordinates on J
  struct BoxPoint {
    IVec gamma;
    QVec coords_on;  // indexed like J
  };
  std::vector<BoxPoint> box_of(const std::vector<int>& J) const;

  QuotientFan star_quotient(const BoxElement& g) const;
  std::vector<std::vector<int>> star(const std::vector<int>& sigma) const;  // maximal J >= sigma

  const std::optional<IVec>& gorenstein_degree() const { return m_deg_; }
  Int height(const IVec& p) const;  // <m_deg, p>, throws NotGorenstein if absent

  bool in_cone(const IVec& p) const;
  bool in_interior(const IVec& p) const;

  // primitive facet normals of C (empty when C has no boundary)
  const std::vector<IVec>& facet_normals() const { return facet_normals_; }

  const QVec& weights() const { return *data_.weights; }

  Int total_volume() const;  // sum of maximal simplex volumes

 private:
  FanData data_;
  std::vector<std::vector<int>> all_simplices_;
  std::vector<std::vector<int>> interior_;
  std::vector<IVec> facet_normals_;
  std::vector<BoxElement> box_;
  std::optional<IVec> m_deg_;

  void validate_and_analyze();
  void find_or_check_weights();
  void compute_box();
};

std::shared_ptr<Fan> make_fan(FanData d);

}  // namespace torgamma

#pragma once

#include "torgamma/cyclotomic.hpp"
#include "torgamma/fan.hpp"

#include <complex>
#include <string>

namespace torgamma {

// monomial in the classes D-bar, as an exponent vector over the quotient rays
using Mono = std::vector<int>;

// module spanning element D^mu * F_I for an interior quotient simplex I
struct ModGen {
  Mono mu;
  std::vector<int> simplex;  // local ray indices, sorted

  bool operator==(const ModGen& o) const { return mu == o.mu && simplex == o.simplex; }
  // elimination order within a degree: larger simplices first, then by
  // simplex, then low-index monomials first (those get eliminated)
  bool operator<(const ModGen& o) const {
    if (simplex.size() != o.simplex.size()) return simplex.size() > o.simplex.size();
    if (simplex != o.simplex) return simplex < o.simplex;
    return mu > o.mu;
  }
};

// One twisted sector: the Artinian algebra H of the star quotient fan and its
// module H^c, presented by exact bases, structure constants and the
// integration table.  Built degree by degree with rational elimination.
class Sector {
 public:
  Sector(const Fan& ambient, const BoxElement& g);

  const BoxElement& element() const { return elem_; }
  const QuotientFan& quotient() const { return quot_; }
  const Fan& qfan() const { return *quot_.fan; }
  int nrays() const { return nrays_; }
  int rank_q() const { return rank_q_; }

  // algebra
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Mono>& basis() const { return basis_; }
  QVec nf(const Mono& m) const;  // normal form; zero vector when the monomial dies
  const QVec& d_class(int local) const { return d_classes_[local]; }
  QVec mul(const QVec& a, const QVec& b) const;
  std::string basis_label(int k) const;

  // module
  int mdim() const { return static_cast<int>(mbasis_.size()); }
  const std::vector<ModGen>& mbasis() const { return mbasis_; }
  QVec mnf(ModGen g) const;
  QVec f_gen(std::vector<int> local_simplex) const;  // coordinates of F_I
  QVec maction(const QVec& a, const QVec& m) const;
  const QVec& integrals() const { return integ_; }
  Rational integrate(const QVec& m) const;
  Rational pair(const QVec& a, const QVec& m) const;
  std::string mbasis_label(int k) const;

  // structure constants: mult[a][b] = nf(basis_a * basis_b),
  // act[a][b] = mnf(basis_a * mbasis_b)
  const std::vector<std::vector<QVec>>& mult_table() const { return mult_; }
  const std::vector<std::vector<QVec>>& action_table() const { return act_; }

  int original_label(int local) const { return quot_.ray_labels[local] + 1; }

 private:
  BoxElement elem_;
  QuotientFan quot_;
  int nrays_ = 0;
  int rank_q_ = 0;
  int alg_top_ = 0;  // algebra vanishes above this degree
  int mod_top_ = 0;

  std::vector<Mono> basis_;
  std::map<Mono, QVec> nf_;
  std::vector<QVec> d_classes_;
  std::vector<std::vector<QVec>> mult_;

  std::vector<ModGen> mbasis_;
  std::map<ModGen, QVec> mnf_;
  std::vector<std::vector<QVec>> act_;
  QVec integ_;

  void build_algebra();
  void build_module();
  void build_tables();
  void compute_integrals();
};

// all sectors of a fan, aligned with fan->box(), plus the cyclotomic order
// that accommodates every sector phase
struct SectorSet {
  std::shared_ptr<Fan> fan;
  std::vector<Sector> sectors;
  long cyclo_order = 1;

  explicit SectorSet(std::shared_ptr<Fan> f);
  const Sector& sector_of(const IVec& gamma) const;
};

// scalar conversion used to run the rational structure constants over
// cyclotomic or floating coefficients
template <class K>
struct scalar_of;

template <>
struct scalar_of<Rational> {
  static Rational from(const Rational& r, long) { return r; }
  static Rational zero(long) { return Rational(0); }
};

template <>
struct scalar_of<Cyclotomic> {
  static Cyclotomic from(const Rational& r, long order) { return Cyclotomic(r, order); }
  static Cyclotomic zero(long order) { return Cyclotomic(Rational(0), order); }
};

template <>
struct scalar_of<std::complex<double>> {
  static std::complex<double> from(const Rational& r, long) { return {to_double(r), 0.0}; }
  static std::complex<double> zero(long) { return {0.0, 0.0}; }
};

// bilinear evaluation of a structure-constant table over scalars K
template <class K>
std::vector<K> apply_table(const std::vector<std::vector<QVec>>& table, long order,
                           const std::vector<K>& a, const std::vector<K>& b, int out_dim) {
  std::vector<K> out(static_cast<size_t>(out_dim), scalar_of<K>::zero(order));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) {
      K ab = a[i] * b[j];
      const QVec& t = table[i][j];
      for (size_t k = 0; k < t.size(); ++k)
        if (t[k] != 0) out[k] += ab * scalar_of<K>::from(t[k], order);
    }
  return out;
}

}  // namespace torgamma

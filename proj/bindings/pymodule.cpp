#include "torgamma/io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

namespace py = pybind11;

namespace {

using namespace torgamma;

IVec to_ivec(const std::vector<long>& v) {
  IVec out;
  for (long x : v) out.push_back(Int(x));
  return out;
}

std::vector<int> to_simplex(std::vector<int> s) {
  for (auto& i : s) i -= 1;
  std::sort(s.begin(), s.end());
  return s;
}

// one loaded fan with its sector, K-theory and series machinery
class Toolkit {
 public:
  explicit Toolkit(const std::string& fan_json) {
    fan_ = make_fan(parse_fan(Json::parse(fan_json)));
    ss_ = std::make_shared<SectorSet>(fan_);
    kt_ = std::make_shared<KTheory>(ss_);
    gs_ = std::make_shared<GammaSeries>(ss_, kt_);
  }

  std::string sectors() const { return sectors_report(*ss_).dump(); }

  long chi(const std::vector<long>& alpha, const std::vector<int>& simplex) const {
    return to_long(kt_->chi(to_ivec(alpha), to_simplex(simplex)));
  }

  std::string pairing_matrix() const {
    return pairing_matrix_report(kt_->pairing_matrix({}, {})).dump();
  }

  std::string gamma(const std::vector<long>& c, bool compact, int truncation, double lambda,
                    double theta, bool large_side) const {
    SeriesConfig cfg;
    cfg.truncation = truncation;
    cfg.log_x = sample_log_x(*fan_, lambda, theta, large_side);
    GammaValue v =
        compact ? gs_->gamma_circ(to_ivec(c), cfg) : gs_->gamma(to_ivec(c), cfg);
    return gamma_report(*ss_, v).dump();
  }

  std::string verify_gkz(int truncation, bool large_side) const {
    SeriesConfig cfg;
    cfg.truncation = truncation;
    cfg.log_x = sample_log_x(*fan_, 1.2, 0.17, large_side);
    std::vector<IVec> plain_cs{IVec(fan_->rank(), Int(0))};
    for (int i = 0; i < fan_->npoints(); ++i) plain_cs.push_back(fan_->point(i));
    std::vector<IVec> int_cs;
    for (const auto& t : hessian_terms(*fan_)) int_cs.push_back(t.d);
    std::sort(int_cs.begin(), int_cs.end());
    int_cs.erase(std::unique(int_cs.begin(), int_cs.end()), int_cs.end());
    Json rep;
    rep["plain"] = gkz_report(check_gkz(*gs_, plain_cs, false, cfg));
    rep["compact"] = gkz_report(check_gkz(*gs_, int_cs, true, cfg));
    return rep.dump();
  }

  std::string verify_volume(int truncation, double lambda, double theta,
                            bool large_side) const {
    std::vector<SeriesConfig> samples;
    for (int k = 0; k < 3; ++k) {
      SeriesConfig cfg;
      cfg.truncation = truncation;
      cfg.log_x = sample_log_x(*fan_, lambda + 0.15 * k, theta * (k + 1), large_side);
      samples.push_back(std::move(cfg));
    }
    return volume_report(verify_volume_identity(*gs_, samples)).dump();
  }

  std::string verify_pairing(const std::string& table_json, int truncation, double lambda,
                             double theta, bool large_side) const {
    auto entries = parse_pairing(Json::parse(table_json), fan_->rank(), fan_->npoints());
    std::vector<SeriesConfig> samples;
    for (int k = 0; k < 3; ++k) {
      SeriesConfig cfg;
      cfg.truncation = truncation;
      cfg.log_x = sample_log_x(*fan_, lambda + 0.15 * k, theta * (k + 1), large_side);
      samples.push_back(std::move(cfg));
    }
    PairingReport pr = evaluate_candidate_pairing(*gs_, entries, samples);
    InverseEulerReport ir = inverse_euler_check(*kt_, pr, std::nullopt);
    Json rep;
    rep["evaluation"] = pairing_eval_report(pr);
    rep["inverse_euler"] = inverse_euler_report(ir);
    return rep.dump();
  }

  std::string verify_hrr() const {
    int pairs = 0, mismatches = 0;
    for (const auto& w : kt_->default_k_basis())
      for (const auto& v : kt_->default_kc_basis()) {
        Int lhs = kt_->euler_pairing(w, v);
        Cyclotomic rhs = kt_->chi_hrr(kt_->mul(kt_->ch(dual(w)), kt_->chc(v)));
        ++pairs;
        if (!rhs.is_rational() || rhs.rational_part() != Rational(lhs)) ++mismatches;
      }
    Json rep;
    rep["pairs"] = pairs;
    rep["mismatches"] = mismatches;
    return rep.dump();
  }

 private:
  std::shared_ptr<Fan> fan_;
  std::shared_ptr<SectorSet> ss_;
  std::shared_ptr<KTheory> kt_;
  std::shared_ptr<GammaSeries> gs_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "twisted-sector cohomology, K-theory and Gamma series for Gorenstein cones";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ToricError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<Toolkit>(m, "Toolkit")
      .def(py::init<const std::string&>(), py::arg("fan_json"))
      .def("sectors", &Toolkit::sectors)
      .def("chi", &Toolkit::chi, py::arg("alpha"), py::arg("simplex"))
      .def("pairing_matrix", &Toolkit::pairing_matrix)
      .def("gamma", &Toolkit::gamma, py::arg("c"), py::arg("compact") = false,
           py::arg("truncation") = 12, py::arg("lambda_") = 4.7, py::arg("theta") = 0.1,
           py::arg("large_side") = false)
      .def("verify_gkz", &Toolkit::verify_gkz, py::arg("truncation") = 12,
           py::arg("large_side") = false)
      .def("verify_volume", &Toolkit::verify_volume, py::arg("truncation") = 12,
           py::arg("lambda_") = 4.7, py::arg("theta") = 0.05, py::arg("large_side") = false)
      .def("verify_pairing", &Toolkit::verify_pairing, py::arg("table_json"),
           py::arg("truncation") = 12, py::arg("lambda_") = 4.7, py::arg("theta") = 0.05,
           py::arg("large_side") = false)
      .def("verify_hrr", &Toolkit::verify_hrr);
}

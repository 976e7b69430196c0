#include "torgamma/io.hpp"

#include <algorithm>
#include <fstream>

namespace torgamma {

namespace {

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ToricError("BadInput", "expected an integer or a \"p/q\" string");
}

IVec ivec_from_json(const Json& j, int len, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != len)
    throw ToricError("BadInput", std::string(what) + " must be an array of length " +
                                     std::to_string(len));
  IVec v;
  for (const auto& e : j) {
    if (!e.is_number_integer())
      throw ToricError("BadInput", std::string(what) + " entries must be integers");
    v.push_back(Int(e.get<long long>()));
  }
  return v;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ToricError("BadInput", "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    throw ToricError("BadInput", path + ": " + e.what());
  }
}

}  // namespace

FanData parse_fan(const Json& j) {
  FanData d;
  if (!j.is_object()) throw ToricError("BadInput", "fan file must be a JSON object");
  if (!j.contains("rank") || !j["rank"].is_number_integer())
    throw ToricError("BadInput", "missing integer field rank");
  d.rank = j["rank"].get<int>();
  if (!j.contains("points") || !j["points"].is_array() || j["points"].empty())
    throw ToricError("BadInput", "missing nonempty array field points");
  for (const auto& p : j["points"]) d.points.push_back(ivec_from_json(p, d.rank, "point"));
  if (!j.contains("max_simplices") || !j["max_simplices"].is_array() ||
      j["max_simplices"].empty())
    throw ToricError("BadInput", "missing nonempty array field max_simplices");
  for (const auto& s : j["max_simplices"]) {
    std::vector<int> I;
    for (const auto& e : s) {
      if (!e.is_number_integer())
        throw ToricError("BadInput", "simplex entries must be 1-based integers");
      int i = e.get<int>();
      if (i < 1 || i > static_cast<int>(d.points.size()))
        throw ToricError("BadInput", "simplex index out of range");
      I.push_back(i - 1);
    }
    std::sort(I.begin(), I.end());
    d.max_simplices.push_back(std::move(I));
  }
  if (j.contains("weights")) {
    QVec w;
    for (const auto& e : j["weights"]) w.push_back(rational_from_json(e));
    if (w.size() != d.points.size())
      throw ToricError("BadInput", "weights length must match points");
    d.weights = std::move(w);
  }
  return d;
}

FanData load_fan(const std::string& path) { return parse_fan(load_json(path)); }

std::vector<PairingEntry> parse_pairing(const Json& j, int rank, int npoints) {
  if (!j.is_array()) throw ToricError("BadInput", "pairing file must be a JSON array");
  std::vector<PairingEntry> out;
  for (const auto& e : j) {
    PairingEntry p;
    if (!e.contains("c") || !e.contains("d") || !e.contains("poly"))
      throw ToricError("BadInput", "pairing entries need fields c, d, poly");
    p.c = ivec_from_json(e["c"], rank, "c");
    p.d = ivec_from_json(e["d"], rank, "d");
    for (const auto& t : e["poly"]) {
      if (!t.contains("coeff") || !t.contains("monomial"))
        throw ToricError("BadInput", "poly terms need coeff and monomial");
      Rational coeff = rational_from_json(t["coeff"]);
      const auto& mj = t["monomial"];
      if (!mj.is_array() || static_cast<int>(mj.size()) != npoints)
        throw ToricError("BadInput", "monomial length must match the number of points");
      std::vector<int> mono;
      for (const auto& m : mj) mono.push_back(m.get<int>());
      p.poly.emplace_back(coeff, std::move(mono));
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<PairingEntry> load_pairing(const std::string& path, int rank, int npoints) {
  return parse_pairing(load_json(path), rank, npoints);
}

Json complex_json(const Cx& z) { return Json::array({z.real(), z.imag()}); }

namespace {

Json ivec_json(const IVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_long(x));
  return a;
}

Json qvec_json(const QVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(format_rational(x));
  return a;
}

Json simplex_json(const std::vector<int>& I) {
  Json a = Json::array();
  for (int i : I) a.push_back(i + 1);
  return a;
}

Json cvec_json(const std::vector<Cx>& v) {
  Json a = Json::array();
  for (const auto& z : v) a.push_back(complex_json(z));
  return a;
}

}  // namespace

Json sectors_report(const SectorSet& ss) {
  const Fan& f = *ss.fan;
  Json out;
  out["rank"] = f.rank();
  Json pts = Json::array();
  for (int i = 0; i < f.npoints(); ++i) pts.push_back(ivec_json(f.point(i)));
  out["points"] = pts;
  out["total_volume"] = to_long(f.total_volume());
  out["cyclotomic_order"] = ss.cyclo_order;
  Json secs = Json::array();
  for (const Sector& s : ss.sectors) {
    Json e;
    e["gamma"] = ivec_json(s.element().gamma);
    e["coords"] = qvec_json(s.element().coords);
    e["sigma"] = simplex_json(s.element().sigma);
    e["box_order"] = to_long(s.quotient().box_order);
    e["phase_order"] = s.element().phase_order;
    Json ab = Json::array();
    for (int k = 0; k < s.dim(); ++k) ab.push_back(s.basis_label(k));
    e["algebra_basis"] = ab;
    Json mb = Json::array();
    for (int k = 0; k < s.mdim(); ++k) mb.push_back(s.mbasis_label(k));
    e["module_basis"] = mb;
    e["integrals"] = qvec_json(s.integrals());
    secs.push_back(std::move(e));
  }
  out["sectors"] = secs;
  return out;
}

Json pairing_matrix_report(const PairingMatrix& pm) {
  Json out;
  Json kb = Json::array();
  for (const auto& w : pm.kbasis) kb.push_back(Json{{"alpha", ivec_json(w.alpha)}});
  out["k_basis"] = kb;
  Json kcb = Json::array();
  for (const auto& v : pm.kcbasis)
    kcb.push_back(Json{{"alpha", ivec_json(v.alpha)}, {"simplex", simplex_json(v.simplex)}});
  out["kc_basis"] = kcb;
  Json rows = Json::array();
  for (const auto& row : pm.entries) rows.push_back(ivec_json(row));
  out["entries"] = rows;
  out["det"] = pm.det.str();
  return out;
}

Json gamma_report(const SectorSet& ss, const GammaValue& v) {
  Json out;
  out["c"] = ivec_json(v.c);
  out["compact"] = v.compact;
  Json secs = Json::array();
  for (size_t s = 0; s < ss.sectors.size(); ++s) {
    const Sector& sec = ss.sectors[s];
    Json e;
    e["gamma"] = ivec_json(sec.element().gamma);
    Json basis = Json::array();
    for (int k = 0; k < (v.compact ? sec.mdim() : sec.dim()); ++k)
      basis.push_back(v.compact ? sec.mbasis_label(k) : sec.basis_label(k));
    e["basis"] = basis;
    e["coords"] = cvec_json(v.comp[s]);
    secs.push_back(std::move(e));
  }
  out["sectors"] = secs;
  out["terms"] = v.terms;
  out["tail"] = v.tail;
  return out;
}

Json gkz_report(const GkzReport& rep) {
  return Json{{"shift_residual", rep.shift_residual},
              {"euler_residual", rep.euler_residual},
              {"compared_terms", rep.compared}};
}

Json one_report(const OneReport& rep) {
  return Json{{"value", cvec_json(rep.value)},
              {"deviation", rep.deviation},
              {"tail", rep.tail}};
}

Json volume_report(const VolumeReport& rep) {
  Json out = one_report(rep.one);
  out["expected"] = cvec_json(rep.expected);
  out["error"] = rep.error;
  return out;
}

Json pairing_eval_report(const PairingReport& rep) {
  Json rows = Json::array();
  for (const auto& row : rep.tensor) rows.push_back(cvec_json(row));
  Json out;
  out["tensor"] = rows;
  out["deviation"] = rep.deviation;
  out["entries_used"] = rep.used;
  Json w = Json::array();
  for (const auto& s : rep.warnings) w.push_back(s);
  out["warnings"] = w;
  return out;
}

Json inverse_euler_report(const InverseEulerReport& rep) {
  Json rows = Json::array();
  for (const auto& row : rep.coeffs) rows.push_back(cvec_json(row));
  return Json{{"coefficients", rows},
              {"scale", complex_json(rep.scale)},
              {"residual", rep.residual}};
}

}  // namespace torgamma

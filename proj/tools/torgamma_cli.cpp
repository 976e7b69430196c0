#include "torgamma/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace torgamma;

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

IVec parse_ivec(const std::string& s, int len, const char* what) {
  auto parts = split(s);
  if (static_cast<int>(parts.size()) != len)
    throw ToricError("BadInput", std::string(what) + " needs " + std::to_string(len) +
                                     " comma-separated integers");
  IVec v;
  for (const auto& p : parts) v.push_back(Int(std::stoll(p)));
  return v;
}

std::vector<int> parse_simplex(const std::string& s, int npoints) {
  std::vector<int> v;
  for (const auto& p : split(s)) {
    int i = std::stoi(p);
    if (i < 1 || i > npoints) throw ToricError("BadInput", "simplex index out of range");
    v.push_back(i - 1);
  }
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Cx> parse_log_x(const std::string& s, int npoints) {
  auto parts = split(s);
  if (static_cast<int>(parts.size()) != 2 * npoints)
    throw ToricError("BadInput", "--log-x needs re,im pairs for every point");
  std::vector<Cx> v;
  for (int i = 0; i < npoints; ++i)
    v.emplace_back(std::stod(parts[2 * i]), std::stod(parts[2 * i + 1]));
  return v;
}

void emit(const Json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw ToricError("BadInput", "cannot write " + path);
  out << j.dump(2) << "\n";
}

std::vector<SeriesConfig> make_samples(const Fan& fan, double lambda, double theta,
                                       bool large, int truncation, int count) {
  std::vector<SeriesConfig> out;
  for (int k = 0; k < count; ++k) {
    SeriesConfig cfg;
    cfg.truncation = truncation;
    cfg.log_x = sample_log_x(fan, lambda + 0.15 * k, theta * (k + 1), large);
    out.push_back(std::move(cfg));
  }
  return out;
}

// deterministic degrees for the GKZ verification: heights 0..2 for the plain
// series, the Hessian degrees (all interior) for the compact one
std::vector<IVec> plain_degrees(const Fan& f) {
  const int r = f.rank();
  std::vector<IVec> cs;
  cs.push_back(IVec(r, Int(0)));
  for (int i = 0; i < f.npoints(); ++i) {
    cs.push_back(f.point(i));
    for (int j = i; j < f.npoints(); ++j) {
      IVec c = f.point(i);
      for (int k = 0; k < r; ++k) c[k] += f.point(j)[k];
      cs.push_back(c);
    }
  }
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  return cs;
}

std::vector<IVec> interior_degrees(const Fan& f) {
  std::vector<IVec> cs;
  for (const auto& t : hessian_terms(f)) cs.push_back(t.d);
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  return cs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact twisted-sector cohomology, K-theory and Gamma series toolkit"};
  app.require_subcommand(1);

  std::string input, output, table;
  double tolerance = 1e-8;
  int truncation = 12;
  int jobs = 1;
  app.add_option("--input", input, "fan description (JSON)")->required();
  app.add_option("--output", output, "write the JSON report to this file");
  app.add_option("--tolerance", tolerance, "pass/fail threshold for verifications");
  app.add_option("--truncation", truncation, "series truncation order");
  app.add_option("--jobs", jobs, "reserved");

  auto* sc_sectors = app.add_subcommand("sectors", "list twisted sectors and their bases");

  auto* sc_chi = app.add_subcommand("chi", "Euler characteristic of R^alpha G_I");
  std::string chi_alpha, chi_simplex;
  sc_chi->add_option("--alpha", chi_alpha, "exponents, one per point")->required();
  sc_chi->add_option("--simplex", chi_simplex, "interior simplex, 1-based")->required();

  auto* sc_pm = app.add_subcommand("pairing-matrix", "Euler pairing matrix on K bases");
  std::string kb_path, kcb_path;
  sc_pm->add_option("--k-basis", kb_path, "JSON array of alpha vectors");
  sc_pm->add_option("--kc-basis", kcb_path, "JSON array of {alpha, simplex} objects");

  auto* sc_gamma = app.add_subcommand("gamma", "evaluate a Gamma series");
  std::string g_c, g_logx, g_side = "small";
  bool g_compact = false;
  double g_lambda = 4.7, g_theta = 0.1;
  sc_gamma->add_option("--c", g_c, "degree, comma-separated")->required();
  sc_gamma->add_flag("--compact", g_compact, "evaluate the compact series");
  sc_gamma->add_option("--log-x", g_logx, "re,im per point; overrides the sampler");
  sc_gamma->add_option("--lambda", g_lambda, "sampler decay rate");
  sc_gamma->add_option("--theta", g_theta, "sampler phase step");
  sc_gamma->add_option("--side", g_side, "small or large |x| chamber")
      ->check(CLI::IsMember({"small", "large"}));

  auto* sc_verify = app.add_subcommand("verify", "run one of the built-in identity checks");
  std::string v_check, v_side = "small";
  double v_lambda = 4.7, v_theta = 0.05;
  sc_verify->add_option("check", v_check, "gkz | hessian-one | volume | pairing | hrr | rank")
      ->required()
      ->check(CLI::IsMember({"gkz", "hessian-one", "volume", "pairing", "hrr", "rank"}));
  sc_verify->add_option("--table", table, "candidate pairing file (for: pairing)");
  sc_verify->add_option("--lambda", v_lambda, "sampler decay rate");
  sc_verify->add_option("--theta", v_theta, "sampler phase step");
  sc_verify->add_option("--side", v_side, "small or large |x| chamber")
      ->check(CLI::IsMember({"small", "large"}));

  CLI11_PARSE(app, argc, argv);

  try {
    auto fan = make_fan(load_fan(input));
    auto ss = std::make_shared<SectorSet>(fan);

    if (sc_sectors->parsed()) {
      emit(sectors_report(*ss), output);
      return 0;
    }

    auto kt = std::make_shared<KTheory>(ss);

    if (sc_chi->parsed()) {
      IVec alpha = parse_ivec(chi_alpha, fan->npoints(), "--alpha");
      auto I = parse_simplex(chi_simplex, fan->npoints());
      Int value = kt->chi(alpha, I);
      Json rep;
      Json aj = Json::array();
      for (const auto& x : alpha) aj.push_back(to_long(x));
      rep["alpha"] = aj;
      Json sj = Json::array();
      for (int i : I) sj.push_back(i + 1);
      rep["simplex"] = sj;
      rep["chi"] = to_long(value);
      emit(rep, output);
      return 0;
    }

    if (sc_pm->parsed()) {
      std::vector<KMonomial> kb;
      std::vector<KcMonomial> kcb;
      if (!kb_path.empty()) {
        std::ifstream in(kb_path);
        if (!in) throw ToricError("BadInput", "cannot open " + kb_path);
        Json j = Json::parse(in);
        for (const auto& a : j) {
          KMonomial m;
          for (const auto& e : a) m.alpha.push_back(Int(e.get<long long>()));
          kb.push_back(std::move(m));
        }
      }
      if (!kcb_path.empty()) {
        std::ifstream in(kcb_path);
        if (!in) throw ToricError("BadInput", "cannot open " + kcb_path);
        Json j = Json::parse(in);
        for (const auto& a : j) {
          KcMonomial m;
          for (const auto& e : a["alpha"]) m.alpha.push_back(Int(e.get<long long>()));
          for (const auto& e : a["simplex"]) m.simplex.push_back(e.get<int>() - 1);
          std::sort(m.simplex.begin(), m.simplex.end());
          kcb.push_back(std::move(m));
        }
      }
      emit(pairing_matrix_report(kt->pairing_matrix(kb, kcb)), output);
      return 0;
    }

    auto gs = std::make_shared<GammaSeries>(ss, kt);

    if (sc_gamma->parsed()) {
      SeriesConfig cfg;
      cfg.truncation = truncation;
      cfg.log_x = g_logx.empty() ? sample_log_x(*fan, g_lambda, g_theta, g_side == "large")
                                 : parse_log_x(g_logx, fan->npoints());
      IVec c = parse_ivec(g_c, fan->rank(), "--c");
      GammaValue v = g_compact ? gs->gamma_circ(c, cfg) : gs->gamma(c, cfg);
      Json rep = gamma_report(*ss, v);
      Json lx = Json::array();
      for (const auto& z : cfg.log_x) lx.push_back(complex_json(z));
      rep["log_x"] = lx;
      emit(rep, output);
      return 0;
    }

    // verify
    bool pass = false;
    Json rep;
    const bool large = v_side == "large";
    if (v_check == "gkz") {
      SeriesConfig cfg;
      cfg.truncation = truncation;
      cfg.log_x = sample_log_x(*fan, 1.2, 0.17, large);
      GkzReport plain = check_gkz(*gs, plain_degrees(*fan), false, cfg);
      GkzReport compact = check_gkz(*gs, interior_degrees(*fan), true, cfg);
      rep["plain"] = gkz_report(plain);
      rep["compact"] = gkz_report(compact);
      pass = plain.shift_residual < tolerance && plain.euler_residual < tolerance &&
             compact.shift_residual < tolerance && compact.euler_residual < tolerance &&
             plain.compared > 0 && compact.compared > 0;
    } else if (v_check == "hessian-one") {
      auto samples = make_samples(*fan, v_lambda, v_theta, large, truncation, 3);
      OneReport one = pair_with_one(*gs, samples);
      rep = one_report(one);
      pass = one.deviation < tolerance;
    } else if (v_check == "volume") {
      auto samples = make_samples(*fan, v_lambda, v_theta, large, truncation, 3);
      VolumeReport vr = verify_volume_identity(*gs, samples);
      rep = volume_report(vr);
      pass = vr.error < tolerance;
    } else if (v_check == "pairing") {
      if (table.empty()) throw ToricError("BadInput", "verify pairing needs --table");
      auto entries = load_pairing(table, fan->rank(), fan->npoints());
      auto samples = make_samples(*fan, v_lambda, v_theta, large, truncation, 3);
      PairingReport pr = evaluate_candidate_pairing(*gs, entries, samples);
      InverseEulerReport ir = inverse_euler_check(*kt, pr, std::nullopt);
      rep["evaluation"] = pairing_eval_report(pr);
      rep["inverse_euler"] = inverse_euler_report(ir);
      pass = pr.deviation < tolerance && ir.residual < tolerance;
    } else if (v_check == "hrr") {
      auto kb = kt->default_k_basis();
      auto kcb = kt->default_kc_basis();
      int pairs = 0, mismatches = 0;
      for (const auto& w : kb)
        for (const auto& v : kcb) {
          Int lhs = kt->euler_pairing(w, v);
          Cyclotomic rhs = kt->chi_hrr(kt->mul(kt->ch(dual(w)), kt->chc(v)));
          ++pairs;
          if (!rhs.is_rational() || rhs.rational_part() != Rational(lhs)) ++mismatches;
        }
      rep["pairs"] = pairs;
      rep["mismatches"] = mismatches;
      pass = mismatches == 0 && pairs > 0;
    } else if (v_check == "rank") {
      SeriesConfig cfg;
      cfg.truncation = truncation;
      cfg.log_x = sample_log_x(*fan, v_lambda, v_theta, large);
      Cx at0 = gs->rank_functional(gs->gamma(IVec(fan->rank(), Int(0)), cfg));
      rep["at_zero"] = complex_json(at0);
      double worst = std::abs(at0 - Cx(1.0, 0.0));
      Json others = Json::array();
      for (const auto& c : interior_degrees(*fan)) {
        Cx z = gs->rank_functional(gs->gamma(c, cfg));
        Json e;
        e["c"] = Json::array();
        for (const auto& x : c) e["c"].push_back(to_long(x));
        e["value"] = complex_json(z);
        others.push_back(std::move(e));
        worst = std::max(worst, std::abs(z));
      }
      rep["at_interior"] = others;
      rep["worst"] = worst;
      pass = worst < tolerance;
    }
    rep["tolerance"] = tolerance;
    rep["pass"] = pass;
    emit(rep, output);
    return pass ? 0 : 2;
  } catch (const ToricError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

// Acceptance suite for the key worked example: one line per criterion.
// Criteria 1-12 gate the exit status; 13 is informational.

#include "torgamma/io.hpp"
#include "torgamma/pairing.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

using namespace torgamma;

namespace {

const double kPi = std::acos(-1.0);
const Cx kTwoPiI(0.0, 2.0 * kPi);

struct Toolkit {
  std::shared_ptr<SectorSet> ss;
  std::shared_ptr<KTheory> kt;
  std::shared_ptr<GammaSeries> gs;
  int s0 = -1, s1 = -1;

  explicit Toolkit(FanData d) {
    ss = std::make_shared<SectorSet>(make_fan(std::move(d)));
    kt = std::make_shared<KTheory>(ss);
    gs = std::make_shared<GammaSeries>(ss, kt);
    s0 = ss->fan->box_index(IVec{0, 0});
  }
};

FanData fine_data() {
  FanData d;
  d.rank = 2;
  d.points = {{0, 1}, {1, 1}, {3, 1}};
  d.max_simplices = {{0, 1}, {1, 2}};
  d.weights = QVec{1, 0, 1};
  return d;
}

FanData coarse_data() {
  FanData d;
  d.rank = 2;
  d.points = {{0, 1}, {1, 1}, {3, 1}};
  d.max_simplices = {{0, 2}};
  return d;
}

std::vector<SeriesConfig> make_samples(const Fan& f, int count, bool large) {
  std::vector<SeriesConfig> out;
  for (int k = 0; k < count; ++k) {
    SeriesConfig c;
    c.truncation = 14;
    c.log_x = sample_log_x(f, 4.7 + 0.15 * k, 0.05 * (k + 1), large);
    out.push_back(std::move(c));
  }
  return out;
}

int g_failures = 0;

void run(int idx, const std::string& label, bool gating, const std::function<bool()>& body) {
  bool ok = false;
  std::string note;
  try {
    ok = body();
  } catch (const std::exception& e) {
    ok = false;
    note = e.what();
  }
  if (!ok && gating) ++g_failures;
  std::printf("[%2d] %s  %s%s%s%s\n", idx, ok ? "PASS" : "FAIL", label.c_str(),
              gating ? "" : " (informational)", note.empty() ? "" : " -- ", note.c_str());
  std::fflush(stdout);
}

bool close(const Cx& a, const Cx& b, double tol) { return std::abs(a - b) < tol; }

}  // namespace

int main() {
  Toolkit fine(fine_data());
  fine.s1 = fine.ss->fan->box_index(IVec{2, 1});
  Toolkit coarse(coarse_data());
  const std::string table_file = std::string(TORGAMMA_DATA_DIR) + "/explicit-pairing.json";

  run(1, "Euler pairing table on the monomial bases (fine fan)", true, [&] {
    auto pm = fine.kt->pairing_matrix({}, {});
    if (pm.kbasis.size() != 3 || pm.kcbasis.size() != 3) return false;
    for (int k = 0; k < 3; ++k) {
      if (pm.kbasis[static_cast<size_t>(k)].alpha != IVec{0, 0, k}) return false;
      if (pm.kcbasis[static_cast<size_t>(k)].alpha != IVec{0, 0, k}) return false;
      if (pm.kcbasis[static_cast<size_t>(k)].simplex != std::vector<int>{1}) return false;
    }
    return pm.entries == IMat{{1, 0, 0}, {1, 1, 0}, {2, 1, 1}} && pm.det == 1;
  });

  run(2, "chi closed form on powers of R3 (fine fan)", true, [&] {
    for (int k = 0; k <= 8; ++k) {
      Int want = (k % 2 == 0) ? Int(k / 2 + 1) : Int((k + 1) / 2);
      if (fine.kt->chi(IVec{0, 0, k}, {1}) != want) return false;
    }
    return true;
  });

  run(3, "chi selects multiples of three (coarse fan)", true, [&] {
    for (int k = 0; k <= 8; ++k) {
      Int want = (k % 3 == 0) ? Int(1) : Int(0);
      if (coarse.kt->chi(IVec{0, 0, k}, {0, 2}) != want) return false;
    }
    return true;
  });

  run(4, "chi agrees with the fixed-point Riemann-Roch form", true, [&] {
    for (Toolkit* t : {&fine, &coarse}) {
      for (const auto& w : t->kt->default_k_basis())
        for (const auto& v : t->kt->default_kc_basis()) {
          Cyclotomic rr = t->kt->chi_hrr(t->kt->mul(t->kt->ch(dual(w)), t->kt->chc(v)));
          if (!rr.is_rational()) return false;
          if (rr.rational_part() != Rational(t->kt->euler_pairing(w, v))) return false;
        }
    }
    return true;
  });

  run(5, "ch and chc fixtures (fine fan)", true, [&] {
    int s0 = fine.s0, s1 = fine.s1;
    auto r3 = fine.kt->ch(KMonomial{IVec{0, 0, 1}});
    if (r3.comp[s0][0].rational_part() != 1) return false;
    if (r3.comp[s0][1].rational_part() != 1) return false;
    if (r3.comp[s1][0].rational_part() != -1) return false;
    auto g2 = fine.kt->chc(KcMonomial{IVec{0, 0, 0}, {1}});
    if (g2.comp[s0][0].rational_part() != 1) return false;
    if (g2.comp[s0][1].rational_part() != Rational(3) / 2) return false;
    if (g2.comp[s1][0].rational_part() != 2) return false;
    auto r3g2 = fine.kt->chc(KcMonomial{IVec{0, 0, 1}, {1}});
    if (r3g2.comp[s0][0].rational_part() != 1) return false;
    if (r3g2.comp[s0][1].rational_part() != Rational(5) / 2) return false;
    if (r3g2.comp[s1][0].rational_part() != -2) return false;
    return true;
  });

  run(6, "integration table of the key example", true, [&] {
    const Sector& u = fine.ss->sectors[static_cast<size_t>(fine.s0)];
    const Sector& t = fine.ss->sectors[static_cast<size_t>(fine.s1)];
    return u.integrals() == QVec{0, Rational(1) / 2} && t.integrals() == QVec{1};
  });

  run(7, "Gamma series coefficients match the worked displays", true, [&] {
    std::vector<Cx> lx = {Cx(-3.0, 0.13), Cx(-2.0, 0.26), Cx(-3.0, 0.39)};
    Cx LX = 2.0 * lx[0] - 3.0 * lx[1] + lx[2];
    Cx x = std::exp(LX);
    auto xpow = [&](const QVec& l) {
      Cx e(0, 0);
      for (size_t i = 0; i < l.size(); ++i) e += to_double(l[i]) * lx[i];
      return std::exp(e);
    };
    const GammaSeries& gs = *fine.gs;
    int s0 = fine.s0, s1 = fine.s1;
    const double rel = 1e-10;

    // untwisted Gamma_(0,0): D3 coefficients -3, 15/2 at x, x^2
    auto t1 = gs.term(s0, QVec{2, -3, 1}, lx);
    if (!close(t1[1], -3.0 * x / kTwoPiI, rel * std::abs(x))) return false;
    auto t2 = gs.term(s0, QVec{4, -6, 2}, lx);
    if (!close(t2[1], 7.5 * x * x / kTwoPiI, rel * std::abs(x * x))) return false;

    // twisted Gamma_(0,0): -1, 35/24, -3003/640 over pi
    struct TwistedCase {
      QVec l;
      double coeff;
    };
    for (const TwistedCase& c :
         {TwistedCase{{1, Rational(-3) / 2, Rational(1) / 2}, -1.0},
          TwistedCase{{3, Rational(-9) / 2, Rational(3) / 2}, 35.0 / 24},
          TwistedCase{{5, Rational(-15) / 2, Rational(5) / 2}, -3003.0 / 640},
          // twisted Gamma_(2,1): 1, -15/8, 1155/128 over pi
          TwistedCase{{0, Rational(-1) / 2, Rational(-1) / 2}, 1.0},
          TwistedCase{{2, Rational(-7) / 2, Rational(1) / 2}, -15.0 / 8},
          TwistedCase{{4, Rational(-13) / 2, Rational(3) / 2}, 1155.0 / 128}}) {
      Cx xl = xpow(c.l);
      auto v = gs.term(s1, c.l, lx);
      if (!close(v[0], c.coeff / kPi * xl, rel * std::abs(xl))) return false;
    }

    // Gamma-circ_(1,1): F_2 coefficients 1, -3, 15 over 2 pi i,
    // and non-log D3 F_2 coefficients -9/2, 101/4 over (2 pi i)^2
    Cx c2 = 1.0 / kTwoPiI;
    auto u0 = gs.term_circ(s0, QVec{0, -1, 0}, lx);
    Cx p0 = xpow(QVec{0, -1, 0});
    if (!close(u0[0], p0 * c2, rel * std::abs(p0))) return false;
    if (!close(u0[1], p0 * LX * c2 * c2, rel * std::abs(p0))) return false;
    auto u1 = gs.term_circ(s0, QVec{2, -4, 1}, lx);
    Cx p1 = xpow(QVec{2, -4, 1});
    if (!close(u1[0], p1 * -3.0 * c2, rel * std::abs(p1))) return false;
    if (!close(u1[1], p1 * (-3.0 * LX - 4.5) * c2 * c2, rel * std::abs(p1))) return false;
    auto u2 = gs.term_circ(s0, QVec{4, -7, 2}, lx);
    Cx p2 = xpow(QVec{4, -7, 2});
    if (!close(u2[0], p2 * 15.0 * c2, rel * std::abs(p2))) return false;
    if (!close(u2[1], p2 * (15.0 * LX + 25.25) * c2 * c2, rel * std::abs(p2))) return false;
    return true;
  });

  run(8, "bbGKZ shift and Euler relations hold on samples", true, [&] {
    SeriesConfig cfg;
    cfg.truncation = 12;
    cfg.log_x = sample_log_x(*fine.ss->fan, 4.7, 0.17, false);
    std::vector<IVec> plain = {{0, 0}, {0, 1}, {1, 1}, {2, 1}};
    std::vector<IVec> inner = {{1, 1}, {2, 1}, {3, 2}, {4, 2}};
    auto rp = check_gkz(*fine.gs, plain, false, cfg);
    auto rc = check_gkz(*fine.gs, inner, true, cfg);
    if (rp.compared == 0 || rc.compared == 0) return false;
    if (rp.shift_residual > 1e-8 || rp.euler_residual > 1e-8) return false;
    if (rc.shift_residual > 1e-8 || rc.euler_residual > 1e-8) return false;
    return true;
  });

  run(9, "rank functional is the delta at c = 0", true, [&] {
    SeriesConfig cfg;
    cfg.truncation = 12;
    cfg.log_x = sample_log_x(*fine.ss->fan, 4.7, 0.1, false);
    for (const IVec& c : {IVec{0, 0}, IVec{1, 1}, IVec{2, 1}, IVec{3, 1}}) {
      Cx want = (c == IVec{0, 0}) ? Cx(1, 0) : Cx(0, 0);
      if (!close(fine.gs->rank_functional(fine.gs->gamma(c, cfg)), want, 1e-10)) return false;
    }
    return true;
  });

  run(10, "pairing with 1 is the volume constant on both fans", true, [&] {
    auto rf = verify_volume_identity(*fine.gs, make_samples(*fine.ss->fan, 3, false));
    if (rf.one.deviation > 1e-6 || rf.error > 1e-6) return false;
    auto rc = verify_volume_identity(*coarse.gs, make_samples(*coarse.ss->fan, 3, true));
    if (rc.one.deviation > 1e-6 || rc.error > 1e-6) return false;
    return true;
  });

  run(11, "explicit pairing table: constant, inverse Euler matrix (fine)", true, [&] {
    auto table = load_pairing(table_file, 2, 3);
    auto rep = evaluate_candidate_pairing(*fine.gs, table, make_samples(*fine.ss->fan, 3, false));
    if (rep.used != 8 || rep.deviation > 1e-6) return false;
    auto chk = inverse_euler_check(*fine.kt, rep, std::nullopt);
    double scale = -3.0 / (4 * kPi * kPi);
    if (!close(chk.scale, Cx(scale, 0), 1e-6)) return false;
    return chk.residual < 1e-6;
  });

  run(12, "explicit pairing table on the coarse fan at large |x|", true, [&] {
    auto table = load_pairing(table_file, 2, 3);
    auto rep =
        evaluate_candidate_pairing(*coarse.gs, table, make_samples(*coarse.ss->fan, 3, true));
    if (rep.used != 8 || rep.deviation > 1e-5) return false;
    double scale = -3.0 / (4 * kPi * kPi);
    auto chk = inverse_euler_check(*coarse.kt, rep, Cx(scale, 0));
    if (chk.residual > 1e-5) return false;
    // -(3/4pi^2) (1 (x) G13 + R3 (x) R3 G13 + R3^2 (x) R3^2 G13)
    for (size_t a = 0; a < 3; ++a)
      for (size_t b = 0; b < 3; ++b) {
        Cx want = (a == b) ? Cx(scale, 0) : Cx(0, 0);
        if (!close(chk.coeffs[a][b], want, 1e-5)) return false;
      }
    return true;
  });

  run(13, "numeric match with the elementary closed form", false, [&] {
    SeriesConfig cfg;
    cfg.truncation = 16;
    cfg.log_x = {Cx(-3.0, 0), Cx(0, 0), Cx(0, 0)};
    double x = std::exp(-6.0);

    auto v0 = fine.gs->gamma(IVec{0, 0}, cfg);
    double rt = std::sqrt(x), rp = std::sqrt(4.0 / 27 + x);
    double g1 = 3.0 * std::log(std::cbrt(rt + rp) - std::cbrt(rp - rt)) - 0.5 * std::log(4 * x);
    double c43 = std::pow(2.0, 4.0 / 3), c23 = std::pow(2.0, 2.0 / 3);
    double arg = (-c23 + 3 * std::pow(rt + rp, 2.0 / 3)) /
                 (std::sqrt(3.0) * (c23 + 3 * std::pow(rt + rp, 2.0 / 3)));
    if (!close(v0.comp[static_cast<size_t>(fine.s0)][0], Cx(1, 0), 1e-6)) return false;
    if (!close(v0.comp[static_cast<size_t>(fine.s0)][1], Cx(g1, 0) / kTwoPiI, 1e-6)) return false;
    if (!close(v0.comp[static_cast<size_t>(fine.s1)][0], Cx(-2.0 / kPi * std::atan(arg), 0),
               1e-6))
      return false;

    auto v2 = fine.gs->gamma(IVec{2, 1}, cfg);
    double s27 = std::sqrt(27 * x), s4 = std::sqrt(4 + 27 * x);
    double d3part = std::exp(3.0) * 9 * c43 * x /
                    (c43 + std::pow(s4 - s27, 4.0 / 3) + std::pow(s27 + s4, 4.0 / 3));
    double twisted = (std::pow(s4 - s27, 2.0 / 3) + std::pow(s27 + s4, 2.0 / 3)) / (c23 * kPi * s4);
    if (!close(v2.comp[static_cast<size_t>(fine.s0)][1], Cx(d3part, 0) / kTwoPiI, 1e-6))
      return false;
    if (!close(v2.comp[static_cast<size_t>(fine.s1)][0], Cx(twisted, 0), 1e-6)) return false;
    return true;
  });

  if (g_failures == 0) {
    std::printf("acceptance: all gating criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d gating criteria failed\n", g_failures);
  return 1;
}

#include <doctest.h>

#include "fixtures.hpp"
#include "torgamma/gamma_series.hpp"

#include <cmath>
#include <complex>
#include <memory>

using namespace torgamma;

namespace {

const double kGamma = 0.5772156649015328606;
const double kPi = std::acos(-1.0);
const Cx kTwoPiI(0.0, 2.0 * std::acos(-1.0));

struct GS {
  std::shared_ptr<SectorSet> ss;
  std::shared_ptr<KTheory> kt;
  GammaSeries gs;
  explicit GS(FanData d)
      : ss(std::make_shared<SectorSet>(make_fan(std::move(d)))),
        kt(std::make_shared<KTheory>(ss)),
        gs(ss, kt) {}
};

Cx expo(const QVec& l, const std::vector<Cx>& log_x) {
  Cx e(0.0, 0.0);
  for (size_t i = 0; i < l.size(); ++i) e += to_double(l[i]) * log_x[i];
  return std::exp(e);
}

}  // namespace

TEST_CASE("reciprocal gamma jet at 1") {
  auto j = recip_gamma_jet(Rational(1), 3);
  REQUIRE(j.size() == 4);
  CHECK(std::abs(j[0] - 1.0) < 1e-15);
  CHECK(std::abs(j[1] - kGamma) < 1e-14);
  CHECK(std::abs(j[2] - (kGamma * kGamma / 2 - kPi * kPi / 12)) < 1e-14);

  // 1/Gamma(4+t) = (1/6)(1 - psi(4) t + ...)
  auto j4 = recip_gamma_jet(Rational(4), 1);
  double psi4 = -kGamma + 1 + 0.5 + 1.0 / 3;
  CHECK(std::abs(j4[0] - 1.0 / 6) < 1e-15);
  CHECK(std::abs(j4[1] + psi4 / 6) < 1e-14);
}

TEST_CASE("reciprocal gamma jets vanish exactly at the poles") {
  for (int n : {0, -1, -2, -5, -40}) {
    auto j = recip_gamma_jet(Rational(n), 2);
    CHECK(j[0] == 0.0);
  }
  // 1/Gamma(-n+t) = (-1)^n n! t + O(t^2)
  CHECK(std::abs(recip_gamma_jet(Rational(0), 1)[1] - 1.0) < 1e-14);
  CHECK(std::abs(recip_gamma_jet(Rational(-1), 1)[1] + 1.0) < 1e-14);
  CHECK(std::abs(recip_gamma_jet(Rational(-2), 1)[1] - 2.0) < 1e-13);
  CHECK(std::abs(recip_gamma_jet(Rational(-3), 1)[1] + 6.0) < 1e-13);
  CHECK(std::abs(recip_gamma_jet(Rational(-5), 1)[1] + 120.0) < 1e-11);
}

TEST_CASE("reciprocal gamma jets at fractional points") {
  double spi = std::sqrt(kPi);
  auto h = recip_gamma_jet(Rational(1) / 2, 1);
  CHECK(std::abs(h[0] - 1.0 / spi) < 1e-14);
  CHECK(std::abs(h[1] - (kGamma + 2 * std::log(2.0)) / spi) < 1e-13);

  auto m = recip_gamma_jet(Rational(-5) / 2, 0);
  CHECK(std::abs(m[0] + 15.0 / (8 * spi)) < 1e-13);

  struct Case {
    Rational a;
    double x;
  };
  for (const Case& c : {Case{Rational(1) / 3, 1.0 / 3}, Case{Rational(7) / 3, 7.0 / 3},
                        Case{Rational(-4) / 3, -4.0 / 3}, Case{Rational(5) / 2, 2.5},
                        Case{Rational(-31) / 4, -7.75}}) {
    double want = 1.0 / std::tgamma(c.x);
    auto j = recip_gamma_jet(c.a, 0);
    CHECK(std::abs(j[0] - want) < 1e-12 * (1.0 + std::abs(want)));
  }
}

TEST_CASE("term enumeration for the fine fan") {
  GS g(fine_data());
  int s0 = g.ss->fan->box_index(IVec{0, 0});
  int s1 = g.ss->fan->box_index(IVec{2, 1});

  auto base0 = g.gs.lattice_offset(IVec{0, 0}, s0);
  REQUIRE(base0.has_value());
  auto terms = g.gs.enumerate_terms(IVec{0, 0}, s0, 8);
  CHECK(terms.size() == 7);  // multiples k of (2,-3,1) with -2 <= k <= 4
  for (const auto& l : terms) {
    // sum l_i v_i = 0 and integrality
    Rational c0 = 0, c1 = 0;
    for (int i = 0; i < 3; ++i) {
      c0 += l[i] * Rational(g.ss->fan->point(i)[0]);
      c1 += l[i] * Rational(g.ss->fan->point(i)[1]);
      CHECK(is_integer(l[i]));
    }
    CHECK(c0 == 0);
    CHECK(c1 == 0);
  }

  auto tws = g.gs.enumerate_terms(IVec{0, 0}, s1, 8);
  CHECK(!tws.empty());
  for (const auto& l : tws) {
    CHECK(frac_part(l[1]) == Rational(1) / 2);
    CHECK(frac_part(l[2]) == Rational(1) / 2);
    CHECK(is_integer(l[0]));
  }
}

TEST_CASE("plain gamma term values match the series displays") {
  GS g(fine_data());
  int s0 = g.ss->fan->box_index(IVec{0, 0});
  int s1 = g.ss->fan->box_index(IVec{2, 1});
  std::vector<Cx> lx = {Cx(-3.0, 0.13), Cx(-2.0, 0.26), Cx(-3.0, 0.39)};
  Cx LX = 2.0 * lx[0] - 3.0 * lx[1] + lx[2];  // log of x = x1^2 x2^-3 x3
  Cx x = std::exp(LX);

  // k = 0: 1 + log(x) D3/(2 pi i); the Euler-gamma corrections cancel
  auto t0 = g.gs.term(s0, QVec{0, 0, 0}, lx);
  CHECK(std::abs(t0[0] - 1.0) < 1e-14);
  CHECK(std::abs(t0[1] - LX / kTwoPiI) < 1e-13);

  // k = 1: the identity coordinate dies on an exact pole zero
  auto t1 = g.gs.term(s0, QVec{2, -3, 1}, lx);
  CHECK(std::abs(t1[0]) == 0.0);
  CHECK(std::abs(t1[1] - (-3.0) * x / kTwoPiI) < 1e-12 * std::abs(x));

  // k = 2
  auto t2 = g.gs.term(s0, QVec{4, -6, 2}, lx);
  CHECK(std::abs(t2[1] - 7.5 * x * x / kTwoPiI) < 1e-12 * std::abs(x * x));

  // twisted component of Gamma_(0,0): coefficients -1, 35/24, -3003/640 over pi
  auto w1 = g.gs.term(s1, QVec{1, Rational(-3) / 2, Rational(1) / 2}, lx);
  Cx xl1 = expo(QVec{1, Rational(-3) / 2, Rational(1) / 2}, lx);
  CHECK(std::abs(w1[0] - (-1.0 / kPi) * xl1) < 1e-13 * std::abs(xl1));
  auto w2 = g.gs.term(s1, QVec{3, Rational(-9) / 2, Rational(3) / 2}, lx);
  Cx xl2 = expo(QVec{3, Rational(-9) / 2, Rational(3) / 2}, lx);
  CHECK(std::abs(w2[0] - (35.0 / 24 / kPi) * xl2) < 1e-12 * std::abs(xl2));
  auto w3 = g.gs.term(s1, QVec{5, Rational(-15) / 2, Rational(5) / 2}, lx);
  Cx xl3 = expo(QVec{5, Rational(-15) / 2, Rational(5) / 2}, lx);
  CHECK(std::abs(w3[0] - (-3003.0 / 640 / kPi) * xl3) < 1e-11 * std::abs(xl3));

  // twisted series of Gamma_(2,1): 1, -15/8, 1155/128 over pi
  auto u0 = g.gs.term(s1, QVec{0, Rational(-1) / 2, Rational(-1) / 2}, lx);
  Cx yl0 = expo(QVec{0, Rational(-1) / 2, Rational(-1) / 2}, lx);
  CHECK(std::abs(u0[0] - (1.0 / kPi) * yl0) < 1e-13 * std::abs(yl0));
  auto u1 = g.gs.term(s1, QVec{2, Rational(-7) / 2, Rational(1) / 2}, lx);
  Cx yl1 = expo(QVec{2, Rational(-7) / 2, Rational(1) / 2}, lx);
  CHECK(std::abs(u1[0] - (-15.0 / 8 / kPi) * yl1) < 1e-12 * std::abs(yl1));
  auto u2 = g.gs.term(s1, QVec{4, Rational(-13) / 2, Rational(3) / 2}, lx);
  Cx yl2 = expo(QVec{4, Rational(-13) / 2, Rational(3) / 2}, lx);
  CHECK(std::abs(u2[0] - (1155.0 / 128 / kPi) * yl2) < 1e-12 * std::abs(yl2));
}

TEST_CASE("compact gamma term values match the series displays") {
  GS g(fine_data());
  int s0 = g.ss->fan->box_index(IVec{0, 0});
  int s1 = g.ss->fan->box_index(IVec{2, 1});
  std::vector<Cx> lx = {Cx(-3.0, 0.13), Cx(-2.0, 0.26), Cx(-3.0, 0.39)};
  Cx LX = 2.0 * lx[0] - 3.0 * lx[1] + lx[2];
  Cx x = std::exp(LX);
  Cx c2 = 1.0 / kTwoPiI;

  // Gamma-circ_(1,1), untwisted component, F_2 and D3 F_2 coordinates
  auto t0 = g.gs.term_circ(s0, QVec{0, -1, 0}, lx);
  Cx p0 = expo(QVec{0, -1, 0}, lx);
  CHECK(std::abs(t0[0] - p0 * c2) < 1e-14 * std::abs(p0));
  CHECK(std::abs(t0[1] - p0 * LX * c2 * c2) < 1e-13 * std::abs(p0));

  auto t1 = g.gs.term_circ(s0, QVec{2, -4, 1}, lx);
  Cx p1 = expo(QVec{2, -4, 1}, lx);
  CHECK(std::abs(t1[0] - p1 * (-3.0) * c2) < 1e-12 * std::abs(p1));
  CHECK(std::abs(t1[1] - p1 * (-3.0 * LX - 4.5) * c2 * c2) < 1e-12 * std::abs(p1));

  auto t2 = g.gs.term_circ(s0, QVec{4, -7, 2}, lx);
  Cx p2 = expo(QVec{4, -7, 2}, lx);
  CHECK(std::abs(t2[0] - p2 * 15.0 * c2) < 1e-12 * std::abs(p2));
  CHECK(std::abs(t2[1] - p2 * (15.0 * LX + 25.25) * c2 * c2) < 1e-11 * std::abs(p2));

  // twisted component: no sigma factors, plain reciprocal gammas
  auto w0 = g.gs.term_circ(s1, QVec{1, Rational(-5) / 2, Rational(1) / 2}, lx);
  Cx q0 = expo(QVec{1, Rational(-5) / 2, Rational(1) / 2}, lx);
  CHECK(std::abs(w0[0] - q0 * (3.0 / (2 * kPi))) < 1e-13 * std::abs(q0));

  // terms landing outside the chamber die: sigma not in the fan
  auto dead = g.gs.term_circ(s0, QVec{-2, 2, -1}, lx);
  CHECK(std::abs(dead[0]) == 0.0);
  CHECK(std::abs(dead[1]) == 0.0);
  auto dead2 = g.gs.term_circ(s1, QVec{-1, Rational(1) / 2, Rational(-1) / 2}, lx);
  CHECK(std::abs(dead2[0]) == 0.0);
}

TEST_CASE("coarse fan twisted leading coefficient") {
  GS g(coarse_data());
  int s1 = g.ss->fan->box_index(IVec{1, 1});
  std::vector<Cx> lx = {Cx(2.0, 0.11), Cx(3.0, 0.07), Cx(2.0, 0.05)};
  QVec l = {Rational(-4) / 3, 2, Rational(-2) / 3};
  auto t = g.gs.term(s1, l, lx);
  Cx xl = expo(l, lx);
  double want = -std::sqrt(3.0) / (12 * kPi);
  CHECK(std::abs(t[0] - want * xl) < 1e-12 * std::abs(xl));
}

TEST_CASE("gamma evaluation, rank functional and validation") {
  GS g(fine_data());
  SeriesConfig cfg;
  cfg.truncation = 12;
  cfg.log_x = sample_log_x(*g.ss->fan, 4.7, 0.1, false);

  auto v0 = g.gs.gamma(IVec{0, 0}, cfg);
  CHECK(v0.terms > 0);
  CHECK(!v0.compact);
  CHECK(v0.tail < 1e-10);
  CHECK(std::abs(g.gs.rank_functional(v0) - 1.0) < 1e-10);
  for (const IVec& c : {IVec{1, 1}, IVec{2, 1}, IVec{3, 1}}) {
    auto v = g.gs.gamma(c, cfg);
    CHECK(std::abs(g.gs.rank_functional(v)) < 1e-10);
  }

  auto w = g.gs.gamma_circ(IVec{1, 1}, cfg);
  CHECK(w.compact);
  CHECK(w.terms > 0);

  CHECK_THROWS_AS(g.gs.gamma(IVec{-1, 0}, cfg), ToricError);      // outside the cone
  CHECK_THROWS_AS(g.gs.gamma_circ(IVec{0, 1}, cfg), ToricError);  // boundary point
  SeriesConfig bad = cfg;
  bad.log_x.pop_back();
  CHECK_THROWS_AS(g.gs.gamma(IVec{0, 0}, bad), ToricError);
}

TEST_CASE("gkz relations hold termwise on both fans") {
  SeriesConfig cfg;
  cfg.truncation = 12;
  std::vector<IVec> plain = {{0, 0}, {0, 1}, {1, 1}, {2, 1}};
  std::vector<IVec> inner = {{1, 1}, {2, 1}, {3, 2}, {4, 2}};

  GS g(fine_data());
  cfg.log_x = sample_log_x(*g.ss->fan, 4.7, 0.17, false);
  auto r1 = check_gkz(g.gs, plain, false, cfg);
  CHECK(r1.compared > 0);
  CHECK(r1.shift_residual < 1e-8);
  CHECK(r1.euler_residual < 1e-8);
  auto r2 = check_gkz(g.gs, inner, true, cfg);
  CHECK(r2.compared > 0);
  CHECK(r2.shift_residual < 1e-8);
  CHECK(r2.euler_residual < 1e-8);

  GS gc(coarse_data());
  cfg.log_x = sample_log_x(*gc.ss->fan, 4.7, 0.17, true);
  auto r3 = check_gkz(gc.gs, plain, false, cfg);
  CHECK(r3.compared > 0);
  CHECK(r3.shift_residual < 1e-8);
  auto r4 = check_gkz(gc.gs, inner, true, cfg);
  CHECK(r4.compared > 0);
  CHECK(r4.shift_residual < 1e-8);
  CHECK(r4.euler_residual < 1e-8);
}

TEST_CASE("sample points follow the convexity certificate") {
  auto f = make_fan(fine_data());
  auto lx = sample_log_x(*f, 4.7, 0.1, false);
  REQUIRE(lx.size() == 3);
  CHECK(lx[0].real() == doctest::Approx(-9.4));
  CHECK(lx[1].real() == doctest::Approx(-4.7));
  CHECK(lx[2].real() == doctest::Approx(-9.4));
  CHECK(lx[0].imag() == doctest::Approx(0.1));
  CHECK(lx[1].imag() == doctest::Approx(0.2));
  CHECK(lx[2].imag() == doctest::Approx(0.3));

  auto ly = sample_log_x(*f, 4.7, 0.1, true);
  CHECK(ly[0].real() == doctest::Approx(4.7));
  CHECK(ly[1].real() == doctest::Approx(9.4));
  CHECK(ly[2].real() == doctest::Approx(4.7));
}

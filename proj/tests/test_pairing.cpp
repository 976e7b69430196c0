#include <doctest.h>

#include "fixtures.hpp"
#include "torgamma/io.hpp"
#include "torgamma/pairing.hpp"

#include <cmath>
#include <complex>
#include <memory>
#include <string>

using namespace torgamma;

namespace {

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

std::vector<SeriesConfig> make_samples(const Fan& f, int count, double lambda0, double theta,
                                       bool large, int truncation) {
  std::vector<SeriesConfig> out;
  for (int k = 0; k < count; ++k) {
    SeriesConfig c;
    c.truncation = truncation;
    c.log_x = sample_log_x(f, lambda0 + 0.15 * k, theta * (k + 1), large);
    out.push_back(std::move(c));
  }
  return out;
}

int mod_offset(const SectorSet& ss, int sector) {
  int off = 0;
  for (int s = 0; s < sector; ++s) off += ss.sectors[static_cast<size_t>(s)].mdim();
  return off;
}

int alg_offset(const SectorSet& ss, int sector) {
  int off = 0;
  for (int s = 0; s < sector; ++s) off += ss.sectors[static_cast<size_t>(s)].dim();
  return off;
}

std::string table_path() { return std::string(TORGAMMA_DATA_DIR) + "/explicit-pairing.json"; }

}  // namespace

TEST_CASE("hessian terms of the key example") {
  auto f = make_fan(fine_data());
  auto h = hessian_terms(*f);
  REQUIRE(h.size() == 3);
  CHECK(h[0].simplex == std::vector<int>{0, 1});
  CHECK(h[0].vol2 == 1);
  CHECK(h[0].d == IVec{1, 2});
  CHECK(h[1].simplex == std::vector<int>{0, 2});
  CHECK(h[1].vol2 == 9);
  CHECK(h[1].d == IVec{3, 2});
  CHECK(h[2].simplex == std::vector<int>{1, 2});
  CHECK(h[2].vol2 == 4);
  CHECK(h[2].d == IVec{4, 2});
}

TEST_CASE("volume identity on a rank one fan with a duplicated point") {
  FanData d;
  d.rank = 1;
  d.points = {{1}, {1}};
  d.max_simplices = {{0}};
  GS g(std::move(d));

  auto h = hessian_terms(*g.ss->fan);
  REQUIRE(h.size() == 2);
  CHECK(h[0].vol2 == 1);
  CHECK(h[1].vol2 == 1);
  CHECK(h[0].d == IVec{1});
  CHECK(h[1].d == IVec{1});

  auto samples = make_samples(*g.ss->fan, 3, 4.7, 0.05, false, 14);
  auto rep = verify_volume_identity(g.gs, samples);
  CHECK(rep.error < 1e-6);
  CHECK(rep.one.deviation < 1e-6);
}

TEST_CASE("pairing with one equals the volume constant on both fans") {
  GS g(fine_data());
  auto samples = make_samples(*g.ss->fan, 3, 4.7, 0.05, false, 14);
  auto rep = verify_volume_identity(g.gs, samples);
  CHECK(rep.error < 1e-6);
  CHECK(rep.one.deviation < 1e-6);
  CHECK(rep.one.tail < 1e-8);

  // constant = 3/(2 pi i)^2 * Vol_J F_J: only the D3 F_2 coordinate survives
  int s0 = g.ss->fan->box_index(IVec{0, 0});
  int s1 = g.ss->fan->box_index(IVec{2, 1});
  Cx want = 3.0 / (kTwoPiI * kTwoPiI) * 2.0;
  CHECK(std::abs(rep.one.value[static_cast<size_t>(mod_offset(*g.ss, s0) + 1)] - want) < 1e-6);
  CHECK(std::abs(rep.one.value[static_cast<size_t>(mod_offset(*g.ss, s0))]) < 1e-6);
  CHECK(std::abs(rep.one.value[static_cast<size_t>(mod_offset(*g.ss, s1))]) < 1e-6);
  CHECK(std::abs(rep.expected[static_cast<size_t>(mod_offset(*g.ss, s0) + 1)] - want) < 1e-12);

  GS gc(coarse_data());
  auto csamples = make_samples(*gc.ss->fan, 3, 4.7, 0.05, true, 14);
  auto crep = verify_volume_identity(gc.gs, csamples);
  CHECK(crep.error < 1e-6);
}

TEST_CASE("bundled table matches the inverse euler pairing on the fine fan") {
  GS g(fine_data());
  auto table = load_pairing(table_path(), 2, 3);
  REQUIRE(table.size() == 8);

  auto samples = make_samples(*g.ss->fan, 3, 4.7, 0.05, false, 14);
  auto rep = evaluate_candidate_pairing(g.gs, table, samples, -1);
  CHECK(rep.used == 8);
  CHECK(rep.warnings.empty());
  CHECK(rep.deviation < 1e-6);

  int s0 = g.ss->fan->box_index(IVec{0, 0});
  int s1 = g.ss->fan->box_index(IVec{2, 1});
  int a0 = alg_offset(*g.ss, s0), a1 = alg_offset(*g.ss, s1);
  int m0 = mod_offset(*g.ss, s0), m1 = mod_offset(*g.ss, s1);
  double c = -3.0 / (2 * kPi * kPi);
  // -3/(2 pi^2) (1 (x) D3 F_2 - D3 (x) F_2 + 4 1_tw (x) Fbar)
  CHECK(std::abs(rep.tensor[a0][m0 + 1] - Cx(c, 0)) < 1e-6);
  CHECK(std::abs(rep.tensor[a0 + 1][m0] - Cx(-c, 0)) < 1e-6);
  CHECK(std::abs(rep.tensor[a1][m1] - Cx(4 * c, 0)) < 1e-6);
  CHECK(std::abs(rep.tensor[a0][m0]) < 1e-6);
  CHECK(std::abs(rep.tensor[a0 + 1][m0 + 1]) < 1e-6);
  CHECK(std::abs(rep.tensor[a0][m1]) < 1e-6);
  CHECK(std::abs(rep.tensor[a1][m0]) < 1e-6);

  double scale = -3.0 / (4 * kPi * kPi);
  auto fitted = inverse_euler_check(*g.kt, rep, std::nullopt);
  CHECK(std::abs(fitted.scale - Cx(scale, 0)) < 1e-6);
  CHECK(fitted.residual < 1e-6);

  auto pinned = inverse_euler_check(*g.kt, rep, Cx(scale, 0));
  CHECK(pinned.residual < 1e-6);
  // coefficient matrix is scale * P^-1 = scale * [[1,0,0],[-1,1,0],[-1,-1,1]]
  CHECK(std::abs(pinned.coeffs[0][0] - Cx(scale, 0)) < 1e-6);
  CHECK(std::abs(pinned.coeffs[1][0] - Cx(-scale, 0)) < 1e-6);
  CHECK(std::abs(pinned.coeffs[2][0] - Cx(-scale, 0)) < 1e-6);
  CHECK(std::abs(pinned.coeffs[2][1] - Cx(-scale, 0)) < 1e-6);
  CHECK(std::abs(pinned.coeffs[0][1]) < 1e-6);
  CHECK(std::abs(pinned.coeffs[1][2]) < 1e-6);
}

TEST_CASE("bundled table works on the coarse fan at large x") {
  GS g(coarse_data());
  auto table = load_pairing(table_path(), 2, 3);
  auto samples = make_samples(*g.ss->fan, 3, 4.7, 0.05, true, 14);
  auto rep = evaluate_candidate_pairing(g.gs, table, samples, -1);
  CHECK(rep.used == 8);
  CHECK(rep.deviation < 1e-5);

  double scale = -3.0 / (4 * kPi * kPi);
  auto chk = inverse_euler_check(*g.kt, rep, Cx(scale, 0));
  CHECK(chk.residual < 1e-5);
  // the coarse Euler matrix is the identity, so the coefficients are scalar
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Cx want = (a == b) ? Cx(scale, 0) : Cx(0, 0);
      CHECK(std::abs(chk.coeffs[static_cast<size_t>(a)][static_cast<size_t>(b)] - want) < 1e-5);
    }
}

TEST_CASE("degree bound filters entries") {
  GS g(fine_data());
  auto table = load_pairing(table_path(), 2, 3);
  auto samples = make_samples(*g.ss->fan, 1, 4.7, 0.05, false, 10);
  auto rep = evaluate_candidate_pairing(g.gs, table, samples, 1);
  CHECK(rep.used == 0);
  CHECK(rep.warnings.size() == 8);

  // malformed entries are rejected outright
  std::vector<PairingEntry> bad = {{IVec{0, 1}, IVec{0, 1}, {{Rational(1), {0, 0, 0}}}}};
  CHECK_THROWS_AS(evaluate_candidate_pairing(g.gs, bad, samples, -1), ToricError);
}

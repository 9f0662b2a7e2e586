#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symext/dps.hpp"
#include "symext/oracle.hpp"

#include <random>

using namespace symext;

namespace {

ExtensionSpec specFor(std::vector<int> levels, std::vector<std::vector<int>> cuts = {}) {
  ExtensionSpec s;
  s.levels = std::move(levels);
  s.pptCuts = std::move(cuts);
  return s;
}

}  // namespace

TEST_CASE("hermitian_basis is orthonormal and complete") {
  for (int d : {2, 3}) {
    auto basis = hermitian_basis(d);
    REQUIRE(static_cast<int>(basis.size()) == d * d);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const double ip = (basis[i] * basis[j]).trace().real();
        CHECK(ip == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
        CHECK(is_hermitian(basis[i]));
      }
  }
}

TEST_CASE("problem bookkeeping matches the documented shape") {
  DensityMatrix bell = make_family("bell");
  ExtensionProblem prob = build_extension_sdp(bell, specFor({2, 1}));
  CHECK(prob.variableDim == 6);                    // sym_dim(2,2) * 2
  CHECK(prob.sdp.blockSizes[0] == 12);             // embedded
  CHECK(prob.marginalRows == 16);                  // D^2
  CHECK(prob.sdp.constraints.size() == 17);        // + trace row
  // one PPT cut adds one block of the same side and dim^2 linking rows
  ExtensionProblem withCut = build_extension_sdp(bell, specFor({2, 1}, {{0}}));
  CHECK(withCut.sdp.blockSizes.size() == 3);
  CHECK(withCut.sdp.blockSizes[2] == 12);
  CHECK(withCut.sdp.constraints.size() == 17 + 36);
}

TEST_CASE("input validation") {
  DensityMatrix bell = make_family("bell");
  CHECK_THROWS_AS(build_extension_sdp(bell, specFor({2})), std::invalid_argument);
  CHECK_THROWS_AS(build_extension_sdp(bell, specFor({2, 0})), std::invalid_argument);
  CHECK_THROWS_AS(build_extension_sdp(bell, specFor({2, 1}, {{0, 1}})),
                  std::invalid_argument);  // not a proper bipartition
  CHECK_THROWS_AS(build_extension_sdp(bell, specFor({2, 1}, {{3}})), std::invalid_argument);
}

TEST_CASE("Bell state at (2,1): lambda* = 1/3 with a valid witness") {
  Verdict v = check_extendible(make_family("bell"), specFor({2, 1}));
  CHECK(v.status == VerdictStatus::NotExtendible);
  CHECK(v.lambdaStar == doctest::Approx(1.0 / 3.0).epsilon(1e-5));
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->valid);
  CHECK(v.witness->valueOnState < -0.01);
  CHECK(v.witness->liftedMinEig >= -1e-7);
  // sup norm normalization
  auto ev = eig_hermitian(v.witness->mat).first;
  CHECK(std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1))) == doctest::Approx(1.0));
}

TEST_CASE("trivial levels (1,1) reduce to a positivity check") {
  Verdict v = check_extendible(make_family("bell"), specFor({1, 1}));
  CHECK(v.status == VerdictStatus::Extendible);
  CHECK(v.lambdaStar <= 1e-6);
}

TEST_CASE("product and separable states extend at every tested level") {
  Verdict v = check_extendible(make_family("product"), specFor({2, 1}));
  CHECK(v.status == VerdictStatus::Extendible);
  CHECK(v.lambdaStar <= 1e-6);
  auto [sep, decomp] = random_separable({2, 2}, 4, 11);
  for (auto levels : {std::vector<int>{2, 1}, {2, 2}, {3, 1}}) {
    Verdict vs = check_extendible(sep, specFor(levels));
    CHECK(vs.status == VerdictStatus::Extendible);
    CHECK(vs.lambdaStar <= 1e-6);
  }
}

TEST_CASE("monotonicity in levels on random two-qubit states") {
  for (std::uint64_t seed : {21u, 22u, 23u, 24u, 25u}) {
    DensityMatrix rho = random_density({2, 2}, seed);
    const double l21 = check_extendible(rho, specFor({2, 1})).lambdaStar;
    const double l31 = check_extendible(rho, specFor({3, 1})).lambdaStar;
    CHECK(l31 >= l21 - 1e-6);
  }
}

TEST_CASE("adding a PPT cut never decreases lambda*") {
  for (std::uint64_t seed : {31u, 32u, 33u}) {
    DensityMatrix rho = random_density({2, 2}, seed);
    const double plain = check_extendible(rho, specFor({2, 1})).lambdaStar;
    const double cut = check_extendible(rho, specFor({2, 1}, {{0}})).lambdaStar;
    CHECK(cut >= plain - 1e-6);
  }
}

TEST_CASE("compression soundness against the uncompressed oracle") {
  for (std::uint64_t seed : {41u, 42u, 43u}) {
    DensityMatrix rho = random_density({2, 2}, seed);
    for (auto levels : {std::vector<int>{2, 1}, {3, 1}}) {
      ExtensionSpec spec = specFor(levels);
      const double comp = check_extendible(rho, spec).lambdaStar;
      const double full = uncompressed_extendibility(rho, spec).margin;
      CHECK(std::abs(comp - full) <= 1e-5);
    }
  }
}

TEST_CASE("witness is nonnegative on 1000 random product states") {
  Verdict v = check_extendible(make_family("bell"), specFor({2, 1}));
  REQUIRE(v.witness.has_value());
  std::mt19937_64 rng(77);
  std::normal_distribution<double> g(0.0, 1.0);
  auto randKet = [&](int d) {
    CVec k(d);
    for (int i = 0; i < d; ++i) k(i) = Complex(g(rng), g(rng));
    return (k / k.norm()).eval();
  };
  double worst = 1e300;
  for (int t = 0; t < 1000; ++t) {
    CVec prod = kron(randKet(2), randKet(2));
    worst = std::min(worst, (prod.adjoint() * v.witness->mat * prod)(0, 0).real());
  }
  CHECK(worst >= -1e-7);
}

TEST_CASE("NOT_EXTENDIBLE always ships a validated witness") {
  for (std::uint64_t seed : {51u, 52u, 53u, 54u}) {
    // near-pure entangled states: mix Bell with a little noise
    DensityMatrix rho = make_family("bell");
    DensityMatrix noise = random_density({2, 2}, seed);
    rho.mat = 0.9 * rho.mat + 0.1 * noise.mat;
    Verdict v = check_extendible(rho, specFor({2, 1}));
    if (v.status == VerdictStatus::NotExtendible) {
      REQUIRE(v.witness.has_value());
      CHECK(v.witness->valid);
      CHECK(v.witness->valueOnState < 0.0);
      CHECK(v.witness->liftedMinEig >= -1e-7);
    }
  }
}

TEST_CASE("threshold_scan on the isotropic family") {
  auto family = [](double F) {
    FamilyParams p;
    p.param = F;
    return make_family("isotropic", p);
  };
  // level 1 is vacuous: everything extendible, scan returns hi
  CHECK(threshold_scan(family, 0.0, 1.0, specFor({1, 1})) == doctest::Approx(1.0));
  const double f2 = threshold_scan(family, 0.0, 1.0, specFor({2, 1}));
  CHECK(f2 == doctest::Approx(0.75).epsilon(2e-3));
  CHECK_THROWS_AS(threshold_scan(family, 0.95, 1.0, specFor({2, 1})), std::runtime_error);
}

TEST_CASE("three-party levels work end to end") {
  DensityMatrix ghz = make_family("ghz");
  Verdict v = check_extendible(ghz, specFor({2, 1, 1}));
  CHECK(v.status == VerdictStatus::NotExtendible);
  CHECK(v.lambdaStar > 0.1);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->valid);
}

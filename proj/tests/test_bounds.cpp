#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symext/bounds.hpp"

#include <cmath>
#include <limits>
#include <numeric>

using namespace symext;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kEightLn2 = 8.0 * std::log(2.0);
}  // namespace

TEST_CASE("two-particle deltas reproduce the printed arithmetic") {
  CHECK(two_particle_delta(NormKind::Trace, 2, kInf, 8) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(two_particle_delta(NormKind::Locc, kInf, 16, 4) ==
        doctest::Approx(1.0 / kEightLn2).epsilon(1e-14));
  CHECK(two_particle_delta(NormKind::Frobenius, kInf, 16, 4) ==
        doctest::Approx(std::sqrt(153.0) / kEightLn2).epsilon(1e-14));
  CHECK(two_particle_delta(NormKind::TracePpt, 3, kInf, 6) ==
        doctest::Approx(0.25).epsilon(1e-14));
  // numeric spot values quoted in the docs
  CHECK(two_particle_delta(NormKind::Locc, kInf, 16, 4) == doctest::Approx(0.18034).epsilon(1e-4));
  CHECK(two_particle_delta(NormKind::Frobenius, kInf, 16, 4) ==
        doctest::Approx(2.2307).epsilon(1e-4));
  CHECK_THROWS_AS(two_particle_delta(NormKind::Trace, kInf, 2, 4), std::invalid_argument);
  CHECK_THROWS_AS(two_particle_delta(NormKind::Locc, 2, kInf, 4), std::invalid_argument);
  CHECK_THROWS_AS(two_particle_delta(NormKind::Trace, 2, kInf, 0), std::invalid_argument);
}

TEST_CASE("theorem-1 style sums") {
  BoundReport r = multiparty_bound_thm1({2, 2}, {8, 1});
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.constituentTerms.size() == 1);
  BoundReport r3 = multiparty_bound_thm1({2, 2, 2}, {8, 8, 1});
  CHECK(r3.value == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r3.constituentTerms.size() == 2);
  // report invariant: value equals the term sum
  CHECK(r3.value ==
        doctest::Approx(std::accumulate(r3.constituentTerms.begin(), r3.constituentTerms.end(),
                                        0.0))
            .epsilon(1e-12));
  // monotone decrease toward zero
  double prev = 1e300;
  for (long long k = 1; k <= 1LL << 20; k *= 4) {
    const double v = multiparty_bound_thm1({2, 2}, {k, 1}).value;
    CHECK(v <= prev);
    prev = v;
  }
  CHECK(prev < 1e-4);
  // ppt variant carries the unspecified-constant caveat
  BoundReport rp = multiparty_bound_thm1({2, 2}, {4, 1}, NormKind::TracePpt);
  CHECK(rp.value == doctest::Approx(0.25).epsilon(1e-14));
  bool flagged = false;
  for (const auto& c : rp.caveats) flagged |= c.find("constant unspecified") != std::string::npos;
  CHECK(flagged);
}

TEST_CASE("theorem-2 style schedules and implied levels") {
  BoundReport r = multiparty_bound_thm2({2, 16}, {4}, NormKind::Locc);
  CHECK(r.value == doctest::Approx(1.0 / kEightLn2).epsilon(1e-14));
  CHECK(r.impliedLevels == std::vector<long long>{4, 1});
  BoundReport r3 = multiparty_bound_thm2({2, 2, 2}, {2, 3}, NormKind::Locc);
  CHECK(r3.impliedLevels == std::vector<long long>{6, 3, 1});
  // frobenius = sqrt(153) x locc, exactly
  BoundReport rf = multiparty_bound_thm2({2, 2, 2}, {2, 3}, NormKind::Frobenius);
  CHECK(rf.value == doctest::Approx(std::sqrt(153.0) * r3.value).epsilon(1e-12));
  // default indexing uses |A_{i+1}|; the compatibility switch uses |A_i|
  BoundReport thm = multiparty_bound_thm2({2, 16}, {4}, NormKind::Locc);
  BoundReport cor = multiparty_bound_thm2({2, 16}, {4}, NormKind::Locc, true);
  CHECK(thm.value == doctest::Approx(1.0 / kEightLn2).epsilon(1e-12));
  CHECK(cor.value == doctest::Approx(0.5 / kEightLn2).epsilon(1e-12));  // log2(2)/4 under sqrt
  CHECK_THROWS_AS(multiparty_bound_thm2({2, 2}, {4, 4}, NormKind::Locc), std::invalid_argument);
  CHECK_THROWS_AS(multiparty_bound_thm2({2, 2}, {4}, NormKind::Trace), std::invalid_argument);
}

TEST_CASE("de Finetti bound") {
  CHECK(definetti_bound(2, 1, 2, 1048576.0, NormKind::Locc) ==
        doctest::Approx(1.03125).epsilon(1e-14));
  CHECK(definetti_bound(2, 1, 1, 1, NormKind::Locc) == doctest::Approx(2.0).epsilon(1e-14));
  // frobenius uses the two-particle delta at k^{1/N}
  const double fr = definetti_bound(2, 1, 2, 16, NormKind::Frobenius);
  CHECK(fr == doctest::Approx(two_particle_delta(NormKind::Frobenius, kInf, 2, 4.0) + 1.0)
                  .epsilon(1e-12));
  // goes to zero for fixed n, N = sqrt(log k), k large
  double prev = 1e300;
  for (int e = 10; e <= 60; e += 10) {
    const double k = std::pow(2.0, e);
    const double N = std::sqrt(static_cast<double>(e));
    const double v = definetti_bound(2, 1, N, k, NormKind::Locc);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(prev < 0.75);
  CHECK_THROWS_AS(definetti_bound(2, 3, 2, 16, NormKind::Locc), std::invalid_argument);
  CHECK_THROWS_AS(definetti_bound(2, 1, 2, 16, NormKind::Trace), std::invalid_argument);
}

TEST_CASE("search-space dimensions") {
  SearchSpace s = search_space({2, 2}, {2, 1});
  CHECK(s.variableDim == 6);
  // d = 2: equals d(k+1)^{d-1} exactly
  for (int k = 1; k <= 8; ++k) {
    SearchSpace t = search_space({2, 2}, {k, 1});
    CHECK(t.variableDim == 2LL * (k + 1));
    CHECK(t.logVariableDim == doctest::Approx(t.paperLogBound).epsilon(1e-12));
  }
  // d > 2: never exceeds the paper expression
  for (int d = 3; d <= 6; ++d)
    for (int k = 1; k <= 8; ++k) {
      SearchSpace t = search_space({d, d}, {k, 1});
      CHECK(t.logVariableDim <= t.paperLogBound + 1e-9);
    }
  SearchSpace t33 = search_space({3, 3}, {4, 1});
  CHECK(t33.variableDim == 45);
}

TEST_CASE("ell_for_error round trip") {
  CHECK(ell_for_error({2, 2}, 0.5) == std::vector<long long>{1});
  for (double eps : {0.1, 0.3, 1.0}) {
    for (auto dims : {std::vector<int>{2, 2}, {2, 4, 8}, {3, 3, 3, 3}}) {
      auto ells = ell_for_error(dims, eps);
      CHECK(multiparty_bound_thm2(dims, ells, NormKind::Locc).value <= eps + 1e-12);
    }
  }
  // halving epsilon quadruples the pre-ceiling value
  auto big = ell_for_error({2, 1 << 10}, 0.01);
  auto small = ell_for_error({2, 1 << 10}, 0.02);
  CHECK(big[0] >= 4 * small[0] - 4);
  CHECK(big[0] <= 4 * small[0] + 4);
  CHECK_THROWS_AS(ell_for_error({2, 2}, 0.0), std::invalid_argument);
}

TEST_CASE("norm kind parsing") {
  CHECK(parse_norm_kind("trace") == NormKind::Trace);
  CHECK(parse_norm_kind("trace-ppt") == NormKind::TracePpt);
  CHECK(parse_norm_kind("locc") == NormKind::Locc);
  CHECK(parse_norm_kind("frobenius") == NormKind::Frobenius);
  CHECK_THROWS_AS(parse_norm_kind("spectral"), std::invalid_argument);
  CHECK(norm_kind_name(NormKind::TracePpt) == "trace-ppt");
}

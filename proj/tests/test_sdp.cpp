#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symext/sdp.hpp"

#include <random>

using namespace symext;

namespace {

/// KKT residuals of a claimed optimal solution, on the original data.
struct Kkt {
  double primal, dual, gap, minEigX, minEigS;
};

Kkt kktResiduals(const SdpProblem& p, const SdpSolution& s) {
  Kkt k{0, 0, 0, 1e300, 1e300};
  auto apply = [&](const std::vector<SdpEntry>& es, const std::vector<RMat>& M) {
    double acc = 0.0;
    for (const auto& e : es)
      acc += e.value * (e.row == e.col ? M[e.block](e.row, e.row)
                                       : M[e.block](e.row, e.col) + M[e.block](e.col, e.row));
    return acc;
  };
  for (std::size_t i = 0; i < p.constraints.size(); ++i)
    k.primal = std::max(k.primal, std::abs(apply(p.constraints[i].entries, s.X) - p.rhs(i)));
  std::vector<RMat> Z;  // dual residual: S + A^T y - C = 0
  for (std::size_t b = 0; b < p.blockSizes.size(); ++b)
    Z.push_back(RMat(s.S[b]));
  for (std::size_t i = 0; i < p.constraints.size(); ++i)
    for (const auto& e : p.constraints[i].entries) {
      Z[e.block](e.row, e.col) += s.y(i) * e.value;
      if (e.row != e.col) Z[e.block](e.col, e.row) += s.y(i) * e.value;
    }
  for (const auto& e : p.objective) {
    Z[e.block](e.row, e.col) -= e.value;
    if (e.row != e.col) Z[e.block](e.col, e.row) -= e.value;
  }
  for (const auto& z : Z) k.dual = std::max(k.dual, z.cwiseAbs().maxCoeff());
  double pobj = 0.0;
  for (const auto& e : p.objective)
    pobj += e.value * (e.row == e.col ? s.X[e.block](e.row, e.row)
                                      : s.X[e.block](e.row, e.col) + s.X[e.block](e.col, e.row));
  k.gap = std::abs(pobj - p.rhs.dot(s.y)) / (1.0 + std::abs(pobj));
  for (std::size_t b = 0; b < p.blockSizes.size(); ++b) {
    Eigen::SelfAdjointEigenSolver<RMat> ex(s.X[b], Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<RMat> es(s.S[b], Eigen::EigenvaluesOnly);
    k.minEigX = std::min(k.minEigX, ex.eigenvalues()(0));
    k.minEigS = std::min(k.minEigS, es.eigenvalues()(0));
  }
  return k;
}

double maxEigAty(const SdpProblem& p, const RVec& y) {
  std::vector<RMat> Z;
  for (int b : p.blockSizes) Z.push_back(RMat::Zero(b, b));
  for (std::size_t i = 0; i < p.constraints.size(); ++i)
    for (const auto& e : p.constraints[i].entries) {
      Z[e.block](e.row, e.col) += y(i) * e.value;
      if (e.row != e.col) Z[e.block](e.col, e.row) += y(i) * e.value;
    }
  double m = -1e300;
  for (const auto& z : Z) {
    Eigen::SelfAdjointEigenSolver<RMat> es(z, Eigen::EigenvaluesOnly);
    m = std::max(m, es.eigenvalues()(z.rows() - 1));
  }
  return m;
}

}  // namespace

TEST_CASE("min tr(X) subject to X_11 = 1") {
  SdpProblem p;
  p.blockSizes = {2};
  p.objective = {{0, 0, 0, 1.0}, {0, 1, 1, 1.0}};
  p.constraints.push_back({{{0, 0, 0, 1.0}}});
  p.rhs = RVec::Constant(1, 1.0);
  SdpSolution s = solve(p);
  REQUIRE(s.status == SdpStatus::Optimal);
  CHECK(s.primalObjective == doctest::Approx(1.0).epsilon(1e-7));
  auto k = kktResiduals(p, s);
  CHECK(k.primal < 1e-6);
  CHECK(k.dual < 1e-6);
}

TEST_CASE("tr(X) = -1 is infeasible with a verified certificate") {
  SdpProblem p;
  p.blockSizes = {2};
  p.objective = {{0, 0, 0, 1.0}};
  p.constraints.push_back({{{0, 0, 0, 1.0}, {0, 1, 1, 1.0}}});
  p.rhs = RVec::Constant(1, -1.0);
  SdpSolution s = solve(p);
  REQUIRE(s.status == SdpStatus::PrimalInfeasible);
  REQUIRE(s.certificate.size() == 1);
  CHECK(p.rhs.dot(s.certificate) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(maxEigAty(p, s.certificate) <= 1e-8);
}

TEST_CASE("max t with [[1,t],[t,1]] >= 0 reaches t = 1") {
  // min -t over X = [[x11, t],[t, x22]], x11 = x22 = 1
  SdpProblem p;
  p.blockSizes = {2};
  p.objective = {{0, 0, 1, -1.0}};
  p.constraints.push_back({{{0, 0, 0, 1.0}}});
  p.constraints.push_back({{{0, 1, 1, 1.0}}});
  p.rhs = RVec::Constant(2, 1.0);
  SdpSolution s = solve(p);
  REQUIRE(s.status == SdpStatus::Optimal);
  CHECK(s.X[0](0, 1) == doctest::Approx(1.0).epsilon(1e-6));
  // off-diagonal objective entries count twice (mirrored convention)
  CHECK(s.primalObjective == doctest::Approx(-2.0).epsilon(1e-6));
}

TEST_CASE("redundant rows are removed; inconsistent ones certify infeasibility") {
  SdpProblem p;
  p.blockSizes = {2};
  p.objective = {{0, 0, 0, 1.0}, {0, 1, 1, 1.0}};
  p.constraints.push_back({{{0, 0, 0, 1.0}}});
  p.constraints.push_back({{{0, 0, 0, 2.0}}});  // consistent duplicate
  p.rhs = RVec(2);
  p.rhs << 1.0, 2.0;
  SdpSolution s = solve(p);
  REQUIRE(s.status == SdpStatus::Optimal);
  CHECK(s.primalObjective == doctest::Approx(1.0).epsilon(1e-7));

  p.rhs(1) = 3.0;  // now contradictory
  s = solve(p);
  REQUIRE(s.status == SdpStatus::PrimalInfeasible);
  CHECK(p.rhs.dot(s.certificate) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(maxEigAty(p, s.certificate)) <= 1e-8);  // A^T y = 0 here
}

TEST_CASE("ten seeded random SDPs reach KKT residuals <= 1e-6") {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + trial % 4;
    const int m = 2 + trial % 3;
    SdpProblem p;
    p.blockSizes = {n, 1};
    auto randSym = [&](int size) {
      RMat a(size, size);
      for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c) a(r, c) = g(rng);
      return RMat((a + a.transpose()) / 2.0);
    };
    // primal feasible (b = A(X0), X0 > 0) and dual feasible
    // (C = sum y0_i A_i + S0, S0 > 0) by construction, so the instance has
    // an optimum
    RMat X0 = randSym(n);
    X0 = (X0 * X0.transpose()).eval();
    X0 += RMat::Identity(n, n);
    const double x1 = 1.0 + std::abs(g(rng));
    std::vector<RMat> As;
    std::vector<double> a1s;
    p.rhs = RVec(m);
    for (int i = 0; i < m; ++i) {
      RMat A = randSym(n);
      SdpConstraint con;
      for (int r = 0; r < n; ++r)
        for (int c = r; c < n; ++c) con.entries.push_back({0, r, c, A(r, c)});
      const double a1 = g(rng);
      con.entries.push_back({1, 0, 0, a1});
      p.constraints.push_back(std::move(con));
      p.rhs(i) = (A.cwiseProduct(X0)).sum() + a1 * x1;
      As.push_back(A);
      a1s.push_back(a1);
    }
    RMat S0 = randSym(n);
    S0 = (S0 * S0.transpose()).eval();
    S0 += RMat::Identity(n, n);
    RMat C = S0;
    double c1 = 1.0 + std::abs(g(rng));
    for (int i = 0; i < m; ++i) {
      const double y0 = g(rng);
      C += y0 * As[i];
      c1 += y0 * a1s[i];
    }
    for (int r = 0; r < n; ++r)
      for (int c = r; c < n; ++c) p.objective.push_back({0, r, c, C(r, c)});
    p.objective.push_back({1, 0, 0, c1});
    SdpSolution s = solve(p);
    REQUIRE(s.status == SdpStatus::Optimal);
    auto k = kktResiduals(p, s);
    CHECK(k.primal < 1e-6);
    CHECK(k.dual < 1e-6);
    CHECK(k.gap < 1e-6);
    CHECK(k.minEigX > -1e-9);
    CHECK(k.minEigS > -1e-9);
  }
}

TEST_CASE("hermitian embed / unembed round trip and PSD equivalence") {
  CMat h(3, 3);
  h << 2.0, Complex(0.5, -0.25), 0.0,
       Complex(0.5, 0.25), 1.5, Complex(0.0, 0.75),
       0.0, Complex(0.0, -0.75), 3.0;
  RMat e = hermitian_embed(h);
  CHECK((hermitian_unembed(e) - h).norm() < 1e-14);
  Eigen::SelfAdjointEigenSolver<RMat> es(e, Eigen::EigenvaluesOnly);
  auto [hv, hu] = eig_hermitian(h);
  // doubled spectrum
  CHECK(es.eigenvalues()(0) == doctest::Approx(hv(0)).epsilon(1e-10));
  CHECK(es.eigenvalues()(1) == doctest::Approx(hv(0)).epsilon(1e-10));
  CMat notHerm = h;
  notHerm(0, 1) = 99.0;
  CHECK_THROWS_AS(hermitian_embed(notHerm), std::invalid_argument);
}

TEST_CASE("trivial and degenerate problems") {
  // unconstrained min tr X -> 0
  SdpProblem p;
  p.blockSizes = {2};
  p.objective = {{0, 0, 0, 1.0}, {0, 1, 1, 1.0}};
  p.rhs = RVec(0);
  SdpSolution s = solve(p);
  REQUIRE(s.status == SdpStatus::Optimal);
  CHECK(std::abs(s.primalObjective) < 1e-6);
  // rhs length mismatch rejected
  p.rhs = RVec::Constant(3, 1.0);
  CHECK_THROWS_AS(solve(p), std::invalid_argument);
}

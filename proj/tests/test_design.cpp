#include "lsmcmc/design.hpp"
#include "lsmcmc/sampler.hpp"
#include "lsmcmc/targets.hpp"

#include "support.hpp"

#include <algorithm>
#include <set>
#include <sstream>

using namespace lsmcmc;

TEST_CASE("bounds validation and containment") {
  CHECK_ERROR_KIND(Bounds(VectorXd::Zero(2), VectorXd::Zero(2)),
                   ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(Bounds(VectorXd::Zero(2), VectorXd::Ones(3)),
                   ErrorKind::InvalidArgument);
  const Bounds unit = Bounds::uniform(2, 0.0, 1.0);
  CHECK(unit.contains((VectorXd(2) << 0.0, 1.0).finished()));
  CHECK_FALSE(unit.contains((VectorXd(2) << 1.0000001, 0.5).finished()));
  CHECK(in_support(unit, (VectorXd(2) << 0.0, 1.0).finished()));
}

TEST_CASE("latin hypercube: single point") {
  const auto d = latin_hypercube(1, Bounds::uniform(1, 0.0, 1.0), 9);
  REQUIRE(d.size() == 1);
  CHECK(d.points(0, 0) > 0.0);
  CHECK(d.points(0, 0) < 1.0);
  CHECK_ERROR_KIND(latin_hypercube(0, Bounds::uniform(1, 0.0, 1.0), 9),
                   ErrorKind::InvalidArgument);
}

TEST_CASE("latin hypercube: one point per stratum on every axis") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto d = latin_hypercube(50, Bounds::uniform(2, 0.0, 1.0), seed);
    REQUIRE(d.size() == 50);
    for (Index j = 0; j < 2; ++j) {
      std::set<long> strata;
      for (Index i = 0; i < 50; ++i)
        strata.insert(static_cast<long>(std::floor(d.points(i, j) / 0.02)));
      CHECK(strata.size() == 50);
    }
  }
}

TEST_CASE("latin hypercube: sorted points fall in successive unit bins") {
  const auto d = latin_hypercube(4, Bounds::uniform(1, 0.0, 4.0), 11);
  std::vector<double> v(d.points.data(), d.points.data() + 4);
  std::sort(v.begin(), v.end());
  for (int k = 0; k < 4; ++k) {
    CHECK(v[k] > k);
    CHECK(v[k] < k + 1);
  }
}

TEST_CASE("latin hypercube is seeded") {
  const Bounds b = Bounds::uniform(3, -1.0, 2.0);
  CHECK(latin_hypercube(20, b, 5).points == latin_hypercube(20, b, 5).points);
  CHECK(latin_hypercube(20, b, 5).points != latin_hypercube(20, b, 6).points);
}

TEST_CASE("unit scaling") {
  const Bounds b((VectorXd(2) << -4, 2400).finished(),
                 (VectorXd(2) << 4, 2425.94).finished());
  CHECK(scale_to_unit(b.lower(), b).isZero());
  CHECK(scale_to_unit(b.upper(), b).isOnes());
  const VectorXd u = scale_to_unit((VectorXd(2) << 0, 2412.97).finished(), b);
  CHECK(std::abs(u[1] - (2412.97 - 2400.0) / 25.94) < 1e-12);
  CHECK(std::abs(u[1] - 0.5) < 1e-12);
  CHECK((unscale_from_unit(u, b) - (VectorXd(2) << 0, 2412.97).finished())
            .norm() < 1e-9);
  CHECK_ERROR_KIND(scale_to_unit((VectorXd(2) << 5, 2410).finished(), b),
                   ErrorKind::OutOfSupport);
}

TEST_CASE("evaluate_design fills responses and reports the failing row") {
  Design d;
  d.points = (MatrixXd(3, 2) << 0, -1, 0, 0, 1, 1).finished();
  const auto gp = benchmark("goldstein_price").f;
  const Design e = evaluate_design(d, gp);
  REQUIRE(e.has_responses());
  CHECK(std::abs((*e.responses)(0, 0) - 3.0) < 1e-12);
  CHECK(std::abs((*e.responses)(1, 0) - 600.0) < 1e-12);

  const auto tb = benchmark("two_bump").f;
  CHECK(std::abs((*evaluate_design(d, tb).responses)(1, 0) - 3.0 * std::exp(-8.0)) <
        1e-15);

  EvaluationInterface constant{2, 1, [](const VectorXd &) {
                                 return VectorXd::Ones(1).eval();
                               }};
  Design two;
  two.points = MatrixXd::Zero(2, 2);
  CHECK(evaluate_design(two, constant).responses->isOnes());

  EvaluationInterface failing{2, 1, [](const VectorXd &t) {
                                if (t[0] > 0.5)
                                  throw std::runtime_error("solver diverged");
                                return VectorXd::Zero(1).eval();
                              }};
  try {
    evaluate_design(d, failing);
    FAIL("expected an evaluation error");
  } catch (const EvaluationError &err) {
    CHECK(err.row() == 2);
    CHECK(err.kind() == ErrorKind::Evaluation);
  }
}

TEST_CASE("design CSV round-trip keeps 17 significant digits") {
  Design d = latin_hypercube(10, Bounds::uniform(2, -4.0, 4.0), 3);
  d = evaluate_design(d, benchmark("two_bump").f);
  std::ostringstream out;
  write_design_csv(out, d);
  CHECK(out.str().rfind("theta_1,theta_2,response_1\n", 0) == 0);
  std::istringstream in(out.str());
  const Design back = read_design_csv(in);
  CHECK(back.points == d.points);
  REQUIRE(back.has_responses());
  CHECK(*back.responses == *d.responses);

  std::istringstream no_resp("theta_1,theta_2\n0.1,0.2\n");
  CHECK_FALSE(read_design_csv(no_resp).has_responses());
}

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "cfx/errors.hpp"
#include "cfx/fixed_point.hpp"
#include "cfx/mutation_loop.hpp"
#include "helpers.hpp"

using namespace cfx;
using cfxtest::load_seed_fixture;
using cfxtest::make_poly;
using cfxtest::random_point;

namespace {

MutationLoop z5_generator() {
  return {load_seed_fixture("a2_seed.json"), {MutEdge{0}, SwapEdge{0, 1}}, "z5"};
}

MutationLoop rot3_generator() {
  return {load_seed_fixture("markov_seed.json"), {SwapEdge{0, 1}, SwapEdge{1, 2}}, "rot3"};
}

double inf_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("loop validation traverses the path and checks the boundary") {
  const auto a2 = load_seed_fixture("a2_seed.json");

  const auto id_fp = validate_loop({a2, {}, "id"});
  CHECK(imat_equal(id_fp.c, imat_identity(2)));
  CHECK(id_fp.perm == perm_identity(2));

  const auto g = z5_generator();
  const auto fp = validate_loop(g);
  CHECK(!imat_equal(fp.c, imat_identity(2)));

  CHECK_THROWS_AS(validate_loop({a2, {MutEdge{0}}, "half"}), NotALoop);
}

TEST_CASE("the pentagon generator has order five") {
  const auto g = z5_generator();
  MutationLoop power = g;
  for (int k = 1; k < 5; ++k) {
    CHECK(!is_identity(power));
    power = compose(power, g);
  }
  CHECK(is_identity(power));
  CHECK(is_identity(compose(g, invert(g))));
  CHECK(is_identity(compose(invert(g), g)));
}

TEST_CASE("fingerprints are a complete, composition-compatible invariant") {
  const auto g = z5_generator();
  const auto group = close_subgroup({g});
  REQUIRE(group.size() == 5);

  // composing elements lands on a fingerprint already in the closure
  std::vector<GroupFingerprint> fps;
  for (const auto& e : group) fps.push_back(validate_loop(e));
  for (const auto& a : group)
    for (const auto& b : group) {
      const auto fp = validate_loop(compose(a, b));
      int hits = 0;
      for (const auto& known : fps)
        if (known == fp) ++hits;
      CHECK(hits == 1);
    }
}

TEST_CASE("the terminal loop is central for the pentagon group") {
  // mutating at 0 then 1 returns the exchange matrix with C = -Id
  const auto a2 = load_seed_fixture("a2_seed.json");
  const MutationLoop tau{a2, {MutEdge{0}, MutEdge{1}}, "tau"};
  const auto tau_fp = validate_loop(tau);
  CHECK(imat_equal(tau_fp.c, imat_neg_identity(2)));

  const auto g = z5_generator();
  CHECK(validate_loop(compose(tau, g)) == validate_loop(compose(g, tau)));
}

TEST_CASE("subgroup closure enumerates small groups and rejects infinite ones") {
  const auto a2 = load_seed_fixture("a2_seed.json");
  CHECK(close_subgroup({{a2, {}, "id"}}).size() == 1);
  // no generators means no base seed to build the identity on
  CHECK_THROWS_AS(close_subgroup({}), InputError);

  CHECK(close_subgroup({rot3_generator()}).size() == 3);

  const auto kron = load_seed_fixture("kronecker_seed.json");
  const MutationLoop shift{kron, {MutEdge{0}, SwapEdge{0, 1}}, "shift"};
  CHECK_THROWS_AS(close_subgroup({shift}, 50), BoundExceeded);
}

TEST_CASE("the point action realizes the known recurrence") {
  const auto g = z5_generator();
  std::mt19937 rng(8888);

  // one step is (a, b) -> (b, log(1 + e^b) - a)
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = random_point(rng, 2, 3.0);
    const auto y = act_point(g, x);
    CHECK(y[0] == doctest::Approx(x[1]).epsilon(1e-15));
    CHECK(y[1] == doctest::Approx(std::log1p(std::exp(x[1])) - x[0]).epsilon(1e-12));
  }

  // five steps are the identity
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = random_point(rng, 2, 2.0);
    auto y = x;
    for (int k = 0; k < 5; ++k) y = act_point(g, y);
    CHECK(inf_dist(x, y) <= 1e-10);
  }

  // the golden point is fixed
  const double c = std::log((1.0 + std::sqrt(5.0)) / 2.0);
  const auto fixed = act_point(g, {c, c});
  CHECK(inf_dist(fixed, {c, c}) <= 1e-8);

  // identity loop does nothing
  const auto x = random_point(rng, 2, 2.0);
  CHECK(act_point({g.base, {}, "id"}, x) == x);
}

TEST_CASE("pull-back is dual to the point action") {
  const auto g = z5_generator();
  const auto a2 = g.base;
  std::mt19937 rng(999);

  const std::vector<LaurentPoly> vars = {
      LaurentPoly::variable(2, 0), LaurentPoly::variable(2, 1),
      make_poly(2, {{{-1, 0}, 1}, {{-1, 1}, 1}}),
      make_poly(2, {{{0, -1}, 1}, {{1, -1}, 1}}),
      make_poly(2, {{{-1, -1}, 1}, {{0, -1}, 1}, {{-1, 0}, 1}})};

  for (const auto& F : vars) {
    const auto pb = pull_back(g, F);
    for (int trial = 0; trial < 5; ++trial) {
      const auto x = random_point(rng, 2, 2.0);
      CHECK(log_eval(pb, x) == doctest::Approx(log_eval(F, act_point(g, x))).epsilon(1e-9));
    }
  }

  // the variable set is permuted onto itself
  for (const auto& F : vars) {
    const auto pb = pull_back(g, F);
    int hits = 0;
    for (const auto& G : vars)
      if (G == pb) ++hits;
    CHECK(hits == 1);
  }

  // pulling back a coordinate equals expanding the path at the same index
  for (int j = 0; j < 2; ++j)
    CHECK(pull_back(g, LaurentPoly::variable(2, j)) ==
          expand_cluster_variable(a2, g.path, j));

  CHECK(pull_back({a2, {}, "id"}, vars[4]) == vars[4]);
}

TEST_CASE("orbits of the pentagon group recover all five variables") {
  const auto g = z5_generator();
  const auto group = close_subgroup({g});

  FillingSet tiny;
  tiny.base = g.base;
  tiny.elements = {LaurentPoly::variable(2, 0), LaurentPoly::variable(2, 1)};
  const auto L = orbit(tiny, group);
  CHECK(L.parts.size() == 5);
}

TEST_CASE("the point action is equivariant with the monomental projection") {
  std::mt19937 rng(1234);
  for (const auto& g : {z5_generator(), rot3_generator()}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto x = random_point(rng, g.base.n, 2.0);
      const auto lhs = ensemble_project(g.base, act_point(g, x));
      const auto rhs = act_point_x(g, ensemble_project(g.base, x));
      CHECK(inf_dist(lhs, rhs) <= 1e-9);
    }
  }
}

TEST_CASE("composition requires matching bases") {
  const auto g = z5_generator();
  const auto h = rot3_generator();
  CHECK_THROWS_AS(compose(g, h), InputError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "cag/errors.hpp"
#include "cag/group_algebra.hpp"
#include "cag/marked_group.hpp"

using namespace cag;

namespace {

MarkedGroup s3() {
  return MarkedGroup::from_permutations(3, {{1, 0, 2}, {1, 2, 0}});
}

GroupAlgebraElement random_element(std::mt19937_64& rng, int prime,
                                   const MarkedGroup& g) {
  GroupAlgebraElement a = GroupAlgebraElement::zero(prime, g);
  for (auto& c : a.coeff) {
    c = static_cast<std::uint8_t>(rng() % prime);
  }
  return a;
}

// A random product of elementary row/column operations and unit diagonal
// matrices; two-sided invertible by construction, with the inverse built
// by reversing the factors.
std::pair<GroupAlgebraMatrix, GroupAlgebraMatrix> random_unit_pair(
    std::mt19937_64& rng, int prime, const MarkedGroup& g, std::size_t size) {
  GroupAlgebraMatrix m = GroupAlgebraMatrix::identity(prime, g, size);
  GroupAlgebraMatrix inverse = GroupAlgebraMatrix::identity(prime, g, size);
  const int factors = 2 + static_cast<int>(rng() % 5);
  for (int f = 0; f < factors; ++f) {
    GroupAlgebraMatrix step = GroupAlgebraMatrix::identity(prime, g, size);
    GroupAlgebraMatrix step_inv = GroupAlgebraMatrix::identity(prime, g, size);
    if (rng() % 2 == 0) {
      // I + alpha E_ij with i != j; inverse is I - alpha E_ij.
      const std::size_t i = rng() % size;
      std::size_t j = rng() % size;
      while (j == i) {
        j = rng() % size;
      }
      const GroupAlgebraElement alpha = random_element(rng, prime, g);
      step.at(i, j) = alpha;
      GroupAlgebraElement neg = alpha;
      for (auto& c : neg.coeff) {
        c = static_cast<std::uint8_t>((prime - c) % prime);
      }
      step_inv.at(i, j) = neg;
    } else {
      // Diagonal of group-element units; inverse uses inverse elements.
      for (std::size_t d = 0; d < size; ++d) {
        const std::size_t e = rng() % g.order();
        step.at(d, d) = GroupAlgebraElement::unit(prime, g, e);
        step_inv.at(d, d) = GroupAlgebraElement::unit(prime, g, g.inv(e));
      }
    }
    m = ga_mat_mul(g, m, step);
    inverse = ga_mat_mul(g, step_inv, inverse);
  }
  return {m, inverse};
}

}  // namespace

TEST_CASE("group algebra arithmetic") {
  const MarkedGroup g = s3();
  std::mt19937_64 rng(99);
  const GroupAlgebraElement one = GroupAlgebraElement::unit(2, g, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const GroupAlgebraElement a = random_element(rng, 2, g);
    const GroupAlgebraElement b = random_element(rng, 2, g);
    const GroupAlgebraElement c = random_element(rng, 2, g);
    CHECK(ga_mul(g, one, a) == a);
    CHECK(ga_mul(g, a, one) == a);
    CHECK(ga_mul(g, ga_mul(g, a, b), c) == ga_mul(g, a, ga_mul(g, b, c)));
    CHECK(ga_mul(g, ga_add(a, b), c) == ga_add(ga_mul(g, a, c), ga_mul(g, b, c)));
  }
  // Non-commutative: the two transposition-like units do not commute.
  const GroupAlgebraElement x =
      GroupAlgebraElement::unit(2, g, g.eval_index(FreeWord::parse("a")));
  const GroupAlgebraElement y =
      GroupAlgebraElement::unit(2, g, g.eval_index(FreeWord::parse("b")));
  CHECK(ga_mul(g, x, y) != ga_mul(g, y, x));
}

TEST_CASE("regular representation is a faithful algebra homomorphism") {
  const MarkedGroup g = s3();
  std::mt19937_64 rng(12321);
  for (int trial = 0; trial < 25; ++trial) {
    GroupAlgebraMatrix a = GroupAlgebraMatrix::identity(2, g, 2);
    GroupAlgebraMatrix b = GroupAlgebraMatrix::identity(2, g, 2);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        a.at(i, j) = random_element(rng, 2, g);
        b.at(i, j) = random_element(rng, 2, g);
      }
    }
    CHECK(regular_representation(g, ga_mat_mul(g, a, b)) ==
          regular_representation(g, a) * regular_representation(g, b));
  }
  CHECK(regular_representation(g, GroupAlgebraMatrix::identity(2, g, 2))
            .is_identity());
}

TEST_CASE("stable finiteness witness examples") {
  const MarkedGroup z3 = MarkedGroup::cyclic(3);
  // M = I, L = I.
  const GroupAlgebraMatrix id1 = GroupAlgebraMatrix::identity(2, z3, 1);
  const StableFinitenessResult trivial =
      stable_finiteness_witness(z3, id1, id1, InverseSide::Left);
  CHECK(trivial.confirmed);

  // 1x1 over F_2[Z/3]: M = [g], L = [g^2].
  GroupAlgebraMatrix m = GroupAlgebraMatrix::identity(2, z3, 1);
  GroupAlgebraMatrix l = GroupAlgebraMatrix::identity(2, z3, 1);
  m.at(0, 0) = GroupAlgebraElement::unit(2, z3, 1);
  l.at(0, 0) = GroupAlgebraElement::unit(2, z3, 2);
  const StableFinitenessResult units =
      stable_finiteness_witness(z3, m, l, InverseSide::Left);
  CHECK(units.confirmed);
  CHECK(units.two_sided_inverse == l);

  // Failing precondition: L M != I.
  GroupAlgebraMatrix wrong = l;
  wrong.at(0, 0) = GroupAlgebraElement::unit(2, z3, 1);
  CHECK_THROWS_AS(stable_finiteness_witness(z3, m, wrong, InverseSide::Left),
                  NotOneSidedInverse);
}

TEST_CASE("random one-sided inverses over F_2[S3] are two-sided") {
  const MarkedGroup g = s3();
  std::mt19937_64 rng(777333);
  for (int trial = 0; trial < 100; ++trial) {
    const auto [m, l] = random_unit_pair(rng, 2, g, 2);
    REQUIRE(ga_mat_is_identity(g, ga_mat_mul(g, l, m)));
    const StableFinitenessResult left =
        stable_finiteness_witness(g, m, l, InverseSide::Left);
    CHECK(left.confirmed);
    const StableFinitenessResult right =
        stable_finiteness_witness(g, l, m, InverseSide::Right);
    CHECK(right.confirmed);
  }
}

TEST_CASE("algebra matrix files round trip") {
  const MarkedGroup g = s3();
  std::mt19937_64 rng(31415);
  GroupAlgebraMatrix m = GroupAlgebraMatrix::identity(2, g, 2);
  m.at(0, 1) = random_element(rng, 2, g);
  m.at(1, 0) = random_element(rng, 2, g);
  std::stringstream buffer;
  m.save(buffer);
  const GroupAlgebraMatrix reloaded = GroupAlgebraMatrix::load(buffer, g);
  CHECK(reloaded == m);

  std::stringstream bad("prime 2\nsize 1\n1*9\n");
  CHECK_THROWS_AS(GroupAlgebraMatrix::load(bad, g), ParseError);
  std::stringstream truncated("prime 2\nsize 2\n1*0\n");
  CHECK_THROWS_AS(GroupAlgebraMatrix::load(truncated, g), ParseError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "cag/cellular_automaton.hpp"
#include "cag/errors.hpp"
#include "cag/linear_ca.hpp"
#include "cag/marked_group.hpp"
#include "cag/shift_space.hpp"
#include "cag/surjunctivity.hpp"

using namespace cag;

namespace {

FpMatrix scalar(int prime, int value) {
  FpMatrix m(prime, 1, 1);
  m.set(0, 0, static_cast<std::uint8_t>(value));
  return m;
}

LinearKernel rule90_kernel() {
  return LinearKernel(2, 1,
                      {{FreeWord::parse("A"), scalar(2, 1)},
                       {FreeWord::parse("a"), scalar(2, 1)}});
}

// All scalar F_2 kernels with support inside {A, e, a}.
std::vector<LinearKernel> nearest_neighbor_kernels() {
  const std::vector<FreeWord> support{FreeWord::parse("A"), FreeWord::parse("e"),
                                      FreeWord::parse("a")};
  std::vector<LinearKernel> kernels;
  for (int mask = 0; mask < 8; ++mask) {
    std::vector<std::pair<FreeWord, FpMatrix>> terms;
    for (int i = 0; i < 3; ++i) {
      if ((mask >> i) & 1) {
        terms.emplace_back(support[static_cast<std::size_t>(i)], scalar(2, 1));
      }
    }
    kernels.push_back(LinearKernel(2, 1, std::move(terms)));
  }
  return kernels;
}

VectorConfiguration from_symbols(int prime, std::vector<std::uint8_t> symbols) {
  return VectorConfiguration{prime, 1, std::move(symbols)};
}

std::vector<VectorConfiguration> all_vector_configs(int prime, int dim,
                                                    std::size_t sites) {
  std::vector<VectorConfiguration> out;
  VectorConfiguration x{prime, dim,
                        std::vector<std::uint8_t>(sites * std::size_t(dim), 0)};
  for (;;) {
    out.push_back(x);
    std::size_t i = x.values.size();
    bool done = true;
    while (i > 0) {
      --i;
      if (++x.values[i] < prime) {
        done = false;
        break;
      }
      x.values[i] = 0;
    }
    if (done) {
      return out;
    }
  }
}

}  // namespace

TEST_CASE("F_p elimination: rank and inverse with deterministic pivots") {
  // Rows (1,2,0),(0,1,3),(2,0,1) over F_5; determinant 13 = 3 mod 5.
  FpMatrix m(5, 3, 3);
  const std::uint8_t rows[3][3] = {{1, 2, 0}, {0, 1, 3}, {2, 0, 1}};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      m.set(i, j, rows[i][j]);
    }
  }
  CHECK(m.rank() == 3);
  const auto inv = m.inverse();
  REQUIRE(inv.has_value());
  CHECK((m * *inv).is_identity());
  CHECK((*inv * m).is_identity());

  FpMatrix singular(2, 2, 2);
  singular.set(0, 0, 1);
  singular.set(0, 1, 1);
  singular.set(1, 0, 1);
  singular.set(1, 1, 1);
  CHECK(singular.rank() == 1);
  CHECK_FALSE(singular.inverse().has_value());
}

TEST_CASE("kernel normal form drops zero matrices and sorts support") {
  const LinearKernel k(2, 1,
                       {{FreeWord::parse("a"), scalar(2, 1)},
                        {FreeWord::parse("e"), scalar(2, 0)},
                        {FreeWord::parse("A"), scalar(2, 1)}});
  REQUIRE(k.terms().size() == 2);
  CHECK(k.terms()[0].first == FreeWord::parse("a"));
  CHECK(k.terms()[1].first == FreeWord::parse("A"));
  CHECK_THROWS_AS(LinearKernel(2, 1,
                               {{FreeWord::parse("a"), scalar(2, 1)},
                                {FreeWord::parse("a"), scalar(2, 1)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(LinearKernel(6, 1, {}), std::invalid_argument);
  CHECK_THROWS_AS(LinearKernel(2, 9, {}), std::invalid_argument);
}

TEST_CASE("lin_apply examples") {
  const MarkedGroup z4 = MarkedGroup::cyclic(4);

  const LinearKernel id = LinearKernel::identity(2, 1);
  const VectorConfiguration x = from_symbols(2, {0, 0, 0, 1});
  CHECK(lin_apply(id, z4, x) == x);

  // Nearest-neighbor XOR kernel equals rule 90, cross-checked against the
  // ca engine on the same input.
  const LinearKernel k90 = rule90_kernel();
  const VectorConfiguration image = lin_apply(k90, z4, x);
  CHECK(image.values == std::vector<std::uint8_t>{1, 0, 1, 0});
  const CellularAutomaton rule90 = CellularAutomaton::eca(90);
  FiniteConfiguration xc{z4, 2, {0, 0, 0, 1}};
  CHECK(rule90.apply(xc).values == image.values);

  // Periodic route agrees.
  CHECK(lin_apply_periodic(k90, x).values == image.values);

  const LinearKernel zero = LinearKernel::zero(2, 1);
  CHECK(lin_apply(zero, z4, x).values ==
        std::vector<std::uint8_t>{0, 0, 0, 0});

  CHECK_THROWS_AS(lin_apply(k90, z4, from_symbols(3, {0, 0, 0, 1})),
                  std::invalid_argument);
}

TEST_CASE("lin_matrix examples") {
  // Identity kernel realizes the identity matrix.
  const MarkedGroup z3 = MarkedGroup::cyclic(3);
  CHECK(lin_matrix(LinearKernel::identity(3, 2), z3).is_identity());

  // Support {e, a} over Z/2: the all-ones 2x2 matrix, rank 1.
  const MarkedGroup z2 = MarkedGroup::cyclic(2);
  const LinearKernel k(2, 1,
                       {{FreeWord::parse("e"), scalar(2, 1)},
                        {FreeWord::parse("a"), scalar(2, 1)}});
  const FpMatrix m = lin_matrix(k, z2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(m.at(i, j) == 1);
    }
  }
  CHECK(m.rank() == 1);

  // Shift kernel over Z/3 is the 3-cycle permutation matrix.
  const LinearKernel shift(2, 1, {{FreeWord::parse("a"), scalar(2, 1)}});
  const FpMatrix p = lin_matrix(shift, z3);
  for (std::size_t g = 0; g < 3; ++g) {
    for (std::size_t h = 0; h < 3; ++h) {
      CHECK(p.at(g, h) == ((h == (g + 1) % 3) ? 1 : 0));
    }
  }
}

TEST_CASE("lin_apply agrees with lin_matrix on all basis configurations") {
  std::mt19937_64 rng(1618);
  const std::vector<MarkedGroup> groups{
      MarkedGroup::cyclic(4), MarkedGroup::cyclic(6),
      MarkedGroup::from_permutations(3, {{1, 0, 2}, {1, 2, 0}})};
  for (const auto& g : groups) {
    for (int trial = 0; trial < 6; ++trial) {
      const int dim = 1 + static_cast<int>(rng() % 2);
      REQUIRE(g.order() * static_cast<std::size_t>(dim) <= 24);
      std::vector<std::pair<FreeWord, FpMatrix>> terms;
      for (const auto& w : free_ball(g.rank(), 2)) {
        if (rng() % 3 != 0) {
          continue;
        }
        FpMatrix m(2, static_cast<std::size_t>(dim),
                   static_cast<std::size_t>(dim));
        for (std::size_t i = 0; i < m.rows(); ++i) {
          for (std::size_t j = 0; j < m.cols(); ++j) {
            m.set(i, j, static_cast<std::uint8_t>(rng() % 2));
          }
        }
        terms.emplace_back(w, std::move(m));
      }
      const LinearKernel kernel(2, dim, std::move(terms));
      const FpMatrix matrix = lin_matrix(kernel, g);
      const std::size_t size = g.order() * static_cast<std::size_t>(dim);
      for (std::size_t basis = 0; basis < size; ++basis) {
        VectorConfiguration e{2, dim, std::vector<std::uint8_t>(size, 0)};
        e.values[basis] = 1;
        const VectorConfiguration image = lin_apply(kernel, g, e);
        for (std::size_t row = 0; row < size; ++row) {
          CHECK(image.values[row] == matrix.at(row, basis));
        }
      }
    }
  }
}

TEST_CASE("lin_decide examples and finite-scale surjunctivity") {
  const MarkedGroup z2 = MarkedGroup::cyclic(2);
  CHECK(lin_decide(LinearKernel::identity(2, 1), z2).bijective());

  const LinearKernel k(2, 1,
                       {{FreeWord::parse("e"), scalar(2, 1)},
                        {FreeWord::parse("a"), scalar(2, 1)}});
  const LinDecision d = lin_decide(k, z2);
  CHECK(d.rank == 1);
  CHECK_FALSE(d.injective);
  CHECK_FALSE(d.surjective);

  const LinearKernel shift(2, 1, {{FreeWord::parse("a"), scalar(2, 1)}});
  for (std::uint64_t n : {2, 3, 5, 8}) {
    CHECK(lin_decide(shift, MarkedGroup::cyclic(n)).bijective());
  }

  // Never injective-without-surjective across the nearest-neighbor sweep.
  for (const auto& kernel : nearest_neighbor_kernels()) {
    for (std::uint64_t n = 1; n <= 8; ++n) {
      const LinDecision verdict = lin_decide(kernel, MarkedGroup::cyclic(n));
      CHECK(verdict.injective == verdict.surjective);
    }
  }
}

TEST_CASE("lin_decide agrees with brute-force bijectivity") {
  // Independent oracle: apply the kernel to every configuration and check
  // whether the map permutes them.
  for (const auto& kernel : nearest_neighbor_kernels()) {
    for (std::uint64_t n = 1; n <= 6; ++n) {
      const MarkedGroup g = MarkedGroup::cyclic(n);
      std::set<std::vector<std::uint8_t>> images;
      const auto configs = all_vector_configs(2, 1, g.order());
      for (const auto& x : configs) {
        images.insert(lin_apply(kernel, g, x).values);
      }
      const bool bijective = images.size() == configs.size();
      CHECK(lin_decide(kernel, g).bijective() == bijective);
    }
  }
}

TEST_CASE("inverse kernel examples") {
  // Shift inverse is the inverse shift.
  const LinearKernel shift(2, 1, {{FreeWord::parse("a"), scalar(2, 1)}});
  const MarkedGroup z4 = MarkedGroup::cyclic(4);
  const LinearKernel inv = lin_inverse_kernel(shift, z4);
  REQUIRE(inv.terms().size() == 1);
  CHECK(inv.terms()[0].first == FreeWord::parse("A"));
  CHECK(inv.terms()[0].second.at(0, 0) == 1);

  // Identity is self-inverse.
  const LinearKernel id = LinearKernel::identity(2, 2);
  CHECK(lin_inverse_kernel(id, z4) == id);

  // A unipotent site-wise matrix is self-inverse over F_2.
  FpMatrix u(2, 2, 2);
  u.set(0, 0, 1);
  u.set(0, 1, 1);
  u.set(1, 1, 1);
  const LinearKernel unipotent(2, 2, {{FreeWord::parse("e"), u}});
  const LinearKernel uinv = lin_inverse_kernel(unipotent, MarkedGroup::cyclic(3));
  CHECK(uinv == unipotent);

  CHECK_THROWS_AS(
      lin_inverse_kernel(LinearKernel::zero(2, 1), z4), NotInvertible);
}

TEST_CASE("inverse kernel over a non-abelian group") {
  const MarkedGroup s3 =
      MarkedGroup::from_permutations(3, {{1, 0, 2}, {1, 2, 0}});
  // Right translation by the 3-cycle b: support {b}, a permutation.
  const LinearKernel shift(2, 1, {{FreeWord::parse("b"), scalar(2, 1)}});
  REQUIRE(lin_decide(shift, s3).bijective());
  const LinearKernel inverse = lin_inverse_kernel(shift, s3);
  REQUIRE(inverse.terms().size() == 1);
  // The support word is the shortlex-least lift of b^-1 = b^2.
  CHECK(s3.eval_index(inverse.terms()[0].first) ==
        s3.inv(s3.eval_index(FreeWord::parse("b"))));
  CHECK((lin_matrix(inverse, s3) * lin_matrix(shift, s3)).is_identity());
}

TEST_CASE("matrix agreement at the |G| n = 24 boundary") {
  const MarkedGroup z12 = MarkedGroup::cyclic(12);
  FpMatrix a(2, 2, 2);
  a.set(0, 0, 1);
  a.set(0, 1, 1);
  a.set(1, 1, 1);
  FpMatrix b(2, 2, 2);
  b.set(0, 1, 1);
  b.set(1, 0, 1);
  const LinearKernel kernel(2, 2,
                            {{FreeWord::parse("A"), a},
                             {FreeWord::parse("aa"), b}});
  const FpMatrix matrix = lin_matrix(kernel, z12);
  REQUIRE(matrix.rows() == 24);
  for (std::size_t basis = 0; basis < 24; ++basis) {
    VectorConfiguration e{2, 2, std::vector<std::uint8_t>(24, 0)};
    e.values[basis] = 1;
    const VectorConfiguration image = lin_apply(kernel, z12, e);
    for (std::size_t row = 0; row < 24; ++row) {
      CHECK(image.values[row] == matrix.at(row, basis));
    }
  }
}

TEST_CASE("inverse kernel round-trips to the identity") {
  for (const auto& kernel : nearest_neighbor_kernels()) {
    for (std::uint64_t n = 1; n <= 8; ++n) {
      const MarkedGroup g = MarkedGroup::cyclic(n);
      if (!lin_decide(kernel, g).bijective()) {
        continue;
      }
      const LinearKernel inverse = lin_inverse_kernel(kernel, g);
      // Extensional identity on every configuration over G.
      for (const auto& x : all_vector_configs(2, 1, g.order())) {
        CHECK(lin_apply(inverse, g, lin_apply(kernel, g, x)) == x);
      }
      // Matrix route: product of the realizations is the identity.
      CHECK((lin_matrix(inverse, g) * lin_matrix(kernel, g)).is_identity());
    }
  }
}

TEST_CASE("convolution realizes composition") {
  std::mt19937_64 rng(5150);
  const std::vector<MarkedGroup> groups{MarkedGroup::cyclic(4),
                                        MarkedGroup::cyclic(5)};
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::pair<FreeWord, FpMatrix>> t1, t2;
    for (const auto& w : free_ball(1, 2)) {
      if (rng() % 2) {
        t1.emplace_back(w, scalar(3, static_cast<int>(rng() % 3)));
      }
      if (rng() % 2) {
        t2.emplace_back(w, scalar(3, static_cast<int>(rng() % 3)));
      }
    }
    const LinearKernel a(3, 1, std::move(t1));
    const LinearKernel b(3, 1, std::move(t2));
    const LinearKernel ab = convolve(a, b);
    for (const auto& g : groups) {
      CHECK(lin_matrix(ab, g) == lin_matrix(a, g) * lin_matrix(b, g));
    }
  }
}

TEST_CASE("kernel files round trip") {
  FpMatrix m(3, 2, 2);
  m.set(0, 0, 1);
  m.set(0, 1, 2);
  m.set(1, 0, 0);
  m.set(1, 1, 1);
  const LinearKernel k(3, 2,
                       {{FreeWord::parse("A"), m},
                        {FreeWord::parse("ab"), FpMatrix::identity(3, 2)}});
  std::stringstream buffer;
  k.save(buffer);
  const LinearKernel reloaded = LinearKernel::load(buffer);
  CHECK(reloaded == k);

  std::stringstream bad("prime 4\ndim 1\ne: 1\n");
  CHECK_THROWS_AS(LinearKernel::load(bad), ParseError);
  std::stringstream short_row("prime 2\ndim 2\ne: 1 0 0\n");
  CHECK_THROWS_AS(LinearKernel::load(short_row), ParseError);
}

TEST_CASE("scalar kernels convert to ordinary automata") {
  const CellularAutomaton ca = kernel_to_ca(rule90_kernel());
  CHECK(extensionally_equal(ca, CellularAutomaton::eca(90)));
  CHECK_THROWS_AS(kernel_to_ca(LinearKernel::identity(2, 2)),
                  std::invalid_argument);
}

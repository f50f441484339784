#include <random>

#include "doctest.h"

#include "relhom/intlattice.hpp"

using namespace relhom;

namespace {

  IntMat mat(std::size_t r, std::size_t c, std::vector<long> const& entries) {
    DenseMat d(r, IntVec(c));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        d[i][j] = entries[i * c + j];
      }
    }
    return IntMat::from_dense(r, c, d);
  }

  IntMat random_sparse(std::mt19937& rng, std::size_t r, std::size_t c) {
    std::uniform_int_distribution<int> val(-9, 9);
    std::uniform_real_distribution<>   coin(0, 1);
    double                             density = 0.1 + 0.4 * coin(rng);
    DenseMat                           d(r, IntVec(c));
    for (auto& row : d) {
      for (auto& x : row) {
        if (coin(rng) < density) {
          x = val(rng);
        }
      }
    }
    return IntMat::from_dense(r, c, d);
  }

  IntMat random_unimodular(std::mt19937& rng, std::size_t n) {
    IntMat                             u = IntMat::identity(n);
    std::uniform_int_distribution<int> idx(0, static_cast<int>(n) - 1);
    std::uniform_int_distribution<int> val(-3, 3);
    for (std::size_t k = 0; k < 3 * n; ++k) {
      std::size_t i = idx(rng), j = idx(rng);
      if (i == j) {
        continue;
      }
      IntMat e = IntMat::identity(n);
      e.set(i, j, val(rng));
      u = e * u;
    }
    return u;
  }

  bool is_smith_diagonal(IntMat const& d) {
    Int prev = 1;
    bool zero_seen = false;
    for (std::size_t i = 0; i < d.rows(); ++i) {
      for (std::size_t j = 0; j < d.cols(); ++j) {
        if (i != j && sgn(d.at(i, j)) != 0) {
          return false;
        }
      }
    }
    for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) {
      Int x = d.at(i, i);
      if (sgn(x) < 0) {
        return false;
      }
      if (sgn(x) == 0) {
        zero_seen = true;
        continue;
      }
      if (zero_seen || !mpz_divisible_p(x.get_mpz_t(), prev.get_mpz_t())) {
        return false;
      }
      prev = x;
    }
    return true;
  }

  Int det_dense(DenseMat a) {
    // Bareiss fraction-free elimination.
    std::size_t n = a.size();
    Int         sign = 1, prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
      if (sgn(a[k][k]) == 0) {
        std::size_t s = k + 1;
        while (s < n && sgn(a[s][k]) == 0) {
          ++s;
        }
        if (s == n) {
          return 0;
        }
        std::swap(a[k], a[s]);
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        for (std::size_t j = k + 1; j < n; ++j) {
          a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        }
      }
      prev = a[k][k];
    }
    return n == 0 ? Int(1) : Int(sign * a[n - 1][n - 1]);
  }

}  // namespace

TEST_CASE("smith: documented examples") {
  auto s = smith(mat(2, 2, {2, 4, 6, 8}));
  CHECK(s.D == IntMat::diagonal({2, 4}));

  auto id = smith(IntMat::identity(3));
  CHECK(id.D == IntMat::identity(3));

  auto z = smith(IntMat(2, 3));
  CHECK(z.D.is_zero());
  CHECK(z.D.rows() == 2);
  CHECK(z.D.cols() == 3);

  auto e = smith(IntMat(0, 0));
  CHECK(e.D.rows() == 0);
}

TEST_CASE("cokernel_invariants: documented examples") {
  auto a = cokernel_invariants(mat(2, 2, {2, 0, 0, 3}));
  CHECK(a.free_rank == 0);
  CHECK(a.torsion == IntVec{6});

  auto b = cokernel_invariants(IntMat(0, 2));
  CHECK(b.free_rank == 2);
  CHECK(b.torsion.empty());

  auto c = cokernel_invariants(mat(2, 2, {1, 1, 1, -1}));
  CHECK(c.free_rank == 0);
  CHECK(c.torsion == IntVec{2});
}

TEST_CASE("cokernel_invariants: row orientation canary") {
  // Z^2 / <(2,0)> = Z + Z/2. The column-space reading would give Z/2.
  auto a = cokernel_invariants(mat(1, 2, {2, 0}));
  CHECK(a.free_rank == 1);
  CHECK(a.torsion == IntVec{2});
  CHECK(a.to_string() == "Z + Z/2");
}

TEST_CASE("kernel_basis: documented examples") {
  auto k = kernel_basis(mat(2, 2, {1, 1, 1, 1}));
  REQUIRE(k.cols() == 1);
  CHECK(abs(k.at(0, 0)) == 1);
  CHECK(k.at(1, 0) == -k.at(0, 0));

  CHECK(kernel_basis(IntMat::identity(2)).cols() == 0);

  IntMat a = mat(1, 3, {2, -1, 0});
  auto   b = kernel_basis(a);
  REQUIRE(b.cols() == 2);
  CHECK((a * b).is_zero());
  CHECK(solve_in_lattice(b, IntVec{1, 2, 0}).has_value());
  CHECK(solve_in_lattice(b, IntVec{0, 0, 1}).has_value());
}

TEST_CASE("solve_in_lattice: documented examples") {
  auto x = solve_in_lattice(mat(1, 1, {2}), IntVec{4});
  REQUIRE(x.has_value());
  CHECK(*x == IntVec{2});

  CHECK_FALSE(solve_in_lattice(mat(1, 1, {2}), IntVec{3}).has_value());

  auto y = solve_in_lattice(mat(2, 2, {1, 1, 0, 2}), IntVec{0, 2});
  REQUIRE(y.has_value());
  CHECK(*y == IntVec{-1, 1});
}

TEST_CASE("smith: round trip on 200 random sparse matrices") {
  std::mt19937                       rng(20240611);
  std::uniform_int_distribution<int> dim(1, 40);
  for (int trial = 0; trial < 200; ++trial) {
    IntMat a = random_sparse(rng, dim(rng), dim(rng));
    auto   s = smith(a);
    CHECK(s.U * a * s.V == s.D);
    CHECK(is_smith_diagonal(s.D));
    if (a.rows() <= 12 && a.cols() <= 12) {
      CHECK(abs(det_dense(s.U.to_dense())) == 1);
      CHECK(abs(det_dense(s.V.to_dense())) == 1);
    }
  }
}

TEST_CASE("sparse quotient agrees with dense Smith diagonal") {
  std::mt19937                       rng(7);
  std::uniform_int_distribution<int> dim(1, 25);
  for (int trial = 0; trial < 100; ++trial) {
    IntMat a = random_sparse(rng, dim(rng), dim(rng));
    auto   s = smith(a);
    IntVec diag;
    for (std::size_t i = 0; i < a.cols(); ++i) {
      diag.push_back(i < a.rows() ? s.D.at(i, i) : Int(0));
    }
    CHECK(cokernel_invariants(a) == canonical_invariants(diag));
  }
}

TEST_CASE("cokernel_invariants is basis independent") {
  std::mt19937                       rng(99);
  std::uniform_int_distribution<int> dim(1, 15);
  for (int trial = 0; trial < 50; ++trial) {
    IntMat a = random_sparse(rng, dim(rng), dim(rng));
    IntMat p = random_unimodular(rng, a.rows());
    IntMat q = random_unimodular(rng, a.cols());
    CHECK(cokernel_invariants(p * a * q) == cokernel_invariants(a));
  }
}

TEST_CASE("kernel_basis is saturated (brute-force box search)") {
  std::mt19937                       rng(5);
  std::uniform_int_distribution<int> rows(1, 3);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t q = 4;
    IntMat      a = random_sparse(rng, rows(rng), q);
    IntMat      k = kernel_basis(a);
    CHECK((a * k).is_zero());
    // Full column rank.
    CHECK(cokernel_invariants(k.transpose()).free_rank == q - k.cols());
    // Every kernel vector in the box [-3,3]^4 is an integer combination.
    for (int x0 = -3; x0 <= 3; ++x0) {
      for (int x1 = -3; x1 <= 3; ++x1) {
        for (int x2 = -3; x2 <= 3; ++x2) {
          for (int x3 = -3; x3 <= 3; ++x3) {
            IntVec v{x0, x1, x2, x3};
            if (vec::is_zero(a.apply(v))) {
              CHECK(solve_in_lattice(k, v).has_value());
            }
          }
        }
      }
    }
  }
}

TEST_CASE("LatticeQuotient: sections, coordinates, functionals") {
  std::mt19937                       rng(11);
  std::uniform_int_distribution<int> dim(1, 20);
  for (int trial = 0; trial < 60; ++trial) {
    IntMat          a = random_sparse(rng, dim(rng), dim(rng));
    LatticeQuotient q(a);
    for (std::size_t i = 0; i < q.num_components(); ++i) {
      CHECK(q.coordinates(q.section(i)) == vec::unit(q.num_components(), i));
    }
    for (auto const& row : a.row_vectors()) {
      CHECK(q.contains(row));
    }
    for (auto const& phi : q.free_functionals()) {
      CHECK(vec::is_zero(a.apply(phi)));
    }
  }
}

TEST_CASE("AbInvariants formatting") {
  CHECK(AbInvariants{}.to_string() == "0");
  CHECK(AbInvariants{0, {2, 2}}.to_string() == "(Z/2)^2");
  CHECK(AbInvariants{2, {2}}.to_string() == "Z^2 + Z/2");
  CHECK(canonical_invariants({2, 3, 0, 1}) == AbInvariants{1, {6}});
}

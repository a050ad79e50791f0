#pragma once

#include <optional>
#include <vector>

#include "powpres/bigint.hpp"
#include "powpres/presentation.hpp"

namespace powpres {

// Dense integer matrix with arbitrary-precision entries, row-major.
struct IntMatrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<BigInt> a;

  IntMatrix() = default;
  IntMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}

  BigInt& at(size_t i, size_t j) { return a[i * cols + j]; }
  const BigInt& at(size_t i, size_t j) const { return a[i * cols + j]; }
};

// Diagonal of the Smith normal form: divisors[i] > 0, divisors[i] divides
// divisors[i+1], one entry per nonzero diagonal position. rank == divisors.size().
struct SmithResult {
  std::vector<BigInt> divisors;
  size_t rank = 0;
};

SmithResult smith_normal_form(IntMatrix m);

// Full decomposition u * a * v = d with u, v unimodular and d diagonal with
// the divisibility chain; d's nonzero diagonal entries are positive.
struct SmithTransforms {
  IntMatrix d;
  IntMatrix u;
  IntMatrix v;
  size_t rank = 0;
};
SmithTransforms smith_normal_form_with_transforms(IntMatrix m);

// Integer solution x of x * a = b (row-vector convention), if one exists.
std::optional<std::vector<BigInt>> solve_left(const IntMatrix& a,
                                              const std::vector<BigInt>& b);

// Invariant factors of the abelianization Z^k / (row space of the exponent
// matrix). torsion keeps the divisors > 1, in divisibility order.
struct AbelianInvariants {
  std::vector<BigInt> torsion;
  size_t free_rank = 0;

  bool is_trivial() const { return torsion.empty() && free_rank == 0; }
  bool operator==(const AbelianInvariants& o) const {
    return torsion == o.torsion && free_rank == o.free_rank;
  }
};

// Exponent matrix of p (one row per relator, one column per generator).
IntMatrix exponent_matrix(const Presentation& p);

AbelianInvariants abelianization(const Presentation& p);

}  // namespace powpres

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "netcode/gf2.hpp"

using namespace netcode;

namespace {

Gf2Matrix random_matrix(std::mt19937& rng, size_t rows, size_t cols) {
  Gf2Matrix m(rows, cols);
  std::bernoulli_distribution bit(0.5);
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < cols; ++c) m.set(r, c, bit(rng));
  return m;
}

// Independent elimination oracle: plain vector-of-vectors Gaussian
// elimination, no bit packing, used to cross-check rank.
size_t naive_rank(const Gf2Matrix& m) {
  std::vector<std::vector<uint8_t>> rows;
  for (size_t r = 0; r < m.rows(); ++r) {
    std::vector<uint8_t> row;
    for (size_t c = 0; c < m.cols(); ++c) row.push_back(m.get(r, c));
    rows.push_back(row);
  }
  size_t rank = 0;
  for (size_t col = 0; col < m.cols(); ++col) {
    size_t pivot = rank;
    while (pivot < rows.size() && !rows[pivot][col]) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (size_t r = 0; r < rows.size(); ++r)
      if (r != rank && rows[r][col])
        for (size_t c = 0; c < m.cols(); ++c) rows[r][c] ^= rows[rank][c];
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("rank basics") {
  CHECK(Gf2Matrix::identity(3).rank() == 3);
  Gf2Matrix ones = Gf2Matrix::parse("11\n11");
  CHECK(ones.rank() == 1);
  CHECK(Gf2Matrix::zero(2, 3).rank() == 0);
}

TEST_CASE("rank matches the naive elimination oracle") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Gf2Matrix m = random_matrix(rng, 4, 6);
    CHECK(m.rank() == naive_rank(m));
  }
  for (int trial = 0; trial < 50; ++trial) {
    Gf2Matrix m = random_matrix(rng, 9, 70);  // stretches past one word
    CHECK(m.rank() == naive_rank(m));
  }
}

TEST_CASE("kernel basics") {
  CHECK(Gf2Matrix::identity(2).kernel_basis().empty());
  auto basis = Gf2Matrix::parse("11").kernel_basis();
  REQUIRE(basis.size() == 1);
  CHECK(basis[0] == BitVec{1, 1});
  CHECK(Gf2Matrix::zero(2, 3).kernel_basis().size() == 3);
}

TEST_CASE("rank-nullity, exhaustively for 3x3 and randomly for 8x8") {
  for (uint32_t bits = 0; bits < (1u << 9); ++bits) {
    Gf2Matrix m(3, 3);
    for (size_t i = 0; i < 9; ++i) m.set(i / 3, i % 3, (bits >> i) & 1);
    CHECK(m.rank() + m.kernel_basis().size() == 3);
    for (const auto& v : m.kernel_basis())
      CHECK(m.apply(v) == BitVec(3, 0));
  }
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Gf2Matrix m = random_matrix(rng, 8, 8);
    CHECK(m.rank() + m.kernel_basis().size() == 8);
    for (const auto& v : m.kernel_basis())
      CHECK(m.apply(v) == BitVec(8, 0));
  }
}

TEST_CASE("product and apply") {
  Gf2Matrix id = Gf2Matrix::identity(4);
  std::mt19937 rng(3);
  Gf2Matrix m = random_matrix(rng, 4, 4);
  CHECK(id * m == m);
  CHECK(Gf2Matrix::parse("11").apply({1, 1}) == BitVec{0});

  for (int trial = 0; trial < 50; ++trial) {
    Gf2Matrix a = random_matrix(rng, 3, 5);
    Gf2Matrix b = random_matrix(rng, 5, 4);
    Gf2Matrix c = random_matrix(rng, 4, 6);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("solve returns a preimage") {
  std::mt19937 rng(19);
  std::bernoulli_distribution bit(0.5);
  for (int trial = 0; trial < 100; ++trial) {
    Gf2Matrix a = random_matrix(rng, 5, 7);
    BitVec x(7);
    for (auto& v : x) v = bit(rng);
    BitVec y = a.apply(x);
    auto sol = a.solve(y);
    REQUIRE(sol.has_value());
    CHECK(a.apply(*sol) == y);
  }
  CHECK_FALSE(Gf2Matrix::zero(1, 1).solve({1}).has_value());
}

TEST_CASE("left inverse undoes an injection") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    Gf2Matrix m = random_matrix(rng, 6, 3);
    if (m.rank() < 3) continue;
    CHECK(m.left_inverse() * m == Gf2Matrix::identity(3));
  }
  CHECK_THROWS(Gf2Matrix::zero(3, 2).left_inverse());
  // Trivial wide case: a 0-column injection.
  Gf2Matrix none(4, 0);
  Gf2Matrix inv = none.left_inverse();
  CHECK(inv.rows() == 0);
  CHECK(inv.cols() == 4);
}

TEST_CASE("text format round trip") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    Gf2Matrix m = random_matrix(rng, 3, 4);
    CHECK(Gf2Matrix::parse(m.to_text()) == m);
  }
  CHECK_THROWS(Gf2Matrix::parse("10\n2"));
  Gf2Matrix empty = Gf2Matrix::parse_sized("", 0, 5);
  CHECK(empty.rows() == 0);
  CHECK(empty.cols() == 5);
}

TEST_CASE("stacking and slicing") {
  Gf2Matrix a = Gf2Matrix::parse("10\n01");
  Gf2Matrix b = Gf2Matrix::parse("11\n00");
  Gf2Matrix h = Gf2Matrix::hstack({a, b});
  CHECK(h.to_text() == "1011\n0100");
  Gf2Matrix v = Gf2Matrix::vstack({a, b});
  CHECK(v.rows() == 4);
  CHECK(v.row_slice(2, 4) == b);
  CHECK(h.col_slice(2, 4) == b);
}

TEST_CASE("bit vector index packing") {
  CHECK(bitvec_to_index({1, 0, 1}) == 5);
  CHECK(index_to_bitvec(5, 3) == BitVec{1, 0, 1});
  CHECK(bitvec_to_index(index_to_bitvec(0, 0)) == 0);
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace netcode {

// A vector over GF(2), one entry per element, values 0/1.
using BitVec = std::vector<uint8_t>;

uint64_t bitvec_to_index(const BitVec& v);          // bit i weighs 2^i
BitVec index_to_bitvec(uint64_t idx, size_t bits);
BitVec xor_bits(const BitVec& a, const BitVec& b);

// Dense binary matrix with word-packed rows. All arithmetic mod 2.
// Zero-row and zero-column matrices are legal (rate-0 message blocks).
class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  Gf2Matrix(size_t rows, size_t cols);

  static Gf2Matrix identity(size_t n);
  static Gf2Matrix zero(size_t rows, size_t cols) { return Gf2Matrix(rows, cols); }
  static Gf2Matrix from_rows(const std::vector<BitVec>& rows, size_t cols);
  // Basis vectors become columns; used to turn a kernel basis into an
  // injection map.
  static Gf2Matrix from_columns(const std::vector<BitVec>& cols, size_t rows);
  // Rows of '0'/'1' characters separated by newlines.
  static Gf2Matrix parse(const std::string& text);
  // Same, but accepts the ambiguous encodings of 0xN / Nx0 matrices by
  // checking against the expected shape.
  static Gf2Matrix parse_sized(const std::string& text, size_t rows, size_t cols);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  bool get(size_t r, size_t c) const;
  void set(size_t r, size_t c, bool v);

  bool operator==(const Gf2Matrix& o) const;
  bool operator!=(const Gf2Matrix& o) const { return !(*this == o); }

  Gf2Matrix operator*(const Gf2Matrix& o) const;
  Gf2Matrix operator+(const Gf2Matrix& o) const;
  BitVec apply(const BitVec& x) const;

  size_t rank() const;
  // Basis of {x : A x = 0}, from the reduced echelon form with free columns
  // taken in ascending order. Deterministic.
  std::vector<BitVec> kernel_basis() const;
  // Any x with A x = y, or nullopt when inconsistent. Free variables are 0.
  std::optional<BitVec> solve(const BitVec& y) const;
  // P with P * A = I; requires full column rank.
  Gf2Matrix left_inverse() const;
  Gf2Matrix transpose() const;
  bool is_zero() const;

  static Gf2Matrix hstack(const std::vector<Gf2Matrix>& blocks);
  static Gf2Matrix vstack(const std::vector<Gf2Matrix>& blocks);
  Gf2Matrix row_slice(size_t begin, size_t end) const;
  Gf2Matrix col_slice(size_t begin, size_t end) const;

  std::string to_text() const;

 private:
  void xor_row_into(size_t dst, size_t src);
  size_t rows_ = 0, cols_ = 0, words_ = 0;
  std::vector<uint64_t> bits_;
};

}  // namespace netcode

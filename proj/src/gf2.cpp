#include "netcode/gf2.hpp"

#include <algorithm>
#include <stdexcept>

namespace netcode {

uint64_t bitvec_to_index(const BitVec& v) {
  if (v.size() > 63) throw std::invalid_argument("bit vector too wide for index");
  uint64_t idx = 0;
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i]) idx |= uint64_t(1) << i;
  return idx;
}

BitVec index_to_bitvec(uint64_t idx, size_t bits) {
  BitVec v(bits, 0);
  for (size_t i = 0; i < bits; ++i) v[i] = (idx >> i) & 1;
  return v;
}

BitVec xor_bits(const BitVec& a, const BitVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("xor_bits: length mismatch");
  BitVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] ^ b[i];
  return r;
}

Gf2Matrix::Gf2Matrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

Gf2Matrix Gf2Matrix::identity(size_t n) {
  Gf2Matrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

Gf2Matrix Gf2Matrix::from_rows(const std::vector<BitVec>& rows, size_t cols) {
  Gf2Matrix m(rows.size(), cols);
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("from_rows: ragged input");
    for (size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

Gf2Matrix Gf2Matrix::from_columns(const std::vector<BitVec>& cols, size_t rows) {
  Gf2Matrix m(rows, cols.size());
  for (size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw std::invalid_argument("from_columns: ragged input");
    for (size_t r = 0; r < rows; ++r) m.set(r, c, cols[c][r]);
  }
  return m;
}

Gf2Matrix Gf2Matrix::parse(const std::string& text) {
  std::vector<BitVec> rows;
  BitVec current;
  bool sawAny = false;
  for (char ch : text) {
    if (ch == '\n') {
      rows.push_back(current);
      current.clear();
      sawAny = true;
      continue;
    }
    if (ch == '\r' || ch == ' ' || ch == '\t') continue;
    if (ch != '0' && ch != '1') throw std::invalid_argument("matrix text: expected '0'/'1'");
    current.push_back(ch == '1');
    sawAny = true;
  }
  if (!current.empty()) rows.push_back(current);
  if (rows.empty() && !sawAny) return Gf2Matrix();
  if (rows.empty()) rows.push_back({});
  size_t cols = rows.front().size();
  return from_rows(rows, cols);
}

Gf2Matrix Gf2Matrix::parse_sized(const std::string& text, size_t rows, size_t cols) {
  if (rows == 0 || cols == 0) {
    for (char ch : text)
      if (ch == '1') throw std::invalid_argument("matrix text: nonzero entry in empty matrix");
    return Gf2Matrix(rows, cols);
  }
  Gf2Matrix m = parse(text);
  if (m.rows() != rows || m.cols() != cols)
    throw std::invalid_argument("matrix text: expected " + std::to_string(rows) + "x" +
                                std::to_string(cols) + ", got " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
  return m;
}

bool Gf2Matrix::get(size_t r, size_t c) const {
  return (bits_[r * words_ + c / 64] >> (c % 64)) & 1;
}

void Gf2Matrix::set(size_t r, size_t c, bool v) {
  uint64_t& w = bits_[r * words_ + c / 64];
  uint64_t mask = uint64_t(1) << (c % 64);
  if (v)
    w |= mask;
  else
    w &= ~mask;
}

bool Gf2Matrix::operator==(const Gf2Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && bits_ == o.bits_;
}

void Gf2Matrix::xor_row_into(size_t dst, size_t src) {
  for (size_t w = 0; w < words_; ++w) bits_[dst * words_ + w] ^= bits_[src * words_ + w];
}

Gf2Matrix Gf2Matrix::operator*(const Gf2Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("gf2 product: dimension mismatch");
  Gf2Matrix out(rows_, o.cols_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t k = 0; k < cols_; ++k)
      if (get(r, k))
        for (size_t w = 0; w < o.words_; ++w)
          out.bits_[r * out.words_ + w] ^= o.bits_[k * o.words_ + w];
  return out;
}

Gf2Matrix Gf2Matrix::operator+(const Gf2Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("gf2 sum: shape mismatch");
  Gf2Matrix out = *this;
  for (size_t i = 0; i < bits_.size(); ++i) out.bits_[i] ^= o.bits_[i];
  return out;
}

BitVec Gf2Matrix::apply(const BitVec& x) const {
  if (x.size() != cols_) throw std::invalid_argument("gf2 apply: dimension mismatch");
  BitVec y(rows_, 0);
  for (size_t r = 0; r < rows_; ++r) {
    uint8_t acc = 0;
    for (size_t c = 0; c < cols_; ++c) acc ^= (x[c] & get(r, c));
    y[r] = acc;
  }
  return y;
}

namespace {

// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<size_t> rref(Gf2Matrix& m) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    size_t sel = row;
    while (sel < m.rows() && !m.get(sel, col)) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (size_t c = col; c < m.cols(); ++c) {
        bool a = m.get(row, c), b = m.get(sel, c);
        m.set(row, c, b);
        m.set(sel, c, a);
      }
    for (size_t r = 0; r < m.rows(); ++r)
      if (r != row && m.get(r, col))
        for (size_t c = col; c < m.cols(); ++c) m.set(r, c, m.get(r, c) ^ m.get(row, c));
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

size_t Gf2Matrix::rank() const {
  Gf2Matrix m = *this;
  return rref(m).size();
}

std::vector<BitVec> Gf2Matrix::kernel_basis() const {
  Gf2Matrix m = *this;
  std::vector<size_t> pivots = rref(m);
  std::vector<bool> isPivot(cols_, false);
  for (size_t p : pivots) isPivot[p] = true;
  std::vector<BitVec> basis;
  for (size_t f = 0; f < cols_; ++f) {
    if (isPivot[f]) continue;
    BitVec v(cols_, 0);
    v[f] = 1;
    for (size_t r = 0; r < pivots.size(); ++r)
      if (m.get(r, f)) v[pivots[r]] = 1;
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<BitVec> Gf2Matrix::solve(const BitVec& y) const {
  if (y.size() != rows_) throw std::invalid_argument("gf2 solve: rhs dimension mismatch");
  Gf2Matrix aug(rows_, cols_ + 1);
  for (size_t r = 0; r < rows_; ++r) {
    for (size_t c = 0; c < cols_; ++c) aug.set(r, c, get(r, c));
    aug.set(r, cols_, y[r]);
  }
  std::vector<size_t> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
  BitVec x(cols_, 0);
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.get(r, cols_);
  return x;
}

Gf2Matrix Gf2Matrix::left_inverse() const {
  Gf2Matrix t = transpose();
  std::vector<BitVec> rows;
  for (size_t i = 0; i < cols_; ++i) {
    BitVec e(cols_, 0);
    e[i] = 1;
    auto sol = t.solve(e);
    if (!sol) throw std::invalid_argument("left_inverse: matrix lacks full column rank");
    rows.push_back(*sol);
  }
  return from_rows(rows, rows_);
}

Gf2Matrix Gf2Matrix::transpose() const {
  Gf2Matrix t(cols_, rows_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c)
      if (get(r, c)) t.set(c, r, true);
  return t;
}

bool Gf2Matrix::is_zero() const {
  return std::all_of(bits_.begin(), bits_.end(), [](uint64_t w) { return w == 0; });
}

Gf2Matrix Gf2Matrix::hstack(const std::vector<Gf2Matrix>& blocks) {
  if (blocks.empty()) return Gf2Matrix();
  size_t rows = blocks.front().rows(), cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) throw std::invalid_argument("hstack: row mismatch");
    cols += b.cols();
  }
  Gf2Matrix out(rows, cols);
  size_t off = 0;
  for (const auto& b : blocks) {
    for (size_t r = 0; r < rows; ++r)
      for (size_t c = 0; c < b.cols(); ++c) out.set(r, off + c, b.get(r, c));
    off += b.cols();
  }
  return out;
}

Gf2Matrix Gf2Matrix::vstack(const std::vector<Gf2Matrix>& blocks) {
  if (blocks.empty()) return Gf2Matrix();
  size_t cols = blocks.front().cols(), rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw std::invalid_argument("vstack: column mismatch");
    rows += b.rows();
  }
  Gf2Matrix out(rows, cols);
  size_t off = 0;
  for (const auto& b : blocks) {
    for (size_t r = 0; r < b.rows(); ++r)
      for (size_t c = 0; c < cols; ++c) out.set(off + r, c, b.get(r, c));
    off += b.rows();
  }
  return out;
}

Gf2Matrix Gf2Matrix::row_slice(size_t begin, size_t end) const {
  if (begin > end || end > rows_) throw std::invalid_argument("row_slice: bad range");
  Gf2Matrix out(end - begin, cols_);
  for (size_t r = begin; r < end; ++r)
    for (size_t c = 0; c < cols_; ++c) out.set(r - begin, c, get(r, c));
  return out;
}

Gf2Matrix Gf2Matrix::col_slice(size_t begin, size_t end) const {
  if (begin > end || end > cols_) throw std::invalid_argument("col_slice: bad range");
  Gf2Matrix out(rows_, end - begin);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = begin; c < end; ++c) out.set(r, c - begin, get(r, c));
  return out;
}

std::string Gf2Matrix::to_text() const {
  std::string out;
  for (size_t r = 0; r < rows_; ++r) {
    for (size_t c = 0; c < cols_; ++c) out.push_back(get(r, c) ? '1' : '0');
    if (r + 1 < rows_) out.push_back('\n');
  }
  return out;
}

}  // namespace netcode

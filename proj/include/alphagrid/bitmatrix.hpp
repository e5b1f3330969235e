#pragma once

#include <string>
#include <vector>

#include "alphagrid/bits.hpp"

namespace alphagrid {

// 0/1 matrix with bit-packed row supports. Immutable after construction:
// every edit returns a new matrix.
class BinaryMatrix {
  public:
    static constexpr int max_side = 4096;

    BinaryMatrix() = default;
    // Zero matrix.
    BinaryMatrix(int n_rows, int n_cols);
    // Takes ownership of prebuilt row supports (each must have width n_cols).
    BinaryMatrix(int n_cols, std::vector<Bits> rows);

    int n_rows() const { return n_rows_; }
    int n_cols() const { return n_cols_; }
    long ones_count() const { return ones_; }
    bool test(int r, int c) const { return rows_[r].test(c); }
    const Bits& row_support(int r) const { return rows_[r]; }
    const std::vector<Bits>& rows() const { return rows_; }

    // Copy with one extra 1 at (r, c); no-op copy if already set.
    BinaryMatrix with_one(int r, int c) const;

    bool operator==(const BinaryMatrix& o) const {
        return n_rows_ == o.n_rows_ && n_cols_ == o.n_cols_ && rows_ == o.rows_;
    }

  private:
    int n_rows_ = 0, n_cols_ = 0;
    long ones_ = 0;
    std::vector<Bits> rows_;
};

// Matrix-text: first line "<n_rows> <n_cols>", then n_rows lines of exactly
// n_cols characters from {0,1}. Parse/serialize round-trip bit-exactly.
BinaryMatrix parse_matrix(const std::string& text);
std::string serialize_matrix(const BinaryMatrix& a);
// The body is the text without the dimension header (used as canonical-form
// byte string); rows joined with '\n', with a trailing '\n'.
std::string matrix_body(const BinaryMatrix& a);

// result(row_perm[i], col_perm[j]) = a(i, j); both arguments must be
// permutations of 0..n-1 for their side.
BinaryMatrix permute(const BinaryMatrix& a, const std::vector<int>& row_perm,
                     const std::vector<int>& col_perm);

BinaryMatrix transpose(const BinaryMatrix& a);

// Columns that are zero in every selected row; `rows` must be nonempty and
// have width n_rows.
Bits common_zero_columns(const BinaryMatrix& a, const Bits& rows);

} // namespace alphagrid

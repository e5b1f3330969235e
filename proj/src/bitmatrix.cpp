#include "alphagrid/bitmatrix.hpp"

#include <sstream>

#include "alphagrid/errors.hpp"

namespace alphagrid {

namespace {

void check_side(int n_rows, int n_cols) {
    if (n_rows < 0 || n_cols < 0) throw DimensionError("negative matrix dimension");
    if (n_rows > BinaryMatrix::max_side || n_cols > BinaryMatrix::max_side)
        throw SizeError("matrix side exceeds " + std::to_string(BinaryMatrix::max_side));
}

void check_permutation(const std::vector<int>& p, int n, const char* side) {
    if (static_cast<int>(p.size()) != n)
        throw DimensionError(std::string(side) + " permutation length mismatch");
    std::vector<char> seen(n, 0);
    for (int v : p) {
        if (v < 0 || v >= n || seen[v]) throw ContractError(std::string(side) + " permutation is not a bijection");
        seen[v] = 1;
    }
}

} // namespace

BinaryMatrix::BinaryMatrix(int n_rows, int n_cols) : n_rows_(n_rows), n_cols_(n_cols) {
    check_side(n_rows, n_cols);
    rows_.assign(n_rows, Bits(n_cols));
}

BinaryMatrix::BinaryMatrix(int n_cols, std::vector<Bits> rows)
    : n_rows_(static_cast<int>(rows.size())), n_cols_(n_cols), rows_(std::move(rows)) {
    check_side(n_rows_, n_cols_);
    for (const Bits& r : rows_) {
        if (r.width() != n_cols_) throw DimensionError("row support width mismatch");
        ones_ += r.count();
    }
}

BinaryMatrix BinaryMatrix::with_one(int r, int c) const {
    if (r < 0 || r >= n_rows_ || c < 0 || c >= n_cols_)
        throw DimensionError("cell (" + std::to_string(r) + ", " + std::to_string(c) +
                             ") lies outside the matrix");
    BinaryMatrix m = *this;
    if (!m.rows_[r].test(c)) {
        m.rows_[r].set(c);
        ++m.ones_;
    }
    return m;
}

BinaryMatrix parse_matrix(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "missing dimension header");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    int n_rows = -1, n_cols = -1;
    {
        std::istringstream hdr(line);
        if (!(hdr >> n_rows >> n_cols)) throw ParseError(1, "header must be '<n_rows> <n_cols>'");
        std::string extra;
        if (hdr >> extra) throw ParseError(1, "trailing tokens after dimensions");
    }
    if (n_rows < 0 || n_cols < 0) throw ParseError(1, "dimensions must be nonnegative");
    check_side(n_rows, n_cols);

    std::vector<Bits> rows;
    rows.reserve(n_rows);
    for (int r = 0; r < n_rows; ++r) {
        if (!std::getline(in, line)) throw ParseError(r + 2, "expected matrix row");
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (static_cast<int>(line.size()) != n_cols)
            throw ParseError(r + 2, "row has " + std::to_string(line.size()) + " characters, expected " +
                                        std::to_string(n_cols));
        Bits b(n_cols);
        for (int c = 0; c < n_cols; ++c) {
            if (line[c] == '1')
                b.set(c);
            else if (line[c] != '0')
                throw ParseError(r + 2, std::string("invalid character '") + line[c] + "'");
        }
        rows.push_back(std::move(b));
    }
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) throw ParseError(n_rows + 2, "unexpected content after last row");
    }
    return BinaryMatrix(n_cols, std::move(rows));
}

std::string matrix_body(const BinaryMatrix& a) {
    std::string out;
    out.reserve(static_cast<size_t>(a.n_rows()) * (a.n_cols() + 1));
    for (int r = 0; r < a.n_rows(); ++r) {
        for (int c = 0; c < a.n_cols(); ++c) out.push_back(a.test(r, c) ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

std::string serialize_matrix(const BinaryMatrix& a) {
    return std::to_string(a.n_rows()) + " " + std::to_string(a.n_cols()) + "\n" + matrix_body(a);
}

BinaryMatrix permute(const BinaryMatrix& a, const std::vector<int>& row_perm,
                     const std::vector<int>& col_perm) {
    check_permutation(row_perm, a.n_rows(), "row");
    check_permutation(col_perm, a.n_cols(), "column");
    std::vector<Bits> rows(a.n_rows(), Bits(a.n_cols()));
    for (int r = 0; r < a.n_rows(); ++r) {
        Bits& out = rows[row_perm[r]];
        const Bits& src = a.row_support(r);
        for (int c = src.next(0); c >= 0; c = src.next(c + 1)) out.set(col_perm[c]);
    }
    return BinaryMatrix(a.n_cols(), std::move(rows));
}

BinaryMatrix transpose(const BinaryMatrix& a) {
    std::vector<Bits> rows(a.n_cols(), Bits(a.n_rows()));
    for (int r = 0; r < a.n_rows(); ++r) {
        const Bits& src = a.row_support(r);
        for (int c = src.next(0); c >= 0; c = src.next(c + 1)) rows[c].set(r);
    }
    return BinaryMatrix(a.n_rows(), std::move(rows));
}

Bits common_zero_columns(const BinaryMatrix& a, const Bits& rows) {
    if (rows.width() != a.n_rows()) throw DimensionError("row subset width mismatch");
    if (rows.none()) throw ContractError("row subset must be nonempty");
    Bits zeros = Bits::full(a.n_cols());
    for (int r = rows.next(0); r >= 0; r = rows.next(r + 1)) zeros.and_not(a.row_support(r));
    return zeros;
}

} // namespace alphagrid

#pragma once

#include <string>
#include <vector>

#include "alphagrid/bitmatrix.hpp"

namespace alphagrid {

// Canonical representative of a 0/1 matrix under row permutations x column
// permutations (optionally also transpose). Two matrices have equal
// CanonicalForm exactly when one can be carried to the other by such a
// permutation pair (or pair-plus-transpose when enabled).
struct CanonicalForm {
    // Matrix-text body (rows of '0'/'1' joined by '\n', trailing '\n') of the
    // lexicographically least matrix in the orbit.
    std::string body;

    bool operator==(const CanonicalForm& o) const { return body == o.body; }
    bool operator!=(const CanonicalForm& o) const { return body != o.body; }
    bool operator<(const CanonicalForm& o) const { return body < o.body; }
};

// Permutation pair carrying the input matrix onto its canonical form:
// permute(transposed ? transpose(A) : A, row_perm, col_perm) has matrix_body
// equal to CanonicalForm::body. `transposed` is only ever true when the form
// was requested with transpose equivalence.
struct CanonicalWitness {
    std::vector<int> row_perm;
    std::vector<int> col_perm;
    bool transposed = false;
};

inline constexpr int canonical_max_side = 16;

// Canonical form of `a`. The search orders rows greedily for the least body
// string, refining a column partition as rows are placed (each placed row
// splits the groups it meets; the packed reading of a row against the current
// partition is its neighbor signature). Ties branch, exploring candidates by
// original row index, and the least completed body wins. With
// `with_transpose`, both `a` and its transpose are canonicalized and the
// lesser body is returned.
//
// Preconditions: both sides <= canonical_max_side (SizeError), and square
// input when `with_transpose` (DimensionError). If `witness` is non-null it
// receives one validated permutation pair realizing the form.
CanonicalForm canonical_form(const BinaryMatrix& a, bool with_transpose = false,
                             CanonicalWitness* witness = nullptr);

// True iff `a` and `b` lie in the same orbit. Mismatched dimensions compare
// unequal rather than erroring (with transpose enabled, an r x c matrix is
// still comparable to a c x r one).
bool are_equivalent(const BinaryMatrix& a, const BinaryMatrix& b, bool with_transpose = false);

// Stable 64-bit FNV-1a digest of the form's body, as 16 lowercase hex digits.
// Identical across platforms and runs; used by the CLI to label forms.
std::string canonical_digest(const CanonicalForm& form);

} // namespace alphagrid

#pragma once

#include <optional>

#include "alphagrid/bitmatrix.hpp"

namespace alphagrid {

// Certificate that some k rows share at least k all-zero columns: the induced
// k×k minor is all zeros.
struct MinorWitness {
    Bits rows; // width n_rows, k bits set
    Bits cols; // width n_cols, k bits set
    int k = 0;
};

// True iff every entry of the induced minor really is 0 in `a`.
bool validate_witness(const BinaryMatrix& a, const MinorWitness& w);

enum class MinorSearch {
    auto_select, // exhaustive below the size threshold, structured above
    exhaustive,  // pinned depth-first subset search (deterministic lex-least witness)
    structured   // padding classification + surplus test + bounded core search
};

// Decides whether `a` contains an all-zero k×k minor and returns a witness
// when it does. Exhaustive strategy returns the lexicographically least
// witness under the pinned row ordering (ascending support size, ties by
// index); the structured strategy (selected automatically for large
// instances) is equally exact and deterministic but pins its own witness
// choice.
std::optional<MinorWitness> find_zero_minor(const BinaryMatrix& a, int k,
                                            MinorSearch strategy = MinorSearch::auto_select);

// Test oracle: plain enumeration of all k-row subsets in lexicographic order
// over original row indices. Guard: C(n_rows, k) ≤ 10^7.
std::optional<MinorWitness> brute_force_zero_minor(const BinaryMatrix& a, int k);

// True iff every nonempty row subset S hits at least min(|S| + c, n_cols)
// distinct columns — the Hall-style surplus the block constructions rely on.
// The cap acknowledges that a subset cannot span more columns than the block
// has; the minor arguments only ever use subsets for which the cap is slack.
// Exhaustive over subsets; guard n_rows ≤ 24.
bool check_row_surplus(const BinaryMatrix& a, int c);

} // namespace alphagrid

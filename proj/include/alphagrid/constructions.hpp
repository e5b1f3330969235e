#pragma once

// Explicit matrix families with closed-form one-counts. Each builder returns
// a BuiltMatrix whose matrix is believed to contain no all-zero k×k minor;
// the claim is certified by find_zero_minor in the tests and the CLI, never
// assumed. Except for the diagonal family (square n×n for n/2 < k ≤ n), all
// families live on n = 2k or n = 2k+1 and share a common anatomy:
//
//   [ identity block | 0       ]     the identity padding costs one column
//   [ 0              | grouped ]     per row; the grouped block packs two-one
//                                    rows ("pair groups") over rows of three
//                                    ones that tie the groups together.
//
// The grouped block is parameterized by the group width a, the number of
// extra two-one rows appended to the identity (e), and the width of the
// trailing truncated group (w). Validated (e, w) choices and the minimum k
// for which a family verifies are pinned constants discovered by the sweep
// tool (tools/family_sweep) and recorded in tests/golden/minimum_k.json.

#include <alphagrid/bitmatrix.hpp>

namespace alphagrid {

enum class Family {
    diagonal,     // first 2(n-k)+1 diagonal cells, n/2 < k <= n
    even_middle,  // n = 2k: identity + banded (k+1)-block, 3k+1 ones
    band,         // n = 2k+1: identity + three-one band block, 4k+5 ones
    seven_halves, // n = 2k+1: pair groups, ~(7k+11)/2 or (7k+12)/2 ones
    ten_thirds,   // n = 2k+1: width-3 groups, ~(10k+2x)/3 ones
    general       // n = 2k+1: width-a groups, ((3a+1)k + C)/a ones
};

struct ConstructionId {
    Family family;
    int n = 0; // diagonal only
    int k = 0;
    int a = 0; // general only
};

struct BuiltMatrix {
    BinaryMatrix matrix;
    long claimed_ones = 0;
    ConstructionId construction;
};

// n×n, ones on the first 2(n−k)+1 diagonal cells. Requires n/2 < k ≤ n.
BuiltMatrix build_diagonal(int n, int k);

// 2k×2k, identity of size k−1 plus the (k+1)×(k+1) two-ones band block.
// 3k+1 ones. Requires k ≥ 2.
BuiltMatrix build_even_middle(int k);

// (2k+1)×(2k+1), identity of size k−1 plus the (k+2)×(k+2) three-ones band
// block (k = 1 degenerates to the all-ones 3×3). 4k+5 ones.
BuiltMatrix build_band_4k5(int k);

// (2k+1)×(2k+1) from width-2 pair groups: diagonal, a run of adjacent pairs,
// then rows of three ones tying consecutive pairs together (with a special
// three-row tail for even k, whose last column carries no pair).
// (7k+11)/2 ones for odd k, (7k+12)/2 for even k. k ∈ {1,2} fall back to
// build_band_4k5, whose counts coincide there.
BuiltMatrix build_seven_halves(int k);

// (2k+1)×(2k+1) from width-3 groups. (10k+24)/3, (10k+23)/3, (10k+25)/3 ones
// for k ≡ 0, 1, 2 (mod 3). Requires k ≥ ten_thirds_min_k.
BuiltMatrix build_ten_thirds(int k);

// (2k+1)×(2k+1) from width-a groups; a = 1 is the band family. Ones count is
// ((3a+1)k + C)/a with C = general_constant(a, k mod a). Requires
// 1 ≤ a ≤ general_max_a and k ≥ general_min_k(a).
BuiltMatrix build_general(int k, int a);

// The closed-form one-count for an in-domain id; always equals the built
// matrix's actual count. Throws DomainError outside each family's domain.
long formula_ones(const ConstructionId& id);

// Realized additive constant of the general family: a*ones - (3a+1)k for
// residue r = k mod a. Pure arithmetic on the pinned layout choices.
long general_constant(int a, int r);

// Empirically validated thresholds (verification sweeps; see the golden
// file). Builders refuse smaller k with a DomainError naming the bound.
int ten_thirds_min_k();
int general_min_k(int a);
inline constexpr int general_max_a = 6;

// --- sweep-tool seams ------------------------------------------------------
// The grouped-block assembly with its layout knobs exposed, so the sweep tool
// can race candidate layouts against the verifier. Regular callers use the
// build_* functions, which pin the validated choices.

enum class StarOrder {
    forward, // earlier three-one rows take earlier columns within a group
    reverse  // earlier three-one rows take later columns within a group
};

enum class StarPattern {
    band,     // three-one row i ties the groups the banded pattern names,
              // with column slots handed out in StarOrder
    circulant // three-one row t ties groups t, t+1, t+2 (mod m) at slots
              // first/second/last respectively; StarOrder is ignored
};

struct GroupedLayout {
    int e;     // extra two-one rows under the identity block (0 or 1)
    int w;     // width of the trailing truncated group, 1..a
    StarOrder order;
    StarPattern pattern = StarPattern::band;
};

// Identity(k−2a+2) ⊕ grouped block with m = (k+2a−1−e−w)/a + 1 groups.
// Throws DomainError when the parameters do not fit (k too small, w out of
// range, sizes inconsistent).
BinaryMatrix assemble_grouped(int k, int a, const GroupedLayout& layout);

// The layout build_ten_thirds and build_general pin for width a at this k.
GroupedLayout pinned_grouped_layout(int k, int a);

} // namespace alphagrid

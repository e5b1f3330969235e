#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "alphagrid/canonical.hpp"
#include "alphagrid/constructions.hpp"
#include "alphagrid/errors.hpp"
#include "fixtures.hpp"

using namespace alphagrid;

namespace {

// Reference implementation: least body over the full orbit by enumerating
// every row permutation x column permutation. Only viable for tiny matrices;
// the fast search must agree with it exactly.
std::string brute_least_body(const BinaryMatrix& a) {
    std::vector<int> rp(a.n_rows()), cp(a.n_cols());
    std::iota(rp.begin(), rp.end(), 0);
    std::string best;
    bool have = false;
    do {
        std::iota(cp.begin(), cp.end(), 0);
        do {
            std::string body = matrix_body(permute(a, rp, cp));
            if (!have || body < best) {
                best = std::move(body);
                have = true;
            }
        } while (std::next_permutation(cp.begin(), cp.end()));
    } while (std::next_permutation(rp.begin(), rp.end()));
    return best;
}

std::vector<int> inverse_perm(const std::vector<int>& p) {
    std::vector<int> inv(p.size());
    for (size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
    return inv;
}

BinaryMatrix identity_matrix(int n) {
    BinaryMatrix a(n, n);
    for (int i = 0; i < n; ++i) a = a.with_one(i, i);
    return a;
}

std::vector<int> sorted_row_sums(const BinaryMatrix& a) {
    std::vector<int> sums;
    sums.reserve(a.n_rows());
    for (int r = 0; r < a.n_rows(); ++r) sums.push_back(a.row_support(r).count());
    std::sort(sums.begin(), sums.end());
    return sums;
}

BinaryMatrix scrambled(const BinaryMatrix& a, unsigned seed) {
    return permute(a, fixtures::random_perm(a.n_rows(), seed),
                   fixtures::random_perm(a.n_cols(), seed + 101));
}

} // namespace

TEST_CASE("canonical form matches full orbit enumeration on small matrices") {
    // Every 3x3 matrix, exhaustively.
    for (int mask = 0; mask < 512; ++mask) {
        BinaryMatrix a(3, 3);
        for (int bit = 0; bit < 9; ++bit)
            if ((mask >> bit) & 1) a = a.with_one(bit / 3, bit % 3);
        CAPTURE(mask);
        CHECK(canonical_form(a).body == brute_least_body(a));
    }
    // Random 4x4 and rectangular 3x5 samples at mixed densities.
    for (unsigned seed = 0; seed < 30; ++seed) {
        BinaryMatrix a = fixtures::random_matrix(4, 4, 1 + seed % 3, 4, 900 + seed);
        CHECK(canonical_form(a).body == brute_least_body(a));
        BinaryMatrix b = fixtures::random_matrix(3, 5, 1 + seed % 3, 4, 950 + seed);
        CHECK(canonical_form(b).body == brute_least_body(b));
    }
    // The 4x4 seven-ones fixture and both 5x5 thirteen-ones layouts.
    CHECK(canonical_form(fixtures::seven_ones_4x4()).body ==
          brute_least_body(fixtures::seven_ones_4x4()));
    CHECK(canonical_form(fixtures::thirteen_ones_5x5_band()).body ==
          brute_least_body(fixtures::thirteen_ones_5x5_band()));
    CHECK(canonical_form(fixtures::thirteen_ones_5x5_scatter()).body ==
          brute_least_body(fixtures::thirteen_ones_5x5_scatter()));
}

TEST_CASE("transpose-aware form is the lesser of both orientations") {
    for (unsigned seed = 0; seed < 20; ++seed) {
        BinaryMatrix a = fixtures::random_matrix(4, 4, 2, 5, 300 + seed);
        CanonicalForm plain = canonical_form(a);
        CanonicalForm flipped = canonical_form(transpose(a));
        CanonicalForm both = canonical_form(a, true);
        CHECK(both == std::min(plain, flipped));
    }
}

TEST_CASE("all permuted identities share one canonical form") {
    for (int n = 1; n <= 8; ++n) {
        BinaryMatrix eye = identity_matrix(n);
        CanonicalForm base = canonical_form(eye);
        for (unsigned seed = 0; seed < 8; ++seed) {
            BinaryMatrix p(n, n);
            std::vector<int> perm = fixtures::random_perm(n, 7 * n + seed);
            for (int i = 0; i < n; ++i) p = p.with_one(i, perm[i]);
            CHECK(canonical_form(p) == base);
            CHECK(canonical_form(scrambled(eye, seed)) == base);
        }
        // The representative is itself a permutation matrix.
        BinaryMatrix rep = parse_matrix(std::to_string(n) + " " + std::to_string(n) + "\n" +
                                        base.body);
        REQUIRE(rep.ones_count() == n);
        for (int i = 0; i < n; ++i) CHECK(rep.row_support(i).count() == 1);
    }
}

TEST_CASE("the two five-by-five thirteen-ones layouts are inequivalent") {
    BinaryMatrix left = fixtures::thirteen_ones_5x5_band();
    BinaryMatrix right = fixtures::thirteen_ones_5x5_scatter();
    CHECK(canonical_form(left) != canonical_form(right));
    CHECK_FALSE(are_equivalent(left, right));
    // Inequivalence survives scrambling either side.
    CHECK_FALSE(are_equivalent(scrambled(left, 1), scrambled(right, 2)));
    CHECK(are_equivalent(left, scrambled(left, 3)));
    CHECK(are_equivalent(right, scrambled(right, 4)));
}

TEST_CASE("the two nine-by-nine twenty-ones layouts are inequivalent") {
    BinaryMatrix left = fixtures::twenty_ones_9x9_a();
    BinaryMatrix right = fixtures::twenty_ones_9x9_b();
    CHECK(canonical_form(left) != canonical_form(right));
    CHECK_FALSE(are_equivalent(left, right));
    CHECK(are_equivalent(left, scrambled(left, 5)));
    CHECK(are_equivalent(right, scrambled(right, 6)));
}

TEST_CASE("canonical form is invariant under random row and column permutations") {
    for (int n = 4; n <= 9; ++n) {
        for (unsigned trial = 0; trial < 100; ++trial) {
            const unsigned seed = 1000u * n + trial;
            BinaryMatrix a = fixtures::random_matrix(n, n, 1 + trial % 3, 4, seed);
            CanonicalForm base = canonical_form(a);
            BinaryMatrix b = permute(a, fixtures::random_perm(n, seed + 1),
                                     fixtures::random_perm(n, seed + 2));
            CHECK(canonical_form(b) == base);
            CHECK(are_equivalent(a, b));
        }
    }
    // Rectangular inputs are first-class citizens without transpose.
    for (unsigned trial = 0; trial < 40; ++trial) {
        BinaryMatrix a = fixtures::random_matrix(4, 7, 1, 3, 5000 + trial);
        CHECK(canonical_form(scrambled(a, trial)) == canonical_form(a));
    }
}

TEST_CASE("witness reproduces the form and composes into an explicit mapping") {
    for (unsigned trial = 0; trial < 25; ++trial) {
        const int n = 4 + trial % 5;
        BinaryMatrix a = fixtures::random_matrix(n, n, 1, 3, 7000 + trial);
        BinaryMatrix b = permute(a, fixtures::random_perm(n, 7100 + trial),
                                 fixtures::random_perm(n, 7200 + trial));

        CanonicalWitness wa, wb;
        CanonicalForm fa = canonical_form(a, false, &wa);
        CanonicalForm fb = canonical_form(b, false, &wb);
        REQUIRE(fa == fb);
        CHECK_FALSE(wa.transposed);
        CHECK(matrix_body(permute(a, wa.row_perm, wa.col_perm)) == fa.body);
        CHECK(matrix_body(permute(b, wb.row_perm, wb.col_perm)) == fb.body);

        // Equal forms yield a concrete permutation pair carrying a onto b.
        std::vector<int> rb = inverse_perm(wb.row_perm), cb = inverse_perm(wb.col_perm);
        std::vector<int> row_ab(n), col_ab(n);
        for (int i = 0; i < n; ++i) row_ab[i] = rb[wa.row_perm[i]];
        for (int j = 0; j < n; ++j) col_ab[j] = cb[wa.col_perm[j]];
        CHECK(permute(a, row_ab, col_ab) == b);
    }
}

TEST_CASE("matching forms force matching row and column sum multisets") {
    for (unsigned trial = 0; trial < 30; ++trial) {
        const int n = 4 + trial % 6;
        BinaryMatrix a = fixtures::random_matrix(n, n, 2, 5, 8000 + trial);
        BinaryMatrix b = scrambled(a, 8100 + trial);
        REQUIRE(are_equivalent(a, b));
        CHECK(sorted_row_sums(a) == sorted_row_sums(b));
        CHECK(sorted_row_sums(transpose(a)) == sorted_row_sums(transpose(b)));
    }
    // Differing ones counts (hence differing sum multisets) always separate.
    BinaryMatrix a = fixtures::seven_ones_4x4();
    BinaryMatrix heavier = a;
    for (int r = 0; r < 4 && heavier.ones_count() < a.ones_count() + 2; ++r)
        for (int c = 0; c < 4; ++c)
            if (!heavier.test(r, c)) {
                heavier = heavier.with_one(r, c);
                break;
            }
    REQUIRE(heavier.ones_count() > a.ones_count());
    CHECK_FALSE(are_equivalent(a, heavier));
}

TEST_CASE("transpose equivalence finds transposed relatives") {
    for (unsigned trial = 0; trial < 15; ++trial) {
        const int n = 5 + trial % 4;
        BinaryMatrix a = fixtures::random_matrix(n, n, 1, 3, 9000 + trial);
        BinaryMatrix b = scrambled(transpose(a), 9100 + trial);
        CHECK(are_equivalent(a, b, true));

        CanonicalWitness w;
        CanonicalForm f = canonical_form(a, true, &w);
        BinaryMatrix base = w.transposed ? transpose(a) : a;
        CHECK(matrix_body(permute(base, w.row_perm, w.col_perm)) == f.body);
    }
    // Rectangular pair related only through transpose: equivalent exactly
    // when the flag is on.
    BinaryMatrix r = fixtures::random_matrix(3, 6, 1, 3, 9500);
    BinaryMatrix rt = scrambled(transpose(r), 9501);
    CHECK_FALSE(are_equivalent(r, rt));
    CHECK(are_equivalent(r, rt, true));
}

TEST_CASE("construction outputs are equivalent to their reference layouts") {
    // The pair-group builder at k=3 reproduces the 7x7 sixteen-ones layout.
    BinaryMatrix built = build_seven_halves(3).matrix;
    CHECK(are_equivalent(built, scrambled(fixtures::sixteen_ones_7x7(), 11)));
    // The even-middle builder at k=2 is the unique-up-to-permutation 4x4.
    CHECK(are_equivalent(build_even_middle(2).matrix, scrambled(fixtures::seven_ones_4x4(), 12)));
    // Idempotence: the representative canonicalizes to itself.
    CanonicalForm f = canonical_form(built);
    BinaryMatrix rep = parse_matrix("7 7\n" + f.body);
    CHECK(canonical_form(rep) == f);
}

TEST_CASE("canonical guards and dimension mismatches") {
    CHECK_THROWS_AS(canonical_form(BinaryMatrix(17, 4)), SizeError);
    CHECK_THROWS_AS(canonical_form(BinaryMatrix(4, 17)), SizeError);
    CHECK_THROWS_AS(canonical_form(BinaryMatrix(3, 5), true), DimensionError);
    CHECK_NOTHROW(canonical_form(BinaryMatrix(16, 16)));
    CHECK_NOTHROW(canonical_form(BinaryMatrix(3, 5)));

    // Mismatched shapes compare unequal instead of throwing.
    CHECK_FALSE(are_equivalent(BinaryMatrix(3, 4), BinaryMatrix(4, 4)));
    CHECK_FALSE(are_equivalent(BinaryMatrix(3, 4), BinaryMatrix(4, 3)));
    CHECK(are_equivalent(BinaryMatrix(3, 4), BinaryMatrix(4, 3), true));

    // Degenerate sizes still canonicalize.
    CHECK(canonical_form(BinaryMatrix(1, 1)).body == "0\n");
    CHECK(canonical_form(identity_matrix(1)).body == "1\n");
    BinaryMatrix zero_cols(2, 0);
    CHECK(canonical_form(zero_cols).body == "\n\n");
}

TEST_CASE("digests are stable, well-formed, and separate the known pairs") {
    CanonicalForm band = canonical_form(fixtures::thirteen_ones_5x5_band());
    CanonicalForm scatter = canonical_form(fixtures::thirteen_ones_5x5_scatter());
    for (const CanonicalForm& f : {band, scatter}) {
        std::string d = canonical_digest(f);
        REQUIRE(d.size() == 16);
        CHECK(d.find_first_not_of("0123456789abcdef") == std::string::npos);
        CHECK(canonical_digest(f) == d);
    }
    CHECK(canonical_digest(band) != canonical_digest(scatter));
    // Frozen reference digest of the all-ones 2x2 body "11\n11\n".
    CanonicalForm ones;
    ones.body = "11\n11\n";
    CHECK(canonical_form(parse_matrix("2 2\n11\n11")) == ones);
    CHECK(canonical_digest(ones) == "3570bdfe47625cb9");
}

TEST_SUITE("extended") {
    TEST_CASE("orbit enumeration agreement on exhaustive 3x4 and sampled 5x5") {
        for (int mask = 0; mask < 4096; ++mask) {
            BinaryMatrix a(3, 4);
            for (int bit = 0; bit < 12; ++bit)
                if ((mask >> bit) & 1) a = a.with_one(bit / 4, bit % 4);
            CAPTURE(mask);
            REQUIRE(canonical_form(a).body == brute_least_body(a));
        }
        for (unsigned seed = 0; seed < 12; ++seed) {
            BinaryMatrix a = fixtures::random_matrix(5, 5, 1 + seed % 4, 5, 12000 + seed);
            CHECK(canonical_form(a).body == brute_least_body(a));
        }
    }

    TEST_CASE("invariance holds at the size guard and on dense symmetric inputs") {
        for (int n = 10; n <= 16; n += 3) {
            for (unsigned trial = 0; trial < 20; ++trial) {
                const unsigned seed = 400u * n + trial;
                BinaryMatrix a = fixtures::random_matrix(n, n, 1, 4, seed);
                CHECK(canonical_form(scrambled(a, seed + 9)) == canonical_form(a));
            }
        }
        // Highly symmetric inputs stress the tie handling.
        CHECK(canonical_form(identity_matrix(16)) ==
              canonical_form(scrambled(identity_matrix(16), 42)));
        BinaryMatrix dense(16, 16);
        for (int r = 0; r < 16; ++r)
            for (int c = 0; c < 16; ++c)
                if (r != (c + 1) % 16) dense = dense.with_one(r, c);
        CHECK(canonical_form(scrambled(dense, 43)) == canonical_form(dense));
    }
}

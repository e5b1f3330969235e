#pragma once

// Small reference matrices shared across the test binaries. Each one is an
// extremal example for its (k, n) cell: it has alpha(k, n) ones and no
// all-zero k×k minor, so deleting any single 1 must create one. They double
// as parser fixtures because their shapes and popcounts are easy to eyeball.

#include <alphagrid/bitmatrix.hpp>

#include <algorithm>
#include <random>
#include <string>

namespace fixtures {

// k = 2, n = 4, 7 ones.
inline alphagrid::BinaryMatrix seven_ones_4x4() {
    return alphagrid::parse_matrix("4 4\n"
                                   "1000\n"
                                   "0110\n"
                                   "0101\n"
                                   "0011\n");
}

// k = 2, n = 5, 13 ones; block form I_1 + [4×4 band].
inline alphagrid::BinaryMatrix thirteen_ones_5x5_band() {
    return alphagrid::parse_matrix("5 5\n"
                                   "10000\n"
                                   "01110\n"
                                   "01101\n"
                                   "01011\n"
                                   "00111\n");
}

// k = 2, n = 5, 13 ones; a second, non-equivalent-looking witness.
inline alphagrid::BinaryMatrix thirteen_ones_5x5_scatter() {
    return alphagrid::parse_matrix("5 5\n"
                                   "11000\n"
                                   "00110\n"
                                   "10011\n"
                                   "01101\n"
                                   "10101\n");
}

// k = 3, n = 6, 10 ones; diagonal-ish layout 2(n−k)+1 has 7 ones so this is
// the middle-regime example instead.
inline alphagrid::BinaryMatrix ten_ones_6x6() {
    return alphagrid::parse_matrix("6 6\n"
                                   "100000\n"
                                   "010000\n"
                                   "001100\n"
                                   "001010\n"
                                   "000101\n"
                                   "000011\n");
}

// k = 3, n = 7, 16 ones.
inline alphagrid::BinaryMatrix sixteen_ones_7x7() {
    return alphagrid::parse_matrix("7 7\n"
                                   "1000000\n"
                                   "0110000\n"
                                   "0001100\n"
                                   "0000011\n"
                                   "0100101\n"
                                   "0011001\n"
                                   "0010110\n");
}

// k = 4, n = 9, 20 ones; two distinct layouts.
inline alphagrid::BinaryMatrix twenty_ones_9x9_a() {
    return alphagrid::parse_matrix("9 9\n"
                                   "100000000\n"
                                   "010000000\n"
                                   "001100000\n"
                                   "000011000\n"
                                   "000000110\n"
                                   "001001010\n"
                                   "000110100\n"
                                   "000101001\n"
                                   "000010011\n");
}

inline alphagrid::BinaryMatrix twenty_ones_9x9_b() {
    return alphagrid::parse_matrix("9 9\n"
                                   "100000000\n"
                                   "011000000\n"
                                   "001100000\n"
                                   "000011000\n"
                                   "000001100\n"
                                   "000000011\n"
                                   "001010010\n"
                                   "000100110\n"
                                   "010001001\n");
}

// Uniform random matrix with ones density `num`/`den`, deterministic in seed.
inline alphagrid::BinaryMatrix random_matrix(int n_rows, int n_cols, int num, int den,
                                             unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(0, den - 1);
    alphagrid::BinaryMatrix a(n_rows, n_cols);
    for (int r = 0; r < n_rows; ++r)
        for (int c = 0; c < n_cols; ++c)
            if (dist(rng) < num) a = a.with_one(r, c);
    return a;
}

// Random permutation of 0..n-1, deterministic in seed.
inline std::vector<int> random_perm(int n, unsigned seed) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    std::mt19937 rng(seed);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

} // namespace fixtures

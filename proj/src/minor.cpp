#include "alphagrid/minor.hpp"

#include <algorithm>
#include <numeric>

#include "alphagrid/errors.hpp"

namespace alphagrid {

namespace {

constexpr int structured_threshold = 40; // rows; above this the subset DFS can blow up

void check_k(const BinaryMatrix& a, int k) {
    if (k < 1 || k > std::min(a.n_rows(), a.n_cols()))
        throw DimensionError("k must lie in [1, min(n_rows, n_cols)]");
}

// ---------------------------------------------------------------------------
// Exhaustive strategy. Depth-first over rows sorted by (support size, index),
// include-before-skip, carrying the running intersection Z of zero-column
// sets. First completed subset is the lexicographically least witness in that
// ordering. Supersets of size > k never help (Z only shrinks), so subsets are
// checked at size exactly k.
//
// Two dominance rules keep the search polynomial on padded instances while
// preserving the lex-least witness:
//   - a row whose support misses Z entirely is included without a skip branch
//     (swapping it into any witness that skipped it gives a lex-smaller one);
//   - rows whose support columns are used by no other row ("private" rows)
//     are interchangeable within equal support size, so any witness can be
//     remapped onto the first such rows: once one is skipped, the rest of its
//     class is skipped too.
// ---------------------------------------------------------------------------

struct ExhaustiveSearch {
    const BinaryMatrix& a;
    int k;
    std::vector<int> order;       // row indices, pinned ordering
    std::vector<int> class_of;    // interchangeability class per order position, -1 if none
    std::vector<int> chosen;      // original row indices
    std::optional<MinorWitness> result;

    ExhaustiveSearch(const BinaryMatrix& m, int kk) : a(m), k(kk) {
        const int n = a.n_rows();
        order.resize(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
            int cx = a.row_support(x).count(), cy = a.row_support(y).count();
            return cx != cy ? cx < cy : x < y;
        });

        std::vector<int> col_degree(a.n_cols(), 0);
        for (int r = 0; r < n; ++r)
            for (int c = a.row_support(r).next(0); c >= 0; c = a.row_support(r).next(c + 1))
                ++col_degree[c];
        class_of.assign(n, -1);
        for (int pos = 0; pos < n; ++pos) {
            const Bits& s = a.row_support(order[pos]);
            bool priv = s.any();
            for (int c = s.next(0); priv && c >= 0; c = s.next(c + 1))
                if (col_degree[c] != 1) priv = false;
            if (priv) class_of[pos] = s.count(); // same size ⇒ interchangeable
        }
        chosen.reserve(k);
    }

    bool dfs(int pos, const Bits& zero_cols, int skipped_class) {
        if (static_cast<int>(chosen.size()) == k) {
            MinorWitness w;
            w.k = k;
            w.rows = Bits::from_indices(a.n_rows(), chosen);
            w.cols = zero_cols.lowest(k);
            result = std::move(w);
            return true;
        }
        if (pos >= static_cast<int>(order.size())) return false;
        if (static_cast<int>(order.size()) - pos < k - static_cast<int>(chosen.size())) return false;

        const int row = order[pos];
        const Bits& supp = a.row_support(row);
        const bool class_closed = class_of[pos] >= 0 && class_of[pos] == skipped_class;

        if (!class_closed) {
            if (!supp.intersects(zero_cols)) {
                // Forced include: cannot shrink Z, and skipping is dominated.
                chosen.push_back(row);
                if (dfs(pos + 1, zero_cols, skipped_class)) return true;
                chosen.pop_back();
                return false;
            }
            Bits z = zero_cols;
            z.and_not(supp);
            if (z.count() >= k) {
                chosen.push_back(row);
                if (dfs(pos + 1, z, skipped_class)) return true;
                chosen.pop_back();
            }
        }
        return dfs(pos + 1, zero_cols, class_of[pos] >= 0 ? class_of[pos] : skipped_class);
    }

    std::optional<MinorWitness> run() {
        dfs(0, Bits::full(a.n_cols()), -1);
        return std::move(result);
    }
};

// ---------------------------------------------------------------------------
// Structured strategy for large sparse instances (the k ≈ 100 construction
// certificates, where the subset DFS is hopeless).
//
// A zero k×k minor exists iff k rows jointly miss ≥ k columns, i.e. their
// support union covers ≤ n_cols − k columns. Classify rows:
//   - empty rows cost 0 columns and any witness can be rewritten to use all
//     of them;
//   - "private" rows (all support columns of degree 1) cost exactly their
//     support size and are interchangeable;
//   - the rest form the core.
// A witness then consists of a core subset S plus the cheapest padding, so
// existence reduces to: ∃ S ⊆ core with |N(S)| ≤ budget(|S|), where
// budget(j) = (n_cols − k) − padcost(k − e − j).
//
// A depth-first search over the core decides the size-constrained question
// exactly. The prune: a completion by f more suffix rows grows the union to
// at least |U| + max(0, f − deficiency), where the deficiency |suffix| − ν
// comes from a maximum matching of the suffix rows into the columns outside
// U (any f chosen rows have at least f − deficiency matched, hence distinct
// new, columns — deficiency of a row subset never exceeds the whole set's).
// The matching is maintained incrementally along the search.
// ---------------------------------------------------------------------------

struct StructuredSearch {
    const BinaryMatrix& a;
    int k;

    std::vector<int> empties, privates, core; // original row indices
    std::vector<long> pad_prefix;             // pad_prefix[q] = cost of q cheapest private rows
    std::vector<Bits> core_supp;
    int n_cols, m_core = 0;
    int j_min = 0, j_max = 0;
    long node_cap = 50'000'000;

    // Matching state carried down the search: a maximum matching of the core
    // rows at positions >= pos into the columns outside the running union.
    // Updated incrementally (ban a handful of columns, drop one row) instead
    // of being recomputed, which keeps the per-node cost near the few
    // augmenting paths that actually change.
    struct MatchState {
        std::vector<int> col_match; // col -> core position, -1 free
        std::vector<int> row_match; // core position -> col, -1 free
        int nu = 0;                 // matched rows
    };
    std::vector<char> col_seen;

    explicit StructuredSearch(const BinaryMatrix& m, int kk) : a(m), k(kk), n_cols(m.n_cols()) {}

    std::optional<MinorWitness> run() {
        classify();
        const int e = static_cast<int>(empties.size());
        if (e >= k) return make_witness({}, 0); // k empty rows already suffice

        const int need = k - e; // rows still to pick from privates + core
        const int p = static_cast<int>(privates.size());
        j_min = std::max(need - p, 0);
        j_max = std::min(need, m_core);

        if (j_min == 0 && budget(0) >= 0) return make_witness({}, need);

        if (m_core == 0 || j_max < j_min) return std::nullopt;

        MatchState root;
        root.col_match.assign(n_cols, -1);
        root.row_match.assign(m_core, -1);
        col_seen.assign(n_cols, 0);
        for (int r = 0; r < m_core; ++r) {
            std::fill(col_seen.begin(), col_seen.end(), 0);
            if (try_augment(root, r, Bits(n_cols), 0)) ++root.nu;
        }

        std::vector<int> sel;
        if (core_dfs(0, 0, Bits(n_cols), sel, root)) return make_witness(sel, k - e);
        return std::nullopt;
    }

  private:
    void classify() {
        std::vector<int> col_degree(n_cols, 0);
        for (int r = 0; r < a.n_rows(); ++r)
            for (int c = a.row_support(r).next(0); c >= 0; c = a.row_support(r).next(c + 1))
                ++col_degree[c];
        for (int r = 0; r < a.n_rows(); ++r) {
            const Bits& s = a.row_support(r);
            if (s.none()) {
                empties.push_back(r);
                continue;
            }
            bool priv = true;
            for (int c = s.next(0); priv && c >= 0; c = s.next(c + 1))
                if (col_degree[c] != 1) priv = false;
            (priv ? privates : core).push_back(r);
        }
        std::stable_sort(privates.begin(), privates.end(), [&](int x, int y) {
            return a.row_support(x).count() < a.row_support(y).count();
        });
        pad_prefix.assign(privates.size() + 1, 0);
        for (size_t i = 0; i < privates.size(); ++i)
            pad_prefix[i + 1] = pad_prefix[i] + a.row_support(privates[i]).count();
        // Core rows by leftmost support column: keeps banded instances local.
        std::stable_sort(core.begin(), core.end(), [&](int x, int y) {
            return a.row_support(x).next(0) < a.row_support(y).next(0);
        });
        m_core = static_cast<int>(core.size());
        core_supp.reserve(core.size());
        for (int r : core) core_supp.push_back(a.row_support(r));
    }

    // Column budget available to a core subset of size j (rest is padding).
    long budget(int j) const {
        const int q = k - static_cast<int>(empties.size()) - j;
        if (q < 0 || q > static_cast<int>(privates.size())) return -1;
        return static_cast<long>(n_cols - k) - pad_prefix[q];
    }

    // Kuhn augmenting path for rows at positions >= min_pos, columns outside
    // `banned`. col_seen must be cleared by the caller.
    bool try_augment(MatchState& st, int row, const Bits& banned, int min_pos) {
        const Bits& s = core_supp[row];
        for (int c = s.next(0); c >= 0; c = s.next(c + 1)) {
            if (banned.test(c) || col_seen[c]) continue;
            col_seen[c] = 1;
            const int other = st.col_match[c];
            if (other < 0 || (other >= min_pos && try_augment(st, other, banned, min_pos))) {
                st.col_match[c] = row;
                st.row_match[row] = c;
                return true;
            }
        }
        return false;
    }

    void unmatch(MatchState& st, int row) {
        const int c = st.row_match[row];
        if (c >= 0) {
            st.col_match[c] = -1;
            st.row_match[row] = -1;
            --st.nu;
        }
    }

    // Exact decision of ∃ S ⊆ core, j_min ≤ |S| ≤ j_max, |N(S)| ≤ budget(|S|).
    // At (pos, j, U) the union of any completion with f more rows is at least
    // |U| + max(0, f − deficiency), where deficiency = |suffix| − ν(suffix
    // rows into columns outside U); ν is maintained in `st`.
    bool core_dfs(int pos, int j, const Bits& uni, std::vector<int>& sel, const MatchState& st) {
        if (--node_cap < 0) throw SizeError("structured minor search exceeded its node cap");
        if (j >= j_min && j <= j_max && static_cast<long>(uni.count()) <= budget(j)) return true;
        if (pos >= m_core) return false;

        {
            const int suffix = m_core - pos;
            const int deficiency = suffix - st.nu;
            const long u = uni.count();
            bool alive = false;
            for (int f = std::max(0, j_min - j); !alive && f <= j_max - j && f <= suffix; ++f)
                alive = u + std::max(0, f - deficiency) <= budget(j + f);
            if (!alive) return false;
        }

        if (j < j_max) {
            // Include core[pos]: its support columns leave the pool, the row
            // itself leaves the suffix; rows bumped off banned columns get one
            // augmentation attempt each.
            Bits uni2 = uni | core_supp[pos];
            MatchState child = st;
            unmatch(child, pos);
            std::vector<int> bumped;
            const Bits& s = core_supp[pos];
            for (int c = s.next(0); c >= 0; c = s.next(c + 1)) {
                const int r = child.col_match[c];
                if (r >= 0) {
                    child.col_match[c] = -1;
                    child.row_match[r] = -1;
                    --child.nu;
                    bumped.push_back(r);
                }
            }
            for (int r : bumped) {
                std::fill(col_seen.begin(), col_seen.end(), 0);
                if (try_augment(child, r, uni2, pos + 1)) ++child.nu;
            }
            sel.push_back(core[pos]);
            if (core_dfs(pos + 1, j + 1, uni2, sel, child)) return true;
            sel.pop_back();
        }

        // Skip core[pos]: the suffix shrinks by one row; freeing its column
        // can enable at most one augmentation from a currently unmatched row.
        MatchState child = st;
        if (child.row_match[pos] >= 0) {
            unmatch(child, pos);
            for (int r = pos + 1; r < m_core; ++r) {
                if (child.row_match[r] >= 0) continue;
                std::fill(col_seen.begin(), col_seen.end(), 0);
                if (try_augment(child, r, uni, pos + 1)) {
                    ++child.nu;
                    break;
                }
            }
        }
        return core_dfs(pos + 1, j, uni, sel, child);
    }

    // Assemble a witness from `sel` core rows plus all empties plus the
    // cheapest (need − |sel|) private rows; columns are the lex-least k the
    // chosen rows miss.
    std::optional<MinorWitness> make_witness(const std::vector<int>& sel, int need) const {
        MinorWitness w;
        w.k = k;
        w.rows = Bits(a.n_rows());
        int taken = 0;
        for (int r : empties) {
            if (taken == k) break;
            w.rows.set(r), ++taken;
        }
        const int q = need - static_cast<int>(sel.size());
        for (int i = 0; i < q; ++i) w.rows.set(privates[i]), ++taken;
        for (int r : sel) w.rows.set(r), ++taken;
        w.cols = common_zero_columns(a, w.rows).lowest(k);
        return w;
    }
};


} // namespace

bool validate_witness(const BinaryMatrix& a, const MinorWitness& w) {
    if (w.rows.width() != a.n_rows() || w.cols.width() != a.n_cols()) return false;
    if (w.rows.count() != w.k || w.cols.count() != w.k) return false;
    for (int r = w.rows.next(0); r >= 0; r = w.rows.next(r + 1))
        if (a.row_support(r).intersects(w.cols)) return false;
    return true;
}

std::optional<MinorWitness> find_zero_minor(const BinaryMatrix& a, int k, MinorSearch strategy) {
    check_k(a, k);
    if (strategy == MinorSearch::auto_select)
        strategy = a.n_rows() > structured_threshold ? MinorSearch::structured : MinorSearch::exhaustive;
    if (strategy == MinorSearch::exhaustive) return ExhaustiveSearch(a, k).run();
    return StructuredSearch(a, k).run();
}

std::optional<MinorWitness> brute_force_zero_minor(const BinaryMatrix& a, int k) {
    check_k(a, k);
    // Guard: C(n_rows, k) ≤ 10^7.
    {
        double binom = 1.0;
        for (int i = 0; i < k; ++i) {
            binom *= static_cast<double>(a.n_rows() - i) / (i + 1);
            if (binom > 1e7) throw SizeError("brute_force_zero_minor: C(n_rows, k) exceeds 10^7");
        }
    }
    const int n = a.n_rows();
    std::vector<int> pick(k);
    // Lexicographic k-combinations of original row indices.
    for (int i = 0; i < k; ++i) pick[i] = i;
    while (true) {
        Bits zeros = Bits::full(a.n_cols());
        for (int i = 0; i < k; ++i) zeros.and_not(a.row_support(pick[i]));
        if (zeros.count() >= k) {
            MinorWitness w;
            w.k = k;
            w.rows = Bits::from_indices(n, pick);
            w.cols = zeros.lowest(k);
            return w;
        }
        int i = k - 1;
        while (i >= 0 && pick[i] == n - k + i) --i;
        if (i < 0) return std::nullopt;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
}

namespace {

// Every nonempty subset through position `pos` must already satisfy the
// surplus; returns false on the first violation. The requirement is capped at
// the number of columns that exist: subsets of more than n_cols − c rows
// cannot be asked for more columns than the block has (the proofs only ever
// use subsets small enough that the cap is slack). If the current union is
// already large enough for every possible subset size, the subtree is skipped.
bool surplus_dfs(const std::vector<Bits>& rows, int pos, int size, const Bits& uni, int c,
                 int n_cols) {
    const int m = static_cast<int>(rows.size());
    if (pos == m) return true;
    if (uni.count() >= std::min(m + c, n_cols)) return true; // subtree cannot violate
    Bits u = uni | rows[pos];
    if (u.count() < std::min(size + 1 + c, n_cols)) return false;
    if (!surplus_dfs(rows, pos + 1, size + 1, u, c, n_cols)) return false;
    return surplus_dfs(rows, pos + 1, size, uni, c, n_cols);
}

} // namespace

bool check_row_surplus(const BinaryMatrix& a, int c) {
    if (a.n_rows() > 24) throw SizeError("check_row_surplus: n_rows ≤ 24");
    if (c < 0) throw DomainError("surplus must be nonnegative");
    if (a.n_rows() == 0) return true;
    return surplus_dfs(a.rows(), 0, 0, Bits(a.n_cols()), c, a.n_cols());
}

} // namespace alphagrid

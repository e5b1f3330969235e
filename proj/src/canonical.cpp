#include "alphagrid/canonical.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#include "alphagrid/errors.hpp"

namespace alphagrid {

namespace {

// Body minimization for one matrix under row x column permutations.
//
// Rows are placed one at a time. Placed rows induce an ordered partition of
// the columns: two columns share a group exactly when every placed row reads
// them equally, and groups are ordered by those readings (zeros before ones,
// per placement). Columns inside a group are interchangeable for everything
// that follows, so the least achievable reading of a candidate row is its
// per-group counts with the ones packed to the back of each group. The least
// body therefore comes from greedily choosing, at each position, a row whose
// packed reading is minimal; ties branch and the least completed body wins.
// Placing the chosen row splits every group it meets into its zero part
// followed by its one part, which is exactly one round of refinement by
// neighbor signature.
class BodySearch {
  public:
    explicit BodySearch(const BinaryMatrix& a) : a_(a), nr_(a.n_rows()), nc_(a.n_cols()) {
        row_bits_.resize(nr_);
        for (int r = 0; r < nr_; ++r) {
            uint32_t bits = 0;
            for (int c = 0; c < nc_; ++c)
                if (a.test(r, c)) bits |= uint32_t{1} << c;
            row_bits_[r] = bits;
        }
    }

    // Runs the search; fills the canonical body and one realizing
    // permutation pair (permute() semantics: original index -> position).
    void run(std::string& body, std::vector<int>& row_perm, std::vector<int>& col_perm) {
        std::vector<std::vector<int>> groups;
        if (nc_ > 0) {
            groups.emplace_back(nc_);
            std::iota(groups.front().begin(), groups.front().end(), 0);
        }
        path_.clear();
        order_.clear();
        have_best_ = false;
        nodes_ = 0;
        descend(groups, 0u, false);

        body.clear();
        for (const std::string& row : best_rows_) {
            body += row;
            body += '\n';
        }
        row_perm.assign(nr_, -1);
        for (int pos = 0; pos < nr_; ++pos) row_perm[best_order_[pos]] = pos;
        col_perm.assign(nc_, -1);
        int pos = 0;
        for (const auto& group : best_groups_)
            for (int c : group) col_perm[c] = pos++;
    }

  private:
    // Reading of a row against the current partition, ones packed last in
    // each group (the least string any in-group column arrangement allows).
    std::string packed_reading(int r, const std::vector<std::vector<int>>& groups) const {
        std::string s(nc_, '0');
        int at = 0;
        for (const auto& group : groups) {
            int ones = 0;
            for (int c : group) ones += (row_bits_[r] >> c) & 1;
            at += static_cast<int>(group.size());
            for (int j = 0; j < ones; ++j) s[at - 1 - j] = '1';
        }
        return s;
    }

    // Whether swapping candidate rows r and s extends to an automorphism of
    // the unplaced remainder: the column involution that within each group
    // exchanges r's private ones with s's private ones must map the other
    // unused rows onto themselves as a multiset. When it does, the two
    // branches explore isomorphic states and one can be skipped.
    bool interchangeable(int r, int s, const std::vector<std::vector<int>>& groups,
                         uint32_t used) const {
        std::array<int, canonical_max_side> col_map{};
        std::iota(col_map.begin(), col_map.begin() + nc_, 0);
        const uint32_t rb = row_bits_[r], sb = row_bits_[s];
        for (const auto& group : groups) {
            static thread_local std::vector<int> only_r, only_s;
            only_r.clear();
            only_s.clear();
            for (int c : group) {
                const bool in_r = (rb >> c) & 1, in_s = (sb >> c) & 1;
                if (in_r && !in_s) only_r.push_back(c);
                else if (in_s && !in_r) only_s.push_back(c);
            }
            if (only_r.size() != only_s.size()) return false; // readings differ after all
            for (size_t i = 0; i < only_r.size(); ++i) {
                col_map[only_r[i]] = only_s[i];
                col_map[only_s[i]] = only_r[i];
            }
        }
        static thread_local std::vector<uint32_t> before, after;
        before.clear();
        after.clear();
        for (int t = 0; t < nr_; ++t) {
            if ((used >> t) & 1 || t == r || t == s) continue;
            before.push_back(row_bits_[t]);
            uint32_t image = 0;
            for (int c = 0; c < nc_; ++c)
                if ((row_bits_[t] >> c) & 1) image |= uint32_t{1} << col_map[c];
            after.push_back(image);
        }
        std::sort(before.begin(), before.end());
        std::sort(after.begin(), after.end());
        return before == after;
    }

    static std::vector<std::vector<int>> split_groups(const std::vector<std::vector<int>>& groups,
                                                      uint32_t bits) {
        std::vector<std::vector<int>> next;
        next.reserve(groups.size() + 4);
        for (const auto& group : groups) {
            std::vector<int> zeros, ones;
            for (int c : group)
                ((bits >> c) & 1 ? ones : zeros).push_back(c);
            if (!zeros.empty()) next.push_back(std::move(zeros));
            if (!ones.empty()) next.push_back(std::move(ones));
        }
        return next;
    }

    // `prefix_ties_best` reports that the rows placed so far read exactly as
    // the best body's prefix; only then can the next reading be pruned
    // against the best body's row. A recorded improvement always happens
    // inside the subtree whose prefix it extends, so the flag never goes
    // stale in the pruning direction.
    void descend(const std::vector<std::vector<int>>& groups, uint32_t used,
                 bool prefix_ties_best) {
        const int pos = static_cast<int>(path_.size());
        if (pos == nr_) {
            if (!have_best_ || path_ < best_rows_) {
                best_rows_ = path_;
                best_order_ = order_;
                best_groups_ = groups;
                have_best_ = true;
            }
            return;
        }
        if (++nodes_ > node_budget)
            throw SizeError("canonical form: search budget exceeded at " +
                            std::to_string(nr_) + "x" + std::to_string(nc_));

        std::string least;
        std::vector<int> candidates;
        for (int r = 0; r < nr_; ++r) {
            if ((used >> r) & 1) continue;
            std::string reading = packed_reading(r, groups);
            if (candidates.empty() || reading < least) {
                least = std::move(reading);
                candidates.assign(1, r);
            } else if (reading == least) {
                candidates.push_back(r);
            }
        }

        bool child_ties = false;
        if (prefix_ties_best && have_best_) {
            const int cmp = least.compare(best_rows_[pos]);
            if (cmp > 0) return;
            child_ties = cmp == 0;
        }

        std::vector<int> tried;
        for (int r : candidates) {
            bool skip = false;
            for (int t : tried)
                if (interchangeable(t, r, groups, used)) {
                    skip = true;
                    break;
                }
            if (skip) continue;
            tried.push_back(r);
            path_.push_back(least);
            order_.push_back(r);
            descend(split_groups(groups, row_bits_[r]), used | (uint32_t{1} << r), child_ties);
            order_.pop_back();
            path_.pop_back();
        }
    }

    static constexpr long node_budget = 4'000'000;

    const BinaryMatrix& a_;
    int nr_, nc_;
    std::vector<uint32_t> row_bits_;

    std::vector<std::string> path_;
    std::vector<int> order_;
    bool have_best_ = false;
    std::vector<std::string> best_rows_;
    std::vector<int> best_order_;
    std::vector<std::vector<int>> best_groups_;
    long nodes_ = 0;
};

// Canonicalizes one orientation and validates the retained witness by
// applying it before returning.
CanonicalForm oriented_form(const BinaryMatrix& a, std::vector<int>& row_perm,
                            std::vector<int>& col_perm) {
    CanonicalForm form;
    BodySearch search(a);
    search.run(form.body, row_perm, col_perm);
    if (matrix_body(permute(a, row_perm, col_perm)) != form.body)
        throw ContractError("canonical form: witness does not reproduce the body");
    return form;
}

} // namespace

CanonicalForm canonical_form(const BinaryMatrix& a, bool with_transpose,
                             CanonicalWitness* witness) {
    if (a.n_rows() > canonical_max_side || a.n_cols() > canonical_max_side)
        throw SizeError("canonical form: matrix exceeds " + std::to_string(canonical_max_side) +
                        " rows or columns");
    if (with_transpose && a.n_rows() != a.n_cols())
        throw DimensionError("canonical form: transpose equivalence needs a square matrix");

    CanonicalWitness direct;
    CanonicalForm form = oriented_form(a, direct.row_perm, direct.col_perm);
    if (with_transpose) {
        CanonicalWitness flipped;
        flipped.transposed = true;
        CanonicalForm other = oriented_form(transpose(a), flipped.row_perm, flipped.col_perm);
        if (other < form) {
            form = std::move(other);
            direct = std::move(flipped);
        }
    }
    if (witness) *witness = std::move(direct);
    return form;
}

bool are_equivalent(const BinaryMatrix& a, const BinaryMatrix& b, bool with_transpose) {
    bool eq = false;
    if (a.n_rows() == b.n_rows() && a.n_cols() == b.n_cols())
        eq = canonical_form(a) == canonical_form(b);
    if (!eq && with_transpose && a.n_rows() == b.n_cols() && a.n_cols() == b.n_rows())
        eq = canonical_form(a) == canonical_form(transpose(b));
    return eq;
}

std::string canonical_digest(const CanonicalForm& form) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : form.body) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
    return out;
}

} // namespace alphagrid

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <tuple>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "word.hpp"

namespace fragmenta {

class UnionFind {
  public:
    explicit UnionFind(size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    uint32_t find(uint32_t x) {
        uint32_t root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) {
            uint32_t next = parent_[x];
            parent_[x] = root;
            x = next;
        }
        return root;
    }

    void unite(uint32_t a, uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }

  private:
    std::vector<uint32_t> parent_;
    std::vector<uint8_t> rank_;
};

struct SectorCatalog {
    unsigned q = 2;
    unsigned L = 0;
    std::vector<uint32_t> root;         // root[idx] = canonical representative (smallest idx)
    std::vector<uint32_t> sector_reps;  // sorted list of representatives
    std::vector<uint32_t> sector_size;  // aligned with sector_reps

    // histogram: sector dimension -> number of sectors of that dimension
    std::map<uint32_t, uint32_t> histogram() const {
        std::map<uint32_t, uint32_t> h;
        for (uint32_t s : sector_size) ++h[s];
        return h;
    }

    size_t num_sectors() const { return sector_reps.size(); }

    uint32_t size_of(uint32_t rep) const {
        auto it = std::lower_bound(sector_reps.begin(), sector_reps.end(), rep);
        return sector_size[static_cast<size_t>(it - sector_reps.begin())];
    }
};

// Enumerate all q^L words and merge along every rewrite move.
inline SectorCatalog enumerate_sectors(const std::vector<RewriteRule>& rules,
                                       unsigned q, unsigned L) {
    const uint64_t n = pow_u64(q, L);
    UnionFind uf(n);
    for (const auto& r : rules) {
        if (r.window > L) continue;
        auto codes = r.class_codes();
        const uint64_t mod = pow_u64(q, r.window);
        for (unsigned i = 0; i + r.window <= L; ++i) {
            const uint64_t place = pow_u64(q, L - r.window - i);
            for (uint64_t idx = 0; idx < n; ++idx) {
                uint64_t wc = (idx / place) % mod;
                for (size_t a = 0; a < codes.size(); ++a) {
                    if (codes[a] != wc) continue;
                    for (size_t b = 0; b < codes.size(); ++b) {
                        if (b == a) continue;
                        int64_t d = (static_cast<int64_t>(codes[b]) -
                                     static_cast<int64_t>(codes[a])) *
                                    static_cast<int64_t>(place);
                        uf.unite(static_cast<uint32_t>(idx),
                                 static_cast<uint32_t>(static_cast<int64_t>(idx) + d));
                    }
                    break;
                }
            }
        }
    }
    SectorCatalog cat;
    cat.q = q;
    cat.L = L;
    cat.root.resize(n);
    // canonicalize roots to the smallest index in each component
    std::vector<uint32_t> canon(n, UINT32_MAX);
    for (uint64_t idx = 0; idx < n; ++idx) {
        uint32_t r = uf.find(static_cast<uint32_t>(idx));
        if (canon[r] == UINT32_MAX) canon[r] = static_cast<uint32_t>(idx);
        cat.root[idx] = canon[r];
    }
    std::unordered_map<uint32_t, uint32_t> count;
    for (uint64_t idx = 0; idx < n; ++idx) ++count[cat.root[idx]];
    cat.sector_reps.reserve(count.size());
    for (const auto& [rep, _] : count) cat.sector_reps.push_back(rep);
    std::sort(cat.sector_reps.begin(), cat.sector_reps.end());
    cat.sector_size.reserve(count.size());
    for (uint32_t rep : cat.sector_reps) cat.sector_size.push_back(count[rep]);
    return cat;
}

// Sorted member indices of the sector containing `idx`.
inline std::vector<uint64_t> sector_members(const SectorCatalog& cat, uint64_t idx) {
    uint32_t rep = cat.root[idx];
    std::vector<uint64_t> m;
    for (uint64_t j = 0; j < cat.root.size(); ++j)
        if (cat.root[j] == rep) m.push_back(j);
    return m;
}

// Count words with no rewritable window (one-element sectors).
inline uint64_t frozen_sector_count(const SectorCatalog& cat) {
    uint64_t n = 0;
    for (uint32_t s : cat.sector_size) n += (s == 1);
    return n;
}

// Normal form under repeated deletion of any all-equal window of length 3.
// Returns {k, remainder}: k triples removed, remainder contains no such window.
struct TripletNormalForm {
    unsigned k = 0;
    Word remainder;
};

inline TripletNormalForm triplet_normal_form(const Word& w) {
    TripletNormalForm nf;
    nf.remainder = w;
    bool changed = true;
    while (changed) {
        changed = false;
        auto& r = nf.remainder;
        for (size_t i = 0; i + 3 <= r.size(); ++i) {
            if (r[i] == r[i + 1] && r[i] == r[i + 2]) {
                r.erase(r.begin() + static_cast<long>(i),
                        r.begin() + static_cast<long>(i) + 3);
                ++nf.k;
                changed = true;
                break;
            }
        }
    }
    return nf;
}

// Invariants of the cyclic three-letter exchange dynamics: digit counts, the
// pairwise order parameter N_ord, and D = (N0 N1 + N1 N2 + N2 N0) - 2 N_ord.
struct CyclicInvariants {
    unsigned n0 = 0, n1 = 0, n2 = 0;
    long n_ord = 0;
    long D = 0;

    bool operator==(const CyclicInvariants&) const = default;
    bool operator<(const CyclicInvariants& o) const {
        return std::tie(n0, n1, n2, n_ord) < std::tie(o.n0, o.n1, o.n2, o.n_ord);
    }
};

inline CyclicInvariants cyclic_invariants(const Word& w) {
    CyclicInvariants inv;
    long ord = 0;
    unsigned seen0 = 0, seen1 = 0, seen2 = 0;
    for (uint8_t c : w) {
        // pairs (i<j) with (w_i,w_j) in {(0,1),(1,2),(2,0)}
        if (c == 0) { ++inv.n0; ord += seen2; ++seen0; }
        else if (c == 1) { ++inv.n1; ord += seen0; ++seen1; }
        else { ++inv.n2; ord += seen1; ++seen2; }
    }
    inv.n_ord = ord;
    inv.D = static_cast<long>(inv.n0) * inv.n1 + static_cast<long>(inv.n1) * inv.n2 +
            static_cast<long>(inv.n2) * inv.n0 - 2 * ord;
    return inv;
}

// Statistically-interacting-momentum label: sum over k-site subsets
// j_1 < ... < j_k of exp(2*pi*i/p * sum_n j_n) * prod_n w[j_n], sites 1-based.
inline std::complex<double> iom_label(const Word& w, const std::vector<unsigned>& alpha,
                                      unsigned p) {
    const size_t L = w.size();
    const size_t k = alpha.size();
    std::complex<double> total = 0.0;
    std::vector<size_t> j(k);
    // recursive enumeration of ordered site tuples
    auto rec = [&](auto&& self, size_t depth, size_t start,
                   std::complex<double> acc, unsigned phase_sum) -> void {
        if (depth == k) {
            double ang = 2.0 * 3.14159265358979323846 * phase_sum / p;
            total += acc * std::complex<double>(std::cos(ang), std::sin(ang));
            return;
        }
        for (size_t s = start; s < L; ++s) {
            double factor = 1.0;
            for (unsigned e = 0; e < alpha[depth]; ++e) factor *= w[s];
            if (factor == 0.0) continue;
            self(self, depth + 1, s + 1, acc * factor,
                 phase_sum + static_cast<unsigned>((s + 1) % p));
        }
    };
    rec(rec, 0, 0, std::complex<double>(1.0, 0.0), 0);
    return total;
}

}  // namespace fragmenta

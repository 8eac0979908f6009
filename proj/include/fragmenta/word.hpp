#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fragmenta {

// A word is a base-q string of length L, stored most-significant site first.
// idx(w) = sum_i w[i] * q^(L-1-i)
using Word = std::vector<uint8_t>;

inline uint64_t pow_u64(uint64_t base, unsigned exp) {
    uint64_t r = 1;
    while (exp--) r *= base;
    return r;
}

inline uint64_t encode(const Word& w, unsigned q) {
    uint64_t idx = 0;
    for (uint8_t c : w) {
        if (c >= q) throw std::invalid_argument("digit out of range");
        idx = idx * q + c;
    }
    return idx;
}

inline Word decode(uint64_t idx, unsigned q, unsigned L) {
    Word w(L);
    for (unsigned i = 0; i < L; ++i) {
        w[L - 1 - i] = static_cast<uint8_t>(idx % q);
        idx /= q;
    }
    if (idx != 0) throw std::invalid_argument("index out of range for given L");
    return w;
}

inline std::string word_to_string(const Word& w) {
    std::string s;
    s.reserve(w.size());
    for (uint8_t c : w) s.push_back(static_cast<char>('0' + c));
    return s;
}

inline Word word_from_string(const std::string& s, unsigned q) {
    Word w;
    w.reserve(s.size());
    for (char c : s) {
        if (c < '0' || c >= static_cast<char>('0' + q))
            throw std::invalid_argument("bad digit in word string");
        w.push_back(static_cast<uint8_t>(c - '0'));
    }
    return w;
}

// An undirected, length-preserving rewrite rule: all window contents in one
// equivalence class may be substituted for each other at any position.
struct RewriteRule {
    unsigned q = 2;
    unsigned window = 3;
    std::vector<std::vector<uint8_t>> cls;  // window contents, each of length `window`

    std::vector<uint64_t> class_codes() const {
        std::vector<uint64_t> codes;
        codes.reserve(cls.size());
        for (const auto& c : cls) codes.push_back(encode(c, q));
        return codes;
    }
};

// Full-word index deltas for substituting window content a -> b at site i:
// delta[i][a-code][b-code in class] applied as idx + delta.
// Stored per class member pair; delta_i(a,b) = (code(b)-code(a)) * q^(L-window-i).
struct DeltaTable {
    unsigned q = 2;
    unsigned L = 0;
    unsigned window = 0;
    // moves[i] is a list of (window_code_from, signed delta) pairs covering all
    // ordered pairs (a,b), a != b, within each class.
    struct Move {
        uint64_t from_code;
        int64_t delta;
    };
    std::vector<std::vector<Move>> moves;  // indexed by window position i in [0, L-window]
};

inline DeltaTable build_delta_table(const std::vector<RewriteRule>& rules,
                                    unsigned q, unsigned L) {
    DeltaTable t;
    t.q = q;
    t.L = L;
    t.window = 0;
    for (const auto& r : rules) {
        if (r.q != q) throw std::invalid_argument("rule alphabet mismatch");
        if (r.window > t.window) t.window = r.window;
    }
    if (t.window == 0 || t.window > L) {
        t.moves.clear();
        return t;
    }
    t.moves.assign(L - t.window + 1, {});
    for (const auto& r : rules) {
        if (r.window > L) continue;
        auto codes = r.class_codes();
        for (unsigned i = 0; i + r.window <= L; ++i) {
            int64_t place = static_cast<int64_t>(pow_u64(q, L - r.window - i));
            for (size_t a = 0; a < codes.size(); ++a)
                for (size_t b = 0; b < codes.size(); ++b) {
                    if (a == b) continue;
                    int64_t d = (static_cast<int64_t>(codes[b]) -
                                 static_cast<int64_t>(codes[a])) * place;
                    t.moves[i].push_back({codes[a], d});
                }
        }
    }
    return t;
}

// Extract the window code at position i from a full-word index.
inline uint64_t window_code(uint64_t idx, unsigned q, unsigned L, unsigned i,
                            unsigned window) {
    uint64_t shift = pow_u64(q, L - window - i);
    uint64_t mod = pow_u64(q, window);
    return (idx / shift) % mod;
}

// Apply rule at site i if the window matches some class member; returns all
// distinct results (excluding w itself).
inline std::vector<Word> apply_rule_at(const Word& w, const RewriteRule& r, unsigned i) {
    std::vector<Word> out;
    if (i + r.window > w.size()) return out;
    for (const auto& a : r.cls) {
        bool match = true;
        for (unsigned k = 0; k < r.window; ++k)
            if (w[i + k] != a[k]) { match = false; break; }
        if (!match) continue;
        for (const auto& b : r.cls) {
            if (&b == &a) continue;
            Word v = w;
            for (unsigned k = 0; k < r.window; ++k) v[i + k] = b[k];
            out.push_back(std::move(v));
        }
        break;
    }
    return out;
}

// Count occurrences of digit c.
inline unsigned digit_count(const Word& w, uint8_t c) {
    unsigned n = 0;
    for (uint8_t x : w) n += (x == c);
    return n;
}

}  // namespace fragmenta

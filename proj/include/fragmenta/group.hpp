#pragma once

#include <stdexcept>
#include <string>

namespace fragmenta {

// Free product of two cyclic 3-groups, elements as reduced binary strings
// (no 000 or 111 substring); "" is the identity.

inline void reduce_append(std::string& g, char c) {
    if (c != '0' && c != '1') throw std::invalid_argument("reduce_append: bad digit");
    size_t n = g.size();
    if (n >= 2 && g[n - 1] == c && g[n - 2] == c)
        g.erase(n - 2);
    else
        g.push_back(c);
}

inline std::string reduce(const std::string& w) {
    std::string g;
    g.reserve(w.size());
    for (char c : w) reduce_append(g, c);
    return g;
}

inline std::string multiply(const std::string& a, const std::string& b) {
    std::string g = a;
    for (char c : b) reduce_append(g, c);
    return g;
}

// Reverse the block order and swap each run length k -> 3-k.
inline std::string inverse(const std::string& g) {
    std::string out;
    out.reserve(2 * g.size());
    size_t i = g.size();
    while (i > 0) {
        size_t j = i;
        while (j > 0 && g[j - 1] == g[i - 1]) --j;
        size_t run = i - j;
        out.append(3 - run, g[i - 1]);
        i = j;
    }
    return out;
}

inline size_t depth(const std::string& g) { return g.size(); }

}  // namespace fragmenta

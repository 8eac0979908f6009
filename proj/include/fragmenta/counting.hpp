#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fragmenta {

using BigInt = boost::multiprecision::cpp_int;

// F1 = F2 = 1
inline BigInt fib(unsigned n) {
    if (n == 0) throw std::invalid_argument("fib: n >= 1");
    BigInt a = 1, b = 1;
    for (unsigned i = 2; i < n; ++i) {
        BigInt c = a + b;
        a = b;
        b = c;
    }
    return b;
}

inline BigInt binom(unsigned n, long k) {
    if (k < 0 || k > static_cast<long>(n)) return 0;
    BigInt r = 1;
    for (long j = 1; j <= k; ++j) {
        r *= n - static_cast<unsigned>(k) + static_cast<unsigned>(j);
        r /= j;
    }
    return r;
}

// Size of a classical sector with k mobile triplets at length L:
// D_k(L) = (q-1)^k C(L,k) - (2q-3) sum_{j<k} (q-1)^j C(L,j)
inline BigInt dk_closed(unsigned q, unsigned k, unsigned L) {
    if (3 * k > L) throw std::invalid_argument("dk_closed: 3k > L");
    BigInt qm1 = q - 1;
    BigInt pw = 1;
    BigInt tail = 0;
    for (unsigned j = 0; j < k; ++j) {
        tail += pw * binom(L, j);
        pw *= qm1;
    }
    return pw * binom(L, k) - (2 * static_cast<int>(q) - 3) * tail;
}

// All-mobile sector size at L = 3k: (q/k) sum_{j=0}^{k-1} (q-1)^j (k-j) C(3k, j)
inline BigInt all_mobile_count(unsigned q, unsigned k) {
    if (k == 0) throw std::invalid_argument("all_mobile_count: k >= 1");
    BigInt s = 0, pw = 1;
    for (unsigned j = 0; j < k; ++j) {
        s += pw * (k - j) * binom(3 * k, j);
        pw *= q - 1;
    }
    BigInt num = q * s;
    if (num % k != 0) throw std::logic_error("all_mobile_count: non-integer");
    return num / k;
}

// Quantum Krylov dimension of a q=2 triplet-flip mobile sector: D_cl - 1.
inline BigInt quantum_dim(unsigned k, unsigned L) {
    if (k == 0) throw std::invalid_argument("quantum_dim: k >= 1");
    return dk_closed(2, k, L) - 1;
}

// Spin-flip charge dimensions of the all-mobile K_q when 3 | L:
// dim(X = +1) = (D^q - (-1)^{L/3}) / 2, dim(X = -1) = (D^q + (-1)^{L/3}) / 2
inline std::pair<BigInt, BigInt> ghz_charge_dims(unsigned L) {
    if (L % 3 != 0) throw std::invalid_argument("ghz_charge_dims: 3 | L required");
    BigInt dq = quantum_dim(L / 3, L);
    int sgn = (L / 3) % 2 == 0 ? 1 : -1;
    return {(dq - sgn) / 2, (dq + sgn) / 2};
}

// dim of the standard module: C(L,(L-j)/2) - C(L,(L-j)/2-1)
inline BigInt tl_standard_dim(unsigned L, unsigned j) {
    if (j > L || (L - j) % 2 != 0)
        throw std::invalid_argument("tl_standard_dim: parity mismatch");
    unsigned m = (L - j) / 2;
    return binom(L, m) - binom(L, static_cast<long>(m) - 1);
}

enum class FrozenFamily { TripletQ2, TripletQ3, Cyclic, TemperleyLieb };

// Number of frozen words (size-1 sectors).
// Triplet: d_{L+2} = (q-1)(d_{L+1} + d_L), d_1 = q, d_2 = q^2.
// Cyclic: d_{L+1} = 2 d_L + d_{L-1}, d_1 = 3, d_2 = 9.
// TL: no equal adjacent digits: 3 * 2^{L-1}.
inline BigInt frozen_closed(FrozenFamily fam, unsigned L) {
    if (L == 0) throw std::invalid_argument("frozen_closed: L >= 1");
    auto rec2 = [L](BigInt d1, BigInt d2, auto step) {
        if (L == 1) return d1;
        for (unsigned i = 3; i <= L; ++i) {
            BigInt d3 = step(d2, d1);
            d1 = d2;
            d2 = d3;
        }
        return d2;
    };
    switch (fam) {
        case FrozenFamily::TripletQ2:
            return rec2(2, 4, [](const BigInt& a, const BigInt& b) { return a + b; });
        case FrozenFamily::TripletQ3:
            return rec2(3, 9, [](const BigInt& a, const BigInt& b) { return 2 * (a + b); });
        case FrozenFamily::Cyclic:
            return rec2(3, 9, [](const BigInt& a, const BigInt& b) { return 2 * a + b; });
        case FrozenFamily::TemperleyLieb:
            return 3 * (BigInt(1) << (L - 1));
    }
    throw std::logic_error("frozen_closed: bad family");
}

// Sector counts for the q=2 triplet-flip family.
inline BigInt asym_product_sectors(unsigned L) { return 2 * fib(L + 1); }
inline BigInt asym_entangled_sectors(unsigned L) { return fib(L) - 1; }
inline BigInt asym_total_sectors(unsigned L) { return fib(L + 3) - 1; }

// Number of sectors with k mobile triplets at q=2: 2 F_{L+1-3k} for 3k < L, and 1
// for the all-mobile sector 3k = L.
inline BigInt triplet_sector_count(unsigned L, unsigned k) {
    if (3 * k > L) throw std::invalid_argument("triplet_sector_count: 3k > L");
    if (3 * k == L) return 1;
    return 2 * fib(L + 1 - 3 * k);
}

}  // namespace fragmenta

#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "sectors.hpp"
#include "word.hpp"

namespace fragmenta {

enum class ModelKind { TripletFlip, CyclicQutrit, TemperleyLieb };

enum class CouplingKind { Fixed, Uniform };

struct CouplingDist {
    CouplingKind kind = CouplingKind::Uniform;
    double lo = 0.5, hi = 1.5;  // uniform support; Fixed uses lo as the value

    double draw(std::mt19937_64& rng) const {
        if (kind == CouplingKind::Fixed) return lo;
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }
};

// Spin-chain models built from window projectors.
struct ModelSpec {
    ModelKind kind = ModelKind::TripletFlip;
    unsigned q = 2;
    // TripletFlip: projector onto sum_a amps[a] |aaa>, normalized.
    // Defaults: asymmetric a=1/sqrt(5), b=2/sqrt(5).
    std::vector<double> amps = {1.0 / std::sqrt(5.0), 2.0 / std::sqrt(5.0)};
    // CyclicQutrit: alpha P+ + beta P-.
    double alpha = 1.0, beta = 0.5;
    CouplingDist couplings;

    unsigned window() const {
        switch (kind) {
            case ModelKind::TripletFlip: return 3;
            case ModelKind::CyclicQutrit: return 3;
            case ModelKind::TemperleyLieb: return 2;
        }
        return 0;
    }

    static ModelSpec asymmetric(double a = 1.0 / std::sqrt(5.0),
                                double b = 2.0 / std::sqrt(5.0)) {
        ModelSpec m;
        m.kind = ModelKind::TripletFlip;
        m.q = 2;
        double n = std::hypot(a, b);
        m.amps = {a / n, b / n};
        return m;
    }

    static ModelSpec ghz() { return asymmetric(1.0, 1.0); }

    static ModelSpec triplet_q3(std::vector<double> amps = {1.0, 2.0, 3.0}) {
        ModelSpec m;
        m.kind = ModelKind::TripletFlip;
        m.q = 3;
        double n = 0;
        for (double a : amps) n += a * a;
        n = std::sqrt(n);
        for (double& a : amps) a /= n;
        m.amps = amps;
        return m;
    }

    static ModelSpec triplet_q3_symmetric() { return triplet_q3({1.0, 1.0, 1.0}); }

    static ModelSpec cyclic(double alpha = 1.0, double beta = 0.5) {
        ModelSpec m;
        m.kind = ModelKind::CyclicQutrit;
        m.q = 3;
        m.alpha = alpha;
        m.beta = beta;
        return m;
    }

    static ModelSpec cyclic_d3() { return cyclic(1.0, 1.0); }

    static ModelSpec temperley_lieb() {
        ModelSpec m;
        m.kind = ModelKind::TemperleyLieb;
        m.q = 3;
        return m;
    }

    std::vector<RewriteRule> rewrite_rules() const {
        std::vector<RewriteRule> rules;
        switch (kind) {
            case ModelKind::TripletFlip: {
                RewriteRule r;
                r.q = q;
                r.window = 3;
                for (uint8_t a = 0; a < q; ++a)
                    r.cls.push_back({a, a, a});
                rules.push_back(r);
                break;
            }
            case ModelKind::CyclicQutrit: {
                RewriteRule even{3, 3, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}};
                RewriteRule odd{3, 3, {{0, 2, 1}, {1, 0, 2}, {2, 1, 0}}};
                rules.push_back(even);
                rules.push_back(odd);
                break;
            }
            case ModelKind::TemperleyLieb: {
                RewriteRule r;
                r.q = 3;
                r.window = 2;
                for (uint8_t a = 0; a < 3; ++a)
                    r.cls.push_back({a, a});
                rules.push_back(r);
                break;
            }
        }
        return rules;
    }
};

// Dense window matrix of the position-independent local term.
inline Matrix local_term(const ModelSpec& m) {
    const unsigned w = m.window();
    const auto dim = static_cast<Eigen::Index>(pow_u64(m.q, w));
    Matrix T = Matrix::Zero(dim, dim);
    auto add_projector = [&](const std::vector<std::pair<uint64_t, double>>& v,
                             double scale) {
        for (const auto& [ci, ai] : v)
            for (const auto& [cj, aj] : v)
                T(static_cast<Eigen::Index>(ci), static_cast<Eigen::Index>(cj)) +=
                    scale * ai * aj;
    };
    switch (m.kind) {
        case ModelKind::TripletFlip: {
            std::vector<std::pair<uint64_t, double>> v;
            for (unsigned a = 0; a < m.q; ++a)
                v.emplace_back(encode({static_cast<uint8_t>(a), static_cast<uint8_t>(a),
                                       static_cast<uint8_t>(a)}, m.q),
                               m.amps.at(a));
            add_projector(v, 1.0);
            break;
        }
        case ModelKind::CyclicQutrit: {
            const double s = 1.0 / std::sqrt(3.0);
            add_projector({{encode({0, 1, 2}, 3), s},
                           {encode({1, 2, 0}, 3), s},
                           {encode({2, 0, 1}, 3), s}},
                          m.alpha);
            add_projector({{encode({0, 2, 1}, 3), s},
                           {encode({1, 0, 2}, 3), s},
                           {encode({2, 1, 0}, 3), s}},
                          m.beta);
            break;
        }
        case ModelKind::TemperleyLieb: {
            const double s = 1.0 / std::sqrt(3.0);
            add_projector({{encode({0, 0}, 3), s},
                           {encode({1, 1}, 3), s},
                           {encode({2, 2}, 3), s}},
                          1.0);
            break;
        }
    }
    return T;
}

inline size_t member_pos(const std::vector<uint64_t>& members, uint64_t idx) {
    auto it = std::lower_bound(members.begin(), members.end(), idx);
    if (it == members.end() || *it != idx)
        throw std::logic_error("member_pos: word not in sector");
    return static_cast<size_t>(it - members.begin());
}

// Local term at window position i restricted to the sector's member basis.
inline Matrix sector_local_term(const ModelSpec& m, unsigned L,
                                const std::vector<uint64_t>& members, unsigned i) {
    const unsigned w = m.window();
    const Matrix T = local_term(m);
    const auto D = static_cast<Eigen::Index>(members.size());
    const uint64_t place = pow_u64(m.q, L - w - i);
    const uint64_t mod = pow_u64(m.q, w);
    Matrix H = Matrix::Zero(D, D);
    for (Eigen::Index n = 0; n < D; ++n) {
        const uint64_t idx = members[static_cast<size_t>(n)];
        const auto c = static_cast<Eigen::Index>((idx / place) % mod);
        for (Eigen::Index cp = 0; cp < T.rows(); ++cp) {
            const double t = T(cp, c);
            if (t == 0.0) continue;
            const uint64_t idx2 =
                idx + static_cast<uint64_t>((cp - c) * static_cast<int64_t>(place));
            H(static_cast<Eigen::Index>(member_pos(members, idx2)), n) += t;
        }
    }
    return H;
}

struct SectorHamiltonian {
    std::vector<uint64_t> members;
    Matrix H;
    std::vector<double> couplings;
};

inline SectorHamiltonian build_sector_hamiltonian(const ModelSpec& m, unsigned L,
                                                  const std::vector<uint64_t>& members,
                                                  std::mt19937_64& rng) {
    const unsigned w = m.window();
    if (L < w) throw std::invalid_argument("build_sector_hamiltonian: L < window");
    SectorHamiltonian sh;
    sh.members = members;
    const auto D = static_cast<Eigen::Index>(members.size());
    sh.H = Matrix::Zero(D, D);
    for (unsigned i = 0; i + w <= L; ++i) sh.couplings.push_back(m.couplings.draw(rng));
    for (unsigned i = 0; i + w <= L; ++i)
        sh.H += sh.couplings[i] * sector_local_term(m, L, members, i);
    return sh;
}

// ---- quantum breakdown model (hardcore bosons, N modes per site) ----

// Occupation bit for (site i, mode nu), both zero-based: bit (i*N + nu).
struct BreakdownModel {
    unsigned L = 3;
    unsigned N = 2;
    std::vector<double> flavor;  // J^nu, fixed per flavor

    BreakdownModel(unsigned L_, unsigned N_, std::vector<double> flavor_ = {1.0, 0.7})
        : L(L_), N(N_), flavor(std::move(flavor_)) {
        if (N != 2) throw std::invalid_argument("breakdown: N = 2 supported");
        if (N * L > 24) throw std::invalid_argument("breakdown: capacity exceeded");
    }

    uint64_t dim() const { return 1ULL << (N * L); }

    // Union-find catalog over occupation patterns.
    SectorCatalog catalog() const {
        UnionFind uf(dim());
        for (uint64_t s = 0; s < dim(); ++s) {
            for (unsigned i = 0; i + 1 < L; ++i)
                for (unsigned nu = 0; nu < N; ++nu) {
                    uint64_t src = 1ULL << (i * N + nu);
                    uint64_t dst = (1ULL << ((i + 1) * N)) | (1ULL << ((i + 1) * N + 1));
                    if ((s & src) && !(s & dst))
                        uf.unite(static_cast<uint32_t>(s),
                                 static_cast<uint32_t>((s & ~src) | dst));
                }
        }
        SectorCatalog cat;
        cat.q = 2;
        cat.L = N * L;
        cat.root.resize(dim());
        std::vector<uint32_t> canon(dim(), UINT32_MAX);
        for (uint64_t s = 0; s < dim(); ++s) {
            uint32_t r = uf.find(static_cast<uint32_t>(s));
            if (canon[r] == UINT32_MAX) canon[r] = static_cast<uint32_t>(s);
            cat.root[s] = canon[r];
        }
        std::unordered_map<uint32_t, uint32_t> count;
        for (uint64_t s = 0; s < dim(); ++s) ++count[cat.root[s]];
        for (const auto& [rep, _] : count) cat.sector_reps.push_back(rep);
        std::sort(cat.sector_reps.begin(), cat.sector_reps.end());
        for (uint32_t rep : cat.sector_reps) cat.sector_size.push_back(count[rep]);
        return cat;
    }

    // Bond generator h_i (flavor couplings included) restricted to the sector.
    Matrix sector_bond_term(const std::vector<uint64_t>& members, unsigned i) const {
        const auto D = static_cast<Eigen::Index>(members.size());
        Matrix H = Matrix::Zero(D, D);
        for (Eigen::Index n = 0; n < D; ++n) {
            const uint64_t s = members[static_cast<size_t>(n)];
            for (unsigned nu = 0; nu < N; ++nu) {
                uint64_t src = 1ULL << (i * N + nu);
                uint64_t dst = (1ULL << ((i + 1) * N)) | (1ULL << ((i + 1) * N + 1));
                if ((s & src) && !(s & dst)) {
                    uint64_t s2 = (s & ~src) | dst;
                    auto np = static_cast<Eigen::Index>(member_pos(members, s2));
                    H(np, n) += flavor[nu];
                    H(n, np) += flavor[nu];
                }
            }
        }
        return H;
    }
};

// ---- range-2 particle-conserving East model ----

// Window generator on 4 sites [i-2, i+1]: the regrouped block form
//   t1(|1100><1010| + |1101><1011| + |0110><0101| + |1110><1101| + h.c.)
// + t2(|1010><1001| + h.c.)
inline Matrix east_window_matrix(double t1, double t2) {
    Matrix T = Matrix::Zero(16, 16);
    auto set = [&](unsigned a, unsigned b, double v) {
        T(a, b) += v;
        T(b, a) += v;
    };
    set(0b1100, 0b1010, t1);
    set(0b1101, 0b1011, t1);
    set(0b0110, 0b0101, t1);
    set(0b1110, 0b1101, t1);
    set(0b1010, 0b1001, t2);
    return T;
}

inline std::vector<Matrix> east_local_terms(unsigned /*L*/, double t1, double t2,
                                            unsigned n_windows) {
    std::vector<Matrix> v(n_windows, east_window_matrix(t1, t2));
    return v;
}

// Total Hamiltonian from the physical hops, each counted once:
// h = [t1 n_{i-1} + t2 (1 - n_{i-1}) n_{i-2}] (c+_i c_{i+1} + h.c.), site index
// 1-based, acting on the full 2^L space with uniform bond weights.
inline Matrix east_total_hamiltonian(unsigned L, double t1, double t2) {
    const auto dim = static_cast<Eigen::Index>(1ULL << L);
    Matrix H = Matrix::Zero(dim, dim);
    auto bit = [&](uint64_t s, unsigned site1b) {  // site 1 = leftmost
        return (s >> (L - site1b)) & 1ULL;
    };
    for (uint64_t s = 0; s < static_cast<uint64_t>(dim); ++s) {
        for (unsigned i = 2; i < L; ++i) {  // hop between sites i, i+1
            uint64_t bi = bit(s, i), bj = bit(s, i + 1);
            if (bi == bj) continue;
            double amp = 0.0;
            if (bit(s, i - 1)) amp = t1;
            else if (i >= 3 && bit(s, i - 2)) amp = t2;
            if (amp == 0.0) continue;
            uint64_t s2 = s ^ (1ULL << (L - i)) ^ (1ULL << (L - i - 1));
            H(static_cast<Eigen::Index>(s2), static_cast<Eigen::Index>(s)) += amp;
        }
    }
    return H;
}

// Apply a 4-site window operator at window start pos (0-based) to a dense state.
inline Vector apply_window(const Matrix& T, const Vector& state, unsigned L,
                           unsigned pos) {
    const unsigned w = 4;
    Vector out = Vector::Zero(state.size());
    const uint64_t place = 1ULL << (L - w - pos);
    for (Eigen::Index s = 0; s < state.size(); ++s) {
        if (state[s] == 0.0) continue;
        const auto c = static_cast<Eigen::Index>(
            (static_cast<uint64_t>(s) / place) % 16);
        for (Eigen::Index cp = 0; cp < 16; ++cp) {
            if (T(cp, c) == 0.0) continue;
            const auto s2 = s + (cp - c) * static_cast<Eigen::Index>(place);
            out[s2] += T(cp, c) * state[s];
        }
    }
    return out;
}

}  // namespace fragmenta

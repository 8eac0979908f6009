#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "counting.hpp"
#include "decompose.hpp"
#include "models.hpp"
#include "rng.hpp"
#include "sectors.hpp"

namespace fragmenta {

// seed lanes for the command -> sector -> realization split
namespace lane {
constexpr uint64_t kHamiltonian = 3;
constexpr uint64_t kDecompose = 4;
constexpr uint64_t kBridge = 6;
constexpr uint64_t kSpectra = 7;
}  // namespace lane

inline std::vector<Matrix> sector_terms(const ModelSpec& m, unsigned L,
                                        const std::vector<uint64_t>& members) {
    std::vector<Matrix> terms;
    for (unsigned i = 0; i + m.window() <= L; ++i)
        terms.push_back(sector_local_term(m, L, members, i));
    return terms;
}

inline QuantumDecomposition decompose_with_retry(const std::vector<Matrix>& terms,
                                                 const Matrix& efs, uint64_t seed,
                                                 uint64_t sector_lane,
                                                 const CouplingDist& dist = {},
                                                 int attempts = 8) {
    for (int a = 0; a < attempts; ++a) {
        auto rng = derive_rng(seed, lane::kDecompose + 16 * static_cast<uint64_t>(a),
                              sector_lane);
        try {
            return decompose_kq(terms, efs, rng, 1e-8, dist);
        } catch (const degeneracy_error&) {
            if (a + 1 == attempts) throw;
        }
    }
    throw degeneracy_error("decompose_with_retry: unreachable");
}

// A connected block whose spectrum is uniformly m-fold degenerate is an
// isotypic stack of m exactly isospectral copies; report the copies.
inline std::vector<Eigen::Index> split_block_dims(const KrylovBlock& b,
                                                  double tol = 1e-8) {
    if (b.eigs.size() < 2) return {b.dim()};
    const double span = b.eigs.back() - b.eigs.front();
    const double eps = tol * std::max(1.0, span);
    std::vector<size_t> cluster_sizes{1};
    for (size_t i = 1; i < b.eigs.size(); ++i) {
        if (b.eigs[i] - b.eigs[i - 1] <= eps)
            ++cluster_sizes.back();
        else
            cluster_sizes.push_back(1);
    }
    const size_t m = cluster_sizes.front();
    if (m < 2) return {b.dim()};
    for (size_t s : cluster_sizes)
        if (s != m) return {b.dim()};
    return std::vector<Eigen::Index>(m, static_cast<Eigen::Index>(cluster_sizes.size()));
}

inline bool value_shift_symmetric(const ModelSpec& m) {
    switch (m.kind) {
        case ModelKind::CyclicQutrit:
        case ModelKind::TemperleyLieb:
            return true;
        case ModelKind::TripletFlip:
            for (double a : m.amps)
                if (std::abs(a - m.amps[0]) > 1e-14) return false;
            return true;
    }
    return false;
}

inline bool bit_complement_symmetric(const ModelSpec& m) {
    return m.kind == ModelKind::TripletFlip && m.q == 2 &&
           std::abs(m.amps[0] - m.amps[1]) < 1e-14;
}

struct ChargeSummary {
    std::complex<double> charge;
    Eigen::Index dim;
};

struct SectorDecomposition {
    uint64_t rep = 0;
    Eigen::Index d_cl = 0, d_efs = 0, d_q = 0;
    std::vector<Eigen::Index> block_dims;     // refined, ascending
    std::vector<Eigen::Index> full_pattern;   // EFS singlets + refined blocks
    std::vector<ChargeSummary> charges;       // present when a symmetry fixes the sector

    size_t n_irr() const { return block_dims.size(); }
    Eigen::Index d_max() const {
        Eigen::Index m = 0;
        for (auto d : block_dims) m = std::max(m, d);
        return m;
    }
};

// Full sector pipeline: EFS kernel, invariant blocks, isotypic refinement,
// and symmetry charges when the model has a sector-preserving symmetry.
inline SectorDecomposition analyze_sector(const ModelSpec& m, unsigned L,
                                          const std::vector<uint64_t>& members,
                                          uint64_t seed, uint64_t sector_lane) {
    SectorDecomposition sd;
    sd.rep = members.front();
    sd.d_cl = static_cast<Eigen::Index>(members.size());
    auto terms = sector_terms(m, L, members);
    Matrix efs = compute_efs(terms);
    sd.d_efs = efs.cols();
    sd.d_q = sd.d_cl - sd.d_efs;

    Matrix kq;
    if (sd.d_q > 0) {
        auto qd = decompose_with_retry(terms, efs, seed, sector_lane, m.couplings);
        for (const auto& b : qd.blocks)
            for (auto d : split_block_dims(b)) sd.block_dims.push_back(d);
        std::sort(sd.block_dims.begin(), sd.block_dims.end());
        kq = efs.cols() == 0 ? Matrix(Matrix::Identity(sd.d_cl, sd.d_cl))
                             : project_out(efs);
    }
    sd.full_pattern.assign(static_cast<size_t>(sd.d_efs), 1);
    sd.full_pattern.insert(sd.full_pattern.end(), sd.block_dims.begin(),
                           sd.block_dims.end());
    std::sort(sd.full_pattern.begin(), sd.full_pattern.end());

    if (sd.d_q > 0) {
        std::optional<Matrix> sym;
        try {
            if (value_shift_symmetric(m) && m.q == 3)
                sym = symmetry_permutation(members, [&](uint64_t idx) {
                    return digit_shift_index(idx, 3, L);
                });
            else if (bit_complement_symmetric(m))
                sym = symmetry_permutation(members, [&](uint64_t idx) {
                    return bit_complement_index(idx, L);
                });
        } catch (const std::invalid_argument&) {
        }
        if (sym) {
            for (const auto& cb : charge_resolve(kq, *sym))
                sd.charges.push_back({cb.charge, cb.dim()});
        }
    }
    return sd;
}

}  // namespace fragmenta

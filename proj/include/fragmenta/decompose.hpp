#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "models.hpp"
#include "word.hpp"

namespace fragmenta {

// Common kernel of a family of local terms restricted to a sector.
// PSD path: kernel of the unit-coupling sum. Otherwise kernels are
// intersected through the |.| spectrum of each term's square.
inline Matrix compute_efs(const std::vector<Matrix>& terms, bool psd = true,
                          double rel_tol = 1e-10) {
    if (terms.empty()) throw std::invalid_argument("compute_efs: no terms");
    if (psd) {
        Matrix H = Matrix::Zero(terms[0].rows(), terms[0].cols());
        for (const Matrix& t : terms) H += t;
        return null_space(H, rel_tol, false);
    }
    Matrix G = Matrix::Zero(terms[0].rows(), terms[0].cols());
    for (const Matrix& t : terms) G += t.transpose() * t;
    return null_space(G, rel_tol, false);
}

// Frozen-state amplitudes for the two-letter triplet-flip family:
// member w gets weight (-gamma^{1/3})^{N1(w)}, normalized.
inline Vector ind_construct(const std::vector<uint64_t>& members, unsigned L,
                            double gamma) {
    if (gamma <= 0.0) throw std::invalid_argument("ind_construct: gamma must be > 0");
    const double g3 = std::cbrt(gamma);
    Vector v(static_cast<Eigen::Index>(members.size()));
    for (size_t n = 0; n < members.size(); ++n) {
        Word w = decode(members[n], 2, L);
        auto n1 = digit_count(w, 1);
        v[static_cast<Eigen::Index>(n)] =
            ((n1 % 2) ? -1.0 : 1.0) * std::pow(g3, static_cast<double>(n1));
    }
    v.normalize();
    return v;
}

struct KrylovBlock {
    Matrix basis;               // sector-coordinate columns, orthonormal
    std::vector<double> eigs;   // sorted spectrum of the probe Hamiltonian
    Eigen::Index dim() const { return basis.cols(); }
};

struct degeneracy_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuantumDecomposition {
    Eigen::Index d_cl = 0, d_efs = 0, d_q = 0;
    std::vector<KrylovBlock> blocks;
    std::vector<std::vector<size_t>> isospectral_classes;

    size_t n_irr() const { return blocks.size(); }

    Eigen::Index d_max() const {
        Eigen::Index m = 0;
        for (const auto& b : blocks) m = std::max(m, b.dim());
        return m;
    }

    std::vector<Eigen::Index> dims() const {
        std::vector<Eigen::Index> d;
        for (const auto& b : blocks) d.push_back(b.dim());
        std::sort(d.begin(), d.end());
        return d;
    }

    // decomposition pattern of the whole sector: EFS as 1-blocks, then K_q blocks
    std::vector<Eigen::Index> full_dims() const {
        std::vector<Eigen::Index> d(static_cast<size_t>(d_efs), 1);
        for (const auto& b : blocks) d.push_back(b.dim());
        std::sort(d.begin(), d.end());
        return d;
    }
};

inline bool same_spectrum(const std::vector<double>& a, const std::vector<double>& b,
                          double tol) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol) return false;
    return true;
}

// Split the EFS complement into minimal invariant blocks of {h_i}.
// Two random-coupling probes: eigenvectors of H1 become graph nodes,
// nonzero H2 matrix elements the edges; components are re-verified to be
// invariant under every individual term.
inline QuantumDecomposition decompose_kq(const std::vector<Matrix>& terms,
                                         const Matrix& efs_basis, std::mt19937_64& rng,
                                         double tol = 1e-8,
                                         const CouplingDist& dist = {}) {
    QuantumDecomposition qd;
    qd.d_cl = terms.at(0).rows();
    qd.d_efs = efs_basis.cols();
    qd.d_q = qd.d_cl - qd.d_efs;
    if (qd.d_q == 0) return qd;

    Matrix kq = efs_basis.cols() == 0
                    ? Matrix(Matrix::Identity(qd.d_cl, qd.d_cl))
                    : project_out(efs_basis);
    std::vector<Matrix> rt;  // terms restricted to K_q
    rt.reserve(terms.size());
    for (const Matrix& t : terms) rt.push_back(kq.transpose() * t * kq);

    Matrix H1 = Matrix::Zero(qd.d_q, qd.d_q), H2 = H1;
    for (const Matrix& t : rt) H1 += dist.draw(rng) * t;
    for (const Matrix& t : rt) H2 += dist.draw(rng) * t;

    Spectrum s1 = sym_eig(H1);
    Matrix M = s1.eigenvectors.transpose() * H2 * s1.eigenvectors;
    const double cut = tol * M.cwiseAbs().rowwise().sum().maxCoeff();

    UnionFind uf(static_cast<uint64_t>(qd.d_q));
    for (Eigen::Index i = 0; i < qd.d_q; ++i)
        for (Eigen::Index j = i + 1; j < qd.d_q; ++j)
            if (std::abs(M(i, j)) > cut)
                uf.unite(static_cast<uint32_t>(i), static_cast<uint32_t>(j));

    std::unordered_map<uint32_t, std::vector<Eigen::Index>> comps;
    for (Eigen::Index i = 0; i < qd.d_q; ++i)
        comps[uf.find(static_cast<uint32_t>(i))].push_back(i);

    std::vector<std::vector<Eigen::Index>> ordered;
    for (auto& [_, c] : comps) ordered.push_back(std::move(c));
    std::sort(ordered.begin(), ordered.end());

    for (const auto& comp : ordered) {
        KrylovBlock b;
        b.basis.resize(qd.d_cl, static_cast<Eigen::Index>(comp.size()));
        for (size_t c = 0; c < comp.size(); ++c) {
            b.basis.col(static_cast<Eigen::Index>(c)) = kq * s1.eigenvectors.col(comp[c]);
            b.eigs.push_back(s1.eigenvalues[comp[c]]);
        }
        std::sort(b.eigs.begin(), b.eigs.end());
        qd.blocks.push_back(std::move(b));
    }

    // verify against terms projected into K_q: frozen combinations that carry
    // the couplings are only annihilated by the full Hamiltonian, so a raw
    // local term may legitimately leak into K_EFS
    for (size_t k = 0; k < rt.size(); ++k) {
        const double scale = std::max(1.0, terms[k].cwiseAbs().maxCoeff());
        for (const auto& comp : ordered) {
            Matrix C(qd.d_q, static_cast<Eigen::Index>(comp.size()));
            for (size_t c = 0; c < comp.size(); ++c)
                C.col(static_cast<Eigen::Index>(c)) = s1.eigenvectors.col(comp[c]);
            Matrix r = rt[k] * C - C * (C.transpose() * rt[k] * C);
            if (r.norm() > 100 * tol * scale * std::sqrt(double(C.size())))
                throw degeneracy_error(
                    "decompose_kq: block not invariant under a local term, retry with "
                    "a fresh seed");
        }
    }

    std::vector<bool> used(qd.blocks.size(), false);
    for (size_t i = 0; i < qd.blocks.size(); ++i) {
        if (used[i]) continue;
        std::vector<size_t> cls{i};
        for (size_t j = i + 1; j < qd.blocks.size(); ++j)
            if (!used[j] && same_spectrum(qd.blocks[i].eigs, qd.blocks[j].eigs, 1e-8)) {
                used[j] = true;
                cls.push_back(j);
            }
        qd.isospectral_classes.push_back(std::move(cls));
    }
    return qd;
}

// ---- symmetry operators on a sector's member basis ----

inline uint64_t bit_complement_index(uint64_t idx, unsigned L) {
    return (pow_u64(2, L) - 1) - idx;
}

inline uint64_t digit_shift_index(uint64_t idx, unsigned q, unsigned L) {
    Word w = decode(idx, q, L);
    for (auto& c : w) c = static_cast<uint8_t>((c + 1) % q);
    return encode(w, q);
}

// Permutation matrix of idx -> map(idx) over the member list;
// throws if the image leaves the sector, naming the stray image index.
template <typename F>
Matrix symmetry_permutation(const std::vector<uint64_t>& members, F&& map) {
    const auto D = static_cast<Eigen::Index>(members.size());
    Matrix S = Matrix::Zero(D, D);
    for (Eigen::Index n = 0; n < D; ++n) {
        uint64_t img = map(members[static_cast<size_t>(n)]);
        auto it = std::lower_bound(members.begin(), members.end(), img);
        if (it == members.end() || *it != img)
            throw std::invalid_argument(
                "symmetry_permutation: symmetry maps the sector onto the sector of "
                "basis index " + std::to_string(img));
        S(static_cast<Eigen::Index>(it - members.begin()), n) = 1.0;
    }
    return S;
}

struct ChargeBlock {
    std::complex<double> charge;
    Eigen::MatrixXcd basis;  // sector-coordinate columns, orthonormal
    Eigen::Index dim() const { return basis.cols(); }
};

// Eigenspaces of a symmetry restricted to an invariant subspace.
// Real eigenvalues yield real bases (stored as complex); a conjugate pair
// yields two blocks of equal dimension with conjugate bases.
inline std::vector<ChargeBlock> charge_resolve(const Matrix& subspace, const Matrix& sym,
                                               double tol = 1e-8) {
    const Eigen::Index d = subspace.cols();
    Matrix Sb = subspace.transpose() * sym * subspace;
    if ((sym * subspace - subspace * Sb).norm() > tol * std::sqrt(double(d)))
        throw std::invalid_argument("charge_resolve: subspace not symmetry-invariant");

    Eigen::ComplexEigenSolver<Matrix> es(Sb);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("charge_resolve: eigensolver failed");
    const auto& ev = es.eigenvalues();
    const auto& V = es.eigenvectors();

    std::vector<ChargeBlock> out;
    std::vector<bool> used(static_cast<size_t>(d), false);
    for (Eigen::Index i = 0; i < d; ++i) {
        if (used[static_cast<size_t>(i)]) continue;
        std::vector<Eigen::Index> idx;
        for (Eigen::Index j = i; j < d; ++j)
            if (!used[static_cast<size_t>(j)] && std::abs(ev[j] - ev[i]) < tol) {
                used[static_cast<size_t>(j)] = true;
                idx.push_back(j);
            }
        Eigen::MatrixXcd Z(d, static_cast<Eigen::Index>(idx.size()));
        for (size_t c = 0; c < idx.size(); ++c) Z.col(static_cast<Eigen::Index>(c)) = V.col(idx[c]);
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
        Eigen::MatrixXcd Q = qr.householderQ() *
                             Eigen::MatrixXcd::Identity(d, static_cast<Eigen::Index>(idx.size()));
        ChargeBlock b;
        b.charge = ev[i];
        b.basis = subspace.cast<std::complex<double>>() * Q;
        out.push_back(std::move(b));
    }
    std::sort(out.begin(), out.end(), [](const ChargeBlock& a, const ChargeBlock& b) {
        return std::arg(a.charge) < std::arg(b.charge);
    });
    return out;
}

// Spectrum of a real symmetric operator restricted to a (complex) charge block.
inline std::vector<double> charge_block_spectrum(const Matrix& H,
                                                 const Eigen::MatrixXcd& basis) {
    Eigen::MatrixXcd Hb = basis.adjoint() * H.cast<std::complex<double>>() * basis;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Hb);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("charge_block_spectrum: eigensolver failed");
    std::vector<double> eigs(es.eigenvalues().data(),
                             es.eigenvalues().data() + es.eigenvalues().size());
    return eigs;
}

enum class FragmentationClass { Weak, Strong, Inconclusive };

struct FragmentationPoint {
    unsigned L;
    size_t n_irr;
    Eigen::Index d_max, d_q;
};

struct FragmentationReport {
    FragmentationClass label;
    std::vector<FragmentationPoint> points;  // as supplied, sorted by L
};

inline FragmentationReport classify_fragmentation(std::vector<FragmentationPoint> pts) {
    if (pts.size() < 3)
        throw std::invalid_argument("classify_fragmentation: need at least 3 sizes");
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.L < b.L; });
    bool ratio_dec = true, nirr_inc = true, nirr_const = true;
    for (size_t i = 1; i < pts.size(); ++i) {
        double r0 = double(pts[i - 1].d_max) / double(pts[i - 1].d_q);
        double r1 = double(pts[i].d_max) / double(pts[i].d_q);
        ratio_dec &= r1 < r0;
        nirr_inc &= pts[i].n_irr > pts[i - 1].n_irr;
        nirr_const &= pts[i].n_irr == pts[i - 1].n_irr;
    }
    FragmentationReport rep;
    rep.points = std::move(pts);
    rep.label = (ratio_dec && nirr_inc) ? FragmentationClass::Strong
                : nirr_const            ? FragmentationClass::Weak
                                        : FragmentationClass::Inconclusive;
    return rep;
}

}  // namespace fragmenta

#include <catch2/catch_amalgamated.hpp>

#include <fragmenta/decompose.hpp>
#include <fragmenta/models.hpp>
#include <fragmenta/rng.hpp>
#include <fragmenta/sectors.hpp>

#include <map>

using namespace fragmenta;

namespace {

std::vector<Matrix> model_terms(const ModelSpec& m, unsigned L,
                                const std::vector<uint64_t>& members) {
    std::vector<Matrix> terms;
    for (unsigned i = 0; i + m.window() <= L; ++i)
        terms.push_back(sector_local_term(m, L, members, i));
    return terms;
}

Vector member_vector(const std::vector<uint64_t>& members, unsigned q, unsigned L,
                     const std::vector<std::pair<std::string, double>>& amps) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(members.size()));
    for (const auto& [s, c] : amps)
        v[static_cast<Eigen::Index>(member_pos(members, encode(word_from_string(s, q), q)))] = c;
    v.normalize();
    return v;
}

Matrix orthonormalize(const Matrix& A) {
    Eigen::HouseholderQR<Matrix> qr(A);
    return qr.householderQ() * Matrix::Identity(A.rows(), A.cols());
}

double subspace_angle(const Matrix& A, const Matrix& B) {
    Matrix Qa = orthonormalize(A), Qb = orthonormalize(B);
    return (Qa * Qa.transpose() - Qb * Qb.transpose()).norm();
}

QuantumDecomposition decompose_retry(const std::vector<Matrix>& terms,
                                     const Matrix& efs, uint64_t seed,
                                     const CouplingDist& dist = {}) {
    for (int attempt = 0; attempt < 5; ++attempt) {
        auto rng = derive_rng(seed, 7, static_cast<uint64_t>(attempt));
        try {
            return decompose_kq(terms, efs, rng, 1e-8, dist);
        } catch (const degeneracy_error&) {
        }
    }
    throw std::runtime_error("decompose_retry: persistent degeneracy");
}

}  // namespace

TEST_CASE("mobile flip sectors host exactly one frozen combination") {
    auto m = ModelSpec::asymmetric();
    const double gamma = m.amps[0] / m.amps[1];
    auto rules = m.rewrite_rules();
    for (unsigned L = 4; L <= 8; ++L) {
        auto cat = enumerate_sectors(rules, 2, L);
        for (uint64_t rep : cat.sector_reps) {
            if (cat.size_of(rep) < 2) continue;
            auto members = sector_members(cat, rep);
            Matrix efs = compute_efs(model_terms(m, L, members));
            REQUIRE(efs.cols() == 1);
            Vector ind = ind_construct(members, L, gamma);
            REQUIRE(std::abs(efs.col(0).dot(ind)) == Catch::Approx(1.0).margin(1e-10));
        }
    }
}

TEST_CASE("frozen amplitudes follow the alternating weight rule") {
    // L=4 sector of 0000: {0000, 0111, 1110}, weights (1, -g, -g)
    auto m = ModelSpec::asymmetric();
    auto cat = enumerate_sectors(m.rewrite_rules(), 2, 4);
    auto members = sector_members(cat, 0);
    REQUIRE(members == std::vector<uint64_t>{0b0000, 0b0111, 0b1110});
    const double g = 0.5;
    Vector ind = ind_construct(members, 4, g);
    Vector expect(3);
    expect << 1.0, -g, -g;
    expect.normalize();
    REQUIRE((ind - expect).norm() < 1e-12);
}

TEST_CASE("seven frozen states in the TL all-mobile sector at L=4") {
    auto m = ModelSpec::temperley_lieb();
    auto cat = enumerate_sectors(m.rewrite_rules(), 3, 4);
    auto members = sector_members(cat, 0);
    Matrix efs = compute_efs(model_terms(m, 4, members));
    REQUIRE(efs.cols() == 7);

    Matrix ref(static_cast<Eigen::Index>(members.size()), 7);
    ref.col(0) = member_vector(members, 3, 4, {{"0110", 1}, {"0220", -1}});
    ref.col(1) = member_vector(members, 3, 4, {{"1001", 1}, {"1221", -1}});
    ref.col(2) = member_vector(members, 3, 4, {{"2002", 1}, {"2112", -1}});
    ref.col(3) = member_vector(members, 3, 4,
                               {{"0000", 1}, {"0011", -1}, {"0110", -1},
                                {"1001", -1}, {"1100", -1}, {"1111", 1}});
    ref.col(4) = member_vector(members, 3, 4,
                               {{"0000", 1}, {"0022", -1}, {"0220", -1},
                                {"2002", -1}, {"2200", -1}, {"2222", 1}});
    ref.col(5) = member_vector(members, 3, 4,
                               {{"1111", 1}, {"1122", -1}, {"1221", -1},
                                {"2112", -1}, {"2211", -1}, {"2222", 1}});
    ref.col(6) = member_vector(members, 3, 4,
                               {{"0000", 1}, {"0011", -1}, {"0220", -1},
                                {"2200", -1}, {"2211", 1}});
    REQUIRE(subspace_angle(ref, efs) < 1e-8);
}

TEST_CASE("all-mobile sector splits at L=6, generic vs fine-tuned couplings") {
    auto cat = enumerate_sectors(ModelSpec::asymmetric().rewrite_rules(), 2, 6);
    auto members = sector_members(cat, 0);
    REQUIRE(members.size() == 8);

    auto ma = ModelSpec::asymmetric();
    auto ta = model_terms(ma, 6, members);
    auto qa = decompose_retry(ta, compute_efs(ta), 11);
    REQUIRE(qa.full_dims() == std::vector<Eigen::Index>{1, 7});

    auto mg = ModelSpec::ghz();
    auto tg = model_terms(mg, 6, members);
    Matrix efs_g = compute_efs(tg);
    auto qg = decompose_retry(tg, efs_g, 12);
    REQUIRE(qg.full_dims() == std::vector<Eigen::Index>{1, 3, 4});

    // charge resolution of the quantum part under global bit complement
    Matrix kq(static_cast<Eigen::Index>(members.size()), qg.d_q);
    Eigen::Index at = 0;
    for (const auto& b : qg.blocks) {
        kq.middleCols(at, b.dim()) = b.basis;
        at += b.dim();
    }
    Matrix X = symmetry_permutation(members,
                                    [](uint64_t idx) { return bit_complement_index(idx, 6); });
    auto charges = charge_resolve(orthonormalize(kq), X);
    REQUIRE(charges.size() == 2);
    std::vector<Eigen::Index> cd{charges[0].dim(), charges[1].dim()};
    std::sort(cd.begin(), cd.end());
    REQUIRE(cd == std::vector<Eigen::Index>{3, 4});
    for (const auto& c : charges)
        REQUIRE(std::abs(std::abs(c.charge.real()) - 1.0) < 1e-8);
}

TEST_CASE("cyclic shift charges split a shift-stable sector") {
    auto m = ModelSpec::cyclic();
    auto cat = enumerate_sectors(m.rewrite_rules(), 3, 6);
    bool found = false;
    for (uint64_t rep : cat.sector_reps) {
        if (cat.size_of(rep) < 6) continue;
        uint64_t img = digit_shift_index(rep, 3, 6);
        if (cat.root[img] != cat.root[rep]) continue;
        found = true;
        auto members = sector_members(cat, rep);
        auto terms = model_terms(m, 6, members);
        Matrix efs = compute_efs(terms);
        Matrix Z = symmetry_permutation(
            members, [](uint64_t idx) { return digit_shift_index(idx, 3, 6); });

        Matrix kq = efs.cols() == 0
                        ? Matrix(Matrix::Identity(members.size(), members.size()))
                        : project_out(efs);
        auto charges = charge_resolve(kq, Z);
        Eigen::Index total = 0;
        std::map<int, Eigen::Index> by_phase;
        for (const auto& c : charges) {
            REQUIRE(std::abs(std::abs(c.charge) - 1.0) < 1e-8);
            REQUIRE(std::abs(std::pow(c.charge, 3) - 1.0) < 1e-6);
            total += c.dim();
            by_phase[static_cast<int>(std::lround(std::arg(c.charge) * 3 / (2 * M_PI)))] +=
                c.dim();
        }
        REQUIRE(total == kq.cols());
        if (by_phase.count(1) || by_phase.count(-1)) {
            REQUIRE(by_phase[1] == by_phase[-1]);
        }
        // spectra inside a charge block come out real and complete
        auto rng = derive_rng(99, 3);
        auto sh = build_sector_hamiltonian(m, 6, members, rng);
        for (const auto& c : charges) {
            auto eigs = charge_block_spectrum(sh.H, c.basis);
            REQUIRE(static_cast<Eigen::Index>(eigs.size()) == c.dim());
        }
        break;
    }
    REQUIRE(found);
}

TEST_CASE("breakdown chain: seven-state sector with three frozen combinations") {
    BreakdownModel bm(3, 2);
    auto cat = bm.catalog();
    uint64_t rep = cat.root[3];
    auto members = sector_members(cat, rep);
    REQUIRE(members.size() == 7);

    std::vector<Matrix> terms;
    for (unsigned i = 0; i + 1 < bm.L; ++i) terms.push_back(bm.sector_bond_term(members, i));
    // the third frozen combination carries the couplings and is only
    // annihilated by the full Hamiltonian, not bond by bond
    Matrix total = terms[0] + terms[1];
    Matrix efs = compute_efs({total}, false);
    REQUIRE(efs.cols() == 3);
    REQUIRE((total * efs).norm() < 1e-8);

    // particle parity grades the sector; blocks are the +|lambda|/-|lambda|
    // pairs of the bipartite spectrum, closed under that parity
    Matrix kqb = project_out(efs);
    REQUIRE(kqb.cols() == 4);
    Spectrum s = sym_eig(kqb.transpose() * total * kqb);
    std::map<int64_t, int> pairs;
    for (double e : s.eigenvalues) ++pairs[std::llround(std::abs(e) * 1e9)];
    std::vector<int> dims;
    for (auto& [_, c] : pairs) dims.push_back(c);
    REQUIRE(dims == std::vector<int>{2, 2});
}

TEST_CASE("fragmentation classifier") {
    using P = FragmentationPoint;
    auto strong = classify_fragmentation({P{4, 3, 4, 10}, P{5, 5, 5, 20}, P{6, 8, 6, 40}});
    REQUIRE(strong.label == FragmentationClass::Strong);
    auto weak = classify_fragmentation({P{4, 2, 8, 10}, P{5, 2, 18, 20}, P{6, 2, 38, 40}});
    REQUIRE(weak.label == FragmentationClass::Weak);
    auto mixed = classify_fragmentation({P{4, 2, 4, 10}, P{5, 3, 12, 20}, P{6, 3, 30, 40}});
    REQUIRE(mixed.label == FragmentationClass::Inconclusive);
    REQUIRE_THROWS_AS(classify_fragmentation({P{4, 1, 1, 1}, P{5, 1, 1, 1}}),
                      std::invalid_argument);
}

TEST_CASE("block spectra are grouped into isospectral classes") {
    // GHZ L=6 all-mobile: blocks 3 and 4 are not isospectral
    auto cat = enumerate_sectors(ModelSpec::ghz().rewrite_rules(), 2, 6);
    auto members = sector_members(cat, 0);
    auto terms = model_terms(ModelSpec::ghz(), 6, members);
    auto qd = decompose_retry(terms, compute_efs(terms), 31);
    REQUIRE(qd.isospectral_classes.size() == qd.blocks.size());
    for (const auto& cls : qd.isospectral_classes) REQUIRE(cls.size() == 1);
}

#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "fragmenta/counting.hpp"
#include "fragmenta/models.hpp"
#include "fragmenta/reference_tables.hpp"
#include "fragmenta/sectors.hpp"

using namespace fragmenta;

TEST_CASE("fibonacci convention") {
    REQUIRE(fib(1) == 1);
    REQUIRE(fib(2) == 1);
    REQUIRE(fib(10) == 55);
}

TEST_CASE("closed-form sector size vs enumeration, q=2") {
    auto rules = ModelSpec::asymmetric().rewrite_rules();
    for (unsigned L = 4; L <= 12; ++L) {
        auto cat = enumerate_sectors(rules, 2, L);
        for (uint64_t idx = 0; idx < pow_u64(2, L); idx += 37) {
            auto nf = triplet_normal_form(decode(idx, 2, L));
            REQUIRE(BigInt(cat.size_of(cat.root[idx])) == dk_closed(2, nf.k, L));
        }
    }
}

TEST_CASE("closed-form sector size vs enumeration, q=3") {
    auto rules = ModelSpec::triplet_q3().rewrite_rules();
    for (unsigned L = 4; L <= 8; ++L) {
        auto cat = enumerate_sectors(rules, 3, L);
        for (uint64_t idx = 0; idx < pow_u64(3, L); idx += 101) {
            auto nf = triplet_normal_form(decode(idx, 3, L));
            REQUIRE(BigInt(cat.size_of(cat.root[idx])) == dk_closed(3, nf.k, L));
        }
    }
}

TEST_CASE("all-mobile sector sizes") {
    std::vector<BigInt> expect;
    for (auto v : tables::all_mobile_q2_prefix()) expect.emplace_back(v);
    for (unsigned k = 1; k <= 6; ++k) {
        REQUIRE(all_mobile_count(2, k) == expect[k - 1]);
        REQUIRE(all_mobile_count(2, k) == dk_closed(2, k, 3 * k));
    }
    for (unsigned k = 1; k <= 4; ++k)
        REQUIRE(all_mobile_count(3, k) == dk_closed(3, k, 3 * k));
}

TEST_CASE("frozen-state counts") {
    auto q2 = tables::frozen_q2_seq();
    auto q3 = tables::frozen_q3_seq();
    auto cy = tables::frozen_cyclic_seq();
    for (unsigned L = 1; L <= 9; ++L) {
        REQUIRE(frozen_closed(FrozenFamily::TripletQ2, L) == BigInt(q2[L - 1]));
        REQUIRE(frozen_closed(FrozenFamily::TripletQ3, L) == BigInt(q3[L - 1]));
        REQUIRE(frozen_closed(FrozenFamily::Cyclic, L) == BigInt(cy[L - 1]));
        REQUIRE(frozen_closed(FrozenFamily::TemperleyLieb, L) ==
                BigInt(3) * pow_u64(2, L - 1));
    }
    // recurrences against enumeration
    for (unsigned L = 4; L <= 8; ++L) {
        auto cat2 = enumerate_sectors(ModelSpec::asymmetric().rewrite_rules(), 2, L);
        REQUIRE(BigInt(frozen_sector_count(cat2)) ==
                frozen_closed(FrozenFamily::TripletQ2, L));
        auto cat3 = enumerate_sectors(ModelSpec::cyclic().rewrite_rules(), 3, L);
        REQUIRE(BigInt(frozen_sector_count(cat3)) ==
                frozen_closed(FrozenFamily::Cyclic, L));
        auto catT = enumerate_sectors(ModelSpec::temperley_lieb().rewrite_rules(), 3, L);
        REQUIRE(BigInt(frozen_sector_count(catT)) ==
                frozen_closed(FrozenFamily::TemperleyLieb, L));
    }
}

TEST_CASE("sector counts by family") {
    for (unsigned L = 4; L <= 12; ++L) {
        auto cat = enumerate_sectors(ModelSpec::asymmetric().rewrite_rules(), 2, L);
        REQUIRE(BigInt(cat.num_sectors()) == asym_total_sectors(L));
        BigInt mobile = 0, frozen = 0;
        for (uint32_t s : cat.sector_size) (s == 1 ? frozen : mobile) += 1;
        REQUIRE(mobile == asym_entangled_sectors(L));
        REQUIRE(frozen == asym_product_sectors(L));
    }
    // sector multiplicity per depth k
    auto cat9 = enumerate_sectors(ModelSpec::asymmetric().rewrite_rules(), 2, 9);
    std::map<unsigned, BigInt> per_k;
    for (uint32_t rep : cat9.sector_reps)
        if (cat9.size_of(rep) > 1)
            per_k[triplet_normal_form(decode(rep, 2, 9)).k] += 1;
    for (auto [k, n] : per_k) REQUIRE(n == triplet_sector_count(9, k));
}

TEST_CASE("standard module dimensions and sum rule") {
    REQUIRE(tl_standard_dim(6, 0) == 5);
    REQUIRE(tl_standard_dim(6, 2) == 9);
    REQUIRE(tl_standard_dim(6, 4) == 5);
    for (unsigned L = 5; L <= 9; ++L) {
        auto row = tables::singlet_chain_row(L);
        BigInt total = 0, blocks = 0;
        for (auto [j, mult] : row.modules) {
            total += BigInt(mult) * tl_standard_dim(L, j);
            blocks += mult;
        }
        REQUIRE(total == BigInt(row.d_q));
        REQUIRE(blocks == BigInt(row.n_irr));
    }
}

TEST_CASE("parity-resolved dimensions of the symmetric-point chain") {
    auto [minus, plus] = ghz_charge_dims(6);
    REQUIRE(minus + plus == quantum_dim(2, 6));
    REQUIRE(((minus == 3 && plus == 4) || (minus == 4 && plus == 3)));
    auto [m9, p9] = ghz_charge_dims(9);
    REQUIRE(m9 + p9 == quantum_dim(3, 9));
    REQUIRE((m9 == 19 || m9 == 18));
}

#include <catch2/catch_amalgamated.hpp>

#include <fragmenta/decompose.hpp>
#include <fragmenta/models.hpp>
#include <fragmenta/rng.hpp>
#include <fragmenta/sectors.hpp>
#include <fragmenta/spectral.hpp>

using namespace fragmenta;

namespace {

double curve_mean(const ReferenceCurve& c) {
    double m = 0.0;
    for (size_t i = 1; i < c.r.size(); ++i)
        m += 0.5 * (c.r[i] * c.pdf[i] + c.r[i - 1] * c.pdf[i - 1]) * (c.r[i] - c.r[i - 1]);
    return m / c.mass();
}

std::vector<double> goe_eigs(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Matrix H(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        H(i, i) = nd(rng);
        for (Eigen::Index j = i + 1; j < n; ++j) H(i, j) = H(j, i) = nd(rng) / std::sqrt(2.0);
    }
    Vector ev = sym_eigvals(H);
    return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> middle(const std::vector<double>& v, double keep) {
    size_t skip = static_cast<size_t>(v.size() * (1.0 - keep) / 2.0);
    return {v.begin() + skip, v.end() - skip};
}

}  // namespace

TEST_CASE("gap ratios of a sorted spectrum") {
    REQUIRE(gap_ratios({0.0, 1.0, 2.0, 3.0}) == std::vector<double>{1.0, 1.0});
    REQUIRE(gap_ratios({0.0, 1.0, 3.0}) == std::vector<double>{0.5});
    auto r = gap_ratios({0.0, 1e-14, 1.0, 2.0});
    REQUIRE(r == std::vector<double>{1.0});
    REQUIRE(gap_ratios({1.0}).empty());
}

TEST_CASE("two-spacing density is normalized with unit mean spacing") {
    REQUIRE(goe_h(0.0, 0.0) == Catch::Approx(1.0).margin(1e-6));
    double norm = detail::integrate([](double s) { return goe::p1(s); }, 0.0, 30.0);
    REQUIRE(norm == Catch::Approx(1.0).margin(1e-8));
    double mean = detail::integrate([](double s) { return s * goe::p1(s); }, 0.0, 30.0);
    REQUIRE(mean == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("closed-form tail integral of the two-spacing density") {
    for (double s : {0.3, 1.0, 2.5}) {
        for (double t : {0.0, 0.7, 1.8}) {
            double direct =
                detail::integrate([s](double v) { return goe::p2(s, v); }, t, t + 30.0);
            REQUIRE(goe::big_a(s, t) == Catch::Approx(direct).margin(1e-9));
        }
    }
}

TEST_CASE("tabulated f and g match direct quadrature") {
    GapTables tab;
    for (double s : {0.05, 0.4, 1.0, 1.7, 3.2}) {
        double f_direct = detail::integrate([](double u) { return goe::p1(u); }, s, 30.0);
        REQUIRE(tab.f(s) == Catch::Approx(f_direct).margin(1e-7));
        double g_direct =
            detail::integrate([s](double u) { return (u - s) * goe::p1(u); }, s, 30.0);
        REQUIRE(tab.g(s) == Catch::Approx(g_direct).margin(1e-6));
    }
    REQUIRE(tab.g(0.0) == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("single-spectrum ratio density from the closed form and from the joint") {
    auto c = goe_pr();
    REQUIRE(c.mass() == Catch::Approx(1.0).margin(1e-4));
    REQUIRE(curve_mean(c) == Catch::Approx(0.5359).margin(2e-3));
    MixedGoe one(1);
    for (double r : {0.15, 0.5, 0.85})
        REQUIRE(one.pr(r) == Catch::Approx(goe::pr(r)).margin(1e-4));
}

TEST_CASE("superposed-spectra ratio curves") {
    for (unsigned m : {1u, 2u, 3u}) {
        auto c = mgoe_pr(m, default_grid(101));
        REQUIRE(c.mass() == Catch::Approx(1.0).margin(2e-3));
    }
    double m1 = curve_mean(mgoe_pr(1, default_grid(101)));
    double m2 = curve_mean(mgoe_pr(2, default_grid(101)));
    double m3 = curve_mean(mgoe_pr(3, default_grid(101)));
    double mp = curve_mean(poisson_pr(default_grid(1001)));
    REQUIRE(mp == Catch::Approx(2.0 * std::log(2.0) - 1.0).margin(1e-4));
    REQUIRE(m1 > m2);
    REQUIRE(m2 > m3);
    REQUIRE(m3 > mp);
    REQUIRE(m2 == Catch::Approx(0.423).margin(0.01));
    REQUIRE(m3 == Catch::Approx(0.403).margin(0.01));

    REQUIRE_THROWS_AS(MixedGoe(0), std::invalid_argument);
    REQUIRE_THROWS_AS(MixedGoe(2, {0.9, 0.2}), std::invalid_argument);
}

TEST_CASE("Monte Carlo spacings recover the reference curves") {
    auto rng = derive_rng(1234, 0);

    std::vector<double> poisson_r;
    std::exponential_distribution<double> ed(1.0);
    std::vector<double> levels(60000);
    double acc = 0.0;
    for (auto& x : levels) x = (acc += ed(rng));
    poisson_r = gap_ratios(levels);
    REQUIRE(ks_distance(poisson_r, poisson_pr(default_grid(1001))) < 0.01);

    std::vector<double> goe_r;
    for (int k = 0; k < 60; ++k) {
        auto eigs = middle(goe_eigs(120, rng), 0.5);
        for (double r : gap_ratios(eigs)) goe_r.push_back(r);
    }
    REQUIRE(ks_distance(goe_r, goe_pr()) < 0.04);
    REQUIRE(ks_distance(goe_r, poisson_pr(default_grid(1001))) > 0.08);

    std::vector<double> two_r;
    for (int k = 0; k < 60; ++k) {
        auto a = goe_eigs(120, rng);
        auto b = goe_eigs(120, rng);
        a.insert(a.end(), b.begin(), b.end());
        std::sort(a.begin(), a.end());
        auto eigs = middle(a, 0.5);
        for (double r : gap_ratios(eigs)) two_r.push_back(r);
    }
    auto c2 = mgoe_pr(2, default_grid(101));
    REQUIRE(ks_distance(two_r, c2) < 0.05);
    REQUIRE(ks_distance(two_r, c2) < ks_distance(two_r, goe_pr()));
}

TEST_CASE("disorder ensemble over a sector is deterministic in the seed") {
    auto m = ModelSpec::asymmetric();
    auto cat = enumerate_sectors(m.rewrite_rules(), 2, 8);
    auto members = sector_members(cat, 0);
    std::vector<Matrix> terms;
    for (unsigned i = 0; i + 3 <= 8; ++i) terms.push_back(sector_local_term(m, 8, members, i));
    Matrix efs = compute_efs(terms);
    Matrix kq = project_out(efs);

    auto a = disorder_gap_ratios(terms, kq, 20, 9001, 4);
    auto b = disorder_gap_ratios(terms, kq, 20, 9001, 4);
    REQUIRE(a.r_values == b.r_values);
    REQUIRE(a.r_values.size() == 20 * (static_cast<size_t>(kq.cols()) - 2));
    double mass = 0.0;
    for (double v : a.hist) mass += v / double(a.bins);
    REQUIRE(mass == Catch::Approx(1.0).margin(1e-12));

    auto c = disorder_gap_ratios(terms, kq, 20, 9002, 4);
    REQUIRE(a.r_values != c.r_values);
}

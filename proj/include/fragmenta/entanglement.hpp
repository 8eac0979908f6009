#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "counting.hpp"
#include "group.hpp"

namespace fragmenta {

using Rational = boost::multiprecision::cpp_rational;

// D_c^gamma(ell) = sum over length-ell binary words reducing to c of
// gamma^{(2/3) N1(w)}; one appended character per DP step.
template <typename T>
std::unordered_map<std::string, T> boundary_label_dp(unsigned ell, T one_weight,
                                                     T g23) {
    std::unordered_map<std::string, T> cur;
    cur[""] = one_weight;
    for (unsigned step = 0; step < ell; ++step) {
        std::unordered_map<std::string, T> next;
        next.reserve(2 * cur.size());
        for (const auto& [g, wgt] : cur) {
            for (char c : {'0', '1'}) {
                std::string g2 = g;
                reduce_append(g2, c);
                T w2 = wgt;
                if (c == '1') w2 *= g23;
                next[g2] += w2;
            }
        }
        cur = std::move(next);
    }
    return cur;
}

inline std::unordered_map<std::string, double> sector_weight_dp(unsigned ell,
                                                                double gamma) {
    if (gamma <= 0.0) throw std::invalid_argument("sector_weight_dp: gamma must be > 0");
    return boundary_label_dp<double>(ell, 1.0, std::cbrt(gamma * gamma));
}

inline std::unordered_map<std::string, BigInt> sector_count_dp(unsigned ell) {
    return boundary_label_dp<BigInt>(ell, 1, 1);
}

struct SchmidtDistribution {
    unsigned L = 0, L_A = 0;
    std::string c_f;
    double gamma = 1.0;
    std::vector<std::string> labels;
    std::vector<double> weights;
    std::vector<Rational> exact;  // populated for gamma == 1
};

inline SchmidtDistribution schmidt_weights(unsigned L, unsigned L_A,
                                           const std::string& c_f, double gamma = 1.0) {
    if (L_A < 1 || L_A >= L) throw std::invalid_argument("schmidt_weights: bad cut");
    SchmidtDistribution d;
    d.L = L;
    d.L_A = L_A;
    d.c_f = reduce(c_f);
    d.gamma = gamma;
    const unsigned L_B = L - L_A;
    if (gamma == 1.0) {
        auto mA = sector_count_dp(L_A);
        auto mB = sector_count_dp(L_B);
        auto mT = sector_count_dp(L);
        auto it = mT.find(d.c_f);
        if (it == mT.end() || it->second <= 1)
            throw std::invalid_argument("schmidt_weights: frozen or empty sector");
        for (const auto& [cA, a] : mA) {
            auto jt = mB.find(multiply(inverse(cA), d.c_f));
            if (jt == mB.end()) continue;
            d.labels.push_back(cA);
            d.exact.emplace_back(a * jt->second, it->second);
            d.weights.push_back(d.exact.back().convert_to<double>());
        }
    } else {
        auto mA = sector_weight_dp(L_A, gamma);
        auto mB = sector_weight_dp(L_B, gamma);
        auto mT = sector_weight_dp(L, gamma);
        auto it = mT.find(d.c_f);
        if (it == mT.end())
            throw std::invalid_argument("schmidt_weights: empty sector");
        for (const auto& [cA, a] : mA) {
            auto jt = mB.find(multiply(inverse(cA), d.c_f));
            if (jt == mB.end()) continue;
            d.labels.push_back(cA);
            d.weights.push_back(a * jt->second / it->second);
        }
    }
    // deterministic order
    std::vector<size_t> perm(d.labels.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(),
              [&](size_t i, size_t j) { return d.labels[i] < d.labels[j]; });
    SchmidtDistribution out = d;
    for (size_t k = 0; k < perm.size(); ++k) {
        out.labels[k] = d.labels[perm[k]];
        out.weights[k] = d.weights[perm[k]];
        if (!d.exact.empty()) out.exact[k] = d.exact[perm[k]];
    }
    return out;
}

inline double shannon_entropy(const std::vector<double>& p, double log_base = 2.0) {
    double s = 0.0;
    for (double x : p)
        if (x > 0.0) s -= x * std::log(x);
    return s / std::log(log_base);
}

inline double efs_entropy(unsigned L, unsigned L_A, const std::string& c_f,
                          double gamma = 1.0, double log_base = 2.0) {
    return shannon_entropy(schmidt_weights(L, L_A, c_f, gamma).weights, log_base);
}

inline std::vector<std::pair<unsigned, double>> entropy_profile(unsigned L,
                                                                const std::string& c_f,
                                                                double gamma = 1.0,
                                                                double log_base = 2.0) {
    std::vector<std::pair<unsigned, double>> prof;
    for (unsigned cut = 1; cut < L; ++cut)
        prof.emplace_back(cut, efs_entropy(L, cut, c_f, gamma, log_base));
    return prof;
}

struct SqrtFit {
    double slope = 0.0;      // through-origin S = slope*sqrt(L)
    double r2 = 0.0;         // of the through-origin fit
    double free_slope = 0.0; // with intercept
    double intercept = 0.0;
};

inline SqrtFit fit_sqrt_scaling(const std::vector<std::pair<unsigned, double>>& pts) {
    if (pts.size() < 4) throw std::invalid_argument("fit_sqrt_scaling: need >= 4 sizes");
    double sxx = 0, sxy = 0, sx = 0, sy = 0, syy = 0;
    const auto n = static_cast<double>(pts.size());
    for (const auto& [L, S] : pts) {
        double x = std::sqrt(double(L));
        sxx += x * x;
        sxy += x * S;
        sx += x;
        sy += S;
        syy += S * S;
    }
    SqrtFit f;
    f.slope = sxy / sxx;
    f.free_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    f.intercept = (sy - f.free_slope * sx) / n;
    double ss_res = 0, ss_tot = 0, mean = sy / n;
    for (const auto& [L, S] : pts) {
        double pred = f.slope * std::sqrt(double(L));
        ss_res += (S - pred) * (S - pred);
        ss_tot += (S - mean) * (S - mean);
    }
    f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

struct BridgeStats {
    unsigned L = 0;
    std::string c_f;
    uint64_t sector_size = 0;
    std::vector<double> mean_depth;  // index t = 0..L
    std::vector<double> sd_depth;
    double sigma_fit = 0.0;  // of mean depth vs sigma*sqrt(2 t (L-t) / (pi L))
};

inline BridgeStats sample_bridge_walks(unsigned L, const std::string& c_f,
                                       size_t n_samples, std::mt19937_64& rng) {
    if (L > 26) throw std::invalid_argument("sample_bridge_walks: L too large");
    const std::string target = reduce(c_f);
    std::vector<uint32_t> sector;
    for (uint64_t idx = 0; idx < (1ULL << L); ++idx) {
        std::string g;
        for (unsigned i = 0; i < L; ++i)
            reduce_append(g, ((idx >> (L - 1 - i)) & 1) ? '1' : '0');
        if (g == target) sector.push_back(static_cast<uint32_t>(idx));
    }
    BridgeStats bs;
    bs.L = L;
    bs.c_f = target;
    bs.sector_size = sector.size();
    if (sector.empty()) throw std::invalid_argument("sample_bridge_walks: empty sector");

    std::vector<double> sum(L + 1, 0.0), sum2(L + 1, 0.0);
    std::uniform_int_distribution<size_t> pick(0, sector.size() - 1);
    for (size_t s = 0; s < n_samples; ++s) {
        uint32_t idx = sector[pick(rng)];
        std::string g;
        for (unsigned t = 1; t <= L; ++t) {
            reduce_append(g, ((idx >> (L - t)) & 1) ? '1' : '0');
            sum[t] += double(g.size());
            sum2[t] += double(g.size()) * double(g.size());
        }
    }
    bs.mean_depth.resize(L + 1, 0.0);
    bs.sd_depth.resize(L + 1, 0.0);
    double num = 0, den = 0;
    for (unsigned t = 0; t <= L; ++t) {
        if (t > 0) {
            bs.mean_depth[t] = sum[t] / double(n_samples);
            double var = sum2[t] / double(n_samples) - bs.mean_depth[t] * bs.mean_depth[t];
            bs.sd_depth[t] = var > 0 ? std::sqrt(var) : 0.0;
        }
        double g = std::sqrt(2.0 * t * (L - t) / (M_PI * L));
        num += bs.mean_depth[t] * g;
        den += g * g;
    }
    bs.sigma_fit = num / den;
    return bs;
}

}  // namespace fragmenta

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "linalg.hpp"
#include "models.hpp"
#include "rng.hpp"

namespace fragmenta {

// r_n = min / max of adjacent spacings after collapsing near-degenerate
// levels (tolerance relative to the spectral span).
inline std::vector<double> gap_ratios(const std::vector<double>& eigs,
                                      double dedup_tol = 1e-10) {
    if (eigs.size() < 2) return {};
    const double span = eigs.back() - eigs.front();
    const double tol = dedup_tol * std::max(span, 1e-300);
    std::vector<double> distinct{eigs.front()};
    for (double e : eigs)
        if (e - distinct.back() > tol) distinct.push_back(e);
    std::vector<double> r;
    for (size_t n = 2; n < distinct.size(); ++n) {
        double d1 = distinct[n - 1] - distinct[n - 2];
        double d2 = distinct[n] - distinct[n - 1];
        r.push_back(std::min(d1, d2) / std::max(d1, d2));
    }
    return r;
}

// joint density of the two spacings around a level of a single unfolded
// GOE spectrum; normalized so the double integral is 1 and the mean
// spacing is 1 (prefactor fixed by those two conditions).
namespace goe {

constexpr double kC = 9.0 / (4.0 * M_PI);
const double kNorm = 2187.0 / (32.0 * M_PI * M_PI * M_PI);

inline double p2(double s, double t) {
    if (s <= 0.0 || t <= 0.0) return 0.0;
    return kNorm * s * t * (s + t) * std::exp(-kC * (s * s + s * t + t * t));
}

// A(s,t) = int_t^inf p2(s,v) dv, closed form via erfc
inline double big_a(double s, double t) {
    if (s <= 0.0) return 0.0;
    const double a = t + 0.5 * s;
    const double sqc = std::sqrt(kC);
    const double spi = std::sqrt(M_PI / kC);
    double tail = (a / (2.0 * kC)) * std::exp(-kC * a * a) +
                  (0.25 / kC - 0.125 * s * s) * spi * std::erfc(sqc * a);
    return kNorm * s * std::exp(-0.75 * kC * s * s) * tail;
}

inline double p1(double s) { return big_a(s, 0.0); }

// min/max gap-ratio density of a single GOE spectrum
inline double pr(double r) {
    if (r < 0.0 || r > 1.0) return 0.0;
    double q = 1.0 + r + r * r;
    return 6.75 * r * (1.0 + r) / (q * q * std::sqrt(q));
}

}  // namespace goe

// f(s) = int_s^inf p1, g(s) = int_s^inf (u-s) p1(u) du, on a dense grid
// integrated downward from the far tail; cubic Hermite evaluation.
class GapTables {
  public:
    explicit GapTables(double s_max = 10.0, size_t n = 5000)
        : s_max_(s_max), h_(s_max / double(n)), f_(n + 1), g_(n + 1) {
        f_[n] = 0.0;
        g_[n] = 0.0;
        for (size_t i = n; i-- > 0;) {
            double s1 = double(i + 1) * h_, s0 = double(i) * h_, sm = s0 + 0.5 * h_;
            // RK4 downward for f' = -p1, g' = -f
            double fk1 = goe::p1(s1), gk1 = f_[i + 1];
            double fk2 = goe::p1(sm), gk2 = f_[i + 1] + 0.5 * h_ * fk1;
            double fk3 = fk2, gk3 = f_[i + 1] + 0.5 * h_ * fk2;
            double fk4 = goe::p1(s0), gk4 = f_[i + 1] + h_ * fk3;
            f_[i] = f_[i + 1] + (h_ / 6.0) * (fk1 + 2 * fk2 + 2 * fk3 + fk4);
            g_[i] = g_[i + 1] + (h_ / 6.0) * (gk1 + 2 * gk2 + 2 * gk3 + gk4);
        }
    }

    double f(double s) const { return eval(f_, s, [](double x) { return -goe::p1(x); }); }

    double g(double s) const {
        return eval(g_, s, [this](double x) { return -f(x); });
    }

  private:
    template <typename D>
    double eval(const std::vector<double>& tab, double s, D deriv) const {
        if (s <= 0.0) return tab[0];
        if (s >= s_max_) return 0.0;
        size_t i = static_cast<size_t>(s / h_);
        if (i >= tab.size() - 1) i = tab.size() - 2;
        double x0 = double(i) * h_, u = (s - x0) / h_;
        double y0 = tab[i], y1 = tab[i + 1];
        double d0 = deriv(x0) * h_, d1 = deriv(x0 + h_) * h_;
        double u2 = u * u, u3 = u2 * u;
        return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * d0 +
               (-2 * u3 + 3 * u2) * y1 + (u3 - u2) * d1;
    }

    double s_max_, h_;
    std::vector<double> f_, g_;
};

namespace detail {

// adaptive Simpson on [a,b]
inline double adapt_simpson(const std::function<double(double)>& fn, double a, double b,
                            double fa, double fm, double fb, double whole, double tol,
                            int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = fn(lm), frm = fn(rm);
    double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adapt_simpson(fn, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adapt_simpson(fn, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// pre-split into panels so localized integrands are not missed by the
// sparse first Simpson estimate
inline double integrate(const std::function<double(double)>& fn, double a, double b,
                        double tol = 1e-10, int depth = 24, int panels = 16) {
    double total = 0.0, w = (b - a) / double(panels);
    for (int p = 0; p < panels; ++p) {
        double pa = a + p * w, pb = pa + w, pm = 0.5 * (pa + pb);
        double fa = fn(pa), fm = fn(pm), fb = fn(pb);
        double whole = w / 6.0 * (fa + 4 * fm + fb);
        total += adapt_simpson(fn, pa, pb, fa, fm, fb, whole, tol / panels, depth);
    }
    return total;
}

}  // namespace detail

// h(s,t) = int_s^inf int_t^inf p2
inline double goe_h(double s, double t, double tol = 1e-11) {
    double hi = std::max(10.0, s + 10.0);
    if (s >= hi) return 0.0;
    return detail::integrate([t](double u) { return goe::big_a(u, t); }, s, hi, tol);
}

struct ReferenceCurve {
    std::string name;
    std::vector<double> r;    // grid on [0,1]
    std::vector<double> pdf;  // P(r)
    std::vector<double> cdf;  // cumulative at grid points (trapezoid)

    void build_cdf() {
        cdf.assign(r.size(), 0.0);
        for (size_t i = 1; i < r.size(); ++i)
            cdf[i] = cdf[i - 1] + 0.5 * (pdf[i] + pdf[i - 1]) * (r[i] - r[i - 1]);
    }

    double cdf_at(double x) const {
        if (x <= r.front()) return 0.0;
        if (x >= r.back()) return cdf.back();
        auto it = std::upper_bound(r.begin(), r.end(), x);
        size_t i = static_cast<size_t>(it - r.begin());
        double u = (x - r[i - 1]) / (r[i] - r[i - 1]);
        return cdf[i - 1] + u * (cdf[i] - cdf[i - 1]);
    }

    double mass() const { return cdf.empty() ? 0.0 : cdf.back(); }
};

inline std::vector<double> default_grid(size_t n = 201) {
    std::vector<double> g(n);
    for (size_t i = 0; i < n; ++i) g[i] = double(i) / double(n - 1);
    return g;
}

inline ReferenceCurve poisson_pr(const std::vector<double>& grid = default_grid()) {
    ReferenceCurve c;
    c.name = "poisson";
    c.r = grid;
    for (double x : grid) c.pdf.push_back(2.0 / ((1.0 + x) * (1.0 + x)));
    c.build_cdf();
    return c;
}

inline ReferenceCurve goe_pr(const std::vector<double>& grid = default_grid()) {
    ReferenceCurve c;
    c.name = "goe";
    c.r = grid;
    for (double x : grid) c.pdf.push_back(goe::pr(x));
    c.build_cdf();
    return c;
}

// gap-ratio density of m superposed GOE spectra with unresolved labels
class MixedGoe {
  public:
    MixedGoe(unsigned m, std::vector<double> mu = {})
        : m_(m), mu_(std::move(mu)) {
        if (m_ == 0) throw std::invalid_argument("MixedGoe: m must be >= 1");
        if (mu_.empty()) mu_.assign(m_, 1.0 / double(m_));
        if (mu_.size() != m_) throw std::invalid_argument("MixedGoe: bad intensities");
        double tot = 0.0;
        for (double w : mu_) {
            if (w <= 0.0) throw std::invalid_argument("MixedGoe: intensities must be > 0");
            tot += w;
        }
        if (std::abs(tot - 1.0) > 1e-12)
            throw std::invalid_argument("MixedGoe: intensities must sum to 1");
    }

    // joint density of the two spacings around a mixed-spectrum level:
    // d^2/dxdy of sum_i mu_i h(mu_i x, mu_i y) prod_{j!=i} g(mu_j (x+y))
    double joint(double x, double y) const {
        const double s = x + y;
        std::vector<double> gv(m_), fv(m_), pv(m_);
        for (unsigned j = 0; j < m_; ++j) {
            gv[j] = tables_.g(mu_[j] * s);
            fv[j] = tables_.f(mu_[j] * s);
            pv[j] = goe::p1(mu_[j] * s);
        }
        double total = 0.0;
        for (unsigned i = 0; i < m_; ++i) {
            double G = 1.0, G1 = 0.0, G2 = 0.0;
            for (unsigned j = 0; j < m_; ++j) {
                if (j == i) continue;
                double others = 1.0;
                for (unsigned l = 0; l < m_; ++l)
                    if (l != i && l != j) others *= gv[l];
                G1 += -mu_[j] * fv[j] * others;
                G2 += mu_[j] * mu_[j] * pv[j] * others;
                for (unsigned l = j + 1; l < m_; ++l) {
                    if (l == i) continue;
                    double rest = 1.0;
                    for (unsigned p = 0; p < m_; ++p)
                        if (p != i && p != j && p != l) rest *= gv[p];
                    G2 += 2.0 * mu_[j] * mu_[l] * fv[j] * fv[l] * rest;
                }
                G *= gv[j];
            }
            const double mi = mu_[i];
            double hv = goe_h(mi * x, mi * y);
            double av = goe::big_a(mi * x, mi * y);
            double bv = goe::big_a(mi * y, mi * x);
            total += mi * (mi * mi * goe::p2(mi * x, mi * y) * G -
                           mi * (av + bv) * G1 + hv * G2);
        }
        return total;
    }

    // P_m(r) = 2 int_0^inf x joint(x, r x) dx, x = u/(1-u)
    double pr(double r, double tol = 1e-9) const {
        if (r < 0.0 || r > 1.0) return 0.0;  // P_m(0) > 0 for m >= 2
        auto fn = [this, r](double u) {
            if (u <= 0.0 || u >= 1.0) return 0.0;
            double x = u / (1.0 - u);
            double jac = 1.0 / ((1.0 - u) * (1.0 - u));
            return x * joint(x, r * x) * jac;
        };
        return 2.0 * detail::integrate(fn, 0.0, 1.0, tol, 20);
    }

    ReferenceCurve curve(const std::vector<double>& grid = default_grid()) const {
        ReferenceCurve c;
        c.name = std::to_string(m_) + "goe";
        c.r = grid;
        for (double x : grid) c.pdf.push_back(pr(x));
        c.build_cdf();
        return c;
    }

  private:
    unsigned m_;
    std::vector<double> mu_;
    GapTables tables_;
};

inline ReferenceCurve mgoe_pr(unsigned m, const std::vector<double>& grid = default_grid(),
                              std::vector<double> mu = {}) {
    return MixedGoe(m, std::move(mu)).curve(grid);
}

// two-sided KS statistic of a sample against a reference CDF
inline double ks_distance(std::vector<double> sample, const ReferenceCurve& ref) {
    if (sample.empty()) throw std::invalid_argument("ks_distance: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = double(sample.size());
    double d = 0.0;
    for (size_t i = 0; i < sample.size(); ++i) {
        double c = ref.cdf_at(sample[i]) / ref.mass();
        d = std::max(d, std::abs(double(i + 1) / n - c));
        d = std::max(d, std::abs(double(i) / n - c));
    }
    return d;
}

struct DisorderStats {
    std::vector<double> r_values;
    std::vector<double> hist;  // normalized density over equal-width bins on [0,1]
    size_t n_realizations = 0;
    size_t bins = 50;

    std::vector<double> bin_centers() const {
        std::vector<double> c(bins);
        for (size_t i = 0; i < bins; ++i) c[i] = (double(i) + 0.5) / double(bins);
        return c;
    }
};

// disorder ensemble of H = sum_i J_i h_i restricted to an invariant
// subspace; gap ratios of the distinct eigenvalues pooled over realizations
inline DisorderStats disorder_gap_ratios(const std::vector<Matrix>& terms,
                                         const Matrix& subspace, size_t n_real,
                                         uint64_t seed, uint64_t lane, size_t bins = 50,
                                         const CouplingDist& dist = {},
                                         double dedup_tol = 1e-10) {
    std::vector<Matrix> rt;
    rt.reserve(terms.size());
    for (const Matrix& t : terms) rt.push_back(subspace.transpose() * t * subspace);
    DisorderStats out;
    out.bins = bins;
    out.n_realizations = n_real;
    for (size_t k = 0; k < n_real; ++k) {
        auto rng = derive_rng(seed, lane, k);
        Matrix H = Matrix::Zero(rt[0].rows(), rt[0].cols());
        for (const Matrix& t : rt) H += dist.draw(rng) * t;
        Vector ev = sym_eigvals(H);
        std::vector<double> eigs(ev.data(), ev.data() + ev.size());
        for (double r : gap_ratios(eigs, dedup_tol)) out.r_values.push_back(r);
    }
    out.hist.assign(bins, 0.0);
    for (double r : out.r_values) {
        size_t b = std::min(bins - 1, static_cast<size_t>(r * double(bins)));
        out.hist[b] += 1.0;
    }
    if (!out.r_values.empty())
        for (double& v : out.hist) v *= double(bins) / double(out.r_values.size());
    return out;
}

}  // namespace fragmenta

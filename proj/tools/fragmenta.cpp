#include <CLI11.hpp>
#include <json.hpp>

#include <fragmenta/counting.hpp>
#include <fragmenta/decompose.hpp>
#include <fragmenta/entanglement.hpp>
#include <fragmenta/models.hpp>
#include <fragmenta/pipeline.hpp>
#include <fragmenta/reference_tables.hpp>
#include <fragmenta/rng.hpp>
#include <fragmenta/sectors.hpp>
#include <fragmenta/spectral.hpp>
#include <fragmenta/word.hpp>

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using json = nlohmann::json;
using namespace fragmenta;

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_text(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << content;
}

uint64_t fnv1a64(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

struct ModelArgs {
    std::string name = "asymmetric";
    double a = -1, b = -1, alpha = -1, beta = -1;
    std::vector<double> amps;
};

ModelSpec make_model(const ModelArgs& ma) {
    if (ma.name == "asymmetric") {
        if (ma.a > 0 && ma.b > 0) return ModelSpec::asymmetric(ma.a, ma.b);
        return ModelSpec::asymmetric();
    }
    if (ma.name == "ghz") return ModelSpec::ghz();
    if (ma.name == "triplet-q3") {
        if (!ma.amps.empty()) return ModelSpec::triplet_q3(ma.amps);
        return ModelSpec::triplet_q3();
    }
    if (ma.name == "triplet-q3-symmetric") return ModelSpec::triplet_q3_symmetric();
    if (ma.name == "cyclic") {
        if (ma.alpha > 0 && ma.beta > 0) return ModelSpec::cyclic(ma.alpha, ma.beta);
        return ModelSpec::cyclic();
    }
    if (ma.name == "cyclic-d3") return ModelSpec::cyclic_d3();
    if (ma.name == "tl") return ModelSpec::temperley_lieb();
    throw CLI::ValidationError("--model", "unknown model: " + ma.name);
}

void add_model_options(CLI::App* cmd, ModelArgs& ma) {
    cmd->add_option("--model", ma.name,
                    "asymmetric|ghz|triplet-q3|triplet-q3-symmetric|cyclic|cyclic-d3|tl");
    cmd->add_option("--a", ma.a, "triplet amplitude a");
    cmd->add_option("--b", ma.b, "triplet amplitude b");
    cmd->add_option("--alpha", ma.alpha, "cyclic even-orientation weight");
    cmd->add_option("--beta", ma.beta, "cyclic odd-orientation weight");
    cmd->add_option("--amps", ma.amps, "q=3 triplet amplitudes")->expected(3);
}

std::string rep_string(uint64_t rep, unsigned q, unsigned L) {
    return word_to_string(decode(rep, q, L));
}

json sector_entry(const ModelSpec& m, unsigned L, uint64_t rep, uint64_t size) {
    json e;
    e["rep"] = rep_string(rep, m.q, L);
    e["size"] = size;
    e["frozen"] = (size == 1);
    Word w = decode(rep, m.q, L);
    if (m.kind == ModelKind::TripletFlip) {
        auto nf = triplet_normal_form(w);
        e["k"] = nf.k;
        e["remainder"] = word_to_string(nf.remainder);
    } else if (m.kind == ModelKind::CyclicQutrit) {
        auto inv = cyclic_invariants(w);
        e["invariants"] = {{"n0", inv.n0}, {"n1", inv.n1}, {"n2", inv.n2}, {"D", inv.D}};
    }
    return e;
}

json catalog_json(const ModelSpec& m, const std::string& name, unsigned L) {
    auto cat = enumerate_sectors(m.rewrite_rules(), m.q, L);
    json j;
    j["model"] = name;
    j["L"] = L;
    j["q"] = m.q;
    j["histogram"] = json::array();
    for (const auto& [size, count] : cat.histogram())
        j["histogram"].push_back({size, count});
    j["sectors"] = json::array();
    for (uint64_t rep : cat.sector_reps)
        j["sectors"].push_back(sector_entry(m, L, rep, cat.size_of(rep)));
    return j;
}

std::string pattern_string(const std::vector<Eigen::Index>& dims) {
    // run-length form, e.g. 1^25+6^2+24
    std::ostringstream os;
    size_t i = 0;
    bool first = true;
    while (i < dims.size()) {
        size_t j = i;
        while (j < dims.size() && dims[j] == dims[i]) ++j;
        if (!first) os << "+";
        os << dims[i];
        if (j - i > 1) os << "^" << (j - i);
        first = false;
        i = j;
    }
    return os.str();
}

json decomposition_json(const ModelSpec& m, unsigned L, const SectorDecomposition& sd) {
    json e;
    e["sector"] = rep_string(sd.rep, m.q, L);
    e["D_cl"] = sd.d_cl;
    e["efs_dim"] = sd.d_efs;
    e["N_irr"] = sd.n_irr();
    e["D_max"] = sd.d_max();
    e["blocks"] = json::array();
    std::map<Eigen::Index, int> class_of;
    for (auto d : sd.block_dims) {
        auto it = class_of.emplace(d, static_cast<int>(class_of.size())).first;
        e["blocks"].push_back({{"dim", d}, {"class_id", it->second}});
    }
    e["pattern"] = pattern_string(sd.full_pattern);
    if (!sd.charges.empty()) {
        e["charges"] = json::array();
        for (const auto& c : sd.charges)
            e["charges"].push_back({{"re", c.charge.real()},
                                    {"im", c.charge.imag()},
                                    {"dim", c.dim}});
    }
    return e;
}

// ---- subcommand bodies ----

int cmd_sectors(const ModelArgs& ma, unsigned L, const std::string& out) {
    ModelSpec m = make_model(ma);
    write_text(out, catalog_json(m, ma.name, L).dump(2) + "\n");
    return 0;
}

int cmd_counts(const std::string& which, unsigned q, unsigned k, unsigned lo, unsigned hi,
               const std::string& out) {
    std::ostringstream os;
    if (which == "frozen-q2" || which == "frozen-q3" || which == "frozen-cyclic" ||
        which == "frozen-tl") {
        FrozenFamily fam = which == "frozen-q2"     ? FrozenFamily::TripletQ2
                           : which == "frozen-q3"   ? FrozenFamily::TripletQ3
                           : which == "frozen-cyclic" ? FrozenFamily::Cyclic
                                                      : FrozenFamily::TemperleyLieb;
        os << "L,count\n";
        for (unsigned L = lo; L <= hi; ++L)
            os << L << "," << frozen_closed(fam, L).str() << "\n";
    } else if (which == "all-mobile") {
        os << "k,count\n";
        for (unsigned kk = lo; kk <= hi; ++kk)
            os << kk << "," << all_mobile_count(q, kk).str() << "\n";
    } else if (which == "dk") {
        os << "L,count\n";
        for (unsigned L = lo; L <= hi; ++L)
            os << L << "," << dk_closed(q, k, L).str() << "\n";
    } else if (which == "sector-totals") {
        os << "L,frozen,mobile,total\n";
        for (unsigned L = lo; L <= hi; ++L)
            os << L << "," << asym_product_sectors(L).str() << ","
               << asym_entangled_sectors(L).str() << "," << asym_total_sectors(L).str()
               << "\n";
    } else {
        throw CLI::ValidationError("--which", "unknown counting function: " + which);
    }
    write_text(out, os.str());
    return 0;
}

std::vector<uint64_t> resolve_sector(const ModelSpec& m, unsigned L,
                                     const std::string& rep_word) {
    auto cat = enumerate_sectors(m.rewrite_rules(), m.q, L);
    uint64_t idx;
    if (rep_word.empty()) {
        idx = 0;
        for (uint64_t rep : cat.sector_reps)
            if (cat.size_of(rep) > cat.size_of(idx)) idx = rep;
    } else {
        idx = encode(word_from_string(rep_word, m.q), m.q);
    }
    return sector_members(cat, idx);
}

int cmd_hamiltonian(const ModelArgs& ma, unsigned L, const std::string& rep_word,
                    uint64_t seed, const std::string& out) {
    ModelSpec m = make_model(ma);
    auto members = resolve_sector(m, L, rep_word);
    auto rng = derive_rng(seed, lane::kHamiltonian, members.front());
    auto sh = build_sector_hamiltonian(m, L, members, rng);
    const auto dim = static_cast<uint64_t>(sh.H.rows());

    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out);
    f.write(reinterpret_cast<const char*>(&dim), sizeof(dim));
    for (Eigen::Index r = 0; r < sh.H.rows(); ++r)
        for (Eigen::Index c = 0; c < sh.H.cols(); ++c) {
            double v = sh.H(r, c);
            f.write(reinterpret_cast<const char*>(&v), sizeof(v));
        }
    f.close();

    json meta;
    meta["model"] = ma.name;
    meta["L"] = L;
    meta["rep"] = rep_string(members.front(), m.q, L);
    meta["seed"] = seed;
    meta["dim"] = dim;
    meta["couplings"] = sh.couplings;
    write_text(out + ".json", meta.dump(2) + "\n");
    return 0;
}

json decompose_json(const ModelSpec& m, const std::string& name, unsigned L,
                    const std::string& sector_sel, uint64_t seed) {
    auto cat = enumerate_sectors(m.rewrite_rules(), m.q, L);
    json j;
    j["model"] = name;
    j["L"] = L;
    j["seed"] = seed;
    j["sectors"] = json::array();
    uint64_t ord = 0;
    for (uint64_t rep : cat.sector_reps) {
        uint64_t my_ord = ord++;
        if (sector_sel == "all") {
            if (cat.size_of(rep) < 2) continue;
        } else if (sector_sel.rfind("rep=", 0) == 0) {
            uint64_t want = encode(word_from_string(sector_sel.substr(4), m.q), m.q);
            if (cat.root[want] != cat.root[rep]) continue;
        } else {
            throw CLI::ValidationError("--sector", "expected all or rep=<word>");
        }
        auto members = sector_members(cat, rep);
        auto sd = analyze_sector(m, L, members, seed, my_ord);
        j["sectors"].push_back(decomposition_json(m, L, sd));
    }
    return j;
}

int cmd_decompose(const ModelArgs& ma, unsigned L, const std::string& sector_sel,
                  uint64_t seed, const std::string& out) {
    ModelSpec m = make_model(ma);
    write_text(out, decompose_json(m, ma.name, L, sector_sel, seed).dump(2) + "\n");
    return 0;
}

std::string entropy_csv(unsigned L, unsigned cut, const std::string& sector, double gamma,
                        const std::string& base) {
    const double lb = base == "e" ? std::exp(1.0) : 2.0;
    const std::string c_f = sector == "e" ? "" : sector;
    std::ostringstream os;
    os << "cut,entropy\n";
    if (cut > 0) {
        os << cut << "," << fmt(efs_entropy(L, cut, c_f, gamma, lb)) << "\n";
    } else {
        for (auto [c, s] : entropy_profile(L, c_f, gamma, lb))
            os << c << "," << fmt(s) << "\n";
    }
    return os.str();
}

int cmd_entropy(unsigned L, unsigned cut, const std::string& sector, double gamma,
                const std::string& base, const std::string& out) {
    write_text(out, entropy_csv(L, cut, sector, gamma, base));
    return 0;
}

int cmd_bridge(unsigned L, const std::string& sector, size_t samples, uint64_t seed,
               const std::string& out) {
    const std::string c_f = sector == "e" ? "" : sector;
    auto rng = derive_rng(seed, lane::kBridge, 0);
    auto bs = sample_bridge_walks(L, c_f, samples, rng);
    std::ostringstream os;
    os << "t,mean_depth,sigma\n";
    for (unsigned t = 0; t <= L; ++t)
        os << t << "," << fmt(bs.mean_depth[t]) << "," << fmt(bs.sd_depth[t]) << "\n";
    write_text(out, os.str());
    json summary;
    summary["L"] = L;
    summary["sector"] = sector;
    summary["sector_size"] = bs.sector_size;
    summary["sigma_fit"] = bs.sigma_fit;
    if (!out.empty() && out != "-") std::cout << summary.dump(2) << "\n";
    return 0;
}

struct SpectraResult {
    std::string csv;
    json summary;
};

SpectraResult run_spectra(const ModelSpec& m, const std::string& name, unsigned L,
                          const std::string& rep_word, size_t realizations, uint64_t seed,
                          size_t bins) {
    if (L >= 18)
        std::cerr << "fragmenta: L >= 18 spectra may take hours at this matrix size\n";
    auto members = resolve_sector(m, L, rep_word);
    auto terms = sector_terms(m, L, members);
    Matrix efs = compute_efs(terms);
    Matrix kq = efs.cols() == 0
                    ? Matrix(Matrix::Identity(members.size(), members.size()))
                    : project_out(efs);
    auto stats = disorder_gap_ratios(terms, kq, realizations, seed, lane::kSpectra, bins,
                                     m.couplings);

    auto grid = default_grid();
    std::vector<ReferenceCurve> refs{goe_pr(grid), mgoe_pr(2, grid), mgoe_pr(3, grid),
                                     poisson_pr(grid)};
    std::ostringstream os;
    os << "bin_center,density,goe,2goe,3goe,poisson\n";
    auto centers = stats.bin_centers();
    MixedGoe two(2), three(3);
    for (size_t i = 0; i < centers.size(); ++i) {
        double r = centers[i];
        os << fmt(r) << "," << fmt(stats.hist[i]) << "," << fmt(goe::pr(r)) << ","
           << fmt(two.pr(r)) << "," << fmt(three.pr(r)) << ","
           << fmt(2.0 / ((1.0 + r) * (1.0 + r))) << "\n";
    }

    SpectraResult res;
    res.csv = os.str();
    res.summary["model"] = name;
    res.summary["L"] = L;
    res.summary["rep"] = rep_string(members.front(), m.q, L);
    res.summary["dim"] = members.size();
    res.summary["realizations"] = realizations;
    res.summary["seed"] = seed;
    res.summary["n_ratios"] = stats.r_values.size();
    for (const auto& ref : refs)
        res.summary["ks"][ref.name] = ks_distance(stats.r_values, ref);
    return res;
}

int cmd_spectra(const ModelArgs& ma, unsigned L, const std::string& rep_word,
                size_t realizations, uint64_t seed, size_t bins, const std::string& out) {
    ModelSpec m = make_model(ma);
    auto res = run_spectra(m, ma.name, L, rep_word, realizations, seed, bins);
    write_text(out, res.csv);
    if (!out.empty() && out != "-")
        write_text(out + ".json", res.summary.dump(2) + "\n");
    else
        std::cout << res.summary.dump(2) << "\n";
    return 0;
}

// ---- table reproduction ----

struct CellDiff {
    std::string cell;
    std::string expected, got;
    bool pass;
};

void report(std::vector<CellDiff>& diffs, const std::string& cell,
            const std::string& expected, const std::string& got) {
    diffs.push_back({cell, expected, got, expected == got});
}

std::string expected_pattern(const tables::SectorRow& row, bool symmetric) {
    const auto& v = (symmetric && !row.symmetric.empty()) ? row.symmetric : row.generic;
    std::vector<Eigen::Index> dims(v.begin(), v.end());
    std::sort(dims.begin(), dims.end());
    return pattern_string(dims);
}

std::vector<CellDiff> reproduce_sector_table(const ModelSpec& generic,
                                             const ModelSpec& symmetric, unsigned L,
                                             const std::vector<tables::SectorRow>& rows,
                                             uint64_t seed) {
    std::vector<CellDiff> diffs;
    auto cat = enumerate_sectors(generic.rewrite_rules(), generic.q, L);

    auto want_hist = tables::histogram_of(rows);
    auto got_hist = cat.histogram();
    {
        std::ostringstream w, g;
        for (auto [s, c] : want_hist) w << s << ":" << c << " ";
        for (auto [s, c] : got_hist) g << s << ":" << c << " ";
        report(diffs, "L=" + std::to_string(L) + " histogram", w.str(), g.str());
    }

    // computed (generic pattern, symmetric pattern) -> sector count, per size
    std::map<uint64_t, std::map<std::pair<std::string, std::string>, uint32_t>> got;
    uint64_t ord = 0;
    for (uint64_t rep : cat.sector_reps) {
        uint64_t my_ord = ord++;
        if (cat.size_of(rep) < 2) continue;
        auto members = sector_members(cat, rep);
        auto sg = analyze_sector(generic, L, members, seed, my_ord);
        auto ss = analyze_sector(symmetric, L, members, seed, my_ord);
        got[cat.size_of(rep)][{pattern_string(sg.full_pattern),
                               pattern_string(ss.full_pattern)}]++;
    }

    std::map<uint64_t, std::map<std::pair<std::string, std::string>, uint32_t>> want;
    for (const auto& row : rows) {
        if (row.d_cl < 2) continue;
        want[row.d_cl][{expected_pattern(row, false), expected_pattern(row, true)}] +=
            row.count;
    }

    for (const auto& [size, patterns] : want) {
        std::ostringstream w, g;
        for (const auto& [p, c] : patterns)
            w << p.first << "|" << p.second << " x" << c << "  ";
        for (const auto& [p, c] : got[size])
            g << p.first << "|" << p.second << " x" << c << "  ";
        report(diffs, "L=" + std::to_string(L) + " size=" + std::to_string(size),
               w.str(), g.str());
    }
    return diffs;
}

std::vector<CellDiff> reproduce_tl_row(unsigned L, uint64_t seed) {
    std::vector<CellDiff> diffs;
    auto row = tables::singlet_chain_row(L);
    ModelSpec m = ModelSpec::temperley_lieb();
    auto cat = enumerate_sectors(m.rewrite_rules(), 3, L);
    auto members = sector_members(cat, 0);
    auto sd = analyze_sector(m, L, members, seed, 0);

    report(diffs, "L=" + std::to_string(L) + " D_q", std::to_string(row.d_q),
           std::to_string(sd.d_q));
    report(diffs, "L=" + std::to_string(L) + " N_irr", std::to_string(row.n_irr),
           std::to_string(sd.n_irr()));

    std::vector<Eigen::Index> want;
    for (auto [j, mult] : row.modules)
        for (uint32_t c = 0; c < mult; ++c)
            want.push_back(tl_standard_dim(L, j).convert_to<Eigen::Index>());
    std::sort(want.begin(), want.end());
    report(diffs, "L=" + std::to_string(L) + " modules", pattern_string(want),
           pattern_string(sd.block_dims));
    return diffs;
}

int cmd_reproduce(std::string table, uint64_t seed) {
    for (auto& c : table) c = static_cast<char>(std::tolower(c));
    std::vector<CellDiff> diffs;
    auto tail_L = [&](const std::string& prefix) {
        return static_cast<unsigned>(std::stoul(table.substr(prefix.size())));
    };
    if (table.rfind("sm-q2-l", 0) == 0) {
        unsigned L = tail_L("sm-q2-l");
        diffs = reproduce_sector_table(ModelSpec::asymmetric(), ModelSpec::ghz(), L,
                                       tables::triplet_q2_rows(L), seed);
    } else if (table.rfind("sm-q3-l", 0) == 0) {
        unsigned L = tail_L("sm-q3-l");
        diffs = reproduce_sector_table(ModelSpec::triplet_q3(),
                                       ModelSpec::triplet_q3_symmetric(), L,
                                       tables::triplet_q3_rows(L), seed);
    } else if (table.rfind("cyclic-l", 0) == 0) {
        unsigned L = tail_L("cyclic-l");
        diffs = reproduce_sector_table(ModelSpec::cyclic(), ModelSpec::cyclic_d3(), L,
                                       tables::cyclic_rows(L), seed);
    } else if (table.rfind("tl-tableii-l", 0) == 0) {
        diffs = reproduce_tl_row(tail_L("tl-tableii-l"), seed);
    } else {
        std::cerr << "fragmenta: unknown table id: " << table << "\n";
        return 2;
    }
    bool ok = true;
    for (const auto& d : diffs) {
        std::cout << (d.pass ? "PASS " : "FAIL ") << d.cell;
        if (!d.pass) std::cout << "\n  expected: " << d.expected << "\n  got:      " << d.got;
        std::cout << "\n";
        ok &= d.pass;
    }
    return ok ? 0 : 1;
}

int cmd_run_all(const ModelArgs& ma, unsigned L, uint64_t seed, const std::string& dir,
                size_t realizations) {
    ModelSpec m = make_model(ma);
    std::filesystem::create_directories(dir);
    std::string d = dir;
    if (!d.empty() && d.back() != '/') d.push_back('/');
    std::vector<std::pair<std::string, std::string>> artifacts;

    artifacts.emplace_back("catalog.json", catalog_json(m, ma.name, L).dump(2) + "\n");
    artifacts.emplace_back("decomposition.json",
                           decompose_json(m, ma.name, L, "all", seed).dump(2) + "\n");
    if (m.kind == ModelKind::TripletFlip && m.q == 2) {
        double gamma = m.amps[0] / m.amps[1];
        artifacts.emplace_back("entropy.csv", entropy_csv(L, 0, "e", gamma, "2"));
    }
    auto res = run_spectra(m, ma.name, L, "", realizations, seed, 50);
    artifacts.emplace_back("spectra.csv", res.csv);
    artifacts.emplace_back("spectra.json", res.summary.dump(2) + "\n");

    json manifest;
    manifest["model"] = ma.name;
    manifest["L"] = L;
    manifest["seed"] = seed;
    manifest["realizations"] = realizations;
    manifest["version"] = "0.1.0";
    manifest["tolerances"] = {{"efs_kernel", 1e-10},
                              {"block_connectivity", 1e-8},
                              {"spectrum_dedup", 1e-10}};
    manifest["artifacts"] = json::array();
    for (const auto& [name, content] : artifacts) {
        write_text(d + name, content);
        manifest["artifacts"].push_back({{"name", name},
                                         {"bytes", content.size()},
                                         {"fnv1a64", hex64(fnv1a64(content))}});
    }
    write_text(d + "manifest.json", manifest.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* t = std::getenv("FRAGMENTA_THREADS")) {
        int n = std::atoi(t);
        if (n > 0) Eigen::setNbThreads(n);
    }

    CLI::App app{"desk-scale Krylov sector, frozen-state and spectral-statistics toolkit"};
    app.require_subcommand(1);

    ModelArgs ma;
    unsigned L = 6, cut = 0, kk = 1, q = 2, lo = 1, hi = 12;
    uint64_t seed = 1;
    size_t samples = 5000, realizations = 100, bins = 50;
    double gamma = 1.0;
    std::string out = "-", sector_sel = "all", rep_word, sector_label = "e",
                base = "2", which = "frozen-q2", table, dir = "out";

    auto* sc = app.add_subcommand("sectors", "enumerate classical sectors");
    add_model_options(sc, ma);
    sc->add_option("--L", L)->required();
    sc->add_option("--out", out);

    auto* cn = app.add_subcommand("counts", "closed-form counting sequences");
    cn->add_option("--which", which,
                   "frozen-q2|frozen-q3|frozen-cyclic|frozen-tl|all-mobile|dk|sector-totals");
    cn->add_option("--q", q);
    cn->add_option("--k", kk);
    cn->add_option("--min", lo);
    cn->add_option("--max", hi);
    cn->add_option("--out", out);

    auto* hm = app.add_subcommand("hamiltonian", "disorder Hamiltonian of one sector");
    add_model_options(hm, ma);
    hm->add_option("--L", L)->required();
    hm->add_option("--sector-rep", rep_word);
    hm->add_option("--seed", seed);
    hm->add_option("--out", out)->required();

    auto* dc = app.add_subcommand("decompose", "EFS and invariant-block decomposition");
    add_model_options(dc, ma);
    dc->add_option("--L", L)->required();
    dc->add_option("--sector", sector_sel, "all or rep=<word>");
    dc->add_option("--seed", seed);
    dc->add_option("--out", out);

    auto* en = app.add_subcommand("entropy", "frozen-state entanglement entropy");
    en->add_option("--L", L)->required();
    en->add_option("--cut", cut, "0 = full profile");
    en->add_option("--sector", sector_label, "e or a reduced binary label");
    en->add_option("--gamma", gamma);
    en->add_option("--base", base, "2|e");
    en->add_option("--out", out);

    auto* br = app.add_subcommand("bridge", "pinned walks on the label group");
    br->add_option("--L", L)->required();
    br->add_option("--sector", sector_label);
    br->add_option("--samples", samples);
    br->add_option("--seed", seed);
    br->add_option("--out", out);

    auto* sp = app.add_subcommand("spectra", "disorder-averaged gap-ratio histogram");
    add_model_options(sp, ma);
    sp->add_option("--L", L)->required();
    sp->add_option("--sector-rep", rep_word, "default: largest sector");
    sp->add_option("--realizations", realizations);
    sp->add_option("--seed", seed);
    sp->add_option("--bins", bins);
    sp->add_option("--out", out);

    auto* rp = app.add_subcommand("reproduce", "recompute a published table and diff");
    rp->add_option("--table", table,
                   "sm-q2-L<4..9>|sm-q3-L<4..9>|cyclic-L<4..9>|tl-tableii-L<5..9>")
        ->required();
    rp->add_option("--seed", seed);

    auto* ra = app.add_subcommand("run-all", "catalog + decomposition + entropy + spectra");
    add_model_options(ra, ma);
    ra->add_option("--L", L)->required();
    ra->add_option("--seed", seed);
    ra->add_option("--realizations", realizations);
    ra->add_option("--out-dir", dir)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sc->parsed()) return cmd_sectors(ma, L, out);
        if (cn->parsed()) return cmd_counts(which, q, kk, lo, hi, out);
        if (hm->parsed()) return cmd_hamiltonian(ma, L, rep_word, seed, out);
        if (dc->parsed()) return cmd_decompose(ma, L, sector_sel, seed, out);
        if (en->parsed()) return cmd_entropy(L, cut, sector_label, gamma, base, out);
        if (br->parsed()) return cmd_bridge(L, sector_label, samples, seed, out);
        if (sp->parsed()) return cmd_spectra(ma, L, rep_word, realizations, seed, bins, out);
        if (rp->parsed()) return cmd_reproduce(table, seed);
        if (ra->parsed()) return cmd_run_all(ma, L, seed, dir, realizations);
    } catch (const std::exception& e) {
        std::cerr << "fragmenta: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

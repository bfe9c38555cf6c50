// packlim: packing functions, Minkowski contents, and packing constants of
// one-dimensional cut-out sets and self-similar fractals.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "packlim/constants.hpp"
#include "packlim/descriptors.hpp"
#include "packlim/geometry.hpp"
#include "packlim/lp_cert.hpp"
#include "packlim/massdist.hpp"
#include "packlim/packing.hpp"
#include "packlim/renewal.hpp"

namespace {

using namespace packlim;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitIndeterminate = 3;
constexpr int kExitInternal = 4;

struct Output {
    std::FILE* handle = stdout;
    bool owned = false;

    explicit Output(const std::string& path) {
        if (!path.empty()) {
            handle = std::fopen(path.c_str(), "wb");
            if (!handle) throw Error("cannot open output file: " + path);
            owned = true;
        }
    }
    ~Output() {
        if (owned) std::fclose(handle);
    }
};

void put_number(std::FILE* f, double x) { std::fprintf(f, "%.17g", x); }

std::vector<double> log_grid(double start, double stop, int per_decade) {
    if (!(start > stop && stop > 0.0)) throw Error("the grid needs start > stop > 0");
    if (per_decade < 1) throw Error("the grid needs at least one point per decade");
    std::vector<double> grid;
    double decades = std::log10(start / stop);
    int count = int(std::ceil(decades * per_decade)) + 1;
    for (int i = 0; i < count; ++i) {
        double eps = start * std::pow(10.0, -double(i) / per_decade);
        if (eps < stop * (1.0 - 1e-12)) break;
        if (!grid.empty() && !(eps < grid.back())) continue;  // strictly decreasing
        grid.push_back(eps);
    }
    if (grid.empty()) throw Error("empty epsilon grid");
    return grid;
}

template <typename F>
void parallel_for(std::size_t n, int threads, F&& body) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    int workers = std::min<std::size_t>(threads, n);
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) body(i);
        });
    for (auto& th : pool) th.join();
}

double dimension_for(const GapSequence& seq, std::optional<double> flag) {
    if (flag) return *flag;
    switch (seq.model()) {
        case GapModel::power_law:
            return seq.power_dim();
        case GapModel::block_geometric:
            return std::log(double(seq.block_count_factor())) /
                   std::log(1.0 / seq.block_ratio());
        case GapModel::from_system:
            return moran_dimension(seq.system());
        case GapModel::explicit_list:
            throw Error("explicit sequences need an explicit --d");
    }
    throw Error("unknown model");
}

// ---- subcommands ---------------------------------------------------------

struct CurveOptions {
    std::string set_path, out_path;
    std::optional<double> dim_flag;
    double eps_start = 1e-2, eps_stop = 1e-6;
    int per_decade = 4, threads = 1;
};

int cmd_pack_curve(const CurveOptions& opt) {
    GapSequence seq = load_sequence_descriptor(opt.set_path);
    double dim = dimension_for(seq, opt.dim_flag);
    CutOutSet set(seq);
    std::vector<double> grid = log_grid(opt.eps_start, opt.eps_stop, opt.per_decade);

    const bool power = seq.model() == GapModel::power_law;
    // descriptors often truncate 1/3 to ten digits; treat them as the unit
    // rearranged Cantor set for certificate purposes
    const bool cantor = seq.model() == GapModel::block_geometric &&
                        seq.block_count_factor() == 2 &&
                        std::abs(seq.block_ratio() - 1.0 / 3.0) < 1e-9 &&
                        std::abs(seq.block_base() - 1.0) < 1e-9;

    struct Row {
        double eps, normalized;
        std::uint64_t count;
        std::optional<double> lp_upper;
        std::optional<std::uint64_t> greedy_lower;
    };
    std::vector<Row> rows(grid.size());
    parallel_for(grid.size(), opt.threads, [&](std::size_t i) {
        double eps = grid[i];
        auto packed = pack_cutout(set, eps, dim);
        Row row{eps, packed.normalized, packed.count, std::nullopt, std::nullopt};
        if (power) {
            std::uint64_t cutoff = seq.tail_cutoff(eps);
            PrimalProgram prog =
                build_power_primal(seq.power_scale(), dim, eps, cutoff);
            auto cert = verify_certificate(
                prog, power_primal_solution(seq.power_scale(), dim, eps, cutoff),
                dual_solution(cutoff));
            row.lp_upper = cert.upper_bound();
            try {
                row.greedy_lower =
                    greedy_block_packing(seq, eps, dim, seq.power_scale()).count;
            } catch (const Error&) {
                // the delta = 0 construction can fail at coarse scales
            }
        } else if (cantor) {
            // every eps is a 3^-n with exactly one a in (1, 3]
            int n = int(std::ceil(std::log(1.0 / eps) / std::log(3.0) - 1e-12));
            double a = eps * std::pow(3.0, n);
            while (a > 3.0) a = eps * std::pow(3.0, ++n);
            while (a <= 1.0 && n > 1) a = eps * std::pow(3.0, --n);
            if (a > 1.0 && a <= 3.0 && n >= 1)
                row.lp_upper = build_cantor_certificate(a, n).upper_bound();
        }
        rows[i] = row;
    });

    Output out(opt.out_path);
    std::fprintf(out.handle, "epsilon,count,normalized,lp_upper,greedy_lower\n");
    for (const Row& r : rows) {
        put_number(out.handle, r.eps);
        std::fprintf(out.handle, ",%llu,", (unsigned long long)r.count);
        put_number(out.handle, r.normalized);
        std::fprintf(out.handle, ",");
        if (r.lp_upper) put_number(out.handle, *r.lp_upper);
        std::fprintf(out.handle, ",");
        if (r.greedy_lower)
            std::fprintf(out.handle, "%llu", (unsigned long long)*r.greedy_lower);
        std::fprintf(out.handle, "\n");
    }
    return kExitOk;
}

struct TubeOptions {
    std::string set_path, out_path;
    std::optional<double> dim_flag;
    double eps_start = 1e-2, eps_stop = 1e-6;
    int per_decade = 4, threads = 1;
};

int cmd_tube(const TubeOptions& opt) {
    GapSequence seq = load_sequence_descriptor(opt.set_path);
    double dim = dimension_for(seq, opt.dim_flag);
    std::vector<double> grid = log_grid(opt.eps_start, opt.eps_stop, opt.per_decade);
    std::vector<ContentPoint> rows(grid.size());
    parallel_for(grid.size(), opt.threads, [&](std::size_t i) {
        TubeVolume tv = tube_volume(seq, grid[i]);
        rows[i] = {grid[i], tv.volume, tv.volume / std::pow(grid[i], 1.0 - dim)};
    });
    Output out(opt.out_path);
    std::fprintf(out.handle, "epsilon,tube_volume,normalized_content\n");
    for (const auto& r : rows) {
        put_number(out.handle, r.epsilon);
        std::fprintf(out.handle, ",");
        put_number(out.handle, r.volume);
        std::fprintf(out.handle, ",");
        put_number(out.handle, r.normalized);
        std::fprintf(out.handle, "\n");
    }
    return kExitOk;
}

struct ConstantsOptions {
    std::vector<double> dims;
    double tol = 1e-10;
    std::string out_path;
};

int cmd_constants(const ConstantsOptions& opt) {
    if (opt.dims.empty()) throw Error("constants needs at least one --d value");
    Output out(opt.out_path);
    std::fprintf(out.handle, "d,A_d,A_d_tail,p_d\n");
    for (double d : opt.dims) {
        if (!(d > 0.0 && d < 1.0)) throw Error("dimensions must lie in (0,1)");
        SeriesValue a = packing_series(d, opt.tol);
        double p = a.midpoint() * (1.0 - d) / std::pow(2.0, 1.0 - d);
        put_number(out.handle, d);
        std::fprintf(out.handle, ",");
        put_number(out.handle, a.midpoint());
        std::fprintf(out.handle, ",");
        put_number(out.handle, a.tail_bound);
        std::fprintf(out.handle, ",");
        put_number(out.handle, p);
        std::fprintf(out.handle, "\n");
    }
    return kExitOk;
}

struct LpOptions {
    double scale = 1.0;
    std::vector<double> dims{0.4, 0.5, 0.6};
    double eps_start = 1e-1, eps_stop = 1e-3;
    int per_decade = 2;
    std::vector<double> cantor_a{1.5, 2.0, 2.5, 3.0};
    std::vector<int> cantor_n{5, 6, 7, 8};
    std::string out_path, json_path;
};

int cmd_lp_verify(const LpOptions& opt) {
    Output out(opt.out_path);
    nlohmann::json dump = nlohmann::json::array();
    std::fprintf(out.handle, "instance,K,primalObj,dualObj,gap,maxResidual\n");

    for (double d : opt.dims) {
        auto seq = GapSequence::power_law(opt.scale, d);
        for (double eps : log_grid(opt.eps_start, opt.eps_stop, opt.per_decade)) {
            std::uint64_t cutoff = seq.tail_cutoff(eps);
            PrimalProgram prog = build_power_primal(opt.scale, d, eps, cutoff);
            auto cert =
                verify_certificate(prog, power_primal_solution(opt.scale, d, eps, cutoff),
                                   dual_solution(cutoff));
            std::fprintf(out.handle, "power(L=%g;d=%g;eps=%g),%llu,", opt.scale, d, eps,
                         (unsigned long long)cutoff);
            put_number(out.handle, cert.primal_objective);
            std::fprintf(out.handle, ",");
            put_number(out.handle, cert.dual_objective);
            std::fprintf(out.handle, ",");
            put_number(out.handle, cert.gap());
            std::fprintf(out.handle, ",");
            put_number(out.handle,
                       std::max(cert.max_primal_residual, cert.max_dual_residual));
            std::fprintf(out.handle, "\n");
            if (!opt.json_path.empty())
                dump.push_back({{"instance", "power"},
                                {"L", opt.scale},
                                {"d", d},
                                {"eps", eps},
                                {"primal", cert.primal},
                                {"dual", cert.dual},
                                {"primalObj", cert.primal_objective},
                                {"dualObj", cert.dual_objective}});
        }
    }
    for (double a : opt.cantor_a) {
        for (int n : opt.cantor_n) {
            auto cert = build_cantor_certificate(a, n);
            std::fprintf(out.handle, "cantor(a=%g;n=%d),%llu,", a, n,
                         (unsigned long long)cert.support.back());
            put_number(out.handle, cert.primal_objective);
            std::fprintf(out.handle, ",");
            put_number(out.handle, cert.dual_objective);
            std::fprintf(out.handle, ",");
            put_number(out.handle, cert.gap());
            std::fprintf(out.handle, ",");
            put_number(out.handle,
                       std::max(cert.max_primal_residual, cert.max_dual_residual));
            std::fprintf(out.handle, "\n");
            if (!opt.json_path.empty())
                dump.push_back({{"instance", "cantor"},
                                {"a", a},
                                {"n", n},
                                {"support", cert.support},
                                {"primal", cert.primal_support},
                                {"dual", cert.dual_support},
                                {"primalObj", cert.primal_objective},
                                {"dualObj", cert.dual_objective}});
        }
    }
    if (!opt.json_path.empty()) {
        std::ofstream jf(opt.json_path);
        jf << dump.dump(2) << "\n";
    }
    return kExitOk;
}

struct RenewalOptions {
    std::string system_path, out_path, csv_path;
    double resolution = 1e-12;
    double eps_start = 1e-1, eps_stop = 1e-5;
    int per_decade = 4, threads = 1, max_depth = 24;
};

int cmd_renewal(const RenewalOptions& opt) {
    SelfSimilarSystem sys = load_system_descriptor(opt.system_path);
    RenewalAnalyzer analyzer(sys, opt.max_depth);
    RenewalProfile profile = build_profile(analyzer, opt.resolution);

    Output out(opt.out_path);
    std::fprintf(out.handle, "dimension,");
    put_number(out.handle, profile.dim);
    std::fprintf(out.handle, "\nseparation,");
    put_number(out.handle, profile.delta);
    std::fprintf(out.handle, "\nmu_mean,");
    put_number(out.handle, profile.mu_mean);
    std::fprintf(out.handle, "\n\njump_table: eps_lo,eps_hi,count_lo,count_hi\n");
    for (const auto& p : profile.pieces) {
        put_number(out.handle, p.eps_lo);
        std::fprintf(out.handle, ",");
        put_number(out.handle, p.eps_hi);
        std::fprintf(out.handle, ",%llu,%llu\n", (unsigned long long)p.count.lo,
                     (unsigned long long)p.count.hi);
    }
    std::fprintf(out.handle, "\nz_pieces: x_lo,x_hi,coeff_lo,coeff_hi\n");
    for (const auto& z : profile.z_pieces) {
        put_number(out.handle, z.x_lo);
        std::fprintf(out.handle, ",");
        put_number(out.handle, z.x_hi);
        std::fprintf(out.handle, ",%lld,%lld\n", (long long)z.coefficient.lo,
                     (long long)z.coefficient.hi);
    }
    Interval constant = packing_constant(profile, sys);
    std::fprintf(out.handle, "\npacking_constant,");
    put_number(out.handle, constant.lo);
    std::fprintf(out.handle, ",");
    put_number(out.handle, constant.hi);
    std::fprintf(out.handle, "\n");

    if (!opt.csv_path.empty()) {
        std::vector<double> grid = log_grid(opt.eps_start, opt.eps_stop, opt.per_decade);
        struct Row {
            double eps, normalized;
            std::uint64_t count;
        };
        std::vector<Row> rows(grid.size());
        parallel_for(grid.size(), opt.threads, [&](std::size_t i) {
            std::uint64_t n = analyzer.count_exact(grid[i]);
            rows[i] = {grid[i], double(n) * std::pow(grid[i], profile.dim), n};
        });
        Output csv(opt.csv_path);
        std::fprintf(csv.handle, "epsilon,count,normalized\n");
        for (const Row& r : rows) {
            put_number(csv.handle, r.eps);
            std::fprintf(csv.handle, ",%llu,", (unsigned long long)r.count);
            put_number(csv.handle, r.normalized);
            std::fprintf(csv.handle, "\n");
        }
    }
    return kExitOk;
}

struct MsspOptions {
    std::string seq_path, out_path;
    double eps = 0.0;
    std::optional<double> dim_flag, scale_flag;
};

int cmd_mssp(const MsspOptions& opt) {
    GapSequence seq = load_sequence_descriptor(opt.seq_path);
    if (!(opt.eps > 0.0)) throw Error("mssp needs a positive --eps");
    double dim = dimension_for(seq, opt.dim_flag);
    double scale = opt.scale_flag ? *opt.scale_flag
                   : seq.model() == GapModel::power_law ? seq.power_scale()
                                                        : seq.length(1);

    std::optional<std::uint64_t> greedy;
    try {
        greedy = greedy_block_cover(seq, opt.eps, dim, scale);
    } catch (const Error&) {
    }
    std::uint64_t tailbound = cover_upper_bound(seq, opt.eps);

    std::optional<std::uint64_t> lower, upper;
    if (seq.model() == GapModel::explicit_list &&
        seq.explicit_lengths().size() + 1 <= kExactCoverCap) {
        MassInstance inst{seq.explicit_lengths(), seq.explicit_tail(), opt.eps};
        lower = exact_cover_count(inst, TailMode::as_item);
        upper = exact_cover_count(inst, TailMode::fluid);
    } else {
        lower = greedy;
        upper = tailbound;
    }

    Output out(opt.out_path);
    std::fprintf(out.handle, "lower,upper,greedy,tailbound\n");
    if (lower) std::fprintf(out.handle, "%llu", (unsigned long long)*lower);
    std::fprintf(out.handle, ",");
    if (upper) std::fprintf(out.handle, "%llu", (unsigned long long)*upper);
    std::fprintf(out.handle, ",");
    if (greedy) std::fprintf(out.handle, "%llu", (unsigned long long)*greedy);
    std::fprintf(out.handle, ",%llu\n", (unsigned long long)tailbound);
    return kExitOk;
}

struct SharpnessOptions {
    std::string out_path;
    double resolution = 1e-12;
    int max_depth = 24;
};

int cmd_sharpness(const SharpnessOptions& opt) {
    Output out(opt.out_path);

    // the (1/2,1/3) set: packing constant versus p_t * content
    SelfSimilarSystem t({0.5, 1.0 / 3.0}, {1.0 / 6.0});
    RenewalAnalyzer analyzer(t, opt.max_depth);
    RenewalProfile profile = build_profile(analyzer, opt.resolution);
    Interval constant = packing_constant(profile, t);

    // the open band around delta(T,6), taken from the scan
    double band_lo = 1.0 / 6.0, band_hi = 1.0 / 6.0;
    for (const auto& p : profile.pieces)
        if (!p.count.exact() && p.eps_hi > 1.0 / 6.1 && p.eps_lo < 0.2) {
            band_lo = p.eps_lo;
            band_hi = p.eps_hi;
        }
    bool case_one = true;
    for (const auto& p : profile.pieces)
        if (p.eps_lo >= 1.0 / 6.0 && p.eps_hi <= 0.2 + 1e-9 && p.count.lo >= 6)
            case_one = false;

    double ratio = packing_content_ratio(profile.dim, 1e-12);
    double content = self_similar_content(t);
    double target = ratio * content;

    std::fprintf(out.handle, "t,");
    put_number(out.handle, profile.dim);
    std::fprintf(out.handle, "\ndelta6_bracket,");
    put_number(out.handle, band_lo);
    std::fprintf(out.handle, ",");
    put_number(out.handle, band_hi);
    std::fprintf(out.handle, "\ncase,%s\n", case_one ? "N=5 throughout (1/6,1/5)"
                                                     : "N reaches 6 inside (1/6,1/5)");
    std::fprintf(out.handle, "packing_constant,");
    put_number(out.handle, constant.lo);
    std::fprintf(out.handle, ",");
    put_number(out.handle, constant.hi);
    std::fprintf(out.handle, "\np_t_times_content,");
    put_number(out.handle, target);
    std::fprintf(out.handle, "\nverdict,%s\n",
                 constant.hi < target ? "packing constant < p_t * content"
                                      : "inconclusive");

    // the rearranged 1/3 Cantor set: oscillation of the normalized curve
    auto s = GapSequence::block_geometric(1.0 / 3.0, 2, 1.0);
    CutOutSet set(s);
    double dim_s = std::log(2.0) / std::log(3.0);
    double hi_est = 0.0;
    for (int n = 10; n <= 14; ++n) {
        double eps = 3.0 * std::pow(3.0, -n);
        hi_est = std::max(hi_est,
                          double(pack_cutout(set, eps, dim_s).count) *
                              std::pow(eps, dim_s));
    }
    double lo_emp = 1e300;
    for (int i = 0; i <= 180; ++i) {
        double eps = std::pow(3.0, -6.0 - 6.0 * i / 180.0);
        lo_emp = std::min(lo_emp, double(pack_cutout(set, eps, dim_s).count) *
                                      std::pow(eps, dim_s));
    }
    double lo_formula = 1e300;
    for (int i = 1; i <= 200; ++i)
        lo_formula = std::min(lo_formula,
                              cantor_subsequence_limit(1.0 + 2.0 * i / 200.0, 1e-12));
    std::fprintf(out.handle, "\nS_limsup_estimate,");
    put_number(out.handle, hi_est);
    std::fprintf(out.handle, "\nS_liminf_empirical,");
    put_number(out.handle, lo_emp);
    std::fprintf(out.handle, "\nS_liminf_formula,");
    put_number(out.handle, lo_formula);
    std::fprintf(out.handle, "\nS_oscillates,%s\n",
                 lo_emp < 0.99 * hi_est ? "yes" : "no");

    if (!(constant.hi < target)) return kExitIndeterminate;
    return kExitOk;
}

// Injects config-file values for flags absent from the command line.
std::vector<std::string> merge_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
    }
    if (config_path.empty()) return args;
    std::ifstream in(config_path);
    if (!in) throw Error("cannot open config file: " + config_path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw Error(std::string("config parse failure: ") + e.what());
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::string flag = "--" + it.key();
        bool present = false;
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) present = true;
        if (present) continue;
        args.push_back(flag);
        if (it.value().is_string())
            args.push_back(it.value().get<std::string>());
        else if (it.value().is_array()) {
            args.pop_back();
            for (const auto& v : it.value()) {
                args.push_back(flag);
                args.push_back(v.dump());
            }
        } else
            args.push_back(it.value().dump());
    }
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"best-packing asymptotics on one-dimensional cut-out sets"};
    app.require_subcommand(1);
    bool seed_free = false;
    app.add_flag("--seed-free", seed_free,
                 "assert the deterministic mode (always on; no randomness exists)");
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file; flags override it");

    CurveOptions curve;
    auto* sc_curve = app.add_subcommand("pack-curve", "packing counts over an eps grid");
    sc_curve->add_option("--set", curve.set_path, "sequence descriptor")->required();
    double curve_d = -1.0;
    sc_curve->add_option("--d", curve_d, "normalization dimension");
    sc_curve->add_option("--eps-start", curve.eps_start);
    sc_curve->add_option("--eps-stop", curve.eps_stop);
    sc_curve->add_option("--per-decade", curve.per_decade);
    sc_curve->add_option("--out", curve.out_path);
    sc_curve->add_option("--threads", curve.threads);

    TubeOptions tube;
    auto* sc_tube = app.add_subcommand("tube", "tube volumes and normalized contents");
    sc_tube->add_option("--set", tube.set_path)->required();
    double tube_d = -1.0;
    sc_tube->add_option("--d", tube_d);
    sc_tube->add_option("--eps-start", tube.eps_start);
    sc_tube->add_option("--eps-stop", tube.eps_stop);
    sc_tube->add_option("--per-decade", tube.per_decade);
    sc_tube->add_option("--out", tube.out_path);
    sc_tube->add_option("--threads", tube.threads);

    ConstantsOptions constants_opt;
    auto* sc_const = app.add_subcommand("constants", "A_d and p_d tables");
    sc_const->add_option("--d", constants_opt.dims)->required();
    sc_const->add_option("--tol", constants_opt.tol);
    sc_const->add_option("--out", constants_opt.out_path);

    LpOptions lp;
    auto* sc_lp = app.add_subcommand("lp-verify", "primal/dual certificate table");
    sc_lp->add_option("--L", lp.scale);
    sc_lp->add_option("--d", lp.dims);
    sc_lp->add_option("--eps-start", lp.eps_start);
    sc_lp->add_option("--eps-stop", lp.eps_stop);
    sc_lp->add_option("--per-decade", lp.per_decade);
    sc_lp->add_option("--cantor-a", lp.cantor_a);
    sc_lp->add_option("--cantor-n", lp.cantor_n);
    sc_lp->add_option("--out", lp.out_path);
    sc_lp->add_option("--json", lp.json_path, "dump certificates as JSON");

    RenewalOptions renewal_opt;
    auto* sc_ren = app.add_subcommand("renewal", "renewal profile of a system");
    sc_ren->add_option("--system", renewal_opt.system_path)->required();
    sc_ren->add_option("--resolution", renewal_opt.resolution);
    sc_ren->add_option("--max-depth", renewal_opt.max_depth);
    sc_ren->add_option("--out", renewal_opt.out_path);
    sc_ren->add_option("--csv", renewal_opt.csv_path, "normalized counts over a grid");
    sc_ren->add_option("--eps-start", renewal_opt.eps_start);
    sc_ren->add_option("--eps-stop", renewal_opt.eps_stop);
    sc_ren->add_option("--per-decade", renewal_opt.per_decade);
    sc_ren->add_option("--threads", renewal_opt.threads);

    MsspOptions mssp;
    auto* sc_mssp = app.add_subcommand("mssp", "mass distribution brackets");
    sc_mssp->add_option("--seq", mssp.seq_path)->required();
    sc_mssp->add_option("--eps", mssp.eps)->required();
    double mssp_d = -1.0, mssp_scale = -1.0;
    sc_mssp->add_option("--d", mssp_d);
    sc_mssp->add_option("--scale", mssp_scale);
    sc_mssp->add_option("--out", mssp.out_path);

    SharpnessOptions sharp;
    auto* sc_sharp = app.add_subcommand("sharpness", "sharpness report for T and S");
    sc_sharp->add_option("--resolution", sharp.resolution);
    sc_sharp->add_option("--max-depth", sharp.max_depth);
    sc_sharp->add_option("--out", sharp.out_path);

    // accepted after the subcommand name as well
    for (CLI::App* sc : {sc_curve, sc_tube, sc_const, sc_lp, sc_ren, sc_mssp, sc_sharp}) {
        sc->add_flag("--seed-free", seed_free,
                     "assert the deterministic mode (always on)");
        sc->add_option("--config", config_path, "JSON config file; flags override it");
    }

    try {
        std::vector<std::string> args = merge_config(argc, argv);
        std::vector<const char*> cargs{argv[0]};
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(int(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInput;
    } catch (const Error&) {
        return kExitInput;
    }

    try {
        if (*sc_curve) {
            if (curve_d > 0.0) curve.dim_flag = curve_d;
            return cmd_pack_curve(curve);
        }
        if (*sc_tube) {
            if (tube_d > 0.0) tube.dim_flag = tube_d;
            return cmd_tube(tube);
        }
        if (*sc_const) return cmd_constants(constants_opt);
        if (*sc_lp) return cmd_lp_verify(lp);
        if (*sc_ren) return cmd_renewal(renewal_opt);
        if (*sc_mssp) {
            if (mssp_d > 0.0) mssp.dim_flag = mssp_d;
            if (mssp_scale > 0.0) mssp.scale_flag = mssp_scale;
            return cmd_mssp(mssp);
        }
        if (*sc_sharp) return cmd_sharpness(sharp);
    } catch (const Indeterminate&) {
        return kExitIndeterminate;
    } catch (const SandwichNotClosed&) {
        return kExitIndeterminate;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kExitInternal;
    }
    return kExitInput;
}

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "polarpunct/baselines.hpp"
#include "polarpunct/channel.hpp"
#include "polarpunct/density_evolution.hpp"
#include "polarpunct/enumeration.hpp"
#include "polarpunct/equivalence.hpp"
#include "polarpunct/erasure.hpp"
#include "polarpunct/pattern_io.hpp"
#include "polarpunct/repro.hpp"
#include "polarpunct/sc_sim.hpp"

using nlohmann::json;
using namespace polarpunct;

namespace {

constexpr const char* tool_version = "0.1.0";
constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_mismatch = 2;
constexpr int exit_cap = 3;

int resolve_workers(int flag_value, bool flag_given) {
    if (flag_given) return std::max(flag_value, 1);
    if (const char* env = std::getenv("POLARPUNCT_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    }
    return 1;
}

int log2_length(int64_t n_total) {
    if (n_total < 1 || (n_total & (n_total - 1)) != 0 ||
        n_total > (int64_t{1} << Pattern::max_log2_length))
        throw std::invalid_argument(
            "N must be a power of two between 1 and 2^20");
    int n = 0;
    while ((int64_t{1} << n) != n_total) ++n;
    return n;
}

/// Stream selection: a file path opens that file, otherwise stdout.
struct OutputTarget {
    std::ofstream file;
    std::ostream* out = &std::cout;
    std::string path;

    void open(const std::string& p) {
        if (p.empty()) return;
        file.open(p);
        if (!file)
            throw std::runtime_error("cannot open output file '" + p + "'");
        out = &file;
        path = p;
    }
};

/// Every run records how it was invoked: to --manifest if given, next to the
/// output file if one was named, otherwise as a single stderr line.
void emit_manifest(json manifest, const std::string& manifest_path,
                   const std::string& output_path) {
    manifest["tool"] = "polarpunct";
    manifest["version"] = tool_version;
    if (!manifest_path.empty() || !output_path.empty()) {
        const std::string dest = !manifest_path.empty()
                                     ? manifest_path
                                     : output_path + ".manifest.json";
        std::ofstream f(dest);
        if (!f)
            throw std::runtime_error("cannot open manifest file '" + dest + "'");
        f << manifest.dump(2) << '\n';
    } else {
        std::cerr << "manifest " << manifest.dump() << '\n';
    }
}

json argv_json(int argc, char** argv) {
    json a = json::array();
    for (int i = 0; i < argc; ++i) a.push_back(std::string(argv[i]));
    return a;
}

/// Common pattern-source flags: an explicit file, a literal bit/hex string,
/// or the qup/shorten constructions sized by --N/--Np.
struct SourceOpts {
    std::string file;
    std::string selector;
    int64_t n_total = 0;
    int64_t n_removed = 0;
};

struct ResolvedCode {
    Pattern punctured{0};
    Pattern shortened{0};
    Pattern forced_frozen{0};
};

ResolvedCode resolve_code(const SourceOpts& s) {
    if (s.file.empty() == s.selector.empty())
        throw std::invalid_argument(
            "exactly one of --pattern-file and --pattern is required");
    if (!s.file.empty()) {
        const PatternFile pf = read_patterns_file(s.file);
        if (pf.patterns.size() != 1)
            throw std::invalid_argument(
                "this subcommand expects exactly one pattern in the file");
        ResolvedCode r{pf.patterns[0], Pattern(pf.n), Pattern(pf.n)};
        return r;
    }
    if (s.selector == "qup") {
        const int n = log2_length(s.n_total);
        ResolvedCode r{qup_pattern(n, static_cast<size_t>(s.n_removed)),
                       Pattern(n), Pattern(n)};
        return r;
    }
    if (s.selector == "shorten") {
        const int n = log2_length(s.n_total);
        const ShorteningPlan plan =
            shortening_pattern(n, static_cast<size_t>(s.n_removed));
        return {Pattern(n), plan.shortened, plan.forced_frozen};
    }
    const int n = log2_length(s.n_total);
    return {parse_pattern(n, s.selector), Pattern(n), Pattern(n)};
}

void add_source_flags(CLI::App* sub, SourceOpts& src) {
    sub->add_option("--pattern-file", src.file,
                    "pattern text file (N=<len> header, one pattern per line)");
    sub->add_option("--pattern", src.selector,
                    "literal 0/1 or 0x pattern, or 'qup' / 'shorten'");
    sub->add_option("--N", src.n_total, "code length (for --pattern sources)");
    sub->add_option("--Np", src.n_removed,
                    "number of removed coded positions (qup/shorten)");
}

std::vector<uint32_t> pattern_indices(const Pattern& p) {
    std::vector<uint32_t> idx;
    for (uint32_t i = 0; i < p.size(); ++i)
        if (p.get(i)) idx.push_back(i);
    return idx;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"punctured polar code construction and simulation toolkit"};
    app.require_subcommand(1);

    // --- enumerate ---------------------------------------------------------
    auto* cmd_enum = app.add_subcommand(
        "enumerate", "list or count pattern families of one weight");
    std::string enum_kind;
    int64_t enum_n = 0, enum_np = 0, enum_lmax = -1;
    bool enum_count_only = false;
    uint64_t enum_max_emitted = 0, enum_max_nodes = 0;
    std::string enum_out, enum_manifest;
    int enum_workers = 1;
    cmd_enum->add_option("--kind", enum_kind)
        ->required()
        ->check(CLI::IsMember({"primitive", "symmetric", "search-tree"}));
    cmd_enum->add_option("--N", enum_n, "code length")->required();
    cmd_enum->add_option("--Np", enum_np, "pattern weight")->required();
    cmd_enum->add_option("--lmax", enum_lmax, "order bound (search-tree)");
    cmd_enum->add_flag("--count-only", enum_count_only);
    cmd_enum->add_option("--max-emitted", enum_max_emitted,
                         "stop after this many patterns (0 = unlimited)");
    cmd_enum->add_option("--max-nodes", enum_max_nodes,
                         "abort after this many walk steps (0 = unlimited)");
    cmd_enum->add_option("-o,--output", enum_out);
    cmd_enum->add_option("--manifest", enum_manifest);
    auto* enum_workers_opt = cmd_enum->add_option("--workers", enum_workers);

    // --- erasure -----------------------------------------------------------
    auto* cmd_erasure = app.add_subcommand(
        "erasure", "erasure propagation, symmetry, and order of patterns");
    std::string erasure_file, erasure_out, erasure_manifest;
    cmd_erasure->add_option("--pattern-file", erasure_file)->required();
    cmd_erasure->add_option("-o,--output", erasure_out);
    cmd_erasure->add_option("--manifest", erasure_manifest);

    // --- canonicalize ------------------------------------------------------
    auto* cmd_canon = app.add_subcommand(
        "canonicalize", "canonical representative and primitivity of patterns");
    std::string canon_file, canon_out, canon_manifest;
    cmd_canon->add_option("--pattern-file", canon_file)->required();
    cmd_canon->add_option("-o,--output", canon_out);
    cmd_canon->add_option("--manifest", canon_manifest);

    // --- de ----------------------------------------------------------------
    auto* cmd_de = app.add_subcommand(
        "de", "per-position reliability under a channel");
    SourceOpts de_src;
    std::string de_channel, de_out, de_manifest;
    add_source_flags(cmd_de, de_src);
    cmd_de->add_option("--channel", de_channel, "bec:<eps> or awgn:<sigma2>")
        ->required();
    cmd_de->add_option("-o,--output", de_out);
    cmd_de->add_option("--manifest", de_manifest);

    // --- threshold ---------------------------------------------------------
    auto* cmd_th = app.add_subcommand(
        "threshold", "largest tolerable AWGN noise variance for a target WER");
    SourceOpts th_src;
    int64_t th_k = 0;
    double th_eta = 1e-4, th_tol = 1e-4;
    std::string th_out, th_manifest;
    add_source_flags(cmd_th, th_src);
    cmd_th->add_option("--K", th_k, "information positions")->required();
    cmd_th->add_option("--eta", th_eta, "target word error rate");
    cmd_th->add_option("--tol", th_tol, "bisection tolerance on sigma2");
    cmd_th->add_option("-o,--output", th_out);
    cmd_th->add_option("--manifest", th_manifest);

    // --- optimize ----------------------------------------------------------
    auto* cmd_opt = app.add_subcommand(
        "optimize", "pick the best pattern from an enumerated family or file");
    std::string opt_kind, opt_file, opt_objective, opt_out, opt_manifest;
    int64_t opt_n = 0, opt_np = 0, opt_lmax = -1, opt_k = 0;
    double opt_eta = 1e-4, opt_tol = 1e-4, opt_sigma2 = 0.5;
    int opt_workers = 1;
    cmd_opt->add_option("--kind", opt_kind)
        ->check(CLI::IsMember({"primitive", "symmetric", "search-tree"}));
    cmd_opt->add_option("--pattern-file", opt_file,
                        "candidate patterns (alternative to --kind)");
    cmd_opt->add_option("--N", opt_n);
    cmd_opt->add_option("--Np", opt_np);
    cmd_opt->add_option("--lmax", opt_lmax);
    cmd_opt->add_option("--K", opt_k)->required();
    cmd_opt->add_option("--objective", opt_objective)
        ->required()
        ->check(CLI::IsMember({"threshold", "wer"}));
    cmd_opt->add_option("--eta", opt_eta);
    cmd_opt->add_option("--tol", opt_tol);
    cmd_opt->add_option("--sigma2", opt_sigma2,
                        "operating noise variance for --objective wer");
    cmd_opt->add_option("-o,--output", opt_out);
    cmd_opt->add_option("--manifest", opt_manifest);
    auto* opt_workers_opt = cmd_opt->add_option("--workers", opt_workers);

    // --- simulate ----------------------------------------------------------
    auto* cmd_sim = app.add_subcommand(
        "simulate", "Monte-Carlo word error rate under SC decoding");
    SourceOpts sim_src;
    std::string sim_channel, sim_out, sim_manifest;
    int64_t sim_k = 0;
    uint64_t sim_max_words = 1000000, sim_max_errors = 100, sim_seed = 1;
    bool sim_all_zero = false, sim_min_sum = false;
    int sim_workers = 1;
    add_source_flags(cmd_sim, sim_src);
    cmd_sim->add_option("--K", sim_k, "information positions")->required();
    cmd_sim->add_option("--channel", sim_channel)->required();
    cmd_sim->add_option("--max-words", sim_max_words);
    cmd_sim->add_option("--max-errors", sim_max_errors);
    cmd_sim->add_option("--seed", sim_seed);
    cmd_sim->add_flag("--all-zero", sim_all_zero,
                      "transmit all-zero data instead of random bits");
    cmd_sim->add_flag("--min-sum", sim_min_sum);
    cmd_sim->add_option("-o,--output", sim_out);
    cmd_sim->add_option("--manifest", sim_manifest);
    auto* sim_workers_opt = cmd_sim->add_option("--workers", sim_workers);

    // --- repro -------------------------------------------------------------
    auto* cmd_repro = app.add_subcommand(
        "repro", "run a canned experiment and report expected vs computed");
    std::string repro_name, repro_out, repro_manifest;
    bool repro_extended = false;
    uint64_t repro_seed = 1;
    int repro_workers = 1;
    cmd_repro->add_option("experiment", repro_name)
        ->required()
        ->check(CLI::IsMember({"table1", "table2", "table3", "fig6", "fig7"}));
    cmd_repro->add_flag("--extended", repro_extended,
                        "include the slow informational checks");
    cmd_repro->add_option("--seed", repro_seed);
    cmd_repro->add_option("-o,--output", repro_out);
    cmd_repro->add_option("--manifest", repro_manifest);
    auto* repro_workers_opt = cmd_repro->add_option("--workers", repro_workers);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*cmd_enum) {
            const int workers =
                resolve_workers(enum_workers, enum_workers_opt->count() > 0);
            const int n = log2_length(enum_n);
            const size_t weight = static_cast<size_t>(enum_np);
            EnumLimits limits;
            if (enum_max_emitted) limits.max_emitted = enum_max_emitted;
            if (enum_max_nodes) limits.max_nodes = enum_max_nodes;
            OutputTarget out;
            out.open(enum_out);
            EnumStatus status = EnumStatus::complete;
            uint64_t count = 0;
            const bool tree = enum_kind == "search-tree";
            if (tree && enum_lmax < 1)
                throw std::invalid_argument(
                    "--lmax >= 1 is required for --kind search-tree");
            if (enum_count_only) {
                if (tree) {
                    const SearchTreeCount res = count_search_tree_symmetric(
                        n, weight, static_cast<int>(enum_lmax), workers, limits);
                    status = res.status;
                    count = res.total;
                } else {
                    auto tally = [&](const Pattern&) { ++count; };
                    status = enum_kind == "primitive"
                                 ? enumerate_primitive(n, weight, tally, limits)
                                 : enumerate_symmetric_all(n, weight, tally,
                                                            limits);
                }
                if (status == EnumStatus::complete)
                    *out.out << "count=" << count << '\n';
            } else {
                write_pattern_header(*out.out, n);
                auto write = [&](const Pattern& p) {
                    write_pattern_line(*out.out, p);
                    ++count;
                };
                status = tree ? search_tree_symmetric(
                                    n, weight, static_cast<int>(enum_lmax),
                                    [&](const Pattern& p, int) { write(p); },
                                    limits)
                         : enum_kind == "primitive"
                             ? enumerate_primitive(n, weight, write, limits)
                             : enumerate_symmetric_all(n, weight, write, limits);
            }
            json m;
            m["subcommand"] = "enumerate";
            m["argv"] = argv_json(argc, argv);
            m["workers"] = workers;
            emit_manifest(std::move(m), enum_manifest, out.path);
            if (status == EnumStatus::cap_hit) {
                std::cerr << "resource cap hit after " << count
                          << " patterns\n";
                return exit_cap;
            }
            return exit_ok;
        }

        if (*cmd_erasure || *cmd_canon) {
            const bool canon = static_cast<bool>(*cmd_canon);
            const std::string& in_path = canon ? canon_file : erasure_file;
            OutputTarget out;
            out.open(canon ? canon_out : erasure_out);
            const PatternFile pf = read_patterns_file(in_path);
            for (const Pattern& p : pf.patterns) {
                if (canon) {
                    const Pattern rep = canonical_pattern(p);
                    *out.out << to_bit_string(p) << '\t' << to_bit_string(rep)
                             << "\tprimitive:" << (rep == p ? 1 : 0) << '\n';
                } else {
                    const Pattern e = erasure_pattern(p);
                    const bool sym = e == p;
                    *out.out << to_bit_string(p) << '\t' << to_bit_string(e)
                             << "\tsymmetric:" << (sym ? 1 : 0) << "\torder:";
                    if (sym)
                        *out.out << minimal_generators(p)->size();
                    else
                        *out.out << '-';
                    *out.out << '\n';
                }
            }
            json m;
            m["subcommand"] = canon ? "canonicalize" : "erasure";
            m["argv"] = argv_json(argc, argv);
            emit_manifest(std::move(m), canon ? canon_manifest : erasure_manifest,
                          out.path);
            return exit_ok;
        }

        if (*cmd_de) {
            const ResolvedCode code = resolve_code(de_src);
            const ChannelModel channel = ChannelModel::parse(de_channel);
            const DeResult de =
                run_de(code.punctured, code.shortened, channel);
            OutputTarget out;
            out.open(de_out);
            *out.out << "position,reliability,p_ga\n";
            for (size_t i = 0; i < de.reliability.size(); ++i)
                *out.out << i << ',' << format_double(de.reliability[i]) << ','
                         << format_double(de.p_ga[i]) << '\n';
            json m;
            m["subcommand"] = "de";
            m["argv"] = argv_json(argc, argv);
            emit_manifest(std::move(m), de_manifest, out.path);
            return exit_ok;
        }

        if (*cmd_th) {
            const ResolvedCode code = resolve_code(th_src);
            if (code.shortened.any())
                throw std::invalid_argument(
                    "threshold supports puncturing patterns only");
            const ThresholdResult th = noise_threshold(
                code.punctured, static_cast<size_t>(th_k), th_eta, th_tol);
            OutputTarget out;
            out.open(th_out);
            *out.out << "sigma2,snr_db\n"
                     << format_double(th.sigma2) << ','
                     << format_double(th.snr_db) << '\n';
            json m;
            m["subcommand"] = "threshold";
            m["argv"] = argv_json(argc, argv);
            emit_manifest(std::move(m), th_manifest, out.path);
            return exit_ok;
        }

        if (*cmd_opt) {
            const int workers =
                resolve_workers(opt_workers, opt_workers_opt->count() > 0);
            std::vector<Pattern> candidates;
            if (opt_kind.empty() == opt_file.empty())
                throw std::invalid_argument(
                    "exactly one of --kind and --pattern-file is required");
            if (!opt_file.empty()) {
                PatternFile pf = read_patterns_file(opt_file);
                candidates = std::move(pf.patterns);
            } else {
                const int n = log2_length(opt_n);
                const size_t weight = static_cast<size_t>(opt_np);
                auto collect = [&](const Pattern& p) {
                    candidates.push_back(p);
                };
                if (opt_kind == "primitive") {
                    enumerate_primitive(n, weight, collect);
                } else if (opt_kind == "symmetric") {
                    enumerate_symmetric_all(n, weight, collect);
                } else {
                    if (opt_lmax < 1)
                        throw std::invalid_argument(
                            "--lmax >= 1 is required for --kind search-tree");
                    search_tree_symmetric(
                        n, weight, static_cast<int>(opt_lmax),
                        [&](const Pattern& p, int) { candidates.push_back(p); });
                }
            }
            OptimizeConfig cfg;
            cfg.k = static_cast<size_t>(opt_k);
            cfg.objective = opt_objective == "threshold"
                                ? Objective::max_threshold
                                : Objective::min_wer;
            cfg.eta = opt_eta;
            cfg.tol = opt_tol;
            cfg.sigma2 = opt_sigma2;
            cfg.workers = workers;
            const OptimizeResult best = optimize_pattern(candidates, cfg);
            json record;
            record["pattern"] = to_bit_string(best.pattern);
            record["info_set"] = pattern_indices(best.info);
            record["score"] = best.score;
            record["candidates_evaluated"] = best.candidates_evaluated;
            OutputTarget out;
            out.open(opt_out);
            *out.out << record.dump(2) << '\n';
            json m;
            m["subcommand"] = "optimize";
            m["argv"] = argv_json(argc, argv);
            m["workers"] = workers;
            emit_manifest(std::move(m), opt_manifest, out.path);
            return exit_ok;
        }

        if (*cmd_sim) {
            const int workers =
                resolve_workers(sim_workers, sim_workers_opt->count() > 0);
            const ResolvedCode code = resolve_code(sim_src);
            const ChannelModel channel = ChannelModel::parse(sim_channel);
            const DeResult de =
                run_de(code.punctured, code.shortened, channel);
            Pattern excluded = erasure_pattern(code.punctured);
            excluded |= code.forced_frozen;
            const Pattern info =
                select_information(de, static_cast<size_t>(sim_k), excluded);
            McConfig mc;
            mc.channel = channel;
            mc.max_words = sim_max_words;
            mc.max_errors = sim_max_errors;
            mc.seed = sim_seed;
            mc.all_zero = sim_all_zero;
            mc.min_sum = sim_min_sum;
            mc.workers = workers;
            const WerEstimate est =
                monte_carlo_wer(code.punctured, code.shortened, info, mc);
            OutputTarget out;
            out.open(sim_out);
            const bool awgn = channel.kind == ChannelModel::Kind::awgn;
            *out.out << "snr_db,sigma2,words,errors,wer,ci_lo,ci_hi\n"
                     << (awgn ? format_double(snr_db(channel.param)) : "nan")
                     << ',' << format_double(channel.param) << ',' << est.words
                     << ',' << est.errors << ',' << format_double(est.wer)
                     << ',' << format_double(est.ci_low) << ','
                     << format_double(est.ci_high) << '\n';
            json m;
            m["subcommand"] = "simulate";
            m["argv"] = argv_json(argc, argv);
            m["workers"] = workers;
            m["seed"] = sim_seed;
            emit_manifest(std::move(m), sim_manifest, out.path);
            return exit_ok;
        }

        if (*cmd_repro) {
            const int workers =
                resolve_workers(repro_workers, repro_workers_opt->count() > 0);
            repro::Report report;
            if (repro_name == "table1")
                report = repro::table1();
            else if (repro_name == "table2")
                report = repro::table2();
            else if (repro_name == "table3")
                report = repro::table3(repro_extended, workers);
            else if (repro_name == "fig6")
                report = repro::fig6(workers);
            else
                report = repro::fig7(workers, repro_seed);
            OutputTarget out;
            out.open(repro_out);
            repro::write_report(report, *out.out);
            json m;
            m["subcommand"] = "repro";
            m["argv"] = argv_json(argc, argv);
            m["workers"] = workers;
            m["seed"] = repro_seed;
            emit_manifest(std::move(m), repro_manifest, out.path);
            return report.all_pass() ? exit_ok : exit_mismatch;
        }
    } catch (const OrbitOverflowError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_cap;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

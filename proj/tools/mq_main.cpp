// mq: build and analyze multilinear/Macaulay linear systems of Boolean
// quadratic polynomial systems, certify exact condition-number lower bounds,
// and simulate the isolation + measurement extraction loop.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mq/condition.hpp"
#include "mq/io.hpp"
#include "mq/sampler.hpp"
#include "mq/version.hpp"

namespace {

using namespace mq;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitParse = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitVerify = 4;

struct OutputTarget {
    std::string path;  // empty = stdout

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path);
        if (!out) throw Error("cannot write output file: " + path);
        out << text;
    }
};

std::string header_line(const std::string& config) {
    std::ostringstream os;
    os << "# " << kToolName << " " << kVersion << "\n# config: " << config << "\n";
    return os.str();
}

Monomial parse_exponents(const std::string& csv, int n) {
    std::vector<int> exps;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) exps.push_back(std::stoi(item));
    if (static_cast<int>(exps.size()) != n)
        throw ParseError("exponent list has length " + std::to_string(exps.size()) +
                         ", expected " + std::to_string(n));
    return Monomial(std::move(exps));
}

// Reduce an input file to a normalized C system, lifting mod-2 inputs first.
struct Prepared {
    PolySystem system;  // normalized C system with field equations
    bool zero_solution = false;
    int original_vars = 0;

    Prepared() : system(0, Field::kC) {}
};

Prepared prepare(const PolySystem& input) {
    Prepared out;
    out.original_vars = input.num_vars();
    PolySystem c_system(0, Field::kC);
    if (input.field() == Field::kF2) {
        c_system = lift_f2_to_c(input).system;
    } else {
        c_system = input;
        if (!c_system.includes_field_equations()) c_system.append_field_equations();
    }
    NormalizeResult norm = normalize_constants(c_system);
    if (norm.zero_solution) {
        out.zero_solution = true;
        out.system = std::move(c_system);
    } else {
        out.system = std::move(norm.system);
    }
    return out;
}

int cmd_reduce(const std::string& input, const OutputTarget& output,
               const std::string& sidecar, std::optional<int> isolate_k,
               uint64_t seed) {
    PolySystem sys = load_system(input);
    nlohmann::json meta;
    meta["tool"] = std::string(kToolName) + " " + kVersion;
    meta["input"] = input;
    meta["seed"] = seed;

    PolySystem lifted(0, Field::kC);
    if (sys.field() == Field::kF2) {
        LiftResult lift = lift_f2_to_c(sys);
        lifted = lift.system;
        meta["num_original_vars"] = lift.num_original_vars;
        meta["num_vars"] = lift.num_vars;
        meta["num_eqs"] = lift.num_eqs;
        nlohmann::json slacks = nlohmann::json::array();
        for (const auto& sv : lift.slack_vars)
            slacks.push_back({{"index", sv.index},
                              {"src_poly", sv.src_poly},
                              {"bit", sv.bit}});
        meta["slack_vars"] = slacks;
    } else {
        lifted = sys;
        if (!lifted.includes_field_equations()) lifted.append_field_equations();
    }

    if (isolate_k) {
        IsolationAttempt attempt =
            vv_augment(lifted, *isolate_k, seed, sys.num_vars());
        meta["isolate_k"] = *isolate_k;
        meta["affine_rows"] = static_cast<int>(attempt.affine_rows.size());
        lifted = attempt.combined;
    }

    NormalizeResult norm = normalize_constants(lifted);
    meta["zero_solution"] = norm.zero_solution;
    if (norm.zero_solution) {
        std::cerr << "no constant terms: the all-zero assignment is a solution\n";
        output.write(format_system(lifted));
    } else {
        meta["pivot_index"] = norm.pivot_source_index;
        output.write(format_system(norm.system));
    }
    if (!sidecar.empty()) {
        std::ofstream out(sidecar);
        if (!out) throw Error("cannot write sidecar: " + sidecar);
        out << meta.dump(1) << "\n";
    }
    return kExitOk;
}

MacaulaySystem build_from_cli(const PolySystem& sys, const std::string& flavor,
                              const std::string& kind, int d, long cap) {
    BuildOptions opts;
    if (cap > 0) {
        opts.plain_col_cap = cap;
        opts.boolean_col_cap = cap;
    }
    if (flavor == "boolean") {
        PolySystem f1(sys.num_vars(), Field::kC);
        for (const auto& p : sys.non_field_polys()) f1.add(p);
        return build_boolean_macaulay(f1, d, opts);
    }
    return build_macaulay(sys, degree_kind_from_name(kind), d, opts);
}

int cmd_build(const std::string& input, const OutputTarget& output,
              const std::string& flavor, const std::string& kind, int d,
              long cap) {
    Prepared prep = prepare(load_system(input));
    if (prep.zero_solution)
        std::cerr << "note: no constant terms; building the unnormalized system\n";
    MacaulaySystem built = build_from_cli(prep.system, flavor, kind, d, cap);
    output.write(format_matrix(built));
    std::cerr << "rows " << built.m.rows() << " cols " << built.m.cols()
              << " nnz " << built.m.mat.nnz() << "\n";
    return kExitOk;
}

int cmd_oracle(const std::string& input, const std::string& flavor,
               const std::string& kind, int d, const std::string& row_mult,
               int row_poly, int kth, const std::string& col_csv) {
    Prepared prep = prepare(load_system(input));
    PolySystem f1(prep.system.num_vars(), Field::kC);
    for (const auto& p : prep.system.non_field_polys()) f1.add(p);
    const PolySystem& oracle_sys = flavor == "boolean" ? f1 : prep.system;
    MacaulaySpec spec{flavor == "boolean" ? Flavor::kBoolean : Flavor::kPlain,
                      degree_kind_from_name(kind), d, &oracle_sys};
    const int n = oracle_sys.num_vars();

    if (!row_mult.empty()) {
        RowLabel label{parse_exponents(row_mult, n), row_poly};
        if (!col_csv.empty()) {
            Monomial col = parse_exponents(col_csv, n);
            std::cout << entry_value_oracle(spec, label, col).get_str() << "\n";
        } else {
            Monomial col = entry_col_oracle(spec, label, kth);
            std::cout << col.str() << " "
                      << entry_value_oracle(spec, label, col).get_str() << "\n";
        }
        return kExitOk;
    }
    if (!col_csv.empty()) {
        Monomial col = parse_exponents(col_csv, n);
        RowLabel label = entry_row_oracle(spec, col, kth);
        std::cout << label.multiplier.str() << " poly " << label.poly_index << " "
                  << entry_value_oracle(spec, label, col).get_str() << "\n";
        return kExitOk;
    }
    throw ParseError("oracle: provide --row-multiplier and/or --col");
}

int cmd_analyze(const std::string& input, const OutputTarget& output,
                const std::string& flavor, const std::string& kind, int d,
                const std::string& format, long cap) {
    Prepared prep = prepare(load_system(input));
    if (prep.zero_solution) {
        output.write("zero_solution true\n");
        return kExitOk;
    }
    BuildOptions opts;
    if (cap > 0) {
        opts.plain_col_cap = cap;
        opts.boolean_col_cap = cap;
    }
    BoundReport r = analyze_system(
        prep.system, flavor == "boolean" ? Flavor::kBoolean : Flavor::kPlain,
        degree_kind_from_name(kind), d, opts);

    std::ostringstream os;
    if (format == "csv") {
        os << "num_vars,rows,cols,degree,kind,solutions,min_weight,weights_equal,"
              "matrix_norm,kappa,kappa_b,corollary_bound,theorem_bound,msv_norm,"
              "grover,classical\n";
        os << r.num_vars << "," << r.matrix_rows << "," << r.matrix_cols << ","
           << r.degree << "," << degree_kind_name(r.kind) << "," << r.num_solutions
           << "," << r.min_weight << "," << (r.weights_equal ? 1 : 0) << ","
           << r.matrix_norm << "," << r.kappa << "," << r.kappa_b << ","
           << r.corollary_bound << "," << r.theorem_bound << "," << r.msv_norm
           << "," << r.costs.grover_queries << ","
           << r.costs.cumulative_count.get_str() << "\n";
    } else {
        os << header_line("analyze " + input);
        os << "matrix: " << r.matrix_rows << " x " << r.matrix_cols
           << "  (degree " << r.degree << ", " << degree_kind_name(r.kind)
           << ", " << (r.flavor == Flavor::kBoolean ? "boolean" : "plain")
           << ")\n";
        os << "solutions: " << r.num_solutions << "  min weight: " << r.min_weight
           << "  equal weights: " << (r.weights_equal ? "yes" : "no") << "\n";
        os << "||M|| = " << r.matrix_norm << "  kappa = " << r.kappa
           << "  kappa_b = " << r.kappa_b << "\n";
        if (r.flavor == Flavor::kBoolean)
            os << "corollary lower bound (1/2)sqrt((2^h-1)/t) = "
               << r.corollary_bound << "\n";
        else
            os << "theorem lower bound sqrt((c_d^h-1)/t) = " << r.theorem_bound
               << "\n";
        os << "||y^(a)|| at min weight = " << r.msv_norm << "\n";
        if (r.unique_identity_gap >= 0)
            os << "unique-solution identity gap = " << r.unique_identity_gap
               << "\n";
        os << "search: C(n,h) = " << r.costs.weight_h_count.get_str()
           << "  cumulative = " << r.costs.cumulative_count.get_str()
           << "  grover = " << r.costs.grover_queries << "\n";
    }
    output.write(os.str());
    return kExitOk;
}

int cmd_lowerbound(int n, int d, const std::string& kind,
                   const std::string& rule, const OutputTarget& output,
                   const std::string& format, bool minor_bounds) {
    GammaRule gamma;
    if (rule == "h^h/2") {
        gamma = nullptr;  // library default
    } else if (rule == "h^h") {
        gamma = [](int h) { return Rational(int_pow(h, h)); };
    } else if (rule.rfind("const:", 0) == 0) {
        Rational c(rule.substr(6));
        c.canonicalize();
        gamma = [c](int) { return c; };
    } else {
        throw ParseError("unknown rule '" + rule +
                         "' (expected h^h/2, h^h, or const:<rational>)");
    }
    if (d < 0) d = 3 * n;
    DegreeKind dk = degree_kind_from_name(kind);
    std::vector<PdVerdict> verdicts = certify_pd_bound(n, gamma, d, dk);
    GramSpec gram = minor_bounds ? gram_symmetrized(n, d, dk) : GramSpec{};

    std::ostringstream os;
    bool all = true;
    if (format == "csv") {
        os << "h,gamma,certified" << (minor_bounds ? ",minor_bound" : "") << "\n";
        for (const auto& v : verdicts) {
            os << v.h << "," << v.gamma.get_str() << "," << (v.certified ? 1 : 0);
            if (minor_bounds) os << "," << gram_minor_bound(gram, v.h).get_str();
            os << "\n";
            all = all && v.certified;
        }
    } else {
        os << header_line("lowerbound n=" + std::to_string(n) +
                          " d=" + std::to_string(d) + " kind=" + kind +
                          " rule=" + rule);
        for (const auto& v : verdicts) {
            os << "h = " << v.h << "  gamma = " << v.gamma.get_str()
               << "  certified = " << (v.certified ? "true" : "false");
            if (minor_bounds)
                os << "  bound = " << gram_minor_bound(gram, v.h).get_str();
            os << "\n";
            all = all && v.certified;
        }
        os << (all ? "all h certified\n" : "certification FAILED for some h\n");
    }
    output.write(os.str());
    return all ? kExitOk : kExitVerify;
}

int cmd_extract(const std::string& input, const OutputTarget& output,
                double eps, uint64_t seed, int d, double noise,
                const std::string& format, bool tradeoff, int trials) {
    PolySystem sys = load_system(input);
    std::ostringstream os;

    if (tradeoff) {
        // Empirical rounds-to-recover versus degree, for unique-solution
        // systems; CSV only.
        Prepared prep = prepare(sys);
        if (prep.zero_solution) throw VerificationError("system has the zero solution");
        const int n = prep.system.num_vars();
        os << "d,r_required,mean_rounds_to_recover,success_rate\n";
        for (int dd = 1; dd <= n; ++dd) {
            ExtractOptions opts;
            opts.degree = dd;
            opts.noise = noise;
            long total_rounds = 0;
            int successes = 0;
            int r_req = 0;
            for (int t = 0; t < trials; ++t) {
                ExtractionResult res = run_extraction(
                    prep.system, eps, derive_seed(seed, t), opts);
                if (res.status != ExtractStatus::kOk)
                    throw VerificationError("extraction not unique at d=" +
                                            std::to_string(dd));
                r_req = res.trace.rounds_planned;
                // rounds until the final recovered set first appeared
                uint64_t final_mask = res.trace.rounds.back().recovered;
                long used = 0;
                for (const auto& round : res.trace.rounds) {
                    ++used;
                    if (round.recovered == final_mask) break;
                }
                total_rounds += used;
                if (res.verified) ++successes;
            }
            os << dd << "," << r_req << ","
               << static_cast<double>(total_rounds) / trials << ","
               << static_cast<double>(successes) / trials << "\n";
        }
        output.write(os.str());
        return kExitOk;
    }

    if (sys.field() == Field::kF2) {
        PipelineResult res = full_pipeline(sys, eps, seed);
        if (format != "csv") {
            os << header_line("extract " + input + " eps=" + std::to_string(eps) +
                              " seed=" + std::to_string(seed));
            os << "attempts " << res.attempts << " total_rounds "
               << res.total_rounds << " capacity_skips " << res.capacity_skips
               << "\n";
        }
        if (!res.success) {
            os << "failure: schedule exhausted (system may be unsatisfiable)\n";
            output.write(os.str());
            return kExitVerify;
        }
        os << "assignment ";
        for (uint8_t b : res.assignment.bits) os << int(b);
        os << "\nisolated_at_k " << res.isolating_k << "\n";
        output.write(os.str());
        return kExitOk;
    }

    Prepared prep = prepare(sys);
    if (prep.zero_solution) {
        os << "assignment " << std::string(sys.num_vars(), '0') << "\n";
        output.write(os.str());
        return kExitOk;
    }
    ExtractOptions opts;
    opts.degree = d;
    opts.noise = noise;
    ExtractionResult res =
        run_extraction(prep.system, eps, seed, opts);
    if (res.status != ExtractStatus::kOk) {
        os << "extraction failed: "
           << (res.status == ExtractStatus::kNonUnique
                   ? "rank deficiency (isolate first)"
                   : res.status == ExtractStatus::kInfeasible
                         ? "linear system infeasible"
                         : "capacity exceeded")
           << "\n";
        output.write(os.str());
        return res.status == ExtractStatus::kCapacity ? kExitCapacity : kExitVerify;
    }
    if (format != "csv")
        os << header_line("extract " + input + " eps=" + std::to_string(eps) +
                          " seed=" + std::to_string(seed) +
                          " d=" + std::to_string(res.degree_used));
    for (size_t i = 0; i < res.trace.rounds.size(); ++i) {
        os << "round " << i << " sampled ";
        for (int v = 0; v < res.assignment.num_vars(); ++v)
            os << ((res.trace.rounds[i].sampled >> v) & 1ULL);
        os << " recovered ";
        for (int v = 0; v < res.assignment.num_vars(); ++v)
            os << ((res.trace.rounds[i].recovered >> v) & 1ULL);
        os << "\n";
    }
    os << "assignment ";
    for (uint8_t b : res.assignment.bits) os << int(b);
    os << "\nverified " << (res.verified ? "true" : "false") << "\n";
    output.write(os.str());
    return res.verified ? kExitOk : kExitVerify;
}

int cmd_bench(int max_n, const OutputTarget& output, const std::string& format) {
    std::ostringstream os;
    // PD certification sweep.
    bool all = true;
    for (int n = 1; n <= max_n; ++n) {
        auto verdicts = certify_pd_bound(n);
        for (const auto& v : verdicts) all = all && v.certified;
    }
    // Bound-vs-search comparison grid.
    if (format == "csv") {
        os << "n,h,d,kind,qls_lower_bound,grover,classical_cumulative\n";
        for (int n : {10, 20, 40}) {
            for (int h = 1; h <= n / 2; h += std::max(1, n / 8)) {
                for (int mult : {1, 3}) {
                    const int d = mult * n;
                    SearchCosts c = search_costs(n, h, d);
                    os << n << "," << h << "," << d << ",max," << c.qls_bound_max
                       << "," << c.grover_queries << ","
                       << c.cumulative_count.get_str() << "\n";
                }
            }
        }
    } else {
        os << header_line("bench max_n=" + std::to_string(max_n));
        os << "pd certification (rule h^h/2, d=3n, all n <= "
           << max_n << "): " << (all ? "all true" : "FAILED") << "\n";
        os << "n   h   d     qls_bound      grover         classical\n";
        for (int n : {10, 20, 40}) {
            for (int h = 1; h <= n / 2; h += std::max(1, n / 8)) {
                for (int mult : {1, 3}) {
                    const int d = mult * n;
                    SearchCosts c = search_costs(n, h, d);
                    os << n << "  " << h << "  " << d << "  " << c.qls_bound_max
                       << "  " << c.grover_queries << "  "
                       << c.cumulative_count.get_str() << "\n";
                }
            }
        }
    }
    output.write(os.str());
    return all ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Macaulay linear systems of Boolean quadratic polynomial "
                 "systems: construction, condition bounds, extraction"};
    app.require_subcommand(1);

    std::string input, out_path, sidecar, flavor = "boolean", kind = "total";
    std::string format = "text", rule = "h^h/2", row_mult, col_csv;
    int d = -1, n = 0, kth = 0, row_poly = 0, trials = 50, max_n = 12;
    long cap = 0;
    double eps = 0.1, noise = 0.0;
    uint64_t seed = 1;
    bool minor_bounds = false, tradeoff = false;
    std::optional<int> isolate_k;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "text or csv");
        cmd->add_option("--output,-o", out_path, "output file (default stdout)");
    };

    auto* reduce = app.add_subcommand("reduce", "lift mod-2 input and normalize constants");
    reduce->add_option("--input,-i", input)->required();
    reduce->add_option("--sidecar", sidecar, "provenance JSON path");
    int isolate_k_value = -1;
    reduce->add_option("--isolate-k", isolate_k_value, "append k+2 random affine rows");
    reduce->add_option("--seed", seed);
    add_common(reduce);

    auto* build = app.add_subcommand("build", "materialize the construction matrix");
    build->add_option("--input,-i", input)->required();
    build->add_option("--flavor", flavor, "plain or boolean");
    build->add_option("--degree-kind", kind, "max or total");
    build->add_option("--d", d, "degree bound (default: n for boolean)");
    build->add_option("--cap", cap, "column capacity override");
    add_common(build);

    auto* oracle = app.add_subcommand("oracle", "nonzero-entry oracles");
    oracle->add_option("--input,-i", input)->required();
    oracle->add_option("--flavor", flavor);
    oracle->add_option("--degree-kind", kind);
    oracle->add_option("--d", d)->required();
    oracle->add_option("--row-multiplier", row_mult, "multiplier exponents CSV");
    oracle->add_option("--row-poly", row_poly, "polynomial index");
    oracle->add_option("--k", kth, "nonzero index (0-based)");
    oracle->add_option("--col", col_csv, "column exponents CSV");

    auto* analyze = app.add_subcommand("analyze", "condition-number report");
    analyze->add_option("--input,-i", input)->required();
    analyze->add_option("--flavor", flavor);
    analyze->add_option("--degree-kind", kind);
    analyze->add_option("--d", d);
    analyze->add_option("--cap", cap);
    add_common(analyze);

    auto* lower = app.add_subcommand("lowerbound", "per-h positive definiteness verdicts");
    lower->add_option("--n", n)->required();
    lower->add_option("--d", d, "degree (default 3n)");
    lower->add_option("--degree-kind", kind, "max or total")->default_val("max");
    lower->add_option("--rule", rule, "h^h/2, h^h, or const:<rational>");
    lower->add_flag("--minor-bounds", minor_bounds, "also print exact 1/<1,G^-1 1>");
    add_common(lower);

    auto* extract = app.add_subcommand("extract", "sample-and-union extraction");
    extract->add_option("--input,-i", input)->required();
    extract->add_option("--eps", eps);
    extract->add_option("--seed", seed);
    extract->add_option("--d", d);
    extract->add_option("--noise", noise);
    extract->add_flag("--tradeoff", tradeoff, "emit d vs rounds CSV");
    extract->add_option("--trials", trials, "seeds per point in tradeoff mode");
    add_common(extract);

    auto* bench = app.add_subcommand("bench", "acceptance sweeps and comparison tables");
    bench->add_option("--max-n", max_n, "PD sweep upper bound");
    add_common(bench);

    CLI11_PARSE(app, argc, argv);
    if (reduce->count("--isolate-k")) isolate_k = isolate_k_value;

    OutputTarget output{out_path};
    try {
        if (app.got_subcommand(reduce))
            return cmd_reduce(input, output, sidecar, isolate_k, seed);
        if (app.got_subcommand(build))
            return cmd_build(input, output, flavor, kind, d, cap);
        if (app.got_subcommand(oracle))
            return cmd_oracle(input, flavor, kind, d, row_mult, row_poly, kth,
                              col_csv);
        if (app.got_subcommand(analyze))
            return cmd_analyze(input, output, flavor, kind, d, format, cap);
        if (app.got_subcommand(lower))
            return cmd_lowerbound(n, d, kind, rule, output, format, minor_bounds);
        if (app.got_subcommand(extract))
            return cmd_extract(input, output, eps, seed, d, noise, format,
                               tradeoff, trials);
        if (app.got_subcommand(bench)) return cmd_bench(max_n, output, format);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const VerificationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerify;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

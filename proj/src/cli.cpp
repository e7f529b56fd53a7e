#include "leleec/cli_io.hpp"
#include "leleec/error.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace leleec {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitTimeLimit = 3;

struct DecomposeArgs {
    std::string layout;
    bool no_stitch = false;
    bool preselect = false;
    bool no_preselect = false;
    bool no_bridges = false;
    bool monolithic = false;
    std::string alpha;
    std::string svg;
    std::string lp_dump;
    double time_limit = 0;
    int threads = 1;
    std::string out;
    std::string report = "text";
};

std::string text_report(const ResultFile& r) {
    std::ostringstream os;
    os << "cost " << format_rational(r.cost) << '\n'
       << "conflicts " << r.conflicts.size() << '\n'
       << "stitches " << r.stitches.size() << '\n'
       << "cuts " << r.cuts.size() << '\n'
       << "trim_shapes " << r.trim_cuts.size() << '\n'
       << "components " << r.stats.components << '\n'
       << "subproblems " << r.stats.subproblems << '\n'
       << "bridges_cut " << r.stats.bridges_cut << '\n'
       << "preselected " << r.stats.preselected << '\n'
       << "nodes " << r.stats.nodes_explored << '\n'
       << "optimal " << (r.stats.proven_optimal ? "yes" : "no (time limit)") << '\n';
    return os.str();
}

std::string json_report(const ResultFile& r, double seconds) {
    std::ostringstream os;
    os << "{\"cost\": \"" << format_rational(r.cost) << "\", \"conflicts\": " << r.conflicts.size()
       << ", \"stitches\": " << r.stitches.size() << ", \"cuts\": " << r.cuts.size()
       << ", \"trim_shapes\": " << r.trim_cuts.size() << ", \"components\": " << r.stats.components
       << ", \"subproblems\": " << r.stats.subproblems << ", \"nodes\": " << r.stats.nodes_explored
       << ", \"proven_optimal\": " << (r.stats.proven_optimal ? "true" : "false") << ", \"seconds\": " << seconds
       << "}\n";
    return os.str();
}

int run_decompose(const DecomposeArgs& a) {
    LayoutFile layout = parse_layout(a.layout);
    Config cfg = layout.config;
    if (a.no_stitch) cfg.enable_stitch = false;
    if (a.preselect) cfg.enable_preselect = true;
    if (a.no_preselect) cfg.enable_preselect = false;
    if (a.no_bridges) cfg.enable_bridges = false;
    if (!a.alpha.empty()) cfg.alpha = parse_rational(a.alpha);
    cfg.validate();

    DecomposeOptions options;
    options.monolithic = a.monolithic;
    options.threads = a.threads;
    if (a.time_limit > 0) options.time_limit = Seconds(a.time_limit);
    const Decomposition d = decompose(layout.features, cfg, options);
    const ResultFile result = make_result_file(d, cfg);

    if (!a.out.empty()) write_text(a.out, emit_result(result));
    if (!a.svg.empty()) write_text(a.svg, emit_svg(result));
    if (!a.lp_dump.empty()) {
        ModelOptions mopt;
        mopt.with_stitch = cfg.enable_stitch;
        mopt.alpha = cfg.alpha;
        const auto model = build_decomposition_model(d.graphs.layout, d.graphs.endcuts,
                                                     SubProblem::whole(d.graphs.layout, d.graphs.endcuts), mopt);
        write_text(a.lp_dump, export_lp(model.ilp));
    }
    std::cout << (a.report == "json" ? json_report(result, d.stats.elapsed.count()) : text_report(result));
    return result.stats.proven_optimal ? kExitOk : kExitTimeLimit;
}

int run_baseline(const std::string& path, double time_limit, const std::string& out, const std::string& report) {
    const LayoutFile layout = parse_layout(path);
    std::optional<Seconds> limit;
    if (time_limit > 0) limit = Seconds(time_limit);
    const BaselineDecomposition d = decompose_lelele(layout.features, layout.config, limit);
    if (!out.empty()) write_text(out, emit_baseline(d));
    if (report == "json")
        std::cout << "{\"cost\": \"" << format_rational(d.result.cost) << "\", \"conflicts\": "
                  << d.result.conflicts.size() << ", \"components\": " << d.components
                  << ", \"proven_optimal\": " << (d.proven_optimal ? "true" : "false") << "}\n";
    else
        std::cout << "cost " << format_rational(d.result.cost) << "\nconflicts " << d.result.conflicts.size()
                  << "\ncomponents " << d.components << "\noptimal " << (d.proven_optimal ? "yes" : "no (time limit)")
                  << '\n';
    return d.proven_optimal ? kExitOk : kExitTimeLimit;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Two-mask plus trim-mask layout decomposition", "leleec"};
    app.require_subcommand(1);

    DecomposeArgs dec;
    auto* decompose_cmd = app.add_subcommand("decompose", "Assign masks and select end-cuts");
    decompose_cmd->add_option("layout", dec.layout, "Layout file")->required();
    decompose_cmd->add_flag("--no-stitch", dec.no_stitch, "Do not split features at stitches");
    auto* pre_on = decompose_cmd->add_flag("--preselect", dec.preselect, "Apply end-cuts that have no trim conflict before solving");
    auto* pre_off = decompose_cmd->add_flag("--no-preselect", dec.no_preselect, "Disable end-cut pre-selection (default)");
    pre_on->excludes(pre_off);
    decompose_cmd->add_flag("--no-bridges", dec.no_bridges, "Do not split components at bridges");
    decompose_cmd->add_flag("--monolithic", dec.monolithic, "Solve one model over the whole layout");
    decompose_cmd->add_option("--alpha", dec.alpha, "Stitch weight, decimal or p/q");
    decompose_cmd->add_option("--svg", dec.svg, "Write an SVG rendering");
    decompose_cmd->add_option("--lp-dump", dec.lp_dump, "Write the whole-layout model in LP format");
    decompose_cmd->add_option("--time-limit", dec.time_limit, "Seconds; the incumbent is reported on expiry")
        ->check(CLI::NonNegativeNumber);
    decompose_cmd->add_option("--threads", dec.threads, "Sub-problems solved concurrently")->check(CLI::PositiveNumber);
    decompose_cmd->add_option("--out", dec.out, "Write the result file");
    decompose_cmd->add_option("--report", dec.report, "Report format on stdout")
        ->check(CLI::IsMember({"json", "text"}));

    std::string base_layout, base_out, base_report = "text";
    double base_limit = 0;
    auto* baseline_cmd = app.add_subcommand("baseline-lelele", "Three-mask coloring without end-cuts");
    baseline_cmd->add_option("layout", base_layout, "Layout file")->required();
    baseline_cmd->add_option("--time-limit", base_limit, "Seconds")->check(CLI::NonNegativeNumber);
    baseline_cmd->add_option("--out", base_out, "Write the coloring");
    baseline_cmd->add_option("--report", base_report, "Report format")->check(CLI::IsMember({"json", "text"}));

    std::string gen_kind, gen_out;
    int gen_n = 1;
    std::uint64_t gen_seed = 1;
    Coord gen_w = 10, gen_s = 10;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic layout");
    gen_cmd->add_option("kind", gen_kind, "grid, comb, clique4_array or via_array")
        ->required()
        ->check(CLI::IsMember({"grid", "comb", "clique4_array", "via_array"}));
    gen_cmd->add_option("n", gen_n, "Size parameter")->required()->check(CLI::PositiveNumber);
    gen_cmd->add_option("--seed", gen_seed, "Random seed");
    gen_cmd->add_option("--w-min", gen_w, "Minimum width")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--s-min", gen_s, "Minimum spacing")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--out", gen_out, "Output path (stdout when omitted)");

    std::string ver_layout, ver_result;
    auto* verify_cmd = app.add_subcommand("verify", "Re-check a result against its layout");
    verify_cmd->add_option("layout", ver_layout, "Layout file")->required();
    verify_cmd->add_option("result", ver_result, "Result file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*decompose_cmd) return run_decompose(dec);
        if (*baseline_cmd) return run_baseline(base_layout, base_limit, base_out, base_report);
        if (*gen_cmd) {
            const std::string text = emit_layout(gen_synthetic(gen_kind, gen_n, gen_seed, Config::from_rules(gen_w, gen_s)));
            if (gen_out.empty())
                std::cout << text;
            else
                write_text(gen_out, text);
            return kExitOk;
        }
        if (*verify_cmd) {
            const LayoutFile layout = parse_layout(ver_layout);
            const ResultFile result = parse_result(ver_result);
            const auto problems = verify_result(layout, result);
            for (const auto& p : problems) std::cerr << "violation: " << p << '\n';
            if (!problems.empty()) return kExitInvalid;
            std::cout << "ok cost " << format_rational(result.cost) << '\n';
            return kExitOk;
        }
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitUsage;
}

}  // namespace leleec

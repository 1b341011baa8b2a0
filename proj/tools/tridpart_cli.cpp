// Command-line surface for the partition-method solver and its
// autotuning pipeline: solve, bench sweep-m / sweep-r, correct, fit,
// predict, report.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tridpart/bench.hpp"
#include "tridpart/io.hpp"
#include "tridpart/knn.hpp"
#include "tridpart/partition.hpp"
#include "tridpart/plateau.hpp"
#include "tridpart/policy.hpp"
#include "tridpart/tridiagonal.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

std::filesystem::path resolve_data_path(const std::string& p) {
    std::filesystem::path path(p);
    if (!path.is_absolute() && !std::filesystem::exists(path)) {
        if (const char* dir = std::getenv("TRIDPART_DATA_DIR")) {
            const auto alt = std::filesystem::path(dir) / path;
            if (std::filesystem::exists(alt)) return alt;
        }
    }
    return path;
}

std::unique_ptr<tridpart::Clock> make_clock(const std::string& fake_clock_path) {
    if (fake_clock_path.empty()) return std::make_unique<tridpart::SteadyClock>();
    std::ifstream in(resolve_data_path(fake_clock_path));
    if (!in) throw tridpart::Error("cannot open clock trace " + fake_clock_path);
    std::vector<double> trace;
    double v;
    while (in >> v) trace.push_back(v);
    return std::make_unique<tridpart::TraceClock>(std::move(trace));
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stoi(tok));
    }
    return out;
}

void print_report(const tridpart::HeuristicModel& model, const tridpart::ObservationSet& train,
                  const tridpart::ObservationSet& test, const std::string& plot_prefix) {
    const auto rep = tridpart::evaluate(model, train, test);
    std::cout << "accuracy " << rep.accuracy << "\n";
    std::cout << "null_accuracy " << rep.null_accuracy << "\n";
    std::cout << "confusion (N true predicted correct):\n";
    for (const auto& row : rep.rows) {
        std::cout << "  " << row.n << " " << row.truth << " " << row.predicted << " "
                  << (row.correct ? "yes" : "no") << "\n";
    }
    const auto align = tridpart::alignment_report(model);
    std::cout << "alignment (N>=8e5, predictions must be multiples of 32): "
              << (align.all_aligned ? "all aligned" : "MISALIGNED") << "\n";
    for (const auto& row : align.rows) {
        if (!row.aligned)
            std::cout << "  misaligned: N=" << row.n << " m=" << row.predicted << "\n";
    }
    if (!plot_prefix.empty()) {
        std::ofstream out(plot_prefix + "_scatter.csv", std::ios::binary);
        out << "N,true,predicted\n";
        for (const auto& row : rep.rows)
            out << row.n << ',' << row.truth << ',' << row.predicted << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tridiagonal partition-method solver and sub-system size autotuner"};
    app.require_subcommand(1);

    // --- solve ---
    auto* solve = app.add_subcommand("solve", "Solve a generated system and print the residual");
    std::size_t solve_n = 0, solve_m = 0;
    int solve_r = 0;
    std::uint64_t solve_seed = 1;
    bool solve_check = false;
    solve->add_option("--size", solve_n, "System size N")->required();
    solve->add_option("--m", solve_m, "Sub-system size")->required();
    solve->add_option("--recursions", solve_r, "Recursion depth R (same m at every level)");
    solve->add_option("--seed", solve_seed, "Generator seed (default 1)");
    solve->add_flag("--check", solve_check, "Also verify against Thomas elimination");

    // --- bench ---
    auto* bench = app.add_subcommand("bench", "Timing sweeps");
    bench->require_subcommand(1);
    std::string bench_out, bench_fake_clock, bench_model;
    std::size_t bench_n = 0;
    std::string bench_mlist = "4,8,16,32,64";
    int bench_runs = 5, bench_max_r = 4;
    std::uint64_t bench_seed = 1;

    auto* sweep_m_cmd = bench->add_subcommand("sweep-m", "Sweep sub-system sizes at R=0");
    sweep_m_cmd->add_option("--size", bench_n, "System size N")->required();
    sweep_m_cmd->add_option("--m-list", bench_mlist, "Comma-separated candidate sizes");
    sweep_m_cmd->add_option("--runs", bench_runs, "Timed runs per candidate (default 5)");
    sweep_m_cmd->add_option("--seed", bench_seed, "Generator seed (default 1)");
    sweep_m_cmd->add_option("--out", bench_out, "Output observations CSV")->required();
    sweep_m_cmd->add_option("--fake-clock", bench_fake_clock,
                            "Replay a deterministic clock trace file");

    auto* sweep_r_cmd = bench->add_subcommand("sweep-r", "Sweep recursion depths 0..max");
    sweep_r_cmd->add_option("--size", bench_n, "System size N")->required();
    sweep_r_cmd->add_option("--max-r", bench_max_r, "Maximum recursion depth (default 4)");
    sweep_r_cmd->add_option("--model", bench_model, "Size model JSON")->required();
    sweep_r_cmd->add_option("--runs", bench_runs, "Timed runs per depth (default 5)");
    sweep_r_cmd->add_option("--seed", bench_seed, "Generator seed (default 1)");
    sweep_r_cmd->add_option("--out", bench_out, "Output observations CSV")->required();
    sweep_r_cmd->add_option("--fake-clock", bench_fake_clock,
                            "Replay a deterministic clock trace file");

    // --- correct ---
    auto* correct = app.add_subcommand("correct", "Plateau-correct sweep observations");
    std::string correct_data, correct_out;
    double correct_tol = 0.04;
    correct->add_option("--data", correct_data, "Observations CSV with full time tables")
        ->required();
    correct->add_option("--tolerance", correct_tol, "Relative time tolerance (default 0.04)");
    correct->add_option("--out", correct_out, "Corrected observations CSV")->required();

    // --- fit ---
    auto* fit = app.add_subcommand("fit", "Split, pick k, fit a kNN model");
    std::string fit_data, fit_out;
    bool fit_use_corrected = false, fit_report = false;
    double fit_fraction = 0.25;
    std::uint64_t fit_seed = 0;
    int fit_k = 0;
    fit->add_option("--data", fit_data, "Observations CSV")->required();
    fit->add_flag("--use-corrected", fit_use_corrected, "Train on corrected labels");
    fit->add_option("--test-fraction", fit_fraction, "Test fraction (default 0.25)");
    fit->add_option("--seed", fit_seed, "Split seed (default 0)");
    fit->add_option("--k", fit_k, "Fix k instead of grid-searching");
    fit->add_option("--out", fit_out, "Model JSON output path");
    fit->add_flag("--report", fit_report, "Print accuracy/null-accuracy report");

    // --- predict ---
    auto* predict_cmd = app.add_subcommand("predict", "Predict the optimum sub-system size");
    std::string pred_model, pred_depth_model, pred_recursions;
    std::int64_t pred_n = 0;
    predict_cmd->add_option("--model", pred_model, "Size model JSON")->required();
    predict_cmd->add_option("--size", pred_n, "System size N")->required();
    predict_cmd->add_option("--recursions", pred_recursions,
                            "Recursion depth: a number, or 'auto' with --depth-model");
    predict_cmd->add_option("--depth-model", pred_depth_model, "Depth model JSON");

    // --- report ---
    auto* report = app.add_subcommand("report", "Evaluate a model against a dataset");
    std::string rep_model, rep_data, rep_plot;
    bool rep_use_corrected = false;
    report->add_option("--model", rep_model, "Model JSON")->required();
    report->add_option("--data", rep_data, "Observations CSV")->required();
    report->add_flag("--use-corrected", rep_use_corrected, "Score against corrected labels");
    report->add_option("--plot-data", rep_plot, "Prefix for scatter-plot data files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    using namespace tridpart;
    try {
        if (*solve) {
            const auto sys = generate_system(solve_n, solve_seed);
            RecursionPolicy policy;
            for (int l = 0; l <= solve_r; ++l) policy.sizes.push_back(solve_m);
            const auto x = solve_partition(sys, policy);
            std::cout << "residual " << residual_inf(sys, x) << "\n";
            if (solve_check) {
                const auto ref = thomas_solve(sys);
                double diff = 0, scale = 1;
                for (std::size_t i = 0; i < x.size(); ++i) {
                    diff = std::max(diff, std::abs(x[i] - ref[i]));
                    scale = std::max(scale, std::abs(ref[i]));
                }
                const double rel = diff / scale;
                std::cout << "thomas_diff " << rel << "\n";
                if (!(rel <= 1e-10)) throw SolveFailedError("mismatch against Thomas solve");
            }
        } else if (*sweep_m_cmd) {
            auto clock = make_clock(bench_fake_clock);
            const auto result =
                sweep_m(bench_n, parse_int_list(bench_mlist), bench_runs, *clock, bench_seed);
            ObservationSet set;
            set.rows.push_back(result.to_observation());
            write_observations(set, bench_out);
            std::cout << "argmin_m " << result.argmin << "\n";
        } else if (*sweep_r_cmd) {
            auto clock = make_clock(bench_fake_clock);
            const auto model = load_model(resolve_data_path(bench_model));
            const auto result =
                sweep_r(bench_n, bench_max_r, model, bench_runs, *clock, bench_seed);
            ObservationSet set;
            set.rows.push_back(result.to_observation());
            write_observations(set, bench_out);
            std::cout << "argmin_r " << result.argmin << "\n";
        } else if (*correct) {
            const auto set = read_observations(resolve_data_path(correct_data));
            write_observations(apply_plateau_correction(set, correct_tol), correct_out);
        } else if (*fit) {
            auto set = read_observations(resolve_data_path(fit_data));
            if (fit_use_corrected) set = set.with_corrected_labels();
            const auto [train, test] = split(set, SplitSpec{fit_fraction, fit_seed, true});
            const int k = fit_k > 0 ? fit_k : grid_search_k(train, 5);
            const auto model = fit_knn(train, k);
            if (!fit_out.empty()) save_model(model, fit_out);
            std::cout << "k " << k << "\n";
            if (fit_report) print_report(model, train, test, "");
        } else if (*predict_cmd) {
            const auto model = load_model(resolve_data_path(pred_model));
            const int m = predict(model, pred_n);
            if (pred_recursions.empty()) {
                std::cout << m << "\n";
            } else {
                int depth;
                if (pred_recursions == "auto") {
                    if (pred_depth_model.empty())
                        throw Error("--recursions auto requires --depth-model");
                    const auto dm = load_model(resolve_data_path(pred_depth_model));
                    depth = predict(dm, pred_n);
                } else {
                    depth = std::stoi(pred_recursions);
                }
                const auto policy = recursion_sizes(pred_n, depth, model);
                std::cout << "m " << m << "\n";
                std::cout << "R " << depth << "\n";
                std::cout << "policy";
                for (auto s : policy.sizes) std::cout << " " << s;
                std::cout << "\n";
            }
        } else if (*report) {
            const auto model = load_model(resolve_data_path(rep_model));
            auto set = read_observations(resolve_data_path(rep_data));
            if (rep_use_corrected) set = set.with_corrected_labels();
            ObservationSet train;
            for (const auto& p : model.pairs) {
                Observation obs;
                obs.n = p.n;
                obs.label = p.label;
                train.rows.push_back(obs);
            }
            print_report(model, train, set, rep_plot);
        }
    } catch (const tridpart::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitOk;
}

#include "pamea/cli.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <stdexcept>

#include <glob.h>
#include <sys/wait.h>
#include <unistd.h>

#include <CLI11.hpp>

#include "pamea/compare.hpp"
#include "pamea/engine.hpp"
#include "pamea/metrics.hpp"
#include "pamea/problems.hpp"
#include "pamea/record.hpp"

namespace pamea {
namespace {

constexpr std::size_t canonical_front_size = 10000;

struct RunOptions {
    std::string problem_id;
    std::uint64_t seed = 1;
    std::string seed_range; // "a..b", inclusive
    std::uint64_t budget = 0; // 0 selects 100 * dimension
    std::string variant = "full";
    std::size_t population = 100;
    std::size_t cycles = 1;
    double crossover_probability = 1.0;
    double mutation_probability = -1.0; // negative: use 1/dimension
    double distribution_index = 20.0;
    std::size_t igd_ref = canonical_front_size;
    std::size_t log_every = 1;
    std::string out_dir = ".";
    std::size_t workers = 1;
    std::string self_exe; // test hook; defaults to /proc/self/exe
};

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text) {
    const auto pos = text.find("..");
    if (pos == std::string::npos)
        throw std::invalid_argument("--seeds expects a..b (inclusive)");
    std::uint64_t lo = 0, hi = 0;
    try {
        lo = std::stoull(text.substr(0, pos));
        hi = std::stoull(text.substr(pos + 2));
    } catch (const std::exception&) {
        throw std::invalid_argument("--seeds expects numeric bounds a..b");
    }
    if (lo > hi) throw std::invalid_argument("--seeds range is empty");
    if (hi - lo >= 100000) throw std::invalid_argument("--seeds range too large");
    return {lo, hi};
}

PameaConfig build_config(const RunOptions& o, std::uint64_t seed,
                         std::size_t dimension) {
    PameaConfig config;
    config.population_size = o.population;
    config.evaluation_budget =
        o.budget != 0 ? o.budget : 100 * static_cast<std::uint64_t>(dimension);
    config.sampling_cycles = o.cycles;
    config.crossover_probability = o.crossover_probability;
    if (o.mutation_probability >= 0.0)
        config.mutation_probability = o.mutation_probability;
    config.distribution_index = o.distribution_index;
    config.seed = seed;
    return config;
}

void validate_run_options(const RunOptions& o, const DeskSmop& problem,
                          const PameaConfig& config) {
    validate_config(config, problem.dimension());
    const std::uint64_t setup_cost =
        static_cast<std::uint64_t>(config.sampling_cycles) * problem.dimension() +
        config.population_size;
    if (config.evaluation_budget <= setup_cost)
        throw std::invalid_argument(
            "config: evaluation budget " + std::to_string(config.evaluation_budget) +
            " does not survive setup cost " + std::to_string(setup_cost) +
            " (cycles*dimension + population)");
    if (o.igd_ref < 2)
        throw std::invalid_argument("config: --igd-ref must be at least 2");
    if (!parse_variant(o.variant))
        throw std::invalid_argument("config: unknown variant '" + o.variant + "'");
}

std::string execute_single_run(const RunOptions& o, std::uint64_t seed,
                               std::ostream& out) {
    const DeskSmop problem = DeskSmop::from_id(o.problem_id);
    const PameaConfig config = build_config(o, seed, problem.dimension());
    validate_run_options(o, problem, config);
    const SearchVariant variant = *parse_variant(o.variant);

    TrajectoryOptions topts;
    topts.reference_front = problem.sample_front(o.igd_ref);
    topts.log_every = o.log_every;

    const auto t0 = std::chrono::steady_clock::now();
    RunResult result = run(problem, config, variant, topts);
    const auto t1 = std::chrono::steady_clock::now();

    RunRecord record;
    record.code_hash = code_hash();
    record.problem_id = problem.id();
    record.dimension = problem.dimension();
    record.variant = variant;
    record.config = config;
    record.igd_reference_points = o.igd_ref;
    record.log_every = o.log_every;
    record.evaluations = result.evaluations;
    record.generations = result.generations;
    record.wall_seconds = std::chrono::duration<double>(t1 - t0).count();

    std::vector<ObjectiveVector> final_objs;
    final_objs.reserve(result.final_population.size());
    for (const auto& s : result.final_population)
        final_objs.push_back(*s.objectives);
    const auto canonical = o.igd_ref == canonical_front_size
                               ? std::move(topts.reference_front)
                               : problem.sample_front(canonical_front_size);
    record.final_igd = igd(canonical, final_objs);
    record.final_hv = hv2d(final_objs, record.hv_reference);
    record.final_mean_sparsity = mean_sparsity(result.final_population);
    record.gen0_igd = result.trajectory.front().igd;
    record.trajectory = std::move(result.trajectory);
    record.final_population = std::move(result.final_population);

    const std::string base = write_record(record, o.out_dir);
    out << "run " << record.problem_id << " variant=" << to_string(variant)
        << " seed=" << seed << ": generations=" << record.generations
        << " evaluations=" << record.evaluations
        << " final_igd=" << format_double(record.final_igd)
        << " final_hv=" << format_double(record.final_hv)
        << " wall_s=" << format_double(record.wall_seconds) << " -> " << base
        << ".json\n";
    return base;
}

std::string self_executable(const RunOptions& o) {
    if (!o.self_exe.empty()) return o.self_exe;
    std::error_code ec;
    const auto path = std::filesystem::read_symlink("/proc/self/exe", ec);
    if (ec) throw IoError("cannot resolve own executable for child runs");
    return path.string();
}

/// Runs each command as `exe <args...>` with at most `workers` children
/// alive at once. Returns the first nonzero child exit code, else 0.
int spawn_pool(const std::vector<std::vector<std::string>>& commands,
               std::size_t workers, const std::string& exe, std::ostream& out,
               std::ostream& err) {
    out.flush();
    err.flush();
    std::map<pid_t, std::size_t> active;
    std::size_t next = 0;
    int failure = 0;

    while (next < commands.size() || !active.empty()) {
        while (next < commands.size() && active.size() < std::max<std::size_t>(workers, 1)) {
            const auto& cmd = commands[next];
            const pid_t pid = fork();
            if (pid == 0) {
                std::vector<char*> argv;
                argv.push_back(const_cast<char*>(exe.c_str()));
                for (const auto& s : cmd) argv.push_back(const_cast<char*>(s.c_str()));
                argv.push_back(nullptr);
                execv(exe.c_str(), argv.data());
                _exit(127);
            }
            if (pid < 0) {
                err << "error: fork failed\n";
                return 3;
            }
            active.emplace(pid, next);
            ++next;
        }
        int status = 0;
        const pid_t pid = waitpid(-1, &status, 0);
        if (pid < 0) {
            err << "error: waitpid failed\n";
            return 3;
        }
        const auto it = active.find(pid);
        if (it == active.end()) continue;
        const int code = WIFEXITED(status) ? WEXITSTATUS(status) : 1;
        if (code != 0) {
            err << "error: child run (command " << it->second << ") exited with code "
                << code << '\n';
            if (failure == 0) failure = code;
        }
        active.erase(it);
    }
    return failure;
}

std::vector<std::string> child_run_command(const RunOptions& o, std::uint64_t seed,
                                           std::uint64_t resolved_budget,
                                           const std::string& variant) {
    std::vector<std::string> cmd{"run",
                                 "--problem", o.problem_id,
                                 "--seed", std::to_string(seed),
                                 "--budget", std::to_string(resolved_budget),
                                 "--variant", variant,
                                 "--population", std::to_string(o.population),
                                 "--cycles", std::to_string(o.cycles),
                                 "--pc", format_double(o.crossover_probability),
                                 "--eta", format_double(o.distribution_index),
                                 "--igd-ref", std::to_string(o.igd_ref),
                                 "--log-every", std::to_string(o.log_every),
                                 "--out-dir", o.out_dir};
    if (o.mutation_probability >= 0.0) {
        cmd.emplace_back("--pm");
        cmd.emplace_back(format_double(o.mutation_probability));
    }
    return cmd;
}

int do_run(const RunOptions& o, std::ostream& out, std::ostream& err) {
    if (o.seed_range.empty()) {
        execute_single_run(o, o.seed, out);
        return 0;
    }
    const auto [lo, hi] = parse_seed_range(o.seed_range);
    const DeskSmop problem = DeskSmop::from_id(o.problem_id);
    const PameaConfig probe = build_config(o, lo, problem.dimension());
    validate_run_options(o, problem, probe); // fail the whole sweep up front

    std::vector<std::vector<std::string>> commands;
    for (std::uint64_t seed = lo; seed <= hi; ++seed)
        commands.push_back(
            child_run_command(o, seed, probe.evaluation_budget, o.variant));
    return spawn_pool(commands, o.workers, self_executable(o), out, err);
}

std::vector<std::filesystem::path> expand_glob(const std::string& pattern) {
    ::glob_t results{};
    const int rc = ::glob(pattern.c_str(), 0, nullptr, &results);
    std::vector<std::filesystem::path> paths;
    if (rc == 0) {
        for (std::size_t i = 0; i < results.gl_pathc; ++i)
            paths.emplace_back(results.gl_pathv[i]);
    } else if (rc != GLOB_NOMATCH) {
        ::globfree(&results);
        throw IoError("glob failed for pattern '" + pattern + "'");
    }
    ::globfree(&results);
    return paths;
}

std::vector<RecordSummary> summarize_glob(const std::string& pattern) {
    std::vector<RecordSummary> summaries;
    for (const auto& path : expand_glob(pattern))
        summaries.push_back(summarize_record(path));
    return summaries;
}

struct CompareOptions {
    std::string glob_a;
    std::string glob_b;
    double alpha = 0.05;
    std::string out_csv = "compare.csv";
};

int do_compare(const CompareOptions& o, std::ostream& out) {
    const auto a = summarize_glob(o.glob_a);
    const auto b = summarize_glob(o.glob_b);
    const auto rows = compare_summaries(a, b, o.alpha);
    print_comparison(out, rows, o.glob_a + " (" + std::to_string(a.size()) + " runs)",
                     o.glob_b + " (" + std::to_string(b.size()) + " runs)");
    write_comparison_csv(o.out_csv, rows, a.front().problem_id, a.size(), b.size(),
                         o.alpha);
    out << "wrote " << o.out_csv << '\n';
    return 0;
}

struct FrontOptions {
    std::string problem_id;
    std::size_t count = canonical_front_size;
    std::string out_path; // empty: stdout
};

int do_front(const FrontOptions& o, std::ostream& out) {
    if (o.count < 2)
        throw std::invalid_argument("config: front sample count must be at least 2");
    const DeskSmop problem = DeskSmop::from_id(o.problem_id);
    const auto front = problem.sample_front(o.count);

    auto emit = [&front](std::ostream& sink) {
        for (const auto& p : front)
            sink << format_double(p[0]) << ',' << format_double(p[1]) << '\n';
    };
    if (o.out_path.empty()) {
        emit(out);
    } else {
        std::ofstream file(o.out_path);
        if (!file) throw IoError("cannot write " + o.out_path);
        emit(file);
        if (!file) throw IoError("write failure on " + o.out_path);
    }
    return 0;
}

int do_ablate(const RunOptions& o, double alpha, std::ostream& out,
              std::ostream& err) {
    const auto [lo, hi] = parse_seed_range(o.seed_range.empty() ? "1..10"
                                                                : o.seed_range);
    const DeskSmop problem = DeskSmop::from_id(o.problem_id);
    const PameaConfig probe = build_config(o, lo, problem.dimension());
    validate_run_options(o, problem, probe);

    const SearchVariant variants[] = {
        SearchVariant::full, SearchVariant::exploitation_only,
        SearchVariant::annealing_only, SearchVariant::no_annealing};

    std::vector<std::vector<std::string>> commands;
    for (const SearchVariant v : variants)
        for (std::uint64_t seed = lo; seed <= hi; ++seed)
            commands.push_back(child_run_command(o, seed, probe.evaluation_budget,
                                                 std::string(to_string(v))));
    const int rc = spawn_pool(commands, o.workers, self_executable(o), out, err);
    if (rc != 0) return rc;

    auto side = [&](SearchVariant v) {
        std::vector<RecordSummary> summaries;
        for (std::uint64_t seed = lo; seed <= hi; ++seed) {
            const auto path =
                std::filesystem::path(o.out_dir) /
                (record_basename(problem.id(), v, seed) + ".json");
            summaries.push_back(summarize_record(path));
        }
        return summaries;
    };

    const auto full_side = side(SearchVariant::full);
    for (const SearchVariant v :
         {SearchVariant::exploitation_only, SearchVariant::annealing_only,
          SearchVariant::no_annealing}) {
        const auto variant_side = side(v);
        const auto rows = compare_summaries(full_side, variant_side, alpha);
        out << "\n" << problem.id() << ": full vs " << to_string(v) << "\n";
        print_comparison(out, rows, "full", std::string(to_string(v)));
        const auto csv_path =
            std::filesystem::path(o.out_dir) /
            ("compare_full_vs_" + std::string(to_string(v)) + ".csv");
        write_comparison_csv(csv_path, rows, problem.id(), full_side.size(),
                             variant_side.size(), alpha);
        out << "wrote " << csv_path.string() << '\n';
    }
    return 0;
}

void add_run_options(CLI::App* cmd, RunOptions& o, bool with_single_seed) {
    cmd->add_option("--problem", o.problem_id,
                    "problem id, e.g. desk-smop:easy:D=500")
        ->required();
    CLI::Option* seeds = cmd->add_option(
        "--seeds", o.seed_range, "inclusive seed range a..b, one process per run");
    if (with_single_seed) {
        CLI::Option* seed = cmd->add_option("--seed", o.seed, "master seed");
        seeds->excludes(seed);
    }
    cmd->add_option("--budget", o.budget,
                    "evaluation budget (default 100 * dimension)");
    cmd->add_option("--variant", o.variant, "search variant")
        ->check(CLI::IsMember(
            {"full", "exploitation_only", "annealing_only", "no_annealing"}));
    cmd->add_option("--population", o.population, "population size (even, >= 4)");
    cmd->add_option("--cycles", o.cycles, "probe sampling cycles");
    cmd->add_option("--pc", o.crossover_probability, "crossover probability")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--pm", o.mutation_probability,
                    "mutation probability (default 1/dimension)")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--eta", o.distribution_index, "distribution index")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--igd-ref", o.igd_ref,
                    "reference-front points for trajectory igd");
    cmd->add_option("--log-every", o.log_every,
                    "trajectory row period in generations (0: first and last)");
    cmd->add_option("--out-dir", o.out_dir, "output directory");
    cmd->add_option("--workers", o.workers, "max concurrent child runs");
    cmd->add_option("--self-exe", o.self_exe, "executable to spawn for child runs")
        ->group(""); // hidden
}

} // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
    CLI::App app{"pamea: probabilistic-annealing evolutionary optimization"};
    app.require_subcommand(1);
    // Global option, given before the subcommand. Keys live under an INI
    // section named after the subcommand ([run], [ablate]); explicit command
    // line flags take precedence over file values.
    app.set_config("--config", "",
                   "INI config file with [run]/[ablate] sections");

    RunOptions run_opts;
    CLI::App* run_cmd =
        app.add_subcommand("run", "execute one run (or a seed sweep) and persist it");
    add_run_options(run_cmd, run_opts, true);

    CompareOptions cmp_opts;
    CLI::App* cmp_cmd = app.add_subcommand(
        "compare", "rank-sum comparison of two sets of run records");
    cmp_cmd->add_option("glob_a", cmp_opts.glob_a, "record JSON glob for side A")
        ->required();
    cmp_cmd->add_option("glob_b", cmp_opts.glob_b, "record JSON glob for side B")
        ->required();
    cmp_cmd->add_option("--alpha", cmp_opts.alpha, "significance level")
        ->check(CLI::Range(0.0, 1.0));
    cmp_cmd->add_option("--out", cmp_opts.out_csv, "comparison CSV path");

    FrontOptions front_opts;
    CLI::App* front_cmd =
        app.add_subcommand("front", "emit f1,f2 samples of a problem's true front");
    front_cmd->add_option("--problem", front_opts.problem_id, "problem id")
        ->required();
    front_cmd->add_option("--count", front_opts.count, "number of samples (>= 2)");
    front_cmd->add_option("--out", front_opts.out_path, "output path (default stdout)");

    RunOptions ablate_opts;
    double ablate_alpha = 0.05;
    CLI::App* ablate_cmd = app.add_subcommand(
        "ablate", "run all variants over a seed range and compare against full");
    add_run_options(ablate_cmd, ablate_opts, false);
    ablate_cmd->add_option("--alpha", ablate_alpha, "significance level")
        ->check(CLI::Range(0.0, 1.0));

    std::vector<const char*> argv;
    argv.push_back("pamea");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(run_cmd)) return do_run(run_opts, out, err);
        if (app.got_subcommand(cmp_cmd)) return do_compare(cmp_opts, out);
        if (app.got_subcommand(front_cmd)) return do_front(front_opts, out);
        if (app.got_subcommand(ablate_cmd))
            return do_ablate(ablate_opts, ablate_alpha, out, err);
    } catch (const StatError& e) {
        err << "error: " << e.what() << '\n';
        return 4;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace pamea

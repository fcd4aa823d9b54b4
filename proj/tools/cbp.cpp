// Command-line front end: generate | pack | oracle | bench | adversary.
// Exit codes: 0 success, 2 validation/precondition failure, 3 budget
// exceeded.

#include <cstdlib>
#include <filesystem>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cbp/instances.hpp"
#include "cbp/io.hpp"
#include "cbp/oracle.hpp"
#include "cbp/run.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty())
        std::cout << text;
    else
        cbp::io::write_text(out_path, text);
}

struct GenerateArgs {
    std::string family;
    int n = 0, m = 1, j = 4, pairs = 1;
    std::string eps, gamma, lo = "1/64", hi = "1", sizes;
    std::uint64_t seed = 0;
    std::int64_t max_den = 1 << 20;
    std::string out;
};

int cmd_generate(const GenerateArgs& args) {
    cbp::instances::GeneratedInstance generated;
    if (args.family == "theorem1") {
        generated = cbp::instances::gen_theorem1(args.n, cbp::Rational::parse(args.eps));
    } else if (args.family == "sylvester") {
        generated = cbp::instances::gen_sylvester(args.m, args.n, cbp::Rational::parse(args.eps));
    } else if (args.family == "tightness") {
        generated =
            cbp::instances::gen_tightness(args.j, cbp::Rational::parse(args.gamma), args.pairs);
    } else if (args.family == "random") {
        cbp::instances::SizeLaw law;
        if (!args.sizes.empty()) {
            std::vector<cbp::Rational> choices;
            std::stringstream ss(args.sizes);
            std::string token;
            while (std::getline(ss, token, ','))
                choices.push_back(cbp::Rational::parse(token));
            law = cbp::instances::SizeLaw::discrete(std::move(choices));
        } else {
            law = cbp::instances::SizeLaw::uniform(cbp::Rational::parse(args.lo),
                                                   cbp::Rational::parse(args.hi));
        }
        generated = cbp::instances::gen_random(args.n, args.m, law, args.seed, args.max_den);
    } else {
        throw cbp::PreconditionError("unknown family '" + args.family +
                                     "' (theorem1|sylvester|tightness|random)");
    }
    generated.instance.check();
    emit(args.out, cbp::io::instance_to_json(generated));
    std::cerr << "generated " << generated.instance.items.size() << " items, m = "
              << generated.instance.colour_count << "\n";
    return 0;
}

struct PackArgs {
    std::string algo, in, out, trace;
    std::string eps, beta;
    int k = 2;
    std::uint64_t budget = 0; // 0: defaults
    std::uint64_t config_budget = 0, candidate_budget = 0;
    int oracle_limit = 16;
    bool rescale = false;
};

cbp::run::AlgoSpec to_spec(const PackArgs& args) {
    cbp::run::AlgoSpec spec;
    spec.name = args.algo;
    if (!args.eps.empty()) spec.eps = cbp::Rational::parse(args.eps);
    if (!args.beta.empty()) spec.beta = cbp::Rational::parse(args.beta);
    spec.k = args.k;
    if (args.budget) {
        spec.offline_budget.max_nodes = args.budget;
        spec.aptas_budgets.max_search_nodes = args.budget;
    }
    if (args.config_budget) spec.aptas_budgets.max_configurations = args.config_budget;
    if (args.candidate_budget) spec.aptas_budgets.max_candidates = args.candidate_budget;
    spec.oracle_limit_n = args.oracle_limit;
    spec.aptas_rescale = args.rescale;
    return spec;
}

int cmd_pack(const PackArgs& args) {
    cbp::Instance instance = cbp::io::read_instance(args.in);
    auto result = cbp::run::run_algorithm(to_spec(args), instance);

    auto report = cbp::validate_packing(result.packing, instance);
    if (!report.ok())
        throw cbp::ValidationError("produced packing failed validation: " + report.summary());

    if (!args.out.empty()) cbp::io::write_text(args.out, cbp::io::packing_to_json(result.packing));
    if (!args.trace.empty()) cbp::io::write_text(args.trace, cbp::io::trace_jsonl(result.events));

    auto spans = cbp::spans_by_colour(result.packing, instance.colour_count);
    std::cout << "bins=" << result.packing.total_bins() << " spans:";
    for (int c = 1; c <= instance.colour_count; ++c)
        std::cout << ' ' << c << '=' << spans[static_cast<std::size_t>(c - 1)];
    std::cout << "\n";
    return 0;
}

struct OracleArgs {
    std::string in, beta, out;
    int limit_dp = 16, limit_exhaustive = 10;
};

int cmd_oracle(const OracleArgs& args) {
    cbp::Instance instance = cbp::io::read_instance(args.in);
    std::optional<cbp::Rational> beta;
    if (!args.beta.empty()) beta = cbp::Rational::parse(args.beta);

    std::string cache_path;
    if (const char* cache_dir = std::getenv("CBP_ORACLE_CACHE")) {
        std::ostringstream name;
        name << std::hex << cbp::instance_digest(instance);
        if (beta) {
            std::string b = beta->str();
            for (char& c : b)
                if (c == '/') c = '_';
            name << "_beta" << b;
        }
        cache_path = (fs::path(cache_dir) / (name.str() + ".json")).string();
        if (fs::exists(cache_path)) {
            std::string cached = cbp::io::read_text(cache_path);
            emit(args.out, cached);
            std::cerr << "oracle cache hit: " << cache_path << "\n";
            return 0;
        }
    }

    cbp::oracle::Limits limits{args.limit_dp, args.limit_exhaustive};
    cbp::OracleResult result = cbp::oracle::solve(instance, beta, limits);
    std::string text = cbp::io::oracle_result_to_json(result);
    if (!cache_path.empty()) {
        fs::create_directories(fs::path(cache_path).parent_path());
        cbp::io::write_text(cache_path, text);
    }
    emit(args.out, text);
    return 0;
}

struct BenchArgs {
    std::string manifest, out;
    int jobs = 1;
};

int cmd_bench(const BenchArgs& args) {
    json manifest = json::parse(cbp::io::read_text(args.manifest));
    const int oracle_limit = manifest.value("oracle_limit", 16);
    const bool use_oracle = manifest.value("use_oracle", true);

    std::vector<std::string> instance_paths;
    for (const auto& p : manifest.at("instances")) instance_paths.push_back(p.get<std::string>());
    std::vector<cbp::run::AlgoSpec> specs;
    for (const auto& a : manifest.at("algorithms")) {
        cbp::run::AlgoSpec spec;
        spec.name = a.at("algo").get<std::string>();
        if (a.contains("epsilon")) spec.eps = cbp::Rational::parse(a["epsilon"].get<std::string>());
        if (a.contains("beta")) spec.beta = cbp::Rational::parse(a["beta"].get<std::string>());
        spec.k = a.value("k", 2);
        spec.oracle_limit_n = oracle_limit;
        specs.push_back(std::move(spec));
    }

    auto run_cell = [&](const std::string& path,
                        const cbp::run::AlgoSpec& spec) -> cbp::io::ReportRow {
        cbp::io::ReportRow row;
        row.instance = path;
        row.algorithm = spec.name;
        row.params = cbp::run::params_string(spec);
        try {
            cbp::Instance instance = cbp::io::read_instance(path);
            auto result = cbp::run::run_algorithm(spec, instance);
            auto report = cbp::validate_packing(result.packing, instance);
            if (!report.ok()) throw cbp::ValidationError(report.summary());

            std::optional<cbp::OracleResult> oracle_result;
            if (use_oracle && static_cast<int>(instance.items.size()) <= oracle_limit)
                oracle_result = cbp::oracle::solve(instance, std::nullopt, {oracle_limit, 10});
            auto stretch = cbp::compute_stretch(result.packing, instance,
                                                oracle_result ? &*oracle_result : nullptr);
            row.total_bins = stretch.total_bins;
            row.opt_bins = stretch.opt_bins;
            row.opt_source = stretch.opt_source == cbp::OptSource::exact_oracle
                                 ? "exact_oracle"
                                 : "weight_lower_bound";
            row.bin_stretch = stretch.bin_stretch;
            row.max_colour_stretch = stretch.colour_stretch;
        } catch (const std::exception& e) {
            row.opt_source = std::string("error: ") + e.what();
        }
        return row;
    };

    std::vector<cbp::io::ReportRow> rows(instance_paths.size() * specs.size());
    if (args.jobs <= 1) {
        std::size_t index = 0;
        for (const auto& path : instance_paths)
            for (const auto& spec : specs) rows[index++] = run_cell(path, spec);
    } else {
        // independent cells; output order stays manifest order
        std::vector<std::future<cbp::io::ReportRow>> futures;
        futures.reserve(rows.size());
        for (const auto& path : instance_paths)
            for (const auto& spec : specs)
                futures.push_back(
                    std::async(std::launch::async, [&, path, spec] { return run_cell(path, spec); }));
        for (std::size_t i = 0; i < futures.size(); ++i) rows[i] = futures[i].get();
    }

    emit(args.out, cbp::io::report_csv(rows));
    return 0;
}

struct AdversaryArgs {
    std::string algo = "ff", eps, out;
    int n = 4, rounds = 10, k = 2;
};

int cmd_adversary(const AdversaryArgs& args) {
    cbp::online::OnlineParams params;
    if (!args.eps.empty()) params.eps = cbp::Rational::parse(args.eps);
    params.k = args.k;
    auto algorithm = cbp::online::make_online(args.algo, params);
    auto trajectory = cbp::instances::run_adversary(*algorithm, args.n, args.rounds);
    if (trajectory.rejected)
        std::cerr << "run ended early, item rejected: " << trajectory.rejection << "\n";
    emit(args.out, cbp::io::trajectory_csv(trajectory));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coloured bin packing workbench"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "write an instance file");
    generate->add_option("family", gen.family, "theorem1|sylvester|tightness|random")->required();
    generate->add_option("--n", gen.n, "items (theorem1/random) or items per colour (sylvester)");
    generate->add_option("--m", gen.m, "colour count (random) or top colour index (sylvester)");
    generate->add_option("--epsilon", gen.eps, "exact fraction, e.g. 1/8");
    generate->add_option("--gamma", gen.gamma, "tightness perturbation, exact fraction");
    generate->add_option("--j", gen.j, "tightness level count (even)");
    generate->add_option("--pairs", gen.pairs, "tightness colour pairs");
    generate->add_option("--seed", gen.seed, "random seed");
    generate->add_option("--lo", gen.lo, "uniform lower bound (exact fraction)");
    generate->add_option("--hi", gen.hi, "uniform upper bound (exact fraction)");
    generate->add_option("--sizes", gen.sizes, "comma-separated discrete sizes");
    generate->add_option("--max-denominator", gen.max_den, "denominator bound for random sizes");
    generate->add_option("--out", gen.out, "output path (default stdout)");

    PackArgs pack;
    auto* packcmd = app.add_subcommand("pack", "run an algorithm on an instance");
    packcmd->add_option("--algo", pack.algo, "nf|ff|ffd|bf|bbf|mnf|mff|level17|threshold|vl1eps|off17|aptas")
        ->required();
    packcmd->add_option("--in", pack.in, "instance file")->required();
    packcmd->add_option("--out", pack.out, "packing JSON path");
    packcmd->add_option("--trace", pack.trace, "placement trace JSONL path");
    packcmd->add_option("--epsilon", pack.eps, "exact fraction");
    packcmd->add_option("--beta", pack.beta, "exact fraction (aptas)");
    packcmd->add_option("--k", pack.k, "open bins for bbf");
    packcmd->add_option("--budget", pack.budget, "search node budget");
    packcmd->add_option("--config-budget", pack.config_budget, "aptas configuration ceiling");
    packcmd->add_option("--candidate-budget", pack.candidate_budget, "aptas candidate ceiling");
    packcmd->add_option("--oracle-limit", pack.oracle_limit, "aptas per-colour oracle ceiling");
    packcmd->add_flag("--rescale", pack.rescale, "aptas: use epsilon/m internally");

    OracleArgs oracle;
    auto* oraclecmd = app.add_subcommand("oracle", "exact optima for a small instance");
    oraclecmd->add_option("--in", oracle.in, "instance file")->required();
    oraclecmd->add_option("--beta", oracle.beta, "also compute opt_beta");
    oraclecmd->add_option("--limit-dp", oracle.limit_dp, "max n for the bitmask DP");
    oraclecmd->add_option("--limit-exhaustive", oracle.limit_exhaustive,
                          "max n for the opt_beta enumeration");
    oraclecmd->add_option("--out", oracle.out, "output path (default stdout)");

    BenchArgs bench;
    auto* benchcmd = app.add_subcommand("bench", "run an instances x algorithms grid");
    benchcmd->add_option("--manifest", bench.manifest, "manifest JSON")->required();
    benchcmd->add_option("--out", bench.out, "report CSV path (default stdout)");
    benchcmd->add_option("--jobs", bench.jobs, "parallel cells");

    AdversaryArgs adv;
    auto* advcmd = app.add_subcommand("adversary", "unit-fraction round stream");
    advcmd->add_option("--algo", adv.algo, "online algorithm name");
    advcmd->add_option("--n", adv.n, "colours per round");
    advcmd->add_option("--rounds", adv.rounds, "round count");
    advcmd->add_option("--epsilon", adv.eps, "exact fraction (level/threshold schemes)");
    advcmd->add_option("--k", adv.k, "open bins for bbf");
    advcmd->add_option("--out", adv.out, "trajectory CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(generate)) return cmd_generate(gen);
        if (app.got_subcommand(packcmd)) return cmd_pack(pack);
        if (app.got_subcommand(oraclecmd)) return cmd_oracle(oracle);
        if (app.got_subcommand(benchcmd)) return cmd_bench(bench);
        if (app.got_subcommand(advcmd)) return cmd_adversary(adv);
    } catch (const cbp::BudgetExceededError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const cbp::PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 2;
    } catch (const cbp::ValidationError& e) {
        std::cerr << "validation failed: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

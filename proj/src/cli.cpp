#include "entropy_gap/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "entropy_gap/errors.hpp"
#include "entropy_gap/parallel.hpp"

namespace entropy_gap::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const std::vector<std::pair<Suite, const char*>> kSuiteNames = {
    {Suite::Substate, "substate"},         {Suite::NormSandwich, "norm-sandwich"},
    {Suite::Monotonicity, "monotonicity"}, {Suite::Bipartite, "bipartite"},
    {Suite::Cmi, "cmi"},                   {Suite::Berta, "berta"},
    {Suite::BertaGeneral, "berta-general"}, {Suite::MarginalMono, "marginal-mono"},
    {Suite::SuperSsa, "super-ssa"},        {Suite::SigmaSubstate, "sigma-substate"},
    {Suite::TwoMarginal, "two-marginal"},  {Suite::GoldenThompson, "golden-thompson"},
    {Suite::Markov, "markov"},             {Suite::Scan, "scan"},
};

bool needs_tripartite(Suite s) {
    switch (s) {
        case Suite::Substate:
        case Suite::NormSandwich:
        case Suite::Monotonicity:
        case Suite::Bipartite:
        case Suite::GoldenThompson: return false;
        default: return true;
    }
}

Dims parse_dims(const std::string& text) {
    Dims dims;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const long v = std::stol(item, &used);
            if (used != item.size() || v < 1) throw InvalidConfig("bad dimension '" + item + "'");
            dims.push_back(static_cast<std::size_t>(v));
        } catch (const std::logic_error&) {
            throw InvalidConfig("bad dimension '" + item + "'");
        }
    }
    if (dims.empty()) throw InvalidConfig("empty --dims");
    return dims;
}

std::string dims_tag(const Dims& dims) {
    std::string s;
    for (std::size_t k = 0; k < dims.size(); ++k) s += (k ? "x" : "") + std::to_string(dims[k]);
    return s;
}

// Bipartite view (first factor, rest) of a state with ≥ 2 factors.
MultipartiteState as_bipartite(const MultipartiteState& s) {
    if (s.parties() == 2) return s;
    if (s.parties() < 2) throw DimensionMismatch("bipartite suite needs at least two factors");
    const std::size_t rest = s.dim() / s.dims()[0];
    return MultipartiteState(s.matrix(), {s.dims()[0], rest}, {}, s.kind());
}

SampleResult from_verdict(const ChainVerdict& v) {
    SampleResult r;
    r.pass = v.pass;
    r.margin = v.worst_gap();
    for (const auto& c : v.conditions) r.margin = std::min(r.margin, c.rhs + c.tol - c.lhs);
    r.payload = io::to_json(v);
    return r;
}

SampleResult from_identity(const IdentityCheck& c) {
    SampleResult r;
    r.pass = c.pass;
    r.margin = -c.residual;
    r.payload = io::to_json(c);
    return r;
}

struct SampleContext {
    const RunConfig& config;
    const std::vector<MultipartiteState>& inputs;
};

SampleResult evaluate_sample(Suite suite, const SampleContext& ctx, std::size_t index) {
    const auto& cfg = ctx.config;
    const std::uint64_t seed = sample_seed(cfg.seed, index);
    Rng rng(seed);
    const bool from_file = !ctx.inputs.empty();
    const Dims dims = from_file ? ctx.inputs[index].dims() : cfg.dims;
    const std::size_t d = total_dim(dims);
    auto primary = [&]() {
        return from_file ? ctx.inputs[index] : random_density_hs(dims, rng);
    };
    const double tid = cfg.tol_identity, tin = cfg.tol_inequality;

    switch (suite) {
        case Suite::Substate: {
            const auto rho = primary();
            const auto s = random_density_hs(dims, rng);
            const MultipartiteState sigma(s.matrix() * 0.9, dims, {}, StateKind::Substate);
            return from_verdict(check_substate_chain(rho, sigma, tin));
        }
        case Suite::NormSandwich: {
            const ComplexMatrix m = from_file ? ctx.inputs[index].matrix() : random_psd(d, rng);
            return from_verdict(check_norm_sandwich(m, random_psd(d, rng), tin));
        }
        case Suite::Monotonicity: {
            const auto rho = primary();
            const auto sigma = random_density_hs(dims, rng);
            const auto phi = random_channel(d, d, 2, rng);
            return from_verdict(check_monotonicity_gap(rho, sigma, phi, tin));
        }
        case Suite::Bipartite: {
            const auto rho = as_bipartite(primary());
            const auto sigma = as_bipartite(random_density_hs(dims, rng));
            return from_verdict(check_bipartite_chain(rho, sigma, tin));
        }
        case Suite::Cmi: return from_verdict(check_cmi_chain(primary(), tin));
        case Suite::Berta: {
            const auto rho = primary();
            return from_identity(berta_identity(rho, random_density_hs(dims, rng), tid));
        }
        case Suite::BertaGeneral: {
            const auto rho = primary();
            const auto s_ac = random_density_hs(Dims{dims[0], dims[2]}, rng);
            const auto t_bc = random_density_hs(Dims{dims[1], dims[2]}, rng);
            const auto w_c = random_density_hs(Dims{dims[2]}, rng);
            return from_identity(berta_identity_general(rho, s_ac, t_bc, w_c, tid));
        }
        case Suite::MarginalMono: {
            const auto rho = primary();
            return from_verdict(check_marginal_monotonicity(rho, random_density_hs(dims, rng), tin));
        }
        case Suite::SuperSsa: {
            const auto rho = primary();
            return from_verdict(check_super_ssa(rho, random_density_hs(dims, rng), tin));
        }
        case Suite::SigmaSubstate: {
            const auto rho = primary();
            return from_verdict(check_sigma_substate_chain(rho, random_density_hs(dims, rng), tin));
        }
        case Suite::TwoMarginal: return from_verdict(check_two_marginal_chain(primary(), tin));
        case Suite::GoldenThompson: {
            const ComplexMatrix a =
                from_file ? ctx.inputs[index].matrix() : random_hermitian(d, rng);
            return from_verdict(check_golden_thompson(a, random_hermitian(d, rng), tin));
        }
        case Suite::Markov: {
            const auto report = check_markov_trace_theorem(primary(), tid);
            SampleResult r;
            const double bound = 1.0 + scaled_tolerance(tin, d);
            r.pass = report.verdict != MarkovVerdict::Indeterminate && report.trace_m <= bound;
            r.margin = bound - report.trace_m;
            r.payload = io::to_json(report);
            return r;
        }
        case Suite::Scan: {
            const double t = trace_of_markov_operator(primary());
            SampleResult r;
            const double bound = 1.0 + scaled_tolerance(tin, d);
            r.pass = t <= bound;
            r.margin = bound - t;
            r.payload = {{"trace_M", t}};
            return r;
        }
    }
    throw std::logic_error("unhandled suite");
}

SuiteResult run_suite(Suite suite, const RunConfig& config,
                      const std::vector<MultipartiteState>& inputs, std::size_t workers) {
    const std::size_t n = inputs.empty() ? config.n_samples : inputs.size();
    SuiteResult result;
    result.suite = suite;
    result.samples.resize(n);
    const SampleContext ctx{config, inputs};
    parallel_for(n, workers, [&](std::size_t i) {
        SampleResult r;
        try {
            r = evaluate_sample(suite, ctx, i);
        } catch (const Error& e) {
            r = SampleResult{};
            r.error_kind = e.kind();
            r.error_message = e.what();
            r.margin = -kInf;
        }
        r.index = i;
        r.seed = sample_seed(config.seed, i);
        result.samples[i] = std::move(r);
    });

    result.worst_gap = kInf;
    for (const auto& s : result.samples) {
        (s.pass ? result.pass_count : result.fail_count)++;
        if (s.margin < result.worst_gap) {
            result.worst_gap = s.margin;
            result.worst_sample_seed = s.seed;
        }
    }
    if (suite == Suite::Scan) {
        double lo = kInf, hi = -kInf, sum = 0.0;
        std::size_t count = 0;
        for (const auto& s : result.samples) {
            if (!s.error_kind.empty()) continue;
            const double t = s.payload.at("trace_M").get<double>();
            lo = std::min(lo, t);
            hi = std::max(hi, t);
            sum += t;
            ++count;
        }
        if (count)
            result.extra = {{"min", lo}, {"max", hi}, {"mean", sum / static_cast<double>(count)}};
    }
    return result;
}

io::json config_to_json(const RunConfig& c) {
    io::json inputs = io::json::array();
    for (const auto& p : c.input_files) inputs.push_back(p.generic_string());
    return {{"suite", c.suite},
            {"dims", c.dims},
            {"n_samples", c.n_samples},
            {"seed", c.seed},
            {"tol_identity", c.tol_identity},
            {"tol_inequality", c.tol_inequality},
            {"input_files", inputs},
            {"format", c.format == Format::Json ? "json" : "csv"}};
}

io::json sample_to_json(const SampleResult& s) {
    io::json j = {{"index", s.index},
                  {"seed", s.seed},
                  {"status", s.pass ? "pass" : (s.error_kind.empty() ? "fail" : "error")},
                  {"margin", io::number_to_json(s.margin)}};
    if (!s.error_kind.empty()) j["error"] = {{"kind", s.error_kind}, {"message", s.error_message}};
    if (!s.payload.is_null()) j["result"] = s.payload;
    return j;
}

// Flattens every numeric leaf of a result payload into CSV rows.
void flatten_numbers(const io::json& j, const std::string& prefix,
                     std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            flatten_numbers(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten_numbers(j[i], prefix + "." + std::to_string(i), out);
    } else if (j.is_number_float()) {
        out.emplace_back(prefix, io::format_number(j.get<double>()));
    } else if (j.is_number()) {
        out.emplace_back(prefix, j.dump());
    } else if (j.is_string() && (j == "+inf" || j == "-inf")) {
        out.emplace_back(prefix, j.get<std::string>());
    }
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

}  // namespace

const std::vector<Suite>& all_suites() {
    static const std::vector<Suite> suites = [] {
        std::vector<Suite> v;
        for (const auto& [s, name] : kSuiteNames) v.push_back(s);
        return v;
    }();
    return suites;
}

const char* to_string(Suite s) {
    for (const auto& [suite, name] : kSuiteNames)
        if (suite == s) return name;
    return "?";
}

std::vector<Suite> parse_suites(const std::string& name) {
    if (name == "all") return all_suites();
    for (const auto& [suite, n] : kSuiteNames)
        if (name == n) return {suite};
    throw InvalidConfig("unknown suite '" + name + "'");
}

void RunConfig::validate() const {
    const auto suites = parse_suites(suite);
    if (n_samples < 1) throw InvalidConfig("n_samples must be >= 1");
    if (dims.empty()) throw InvalidConfig("dims must be non-empty");
    for (std::size_t d : dims)
        if (d < 2) throw InvalidConfig("dims entries must be >= 2");
    if (!(tol_identity > 0.0) || !(tol_inequality > 0.0))
        throw InvalidConfig("tolerances must be positive");
    if (input_files.empty()) {
        for (Suite s : suites)
            if (needs_tripartite(s) && dims.size() != 3)
                throw InvalidConfig(std::string("suite ") + to_string(s) +
                                    " needs tripartite --dims");
        bool bip = std::find(suites.begin(), suites.end(), Suite::Bipartite) != suites.end();
        if (bip && dims.size() < 2) throw InvalidConfig("bipartite suite needs >= 2 dims");
    }
}

bool SuiteReport::all_pass() const {
    return std::all_of(suites.begin(), suites.end(),
                       [](const SuiteResult& s) { return s.fail_count == 0; });
}

SuiteReport run_verify(const RunConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    std::vector<MultipartiteState> inputs;
    for (const auto& p : config.input_files) inputs.push_back(io::load_state(p));
    const std::size_t workers = config.workers ? config.workers : default_worker_count();

    SuiteReport report;
    report.config = config;
    for (Suite s : parse_suites(config.suite))
        report.suites.push_back(run_suite(s, config, inputs, workers));
    report.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

io::json report_to_json(const SuiteReport& report) {
    io::json suites = io::json::array();
    for (const auto& s : report.suites) {
        io::json samples = io::json::array();
        for (const auto& smp : s.samples) samples.push_back(sample_to_json(smp));
        io::json j = {{"suite", to_string(s.suite)},
                      {"aggregate",
                       {{"pass_count", s.pass_count},
                        {"fail_count", s.fail_count},
                        {"worst_gap", io::number_to_json(s.worst_gap)},
                        {"worst_sample_seed", s.worst_sample_seed}}},
                      {"samples", samples}};
        if (!s.extra.is_null()) j["summary"] = s.extra;
        suites.push_back(std::move(j));
    }
    io::json j = {{"config", config_to_json(report.config)},
                  {"suites", suites},
                  {"all_pass", report.all_pass()}};
    if (report.config.timing) j["wall_time"] = report.wall_time;
    return j;
}

std::string report_to_csv(const SuiteReport& report) {
    std::ostringstream os;
    os << "suite,index,seed,status,field,value\n";
    for (const auto& s : report.suites) {
        const std::string name = to_string(s.suite);
        for (const auto& smp : s.samples) {
            const std::string status =
                smp.pass ? "pass" : (smp.error_kind.empty() ? "fail" : "error:" + smp.error_kind);
            std::vector<std::pair<std::string, std::string>> rows;
            rows.emplace_back("margin", io::format_number(smp.margin));
            flatten_numbers(smp.payload, "result", rows);
            for (const auto& [field, value] : rows)
                os << name << ',' << smp.index << ',' << smp.seed << ',' << csv_escape(status)
                   << ',' << csv_escape(field) << ',' << value << '\n';
        }
        os << name << ",,,aggregate,pass_count," << s.pass_count << '\n';
        os << name << ",,,aggregate,fail_count," << s.fail_count << '\n';
        os << name << ",,,aggregate,worst_gap," << io::format_number(s.worst_gap) << '\n';
        os << name << ",,,aggregate,worst_sample_seed," << s.worst_sample_seed << '\n';
    }
    if (report.config.timing) os << ",,,aggregate,wall_time," << io::format_number(report.wall_time) << '\n';
    return os.str();
}

GenKind gen_kind_from_string(const std::string& s) {
    if (s == "hs") return GenKind::Hs;
    if (s == "pure") return GenKind::Pure;
    if (s == "markov-classical-c") return GenKind::MarkovClassicalC;
    throw InvalidConfig("unknown state kind '" + s + "'");
}

const char* to_string(GenKind k) {
    switch (k) {
        case GenKind::Hs: return "hs";
        case GenKind::Pure: return "pure";
        case GenKind::MarkovClassicalC: return "markov-classical-c";
    }
    return "?";
}

MultipartiteState generate_state(const Dims& dims, std::uint64_t seed, GenKind kind) {
    Rng rng(seed);
    switch (kind) {
        case GenKind::Hs: return random_density_hs(dims, rng);
        case GenKind::Pure: return random_pure(dims, rng);
        case GenKind::MarkovClassicalC:
            if (dims.size() != 3) throw InvalidConfig("markov-classical-c needs dims (A,B,C)");
            return random_markov_classical_c(dims, rng);
    }
    throw InvalidConfig("unknown kind");
}

std::vector<std::filesystem::path> cmd_gen(const Dims& dims, std::size_t n, std::uint64_t seed,
                                           GenKind kind, const std::filesystem::path& out_dir) {
    if (n < 1) throw InvalidConfig("n must be >= 1");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
    std::vector<std::filesystem::path> paths;
    for (std::size_t i = 0; i < n; ++i) {
        const auto path = out_dir / (std::string(to_string(kind)) + "_" + dims_tag(dims) + "_seed" +
                                     std::to_string(seed) + "_" + std::to_string(i) + ".json");
        io::save_state(generate_state(dims, sample_seed(seed, i), kind), path);
        paths.push_back(path);
    }
    return paths;
}

namespace {

void emit(const std::optional<std::filesystem::path>& out, const std::string& text) {
    if (out) io::write_text(*out, text);
    else std::cout << text;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"Numerical verification of quantum entropy inequalities"};
    app.require_subcommand(1);

    std::string dims_text = "2,2,2";
    std::size_t n = 100;
    std::uint64_t seed = 0;
    std::size_t threads = 0;

    auto* gen = app.add_subcommand("gen", "Write random state files");
    std::string gen_kind = "hs";
    std::string gen_out = ".";
    gen->add_option("--dims", dims_text, "Subsystem dimensions, e.g. 2,2,2");
    gen->add_option("--n", n, "Number of states");
    gen->add_option("--seed", seed, "Base seed");
    gen->add_option("--kind", gen_kind, "hs | pure | markov-classical-c");
    gen->add_option("--out", gen_out, "Output directory");

    auto* verify = app.add_subcommand("verify", "Run verification suites");
    RunConfig cfg;
    std::string format = "json";
    std::vector<std::string> inputs;
    std::string out;
    verify->add_option("--suite", cfg.suite, "Suite name or 'all'");
    verify->add_option("--dims", dims_text, "Subsystem dimensions");
    verify->add_option("--n", n, "Samples per suite");
    verify->add_option("--seed", seed, "Base seed");
    verify->add_option("--tol-id", cfg.tol_identity, "Identity tolerance");
    verify->add_option("--tol-ineq", cfg.tol_inequality, "Inequality slack");
    verify->add_option("--format", format, "json | csv");
    verify->add_option("--out", out, "Report path (default stdout)");
    verify->add_option("--input", inputs, "State files to use as primary operands");
    verify->add_option("--threads", threads, "Worker threads (default ENTROPY_GAP_THREADS)");
    verify->add_flag("--timing", cfg.timing, "Include wall time in the report");

    auto* markov = app.add_subcommand("markov", "Markov trace-criterion analysis of one state");
    std::string markov_input;
    std::string markov_kind = "hs";
    double markov_tol = 1e-8;
    std::string markov_out;
    markov->add_option("--input", markov_input, "State file");
    markov->add_option("--dims", dims_text, "Dimensions when generating");
    markov->add_option("--seed", seed, "Seed when generating");
    markov->add_option("--kind", markov_kind, "hs | markov-classical-c when generating");
    markov->add_option("--tol", markov_tol, "Trace-criterion tolerance");
    markov->add_option("--out", markov_out, "Report path (default stdout)");

    auto* scan = app.add_subcommand("scan", "Scan Tr exp(log rho_AC + log rho_BC - log rho_C)");
    std::string ensemble = "hs";
    std::size_t bins = 20, top_k = 5;
    std::string scan_out;
    scan->add_option("--dims", dims_text, "Subsystem dimensions");
    scan->add_option("--n", n, "Samples");
    scan->add_option("--seed", seed, "Base seed");
    scan->add_option("--ensemble", ensemble, "hs | markov-classical-c");
    scan->add_option("--bins", bins, "Histogram bins over [0, 1]");
    scan->add_option("--top-k", top_k, "States closest to Tr M = 1 to keep");
    scan->add_option("--out", scan_out, "Summary path (default stdout)");
    scan->add_option("--threads", threads, "Worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        const Dims dims = parse_dims(dims_text);
        if (gen->parsed()) {
            for (const auto& p : cmd_gen(dims, n, seed, gen_kind_from_string(gen_kind), gen_out))
                std::cout << p.string() << '\n';
            return 0;
        }
        if (verify->parsed()) {
            cfg.dims = dims;
            cfg.n_samples = n;
            cfg.seed = seed;
            cfg.workers = threads;
            for (const auto& p : inputs) cfg.input_files.emplace_back(p);
            if (format == "json") cfg.format = Format::Json;
            else if (format == "csv") cfg.format = Format::Csv;
            else throw InvalidConfig("unknown format '" + format + "'");
            if (!out.empty()) cfg.output = out;
            const auto report = run_verify(cfg);
            emit(cfg.output, cfg.format == Format::Json ? io::dump(report_to_json(report))
                                                        : report_to_csv(report));
            if (cfg.timing) std::cerr << "wall_time " << report.wall_time << " s\n";
            return report.all_pass() ? 0 : 1;
        }
        if (markov->parsed()) {
            const auto state = markov_input.empty()
                                   ? generate_state(dims, seed, gen_kind_from_string(markov_kind))
                                   : io::load_state(markov_input);
            const std::optional<std::filesystem::path> dest =
                markov_out.empty() ? std::nullopt : std::optional<std::filesystem::path>(markov_out);
            io::json j = {{"source", markov_input.empty() ? "generated" : markov_input},
                          {"dims", state.dims()}};
            try {
                const auto report = check_markov_trace_theorem(state, markov_tol);
                j["report"] = io::to_json(report);
                emit(dest, io::dump(j));
                return report.verdict == MarkovVerdict::Indeterminate ? 1 : 0;
            } catch (const SupportDeficient& e) {
                j["error"] = {{"kind", e.kind()}, {"message", e.what()}};
                emit(dest, io::dump(j));
                return 1;
            }
        }
        if (scan->parsed()) {
            const auto summary =
                scan_trace_statistic(dims, n, seed, scan_ensemble_from_string(ensemble), bins,
                                     top_k, threads ? threads : default_worker_count());
            emit(scan_out.empty() ? std::nullopt : std::optional<std::filesystem::path>(scan_out),
                 io::dump(io::to_json(summary)));
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error [" << e.kind() << "]: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

int run(const std::vector<std::string>& args) {
    std::vector<std::string> storage;
    storage.emplace_back("entropy-gap");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());
    return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace entropy_gap::cli

#include "pclab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "pclab/acceptance.hpp"
#include "pclab/error.hpp"
#include "pclab/limit_laws.hpp"
#include "pclab/percolation.hpp"
#include "pclab/recursive_tree.hpp"
#include "pclab/regular_tree.hpp"
#include "pclab/root_isolation.hpp"
#include "pclab/yule.hpp"

namespace pclab {

OutputFormat parse_format(const std::string& text)
{
    if (text == "csv") {
        return OutputFormat::csv;
    }
    if (text == "json") {
        return OutputFormat::json;
    }
    throw DomainError("format must be csv or json, got '" + text + "'");
}

const char* to_string(OutputFormat format)
{
    return format == OutputFormat::csv ? "csv" : "json";
}

namespace {

using Params = std::map<std::string, double>;

struct Experiment
{
    std::string name;
    std::vector<ParameterSpec> parameters;
    std::function<std::vector<std::string>(const Params&)> columns;
    std::function<ReplicaFn(const Params&)> replica;
    std::function<ComparisonReport(const SampleSet&, const ExperimentConfig&)> analyze;
};

std::size_t as_size(const Params& p, const char* key)
{
    return static_cast<std::size_t>(p.at(key));
}

double as_double(std::uint64_t v)
{
    return static_cast<double>(v);
}

double giant_survival(const Params& p)
{
    return 1.0 - p.at("c") / std::log(p.at("n"));
}

// Reference draws of the continuous Luria-Delbrueck law, independent of the replicas.
std::vector<double> ld_reference(std::uint64_t seed, const char* label, std::size_t count,
                                 std::size_t workers)
{
    return replicate(
        [](Stream& rng) { return sample_ld_continuous(ContinuousMethod::stable_transform, rng); }, count,
        seed_for(seed, label), workers);
}

std::vector<double> per_replica(const SampleSet& samples, const std::string& column,
                                const std::function<double(double)>& map)
{
    auto values = samples.column(column);
    for (double& v : values) {
        v = map(v);
    }
    return values;
}

Verdict zero_count(const std::string& check, double total)
{
    return {check, total == 0.0, total, 0.0, "count == 0"};
}

void add_distance(ComparisonReport& report, const std::string& name, std::span<const double> a,
                  std::span<const double> b)
{
    report.distances.push_back({name, stats::ks_two_sample(a, b)});
}

std::size_t reference_size(std::size_t replicas)
{
    return std::max<std::size_t>(replicas, 10000);
}

ParameterSpec replicas_spec(double fallback)
{
    return {"replicas", fallback, true, 1.0, "number of independent replicas"};
}

// ---------------------------------------------------------------------------

Experiment giant_experiment()
{
    Experiment e;
    e.name = "giant";
    e.parameters = {{"n", 10000, true, 3, "tree size"},
                    {"c", 1.0, false, 0.0, "p_n = 1 - c / ln n"},
                    {"exponent", 4.0, false, 1.0, "germ size floor(ln^exponent n)"},
                    replicas_spec(1000)};
    e.columns = [](const Params&) {
        return std::vector<std::string>{"G_direct", "statistic_direct", "germ", "G_pipeline",
                                        "statistic_pipeline"};
    };
    e.replica = [](const Params& p) -> ReplicaFn {
        const std::size_t n = as_size(p, "n");
        const double c = p.at("c");
        const double q = giant_survival(p);
        const double exponent = p.at("exponent");
        const LimitParams lp{static_cast<double>(n), c, 0.0};
        return [=](Stream& rng) {
            const auto direct = decompose(build_marked(n, q, rng)).root_cluster_size;
            const auto pipeline = run_pipeline(n, c, rng, exponent);
            return std::vector<double>{
                as_double(direct), limit_statistic(LimitStatisticKind::theorem1_G, as_double(direct), lp),
                as_double(pipeline.germ), as_double(pipeline.clones),
                limit_statistic(LimitStatisticKind::theorem1_G, as_double(pipeline.clones), lp)};
        };
    };
    e.analyze = [](const SampleSet& s, const ExperimentConfig& config) {
        const auto& p = config.parameters;
        const double n = p.at("n");
        const double c = p.at("c");
        const double exact = exact_mean_root_fraction(as_size(p, "n"), giant_survival(p));
        auto scaled = [n](double g) { return g / n; };
        const auto direct = s.column("G_direct");
        const auto pipeline = s.column("G_pipeline");
        ComparisonReport report = compare("G_direct", direct, pipeline);
        report.verdicts.push_back(mean_verdict("mean G_direct / n = exact mean",
                                               stats::mean_estimate(per_replica(s, "G_direct", scaled)), exact));
        report.verdicts.push_back(mean_verdict("mean G_pipeline / n = exact mean",
                                               stats::mean_estimate(per_replica(s, "G_pipeline", scaled)), exact));
        report.sample_summary["statistic_direct"] = stats::summarize(s.column("statistic_direct"));
        report.sample_summary["statistic_pipeline"] = stats::summarize(s.column("statistic_pipeline"));
        if (c > 0.0) {
            auto limit = ld_reference(config.seed, "giant/limit", reference_size(s.size()), config.workers);
            for (double& z : limit) {
                z = -c * std::exp(-c) * (z + std::log(c));
            }
            add_distance(report, "statistic_direct vs limit", s.column("statistic_direct"), limit);
        }
        return report;
    };
    return e;
}

Experiment germ_experiment()
{
    Experiment e;
    e.name = "germ";
    e.parameters = {{"k", 10000, true, 2, "germ tree size"},
                    {"c", 1.0, false, 0.0, "q_k = 1 - c k^{-1/4}"},
                    replicas_spec(1000)};
    e.columns = [](const Params&) {
        return std::vector<std::string>{"delta_clock", "delta_direct", "statistic_clock"};
    };
    e.replica = [](const Params& p) -> ReplicaFn {
        const GermSpec spec = GermSpec::standalone(as_size(p, "k"), p.at("c"));
        spec.survival();
        const LimitParams lp{static_cast<double>(spec.k), spec.c, 0.0};
        return [=](Stream& rng) {
            const auto clock = germ_delta(spec, rng, GermRoute::clock_cutoff);
            const auto direct = germ_delta(spec, rng, GermRoute::direct_percolation);
            return std::vector<double>{
                as_double(clock), as_double(direct),
                limit_statistic(LimitStatisticKind::proposition1_germ, as_double(clock), lp)};
        };
    };
    e.analyze = [](const SampleSet& s, const ExperimentConfig& config) {
        const auto& p = config.parameters;
        const GermSpec spec = GermSpec::standalone(as_size(p, "k"), p.at("c"));
        const double k = static_cast<double>(spec.k);
        const double target = k * (1.0 - exact_mean_root_fraction(spec.k, spec.survival()));
        const auto clock = s.column("delta_clock");
        const auto direct = s.column("delta_direct");
        ComparisonReport report = compare("delta_clock", clock, direct);
        report.verdicts.push_back(mean_verdict("mean delta_clock = k (1 - exact mean)",
                                               stats::mean_estimate(clock), target));
        report.verdicts.push_back(mean_verdict("mean delta_direct = k (1 - exact mean)",
                                               stats::mean_estimate(direct), target));
        report.sample_summary["statistic_clock"] = stats::summarize(s.column("statistic_clock"));
        if (spec.c > 0.0 && spec.k >= 3) {
            auto limit = ld_reference(config.seed, "germ/limit", reference_size(s.size()), config.workers);
            for (double& z : limit) {
                z = spec.c * (z + std::log(spec.c));
            }
            add_distance(report, "statistic_clock vs limit", s.column("statistic_clock"), limit);
        }
        return report;
    };
    return e;
}

Experiment coupling_experiment()
{
    Experiment e;
    e.name = "coupling";
    e.parameters = {{"k", 1000, true, 2, "tree size"}, replicas_spec(1000)};
    e.columns = [](const Params&) {
        return std::vector<std::string>{"violations",          "unconserved",          "first_passage",
                                        "explicit_steps",      "explicit_first_cut",   "explicit_largest_cut",
                                        "distributional_steps", "distributional_first_cut",
                                        "distributional_largest_cut"};
    };
    e.replica = [](const Params& p) -> ReplicaFn {
        const std::size_t k = as_size(p, "k");
        return [k](Stream& rng) {
            const auto run = coupled_walk_isolation(k, rng);
            double violations = 0;
            for (std::size_t l = 0; l < run.first_passage; ++l) {
                violations += run.trace.partials[l] != run.walk[l];
            }
            const auto explicit_trace = meir_moon_explicit(build_rrt(k, rng), rng);
            const auto distributional = meir_moon_distributional(k, rng);
            double unconserved = 0;
            for (const auto* t : {&run.trace, &explicit_trace, &distributional}) {
                unconserved += t->partials.back() != k - 1;
            }
            auto largest = [](const IsolationTrace& t) {
                return as_double(*std::max_element(t.cuts.begin(), t.cuts.end()));
            };
            return std::vector<double>{violations,
                                       unconserved,
                                       static_cast<double>(run.first_passage),
                                       static_cast<double>(explicit_trace.steps()),
                                       as_double(explicit_trace.cuts.front()),
                                       largest(explicit_trace),
                                       static_cast<double>(distributional.steps()),
                                       as_double(distributional.cuts.front()),
                                       largest(distributional)};
        };
    };
    e.analyze = [](const SampleSet& s, const ExperimentConfig&) {
        ComparisonReport report;
        for (const char* f : {"steps", "first_cut", "largest_cut"}) {
            const std::string name = std::string("explicit_") + f;
            report.merge(compare(name, s.column(name), s.column(std::string("distributional_") + f)));
        }
        auto total = [&s](const char* column) {
            const auto v = s.column(column);
            return std::accumulate(v.begin(), v.end(), 0.0);
        };
        report.verdicts.push_back(zero_count("D_k(l) = S_l for l < N(k)", total("violations")));
        report.verdicts.push_back(zero_count("cuts sum to k - 1", total("unconserved")));
        report.sample_summary["first_passage"] = stats::summarize(s.column("first_passage"));
        return report;
    };
    return e;
}

std::vector<double> unit_grid()
{
    std::vector<double> grid;
    for (int i = 1; i <= 9; ++i) {
        grid.push_back(i / 10.0);
    }
    return grid;
}

Experiment ld_experiment()
{
    Experiment e;
    e.name = "ld";
    e.parameters = {{"m", 1.0, false, 0.0, "discrete Luria-Delbrueck parameter"}, replicas_spec(100000)};
    e.columns = [](const Params&) {
        return std::vector<std::string>{"z_discrete", "z_stable", "z_scaled"};
    };
    e.replica = [](const Params& p) -> ReplicaFn {
        const double m = p.at("m");
        return [m](Stream& rng) {
            return std::vector<double>{as_double(sample_ld_discrete(m, rng)),
                                       sample_ld_continuous(ContinuousMethod::stable_transform, rng),
                                       sample_ld_continuous(ContinuousMethod::scaled_discrete, rng, 1e6)};
        };
    };
    e.analyze = [](const SampleSet& s, const ExperimentConfig& config) {
        const double m = config.parameters.at("m");
        TransformSpec gf{TransformSpec::Kind::generating, "gf_discrete", unit_grid(),
                         [m](double x) { return std::complex<double>(gf_discrete(m, x)); }};
        ComparisonReport report = compare("z_discrete", s.column("z_discrete"), gf);
        TransformSpec cf{TransformSpec::Kind::characteristic, "cf_continuous", {-2, -1, -0.5, 0.5, 1, 2},
                         [](double t) { return cf_continuous(t); }};
        report.merge(compare("z_stable", s.column("z_stable"), cf));
        report.merge(compare("z_scaled", s.column("z_scaled"), s.column("z_stable")));
        return report;
    };
    return e;
}

Experiment clusters_experiment()
{
    Experiment e;
    e.name = "clusters";
    e.parameters = {{"n", 100000, true, 3, "tree size"},
                    {"c", 1.0, false, 0.0, "p_n = 1 - c / ln n"},
                    {"x", 1.0, false, 0.0, "cluster threshold in units of n / ln n"},
                    replicas_spec(1000)};
    e.columns = [](const Params&) {
        return std::vector<std::string>{"xn", "z_m", "clusters_above", "largest_rescaled"};
    };
    e.replica = [](const Params& p) -> ReplicaFn {
        const std::size_t n = as_size(p, "n");
        const double c = p.at("c");
        const double x = p.at("x");
        const double q = giant_survival(p);
        const double ln_n = std::log(static_cast<double>(n));
        const double m = c * std::exp(-c) * static_cast<double>(n) / ln_n;
        const LimitParams lp{static_cast<double>(n), c, 0.0};
        return [=](Stream& rng) {
            const auto clusters = decompose(build_marked(n, q, rng));
            const double threshold = x * static_cast<double>(n) / ln_n;
            double above = 0;
            for (auto size : clusters.ranked_sizes) {
                if (static_cast<double>(size) <= threshold) {
                    break;
                }
                ++above;
            }
            const double largest = clusters.ranked_sizes.empty() ? 0.0 : as_double(clusters.ranked_sizes.front());
            const auto atoms = sample_cluster_atoms(c, ln_n / static_cast<double>(n), n, rng);
            return std::vector<double>{as_double(*atoms.xn), as_double(sample_ld_discrete(m, rng)), above,
                                       limit_statistic(LimitStatisticKind::cluster_rescale, largest, lp)};
        };
    };
    e.analyze = [](const SampleSet& s, const ExperimentConfig& config) {
        const double c = config.parameters.at("c");
        const double x = config.parameters.at("x");
        ComparisonReport report = compare("xn", s.column("xn"), s.column("z_m"));
        const auto above = stats::mean_estimate(s.column("clusters_above"));
        const double target = c * std::exp(-c) / x;
        const double gap = target > 0.0 ? std::fabs(above.mean - target) / target : above.mean;
        report.verdicts.push_back({"mean clusters above x n / ln n = c e^-c / x", gap <= 0.25, gap, 0.25,
                                   "relative error <= tolerance"});
        report.sample_summary["clusters_above"] = stats::summarize(s.column("clusters_above"));
        report.sample_summary["largest_rescaled"] = stats::summarize(s.column("largest_rescaled"));
        return report;
    };
    return e;
}

Experiment urn_experiment()
{
    Experiment e;
    e.name = "urn";
    e.parameters = {{"n", 2000, true, 1, "urn size"},
                    {"p", 0.8, false, 0.0, "probability of copying a ball"},
                    replicas_spec(10000)};
    e.columns = [](const Params&) { return std::vector<std::string>{"urn_black", "tree_delta"}; };
    e.replica = [](const Params& p) -> ReplicaFn {
        const std::size_t n = as_size(p, "n");
        const double q = p.at("p");
        require(q <= 1.0, "parameter 'p' must lie in [0, 1]");
        return [=](Stream& rng) {
            const auto black = urn_black_count(n, q, rng);
            const auto delta = decompose(build_marked(n, q, rng)).disconnected;
            return std::vector<double>{as_double(black), as_double(delta)};
        };
    };
    e.analyze = [](const SampleSet& s, const ExperimentConfig& config) {
        const std::size_t n = as_size(config.parameters, "n");
        const double target = static_cast<double>(n) * (1.0 - exact_mean_root_fraction(n, config.parameters.at("p")));
        ComparisonReport report = compare("urn_black", s.column("urn_black"), s.column("tree_delta"));
        report.verdicts.push_back(mean_verdict("mean urn_black = n (1 - exact mean)",
                                               stats::mean_estimate(s.column("urn_black")), target));
        return report;
    };
    return e;
}

Experiment yule_experiment()
{
    Experiment e;
    e.name = "yule";
    e.parameters = {{"n", 100000, true, 16, "final population"},
                    {"c", 1.0, false, 0.0, "p = 1 - c / ln n"},
                    {"exponent", 4.0, false, 1.0, "initial population floor(ln^exponent n)"},
                    replicas_spec(1000)};
    e.columns = [](const Params&) {
        return std::vector<std::string>{"tau_statistic", "clones", "mutants", "identity_violations",
                                        "descent_violations", "mutant_descent"};
    };
    e.replica = [](const Params& p) -> ReplicaFn {
        const std::size_t n = as_size(p, "n");
        const double c = p.at("c");
        const double q = giant_survival(p);
        const double exponent = p.at("exponent");
        const std::size_t k0 = threshold_size(n, exponent);
        require(k0 >= 1 && k0 <= n, "floor(ln^exponent n) must lie in [1, n]");
        return [=](Stream& rng) {
            const auto run = yule_simulate(k0, 0, n, q, rng);
            YuleOptions options;
            options.keep_embedded = true;
            options.lineage_size = k0;
            const auto embedded = yule_simulate(1, 0, n, q, rng, options);
            const auto parts = decompose(*embedded.embedded, k0);
            return std::vector<double>{tau_statistic(run, n, exponent),
                                       as_double(embedded.clones),
                                       as_double(embedded.mutants),
                                       embedded.clones != parts.root_cluster_size ? 1.0 : 0.0,
                                       embedded.initial_lineage != *parts.prefix_mutants ? 1.0 : 0.0,
                                       mutant_descent(embedded, c)};
        };
    };
    e.analyze = [](const SampleSet& s, const ExperimentConfig&) {
        ComparisonReport report;
        const auto tau = stats::mean_estimate(s.column("tau_statistic"));
        report.sample_summary["tau_statistic"] = stats::summarize(s.column("tau_statistic"));
        report.sample_summary["mutant_descent"] = stats::summarize(s.column("mutant_descent"));
        const double gap = std::fabs(tau.mean - 1.0);
        report.verdicts.push_back({"mean e^tau ln^4 n / n within 5% of 1", gap <= 0.05, gap, 0.05,
                                   "|mean - 1| <= tolerance"});
        auto total = [&s](const char* column) {
            const auto v = s.column(column);
            return std::accumulate(v.begin(), v.end(), 0.0);
        };
        report.verdicts.push_back(zero_count("clones = root cluster of the embedded tree", total("identity_violations")));
        report.verdicts.push_back(zero_count("lineage count = prefix mutants", total("descent_violations")));
        return report;
    };
    return e;
}

Experiment regular_experiment()
{
    Experiment e;
    e.name = "regular";
    e.parameters = {{"d", 2, true, 2, "outer degree"},
                    {"h", 10000, true, 1, "height of the percolation scale"},
                    {"k", 10, true, 1, "level for the exact-mean checks"},
                    {"c", 1.0, false, 0.0, "survival e^{-c/h}"},
                    replicas_spec(10000)};
    e.columns = [](const Params&) {
        return std::vector<std::string>{"nabla_k", "sigma_k", "sigma_independent", "levy", "theorem2"};
    };
    e.replica = [](const Params& p) -> ReplicaFn {
        const RegularParams params{static_cast<unsigned>(p.at("d")), as_size(p, "h"), p.at("c")};
        const std::size_t k = as_size(p, "k");
        params.validate();
        require(k <= params.h, "parameter 'k' must not exceed 'h'");
        const double b = params.phase();
        const bool levy = params.c > 0.0;
        return [=](Stream& rng) {
            const auto levels = simulate_levels(params, k, rng, true);
            return std::vector<double>{as_double(levels.disconnected[k]), as_double(levels.sigma[k]),
                                       sigma_sample(params, k, rng),
                                       levy ? sample_levy(params.d, b, params.c, rng) : 0.0,
                                       theorem2_sample(params, rng)};
        };
    };
    e.analyze = [](const SampleSet& s, const ExperimentConfig& config) {
        const auto& p = config.parameters;
        const RegularParams params{static_cast<unsigned>(p.at("d")), as_size(p, "h"), p.at("c")};
        const auto expected = expected_counts(params, as_size(p, "k"));
        ComparisonReport report;
        report.verdicts.push_back(mean_verdict("mean nabla_k = d^k (1 - e^{-ck/h})",
                                               stats::mean_estimate(s.column("nabla_k")), expected.disconnected));
        report.verdicts.push_back(mean_verdict("mean sigma_k = k d^k (1 - e^{-c/h})",
                                               stats::mean_estimate(s.column("sigma_k")), expected.sigma));
        report.verdicts.push_back(mean_verdict("mean independent sigma_k = k d^k (1 - e^{-c/h})",
                                               stats::mean_estimate(s.column("sigma_independent")), expected.sigma));
        const auto nabla = s.column("nabla_k");
        const auto sigma = s.column("sigma_k");
        double below = 0;
        for (std::size_t i = 0; i < nabla.size(); ++i) {
            below += sigma[i] < nabla[i];
        }
        report.verdicts.push_back(zero_count("sigma_k >= nabla_k on every replica", below));
        report.sample_summary["theorem2"] = stats::summarize(s.column("theorem2"));
        if (params.c > 0.0) {
            const unsigned d = params.d;
            const double b = params.phase();
            const double c = params.c;
            TransformSpec laplace{TransformSpec::Kind::laplace, "levy_laplace", {0.5, 1.0, 2.0},
                                  [=](double a) { return std::complex<double>(std::exp(c * psi(d, b, a))); }};
            report.merge(compare("levy", s.column("levy"), laplace));
            auto limit = s.column("levy");
            for (double& v : limit) {
                v = std::exp(-c) * (v + c * b);
            }
            add_distance(report, "theorem2 vs limit", s.column("theorem2"), limit);
        }
        return report;
    };
    return e;
}

Experiment check_experiment()
{
    Experiment e;
    e.name = "check";
    e.parameters = {{"criterion", 0, true, 0, "single criterion 1..13, or 0 for all"}};
    e.columns = [](const Params&) { return std::vector<std::string>{"criterion", "passed"}; };
    return e;
}

const std::vector<Experiment>& registry()
{
    static const std::vector<Experiment> experiments = {
        giant_experiment(), germ_experiment(),    coupling_experiment(), ld_experiment(), clusters_experiment(),
        urn_experiment(),   yule_experiment(),    regular_experiment(),  check_experiment()};
    return experiments;
}

const Experiment& find_experiment(const std::string& name)
{
    for (const auto& e : registry()) {
        if (e.name == name) {
            return e;
        }
    }
    throw DomainError("unknown experiment '" + name + "'");
}

}  // namespace

const std::vector<std::string>& experiment_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& e : registry()) {
            out.push_back(e.name);
        }
        return out;
    }();
    return names;
}

const std::vector<ParameterSpec>& experiment_parameters(const std::string& experiment)
{
    return find_experiment(experiment).parameters;
}

ExperimentConfig parse_config_json(const std::string& text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::parse_error& error) {
        throw DomainError(std::string("config is not valid JSON: ") + error.what());
    }
    require(doc.is_object(), "config must be a JSON object");
    ExperimentConfig config;
    for (const auto& [key, value] : doc.items()) {
        if (key == "experiment") {
            require(value.is_string(), "key 'experiment' must be a string");
            config.experiment = value.get<std::string>();
        }
        else if (key == "seed") {
            require(value.is_number_unsigned(), "key 'seed' must be a nonnegative integer");
            config.seed = value.get<std::uint64_t>();
        }
        else if (key == "workers") {
            require(value.is_number_unsigned(), "key 'workers' must be a nonnegative integer");
            config.workers = value.get<std::size_t>();
        }
        else if (key == "out") {
            require(value.is_string(), "key 'out' must be a string");
            config.output = value.get<std::string>();
        }
        else if (key == "format") {
            require(value.is_string(), "key 'format' must be a string");
            config.format = parse_format(value.get<std::string>());
        }
        else if (key == "parameters") {
            require(value.is_object(), "key 'parameters' must be an object");
            for (const auto& [name, number] : value.items()) {
                require(number.is_number(), "parameter '" + name + "' must be a number");
                config.parameters[name] = number.get<double>();
            }
        }
        else {
            throw DomainError("unknown config key '" + key + "'");
        }
    }
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DomainError("cannot read config '" + path.string() + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_json(text.str());
}

nlohmann::json to_json(const ExperimentConfig& config)
{
    // Worker count and output path do not change any result, so they are not echoed.
    nlohmann::json out;
    out["experiment"] = config.experiment;
    out["seed"] = config.seed;
    out["format"] = to_string(config.format);
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [key, value] : config.parameters) {
        params[key] = value;
    }
    out["parameters"] = params;
    return out;
}

ExperimentConfig resolve(const ExperimentConfig& config)
{
    require(!config.experiment.empty(), "config names no experiment");
    const auto& experiment = find_experiment(config.experiment);
    ExperimentConfig out = config;
    out.parameters.clear();
    for (const auto& [key, value] : config.parameters) {
        const bool known = std::any_of(experiment.parameters.begin(), experiment.parameters.end(),
                                       [&key](const ParameterSpec& spec) { return spec.name == key; });
        require(known, "parameter '" + key + "' does not apply to experiment '" + config.experiment + "'");
    }
    for (const auto& spec : experiment.parameters) {
        const auto it = config.parameters.find(spec.name);
        const double value = it == config.parameters.end() ? spec.fallback : it->second;
        require(std::isfinite(value), "parameter '" + spec.name + "' must be finite");
        if (spec.integer) {
            require(value == std::floor(value) && value < 9.0e15,
                    "parameter '" + spec.name + "' must be an integer");
        }
        require(value >= spec.minimum, "parameter '" + spec.name + "' must be at least " + std::to_string(spec.minimum));
        out.parameters[spec.name] = value;
    }
    if (out.experiment == "giant" || out.experiment == "clusters" || out.experiment == "yule") {
        require(out.parameters.at("c") <= std::log(out.parameters.at("n")),
                "parameter 'c' must not exceed ln n so that p_n lies in [0, 1]");
    }
    if (out.experiment == "check") {
        const double id = out.parameters.at("criterion");
        require(id <= kCriterionCount, "parameter 'criterion' must lie in 0.." + std::to_string(kCriterionCount));
    }
    return out;
}

SampleSet run_replicas(const ExperimentConfig& config)
{
    const ExperimentConfig resolved = resolve(config);
    require(resolved.experiment != "check", "the check suite has no per-replica samples");
    const auto& experiment = find_experiment(resolved.experiment);
    const auto& p = resolved.parameters;
    return run_replicas(experiment.replica(p), experiment.columns(p), as_size(p, "replicas"), resolved.seed,
                        resolved.workers);
}

ExperimentResult run_experiment(const ExperimentConfig& config)
{
    ExperimentResult result;
    result.config = resolve(config);
    if (result.config.experiment == "check") {
        SuiteOptions options;
        options.seed = result.config.seed;
        options.workers = result.config.workers;
        const int id = static_cast<int>(result.config.parameters.at("criterion"));
        if (id != 0) {
            options.only = {id};
        }
        result.samples.columns = {"criterion", "passed"};
        for (const auto& outcome : run_acceptance(options)) {
            result.samples.rows.push_back({static_cast<double>(outcome.id), outcome.passed() ? 1.0 : 0.0});
            ComparisonReport tagged = outcome.report;
            for (auto& verdict : tagged.verdicts) {
                verdict.check = std::to_string(outcome.id) + ": " + verdict.check;
            }
            result.report.merge(tagged);
        }
    }
    else {
        result.samples = run_replicas(result.config);
        result.report = find_experiment(result.config.experiment).analyze(result.samples, result.config);
    }
    result.report.config = to_json(result.config);
    return result;
}

std::string render(const ExperimentResult& result, OutputFormat format)
{
    if (format == OutputFormat::csv) {
        return samples_to_csv(result.samples);
    }
    return to_json(result.report).dump(2) + "\n";
}

}  // namespace pclab

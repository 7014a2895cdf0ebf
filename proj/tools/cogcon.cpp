// cogcon: command-line front end for the belief-contagion simulator.

#include "cogcon/config.hpp"
#include "cogcon/contagion.hpp"
#include "cogcon/experiments.hpp"
#include "cogcon/graph.hpp"
#include "cogcon/graph_io.hpp"
#include "cogcon/paths.hpp"
#include "cogcon/pod.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace cogcon;

namespace {

struct Options
{
	fs::path out = "out";
	std::optional<std::uint64_t> seed;
	std::size_t workers = 1;
	std::string format = "csv";
};

struct UsageError : std::invalid_argument
{
	using std::invalid_argument::invalid_argument;
};

/// One machine-readable line on stderr.
int report(const std::string& kind, const std::string& message, const std::vector<std::string>& issues = {})
{
	Json line = {{"error", kind}, {"message", message}};
	if (!issues.empty())
		line["issues"] = issues;
	std::cerr << line.dump() << '\n';
	if (kind == "usage")
		return 64;
	if (kind == "io")
		return 3;
	if (kind == "schema" || kind == "domain")
		return 2;
	return 1;
}

std::string stem_of(const fs::path& p) { return p.stem().string(); }

int cmd_run(const Options& opt, const fs::path& config_path)
{
	const Json doc = read_json_file(config_path);
	RunConfig config = parse_run_config(doc);
	if (opt.seed)
		config.seed = *opt.seed;
	const std::string name = doc.contains("name") ? doc.at("name").get<std::string>() : stem_of(config_path);
	const auto a = run_condition(config, name, opt.out, opt.workers);
	std::cout << a.trace.string() << '\n' << a.summary.string() << '\n';
	return 0;
}

int cmd_suite(Options opt, const std::string& name)
{
	const auto& names = suite_names();
	if (std::find(names.begin(), names.end(), name) == names.end())
		throw UsageError("unknown suite '" + name + "' (expected figures, beta-selection, table1, table2, homophily)");
	SuiteOptions s;
	s.out_dir = opt.out;
	s.seed = opt.seed.value_or(kDefaultSuiteSeed);
	s.workers = opt.workers;
	for (const auto& p : run_suite(name, s))
		std::cout << p.string() << '\n';
	return 0;
}

int cmd_graph(const Options& opt, const fs::path& config_path)
{
	GraphSpec spec = parse_graph_spec(read_json_file(config_path));
	if (opt.seed)
		spec.seed = *opt.seed;
	const SocialGraph g = generate(spec);
	const fs::path out = opt.out / (stem_of(config_path) + ".graph");
	write_file_atomic(out, graph_to_text(g));
	std::printf("%s\nnodes %zu edges %zu homophily_per_edge %.6f\n", out.string().c_str(), g.node_count(),
	            g.edge_count(), g.edge_count() ? homophily(g, HomophilyNorm::per_edge) : 0.0);
	return 0;
}

int cmd_beta_table(const Options& opt, const fs::path& config_path)
{
	const ContagionModel model = parse_model_config(read_json_file(config_path));
	const std::string csv = beta_table_csv(beta_table(model));
	const fs::path out = opt.out / (stem_of(config_path) + "_beta.csv");
	write_file_atomic(out, csv);
	std::cout << out.string() << '\n' << csv;
	return 0;
}

int cmd_census(const Options& opt, const fs::path& config_path)
{
	CensusConfig config = parse_census_config(read_json_file(config_path));
	if (opt.seed)
		config.seed = *opt.seed;
	const std::string csv = census_csv_header() + census_csv_rows(path_census(config, opt.workers));
	const fs::path out = opt.out / (stem_of(config_path) + "_census.csv");
	write_file_atomic(out, csv);
	std::cout << out.string() << '\n' << csv;
	return 0;
}

int cmd_homophily(const Options& opt, const fs::path& config_path)
{
	HomophilyConfig config = parse_homophily_config(read_json_file(config_path));
	if (opt.seed)
		config.seed = *opt.seed;
	const auto samples = homophily_samples(config.topology, config.seeds, config.seed);
	const fs::path out = opt.out / (stem_of(config_path) + "_homophily.csv");
	write_file_atomic(out, homophily_csv(samples));
	double per_edge = 0.0, eq11 = 0.0;
	for (const auto& s : samples) {
		per_edge += s.per_edge;
		eq11 += s.eq11;
	}
	std::printf("%s\nmean_per_edge %.6f mean_eq11 %.6f over %zu graphs\n", out.string().c_str(),
	            per_edge / samples.size(), eq11 / samples.size(), samples.size());
	return 0;
}

int cmd_presets(const Options& opt)
{
	for (const auto& p : all_presets(opt.seed.value_or(kDefaultSuiteSeed))) {
		const fs::path out = opt.out / (p.name + ".json");
		write_file_atomic(out, to_json(p.config, p.name).dump(2) + "\n");
		std::cout << out.string() << '\n';
	}
	return 0;
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Belief contagion on social graphs: simulation, path analysis and experiment suites"};
	app.require_subcommand(1);
	Options opt;
	std::string out_dir = "out";
	std::uint64_t seed = 0;
	app.add_option("--out", out_dir, "Output directory")->capture_default_str();
	auto* seed_opt = app.add_option("--seed", seed, "Override the config or suite root seed");
	app.add_option("--workers", opt.workers, "Concurrent runs")->check(CLI::PositiveNumber)->capture_default_str();
	app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv"}))->capture_default_str();

	std::string config_path, suite_name;
	auto* run = app.add_subcommand("run", "Run a batch from a JSON run config");
	run->add_option("config", config_path)->required();
	auto* suite = app.add_subcommand("suite", "Run a named suite: figures, beta-selection, table1, table2, homophily");
	suite->add_option("name", suite_name)->required();
	auto* graph = app.add_subcommand("graph", "Generate and save a graph from a JSON graph spec");
	graph->add_option("spec-config", config_path)->required();
	auto* beta = app.add_subcommand("beta-table", "Emit the 7x7 belief-update table of a cognitive model");
	beta->add_option("model-config", config_path)->required();
	auto* census = app.add_subcommand("census", "Run a tau-bounded path census");
	census->add_option("config", config_path)->required();
	auto* homo = app.add_subcommand("homophily", "Mean neighbor belief distance over seeded graphs");
	homo->add_option("config", config_path)->required();
	auto* presets = app.add_subcommand("presets", "Write the built-in experiment presets as JSON configs");

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp& e) {
		return app.exit(e);
	} catch (const CLI::ParseError& e) {
		return report("usage", e.what());
	}
	opt.out = out_dir;
	if (*seed_opt)
		opt.seed = seed;

	try {
		if (*run)
			return cmd_run(opt, config_path);
		if (*suite)
			return cmd_suite(opt, suite_name);
		if (*graph)
			return cmd_graph(opt, config_path);
		if (*beta)
			return cmd_beta_table(opt, config_path);
		if (*census)
			return cmd_census(opt, config_path);
		if (*homo)
			return cmd_homophily(opt, config_path);
		if (*presets)
			return cmd_presets(opt);
	} catch (const SchemaError& e) {
		return report("schema", e.what(), e.issues());
	} catch (const UsageError& e) {
		return report("usage", e.what());
	} catch (const IoError& e) {
		return report("io", e.what());
	} catch (const fs::filesystem_error& e) {
		return report("io", e.what());
	} catch (const UnsupportedModel& e) {
		return report("unsupported-model", e.what());
	} catch (const DomainError& e) {
		return report("domain", e.what());
	} catch (const std::exception& e) {
		return report("internal", e.what());
	}
	return report("usage", "no subcommand");
}

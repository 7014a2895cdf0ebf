#pragma once

#include "cogcon/config.hpp"
#include "cogcon/contagion.hpp"
#include "cogcon/graph.hpp"
#include "cogcon/paths.hpp"
#include "cogcon/pod.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cogcon {

/// Root seed used by suites unless overridden.
inline constexpr std::uint64_t kDefaultSuiteSeed = 1;

/// Dominant-level fraction that counts as converged.
inline constexpr double kConvergenceThreshold = 0.99;

class IoError : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

/// Writes to a sibling temp file and renames it over `path`.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content)
{
	if (path.has_parent_path())
		std::filesystem::create_directories(path.parent_path());
	auto tmp = path;
	tmp += ".tmp";
	{
		std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
		if (!out)
			throw IoError("cannot write " + tmp.string());
		out << content;
		if (!out.flush())
			throw IoError("write failed for " + tmp.string());
	}
	std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw IoError("cannot read " + path.string());
	return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline Json read_json_file(const std::filesystem::path& path)
{
	const std::string text = read_file(path);
	try {
		return Json::parse(text);
	} catch (const Json::parse_error& e) {
		throw SchemaError({path.string() + ": " + e.what()});
	}
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

/// tick, level_0_mean..level_6_mean, level_0_var..level_6_var; six decimals.
inline std::string trace_csv(const BatchResult& batch)
{
	std::string out = "tick";
	for (int b = 0; b < kBeliefLevels; ++b)
		out += ",level_" + std::to_string(b) + "_mean";
	for (int b = 0; b < kBeliefLevels; ++b)
		out += ",level_" + std::to_string(b) + "_var";
	out += '\n';
	char buf[32];
	for (std::size_t t = 0; t < batch.mean.size(); ++t) {
		out += std::to_string(t);
		for (double x : batch.mean[t]) {
			std::snprintf(buf, sizeof buf, ",%.6f", x);
			out += buf;
		}
		for (double x : batch.variance[t]) {
			std::snprintf(buf, sizeof buf, ",%.6f", x);
			out += buf;
		}
		out += '\n';
	}
	return out;
}

inline std::string census_csv_header() { return "graph_type,tau,b_u,proportion\n"; }

inline std::string census_csv_rows(const PathCensusRow& row)
{
	std::string out;
	char buf[96];
	for (int b = 0; b < kBeliefLevels; ++b) {
		std::snprintf(buf, sizeof buf, "%s,%d,%d,%.6f\n", row.graph_type.c_str(), row.tau, b, row.proportions[b]);
		out += buf;
	}
	return out;
}

// ---------------------------------------------------------------------------
// Summaries
// ---------------------------------------------------------------------------

struct SummaryStats
{
	Histogram final_mean{};
	Histogram final_variance{};
	std::optional<std::size_t> convergence_tick; ///< first tick whose dominant mean fraction >= threshold
	int dominant_level = 0;                     ///< at the final tick
	double believed_per_run = 0.0;
};

inline SummaryStats summarize(const BatchResult& batch, double threshold = kConvergenceThreshold)
{
	SummaryStats s;
	s.final_mean = batch.mean.back();
	s.final_variance = batch.variance.back();
	s.dominant_level = static_cast<int>(std::max_element(s.final_mean.begin(), s.final_mean.end()) - s.final_mean.begin());
	for (std::size_t t = 0; t < batch.mean.size(); ++t) {
		if (*std::max_element(batch.mean[t].begin(), batch.mean[t].end()) >= threshold) {
			s.convergence_tick = t;
			break;
		}
	}
	double believed = 0.0;
	for (const auto& r : batch.runs)
		believed += static_cast<double>(r.believed);
	s.believed_per_run = batch.runs.empty() ? 0.0 : believed / static_cast<double>(batch.runs.size());
	return s;
}

inline Json to_json(const SummaryStats& s)
{
	Json doc = {{"final_mean", s.final_mean},
	            {"final_variance", s.final_variance},
	            {"dominant_level", s.dominant_level},
	            {"convergence_threshold", kConvergenceThreshold},
	            {"believed_per_run", s.believed_per_run}};
	doc["convergence_tick"] = s.convergence_tick ? Json(*s.convergence_tick) : Json(nullptr);
	return doc;
}

struct RunArtifacts
{
	std::filesystem::path trace;
	std::filesystem::path summary;
	SummaryStats stats;
};

/// Runs a batch and writes `<name>_trace.csv` and `<name>_summary.json` under `out_dir`.
inline RunArtifacts run_condition(const RunConfig& config, const std::string& name,
                                  const std::filesystem::path& out_dir, std::size_t workers)
{
	const BatchResult batch = run_batch(config, workers);
	RunArtifacts a{out_dir / (name + "_trace.csv"), out_dir / (name + "_summary.json"), summarize(batch)};
	write_file_atomic(a.trace, trace_csv(batch));
	Json summary = {{"name", name}, {"config", to_json(config, name)}, {"summary", to_json(a.stats)}};
	write_file_atomic(a.summary, summary.dump(2) + "\n");
	return a;
}

// ---------------------------------------------------------------------------
// Standard presets
// ---------------------------------------------------------------------------

struct Preset
{
	std::string name;
	RunConfig config;
};

inline std::vector<std::pair<std::string, Topology>> standard_topologies()
{
	return {{"er", ErdosRenyi{500, 0.05}},
	        {"ws", WattsStrogatz{500, 5, 0.5}},
	        {"ba", BarabasiAlbert{500, 3}},
	        {"mag", MultiplicativeAttribute{500, mag_affinity()}}};
}

inline std::vector<std::pair<std::string, MessageSchedule>> standard_schedules()
{
	return {{"single", SingleSchedule{BeliefStrength(6)}},
	        {"split", SplitSchedule{BeliefStrength(6), BeliefStrength(0), 50}},
	        {"gradual", GradualSchedule{BeliefStrength(6), BeliefStrength(0), 10}}};
}

/// 4 topologies x {simple, complex, dcc} x 3 schedules, named "<topology>-<model>-<schedule>".
inline std::vector<Preset> figure_presets(std::uint64_t seed = kDefaultSuiteSeed)
{
	const std::pair<std::string, ContagionModel> models[] = {
	    {"simple", Simple{0.15}}, {"complex", Complex{0.35}}, {"dcc", dcc()}};
	std::vector<Preset> out;
	for (const auto& [tname, topology] : standard_topologies())
		for (const auto& [mname, model] : models)
			for (const auto& [sname, schedule] : standard_schedules()) {
				RunConfig c;
				c.topology = topology;
				c.model = model;
				c.schedule = schedule;
				c.ticks = 100;
				c.repetitions = 10;
				c.seed = seed;
				out.push_back({tname + "-" + mname + "-" + sname, c});
			}
	return out;
}

/// Split schedule on ER{250, 0.05} for each beta family and disposition, named "beta-<family>-<disposition>".
inline std::vector<Preset> beta_selection_presets(std::uint64_t seed = kDefaultSuiteSeed)
{
	std::vector<Preset> out;
	for (auto d : {Disposition::gullible, Disposition::normal, Disposition::stubborn}) {
		const std::pair<std::string, ContagionModel> families[] = {
		    {"linear", linear_preset(d)}, {"threshold", threshold_preset(d)}, {"sigmoid", sigmoid_preset(d)}};
		for (const auto& [fname, model] : families) {
			RunConfig c;
			c.topology = ErdosRenyi{250, 0.05};
			c.model = model;
			c.schedule = SplitSchedule{BeliefStrength(6), BeliefStrength(0), 50};
			c.ticks = 100;
			c.repetitions = 10;
			c.seed = seed;
			out.push_back({"beta-" + fname + "-" + disposition_name(d), c});
		}
	}
	return out;
}

inline std::vector<Preset> all_presets(std::uint64_t seed = kDefaultSuiteSeed)
{
	auto out = figure_presets(seed);
	for (auto& p : beta_selection_presets(seed))
		out.push_back(std::move(p));
	return out;
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

struct SuiteOptions
{
	std::filesystem::path out_dir = "out";
	std::uint64_t seed = kDefaultSuiteSeed;
	std::size_t workers = 1;
	std::size_t census_trials = 100;
	std::size_t homophily_seeds = 10;
};

inline const std::vector<std::string>& suite_names()
{
	static const std::vector<std::string> names{"figures", "beta-selection", "table1", "table2", "homophily"};
	return names;
}

struct HomophilySample
{
	std::string graph_type;
	std::uint64_t seed = 0;
	std::size_t edges = 0;
	double per_edge = 0.0;
	double eq11 = 0.0;
};

inline std::vector<HomophilySample> homophily_samples(const Topology& topology, std::size_t seeds,
                                                      std::uint64_t root_seed)
{
	std::vector<HomophilySample> out;
	for (std::size_t i = 0; i < seeds; ++i) {
		const std::uint64_t seed = root_seed + i;
		const SocialGraph g = generate(GraphSpec{topology, seed});
		out.push_back({topology_name(topology), seed, g.edge_count(), homophily(g, HomophilyNorm::per_edge),
		               homophily(g, HomophilyNorm::eq11)});
	}
	return out;
}

inline std::string homophily_csv(const std::vector<HomophilySample>& samples)
{
	std::string out = "graph_type,seed,edges,per_edge,eq11\n";
	char buf[128];
	for (const auto& s : samples) {
		std::snprintf(buf, sizeof buf, "%s,%llu,%zu,%.6f,%.6f\n", s.graph_type.c_str(),
		              static_cast<unsigned long long>(s.seed), s.edges, s.per_edge, s.eq11);
		out += buf;
	}
	return out;
}

/// Runs a named suite; returns the files written.
inline std::vector<std::filesystem::path> run_suite(const std::string& name, const SuiteOptions& opt)
{
	std::vector<std::filesystem::path> written;
	const auto dir = opt.out_dir / name;

	if (name == "figures" || name == "beta-selection") {
		const auto presets = name == "figures" ? figure_presets(opt.seed) : beta_selection_presets(opt.seed);
		std::string index = "condition,dominant_level,convergence_tick,believed_per_run";
		for (int b = 0; b < kBeliefLevels; ++b)
			index += ",final_level_" + std::to_string(b) + "_mean";
		index += '\n';
		char buf[64];
		for (const auto& p : presets) {
			const auto a = run_condition(p.config, p.name, dir, opt.workers);
			written.push_back(a.trace);
			written.push_back(a.summary);
			index += p.name + "," + std::to_string(a.stats.dominant_level) + "," +
			         (a.stats.convergence_tick ? std::to_string(*a.stats.convergence_tick) : std::string());
			std::snprintf(buf, sizeof buf, ",%.1f", a.stats.believed_per_run);
			index += buf;
			for (double x : a.stats.final_mean) {
				std::snprintf(buf, sizeof buf, ",%.6f", x);
				index += buf;
			}
			index += '\n';
		}
		write_file_atomic(dir / "index.csv", index);
		written.push_back(dir / "index.csv");
	} else if (name == "table1") {
		write_file_atomic(dir / "table1.csv", beta_table_csv(beta_table(dcc())));
		written.push_back(dir / "table1.csv");
	} else if (name == "table2") {
		std::string csv = census_csv_header();
		for (int tau : {1, 2})
			for (const auto& [tname, topology] : standard_topologies()) {
				CensusConfig c;
				c.topology = topology;
				c.tau = tau;
				c.trials = opt.census_trials;
				c.seed = opt.seed;
				csv += census_csv_rows(path_census(c, opt.workers));
			}
		write_file_atomic(dir / "table2.csv", csv);
		written.push_back(dir / "table2.csv");
	} else if (name == "homophily") {
		std::vector<HomophilySample> samples;
		std::string summary = "graph_type,seeds,mean_per_edge,mean_eq11\n";
		for (const Topology& t : {Topology(ErdosRenyi{500, 0.05}), Topology(MultiplicativeAttribute{})}) {
			const auto s = homophily_samples(t, opt.homophily_seeds, opt.seed);
			double pe = 0.0, eq = 0.0;
			for (const auto& x : s) {
				pe += x.per_edge;
				eq += x.eq11;
			}
			char buf[96];
			std::snprintf(buf, sizeof buf, "%s,%zu,%.6f,%.6f\n", topology_name(t), s.size(), pe / s.size(),
			              eq / s.size());
			summary += buf;
			samples.insert(samples.end(), s.begin(), s.end());
		}
		write_file_atomic(dir / "homophily.csv", homophily_csv(samples));
		write_file_atomic(dir / "homophily_summary.csv", summary);
		written.push_back(dir / "homophily.csv");
		written.push_back(dir / "homophily_summary.csv");
	} else {
		throw std::invalid_argument("unknown suite '" + name + "'");
	}
	return written;
}

} // namespace cogcon

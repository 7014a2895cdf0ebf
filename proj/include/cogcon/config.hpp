#pragma once

#include "cogcon/contagion.hpp"
#include "cogcon/graph.hpp"
#include "cogcon/paths.hpp"
#include "cogcon/pod.hpp"

#include <json.hpp>

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cogcon {

using Json = nlohmann::json;

/// A config document failed validation. `issues()` holds one "field: problem" entry per offence.
class SchemaError : public std::runtime_error
{
public:
	explicit SchemaError(std::vector<std::string> issues)
	    : std::runtime_error(join(issues)), issues_(std::move(issues))
	{
	}
	const std::vector<std::string>& issues() const noexcept { return issues_; }

private:
	static std::string join(const std::vector<std::string>& issues)
	{
		std::string out = "invalid config";
		for (const auto& i : issues)
			out += "; " + i;
		return out;
	}
	std::vector<std::string> issues_;
};

namespace detail {

/// Collects every problem in a document before failing.
class Reader
{
public:
	void fail(const std::string& field, const std::string& problem) { issues_.push_back(field + ": " + problem); }
	bool ok() const noexcept { return issues_.empty(); }
	std::size_t issue_count() const noexcept { return issues_.size(); }
	void throw_if_failed() const
	{
		if (!issues_.empty())
			throw SchemaError(issues_);
	}

	const Json* object(const Json& parent, const std::string& key, const std::string& path, bool required = true)
	{
		if (!parent.contains(key)) {
			if (required)
				fail(path, "missing");
			return nullptr;
		}
		const Json& v = parent.at(key);
		if (!v.is_object()) {
			fail(path, "must be an object");
			return nullptr;
		}
		return &v;
	}

	void allow_only(const Json& obj, const std::string& path, std::initializer_list<const char*> keys)
	{
		const std::set<std::string> allowed(keys.begin(), keys.end());
		for (const auto& [k, v] : obj.items())
			if (!allowed.count(k))
				fail(path.empty() ? k : path + "." + k, "unknown field");
	}

	double number(const Json& obj, const std::string& key, const std::string& path, std::optional<double> fallback,
	              double lo, double hi, bool lo_open = false, bool hi_open = false)
	{
		if (!obj.contains(key)) {
			if (!fallback)
				fail(path, "missing");
			return fallback.value_or(lo);
		}
		const Json& v = obj.at(key);
		if (!v.is_number()) {
			fail(path, "must be a number");
			return fallback.value_or(lo);
		}
		const double x = v.get<double>();
		const bool below = lo_open ? !(x > lo) : !(x >= lo);
		const bool above = hi_open ? !(x < hi) : !(x <= hi);
		if (below || above) {
			fail(path, "out of range " + interval(lo, hi, lo_open, hi_open));
			return fallback.value_or(lo);
		}
		return x;
	}

	std::int64_t integer(const Json& obj, const std::string& key, const std::string& path,
	                     std::optional<std::int64_t> fallback, std::int64_t lo, std::int64_t hi)
	{
		if (!obj.contains(key)) {
			if (!fallback)
				fail(path, "missing");
			return fallback.value_or(lo);
		}
		const Json& v = obj.at(key);
		if (!v.is_number_integer()) {
			fail(path, "must be an integer");
			return fallback.value_or(lo);
		}
		const auto x = v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(hi)
		                   ? hi + 1 // force the range error below
		                   : v.get<std::int64_t>();
		if (x < lo || x > hi) {
			fail(path, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
			return fallback.value_or(lo);
		}
		return x;
	}

	std::uint64_t seed(const Json& obj, const std::string& key, const std::string& path, std::uint64_t fallback)
	{
		if (!obj.contains(key))
			return fallback;
		const Json& v = obj.at(key);
		if (v.is_number_unsigned())
			return v.get<std::uint64_t>();
		if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
			return static_cast<std::uint64_t>(v.get<std::int64_t>());
		fail(path, "must be a non-negative integer");
		return fallback;
	}

	BeliefStrength belief(const Json& obj, const std::string& key, const std::string& path,
	                      std::optional<int> fallback)
	{
		return BeliefStrength(static_cast<int>(integer(obj, key, path, fallback, 0, kMaxBelief)));
	}

	std::string text(const Json& obj, const std::string& key, const std::string& path,
	                 std::optional<std::string> fallback = std::nullopt)
	{
		if (!obj.contains(key)) {
			if (!fallback)
				fail(path, "missing");
			return fallback.value_or("");
		}
		if (!obj.at(key).is_string()) {
			fail(path, "must be a string");
			return fallback.value_or("");
		}
		return obj.at(key).get<std::string>();
	}

private:
	static std::string interval(double lo, double hi, bool lo_open, bool hi_open)
	{
		const auto fmt = [](double x) {
			char buf[32];
			std::snprintf(buf, sizeof buf, "%g", x);
			return std::string(buf);
		};
		return std::string(lo_open ? "(" : "[") + fmt(lo) + ", " + fmt(hi) + (hi_open ? ")" : "]");
	}

	std::vector<std::string> issues_;
};

inline constexpr double kHuge = std::numeric_limits<double>::max();
inline constexpr std::int64_t kMaxNodes = 10'000'000;
inline constexpr std::int64_t kMaxTicks = 1'000'000;

inline std::optional<Disposition> disposition_from(const std::string& s)
{
	if (s == "gullible")
		return Disposition::gullible;
	if (s == "normal")
		return Disposition::normal;
	if (s == "stubborn")
		return Disposition::stubborn;
	return std::nullopt;
}

inline Topology read_topology(Reader& r, const Json& g, const std::string& path)
{
	const std::string type = r.text(g, "type", path + ".type");
	const auto n = static_cast<std::size_t>(r.integer(g, "n", path + ".n", 500, 1, kMaxNodes));
	if (type == "er") {
		r.allow_only(g, path, {"type", "n", "rho"});
		return ErdosRenyi{n, r.number(g, "rho", path + ".rho", 0.05, 0.0, 1.0)};
	}
	if (type == "ws") {
		r.allow_only(g, path, {"type", "n", "k", "rho"});
		const auto k = static_cast<std::size_t>(r.integer(g, "k", path + ".k", 5, 1, kMaxNodes));
		if (n <= 2 * k)
			r.fail(path + ".k", "requires n > 2k");
		return WattsStrogatz{n, k, r.number(g, "rho", path + ".rho", 0.5, 0.0, 1.0)};
	}
	if (type == "ba") {
		r.allow_only(g, path, {"type", "n", "m"});
		const auto m = static_cast<std::size_t>(r.integer(g, "m", path + ".m", 3, 1, kMaxNodes));
		if (n <= m)
			r.fail(path + ".m", "requires n > m");
		return BarabasiAlbert{n, m};
	}
	if (type == "mag") {
		r.allow_only(g, path, {"type", "n", "theta"});
		MultiplicativeAttribute mag{n, mag_affinity()};
		if (g.contains("theta") && !(g.at("theta").is_string() && g.at("theta") == "default")) {
			const Json& t = g.at("theta");
			AffinityMatrix::Rows rows{};
			bool shape_ok = t.is_array() && t.size() == kBeliefLevels;
			for (std::size_t i = 0; shape_ok && i < kBeliefLevels; ++i) {
				shape_ok = t[i].is_array() && t[i].size() == kBeliefLevels;
				for (std::size_t j = 0; shape_ok && j < kBeliefLevels; ++j) {
					shape_ok = t[i][j].is_number();
					if (shape_ok)
						rows[i][j] = t[i][j].get<double>();
				}
			}
			if (!shape_ok) {
				r.fail(path + ".theta", "must be \"default\" or a 7x7 array of numbers");
			} else {
				try {
					mag.theta = AffinityMatrix(rows);
				} catch (const DomainError& e) {
					r.fail(path + ".theta", e.what());
				}
			}
		}
		return mag;
	}
	r.fail(path + ".type", "must be one of er, ws, ba, mag");
	return ErdosRenyi{};
}

inline ContagionModel read_model(Reader& r, const Json& m, const std::string& path)
{
	const std::string type = r.text(m, "type", path + ".type");
	std::optional<Disposition> preset;
	if (m.contains("preset")) {
		preset = disposition_from(r.text(m, "preset", path + ".preset"));
		if (!preset)
			r.fail(path + ".preset", "must be gullible, normal or stubborn");
	}
	if (type == "simple") {
		r.allow_only(m, path, {"type", "p"});
		return Simple{r.number(m, "p", path + ".p", 0.15, 0.0, 1.0, true, true)};
	}
	if (type == "complex") {
		r.allow_only(m, path, {"type", "alpha"});
		return Complex{r.number(m, "alpha", path + ".alpha", 0.35, 0.0, 1.0)};
	}
	if (type == "dcc") {
		r.allow_only(m, path, {"type"});
		return dcc();
	}
	const auto d = preset.value_or(Disposition::stubborn);
	const bool need = !preset.has_value();
	if (type == "threshold") {
		r.allow_only(m, path, {"type", "preset", "gamma"});
		const auto base = threshold_preset(d);
		return CognitiveThreshold{static_cast<int>(
		    r.integer(m, "gamma", path + ".gamma", need ? std::nullopt : std::optional<std::int64_t>(base.gamma), 0,
		              kMaxBelief * 1000))};
	}
	if (type == "linear") {
		r.allow_only(m, path, {"type", "preset", "gamma", "alpha"});
		const auto base = linear_preset(d);
		const auto before = r.issue_count();
		CognitiveLinear lin{r.number(m, "gamma", path + ".gamma", need ? std::nullopt : std::optional(base.gamma), 0.0,
		                             kHuge),
		                    r.number(m, "alpha", path + ".alpha", need ? std::nullopt : std::optional(base.alpha), 0.0,
		                             kHuge)};
		if (r.issue_count() == before && lin.gamma == 0.0 && lin.alpha == 0.0)
			r.fail(path, "gamma and alpha cannot both be zero");
		return lin;
	}
	if (type == "sigmoid") {
		r.allow_only(m, path, {"type", "preset", "alpha", "gamma"});
		const auto base = sigmoid_preset(d);
		return CognitiveSigmoid{
		    r.number(m, "alpha", path + ".alpha", need ? std::nullopt : std::optional(base.alpha), 0.0, kHuge),
		    r.number(m, "gamma", path + ".gamma", need ? std::nullopt : std::optional(base.gamma), -kHuge, kHuge)};
	}
	r.fail(path + ".type", "must be one of simple, complex, threshold, linear, sigmoid, dcc");
	return dcc();
}

inline MessageSchedule read_schedule(Reader& r, const Json& s, const std::string& path)
{
	const std::string type = r.text(s, "type", path + ".type");
	if (type == "single") {
		r.allow_only(s, path, {"type", "level"});
		return SingleSchedule{r.belief(s, "level", path + ".level", 6)};
	}
	if (type == "split") {
		r.allow_only(s, path, {"type", "first", "second", "switch_tick"});
		return SplitSchedule{r.belief(s, "first", path + ".first", 6), r.belief(s, "second", path + ".second", 0),
		                     static_cast<std::size_t>(r.integer(s, "switch_tick", path + ".switch_tick", 50, 0,
		                                                        kMaxTicks))};
	}
	if (type == "gradual") {
		r.allow_only(s, path, {"type", "start", "end", "interval"});
		return GradualSchedule{r.belief(s, "start", path + ".start", 6), r.belief(s, "end", path + ".end", 0),
		                       static_cast<std::size_t>(r.integer(s, "interval", path + ".interval", 10, 1, kMaxTicks))};
	}
	if (type == "explicit") {
		r.allow_only(s, path, {"type", "ticks"});
		ExplicitSchedule out;
		const Json* ticks = r.object(s, "ticks", path + ".ticks");
		if (!ticks)
			return out;
		for (const auto& [key, levels] : ticks->items()) {
			const std::string field = path + ".ticks." + key;
			std::size_t t = 0;
			try {
				std::size_t used = 0;
				t = std::stoul(key, &used);
				if (used != key.size() || t < 1)
					throw std::invalid_argument(key);
			} catch (const std::exception&) {
				r.fail(field, "tick keys must be positive integers");
				continue;
			}
			if (!levels.is_array()) {
				r.fail(field, "must be an array of belief levels");
				continue;
			}
			std::vector<BeliefStrength> list;
			for (const auto& l : levels) {
				if (!l.is_number_integer() || !BeliefStrength::valid(l.get<int>())) {
					r.fail(field, "levels must be integers in [0, 6]");
					continue;
				}
				list.emplace_back(l.get<int>());
			}
			out.ticks[t] = std::move(list);
		}
		return out;
	}
	r.fail(path + ".type", "must be one of single, split, gradual, explicit");
	return SingleSchedule{};
}

} // namespace detail

/// Parses and validates a run config document; throws SchemaError listing every bad field.
inline RunConfig parse_run_config(const Json& doc)
{
	detail::Reader r;
	RunConfig c;
	if (!doc.is_object())
		throw SchemaError({"<root>: must be an object"});
	r.allow_only(doc, "", {"version", "name", "graph", "model", "schedule", "T", "institution_belief", "epsilon",
	                       "repetitions", "seed", "exposure"});
	if (doc.contains("version") && r.integer(doc, "version", "version", 1, 1, 1) != 1)
		r.fail("version", "unsupported");
	if (const Json* g = r.object(doc, "graph", "graph"))
		c.topology = detail::read_topology(r, *g, "graph");
	if (const Json* m = r.object(doc, "model", "model"))
		c.model = detail::read_model(r, *m, "model");
	if (const Json* s = r.object(doc, "schedule", "schedule"))
		c.schedule = detail::read_schedule(r, *s, "schedule");
	c.ticks = static_cast<std::size_t>(r.integer(doc, "T", "T", 100, 1, detail::kMaxTicks));
	c.institution_belief = r.belief(doc, "institution_belief", "institution_belief", kMaxBelief);
	c.epsilon = static_cast<int>(r.integer(doc, "epsilon", "epsilon", 0, 0, kMaxBelief));
	c.repetitions = static_cast<std::size_t>(r.integer(doc, "repetitions", "repetitions", 10, 1, 1'000'000));
	c.seed = r.seed(doc, "seed", "seed", 0);
	const std::string exposure = r.text(doc, "exposure", "exposure", "per_message");
	if (exposure == "per_copy")
		c.exposure = ExposurePolicy::per_copy;
	else if (exposure != "per_message")
		r.fail("exposure", "must be per_message or per_copy");
	if (const auto* e = std::get_if<ExplicitSchedule>(&c.schedule))
		if (!e->ticks.empty() && e->ticks.rbegin()->first > c.ticks)
			r.fail("schedule.ticks", "tick beyond T");
	r.throw_if_failed();
	return c;
}

inline GraphSpec parse_graph_spec(const Json& doc)
{
	detail::Reader r;
	if (!doc.is_object())
		throw SchemaError({"<root>: must be an object"});
	r.allow_only(doc, "", {"version", "graph", "seed"});
	GraphSpec spec;
	if (const Json* g = r.object(doc, "graph", "graph"))
		spec.topology = detail::read_topology(r, *g, "graph");
	spec.seed = r.seed(doc, "seed", "seed", 0);
	r.throw_if_failed();
	return spec;
}

inline ContagionModel parse_model_config(const Json& doc)
{
	detail::Reader r;
	if (!doc.is_object())
		throw SchemaError({"<root>: must be an object"});
	r.allow_only(doc, "", {"version", "model"});
	ContagionModel model = dcc();
	if (const Json* m = r.object(doc, "model", "model"))
		model = detail::read_model(r, *m, "model");
	r.throw_if_failed();
	return model;
}

inline CensusConfig parse_census_config(const Json& doc)
{
	detail::Reader r;
	if (!doc.is_object())
		throw SchemaError({"<root>: must be an object"});
	r.allow_only(doc, "", {"version", "graph", "tau", "msg_level", "institution_belief", "epsilon", "trials", "seed"});
	CensusConfig c;
	if (const Json* g = r.object(doc, "graph", "graph"))
		c.topology = detail::read_topology(r, *g, "graph");
	c.tau = static_cast<int>(r.integer(doc, "tau", "tau", 1, 0, kMaxBelief));
	c.msg_level = r.belief(doc, "msg_level", "msg_level", kMaxBelief);
	c.institution_belief = r.belief(doc, "institution_belief", "institution_belief", kMaxBelief);
	c.epsilon = static_cast<int>(r.integer(doc, "epsilon", "epsilon", 0, 0, kMaxBelief));
	c.trials = static_cast<std::size_t>(r.integer(doc, "trials", "trials", 100, 1, 1'000'000));
	c.seed = r.seed(doc, "seed", "seed", 0);
	r.throw_if_failed();
	return c;
}

struct HomophilyConfig
{
	Topology topology = ErdosRenyi{};
	std::size_t seeds = 10;
	std::uint64_t seed = 0;
};

inline HomophilyConfig parse_homophily_config(const Json& doc)
{
	detail::Reader r;
	if (!doc.is_object())
		throw SchemaError({"<root>: must be an object"});
	r.allow_only(doc, "", {"version", "graph", "seeds", "seed"});
	HomophilyConfig c;
	if (const Json* g = r.object(doc, "graph", "graph"))
		c.topology = detail::read_topology(r, *g, "graph");
	c.seeds = static_cast<std::size_t>(r.integer(doc, "seeds", "seeds", 10, 1, 1'000'000));
	c.seed = r.seed(doc, "seed", "seed", 0);
	r.throw_if_failed();
	return c;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline Json to_json(const Topology& topology)
{
	return std::visit(
		[](const auto& t) -> Json {
			using T = std::decay_t<decltype(t)>;
			if constexpr (std::is_same_v<T, ErdosRenyi>)
				return {{"type", "er"}, {"n", t.n}, {"rho", t.rho}};
			else if constexpr (std::is_same_v<T, WattsStrogatz>)
				return {{"type", "ws"}, {"n", t.n}, {"k", t.k}, {"rho", t.rho}};
			else if constexpr (std::is_same_v<T, BarabasiAlbert>)
				return {{"type", "ba"}, {"n", t.n}, {"m", t.m}};
			else if (t.theta == mag_affinity())
				return {{"type", "mag"}, {"n", t.n}, {"theta", "default"}};
			else
				return {{"type", "mag"}, {"n", t.n}, {"theta", t.theta.rows()}};
		},
		topology);
}

inline Json to_json(const ContagionModel& model)
{
	return std::visit(
		[](const auto& m) -> Json {
			using M = std::decay_t<decltype(m)>;
			if constexpr (std::is_same_v<M, Simple>)
				return {{"type", "simple"}, {"p", m.p}};
			else if constexpr (std::is_same_v<M, Complex>)
				return {{"type", "complex"}, {"alpha", m.alpha}};
			else if constexpr (std::is_same_v<M, CognitiveThreshold>)
				return {{"type", "threshold"}, {"gamma", m.gamma}};
			else if constexpr (std::is_same_v<M, CognitiveLinear>)
				return {{"type", "linear"}, {"gamma", m.gamma}, {"alpha", m.alpha}};
			else
				return {{"type", "sigmoid"}, {"alpha", m.alpha}, {"gamma", m.gamma}};
		},
		model);
}

inline Json to_json(const MessageSchedule& schedule)
{
	return std::visit(
		[](const auto& s) -> Json {
			using S = std::decay_t<decltype(s)>;
			if constexpr (std::is_same_v<S, SingleSchedule>) {
				return {{"type", "single"}, {"level", s.level.value()}};
			} else if constexpr (std::is_same_v<S, SplitSchedule>) {
				return {{"type", "split"},
				        {"first", s.first.value()},
				        {"second", s.second.value()},
				        {"switch_tick", s.switch_tick}};
			} else if constexpr (std::is_same_v<S, GradualSchedule>) {
				return {{"type", "gradual"}, {"start", s.start.value()}, {"end", s.end.value()}, {"interval", s.interval}};
			} else {
				Json ticks = Json::object();
				for (const auto& [t, levels] : s.ticks) {
					Json arr = Json::array();
					for (auto l : levels)
						arr.push_back(l.value());
					ticks[std::to_string(t)] = arr;
				}
				return {{"type", "explicit"}, {"ticks", ticks}};
			}
		},
		schedule);
}

inline Json to_json(const RunConfig& c, const std::string& name = {})
{
	Json doc = {{"version", 1},
	            {"graph", to_json(c.topology)},
	            {"model", to_json(c.model)},
	            {"schedule", to_json(c.schedule)},
	            {"T", c.ticks},
	            {"institution_belief", c.institution_belief.value()},
	            {"epsilon", c.epsilon},
	            {"repetitions", c.repetitions},
	            {"seed", c.seed},
	            {"exposure", c.exposure == ExposurePolicy::per_copy ? "per_copy" : "per_message"}};
	if (!name.empty())
		doc["name"] = name;
	return doc;
}

} // namespace cogcon

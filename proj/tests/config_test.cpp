#include "cogcon/config.hpp"

#include <gtest/gtest.h>

using namespace cogcon;

namespace {

Json valid_doc()
{
	return Json::parse(R"({
		"version": 1,
		"graph": {"type": "ws", "n": 300, "k": 4, "rho": 0.25},
		"model": {"type": "sigmoid", "preset": "normal"},
		"schedule": {"type": "gradual", "start": 6, "end": 1, "interval": 5},
		"T": 40,
		"institution_belief": 5,
		"epsilon": 1,
		"repetitions": 3,
		"seed": 12,
		"exposure": "per_copy"
	})");
}

std::vector<std::string> issues_of(const Json& doc)
{
	try {
		parse_run_config(doc);
	} catch (const SchemaError& e) {
		return e.issues();
	}
	return {};
}

/// Replaces whole top-level members, unlike merge_patch.
Json patched(Json doc, const char* patch)
{
	const Json changes = Json::parse(patch);
	for (const auto& [k, v] : changes.items())
		doc[k] = v;
	return doc;
}

bool mentions(const std::vector<std::string>& issues, const std::string& field)
{
	return std::any_of(issues.begin(), issues.end(), [&](const std::string& s) { return s.rfind(field + ":", 0) == 0; });
}

} // namespace

TEST(RunConfigSchema, ParsesEveryField)
{
	const auto c = parse_run_config(valid_doc());
	EXPECT_EQ(std::get<WattsStrogatz>(c.topology), (WattsStrogatz{300, 4, 0.25}));
	EXPECT_EQ(std::get<CognitiveSigmoid>(c.model), sigmoid_preset(Disposition::normal));
	const auto& g = std::get<GradualSchedule>(c.schedule);
	EXPECT_EQ(g.start.value(), 6);
	EXPECT_EQ(g.end.value(), 1);
	EXPECT_EQ(g.interval, 5u);
	EXPECT_EQ(c.ticks, 40u);
	EXPECT_EQ(c.institution_belief.value(), 5);
	EXPECT_EQ(c.epsilon, 1);
	EXPECT_EQ(c.repetitions, 3u);
	EXPECT_EQ(c.seed, 12u);
	EXPECT_EQ(c.exposure, ExposurePolicy::per_copy);
}

TEST(RunConfigSchema, Defaults)
{
	const auto c = parse_run_config(Json::parse(R"({"graph": {"type": "er"}, "model": {"type": "dcc"},
		"schedule": {"type": "single"}})"));
	EXPECT_EQ(std::get<ErdosRenyi>(c.topology), (ErdosRenyi{500, 0.05}));
	EXPECT_EQ(std::get<CognitiveSigmoid>(c.model), dcc());
	EXPECT_EQ(c.ticks, 100u);
	EXPECT_EQ(c.repetitions, 10u);
	EXPECT_EQ(c.exposure, ExposurePolicy::per_message);
}

TEST(RunConfigSchema, RejectsOutOfRangeRho)
{
	auto doc = valid_doc();
	doc["graph"] = {{"type", "er"}, {"n", 500}, {"rho", 1.5}};
	const auto issues = issues_of(doc);
	ASSERT_EQ(issues.size(), 1u);
	EXPECT_TRUE(mentions(issues, "graph.rho"));
}

TEST(RunConfigSchema, ReportsEveryBadField)
{
	auto doc = valid_doc();
	doc["T"] = 0;
	doc["epsilon"] = -2;
	doc["schedule"]["start"] = 9;
	doc["model"] = {{"type", "linear"}, {"gamma", 0}, {"alpha", 0}};
	doc["colour"] = "blue";
	const auto issues = issues_of(doc);
	for (const char* f : {"T", "epsilon", "schedule.start", "model", "colour"})
		EXPECT_TRUE(mentions(issues, f)) << f;
}

TEST(RunConfigSchema, RejectsUnknownNames)
{
	for (const char* patch : {R"({"graph": {"type": "grid"}})", R"({"model": {"type": "viral"}})",
	                          R"({"model": {"type": "threshold", "preset": "naive"}})",
	                          R"({"schedule": {"type": "weekly"}})", R"({"exposure": "twice"})",
	                          R"({"graph": {"type": "er", "k": 3}})", R"({"version": 2})", R"({"seed": -1})",
	                          R"({"seed": 1.5})", R"({"T": "100"})"})
		EXPECT_THROW(parse_run_config(patched(valid_doc(), patch)), SchemaError) << patch;
	EXPECT_THROW(parse_run_config(Json::array()), SchemaError);
	EXPECT_THROW(parse_run_config(Json::parse(R"({"model": {"type": "dcc"}})")), SchemaError);
}

TEST(RunConfigSchema, WsNeedsRoomForLattice)
{
	auto doc = valid_doc();
	doc["graph"] = {{"type", "ws"}, {"n", 10}, {"k", 5}};
	EXPECT_THROW(parse_run_config(doc), SchemaError);
	doc["graph"] = {{"type", "ba"}, {"n", 3}, {"m", 3}};
	EXPECT_THROW(parse_run_config(doc), SchemaError);
}

TEST(RunConfigSchema, MagTheta)
{
	auto doc = valid_doc();
	doc["graph"] = {{"type", "mag"}, {"n", 100}};
	EXPECT_EQ(std::get<MultiplicativeAttribute>(parse_run_config(doc).topology).theta, mag_affinity());
	Json theta = Json::array();
	for (int i = 0; i < 7; ++i) {
		Json row = Json::array();
		for (int j = 0; j < 7; ++j)
			row.push_back(i == j ? 0.5 : 0.0);
		theta.push_back(row);
	}
	doc["graph"]["theta"] = theta;
	EXPECT_EQ(std::get<MultiplicativeAttribute>(parse_run_config(doc).topology).theta(BeliefStrength(3), BeliefStrength(3)),
	          0.5);
	doc["graph"]["theta"][0][1] = 0.25;
	EXPECT_THROW(parse_run_config(doc), SchemaError);
	doc["graph"]["theta"] = Json::array({1, 2});
	EXPECT_THROW(parse_run_config(doc), SchemaError);
}

TEST(RunConfigSchema, ExplicitSchedule)
{
	auto doc = valid_doc();
	doc["schedule"] = Json::parse(R"({"type": "explicit", "ticks": {"1": [4, 3], "7": []}})");
	const auto s = std::get<ExplicitSchedule>(parse_run_config(doc).schedule);
	EXPECT_EQ(s.ticks.at(1), (std::vector{BeliefStrength(4), BeliefStrength(3)}));
	EXPECT_TRUE(s.ticks.at(7).empty());
	doc["schedule"]["ticks"] = Json::parse(R"({"x": [1]})");
	EXPECT_THROW(parse_run_config(doc), SchemaError);
	doc["schedule"]["ticks"] = Json::parse(R"({"2": [8]})");
	EXPECT_THROW(parse_run_config(doc), SchemaError);
}

TEST(RunConfigSchema, RoundTripsThroughJson)
{
	std::vector<Json> docs = {valid_doc()};
	for (const char* patch : {R"({"model": {"type": "simple", "p": 0.3}})", R"({"model": {"type": "complex"}})",
	                          R"({"model": {"type": "threshold", "gamma": 2}})",
	                          R"({"model": {"type": "linear", "preset": "stubborn"}})",
	                          R"({"graph": {"type": "ba", "n": 50, "m": 2}})", R"({"graph": {"type": "mag"}})",
	                          R"({"schedule": {"type": "split", "switch_tick": 20}})",
	                          R"({"schedule": {"type": "explicit", "ticks": {"3": [1, 2]}}})"})
		docs.push_back(patched(valid_doc(), patch));
	for (const auto& doc : docs) {
		const Json once = to_json(parse_run_config(doc));
		EXPECT_EQ(to_json(parse_run_config(once)), once) << doc.dump();
	}
}

TEST(OtherSchemas, GraphModelCensusHomophily)
{
	const auto spec = parse_graph_spec(Json::parse(R"({"graph": {"type": "ba", "n": 40, "m": 2}, "seed": 3})"));
	EXPECT_EQ(spec, (GraphSpec{BarabasiAlbert{40, 2}, 3}));
	EXPECT_THROW(parse_graph_spec(Json::parse(R"({"graph": {"type": "ba"}, "model": {}})")), SchemaError);

	EXPECT_EQ(std::get<CognitiveThreshold>(parse_model_config(Json::parse(R"({"model": {"type": "threshold", "preset": "normal"}})"))).gamma,
	          3);
	EXPECT_THROW(parse_model_config(Json::parse(R"({"model": {"type": "sigmoid"}})")), SchemaError);

	const auto census = parse_census_config(Json::parse(R"({"graph": {"type": "mag"}, "tau": 2, "trials": 7})"));
	EXPECT_EQ(census.tau, 2);
	EXPECT_EQ(census.trials, 7u);
	EXPECT_EQ(census.msg_level.value(), 6);
	EXPECT_THROW(parse_census_config(Json::parse(R"({"graph": {"type": "mag"}, "tau": -1})")), SchemaError);

	const auto h = parse_homophily_config(Json::parse(R"({"graph": {"type": "er"}, "seeds": 4, "seed": 100})"));
	EXPECT_EQ(h.seeds, 4u);
	EXPECT_EQ(h.seed, 100u);
}

#pragma once

#include "cogcon/contagion.hpp"
#include "cogcon/graph.hpp"
#include "cogcon/pod.hpp"
#include "cogcon/random.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <vector>

namespace cogcon {

/**
 * Route of a message from an institution through agents. The institution is
 * the implicit first hop; `nodes` lists the agents in order and `levels`
 * their beliefs when the path was taken.
 */
struct TransmissionPath
{
	InstitutionId origin = 0;
	std::vector<NodeId> nodes;
	std::vector<BeliefStrength> levels;

	friend bool operator==(const TransmissionPath&, const TransmissionPath&) = default;
};

inline TransmissionPath make_path(const SocialGraph& g, InstitutionId origin, std::vector<NodeId> nodes)
{
	TransmissionPath path{origin, std::move(nodes), {}};
	path.levels.reserve(path.nodes.size());
	for (NodeId v : path.nodes)
		path.levels.push_back(g.belief(v));
	return path;
}

/// Per-agent transmission probability; complex contagion has none.
inline Probability node_beta(const ContagionModel& model, BeliefStrength level, BeliefStrength msg_level)
{
	if (std::holds_alternative<Complex>(model))
		throw UnsupportedModel("path analysis is undefined for complex contagion (neighborhood-dependent)");
	return contagion_prob(model, level, msg_level, 0.0);
}

/// Probability that every agent on the path believes and forwards the message.
inline Probability path_probability(const TransmissionPath& path, BeliefStrength msg_level, const ContagionModel& model)
{
	Probability p = 1.0;
	for (BeliefStrength level : path.levels)
		p *= node_beta(model, level, msg_level);
	return p;
}

struct PathResult
{
	TransmissionPath path;
	Probability probability = 0.0;
};

inline constexpr NodeId kNoParent = std::numeric_limits<NodeId>::max();

/// Best-path tree from an institution: probability and predecessor per agent.
struct BestPathTree
{
	std::vector<Probability> probability; ///< 0 when unreachable
	std::vector<NodeId> parent;           ///< kNoParent for subscribers and unreachable agents

	std::vector<NodeId> path_to(NodeId v) const
	{
		std::vector<NodeId> nodes;
		for (NodeId u = v; u != kNoParent; u = parent[u])
			nodes.push_back(u);
		std::reverse(nodes.begin(), nodes.end());
		return nodes;
	}
};

/**
 * Dijkstra in the (max, *) semiring. Entering agent w multiplies the path
 * probability by beta(b_w, msg); the institution-to-subscriber hop itself
 * is certain. Agents flagged in `blocked` are never entered.
 */
inline BestPathTree best_path_tree(const SocialGraph& g, std::span<const NodeId> subscribers, BeliefStrength msg_level,
                                   const ContagionModel& model, const std::vector<bool>& blocked = {})
{
	const std::size_t n = g.node_count();
	const auto is_blocked = [&](NodeId v) { return !blocked.empty() && blocked[v]; };
	std::vector<Probability> beta(n);
	for (NodeId v = 0; v < n; ++v)
		beta[v] = node_beta(model, g.belief(v), msg_level);

	BestPathTree tree{std::vector<Probability>(n, 0.0), std::vector<NodeId>(n, kNoParent)};
	using Entry = std::pair<Probability, NodeId>;
	// highest probability first, then lowest id
	const auto worse = [](const Entry& a, const Entry& b) {
		return a.first != b.first ? a.first < b.first : a.second > b.second;
	};
	std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> frontier(worse);
	for (NodeId s : subscribers) {
		if (is_blocked(s) || beta[s] <= 0.0 || beta[s] <= tree.probability[s])
			continue;
		tree.probability[s] = beta[s];
		frontier.emplace(beta[s], s);
	}
	std::vector<bool> settled(n, false);
	while (!frontier.empty()) {
		const auto [p, u] = frontier.top();
		frontier.pop();
		if (settled[u] || p < tree.probability[u])
			continue;
		settled[u] = true;
		for (NodeId w : g.neighbors(u)) {
			if (settled[w] || is_blocked(w))
				continue;
			const Probability candidate = p * beta[w];
			if (candidate > tree.probability[w]) {
				tree.probability[w] = candidate;
				tree.parent[w] = u;
				frontier.emplace(candidate, w);
			}
		}
	}
	return tree;
}

/// Most probable path from the institution to `target`, or nullopt if every path has probability 0.
inline std::optional<PathResult> max_probability_path(const SocialGraph& g, const Institution& institution,
                                                      NodeId target, BeliefStrength msg_level,
                                                      const ContagionModel& model)
{
	const auto tree = best_path_tree(g, institution.subscribers, msg_level, model);
	if (tree.probability.at(target) <= 0.0)
		return std::nullopt;
	PathResult out{make_path(g, institution.id, tree.path_to(target)), 0.0};
	out.probability = path_probability(out.path, msg_level, model);
	return out;
}

/**
 * Neighbors of `target` whose best path from the institution (avoiding the
 * target) has probability at least 1 - delta.
 */
inline std::vector<NodeId> believing_neighbors(const SocialGraph& g, const Institution& institution, NodeId target,
                                               BeliefStrength msg_level, const ContagionModel& model, double delta)
{
	if (!(delta >= 0.0 && delta < 1.0))
		throw DomainError("believing_neighbors: delta must be in [0, 1)");
	std::vector<bool> blocked(g.node_count(), false);
	blocked.at(target) = true;
	const auto tree = best_path_tree(g, institution.subscribers, msg_level, model, blocked);
	std::vector<NodeId> out;
	for (NodeId v : g.neighbors(target))
		if (tree.probability[v] > 0.0 && tree.probability[v] >= 1.0 - delta)
			out.push_back(v);
	return out;
}

/**
 * Greedy approximation of a maximum-probability set of node-disjoint paths
 * from the institution to the neighbors of `target`: take the best path to
 * any neighbor, remove its agents, repeat until nothing positive remains.
 * Not optimal in general.
 */
inline std::vector<PathResult> disjoint_paths_greedy(const SocialGraph& g, const Institution& institution,
                                                     NodeId target, BeliefStrength msg_level,
                                                     const ContagionModel& model)
{
	std::vector<bool> blocked(g.node_count(), false);
	blocked.at(target) = true;
	std::vector<PathResult> out;
	for (;;) {
		const auto tree = best_path_tree(g, institution.subscribers, msg_level, model, blocked);
		NodeId best = kNoParent;
		for (NodeId v : g.neighbors(target))
			if (tree.probability[v] > 0.0 && (best == kNoParent || tree.probability[v] > tree.probability[best]))
				best = v;
		if (best == kNoParent)
			return out;
		PathResult r{make_path(g, institution.id, tree.path_to(best)), 0.0};
		r.probability = path_probability(r.path, msg_level, model);
		for (NodeId v : r.path.nodes)
			blocked[v] = true;
		out.push_back(std::move(r));
	}
}

/**
 * True iff the message can reach `target` along agents that all lie within
 * `tau` of `msg_level`: either the target is a subscriber, or some neighbor
 * of the target is reachable from a subscriber through such agents without
 * passing through the target. Minimax (bottleneck) Dijkstra on belief
 * distance to the message.
 */
inline bool tau_path_exists(const SocialGraph& g, std::span<const NodeId> subscribers, NodeId target, int tau,
                            BeliefStrength msg_level)
{
	if (tau < 0)
		throw DomainError("tau_path_exists: tau must be non-negative");
	if (std::find(subscribers.begin(), subscribers.end(), target) != subscribers.end())
		return true;

	const std::size_t n = g.node_count();
	constexpr int unreached = std::numeric_limits<int>::max();
	std::vector<int> bottleneck(n, unreached);
	using Entry = std::pair<int, NodeId>;
	std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
	for (NodeId s : subscribers) {
		if (s == target)
			continue;
		const int cost = distance(g.belief(s), msg_level);
		if (cost < bottleneck[s]) {
			bottleneck[s] = cost;
			frontier.emplace(cost, s);
		}
	}
	while (!frontier.empty()) {
		const auto [cost, u] = frontier.top();
		frontier.pop();
		if (cost > bottleneck[u])
			continue;
		for (NodeId w : g.neighbors(u)) {
			if (w == target)
				continue;
			const int through = std::max(cost, distance(g.belief(w), msg_level));
			if (through < bottleneck[w]) {
				bottleneck[w] = through;
				frontier.emplace(through, w);
			}
		}
	}
	for (NodeId v : g.neighbors(target))
		if (bottleneck[v] <= tau)
			return true;
	return false;
}

struct PathCensusRow
{
	std::string graph_type;
	int tau = 1;
	std::array<double, kBeliefLevels> proportions{}; ///< indexed by target belief
};

struct CensusConfig
{
	Topology topology = ErdosRenyi{};
	int tau = 1;
	BeliefStrength msg_level{kMaxBelief};
	BeliefStrength institution_belief{kMaxBelief};
	int epsilon = 0;
	std::size_t trials = 100;
	std::uint64_t seed = 0;
};

/**
 * For each target belief b: over `trials` fresh graphs, pick a random agent
 * holding b (regenerating the graph if there is none) and record whether a
 * tau-bounded path reaches it. Trial (b, i, attempt) draws its graph seed
 * from the census sub-stream keyed by those three numbers.
 */
inline PathCensusRow path_census(const CensusConfig& config, std::size_t workers = 1)
{
	if (config.trials < 1)
		throw DomainError("path_census: trials must be at least 1");
	if (config.tau < 0)
		throw DomainError("path_census: tau must be non-negative");
	PathCensusRow row{topology_name(config.topology), config.tau, {}};
	std::vector<char> hits(kBeliefLevels * config.trials, 0);

	parallel_for(hits.size(), workers, [&](std::size_t job) {
		const auto level = static_cast<int>(job / config.trials);
		const std::size_t trial = job % config.trials;
		for (std::uint64_t attempt = 0;; ++attempt) {
			RandomStream rng(config.seed, StreamTag::census, {static_cast<std::uint64_t>(level), trial, attempt});
			const std::uint64_t graph_seed = rng();
			const SocialGraph g = generate(GraphSpec{config.topology, graph_seed});
			std::vector<NodeId> candidates;
			for (NodeId v = 0; v < g.node_count(); ++v)
				if (g.belief(v).value() == level)
					candidates.push_back(v);
			if (candidates.empty())
				continue;
			const NodeId target = candidates[rng.below(candidates.size())];
			const auto subscribers = subscribe(g, config.institution_belief, config.epsilon);
			hits[job] = tau_path_exists(g, subscribers, target, config.tau, config.msg_level) ? 1 : 0;
			return;
		}
	});

	for (int b = 0; b < kBeliefLevels; ++b) {
		std::size_t count = 0;
		for (std::size_t i = 0; i < config.trials; ++i)
			count += hits[b * config.trials + i];
		row.proportions[b] = static_cast<double>(count) / static_cast<double>(config.trials);
	}
	return row;
}

} // namespace cogcon

#pragma once

#include "cogcon/belief.hpp"
#include "cogcon/contagion.hpp"
#include "cogcon/graph.hpp"
#include "cogcon/random.hpp"

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <span>
#include <thread>
#include <variant>
#include <vector>

namespace cogcon {

using MessageId = std::uint64_t;
using InstitutionId = std::uint32_t;

/// Broadcaster with directed edges to its subscribers. Its belief never changes.
struct Institution
{
	InstitutionId id = 0;
	BeliefStrength belief{kMaxBelief};
	std::vector<NodeId> subscribers;
};

struct Message
{
	MessageId uid = 0;
	BeliefStrength belief;
	InstitutionId origin = 0;
	std::size_t tick = 0;
};

// ---------------------------------------------------------------------------
// Message schedules
// ---------------------------------------------------------------------------

struct SingleSchedule
{
	BeliefStrength level{6};
};

/// `first` through `switch_tick`, `second` afterwards.
struct SplitSchedule
{
	BeliefStrength first{6};
	BeliefStrength second{0};
	std::size_t switch_tick = 50;
};

/// Steps one level from `start` toward `end` every `interval` ticks, then holds `end`.
struct GradualSchedule
{
	BeliefStrength start{6};
	BeliefStrength end{0};
	std::size_t interval = 10;
};

/// Arbitrary tick -> levels map; ticks without an entry broadcast nothing.
struct ExplicitSchedule
{
	std::map<std::size_t, std::vector<BeliefStrength>> ticks;
};

using MessageSchedule = std::variant<SingleSchedule, SplitSchedule, GradualSchedule, ExplicitSchedule>;

inline const char* schedule_name(const MessageSchedule& s)
{
	constexpr const char* names[] = {"single", "split", "gradual", "explicit"};
	return names[s.index()];
}

/// Levels broadcast at tick t, 1 <= t <= horizon.
inline std::vector<BeliefStrength> schedule_levels(const MessageSchedule& schedule, std::size_t t, std::size_t horizon)
{
	if (t < 1 || t > horizon)
		throw DomainError("schedule_levels: tick " + std::to_string(t) + " outside [1, " + std::to_string(horizon) + "]");
	return std::visit(
		[&](const auto& s) -> std::vector<BeliefStrength> {
			using S = std::decay_t<decltype(s)>;
			if constexpr (std::is_same_v<S, SingleSchedule>) {
				return {s.level};
			} else if constexpr (std::is_same_v<S, SplitSchedule>) {
				return {t <= s.switch_tick ? s.first : s.second};
			} else if constexpr (std::is_same_v<S, GradualSchedule>) {
				if (s.interval == 0)
					throw DomainError("gradual schedule interval must be positive");
				const auto steps = static_cast<int>((t - 1) / s.interval);
				const int from = s.start.value(), to = s.end.value();
				const int level = from >= to ? std::max(to, from - steps) : std::min(to, from + steps);
				return {BeliefStrength(level)};
			} else {
				auto it = s.ticks.find(t);
				return it == s.ticks.end() ? std::vector<BeliefStrength>{} : it->second;
			}
		},
		schedule);
}

// ---------------------------------------------------------------------------
// Simulation state
// ---------------------------------------------------------------------------

/**
 * How repeated copies of one message reach an agent that has not believed it.
 *
 * per_copy: every received copy is an independent trial until the agent believes.
 * per_message: only the first copy of each message is tried; later copies are ignored.
 */
enum class ExposurePolicy
{
	per_copy,
	per_message,
};

/// Agents whose initial belief lies within `epsilon` of the institution's.
inline std::vector<NodeId> subscribe(const SocialGraph& graph, BeliefStrength institution_belief, int epsilon)
{
	std::vector<NodeId> out;
	for (NodeId u = 0; u < graph.node_count(); ++u)
		if (distance(graph.belief(u), institution_belief) <= epsilon)
			out.push_back(u);
	return out;
}

struct SimState
{
	SimState(SocialGraph g, ContagionModel m, std::size_t horizon_ticks,
	         ExposurePolicy policy = ExposurePolicy::per_message)
	    : graph(std::move(g)), model(m), horizon(horizon_ticks), exposure(policy), believed(graph.node_count()),
	      heard(graph.node_count())
	{
		validate(model);
	}

	SocialGraph graph;
	std::vector<Institution> institutions;
	ContagionModel model;
	std::size_t horizon;
	ExposurePolicy exposure;
	std::size_t tick = 0;
	MessageId next_uid = 0;
	std::uint64_t believed_count = 0;

	/// Per agent: uids believed, ascending.
	std::vector<std::vector<MessageId>> believed;
	/// Per agent: uids already tried (per_message policy only), ascending.
	std::vector<std::vector<MessageId>> heard;

	bool has_believed(NodeId u, MessageId uid) const { return contains(believed[u], uid); }
	bool has_heard(NodeId u, MessageId uid) const { return contains(heard[u], uid); }

	Institution& add_institution(BeliefStrength belief, int epsilon)
	{
		Institution inst;
		inst.id = static_cast<InstitutionId>(institutions.size());
		inst.belief = belief;
		inst.subscribers = subscribe(graph, belief, epsilon);
		return institutions.emplace_back(std::move(inst));
	}

private:
	static bool contains(const std::vector<MessageId>& ids, MessageId uid)
	{
		// uids are issued in increasing order, so the newest sit at the back
		for (auto it = ids.rbegin(); it != ids.rend(); ++it) {
			if (*it == uid)
				return true;
			if (*it < uid)
				return false;
		}
		return false;
	}
};

/// Fraction of u's neighbors currently holding `level` (0 for isolated agents).
inline double believing_fraction(const SocialGraph& g, NodeId u, BeliefStrength level)
{
	const auto adj = g.neighbors(u);
	if (adj.empty())
		return 0.0;
	std::size_t matching = 0;
	for (NodeId v : adj)
		matching += g.belief(v) == level ? 1 : 0;
	return static_cast<double>(matching) / static_cast<double>(adj.size());
}

/**
 * One adoption trial of `msg` by `receiver`. On success the receiver takes
 * the message's belief and records the uid; on failure nothing changes.
 * The caller guarantees the receiver has not yet believed this uid.
 */
template <ContagionRandom Rng>
bool deliver(SimState& state, NodeId receiver, const Message& msg, double neighbor_fraction, Rng& rng)
{
	const Probability p = contagion_prob(state.model, state.graph.belief(receiver), msg.belief, neighbor_fraction);
	bool accept;
	if (p <= 0.0)
		accept = false;
	else if (p >= 1.0)
		accept = true;
	else
		accept = rng.bernoulli(p);
	if (!accept)
		return false;
	state.graph.set_belief(receiver, msg.belief);
	state.believed[receiver].push_back(msg.uid);
	++state.believed_count;
	return true;
}

/// No-op delivery observer.
struct IgnoreDeliveries
{
	void operator()(const Message&, NodeId, bool) const noexcept {}
};

/**
 * Advances one tick: every institution broadcasts its scheduled levels, in
 * order, as fresh messages to a shuffled list of its subscribers. Each
 * message's cascade is drained FIFO before the next message goes out. An agent that believes a message forwards the
 * original message to all of its neighbors. Returns the end-of-tick histogram.
 *
 * `observe(msg, receiver, believed)` is called after every trial.
 */
template <ContagionRandom Rng, class Observer = IgnoreDeliveries>
Histogram step(SimState& state, const MessageSchedule& schedule, Rng& rng, Observer&& observe = {})
{
	if (state.tick >= state.horizon)
		throw DomainError("step: simulation already reached its horizon");
	const std::size_t t = ++state.tick;
	const bool complex = std::holds_alternative<Complex>(state.model);

	std::vector<NodeId> queue;
	for (const auto& inst : state.institutions) {
		for (BeliefStrength level : schedule_levels(schedule, t, state.horizon)) {
			const Message msg{state.next_uid++, level, inst.id, t};
			queue = inst.subscribers;
			rng.shuffle(std::span<NodeId>(queue));
			for (std::size_t head = 0; head < queue.size(); ++head) {
				const NodeId receiver = queue[head];
				if (state.has_believed(receiver, msg.uid))
					continue;
				if (state.exposure == ExposurePolicy::per_message) {
					if (state.has_heard(receiver, msg.uid))
						continue;
					state.heard[receiver].push_back(msg.uid);
				}
				const double fraction = complex ? believing_fraction(state.graph, receiver, msg.belief) : 0.0;
				const bool ok = deliver(state, receiver, msg, fraction, rng);
				observe(msg, receiver, ok);
				if (!ok)
					continue;
				for (NodeId w : state.graph.neighbors(receiver))
					if (!state.has_believed(w, msg.uid))
						queue.push_back(w);
			}
		}
	}
	return belief_histogram(state.graph.beliefs());
}

// ---------------------------------------------------------------------------
// Runs and batches
// ---------------------------------------------------------------------------

struct SimulationTrace
{
	std::vector<Histogram> ticks; ///< T + 1 entries, tick 0 is the initial distribution
	std::uint64_t believed = 0;   ///< successful adoptions over the whole run
};

/// Everything that defines one experimental condition.
struct RunConfig
{
	Topology topology = ErdosRenyi{};
	ContagionModel model = dcc();
	MessageSchedule schedule = SingleSchedule{};
	std::size_t ticks = 100;
	BeliefStrength institution_belief{kMaxBelief};
	int epsilon = 0;
	std::size_t repetitions = 10;
	std::uint64_t seed = 0;
	ExposurePolicy exposure = ExposurePolicy::per_message;
};

/// Single run: graph and simulation randomness both derive from `seed`.
inline SimulationTrace run(const RunConfig& config, std::uint64_t seed)
{
	if (config.ticks < 1)
		throw DomainError("run: T must be at least 1");
	if (config.epsilon < 0)
		throw DomainError("run: epsilon must be non-negative");
	SimState state(generate(GraphSpec{config.topology, seed}), config.model, config.ticks, config.exposure);
	state.add_institution(config.institution_belief, config.epsilon);
	RandomStream rng(seed, StreamTag::simulation);

	SimulationTrace trace;
	trace.ticks.reserve(config.ticks + 1);
	trace.ticks.push_back(belief_histogram(state.graph.beliefs()));
	for (std::size_t t = 1; t <= config.ticks; ++t)
		trace.ticks.push_back(step(state, config.schedule, rng));
	trace.believed = state.believed_count;
	return trace;
}

struct BatchResult
{
	std::vector<Histogram> mean;     ///< per tick, per level
	std::vector<Histogram> variance; ///< population variance across runs
	std::vector<SimulationTrace> runs;
};

/// Runs `fn(i)` for i in [0, count) on up to `workers` threads. Results land by index.
template <class Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn)
{
	workers = std::max<std::size_t>(1, std::min(workers, count));
	if (workers == 1) {
		for (std::size_t i = 0; i < count; ++i)
			fn(i);
		return;
	}
	std::atomic<std::size_t> next{0};
	std::exception_ptr failure;
	std::mutex failure_mutex;
	std::vector<std::jthread> pool;
	for (std::size_t w = 0; w < workers; ++w)
		pool.emplace_back([&] {
			for (std::size_t i = next++; i < count; i = next++) {
				try {
					fn(i);
				} catch (...) {
					std::lock_guard lock(failure_mutex);
					if (!failure)
						failure = std::current_exception();
				}
			}
		});
	pool.clear();
	if (failure)
		std::rethrow_exception(failure);
}

/// Repetition r uses seed config.seed + r.
inline BatchResult run_batch(const RunConfig& config, std::size_t workers = 1)
{
	if (config.repetitions < 1)
		throw DomainError("run_batch: repetitions must be at least 1");
	BatchResult result;
	result.runs.resize(config.repetitions);
	parallel_for(config.repetitions, workers,
	             [&](std::size_t r) { result.runs[r] = run(config, config.seed + r); });

	const std::size_t ticks = config.ticks + 1;
	const auto reps = static_cast<double>(config.repetitions);
	result.mean.assign(ticks, Histogram{});
	result.variance.assign(ticks, Histogram{});
	for (std::size_t t = 0; t < ticks; ++t) {
		for (int b = 0; b < kBeliefLevels; ++b) {
			double sum = 0.0;
			for (const auto& r : result.runs)
				sum += r.ticks[t][b];
			const double mean = sum / reps;
			double sq = 0.0;
			for (const auto& r : result.runs)
				sq += (r.ticks[t][b] - mean) * (r.ticks[t][b] - mean);
			result.mean[t][b] = mean;
			result.variance[t][b] = sq / reps;
		}
	}
	return result;
}

} // namespace cogcon

#pragma once

#include "cogcon/belief.hpp"
#include "cogcon/random.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cogcon {

using NodeId = std::uint32_t;

/**
 * Undirected simple graph of agents, each holding one belief strength.
 *
 * Adjacency lists are kept sorted so iteration order (and therefore every
 * downstream random draw) is a function of the edge set alone.
 */
class SocialGraph
{
public:
	SocialGraph() = default;

	explicit SocialGraph(std::vector<BeliefStrength> beliefs)
	    : adjacency_(beliefs.size()), beliefs_(std::move(beliefs))
	{
	}

	std::size_t node_count() const noexcept { return beliefs_.size(); }
	std::size_t edge_count() const noexcept { return edge_count_; }

	std::span<const NodeId> neighbors(NodeId u) const { return adjacency_.at(u); }
	std::size_t degree(NodeId u) const { return adjacency_.at(u).size(); }

	BeliefStrength belief(NodeId u) const { return beliefs_.at(u); }
	void set_belief(NodeId u, BeliefStrength b) { beliefs_.at(u) = b; }
	const std::vector<BeliefStrength>& beliefs() const noexcept { return beliefs_; }

	bool has_edge(NodeId u, NodeId v) const
	{
		const auto& adj = adjacency_.at(u);
		return std::binary_search(adj.begin(), adj.end(), v);
	}

	/// Adds {u, v}. Returns false for self-loops and existing edges.
	bool add_edge(NodeId u, NodeId v)
	{
		check_node(u);
		check_node(v);
		if (u == v || has_edge(u, v))
			return false;
		insert_sorted(adjacency_[u], v);
		insert_sorted(adjacency_[v], u);
		++edge_count_;
		return true;
	}

	bool remove_edge(NodeId u, NodeId v)
	{
		if (!has_edge(u, v))
			return false;
		erase_sorted(adjacency_[u], v);
		erase_sorted(adjacency_[v], u);
		--edge_count_;
		return true;
	}

	/// All edges as (u, v) with u < v, lexicographically ordered.
	std::vector<std::pair<NodeId, NodeId>> edges() const
	{
		std::vector<std::pair<NodeId, NodeId>> out;
		out.reserve(edge_count_);
		for (NodeId u = 0; u < adjacency_.size(); ++u)
			for (NodeId v : adjacency_[u])
				if (u < v)
					out.emplace_back(u, v);
		return out;
	}

	friend bool operator==(const SocialGraph&, const SocialGraph&) = default;

private:
	void check_node(NodeId u) const
	{
		if (u >= node_count())
			throw DomainError("node id " + std::to_string(u) + " out of range");
	}

	static void insert_sorted(std::vector<NodeId>& adj, NodeId v)
	{
		adj.insert(std::lower_bound(adj.begin(), adj.end(), v), v);
	}

	static void erase_sorted(std::vector<NodeId>& adj, NodeId v)
	{
		adj.erase(std::lower_bound(adj.begin(), adj.end(), v));
	}

	std::vector<std::vector<NodeId>> adjacency_;
	std::vector<BeliefStrength> beliefs_;
	std::size_t edge_count_ = 0;
};

/// Symmetric 7x7 matrix of edge probabilities indexed by endpoint beliefs.
class AffinityMatrix
{
public:
	using Rows = std::array<std::array<double, kBeliefLevels>, kBeliefLevels>;

	AffinityMatrix() = default;

	explicit AffinityMatrix(const Rows& theta) : theta_(theta)
	{
		for (int i = 0; i < kBeliefLevels; ++i)
			for (int j = 0; j < kBeliefLevels; ++j) {
				if (!(theta_[i][j] >= 0.0 && theta_[i][j] <= 1.0))
					throw DomainError("affinity entries must be in [0, 1]");
				if (theta_[i][j] != theta_[j][i])
					throw DomainError("affinity matrix must be symmetric");
			}
	}

	double operator()(BeliefStrength a, BeliefStrength b) const { return theta_[a.value()][b.value()]; }
	const Rows& rows() const noexcept { return theta_; }

	friend bool operator==(const AffinityMatrix&, const AffinityMatrix&) = default;

private:
	Rows theta_{};
};

/// The strongly homophilic affinity matrix used for the MAG experiments.
inline AffinityMatrix mag_affinity()
{
	// clang-format off
	return AffinityMatrix({{
		{0.167,  0.018,  0.005,  0.002,  0.001,  0.0008, 0.0006},
		{0.018,  0.167,  0.018,  0.005,  0.002,  0.001,  0.0008},
		{0.005,  0.018,  0.167,  0.018,  0.005,  0.002,  0.001},
		{0.002,  0.005,  0.018,  0.167,  0.018,  0.005,  0.002},
		{0.001,  0.002,  0.005,  0.018,  0.167,  0.018,  0.005},
		{0.0008, 0.001,  0.002,  0.005,  0.018,  0.167,  0.018},
		{0.0006, 0.0008, 0.001,  0.002,  0.005,  0.018,  0.167},
	}});
	// clang-format on
}

// ---------------------------------------------------------------------------
// Topologies
// ---------------------------------------------------------------------------

struct ErdosRenyi
{
	std::size_t n = 500;
	double rho = 0.05;
	friend bool operator==(const ErdosRenyi&, const ErdosRenyi&) = default;
};

struct WattsStrogatz
{
	std::size_t n = 500;
	std::size_t k = 5;
	double rho = 0.5;
	friend bool operator==(const WattsStrogatz&, const WattsStrogatz&) = default;
};

struct BarabasiAlbert
{
	std::size_t n = 500;
	std::size_t m = 3;
	friend bool operator==(const BarabasiAlbert&, const BarabasiAlbert&) = default;
};

struct MultiplicativeAttribute
{
	std::size_t n = 500;
	AffinityMatrix theta = mag_affinity();
	friend bool operator==(const MultiplicativeAttribute&, const MultiplicativeAttribute&) = default;
};

using Topology = std::variant<ErdosRenyi, WattsStrogatz, BarabasiAlbert, MultiplicativeAttribute>;

struct GraphSpec
{
	Topology topology;
	std::uint64_t seed = 0;
	friend bool operator==(const GraphSpec&, const GraphSpec&) = default;
};

inline const char* topology_name(const Topology& t)
{
	constexpr const char* names[] = {"er", "ws", "ba", "mag"};
	return names[t.index()];
}

inline std::size_t topology_size(const Topology& t)
{
	return std::visit([](const auto& g) { return g.n; }, t);
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// I.i.d. uniform beliefs over {0..6}, from the seed's belief sub-stream.
inline std::vector<BeliefStrength> assign_beliefs(std::size_t n, std::uint64_t seed)
{
	if (n == 0)
		throw DomainError("assign_beliefs: n must be at least 1");
	RandomStream rng(seed, StreamTag::beliefs);
	std::vector<BeliefStrength> beliefs;
	beliefs.reserve(n);
	for (std::size_t i = 0; i < n; ++i)
		beliefs.emplace_back(static_cast<int>(rng.below(kBeliefLevels)));
	return beliefs;
}

inline SocialGraph gen_er(std::size_t n, double rho, std::uint64_t seed)
{
	if (!(rho >= 0.0 && rho <= 1.0))
		throw DomainError("gen_er: rho must be in [0, 1]");
	SocialGraph g(assign_beliefs(n, seed));
	RandomStream rng(seed, StreamTag::graph_edges);
	for (NodeId u = 0; u < n; ++u)
		for (NodeId v = u + 1; v < n; ++v)
			if (rng.bernoulli(rho))
				g.add_edge(u, v);
	return g;
}

/**
 * Ring lattice where node i links to i+1..i+k (mod n), giving n*k edges, then
 * each lattice edge (i, j) is rewired with probability rho to (i, w) for a
 * uniformly chosen w that is neither i nor already adjacent to i.
 */
inline SocialGraph gen_ws(std::size_t n, std::size_t k, double rho, std::uint64_t seed)
{
	if (k < 1 || n <= 2 * k)
		throw DomainError("gen_ws: requires k >= 1 and n > 2k");
	if (!(rho >= 0.0 && rho <= 1.0))
		throw DomainError("gen_ws: rho must be in [0, 1]");
	SocialGraph g(assign_beliefs(n, seed));
	for (std::size_t j = 1; j <= k; ++j)
		for (NodeId u = 0; u < n; ++u)
			g.add_edge(u, static_cast<NodeId>((u + j) % n));

	RandomStream rng(seed, StreamTag::graph_edges);
	for (std::size_t j = 1; j <= k; ++j) {
		for (NodeId u = 0; u < n; ++u) {
			if (!rng.bernoulli(rho))
				continue;
			if (g.degree(u) + 1 >= n)
				continue;
			const auto v = static_cast<NodeId>((u + j) % n);
			NodeId w;
			do
				w = static_cast<NodeId>(rng.below(n));
			while (w == u || g.has_edge(u, w));
			g.remove_edge(u, v);
			g.add_edge(u, w);
		}
	}
	return g;
}

/**
 * Preferential attachment seeded with a complete graph on m nodes. The next
 * node links to all of them; every later node links to m distinct existing
 * nodes drawn with probability proportional to degree.
 * Edge count is m(m-1)/2 + m(n-m).
 */
inline SocialGraph gen_ba(std::size_t n, std::size_t m, std::uint64_t seed)
{
	if (m < 1 || n <= m)
		throw DomainError("gen_ba: requires n > m >= 1");
	SocialGraph g(assign_beliefs(n, seed));
	std::vector<NodeId> endpoints; // each node appears once per incident edge
	const auto link = [&](NodeId u, NodeId v) {
		g.add_edge(u, v);
		endpoints.push_back(u);
		endpoints.push_back(v);
	};
	for (NodeId u = 0; u < m; ++u)
		for (NodeId v = u + 1; v < m; ++v)
			link(u, v);
	for (NodeId v = 0; v < m; ++v)
		link(static_cast<NodeId>(m), v);

	RandomStream rng(seed, StreamTag::graph_edges);
	std::vector<NodeId> targets;
	for (auto u = static_cast<NodeId>(m + 1); u < n; ++u) {
		targets.clear();
		while (targets.size() < m) {
			const NodeId t = endpoints[rng.below(endpoints.size())];
			if (std::find(targets.begin(), targets.end(), t) == targets.end())
				targets.push_back(t);
		}
		for (NodeId t : targets)
			link(u, t);
	}
	return g;
}

/// Beliefs first, then each pair joined with probability theta(b_u, b_v).
inline SocialGraph gen_mag(std::size_t n, const AffinityMatrix& theta, std::uint64_t seed)
{
	SocialGraph g(assign_beliefs(n, seed));
	RandomStream rng(seed, StreamTag::graph_edges);
	for (NodeId u = 0; u < n; ++u)
		for (NodeId v = u + 1; v < n; ++v)
			if (rng.bernoulli(theta(g.belief(u), g.belief(v))))
				g.add_edge(u, v);
	return g;
}

inline SocialGraph generate(const GraphSpec& spec)
{
	return std::visit(
		[&](const auto& t) -> SocialGraph {
			using T = std::decay_t<decltype(t)>;
			if constexpr (std::is_same_v<T, ErdosRenyi>)
				return gen_er(t.n, t.rho, spec.seed);
			else if constexpr (std::is_same_v<T, WattsStrogatz>)
				return gen_ws(t.n, t.k, t.rho, spec.seed);
			else if constexpr (std::is_same_v<T, BarabasiAlbert>)
				return gen_ba(t.n, t.m, spec.seed);
			else
				return gen_mag(t.n, t.theta, spec.seed);
		},
		spec.topology);
}

// ---------------------------------------------------------------------------
// Measures
// ---------------------------------------------------------------------------

enum class HomophilyNorm
{
	per_edge, ///< mean belief distance over edges
	eq11,     ///< same numerator over 2|V|^2
};

/// Average neighbor belief distance. Lower means more homophilic.
inline double homophily(const SocialGraph& g, HomophilyNorm norm)
{
	double numerator = 0.0;
	for (NodeId v = 0; v < g.node_count(); ++v)
		for (NodeId u : g.neighbors(v))
			numerator += distance(g.belief(u), g.belief(v));
	if (norm == HomophilyNorm::per_edge) {
		if (g.edge_count() == 0)
			throw DomainError("homophily: per-edge measure needs at least one edge");
		return numerator / (2.0 * static_cast<double>(g.edge_count()));
	}
	const auto nodes = static_cast<double>(g.node_count());
	return numerator / (2.0 * nodes * nodes);
}

/// Mean local clustering coefficient; nodes of degree < 2 contribute 0.
inline double average_clustering(const SocialGraph& g)
{
	if (g.node_count() == 0)
		return 0.0;
	double total = 0.0;
	for (NodeId v = 0; v < g.node_count(); ++v) {
		const auto adj = g.neighbors(v);
		if (adj.size() < 2)
			continue;
		std::size_t links = 0;
		for (std::size_t a = 0; a < adj.size(); ++a)
			for (std::size_t b = a + 1; b < adj.size(); ++b)
				links += g.has_edge(adj[a], adj[b]) ? 1 : 0;
		total += 2.0 * static_cast<double>(links) / static_cast<double>(adj.size() * (adj.size() - 1));
	}
	return total / static_cast<double>(g.node_count());
}

inline Histogram belief_histogram(std::span<const BeliefStrength> beliefs)
{
	Histogram h{};
	if (beliefs.empty())
		return h;
	for (auto b : beliefs)
		h[b.value()] += 1.0;
	for (auto& x : h)
		x /= static_cast<double>(beliefs.size());
	return h;
}

} // namespace cogcon

#pragma once

#include "cogcon/graph.hpp"

#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cogcon {

class GraphFormatError : public std::runtime_error
{
public:
	GraphFormatError(std::size_t line, const std::string& what)
	    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
	{
	}
	std::size_t line() const noexcept { return line_; }

private:
	std::size_t line_;
};

/**
 * Line-oriented text form:
 *
 *     nodes <N>
 *     n <id> <belief>     (one per node, ascending id)
 *     e <u> <v>           (one per edge, u < v, lexicographic)
 *
 * The output is canonical: equal graphs serialize to identical bytes.
 */
inline void write_graph(std::ostream& out, const SocialGraph& g)
{
	out << "nodes " << g.node_count() << '\n';
	for (NodeId u = 0; u < g.node_count(); ++u)
		out << "n " << u << ' ' << g.belief(u).value() << '\n';
	for (auto [u, v] : g.edges())
		out << "e " << u << ' ' << v << '\n';
}

inline std::string graph_to_text(const SocialGraph& g)
{
	std::ostringstream os;
	write_graph(os, g);
	return os.str();
}

inline SocialGraph read_graph(std::istream& in)
{
	std::string line;
	std::size_t lineno = 0;
	std::size_t n = 0;
	bool have_header = false;
	std::vector<BeliefStrength> beliefs;
	std::vector<bool> seen;
	std::vector<std::pair<NodeId, NodeId>> edges;

	while (std::getline(in, line)) {
		++lineno;
		if (line.empty())
			continue;
		std::istringstream ls(line);
		std::string tag;
		ls >> tag;
		if (!have_header) {
			long long count = -1;
			if (tag != "nodes" || !(ls >> count) || count < 1)
				throw GraphFormatError(lineno, "expected 'nodes <N>' header with N >= 1");
			n = static_cast<std::size_t>(count);
			beliefs.assign(n, BeliefStrength{});
			seen.assign(n, false);
			have_header = true;
		} else if (tag == "n") {
			long long id = -1;
			int b = -1;
			if (!(ls >> id >> b) || id < 0 || static_cast<std::size_t>(id) >= n || !BeliefStrength::valid(b))
				throw GraphFormatError(lineno, "malformed node line");
			if (seen[id])
				throw GraphFormatError(lineno, "duplicate node " + std::to_string(id));
			seen[id] = true;
			beliefs[id] = BeliefStrength(b);
		} else if (tag == "e") {
			long long u = -1, v = -1;
			if (!(ls >> u >> v) || u < 0 || v < 0 || static_cast<std::size_t>(u) >= n ||
			    static_cast<std::size_t>(v) >= n || u == v)
				throw GraphFormatError(lineno, "malformed edge line");
			edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
		} else {
			throw GraphFormatError(lineno, "unknown record '" + tag + "'");
		}
		std::string trailing;
		if (ls >> trailing)
			throw GraphFormatError(lineno, "trailing data");
	}
	if (!have_header)
		throw GraphFormatError(lineno, "missing header");
	for (std::size_t i = 0; i < n; ++i)
		if (!seen[i])
			throw GraphFormatError(lineno, "node " + std::to_string(i) + " has no belief");

	SocialGraph g(std::move(beliefs));
	for (auto [u, v] : edges)
		if (!g.add_edge(u, v))
			throw GraphFormatError(lineno, "duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
	return g;
}

inline SocialGraph graph_from_text(const std::string& text)
{
	std::istringstream is(text);
	return read_graph(is);
}

} // namespace cogcon

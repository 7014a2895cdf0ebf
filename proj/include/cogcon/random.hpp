#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

namespace cogcon {

/// Independent sub-streams carved out of one 64-bit seed.
enum class StreamTag : std::uint32_t
{
	graph_edges = 1,
	beliefs = 2,
	simulation = 3,
	census = 4,
};

/**
 * Seeded pseudo-random stream (mt19937_64). Sub-streams for distinct purposes
 * are keyed by (seed, tag, extra...) through std::seed_seq so that, e.g., the
 * belief draw of a graph does not depend on how many edge trials preceded it.
 */
class RandomStream
{
public:
	using result_type = std::mt19937_64::result_type;

	explicit RandomStream(std::uint64_t seed, StreamTag tag = StreamTag::simulation,
	                      std::initializer_list<std::uint64_t> extra = {})
	    : engine_(make_engine(seed, tag, extra))
	{
	}

	static constexpr result_type min() { return std::mt19937_64::min(); }
	static constexpr result_type max() { return std::mt19937_64::max(); }
	result_type operator()() { return engine_(); }

	/// Uniform double in [0, 1) with 53 random bits.
	double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

	/// True with probability p (p <= 0 never, p >= 1 always).
	bool bernoulli(double p) { return uniform01() < p; }

	/// Uniform integer in [0, n). n must be positive.
	std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_); }

	template <class T>
	void shuffle(std::span<T> items)
	{
		std::shuffle(items.begin(), items.end(), engine_);
	}

private:
	static std::mt19937_64 make_engine(std::uint64_t seed, StreamTag tag, std::initializer_list<std::uint64_t> extra)
	{
		std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
		                                 static_cast<std::uint32_t>(tag)};
		for (auto e : extra) {
			words.push_back(static_cast<std::uint32_t>(e));
			words.push_back(static_cast<std::uint32_t>(e >> 32));
		}
		std::seed_seq seq(words.begin(), words.end());
		return std::mt19937_64(seq);
	}

	std::mt19937_64 engine_;
};

/// What the simulation engine needs from a random source. Tests substitute a
/// scripted stream to force particular outcomes.
template <class R>
concept ContagionRandom = requires(R r, double p, std::span<std::uint32_t> ids) {
	{ r.bernoulli(p) } -> std::convertible_to<bool>;
	r.shuffle(ids);
};

} // namespace cogcon

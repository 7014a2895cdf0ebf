#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace cogcon {

/// Number of discrete belief levels on the 7-point scale (0 = strong disbelief, 6 = strong belief).
inline constexpr int kBeliefLevels = 7;
inline constexpr int kMaxBelief = kBeliefLevels - 1;

/// Raised when an argument falls outside an operation's domain.
class DomainError : public std::domain_error
{
public:
	using std::domain_error::domain_error;
};

/// Raised when an operation is asked to handle a contagion model it does not support.
class UnsupportedModel : public std::invalid_argument
{
public:
	using std::invalid_argument::invalid_argument;
};

/**
 * Integer belief strength in [0, 6] toward a single proposition.
 */
class BeliefStrength
{
public:
	constexpr BeliefStrength() = default;

	constexpr explicit BeliefStrength(int level) : level_(checked(level)) {}

	constexpr int value() const noexcept { return level_; }

	friend constexpr bool operator==(BeliefStrength, BeliefStrength) = default;
	friend constexpr auto operator<=>(BeliefStrength, BeliefStrength) = default;

	/// |a - b|, in [0, 6].
	friend constexpr int distance(BeliefStrength a, BeliefStrength b) noexcept
	{
		return a.level_ > b.level_ ? a.level_ - b.level_ : b.level_ - a.level_;
	}

	static constexpr bool valid(int level) noexcept { return level >= 0 && level <= kMaxBelief; }

private:
	static constexpr std::int8_t checked(int level)
	{
		if (!valid(level))
			throw DomainError("belief strength must be in [0, 6], got " + std::to_string(level));
		return static_cast<std::int8_t>(level);
	}

	std::int8_t level_ = 0;
};

/// Probability in [0, 1]. Plain double; the kernel guarantees the range.
using Probability = double;

/// Fraction of agents at each belief level.
using Histogram = std::array<double, kBeliefLevels>;

} // namespace cogcon

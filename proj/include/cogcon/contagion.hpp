#pragma once

#include "cogcon/belief.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <string>
#include <type_traits>
#include <variant>

namespace cogcon {

// ---------------------------------------------------------------------------
// Contagion models
// ---------------------------------------------------------------------------

/// Constant per-contact adoption probability.
struct Simple
{
	double p = 0.15;
	friend bool operator==(const Simple&, const Simple&) = default;
};

/// Adopt with certainty once the fraction of neighbors already holding the
/// incoming belief reaches `alpha`.
struct Complex
{
	double alpha = 0.35;
	friend bool operator==(const Complex&, const Complex&) = default;
};

/// Adopt with certainty iff the belief distance is at most `gamma`.
struct CognitiveThreshold
{
	int gamma = 1;
	friend bool operator==(const CognitiveThreshold&, const CognitiveThreshold&) = default;
};

/// Inverse-linear: 1 / (gamma + alpha * distance), clamped to [0, 1].
struct CognitiveLinear
{
	double gamma = 1.0;
	double alpha = 1.0;
	friend bool operator==(const CognitiveLinear&, const CognitiveLinear&) = default;
};

/// Logistic: 1 / (1 + exp(alpha * (distance - gamma))).
struct CognitiveSigmoid
{
	double alpha = 4.0;
	double gamma = 2.0;
	friend bool operator==(const CognitiveSigmoid&, const CognitiveSigmoid&) = default;
};

using ContagionModel = std::variant<Simple, Complex, CognitiveThreshold, CognitiveLinear, CognitiveSigmoid>;

/// Agent disposition used by the named parameter presets.
enum class Disposition
{
	gullible,
	normal,
	stubborn
};

inline constexpr CognitiveLinear linear_preset(Disposition d)
{
	switch (d) {
	case Disposition::gullible: return {1.0, 0.0};
	case Disposition::normal: return {1.0, 1.0};
	case Disposition::stubborn: break;
	}
	return {10.0, 20.0};
}

inline constexpr CognitiveThreshold threshold_preset(Disposition d)
{
	switch (d) {
	case Disposition::gullible: return {6};
	case Disposition::normal: return {3};
	case Disposition::stubborn: break;
	}
	return {1};
}

inline constexpr CognitiveSigmoid sigmoid_preset(Disposition d)
{
	switch (d) {
	case Disposition::gullible: return {1.0, 7.0};
	case Disposition::normal: return {2.0, 3.0};
	case Disposition::stubborn: break;
	}
	return {4.0, 2.0};
}

/// Defensive cognitive contagion: the stubborn sigmoid.
inline constexpr CognitiveSigmoid dcc() { return sigmoid_preset(Disposition::stubborn); }

inline constexpr const char* disposition_name(Disposition d)
{
	switch (d) {
	case Disposition::gullible: return "gullible";
	case Disposition::normal: return "normal";
	case Disposition::stubborn: break;
	}
	return "stubborn";
}

inline bool is_cognitive(const ContagionModel& model)
{
	return !std::holds_alternative<Simple>(model) && !std::holds_alternative<Complex>(model);
}

/// Throws DomainError if the model's parameters are out of range.
inline void validate(const ContagionModel& model)
{
	std::visit(
		[](const auto& m) {
			using M = std::decay_t<decltype(m)>;
			if constexpr (std::is_same_v<M, Simple>) {
				if (!(m.p > 0.0 && m.p < 1.0))
					throw DomainError("simple contagion p must be in (0, 1)");
			} else if constexpr (std::is_same_v<M, Complex>) {
				if (!(m.alpha >= 0.0 && m.alpha <= 1.0))
					throw DomainError("complex contagion alpha must be in [0, 1]");
			} else if constexpr (std::is_same_v<M, CognitiveThreshold>) {
				if (m.gamma < 0)
					throw DomainError("threshold gamma must be non-negative");
			} else if constexpr (std::is_same_v<M, CognitiveLinear>) {
				if (!(m.gamma >= 0.0) || !(m.alpha >= 0.0))
					throw DomainError("linear gamma and alpha must be non-negative");
				if (m.gamma == 0.0 && m.alpha == 0.0)
					throw DomainError("linear gamma and alpha cannot both be zero");
			} else {
				if (!(m.alpha >= 0.0) || !std::isfinite(m.gamma))
					throw DomainError("sigmoid alpha must be non-negative and gamma finite");
			}
		},
		model);
}

inline std::string describe(const ContagionModel& model)
{
	char buf[96];
	std::visit(
		[&](const auto& m) {
			using M = std::decay_t<decltype(m)>;
			if constexpr (std::is_same_v<M, Simple>)
				std::snprintf(buf, sizeof buf, "simple(p=%g)", m.p);
			else if constexpr (std::is_same_v<M, Complex>)
				std::snprintf(buf, sizeof buf, "complex(alpha=%g)", m.alpha);
			else if constexpr (std::is_same_v<M, CognitiveThreshold>)
				std::snprintf(buf, sizeof buf, "threshold(gamma=%d)", m.gamma);
			else if constexpr (std::is_same_v<M, CognitiveLinear>)
				std::snprintf(buf, sizeof buf, "linear(gamma=%g,alpha=%g)", m.gamma, m.alpha);
			else
				std::snprintf(buf, sizeof buf, "sigmoid(alpha=%g,gamma=%g)", m.alpha, m.gamma);
		},
		model);
	return buf;
}

// ---------------------------------------------------------------------------
// Belief-update probabilities
// ---------------------------------------------------------------------------

inline Probability sigmoid_beta(BeliefStrength current, BeliefStrength incoming, double alpha, double gamma)
{
	const double d = distance(current, incoming);
	return 1.0 / (1.0 + std::exp(alpha * (d - gamma)));
}

inline Probability linear_beta(BeliefStrength current, BeliefStrength incoming, double gamma, double alpha)
{
	if (gamma == 0.0 && alpha == 0.0)
		throw DomainError("linear_beta: gamma and alpha cannot both be zero");
	const double denom = gamma + alpha * distance(current, incoming);
	if (denom <= 1.0)
		return 1.0;
	return 1.0 / denom;
}

inline Probability threshold_beta(BeliefStrength current, BeliefStrength incoming, int gamma)
{
	if (gamma < 0)
		throw DomainError("threshold_beta: gamma must be non-negative");
	return distance(current, incoming) <= gamma ? 1.0 : 0.0;
}

/// Distance-only belief-update probability for a cognitive model.
inline Probability cognitive_beta(const ContagionModel& model, BeliefStrength current, BeliefStrength incoming)
{
	return std::visit(
		[&](const auto& m) -> Probability {
			using M = std::decay_t<decltype(m)>;
			if constexpr (std::is_same_v<M, CognitiveThreshold>)
				return threshold_beta(current, incoming, m.gamma);
			else if constexpr (std::is_same_v<M, CognitiveLinear>)
				return linear_beta(current, incoming, m.gamma, m.alpha);
			else if constexpr (std::is_same_v<M, CognitiveSigmoid>)
				return sigmoid_beta(current, incoming, m.alpha, m.gamma);
			else
				throw UnsupportedModel(describe(m) + " has no belief-distance function");
		},
		model);
}

/**
 * Probability that an agent holding `current` adopts an incoming belief
 * `incoming`. `believing_fraction` is the fraction of the agent's neighbors
 * that already hold `incoming`; only the complex model reads it.
 */
inline Probability contagion_prob(const ContagionModel& model, BeliefStrength current, BeliefStrength incoming,
                                  double believing_fraction)
{
	if (const auto* s = std::get_if<Simple>(&model))
		return s->p;
	if (const auto* c = std::get_if<Complex>(&model))
		return believing_fraction >= c->alpha ? 1.0 : 0.0;
	return cognitive_beta(model, current, incoming);
}

/**
 * Smallest number of independently infected neighbors n such that
 * 1 - (1 - p)^n >= delta under per-neighbor infection probability p.
 */
inline std::size_t min_infected_neighbors(double p, double delta)
{
	if (!(p > 0.0 && p < 1.0))
		throw DomainError("min_infected_neighbors: p must be in (0, 1)");
	if (!(delta >= 0.0 && delta < 1.0))
		throw DomainError("min_infected_neighbors: delta must be in [0, 1)");

	const auto reaches = [&](double n) { return 1.0 - std::pow(1.0 - p, n) >= delta; };
	double n = std::ceil(std::log1p(-delta) / std::log1p(-p));
	n = std::max(n, 0.0);
	// the closed form can land one off at exact boundaries
	while (n > 0.0 && reaches(n - 1.0))
		n -= 1.0;
	while (!reaches(n))
		n += 1.0;
	return static_cast<std::size_t>(n);
}

using BetaTable = std::array<std::array<Probability, kBeliefLevels>, kBeliefLevels>;

/// Entry (i, j) holds beta(i, j). Only cognitive models have a table.
inline BetaTable beta_table(const ContagionModel& model)
{
	if (!is_cognitive(model))
		throw UnsupportedModel("beta_table requires a cognitive model, got " + describe(model));
	validate(model);
	BetaTable table{};
	for (int i = 0; i < kBeliefLevels; ++i)
		for (int j = 0; j < kBeliefLevels; ++j)
			table[i][j] = cognitive_beta(model, BeliefStrength(i), BeliefStrength(j));
	return table;
}

/// Seven comma-separated rows, three decimals each.
inline std::string beta_table_csv(const BetaTable& table)
{
	std::string out;
	char buf[32];
	for (const auto& row : table) {
		for (int j = 0; j < kBeliefLevels; ++j) {
			std::snprintf(buf, sizeof buf, "%.3f", row[j]);
			out += buf;
			out += j + 1 < kBeliefLevels ? ',' : '\n';
		}
	}
	return out;
}

} // namespace cogcon

#pragma once

#include "patrace/model.hpp"

#include <random>

namespace patrace::testing {

struct RandomProblemSpec {
    std::size_t max_alphabet = 4;
    std::size_t max_patterns = 4;
    std::size_t max_length = 6;
    std::size_t max_initial = 6;
};

/// Random rational letter probabilities (integer weights 1..9, normalized).
Alphabet random_alphabet(std::mt19937_64& rng, std::size_t size);

/// Rejection-samples a problem that passes validate_race. About a quarter have
/// no initial word and a quarter have one ending in a competing pattern.
RaceProblem random_problem(std::mt19937_64& rng, const RandomProblemSpec& shape = {});

}  // namespace patrace::testing

#include "metabel/errors.hpp"

#include <utility>

namespace metabel {

BudgetExceeded::BudgetExceeded(std::string what, std::uint64_t candidates, std::uint64_t budget)
    : Error(what + ": " + std::to_string(candidates) + " candidates exceed budget " +
            std::to_string(budget)),
      candidates_(candidates),
      budget_(budget) {}

HypothesisFailed::HypothesisFailed(std::string hypothesis)
    : Error("hypothesis failed: " + hypothesis), hypothesis_(std::move(hypothesis)) {}

}  // namespace metabel

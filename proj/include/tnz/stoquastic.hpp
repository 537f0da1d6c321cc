#ifndef TNZ_STOQUASTIC_HPP
#define TNZ_STOQUASTIC_HPP

#include "tnz/certify.hpp"
#include "tnz/hamiltonian.hpp"
#include "tnz/reduce.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tnz
{

struct StoqResult {
    bool yes = false;
    /// Basis string fed into the compiled network.
    std::vector<int> x;
    /// Output string y with <y| D^n Pi_H |x> > 0.
    std::vector<int> y;
    /// Full certificate on the compiled network.
    std::optional<NonNegWitness> witness;
};

struct StoqOptions {
    /// Guesses; default_sat_guesses when absent (energy threshold skipped).
    std::optional<std::vector<ProjectorGuess>> guesses;
    /// Single x to test; otherwise x runs over 0..0 upward.
    std::optional<std::vector<int>> x;
    /// Maximum number of x strings tried in the loop.
    std::uint64_t budget = kDefaultDenseCap;
};

/// Frustration-freeness of a commuting stoquastic projector instance: YES iff
/// some compiled network compile_clh(H, guesses, x) has a positive entry.
/// Throws NotStoquastic, NotCommuting, GuessRejected, and TooLarge when the
/// loop over x would exceed the budget.
StoqResult solve_stoquastic_sat(const HamiltonianInstance& h, const StoqOptions& options = {});

} // namespace tnz

#endif // TNZ_STOQUASTIC_HPP

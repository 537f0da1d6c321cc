#include "tnz/stoquastic.hpp"

#include "tnz/error.hpp"

namespace tnz
{

StoqResult solve_stoquastic_sat(const HamiltonianInstance& h, const StoqOptions& options)
{
    validate_instance(h);
    if (!is_stoquastic_sat(h)) {
        throw Error(ErrorKind::NotStoquastic, "every term must be a non-negative orthogonal projector");
    }
    if (!validate_commuting(h)) {
        throw Error(ErrorKind::NotCommuting, "some pair of terms does not commute");
    }
    ClhOptions clh_options;
    std::vector<ProjectorGuess> guesses;
    if (options.guesses) {
        guesses = *options.guesses;
    } else {
        guesses = default_sat_guesses(h);
        clh_options.enforce_energy_threshold = false;
    }

    std::vector<std::vector<int>> candidates;
    if (options.x) {
        candidates.push_back(*options.x);
    } else {
        std::uint64_t total = 1;
        for (int q = 0; q < h.n; ++q) {
            total *= static_cast<std::uint64_t>(h.D);
            if (total > options.budget) {
                throw Error(ErrorKind::TooLarge, "D^n basis strings exceed the budget");
            }
        }
        std::vector<int> x(static_cast<std::size_t>(h.n), 0);
        for (std::uint64_t i = 0; i < total; ++i) {
            candidates.push_back(x);
            for (std::size_t q = x.size(); q-- > 0;) {
                if (++x[q] < h.D) {
                    break;
                }
                x[q] = 0;
            }
        }
    }

    for (const auto& x : candidates) {
        const ClhNetwork clh = compile_clh(h, guesses, x, clh_options);
        auto witness = search_nonneg_witness(clh.network);
        if (!witness) {
            continue;
        }
        StoqResult out;
        out.yes = true;
        out.x = x;
        for (SlotRef leg : clh.qudit_legs) {
            out.y.push_back(witness->x.at(leg));
        }
        out.witness = std::move(witness);
        return out;
    }
    return {};
}

} // namespace tnz

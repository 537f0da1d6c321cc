#ifndef TNZ_REDUCE_HPP
#define TNZ_REDUCE_HPP

#include "tnz/hamiltonian.hpp"
#include "tnz/network.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace tnz
{

struct Literal {
    int var = 0; ///< 0-based variable index
    bool positive = true;

    friend bool operator==(const Literal&, const Literal&) = default;
};

struct Clause {
    Literal first;
    Literal second;

    friend bool operator==(const Clause&, const Clause&) = default;
};

/// 2-CNF formula. A clause may repeat a literal, e.g. (x or x).
struct Cnf2 {
    int num_vars = 0;
    std::vector<Clause> clauses;
};

/// Throws InvalidFormula for negative variable counts or literals outside
/// [num_vars].
void validate_cnf2(const Cnf2& formula);

/// Simple undirected graph on vertices 0..vertices-1.
struct SimpleGraph {
    int vertices = 0;
    std::vector<std::pair<int, int>> edges;
};

/// Throws InvalidGraph for loops, repeated edges or out-of-range endpoints.
void validate_graph(const SimpleGraph& graph);

/// Network plus thresholds alpha >= beta >= 0 with alpha - beta >= 1.
struct GtnzInstance {
    TensorNetwork network;
    Rational alpha{1};
    Rational beta{0};
};

/// Checks the threshold invariants; throws OutOfRange.
GtnzInstance make_gtnz_instance(TensorNetwork network, Rational alpha, Rational beta);

/// Closed network whose value is the number of satisfying assignments.
///
/// Node ids: variable v is node v+1, clause c is node num_vars+c+1. Each
/// clause contributes two edges (one per literal, in order) between its node
/// and the variable's node; label 1 means "true". Variable nodes accept only
/// all-equal labels; clause nodes accept the labels satisfying the clause. A
/// variable absent from every clause becomes a 0-slot node holding 2.
TensorNetwork compile_sharp2sat(const Cnf2& formula);

/// compile_sharp2sat scaled by 2^t/k (stored as the global scalar) with
/// alpha = 2^t and beta = 2^t (k-1)/k, so the value reaches alpha iff the
/// model count is at least k. Throws OutOfRange unless 1 <= k <= 2^t.
GtnzInstance threshold_instance(const Cnf2& formula, std::uint64_t k);

/// Closed network with the same nodes and edges, every bond dimension one
/// larger, contracting to value(T) + addend.
///
/// The extra label of each edge is a "switch". A node whose incident edges
/// are all non-switch behaves as before, a node seeing both kinds outputs 0,
/// and a node whose edges are all switch outputs the addend if it is the
/// distinguished node v* (smallest id) and 1 otherwise. Throws NotClosed or
/// EmptyNetwork.
TensorNetwork add_scalar(const TensorNetwork& network, const Scalar& addend);

/// One node per vertex (id vertex+1, one slot per incident edge in edge-list
/// order), bond dimension `colors`, entry 1 exactly when the incident labels
/// are pairwise distinct. Contracts to the number of proper edge colorings.
TensorNetwork compile_edge_coloring(const SimpleGraph& graph, int colors);

/// Open chain of n nodes (ids 1..n, slot 0 physical, bond dimension 2)
/// representing |0 0..0 0> + |1 0..0 1>. Throws TooSmall for n < 3.
TensorNetwork build_bell_mps(int n);

/// Network for D^n Pi_H |x> plus the physical leg of each qudit.
struct ClhNetwork {
    TensorNetwork network;
    std::vector<SlotRef> qudit_legs;

    /// Basis input putting y[q] on qudit q's leg.
    BasisInput basis_input(const std::vector<int>& y) const;
};

struct ClhOptions {
    /// Reject guesses whose eigenvalues sum above alpha.
    bool enforce_energy_threshold = true;
};

/// Starts from one-hot nodes for |x> (qudit q is node q+1) and attaches each
/// guessed projector in ascending term order as a 2k-slot node: slots 0..k-1
/// consume the current legs of its support, slots k..2k-1 become the new
/// legs. Requires exactly one verified guess per term; throws GuessRejected
/// otherwise, SupportOutOfRange for bad supports, IndexOutOfRange for x.
ClhNetwork compile_clh(const HamiltonianInstance& h, const std::vector<ProjectorGuess>& guesses,
                       const std::vector<int>& x, const ClhOptions& options = {});

} // namespace tnz

#endif // TNZ_REDUCE_HPP

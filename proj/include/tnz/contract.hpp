#ifndef TNZ_CONTRACT_HPP
#define TNZ_CONTRACT_HPP

#include "tnz/network.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tnz
{

/// Default cap on the number of labelings the brute-force oracle enumerates.
inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 24;

/// Order in which the virtual edges are contracted, one edge per step.
struct ContractionPlan {
    std::vector<EdgeId> edges;
    /// Upper bound on the stored entries of any node produced while following
    /// the plan, including the final output tensor: min(dense size, product of
    /// the inputs' stored entries).
    std::uint64_t estimated_max_intermediate_entries = 0;
};

/// Merges the endpoints of edge e, summing over the shared index. The merged
/// node keeps the id of the edge's first endpoint; its slots are the first
/// endpoint's remaining slots followed by the second's. A self-edge becomes a
/// partial trace. Remaining edges keep their relative order, so ids above e
/// shift down by one. Throws UnknownEdge.
TensorNetwork contract_edge(const TensorNetwork& network, EdgeId e);

/// Greedy plan: at each step pick the edge whose merged node has the smallest
/// entry bound, ties broken by the smallest edge id.
ContractionPlan plan_contraction(const TensorNetwork& network);

/// Contracts all virtual edges and returns one tensor whose slots follow
/// physical_edges() order, global scalar included. The node id is 0.
TensorNode contract_to_tensor(const TensorNetwork& network);
TensorNode contract_to_tensor(const TensorNetwork& network, const ContractionPlan& plan);

/// Value of a closed network. Throws NotClosed.
Scalar contract_closed(const TensorNetwork& network);
/// Same, following an explicit order; plan must be a permutation of all edge
/// ids (UnknownEdge otherwise).
Scalar contract_closed(const TensorNetwork& network, const ContractionPlan& plan);

/// Attaches a one-hot node to each physical edge; the result is closed.
TensorNetwork pin_inputs(const TensorNetwork& network, const BasisInput& x);

/// T(x). Throws NotTotal / IndexOutOfRange.
Scalar evaluate(const TensorNetwork& network, const BasisInput& x);

/// Sum over x of (prod_e psi_e[x_e]) T(x). Inputs are not conjugated.
/// Throws NotTotal / LengthMismatch.
Scalar evaluate_vectors(const TensorNetwork& network, const VectorInput& psi);

/// Independent oracle: sums the product of node entries over every labeling
/// of the virtual edges, with physical slots fixed at x. x may only be
/// omitted for closed networks. Throws TooLarge past the cap.
Scalar brute_force_value(const TensorNetwork& network, const std::optional<BasisInput>& x = std::nullopt,
                         std::uint64_t cap = kDefaultEnumerationCap);

} // namespace tnz

#endif // TNZ_CONTRACT_HPP

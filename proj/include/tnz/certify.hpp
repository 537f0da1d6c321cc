#ifndef TNZ_CERTIFY_HPP
#define TNZ_CERTIFY_HPP

#include "tnz/contract.hpp"
#include "tnz/linalg.hpp"
#include "tnz/reduce.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace tnz
{

/// Physical input plus virtual labeling whose entry product is positive.
struct NonNegWitness {
    BasisInput x;
    Labeling labeling;

    friend bool operator==(const NonNegWitness&, const NonNegWitness&) = default;
};

/// Every entry and the global scalar are non-negative reals.
bool is_nonnegative(const TensorNetwork& network);

/// True iff global scalar times the product of all node entries under
/// (w.x, w.labeling) is positive. Throws NotNonNegative, InvalidWitness.
bool verify_nonneg_witness(const TensorNetwork& network, const NonNegWitness& w);

/// Depth-first search over physical edges then virtual edges (both in
/// (node, slot) order, smallest value first), pruning any partial assignment
/// that leaves some node without a consistent non-zero entry. Returns the
/// first witness in that order, or nullopt iff T(x) = 0 for every x.
/// Throws NotNonNegative.
std::optional<NonNegWitness> search_nonneg_witness(const TensorNetwork& network);

/// Blocks of node ids; must partition the network's nodes.
struct InjectivePartition {
    std::vector<std::vector<NodeId>> blocks;
};

/// Linear map from a block's boundary virtual edges to its physical edges.
/// Row index: block physical values (first slot most significant); column
/// index: boundary labels, same convention. The global scalar is folded into
/// block 0.
struct BlockMap {
    std::size_t block = 0;
    std::vector<SlotRef> physical;
    /// Boundary edges and, for each, the slot on this block's side.
    std::vector<EdgeId> boundary;
    std::vector<SlotRef> boundary_slots;
    Matrix map;
};

/// Builds each block's map after checking the partition. Throws
/// NotAPartition, DisconnectedBlock, NoPhysicalEdge, TooLarge.
std::vector<BlockMap> block_maps(const TensorNetwork& network, const InjectivePartition& partition,
                                 std::uint64_t cap = kDefaultEnumerationCap);

/// True iff every block map has full column rank (exact elimination).
bool check_injective(const TensorNetwork& network, const InjectivePartition& partition,
                     std::uint64_t cap = kDefaultEnumerationCap);

/// Joint input vector on one block's physical edges.
struct BlockVector {
    std::vector<SlotRef> physical;
    std::vector<Scalar> amplitudes;
};
using GroupedVectorInput = std::vector<BlockVector>;

/// Per block, an exact solution psi of L^T psi = |0..0> on the boundary, so
/// that feeding psi (unconjugated) into the network makes every cut edge
/// carry only label 0 and the whole network evaluates to exactly 1.
/// Throws NotInjective.
GroupedVectorInput injective_certificate(const TensorNetwork& network,
                                         const InjectivePartition& partition,
                                         std::uint64_t cap = kDefaultEnumerationCap);

/// Pairs each group's joint vector with the network (no conjugation).
/// Groups must partition the physical edges; throws NotTotal, LengthMismatch.
Scalar evaluate_grouped(const TensorNetwork& network, const GroupedVectorInput& input);

/// Per-edge form of a grouped input whose groups are all single edges.
std::optional<VectorInput> as_vector_input(const GroupedVectorInput& input);

/// Fixes physical edges in order, each to the smallest value keeping the
/// doubled network <T|T> (restricted to the fixed values) non-zero.
/// Returns x with T(x) != 0, or nullopt iff T is the zero vector. Throws
/// TooLarge when the doubled contraction would exceed cap entries.
std::optional<BasisInput> basis_witness_peel(const TensorNetwork& network,
                                             std::uint64_t cap = kDefaultEnumerationCap);

/// YES/NO decision procedure for gTNZ instances.
using TnzOracle = std::function<bool(const GtnzInstance&)>;

/// Exact oracle: YES iff some |T(x)| >= alpha, by full contraction.
TnzOracle exact_tnz_oracle(std::uint64_t cap = kDefaultEnumerationCap);

/// Decides "at least k models" by trying k' = k, k+1, ... and asking the
/// oracle whether add_scalar(T_phi, -k') is non-zero; a NO means k' is the
/// count. loop_cap bounds the number of k' tried (default: up to 2^t).
/// Throws OutOfRange unless 1 <= k <= 2^t.
bool decide_at_least_k(const Cnf2& formula, std::uint64_t k, const TnzOracle& oracle,
                       std::optional<std::uint64_t> loop_cap = std::nullopt);

/// Single-query variant on threshold_instance(formula, k).
bool decide_at_least_k_threshold(const Cnf2& formula, std::uint64_t k, const TnzOracle& oracle);

/// Exact model count by binary search over [0, 2^t] with the threshold
/// variant; at most t+1 oracle queries.
std::uint64_t count_via_gtnz(const Cnf2& formula, const TnzOracle& oracle);

} // namespace tnz

#endif // TNZ_CERTIFY_HPP

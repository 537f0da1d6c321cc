#ifndef TNZ_NETWORK_HPP
#define TNZ_NETWORK_HPP

#include "tnz/scalar.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

namespace tnz
{

using NodeId = int;
using MultiIndex = std::vector<int>;

/// A slot of a node, identified by position. Slots and index values are
/// 0-based in the library; the file formats shift them to 1-based.
struct SlotRef {
    NodeId node = 0;
    int slot = 0;

    auto operator<=>(const SlotRef&) const = default;
};

/// Sparse k-dimensional tensor. Absent multi-indices are exact zeros.
class TensorNode
{
  public:
    using Entries = std::map<MultiIndex, Scalar>;

    TensorNode() = default;
    /// Throws IndexOutOfRange for a non-positive dimension.
    TensorNode(NodeId id, std::vector<int> dims);

    NodeId id() const { return id_; }
    void set_id(NodeId id) { id_ = id; }

    const std::vector<int>& dims() const { return dims_; }
    int rank() const { return static_cast<int>(dims_.size()); }
    int dim(int slot) const { return dims_.at(static_cast<std::size_t>(slot)); }

    /// Number of multi-indices (product of dims), saturating at UINT64_MAX.
    std::uint64_t dense_size() const;

    const Entries& entries() const { return entries_; }
    std::size_t nonzero_count() const { return entries_.size(); }

    /// Stores value at idx; a zero value erases the entry.
    void set(const MultiIndex& idx, const Scalar& value);
    /// Adds value to the entry at idx, dropping it if the sum cancels.
    /// Unchecked: idx must already be in range.
    void accumulate(const MultiIndex& idx, const Scalar& value);

    /// Stored value or exact zero. Throws IndexOutOfRange.
    Scalar at(const MultiIndex& idx) const;

    bool in_range(const MultiIndex& idx) const;

    /// Replaces entries wholesale (used by transforms); range is checked.
    void assign(Entries entries);

    friend bool operator==(const TensorNode&, const TensorNode&) = default;

  private:
    NodeId id_ = 0;
    std::vector<int> dims_;
    Entries entries_;
};

/// Same as node.at(idx).
Scalar node_entry(const TensorNode& node, const MultiIndex& idx);

struct VirtualEdge {
    SlotRef a;
    SlotRef b;

    friend bool operator==(const VirtualEdge&, const VirtualEdge&) = default;
};

/// Virtual edges are identified by their position in edges().
using EdgeId = std::size_t;

/// Nodes, virtual edges between their slots, and a global factor. Every slot
/// not covered by a virtual edge is a physical edge.
class TensorNetwork
{
  public:
    /// Throws DuplicateNode if the id is taken.
    void add_node(TensorNode node);
    /// Returns the new edge's id. Structural checks happen in validate_network.
    EdgeId add_edge(SlotRef a, SlotRef b);

    const std::vector<TensorNode>& nodes() const { return nodes_; }
    const std::vector<VirtualEdge>& edges() const { return edges_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    bool has_node(NodeId id) const { return index_.contains(id); }
    /// Throws UnknownNode.
    const TensorNode& node(NodeId id) const;

    /// Largest node id, or 0 for an empty network.
    NodeId max_node_id() const;

    const Scalar& global_scalar() const { return global_; }
    void set_global_scalar(Scalar s) { global_ = std::move(s); }

    /// Dimension of a slot. Throws UnknownNode / IndexOutOfRange.
    int slot_dim(SlotRef s) const;

    /// All uncovered slots, sorted by (node, slot).
    std::vector<SlotRef> physical_edges() const;
    bool is_closed() const { return physical_edges().empty(); }

    /// Bond dimension of edge e (dimension of its first endpoint).
    int bond_dim(EdgeId e) const;

    friend bool operator==(const TensorNetwork& a, const TensorNetwork& b)
    {
        return a.nodes_ == b.nodes_ && a.edges_ == b.edges_ && a.global_ == b.global_;
    }

  private:
    std::vector<TensorNode> nodes_;
    std::map<NodeId, std::size_t> index_;
    std::vector<VirtualEdge> edges_;
    Scalar global_{1};
};

/// Checks every structural invariant; throws tnz::Error on the first
/// violation (UnknownNode, IndexOutOfRange, SlotReuse, DimensionMismatch).
void validate_network(const TensorNetwork& network);

/// Value of every virtual edge, indexed by EdgeId.
struct Labeling {
    std::vector<int> values;

    friend bool operator==(const Labeling&, const Labeling&) = default;
};

/// Basis value of every physical edge.
using BasisInput = std::map<SlotRef, int>;
/// Vector fed into every physical edge.
using VectorInput = std::map<SlotRef, std::vector<Scalar>>;

/// Throws NotTotal unless the keys are exactly the physical edges and
/// IndexOutOfRange for values outside the edge dimension.
void check_basis_input(const TensorNetwork& network, const BasisInput& x);

/// Throws InvalidWitness unless labeling covers every edge in range.
void check_labeling(const TensorNetwork& network, const Labeling& labeling);

} // namespace tnz

#endif // TNZ_NETWORK_HPP

#include "tnz/network.hpp"

#include "tnz/error.hpp"

#include <limits>
#include <set>
#include <sstream>

namespace tnz
{

namespace
{

std::string describe(SlotRef s)
{
    std::ostringstream os;
    os << "(node " << s.node << ", slot " << s.slot << ")";
    return os.str();
}

std::string describe(const MultiIndex& idx)
{
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < idx.size(); ++i) {
        os << (i ? "," : "") << idx[i];
    }
    os << ")";
    return os.str();
}

} // namespace

TensorNode::TensorNode(NodeId id, std::vector<int> dims) : id_(id), dims_(std::move(dims))
{
    for (int d : dims_) {
        if (d <= 0) {
            throw Error(ErrorKind::IndexOutOfRange,
                        "node " + std::to_string(id) + " has a non-positive slot dimension");
        }
    }
}

std::uint64_t TensorNode::dense_size() const
{
    std::uint64_t size = 1;
    for (int d : dims_) {
        if (size > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(d)) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        size *= static_cast<std::uint64_t>(d);
    }
    return size;
}

bool TensorNode::in_range(const MultiIndex& idx) const
{
    if (idx.size() != dims_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] < 0 || idx[i] >= dims_[i]) {
            return false;
        }
    }
    return true;
}

void TensorNode::set(const MultiIndex& idx, const Scalar& value)
{
    if (!in_range(idx)) {
        throw Error(ErrorKind::IndexOutOfRange,
                    "entry " + describe(idx) + " out of range for node " + std::to_string(id_));
    }
    if (value.is_zero()) {
        entries_.erase(idx);
    } else {
        entries_[idx] = value;
    }
}

void TensorNode::accumulate(const MultiIndex& idx, const Scalar& value)
{
    auto [it, inserted] = entries_.try_emplace(idx, value);
    if (!inserted) {
        it->second += value;
    }
    if (it->second.is_zero()) {
        entries_.erase(it);
    }
}

Scalar TensorNode::at(const MultiIndex& idx) const
{
    if (!in_range(idx)) {
        throw Error(ErrorKind::IndexOutOfRange,
                    "entry " + describe(idx) + " out of range for node " + std::to_string(id_));
    }
    auto it = entries_.find(idx);
    return it == entries_.end() ? Scalar(0) : it->second;
}

void TensorNode::assign(Entries entries)
{
    for (auto it = entries.begin(); it != entries.end();) {
        if (!in_range(it->first)) {
            throw Error(ErrorKind::IndexOutOfRange, "entry " + describe(it->first) +
                                                        " out of range for node " +
                                                        std::to_string(id_));
        }
        it = it->second.is_zero() ? entries.erase(it) : std::next(it);
    }
    entries_ = std::move(entries);
}

Scalar node_entry(const TensorNode& node, const MultiIndex& idx)
{
    return node.at(idx);
}

void TensorNetwork::add_node(TensorNode node)
{
    if (index_.contains(node.id())) {
        throw Error(ErrorKind::DuplicateNode, "node id " + std::to_string(node.id()) + " used twice");
    }
    index_.emplace(node.id(), nodes_.size());
    nodes_.push_back(std::move(node));
}

EdgeId TensorNetwork::add_edge(SlotRef a, SlotRef b)
{
    edges_.push_back({a, b});
    return edges_.size() - 1;
}

const TensorNode& TensorNetwork::node(NodeId id) const
{
    auto it = index_.find(id);
    if (it == index_.end()) {
        throw Error(ErrorKind::UnknownNode, "no node with id " + std::to_string(id));
    }
    return nodes_[it->second];
}

NodeId TensorNetwork::max_node_id() const
{
    return index_.empty() ? 0 : index_.rbegin()->first;
}

int TensorNetwork::slot_dim(SlotRef s) const
{
    const TensorNode& n = node(s.node);
    if (s.slot < 0 || s.slot >= n.rank()) {
        throw Error(ErrorKind::IndexOutOfRange, "no slot " + describe(s));
    }
    return n.dim(s.slot);
}

int TensorNetwork::bond_dim(EdgeId e) const
{
    if (e >= edges_.size()) {
        throw Error(ErrorKind::UnknownEdge, "no edge " + std::to_string(e));
    }
    return slot_dim(edges_[e].a);
}

std::vector<SlotRef> TensorNetwork::physical_edges() const
{
    std::set<SlotRef> covered;
    for (const auto& e : edges_) {
        covered.insert(e.a);
        covered.insert(e.b);
    }
    std::vector<SlotRef> out;
    for (const auto& [id, pos] : index_) {
        for (int s = 0; s < nodes_[pos].rank(); ++s) {
            SlotRef ref{id, s};
            if (!covered.contains(ref)) {
                out.push_back(ref);
            }
        }
    }
    return out;
}

void validate_network(const TensorNetwork& network)
{
    for (const auto& n : network.nodes()) {
        for (const auto& [idx, value] : n.entries()) {
            if (!n.in_range(idx)) {
                throw Error(ErrorKind::IndexOutOfRange, "entry " + describe(idx) +
                                                            " out of range for node " +
                                                            std::to_string(n.id()));
            }
        }
    }
    std::set<SlotRef> used;
    for (const auto& e : network.edges()) {
        const int da = network.slot_dim(e.a);
        const int db = network.slot_dim(e.b);
        if (e.a == e.b) {
            throw Error(ErrorKind::SlotReuse, "slot " + describe(e.a) + " paired with itself");
        }
        for (SlotRef s : {e.a, e.b}) {
            if (!used.insert(s).second) {
                throw Error(ErrorKind::SlotReuse, "slot " + describe(s) + " in two edges");
            }
        }
        if (da != db) {
            throw Error(ErrorKind::DimensionMismatch, "edge " + describe(e.a) + " - " +
                                                          describe(e.b) + " joins dims " +
                                                          std::to_string(da) + " and " +
                                                          std::to_string(db));
        }
    }
}

void check_basis_input(const TensorNetwork& network, const BasisInput& x)
{
    const auto phys = network.physical_edges();
    if (x.size() != phys.size()) {
        throw Error(ErrorKind::NotTotal, "basis input must cover exactly the " +
                                             std::to_string(phys.size()) + " physical edges");
    }
    for (SlotRef s : phys) {
        auto it = x.find(s);
        if (it == x.end()) {
            throw Error(ErrorKind::NotTotal, "no basis value for physical edge " + describe(s));
        }
        if (it->second < 0 || it->second >= network.slot_dim(s)) {
            throw Error(ErrorKind::IndexOutOfRange,
                        "basis value out of range on physical edge " + describe(s));
        }
    }
}

void check_labeling(const TensorNetwork& network, const Labeling& labeling)
{
    if (labeling.values.size() != network.edge_count()) {
        throw Error(ErrorKind::InvalidWitness, "labeling must assign every virtual edge once");
    }
    for (EdgeId e = 0; e < network.edge_count(); ++e) {
        const int v = labeling.values[e];
        if (v < 0 || v >= network.bond_dim(e)) {
            throw Error(ErrorKind::InvalidWitness, "label out of range on edge " + std::to_string(e));
        }
    }
}

} // namespace tnz

// Labeling-enumeration oracle. Deliberately shares nothing with the
// merge-based contraction in contract.cpp.

#include "tnz/contract.hpp"
#include "tnz/error.hpp"

#include <limits>

namespace tnz
{

namespace
{

/// Dense copy of a node plus, per slot, where its value comes from.
struct DenseFactor {
    std::vector<Scalar> values;
    std::vector<bool> nonzero;
    std::vector<std::uint64_t> strides;
    // Per slot: edge id, or npos when the slot is pinned by a physical input.
    std::vector<std::size_t> edge_of_slot;
    std::uint64_t fixed_offset = 0;
};

constexpr std::size_t kPinned = std::numeric_limits<std::size_t>::max();

} // namespace

Scalar brute_force_value(const TensorNetwork& network, const std::optional<BasisInput>& x,
                         std::uint64_t cap)
{
    validate_network(network);
    if (x) {
        check_basis_input(network, *x);
    } else if (!network.is_closed()) {
        throw Error(ErrorKind::NotClosed, "open network needs a basis input");
    }

    std::uint64_t labelings = 1;
    std::vector<int> bond(network.edge_count());
    for (EdgeId e = 0; e < network.edge_count(); ++e) {
        bond[e] = network.bond_dim(e);
        const auto d = static_cast<std::uint64_t>(bond[e]);
        if (labelings > cap / d) {
            throw Error(ErrorKind::TooLarge, "labeling count exceeds the enumeration cap");
        }
        labelings *= d;
    }

    std::vector<DenseFactor> factors;
    for (const auto& node : network.nodes()) {
        if (node.dense_size() > cap) {
            throw Error(ErrorKind::TooLarge, "node too large to densify");
        }
        DenseFactor f;
        const auto size = static_cast<std::size_t>(node.dense_size());
        f.values.assign(size, Scalar(0));
        f.nonzero.assign(size, false);
        f.strides.assign(static_cast<std::size_t>(node.rank()), 0);
        std::uint64_t stride = 1;
        for (int s = node.rank(); s-- > 0;) {
            f.strides[static_cast<std::size_t>(s)] = stride;
            stride *= static_cast<std::uint64_t>(node.dim(s));
        }
        for (const auto& [idx, value] : node.entries()) {
            std::uint64_t off = 0;
            for (std::size_t s = 0; s < idx.size(); ++s) {
                off += static_cast<std::uint64_t>(idx[s]) * f.strides[s];
            }
            f.values[off] = value;
            f.nonzero[off] = true;
        }
        f.edge_of_slot.assign(static_cast<std::size_t>(node.rank()), kPinned);
        factors.push_back(std::move(f));
    }
    std::map<NodeId, std::size_t> position;
    for (std::size_t i = 0; i < network.nodes().size(); ++i) {
        position[network.nodes()[i].id()] = i;
    }
    for (EdgeId e = 0; e < network.edge_count(); ++e) {
        for (SlotRef s : {network.edges()[e].a, network.edges()[e].b}) {
            factors[position[s.node]].edge_of_slot[static_cast<std::size_t>(s.slot)] = e;
        }
    }
    if (x) {
        for (const auto& [slot, value] : *x) {
            DenseFactor& f = factors[position[slot.node]];
            f.fixed_offset += static_cast<std::uint64_t>(value) * f.strides[static_cast<std::size_t>(slot.slot)];
        }
    }

    Scalar total(0);
    std::vector<int> label(network.edge_count(), 0);
    for (std::uint64_t step = 0; step < labelings; ++step) {
        bool zero = false;
        for (const auto& f : factors) {
            std::uint64_t off = f.fixed_offset;
            for (std::size_t s = 0; s < f.edge_of_slot.size(); ++s) {
                if (f.edge_of_slot[s] != kPinned) {
                    off += static_cast<std::uint64_t>(label[f.edge_of_slot[s]]) * f.strides[s];
                }
            }
            if (!f.nonzero[off]) {
                zero = true;
                break;
            }
        }
        if (!zero) {
            Scalar term = network.global_scalar();
            for (const auto& f : factors) {
                std::uint64_t off = f.fixed_offset;
                for (std::size_t s = 0; s < f.edge_of_slot.size(); ++s) {
                    if (f.edge_of_slot[s] != kPinned) {
                        off += static_cast<std::uint64_t>(label[f.edge_of_slot[s]]) * f.strides[s];
                    }
                }
                term *= f.values[off];
            }
            total += term;
        }
        // Odometer, last edge fastest.
        for (std::size_t e = label.size(); e-- > 0;) {
            if (++label[e] < bond[e]) {
                break;
            }
            label[e] = 0;
        }
    }
    return total;
}

} // namespace tnz

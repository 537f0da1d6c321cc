#include "tnz/contract.hpp"

#include "tnz/error.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace tnz
{

namespace
{

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return a * b;
}

template <typename T> std::vector<T> erase_positions(const std::vector<T>& v, int p, int q = -1)
{
    std::vector<T> out;
    out.reserve(v.size());
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
        if (i != p && i != q) {
            out.push_back(v[static_cast<std::size_t>(i)]);
        }
    }
    return out;
}

template <typename T> std::vector<T> concat(std::vector<T> a, const std::vector<T>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

/// sum_k A(.., k@pa, ..) B(.., k@pb, ..); result slots are A's then B's.
TensorNode merge_tensors(const TensorNode& a, int pa, const TensorNode& b, int pb, NodeId id)
{
    TensorNode out(id, concat(erase_positions(a.dims(), pa), erase_positions(b.dims(), pb)));
    std::vector<std::vector<const TensorNode::Entries::value_type*>> by_value(
        static_cast<std::size_t>(b.dim(pb)));
    for (const auto& entry : b.entries()) {
        by_value[static_cast<std::size_t>(entry.first[static_cast<std::size_t>(pb)])].push_back(&entry);
    }
    MultiIndex key;
    for (const auto& [ia, va] : a.entries()) {
        const auto& partners = by_value[static_cast<std::size_t>(ia[static_cast<std::size_t>(pa)])];
        if (partners.empty()) {
            continue;
        }
        const MultiIndex left = erase_positions(ia, pa);
        for (const auto* entry : partners) {
            key = concat(left, erase_positions(entry->first, pb));
            out.accumulate(key, va * entry->second);
        }
    }
    return out;
}

/// sum_k A(.., k@p, .., k@q, ..).
TensorNode trace_tensor(const TensorNode& a, int p, int q)
{
    TensorNode out(a.id(), erase_positions(a.dims(), p, q));
    for (const auto& [idx, value] : a.entries()) {
        if (idx[static_cast<std::size_t>(p)] == idx[static_cast<std::size_t>(q)]) {
            out.accumulate(erase_positions(idx, p, q), value);
        }
    }
    return out;
}

TensorNode outer_tensors(const TensorNode& a, const TensorNode& b)
{
    TensorNode out(a.id(), concat(a.dims(), b.dims()));
    for (const auto& [ia, va] : a.entries()) {
        for (const auto& [ib, vb] : b.entries()) {
            out.accumulate(concat(ia, ib), va * vb);
        }
    }
    return out;
}

/// Work item of the engine: a tensor plus, per slot, either the id of the
/// virtual edge it belongs to (>= 0) or -(k+1) for physical edge k.
struct Work {
    TensorNode tensor;
    std::vector<long> labels;
};

int position_of(const std::vector<long>& labels, long label, int from = 0)
{
    for (int i = from; i < static_cast<int>(labels.size()); ++i) {
        if (labels[static_cast<std::size_t>(i)] == label) {
            return i;
        }
    }
    throw Error(ErrorKind::SolveFailed, "contraction bookkeeping lost an edge label");
}

/// Per-node slot labels for the engine.
std::map<NodeId, std::vector<long>> initial_labels(const TensorNetwork& network)
{
    std::map<NodeId, std::vector<long>> labels;
    for (const auto& n : network.nodes()) {
        labels[n.id()].assign(static_cast<std::size_t>(n.rank()), 0);
    }
    for (EdgeId e = 0; e < network.edge_count(); ++e) {
        const auto& edge = network.edges()[e];
        labels[edge.a.node][static_cast<std::size_t>(edge.a.slot)] = static_cast<long>(e);
        labels[edge.b.node][static_cast<std::size_t>(edge.b.slot)] = static_cast<long>(e);
    }
    const auto phys = network.physical_edges();
    for (std::size_t k = 0; k < phys.size(); ++k) {
        labels[phys[k].node][static_cast<std::size_t>(phys[k].slot)] = -static_cast<long>(k) - 1;
    }
    return labels;
}

void check_plan(const TensorNetwork& network, const ContractionPlan& plan)
{
    std::vector<bool> seen(network.edge_count(), false);
    for (EdgeId e : plan.edges) {
        if (e >= network.edge_count() || seen[e]) {
            throw Error(ErrorKind::UnknownEdge, "plan must list every edge exactly once");
        }
        seen[e] = true;
    }
    if (plan.edges.size() != network.edge_count()) {
        throw Error(ErrorKind::UnknownEdge, "plan must list every edge exactly once");
    }
}

} // namespace

TensorNetwork contract_edge(const TensorNetwork& network, EdgeId e)
{
    if (e >= network.edge_count()) {
        throw Error(ErrorKind::UnknownEdge, "no edge " + std::to_string(e));
    }
    validate_network(network);
    const VirtualEdge edge = network.edges()[e];
    const TensorNode& a = network.node(edge.a.node);
    const bool self = edge.a.node == edge.b.node;

    // Where each old slot of the endpoint nodes lands in the merged node.
    std::map<SlotRef, SlotRef> moved;
    TensorNode merged;
    if (self) {
        merged = trace_tensor(a, edge.a.slot, edge.b.slot);
        int next = 0;
        for (int s = 0; s < a.rank(); ++s) {
            if (s != edge.a.slot && s != edge.b.slot) {
                moved[{a.id(), s}] = {a.id(), next++};
            }
        }
    } else {
        const TensorNode& b = network.node(edge.b.node);
        merged = merge_tensors(a, edge.a.slot, b, edge.b.slot, a.id());
        int next = 0;
        for (int s = 0; s < a.rank(); ++s) {
            if (s != edge.a.slot) {
                moved[{a.id(), s}] = {a.id(), next++};
            }
        }
        for (int s = 0; s < b.rank(); ++s) {
            if (s != edge.b.slot) {
                moved[{b.id(), s}] = {a.id(), next++};
            }
        }
    }

    TensorNetwork out;
    for (const auto& n : network.nodes()) {
        if (n.id() == edge.a.node) {
            out.add_node(merged);
        } else if (n.id() != edge.b.node) {
            out.add_node(n);
        }
    }
    auto remap = [&](SlotRef s) {
        auto it = moved.find(s);
        return it == moved.end() ? s : it->second;
    };
    for (EdgeId other = 0; other < network.edge_count(); ++other) {
        if (other != e) {
            const auto& oe = network.edges()[other];
            out.add_edge(remap(oe.a), remap(oe.b));
        }
    }
    out.set_global_scalar(network.global_scalar());
    return out;
}

ContractionPlan plan_contraction(const TensorNetwork& network)
{
    validate_network(network);
    struct Shape {
        std::vector<int> dims;
        std::vector<long> labels;
        /// Upper bound on stored entries.
        std::uint64_t entries = 0;
    };
    std::map<NodeId, Shape> live;
    for (auto& [id, labels] : initial_labels(network)) {
        const auto& node = network.node(id);
        live[id] = Shape{node.dims(), labels, node.nonzero_count()};
    }
    std::vector<std::pair<NodeId, NodeId>> owners;
    for (const auto& edge : network.edges()) {
        owners.emplace_back(edge.a.node, edge.b.node);
    }
    auto dense = [](const std::vector<int>& dims) {
        std::uint64_t size = 1;
        for (int d : dims) {
            size = saturating_mul(size, static_cast<std::uint64_t>(d));
        }
        return size;
    };
    auto merged_shape = [&](EdgeId e) {
        const auto [u, v] = owners[e];
        const Shape& su = live.at(u);
        const int pu = position_of(su.labels, static_cast<long>(e));
        Shape out;
        std::uint64_t pairs = su.entries;
        if (u == v) {
            const int qu = position_of(su.labels, static_cast<long>(e), pu + 1);
            out = Shape{erase_positions(su.dims, pu, qu), erase_positions(su.labels, pu, qu), 0};
        } else {
            const Shape& sv = live.at(v);
            const int pv = position_of(sv.labels, static_cast<long>(e));
            out = Shape{concat(erase_positions(su.dims, pu), erase_positions(sv.dims, pv)),
                        concat(erase_positions(su.labels, pu), erase_positions(sv.labels, pv)), 0};
            pairs = saturating_mul(pairs, sv.entries);
        }
        // Each stored entry (or pair of entries) feeds at most one output entry.
        out.entries = std::min(dense(out.dims), pairs);
        return out;
    };

    ContractionPlan plan;
    std::set<EdgeId> remaining;
    for (EdgeId e = 0; e < network.edge_count(); ++e) {
        remaining.insert(e);
    }
    while (!remaining.empty()) {
        EdgeId best = *remaining.begin();
        std::uint64_t best_size = std::numeric_limits<std::uint64_t>::max();
        for (EdgeId e : remaining) {
            const std::uint64_t size = merged_shape(e).entries;
            if (size < best_size) {
                best = e;
                best_size = size;
            }
        }
        Shape merged = merged_shape(best);
        const auto [u, v] = owners[best];
        live.erase(v);
        for (long label : merged.labels) {
            if (label >= 0) {
                auto& owner = owners[static_cast<std::size_t>(label)];
                if (owner.first == v) owner.first = u;
                if (owner.second == v) owner.second = u;
            }
        }
        live[u] = std::move(merged);
        plan.edges.push_back(best);
        plan.estimated_max_intermediate_entries =
            std::max(plan.estimated_max_intermediate_entries, best_size);
        remaining.erase(best);
    }
    std::uint64_t output = 1;
    for (const auto& [id, shape] : live) {
        output = saturating_mul(output, shape.entries);
    }
    plan.estimated_max_intermediate_entries = std::max(plan.estimated_max_intermediate_entries, output);
    return plan;
}

TensorNode contract_to_tensor(const TensorNetwork& network)
{
    return contract_to_tensor(network, plan_contraction(network));
}

TensorNode contract_to_tensor(const TensorNetwork& network, const ContractionPlan& plan)
{
    validate_network(network);
    check_plan(network, plan);

    std::map<NodeId, Work> live;
    for (auto& [id, labels] : initial_labels(network)) {
        live[id] = Work{network.node(id), std::move(labels)};
    }
    std::vector<std::pair<NodeId, NodeId>> owners;
    for (const auto& edge : network.edges()) {
        owners.emplace_back(edge.a.node, edge.b.node);
    }

    for (EdgeId e : plan.edges) {
        const auto [u, v] = owners[e];
        Work& wu = live.at(u);
        const long label = static_cast<long>(e);
        const int pu = position_of(wu.labels, label);
        Work merged;
        if (u == v) {
            const int qu = position_of(wu.labels, label, pu + 1);
            merged = Work{trace_tensor(wu.tensor, pu, qu), erase_positions(wu.labels, pu, qu)};
        } else {
            Work& wv = live.at(v);
            const int pv = position_of(wv.labels, label);
            merged = Work{merge_tensors(wu.tensor, pu, wv.tensor, pv, u),
                          concat(erase_positions(wu.labels, pu), erase_positions(wv.labels, pv))};
            live.erase(v);
            for (long l : merged.labels) {
                if (l >= 0) {
                    auto& owner = owners[static_cast<std::size_t>(l)];
                    if (owner.first == v) owner.first = u;
                    if (owner.second == v) owner.second = u;
                }
            }
        }
        live[u] = std::move(merged);
    }

    // Disconnected components: combine by outer product in node-id order.
    Work result{TensorNode(0, {}), {}};
    result.tensor.set({}, network.global_scalar());
    for (const auto& [id, w] : live) {
        result = Work{outer_tensors(result.tensor, w.tensor), concat(result.labels, w.labels)};
    }

    // Reorder slots so slot k is physical edge k.
    const std::size_t rank = result.labels.size();
    std::vector<std::size_t> target(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        target[i] = static_cast<std::size_t>(-result.labels[i] - 1);
    }
    std::vector<int> dims(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        dims[target[i]] = result.tensor.dims()[i];
    }
    TensorNode out(0, dims);
    TensorNode::Entries entries;
    for (const auto& [idx, value] : result.tensor.entries()) {
        MultiIndex permuted(rank);
        for (std::size_t i = 0; i < rank; ++i) {
            permuted[target[i]] = idx[i];
        }
        entries.emplace(std::move(permuted), value);
    }
    out.assign(std::move(entries));
    return out;
}

Scalar contract_closed(const TensorNetwork& network)
{
    validate_network(network);
    if (!network.is_closed()) {
        throw Error(ErrorKind::NotClosed, "network has physical edges");
    }
    return contract_to_tensor(network).at({});
}

Scalar contract_closed(const TensorNetwork& network, const ContractionPlan& plan)
{
    validate_network(network);
    if (!network.is_closed()) {
        throw Error(ErrorKind::NotClosed, "network has physical edges");
    }
    return contract_to_tensor(network, plan).at({});
}

TensorNetwork pin_inputs(const TensorNetwork& network, const BasisInput& x)
{
    validate_network(network);
    check_basis_input(network, x);
    TensorNetwork out = network;
    NodeId next = network.max_node_id() + 1;
    for (const auto& [slot, value] : x) {
        TensorNode hot(next, {network.slot_dim(slot)});
        hot.set({value}, Scalar(1));
        out.add_node(std::move(hot));
        out.add_edge(slot, {next, 0});
        ++next;
    }
    return out;
}

Scalar evaluate(const TensorNetwork& network, const BasisInput& x)
{
    return contract_closed(pin_inputs(network, x));
}

Scalar evaluate_vectors(const TensorNetwork& network, const VectorInput& psi)
{
    validate_network(network);
    const auto phys = network.physical_edges();
    if (psi.size() != phys.size()) {
        throw Error(ErrorKind::NotTotal, "vector input must cover exactly the physical edges");
    }
    TensorNetwork out = network;
    NodeId next = network.max_node_id() + 1;
    for (SlotRef slot : phys) {
        auto it = psi.find(slot);
        if (it == psi.end()) {
            throw Error(ErrorKind::NotTotal, "no vector for a physical edge");
        }
        const int dim = network.slot_dim(slot);
        if (static_cast<int>(it->second.size()) != dim) {
            throw Error(ErrorKind::LengthMismatch, "vector length differs from edge dimension");
        }
        TensorNode vec(next, {dim});
        for (int i = 0; i < dim; ++i) {
            vec.set({i}, it->second[static_cast<std::size_t>(i)]);
        }
        out.add_node(std::move(vec));
        out.add_edge(slot, {next, 0});
        ++next;
    }
    return contract_closed(out);
}

} // namespace tnz

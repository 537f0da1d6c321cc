#include "tnz/certify.hpp"

#include "tnz/error.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace tnz
{

namespace
{

std::uint64_t checked_product(const std::vector<int>& dims, std::uint64_t cap)
{
    std::uint64_t size = 1;
    for (int d : dims) {
        if (size > cap / static_cast<std::uint64_t>(d)) {
            throw Error(ErrorKind::TooLarge, "block map exceeds the size cap");
        }
        size *= static_cast<std::uint64_t>(d);
    }
    return size;
}

Eigen::Index mixed_radix(const std::vector<int>& digits, const std::vector<int>& dims)
{
    Eigen::Index out = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        out = out * dims[i] + digits[i];
    }
    return out;
}

/// Backtracking state for search_nonneg_witness.
class WitnessSearch
{
  public:
    explicit WitnessSearch(const TensorNetwork& network) : network_(network)
    {
        for (const auto& n : network.nodes()) {
            assigned_[n.id()].assign(static_cast<std::size_t>(n.rank()), -1);
        }
        for (SlotRef s : network.physical_edges()) {
            vars_.push_back({{s}, network.slot_dim(s), true, 0});
        }
        std::vector<std::pair<SlotRef, EdgeId>> virtuals;
        for (EdgeId e = 0; e < network.edge_count(); ++e) {
            const auto& edge = network.edges()[e];
            virtuals.emplace_back(std::min(edge.a, edge.b), e);
        }
        std::sort(virtuals.begin(), virtuals.end());
        for (const auto& [key, e] : virtuals) {
            const auto& edge = network.edges()[e];
            vars_.push_back({{edge.a, edge.b}, network.bond_dim(e), false, e});
        }
    }

    std::optional<NonNegWitness> run()
    {
        if (!network_.global_scalar().is_positive_real()) {
            return std::nullopt;
        }
        for (const auto& n : network_.nodes()) {
            if (!consistent(n.id())) {
                return std::nullopt;
            }
        }
        if (!descend(0)) {
            return std::nullopt;
        }
        NonNegWitness w;
        w.labeling.values.assign(network_.edge_count(), 0);
        for (const auto& v : vars_) {
            const SlotRef s = v.slots.front();
            const int value = assigned_.at(s.node)[static_cast<std::size_t>(s.slot)];
            if (v.physical) {
                w.x[s] = value;
            } else {
                w.labeling.values[v.edge] = value;
            }
        }
        return w;
    }

  private:
    struct Var {
        std::vector<SlotRef> slots;
        int dim;
        bool physical;
        EdgeId edge;
    };

    bool consistent(NodeId id) const
    {
        const auto& current = assigned_.at(id);
        for (const auto& [idx, value] : network_.node(id).entries()) {
            bool match = true;
            for (std::size_t s = 0; s < idx.size(); ++s) {
                if (current[s] >= 0 && current[s] != idx[s]) {
                    match = false;
                    break;
                }
            }
            if (match) {
                return true;
            }
        }
        return false;
    }

    bool descend(std::size_t i)
    {
        if (i == vars_.size()) {
            return true;
        }
        const Var& var = vars_[i];
        for (int value = 0; value < var.dim; ++value) {
            for (SlotRef s : var.slots) {
                assigned_[s.node][static_cast<std::size_t>(s.slot)] = value;
            }
            bool ok = true;
            for (SlotRef s : var.slots) {
                ok = ok && consistent(s.node);
            }
            if (ok && descend(i + 1)) {
                return true;
            }
        }
        for (SlotRef s : var.slots) {
            assigned_[s.node][static_cast<std::size_t>(s.slot)] = -1;
        }
        return false;
    }

    const TensorNetwork& network_;
    std::map<NodeId, std::vector<int>> assigned_;
    std::vector<Var> vars_;
};

/// <T|T> restricted to the fixed physical values: T's nodes, an entrywise
/// conjugated copy (ids shifted), open legs joined pairwise, fixed legs
/// pinned with one-hot nodes on both copies.
TensorNetwork doubled_network(const TensorNetwork& network, const BasisInput& fixed)
{
    const NodeId shift = network.max_node_id();
    TensorNetwork out;
    for (const auto& n : network.nodes()) {
        out.add_node(n);
    }
    for (const auto& n : network.nodes()) {
        TensorNode copy(n.id() + shift, n.dims());
        TensorNode::Entries entries;
        for (const auto& [idx, value] : n.entries()) {
            entries.emplace(idx, value.conj());
        }
        copy.assign(std::move(entries));
        out.add_node(std::move(copy));
    }
    for (const auto& e : network.edges()) {
        out.add_edge(e.a, e.b);
        out.add_edge({e.a.node + shift, e.a.slot}, {e.b.node + shift, e.b.slot});
    }
    NodeId next = 2 * shift + 1;
    for (SlotRef s : network.physical_edges()) {
        const SlotRef mirror{s.node + shift, s.slot};
        auto it = fixed.find(s);
        if (it == fixed.end()) {
            out.add_edge(s, mirror);
            continue;
        }
        for (SlotRef leg : {s, mirror}) {
            TensorNode hot(next, {network.slot_dim(s)});
            hot.set({it->second}, Scalar(1));
            out.add_node(std::move(hot));
            out.add_edge(leg, {next, 0});
            ++next;
        }
    }
    out.set_global_scalar(Scalar(network.global_scalar().norm2()));
    return out;
}

} // namespace

bool is_nonnegative(const TensorNetwork& network)
{
    if (!network.global_scalar().is_nonneg_real()) {
        return false;
    }
    for (const auto& n : network.nodes()) {
        for (const auto& [idx, value] : n.entries()) {
            if (!value.is_nonneg_real()) {
                return false;
            }
        }
    }
    return true;
}

bool verify_nonneg_witness(const TensorNetwork& network, const NonNegWitness& w)
{
    validate_network(network);
    if (!is_nonnegative(network)) {
        throw Error(ErrorKind::NotNonNegative, "network has an entry that is not a non-negative real");
    }
    try {
        check_basis_input(network, w.x);
    } catch (const Error& e) {
        throw Error(ErrorKind::InvalidWitness, e.what());
    }
    check_labeling(network, w.labeling);

    std::map<NodeId, MultiIndex> idx;
    for (const auto& n : network.nodes()) {
        idx[n.id()].assign(static_cast<std::size_t>(n.rank()), 0);
    }
    for (const auto& [s, value] : w.x) {
        idx[s.node][static_cast<std::size_t>(s.slot)] = value;
    }
    for (EdgeId e = 0; e < network.edge_count(); ++e) {
        const auto& edge = network.edges()[e];
        idx[edge.a.node][static_cast<std::size_t>(edge.a.slot)] = w.labeling.values[e];
        idx[edge.b.node][static_cast<std::size_t>(edge.b.slot)] = w.labeling.values[e];
    }
    Scalar product = network.global_scalar();
    for (const auto& n : network.nodes()) {
        product *= n.at(idx[n.id()]);
    }
    return product.is_positive_real();
}

std::optional<NonNegWitness> search_nonneg_witness(const TensorNetwork& network)
{
    validate_network(network);
    if (!is_nonnegative(network)) {
        throw Error(ErrorKind::NotNonNegative, "network has an entry that is not a non-negative real");
    }
    return WitnessSearch(network).run();
}

std::vector<BlockMap> block_maps(const TensorNetwork& network, const InjectivePartition& partition,
                                 std::uint64_t cap)
{
    validate_network(network);
    std::map<NodeId, std::size_t> block_of;
    for (std::size_t b = 0; b < partition.blocks.size(); ++b) {
        if (partition.blocks[b].empty()) {
            throw Error(ErrorKind::NotAPartition, "block " + std::to_string(b + 1) + " is empty");
        }
        for (NodeId id : partition.blocks[b]) {
            if (!network.has_node(id)) {
                throw Error(ErrorKind::NotAPartition, "unknown node " + std::to_string(id));
            }
            if (!block_of.emplace(id, b).second) {
                throw Error(ErrorKind::NotAPartition, "node " + std::to_string(id) + " in two blocks");
            }
        }
    }
    if (block_of.size() != network.node_count()) {
        throw Error(ErrorKind::NotAPartition, "blocks do not cover every node");
    }
    const auto phys = network.physical_edges();

    std::vector<BlockMap> maps;
    for (std::size_t b = 0; b < partition.blocks.size(); ++b) {
        const std::set<NodeId> members(partition.blocks[b].begin(), partition.blocks[b].end());

        // Connectivity through internal edges.
        std::set<NodeId> reached{*members.begin()};
        std::queue<NodeId> frontier;
        frontier.push(*members.begin());
        while (!frontier.empty()) {
            const NodeId u = frontier.front();
            frontier.pop();
            for (const auto& e : network.edges()) {
                for (auto [from, to] : {std::pair{e.a.node, e.b.node}, std::pair{e.b.node, e.a.node}}) {
                    if (from == u && members.contains(to) && reached.insert(to).second) {
                        frontier.push(to);
                    }
                }
            }
        }
        if (reached.size() != members.size()) {
            throw Error(ErrorKind::DisconnectedBlock, "block " + std::to_string(b + 1) + " is not connected");
        }

        BlockMap bm;
        bm.block = b;
        for (SlotRef s : phys) {
            if (members.contains(s.node)) {
                bm.physical.push_back(s);
            }
        }
        if (bm.physical.empty()) {
            throw Error(ErrorKind::NoPhysicalEdge, "block " + std::to_string(b + 1) + " has no physical edge");
        }

        TensorNetwork sub;
        for (const auto& n : network.nodes()) {
            if (members.contains(n.id())) {
                sub.add_node(n);
            }
        }
        std::vector<std::pair<SlotRef, EdgeId>> boundary;
        for (EdgeId e = 0; e < network.edge_count(); ++e) {
            const auto& edge = network.edges()[e];
            const bool in_a = members.contains(edge.a.node);
            const bool in_b = members.contains(edge.b.node);
            if (in_a && in_b) {
                sub.add_edge(edge.a, edge.b);
            } else if (in_a || in_b) {
                boundary.emplace_back(in_a ? edge.a : edge.b, e);
            }
        }
        std::sort(boundary.begin(), boundary.end());
        for (const auto& [slot, e] : boundary) {
            bm.boundary_slots.push_back(slot);
            bm.boundary.push_back(e);
        }
        if (b == 0) {
            sub.set_global_scalar(network.global_scalar());
        }

        std::vector<int> row_dims, col_dims;
        for (SlotRef s : bm.physical) {
            row_dims.push_back(network.slot_dim(s));
        }
        for (SlotRef s : bm.boundary_slots) {
            col_dims.push_back(network.slot_dim(s));
        }
        const std::uint64_t rows = checked_product(row_dims, cap);
        const std::uint64_t cols = checked_product(col_dims, cap);
        if (rows > cap / cols) {
            throw Error(ErrorKind::TooLarge, "block map exceeds the size cap");
        }
        const ContractionPlan plan = plan_contraction(sub);
        if (plan.estimated_max_intermediate_entries > cap) {
            throw Error(ErrorKind::TooLarge, "block contraction exceeds the size cap");
        }
        const TensorNode tensor = contract_to_tensor(sub, plan);

        // Slots of `tensor` follow sub.physical_edges(): sorted block
        // physical slots and boundary slots interleaved.
        const auto sub_phys = sub.physical_edges();
        std::vector<std::pair<bool, std::size_t>> role(sub_phys.size());
        for (std::size_t i = 0; i < sub_phys.size(); ++i) {
            auto pit = std::find(bm.physical.begin(), bm.physical.end(), sub_phys[i]);
            if (pit != bm.physical.end()) {
                role[i] = {true, static_cast<std::size_t>(pit - bm.physical.begin())};
            } else {
                auto bit = std::find(bm.boundary_slots.begin(), bm.boundary_slots.end(), sub_phys[i]);
                role[i] = {false, static_cast<std::size_t>(bit - bm.boundary_slots.begin())};
            }
        }
        bm.map = Matrix::Constant(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols), Scalar(0));
        std::vector<int> row_digits(row_dims.size()), col_digits(col_dims.size());
        for (const auto& [idx, value] : tensor.entries()) {
            for (std::size_t i = 0; i < idx.size(); ++i) {
                (role[i].first ? row_digits : col_digits)[role[i].second] = idx[i];
            }
            bm.map(mixed_radix(row_digits, row_dims), mixed_radix(col_digits, col_dims)) = value;
        }
        maps.push_back(std::move(bm));
    }
    return maps;
}

bool check_injective(const TensorNetwork& network, const InjectivePartition& partition, std::uint64_t cap)
{
    for (const auto& bm : block_maps(network, partition, cap)) {
        if (!has_full_column_rank(bm.map)) {
            return false;
        }
    }
    return true;
}

GroupedVectorInput injective_certificate(const TensorNetwork& network, const InjectivePartition& partition,
                                         std::uint64_t cap)
{
    GroupedVectorInput out;
    for (const auto& bm : block_maps(network, partition, cap)) {
        if (!has_full_column_rank(bm.map)) {
            throw Error(ErrorKind::NotInjective, "block " + std::to_string(bm.block + 1) + " is not injective");
        }
        // Boundary output of the block fed with psi is L^T psi; ask for |0..0>.
        Vector target = Vector::Constant(bm.map.cols(), Scalar(0));
        target(0) = Scalar(1);
        const Matrix transposed = bm.map.transpose();
        const auto psi = solve_any(transposed, target);
        if (!psi) {
            throw Error(ErrorKind::SolveFailed, "transpose system of an injective block has no solution");
        }
        BlockVector v;
        v.physical = bm.physical;
        v.amplitudes.assign(psi->data(), psi->data() + psi->size());
        out.push_back(std::move(v));
    }
    return out;
}

Scalar evaluate_grouped(const TensorNetwork& network, const GroupedVectorInput& input)
{
    validate_network(network);
    const auto phys = network.physical_edges();
    std::set<SlotRef> covered;
    TensorNetwork closed = network;
    NodeId next = network.max_node_id() + 1;
    for (const auto& group : input) {
        std::vector<int> dims;
        for (SlotRef s : group.physical) {
            if (!std::binary_search(phys.begin(), phys.end(), s) || !covered.insert(s).second) {
                throw Error(ErrorKind::NotTotal, "groups must partition the physical edges");
            }
            dims.push_back(network.slot_dim(s));
        }
        TensorNode node(next, dims);
        if (node.dense_size() != group.amplitudes.size()) {
            throw Error(ErrorKind::LengthMismatch, "group vector length differs from its dimension");
        }
        MultiIndex idx(dims.size(), 0);
        for (const Scalar& a : group.amplitudes) {
            node.set(idx, a);
            for (std::size_t s = idx.size(); s-- > 0;) {
                if (++idx[s] < dims[s]) {
                    break;
                }
                idx[s] = 0;
            }
        }
        closed.add_node(std::move(node));
        for (std::size_t i = 0; i < group.physical.size(); ++i) {
            closed.add_edge(group.physical[i], {next, static_cast<int>(i)});
        }
        ++next;
    }
    if (covered.size() != phys.size()) {
        throw Error(ErrorKind::NotTotal, "groups must partition the physical edges");
    }
    return contract_closed(closed);
}

std::optional<VectorInput> as_vector_input(const GroupedVectorInput& input)
{
    VectorInput out;
    for (const auto& group : input) {
        if (group.physical.size() != 1) {
            return std::nullopt;
        }
        out[group.physical.front()] = group.amplitudes;
    }
    return out;
}

std::optional<BasisInput> basis_witness_peel(const TensorNetwork& network, std::uint64_t cap)
{
    validate_network(network);
    auto norm = [&](const BasisInput& fixed) {
        const TensorNetwork doubled = doubled_network(network, fixed);
        const ContractionPlan plan = plan_contraction(doubled);
        if (plan.estimated_max_intermediate_entries > cap) {
            throw Error(ErrorKind::TooLarge, "doubled network exceeds the size cap");
        }
        return contract_closed(doubled, plan);
    };
    BasisInput fixed;
    if (norm(fixed).is_zero()) {
        return std::nullopt;
    }
    for (SlotRef s : network.physical_edges()) {
        const int dim = network.slot_dim(s);
        bool found = false;
        for (int a = 0; a < dim && !found; ++a) {
            fixed[s] = a;
            found = !norm(fixed).is_zero();
        }
        if (!found) {
            throw Error(ErrorKind::SolveFailed, "peeling lost a non-zero completion");
        }
    }
    return fixed;
}

TnzOracle exact_tnz_oracle(std::uint64_t cap)
{
    return [cap](const GtnzInstance& instance) {
        const ContractionPlan plan = plan_contraction(instance.network);
        if (plan.estimated_max_intermediate_entries > cap) {
            throw Error(ErrorKind::TooLarge, "oracle contraction exceeds the size cap");
        }
        const TensorNode amplitudes = contract_to_tensor(instance.network, plan);
        const Rational alpha2 = instance.alpha * instance.alpha;
        for (const auto& [idx, value] : amplitudes.entries()) {
            if (value.norm2() >= alpha2) {
                return true;
            }
        }
        // Amplitudes not stored are zero.
        return sgn(instance.alpha) == 0;
    };
}

bool decide_at_least_k(const Cnf2& formula, std::uint64_t k, const TnzOracle& oracle,
                       std::optional<std::uint64_t> loop_cap)
{
    validate_cnf2(formula);
    if (formula.num_vars > 62) {
        throw Error(ErrorKind::OutOfRange, "too many variables for a 64-bit count");
    }
    const std::uint64_t max_count = std::uint64_t{1} << formula.num_vars;
    if (k < 1 || k > max_count) {
        throw Error(ErrorKind::OutOfRange, "k must lie in [1, 2^t]");
    }
    std::uint64_t last = max_count;
    if (loop_cap && *loop_cap < max_count - k) {
        last = k + *loop_cap;
    }
    const TensorNetwork counting = compile_sharp2sat(formula);
    for (std::uint64_t guess = k; guess <= last; ++guess) {
        const Scalar shift(Rational(-mpz_class(std::to_string(guess))));
        const GtnzInstance instance = make_gtnz_instance(add_scalar(counting, shift), 1, 0);
        if (!oracle(instance)) {
            return true;
        }
    }
    return false;
}

bool decide_at_least_k_threshold(const Cnf2& formula, std::uint64_t k, const TnzOracle& oracle)
{
    return oracle(threshold_instance(formula, k));
}

std::uint64_t count_via_gtnz(const Cnf2& formula, const TnzOracle& oracle)
{
    validate_cnf2(formula);
    if (formula.num_vars > 62) {
        throw Error(ErrorKind::OutOfRange, "too many variables for a 64-bit count");
    }
    std::uint64_t lo = 0;
    std::uint64_t hi = std::uint64_t{1} << formula.num_vars;
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo + 1) / 2;
        if (decide_at_least_k_threshold(formula, mid, oracle)) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    return lo;
}

} // namespace tnz

#include "tnz/reduce.hpp"

#include "tnz/contract.hpp"
#include "tnz/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace tnz
{

namespace
{

Rational pow2(int t)
{
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(t));
    return Rational(p);
}

/// Calls visit(idx) for every multi-index of dims, last slot fastest.
void for_each_index(const std::vector<int>& dims, const std::function<void(const MultiIndex&)>& visit)
{
    MultiIndex idx(dims.size(), 0);
    while (true) {
        visit(idx);
        std::size_t s = dims.size();
        while (s > 0) {
            --s;
            if (++idx[s] < dims[s]) {
                break;
            }
            idx[s] = 0;
            if (s == 0) {
                return;
            }
        }
        if (dims.empty()) {
            return;
        }
    }
}

/// Union-find over node ids; returns component representative per node.
std::map<NodeId, NodeId> components(const TensorNetwork& network)
{
    std::map<NodeId, NodeId> parent;
    for (const auto& n : network.nodes()) {
        parent[n.id()] = n.id();
    }
    std::function<NodeId(NodeId)> find = [&](NodeId v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    for (const auto& e : network.edges()) {
        NodeId a = find(e.a.node), b = find(e.b.node);
        if (a != b) {
            parent[std::max(a, b)] = std::min(a, b);
        }
    }
    std::map<NodeId, NodeId> rep;
    for (const auto& n : network.nodes()) {
        rep[n.id()] = find(n.id());
    }
    return rep;
}

/// Nodes of one component with their internal edges and unit global scalar.
TensorNetwork subnetwork(const TensorNetwork& network, const std::set<NodeId>& ids)
{
    TensorNetwork sub;
    for (const auto& n : network.nodes()) {
        if (ids.contains(n.id())) {
            sub.add_node(n);
        }
    }
    for (const auto& e : network.edges()) {
        if (ids.contains(e.a.node) && ids.contains(e.b.node)) {
            sub.add_edge(e.a, e.b);
        }
    }
    return sub;
}

} // namespace

void validate_cnf2(const Cnf2& formula)
{
    if (formula.num_vars < 0) {
        throw Error(ErrorKind::InvalidFormula, "negative variable count");
    }
    for (std::size_t c = 0; c < formula.clauses.size(); ++c) {
        for (const Literal& l : {formula.clauses[c].first, formula.clauses[c].second}) {
            if (l.var < 0 || l.var >= formula.num_vars) {
                throw Error(ErrorKind::InvalidFormula,
                            "clause " + std::to_string(c + 1) + " uses an undeclared variable");
            }
        }
    }
}

void validate_graph(const SimpleGraph& graph)
{
    if (graph.vertices < 0) {
        throw Error(ErrorKind::InvalidGraph, "negative vertex count");
    }
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : graph.edges) {
        if (u < 0 || v < 0 || u >= graph.vertices || v >= graph.vertices) {
            throw Error(ErrorKind::InvalidGraph, "edge endpoint out of range");
        }
        if (u == v) {
            throw Error(ErrorKind::InvalidGraph, "loop at vertex " + std::to_string(u + 1));
        }
        if (!seen.insert(std::minmax(u, v)).second) {
            throw Error(ErrorKind::InvalidGraph, "repeated edge " + std::to_string(u + 1) + " " +
                                                     std::to_string(v + 1));
        }
    }
}

GtnzInstance make_gtnz_instance(TensorNetwork network, Rational alpha, Rational beta)
{
    if (sgn(beta) < 0 || alpha < beta || alpha - beta < 1) {
        throw Error(ErrorKind::OutOfRange, "thresholds need alpha >= beta >= 0 and alpha - beta >= 1");
    }
    return GtnzInstance{std::move(network), std::move(alpha), std::move(beta)};
}

TensorNetwork compile_sharp2sat(const Cnf2& formula)
{
    validate_cnf2(formula);
    const int t = formula.num_vars;
    std::vector<int> degree(static_cast<std::size_t>(t), 0);
    for (const auto& c : formula.clauses) {
        ++degree[static_cast<std::size_t>(c.first.var)];
        ++degree[static_cast<std::size_t>(c.second.var)];
    }

    TensorNetwork net;
    for (int v = 0; v < t; ++v) {
        const int deg = degree[static_cast<std::size_t>(v)];
        TensorNode node(v + 1, std::vector<int>(static_cast<std::size_t>(deg), 2));
        if (deg == 0) {
            node.set({}, Scalar(2));
        } else {
            node.set(MultiIndex(static_cast<std::size_t>(deg), 0), Scalar(1));
            node.set(MultiIndex(static_cast<std::size_t>(deg), 1), Scalar(1));
        }
        net.add_node(std::move(node));
    }
    std::vector<int> next_slot(static_cast<std::size_t>(t), 0);
    for (std::size_t c = 0; c < formula.clauses.size(); ++c) {
        const Clause& clause = formula.clauses[c];
        const NodeId id = t + static_cast<int>(c) + 1;
        TensorNode node(id, {2, 2});
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                const bool sat = (a == 1) == clause.first.positive || (b == 1) == clause.second.positive;
                if (sat) {
                    node.set({a, b}, Scalar(1));
                }
            }
        }
        net.add_node(std::move(node));
        int slot = 0;
        for (const Literal& l : {clause.first, clause.second}) {
            net.add_edge({l.var + 1, next_slot[static_cast<std::size_t>(l.var)]++}, {id, slot++});
        }
    }
    return net;
}

GtnzInstance threshold_instance(const Cnf2& formula, std::uint64_t k)
{
    validate_cnf2(formula);
    if (formula.num_vars > 62) {
        throw Error(ErrorKind::OutOfRange, "too many variables for a 64-bit count");
    }
    const std::uint64_t max_count = std::uint64_t{1} << formula.num_vars;
    if (k < 1 || k > max_count) {
        throw Error(ErrorKind::OutOfRange, "k must lie in [1, 2^t]");
    }
    TensorNetwork net = compile_sharp2sat(formula);
    const Rational two_t = pow2(formula.num_vars);
    const Rational kq{mpz_class(std::to_string(k))};
    net.set_global_scalar(Scalar(Rational(two_t / kq)));
    Rational beta = two_t * (kq - 1) / kq;
    return make_gtnz_instance(std::move(net), two_t, std::move(beta));
}

TensorNetwork add_scalar(const TensorNetwork& network, const Scalar& addend)
{
    validate_network(network);
    if (!network.is_closed()) {
        throw Error(ErrorKind::NotClosed, "add_scalar needs a closed network");
    }
    if (network.node_count() == 0) {
        throw Error(ErrorKind::EmptyNetwork, "add_scalar needs at least one node");
    }

    TensorNetwork out;
    if (network.edge_count() == 0) {
        // Every node is a 0-slot scalar: put M + N on v* and 1 elsewhere.
        const NodeId v_star = std::min_element(network.nodes().begin(), network.nodes().end(),
                                               [](const auto& a, const auto& b) { return a.id() < b.id(); })
                                  ->id();
        const Scalar total = contract_closed(network) + addend;
        for (const auto& n : network.nodes()) {
            TensorNode copy(n.id(), {});
            copy.set({}, n.id() == v_star ? total : Scalar(1));
            out.add_node(std::move(copy));
        }
        return out;
    }

    const auto rep = components(network);
    std::map<NodeId, int> incident;
    for (const auto& e : network.edges()) {
        ++incident[e.a.node];
        ++incident[e.b.node];
    }
    std::map<NodeId, std::set<NodeId>> members;
    for (const auto& [id, r] : rep) {
        if (incident.contains(id)) {
            members[r].insert(id);
        }
    }
    // Distinguished component: the one holding the smallest node with edges.
    const NodeId v_star = incident.begin()->first;
    const NodeId star_rep = rep.at(v_star);

    // Factor folded into v*'s ordinary entries so the sum is exactly M + N
    // even when the network is disconnected or carries a global scalar.
    Scalar fold = network.global_scalar();
    std::map<NodeId, Scalar> all_switch;
    for (const auto& n : network.nodes()) {
        if (!incident.contains(n.id())) {
            fold *= n.at({});
        } else {
            all_switch[n.id()] = Scalar(1);
        }
    }
    all_switch[v_star] = addend;
    for (const auto& [r, ids] : members) {
        if (r == star_rep) {
            continue;
        }
        // Other components must contribute a factor of exactly 1, so their
        // all-switch term is 1 - M_j and their value moves into v*.
        const Scalar m_j = contract_closed(subnetwork(network, ids));
        fold *= m_j;
        all_switch[*ids.begin()] = Scalar(1) - m_j;
    }

    for (const auto& n : network.nodes()) {
        if (!incident.contains(n.id())) {
            TensorNode one(n.id(), {});
            one.set({}, Scalar(1));
            out.add_node(std::move(one));
            continue;
        }
        std::vector<int> dims = n.dims();
        for (int& d : dims) {
            ++d;
        }
        TensorNode grown(n.id(), dims);
        TensorNode::Entries entries;
        for (const auto& [idx, value] : n.entries()) {
            entries.emplace(idx, n.id() == v_star ? value * fold : value);
        }
        entries.emplace(n.dims(), all_switch.at(n.id()));
        grown.assign(std::move(entries));
        out.add_node(std::move(grown));
    }
    for (const auto& e : network.edges()) {
        out.add_edge(e.a, e.b);
    }
    return out;
}

TensorNetwork compile_edge_coloring(const SimpleGraph& graph, int colors)
{
    validate_graph(graph);
    if (colors < 1) {
        throw Error(ErrorKind::InvalidGraph, "need at least one color");
    }
    std::vector<int> degree(static_cast<std::size_t>(graph.vertices), 0);
    for (auto [u, v] : graph.edges) {
        ++degree[static_cast<std::size_t>(u)];
        ++degree[static_cast<std::size_t>(v)];
    }
    TensorNetwork net;
    for (int v = 0; v < graph.vertices; ++v) {
        const int deg = degree[static_cast<std::size_t>(v)];
        TensorNode node(v + 1, std::vector<int>(static_cast<std::size_t>(deg), colors));
        TensorNode::Entries entries;
        if (deg <= colors) {
            for_each_index(node.dims(), [&](const MultiIndex& idx) {
                std::set<int> distinct(idx.begin(), idx.end());
                if (distinct.size() == idx.size()) {
                    entries.emplace(idx, Scalar(1));
                }
            });
        }
        node.assign(std::move(entries));
        net.add_node(std::move(node));
    }
    std::vector<int> next_slot(static_cast<std::size_t>(graph.vertices), 0);
    for (auto [u, v] : graph.edges) {
        net.add_edge({u + 1, next_slot[static_cast<std::size_t>(u)]++},
                     {v + 1, next_slot[static_cast<std::size_t>(v)]++});
    }
    return net;
}

TensorNetwork build_bell_mps(int n)
{
    if (n < 3) {
        throw Error(ErrorKind::TooSmall, "the Bell chain needs at least 3 sites");
    }
    TensorNetwork net;
    for (int i = 1; i <= n; ++i) {
        if (i == 1 || i == n) {
            // Slots: physical, bond. Accept all-equal labels.
            TensorNode end(i, {2, 2});
            end.set({0, 0}, Scalar(1));
            end.set({1, 1}, Scalar(1));
            net.add_node(std::move(end));
        } else {
            // Slots: physical, left bond, right bond. Physical 0, bonds equal.
            TensorNode mid(i, {2, 2, 2});
            mid.set({0, 0, 0}, Scalar(1));
            mid.set({0, 1, 1}, Scalar(1));
            net.add_node(std::move(mid));
        }
    }
    for (int i = 1; i < n; ++i) {
        const int right_slot = i == 1 ? 1 : 2;
        net.add_edge({i, right_slot}, {i + 1, 1});
    }
    return net;
}

BasisInput ClhNetwork::basis_input(const std::vector<int>& y) const
{
    if (y.size() != qudit_legs.size()) {
        throw Error(ErrorKind::NotTotal, "basis string length differs from qudit count");
    }
    BasisInput x;
    for (std::size_t q = 0; q < y.size(); ++q) {
        x[qudit_legs[q]] = y[q];
    }
    return x;
}

ClhNetwork compile_clh(const HamiltonianInstance& h, const std::vector<ProjectorGuess>& guesses,
                       const std::vector<int>& x, const ClhOptions& options)
{
    validate_instance(h);
    if (static_cast<int>(x.size()) != h.n) {
        throw Error(ErrorKind::IndexOutOfRange, "basis string length differs from n");
    }
    for (int v : x) {
        if (v < 0 || v >= h.D) {
            throw Error(ErrorKind::IndexOutOfRange, "basis string value outside [D]");
        }
    }
    std::vector<const ProjectorGuess*> by_term(h.terms.size(), nullptr);
    Rational energy = 0;
    for (const auto& g : guesses) {
        if (g.term >= h.terms.size() || by_term[g.term] != nullptr) {
            throw Error(ErrorKind::GuessRejected, "need exactly one guess per term");
        }
        bool ok = false;
        try {
            ok = verify_projector_guess(h, g);
        } catch (const Error& e) {
            throw Error(ErrorKind::GuessRejected, e.what());
        }
        if (!ok) {
            throw Error(ErrorKind::GuessRejected,
                        "guess for term " + std::to_string(g.term + 1) + " is not an eigenspace projector");
        }
        by_term[g.term] = &g;
        energy += g.lambda;
    }
    if (std::find(by_term.begin(), by_term.end(), nullptr) != by_term.end()) {
        throw Error(ErrorKind::GuessRejected, "need exactly one guess per term");
    }
    if (options.enforce_energy_threshold && energy > h.alpha) {
        throw Error(ErrorKind::GuessRejected, "guessed eigenvalues sum above alpha");
    }

    ClhNetwork out;
    TensorNetwork& net = out.network;
    for (int q = 0; q < h.n; ++q) {
        TensorNode hot(q + 1, {h.D});
        hot.set({x[static_cast<std::size_t>(q)]}, Scalar(1));
        net.add_node(std::move(hot));
        out.qudit_legs.push_back({q + 1, 0});
    }
    NodeId next = h.n + 1;
    for (std::size_t i = 0; i < h.terms.size(); ++i) {
        const auto& support = h.terms[i].support;
        const Matrix& proj = by_term[i]->projector;
        const int k = static_cast<int>(support.size());
        TensorNode node(next, std::vector<int>(static_cast<std::size_t>(2 * k), h.D));
        TensorNode::Entries entries;
        for (Eigen::Index r = 0; r < proj.rows(); ++r) {
            for (Eigen::Index c = 0; c < proj.cols(); ++c) {
                if (proj(r, c).is_zero()) {
                    continue;
                }
                MultiIndex idx(static_cast<std::size_t>(2 * k));
                Eigen::Index rv = r, cv = c;
                for (int j = k; j-- > 0; rv /= h.D, cv /= h.D) {
                    idx[static_cast<std::size_t>(j)] = static_cast<int>(cv % h.D);
                    idx[static_cast<std::size_t>(k + j)] = static_cast<int>(rv % h.D);
                }
                entries.emplace(std::move(idx), proj(r, c));
            }
        }
        node.assign(std::move(entries));
        net.add_node(std::move(node));
        for (int j = 0; j < k; ++j) {
            SlotRef& leg = out.qudit_legs[static_cast<std::size_t>(support[static_cast<std::size_t>(j)])];
            net.add_edge(leg, {next, j});
            leg = {next, k + j};
        }
        ++next;
    }
    Rational scale = 1;
    for (int q = 0; q < h.n; ++q) {
        scale *= h.D;
    }
    net.set_global_scalar(Scalar(scale));
    return out;
}

} // namespace tnz

#ifndef TNZ_TESTS_ORACLES_HPP
#define TNZ_TESTS_ORACLES_HPP

// Reference computations for tests. Nothing here calls the contraction
// engine; each oracle works straight from definitions.

#include "tnz/hamiltonian.hpp"
#include "tnz/network.hpp"
#include "tnz/reduce.hpp"

#include <cstdint>
#include <algorithm>
#include <functional>
#include <string>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace tnz::testing
{

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p)
{
    return std::bernoulli_distribution(p)(rng);
}

inline Rational random_rational(Rng& rng, int max_num = 5, int max_den = 4)
{
    Rational q(uniform(rng, -max_num, max_num), uniform(rng, 1, max_den));
    q.canonicalize();
    return q;
}

inline Scalar random_scalar(Rng& rng, bool complex)
{
    return complex && coin(rng, 0.5) ? Scalar(random_rational(rng), random_rational(rng))
                                     : Scalar(random_rational(rng));
}

inline Scalar random_nonneg(Rng& rng)
{
    Rational q(uniform(rng, 1, 5), uniform(rng, 1, 3));
    q.canonicalize();
    return Scalar(q);
}

inline TensorNode make_node(NodeId id, std::vector<int> dims,
                            const std::vector<std::pair<MultiIndex, Scalar>>& entries)
{
    TensorNode node(id, std::move(dims));
    for (const auto& [idx, value] : entries) {
        node.set(idx, value);
    }
    return node;
}

// ---------------------------------------------------------------- formulas

inline Cnf2 random_cnf2(Rng& rng, int max_vars, int max_clauses)
{
    Cnf2 f;
    f.num_vars = uniform(rng, 1, max_vars);
    const int m = uniform(rng, 0, max_clauses);
    for (int c = 0; c < m; ++c) {
        f.clauses.push_back({{uniform(rng, 0, f.num_vars - 1), coin(rng, 0.5)},
                             {uniform(rng, 0, f.num_vars - 1), coin(rng, 0.5)}});
    }
    return f;
}

inline std::uint64_t truth_table_count(const Cnf2& f)
{
    std::uint64_t count = 0;
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << f.num_vars); ++a) {
        auto value = [&](const Literal& l) { return (((a >> l.var) & 1) == 1) == l.positive; };
        bool sat = true;
        for (const auto& c : f.clauses) {
            if (!value(c.first) && !value(c.second)) {
                sat = false;
                break;
            }
        }
        count += sat ? 1 : 0;
    }
    return count;
}

// ------------------------------------------------------------------ graphs

inline SimpleGraph complete_graph(int n)
{
    SimpleGraph g{n, {}};
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            g.edges.emplace_back(u, v);
        }
    }
    return g;
}

inline SimpleGraph complete_bipartite(int a, int b)
{
    SimpleGraph g{a + b, {}};
    for (int u = 0; u < a; ++u) {
        for (int v = 0; v < b; ++v) {
            g.edges.emplace_back(u, a + v);
        }
    }
    return g;
}

inline SimpleGraph petersen_graph()
{
    SimpleGraph g{10, {}};
    for (int i = 0; i < 5; ++i) {
        g.edges.emplace_back(i, (i + 1) % 5);
        g.edges.emplace_back(i, i + 5);
        g.edges.emplace_back(5 + i, 5 + (i + 2) % 5);
    }
    return g;
}

/// Proper edge colorings by backtracking over edges.
inline std::uint64_t count_edge_colorings(const SimpleGraph& g, int colors)
{
    std::vector<int> color(g.edges.size(), -1);
    std::function<std::uint64_t(std::size_t)> go = [&](std::size_t e) -> std::uint64_t {
        if (e == g.edges.size()) {
            return 1;
        }
        std::uint64_t total = 0;
        for (int c = 0; c < colors; ++c) {
            bool ok = true;
            for (std::size_t f = 0; f < e && ok; ++f) {
                const bool adjacent = g.edges[f].first == g.edges[e].first || g.edges[f].first == g.edges[e].second ||
                                      g.edges[f].second == g.edges[e].first ||
                                      g.edges[f].second == g.edges[e].second;
                ok = !(adjacent && color[f] == c);
            }
            if (ok) {
                color[e] = c;
                total += go(e + 1);
            }
        }
        color[e] = -1;
        return total;
    };
    return go(0);
}

// ---------------------------------------------------------------- networks

struct NetworkShape {
    int min_nodes = 1;
    int max_nodes = 6;
    int max_edges = 8;
    int max_dim = 3;
    int max_physical = 0;
    double self_edge_probability = 0.05;
    double density = 0.6;
    bool complex = true;
    bool nonneg = false;
    bool random_global = false;
};

inline TensorNetwork random_network(Rng& rng, const NetworkShape& shape)
{
    const int n = uniform(rng, shape.min_nodes, shape.max_nodes);
    std::vector<std::vector<int>> dims(static_cast<std::size_t>(n));
    std::vector<std::pair<SlotRef, SlotRef>> edges;
    const int m = uniform(rng, 0, shape.max_edges);
    for (int e = 0; e < m; ++e) {
        const int a = uniform(rng, 0, n - 1);
        int b = uniform(rng, 0, n - 1);
        if (a == b && !coin(rng, shape.self_edge_probability)) {
            b = (a + 1) % n;
            if (a == b) {
                continue;
            }
        }
        const int d = uniform(rng, 1, shape.max_dim);
        auto& da = dims[static_cast<std::size_t>(a)];
        const SlotRef sa{a + 1, static_cast<int>(da.size())};
        da.push_back(d);
        auto& db = dims[static_cast<std::size_t>(b)];
        const SlotRef sb{b + 1, static_cast<int>(db.size())};
        db.push_back(d);
        edges.emplace_back(sa, sb);
    }
    const int p = uniform(rng, 0, shape.max_physical);
    for (int i = 0; i < p; ++i) {
        dims[static_cast<std::size_t>(uniform(rng, 0, n - 1))].push_back(uniform(rng, 1, shape.max_dim));
    }
    TensorNetwork t;
    for (int v = 0; v < n; ++v) {
        const auto& d = dims[static_cast<std::size_t>(v)];
        TensorNode node(v + 1, d);
        MultiIndex idx(d.size(), 0);
        while (true) {
            if (coin(rng, shape.density)) {
                node.set(idx, shape.nonneg ? random_nonneg(rng) : random_scalar(rng, shape.complex));
            }
            std::size_t s = idx.size();
            while (s > 0 && ++idx[s - 1] == d[s - 1]) {
                idx[--s] = 0;
            }
            if (s == 0) {
                break;
            }
        }
        t.add_node(std::move(node));
    }
    for (const auto& [a, b] : edges) {
        t.add_edge(a, b);
    }
    if (shape.random_global) {
        t.set_global_scalar(shape.nonneg ? random_nonneg(rng) : random_scalar(rng, shape.complex));
    }
    return t;
}

/// Calls visit(x) for every basis input on the physical edges.
inline void for_each_input(const TensorNetwork& t, const std::function<void(const BasisInput&)>& visit)
{
    const auto phys = t.physical_edges();
    std::vector<int> digits(phys.size(), 0);
    while (true) {
        BasisInput x;
        for (std::size_t i = 0; i < phys.size(); ++i) {
            x[phys[i]] = digits[i];
        }
        visit(x);
        std::size_t s = phys.size();
        while (s > 0 && ++digits[s - 1] == t.slot_dim(phys[s - 1])) {
            digits[--s] = 0;
        }
        if (s == 0) {
            return;
        }
    }
}

// ------------------------------------------------------------ linear algebra

/// Determinant by the Leibniz formula (small matrices only).
inline Scalar leibniz_det(const Matrix& m)
{
    const auto n = static_cast<std::size_t>(m.rows());
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) {
        perm[i] = i;
    }
    Scalar det(0);
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                inversions += perm[i] > perm[j] ? 1 : 0;
            }
        }
        Scalar term(inversions % 2 == 0 ? 1 : -1);
        for (std::size_t i = 0; i < n; ++i) {
            term *= m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(perm[i]));
        }
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

/// Full column rank iff the Gram matrix A^H A is non-singular.
inline bool gram_full_column_rank(const Matrix& a)
{
    Matrix gram(a.cols(), a.cols());
    for (Eigen::Index i = 0; i < a.cols(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            Scalar s(0);
            for (Eigen::Index r = 0; r < a.rows(); ++r) {
                s += a(r, i).conj() * a(r, j);
            }
            gram(i, j) = s;
        }
    }
    return !leibniz_det(gram).is_zero();
}

// ------------------------------------------------------------ Hamiltonians

inline std::vector<int> digits_of(std::uint64_t index, int n, int D)
{
    std::vector<int> out(static_cast<std::size_t>(n));
    for (int q = n - 1; q >= 0; --q) {
        out[static_cast<std::size_t>(q)] = static_cast<int>(index % static_cast<std::uint64_t>(D));
        index /= static_cast<std::uint64_t>(D);
    }
    return out;
}

/// <r| op_S (x) I |c> on n qudits, straight from the definition.
inline Scalar embedded_entry(const Matrix& op, const std::vector<int>& support, const std::vector<int>& r,
                             const std::vector<int>& c, int D)
{
    std::vector<bool> in_support(r.size(), false);
    Eigen::Index row = 0, col = 0;
    for (int q : support) {
        in_support[static_cast<std::size_t>(q)] = true;
        row = row * D + r[static_cast<std::size_t>(q)];
        col = col * D + c[static_cast<std::size_t>(q)];
    }
    for (std::size_t q = 0; q < r.size(); ++q) {
        if (!in_support[q] && r[q] != c[q]) {
            return Scalar(0);
        }
    }
    return op(row, col);
}

/// Dense product of the embedded guesses in ascending term order.
inline Matrix dense_ground_projector(const HamiltonianInstance& h, const std::vector<ProjectorGuess>& guesses)
{
    std::uint64_t dim = 1;
    for (int q = 0; q < h.n; ++q) {
        dim *= static_cast<std::uint64_t>(h.D);
    }
    const auto d = static_cast<Eigen::Index>(dim);
    std::vector<ProjectorGuess> ordered = guesses;
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const ProjectorGuess& a, const ProjectorGuess& b) { return a.term < b.term; });
    Matrix product = Matrix::Identity(d, d);
    for (const auto& g : ordered) {
        Matrix embedded(d, d);
        for (Eigen::Index r = 0; r < d; ++r) {
            for (Eigen::Index c = 0; c < d; ++c) {
                embedded(r, c) = embedded_entry(g.projector, h.terms[g.term].support,
                                                digits_of(static_cast<std::uint64_t>(r), h.n, h.D),
                                                digits_of(static_cast<std::uint64_t>(c), h.n, h.D), h.D);
            }
        }
        Matrix next(d, d);
        for (Eigen::Index r = 0; r < d; ++r) {
            for (Eigen::Index c = 0; c < d; ++c) {
                Scalar s(0);
                for (Eigen::Index k = 0; k < d; ++k) {
                    s += product(r, k) * embedded(k, c);
                }
                next(r, c) = s;
            }
        }
        product = next;
    }
    return product;
}

inline Matrix pauli_string(const std::string& letters)
{
    Matrix out = Matrix::Identity(1, 1);
    for (char ch : letters) {
        Matrix p(2, 2);
        switch (ch) {
        case 'X':
            p << Scalar(0), Scalar(1), Scalar(1), Scalar(0);
            break;
        case 'Z':
            p << Scalar(1), Scalar(0), Scalar(0), Scalar(-1);
            break;
        case 'Y':
            p << Scalar(0), Scalar(Rational(0), Rational(-1)), Scalar(Rational(0), Rational(1)), Scalar(0);
            break;
        default:
            p = Matrix::Identity(2, 2);
        }
        out = kron(out, p);
    }
    return out;
}

/// (I + P) / 2 for a Pauli string P.
inline Matrix plus_projector(const std::string& letters)
{
    const Matrix p = pauli_string(letters);
    const Matrix sum = Matrix::Identity(p.rows(), p.cols()) + p;
    return Scalar(Rational(1, 2)) * sum;
}

/// Diagonal 0/1 projector on k qudits keeping the listed basis indices.
inline Matrix diagonal_projector(Eigen::Index dim, const std::set<Eigen::Index>& keep)
{
    Matrix m = Matrix::Constant(dim, dim, Scalar(0));
    for (Eigen::Index i : keep) {
        m(i, i) = Scalar(1);
    }
    return m;
}

/// Projector onto the satisfying assignments of a 2-clause on qubits (a, b).
inline LocalTerm clause_term(const Clause& c)
{
    std::set<Eigen::Index> keep;
    for (int va = 0; va < 2; ++va) {
        for (int vb = 0; vb < 2; ++vb) {
            if ((va == 1) == c.first.positive || (vb == 1) == c.second.positive) {
                keep.insert(va * 2 + vb);
            }
        }
    }
    return {{c.first.var, c.second.var}, diagonal_projector(4, keep)};
}

// -------------------------------------------------------- injective networks

struct InjectiveCase {
    TensorNetwork network;
    std::vector<std::vector<NodeId>> blocks;
};

/// Blocks of one or two nodes. Every node is an injective map from all its
/// virtual slots to its single physical slot (last slot): a random
/// non-singular square block on top of random rows, rows then shuffled. A
/// block of two such nodes is injective too (composition of injective maps).
/// With `mutate`, one single-node block gets a zero or repeated column.
inline InjectiveCase injective_case(Rng& rng, bool mutate)
{
    const int nblocks = uniform(rng, 2, 4);
    std::vector<std::vector<int>> members;
    int next = 1;
    for (int b = 0; b < nblocks; ++b) {
        const bool pair = b > 0 && coin(rng, 0.4);
        members.push_back(pair ? std::vector<int>{next, next + 1} : std::vector<int>{next});
        next += pair ? 2 : 1;
    }
    const int nodes = next - 1;
    std::vector<std::vector<int>> dims(static_cast<std::size_t>(nodes + 1));
    std::vector<std::pair<SlotRef, SlotRef>> edges;
    auto connect = [&](int u, int v) {
        const int d = uniform(rng, 1, 2);
        auto& du = dims[static_cast<std::size_t>(u)];
        const SlotRef su{u, static_cast<int>(du.size())};
        du.push_back(d);
        auto& dv = dims[static_cast<std::size_t>(v)];
        const SlotRef sv{v, static_cast<int>(dv.size())};
        dv.push_back(d);
        edges.emplace_back(su, sv);
    };
    auto pick = [&](int b) {
        const auto& m = members[static_cast<std::size_t>(b)];
        return m[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(m.size()) - 1))];
    };
    for (const auto& m : members) {
        if (m.size() == 2) {
            connect(m[0], m[1]);
        }
    }
    for (int b = 1; b < nblocks; ++b) {
        connect(pick(uniform(rng, 0, b - 1)), pick(b));
    }
    if (coin(rng, 0.5)) {
        const int a = uniform(rng, 0, nblocks - 1);
        const int b = uniform(rng, 0, nblocks - 1);
        if (a != b) {
            connect(pick(a), pick(b));
        }
    }

    int mutant = -1;
    if (mutate) {
        std::vector<int> singles;
        for (const auto& m : members) {
            if (m.size() == 1) {
                singles.push_back(m[0]);
            }
        }
        mutant = singles[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(singles.size()) - 1))];
    }

    InjectiveCase out;
    for (int v = 1; v <= nodes; ++v) {
        std::vector<int> d = dims[static_cast<std::size_t>(v)];
        int cols = 1;
        for (int x : d) {
            cols *= x;
        }
        const int rows = cols + uniform(rng, 0, 1);
        d.push_back(rows);
        Matrix m = Matrix::Constant(rows, cols, Scalar(0));
        for (int c = 0; c < cols; ++c) {
            m(c, c) = Scalar(Rational(uniform(rng, 1, 3), uniform(rng, 1, 2)));
            for (int r = c + 1; r < rows; ++r) {
                m(r, c) = random_scalar(rng, true);
            }
            for (int r = 0; r < c; ++r) {
                m(r, c) = coin(rng, 0.5) ? random_scalar(rng, false) : Scalar(0);
            }
        }
        std::vector<int> order(static_cast<std::size_t>(rows));
        for (int r = 0; r < rows; ++r) {
            order[static_cast<std::size_t>(r)] = r;
        }
        std::shuffle(order.begin(), order.end(), rng);
        if (v == mutant) {
            const int victim = uniform(rng, 0, cols - 1);
            const bool repeat = victim > 0 && coin(rng, 0.5);
            for (int r = 0; r < rows; ++r) {
                m(r, victim) = repeat ? m(r, 0) : Scalar(0);
            }
        }
        TensorNode node(v, d);
        MultiIndex idx(d.size(), 0);
        for (int c = 0; c < cols; ++c) {
            for (int r = 0; r < rows; ++r) {
                int rem = c;
                for (std::size_t s = d.size() - 1; s-- > 0;) {
                    idx[s] = rem % d[s];
                    rem /= d[s];
                }
                idx.back() = order[static_cast<std::size_t>(r)];
                node.set(idx, m(r, c));
            }
        }
        out.network.add_node(std::move(node));
    }
    for (const auto& [a, b] : edges) {
        out.network.add_edge(a, b);
    }
    for (const auto& m : members) {
        out.blocks.push_back(std::vector<NodeId>(m.begin(), m.end()));
    }
    return out;
}

} // namespace tnz::testing

#endif // TNZ_TESTS_ORACLES_HPP

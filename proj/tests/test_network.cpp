#include "oracles.hpp"

#include "tnz/error.hpp"
#include "tnz/network.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace tnz;
using tnz::testing::make_node;

namespace
{

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::ParseError;
}

TensorNode identity2(NodeId id)
{
    return make_node(id, {2, 2}, {{{0, 0}, Scalar(1)}, {{1, 1}, Scalar(1)}});
}

} // namespace

TEST(Network, SmallestClosedNetworkIsValid)
{
    TensorNetwork t;
    t.add_node(make_node(1, {2}, {{{0}, Scalar(1)}}));
    t.add_node(make_node(2, {2}, {{{1}, Scalar(1)}}));
    t.add_edge({1, 0}, {2, 0});
    EXPECT_NO_THROW(validate_network(t));
    EXPECT_TRUE(t.physical_edges().empty());
    EXPECT_EQ(t.global_scalar(), Scalar(1));
}

TEST(Network, EdgeDimensionMismatch)
{
    TensorNetwork t;
    t.add_node(TensorNode(1, {2}));
    t.add_node(TensorNode(2, {3}));
    t.add_edge({1, 0}, {2, 0});
    EXPECT_EQ(kind_of([&] { validate_network(t); }), ErrorKind::DimensionMismatch);
}

TEST(Network, EntryOutOfRange)
{
    TensorNode n(1, {2});
    EXPECT_EQ(kind_of([&] { n.set({2}, Scalar(1)); }), ErrorKind::IndexOutOfRange);
    EXPECT_EQ(kind_of([&] { n.set({0, 0}, Scalar(1)); }), ErrorKind::IndexOutOfRange);
}

TEST(Network, SlotReuseAndSelfPairing)
{
    TensorNetwork t;
    t.add_node(identity2(1));
    t.add_node(identity2(2));
    t.add_edge({1, 0}, {2, 0});
    t.add_edge({1, 0}, {2, 1});
    EXPECT_EQ(kind_of([&] { validate_network(t); }), ErrorKind::SlotReuse);

    TensorNetwork u;
    u.add_node(identity2(1));
    u.add_edge({1, 0}, {1, 0});
    EXPECT_EQ(kind_of([&] { validate_network(u); }), ErrorKind::SlotReuse);
}

TEST(Network, UnknownNodeAndDuplicates)
{
    TensorNetwork t;
    t.add_node(identity2(1));
    EXPECT_EQ(kind_of([&] { t.add_node(identity2(1)); }), ErrorKind::DuplicateNode);
    t.add_edge({1, 0}, {7, 0});
    EXPECT_EQ(kind_of([&] { validate_network(t); }), ErrorKind::UnknownNode);
}

TEST(Network, NodeEntry)
{
    const TensorNode id = identity2(1);
    EXPECT_EQ(node_entry(id, {0, 0}), Scalar(1));
    EXPECT_EQ(node_entry(id, {0, 1}), Scalar(0));
    const TensorNode n = make_node(2, {2, 2, 2}, {{{0, 1, 0}, Scalar(Rational(3, 2))}});
    EXPECT_EQ(node_entry(n, {0, 1, 0}), Scalar(Rational(3, 2)));
    EXPECT_EQ(kind_of([&] { node_entry(n, {0, 2, 0}); }), ErrorKind::IndexOutOfRange);
}

TEST(Network, ZeroEntriesAreNotStored)
{
    TensorNode n(1, {2});
    n.set({0}, Scalar(5));
    n.set({0}, Scalar(0));
    EXPECT_EQ(n.nonzero_count(), 0u);
}

TEST(Network, PhysicalEdgesSortedByNodeThenSlot)
{
    TensorNetwork t;
    t.add_node(TensorNode(5, {2, 2}));
    t.add_node(TensorNode(2, {2, 2, 2}));
    t.add_edge({5, 1}, {2, 0});
    const std::vector<SlotRef> expected{{2, 1}, {2, 2}, {5, 0}};
    EXPECT_EQ(t.physical_edges(), expected);
}

TEST(Network, ValidationIndependentOfListOrder)
{
    tnz::testing::Rng rng(21);
    tnz::testing::NetworkShape shape;
    shape.max_physical = 2;
    for (int i = 0; i < 100; ++i) {
        const TensorNetwork t = tnz::testing::random_network(rng, shape);
        auto nodes = t.nodes();
        auto edges = t.edges();
        if (tnz::testing::coin(rng, 0.3) && edges.size() >= 2) {
            edges[1].a = edges[0].a;
        }
        bool reference_ok = true;
        for (int k = 0; k < 4; ++k) {
            std::shuffle(nodes.begin(), nodes.end(), rng);
            std::shuffle(edges.begin(), edges.end(), rng);
            TensorNetwork u;
            for (const auto& n : nodes) {
                u.add_node(n);
            }
            for (const auto& e : edges) {
                u.add_edge(e.a, e.b);
            }
            bool ok = true;
            try {
                validate_network(u);
                validate_network(u);
            } catch (const Error&) {
                ok = false;
            }
            if (k == 0) {
                reference_ok = ok;
            }
            EXPECT_EQ(ok, reference_ok);
        }
    }
}

TEST(Network, BasisInputAndLabelingChecks)
{
    TensorNetwork t;
    t.add_node(identity2(1));
    t.add_node(identity2(2));
    t.add_edge({1, 1}, {2, 0});
    EXPECT_EQ(kind_of([&] { check_basis_input(t, {{{1, 0}, 0}}); }), ErrorKind::NotTotal);
    EXPECT_EQ(kind_of([&] { check_basis_input(t, {{{1, 0}, 0}, {{2, 1}, 2}}); }), ErrorKind::IndexOutOfRange);
    EXPECT_NO_THROW(check_basis_input(t, {{{1, 0}, 0}, {{2, 1}, 1}}));
    EXPECT_EQ(kind_of([&] { check_labeling(t, Labeling{{0, 1}}); }), ErrorKind::InvalidWitness);
    EXPECT_EQ(kind_of([&] { check_labeling(t, Labeling{{2}}); }), ErrorKind::InvalidWitness);
    EXPECT_NO_THROW(check_labeling(t, Labeling{{1}}));
}

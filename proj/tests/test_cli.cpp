#include "oracles.hpp"

#include "commands.hpp"
#include "tnz/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace tnz;
using namespace tnz::testing;
namespace fs = std::filesystem;

namespace
{

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

class Cli : public ::testing::Test
{
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() /
               ("tnz_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string file(const std::string& name, const std::string& text)
    {
        const fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }

    static Outcome run(std::vector<std::string> args)
    {
        args.insert(args.begin(), "tnz");
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return {code, out.str(), err.str()};
    }

    fs::path dir_;
};

} // namespace

TEST_F(Cli, CountsAndContracts)
{
    const std::string f = file("or.cnf", "p cnf 2 1\n1 2 0\n");
    EXPECT_EQ(run({"count", f}).out, "3\n");
    const Outcome reduced = run({"reduce", "sharp2sat", f});
    ASSERT_EQ(reduced.code, cli::kYes);
    const std::string net = file("or.json", reduced.out);
    const Outcome value = run({"contract", net});
    EXPECT_EQ(value.code, cli::kYes);
    EXPECT_EQ(value.out, "3\n");

    EXPECT_EQ(run({"count", file("empty.cnf", "p cnf 3 0\n")}).out, "8\n");
    EXPECT_EQ(run({"count", file("no.cnf", "p cnf 1 2\n1 1 0\n-1 -1 0\n")}).out, "0\n");
}

TEST_F(Cli, CountMatchesTruthTable)
{
    Rng rng(81);
    for (int i = 0; i < 10; ++i) {
        const Cnf2 f = random_cnf2(rng, 5, 6);
        const Outcome o = run({"count", file("f" + std::to_string(i) + ".cnf", write_dimacs(f))});
        ASSERT_EQ(o.code, cli::kYes) << o.err;
        EXPECT_EQ(o.out, std::to_string(truth_table_count(f)) + "\n");
    }
}

TEST_F(Cli, TnzOnBellMps)
{
    const Outcome reduced = run({"reduce", "bellmps", "--n", "3"});
    ASSERT_EQ(reduced.code, cli::kYes);
    const Outcome o = run({"tnz", file("bell.json", reduced.out)});
    EXPECT_EQ(o.code, cli::kYes);
    EXPECT_EQ(o.out.rfind("YES\n", 0), 0u);
    EXPECT_NE(o.out.find("x: "), std::string::npos);
}

TEST_F(Cli, TnzOnEdgeColoring)
{
    const std::string k4 = file("k4.txt", "1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n");
    const std::string yes_net = file("k4.json", run({"reduce", "ecol", k4, "--colors", "3"}).out);
    const Outcome yes = run({"tnz", yes_net});
    EXPECT_EQ(yes.code, cli::kYes);
    const std::string witness = file("w.json", yes.out.substr(yes.out.find('{')));
    EXPECT_EQ(run({"tnz", yes_net, "--witness", witness}).code, cli::kYes);

    const std::string no_net = file("k4_2.json", run({"reduce", "ecol", k4, "--colors", "2"}).out);
    const Outcome no = run({"tnz", no_net});
    EXPECT_EQ(no.code, cli::kNo);
    EXPECT_EQ(no.out, "NO\n");
}

TEST_F(Cli, TnzThresholds)
{
    // T = (3, 0) on one physical edge.
    const std::string net =
        file("t.json", R"({"nodes": [{"id": 1, "dims": [2], "entries": {"1": "3"}}], "edges": []})");
    EXPECT_EQ(run({"tnz", net, "--alpha", "3", "--beta", "2"}).code, cli::kYes);
    EXPECT_EQ(run({"tnz", net, "--alpha", "4", "--beta", "3"}).code, cli::kNo);
    EXPECT_EQ(run({"tnz", net, "--alpha", "1", "--beta", "1"}).code, cli::kError);
    const std::string at_one = file("x1.json", R"j({"x": {"(1,1)": 1}})j");
    const std::string at_two = file("x2.json", R"j({"x": {"(1,1)": 2}})j");
    EXPECT_EQ(run({"tnz", net, "--witness", at_one}).code, cli::kYes);
    EXPECT_EQ(run({"tnz", net, "--witness", at_two}).code, cli::kNo);
}

TEST_F(Cli, TnzPeelsSignedNetworks)
{
    const std::string net =
        file("s.json", R"({"nodes": [{"id": 1, "dims": [2], "entries": {"1": "0", "2": "-1"}}], "edges": []})");
    const Outcome o = run({"tnz", net});
    EXPECT_EQ(o.code, cli::kYes);
    EXPECT_EQ(o.out, "YES\nx: (1,1)=2\nvalue: -1\n");
}

TEST_F(Cli, Injective)
{
    const std::string net = file("i.json", R"({
        "nodes": [{"id": 1, "dims": [2, 2], "entries": {"1,1": "1", "2,2": "1"}},
                  {"id": 2, "dims": [2, 2], "entries": {"1,1": "2", "2,2": "2"}}],
        "edges": [[1, 1, 2, 1]]})");
    const Outcome o = run({"injective", net, "--partition", "1;2", "--certify"});
    EXPECT_EQ(o.code, cli::kYes) << o.err;
    EXPECT_EQ(o.out.rfind("YES\n", 0), 0u);
    EXPECT_NE(o.out.find("value: 1\n"), std::string::npos);

    const std::string flat = file("f.json", R"({
        "nodes": [{"id": 1, "dims": [2, 2], "entries": {"1,1": "1", "2,1": "1"}},
                  {"id": 2, "dims": [2, 2], "entries": {"1,1": "1", "2,2": "1"}}],
        "edges": [[1, 1, 2, 1]]})");
    EXPECT_EQ(run({"injective", flat, "--partition", "1;2"}).code, cli::kNo);
    const Outcome bad = run({"injective", flat, "--partition", "1"});
    EXPECT_EQ(bad.code, cli::kError);
    EXPECT_NE(bad.err.find("NotAPartition"), std::string::npos);
}

TEST_F(Cli, Stoquastic)
{
    HamiltonianFile h;
    h.instance.n = 2;
    h.instance.terms.push_back(clause_term({{0, true}, {1, true}}));
    const std::string f = file("h.json", write_hamiltonian(h));
    const Outcome o = run({"stoq", f});
    EXPECT_EQ(o.code, cli::kYes) << o.err;
    EXPECT_NE(o.out.find("x: 1,2\n"), std::string::npos);
    EXPECT_EQ(run({"reduce", "clh", f, "--x", "1,1"}).code, cli::kYes);

    HamiltonianFile bad;
    bad.instance.n = 1;
    bad.instance.terms.push_back({{0}, pauli_string("X")});
    const Outcome err = run({"stoq", file("bad.json", write_hamiltonian(bad))});
    EXPECT_EQ(err.code, cli::kError);
    EXPECT_NE(err.err.find("NotStoquastic"), std::string::npos);
}

TEST_F(Cli, Errors)
{
    const Outcome three = run({"count", file("3.cnf", "p cnf 3 1\n1 2 3 0\n")});
    EXPECT_EQ(three.code, cli::kError);
    EXPECT_NE(three.err.find("InvalidFormula"), std::string::npos);
    const Outcome open = run({"contract", file("open.json", R"({"nodes": [{"id": 1, "dims": [2], "entries": {}}], "edges": []})")});
    EXPECT_EQ(open.code, cli::kError);
    EXPECT_NE(open.err.find("NotClosed"), std::string::npos);
    EXPECT_EQ(run({"contract", (dir_ / "missing.json").string()}).code, cli::kError);
    EXPECT_EQ(run({"bogus"}).code, cli::kError);
    EXPECT_EQ(run({"reduce", "sharp2sat"}).code, cli::kError);
}

TEST_F(Cli, CapIsEnforced)
{
    const std::string net = file("bell.json", run({"reduce", "bellmps", "--n", "8"}).out);
    const Outcome o = run({"--cap", "2", "tnz", net, "--alpha", "1", "--beta", "0"});
    EXPECT_EQ(o.code, cli::kError);
    EXPECT_NE(o.err.find("TooLarge"), std::string::npos);
}

TEST_F(Cli, OutputIsDeterministic)
{
    const std::string k4 = file("k4.txt", "1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n");
    const std::string net = file("k4.json", run({"reduce", "ecol", k4, "--colors", "3"}).out);
    const Outcome first = run({"tnz", net});
    for (int i = 0; i < 3; ++i) {
        EXPECT_EQ(run({"reduce", "ecol", k4, "--colors", "3"}).out, read_file(net));
        EXPECT_EQ(run({"tnz", net}).out, first.out);
    }
}

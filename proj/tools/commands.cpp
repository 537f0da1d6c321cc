#include "commands.hpp"

#include "tnz/certify.hpp"
#include "tnz/contract.hpp"
#include "tnz/error.hpp"
#include "tnz/io.hpp"
#include "tnz/reduce.hpp"
#include "tnz/stoquastic.hpp"

#include <CLI11.hpp>

#include <optional>

namespace tnz::cli
{

namespace
{

struct Budgets {
    std::uint64_t cap = kDefaultEnumerationCap;
    std::uint64_t dense_cap = kDefaultDenseCap;
};

std::string format_input(const BasisInput& x)
{
    std::string out;
    for (const auto& [s, v] : x) {
        out += (out.empty() ? "" : " ") + format_slot(s) + "=" + std::to_string(v + 1);
    }
    return out;
}

std::string format_string(const std::vector<int>& x)
{
    std::string out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        out += (i ? "," : "") + std::to_string(x[i] + 1);
    }
    return out;
}

std::vector<int> one_based_list(const std::string& text)
{
    auto values = parse_int_list(text);
    for (int& v : values) {
        --v;
    }
    return values;
}

void check_plan_fits(const TensorNetwork& network, std::uint64_t cap)
{
    if (plan_contraction(network).estimated_max_intermediate_entries > cap) {
        throw Error(ErrorKind::TooLarge, "contraction exceeds the enumeration cap; raise --cap");
    }
}

int cmd_contract(const std::string& file, const Budgets& b, std::ostream& out)
{
    const TensorNetwork network = read_network(read_file(file));
    if (!network.is_closed()) {
        throw Error(ErrorKind::NotClosed, "network has physical edges");
    }
    check_plan_fits(network, b.cap);
    out << contract_closed(network) << '\n';
    return kYes;
}

int cmd_tnz(const std::string& file, const std::optional<std::string>& alpha_text,
            const std::optional<std::string>& beta_text, const std::optional<std::string>& witness_file,
            const Budgets& b, std::ostream& out)
{
    const TensorNetwork network = read_network(read_file(file));
    const bool thresholds = alpha_text || beta_text;
    const Rational alpha = alpha_text ? parse_rational(*alpha_text) : Rational(1);
    const Rational beta = beta_text ? parse_rational(*beta_text) : Rational(0);
    if (thresholds) {
        make_gtnz_instance(network, alpha, beta);
    }
    // Exact arithmetic: without thresholds, YES means T(x) != 0.
    auto accepts = [&](const Scalar& value) {
        return thresholds ? value.norm2() >= alpha * alpha : !value.is_zero();
    };

    if (witness_file) {
        const WitnessFile w = read_witness(read_file(*witness_file), network);
        bool yes = false;
        if (w.labeling) {
            if (thresholds) {
                throw Error(ErrorKind::InvalidWitness, "a labeling certifies non-zeroness only; drop --alpha/--beta");
            }
            yes = verify_nonneg_witness(network, {w.x, *w.labeling});
        } else if (!w.vectors.empty()) {
            yes = accepts(evaluate_vectors(network, w.vectors));
        } else {
            check_plan_fits(network, b.cap);
            yes = accepts(evaluate(network, w.x));
        }
        out << (yes ? "YES" : "NO") << '\n';
        return yes ? kYes : kNo;
    }

    if (thresholds) {
        check_plan_fits(network, b.cap);
        const TensorNode amplitudes = contract_to_tensor(network);
        const auto phys = network.physical_edges();
        // Stored amplitudes are the non-zero ones; all-zero only matters for alpha = 0.
        for (const auto& [idx, value] : amplitudes.entries()) {
            if (accepts(value)) {
                BasisInput x;
                for (std::size_t i = 0; i < phys.size(); ++i) {
                    x[phys[i]] = idx[i];
                }
                out << "YES\n" << "x: " << format_input(x) << '\n' << "value: " << value << '\n';
                return kYes;
            }
        }
        if (sgn(alpha) == 0) {
            out << "YES\n";
            return kYes;
        }
        out << "NO\n";
        return kNo;
    }

    if (is_nonnegative(network)) {
        const auto w = search_nonneg_witness(network);
        if (!w) {
            out << "NO\n";
            return kNo;
        }
        out << "YES\n" << "x: " << format_input(w->x) << '\n' << write_witness(*w);
        return kYes;
    }
    const auto x = basis_witness_peel(network, b.cap);
    if (!x) {
        out << "NO\n";
        return kNo;
    }
    out << "YES\n" << "x: " << format_input(*x) << '\n' << "value: " << evaluate(network, *x) << '\n';
    return kYes;
}

int cmd_reduce(const std::string& kind, const std::string& file, int colors, const std::string& x_text, int n,
               std::ostream& out)
{
    if (kind == "sharp2sat") {
        out << write_network(compile_sharp2sat(read_dimacs(read_file(file))));
    } else if (kind == "ecol") {
        if (colors < 1) {
            throw Error(ErrorKind::OutOfRange, "ecol needs --colors >= 1");
        }
        out << write_network(compile_edge_coloring(read_edge_list(read_file(file)), colors));
    } else if (kind == "clh") {
        const HamiltonianFile h = read_hamiltonian(read_file(file));
        ClhOptions options;
        std::vector<ProjectorGuess> guesses;
        if (h.guesses) {
            guesses = *h.guesses;
        } else {
            guesses = default_sat_guesses(h.instance);
            options.enforce_energy_threshold = false;
        }
        std::vector<int> x = one_based_list(x_text);
        if (x_text.empty()) {
            x.assign(static_cast<std::size_t>(h.instance.n), 0);
        }
        out << write_network(compile_clh(h.instance, guesses, x, options).network);
    } else if (kind == "bellmps") {
        out << write_network(build_bell_mps(n));
    } else {
        throw Error(ErrorKind::ParseError, "unknown reduction " + kind);
    }
    return kYes;
}

int cmd_count(const std::string& file, const Budgets& b, std::ostream& out)
{
    const Cnf2 formula = read_dimacs(read_file(file));
    out << count_via_gtnz(formula, exact_tnz_oracle(b.cap)) << '\n';
    return kYes;
}

int cmd_injective(const std::string& file, const std::string& partition_text, bool certify, const Budgets& b,
                  std::ostream& out)
{
    const TensorNetwork network = read_network(read_file(file));
    const InjectivePartition partition = parse_partition(partition_text);
    if (!check_injective(network, partition, b.cap)) {
        out << "NO\n";
        return kNo;
    }
    out << "YES\n";
    if (certify) {
        const GroupedVectorInput psi = injective_certificate(network, partition, b.cap);
        out << write_grouped_vectors(psi);
        out << "value: " << evaluate_grouped(network, psi) << '\n';
    }
    return kYes;
}

int cmd_stoq(const std::string& file, const std::string& x_text, std::uint64_t budget, std::ostream& out)
{
    const HamiltonianFile h = read_hamiltonian(read_file(file));
    StoqOptions options;
    options.guesses = h.guesses;
    options.budget = budget;
    if (!x_text.empty()) {
        options.x = one_based_list(x_text);
    }
    const StoqResult result = solve_stoquastic_sat(h.instance, options);
    if (!result.yes) {
        out << "NO\n";
        return kNo;
    }
    out << "YES\n"
        << "x: " << format_string(result.x) << '\n'
        << "y: " << format_string(result.y) << '\n'
        << write_witness(*result.witness);
    return kYes;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact tensor network contraction and non-zero testing"};
    app.require_subcommand(1);
    Budgets budgets;
    app.add_option("--cap", budgets.cap, "Enumeration / intermediate-size cap")->capture_default_str();
    app.add_option("--dense-cap", budgets.dense_cap, "Cap on D^n for basis-string loops")->capture_default_str();

    std::string file;
    auto* contract = app.add_subcommand("contract", "Print the value of a closed network");
    contract->add_option("file", file, "Network file")->required();

    std::optional<std::string> alpha, beta, witness;
    auto* tnz = app.add_subcommand("tnz", "Decide whether some basis input gives a non-zero value");
    tnz->add_option("file", file, "Network file")->required();
    tnz->add_option("--alpha", alpha, "YES threshold on |T(x)|");
    tnz->add_option("--beta", beta, "NO threshold on |T(x)|");
    tnz->add_option("--witness", witness, "Witness file to verify");

    std::string kind;
    int colors = 0;
    int n = 0;
    std::string x_text;
    auto* reduce = app.add_subcommand("reduce", "Compile an instance into a network file");
    reduce->add_option("kind", kind, "sharp2sat | ecol | clh | bellmps")
        ->required()
        ->check(CLI::IsMember({"sharp2sat", "ecol", "clh", "bellmps"}));
    reduce->add_option("file", file, "Input file");
    reduce->add_option("--colors", colors, "Colors for ecol");
    reduce->add_option("--x", x_text, "Basis string for clh, e.g. 1,2,1");
    reduce->add_option("--n", n, "Length for bellmps");

    auto* count = app.add_subcommand("count", "Count models of a 2-CNF formula");
    count->add_option("file", file, "DIMACS file")->required();

    std::string partition;
    bool certify = false;
    auto* injective = app.add_subcommand("injective", "Check injectivity of a partitioned network");
    injective->add_option("file", file, "Network file")->required();
    injective->add_option("--partition", partition, "Blocks, e.g. 1,2;3,4")->required();
    injective->add_flag("--certify", certify, "Print an input evaluating to 1");

    auto* stoq = app.add_subcommand("stoq", "Decide frustration-freeness of a stoquastic instance");
    stoq->add_option("file", file, "Hamiltonian file")->required();
    stoq->add_option("--x", x_text, "Basis string to test instead of looping");

    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kError;
    }

    try {
        if (*contract) {
            return cmd_contract(file, budgets, out);
        }
        if (*tnz) {
            return cmd_tnz(file, alpha, beta, witness, budgets, out);
        }
        if (*reduce) {
            if (kind != "bellmps" && file.empty()) {
                throw Error(ErrorKind::ParseError, kind + " needs an input file");
            }
            return cmd_reduce(kind, file, colors, x_text, n, out);
        }
        if (*count) {
            return cmd_count(file, budgets, out);
        }
        if (*injective) {
            return cmd_injective(file, partition, certify, budgets, out);
        }
        if (*stoq) {
            return cmd_stoq(file, x_text, budgets.dense_cap, out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kError;
    }
    return kError;
}

} // namespace tnz::cli

#ifndef TNZ_IO_HPP
#define TNZ_IO_HPP

#include "tnz/certify.hpp"
#include "tnz/hamiltonian.hpp"
#include "tnz/network.hpp"
#include "tnz/reduce.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Text formats. Slots, index values, qudits, edge indices, term indices and
// vertices are 1-based in files and 0-based in memory. Node ids are kept.

namespace tnz
{

/// JSON network:
///   {"nodes": [{"id": 1, "dims": [2, 2], "entries": {"1,2": ["1/2", "0"]}}],
///    "edges": [[1, 1, 2, 1]], "global_scalar": ["1", "0"]}
/// A value may also be a single string (real). global_scalar defaults to 1.
TensorNetwork read_network(std::string_view text);
std::string write_network(const TensorNetwork& network);

/// JSON witness: {"x": {"(node,slot)": value}, "labeling": {"edge": value},
/// "vectors": {"(node,slot)": [[re, im], ...]}}; every part is optional.
struct WitnessFile {
    BasisInput x;
    std::optional<Labeling> labeling;
    VectorInput vectors;
};
WitnessFile read_witness(std::string_view text, const TensorNetwork& network);
std::string write_witness(const NonNegWitness& w);

/// DIMACS CNF restricted to two literals per clause.
Cnf2 read_dimacs(std::string_view text);
std::string write_dimacs(const Cnf2& formula);

/// One "u v" pair per line; lines starting with '#' or 'c' are comments.
/// The vertex count is the largest endpoint.
SimpleGraph read_edge_list(std::string_view text);

/// JSON Hamiltonian:
///   {"n": 2, "D": 2, "alpha": "1", "beta": "0",
///    "terms": [{"support": [1, 2], "matrix": [[re, im], ...]}],
///    "guesses": [{"term": 1, "matrix": [...], "lambda": "1"}]}
/// Matrices are row-major; "D" defaults to 2 and "guesses" is optional.
struct HamiltonianFile {
    HamiltonianInstance instance;
    std::optional<std::vector<ProjectorGuess>> guesses;
};
HamiltonianFile read_hamiltonian(std::string_view text);
std::string write_hamiltonian(const HamiltonianFile& file);

/// "1,2;3,4" -> blocks {1,2} and {3,4}.
InjectivePartition parse_partition(std::string_view text);

/// "0,1,1" -> {0,1,1}; values are taken as written.
std::vector<int> parse_int_list(std::string_view text);

/// JSON list of {"edges": ["(node,slot)", ...], "vector": [[re, im], ...]}.
std::string write_grouped_vectors(const GroupedVectorInput& input);

/// "(node,slot)" with a 1-based slot.
std::string format_slot(SlotRef s);

std::string read_file(const std::string& path);

} // namespace tnz

#endif // TNZ_IO_HPP

#ifndef TNZ_HAMILTONIAN_HPP
#define TNZ_HAMILTONIAN_HPP

#include "tnz/linalg.hpp"

#include <cstdint>
#include <vector>

namespace tnz
{

/// Default cap on the dense dimension D^n (12 qubits).
inline constexpr std::uint64_t kDefaultDenseCap = 4096;

/// Hermitian operator on an ordered list of qudits. The first support qudit
/// is the most significant digit of the matrix index.
struct LocalTerm {
    std::vector<int> support;
    Matrix matrix;
};

/// n qudits of dimension D (qudits 0-based) with commuting local terms.
struct HamiltonianInstance {
    int n = 0;
    int D = 2;
    std::vector<LocalTerm> terms;
    Rational alpha{0};
    Rational beta{0};
};

/// Claimed eigenspace projector of term `term` with eigenvalue lambda.
struct ProjectorGuess {
    std::size_t term = 0;
    Matrix projector;
    Rational lambda{0};
};

/// Throws SupportOutOfRange for support indices outside [n] and
/// MalformedTerm for repeated support qudits, wrong matrix shape or a
/// non-Hermitian matrix.
void validate_instance(const HamiltonianInstance& h);

/// D^k x D^k identity-padded embedding of op (acting on `support`) into the
/// space of `qudits`, which must contain every support qudit.
Matrix embed_operator(const Matrix& op, const std::vector<int>& support,
                      const std::vector<int>& qudits, int D);

/// True iff every pair of terms commutes, checked on the union of the two
/// supports. Throws like validate_instance.
bool validate_commuting(const HamiltonianInstance& h);

/// Pi^2 = Pi, Pi Hermitian and H_i Pi = lambda Pi, all exactly. Throws
/// MalformedGuess for a bad term index or a projector of the wrong shape.
bool verify_projector_guess(const HamiltonianInstance& h, const ProjectorGuess& g);

/// Every term is an orthogonal projector with non-negative real entries.
bool is_stoquastic_sat(const HamiltonianInstance& h);

/// SAT convention: each term's satisfied space is its own range, so the
/// guess is the term itself with eigenvalue 1.
std::vector<ProjectorGuess> default_sat_guesses(const HamiltonianInstance& h);

/// Dense D^n x D^n product of the embedded guesses in ascending term order.
/// Throws TooLarge when D^n exceeds max_dim.
Matrix ground_space_projector_bruteforce(const HamiltonianInstance& h,
                                         const std::vector<ProjectorGuess>& guesses,
                                         std::uint64_t max_dim = kDefaultDenseCap);

/// Index of a basis string (qudit 0 most significant).
std::uint64_t basis_index(const std::vector<int>& x, int D);

} // namespace tnz

#endif // TNZ_HAMILTONIAN_HPP

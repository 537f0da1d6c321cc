#include "tnz/hamiltonian.hpp"

#include "tnz/error.hpp"

#include <algorithm>
#include <set>

namespace tnz
{

namespace
{

std::uint64_t int_pow(std::uint64_t base, int exp)
{
    std::uint64_t out = 1;
    for (int i = 0; i < exp; ++i) {
        out *= base;
    }
    return out;
}

std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b)
{
    std::set<int> u(a.begin(), a.end());
    u.insert(b.begin(), b.end());
    return {u.begin(), u.end()};
}

bool overlaps(const std::vector<int>& a, const std::vector<int>& b)
{
    return std::any_of(a.begin(), a.end(),
                       [&](int q) { return std::find(b.begin(), b.end(), q) != b.end(); });
}

} // namespace

std::uint64_t basis_index(const std::vector<int>& x, int D)
{
    std::uint64_t idx = 0;
    for (int v : x) {
        idx = idx * static_cast<std::uint64_t>(D) + static_cast<std::uint64_t>(v);
    }
    return idx;
}

void validate_instance(const HamiltonianInstance& h)
{
    if (h.n < 0 || h.D < 1) {
        throw Error(ErrorKind::MalformedTerm, "instance needs n >= 0 and D >= 1");
    }
    for (std::size_t i = 0; i < h.terms.size(); ++i) {
        const auto& t = h.terms[i];
        std::set<int> seen;
        for (int q : t.support) {
            if (q < 0 || q >= h.n) {
                throw Error(ErrorKind::SupportOutOfRange,
                            "term " + std::to_string(i) + " acts on qudit outside [n]");
            }
            if (!seen.insert(q).second) {
                throw Error(ErrorKind::MalformedTerm,
                            "term " + std::to_string(i) + " repeats a support qudit");
            }
        }
        const auto dim = static_cast<Eigen::Index>(int_pow(static_cast<std::uint64_t>(h.D),
                                                           static_cast<int>(t.support.size())));
        if (t.matrix.rows() != dim || t.matrix.cols() != dim) {
            throw Error(ErrorKind::MalformedTerm,
                        "term " + std::to_string(i) + " matrix is not D^k x D^k");
        }
        if (!is_hermitian(t.matrix)) {
            throw Error(ErrorKind::MalformedTerm, "term " + std::to_string(i) + " is not Hermitian");
        }
    }
}

Matrix embed_operator(const Matrix& op, const std::vector<int>& support,
                      const std::vector<int>& qudits, int D)
{
    // Position in `qudits` of each support qudit.
    std::vector<std::size_t> where;
    for (int q : support) {
        auto it = std::find(qudits.begin(), qudits.end(), q);
        if (it == qudits.end()) {
            throw Error(ErrorKind::SupportOutOfRange, "support qudit missing from embedding space");
        }
        where.push_back(static_cast<std::size_t>(it - qudits.begin()));
    }
    std::vector<bool> in_support(qudits.size(), false);
    for (std::size_t w : where) {
        in_support[w] = true;
    }
    const auto dim = static_cast<Eigen::Index>(int_pow(static_cast<std::uint64_t>(D),
                                                       static_cast<int>(qudits.size())));
    Matrix out = Matrix::Constant(dim, dim, Scalar(0));
    const std::size_t m = qudits.size();
    std::vector<int> rd(m), cd(m);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (std::size_t i = m, v = static_cast<std::size_t>(r); i-- > 0; v /= static_cast<std::size_t>(D)) {
            rd[i] = static_cast<int>(v % static_cast<std::size_t>(D));
        }
        for (Eigen::Index c = 0; c < dim; ++c) {
            for (std::size_t i = m, v = static_cast<std::size_t>(c); i-- > 0; v /= static_cast<std::size_t>(D)) {
                cd[i] = static_cast<int>(v % static_cast<std::size_t>(D));
            }
            bool spectator_match = true;
            for (std::size_t i = 0; i < m; ++i) {
                if (!in_support[i] && rd[i] != cd[i]) {
                    spectator_match = false;
                    break;
                }
            }
            if (!spectator_match) {
                continue;
            }
            Eigen::Index orow = 0, ocol = 0;
            for (std::size_t w : where) {
                orow = orow * D + rd[w];
                ocol = ocol * D + cd[w];
            }
            out(r, c) = op(orow, ocol);
        }
    }
    return out;
}

bool validate_commuting(const HamiltonianInstance& h)
{
    validate_instance(h);
    for (std::size_t i = 0; i < h.terms.size(); ++i) {
        for (std::size_t j = i + 1; j < h.terms.size(); ++j) {
            const auto& a = h.terms[i];
            const auto& b = h.terms[j];
            if (!overlaps(a.support, b.support)) {
                continue;
            }
            const auto joint = sorted_union(a.support, b.support);
            const Matrix ea = embed_operator(a.matrix, a.support, joint, h.D);
            const Matrix eb = embed_operator(b.matrix, b.support, joint, h.D);
            const Matrix commutator = ea * eb - eb * ea;
            if (!is_zero_matrix(commutator)) {
                return false;
            }
        }
    }
    return true;
}

bool verify_projector_guess(const HamiltonianInstance& h, const ProjectorGuess& g)
{
    if (g.term >= h.terms.size()) {
        throw Error(ErrorKind::MalformedGuess, "guess refers to term " + std::to_string(g.term) +
                                                   " of " + std::to_string(h.terms.size()));
    }
    const Matrix& term = h.terms[g.term].matrix;
    const Matrix& p = g.projector;
    if (p.rows() != term.rows() || p.cols() != term.cols()) {
        throw Error(ErrorKind::MalformedGuess, "projector shape differs from its term");
    }
    if (!is_hermitian(p)) {
        return false;
    }
    const Matrix p2 = p * p;
    if (!exactly_equal(p2, p)) {
        return false;
    }
    const Matrix hp = term * p;
    const Matrix lp = Scalar(g.lambda) * p;
    return exactly_equal(hp, lp);
}

bool is_stoquastic_sat(const HamiltonianInstance& h)
{
    for (const auto& t : h.terms) {
        const Matrix& m = t.matrix;
        if (m.rows() != m.cols() || !is_hermitian(m)) {
            return false;
        }
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            for (Eigen::Index c = 0; c < m.cols(); ++c) {
                if (!m(r, c).is_nonneg_real()) {
                    return false;
                }
            }
        }
        const Matrix m2 = m * m;
        if (!exactly_equal(m2, m)) {
            return false;
        }
    }
    return true;
}

std::vector<ProjectorGuess> default_sat_guesses(const HamiltonianInstance& h)
{
    std::vector<ProjectorGuess> out;
    for (std::size_t i = 0; i < h.terms.size(); ++i) {
        out.push_back({i, h.terms[i].matrix, Rational(1)});
    }
    return out;
}

Matrix ground_space_projector_bruteforce(const HamiltonianInstance& h,
                                         const std::vector<ProjectorGuess>& guesses,
                                         std::uint64_t max_dim)
{
    validate_instance(h);
    std::uint64_t dim = 1;
    for (int q = 0; q < h.n; ++q) {
        dim *= static_cast<std::uint64_t>(h.D);
        if (dim > max_dim) {
            throw Error(ErrorKind::TooLarge, "D^n exceeds the dense cap");
        }
    }
    std::vector<int> all(static_cast<std::size_t>(h.n));
    for (int q = 0; q < h.n; ++q) {
        all[static_cast<std::size_t>(q)] = q;
    }
    std::vector<const ProjectorGuess*> order;
    for (const auto& g : guesses) {
        if (g.term >= h.terms.size()) {
            throw Error(ErrorKind::MalformedGuess, "guess refers to an unknown term");
        }
        order.push_back(&g);
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const ProjectorGuess* a, const ProjectorGuess* b) { return a->term < b->term; });
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix product = Matrix::Identity(d, d);
    for (const auto* g : order) {
        const Matrix embedded = embed_operator(g->projector, h.terms[g->term].support, all, h.D);
        const Matrix next = product * embedded;
        product = next;
    }
    return product;
}

} // namespace tnz
